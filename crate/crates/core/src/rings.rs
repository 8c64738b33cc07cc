//! Exact commutative rings: integers, rationals, and a handful of local rings
//! with an explicit radical and residue field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Largest supported truncation order for `F_p[t]/(t^k)`.
pub const MAX_TRUNCATION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not invertible")]
    NonUnit(String),
    #[error("ring {0} has no local structure")]
    NotLocal(String),
    #[error("mixed rings: {0} and {1}")]
    MixedRings(String, String),
    #[error("invalid ring descriptor `{0}`: {1}")]
    BadDescriptor(String, String),
    #[error("cannot parse `{0}` as an element of {1}")]
    BadElement(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField,
    IntegersMod,
    TruncatedPoly,
    LocalizedIntegers,
}

/// A ring from the supported repertoire. Cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingDescriptor {
    kind: RingKind,
    p: u64,
    k: u32,
    /// p^k for residue rings, p for truncated polynomials, 0 otherwise.
    modulus: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_local_prime(text: &str, p: u64) -> Result<(), RingError> {
    if !is_prime(p) {
        return Err(RingError::BadDescriptor(text.into(), format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(RingError::BadDescriptor(text.into(), "2 must be a unit (odd residue characteristic required)".into()));
    }
    Ok(())
}

impl RingDescriptor {
    pub fn integers() -> Self {
        RingDescriptor { kind: RingKind::Integers, p: 0, k: 0, modulus: 0 }
    }

    pub fn rationals() -> Self {
        RingDescriptor { kind: RingKind::Rationals, p: 0, k: 0, modulus: 0 }
    }

    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        check_local_prime(&format!("fp:{p}"), p)?;
        if p >= 1 << 32 {
            return Err(RingError::BadDescriptor(format!("fp:{p}"), "prime must be below 2^32".into()));
        }
        Ok(RingDescriptor { kind: RingKind::PrimeField, p, k: 1, modulus: p })
    }

    pub fn integers_mod(p: u64, k: u32) -> Result<Self, RingError> {
        let text = format!("zmod:{p}^{k}");
        check_local_prime(&text, p)?;
        if k == 0 {
            return Err(RingError::BadDescriptor(text, "exponent must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|m| *m < 1 << 32)
            .ok_or_else(|| RingError::BadDescriptor(text.clone(), "modulus must be below 2^32".into()))?;
        Ok(RingDescriptor { kind: RingKind::IntegersMod, p, k, modulus })
    }

    pub fn truncated_poly(p: u64, k: u32) -> Result<Self, RingError> {
        let text = format!("tpoly:{p}:{k}");
        check_local_prime(&text, p)?;
        if k == 0 || k as usize > MAX_TRUNCATION {
            return Err(RingError::BadDescriptor(text, format!("truncation must lie in 1..={MAX_TRUNCATION}")));
        }
        if p >= 1 << 31 {
            return Err(RingError::BadDescriptor(text, "prime must be below 2^31".into()));
        }
        Ok(RingDescriptor { kind: RingKind::TruncatedPoly, p, k, modulus: p })
    }

    pub fn localized_integers(p: u64) -> Result<Self, RingError> {
        check_local_prime(&format!("zloc:{p}"), p)?;
        Ok(RingDescriptor { kind: RingKind::LocalizedIntegers, p, k: 1, modulus: 0 })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Residue characteristic of a local ring, `None` for `int` and `rat`.
    pub fn prime(&self) -> Option<u64> {
        self.is_local().then_some(self.p)
    }

    pub fn is_local(&self) -> bool {
        !matches!(self.kind, RingKind::Integers | RingKind::Rationals)
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::Rationals | RingKind::PrimeField)
            || (self.kind == RingKind::IntegersMod && self.k == 1)
            || (self.kind == RingKind::TruncatedPoly && self.k == 1)
    }

    /// Number of elements, for finite rings.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            RingKind::PrimeField | RingKind::IntegersMod => Some(self.modulus),
            RingKind::TruncatedPoly => self.p.checked_pow(self.k),
            _ => None,
        }
    }

    /// The residue field `R/J` as a prime field.
    pub fn residue_field(&self) -> Result<RingDescriptor, RingError> {
        if !self.is_local() {
            return Err(RingError::NotLocal(self.to_string()));
        }
        Ok(RingDescriptor { kind: RingKind::PrimeField, p: self.p, k: 1, modulus: self.p })
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        match self.kind {
            RingKind::PrimeField | RingKind::IntegersMod => {
                RingElement { ring: *self, value: Value::Residue(n.rem_euclid(self.modulus as i64) as u64) }
            }
            RingKind::TruncatedPoly => {
                let mut c = [0u32; MAX_TRUNCATION];
                c[0] = n.rem_euclid(self.p as i64) as u32;
                RingElement { ring: *self, value: Value::Poly(c) }
            }
            _ => self.from_bigint(&BigInt::from(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElement {
        let value = match self.kind {
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::Rationals | RingKind::LocalizedIntegers => Value::Frac(Box::new(BigRational::from_integer(n.clone()))),
            RingKind::PrimeField | RingKind::IntegersMod => Value::Residue(reduce_big(n, self.modulus)),
            RingKind::TruncatedPoly => {
                let mut c = [0u32; MAX_TRUNCATION];
                c[0] = reduce_big(n, self.p) as u32;
                Value::Poly(c)
            }
        };
        RingElement { ring: *self, value }
    }

    /// A fraction `num/den`; fails if `den` is not invertible in this ring.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<RingElement, RingError> {
        self.from_bigint(num).try_mul(&self.from_bigint(den).invert()?)
    }

    /// `t` in `F_p[t]/(t^k)`; `None` for other kinds.
    pub fn generator_t(&self) -> Option<RingElement> {
        if self.kind != RingKind::TruncatedPoly {
            return None;
        }
        let mut c = [0u32; MAX_TRUNCATION];
        if self.k > 1 {
            c[1] = 1;
        }
        Some(RingElement { ring: *self, value: Value::Poly(c) })
    }

    /// Parse an element in the serialization of this ring.
    pub fn parse_element(&self, text: &str) -> Result<RingElement, RingError> {
        let bad = || RingError::BadElement(text.into(), self.to_string());
        let s = text.trim();
        match self.kind {
            RingKind::Integers | RingKind::PrimeField | RingKind::IntegersMod => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
            RingKind::Rationals | RingKind::LocalizedIntegers => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?),
                    None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
                };
                if den.is_zero() {
                    return Err(bad());
                }
                self.from_fraction(&num, &den).map_err(|_| bad())
            }
            RingKind::TruncatedPoly => {
                let mut c = [0i64; MAX_TRUNCATION];
                let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
                // Split on '+' and '-' while keeping the sign with the term.
                let mut terms = Vec::new();
                let mut start = 0;
                for (i, ch) in compact.char_indices() {
                    if (ch == '+' || ch == '-') && i > start {
                        terms.push(&compact[start..i]);
                        start = if ch == '+' { i + 1 } else { i };
                    } else if ch == '+' && i == start {
                        start = i + 1;
                    }
                }
                terms.push(&compact[start..]);
                for term in terms {
                    if term.is_empty() {
                        return Err(bad());
                    }
                    let (coef, power) = parse_poly_term(term).ok_or_else(bad)?;
                    if power < self.k as usize {
                        c[power] += coef;
                    }
                }
                let mut out = [0u32; MAX_TRUNCATION];
                for (o, v) in out.iter_mut().zip(c) {
                    *o = v.rem_euclid(self.p as i64) as u32;
                }
                Ok(RingElement { ring: *self, value: Value::Poly(out) })
            }
        }
    }

    /// Uniformly random element (bounded numerators for infinite rings).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        match self.kind {
            RingKind::Integers => self.from_i64(rng.gen_range(-20..=20)),
            RingKind::Rationals => {
                let num = rng.gen_range(-20..=20);
                let den = rng.gen_range(1..=12);
                self.from_fraction(&num.into(), &BigInt::from(den)).expect("nonzero denominator")
            }
            RingKind::LocalizedIntegers => {
                let num = rng.gen_range(-20..=20);
                let den = loop {
                    let d: i64 = rng.gen_range(1..=12);
                    if d % self.p as i64 != 0 {
                        break d;
                    }
                };
                self.from_fraction(&num.into(), &BigInt::from(den)).expect("denominator prime to p")
            }
            RingKind::PrimeField | RingKind::IntegersMod => {
                RingElement { ring: *self, value: Value::Residue(rng.gen_range(0..self.modulus)) }
            }
            RingKind::TruncatedPoly => {
                let mut c = [0u32; MAX_TRUNCATION];
                for coef in c.iter_mut().take(self.k as usize) {
                    *coef = rng.gen_range(0..self.p) as u32;
                }
                RingElement { ring: *self, value: Value::Poly(c) }
            }
        }
    }

    /// Random unit.
    pub fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        if self.kind == RingKind::Integers {
            return self.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        loop {
            let x = self.sample(rng);
            if x.is_unit() {
                return x;
            }
        }
    }

    /// Random element of the radical; zero for fields.
    pub fn sample_radical<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<RingElement, RingError> {
        if !self.is_local() {
            return Err(RingError::NotLocal(self.to_string()));
        }
        let p = self.from_i64(self.p as i64);
        let uniformizer = self.generator_t().unwrap_or(p);
        Ok(&uniformizer * &self.sample(rng))
    }

    /// Units in canonical enumeration order, for finite rings.
    pub fn units(&self) -> Option<Vec<RingElement>> {
        let order = self.order()?;
        let mut out = Vec::new();
        for idx in 0..order {
            let x = self.element_by_index(idx);
            if x.is_unit() {
                out.push(x);
            }
        }
        Some(out)
    }

    fn element_by_index(&self, mut idx: u64) -> RingElement {
        match self.kind {
            RingKind::TruncatedPoly => {
                let mut c = [0u32; MAX_TRUNCATION];
                for coef in c.iter_mut().take(self.k as usize) {
                    *coef = (idx % self.p) as u32;
                    idx /= self.p;
                }
                RingElement { ring: *self, value: Value::Poly(c) }
            }
            _ => RingElement { ring: *self, value: Value::Residue(idx) },
        }
    }
}

fn parse_poly_term(term: &str) -> Option<(i64, usize)> {
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, term),
    };
    let (coef_txt, var_txt) = match body.find('t') {
        Some(pos) => (body[..pos].trim_end_matches('*'), Some(&body[pos + 1..])),
        None => (body, None),
    };
    let coef: i64 = if coef_txt.is_empty() { 1 } else { coef_txt.parse().ok()? };
    let power = match var_txt {
        None => 0,
        Some("") => 1,
        Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
    };
    Some((sign * coef, power))
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "int"),
            RingKind::Rationals => write!(f, "rat"),
            RingKind::PrimeField => write!(f, "fp:{}", self.p),
            RingKind::IntegersMod => write!(f, "zmod:{}^{}", self.p, self.k),
            RingKind::TruncatedPoly => write!(f, "tpoly:{}:{}", self.p, self.k),
            RingKind::LocalizedIntegers => write!(f, "zloc:{}", self.p),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        let bad = |why: &str| RingError::BadDescriptor(s.into(), why.into());
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad("expected an unsigned integer"));
        let s_trim = s.trim();
        match s_trim {
            "int" => return Ok(Self::integers()),
            "rat" => return Ok(Self::rationals()),
            _ => {}
        }
        let (head, rest) = s_trim.split_once(':').ok_or_else(|| bad("unknown ring kind"))?;
        match head {
            "fp" => Self::prime_field(num(rest)?),
            "zmod" => {
                let (p, k) = rest.split_once('^').ok_or_else(|| bad("expected zmod:<p>^<k>"))?;
                let k = u32::try_from(num(k)?).map_err(|_| bad("exponent too large"))?;
                Self::integers_mod(num(p)?, k)
            }
            "tpoly" => {
                let (p, k) = rest.split_once(':').ok_or_else(|| bad("expected tpoly:<p>:<k>"))?;
                let k = u32::try_from(num(k)?).map_err(|_| bad("truncation too large"))?;
                Self::truncated_poly(num(p)?, k)
            }
            "zloc" => Self::localized_integers(num(rest)?),
            _ => Err(bad("unknown ring kind")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Frac(Box<BigRational>),
    Residue(u64),
    Poly([u32; MAX_TRUNCATION]),
}

/// A value-semantic ring element tagged with its ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingDescriptor,
    value: Value,
}

fn reduce_big(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("reduced residue fits")
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let ext = (a as i64).extended_gcd(&(m as i64));
    (ext.gcd == 1).then(|| ext.x.rem_euclid(m as i64) as u64)
}

fn poly_mul(a: &[u32; MAX_TRUNCATION], b: &[u32; MAX_TRUNCATION], p: u64, k: usize) -> [u32; MAX_TRUNCATION] {
    let mut out = [0u32; MAX_TRUNCATION];
    for i in 0..k {
        let mut acc = 0u64;
        for j in 0..=i {
            acc = (acc + a[j] as u64 * b[i - j] as u64) % p;
        }
        out[i] = acc as u32;
    }
    out
}

impl RingElement {
    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Frac(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(c) => c.iter().all(|x| *x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.abs().is_one(),
            Value::Frac(q) => match self.ring.kind {
                RingKind::LocalizedIntegers => !(q.numer() % BigInt::from(self.ring.p)).is_zero(),
                _ => !q.is_zero(),
            },
            Value::Residue(r) => r.gcd(&self.ring.modulus) == 1,
            Value::Poly(c) => c[0] != 0,
        }
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<RingElement, RingError> {
        if !self.is_unit() {
            return Err(RingError::NonUnit(format!("{self} in {}", self.ring)));
        }
        let value = match &self.value {
            Value::Int(n) => Value::Int(n.clone()),
            Value::Frac(q) => Value::Frac(Box::new(q.recip())),
            Value::Residue(r) => Value::Residue(mod_inverse(*r, self.ring.modulus).expect("unit")),
            Value::Poly(a) => {
                let p = self.ring.p;
                let k = self.ring.k as usize;
                let inv0 = mod_inverse(a[0] as u64, p).expect("unit constant term");
                let mut b = [0u32; MAX_TRUNCATION];
                b[0] = inv0 as u32;
                for i in 1..k {
                    let mut acc = 0u64;
                    for j in 1..=i {
                        acc = (acc + a[j] as u64 * b[i - j] as u64) % p;
                    }
                    b[i] = ((p - acc) % p * inv0 % p) as u32;
                }
                Value::Poly(b)
            }
        };
        Ok(RingElement { ring: self.ring, value })
    }

    /// Image in the residue field `R/J`.
    pub fn residue(&self) -> Result<RingElement, RingError> {
        let field = self.ring.residue_field()?;
        let p = self.ring.p;
        let r = match &self.value {
            Value::Residue(r) => r % p,
            Value::Poly(c) => c[0] as u64,
            Value::Frac(q) => {
                let num = reduce_big(q.numer(), p);
                let den = reduce_big(q.denom(), p);
                num * mod_inverse(den, p).expect("denominator prime to p") % p
            }
            Value::Int(_) => unreachable!("integers are not local"),
        };
        Ok(RingElement { ring: field, value: Value::Residue(r) })
    }

    /// Membership in the maximal ideal.
    pub fn in_radical(&self) -> Result<bool, RingError> {
        Ok(self.residue()?.is_zero())
    }

    /// Lift of a residue-field element along the canonical section.
    pub fn lift_to(&self, ring: RingDescriptor) -> Result<RingElement, RingError> {
        let field = ring.residue_field()?;
        if self.ring != field {
            return Err(RingError::MixedRings(self.ring.to_string(), field.to_string()));
        }
        Ok(ring.from_i64(self.residue_u64().expect("prime field element") as i64))
    }

    /// Canonical representative in `[0, modulus)` for residue rings.
    pub fn residue_u64(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Integer value, if the element is an integer or an integral rational.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(n) => Some(n.clone()),
            Value::Frac(q) => q.is_integer().then(|| q.to_integer()),
            _ => None,
        }
    }

    /// `self^e`; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<RingElement, RingError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = self.ring.one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order of a unit in a finite ring.
    pub fn multiplicative_order(&self) -> Option<u64> {
        let bound = self.ring.order()?;
        if !self.is_unit() {
            return None;
        }
        let mut x = self.clone();
        for ord in 1..=bound {
            if x.is_one() {
                return Some(ord);
            }
            x = &x * self;
        }
        None
    }

    fn same_ring(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring != other.ring {
            return Err(RingError::MixedRings(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(Box::new(a.as_ref() + b.as_ref())),
            (Value::Residue(a), Value::Residue(b)) => Value::Residue((a + b) % self.ring.modulus),
            (Value::Poly(a), Value::Poly(b)) => {
                let p = self.ring.p;
                let mut c = [0u32; MAX_TRUNCATION];
                for i in 0..MAX_TRUNCATION {
                    c[i] = ((a[i] as u64 + b[i] as u64) % p) as u32;
                }
                Value::Poly(c)
            }
            _ => unreachable!("same ring implies same representation"),
        };
        Ok(RingElement { ring: self.ring, value })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(Box::new(a.as_ref() * b.as_ref())),
            (Value::Residue(a), Value::Residue(b)) => Value::Residue(a * b % self.ring.modulus),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(poly_mul(a, b, self.ring.p, self.ring.k as usize)),
            _ => unreachable!("same ring implies same representation"),
        };
        Ok(RingElement { ring: self.ring, value })
    }

    /// `self / other`, requiring `other` to be a unit.
    pub fn try_div(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        self.try_mul(&other.invert()?)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Frac(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
            Value::Poly(c) => {
                let mut first = true;
                for (i, coef) in c.iter().enumerate().take(self.ring.k as usize) {
                    if *coef == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{coef}")?,
                        1 => write!(f, "{coef}*t")?,
                        _ => write!(f, "{coef}*t^{i}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Frac(a) => Value::Frac(Box::new(-a.as_ref())),
            Value::Residue(a) => Value::Residue((self.ring.modulus - a) % self.ring.modulus),
            Value::Poly(a) => {
                let p = self.ring.p as u32;
                let mut c = [0u32; MAX_TRUNCATION];
                for i in 0..MAX_TRUNCATION {
                    c[i] = (p - a[i]) % p;
                }
                Value::Poly(c)
            }
        };
        RingElement { ring: self.ring, value }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> RingDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn invert_examples() {
        let f7 = ring("fp:7");
        assert_eq!(f7.from_i64(2).invert().unwrap(), f7.from_i64(4));
        let z9 = ring("zmod:3^2");
        assert!(matches!(z9.from_i64(3).invert(), Err(RingError::NonUnit(_))));
        let tp = ring("tpoly:3:2");
        let x = tp.parse_element("1+t").unwrap();
        assert_eq!(x.invert().unwrap(), tp.parse_element("1+2*t").unwrap());
    }

    #[test]
    fn residue_examples() {
        let z9 = ring("zmod:3^2");
        let f3 = ring("fp:3");
        assert_eq!(z9.from_i64(7).residue().unwrap(), f3.one());
        let tp = ring("tpoly:3:2");
        assert_eq!(tp.parse_element("2+t").unwrap().residue().unwrap(), f3.from_i64(2));
        let f7 = ring("fp:7");
        assert_eq!(f7.from_i64(5).residue().unwrap(), f7.from_i64(5));
        let zl = ring("zloc:5");
        assert_eq!(zl.parse_element("3/2").unwrap().residue().unwrap(), ring("fp:5").from_i64(4));
    }

    #[test]
    fn radical_examples() {
        let z9 = ring("zmod:3^2");
        assert!(z9.from_i64(6).in_radical().unwrap());
        assert!(!z9.from_i64(4).in_radical().unwrap());
        assert!(matches!(ring("rat").from_i64(3).in_radical(), Err(RingError::NotLocal(_))));
        assert!(matches!(ring("int").from_i64(3).residue(), Err(RingError::NotLocal(_))));
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["int", "rat", "fp:7", "zmod:3^2", "tpoly:3:2", "zloc:5"] {
            assert_eq!(ring(s).to_string(), s);
        }
        for bad in ["fp:2", "fp:9", "zmod:2^3", "tpoly:5:0", "tpoly:5:9", "zloc:4", "poly:3", "zmod:3"] {
            assert!(bad.parse::<RingDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn element_serialization() {
        let tp = ring("tpoly:5:3");
        let x = tp.parse_element("3+4*t^2-t").unwrap();
        assert_eq!(x.to_string(), "3+4*t+4*t^2");
        assert_eq!(tp.parse_element(&x.to_string()).unwrap(), x);
        assert_eq!(tp.zero().to_string(), "0");
        let q = ring("rat");
        assert_eq!(q.parse_element("6/-4").unwrap().to_string(), "-3/2");
        assert!(ring("zloc:3").parse_element("1/3").is_err());
        assert_eq!(ring("zmod:5^2").parse_element("-1").unwrap().to_string(), "24");
    }

    #[test]
    #[should_panic(expected = "mixed rings")]
    fn cross_ring_arithmetic_panics() {
        let _ = ring("fp:7").one() + ring("fp:5").one();
    }

    #[test]
    fn cross_ring_try_is_an_error() {
        let r = ring("fp:7").one().try_mul(&ring("zmod:7^1").one());
        assert!(matches!(r, Err(RingError::MixedRings(_, _))));
    }

    #[test]
    fn units_and_orders() {
        let f5 = ring("fp:5");
        assert_eq!(f5.units().unwrap().len(), 4);
        assert_eq!(f5.from_i64(2).multiplicative_order(), Some(4));
        assert_eq!(ring("zmod:5^2").units().unwrap().len(), 20);
        assert_eq!(ring("tpoly:3:2").units().unwrap().len(), 6);
    }

    #[test]
    fn integer_units_are_plus_minus_one() {
        let z = ring("int");
        assert!(z.from_i64(-1).is_unit());
        assert!(z.from_i64(2).invert().is_err());
        assert_eq!(z.from_i64(2).pow(10).unwrap(), z.from_i64(1024));
    }
}
