//! First-order symbolic arithmetic: forms `c₀ + Σ cᵢ·yᵢ` whose products drop
//! every term of degree two.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::matrix::Matrix;
use crate::rings::{RingDescriptor, RingElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    constant: RingElement,
    /// Nonzero coefficients only, keyed by variable index.
    terms: BTreeMap<usize, RingElement>,
}

impl AffineForm {
    pub fn constant(c: RingElement) -> Self {
        AffineForm { constant: c, terms: BTreeMap::new() }
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        Self::constant(ring.zero())
    }

    /// `c + y_var`.
    pub fn shifted_var(c: RingElement, var: usize) -> Self {
        let one = c.ring().one();
        let mut terms = BTreeMap::new();
        terms.insert(var, one);
        AffineForm { constant: c, terms }
    }

    pub fn from_parts(constant: RingElement, terms: impl IntoIterator<Item = (usize, RingElement)>) -> Self {
        let mut f = Self::constant(constant);
        for (v, c) in terms {
            f.add_term(v, &c);
        }
        f
    }

    pub fn ring(&self) -> RingDescriptor {
        self.constant.ring()
    }

    pub fn constant_term(&self) -> &RingElement {
        &self.constant
    }

    pub fn coefficient(&self, var: usize) -> RingElement {
        self.terms.get(&var).cloned().unwrap_or_else(|| self.ring().zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.terms.iter().map(|(&v, c)| (v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn scale(&self, x: &RingElement) -> Self {
        Self::from_parts(&self.constant * x, self.terms.iter().map(|(&v, c)| (v, c * x)))
    }

    /// Value at `y_i = values[i]`; variables beyond the slice count as zero.
    pub fn evaluate(&self, values: &[RingElement]) -> RingElement {
        self.terms.iter().fold(self.constant.clone(), |acc, (&v, c)| match values.get(v) {
            Some(x) => &acc + &(c * x),
            None => acc,
        })
    }

    fn add_term(&mut self, var: usize, c: &RingElement) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&var) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&var);
        } else {
            self.terms.insert(var, sum);
        }
    }
}

impl Add<&AffineForm> for &AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: &AffineForm) -> AffineForm {
        let mut out = self.clone();
        out.constant = &out.constant + &rhs.constant;
        for (&v, c) in &rhs.terms {
            out.add_term(v, c);
        }
        out
    }
}

impl Neg for &AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        self.scale(&-self.ring().one())
    }
}

impl Sub<&AffineForm> for &AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: &AffineForm) -> AffineForm {
        self + &(-rhs)
    }
}

impl Mul<&AffineForm> for &AffineForm {
    type Output = AffineForm;
    fn mul(self, rhs: &AffineForm) -> AffineForm {
        let mut out = AffineForm::constant(&self.constant * &rhs.constant);
        for (&v, c) in &self.terms {
            out.add_term(v, &(c * &rhs.constant));
        }
        for (&v, c) in &rhs.terms {
            out.add_term(v, &(c * &self.constant));
        }
        out
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (v, c) in &self.terms {
            write!(f, " + ({c})·y{}", v + 1)?;
        }
        Ok(())
    }
}

/// Square matrix of affine forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatrix {
    n: usize,
    entries: Vec<AffineForm>,
}

impl FormMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> AffineForm) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        FormMatrix { n, entries }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self::from_fn(m.rows(), |i, j| AffineForm::constant(m[(i, j)].clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &AffineForm {
        &self.entries[i * self.n + j]
    }

    /// Matrix of constant terms.
    pub fn constants(&self, ring: RingDescriptor) -> Matrix {
        Matrix::from_fn(ring, self.n, self.n, |i, j| self.get(i, j).constant_term().clone())
    }
}

impl Mul<&FormMatrix> for &FormMatrix {
    type Output = FormMatrix;
    fn mul(self, rhs: &FormMatrix) -> FormMatrix {
        let n = self.n;
        FormMatrix::from_fn(n, |i, j| {
            let mut acc = AffineForm::zero(self.get(0, 0).ring());
            for k in 0..n {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }
}

impl Sub<&FormMatrix> for &FormMatrix {
    type Output = FormMatrix;
    fn sub(self, rhs: &FormMatrix) -> FormMatrix {
        FormMatrix::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const VARS: usize = 4;

    /// Dense polynomial of degree ≤ 2 in `VARS` variables over ℤ.
    #[derive(Debug, Clone)]
    struct Dense {
        c: i64,
        lin: [i64; VARS],
        quad: [[i64; VARS]; VARS],
    }

    impl Dense {
        fn of(f: &AffineForm) -> Dense {
            let z = |x: &RingElement| -> i64 { x.to_bigint().unwrap().try_into().unwrap() };
            let mut lin = [0; VARS];
            for (v, c) in f.terms() {
                lin[v] = z(c);
            }
            Dense { c: z(f.constant_term()), lin, quad: [[0; VARS]; VARS] }
        }

        fn mul(&self, o: &Dense) -> Dense {
            let mut out = Dense { c: self.c * o.c, lin: [0; VARS], quad: [[0; VARS]; VARS] };
            for i in 0..VARS {
                out.lin[i] = self.c * o.lin[i] + o.c * self.lin[i];
                for j in 0..VARS {
                    out.quad[i][j] = self.lin[i] * o.lin[j];
                }
            }
            out
        }
    }

    fn form() -> impl Strategy<Value = AffineForm> {
        (-20i64..20, proptest::collection::vec(-20i64..20, VARS)).prop_map(|(c, lin)| {
            let z = RingDescriptor::integers();
            AffineForm::from_parts(z.from_i64(c), lin.into_iter().enumerate().map(|(v, x)| (v, z.from_i64(x))))
        })
    }

    proptest! {
        #[test]
        fn product_is_dense_product_truncated(a in form(), b in form()) {
            let exact = Dense::of(&a).mul(&Dense::of(&b));
            let trunc = Dense::of(&(&a * &b));
            prop_assert_eq!(trunc.c, exact.c);
            prop_assert_eq!(trunc.lin, exact.lin);
        }

        #[test]
        fn sum_is_exact(a in form(), b in form()) {
            let s = Dense::of(&(&a + &b));
            let (da, db) = (Dense::of(&a), Dense::of(&b));
            prop_assert_eq!(s.c, da.c + db.c);
            for i in 0..VARS {
                prop_assert_eq!(s.lin[i], da.lin[i] + db.lin[i]);
            }
        }

        #[test]
        fn difference_with_self_vanishes(a in form()) {
            prop_assert!((&a - &a).is_zero());
        }
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let z = RingDescriptor::integers();
        let f = AffineForm::shifted_var(z.one(), 2);
        let g = &f - &AffineForm::shifted_var(z.zero(), 2);
        assert_eq!(g.terms().count(), 0);
        assert_eq!(g, AffineForm::constant(z.one()));
    }

    #[test]
    fn evaluation_at_zero_is_constant() {
        let z = RingDescriptor::integers();
        let f = AffineForm::shifted_var(z.from_i64(-2), 0);
        assert_eq!(f.evaluate(&[]), z.from_i64(-2));
        assert_eq!(f.evaluate(&[z.from_i64(5)]), z.from_i64(3));
    }
}
