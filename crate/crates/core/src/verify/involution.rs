//! Splitting an involution `a` of `R^n` into its `±1` eigenmodules over a
//! local ring with 1/2.

use rand::Rng;

use super::VerifyError;
use crate::matrix::Matrix;
use crate::rings::RingDescriptor;

/// Free bases of `V₀ = eV` and `V₁ = (1 − e)V` for `e = (1 + a)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub plus_basis: Matrix,
    pub minus_basis: Matrix,
}

impl SplitDecomposition {
    pub fn ranks(&self) -> (usize, usize) {
        (self.plus_basis.cols(), self.minus_basis.cols())
    }

    /// `P · diag(I, −I) · P⁻¹` with `P = [V₀ | V₁]`.
    pub fn reassemble(&self) -> Result<Matrix, VerifyError> {
        let p = self.plus_basis.hstack(&self.minus_basis);
        let ring = p.ring();
        let r0 = self.plus_basis.cols();
        let d = Matrix::from_fn(ring, p.cols(), p.cols(), |i, j| match (i == j, i < r0) {
            (false, _) => ring.zero(),
            (true, true) => ring.one(),
            (true, false) => -ring.one(),
        });
        Ok(&(&p * &d) * &p.inverse()?)
    }
}

fn require_local(ring: RingDescriptor) -> Result<(), VerifyError> {
    if !ring.is_local() {
        return Err(VerifyError::NotLocal(ring.to_string()));
    }
    Ok(())
}

pub fn split_involution(a: &Matrix) -> Result<SplitDecomposition, VerifyError> {
    let ring = a.ring();
    require_local(ring)?;
    let n = a.rows();
    let id = Matrix::identity(ring, n);
    if !a.is_square() || !(a * a).is_identity() {
        return Err(VerifyError::NotInvolution);
    }
    let half = ring.from_i64(2).invert()?;
    let e = (&id + a).scale(&half);
    let f = &id - &e;
    let plus_basis = e.select_columns(&e.unit_pivot_columns()?);
    let minus_basis = f.select_columns(&f.unit_pivot_columns()?);
    if plus_basis.cols() + minus_basis.cols() != n {
        return Err(VerifyError::StructuralFailure("eigenmodule ranks do not add up".into()));
    }
    let split = SplitDecomposition { plus_basis, minus_basis };
    split.plus_basis.hstack(&split.minus_basis).inverse()?;
    if &(a * &split.plus_basis) != &split.plus_basis || &(a * &split.minus_basis) != &-&split.minus_basis {
        return Err(VerifyError::StructuralFailure("basis vectors are not eigenvectors".into()));
    }
    Ok(split)
}

/// True iff every entry of `a − b` lies in the radical.
pub fn congruent_mod_radical(a: &Matrix, b: &Matrix) -> Result<bool, VerifyError> {
    require_local(a.ring())?;
    Ok((a - b).in_radical()?)
}

/// Compares split ranks with the eigenvalue multiplicities of the residue of
/// `a`, and checks that the residues of the split bases span those eigenspaces.
pub fn rank_match_residue(a: &Matrix) -> Result<bool, VerifyError> {
    let split = split_involution(a)?;
    let abar = a.residue()?;
    let field = abar.ring();
    let n = a.rows();
    let id = Matrix::identity(field, n);
    let kernel_dim = |m: &Matrix| -> Result<usize, VerifyError> { Ok(n - m.rank()?) };
    let dim_plus = kernel_dim(&(&abar - &id))?;
    let dim_minus = kernel_dim(&(&abar + &id))?;
    let (r0, r1) = split.ranks();
    if (r0, r1) != (dim_plus, dim_minus) {
        return Ok(false);
    }
    let v0 = split.plus_basis.residue()?;
    let v1 = split.minus_basis.residue()?;
    let spans = (r0 == 0 || v0.rank()? == r0) && (r1 == 0 || v1.rank()? == r1);
    let eigen = (&(&abar - &id) * &v0).is_zero() && (&(&abar + &id) * &v1).is_zero();
    Ok(spans && eigen)
}

/// Random element of `GL_n(R, J)`: the identity plus a radical matrix.
pub fn random_congruence_element<R: Rng + ?Sized>(ring: RingDescriptor, n: usize, rng: &mut R) -> Result<Matrix, VerifyError> {
    require_local(ring)?;
    let mut g = Matrix::identity(ring, n);
    for i in 0..n {
        for j in 0..n {
            let v = &g[(i, j)] + &ring.sample_radical(rng)?;
            g[(i, j)] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementaryGroup;
    use crate::roots::Family;

    fn ring(s: &str) -> RingDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn identity_splits_trivially() {
        let r = ring("zmod:3^2");
        let split = split_involution(&Matrix::identity(r, 5)).unwrap();
        assert_eq!(split.ranks(), (5, 0));
        let split = split_involution(&-&Matrix::identity(r, 5)).unwrap();
        assert_eq!(split.ranks(), (0, 5));
    }

    #[test]
    fn h_minus_one_on_a2() {
        let g = ElementaryGroup::build(Family::A, 2, ring("zmod:3^2")).unwrap();
        let h = g.h_elem(0, &g.ring().from_i64(-1)).unwrap().matrix;
        let split = split_involution(&h).unwrap();
        assert_eq!(split.ranks(), (4, 4));
        assert_eq!(split.reassemble().unwrap(), h);
        assert!(rank_match_residue(&h).unwrap());
    }

    #[test]
    fn non_involution_rejected() {
        let r = ring("fp:7");
        let a = Matrix::from_rows(r, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(split_involution(&a), Err(VerifyError::NotInvolution));
        let q = Matrix::identity(ring("rat"), 2);
        assert!(matches!(split_involution(&q), Err(VerifyError::NotLocal(_))));
    }

    #[test]
    fn congruence_examples() {
        let r = ring("zmod:3^2");
        let id = Matrix::identity(r, 3);
        let mut b = id.clone();
        b[(0, 1)] = r.from_i64(3);
        assert!(congruent_mod_radical(&id, &id).unwrap());
        assert!(congruent_mod_radical(&id, &b).unwrap());
        b[(0, 1)] = r.from_i64(1);
        assert!(!congruent_mod_radical(&id, &b).unwrap());
    }
}
