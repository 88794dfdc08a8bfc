//! Relative-dimension algebra on subspaces of a finite complex vector space.
//!
//! A subspace `A` of an ambient space `V` has relative dimension
//! `R(A) = dim A / dim V`, the subspace analogue of a probability.
//! Conditioning is `R(A|B) = dim(A /\ B) / dim B`, and `A`, `B` are
//! R-independent when `R(A /\ B) = R(A) * R(B)`. The analogy is tight enough
//! to carry Lovasz-style arguments, with one deliberate asymmetry: unlike
//! probabilistic independence, R-independence of `A` and `B` says nothing
//! about the complement of `A` (see `counterexample_conditioning_is_directional`
//! in the tests for the canonical 4-dimensional witness).
//!
//! Numerically, a subspace is an orthonormal basis (columns of a dense complex
//! matrix). Ranks are decided once per operation by thresholding the spectrum
//! of a Hermitian Gram or projector matrix; after that every reported ratio is
//! an exact integer fraction, so identities like inclusion/exclusion hold
//! exactly, not approximately.

use nalgebra::DMatrix;
use num::BigInt;
use num_complex::Complex64;

use crate::rational::Rational;
use crate::tolerance::ToleranceConfig;

/// Default cap on the number of conditioning subspaces in
/// [`is_mutually_r_independent`]; the check enumerates all subsets.
pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SubspaceError {
    #[error("ambient dimension must be at least 1")]
    AmbientTooSmall,
    #[error("vector has length {got}, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live in different ambient spaces ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector contains a non-finite entry")]
    NonFiniteEntry,
    #[error("basis columns are not orthonormal within tolerance")]
    NotOrthonormal,
    #[error("conditioning on the zero subspace is undefined")]
    ConditionOnZeroSubspace,
    #[error("conditioning subspaces indexed {subset:?} intersect in the zero subspace")]
    SubsetZeroIntersection { subset: Vec<usize> },
    #[error("mutual independence check over {count} subspaces exceeds the cap {cap}")]
    TooManyFactors { count: usize, cap: usize },
    #[error("numerical kernel failed: {0}")]
    NumericalFailure(&'static str),
}

type Result<T> = std::result::Result<T, SubspaceError>;

/// The ambient space `V = C^dim`; all subspace operations require operands to
/// share it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmbientSpace {
    dim: usize,
}

impl AmbientSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(SubspaceError::AmbientTooSmall);
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// A subspace, stored as an orthonormal basis (one column per basis vector).
/// The rank is the column count; a zero subspace has zero columns.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: AmbientSpace,
    basis: DMatrix<Complex64>,
}

impl Subspace {
    /// The zero subspace of `ambient`.
    pub fn zero(ambient: AmbientSpace) -> Self {
        Self {
            basis: DMatrix::zeros(ambient.dim(), 0),
            ambient,
        }
    }

    /// The full ambient space as a subspace.
    pub fn full(ambient: AmbientSpace) -> Self {
        Self {
            basis: DMatrix::identity(ambient.dim(), ambient.dim()),
            ambient,
        }
    }

    /// Span of arbitrary vectors: validates shapes and finiteness, then
    /// orthonormalizes. Dependent and zero vectors are absorbed, so the
    /// result's rank is the numerical rank of the input family.
    pub fn span(
        ambient: AmbientSpace,
        vectors: &[Vec<Complex64>],
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        let d = ambient.dim();
        for v in vectors {
            if v.len() != d {
                return Err(SubspaceError::DimensionMismatch {
                    expected: d,
                    got: v.len(),
                });
            }
            if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(SubspaceError::NonFiniteEntry);
            }
        }
        let m = DMatrix::from_fn(d, vectors.len(), |r, c| vectors[c][r]);
        let basis = orthonormal_span(m, tol.rank)?;
        Ok(Self { ambient, basis })
    }

    /// Wraps an existing orthonormal basis, validating orthonormality.
    pub fn from_orthonormal_basis(
        ambient: AmbientSpace,
        basis: DMatrix<Complex64>,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        if basis.nrows() != ambient.dim() {
            return Err(SubspaceError::DimensionMismatch {
                expected: ambient.dim(),
                got: basis.nrows(),
            });
        }
        if basis.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SubspaceError::NonFiniteEntry);
        }
        let gram = basis.adjoint() * &basis;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - Complex64::new(target, 0.0)).norm() > tol.ortho {
                    return Err(SubspaceError::NotOrthonormal);
                }
            }
        }
        Ok(Self { ambient, basis })
    }

    /// Wraps a basis known to be orthonormal by construction (tensor
    /// embeddings of orthonormal families); skips the Gram validation, which
    /// would dominate the runtime at register sizes.
    pub(crate) fn from_orthonormal_basis_unchecked(
        ambient: AmbientSpace,
        basis: DMatrix<Complex64>,
    ) -> Self {
        debug_assert_eq!(basis.nrows(), ambient.dim());
        Self { ambient, basis }
    }

    pub fn ambient(&self) -> AmbientSpace {
        self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    /// Dimension of the subspace itself.
    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    /// `R(self) = rank / ambient dim`, exact.
    pub fn relative_dimension(&self) -> Rational {
        Rational::new(BigInt::from(self.rank()), BigInt::from(self.ambient_dim()))
    }

    /// Orthogonal complement. Always satisfies
    /// `rank(self) + rank(complement) == ambient dim` exactly.
    pub fn complement(&self, _tol: &ToleranceConfig) -> Result<Self> {
        let d = self.ambient_dim();
        let r = self.rank();
        if r == 0 {
            return Ok(Self::full(self.ambient));
        }
        if r == d {
            return Ok(Self::zero(self.ambient));
        }
        // I - B B^H is the orthogonal projector onto the complement; its
        // spectrum is exactly {0, 1}, so 1/2 is an unambiguous eigenvalue
        // cutoff and the expected count is known a priori. The Hermitian
        // eigendecomposition returns a full orthonormal eigenbasis, so the
        // kept columns are orthonormal and orthogonal to `self` by
        // construction.
        let mut p = DMatrix::identity(d, d);
        p.gemm(
            Complex64::new(-1.0, 0.0),
            &self.basis,
            &self.basis.adjoint(),
            Complex64::new(1.0, 0.0),
        );
        let eig = p
            .try_symmetric_eigen(f64::EPSILON, 0)
            .ok_or(SubspaceError::NumericalFailure(
                "eigendecomposition did not converge",
            ))?;
        let keep: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i] > 0.5)
            .collect();
        if keep.len() != d - r {
            return Err(SubspaceError::NumericalFailure(
                "complement rank disagrees with ambient identity",
            ));
        }
        let mut basis = DMatrix::zeros(d, keep.len());
        for (c, &i) in keep.iter().enumerate() {
            basis.set_column(c, &eig.eigenvectors.column(i));
        }
        Ok(Self {
            ambient: self.ambient,
            basis,
        })
    }

    /// Subspace sum `self + other` (span of the union of bases).
    pub fn sum(&self, other: &Self, tol: &ToleranceConfig) -> Result<Self> {
        self.check_same_ambient(other)?;
        let d = self.ambient_dim();
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let mut m = DMatrix::zeros(d, self.rank() + other.rank());
        for c in 0..self.rank() {
            m.set_column(c, &self.basis.column(c));
        }
        for c in 0..other.rank() {
            m.set_column(self.rank() + c, &other.basis.column(c));
        }
        let basis = orthonormal_span(m, tol.rank)?;
        Ok(Self {
            ambient: self.ambient,
            basis,
        })
    }

    /// Intersection, computed as the complement of the sum of complements.
    /// On inputs whose principal angles are resolved by the rank tolerance the
    /// result satisfies `rank(A) + rank(B) == rank(A+B) + rank(A /\ B)`.
    pub fn intersect(&self, other: &Self, tol: &ToleranceConfig) -> Result<Self> {
        self.check_same_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let ca = self.complement(tol)?;
        let cb = other.complement(tol)?;
        ca.sum(&cb, tol)?.complement(tol)
    }

    /// Conditional relative dimension `R(self | cond)`, exact. Errors when
    /// `cond` is the zero subspace.
    pub fn conditional_r(&self, cond: &Self, tol: &ToleranceConfig) -> Result<Rational> {
        self.check_same_ambient(cond)?;
        if cond.is_zero() {
            return Err(SubspaceError::ConditionOnZeroSubspace);
        }
        let meet = self.intersect(cond, tol)?;
        Ok(Rational::new(
            BigInt::from(meet.rank()),
            BigInt::from(cond.rank()),
        ))
    }

    /// R-independence of `self` and `other`: exact integer test
    /// `rank(A /\ B) * dim V == rank(A) * rank(B)`.
    pub fn is_r_independent(&self, other: &Self, tol: &ToleranceConfig) -> Result<bool> {
        self.check_same_ambient(other)?;
        let meet = self.intersect(other, tol)?;
        Ok(meet.rank() * self.ambient_dim() == self.rank() * other.rank())
    }

    /// Squared distance of a unit vector from the subspace (for tests and
    /// membership checks): `1 - |B^H v|^2` clipped at zero.
    pub fn distance_sq(&self, v: &[Complex64]) -> Result<f64> {
        if v.len() != self.ambient_dim() {
            return Err(SubspaceError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.len(),
            });
        }
        let vec = nalgebra::DVector::from_column_slice(v);
        let coeffs = self.basis.adjoint() * &vec;
        Ok((vec.norm_squared() - coeffs.norm_squared()).max(0.0))
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// Mutual R-independence of `x` from the family `ys`: for every nonempty
/// subset `S` of indices, `R(x | /\_{i in S} ys[i]) == R(x)`.
///
/// The check enumerates all `2^len - 1` subsets (sharing intersection
/// prefixes), so `ys.len()` is capped. A subset whose intersection is the
/// zero subspace is reported as a distinct error rather than silently deciding
/// the verdict.
pub fn is_mutually_r_independent(
    x: &Subspace,
    ys: &[Subspace],
    cap: usize,
    tol: &ToleranceConfig,
) -> Result<bool> {
    if ys.len() > cap {
        return Err(SubspaceError::TooManyFactors {
            count: ys.len(),
            cap,
        });
    }
    for y in ys {
        x.check_same_ambient(y)?;
    }
    let d = BigInt::from(x.ambient_dim());
    let rx = BigInt::from(x.rank());
    // DFS over inclusion decisions; `current` is the intersection of the
    // chosen prefix, checked exactly once per nonempty subset.
    fn rec(
        x: &Subspace,
        ys: &[Subspace],
        idx: usize,
        chosen: &mut Vec<usize>,
        current: Option<&Subspace>,
        d: &BigInt,
        rx: &BigInt,
        tol: &ToleranceConfig,
    ) -> Result<bool> {
        if idx == ys.len() {
            return Ok(true);
        }
        // Exclude ys[idx]. Keep traversing even after a definite "false":
        // a deeper subset with zero intersection makes the whole predicate
        // undefined, and that must surface as an error regardless of
        // traversal order, never be masked by an early negative answer.
        let without = rec(x, ys, idx + 1, chosen, current, d, rx, tol)?;
        // Include ys[idx].
        let meet = match current {
            Some(c) => c.intersect(&ys[idx], tol)?,
            None => ys[idx].clone(),
        };
        chosen.push(idx);
        if meet.is_zero() {
            return Err(SubspaceError::SubsetZeroIntersection {
                subset: chosen.clone(),
            });
        }
        // R(x | meet) == R(x)  <=>  rank(x /\ meet) * d == rank(x) * rank(meet)
        let xm = x.intersect(&meet, tol)?;
        let lhs = BigInt::from(xm.rank()) * d;
        let rhs = rx * BigInt::from(meet.rank());
        let here = lhs == rhs;
        let with = rec(x, ys, idx + 1, chosen, Some(&meet), d, rx, tol)?;
        chosen.pop();
        Ok(without && here && with)
    }
    rec(x, ys, 0, &mut Vec::new(), None, &d, &rx, tol)
}

/// Orthonormal basis of the column span of `m`.
///
/// Rank decisions go through the Hermitian eigendecomposition of the Gram
/// matrix on the smaller side (the backend's complex eigensolver is accurate
/// to machine precision where its complex SVD is not). The Gram eigenvalues
/// are the squared singular values, and the cut keeps `lambda > rank_tol *
/// lambda_max`: numerical noise on true zeros sits at `eps * lambda_max`,
/// orders of magnitude below the cut, so integer rank decisions are clean.
/// Kept columns are ordered by descending eigenvalue (ties by ascending
/// eigen index), which fixes a deterministic basis convention.
pub(crate) fn orthonormal_span(
    m: DMatrix<Complex64>,
    rank_tol: f64,
) -> Result<DMatrix<Complex64>> {
    let (d, n) = m.shape();
    if n == 0 {
        return Ok(DMatrix::zeros(d, 0));
    }

    fn kept_indices(eigenvalues: &[f64], rank_tol: f64) -> Vec<usize> {
        let emax = eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
        if emax <= 0.0 {
            return Vec::new();
        }
        let mut keep: Vec<usize> = (0..eigenvalues.len())
            .filter(|&i| eigenvalues[i] > rank_tol * emax)
            .collect();
        keep.sort_by(|&a, &b| {
            eigenvalues[b]
                .partial_cmp(&eigenvalues[a])
                .expect("eigenvalues are finite")
                .then(a.cmp(&b))
        });
        keep
    }

    if d <= n {
        // Wide matrix: eigenvectors of m m^H with nonzero eigenvalue are an
        // orthonormal basis of the span directly.
        let a = &m * m.adjoint();
        let eig = a.try_symmetric_eigen(f64::EPSILON, 0).ok_or(
            SubspaceError::NumericalFailure("eigendecomposition did not converge"),
        )?;
        let keep = kept_indices(eig.eigenvalues.as_slice(), rank_tol);
        let mut basis = DMatrix::zeros(d, keep.len());
        for (c, &i) in keep.iter().enumerate() {
            basis.set_column(c, &eig.eigenvectors.column(i));
        }
        return Ok(basis);
    }

    // Tall matrix: eigendecompose the small Gram matrix m^H m and lift the
    // kept eigenvectors, u_i = m v_i / sqrt(lambda_i).
    let g = m.adjoint() * &m;
    let eig = g.try_symmetric_eigen(f64::EPSILON, 0).ok_or(
        SubspaceError::NumericalFailure("eigendecomposition did not converge"),
    )?;
    let keep = kept_indices(eig.eigenvalues.as_slice(), rank_tol);
    let r = keep.len();
    let mut basis = DMatrix::zeros(d, r);
    for (c, &i) in keep.iter().enumerate() {
        let mut u = &m * eig.eigenvectors.column(i);
        u.scale_mut(1.0 / eig.eigenvalues[i].sqrt());
        basis.set_column(c, &u);
    }
    if r == 0 {
        return Ok(basis);
    }
    // Lifted vectors are orthonormal in exact arithmetic but can drift by
    // eps * (lambda_max / lambda_min) when the kept eigenvalues are spread;
    // a symmetric (Loewdin) pass restores orthonormality to machine
    // precision without leaving the span: with U^H U = W diag(mu) W^H, the
    // matrix U W diag(1/sqrt(mu)) W^H has exactly orthonormal columns.
    let h = basis.adjoint() * &basis;
    let heig = h.try_symmetric_eigen(f64::EPSILON, 0).ok_or(
        SubspaceError::NumericalFailure("eigendecomposition did not converge"),
    )?;
    if heig.eigenvalues.iter().any(|&mu| mu <= 0.0) {
        return Err(SubspaceError::NumericalFailure(
            "orthonormalization produced a dependent basis",
        ));
    }
    let mut scaled = heig.eigenvectors.clone();
    for c in 0..r {
        scaled.column_mut(c).scale_mut(1.0 / heig.eigenvalues[c].sqrt());
    }
    Ok(basis * scaled * heig.eigenvectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn e(d: usize, i: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[i] = Complex64::new(1.0, 0.0);
        v
    }

    fn random_vectors(rng: &mut ChaCha8Rng, d: usize, count: usize) -> Vec<Vec<Complex64>> {
        (0..count)
            .map(|_| {
                (0..d)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn span_of_duplicates_and_zeros() {
        let amb = AmbientSpace::new(3).unwrap();
        let v = vec![
            e(3, 0),
            e(3, 0),
            vec![Complex64::new(0.0, 0.0); 3],
            e(3, 2),
        ];
        let s = Subspace::span(amb, &v, &tol()).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.relative_dimension(), ratio(2, 3));
    }

    #[test]
    fn span_rejects_bad_input() {
        let amb = AmbientSpace::new(3).unwrap();
        assert_eq!(
            Subspace::span(amb, &[e(4, 0)], &tol()).unwrap_err(),
            SubspaceError::DimensionMismatch {
                expected: 3,
                got: 4
            }
        );
        let mut bad = e(3, 0);
        bad[1] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(
            Subspace::span(amb, &[bad], &tol()).unwrap_err(),
            SubspaceError::NonFiniteEntry
        );
    }

    #[test]
    fn generic_random_vectors_have_full_rank() {
        // 20 i.i.d. random vectors in dimension 16 span everything; the rank
        // is cross-checked against an independent Gram-eigenvalue count.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let amb = AmbientSpace::new(16).unwrap();
        let vecs = random_vectors(&mut rng, 16, 20);
        let s = Subspace::span(amb, &vecs, &tol()).unwrap();
        assert_eq!(s.rank(), 16);

        let m = DMatrix::from_fn(16, 20, |r, c| vecs[c][r]);
        let gram = m.adjoint() * &m;
        let eig = nalgebra::SymmetricEigen::new(gram);
        let emax = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
        let gram_rank = eig
            .eigenvalues
            .iter()
            .filter(|&&v| v > 1e-9 * emax)
            .count();
        assert_eq!(gram_rank, 16);
    }

    #[test]
    fn span_basis_is_orthonormal_and_contains_the_inputs() {
        // Vector-level validation on fully complex inputs: the basis must be
        // orthonormal to machine precision and every input vector must lie
        // in the computed span (ranks alone would not catch a wrong basis).
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (d, count) in [(2usize, 1usize), (3, 2), (5, 7), (8, 4), (12, 12)] {
            let amb = AmbientSpace::new(d).unwrap();
            let mut vecs = random_vectors(&mut rng, d, count);
            if count >= 3 {
                // Plant an exact dependency so the rank drops below count.
                let dep: Vec<Complex64> = (0..d).map(|i| vecs[0][i] + vecs[1][i]).collect();
                vecs[2] = dep;
            }
            let s = Subspace::span(amb, &vecs, &tol()).unwrap();
            let gram = s.basis().adjoint() * s.basis();
            for i in 0..s.rank() {
                for j in 0..s.rank() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (gram[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-12,
                        "gram entry ({i},{j}) off by {}",
                        (gram[(i, j)] - Complex64::new(want, 0.0)).norm()
                    );
                }
            }
            for (vi, v) in vecs.iter().enumerate() {
                let norm_sq: f64 = v.iter().map(|a| a.norm_sqr()).sum();
                // distance_sq subtracts two O(|v|^2) quantities, so its
                // floor is a few ulps of |v|^2.
                let dist = s.distance_sq(v).unwrap();
                assert!(
                    dist < 1e-13 * norm_sq.max(1.0),
                    "input {vi} at distance^2 {dist} from its own span (d={d})"
                );
            }
        }
    }

    #[test]
    fn complement_is_an_involution_with_exact_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2usize, 5, 9] {
            let amb = AmbientSpace::new(d).unwrap();
            for r in 0..=d {
                let s = Subspace::span(amb, &random_vectors(&mut rng, d, r), &tol()).unwrap();
                assert_eq!(s.rank(), r, "generic rank");
                let c = s.complement(&tol()).unwrap();
                assert_eq!(s.rank() + c.rank(), d);
                // R(X) + R(X complement) = 1 exactly.
                assert_eq!(
                    s.relative_dimension() + c.relative_dimension(),
                    ratio(1, 1)
                );
                let cc = c.complement(&tol()).unwrap();
                assert_eq!(cc.rank(), s.rank());
                // complement vectors are orthogonal to the original basis
                for j in 0..c.rank() {
                    let col: Vec<Complex64> = c.basis().column(j).iter().cloned().collect();
                    let overlap = s.basis().adjoint() * nalgebra::DVector::from_column_slice(&col);
                    assert!(
                        overlap.norm() < 1e-10,
                        "d={d} r={r} j={j} overlap={}",
                        overlap.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn counterexample_conditioning_is_directional() {
        // A = span{e1, e2}, B = span{e1, e2 + e3} in C^4:
        // R(A|B) = R(A) = 1/2 and A, B are R-independent, yet
        // R(A_perp | B) = 0 != R(A_perp). Complements do not inherit
        // independence the way probabilistic complements do.
        let amb = AmbientSpace::new(4).unwrap();
        let t = tol();
        let a = Subspace::span(amb, &[e(4, 0), e(4, 1)], &t).unwrap();
        let mut e12 = e(4, 1);
        e12[2] = Complex64::new(1.0, 0.0);
        let b = Subspace::span(amb, &[e(4, 0), e12], &t).unwrap();

        assert_eq!(a.relative_dimension(), ratio(1, 2));
        assert_eq!(b.relative_dimension(), ratio(1, 2));
        assert_eq!(a.conditional_r(&b, &t).unwrap(), ratio(1, 2));
        assert!(a.is_r_independent(&b, &t).unwrap());

        let a_perp = a.complement(&t).unwrap();
        assert_eq!(a_perp.conditional_r(&b, &t).unwrap(), ratio(0, 1));
        assert!(!a_perp.is_r_independent(&b, &t).unwrap());
    }

    #[test]
    fn intersect_satisfies_inclusion_exclusion_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for d in [4usize, 8, 12] {
            let amb = AmbientSpace::new(d).unwrap();
            for _ in 0..6 {
                let ra = rng.gen_range(0..=d);
                let rb = rng.gen_range(0..=d);
                let a = Subspace::span(amb, &random_vectors(&mut rng, d, ra), &tol()).unwrap();
                let b = Subspace::span(amb, &random_vectors(&mut rng, d, rb), &tol()).unwrap();
                let sum = a.sum(&b, &tol()).unwrap();
                let meet = a.intersect(&b, &tol()).unwrap();
                assert_eq!(a.rank() + b.rank(), sum.rank() + meet.rank());
                // Generic spans intersect minimally.
                assert_eq!(sum.rank(), (ra + rb).min(d));
                assert_eq!(meet.rank(), (ra + rb).saturating_sub(d));
            }
        }
    }

    #[test]
    fn intersection_vectors_lie_in_both_operands() {
        let amb = AmbientSpace::new(6).unwrap();
        let t = tol();
        // Overlapping coordinate spans with a known 2-dimensional meet.
        let a = Subspace::span(amb, &[e(6, 0), e(6, 1), e(6, 2), e(6, 3)], &t).unwrap();
        let b = Subspace::span(amb, &[e(6, 2), e(6, 3), e(6, 4)], &t).unwrap();
        let meet = a.intersect(&b, &t).unwrap();
        assert_eq!(meet.rank(), 2);
        for j in 0..meet.rank() {
            let col: Vec<Complex64> = meet.basis().column(j).iter().cloned().collect();
            assert!(a.distance_sq(&col).unwrap() < 1e-18);
            assert!(b.distance_sq(&col).unwrap() < 1e-18);
        }
    }

    #[test]
    fn conditioning_on_zero_subspace_is_an_error() {
        let amb = AmbientSpace::new(3).unwrap();
        let a = Subspace::span(amb, &[e(3, 0)], &tol()).unwrap();
        let z = Subspace::zero(amb);
        assert_eq!(
            a.conditional_r(&z, &tol()).unwrap_err(),
            SubspaceError::ConditionOnZeroSubspace
        );
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(AmbientSpace::new(3).unwrap());
        let b = Subspace::full(AmbientSpace::new(4).unwrap());
        assert!(matches!(
            a.sum(&b, &tol()).unwrap_err(),
            SubspaceError::AmbientMismatch { .. }
        ));
    }

    #[test]
    fn mutual_independence_detects_pairwise_only_families() {
        // X is independent of Y1 and of Y2 separately, but conditioning on
        // Y1 /\ Y2 = span{e0} forces R(X | .) = 1 != 1/2.
        let amb = AmbientSpace::new(4).unwrap();
        let t = tol();
        let x = Subspace::span(amb, &[e(4, 0), e(4, 1)], &t).unwrap();
        let y1 = Subspace::span(amb, &[e(4, 0), e(4, 2)], &t).unwrap();
        let y2 = Subspace::span(amb, &[e(4, 0), e(4, 3)], &t).unwrap();
        assert!(x.is_r_independent(&y1, &t).unwrap());
        assert!(x.is_r_independent(&y2, &t).unwrap());
        assert!(!is_mutually_r_independent(&x, &[y1, y2], DEFAULT_SUBSET_CAP, &t).unwrap());
    }

    #[test]
    fn mutual_independence_of_empty_family_is_trivial() {
        let amb = AmbientSpace::new(4).unwrap();
        let x = Subspace::span(amb, &[e(4, 0)], &tol()).unwrap();
        assert!(is_mutually_r_independent(&x, &[], DEFAULT_SUBSET_CAP, &tol()).unwrap());
    }

    #[test]
    fn mutual_independence_reports_zero_intersections() {
        let amb = AmbientSpace::new(4).unwrap();
        let t = tol();
        let x = Subspace::span(amb, &[e(4, 0)], &t).unwrap();
        let y1 = Subspace::span(amb, &[e(4, 1)], &t).unwrap();
        let y2 = Subspace::span(amb, &[e(4, 2)], &t).unwrap();
        let err = is_mutually_r_independent(&x, &[y1, y2], DEFAULT_SUBSET_CAP, &t).unwrap_err();
        assert_eq!(
            err,
            SubspaceError::SubsetZeroIntersection { subset: vec![0, 1] }
        );
    }

    #[test]
    fn mutual_independence_cap_is_enforced() {
        let amb = AmbientSpace::new(2).unwrap();
        let x = Subspace::full(amb);
        let ys = vec![Subspace::full(amb); 3];
        assert_eq!(
            is_mutually_r_independent(&x, &ys, 2, &tol()).unwrap_err(),
            SubspaceError::TooManyFactors { count: 3, cap: 2 }
        );
    }

    #[test]
    fn from_orthonormal_basis_validates() {
        let amb = AmbientSpace::new(3).unwrap();
        let good = DMatrix::from_fn(3, 1, |r, _| {
            if r == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        assert!(Subspace::from_orthonormal_basis(amb, good, &tol()).is_ok());
        let bad = DMatrix::from_fn(3, 1, |_, _| Complex64::new(1.0, 0.0));
        assert_eq!(
            Subspace::from_orthonormal_basis(amb, bad, &tol()).unwrap_err(),
            SubspaceError::NotOrthonormal
        );
    }
}
