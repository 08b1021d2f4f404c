//! Symplectic linear algebra on finite-dimensional real vector spaces: forms,
//! symplectic orthogonals, subspace classification, compatible complex
//! structures, Darboux bases, and invariant splittings under compact groups.

use crate::action::CompactGroupRep;
use crate::linalg;
use crate::{tol, Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Hard cap on ambient dimensions accepted from serialized input.
const MAX_DIM: usize = 512;

/// An even-dimensional real vector space with a nondegenerate antisymmetric
/// form and an auxiliary inner product (identity by default).
#[derive(Debug, Clone)]
pub struct SymplecticSpace {
    dim: usize,
    omega: DMatrix<f64>,
    metric: DMatrix<f64>,
}

/// A subspace of `R^ambient`, stored as a full-column-rank basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

/// A linear complex structure `J` with `J^2 = -I` compatible with the form:
/// `g(x, y) = omega(x, J y)` is symmetric positive definite.
#[derive(Debug, Clone)]
pub struct ComplexStructure {
    pub j: DMatrix<f64>,
}

/// Output of [`fixed_point_splitting`].
#[derive(Debug, Clone)]
pub struct FixedPointSplitting {
    /// The subspace of vectors fixed by every group element.
    pub fixed: Subspace,
    /// Its symplectic orthogonal, the invariant complement.
    pub complement: Subspace,
    /// `|P(fixed + complement) - I|_F`, the direct-sum residual.
    pub direct_sum_residual: f64,
}

impl SymplecticSpace {
    /// Block-standard space on `R^{2n}` with basis ordered `(q_1..q_n, p_1..p_n)`
    /// and `omega(q_i, p_j) = delta_ij`.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("standard space needs n >= 1".into()));
        }
        let mut omega = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            omega[(i, n + i)] = 1.0;
            omega[(n + i, i)] = -1.0;
        }
        Ok(Self {
            dim: 2 * n,
            omega,
            metric: DMatrix::identity(2 * n, 2 * n),
        })
    }

    /// Standard space on `C^n = R^{2n}` in interleaved coordinates
    /// `(x_1, y_1, ..., x_n, y_n)`: `omega` is the block diagonal of
    /// `[[0, 1], [-1, 0]]`. This is the coordinate model used by torus
    /// representations, where rotation angles pair exactly with integer weights.
    pub fn standard_interleaved(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("interleaved space needs n >= 1".into()));
        }
        let mut omega = DMatrix::zeros(2 * n, 2 * n);
        for j in 0..n {
            omega[(2 * j, 2 * j + 1)] = 1.0;
            omega[(2 * j + 1, 2 * j)] = -1.0;
        }
        Ok(Self {
            dim: 2 * n,
            omega,
            metric: DMatrix::identity(2 * n, 2 * n),
        })
    }

    /// Space from an arbitrary form matrix; checks antisymmetry and full rank.
    pub fn new(omega: DMatrix<f64>) -> Result<Self> {
        let dim = omega.nrows();
        let metric = DMatrix::identity(dim, dim);
        Self::with_metric(omega, metric)
    }

    /// Space with an explicit auxiliary inner product.
    pub fn with_metric(omega: DMatrix<f64>, metric: DMatrix<f64>) -> Result<Self> {
        let dim = omega.nrows();
        if dim == 0 || dim % 2 != 0 || omega.ncols() != dim {
            return Err(Error::InvalidInput(format!(
                "omega must be square of positive even size, got {}x{}",
                omega.nrows(),
                omega.ncols()
            )));
        }
        if metric.nrows() != dim || metric.ncols() != dim {
            return Err(Error::InvalidInput("metric shape mismatch".into()));
        }
        let skew = (&omega + omega.transpose()).norm();
        if !(skew <= 1e-12 * (1.0 + omega.norm())) {
            return Err(Error::IdentityViolation {
                identity: "omega^T = -omega".into(),
                residual: skew,
                tolerance: 1e-12,
            });
        }
        if linalg::rank(&omega, None) != dim {
            return Err(Error::InvalidInput("omega is degenerate".into()));
        }
        let sym = (&metric - metric.transpose()).norm();
        if !(sym <= 1e-10 * (1.0 + metric.norm())) {
            return Err(Error::InvalidInput("metric not symmetric".into()));
        }
        let (vals, _) = linalg::sym_eig_sorted(&metric);
        if !(vals[0] > 0.0) {
            return Err(Error::InvalidInput("metric not positive definite".into()));
        }
        Ok(Self { dim, omega, metric })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega(&self) -> &DMatrix<f64> {
        &self.omega
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// `omega(x, y)`.
    pub fn pairing(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.omega * y)[(0, 0)]
    }

    /// The symplectic orthogonal `V^omega = { x : omega(x, v) = 0 for v in V }`,
    /// computed as the null space of `V^T omega`. In finite dimension the
    /// complement relation `dim V + dim V^omega = dim` always holds and is
    /// asserted here.
    pub fn symplectic_orthogonal(&self, v: &Subspace) -> Result<Subspace> {
        self.check_ambient(v)?;
        let vt_omega = v.basis.transpose() * &self.omega;
        let ker = linalg::null_space(&vt_omega, None);
        if ker.ncols() + v.dim() != self.dim {
            return Err(Error::IdentityViolation {
                identity: "dim V + dim V^omega = dim".into(),
                residual: (ker.ncols() + v.dim()) as f64 - self.dim as f64,
                tolerance: 0.0,
            });
        }
        Subspace::new(ker)
    }

    /// Distance between `V` and its double symplectic orthogonal `V^{omega omega}`.
    /// Finite-dimensional subspaces are symplectically closed, so this is
    /// guaranteed `<= 1e-8`; the distance is returned for reporting.
    pub fn double_orthogonal_check(&self, v: &Subspace) -> Result<(bool, f64)> {
        let vw = self.symplectic_orthogonal(v)?;
        let vww = self.symplectic_orthogonal(&vw)?;
        let dist = linalg::projector_distance(&v.basis, &vww.basis);
        Ok((dist <= tol::PROJECTOR, dist))
    }

    /// Whether `V` is a symplectic subspace. Three equivalent criteria are
    /// evaluated and must agree pairwise:
    /// restricted form nondegenerate, `V ∩ V^omega = {0}`, and
    /// `X = V ⊕ V^omega`.
    pub fn is_symplectic_subspace(&self, v: &Subspace) -> Result<bool> {
        self.check_ambient(v)?;
        let k = v.dim();
        let restricted = v.basis.transpose() * &self.omega * &v.basis;
        let by_rank = linalg::rank(&restricted, None) == k;

        let vw = self.symplectic_orthogonal(v)?;
        let inter = linalg::subspace_intersection(&v.basis, &vw.basis);
        let by_intersection = inter.ncols() == 0;

        let sum = linalg::subspace_sum(&v.basis, &vw.basis);
        let by_direct_sum = sum.ncols() == self.dim;

        if by_rank != by_intersection || by_rank != by_direct_sum {
            return Err(Error::IdentityViolation {
                identity: "symplectic-subspace criteria agree pairwise".into(),
                residual: f64::NAN,
                tolerance: 0.0,
            });
        }
        Ok(by_rank)
    }

    /// Compatible complex structure from the polar-style construction:
    /// `A` is defined by `omega(x, y) = <A x, y>_metric`, then
    /// `J = A (-A^2)^{-1/2}` through a symmetric eigendecomposition.
    pub fn compatible_complex_structure(&self) -> Result<ComplexStructure> {
        let (g_vals, g_vecs) = linalg::sym_eig_sorted(&self.metric);
        let half = DMatrix::from_diagonal(&g_vals.map(|x| x.sqrt()));
        let half_inv = DMatrix::from_diagonal(&g_vals.map(|x| 1.0 / x.sqrt()));
        let g_sqrt = &g_vecs * half * g_vecs.transpose();
        let g_sqrt_inv = &g_vecs * half_inv * g_vecs.transpose();

        // In metric-orthonormal coordinates the operator is antisymmetric.
        let a_tilde = -(&g_sqrt_inv * &self.omega * &g_sqrt_inv);
        let s = -(&a_tilde * &a_tilde);
        let (s_vals, s_vecs) = linalg::sym_eig_sorted(&s);
        if !(s_vals[0] > 0.0) {
            return Err(Error::NoConvergence {
                method: "compatible_complex_structure",
                detail: format!(
                    "-A^2 not positive definite (min eigenvalue {:.3e}); omega/metric pair ill-conditioned",
                    s_vals[0]
                ),
            });
        }
        let s_inv_sqrt = &s_vecs
            * DMatrix::from_diagonal(&s_vals.map(|x| 1.0 / x.sqrt()))
            * s_vecs.transpose();
        let j_tilde = &a_tilde * s_inv_sqrt;
        let j = &g_sqrt_inv * j_tilde * &g_sqrt;

        let cs = ComplexStructure { j };
        cs.validate(self)?;
        Ok(cs)
    }

    /// A matrix `S` with `S^T omega S` equal to the block-standard form,
    /// built by symplectic Gram-Schmidt.
    pub fn darboux_basis(&self) -> Result<DMatrix<f64>> {
        let n = self.dim / 2;
        let mut remaining: Vec<DVector<f64>> =
            (0..self.dim).map(|i| DVector::from_fn(self.dim, |r, _| f64::from(r == i))).collect();
        let mut qs: Vec<DVector<f64>> = Vec::with_capacity(n);
        let mut ps: Vec<DVector<f64>> = Vec::with_capacity(n);
        while qs.len() < n {
            // Largest remaining vector as q, strongest pairing partner as p.
            let (iu, _) = remaining
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .expect("nonempty");
            let u = remaining.swap_remove(iu).normalize();
            let (iw, pair) = remaining
                .iter()
                .enumerate()
                .map(|(i, w)| (i, self.pairing(&u, w)))
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .ok_or_else(|| Error::NoConvergence {
                    method: "darboux_basis",
                    detail: "ran out of pairing partners".into(),
                })?;
            if pair.abs() < tol::RANK_EPS {
                return Err(Error::NoConvergence {
                    method: "darboux_basis",
                    detail: "degenerate pairing block".into(),
                });
            }
            let v = remaining.swap_remove(iw) / pair;
            for x in remaining.iter_mut() {
                let a = self.pairing(x, &v);
                let b = self.pairing(&u, x);
                *x -= &u * a + &v * b;
            }
            qs.push(u);
            ps.push(v);
        }
        let mut s = DMatrix::zeros(self.dim, self.dim);
        for (i, q) in qs.iter().enumerate() {
            s.set_column(i, q);
        }
        for (i, p) in ps.iter().enumerate() {
            s.set_column(n + i, p);
        }
        let std_form = SymplecticSpace::standard(n)?.omega;
        let residual = (s.transpose() * &self.omega * &s - std_form).norm();
        if !(residual <= 1e-10 * (1.0 + self.omega.norm())) {
            return Err(Error::IdentityViolation {
                identity: "S^T omega S = standard block form".into(),
                residual,
                tolerance: 1e-10,
            });
        }
        Ok(s)
    }

    fn check_ambient(&self, v: &Subspace) -> Result<()> {
        if v.ambient_dim() != self.dim {
            return Err(Error::InvalidInput(format!(
                "subspace ambient dim {} does not match space dim {}",
                v.ambient_dim(),
                self.dim
            )));
        }
        Ok(())
    }
}

impl Subspace {
    /// Subspace from a basis matrix; rejects rank-deficient bases.
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        let k = basis.ncols();
        if linalg::rank(&basis, None) != k {
            return Err(Error::InvalidInput(
                "basis is rank-deficient at the global rank tolerance".into(),
            ));
        }
        Ok(Self { basis })
    }

    /// The zero subspace of `R^ambient`.
    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: DMatrix::zeros(ambient, 0),
        }
    }

    /// The full space `R^ambient`.
    pub fn full(ambient: usize) -> Self {
        Self {
            basis: DMatrix::identity(ambient, ambient),
        }
    }

    /// Span of a list of vectors (rank-truncated, may drop dependent ones).
    pub fn span(ambient: usize, vectors: &[DVector<f64>]) -> Self {
        let mut m = DMatrix::zeros(ambient, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            m.set_column(j, v);
        }
        Self {
            basis: linalg::column_space(&m, None),
        }
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Projector distance to another subspace, the crate's equality measure.
    pub fn distance(&self, other: &Subspace) -> f64 {
        linalg::projector_distance(&self.basis, &other.basis)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        let inter = linalg::subspace_intersection(&self.basis, &other.basis);
        inter.ncols() == other.dim()
    }
}

impl ComplexStructure {
    /// Checks `J^2 = -I` and positive definiteness of `omega(x, J y)`.
    pub fn validate(&self, space: &SymplecticSpace) -> Result<()> {
        let n = self.j.nrows();
        let residual = (&self.j * &self.j + DMatrix::identity(n, n)).norm();
        if !(residual <= 1e-10 * n as f64) {
            return Err(Error::IdentityViolation {
                identity: "J*J = -I".into(),
                residual,
                tolerance: 1e-10,
            });
        }
        let g = space.omega() * &self.j;
        let asym = (&g - g.transpose()).norm();
        if !(asym <= 1e-10 * (1.0 + g.norm())) {
            return Err(Error::IdentityViolation {
                identity: "omega(x, Jy) symmetric".into(),
                residual: asym,
                tolerance: 1e-10,
            });
        }
        let (vals, _) = linalg::sym_eig_sorted(&g);
        if !(vals[0] > 0.0) {
            return Err(Error::IdentityViolation {
                identity: "omega(x, Jy) positive definite".into(),
                residual: vals[0],
                tolerance: 0.0,
            });
        }
        Ok(())
    }
}

/// Splits `X = X_G ⊕ (X_G)^omega` for a symplectic representation of a
/// compact group: the fixed subspace is computed by exact group averaging and
/// its symplectic orthogonal is the invariant complement. Both the direct-sum
/// property and symplecticity of `X_G` are asserted.
pub fn fixed_point_splitting(
    space: &SymplecticSpace,
    rep: &CompactGroupRep,
) -> Result<FixedPointSplitting> {
    rep.check_symplectic(space)?;
    let fixed_basis = rep.fixed_subspace_basis(space.dim())?;
    let fixed = Subspace {
        basis: fixed_basis,
    };
    let complement = space.symplectic_orthogonal(&fixed)?;

    let sum = linalg::subspace_sum(fixed.basis(), complement.basis());
    let direct_sum_residual =
        (linalg::projector(&sum) - DMatrix::identity(space.dim(), space.dim())).norm();
    if !(direct_sum_residual <= tol::PROJECTOR) {
        return Err(Error::IdentityViolation {
            identity: "X = X_G + (X_G)^omega direct".into(),
            residual: direct_sum_residual,
            tolerance: tol::PROJECTOR,
        });
    }
    let inter = linalg::subspace_intersection(fixed.basis(), complement.basis());
    if inter.ncols() != 0 {
        return Err(Error::IdentityViolation {
            identity: "X_G ∩ (X_G)^omega = 0".into(),
            residual: inter.ncols() as f64,
            tolerance: 0.0,
        });
    }
    if !space.is_symplectic_subspace(&fixed)? {
        return Err(Error::IdentityViolation {
            identity: "X_G is a symplectic subspace".into(),
            residual: f64::NAN,
            tolerance: 0.0,
        });
    }
    Ok(FixedPointSplitting {
        fixed,
        complement,
        direct_sum_residual,
    })
}

// --- serialization -----------------------------------------------------

/// JSON form of a space: `{dim, omega}` with `omega` row-major, plus an
/// optional row-major `metric`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpaceJson {
    pub dim: usize,
    pub omega: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<f64>>,
}

/// JSON form of a subspace: `{dim, basis}` with `basis` row-major `dim x k`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub basis: Vec<f64>,
}

impl SymplecticSpace {
    pub fn to_json(&self) -> SpaceJson {
        let metric = if self.metric == DMatrix::identity(self.dim, self.dim) {
            None
        } else {
            Some(self.metric.transpose().as_slice().to_vec())
        };
        SpaceJson {
            dim: self.dim,
            omega: self.omega.transpose().as_slice().to_vec(),
            metric,
        }
    }

    pub fn from_json(json: &SpaceJson) -> Result<Self> {
        if json.dim == 0 || json.dim > MAX_DIM {
            return Err(Error::InvalidInput(format!(
                "dim {} out of range 1..={MAX_DIM}",
                json.dim
            )));
        }
        if json.omega.len() != json.dim * json.dim {
            return Err(Error::InvalidInput("omega length != dim^2".into()));
        }
        if json.omega.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("omega has non-finite entries".into()));
        }
        let omega = DMatrix::from_row_slice(json.dim, json.dim, &json.omega);
        match &json.metric {
            None => Self::new(omega),
            Some(m) => {
                if m.len() != json.dim * json.dim {
                    return Err(Error::InvalidInput("metric length != dim^2".into()));
                }
                if m.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidInput("metric has non-finite entries".into()));
                }
                Self::with_metric(omega, DMatrix::from_row_slice(json.dim, json.dim, m))
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SpaceJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }
}

impl Subspace {
    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            dim: self.ambient_dim(),
            basis: self.basis.transpose().as_slice().to_vec(),
        }
    }

    pub fn from_json(json: &SubspaceJson) -> Result<Self> {
        if json.dim == 0 || json.dim > MAX_DIM {
            return Err(Error::InvalidInput(format!(
                "ambient dim {} out of range 1..={MAX_DIM}",
                json.dim
            )));
        }
        if json.basis.len() % json.dim != 0 {
            return Err(Error::InvalidInput(
                "basis length not a multiple of ambient dim".into(),
            ));
        }
        if json.basis.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("basis has non-finite entries".into()));
        }
        let k = json.basis.len() / json.dim;
        if k > json.dim {
            return Err(Error::InvalidInput("more basis columns than ambient dim".into()));
        }
        Self::new(DMatrix::from_row_slice(json.dim, k, &json.basis))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: SubspaceJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(space_dim: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(space_dim, |r, _| f64::from(r == i))
    }

    #[test]
    fn standard_n1_block() {
        let sp = SymplecticSpace::standard(1).unwrap();
        assert_eq!(sp.omega(), &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        let q = unit(2, 0);
        let p = unit(2, 1);
        assert_eq!(sp.pairing(&q, &p), 1.0);
        assert_eq!(sp.pairing(&q, &q), 0.0);
    }

    #[test]
    fn standard_n2_rank() {
        let sp = SymplecticSpace::standard(2).unwrap();
        assert_eq!(sp.dim(), 4);
        assert_eq!(linalg::rank(sp.omega(), None), 4);
        assert!(SymplecticSpace::standard(0).is_err());
    }

    #[test]
    fn orthogonal_of_q1_in_r4() {
        // omega(x, q1) kills the p1 coefficient: V^omega = span{q1, q2, p2}.
        let sp = SymplecticSpace::standard(2).unwrap();
        let v = Subspace::span(4, &[unit(4, 0)]);
        let vw = sp.symplectic_orthogonal(&v).unwrap();
        let expected = Subspace::span(4, &[unit(4, 0), unit(4, 1), unit(4, 3)]);
        assert!(vw.distance(&expected) < 1e-12);
    }

    #[test]
    fn orthogonal_of_full_space_is_zero() {
        let sp = SymplecticSpace::standard(2).unwrap();
        let vw = sp.symplectic_orthogonal(&Subspace::full(4)).unwrap();
        assert_eq!(vw.dim(), 0);
    }

    #[test]
    fn orthogonal_against_dense_null_space_oracle() {
        // V = span{q1 + p2, q2}; oracle: kernel of V^T omega assembled by hand
        // from explicit omega pairings against all basis vectors.
        let sp = SymplecticSpace::standard(2).unwrap();
        let v1 = unit(4, 0) + unit(4, 3);
        let v2 = unit(4, 1);
        let v = Subspace::span(4, &[v1.clone(), v2.clone()]);
        let vw = sp.symplectic_orthogonal(&v).unwrap();
        assert_eq!(vw.dim(), 2);
        // Oracle: brute null space from pairing rows.
        let mut rows = DMatrix::zeros(2, 4);
        for j in 0..4 {
            rows[(0, j)] = sp.pairing(&v1, &unit(4, j));
            rows[(1, j)] = sp.pairing(&v2, &unit(4, j));
        }
        let oracle = linalg::null_space(&rows, None);
        // null(V^T omega) vs null(omega(v_i, .)) = null(-(V^T omega)) agree.
        assert!(linalg::projector_distance(vw.basis(), &oracle) < 1e-12);
        for c in 0..vw.dim() {
            let x = vw.basis().column(c).into_owned();
            assert!(sp.pairing(&x, &v1).abs() < 1e-12);
            assert!(sp.pairing(&x, &v2).abs() < 1e-12);
        }
    }

    #[test]
    fn double_orthogonal_trivial_cases() {
        let sp = SymplecticSpace::standard(2).unwrap();
        let (ok, d) = sp
            .double_orthogonal_check(&Subspace::span(4, &[unit(4, 0)]))
            .unwrap();
        assert!(ok && d < 1e-12);
        let (ok0, d0) = sp.double_orthogonal_check(&Subspace::zero(4)).unwrap();
        assert!(ok0 && d0 == 0.0);
    }

    #[test]
    fn double_orthogonal_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let (sp, v) = samples::random_space_and_subspace(&mut rng, 20);
            let (ok, dist) = sp.double_orthogonal_check(&v).unwrap();
            assert!(ok, "V^ww != V at distance {dist:.3e}");
        }
    }

    #[test]
    fn symplectic_subspace_classification() {
        let sp = SymplecticSpace::standard(2).unwrap();
        let plane = Subspace::span(4, &[unit(4, 0), unit(4, 2)]);
        assert!(sp.is_symplectic_subspace(&plane).unwrap());
        let lagrangian = Subspace::span(4, &[unit(4, 0), unit(4, 1)]);
        assert!(!sp.is_symplectic_subspace(&lagrangian).unwrap());
        // span{q1 + p2, q2}: restricted form [[0, w], [-w, 0]] with
        // w = omega(q1+p2, q2) = -omega(q2, p2)-coefficient = -1 != 0.
        let mixed = Subspace::span(4, &[unit(4, 0) + unit(4, 3), unit(4, 1)]);
        let restricted = mixed.basis().transpose() * sp.omega() * mixed.basis();
        assert_eq!(linalg::rank(&restricted, None) == 2, sp.is_symplectic_subspace(&mixed).unwrap());
    }

    #[test]
    fn complex_structure_standard_is_minus_omega() {
        let sp = SymplecticSpace::standard(3).unwrap();
        let cs = sp.compatible_complex_structure().unwrap();
        // Unique solution of omega * J = I with the compatibility constraints.
        assert!((sp.omega() * &cs.j - DMatrix::identity(6, 6)).norm() < 1e-12);
        assert!((&cs.j + sp.omega()).norm() < 1e-12);
    }

    #[test]
    fn complex_structure_random_spaces_relate_orthogonals() {
        // V^omega = J * (V^perp_g) for random spaces and subspaces.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let sp = samples::random_symplectic_space(&mut rng, 3);
            let cs = sp.compatible_complex_structure().unwrap();
            cs.validate(&sp).unwrap();
            let v = samples::random_subspace(&mut rng, 6, 2);
            let vw = sp.symplectic_orthogonal(&v).unwrap();
            // Metric orthogonal complement of V.
            let gv = sp.metric() * v.basis();
            let vperp = linalg::null_space(&gv.transpose(), None);
            let jvperp = &cs.j * vperp;
            assert!(
                linalg::projector_distance(vw.basis(), &jvperp) < 1e-8,
                "V^omega != J V^perp"
            );
        }
    }

    #[test]
    fn darboux_identity_and_scaled_form() {
        let sp = SymplecticSpace::standard(2).unwrap();
        let s = sp.darboux_basis().unwrap();
        let std_form = SymplecticSpace::standard(2).unwrap().omega;
        assert!((s.transpose() * sp.omega() * &s - &std_form).norm() < 1e-10);

        let scaled =
            SymplecticSpace::new(DMatrix::from_row_slice(2, 2, &[0.0, 2.0, -2.0, 0.0])).unwrap();
        let s2 = scaled.darboux_basis().unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert!((s2.transpose() * scaled.omega() * &s2 - expected).norm() < 1e-12);
    }

    #[test]
    fn darboux_random_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let sp = samples::random_symplectic_space(&mut rng, 3);
            let s = sp.darboux_basis().unwrap();
            let std_form = SymplecticSpace::standard(3).unwrap().omega;
            let res = (s.transpose() * sp.omega() * &s - &std_form).norm();
            assert!(res < 1e-10, "darboux residual {res:.3e}");
        }
    }

    #[test]
    fn anti_monotony_and_sum_intersection_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let sp = samples::random_symplectic_space(&mut rng, 4);
            let v1 = samples::random_subspace(&mut rng, 8, 2);
            // Nest: V1 inside V2.
            let extra = samples::random_subspace(&mut rng, 8, 2);
            let v2 = Subspace::new(linalg::subspace_sum(v1.basis(), extra.basis())).unwrap();
            let w1 = sp.symplectic_orthogonal(&v1).unwrap();
            let w2 = sp.symplectic_orthogonal(&v2).unwrap();
            assert!(w1.contains(&w2), "anti-monotony violated");

            // (V1 + V2)^omega = V1^omega ∩ V2^omega.
            let sum = Subspace::new(linalg::subspace_sum(v1.basis(), extra.basis())).unwrap();
            let lhs = sp.symplectic_orthogonal(&sum).unwrap();
            let w_extra = sp.symplectic_orthogonal(&extra).unwrap();
            let rhs = linalg::subspace_intersection(w1.basis(), w_extra.basis());
            assert!(linalg::projector_distance(lhs.basis(), &rhs) < 1e-8);
        }
    }

    #[test]
    fn space_json_round_trip_and_rejects() {
        let sp = SymplecticSpace::standard(2).unwrap();
        let s = serde_json::to_string(&sp.to_json()).unwrap();
        let back = SymplecticSpace::from_json_str(&s).unwrap();
        assert_eq!(back.omega(), sp.omega());

        assert!(SymplecticSpace::from_json_str("{\"dim\":2,\"omega\":[0,1,1,0]}").is_err());
        assert!(SymplecticSpace::from_json_str("{\"dim\":3,\"omega\":[]}").is_err());
        assert!(SymplecticSpace::from_json_str("not json").is_err());
    }

    #[test]
    fn subspace_json_rejects_rank_deficient() {
        let json = SubspaceJson {
            dim: 3,
            basis: vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0], // 3x2 with a zero column
        };
        assert!(Subspace::from_json(&json).is_err());
    }
}
