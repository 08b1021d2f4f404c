//! Dense helpers on top of `nalgebra`: rank decisions, subspace arithmetic,
//! orthogonal projectors, and a few smooth-map utilities.
//!
//! All subspaces are column bases (`n x k` matrices). Subspace comparisons go
//! through orthogonal projectors, never through bases directly.

use crate::tol;
use nalgebra::{DMatrix, DVector};

/// Rank cutoff: singular values below `max(nrows, ncols) * eps * sigma_max`
/// count as zero. `eps` defaults to [`tol::RANK_EPS`].
pub fn rank_cutoff(nrows: usize, ncols: usize, sigma_max: f64, eps: Option<f64>) -> f64 {
    let eps = eps.unwrap_or(tol::RANK_EPS);
    nrows.max(ncols).max(1) as f64 * eps * sigma_max
}

fn singular_values(a: &DMatrix<f64>) -> DVector<f64> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return DVector::zeros(0);
    }
    a.clone().svd(false, false).singular_values
}

/// Numerical rank with the global cutoff rule.
pub fn rank(a: &DMatrix<f64>, eps: Option<f64>) -> usize {
    let sv = singular_values(a);
    if sv.is_empty() {
        return 0;
    }
    let cut = rank_cutoff(a.nrows(), a.ncols(), sv[0], eps);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis of the column space (SVD, rank-truncated).
pub fn column_space(a: &DMatrix<f64>, eps: Option<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    if a.ncols() == 0 || n == 0 {
        return DMatrix::zeros(n, 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.as_ref().expect("svd with u");
    let sv = &svd.singular_values;
    let cut = rank_cutoff(a.nrows(), a.ncols(), sv[0], eps);
    let r = sv.iter().filter(|&&s| s > cut).count();
    u.columns(0, r).into_owned()
}

/// Orthonormal basis, alias for [`column_space`].
pub fn orthonormalize(a: &DMatrix<f64>) -> DMatrix<f64> {
    column_space(a, None)
}

/// Orthonormal basis of the subspace spanned by eigenvectors of the symmetric
/// `p` with eigenvalue above `threshold`. Used to extract invariant subspaces
/// from (averaged) projectors.
pub fn basis_from_projector(p: &DMatrix<f64>, threshold: f64) -> DMatrix<f64> {
    let n = p.nrows();
    let sym = (p + p.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut cols: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > threshold).collect();
    cols.sort_unstable();
    let mut out = DMatrix::zeros(n, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        out.set_column(j, &eig.eigenvectors.column(i));
    }
    orthonormalize(&out)
}

/// Orthogonal complement of the column space of `q` inside the ambient space.
pub fn orth_complement(q: &DMatrix<f64>, ambient: usize) -> DMatrix<f64> {
    let qq = orthonormalize(q);
    let p = DMatrix::identity(ambient, ambient) - &qq * qq.transpose();
    basis_from_projector(&p, 0.5)
}

/// Orthonormal basis of the right null space of `a`.
pub fn null_space(a: &DMatrix<f64>, eps: Option<f64>) -> DMatrix<f64> {
    let n = a.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    // Row space of `a`, then its orthogonal complement; numerically cleaner
    // than reading trailing right singular vectors from a thin SVD.
    let row_space = column_space(&a.transpose(), eps);
    orth_complement(&row_space, n)
}

/// Orthogonal projector onto the column space of `basis`.
pub fn projector(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let q = orthonormalize(basis);
    &q * q.transpose()
}

/// Frobenius distance between the orthogonal projectors of two subspaces.
/// This is the crate's notion of subspace equality.
pub fn projector_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (projector(a) - projector(b)).norm()
}

/// Basis of the intersection of two column spaces of the same ambient space.
pub fn subspace_intersection(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, b.nrows(), "ambient dimensions differ");
    if a.ncols() == 0 || b.ncols() == 0 {
        return DMatrix::zeros(n, 0);
    }
    // [a | -b] (x; y) = 0  =>  a x = b y lies in both spaces.
    let mut stacked = DMatrix::zeros(n, a.ncols() + b.ncols());
    stacked.view_mut((0, 0), (n, a.ncols())).copy_from(a);
    stacked
        .view_mut((0, a.ncols()), (n, b.ncols()))
        .copy_from(&(-b));
    let ker = null_space(&stacked, None);
    if ker.ncols() == 0 {
        return DMatrix::zeros(n, 0);
    }
    let coeff = ker.rows(0, a.ncols()).into_owned();
    column_space(&(a * coeff), None)
}

/// Basis of the sum of two column spaces.
pub fn subspace_sum(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, b.nrows(), "ambient dimensions differ");
    let mut stacked = DMatrix::zeros(n, a.ncols() + b.ncols());
    stacked.view_mut((0, 0), (n, a.ncols())).copy_from(a);
    stacked.view_mut((0, a.ncols()), (n, b.ncols())).copy_from(b);
    column_space(&stacked, None)
}

/// Minimum-norm least-squares solve via SVD.
pub fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let eps = rank_cutoff(a.nrows(), a.ncols(), smax, None).max(f64::MIN_POSITIVE);
    svd.solve(b, eps).expect("svd solve")
}

/// Symmetric eigendecomposition with eigenvalues sorted ascending.
pub fn sym_eig_sorted(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = ((a + a.transpose()) * 0.5).symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = DVector::from_iterator(n, idx.iter().map(|&i| eig.eigenvalues[i]));
    let mut vecs = DMatrix::zeros(n, n);
    for (j, &i) in idx.iter().enumerate() {
        vecs.set_column(j, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let norm = a.norm();
    let k = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / 2f64.powi(k as i32);
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for j in 1..=20 {
        term = &term * &scaled / j as f64;
        sum += &term;
    }
    for _ in 0..k {
        sum = &sum * &sum;
    }
    sum
}

/// Central finite-difference Jacobian with step `cbrt(eps) * (1 + |x|)`.
pub fn fd_jacobian<F>(f: &F, x: &DVector<f64>, out_dim: usize) -> DMatrix<f64>
where
    F: Fn(&DVector<f64>) -> DVector<f64> + ?Sized,
{
    let h = f64::EPSILON.cbrt() * (1.0 + x.norm());
    let mut jac = DMatrix::zeros(out_dim, x.len());
    for j in 0..x.len() {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[j] += h;
        xm[j] -= h;
        let col = (f(&xp) - f(&xm)) / (2.0 * h);
        jac.set_column(j, &col);
    }
    jac
}

/// Central finite-difference gradient of a scalar function.
pub fn fd_gradient<F>(f: &F, x: &DVector<f64>) -> DVector<f64>
where
    F: Fn(&DVector<f64>) -> f64 + ?Sized,
{
    let h = f64::EPSILON.cbrt() * (1.0 + x.norm());
    let mut g = DVector::zeros(x.len());
    for j in 0..x.len() {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[j] += h;
        xm[j] -= h;
        g[j] = (f(&xp) - f(&xm)) / (2.0 * h);
    }
    g
}

/// Classical one-step fourth-order integrator.
pub fn rk4_step<F>(f: &F, x: &DVector<f64>, t: f64, dt: f64) -> DVector<f64>
where
    F: Fn(f64, &DVector<f64>) -> DVector<f64> + ?Sized,
{
    let k1 = f(t, x);
    let k2 = f(t + dt / 2.0, &(x + &k1 * (dt / 2.0)));
    let k3 = f(t + dt / 2.0, &(x + &k2 * (dt / 2.0)));
    let k4 = f(t + dt, &(x + &k3 * dt));
    x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0)
}
