//! Dense helpers shared by the algebraic modules: realification, null spaces,
//! the matrix exponential, Hermitian square roots and inertia.

use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

pub const I: C64 = Complex { re: 0.0, im: 1.0 };
pub const ONE: C64 = Complex { re: 1.0, im: 0.0 };
pub const ZERO: C64 = Complex { re: 0.0, im: 0.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `[Re x; Im x]`.
pub fn realify_vec(x: &CVec) -> RVec {
    let n = x.len();
    RVec::from_fn(2 * n, |k, _| if k < n { x[k].re } else { x[k - n].im })
}

pub fn complexify_vec(v: &RVec) -> CVec {
    let n = v.len() / 2;
    CVec::from_fn(n, |k, _| c(v[k], v[k + n]))
}

/// Real matrix of `x -> A x + B conj(x)` in the `[re; im]` layout.
pub fn realify_pair(a: &CMat, b: &CMat) -> RMat {
    let n = a.nrows();
    let m = a.ncols();
    let mut out = RMat::zeros(2 * n, 2 * m);
    for i in 0..n {
        for j in 0..m {
            let (p, q) = (a[(i, j)], b[(i, j)]);
            out[(i, j)] = p.re + q.re;
            out[(i, j + m)] = -p.im + q.im;
            out[(i + n, j)] = p.im + q.im;
            out[(i + n, j + m)] = p.re - q.re;
        }
    }
    out
}

/// Columns of `m`, realified, stacked as a real matrix.
pub fn realify_cols(m: &CMat) -> RMat {
    let n = m.nrows();
    let mut out = RMat::zeros(2 * n, m.ncols());
    for j in 0..m.ncols() {
        for i in 0..n {
            out[(i, j)] = m[(i, j)].re;
            out[(i + n, j)] = m[(i, j)].im;
        }
    }
    out
}

pub fn complexify_cols(m: &RMat) -> CMat {
    let n = m.nrows() / 2;
    CMat::from_fn(n, m.ncols(), |i, j| c(m[(i, j)], m[(i + n, j)]))
}

pub fn cols(m: &CMat) -> Vec<CVec> {
    (0..m.ncols()).map(|j| m.column(j).into_owned()).collect()
}

pub fn from_cols(n: usize, v: &[CVec]) -> CMat {
    let mut out = CMat::zeros(n, v.len());
    for (j, x) in v.iter().enumerate() {
        out.set_column(j, x);
    }
    out
}

fn pad_rows(a: &RMat) -> RMat {
    if a.nrows() >= a.ncols() {
        return a.clone();
    }
    let mut p = RMat::zeros(a.ncols(), a.ncols());
    p.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    p
}

/// Orthonormal basis (columns) of the real null space. Singular values below
/// `rel_tol * sigma_max` count as zero; an all-zero matrix has the full space.
pub fn null_space(a: &RMat, rel_tol: f64) -> RMat {
    let n = a.ncols();
    if n == 0 {
        return RMat::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return RMat::identity(n, n);
    }
    let p = pad_rows(a);
    let svd = p.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return RMat::identity(n, n);
    }
    let cut = rel_tol * smax;
    let idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= cut)
        .collect();
    let mut out = RMat::zeros(n, idx.len());
    for (j, &k) in idx.iter().enumerate() {
        out.set_column(j, &vt.row(k).transpose());
    }
    out
}

/// Orthonormal basis of the column span.
pub fn range(a: &RMat, rel_tol: f64) -> RMat {
    if a.ncols() == 0 || a.nrows() == 0 {
        return RMat::zeros(a.nrows(), 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return RMat::zeros(a.nrows(), 0);
    }
    let idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > rel_tol * smax)
        .collect();
    let mut out = RMat::zeros(a.nrows(), idx.len());
    for (j, &k) in idx.iter().enumerate() {
        out.set_column(j, &u.column(k));
    }
    out
}

pub fn rank(a: &RMat, rel_tol: f64) -> usize {
    range(a, rel_tol).ncols()
}

pub fn complex_rank(a: &CMat, rel_tol: f64) -> usize {
    if a.ncols() == 0 || a.nrows() == 0 {
        return 0;
    }
    let s = a.clone().svd(false, false).singular_values;
    let smax = s.max();
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * smax).count()
}

/// Complex null space, orthonormal columns.
pub fn complex_null_space(a: &CMat, rel_tol: f64) -> CMat {
    let n = a.ncols();
    if a.nrows() == 0 {
        return CMat::identity(n, n);
    }
    let p = if a.nrows() >= n {
        a.clone()
    } else {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    };
    let svd = p.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.max();
    let cut = if smax == 0.0 { f64::INFINITY } else { rel_tol * smax };
    let idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= cut)
        .collect();
    let mut out = CMat::zeros(n, idx.len());
    for (j, &k) in idx.iter().enumerate() {
        out.set_column(j, &vt.row(k).adjoint());
    }
    out
}

/// Least-squares coordinates of `x` in the column basis `b`, with residual norm.
pub fn coords(b: &CMat, x: &CVec) -> (CVec, f64) {
    if b.ncols() == 0 {
        return (CVec::zeros(0), x.norm());
    }
    let g = b.adjoint() * b;
    let rhs = b.adjoint() * x;
    let y = g.lu().solve(&rhs).unwrap_or_else(|| CVec::zeros(b.ncols()));
    let r = (b * &y - x).norm();
    (y, r)
}

pub fn real_coords(b: &RMat, x: &RVec) -> (RVec, f64) {
    if b.ncols() == 0 {
        return (RVec::zeros(0), x.norm());
    }
    let g = b.transpose() * b;
    let rhs = b.transpose() * x;
    let y = g.lu().solve(&rhs).unwrap_or_else(|| RVec::zeros(b.ncols()));
    let r = (b * &y - x).norm();
    (y, r)
}

fn norm1(a: &CMat) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a diagonal [8/8] Padé
/// approximant; the scaled matrix has 1-norm at most 1/2.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let nrm = norm1(a);
    let s = if nrm > 0.5 {
        (nrm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * c(0.5f64.powi(s), 0.0);
    // c_k = (2q-k)! q! / ((2q)! k! (q-k)!), q = 8
    let q = 8usize;
    let mut coef = vec![1.0f64; q + 1];
    for k in 1..=q {
        coef[k] = coef[k - 1] * ((q - k + 1) as f64) / (((2 * q - k + 1) * k) as f64);
    }
    let id = CMat::identity(n, n);
    let mut num = id.clone() * c(coef[0], 0.0);
    let mut den = id.clone() * c(coef[0], 0.0);
    let mut pw = id.clone();
    for (k, ck) in coef.iter().enumerate().skip(1) {
        pw = &pw * &scaled;
        let term = &pw * c(*ck, 0.0);
        num += &term;
        if k % 2 == 0 {
            den += &term;
        } else {
            den -= &term;
        }
    }
    let mut r = den.lu().solve(&num).expect("Padé denominator is invertible for small norm");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Hermitian part `(H + H^*)/2`.
pub fn herm(h: &CMat) -> CMat {
    (h + h.adjoint()) * c(0.5, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix with ascending eigenvalues.
pub fn herm_eig(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    if n == 0 {
        return (vec![], CMat::zeros(0, 0));
    }
    let e = herm(h).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| e.eigenvalues[x].total_cmp(&e.eigenvalues[y]));
    let vals = order.iter().map(|&k| e.eigenvalues[k]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (j, &k) in order.iter().enumerate() {
        vecs.set_column(j, &e.eigenvectors.column(k));
    }
    (vals, vecs)
}

/// Positive square root and its inverse of a positive definite Hermitian matrix.
pub fn herm_sqrt(p: &CMat) -> Option<(CMat, CMat)> {
    let (vals, u) = herm_eig(p);
    if vals.iter().any(|&v| v <= 0.0) {
        return None;
    }
    let d = CMat::from_diagonal(&CVec::from_iterator(
        vals.len(),
        vals.iter().map(|v| c(v.sqrt(), 0.0)),
    ));
    let di = CMat::from_diagonal(&CVec::from_iterator(
        vals.len(),
        vals.iter().map(|v| c(1.0 / v.sqrt(), 0.0)),
    ));
    Some((&u * d * u.adjoint(), &u * di * u.adjoint()))
}

/// `(n_plus, n_minus, n_zero)` with an absolute threshold.
pub fn inertia(vals: &[f64], tol: f64) -> (usize, usize, usize) {
    let p = vals.iter().filter(|&&v| v > tol).count();
    let m = vals.iter().filter(|&&v| v < -tol).count();
    (p, m, vals.len() - p - m)
}

/// Multiply by a phase so that the first coordinate of (nearly) maximal modulus
/// is real and positive.
pub fn fix_phase(x: &CVec) -> CVec {
    let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return x.clone();
    }
    let k = x.iter().position(|z| z.norm() >= m * (1.0 - 1e-9)).unwrap();
    let ph = x[k].conj() / x[k].norm();
    x * ph
}

pub fn vmax(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_rotation_generator() {
        let t = 2.3;
        let a = CMat::from_row_slice(2, 2, &[ZERO, c(-t, 0.0), c(t, 0.0), ZERO]);
        let e = expm(&a);
        assert!((e[(0, 0)].re - t.cos()).abs() < 1e-14);
        assert!((e[(1, 0)].re - t.sin()).abs() < 1e-14);
    }

    #[test]
    fn expm_matches_nalgebra_on_large_norm() {
        let a = CMat::from_fn(4, 4, |i, j| c((i as f64) - 1.3 * (j as f64), 0.7 * (i * j) as f64 - 2.0));
        let ours = expm(&a);
        let theirs = a.clone().exp();
        let rel = (&ours - &theirs).norm() / theirs.norm();
        assert!(rel < 1e-11, "rel {rel}");
    }

    #[test]
    fn null_space_wide_matrix() {
        let a = RMat::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let n = null_space(&a, 1e-8);
        assert_eq!(n.ncols(), 2);
        assert!((a * n).norm() < 1e-14);
    }

    #[test]
    fn realify_pair_is_consistent() {
        let a = CMat::from_fn(2, 2, |i, j| c(i as f64 + 0.5, j as f64 - 0.25));
        let b = CMat::from_fn(2, 2, |i, j| c(j as f64, 1.0 - i as f64));
        let x = CVec::from_vec(vec![c(0.3, -1.2), c(2.0, 0.7)]);
        let y = &a * &x + &b * x.map(|z| z.conj());
        let yr = realify_pair(&a, &b) * realify_vec(&x);
        assert!((complexify_vec(&yr) - y).norm() < 1e-14);
    }

    #[test]
    fn inertia_counts() {
        assert_eq!(inertia(&[-1.0, 0.0, 1e-12, 2.0], 1e-8), (1, 1, 2));
    }
}
