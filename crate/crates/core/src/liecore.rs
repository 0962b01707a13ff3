//! Complex semisimple Lie algebras in a fixed basis, involutions given as
//! explicit operators, and the real forms cut out by a pair of commuting
//! antiholomorphic involutions.

use crate::error::{check, invalid, Error, Result};
use crate::linalg::{self, c, realify_pair, CMat, CVec, RMat, C64, ONE, ZERO};

/// Complex Lie algebra with dense structure constants.
///
/// `ad_basis[i]` is the matrix of `ad e_i`, so `[e_i, e_j] = sum_k ad_basis[i][(k, j)] e_k`.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    labels: Vec<String>,
    ad_basis: Vec<CMat>,
    killing: CMat,
}

impl LieAlgebra {
    /// `structure[i][j]` holds the coordinates of `[e_i, e_j]`.
    pub fn from_structure(labels: Vec<String>, structure: Vec<Vec<CVec>>) -> Result<Self> {
        const OP: &str = "liecore::from_structure";
        let n = labels.len();
        if structure.len() != n || structure.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(invalid(OP, "structure tensor shape does not match the label count"));
        }
        for i in 0..n {
            for j in 0..n {
                if structure[i][j] != -&structure[j][i] {
                    return Err(Error::Validation { op: OP, invariant: "antisymmetry", residual: (&structure[i][j] + &structure[j][i]).norm() });
                }
            }
        }
        let ad_basis = (0..n)
            .map(|i| CMat::from_fn(n, n, |k, j| structure[i][j][k]))
            .collect::<Vec<_>>();
        let killing = CMat::from_fn(n, n, |i, j| (&ad_basis[i] * &ad_basis[j]).trace());
        let alg = LieAlgebra { labels, ad_basis, killing };
        let scale = alg.ad_basis.iter().map(linalg::max_abs).fold(1.0, f64::max);
        check(OP, "jacobi", alg.jacobi_residual() / (scale * scale), 1e-10)?;
        let s = alg.killing.clone().svd(false, false).singular_values;
        if n > 0 && s.min() <= 1e-8 * s.max() {
            return Err(Error::Validation { op: OP, invariant: "killing nondegenerate", residual: s.min() });
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn killing_matrix(&self) -> &CMat {
        &self.killing
    }

    pub fn ad_basis(&self) -> &[CMat] {
        &self.ad_basis
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> CVec {
        self.ad_basis[i].column(j).into_owned()
    }

    pub fn ad(&self, x: &CVec) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if *xi != ZERO {
                m += &self.ad_basis[i] * *xi;
            }
        }
        m
    }

    pub fn bracket(&self, x: &CVec, y: &CVec) -> CVec {
        self.ad(x) * y
    }

    pub fn try_bracket(&self, x: &CVec, y: &CVec) -> Result<CVec> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(invalid("liecore::bracket", format!("expected vectors of length {}", self.dim())));
        }
        Ok(self.bracket(x, y))
    }

    /// Complex bilinear Killing form.
    pub fn killing(&self, x: &CVec, y: &CVec) -> C64 {
        (x.transpose() * &self.killing * y)[(0, 0)]
    }

    pub fn unit(&self, k: usize) -> CVec {
        let mut v = CVec::zeros(self.dim());
        v[k] = ONE;
        v
    }

    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let ij = self.structure(i, j);
                for k in (j + 1)..n {
                    let jk = self.structure(j, k);
                    let ki = self.structure(k, i);
                    let r = &self.ad_basis[i] * jk + &self.ad_basis[j] * ki + &self.ad_basis[k] * &ij;
                    worst = worst.max(linalg::vmax(&r));
                }
            }
        }
        worst
    }
}

fn sl_index(n: usize) -> Vec<(usize, usize)> {
    let mut idx = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                idx.push((i, j));
            }
        }
    }
    idx
}

/// Matrix of a coordinate vector of sl(n).
pub fn sl_matrix(n: usize, x: &CVec) -> CMat {
    let idx = sl_index(n);
    let mut m = CMat::zeros(n, n);
    for (k, &(i, j)) in idx.iter().enumerate() {
        m[(i, j)] = x[k];
    }
    let off = idx.len();
    for k in 0..(n - 1) {
        m[(k, k)] += x[off + k];
        m[(k + 1, k + 1)] -= x[off + k];
    }
    m
}

/// Coordinates of a traceless matrix; `h_k = d_1 + ... + d_k`.
pub fn sl_coords(m: &CMat) -> CVec {
    let n = m.nrows();
    let idx = sl_index(n);
    let mut x = CVec::zeros(n * n - 1);
    for (k, &(i, j)) in idx.iter().enumerate() {
        x[k] = m[(i, j)];
    }
    let off = idx.len();
    let mut acc = ZERO;
    for k in 0..(n - 1) {
        acc += m[(k, k)];
        x[off + k] = acc;
    }
    x
}

pub fn build_sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(invalid("liecore::build_sl", "n must be at least 2"));
    }
    let d = n * n - 1;
    let mut labels: Vec<String> = sl_index(n).iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    labels.extend((0..n - 1).map(|k| format!("H{}", k + 1)));
    let mats: Vec<CMat> = (0..d)
        .map(|k| {
            let mut e = CVec::zeros(d);
            e[k] = ONE;
            sl_matrix(n, &e)
        })
        .collect();
    let structure = (0..d)
        .map(|i| (0..d).map(|j| sl_coords(&(&mats[i] * &mats[j] - &mats[j] * &mats[i]))).collect())
        .collect();
    LieAlgebra::from_structure(labels, structure)
}

pub fn direct_sum_many(parts: &[&LieAlgebra]) -> LieAlgebra {
    let n: usize = parts.iter().map(|a| a.dim()).sum();
    let mut labels = Vec::with_capacity(n);
    let mut ad_basis = Vec::with_capacity(n);
    let mut killing = CMat::zeros(n, n);
    let mut off = 0;
    for (p, a) in parts.iter().enumerate() {
        let m = a.dim();
        labels.extend(a.labels.iter().map(|l| format!("g{}.{}", p + 1, l)));
        for ad in &a.ad_basis {
            let mut big = CMat::zeros(n, n);
            big.view_mut((off, off), (m, m)).copy_from(ad);
            ad_basis.push(big);
        }
        killing.view_mut((off, off), (m, m)).copy_from(&a.killing);
        off += m;
    }
    LieAlgebra { labels, ad_basis, killing }
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    direct_sum_many(&[a, b])
}

/// Real-linear map `x -> lin x + anti conj(x)` on coordinate vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLinearMap {
    pub lin: CMat,
    pub anti: CMat,
}

impl RealLinearMap {
    pub fn identity(n: usize) -> Self {
        RealLinearMap { lin: CMat::identity(n, n), anti: CMat::zeros(n, n) }
    }

    pub fn linear(m: CMat) -> Self {
        let n = m.nrows();
        RealLinearMap { lin: m, anti: CMat::zeros(n, n) }
    }

    pub fn antilinear(m: CMat) -> Self {
        let n = m.nrows();
        RealLinearMap { lin: CMat::zeros(n, n), anti: m }
    }

    pub fn apply(&self, x: &CVec) -> CVec {
        &self.lin * x + &self.anti * x.map(|z| z.conj())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RealLinearMap) -> RealLinearMap {
        let cl = other.lin.map(|z| z.conj());
        let ca = other.anti.map(|z| z.conj());
        RealLinearMap {
            lin: &self.lin * &other.lin + &self.anti * ca,
            anti: &self.lin * &other.anti + &self.anti * cl,
        }
    }

    pub fn scale(&self, s: f64) -> RealLinearMap {
        RealLinearMap { lin: &self.lin * c(s, 0.0), anti: &self.anti * c(s, 0.0) }
    }

    pub fn operator(&self) -> RMat {
        realify_pair(&self.lin, &self.anti)
    }

    pub fn distance(&self, other: &RealLinearMap) -> f64 {
        linalg::max_abs(&(&self.lin - &other.lin)).max(linalg::max_abs(&(&self.anti - &other.anti)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linearity {
    Linear,
    Antilinear,
}

/// Involutive automorphism, `x -> M x` or `x -> M conj(x)`.
#[derive(Debug, Clone)]
pub struct Involution {
    pub name: String,
    pub linearity: Linearity,
    pub matrix: CMat,
}

impl Involution {
    pub fn new(name: impl Into<String>, linearity: Linearity, matrix: CMat) -> Self {
        Involution { name: name.into(), linearity, matrix }
    }

    pub fn identity(n: usize) -> Self {
        Involution::new("id", Linearity::Linear, CMat::identity(n, n))
    }

    /// Involution of sl(n) given at the matrix level. For antilinear maps `f`
    /// must be the map itself; basis matrices are real so the columns are `f(E_k)`.
    pub fn from_sl_map(n: usize, name: &str, linearity: Linearity, f: impl Fn(&CMat) -> CMat) -> Self {
        let d = n * n - 1;
        let mut m = CMat::zeros(d, d);
        for k in 0..d {
            let mut e = CVec::zeros(d);
            e[k] = ONE;
            m.set_column(k, &sl_coords(&f(&sl_matrix(n, &e))));
        }
        Involution::new(name, linearity, m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn map(&self) -> RealLinearMap {
        match self.linearity {
            Linearity::Linear => RealLinearMap::linear(self.matrix.clone()),
            Linearity::Antilinear => RealLinearMap::antilinear(self.matrix.clone()),
        }
    }

    pub fn apply(&self, x: &CVec) -> CVec {
        match self.linearity {
            Linearity::Linear => &self.matrix * x,
            Linearity::Antilinear => &self.matrix * x.map(|z| z.conj()),
        }
    }

    /// Real `2n x 2n` operator on the realification.
    pub fn operator(&self) -> RMat {
        self.map().operator()
    }

    pub fn involution_residual(&self) -> f64 {
        let sq = self.map().compose(&self.map());
        sq.distance(&RealLinearMap::identity(self.dim()))
    }

    /// `|op J ∓ J op|` with the sign fixed by the declared linearity.
    pub fn complex_structure_residual(&self) -> f64 {
        let n = self.dim();
        let op = self.operator();
        let mut j = RMat::zeros(2 * n, 2 * n);
        for k in 0..n {
            j[(k + n, k)] = 1.0;
            j[(k, k + n)] = -1.0;
        }
        let r = match self.linearity {
            Linearity::Linear => &op * &j - &j * &op,
            Linearity::Antilinear => &op * &j + &j * &op,
        };
        r.amax()
    }

    pub fn automorphism_residual(&self, alg: &LieAlgebra) -> f64 {
        let n = alg.dim();
        let imgs: Vec<CVec> = (0..n).map(|k| self.apply(&alg.unit(k))).collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.apply(&alg.structure(i, j));
                let rhs = alg.bracket(&imgs[i], &imgs[j]);
                worst = worst.max(linalg::vmax(&(lhs - rhs)));
            }
        }
        worst
    }

    pub fn validate(&self, alg: &LieAlgebra) -> Result<()> {
        const OP: &str = "liecore::validate_involution";
        if self.matrix.nrows() != alg.dim() || self.matrix.ncols() != alg.dim() {
            return Err(invalid(OP, format!("operator for `{}` has the wrong size", self.name)));
        }
        check(OP, "involutive", self.involution_residual(), 1e-10)?;
        check(OP, "complex structure", self.complex_structure_residual(), 1e-10)?;
        check(OP, "automorphism", self.automorphism_residual(alg), 1e-9)
    }
}

/// `P` with `<x, y> = y^* P x = -B(x, theta y)`.
pub fn hermitian_gram(alg: &LieAlgebra, theta: &Involution) -> CMat {
    -theta.matrix.transpose() * alg.killing_matrix()
}

/// Realified metric `Re <x, y>` on the `[re; im]` layout.
pub fn real_metric(p: &CMat) -> RMat {
    realify_pair(p, &CMat::zeros(p.nrows(), p.ncols()))
}

/// Gram–Schmidt in the metric `g` on realified columns, dropping dependent ones.
pub fn orthonormalize(v: &RMat, g: &RMat, tol: f64) -> RMat {
    let mut out: Vec<linalg::RVec> = Vec::new();
    let scale = (0..v.ncols()).map(|j| v.column(j).norm()).fold(0.0, f64::max).max(1e-300);
    for j in 0..v.ncols() {
        let mut x = v.column(j).into_owned();
        for _ in 0..2 {
            for q in &out {
                let p = (q.transpose() * g * &x)[(0, 0)];
                x -= q * p;
            }
        }
        let nn = (x.transpose() * g * &x)[(0, 0)];
        if nn.sqrt() > tol * scale {
            out.push(x / nn.sqrt());
        }
    }
    let mut m = RMat::zeros(v.nrows(), out.len());
    for (j, q) in out.iter().enumerate() {
        m.set_column(j, q);
    }
    m
}

/// Sign convention for a real basis vector: first coordinate of (nearly) maximal
/// modulus has positive real part, or positive imaginary part when purely imaginary.
pub(crate) fn fix_sign(x: &CVec) -> CVec {
    let m = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return x.clone();
    }
    let k = x.iter().position(|z| z.norm() >= m * (1.0 - 1e-9)).unwrap();
    let z = x[k];
    let flip = if z.re.abs() > 1e-12 * m { z.re < 0.0 } else { z.im < 0.0 };
    if flip {
        -x
    } else {
        x.clone()
    }
}

/// Basis (columns, complex coordinates, real span) of `{x : phi_i x = s_i x}`,
/// orthonormal for `Re <,>` under the metric `g`.
pub fn joint_eigenspace(n: usize, conds: &[(&RealLinearMap, f64)], g: &RMat) -> CMat {
    let mut stack = RMat::zeros(2 * n * conds.len(), 2 * n);
    for (k, (phi, s)) in conds.iter().enumerate() {
        let m = phi.operator() - RMat::identity(2 * n, 2 * n) * *s;
        stack.view_mut((2 * n * k, 0), (2 * n, 2 * n)).copy_from(&m);
    }
    let ns = if conds.is_empty() { RMat::identity(2 * n, 2 * n) } else { linalg::null_space(&stack, 1e-8) };
    basis_from_real(&orthonormalize(&ns, g, 1e-8))
}

pub(crate) fn basis_from_real(v: &RMat) -> CMat {
    let cm = linalg::complexify_cols(v);
    let cols: Vec<CVec> = linalg::cols(&cm).iter().map(fix_sign).collect();
    linalg::from_cols(cm.nrows(), &cols)
}

/// Fixed space of `phi`, orthonormal for `Re <,>` defined by `theta`.
pub fn fixed_subspace(alg: &LieAlgebra, theta: &Involution, phi: &Involution) -> Result<CMat> {
    if phi.involution_residual() > 1e-10 {
        return Err(invalid("liecore::fixed_subspace", format!("`{}` is not involutive", phi.name)));
    }
    let g = real_metric(&hermitian_gram(alg, theta));
    Ok(joint_eigenspace(alg.dim(), &[(&phi.map(), 1.0)], &g))
}

#[derive(Debug, Clone)]
pub struct RealFormSetup {
    pub algebra: LieAlgebra,
    pub theta: Involution,
    pub sigma1: Involution,
    pub sigma2: Involution,
    pub g1: CMat,
    pub g2: CMat,
    pub k1: CMat,
    pub p1: CMat,
    pub k2: CMat,
    pub p2: CMat,
    gram: CMat,
    metric: RMat,
    sqrt_gram: CMat,
    inv_sqrt_gram: CMat,
}

impl RealFormSetup {
    pub fn new(algebra: LieAlgebra, theta: Involution, sigma1: Involution, sigma2: Involution) -> Result<Self> {
        const OP: &str = "liecore::real_form_setup";
        for inv in [&theta, &sigma1, &sigma2] {
            inv.validate(&algebra)?;
            if inv.linearity != Linearity::Antilinear {
                return Err(invalid(OP, format!("`{}` must be antilinear", inv.name)));
            }
        }
        let th = theta.map();
        for s in [&sigma1, &sigma2] {
            let sm = s.map();
            check(OP, "commutes with theta", sm.compose(&th).distance(&th.compose(&sm)), 1e-10)?;
        }
        let gram = hermitian_gram(&algebra, &theta);
        check(OP, "hermitian inner product symmetric", linalg::max_abs(&(&gram - gram.adjoint())), 1e-9 * linalg::max_abs(&gram))?;
        let gram = linalg::herm(&gram);
        let (sqrt_gram, inv_sqrt_gram) = linalg::herm_sqrt(&gram).ok_or_else(|| Error::Validation {
            op: OP,
            invariant: "hermitian inner product positive definite",
            residual: linalg::herm_eig(&gram).0.first().copied().unwrap_or(0.0),
        })?;
        let (vals, _) = linalg::herm_eig(&gram);
        if vals[0] <= 1e-8 {
            return Err(Error::Validation { op: OP, invariant: "hermitian inner product positive definite", residual: vals[0] });
        }
        let metric = real_metric(&gram);
        let n = algebra.dim();
        let part = |s: &Involution, sign: f64| joint_eigenspace(n, &[(&s.map(), 1.0), (&th, sign)], &metric);
        let g1 = joint_eigenspace(n, &[(&sigma1.map(), 1.0)], &metric);
        let g2 = joint_eigenspace(n, &[(&sigma2.map(), 1.0)], &metric);
        let (k1, p1, k2, p2) = (part(&sigma1, 1.0), part(&sigma1, -1.0), part(&sigma2, 1.0), part(&sigma2, -1.0));
        for (g, k, p) in [(&g1, &k1, &p1), (&g2, &k2, &p2)] {
            if g.ncols() != n {
                return Err(Error::Validation { op: OP, invariant: "real form dimension", residual: (g.ncols() as f64 - n as f64).abs() });
            }
            if k.ncols() + p.ncols() != g.ncols() {
                return Err(Error::Validation { op: OP, invariant: "g = k + p", residual: 1.0 });
            }
        }
        Ok(RealFormSetup { algebra, theta, sigma1, sigma2, g1, g2, k1, p1, k2, p2, gram, metric, sqrt_gram, inv_sqrt_gram })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Same data with the roles of the two real forms exchanged.
    pub fn swapped(&self) -> Result<Self> {
        RealFormSetup::new(self.algebra.clone(), self.theta.clone(), self.sigma2.clone(), self.sigma1.clone())
    }

    pub fn gram(&self) -> &CMat {
        &self.gram
    }

    pub fn metric(&self) -> &RMat {
        &self.metric
    }

    /// `L` with `<x, y> = (L y)^* (L x)`.
    pub fn sqrt_gram(&self) -> &CMat {
        &self.sqrt_gram
    }

    pub fn inv_sqrt_gram(&self) -> &CMat {
        &self.inv_sqrt_gram
    }

    pub fn hermitian_inner(&self, x: &CVec, y: &CVec) -> C64 {
        (y.adjoint() * &self.gram * x)[(0, 0)]
    }

    pub fn norm(&self, x: &CVec) -> f64 {
        self.hermitian_inner(x, x).re.max(0.0).sqrt()
    }

    pub fn cartan_decompose(&self, j: usize) -> Result<(CMat, CMat)> {
        match j {
            1 => Ok((self.k1.clone(), self.p1.clone())),
            2 => Ok((self.k2.clone(), self.p2.clone())),
            _ => Err(invalid("liecore::cartan_decompose", "j must be 1 or 2")),
        }
    }

    /// Orthonormal basis of the real subspace cut out by the given conditions.
    pub fn eigenspace(&self, conds: &[(&RealLinearMap, f64)]) -> CMat {
        joint_eigenspace(self.dim(), conds, &self.metric)
    }

    /// Orthonormalize the real span of the columns of `v`.
    pub fn orthonormal_span(&self, v: &CMat) -> CMat {
        basis_from_real(&orthonormalize(&linalg::realify_cols(v), &self.metric, 1e-8))
    }
}

pub fn hermitian_inner(setup: &RealFormSetup, x: &CVec, y: &CVec) -> C64 {
    setup.hermitian_inner(x, y)
}

pub fn cartan_decompose(setup: &RealFormSetup, j: usize) -> Result<(CMat, CMat)> {
    setup.cartan_decompose(j)
}

pub fn bracket(alg: &LieAlgebra, x: &CVec, y: &CVec) -> Result<CVec> {
    alg.try_bracket(x, y)
}

/// `theta(X) = -conj(X)^T` on sl(n).
pub fn sl_theta(n: usize) -> Involution {
    Involution::from_sl_map(n, "theta", Linearity::Antilinear, |x| -x.adjoint())
}

/// `X -> conj(X)` on sl(n); fixes sl(n, R).
pub fn sl_conj(n: usize) -> Involution {
    Involution::from_sl_map(n, "conj", Linearity::Antilinear, |x| x.map(|z| z.conj()))
}

/// `X -> -I_{p,q} X^* I_{p,q}`; fixes su(p, q).
pub fn sl_unitary(p: usize, q: usize, name: &str) -> Involution {
    let n = p + q;
    let d = CMat::from_diagonal(&CVec::from_fn(n, |k, _| if k < p { ONE } else { -ONE }));
    Involution::from_sl_map(n, name, Linearity::Antilinear, move |x| -(&d * x.adjoint() * &d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> LieAlgebra {
        build_sl(2).unwrap()
    }

    #[test]
    fn sl2_bracket_values() {
        let a = sl2();
        let (e, f, h) = (a.unit(0), a.unit(1), a.unit(2));
        assert_eq!(a.bracket(&e, &f), h);
        assert!((a.bracket(&h, &e) - &e * c(2.0, 0.0)).norm() < 1e-15);
        assert!(a.bracket(&e, &e).norm() == 0.0);
    }

    #[test]
    fn killing_matches_trace_oracle() {
        for n in 2..=4 {
            let a = build_sl(n).unwrap();
            let d = a.dim();
            for i in 0..d {
                for j in 0..d {
                    let x = sl_matrix(n, &a.unit(i));
                    let y = sl_matrix(n, &a.unit(j));
                    let oracle = (x * y).trace() * c(2.0 * n as f64, 0.0);
                    assert!((a.killing_matrix()[(i, j)] - oracle).norm() < 1e-10);
                }
            }
        }
        assert!((sl2().killing_matrix()[(2, 2)].re - 8.0).abs() < 1e-12);
    }

    #[test]
    fn build_sl_rejects_small_n() {
        assert!(matches!(build_sl(1), Err(Error::InvalidArgument { .. })));
    }

    #[test]
    fn direct_sum_blocks() {
        let s = direct_sum(&sl2(), &sl2());
        assert_eq!(s.dim(), 6);
        assert_eq!(s.bracket(&s.unit(0), &s.unit(4)).norm(), 0.0);
        assert_eq!(s.killing_matrix().view((0, 3), (3, 3)).norm(), 0.0);
        assert!(s.labels()[3].starts_with("g2."));
    }

    #[test]
    fn inner_product_values() {
        let a = sl2();
        let th = sl_theta(2);
        let setup = RealFormSetup::new(a.clone(), th.clone(), th.clone(), th).unwrap();
        assert!(setup.hermitian_inner(&a.unit(0), &a.unit(1)).norm() < 1e-14);
        assert!((setup.hermitian_inner(&a.unit(2), &a.unit(2)) - c(8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn real_form_dimensions() {
        let a = sl2();
        let th = sl_theta(2);
        let s11 = sl_unitary(1, 1, "s11");
        assert_eq!(fixed_subspace(&a, &th, &th).unwrap().ncols(), 3);
        assert_eq!(fixed_subspace(&a, &th, &s11).unwrap().ncols(), 3);
        let id = Involution::identity(3);
        assert_eq!(fixed_subspace(&a, &th, &id).unwrap().ncols(), 6);
        let setup = RealFormSetup::new(a, th.clone(), th, s11).unwrap();
        assert_eq!((setup.k1.ncols(), setup.p1.ncols()), (3, 0));
        assert_eq!((setup.k2.ncols(), setup.p2.ncols()), (1, 2));
    }

    #[test]
    fn sl3_real_cartan_split() {
        let a = build_sl(3).unwrap();
        let setup = RealFormSetup::new(a, sl_theta(3), sl_conj(3), sl_conj(3)).unwrap();
        let (k, p) = setup.cartan_decompose(1).unwrap();
        assert_eq!((k.ncols(), p.ncols()), (3, 5));
        // oracle: k is antisymmetric, p symmetric
        for j in 0..k.ncols() {
            let m = sl_matrix(3, &k.column(j).into_owned());
            assert!((&m + m.transpose()).norm() < 1e-10);
        }
        for j in 0..p.ncols() {
            let m = sl_matrix(3, &p.column(j).into_owned());
            assert!((&m - m.transpose()).norm() < 1e-10);
        }
    }

    #[test]
    fn non_involution_is_rejected() {
        let a = sl2();
        let bad = Involution::new("bad", Linearity::Linear, CMat::identity(3, 3) * c(2.0, 0.0));
        assert!(fixed_subspace(&a, &sl_theta(2), &bad).is_err());
        assert!(bad.validate(&a).is_err());
    }
}
