//! Extended weight-space decomposition of the complexified algebra under the
//! commuting family `ad(c)` and `tau_n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{CartanDatum, DEFAULT_SEED};
use crate::error::{check, invalid, Error, Result};
use crate::liecore::{RealFormSetup, RealLinearMap};
use crate::linalg::{self, c, CMat, CVec, C64, I, ONE, ZERO};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reality {
    Zero,
    Real,
    Imaginary,
    Complex,
}

impl Reality {
    pub fn as_str(self) -> &'static str {
        match self {
            Reality::Zero => "zero",
            Reality::Real => "real",
            Reality::Imaginary => "imaginary",
            Reality::Complex => "complex",
        }
    }
}

/// One `(lambda, a)` space.
#[derive(Debug, Clone)]
pub struct ExtendedWeight {
    /// `lambda(c_k)` for the columns of `c_basis` (t first, then a).
    pub lambda: Vec<C64>,
    pub a: C64,
    /// Basis of the space: one vector for `lambda != 0`, `c_basis` for `(0, 1)`.
    pub basis: Vec<CVec>,
    pub reality: Reality,
    /// `eta_lambda = -[xi, theta xi]` for a unit `xi`; `None` for `lambda = 0`.
    pub coroot: Option<CVec>,
    /// Sign of `B(xi_{lambda,a}, xi_{-lambda,1/a})` after normalization; 0 before.
    pub norm_sign: f64,
}

impl ExtendedWeight {
    pub fn is_zero(&self) -> bool {
        self.reality == Reality::Zero
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self) -> &CVec {
        &self.basis[0]
    }

    /// `lambda(eta)` for real coordinates `eta` in `c_basis`.
    pub fn eval(&self, eta: &[f64]) -> C64 {
        self.lambda.iter().zip(eta).map(|(l, x)| l * x).sum()
    }

    /// Real values of `lambda` on `i t ⊕ a`: `i lambda(t_k)` then `lambda(a_k)`.
    pub fn lambda_hat(&self, dim_t: usize) -> Vec<f64> {
        self.lambda
            .iter()
            .enumerate()
            .map(|(k, l)| if k < dim_t { (I * l).re } else { l.re })
            .collect()
    }

    pub fn a_is(&self, v: f64) -> bool {
        self.a == c(v, 0.0)
    }
}

#[derive(Debug, Clone)]
pub struct WeightSystem {
    pub setup: RealFormSetup,
    pub datum: CartanDatum,
    pub tau: CMat,
    pub weights: Vec<ExtendedWeight>,
    /// Index of `(0, 1)`.
    pub zero: usize,
    pub positive: Vec<bool>,
    pub regular: Option<Vec<f64>>,
    pub sigma2_action: Vec<usize>,
    pub theta_action: Vec<usize>,
    pub levi_normalized: bool,
    pub tol: Tolerances,
}

impl WeightSystem {
    /// Decomposition, default positive system and Levi basis.
    pub fn build(setup: &RealFormSetup, datum: &CartanDatum) -> Result<Self> {
        Self::build_with(setup, datum, &Tolerances::default(), DEFAULT_SEED)
    }

    pub fn build_with(setup: &RealFormSetup, datum: &CartanDatum, tol: &Tolerances, seed: u64) -> Result<Self> {
        let sys = extended_decomposition_with(setup, datum, tol)?;
        let sys = positive_system_seeded(&sys, None, seed)?;
        levi_basis(&sys)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.datum.dim()
    }

    pub fn dim_t(&self) -> usize {
        self.datum.dim_t()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.weights[i].is_zero())
    }

    pub fn lambda_hat(&self, i: usize) -> Vec<f64> {
        self.weights[i].lambda_hat(self.dim_t())
    }

    /// Coordinates in `c_basis` of a vector of `c^C`, with residual.
    pub fn c_coords(&self, v: &CVec) -> (CVec, f64) {
        linalg::coords(&self.datum.c_basis(), v)
    }

    /// Same `lambda`, any `a`.
    pub fn same_lambda(&self, i: usize, j: usize) -> bool {
        lambda_dist(&self.weights[i].lambda, &self.weights[j].lambda) < 1e-6
    }

    /// Index of `(lambda, a)`, if present.
    pub fn find(&self, lambda: &[C64], a: C64) -> Option<usize> {
        find_weight(&self.weights, lambda, a)
    }

    /// `lambda(eta_mu)` extended complex-linearly.
    pub fn pairing(&self, i: usize, j: usize) -> Option<C64> {
        let eta = self.weights[j].coroot.as_ref()?;
        let (y, _) = self.c_coords(eta);
        Some(self.weights[i].lambda.iter().zip(y.iter()).map(|(l, x)| l * x).sum())
    }

    /// Distinct nonzero `lambda` up to sign, as representative indices.
    pub fn distinct_lambdas(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        for i in self.nonzero() {
            let l = &self.weights[i].lambda;
            let neg: Vec<C64> = l.iter().map(|z| -z).collect();
            if !reps.iter().any(|&r| {
                let lr = &self.weights[r].lambda;
                lambda_dist(lr, l) < 1e-6 || lambda_dist(lr, &neg) < 1e-6
            }) {
                reps.push(i);
            }
        }
        reps
    }
}

fn lambda_dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn find_weight(ws: &[ExtendedWeight], lambda: &[C64], a: C64) -> Option<usize> {
    let mut best = None;
    let mut bd = f64::INFINITY;
    for (k, w) in ws.iter().enumerate() {
        let d = lambda_dist(&w.lambda, lambda).max((w.a - a).norm());
        if d < bd {
            bd = d;
            best = Some(k);
        }
    }
    best.filter(|_| bd < 1e-6)
}

/// `tau_n = Ad(n^-1) sigma1 Ad(n) sigma2`; C-linear.
pub fn tau_n(setup: &RealFormSetup, datum: &CartanDatum) -> RealLinearMap {
    datum.twisted_sigma1(setup).compose(&setup.sigma2.map())
}

fn group(vals: &[f64], vecs: &CMat, tol: f64, op: &'static str) -> Result<Vec<(f64, CMat)>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=vals.len() {
        if k < vals.len() {
            let gap = vals[k] - vals[k - 1];
            if gap > tol && gap <= 10.0 * tol {
                return Err(Error::IllConditioned { op, msg: format!("eigenvalue gap {gap:.3e} is within ten times the clustering tolerance") });
            }
            if gap <= tol {
                continue;
            }
        }
        let mean = vals[start..k].iter().sum::<f64>() / (k - start) as f64;
        out.push((mean, vecs.columns(start, k - start).into_owned()));
        start = k;
    }
    Ok(out)
}

/// Eigen-split of a normal matrix into `(eigenvalue, orthonormal eigenvectors)`.
fn split_normal(r: &CMat, tol: f64, op: &'static str) -> Result<Vec<(C64, CMat)>> {
    let h1 = linalg::herm(r);
    let h2 = (r - r.adjoint()) * c(0.0, -0.5);
    let (v1, q1) = linalg::herm_eig(&h1);
    let mut out = Vec::new();
    for (re, g) in group(&v1, &q1, tol, op)? {
        let sub = g.adjoint() * &h2 * &g;
        let (v2, q2) = linalg::herm_eig(&sub);
        for (im, g2) in group(&v2, &q2, tol, op)? {
            out.push((c(re, im), &g * g2));
        }
    }
    Ok(out)
}

fn snap(z: C64, tol: f64) -> C64 {
    c(if z.re.abs() < tol { 0.0 } else { z.re }, if z.im.abs() < tol { 0.0 } else { z.im })
}

pub fn extended_decomposition(setup: &RealFormSetup, datum: &CartanDatum) -> Result<WeightSystem> {
    extended_decomposition_with(setup, datum, &Tolerances::default())
}

pub fn extended_decomposition_with(setup: &RealFormSetup, datum: &CartanDatum, tol: &Tolerances) -> Result<WeightSystem> {
    const OP: &str = "weights::extended_decomposition";
    let alg = &setup.algebra;
    let n = setup.dim();
    let r = datum.dim();
    let tau_map = tau_n(setup, datum);
    check(OP, "tau_n C-linear", linalg::max_abs(&tau_map.anti), 1e-9)?;
    let tau = tau_map.lin;
    let p = setup.gram();
    check(OP, "tau_n unitary", linalg::max_abs(&(tau.adjoint() * p * &tau - p)) / linalg::max_abs(p), 1e-9)?;
    let cb = datum.c_basis();
    for k in 0..r {
        let x = cb.column(k).into_owned();
        check(OP, "tau_n fixes c", (&tau * &x - &x).norm() / x.norm(), 1e-9)?;
    }
    let (l, li) = (setup.sqrt_gram(), setup.inv_sqrt_gram());
    let ads: Vec<CMat> = (0..r).map(|k| alg.ad(&cb.column(k).into_owned())).collect();
    let mut ops: Vec<CMat> = ads.iter().map(|a| l * a * li).collect();
    ops.push(l * &tau * li);

    let mut clusters: Vec<(CMat, Vec<C64>)> = vec![(CMat::identity(n, n), vec![])];
    for x in &ops {
        let mut next = Vec::new();
        for (q, vals) in clusters {
            let rr = q.adjoint() * x * &q;
            for (v, sub) in split_normal(&rr, tol.cluster, OP)? {
                let mut vv = vals.clone();
                vv.push(v);
                next.push((&q * sub, vv));
            }
        }
        clusters = next;
    }

    let mut weights = Vec::new();
    let mut zero_found = false;
    for (q, vals) in clusters {
        let lambda: Vec<C64> = vals[..r].iter().map(|z| snap(*z, tol.cluster)).collect();
        let mut a = vals[r];
        if (a.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Validation { op: OP, invariant: "|a| = 1", residual: (a.norm() - 1.0).abs() });
        }
        a /= a.norm();
        for s in [1.0, -1.0] {
            if (a - c(s, 0.0)).norm() < 1e-8 {
                a = c(s, 0.0);
            }
        }
        let on_t = lambda[..datum.dim_t()].iter().all(|z| z.norm() < tol.cluster);
        let on_a = lambda[datum.dim_t()..].iter().all(|z| z.norm() < tol.cluster);
        let reality = match (on_t, on_a) {
            (true, true) => Reality::Zero,
            (true, false) => Reality::Real,
            (false, true) => Reality::Imaginary,
            (false, false) => Reality::Complex,
        };
        let vecs: Vec<CVec> = linalg::cols(&(li * &q));
        for x in &vecs {
            for (k, ad) in ads.iter().enumerate() {
                let scale = linalg::max_abs(ad).max(1.0);
                check(OP, "ad(c) eigenvector", (ad * x - x * lambda[k]).norm() / x.norm(), 1e-8 * scale)?;
            }
            check(OP, "tau_n eigenvector", (&tau * x - x * a).norm() / x.norm(), 1e-8)?;
        }
        let basis = if reality == Reality::Zero && a == ONE {
            if vecs.len() != r {
                return Err(Error::Validation { op: OP, invariant: "(0,1)-space = c^C", residual: (vecs.len() as f64 - r as f64).abs() });
            }
            let qb = linalg::from_cols(n, &vecs);
            for k in 0..r {
                let (_, res) = linalg::coords(&qb, &cb.column(k).into_owned());
                check(OP, "(0,1)-space = c^C", res, 1e-8)?;
            }
            zero_found = true;
            linalg::cols(&cb)
        } else if reality == Reality::Zero {
            vecs
        } else {
            if vecs.len() != 1 {
                return Err(Error::DegenerateWeight { op: OP, msg: format!("nonzero weight space of dimension {}", vecs.len()) });
            }
            vec![linalg::fix_phase(&vecs[0])]
        };
        weights.push(ExtendedWeight { lambda, a, basis, reality, coroot: None, norm_sign: 0.0 });
    }
    if !zero_found && r > 0 {
        return Err(Error::Validation { op: OP, invariant: "(0,1)-space = c^C", residual: 1.0 });
    }

    let dt = datum.dim_t();
    weights.sort_by(|x, y| {
        let kx = (x.reality != Reality::Zero, !(x.is_zero() && x.a == ONE));
        let ky = (y.reality != Reality::Zero, !(y.is_zero() && y.a == ONE));
        kx.cmp(&ky)
            .then_with(|| {
                let (hx, hy) = (x.lambda_hat(dt), y.lambda_hat(dt));
                hy.iter().zip(&hx).map(|(b, a)| b.total_cmp(a)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            })
            .then_with(|| x.a.arg().total_cmp(&y.a.arg()))
    });
    let total: usize = weights.iter().map(|w| w.dim()).sum();
    check(OP, "weight spaces span the algebra", (total as f64 - n as f64).abs(), 0.0)?;

    let theta = setup.theta.map();
    let sigma2 = setup.sigma2.map();
    let mut theta_action = vec![0; weights.len()];
    let mut sigma2_action = vec![0; weights.len()];
    for i in 0..weights.len() {
        let w = &weights[i];
        let neg: Vec<C64> = w.lambda.iter().map(|z| -z).collect();
        let conj: Vec<C64> = w.lambda.iter().map(|z| z.conj()).collect();
        theta_action[i] = find_weight(&weights, &neg, w.a.conj()).ok_or(Error::Validation { op: OP, invariant: "theta maps (l,a) to (-l,1/a)", residual: 1.0 })?;
        sigma2_action[i] = find_weight(&weights, &conj, w.a).ok_or(Error::Validation { op: OP, invariant: "sigma2 maps (l,a) to (conj l,a)", residual: 1.0 })?;
        for (map, j, name) in [(&theta, theta_action[i], "theta maps (l,a) to (-l,1/a)"), (&sigma2, sigma2_action[i], "sigma2 maps (l,a) to (conj l,a)")] {
            let target = linalg::from_cols(n, &weights[j].basis);
            for x in &w.basis {
                let (_, res) = linalg::coords(&target, &map.apply(x));
                check(OP, name, res / x.norm(), 1e-8)?;
            }
        }
    }
    for i in 0..weights.len() {
        for j in 0..weights.len() {
            if j == theta_action[i] {
                continue;
            }
            for x in &weights[i].basis {
                for y in &weights[j].basis {
                    check(OP, "B-orthogonality", alg.killing(x, y).norm() / (setup.norm(x) * setup.norm(y)), 1e-8)?;
                }
            }
        }
    }
    for w in weights.iter_mut() {
        if !w.is_zero() {
            let xi = &w.basis[0] / c(setup.norm(&w.basis[0]), 0.0);
            w.coroot = Some(-alg.bracket(&xi, &setup.theta.apply(&xi)));
        }
    }
    let zero = weights.iter().position(|w| w.is_zero() && w.a == ONE).unwrap_or(0);
    let len = weights.len();
    Ok(WeightSystem {
        setup: setup.clone(),
        datum: datum.clone(),
        tau,
        weights,
        zero,
        positive: vec![false; len],
        regular: None,
        sigma2_action,
        theta_action,
        levi_normalized: false,
        tol: *tol,
    })
}

pub fn coroot(system: &WeightSystem, i: usize) -> Result<CVec> {
    system.weights.get(i).and_then(|w| w.coroot.clone()).ok_or_else(|| invalid("weights::coroot", format!("weight {i} is zero or out of range")))
}

/// `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2_triple(system: &WeightSystem, i: usize) -> Result<(CVec, CVec, CVec)> {
    const OP: &str = "weights::sl2_triple";
    let eta = coroot(system, i)?;
    let setup = &system.setup;
    let xi = system.weights[i].vector() / c(setup.norm(system.weights[i].vector()), 0.0);
    let le = system.pairing(i, i).unwrap_or(ZERO);
    if le.norm() < 1e-10 {
        return Err(Error::DegenerateWeight { op: OP, msg: "lambda(eta_lambda) vanishes".into() });
    }
    let h = &eta * (c(2.0, 0.0) / le);
    let f = setup.theta.apply(&xi) * (c(-2.0, 0.0) / le);
    Ok((h, xi, f))
}

pub fn positive_system(system: &WeightSystem, regular: Option<&[f64]>) -> Result<WeightSystem> {
    positive_system_seeded(system, regular, DEFAULT_SEED)
}

/// Values `lambda_hat(h)` of every weight at a point `h` of `i t ⊕ a`.
pub fn evaluate_hat(system: &WeightSystem, h: &[f64]) -> Vec<f64> {
    (0..system.len()).map(|i| system.lambda_hat(i).iter().zip(h).map(|(a, b)| a * b).sum()).collect()
}

pub fn is_regular(system: &WeightSystem, h: &[f64]) -> bool {
    let v = evaluate_hat(system, h);
    system.nonzero().all(|i| v[i].abs() > 1e-6)
}

pub fn random_rational(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-97i32..=97) as f64 / rng.random_range(1i32..=31) as f64).collect()
}

pub fn positive_system_seeded(system: &WeightSystem, regular: Option<&[f64]>, seed: u64) -> Result<WeightSystem> {
    const OP: &str = "weights::positive_system";
    let r = system.rank();
    let h = match regular {
        Some(h) => {
            if h.len() != r {
                return Err(invalid(OP, format!("regular element needs {r} coordinates")));
            }
            if !is_regular(system, h) {
                return Err(Error::NonRegular { op: OP, msg: "some weight is within 1e-6 of zero".into() });
            }
            h.to_vec()
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            for _ in 0..1000 {
                let h = random_rational(&mut rng, r);
                if is_regular(system, &h) {
                    found = Some(h);
                    break;
                }
            }
            found.ok_or_else(|| Error::NonRegular { op: OP, msg: "no regular element found".into() })?
        }
    };
    let vals = evaluate_hat(system, &h);
    let mut out = system.clone();
    out.positive = (0..system.len()).map(|i| !system.weights[i].is_zero() && vals[i] > 0.0).collect();
    out.regular = Some(h);
    Ok(out)
}

/// sigma2-compatible basis normalized so that `B(xi_{l,a}, xi_{-l,1/a}) = ±1`.
pub fn levi_basis(system: &WeightSystem) -> Result<WeightSystem> {
    const OP: &str = "weights::levi_basis";
    if system.levi_normalized {
        return Ok(system.clone());
    }
    let mut out = system.clone();
    let setup = &system.setup;
    let alg = &setup.algebra;
    let n = setup.dim();
    let s2 = setup.sigma2.map();
    let m2 = &setup.sigma2.matrix;
    let unit = |x: &CVec| x / c(setup.norm(x), 0.0);
    let len = out.len();
    let mut done = vec![false; len];
    for i in 0..len {
        if done[i] || i == out.zero {
            continue;
        }
        let j = out.sigma2_action[i];
        let w = &out.weights[i];
        if w.is_zero() {
            // sigma2-real basis of a (0, a) space
            let v = linalg::from_cols(n, &w.basis);
            let img = m2 * v.map(|z| z.conj());
            let wc = CMat::from_columns(&(0..v.ncols()).map(|k| linalg::coords(&v, &img.column(k).into_owned()).0).collect::<Vec<_>>());
            let m = v.ncols();
            let op = linalg::realify_pair(&(-CMat::identity(m, m)), &wc);
            let ns = linalg::null_space(&op, 1e-8);
            let coeffs = linalg::complexify_cols(&ns);
            let span = &v * coeffs;
            let basis = setup.orthonormal_span(&span);
            if basis.ncols() != m {
                return Err(Error::BasisConstruction { op: OP, msg: "sigma2-real basis of a zero-weight space".into() });
            }
            out.weights[i].basis = linalg::cols(&basis).iter().map(linalg::fix_phase).collect();
            done[i] = true;
            continue;
        }
        let xi = unit(&w.basis[0]);
        if j != i {
            out.weights[i].basis = vec![xi.clone()];
            out.weights[j].basis = vec![s2.apply(&xi)];
            done[i] = true;
            done[j] = true;
        } else {
            let mut v = &xi + s2.apply(&xi);
            if setup.norm(&v) < 1e-8 {
                let r = &xi * I;
                v = &r + s2.apply(&r);
            }
            if setup.norm(&v) < 1e-8 {
                return Err(Error::BasisConstruction { op: OP, msg: format!("sigma2 averaging collapsed weight {i}") });
            }
            out.weights[i].basis = vec![unit(&v)];
            done[i] = true;
        }
    }

    let mut done = vec![false; len];
    for i in 0..len {
        if done[i] || out.weights[i].is_zero() {
            continue;
        }
        let j = out.theta_action[i];
        let beta = alg.killing(&out.weights[i].basis[0], &out.weights[j].basis[0]);
        if beta.norm() < 1e-10 {
            return Err(Error::BasisConstruction { op: OP, msg: format!("B(xi, xi') vanishes for weight {i}") });
        }
        let sj = out.sigma2_action[j];
        let sign;
        if sj == j {
            let s = c(1.0 / beta.re, 0.0);
            out.weights[j].basis[0] *= s;
            sign = 1.0;
        } else if sj == i {
            let s = c(1.0 / beta.re.abs().sqrt(), 0.0);
            out.weights[i].basis[0] *= s;
            out.weights[j].basis[0] *= s;
            sign = beta.re.signum();
        } else {
            let s = ONE / beta;
            out.weights[j].basis[0] *= s;
            out.weights[sj].basis[0] *= s.conj();
            sign = 1.0;
            let si = out.sigma2_action[i];
            out.weights[si].norm_sign = sign;
            out.weights[sj].norm_sign = sign;
            done[si] = true;
            done[sj] = true;
        }
        out.weights[i].norm_sign = sign;
        out.weights[j].norm_sign = sign;
        done[i] = true;
        done[j] = true;
    }
    let res = levi_residuals(&out);
    check(OP, "sigma2 compatibility", res.0, 1e-9)?;
    check(OP, "normalization", res.1, 1e-8)?;
    out.levi_normalized = true;
    Ok(out)
}

/// `(sigma2-compatibility, normalization)` residuals of the current basis.
pub fn levi_residuals(system: &WeightSystem) -> (f64, f64) {
    let setup = &system.setup;
    let s2 = setup.sigma2.map();
    let alg = &setup.algebra;
    let mut compat = 0.0f64;
    let mut normal = 0.0f64;
    for i in system.nonzero() {
        let w = &system.weights[i];
        let j = system.sigma2_action[i];
        compat = compat.max((s2.apply(w.vector()) - system.weights[j].vector()).norm());
        let k = system.theta_action[i];
        let beta = alg.killing(w.vector(), system.weights[k].vector());
        normal = normal.max((beta - c(w.norm_sign, 0.0)).norm());
        if let Some(eta) = &w.coroot {
            let br = alg.bracket(w.vector(), system.weights[k].vector());
            normal = normal.max((br - eta * c(w.norm_sign, 0.0)).norm());
        }
    }
    (compat, normal)
}

/// Residuals of the basic identities of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdentityResiduals {
    /// `theta` maps the `(lambda, a)` space onto the `(-lambda, 1/a)` space.
    pub theta_map: f64,
    /// `B(u_{lambda,a}, u_{mu,b}) = 0` unless `(lambda, a) = (-mu, 1/b)`.
    pub orthogonality: f64,
    /// `B(eta_lambda, x) = lambda(x)` on `c`.
    pub coroot: f64,
    /// `[xi, xi'] = B(xi, xi') eta_lambda` for `xi'` in the `(-lambda, 1/a)` space.
    pub bracket: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.theta_map.max(self.orthogonality).max(self.coroot).max(self.bracket)
    }
}

/// Recomputes the identities from the algebra, independent of how the weights were built.
pub fn identity_residuals(system: &WeightSystem) -> IdentityResiduals {
    let setup = &system.setup;
    let alg = &setup.algebra;
    let cb = system.datum.c_basis();
    let unit = |x: &CVec| x / c(setup.norm(x), 0.0);
    let mut r = IdentityResiduals::default();
    for w in &system.weights {
        let neg: Vec<C64> = w.lambda.iter().map(|z| -z).collect();
        let partner = system.find(&neg, w.a.inv());
        let Some(j) = partner else {
            r.theta_map = r.theta_map.max(1.0);
            continue;
        };
        for x in &w.basis {
            let tx = setup.theta.apply(&unit(x));
            for k in 0..cb.ncols() {
                let adx = alg.bracket(&cb.column(k).into_owned(), &tx);
                r.theta_map = r.theta_map.max((adx + &tx * w.lambda[k]).norm());
            }
            r.theta_map = r.theta_map.max((&system.tau * &tx - &tx * w.a.inv()).norm());
        }
        for (k, v) in system.weights.iter().enumerate() {
            if k == j {
                continue;
            }
            for x in &w.basis {
                for y in &v.basis {
                    r.orthogonality = r.orthogonality.max(alg.killing(&unit(x), &unit(y)).norm());
                }
            }
        }
        if let Some(eta) = &w.coroot {
            for k in 0..cb.ncols() {
                r.coroot = r.coroot.max((alg.killing(eta, &cb.column(k).into_owned()) - w.lambda[k]).norm());
            }
            for x in &w.basis {
                let x = unit(x);
                for y in &system.weights[j].basis {
                    let y = unit(y);
                    let lhs = alg.bracket(&x, &y);
                    r.bracket = r.bracket.max((lhs - eta * alg.killing(&x, &y)).norm());
                }
            }
        }
    }
    r
}

/// Largest residual of the `sl2`-triple relations over nonzero weights, relative to the vector sizes.
pub fn sl2_triple_residual(system: &WeightSystem) -> Result<f64> {
    let alg = &system.setup.algebra;
    let two = c(2.0, 0.0);
    let mut r = 0.0f64;
    for i in system.nonzero() {
        let (h, e, f) = sl2_triple(system, i)?;
        r = r
            .max((alg.bracket(&h, &e) - &e * two).norm() / e.norm().max(1.0))
            .max((alg.bracket(&h, &f) + &f * two).norm() / f.norm().max(1.0))
            .max((alg.bracket(&e, &f) - &h).norm() / h.norm().max(1.0));
    }
    Ok(r)
}

/// Connectedness of the graph on `lambda` mod sign with edges `lambda(eta_mu) != 0`.
pub fn is_irreducible(system: &WeightSystem) -> bool {
    let reps = system.distinct_lambdas();
    if reps.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; reps.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..reps.len() {
            if !seen[v] && system.pairing(reps[u], reps[v]).map(|z| z.norm() > 1e-8).unwrap_or(false) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Whether some `(m lambda, a^m)` space with `m >= 2` is present.
pub fn has_multiples(system: &WeightSystem) -> bool {
    system.nonzero().any(|i| {
        let w = &system.weights[i];
        (2..=4).any(|m| {
            let lm: Vec<C64> = w.lambda.iter().map(|z| z * m as f64).collect();
            system.find(&lm, w.a.powi(m)).is_some()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{fundamental_cartan, make_datum};
    use crate::liecore::{build_sl, sl_theta, sl_unitary};

    fn sl2(s1: &str, s2: &str) -> RealFormSetup {
        let pick = |s: &str| if s == "theta" { sl_theta(2) } else { sl_unitary(1, 1, "s11") };
        RealFormSetup::new(build_sl(2).unwrap(), sl_theta(2), pick(s1), pick(s2)).unwrap()
    }

    #[test]
    fn tau_identity_when_equal() {
        let s = sl2("s11", "s11");
        let d = fundamental_cartan(&s).unwrap();
        let t = tau_n(&s, &d);
        assert!(linalg::max_abs(&(t.lin - CMat::identity(3, 3))) < 1e-12);
    }

    #[test]
    fn tau_is_conjugation_by_j() {
        // tau(X) = J X J on (E12, E21, H): eigenvalues -1, -1, 1
        let s = sl2("theta", "s11");
        let d = fundamental_cartan(&s).unwrap();
        let t = tau_n(&s, &d).lin;
        let expect = CMat::from_diagonal(&CVec::from_vec(vec![-ONE, -ONE, ONE]));
        assert!(linalg::max_abs(&(t - expect)) < 1e-12);
    }

    #[test]
    fn su11_compact_cartan_weights() {
        let s = sl2("s11", "s11");
        let ih = CVec::from_vec(vec![ZERO, ZERO, I]);
        let d = make_datum(&s, &CVec::zeros(3), &CMat::from_columns(&[ih])).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        assert_eq!(w.len(), 3);
        for i in w.nonzero() {
            assert_eq!(w.weights[i].reality, Reality::Imaginary);
            assert_eq!(w.weights[i].a, ONE);
        }
    }

    #[test]
    fn theta_s11_weights_have_a_minus_one() {
        let s = sl2("theta", "s11");
        let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
        let nz: Vec<_> = w.nonzero().collect();
        assert_eq!(nz.len(), 2);
        for i in nz {
            assert_eq!(w.weights[i].a, -ONE);
            assert_eq!(w.weights[i].reality, Reality::Imaginary);
        }
    }

    #[test]
    fn su11_split_cartan_weights_are_real() {
        let s = sl2("s11", "s11");
        let d = fundamental_cartan(&s).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        for i in w.nonzero() {
            assert_eq!(w.weights[i].reality, Reality::Real);
            assert_eq!(w.weights[i].norm_sign, 1.0);
        }
        // ad(E12 + E21) has eigenvalues ±2; the basis vector is a unit multiple
        let x = d.a_basis.column(0).into_owned();
        let scale = (x[0].norm()).recip();
        let vals: Vec<f64> = w.nonzero().map(|i| w.weights[i].lambda[0].re * scale).collect();
        assert!(vals.iter().any(|v| (v - 2.0).abs() < 1e-10) && vals.iter().any(|v| (v + 2.0).abs() < 1e-10));
    }

    #[test]
    fn identities_hold_on_sl2_pairs() {
        for (a, b) in [("theta", "s11"), ("s11", "s11"), ("s11", "theta")] {
            let s = sl2(a, b);
            let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
            assert!(identity_residuals(&w).max() < 1e-8, "{a}-{b}");
        }
    }

    #[test]
    fn coroot_reproduces_lambda() {
        let s = sl2("theta", "s11");
        let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
        let cb = w.datum.c_basis();
        for i in w.nonzero() {
            let eta = coroot(&w, i).unwrap();
            let b = s.algebra.killing(&eta, &cb.column(0).into_owned());
            assert!((b - w.weights[i].lambda[0]).norm() < 1e-8);
            let j = w.theta_action[i];
            assert!((coroot(&w, j).unwrap() + &eta).norm() < 1e-10);
        }
        assert!(coroot(&w, w.zero).is_err());
    }

    #[test]
    fn sl2_triples() {
        let s = sl2("s11", "s11");
        let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
        let alg = &s.algebra;
        for i in w.nonzero() {
            let (h, e, f) = sl2_triple(&w, i).unwrap();
            assert!((alg.bracket(&h, &e) - &e * c(2.0, 0.0)).norm() < 1e-8);
            assert!((alg.bracket(&h, &f) + &f * c(2.0, 0.0)).norm() < 1e-8);
            assert!((alg.bracket(&e, &f) - &h).norm() < 1e-8);
        }
    }

    #[test]
    fn positive_system_partitions() {
        let s = sl2("theta", "s11");
        let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
        assert_eq!(w.positive.iter().filter(|&&p| p).count(), 1);
        for i in w.nonzero() {
            assert_ne!(w.positive[i], w.positive[w.theta_action[i]]);
        }
        assert!(matches!(positive_system(&w, Some(&[0.0])), Err(Error::NonRegular { .. })));
    }

    #[test]
    fn levi_basis_idempotent() {
        let s = sl2("theta", "s11");
        let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
        let w2 = levi_basis(&w).unwrap();
        for i in 0..w.len() {
            for (x, y) in w.weights[i].basis.iter().zip(&w2.weights[i].basis) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }
}
