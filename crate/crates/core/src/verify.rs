//! Independent checks: finite-difference Levi forms of invariant defining
//! functions on SL(2,C) cases, reconstruction of `ad(c)` and `tau_n` from the
//! weight data, and the pairing-vs-blocks harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{BasePoint, CartanDatum};
use crate::catalog::{CaseSpec, Layout, Pair};
use crate::error::{Error, Result};
use crate::leviform::{self, block_deviation};
use crate::liecore::{sl_matrix, RealFormSetup};
use crate::linalg::{self, c, CMat, CVec, C64, I, ONE, ZERO};
use crate::orbit;
use crate::weights::WeightSystem;

/// Invariant functions `rho` on SL(2,C), one per factor pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefiningFunction {
    /// `tr(z z^* J)`
    ZZStarJ,
    /// `tr(z^* z J)`
    ZStarZJ,
    /// `tr(J z^* J z)`
    JZStarJZ,
    /// `tr(z^* z)`
    ZStarZ,
}

fn j2() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

impl DefiningFunction {
    pub fn for_pair(pair: Pair) -> Option<Self> {
        match pair {
            Pair::S11Theta => Some(DefiningFunction::ZZStarJ),
            Pair::ThetaS11 => Some(DefiningFunction::ZStarZJ),
            Pair::S11S11 => Some(DefiningFunction::JZStarJZ),
            Pair::ThetaTheta => Some(DefiningFunction::ZStarZ),
            Pair::Sl3Pair => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DefiningFunction::ZZStarJ => "tr(z z* J)",
            DefiningFunction::ZStarZJ => "tr(z* z J)",
            DefiningFunction::JZStarJZ => "tr(J z* J z)",
            DefiningFunction::ZStarZ => "tr(z* z)",
        }
    }

    pub fn eval(self, z: &CMat) -> f64 {
        let j = j2();
        let zs = z.adjoint();
        let m = match self {
            DefiningFunction::ZZStarJ => z * zs * j,
            DefiningFunction::ZStarZJ => zs * z * j,
            DefiningFunction::JZStarJZ => &j * zs * &j * z,
            DefiningFunction::ZStarZ => zs * z,
        };
        m.trace().re
    }
}

#[derive(Debug, Clone)]
pub struct ExtrinsicProbe {
    pub matrix_dim: usize,
    pub rho: DefiningFunction,
    pub point: CMat,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub inertia: (usize, usize, usize),
    pub eigenvalues: Vec<f64>,
    pub gradient_norm: f64,
    /// Inertia at each step of the sweep.
    pub sweep: Vec<(f64, (usize, usize, usize))>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjointReport {
    /// `||V diag(lambda(c_k)) V^-1 - ad(c_k)||_2` per basis element of `c`.
    pub ad_residuals: Vec<f64>,
    pub tau_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub trials: usize,
    pub max_deviation: f64,
    pub max_cross: f64,
    pub pass: bool,
}

const ORACLE_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// `exp` of a small random element of each real form, as 2x2 matrices.
fn sample_pair(setup: &RealFormSetup, rng: &mut impl Rng, scale: f64) -> (CMat, CMat) {
    fn draw(basis: &CMat, rng: &mut impl Rng, scale: f64) -> CMat {
        let mut x = CVec::zeros(basis.nrows());
        for k in 0..basis.ncols() {
            x += basis.column(k) * c(scale * rng.random_range(-1.0..1.0), 0.0);
        }
        sl_matrix(2, &x).exp()
    }
    (draw(&setup.g1, rng, scale), draw(&setup.g2, rng, scale))
}

/// Largest `|rho(g1 z g2^-1) - rho(z)|` over `samples` random pairs.
pub fn invariance_residual(setup: &RealFormSetup, rho: DefiningFunction, z: &CMat, samples: usize, seed: u64) -> Result<f64> {
    if setup.dim() != 3 {
        return Err(Error::Unsupported { op: "verify::invariance_residual", msg: "only SL(2,C) is sampled".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = rho.eval(z);
    let mut res = 0.0f64;
    for _ in 0..samples {
        let (g1, g2) = sample_pair(setup, &mut rng, 0.5);
        let g2i = g2.try_inverse().ok_or_else(|| Error::IllConditioned { op: "verify::invariance_residual", msg: "singular sample".into() })?;
        res = res.max((rho.eval(&(g1 * z * g2i)) - base).abs());
    }
    Ok(res)
}

/// `z = exp(i eta)` on a single SL(2,C) factor.
pub fn probe_for(spec: &CaseSpec, datum: &CartanDatum, eta: &[f64]) -> Result<ExtrinsicProbe> {
    const OP: &str = "verify::probe_for";
    if spec.k != 1 || spec.layout != Layout::Twisted || spec.overrides.is_some() {
        return Err(Error::Unsupported { op: OP, msg: "extrinsic probes cover single SL(2,C) factors".into() });
    }
    let rho = DefiningFunction::for_pair(spec.pair).ok_or_else(|| Error::Unsupported { op: OP, msg: "no certified defining function".into() })?;
    if datum.nu.norm() > 1e-12 {
        return Err(Error::Unsupported { op: OP, msg: "nonzero nu".into() });
    }
    let x = sl_matrix(2, &datum.element(eta));
    Ok(ExtrinsicProbe { matrix_dim: 2, rho, point: (x * I).exp(), step: 1e-4 })
}

fn sl2_basis() -> [CMat; 3] {
    [
        CMat::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]),
        CMat::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO]),
        CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// `f(x, y) = rho(z exp(sum (x_k + i y_k) X_k))`, real coordinates `[x; y]`.
fn chart(probe: &ExtrinsicProbe, v: &[f64; 6]) -> f64 {
    let b = sl2_basis();
    let mut m = CMat::zeros(2, 2);
    for k in 0..3 {
        m += &b[k] * c(v[k], v[k + 3]);
    }
    probe.rho.eval(&(&probe.point * m.exp()))
}

fn shifted(a: usize, ha: f64, b: usize, hb: f64) -> [f64; 6] {
    let mut v = [0.0; 6];
    v[a] += ha;
    v[b] += hb;
    v
}

fn real_hessian(probe: &ExtrinsicProbe, h: f64) -> [[f64; 6]; 6] {
    let f = |v: [f64; 6]| chart(probe, &v);
    let mut out = [[0.0; 6]; 6];
    for a in 0..6 {
        for b in a..6 {
            let v = if a == b {
                let f0 = f([0.0; 6]);
                (f(shifted(a, h, a, 0.0)) - 2.0 * f0 + f(shifted(a, -h, a, 0.0))) / (h * h)
            } else {
                (f(shifted(a, h, b, h)) - f(shifted(a, h, b, -h)) - f(shifted(a, -h, b, h)) + f(shifted(a, -h, b, -h))) / (4.0 * h * h)
            };
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    out
}

fn levi_at_step(probe: &ExtrinsicProbe, h: f64) -> Result<(Vec<f64>, f64)> {
    const OP: &str = "verify::extrinsic_levi_inertia";
    let f = |v: [f64; 6]| chart(probe, &v);
    // Richardson-extrapolated gradient and Hessian
    let grad_at = |h: f64| -> [f64; 6] {
        let mut g = [0.0; 6];
        for (a, ga) in g.iter_mut().enumerate() {
            *ga = (f(shifted(a, h, a, 0.0)) - f(shifted(a, -h, a, 0.0))) / (2.0 * h);
        }
        g
    };
    let (g1, g2) = (grad_at(h), grad_at(h / 2.0));
    let g: Vec<f64> = (0..6).map(|a| (4.0 * g2[a] - g1[a]) / 3.0).collect();
    let (h1, h2) = (real_hessian(probe, h), real_hessian(probe, h / 2.0));
    let hs = |a: usize, b: usize| (4.0 * h2[a][b] - h1[a][b]) / 3.0;

    let dw = CMat::from_fn(1, 3, |_, j| c(0.5 * g[j], -0.5 * g[j + 3]));
    let gnorm = dw.norm();
    if gnorm < 1e-8 {
        return Err(Error::SingularPoint { op: OP, msg: format!("gradient norm {gnorm:.3e}") });
    }
    let m = CMat::from_fn(3, 3, |j, k| c(hs(j, k) + hs(j + 3, k + 3), hs(j, k + 3) - hs(j + 3, k)) * 0.25);
    let v = linalg::complex_null_space(&dw, 1e-8);
    if v.ncols() != 2 {
        return Err(Error::SingularPoint { op: OP, msg: "complex tangent does not have dimension 2".into() });
    }
    let r = v.transpose() * m * v.map(|z| z.conj());
    let (ev, _) = linalg::herm_eig(&linalg::herm(&r));
    Ok((ev, gnorm))
}

/// Inertia of the Levi form of `rho` on the complex tangent of its level set through the probe point.
pub fn extrinsic_levi_inertia(probe: &ExtrinsicProbe) -> Result<OracleResult> {
    const OP: &str = "verify::extrinsic_levi_inertia";
    const TOL: f64 = 1e-4;
    let (eigenvalues, gradient_norm) = levi_at_step(probe, probe.step)?;
    let inertia = linalg::inertia(&eigenvalues, TOL);
    let mut sweep = Vec::new();
    for h in [probe.step / 2.0].into_iter().chain(ORACLE_STEPS) {
        let (ev, _) = levi_at_step(probe, h)?;
        let i = linalg::inertia(&ev, TOL);
        if i != inertia {
            return Err(Error::UnstableOracle { op: OP, msg: format!("inertia {inertia:?} at step {} but {i:?} at {h}", probe.step) });
        }
        sweep.push((h, i));
    }
    Ok(OracleResult { inertia, eigenvalues, gradient_norm, sweep })
}

/// `{n+, n-}` as an unordered pair plus `n0`.
pub fn same_inertia(a: (usize, usize, usize), b: (usize, usize, usize)) -> bool {
    a.2 == b.2 && (a.0.min(a.1), a.0.max(a.1)) == (b.0.min(b.1), b.0.max(b.1))
}

fn spectral_norm(m: &CMat) -> f64 {
    m.singular_values().max()
}

/// Rebuilds `ad(c_k)` and `tau_n` from the weight data.
pub fn adjoint_crosscheck(system: &WeightSystem) -> AdjointReport {
    let n = system.setup.dim();
    let mut cols = Vec::with_capacity(n);
    let mut lam: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut avals = Vec::with_capacity(n);
    for w in &system.weights {
        for b in &w.basis {
            cols.push(b.clone());
            lam.push(w.lambda.clone());
            avals.push(w.a);
        }
    }
    let v = linalg::from_cols(n, &cols);
    let Some(vi) = v.clone().try_inverse() else {
        return AdjointReport { ad_residuals: vec![f64::INFINITY; system.rank()], tau_residual: f64::INFINITY, pass: false };
    };
    let cb = system.datum.c_basis();
    let ad_residuals: Vec<f64> = (0..system.rank())
        .map(|k| {
            let d = CMat::from_diagonal(&CVec::from_iterator(n, lam.iter().map(|l| l[k])));
            let direct = system.setup.algebra.ad(&cb.column(k).into_owned());
            spectral_norm(&(&v * d * &vi - direct))
        })
        .collect();
    let d = CMat::from_diagonal(&CVec::from_vec(avals));
    let tau_residual = spectral_norm(&(&v * d * &vi - &system.tau));
    let pass = ad_residuals.iter().all(|r| *r < 1e-7) && tau_residual < 1e-7;
    AdjointReport { ad_residuals, tau_residual, pass }
}

/// Random strongly regular points at distance at least `1e-3` from the isotropy condition.
pub fn random_regular_etas(system: &WeightSystem, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count && tries < 100 * count.max(1) {
        tries += 1;
        let eta: Vec<f64> = (0..system.rank()).map(|_| rng.random_range(-1.5..1.5)).collect();
        let ok = (0..system.len()).all(|i| i == system.zero || orbit::isotropy_distance(system, i, &eta) > 1e-3);
        if ok {
            out.push(eta);
        }
    }
    out
}

/// Pairing-assembled blocks against the case formulas at random strongly regular points.
pub fn formula_equivalence(system: &WeightSystem, trials: usize, seed: u64) -> Result<EquivalenceReport> {
    let mut max_deviation = 0.0f64;
    let mut max_cross = 0.0f64;
    let etas = random_regular_etas(system, trials, seed);
    for eta in &etas {
        let base = BasePoint::new(system.datum.clone(), eta.clone())?;
        let a = leviform::quadratic_blocks(system, &base)?;
        let b = leviform::theorem_blocks(system, &base)?;
        max_deviation = max_deviation.max(block_deviation(&a, &b));
        max_cross = max_cross.max(leviform::cross_block_pairing_residual(system, &base, &a)?);
    }
    Ok(EquivalenceReport { trials: etas.len(), max_deviation, max_cross, pass: max_deviation < 1e-9 && max_cross < 1e-9 })
}

/// Copy of `system` with nonzero weight vectors multiplied by unit phases.
///
/// Phases are `e^{i phi}` on `xi`, `e^{-i phi}` on `sigma2 xi` and `theta xi`, and
/// `e^{i phi}` on `sigma2 theta xi`, which keeps the Levi normalization; weights
/// fixed by `sigma2` only take the signs `+-1`.
pub fn rephased(system: &WeightSystem, seed: u64) -> WeightSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = system.clone();
    let mut done = vec![false; system.len()];
    for i in system.nonzero() {
        if done[i] {
            continue;
        }
        let s2 = system.sigma2_action[i];
        let th = system.theta_action[i];
        let s2th = system.sigma2_action[th];
        let phi = if s2 == i {
            if rng.random_bool(0.5) { std::f64::consts::PI } else { 0.0 }
        } else {
            rng.random_range(0.0..std::f64::consts::TAU)
        };
        for (j, p) in [(i, phi), (s2, -phi), (th, -phi), (s2th, phi)] {
            if !done[j] {
                done[j] = true;
                let u = C64::from_polar(1.0, p);
                for b in &mut out.weights[j].basis {
                    *b *= u;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::fundamental_cartan;
    use crate::catalog::{build_case, CATALOG};

    fn theta_s11() -> (CaseSpec, WeightSystem) {
        let spec = CaseSpec::parse("sl2:theta-s11:k=1").unwrap();
        let s = build_case(&spec).unwrap();
        let d = fundamental_cartan(&s).unwrap();
        (spec, WeightSystem::build(&s, &d).unwrap())
    }

    fn diag(s: f64) -> CMat {
        CMat::from_row_slice(2, 2, &[c((-s).exp(), 0.0), ZERO, ZERO, c(s.exp(), 0.0)])
    }

    #[test]
    fn rephasing_keeps_normalization_and_inertia() {
        for name in CATALOG {
            let s = build_case(&CaseSpec::parse(name).unwrap()).unwrap();
            let w = WeightSystem::build(&s, &fundamental_cartan(&s).unwrap()).unwrap();
            let p = rephased(&w, 3);
            let (compat, normal) = crate::weights::levi_residuals(&p);
            assert!(compat < 1e-8 && normal < 1e-8, "{name}");
            for eta in random_regular_etas(&w, 2, 1) {
                let b = BasePoint::new(w.datum.clone(), eta).unwrap();
                let (r0, r1) = (leviform::levi_matrix(&w, &b).unwrap(), leviform::levi_matrix(&p, &b).unwrap());
                assert_eq!(r0.scalar.map(|x| x.inertia), r1.scalar.map(|x| x.inertia), "{name}");
                assert_eq!(r0.cone.test.full, r1.cone.test.full, "{name}");
                assert_eq!(r0.cone.test.pointed, r1.cone.test.pointed, "{name}");
            }
        }
    }

    #[test]
    fn rho_is_invariant() {
        let (_, w) = theta_s11();
        let r = invariance_residual(&w.setup, DefiningFunction::ZStarZJ, &diag(0.3), 50, 7).unwrap();
        assert!(r < 1e-9, "{r}");
        // a non-invariant function is caught
        let r = invariance_residual(&w.setup, DefiningFunction::ZZStarJ, &diag(0.3), 50, 7).unwrap();
        assert!(r > 1e-3);
    }

    #[test]
    fn oracle_on_diagonal_points() {
        for s in [0.3, 0.7] {
            let p = ExtrinsicProbe { matrix_dim: 2, rho: DefiningFunction::ZStarZJ, point: diag(s), step: 1e-4 };
            let o = extrinsic_levi_inertia(&p).unwrap();
            assert_eq!(o.inertia, (1, 1, 0));
            assert!(o.eigenvalues.iter().all(|e| e.abs() > 1e-4));
        }
    }

    #[test]
    fn singular_point_detected() {
        // tr(z* z) is critical at the identity
        let p = ExtrinsicProbe { matrix_dim: 2, rho: DefiningFunction::ZStarZ, point: CMat::identity(2, 2), step: 1e-4 };
        assert!(matches!(extrinsic_levi_inertia(&p), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn adjoint_reconstruction() {
        for name in CATALOG {
            let s = crate::catalog::build_named(name).unwrap();
            let d = fundamental_cartan(&s).unwrap();
            let w = WeightSystem::build(&s, &d).unwrap();
            assert!(adjoint_crosscheck(&w).pass, "{name}");
        }
        let (_, mut w) = theta_s11();
        let i = w.nonzero().next().unwrap();
        w.weights[i].lambda[0] += c(1e-3, 0.0);
        let r = adjoint_crosscheck(&w);
        assert!(r.ad_residuals[0] >= 1e-4);
    }

    #[test]
    fn equivalence_and_sensitivity() {
        let (_, w) = theta_s11();
        let r = formula_equivalence(&w, 5, 3).unwrap();
        assert_eq!(r.trials, 5);
        assert!(r.pass);
        let base = BasePoint::new(w.datum.clone(), vec![0.2]).unwrap();
        let mut a = leviform::quadratic_blocks(&w, &base).unwrap();
        let b = leviform::theorem_blocks(&w, &base).unwrap();
        for m in a[0].components.iter_mut() {
            m[(0, 0)] = -m[(0, 0)];
        }
        assert!(block_deviation(&a, &b) > 1e-2);
    }
}
