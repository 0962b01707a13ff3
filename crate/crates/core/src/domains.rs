//! Rank-one signatures, weight compactness, Hermitian type, `C_max` and the
//! q-completeness count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{k1_cap_k2, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::leviform::LeviReport;
use crate::liecore::RealFormSetup;
use crate::linalg::{self, c, CMat, CVec, RMat, I};
use crate::weights::{self, WeightSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compactness {
    Compact,
    Noncompact,
}

impl Compactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Compactness::Compact => "compact",
            Compactness::Noncompact => "noncompact",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Signature {
    /// `(n+, n-, n0)` oriented so that `n- <= n+`.
    pub inertia: (usize, usize, usize),
    pub q: usize,
    /// Count over all weights, zero weights included.
    pub predicted: usize,
    /// Same count restricted to nonzero weights of `Λ⁺`.
    pub predicted_positive: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmaxMembership {
    /// A good ordering was found.
    pub defined: bool,
    pub inside: bool,
    pub interior: bool,
    /// `min i lambda(eta)` over noncompact positive weights.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCount {
    /// `rk + #{(l,1)} + #{(l,-1)}` over `Λ⁺`, plus `#{(l,a): a != ±1}`.
    pub statement: usize,
    /// `dim t + #{(l,a): a = 1} + #{(l,-1): l in Λ⁺} + #{(l,a): a != ±1}`.
    pub proof_variant: usize,
    pub discrepancy: bool,
}

#[derive(Debug, Clone)]
pub struct DomainReport {
    pub rank1: Option<Rank1Signature>,
    pub cmax: Option<CmaxMembership>,
    pub q_complete: Option<QCount>,
    pub hermitian_type: Option<bool>,
    /// Per weight; `None` for zero weights and noncompact `c`.
    pub compactness: Vec<Option<Compactness>>,
}

/// Dimension of the center of the real span of `k`.
fn center_dim(setup: &RealFormSetup, k: &CMat) -> usize {
    center_of(setup, k).ncols()
}

fn center_of(setup: &RealFormSetup, k: &CMat) -> CMat {
    let m = k.ncols();
    if m == 0 {
        return CMat::zeros(setup.dim(), 0);
    }
    let n = setup.dim();
    let mut a = CMat::zeros(n * m, m);
    for j in 0..m {
        let ad = setup.algebra.ad(&k.column(j).into_owned());
        a.view_mut((n * j, 0), (n, m)).copy_from(&(ad * k));
    }
    k * linalg::complex_null_space(&a, 1e-8)
}

/// Center of `k` is nontrivial.
pub fn hermitian_type_of(setup: &RealFormSetup, k: &CMat) -> bool {
    center_dim(setup, k) >= 1
}

/// Hermitian type of `g1 = g2`.
pub fn hermitian_type(setup: &RealFormSetup) -> Result<bool> {
    let d = setup.sigma1.map().distance(&setup.sigma2.map());
    if d > 1e-10 {
        return Err(Error::NotApplicable { op: "domains::hermitian_type", msg: format!("sigma1 and sigma2 differ by {d:.3e}") });
    }
    Ok(hermitian_type_of(setup, &setup.k1))
}

/// Compactness of a nonzero weight with `a = 1`, read off the Killing form on its real sl(2) copy.
pub fn classify_weight_compactness(system: &WeightSystem, i: usize) -> Result<Compactness> {
    const OP: &str = "domains::classify_weight_compactness";
    let w = system.weights.get(i).ok_or_else(|| crate::error::invalid(OP, format!("no weight {i}")))?;
    if !system.datum.is_compact() {
        return Err(Error::Unsupported { op: OP, msg: "c is not compact".into() });
    }
    if w.is_zero() || !w.a_is(1.0) {
        return Err(Error::Unsupported { op: OP, msg: format!("weight {i} is zero or has a != 1") });
    }
    let setup = &system.setup;
    let s2 = setup.sigma2.map();
    let xi = w.vector();
    let sx = s2.apply(xi);
    let u1 = xi + &sx;
    let u2 = (xi - &sx) * I;
    let u3 = setup.algebra.bracket(&u1, &u2);
    let us: Vec<CVec> = [u1, u2, u3].into_iter().map(|u| { let n = setup.norm(&u); u / c(n, 0.0) }).collect();
    let g = RMat::from_fn(3, 3, |a, b| setup.algebra.killing(&us[a], &us[b]).re);
    let ev = g.symmetric_eigenvalues();
    Ok(if ev.iter().all(|v| *v < -1e-10) { Compactness::Compact } else { Compactness::Noncompact })
}

/// Compactness of `lambda` through its `a = 1` companion; weights without one count as noncompact.
pub fn lambda_compactness(system: &WeightSystem, i: usize) -> Result<Compactness> {
    let w = &system.weights[i];
    match system.find(&w.lambda, c(1.0, 0.0)) {
        Some(j) if !system.weights[j].is_zero() => classify_weight_compactness(system, j),
        _ => Ok(Compactness::Noncompact),
    }
}

fn compactness_table(system: &WeightSystem) -> Result<Vec<Option<Compactness>>> {
    (0..system.len())
        .map(|i| if system.weights[i].is_zero() { Ok(None) } else { lambda_compactness(system, i).map(Some) })
        .collect()
}

fn is_good(system: &WeightSystem, table: &[Option<Compactness>], h: &[f64]) -> bool {
    let v = weights::evaluate_hat(system, h);
    let pos_nc = system
        .nonzero()
        .filter(|&i| v[i] > 0.0 && table[i] == Some(Compactness::Noncompact))
        .map(|i| v[i])
        .fold(f64::INFINITY, f64::min);
    let comp = system.nonzero().filter(|&i| table[i] == Some(Compactness::Compact)).map(|i| v[i]).fold(f64::NEG_INFINITY, f64::max);
    pos_nc > comp
}

/// Positive system in which every positive noncompact weight exceeds every compact one.
pub fn good_ordering(system: &WeightSystem, seed: u64) -> Result<Option<WeightSystem>> {
    if !system.datum.is_compact() {
        return Err(Error::NotApplicable { op: "domains::good_ordering", msg: "c is not compact".into() });
    }
    let table = compactness_table(system)?;
    let r = system.rank();
    // center direction of k1 ∩ k2, in c coordinates
    let z = center_of(&system.setup, &k1_cap_k2(&system.setup));
    let mut center = vec![0.0; r];
    for j in 0..z.ncols() {
        let (y, res) = system.c_coords(&z.column(j).into_owned());
        if res < 1e-8 {
            let y = linalg::fix_phase(&y);
            for k in 0..r {
                center[k] += y[k].re;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let noise = weights::random_rational(&mut rng, r);
        let h: Vec<f64> = (0..r).map(|k| 100.0 * center[k] + noise[k]).collect();
        if weights::is_regular(system, &h) && is_good(system, &table, &h) {
            return Ok(Some(weights::positive_system_seeded(system, Some(&h), seed)?));
        }
    }
    Ok(None)
}

/// `i lambda(eta) >= 0` for every noncompact positive weight of a good ordering.
pub fn cmax_membership(system: &WeightSystem, eta: &[f64]) -> Result<CmaxMembership> {
    const OP: &str = "domains::cmax_membership";
    if eta.len() != system.rank() {
        return Err(crate::error::invalid(OP, "eta has the wrong length"));
    }
    let Some(ordered) = good_ordering(system, DEFAULT_SEED)? else {
        return Ok(CmaxMembership { defined: false, inside: false, interior: false, margin: f64::NAN });
    };
    let table = compactness_table(&ordered)?;
    let margin = ordered
        .nonzero()
        .filter(|&i| ordered.positive[i] && table[i] == Some(Compactness::Noncompact))
        .map(|i| (I * ordered.weights[i].eval(eta)).re)
        .fold(f64::INFINITY, f64::min);
    Ok(CmaxMembership { defined: true, inside: margin >= -1e-10, interior: margin > 1e-8, margin })
}

/// Oriented inertia of the scalar Levi form and the predicted `q`.
pub fn rank1_signature(system: &WeightSystem, report: &LeviReport) -> Result<Rank1Signature> {
    const OP: &str = "domains::rank1_signature";
    if system.rank() != 1 || report.profile.codim != 1 {
        return Err(Error::Unsupported { op: OP, msg: "orbit is not a hypersurface".into() });
    }
    let scalar = report.scalar.as_ref().ok_or_else(|| Error::Unsupported { op: OP, msg: "no scalar Levi form".into() })?;
    let (p, n, z) = scalar.inertia;
    let (p, n) = if n > p { (n, p) } else { (p, n) };
    let ws = &system.weights;
    let pos = |i: usize| system.positive[i];
    let (predicted, predicted_positive) = if !system.datum.is_compact() {
        let k = system.nonzero().filter(|&i| pos(i)).count();
        (k, k)
    } else {
        let m1 = system.nonzero().filter(|&i| pos(i) && ws[i].a_is(-1.0)).count();
        let other = |i: &usize| !ws[*i].a_is(1.0) && !ws[*i].a_is(-1.0);
        let all = (0..system.len()).filter(other).count();
        let positive = system.nonzero().filter(|i| pos(*i)).filter(other).count();
        (m1 + all, m1 + positive)
    };
    Ok(Rank1Signature { inertia: (p, n, z), q: n, predicted, predicted_positive, matches: n == predicted })
}

/// q-completeness count over a good ordering.
pub fn q_completeness_count(system: &WeightSystem) -> Result<QCount> {
    q_completeness_count_seeded(system, DEFAULT_SEED)
}

pub fn q_completeness_count_seeded(system: &WeightSystem, seed: u64) -> Result<QCount> {
    const OP: &str = "domains::q_completeness_count";
    if !system.datum.is_compact() {
        return Err(Error::NotApplicable { op: OP, msg: "c is not compact".into() });
    }
    let ordered = good_ordering(system, seed)?.ok_or_else(|| Error::NotApplicable { op: OP, msg: "no good ordering".into() })?;
    let ws = &ordered.weights;
    let pos = |i: usize| ordered.positive[i];
    let a1 = ordered.nonzero().filter(|&i| pos(i) && ws[i].a_is(1.0)).count();
    let am1 = ordered.nonzero().filter(|&i| pos(i) && ws[i].a_is(-1.0)).count();
    let other = (0..ordered.len()).filter(|&i| !ws[i].a_is(1.0) && !ws[i].a_is(-1.0)).count();
    let all_a1 = (0..ordered.len()).filter(|&i| ws[i].a_is(1.0)).count();
    let statement = ordered.rank() + a1 + am1 + other;
    let proof_variant = ordered.dim_t() + all_a1 + am1 + other;
    Ok(QCount { statement, proof_variant, discrepancy: statement != proof_variant })
}

/// Everything this module can say about one point; inapplicable parts are `None`.
pub fn domain_report(system: &WeightSystem, report: Option<&LeviReport>, eta: &[f64]) -> Result<DomainReport> {
    let compact = system.datum.is_compact();
    let rank1 = match report {
        Some(r) if system.rank() == 1 && r.profile.codim == 1 => Some(rank1_signature(system, r)?),
        _ => None,
    };
    let cmax = if compact { Some(cmax_membership(system, eta)?) } else { None };
    let q_complete = match q_completeness_count(system) {
        Ok(q) => Some(q),
        Err(Error::NotApplicable { .. }) => None,
        Err(e) => return Err(e),
    };
    let hermitian_type = match hermitian_type(&system.setup) {
        Ok(h) => Some(h),
        Err(Error::NotApplicable { .. }) => None,
        Err(e) => return Err(e),
    };
    let compactness = if compact { compactness_table(system)? } else { vec![None; system.len()] };
    Ok(DomainReport { rank1, cmax, q_complete, hermitian_type, compactness })
}
