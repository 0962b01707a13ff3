//! Batch driver: resolves a [`RunConfig`], runs the selected stages and builds a [`Report`].

pub mod config;
pub mod report;

use levilab::cartan::{fundamental_cartan, make_datum, DEFAULT_SEED};
use levilab::catalog::{build_case, standard_cartan_menu_for, CaseSpec};
use levilab::domains::domain_report;
use levilab::leviform::{levi_matrix, LeviReport};
use levilab::liecore::{Involution, LieAlgebra, Linearity};
use levilab::linalg::{c, CMat, CVec, C64};
use levilab::orbit::orbit_profile;
use levilab::verify;
use levilab::weights::{self, WeightSystem};
use levilab::{BasePoint, CartanDatum, RealFormSetup, Tolerances};
use thiserror::Error;

pub use config::{CaseRef, CartanRef, Op, RunConfig};
pub use report::Report;

pub const SEED_ENV: &str = "LEVILAB_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("[{module}] {source}", module = .source.module())]
    Core {
        #[from]
        source: levilab::Error,
    },
}

impl CliError {
    /// 2 for validation errors, 3 for numerical degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source } if source.is_numerical() => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn complex(z: &[f64; 2]) -> C64 {
    c(z[0], z[1])
}

fn vector(v: &[[f64; 2]]) -> CVec {
    CVec::from_iterator(v.len(), v.iter().map(complex))
}

fn involution(inv: &config::InlineInvolution, n: usize) -> Result<Involution> {
    let linearity = match inv.linearity.as_str() {
        "linear" => Linearity::Linear,
        "antilinear" => Linearity::Antilinear,
        other => return Err(CliError::Config(format!("involution `{}`: unknown linearity `{other}`", inv.name))),
    };
    if inv.matrix.len() != n || inv.matrix.iter().any(|r| r.len() != n) {
        return Err(CliError::Config(format!("involution `{}` must be a {n}x{n} matrix", inv.name)));
    }
    let m = CMat::from_fn(n, n, |i, j| complex(&inv.matrix[i][j]));
    Ok(Involution::new(inv.name.clone(), linearity, m))
}

fn inline_setup(case: &config::InlineCase) -> Result<RealFormSetup> {
    let structure = case.algebra.structure.iter().map(|row| row.iter().map(|v| vector(v)).collect()).collect();
    let alg = LieAlgebra::from_structure(case.algebra.labels.clone(), structure)?;
    let n = alg.dim();
    let (t, s1, s2) = (involution(&case.theta, n)?, involution(&case.sigma1, n)?, involution(&case.sigma2, n)?);
    Ok(RealFormSetup::new(alg, t, s1, s2)?)
}

fn datum(cartan: &CartanRef, spec: Option<&CaseSpec>, setup: &RealFormSetup) -> Result<CartanDatum> {
    match cartan {
        CartanRef::Keyword(k) if k == "fundamental" => Ok(fundamental_cartan(setup)?),
        CartanRef::Keyword(k) => Err(CliError::Config(format!("unknown cartan keyword `{k}`"))),
        CartanRef::Menu(i) => {
            let spec = spec.ok_or_else(|| CliError::Config("menu indices need a catalog case".into()))?;
            let mut menu = standard_cartan_menu_for(spec, setup)?;
            if *i >= menu.len() {
                return Err(CliError::Config(format!("cartan menu index {i} out of range (menu has {} entries)", menu.len())));
            }
            Ok(menu.swap_remove(*i))
        }
        CartanRef::Inline(d) => {
            let n = setup.dim();
            if d.basis.iter().any(|col| col.len() != n) {
                return Err(CliError::Config(format!("cartan basis vectors must have length {n}")));
            }
            let cols: Vec<CVec> = d.basis.iter().map(|col| vector(col)).collect();
            let basis = if cols.is_empty() { CMat::zeros(n, 0) } else { CMat::from_columns(&cols) };
            Ok(make_datum(setup, &vector(&d.nu), &basis)?)
        }
    }
}

fn tolerances(cfg: &RunConfig) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for (k, v) in &cfg.tol_overrides {
        tol.set(k, *v).map_err(CliError::Config)?;
    }
    Ok(tol)
}

fn setup_summary(setup: &RealFormSetup, d: &CartanDatum, eta: &[f64], tol: &Tolerances) -> report::SetupSummary {
    report::SetupSummary {
        algebra_dim: setup.dim(),
        dim_k1: setup.k1.ncols(),
        dim_p1: setup.p1.ncols(),
        dim_k2: setup.k2.ncols(),
        dim_p2: setup.p2.ncols(),
        dim_c: d.dim(),
        dim_t: d.dim_t(),
        dim_a: d.dim() - d.dim_t(),
        compact_c: d.is_compact(),
        nu: report::cxs(d.nu.iter()),
        eta: report::fs(eta),
        tolerances: report::Tolerances {
            cluster: report::F(tol.cluster),
            membership: report::F(tol.membership),
            near_degenerate: report::F(tol.near_degenerate),
            inertia: report::F(tol.inertia),
        },
    }
}

fn weight_rows(system: &WeightSystem) -> Vec<report::WeightRow> {
    system
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| report::WeightRow {
            index: i,
            lambda: report::cxs(w.lambda.iter()),
            a: report::Cx(w.a),
            reality: w.reality.as_str(),
            dim: w.dim(),
            positive: system.positive[i],
            zero: i == system.zero,
        })
        .collect()
}

fn levi_section(r: &LeviReport, tol: f64) -> report::LeviSection {
    let blocks = r
        .blocks
        .iter()
        .map(|b| report::Block {
            weights: b.weights(),
            case: b.case.as_str(),
            components: b.components.iter().map(report::cmat).collect(),
            inertia: b
                .components
                .iter()
                .map(|m| report::inertia(levilab::linalg::inertia(&levilab::linalg::herm_eig(&levilab::linalg::herm(m)).0, tol)))
                .collect(),
        })
        .collect();
    report::LeviSection {
        blocks,
        scalar: r.scalar.as_ref().map(|s| report::Scalar {
            weights: s.members.iter().map(|m| m.weight).collect(),
            eigenvalues: report::fs(&s.eigenvalues),
            inertia: report::inertia(s.inertia),
        }),
        formula_deviation: report::F(r.formula_deviation),
        cross_block_residual: report::F(r.cross_block_residual),
        hermitian_residual: report::F(r.hermitian_residual),
    }
}

fn cone_section(r: &LeviReport) -> report::ConeSection {
    let v = &r.cone;
    report::ConeSection {
        dim: v.test.dim,
        rank: v.test.rank,
        generators: v
            .generators
            .iter()
            .map(|g| report::GeneratorRow { weight: g.weight, case: g.case.as_str(), vector: report::fs(&g.vector) })
            .collect(),
        full: v.test.full,
        pointed: v.test.pointed,
        certificate: v.test.certificate.as_deref().map(report::fs),
        predicted_case: v.cone_case.as_str(),
        consistent: v.consistent,
        stein_obstruction: v.stein_obstruction,
        irreducible: v.irreducible,
        zero_block_nonvanishing: v.zero_block_nonvanishing,
    }
}

fn domains_section(system: &WeightSystem, levi: Option<&LeviReport>, eta: &[f64]) -> Result<report::DomainsSection> {
    let d = domain_report(system, levi, eta)?;
    Ok(report::DomainsSection {
        rank1: d.rank1.map(|r| report::Rank1 {
            inertia: report::inertia(r.inertia),
            q: r.q,
            predicted: r.predicted,
            predicted_positive: r.predicted_positive,
            matches: r.matches,
        }),
        cmax: d.cmax.map(|m| report::Cmax { defined: m.defined, inside: m.inside, interior: m.interior, margin: report::F(m.margin) }),
        q_complete: d.q_complete.map(|q| report::QComplete { statement: q.statement, proof_variant: q.proof_variant, discrepancy: q.discrepancy }),
        hermitian_type: d.hermitian_type,
        compactness: d.compactness.iter().map(|c| c.map(|c| c.as_str())).collect(),
    })
}

fn commutator(a: &Involution, b: &Involution) -> f64 {
    a.map().compose(&b.map()).distance(&b.map().compose(&a.map()))
}

fn verify_section(
    system: &WeightSystem,
    spec: Option<&CaseSpec>,
    base: Option<&BasePoint>,
    levi: Option<&LeviReport>,
    seed: u64,
) -> Result<report::VerifySection> {
    use report::F;
    let setup = &system.setup;
    let invs = [&setup.theta, &setup.sigma1, &setup.sigma2];
    let structure = report::Structure {
        jacobi: F(setup.algebra.jacobi_residual()),
        automorphism: F(invs.iter().map(|i| i.automorphism_residual(&setup.algebra)).fold(0.0, f64::max)),
        involution: F(invs.iter().map(|i| i.involution_residual()).fold(0.0, f64::max)),
        commutation: F(commutator(&setup.sigma1, &setup.theta).max(commutator(&setup.sigma2, &setup.theta))),
    };
    let id = weights::identity_residuals(system);
    let identities = report::Identities {
        theta_map: F(id.theta_map),
        orthogonality: F(id.orthogonality),
        coroot: F(id.coroot),
        bracket: F(id.bracket),
        sl2_triples: F(weights::sl2_triple_residual(system)?),
        nonzero_dims_one: system.nonzero().all(|i| system.weights[i].dim() == 1),
        multiples_present: weights::has_multiples(system),
    };
    let adj = verify::adjoint_crosscheck(system);
    let adjoint = report::Adjoint { ad_residuals: report::fs(&adj.ad_residuals), tau_residual: F(adj.tau_residual), pass: adj.pass };
    let eq = verify::formula_equivalence(system, 20, seed)?;
    let equivalence = report::Equivalence { trials: eq.trials, max_deviation: F(eq.max_deviation), max_cross: F(eq.max_cross), pass: eq.pass };

    let (oracle, oracle_note) = match (spec, base, levi) {
        (None, _, _) => (None, Some("extrinsic oracle needs a catalog case".to_string())),
        (_, None, _) => (None, Some("no base point".to_string())),
        (_, _, None) => (None, Some("base point is not strongly regular".to_string())),
        (Some(spec), Some(base), Some(levi)) => match verify::probe_for(spec, &base.datum, &base.eta) {
            Err(levilab::Error::Unsupported { msg, .. }) => (None, Some(msg)),
            Err(e) => return Err(e.into()),
            Ok(probe) => {
                let inv = verify::invariance_residual(setup, probe.rho, &probe.point, 20, seed)?;
                let o = verify::extrinsic_levi_inertia(&probe)?;
                let agrees = levi.scalar.as_ref().map(|s| verify::same_inertia(s.inertia, o.inertia));
                let oracle = report::Oracle {
                    defining_function: probe.rho.name(),
                    invariance_residual: F(inv),
                    inertia: report::inertia(o.inertia),
                    eigenvalues: report::fs(&o.eigenvalues),
                    steps: std::iter::once(probe.step).chain(o.sweep.iter().map(|(h, _)| *h)).map(F).collect(),
                    agrees,
                };
                (Some(oracle), None)
            }
        },
    };
    let rephasing = match (base, levi) {
        (Some(base), Some(r0)) => {
            let r1 = levi_matrix(&verify::rephased(system, seed), base)?;
            Some(report::Rephasing {
                inertia_unchanged: r0.scalar.as_ref().map(|s| s.inertia) == r1.scalar.as_ref().map(|s| s.inertia),
                cone_unchanged: r0.cone.test.full == r1.cone.test.full && r0.cone.test.pointed == r1.cone.test.pointed,
            })
        }
        _ => None,
    };
    Ok(report::VerifySection { structure, identities, adjoint, equivalence, oracle, oracle_note, rephasing })
}

/// Runs every selected stage. `config.seed` falls back to the library default.
pub fn run(config: &RunConfig) -> Result<Report> {
    let ops = config.ops()?;
    let seed = config.seed.unwrap_or(DEFAULT_SEED);
    let tol = tolerances(config)?;
    let (name, spec, setup) = match &config.case {
        None => return Err(CliError::Config("no case given".into())),
        Some(CaseRef::Named(n)) => {
            let spec = CaseSpec::parse(n)?;
            let setup = build_case(&spec)?;
            (spec.name(), Some(spec), setup)
        }
        Some(CaseRef::Inline(c)) => ("inline".to_string(), None, inline_setup(c)?),
    };
    let d = datum(&config.cartan, spec.as_ref(), &setup)?;
    let system = WeightSystem::build_with(&setup, &d, &tol, seed)?;

    let needs_eta = ops.iter().any(|o| *o != Op::Weights);
    let base = match &config.eta {
        Some(eta) => {
            if eta.len() != d.dim() {
                return Err(CliError::Config(format!(
                    "invariant `eta length = dim c` violated: eta has {} coordinates, c has dimension {}",
                    eta.len(),
                    d.dim()
                )));
            }
            Some(BasePoint::new(d.clone(), eta.clone())?)
        }
        None if needs_eta => return Err(CliError::Config("eta is required for every op except `weights`".into())),
        None => None,
    };
    let eta: &[f64] = base.as_ref().map(|b| b.eta.as_slice()).unwrap_or(&[]);
    let has = |o: Op| ops.contains(&o);

    let levi = match &base {
        Some(b) if has(Op::Levi) || has(Op::Cone) => Some(levi_matrix(&system, b)?),
        Some(b) if has(Op::Domains) || has(Op::Verify) => match levi_matrix(&system, b) {
            Ok(r) => Some(r),
            Err(e) if e.is_numerical() => return Err(e.into()),
            Err(_) => None,
        },
        _ => None,
    };

    Ok(Report {
        tool: "levilab",
        version: env!("CARGO_PKG_VERSION"),
        case: name,
        seed,
        ops: ops.iter().map(|o| o.as_str()).collect(),
        setup: setup_summary(&setup, &d, eta, &tol),
        weights: has(Op::Weights).then(|| weight_rows(&system)),
        orbit: match (&base, has(Op::Orbit)) {
            (Some(b), true) => {
                let p = orbit_profile(&system, b)?;
                Some(report::OrbitSection {
                    lambda_tilde: p.lambda_tilde,
                    codim: p.codim,
                    strongly_regular: p.strongly_regular,
                    complex_tangent: p.complex_tangent,
                    near_degenerate: p.near_degenerate,
                    fix_residual: report::F(p.fix_residual),
                })
            }
            _ => None,
        },
        levi: levi.as_ref().filter(|_| has(Op::Levi)).map(|r| levi_section(r, tol.inertia)),
        cone: levi.as_ref().filter(|_| has(Op::Cone)).map(cone_section),
        domains: if has(Op::Domains) { Some(domains_section(&system, levi.as_ref(), eta)?) } else { None },
        verify: if has(Op::Verify) { Some(verify_section(&system, spec.as_ref(), base.as_ref(), levi.as_ref(), seed)?) } else { None },
    })
}

/// Seed from the flag, then the config, then `LEVILAB_SEED`.
pub fn resolve_seed(flag: Option<u64>, config: Option<u64>, env: Option<&str>) -> Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    if config.is_some() {
        return Ok(config);
    }
    match env {
        Some(s) => s.trim().parse().map(Some).map_err(|_| CliError::Config(format!("{SEED_ENV}=`{s}` is not an unsigned integer"))),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(1), Some(2), Some("3")).unwrap(), Some(1));
        assert_eq!(resolve_seed(None, Some(2), Some("3")).unwrap(), Some(2));
        assert_eq!(resolve_seed(None, None, Some("3")).unwrap(), Some(3));
        assert!(resolve_seed(None, None, Some("x")).is_err());
        assert_eq!(resolve_seed(None, None, None).unwrap(), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        let e = levilab::Error::NearSingular { op: "leviform::levi_matrix", value: 0.0 };
        assert_eq!(CliError::from(e).exit_code(), 3);
        let e = levilab::Error::Validation { op: "cartan::make_datum", invariant: "c abelian", residual: 1.0 };
        assert_eq!(CliError::from(e).exit_code(), 2);
    }
}
