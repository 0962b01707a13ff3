//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};

use levilab::catalog::{build_case, standard_cartan_menu, CaseSpec, CATALOG};
use levilab::domains::{domain_report, q_completeness_count};
use levilab::leviform::{levi_matrix, ConeCase, LeviReport};
use levilab::liecore::Involution;
use levilab::orbit::orbit_profile;
use levilab::verify::{extrinsic_levi_inertia, formula_equivalence, probe_for, random_regular_etas, rephased};
use levilab::weights::{has_multiples, identity_residuals, sl2_triple_residual};
use levilab::{BasePoint, CartanDatum, WeightSystem};

const SEED: u64 = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn all_systems() -> Vec<(String, CaseSpec, WeightSystem, CartanDatum)> {
    let mut out = Vec::new();
    for name in CATALOG {
        let spec = CaseSpec::parse(name).unwrap();
        let setup = build_case(&spec).unwrap();
        for (i, d) in standard_cartan_menu(&spec).unwrap().into_iter().enumerate() {
            let w = WeightSystem::build(&setup, &d).unwrap();
            out.push((format!("{name}#{i}"), spec.clone(), w, d));
        }
    }
    out
}

fn menu_system(name: &str, index: usize) -> (CaseSpec, WeightSystem, CartanDatum) {
    let spec = CaseSpec::parse(name).unwrap();
    let setup = build_case(&spec).unwrap();
    let d = standard_cartan_menu(&spec).unwrap().swap_remove(index);
    let w = WeightSystem::build(&setup, &d).unwrap();
    (spec, w, d)
}

fn levi_at(w: &WeightSystem, d: &CartanDatum, eta: &[f64]) -> levilab::Result<LeviReport> {
    levi_matrix(w, &BasePoint::new(d.clone(), eta.to_vec())?)
}

fn commutator(a: &Involution, b: &Involution) -> f64 {
    a.map().compose(&b.map()).distance(&b.map().compose(&a.map()))
}

fn structural() -> Outcome {
    let (mut jac, mut aut, mut com) = (0.0f64, 0.0f64, 0.0f64);
    for name in CATALOG {
        let s = build_case(&CaseSpec::parse(name).unwrap()).unwrap();
        jac = jac.max(s.algebra.jacobi_residual());
        for inv in [&s.theta, &s.sigma1, &s.sigma2] {
            aut = aut.max(inv.automorphism_residual(&s.algebra));
        }
        com = com.max(commutator(&s.sigma1, &s.theta)).max(commutator(&s.sigma2, &s.theta));
    }
    outcome(
        jac < 1e-10 && aut < 1e-9 && com < 1e-10,
        format!("{} cases: jacobi {jac:.1e} (<1e-10), automorphism {aut:.1e} (<1e-9), commutation {com:.1e} (<1e-10)", CATALOG.len()),
    )
}

fn identities(systems: &[(String, CaseSpec, WeightSystem, CartanDatum)]) -> Outcome {
    let mut worst = [0.0f64; 4];
    for (_, _, w, _) in systems {
        let r = identity_residuals(w);
        for (m, v) in worst.iter_mut().zip([r.theta_map, r.orthogonality, r.coroot, r.bracket]) {
            *m = m.max(v);
        }
    }
    outcome(
        worst.iter().all(|x| *x < 1e-8),
        format!(
            "{} systems: theta map {:.1e}, orthogonality {:.1e}, coroot {:.1e}, bracket {:.1e} (all <1e-8)",
            systems.len(),
            worst[0],
            worst[1],
            worst[2],
            worst[3]
        ),
    )
}

fn weight_spaces(systems: &[(String, CaseSpec, WeightSystem, CartanDatum)]) -> Outcome {
    let mut bad = Vec::new();
    let mut triple = 0.0f64;
    for (name, _, w, _) in systems {
        if w.nonzero().any(|i| w.weights[i].dim() != 1) {
            bad.push(format!("{name}: dim != 1"));
        }
        if has_multiples(w) {
            bad.push(format!("{name}: multiples"));
        }
        match sl2_triple_residual(w) {
            Ok(r) => triple = triple.max(r),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(bad.is_empty() && triple < 1e-8, format!("dims 1, no multiples, sl2-triples {triple:.1e} (<1e-8){}", if bad.is_empty() { String::new() } else { format!("; {bad:?}") }))
}

fn equivalence(systems: &[(String, CaseSpec, WeightSystem, CartanDatum)]) -> Outcome {
    let (mut dev, mut cross, mut short) = (0.0f64, 0.0f64, Vec::new());
    for (name, _, w, _) in systems {
        match formula_equivalence(w, 20, SEED) {
            Ok(r) => {
                dev = dev.max(r.max_deviation);
                cross = cross.max(r.max_cross);
                if r.trials != 20 {
                    short.push(name.clone());
                }
            }
            Err(e) => short.push(format!("{name}: {e}")),
        }
    }
    outcome(
        short.is_empty() && dev < 1e-9 && cross < 1e-9,
        format!("20 points x {} systems: deviation {dev:.1e} (<1e-9), cross-block {cross:.1e} (<1e-9){}", systems.len(), if short.is_empty() { String::new() } else { format!("; failed {short:?}") }),
    )
}

fn oracle() -> Outcome {
    let (spec, w, d) = menu_system("sl2:s11-theta:k=1", 0);
    let mut parts = Vec::new();
    let mut pass = true;
    for s in [0.3, 0.7] {
        let intrinsic = levi_at(&w, &d, &[s]).ok().and_then(|r| r.scalar);
        let probe = probe_for(&spec, &d, &[s]).and_then(|p| extrinsic_levi_inertia(&p));
        match (intrinsic, probe) {
            (Some(i), Ok(o)) => {
                let min_ev = i.eigenvalues.iter().chain(&o.eigenvalues).map(|e| e.abs()).fold(f64::INFINITY, f64::min);
                let ok = i.inertia == (1, 1, 0) && o.inertia == i.inertia && min_ev > 1e-4 && o.sweep.iter().all(|(_, x)| *x == o.inertia);
                pass &= ok;
                parts.push(format!("s={s}: intrinsic {:?}, oracle {:?} over {} steps, min |ev| {min_ev:.2e}", i.inertia, o.inertia, o.sweep.len() + 1));
            }
            (i, o) => {
                pass = false;
                parts.push(format!("s={s}: intrinsic {:?}, oracle {:?}", i.map(|x| x.inertia), o.map(|x| x.inertia)));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn cone_trichotomy() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    let mut clause = |label: &str, name: &str, index: usize, eta: f64, want_full: bool, want_case: ConeCase| {
        let (_, w, d) = menu_system(name, index);
        match levi_at(&w, &d, &[eta]) {
            Ok(r) => {
                let full = r.cone_full();
                let ok = full == want_full && r.cone.cone_case == want_case && r.cone.consistent;
                pass &= ok;
                parts.push(format!(
                    "{label}: {} (expected {}, predicted {}){}",
                    if full { "full" } else if r.cone.test.pointed { "pointed" } else { "proper" },
                    if want_full { "full" } else { "pointed" },
                    r.cone.cone_case.as_str(),
                    if ok { "" } else { " MISMATCH" }
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{label}: {e}"));
            }
        }
    };
    clause("SU(1,1)^2 noncompact", "sl2:s11-s11:k=1", 0, 0.4, true, ConeCase::NoncompactFull);
    clause("(theta,s11) compact", "sl2:s11-theta:k=1", 0, 0.3, true, ConeCase::CompactNontrivialAFull);
    clause("SU(1,1)^2 compact, eta in C_max interior", "sl2:s11-s11:k=1", 1, 0.37, false, ConeCase::HermitianPointed);
    clause("SU(1,1)^2 compact, eta outside C_max", "sl2:s11-s11:k=1", 1, -0.37, true, ConeCase::HermitianOutsideCmaxFull);
    outcome(pass, parts.join("; "))
}

fn codimension() -> Outcome {
    let (_, w, d) = menu_system("sl2:s11-s11:k=1", 0);
    let c0 = orbit_profile(&w, &BasePoint::new(d, vec![0.0]).unwrap()).map(|p| p.codim);
    let (_, w, d) = menu_system("sl2:s11-theta:k=1", 0);
    let etas = random_regular_etas(&w, 10, SEED);
    let profiles: Vec<_> = etas.iter().map(|e| orbit_profile(&w, &BasePoint::new(d.clone(), e.clone()).unwrap())).collect();
    let good = profiles.iter().filter(|p| matches!(p, Ok(p) if p.codim == 1 && p.strongly_regular)).count();
    outcome(
        matches!(c0, Ok(3)) && etas.len() == 10 && good == 10,
        format!(
            "SU(1,1)^2 at eta=0: codim {} (expected 3); (theta,s11): {good}/{} random eta with codim 1 and strongly regular",
            c0.as_ref().map(|c| c.to_string()).unwrap_or_else(|e| e.to_string()),
            etas.len()
        ),
    )
}

fn rank_one_counts() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (label, name, index, eta) in [("noncompact SU(1,1)^2", "sl2:s11-s11:k=1", 0, 0.4), ("compact (theta,s11)", "sl2:s11-theta:k=1", 0, 0.3)] {
        let (_, w, d) = menu_system(name, index);
        let positive = w.nonzero().filter(|&i| w.positive[i]).count();
        let sig = levi_at(&w, &d, &[eta]).and_then(|r| domain_report(&w, Some(&r), &[eta])).ok().and_then(|dr| dr.rank1);
        match sig {
            Some(s) => {
                let expected = if w.datum.is_compact() { s.predicted } else { positive };
                let ok = s.q == 1 && s.predicted == 1 && s.inertia.1 == s.q && expected == 1;
                pass &= ok;
                parts.push(format!("{label}: formula {}, #positive {positive}, measured n- {}", s.predicted, s.inertia.1));
            }
            None => {
                pass = false;
                parts.push(format!("{label}: no rank-one signature"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn q_complete() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (label, name, index) in [("SU(1,1)^2 compact", "sl2:s11-s11:k=1", 1), ("SU(2)xSU(1,1)", "sl2:s11-theta:k=1", 0)] {
        let (_, w, _) = menu_system(name, index);
        match q_completeness_count(&w) {
            Ok(q) => {
                pass &= q.statement == 2;
                parts.push(format!("{label}: {} (proof variant {}{})", q.statement, q.proof_variant, if q.discrepancy { ", discrepancy flagged" } else { "" }));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{label}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn cli_report(case: &str, cartan: &str, eta: &str, seed: &str) -> Option<Vec<u8>> {
    let out = Command::new(env!("CARGO_BIN_EXE_levilab"))
        .args(["--case", case, "--cartan", cartan, "--eta", eta, "--seed", seed, "--quiet"])
        .env_remove("LEVILAB_SEED")
        .output()
        .ok()?;
    out.status.success().then_some(out.stdout)
}

fn determinism(systems: &[(String, CaseSpec, WeightSystem, CartanDatum)]) -> Outcome {
    let runs = [("sl2:s11-theta:k=1", "0", "0.3"), ("sl2:s11-s11:k=1", "1", "0.37"), ("sl2:s11-theta:k=2", "0", "-0.8"), ("sl3:pair:k=1", "0", "0.45")];
    let mut identical = 0;
    for (case, cartan, eta) in runs {
        let a = cli_report(case, cartan, eta, "7");
        if a.is_some() && a == cli_report(case, cartan, eta, "7") {
            identical += 1;
        }
    }
    let (mut checked, mut changed) = (0, Vec::new());
    for (name, _, w, d) in systems {
        for eta in random_regular_etas(w, 3, SEED) {
            let Ok(r0) = levi_at(w, d, &eta) else { continue };
            for seed in 0..3 {
                checked += 1;
                match levi_at(&rephased(w, seed), d, &eta) {
                    Ok(r1) if r1.scalar.as_ref().map(|s| s.inertia) == r0.scalar.as_ref().map(|s| s.inertia)
                        && r1.cone.test.full == r0.cone.test.full
                        && r1.cone.test.pointed == r0.cone.test.pointed => {}
                    _ => changed.push(name.clone()),
                }
            }
        }
    }
    outcome(
        identical == runs.len() && changed.is_empty() && checked > 0,
        format!("{identical}/{} CLI reports byte-identical; {}/{checked} rephasings kept inertia and cone verdict", runs.len(), checked - changed.len()),
    )
}

fn main() -> ExitCode {
    let systems = all_systems();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("structural", structural()),
        ("weight-space identities", identities(&systems)),
        ("weight spaces", weight_spaces(&systems)),
        ("Levi equivalence", equivalence(&systems)),
        ("extrinsic oracle", oracle()),
        ("cone trichotomy", cone_trichotomy()),
        ("codimension", codimension()),
        ("rank-one counts", rank_one_counts()),
        ("q-completeness", q_complete()),
        ("determinism", determinism(&systems)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        println!("{} criterion {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
