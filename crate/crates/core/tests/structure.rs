use levilab::catalog::{build_case, standard_cartan_menu, CaseSpec, CATALOG};
use levilab::liecore::Involution;
use levilab::weights::{has_multiples, identity_residuals, sl2_triple_residual, WeightSystem};
use levilab::RealFormSetup;

fn systems() -> Vec<(String, WeightSystem)> {
    let mut out = Vec::new();
    for name in CATALOG {
        let spec = CaseSpec::parse(name).unwrap();
        let setup = build_case(&spec).unwrap();
        for (i, d) in standard_cartan_menu(&spec).unwrap().into_iter().enumerate() {
            out.push((format!("{name}#{i}"), WeightSystem::build(&setup, &d).unwrap()));
        }
    }
    out
}

fn commutator(a: &Involution, b: &Involution) -> f64 {
    a.map().compose(&b.map()).distance(&b.map().compose(&a.map()))
}

fn involutions(s: &RealFormSetup) -> [&Involution; 3] {
    [&s.theta, &s.sigma1, &s.sigma2]
}

#[test]
fn catalog_setups_are_structurally_valid() {
    for name in CATALOG {
        let s = build_case(&CaseSpec::parse(name).unwrap()).unwrap();
        assert!(s.algebra.jacobi_residual() < 1e-10, "{name}");
        for inv in involutions(&s) {
            assert!(inv.automorphism_residual(&s.algebra) < 1e-9, "{name} {}", inv.name);
            assert!(inv.involution_residual() < 1e-10, "{name} {}", inv.name);
        }
        assert!(commutator(&s.sigma1, &s.theta) < 1e-10, "{name}");
        assert!(commutator(&s.sigma2, &s.theta) < 1e-10, "{name}");
    }
}

#[test]
fn weight_space_identities() {
    for (name, w) in systems() {
        let r = identity_residuals(&w);
        assert!(r.theta_map < 1e-8, "{name} theta {:e}", r.theta_map);
        assert!(r.orthogonality < 1e-8, "{name} orthogonality {:e}", r.orthogonality);
        assert!(r.coroot < 1e-8, "{name} coroot {:e}", r.coroot);
        assert!(r.bracket < 1e-8, "{name} bracket {:e}", r.bracket);
    }
}

#[test]
fn nonzero_weights_are_lines_with_sl2_triples() {
    for (name, w) in systems() {
        assert!(!has_multiples(&w), "{name}");
        assert!(sl2_triple_residual(&w).unwrap() < 1e-8, "{name}");
        for i in w.nonzero() {
            assert_eq!(w.weights[i].dim(), 1, "{name} weight {i}");
        }
    }
}

#[test]
fn zero_weight_spaces_contain_c() {
    for (name, w) in systems() {
        let z = &w.weights[w.zero];
        assert!(z.is_zero() && z.a_is(1.0), "{name}");
        assert!(z.dim() >= w.datum.dim(), "{name}");
    }
}
