//! Isotropy set `Λ̃(z)`, codimension and the complex tangent space at `z = n exp(i eta)`.

use crate::cartan::BasePoint;
use crate::error::{check, invalid, Result};
use crate::linalg::{self, c, CMat, C64, I, ONE};
use crate::weights::WeightSystem;

#[derive(Debug, Clone)]
pub struct OrbitProfile {
    pub base: BasePoint,
    /// Indices of weights with `a e^{-2i lambda(eta)} = 1`.
    pub lambda_tilde: Vec<usize>,
    pub codim: usize,
    pub strongly_regular: bool,
    pub complex_tangent: Vec<usize>,
    /// Weights whose distance to the isotropy condition lies in `(membership, near_degenerate]`.
    pub near_degenerate: Vec<usize>,
    /// Subspace distance between `Fix(tau_z)` and the span of the `Λ̃(z)` spaces.
    pub fix_residual: f64,
}

impl OrbitProfile {
    pub fn contains(&self, i: usize) -> bool {
        self.lambda_tilde.contains(&i)
    }
}

/// `a e^{-2i lambda(eta)}`.
pub fn isotropy_value(lambda: &[C64], a: C64, eta: &[f64]) -> C64 {
    let l: C64 = lambda.iter().zip(eta).map(|(x, e)| x * e).sum();
    a * (c(0.0, -2.0) * l).exp()
}

/// `|a e^{-2i lambda(eta)} - 1|` for weight `i`.
pub fn isotropy_distance(system: &WeightSystem, i: usize, eta: &[f64]) -> f64 {
    let w = &system.weights[i];
    (isotropy_value(&w.lambda, w.a, eta) - ONE).norm()
}

fn check_base(system: &WeightSystem, base: &BasePoint, op: &'static str) -> Result<()> {
    if base.eta.len() != system.rank() {
        return Err(invalid(op, format!("eta has {} coordinates, c has dimension {}", base.eta.len(), system.rank())));
    }
    let diff = &base.datum.c_basis() - &system.datum.c_basis();
    if linalg::max_abs(&diff) > 1e-12 || (&base.datum.nu - &system.datum.nu).norm() > 1e-12 {
        return Err(invalid(op, "base point lies on a different Cartan datum"));
    }
    Ok(())
}

pub fn lambda_tilde(system: &WeightSystem, base: &BasePoint) -> Result<Vec<usize>> {
    check_base(system, base, "orbit::lambda_tilde")?;
    Ok(lambda_tilde_at(system, &base.eta))
}

pub fn lambda_tilde_at(system: &WeightSystem, eta: &[f64]) -> Vec<usize> {
    (0..system.len()).filter(|&i| isotropy_distance(system, i, eta) < system.tol.membership).collect()
}

/// `tau_z = exp(-i ad eta) tau_n exp(-i ad eta)`.
pub fn tau_z(system: &WeightSystem, eta: &[f64]) -> CMat {
    let x = system.datum.element(eta);
    let e = linalg::expm(&(system.setup.algebra.ad(&x) * (-I)));
    &e * &system.tau * &e
}

pub fn orbit_profile(system: &WeightSystem, base: &BasePoint) -> Result<OrbitProfile> {
    const OP: &str = "orbit::orbit_profile";
    check_base(system, base, OP)?;
    let eta = &base.eta;
    let tol = &system.tol;
    let lt = lambda_tilde_at(system, eta);
    check(OP, "(0,1) in lambda_tilde", if lt.contains(&system.zero) { 0.0 } else { 1.0 }, 0.0)?;
    for &i in &lt {
        check(OP, "lambda_tilde closed under theta", if lt.contains(&system.theta_action[i]) { 0.0 } else { 1.0 }, 0.0)?;
    }
    let complex_tangent: Vec<usize> = (0..system.len()).filter(|i| !lt.contains(i)).collect();
    let near_degenerate = complex_tangent
        .iter()
        .copied()
        .filter(|&i| isotropy_distance(system, i, eta) <= tol.near_degenerate)
        .collect();
    let iso_dim: usize = lt.iter().map(|&i| system.weights[i].dim()).sum();
    let codim = system.rank() + lt.len() - 1;
    check(OP, "codim = dim Fix(tau_z)", (iso_dim as f64 - codim as f64).abs(), 0.0)?;

    // Fix(tau_z) against the weight-space span, in orthonormal coordinates
    let n = system.setup.dim();
    let (l, li) = (system.setup.sqrt_gram(), system.setup.inv_sqrt_gram());
    let t = l * tau_z(system, eta) * li - CMat::identity(n, n);
    let fix = abs_null_space(&t, tol.membership);
    let span: Vec<_> = lt.iter().flat_map(|&i| system.weights[i].basis.iter().map(|x| l * x)).collect();
    let span = linalg::from_cols(n, &span);
    let fix_residual = subspace_distance(&fix, &span);
    check(OP, "Fix(tau_z) = span of lambda_tilde spaces", fix_residual, 1e-7)?;

    Ok(OrbitProfile {
        base: base.clone(),
        strongly_regular: lt.len() == 1,
        lambda_tilde: lt,
        codim,
        complex_tangent,
        near_degenerate,
        fix_residual,
    })
}

/// `tau_z` is normal, so its singular values measure `|a e^{-2i lambda(eta)} - 1|` directly.
fn abs_null_space(t: &CMat, cut: f64) -> CMat {
    let n = t.ncols();
    let svd = t.clone().svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let idx: Vec<usize> = (0..n).filter(|&k| svd.singular_values[k] < cut).collect();
    CMat::from_fn(n, idx.len(), |i, j| vt[(idx[j], i)].conj())
}

/// Sine of the largest principal angle; 1 when dimensions differ.
fn subspace_distance(a: &CMat, b: &CMat) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    let qa = a.clone().qr().q();
    let qb = b.clone().qr().q();
    let proj = &qa * qa.adjoint() * &qb;
    let diff = &qb - proj;
    diff.singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{fundamental_cartan, make_datum};
    use crate::catalog::build_named;
    use crate::linalg::{CVec, ZERO};

    #[test]
    fn identity_of_split_su11_has_codim_three() {
        let s = build_named("sl2:s11-s11:k=1").unwrap();
        let d = fundamental_cartan(&s).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        let p = orbit_profile(&w, &BasePoint::new(d, vec![0.0]).unwrap()).unwrap();
        assert_eq!(p.lambda_tilde.len(), 3);
        assert_eq!(p.codim, 3);
        assert!(!p.strongly_regular);
        assert!(p.complex_tangent.is_empty());
    }

    #[test]
    fn theta_s11_is_strongly_regular() {
        let s = build_named("sl2:s11-theta:k=1").unwrap();
        let d = fundamental_cartan(&s).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        for eta in [0.0, 0.3, -1.1, 2.0] {
            let p = orbit_profile(&w, &BasePoint::new(d.clone(), vec![eta]).unwrap()).unwrap();
            assert_eq!(p.lambda_tilde, vec![w.zero]);
            assert_eq!(p.codim, 1);
            assert!(p.strongly_regular);
            assert_eq!(p.complex_tangent.len(), 2);
        }
    }

    #[test]
    fn critical_eta_of_split_su11() {
        // real lambda: e^{-2i lambda(eta)} = 1 at lambda(eta) = pi
        let s = build_named("sl2:s11-s11:k=1").unwrap();
        let d = fundamental_cartan(&s).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        let l = w.weights[w.nonzero().next().unwrap()].lambda[0].re.abs();
        let eta = std::f64::consts::PI / l;
        let p = orbit_profile(&w, &BasePoint::new(d.clone(), vec![eta]).unwrap()).unwrap();
        assert_eq!(p.lambda_tilde.len(), 3);
        assert_eq!(p.codim, 3);
        let p = orbit_profile(&w, &BasePoint::new(d, vec![eta * (1.0 + 1e-7)]).unwrap()).unwrap();
        assert!(p.strongly_regular);
        assert_eq!(p.near_degenerate.len(), 2);
    }

    #[test]
    fn compact_su11_is_critical_only_at_zero() {
        // imaginary lambda: e^{-2i lambda(eta)} is real and positive, equal to 1 only at eta = 0
        let s = build_named("sl2:s11-s11:k=1").unwrap();
        let ih = CVec::from_vec(vec![ZERO, ZERO, I]);
        let v = &ih / c(s.norm(&ih), 0.0);
        let d = make_datum(&s, &CVec::zeros(3), &CMat::from_columns(&[v])).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        assert_eq!(lambda_tilde(&w, &BasePoint::new(d.clone(), vec![0.0]).unwrap()).unwrap().len(), 3);
        for eta in [0.01, 1.0, -3.0, 4.4428829] {
            assert_eq!(lambda_tilde(&w, &BasePoint::new(d.clone(), vec![eta]).unwrap()).unwrap(), vec![w.zero]);
        }
    }

    #[test]
    fn wrong_eta_length() {
        let s = build_named("sl2:s11-theta:k=1").unwrap();
        let d = fundamental_cartan(&s).unwrap();
        let w = WeightSystem::build(&s, &d).unwrap();
        let b = BasePoint { datum: d, eta: vec![0.1, 0.2] };
        assert!(orbit_profile(&w, &b).is_err());
    }
}
