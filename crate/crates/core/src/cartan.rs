//! Fundamental Cartan subalgebras of `g1 ∩ g2` and standard Cartan data `(n, c)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check, invalid, Error, Result};
use crate::liecore::{RealFormSetup, RealLinearMap};
use crate::linalg::{self, c, CMat, CVec, RVec, I};

pub const DEFAULT_SEED: u64 = 42;

/// Standard Cartan datum: `n = exp(i nu)` with `nu ∈ a0`, and `c = t ⊕ a`.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    pub nu: CVec,
    pub t_basis: CMat,
    pub a_basis: CMat,
}

impl CartanDatum {
    pub fn c_basis(&self) -> CMat {
        let n = self.t_basis.nrows();
        let mut m = CMat::zeros(n, self.dim());
        m.view_mut((0, 0), (n, self.t_basis.ncols())).copy_from(&self.t_basis);
        m.view_mut((0, self.t_basis.ncols()), (n, self.a_basis.ncols())).copy_from(&self.a_basis);
        m
    }

    pub fn dim(&self) -> usize {
        self.t_basis.ncols() + self.a_basis.ncols()
    }

    pub fn dim_t(&self) -> usize {
        self.t_basis.ncols()
    }

    pub fn is_compact(&self) -> bool {
        self.a_basis.ncols() == 0
    }

    pub fn is_noncompact_present(&self) -> bool {
        !self.is_compact()
    }

    /// `Ad(n) = exp(i ad nu)`.
    pub fn ad_n(&self, setup: &RealFormSetup) -> CMat {
        linalg::expm(&(setup.algebra.ad(&self.nu) * I))
    }

    pub fn ad_n_inv(&self, setup: &RealFormSetup) -> CMat {
        linalg::expm(&(setup.algebra.ad(&self.nu) * (-I)))
    }

    /// `Ad(n^-1) sigma1 Ad(n)`.
    pub fn twisted_sigma1(&self, setup: &RealFormSetup) -> RealLinearMap {
        RealLinearMap::linear(self.ad_n_inv(setup))
            .compose(&setup.sigma1.map())
            .compose(&RealLinearMap::linear(self.ad_n(setup)))
    }

    /// Element of `c` with the given real coordinates.
    pub fn element(&self, coords: &[f64]) -> CVec {
        let cb = self.c_basis();
        let mut v = CVec::zeros(cb.nrows());
        for (k, x) in coords.iter().enumerate() {
            v += cb.column(k) * c(*x, 0.0);
        }
        v
    }
}

/// Base point `z = n exp(i eta)`; `eta` holds real coordinates in `c_basis`.
#[derive(Debug, Clone)]
pub struct BasePoint {
    pub datum: CartanDatum,
    pub eta: Vec<f64>,
}

impl BasePoint {
    pub fn new(datum: CartanDatum, eta: Vec<f64>) -> Result<Self> {
        if eta.len() != datum.dim() {
            return Err(invalid("cartan::base_point", format!("eta has {} coordinates, c has dimension {}", eta.len(), datum.dim())));
        }
        if eta.iter().any(|x| !x.is_finite()) {
            return Err(invalid("cartan::base_point", "eta must be finite"));
        }
        Ok(BasePoint { datum, eta })
    }

    pub fn eta_vector(&self) -> CVec {
        self.datum.element(&self.eta)
    }
}

fn bracket_cols(setup: &RealFormSetup, x: &CVec, v: &CMat) -> linalg::RMat {
    let alg = &setup.algebra;
    let br = CMat::from_columns(&(0..v.ncols()).map(|j| alg.bracket(x, &v.column(j).into_owned())).collect::<Vec<_>>());
    linalg::realify_cols(&br)
}

/// Real subspace of `span(v)` commuting with every column of `w`.
pub fn centralizer_in(setup: &RealFormSetup, v: &CMat, w: &CMat) -> CMat {
    if v.ncols() == 0 {
        return v.clone();
    }
    let n = setup.dim();
    let mut stack = linalg::RMat::zeros(2 * n * w.ncols(), v.ncols());
    for k in 0..w.ncols() {
        let wk = w.column(k).into_owned();
        let rows = bracket_cols(setup, &wk, v);
        stack.view_mut((2 * n * k, 0), (2 * n, v.ncols())).copy_from(&rows);
    }
    let ns = if w.ncols() == 0 { linalg::RMat::identity(v.ncols(), v.ncols()) } else { linalg::null_space(&stack, 1e-8) };
    let vr = linalg::realify_cols(v) * ns;
    setup.orthonormal_span(&linalg::complexify_cols(&vr))
}

pub fn abelian_residual(setup: &RealFormSetup, v: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..v.ncols() {
        let x = v.column(i).into_owned();
        let nx = setup.norm(&x).max(1e-300);
        for j in (i + 1)..v.ncols() {
            let y = v.column(j).into_owned();
            let ny = setup.norm(&y).max(1e-300);
            worst = worst.max(setup.norm(&setup.algebra.bracket(&x, &y)) / (nx * ny));
        }
    }
    worst
}

/// Maximal abelian subspace of the real span of `ambient` by centralizer refinement.
pub fn max_abelian_in(setup: &RealFormSetup, ambient: &CMat, rng: &mut impl Rng) -> CMat {
    let mut v = ambient.clone();
    for _ in 0..=ambient.ncols() {
        if abelian_residual(setup, &v) < 1e-9 {
            break;
        }
        let r = RVec::from_fn(v.ncols(), |_, _| rng.random_range(-1.0..1.0));
        let xi = &v * r.map(|x| c(x, 0.0));
        v = centralizer_in(setup, &v, &CMat::from_columns(&[xi]));
    }
    v
}

pub fn is_maximal_abelian(setup: &RealFormSetup, ambient: &CMat, v: &CMat) -> bool {
    abelian_residual(setup, v) < 1e-9 && centralizer_in(setup, ambient, v).ncols() == v.ncols()
}

pub fn p1_cap_p2(setup: &RealFormSetup) -> CMat {
    let th = setup.theta.map();
    setup.eigenspace(&[(&setup.sigma1.map(), 1.0), (&setup.sigma2.map(), 1.0), (&th, -1.0)])
}

pub fn k1_cap_k2(setup: &RealFormSetup) -> CMat {
    let th = setup.theta.map();
    setup.eigenspace(&[(&setup.sigma1.map(), 1.0), (&setup.sigma2.map(), 1.0), (&th, 1.0)])
}

pub fn max_abelian_subspace(setup: &RealFormSetup) -> CMat {
    max_abelian_subspace_seeded(setup, DEFAULT_SEED)
}

pub fn max_abelian_subspace_seeded(setup: &RealFormSetup, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    max_abelian_in(setup, &p1_cap_p2(setup), &mut rng)
}

pub fn fundamental_cartan(setup: &RealFormSetup) -> Result<CartanDatum> {
    fundamental_cartan_seeded(setup, DEFAULT_SEED)
}

pub fn fundamental_cartan_seeded(setup: &RealFormSetup, seed: u64) -> Result<CartanDatum> {
    let kk = k1_cap_k2(setup);
    let pp = p1_cap_p2(setup);
    if kk.ncols() + pp.ncols() == 0 {
        return Err(Error::DegenerateSetup { op: "cartan::fundamental_cartan", msg: "g1 ∩ g2 = 0".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a0 = max_abelian_in(setup, &pp, &mut rng);
    let zk = centralizer_in(setup, &kk, &a0);
    let t0 = max_abelian_in(setup, &zk, &mut rng);
    Ok(CartanDatum { nu: CVec::zeros(setup.dim()), t_basis: t0, a_basis: a0 })
}

fn fixed_residual(phi: &RealLinearMap, cb: &CMat) -> f64 {
    (0..cb.ncols())
        .map(|k| {
            let x = cb.column(k).into_owned();
            (phi.apply(&x) - &x).norm() / x.norm().max(1e-300)
        })
        .fold(0.0, f64::max)
}

/// Validate a candidate `(nu, c)` and split `c` into `t ⊕ a`.
pub fn make_datum(setup: &RealFormSetup, nu: &CVec, c_basis: &CMat) -> Result<CartanDatum> {
    const OP: &str = "cartan::make_datum";
    let n = setup.dim();
    if nu.len() != n || c_basis.nrows() != n {
        return Err(invalid(OP, format!("vectors must have length {n}")));
    }
    let real = linalg::realify_cols(c_basis);
    if linalg::rank(&real, 1e-8) != c_basis.ncols() {
        return Err(Error::Validation { op: OP, invariant: "c_basis linearly independent", residual: 0.0 });
    }
    let fund = fundamental_cartan(setup)?;
    let (_, r) = linalg::real_coords(&linalg::realify_cols(&fund.a_basis), &linalg::realify_vec(nu));
    check(OP, "nu in a0", r, 1e-8 * nu.norm().max(1.0))?;
    check(OP, "c abelian", abelian_residual(setup, c_basis), 1e-9)?;
    check(OP, "c fixed by sigma2", fixed_residual(&setup.sigma2.map(), c_basis), 1e-8)?;
    let probe = CartanDatum { nu: nu.clone(), t_basis: CMat::zeros(n, 0), a_basis: CMat::zeros(n, 0) };
    check(OP, "c fixed by Ad(n^-1) sigma1 Ad(n)", fixed_residual(&probe.twisted_sigma1(setup), c_basis), 1e-8)?;
    let th = setup.theta.map();
    let t_res: Vec<f64> = (0..c_basis.ncols()).map(|k| fixed_residual(&th, &c_basis.columns(k, 1).into_owned())).collect();
    let a_res: Vec<f64> = (0..c_basis.ncols()).map(|k| fixed_residual(&th.scale(-1.0), &c_basis.columns(k, 1).into_owned())).collect();
    let (t_basis, a_basis) = if t_res.iter().zip(&a_res).all(|(t, a)| t.min(*a) < 1e-8) {
        let t: Vec<CVec> = (0..c_basis.ncols()).filter(|&k| t_res[k] < 1e-8).map(|k| c_basis.column(k).into_owned()).collect();
        let a: Vec<CVec> = (0..c_basis.ncols()).filter(|&k| t_res[k] >= 1e-8).map(|k| c_basis.column(k).into_owned()).collect();
        (linalg::from_cols(n, &t), linalg::from_cols(n, &a))
    } else {
        let split = |sign: f64| {
            let img = CMat::from_columns(
                &(0..c_basis.ncols())
                    .map(|k| {
                        let x = c_basis.column(k).into_owned();
                        th.apply(&x) - x * c(sign, 0.0)
                    })
                    .collect::<Vec<_>>(),
            );
            let ns = linalg::null_space(&linalg::realify_cols(&img), 1e-8);
            setup.orthonormal_span(&linalg::complexify_cols(&(&real * ns)))
        };
        (split(1.0), split(-1.0))
    };
    if t_basis.ncols() + a_basis.ncols() != c_basis.ncols() {
        return Err(Error::Validation { op: OP, invariant: "c theta-stable", residual: (c_basis.ncols() - t_basis.ncols() - a_basis.ncols()) as f64 });
    }
    if c_basis.ncols() != fund.dim() {
        return Err(Error::Validation { op: OP, invariant: "dim c = dim c0", residual: (c_basis.ncols() as f64 - fund.dim() as f64).abs() });
    }
    Ok(CartanDatum { nu: nu.clone(), t_basis, a_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_sl, sl_matrix, sl_theta, sl_unitary};

    fn setup(s1: &str, s2: &str) -> RealFormSetup {
        let pick = |s: &str| if s == "theta" { sl_theta(2) } else { sl_unitary(1, 1, "s11") };
        RealFormSetup::new(build_sl(2).unwrap(), sl_theta(2), pick(s1), pick(s2)).unwrap()
    }

    #[test]
    fn a0_dimensions() {
        assert_eq!(max_abelian_subspace(&setup("theta", "theta")).ncols(), 0);
        assert_eq!(max_abelian_subspace(&setup("s11", "s11")).ncols(), 1);
        assert_eq!(max_abelian_subspace(&setup("theta", "s11")).ncols(), 0);
    }

    #[test]
    fn fundamental_cartan_types() {
        let d = fundamental_cartan(&setup("theta", "s11")).unwrap();
        assert_eq!((d.dim_t(), d.dim()), (1, 1));
        let m = sl_matrix(2, &d.t_basis.column(0).into_owned());
        assert!(m[(0, 1)].norm() < 1e-12 && m[(0, 0)].re.abs() < 1e-12);
        let d = fundamental_cartan(&setup("s11", "s11")).unwrap();
        assert!(d.is_noncompact_present() && d.dim() == 1);
        assert!(fundamental_cartan(&setup("theta", "theta")).unwrap().is_compact());
    }

    #[test]
    fn make_datum_accepts_and_rejects() {
        let s = setup("s11", "s11");
        let fund = fundamental_cartan(&s).unwrap();
        let round = make_datum(&s, &fund.nu, &fund.c_basis()).unwrap();
        assert!((round.c_basis() - fund.c_basis()).norm() < 1e-14);
        let ih = CVec::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);
        let d = make_datum(&s, &CVec::zeros(3), &CMat::from_columns(&[ih.clone()])).unwrap();
        assert!(d.is_compact());
        let e = CVec::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let err = make_datum(&s, &CVec::zeros(3), &CMat::from_columns(&[ih, e])).unwrap_err();
        assert!(matches!(err, Error::Validation { invariant: "c abelian", .. }));
    }

    #[test]
    fn nu_outside_a0_is_rejected() {
        let s = setup("s11", "s11");
        let fund = fundamental_cartan(&s).unwrap();
        let ih = CVec::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.3)]);
        let err = make_datum(&s, &ih, &fund.c_basis()).unwrap_err();
        assert!(matches!(err, Error::Validation { invariant: "nu in a0", .. }));
    }

    #[test]
    fn rank_independent_of_seed() {
        let s = setup("s11", "s11");
        for seed in 0..10 {
            let d = fundamental_cartan_seeded(&s, seed).unwrap();
            assert_eq!(d.dim(), 1);
            assert!(is_maximal_abelian(&s, &p1_cap_p2(&s), &d.a_basis));
        }
    }

    #[test]
    fn expm_inverse_residual() {
        let s = setup("s11", "s11");
        let fund = fundamental_cartan(&s).unwrap();
        let d = CartanDatum { nu: fund.element(&[0.7]), ..fund };
        let r = d.ad_n(&s) * d.ad_n_inv(&s) - CMat::identity(3, 3);
        assert!(linalg::max_abs(&r) < 1e-10);
    }
}
