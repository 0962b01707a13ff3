//! Example triples `(U^C, sigma1, sigma2)`: the SL(2,C) and SL(3,C) pairs and
//! their k-fold twisted products, plus untwisted diagonal products.
//!
//! Case names look like `sl2:s11-theta:k=1` or `sl2:s11-s11:diag=2`.

use std::fmt;

use crate::cartan::{fundamental_cartan, make_datum, CartanDatum};
use crate::error::{invalid, Result};
use crate::liecore::{build_sl, direct_sum_many, sl_conj, sl_theta, sl_unitary, Involution, Linearity, RealFormSetup};
use crate::linalg::{c, CMat, CVec, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseType {
    Sl2,
    Sl3,
}

/// `(sigma, tau)` on one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    S11S11,
    S11Theta,
    /// `(s11, theta)` with the two real forms exchanged.
    ThetaS11,
    ThetaTheta,
    Sl3Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Twisted,
    /// `sigma1 = sigma x ... x sigma`, `sigma2 = tau x ... x tau`.
    Diagonal,
}

#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub base: BaseType,
    pub pair: Pair,
    pub k: usize,
    pub layout: Layout,
    /// Replaces `(sigma1, sigma2)` after assembly.
    pub overrides: Option<(Involution, Involution)>,
}

/// Regression corpus shipped with the library.
pub const CATALOG: &[&str] = &[
    "sl2:s11-s11:k=1",
    "sl2:s11-theta:k=1",
    "sl2:theta-theta:k=1",
    "sl3:pair:k=1",
    "sl2:s11-theta:k=2",
    "sl2:s11-s11:k=2",
    "sl2:theta-theta:k=2",
    "sl2:s11-theta:k=3",
    "sl2:s11-s11:diag=2",
    "sl2:theta-theta:diag=2",
];

impl CaseSpec {
    pub fn parse(name: &str) -> Result<Self> {
        const OP: &str = "catalog::parse";
        let parts: Vec<&str> = name.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(OP, format!("case name `{name}` is not of the form base:pair:k=N")));
        }
        let base = match parts[0] {
            "sl2" => BaseType::Sl2,
            "sl3" => BaseType::Sl3,
            b => return Err(invalid(OP, format!("unknown base `{b}`"))),
        };
        let pair = match (base, parts[1]) {
            (BaseType::Sl2, "s11-s11") => Pair::S11S11,
            (BaseType::Sl2, "s11-theta") => Pair::S11Theta,
            (BaseType::Sl2, "theta-s11") => Pair::ThetaS11,
            (BaseType::Sl2, "theta-theta") => Pair::ThetaTheta,
            (BaseType::Sl3, "pair") => Pair::Sl3Pair,
            (_, p) => return Err(invalid(OP, format!("pair `{p}` is not available for this base"))),
        };
        let (layout, k) = if let Some(k) = parts[2].strip_prefix("k=") {
            (Layout::Twisted, k)
        } else if let Some(k) = parts[2].strip_prefix("diag=") {
            (Layout::Diagonal, k)
        } else {
            return Err(invalid(OP, format!("bad multiplicity `{}`", parts[2])));
        };
        let k: usize = k.parse().map_err(|_| invalid(OP, format!("bad multiplicity `{}`", parts[2])))?;
        if k == 0 {
            return Err(invalid(OP, "k must be at least 1"));
        }
        Ok(CaseSpec { base, pair, k, layout, overrides: None })
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            BaseType::Sl2 => "sl2",
            BaseType::Sl3 => "sl3",
        };
        let pair = match self.pair {
            Pair::S11S11 => "s11-s11",
            Pair::S11Theta => "s11-theta",
            Pair::ThetaS11 => "theta-s11",
            Pair::ThetaTheta => "theta-theta",
            Pair::Sl3Pair => "pair",
        };
        let lay = match self.layout {
            Layout::Twisted => "k",
            Layout::Diagonal => "diag",
        };
        write!(f, "{base}:{pair}:{lay}={}", self.k)
    }
}

/// `sigma11(X) = -J X^* J`, `J = diag(1, -1)`.
pub fn sigma11() -> Involution {
    sl_unitary(1, 1, "sigma11")
}

/// `tau(X) = I21 theta(X) I21` on sl(3).
pub fn sl3_tau() -> Involution {
    sl_unitary(2, 1, "tau21")
}

fn factor_pair(pair: Pair) -> (Involution, Involution) {
    match pair {
        Pair::S11S11 => (sigma11(), sigma11()),
        Pair::S11Theta => (sigma11(), sl_theta(2)),
        Pair::ThetaS11 => (sl_theta(2), sigma11()),
        Pair::ThetaTheta => (sl_theta(2), sl_theta(2)),
        Pair::Sl3Pair => (sl_conj(3), sl3_tau()),
    }
}

/// Antilinear map on a k-fold sum whose slot `i` is `maps[i]` applied to slot `src[i]`.
fn assemble(name: &str, d: usize, slots: &[(usize, &Involution)]) -> Involution {
    let k = slots.len();
    let mut m = CMat::zeros(k * d, k * d);
    for (i, (src, inv)) in slots.iter().enumerate() {
        m.view_mut((i * d, src * d), (d, d)).copy_from(&inv.matrix);
    }
    Involution::new(name, Linearity::Antilinear, m)
}

/// Twisted product involutions for `k` factors.
pub fn twisted_pair(d: usize, k: usize, sigma: &Involution, tau: &Involution, theta: &Involution) -> (Involution, Involution) {
    let mut s1: Vec<(usize, &Involution)> = Vec::with_capacity(k);
    let mut s2: Vec<(usize, &Involution)> = Vec::with_capacity(k);
    // sigma1: sigma on slot 0, theta-swaps (1,2), (3,4), ...; tau on the last slot when k is even
    s1.push((0, sigma));
    let mut i = 1;
    while i < k {
        if i + 1 < k {
            s1.push((i + 1, theta));
            s1.push((i, theta));
            i += 2;
        } else {
            s1.push((i, tau));
            i += 1;
        }
    }
    // sigma2: theta-swaps (0,1), (2,3), ...; tau on the last slot when k is odd
    let mut i = 0;
    while i < k {
        if i + 1 < k {
            s2.push((i + 1, theta));
            s2.push((i, theta));
            i += 2;
        } else {
            s2.push((i, tau));
            i += 1;
        }
    }
    (assemble("sigma1", d, &s1), assemble("sigma2", d, &s2))
}

pub fn build_case(spec: &CaseSpec) -> Result<RealFormSetup> {
    let n = match spec.base {
        BaseType::Sl2 => 2,
        BaseType::Sl3 => 3,
    };
    let base = build_sl(n)?;
    let d = base.dim();
    let parts: Vec<_> = (0..spec.k).map(|_| &base).collect();
    let alg = direct_sum_many(&parts);
    let th = sl_theta(n);
    let theta = assemble("theta", d, &(0..spec.k).map(|i| (i, &th)).collect::<Vec<_>>());
    let (sigma, tau) = factor_pair(spec.pair);
    let (s1, s2) = match spec.layout {
        Layout::Twisted => twisted_pair(d, spec.k, &sigma, &tau, &th),
        Layout::Diagonal => (
            assemble("sigma1", d, &(0..spec.k).map(|i| (i, &sigma)).collect::<Vec<_>>()),
            assemble("sigma2", d, &(0..spec.k).map(|i| (i, &tau)).collect::<Vec<_>>()),
        ),
    };
    let (s1, s2) = spec.overrides.clone().unwrap_or((s1, s2));
    RealFormSetup::new(alg, theta, s1, s2)
}

pub fn build_named(name: &str) -> Result<RealFormSetup> {
    build_case(&CaseSpec::parse(name)?)
}

/// Fundamental datum first, then curated alternatives.
pub fn standard_cartan_menu(spec: &CaseSpec) -> Result<Vec<CartanDatum>> {
    let setup = build_case(spec)?;
    standard_cartan_menu_for(spec, &setup)
}

pub fn standard_cartan_menu_for(spec: &CaseSpec, setup: &RealFormSetup) -> Result<Vec<CartanDatum>> {
    let mut menu = vec![fundamental_cartan(setup)?];
    if spec.overrides.is_some() || spec.k != 1 || spec.layout != Layout::Twisted {
        return Ok(menu);
    }
    let n = setup.dim();
    let alt = match spec.pair {
        // i diag(1, -1)
        Pair::S11S11 => {
            let mut v = CVec::zeros(n);
            v[2] = I;
            Some(v)
        }
        // E12 - E21 spans so(2) inside so(2,1)
        Pair::Sl3Pair => {
            let mut v = CVec::zeros(n);
            v[0] = c(1.0, 0.0);
            v[2] = c(-1.0, 0.0);
            Some(v)
        }
        _ => None,
    };
    if let Some(v) = alt {
        let v = &v / c(setup.norm(&v), 0.0);
        menu.push(make_datum(setup, &CVec::zeros(n), &CMat::from_columns(&[v]))?);
    }
    Ok(menu)
}
