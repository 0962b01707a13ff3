//! Report document. Floats carry 12 significant digits, non-finite values are
//! `null`, complex numbers are `[re, im]`.

use serde::{Serialize, Serializer};

use levilab::linalg::{CMat, C64};

/// Float rounded to 12 significant digits on output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F(pub f64);

pub fn round12(x: f64) -> f64 {
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl Serialize for F {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(round12(self.0))
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx(pub C64);

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [F(self.0.re), F(self.0.im)].serialize(s)
    }
}

pub fn fs(v: &[f64]) -> Vec<F> {
    v.iter().map(|x| F(*x)).collect()
}

pub fn cxs<'a>(v: impl IntoIterator<Item = &'a C64>) -> Vec<Cx> {
    v.into_iter().map(|z| Cx(*z)).collect()
}

/// Row-major complex matrix.
pub fn cmat(m: &CMat) -> Vec<Vec<Cx>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| Cx(m[(i, j)])).collect()).collect()
}

pub type Inertia = [usize; 3];

pub fn inertia(t: (usize, usize, usize)) -> Inertia {
    [t.0, t.1, t.2]
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub case: String,
    pub seed: u64,
    pub ops: Vec<&'static str>,
    pub setup: SetupSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi: Option<LeviSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domains: Option<DomainsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
}

#[derive(Debug, Serialize)]
pub struct Tolerances {
    pub cluster: F,
    pub membership: F,
    pub near_degenerate: F,
    pub inertia: F,
}

#[derive(Debug, Serialize)]
pub struct SetupSummary {
    pub algebra_dim: usize,
    pub dim_k1: usize,
    pub dim_p1: usize,
    pub dim_k2: usize,
    pub dim_p2: usize,
    pub dim_c: usize,
    pub dim_t: usize,
    pub dim_a: usize,
    pub compact_c: bool,
    pub nu: Vec<Cx>,
    pub eta: Vec<F>,
    pub tolerances: Tolerances,
}

#[derive(Debug, Serialize)]
pub struct WeightRow {
    pub index: usize,
    pub lambda: Vec<Cx>,
    pub a: Cx,
    pub reality: &'static str,
    pub dim: usize,
    pub positive: bool,
    pub zero: bool,
}

#[derive(Debug, Serialize)]
pub struct OrbitSection {
    pub lambda_tilde: Vec<usize>,
    pub codim: usize,
    pub strongly_regular: bool,
    pub complex_tangent: Vec<usize>,
    pub near_degenerate: Vec<usize>,
    pub fix_residual: F,
}

#[derive(Debug, Serialize)]
pub struct Block {
    pub weights: Vec<usize>,
    pub case: &'static str,
    /// One Hermitian matrix per coordinate of `c`.
    pub components: Vec<Vec<Vec<Cx>>>,
    pub inertia: Vec<Inertia>,
}

#[derive(Debug, Serialize)]
pub struct Scalar {
    pub weights: Vec<usize>,
    pub eigenvalues: Vec<F>,
    pub inertia: Inertia,
}

#[derive(Debug, Serialize)]
pub struct LeviSection {
    pub blocks: Vec<Block>,
    pub scalar: Option<Scalar>,
    pub formula_deviation: F,
    pub cross_block_residual: F,
    pub hermitian_residual: F,
}

#[derive(Debug, Serialize)]
pub struct GeneratorRow {
    pub weight: usize,
    pub case: &'static str,
    pub vector: Vec<F>,
}

#[derive(Debug, Serialize)]
pub struct ConeSection {
    pub dim: usize,
    pub rank: usize,
    pub generators: Vec<GeneratorRow>,
    pub full: bool,
    pub pointed: bool,
    /// `l` with `l(g) <= 0` on every generator, when not full.
    pub certificate: Option<Vec<F>>,
    pub predicted_case: &'static str,
    pub consistent: bool,
    pub stein_obstruction: bool,
    pub irreducible: bool,
    pub zero_block_nonvanishing: bool,
}

#[derive(Debug, Serialize)]
pub struct Rank1 {
    pub inertia: Inertia,
    pub q: usize,
    pub predicted: usize,
    pub predicted_positive: usize,
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct Cmax {
    pub defined: bool,
    pub inside: bool,
    pub interior: bool,
    pub margin: F,
}

#[derive(Debug, Serialize)]
pub struct QComplete {
    pub statement: usize,
    pub proof_variant: usize,
    pub discrepancy: bool,
}

#[derive(Debug, Serialize)]
pub struct DomainsSection {
    pub rank1: Option<Rank1>,
    pub cmax: Option<Cmax>,
    pub q_complete: Option<QComplete>,
    pub hermitian_type: Option<bool>,
    pub compactness: Vec<Option<&'static str>>,
}

#[derive(Debug, Serialize)]
pub struct Structure {
    pub jacobi: F,
    pub automorphism: F,
    pub involution: F,
    pub commutation: F,
}

#[derive(Debug, Serialize)]
pub struct Identities {
    pub theta_map: F,
    pub orthogonality: F,
    pub coroot: F,
    pub bracket: F,
    pub sl2_triples: F,
    pub nonzero_dims_one: bool,
    pub multiples_present: bool,
}

#[derive(Debug, Serialize)]
pub struct Adjoint {
    pub ad_residuals: Vec<F>,
    pub tau_residual: F,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Equivalence {
    pub trials: usize,
    pub max_deviation: F,
    pub max_cross: F,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Oracle {
    pub defining_function: &'static str,
    pub invariance_residual: F,
    pub inertia: Inertia,
    pub eigenvalues: Vec<F>,
    pub steps: Vec<F>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Rephasing {
    pub inertia_unchanged: bool,
    pub cone_unchanged: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifySection {
    pub structure: Structure,
    pub identities: Identities,
    pub adjoint: Adjoint,
    pub equivalence: Equivalence,
    pub oracle: Option<Oracle>,
    /// Why `oracle` is absent.
    pub oracle_note: Option<String>,
    pub rephasing: Option<Rephasing>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(serde_json::to_string(&F(0.1 + 0.2)).unwrap(), "0.3");
        assert_eq!(serde_json::to_string(&F(-0.0)).unwrap(), "0.0");
        assert_eq!(serde_json::to_string(&F(f64::INFINITY)).unwrap(), "null");
        assert_eq!(serde_json::to_string(&F(1.0 / 3.0)).unwrap(), "0.333333333333");
        assert_eq!(serde_json::to_string(&Cx(C64::new(1.5, -2.0))).unwrap(), "[1.5,-2.0]");
    }
}
