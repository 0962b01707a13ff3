//! Positive-spanning and pointedness tests for finitely generated convex cones.

use microlp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::error::{Error, Result};
use crate::linalg::{self, RMat, RVec};

const OP: &str = "leviform::cone_verdict";

#[derive(Debug, Clone, PartialEq)]
pub struct ConeTest {
    pub dim: usize,
    pub rank: usize,
    /// Cone equals the whole space.
    pub full: bool,
    /// Cone contains no line.
    pub pointed: bool,
    /// Nonzero `l` with `l(g) <= 0` for every generator, when the cone is not full.
    pub certificate: Option<Vec<f64>>,
}

fn normalized(gens: &[Vec<f64>]) -> Vec<Vec<f64>> {
    gens.iter()
        .filter_map(|g| {
            let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            (n > 1e-12).then(|| g.iter().map(|x| x / n).collect())
        })
        .collect()
}

fn lp_error(e: microlp::Error) -> Error {
    Error::Inconclusive { op: OP, msg: format!("LP solver failed: {e}") }
}

fn dot(l: &[f64], g: &[f64]) -> f64 {
    l.iter().zip(g).map(|(a, b)| a * b).sum()
}

/// Whether some `mu_i >= 1` gives `sum mu_i g_i = 0`.
fn strictly_positive_relation(gens: &[Vec<f64>], dim: usize) -> Result<bool> {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let mu: Vec<Variable> = gens.iter().map(|_| p.add_var(1.0, (1.0, f64::INFINITY))).collect();
    for k in 0..dim {
        let row: Vec<(Variable, f64)> = mu.iter().zip(gens).map(|(v, g)| (*v, g[k])).collect();
        p.add_constraint(row.as_slice(), ComparisonOp::Eq, 0.0);
    }
    match p.solve() {
        Ok(_) => Ok(true),
        Err(microlp::Error::Infeasible) => Ok(false),
        Err(e) => Err(lp_error(e)),
    }
}

/// Free `l` with `l(g_i) cmp rhs` for all `i`, plus an optional normalization `sum l(g_i) = total`.
fn functional(gens: &[Vec<f64>], dim: usize, cmp: ComparisonOp, rhs: f64, total: Option<f64>) -> Result<Option<Vec<f64>>> {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let l: Vec<Variable> = (0..dim).map(|_| p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    for g in gens {
        let row: Vec<(Variable, f64)> = l.iter().zip(g).map(|(v, x)| (*v, *x)).collect();
        p.add_constraint(row.as_slice(), cmp, rhs);
    }
    if let Some(t) = total {
        let row: Vec<(Variable, f64)> = (0..dim).map(|k| (l[k], gens.iter().map(|g| g[k]).sum())).collect();
        p.add_constraint(row.as_slice(), ComparisonOp::Eq, t);
    }
    match p.solve() {
        Ok(out) => {
            let sol = out.solution().ok_or_else(|| Error::Inconclusive { op: OP, msg: "LP solve interrupted".into() })?;
            Ok(Some(l.iter().map(|v| sol.var_value(*v)).collect()))
        }
        Err(microlp::Error::Infeasible) => Ok(None),
        Err(e) => Err(lp_error(e)),
    }
}

/// Full and pointed tests for the cone generated by `gens` in `R^dim`.
pub fn analyze(gens: &[Vec<f64>], dim: usize) -> Result<ConeTest> {
    let gens = normalized(gens);
    if dim == 0 {
        return Ok(ConeTest { dim, rank: 0, full: true, pointed: true, certificate: None });
    }
    if gens.is_empty() {
        let mut l = vec![0.0; dim];
        l[0] = 1.0;
        return Ok(ConeTest { dim, rank: 0, full: false, pointed: true, certificate: Some(l) });
    }
    let g = RMat::from_fn(dim, gens.len(), |i, j| gens[j][i]);
    let rank = linalg::rank(&g, 1e-9);
    let full = rank == dim && strictly_positive_relation(&gens, dim)?;
    let certificate = if full {
        None
    } else if rank < dim {
        let ns = linalg::null_space(&g.transpose(), 1e-9);
        Some(ns.column(0).iter().copied().collect())
    } else {
        let l = functional(&gens, dim, ComparisonOp::Le, 0.0, Some(-1.0))?
            .ok_or_else(|| Error::Inconclusive { op: OP, msg: "cone is neither full nor separated by a functional".into() })?;
        let worst = gens.iter().map(|g| dot(&l, g)).fold(f64::NEG_INFINITY, f64::max);
        if worst > 1e-9 {
            return Err(Error::Inconclusive { op: OP, msg: format!("Farkas certificate violated by {worst:.3e}") });
        }
        Some(l)
    };
    let pointed = functional(&gens, dim, ComparisonOp::Ge, 1.0, None)?.is_some();
    if full && pointed {
        return Err(Error::Inconclusive { op: OP, msg: "cone reported both full and pointed".into() });
    }
    Ok(ConeTest { dim, rank, full, pointed, certificate })
}

/// `l(g)` for every generator; used to audit certificates.
pub fn evaluate(l: &[f64], gens: &[Vec<f64>]) -> Vec<f64> {
    gens.iter().map(|g| dot(l, g)).collect()
}

/// Vector form of a generator list.
pub fn as_matrix(gens: &[Vec<f64>], dim: usize) -> RMat {
    RMat::from_fn(dim, gens.len(), |i, j| gens[j][i])
}

pub fn to_vec(v: &RVec) -> Vec<f64> {
    v.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_in_one_dimension_is_full() {
        let t = analyze(&[vec![1.0], vec![-2.0]], 1).unwrap();
        assert!(t.full && !t.pointed && t.certificate.is_none());
    }

    #[test]
    fn ray_is_pointed() {
        let t = analyze(&[vec![-0.5], vec![-3.0]], 1).unwrap();
        assert!(!t.full && t.pointed);
        let l = t.certificate.unwrap();
        assert!(evaluate(&l, &[vec![-0.5], vec![-3.0]]).iter().all(|v| *v <= 1e-12));
    }

    #[test]
    fn simplex_directions_span_the_plane() {
        let gens = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, -1.0]];
        let t = analyze(&gens, 2).unwrap();
        assert!(t.full && !t.pointed);
    }

    #[test]
    fn half_plane_is_neither() {
        let gens = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]];
        let t = analyze(&gens, 2).unwrap();
        assert!(!t.full && !t.pointed);
        let l = t.certificate.unwrap();
        let v = evaluate(&l, &gens);
        assert!(v.iter().all(|x| *x <= 1e-9) && v.iter().sum::<f64>() < -0.5);
    }

    #[test]
    fn rank_deficient_gets_null_certificate() {
        let gens = vec![vec![1.0, 0.0], vec![-1.0, 0.0]];
        let t = analyze(&gens, 2).unwrap();
        assert!(!t.full && !t.pointed && t.rank == 1);
        let l = t.certificate.unwrap();
        assert!(evaluate(&l, &gens).iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn empty_and_zero_generators() {
        let t = analyze(&[vec![0.0, 0.0]], 2).unwrap();
        assert!(!t.full && t.pointed);
        assert!(analyze(&[], 0).unwrap().full);
    }
}
