//! Intrinsic Levi form of a closed orbit: pairings, quadratic blocks per
//! weight orbit, Levi-cone generators and the cone verdict.

use crate::cartan::BasePoint;
use crate::cone::{self, ConeTest};
use crate::domains;
use crate::error::{check, Error, Result};
use crate::liecore::RealLinearMap;
use crate::linalg::{self, c, CMat, CVec, C64, I, ONE, ZERO};
use crate::orbit::{self, OrbitProfile};
use crate::weights::{self, Reality, WeightSystem};

/// One basis vector `xi` of the complex tangent: weight index and slot in its basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Member {
    pub weight: usize,
    pub slot: usize,
}

impl Member {
    pub fn new(weight: usize) -> Self {
        Member { weight, slot: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Real,
    ImagA1,
    ImagAm1,
    ImagOther,
    ComplexA1,
    ComplexAm1,
    ComplexOther,
    /// `(0, a)` with `a != 1`, evaluated from the pairing formula.
    ZeroWeight,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Real => "real",
            CaseTag::ImagA1 => "imag_a1",
            CaseTag::ImagAm1 => "imag_am1",
            CaseTag::ImagOther => "imag_other",
            CaseTag::ComplexA1 => "complex_a1",
            CaseTag::ComplexAm1 => "complex_am1",
            CaseTag::ComplexOther => "complex_other",
            CaseTag::ZeroWeight => "zero_weight",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LeviBlock {
    pub members: Vec<Member>,
    pub case: CaseTag,
    /// One Hermitian matrix per coordinate of `c_basis`.
    pub components: Vec<CMat>,
}

impl LeviBlock {
    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.members.iter().map(|m| m.weight).collect();
        w.dedup();
        w
    }

    pub fn max_entry(&self) -> f64 {
        self.components.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    /// Largest `|M - M^*|` over components.
    pub fn hermitian_residual(&self) -> f64 {
        self.components.iter().map(|m| linalg::max_abs(&(m - m.adjoint()))).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeCase {
    NoncompactFull,
    CompactNontrivialAFull,
    HermitianPointed,
    HermitianOutsideCmaxFull,
    NonhermitianFull,
    /// Compact `c`, all `a = 1` and `g2` compact: a single ray per weight pair.
    CompactFormPointed,
}

impl ConeCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ConeCase::NoncompactFull => "noncompact_full",
            ConeCase::CompactNontrivialAFull => "compact_nontrivial_a_full",
            ConeCase::HermitianPointed => "hermitian_pointed",
            ConeCase::HermitianOutsideCmaxFull => "hermitian_outside_cmax_full",
            ConeCase::NonhermitianFull => "nonhermitian_full",
            ConeCase::CompactFormPointed => "compact_form_pointed",
        }
    }

    pub fn predicts_full(self) -> bool {
        !matches!(self, ConeCase::HermitianPointed | ConeCase::CompactFormPointed)
    }
}

#[derive(Debug, Clone)]
pub struct Generator {
    /// Representative weight of the block that produced it.
    pub weight: usize,
    pub case: CaseTag,
    /// Coordinates in `c_basis` (`i t ⊕ a`).
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ConeVerdict {
    pub generators: Vec<Generator>,
    pub test: ConeTest,
    pub cone_full: bool,
    pub cone_case: ConeCase,
    /// Generator test agrees with the predicted case.
    pub consistent: bool,
    pub stein_obstruction: bool,
    pub irreducible: bool,
    /// Zero-weight blocks carrying a nonzero form.
    pub zero_block_nonvanishing: bool,
}

#[derive(Debug, Clone)]
pub struct ScalarForm {
    pub members: Vec<Member>,
    pub matrix: CMat,
    pub eigenvalues: Vec<f64>,
    /// `(n+, n-, n0)`.
    pub inertia: (usize, usize, usize),
}

#[derive(Debug, Clone)]
pub struct LeviReport {
    pub profile: OrbitProfile,
    pub blocks: Vec<LeviBlock>,
    /// Largest entrywise gap between the blocks and direct pairings, scaled by `max(1, block size)`.
    pub formula_deviation: f64,
    pub cross_block_residual: f64,
    pub hermitian_residual: f64,
    pub scalar: Option<ScalarForm>,
    pub cone: ConeVerdict,
}

impl LeviReport {
    pub fn cone_generators(&self) -> Vec<Vec<f64>> {
        self.cone.generators.iter().map(|g| g.vector.clone()).collect()
    }

    pub fn cone_full(&self) -> bool {
        self.cone.cone_full
    }

    pub fn stein_obstruction(&self) -> bool {
        self.cone.stein_obstruction
    }
}

/// Shared state for one base point.
struct Ctx<'a> {
    sys: &'a WeightSystem,
    eta: &'a [f64],
    lt: Vec<usize>,
    s2: RealLinearMap,
    cb: CMat,
    op: &'static str,
}

impl<'a> Ctx<'a> {
    fn new(sys: &'a WeightSystem, base: &'a BasePoint, op: &'static str) -> Result<Self> {
        if !sys.levi_normalized {
            return Err(Error::Unsupported { op, msg: "Levi basis not installed".into() });
        }
        let lt = orbit::lambda_tilde(sys, base)?;
        Ok(Ctx { sys, eta: &base.eta, lt, s2: sys.setup.sigma2.map(), cb: sys.datum.c_basis(), op })
    }

    fn xi(&self, m: Member) -> &CVec {
        &self.sys.weights[m.weight].basis[m.slot]
    }

    fn br(&self, x: &CVec, y: &CVec) -> CVec {
        self.sys.setup.algebra.bracket(x, y)
    }

    /// Coordinates in `c_basis`; the vector must lie in `c^C`.
    fn cc(&self, v: &CVec) -> Result<CVec> {
        let (y, res) = linalg::coords(&self.cb, v);
        check(self.op, "Levi value lies in c^C", res, 1e-8 * v.norm().max(1.0))?;
        Ok(y)
    }

    /// Coordinates of `w + sigma2(w)`.
    fn two_re(&self, w: &CVec) -> Result<CVec> {
        self.cc(&(w + self.s2.apply(w)))
    }

    fn lam(&self, i: usize) -> C64 {
        self.sys.weights[i].eval(self.eta)
    }

    /// `a e^{-2i lambda(eta)} - 1`.
    fn denom(&self, i: usize) -> Result<C64> {
        let w = &self.sys.weights[i];
        let d = orbit::isotropy_value(&w.lambda, w.a, self.eta) - ONE;
        if d.norm() < 1e-10 {
            return Err(Error::NearSingular { op: self.op, value: d.norm() });
        }
        Ok(d)
    }

    fn pairing(&self, p: Member, q: Member) -> Result<CVec> {
        for m in [p, q] {
            if self.lt.contains(&m.weight) {
                return Err(Error::NotComplexTangent { op: self.op, index: m.weight });
            }
        }
        let (wp, wq) = (&self.sys.weights[p.weight], &self.sys.weights[q.weight]);
        let n = self.sys.setup.dim();
        let target: Vec<C64> = wp.lambda.iter().zip(&wq.lambda).map(|(x, y)| x + y.conj()).collect();
        let hit = self.sys.find(&target, wp.a * wq.a).filter(|k| self.lt.contains(k));
        if hit.is_none() {
            return Ok(CVec::zeros(n));
        }
        let d = self.denom(p.weight)?;
        let v = self.br(self.xi(p), &self.s2.apply(self.xi(q)));
        Ok(v * (I / d))
    }
}

/// Theorem value `L(xi_i, xi_j)` as an algebra vector in `c^C` (or 0).
pub fn levi_pairing(system: &WeightSystem, base: &BasePoint, i: usize, j: usize) -> Result<CVec> {
    levi_pairing_members(system, base, Member::new(i), Member::new(j))
}

pub fn levi_pairing_members(system: &WeightSystem, base: &BasePoint, p: Member, q: Member) -> Result<CVec> {
    let ctx = Ctx::new(system, base, "leviform::levi_pairing")?;
    for m in [p, q] {
        if m.weight >= system.len() || m.slot >= system.weights[m.weight].dim() {
            return Err(crate::error::invalid(ctx.op, format!("no basis vector {m:?}")));
        }
    }
    ctx.pairing(p, q)
}

/// `levi_pairing` in `c_basis` coordinates.
pub fn levi_pairing_coords(system: &WeightSystem, base: &BasePoint, i: usize, j: usize) -> Result<CVec> {
    let ctx = Ctx::new(system, base, "leviform::levi_pairing")?;
    ctx.cc(&ctx.pairing(Member::new(i), Member::new(j))?)
}

#[derive(Debug, Clone)]
struct BlockSpec {
    members: Vec<Member>,
    case: CaseTag,
}

fn all_slots(sys: &WeightSystem, ws: &[usize]) -> Vec<Member> {
    ws.iter().flat_map(|&w| (0..sys.weights[w].dim()).map(move |slot| Member { weight: w, slot })).collect()
}

/// Orbits of the complex tangent weights under `theta` and `sigma2`, with member order `[i, s2 i, th i, s2 th i]`.
fn block_specs(ctx: &Ctx, tangent: &[usize]) -> Result<Vec<BlockSpec>> {
    let sys = ctx.sys;
    let mut seen = vec![false; sys.len()];
    let mut out = Vec::new();
    for &i in tangent {
        if seen[i] {
            continue;
        }
        let s = sys.sigma2_action[i];
        let t = sys.theta_action[i];
        let st = sys.sigma2_action[t];
        let mut ws = Vec::new();
        for k in [i, s, t, st] {
            if !ws.contains(&k) {
                ws.push(k);
            }
        }
        for &k in &ws {
            if !tangent.contains(&k) {
                return Err(Error::Validation { op: ctx.op, invariant: "complex tangent closed under theta and sigma2", residual: 1.0 });
            }
            seen[k] = true;
        }
        let w = &sys.weights[i];
        let a1 = w.a_is(1.0);
        let am1 = w.a_is(-1.0);
        let (case, expected) = match w.reality {
            Reality::Zero => (CaseTag::ZeroWeight, ws.len()),
            Reality::Real => (CaseTag::Real, 2),
            Reality::Imaginary if a1 => (CaseTag::ImagA1, 2),
            Reality::Imaginary if am1 => (CaseTag::ImagAm1, 2),
            Reality::Imaginary => (CaseTag::ImagOther, 4),
            Reality::Complex if a1 => (CaseTag::ComplexA1, 4),
            Reality::Complex if am1 => (CaseTag::ComplexAm1, 4),
            Reality::Complex => (CaseTag::ComplexOther, 4),
        };
        if ws.len() != expected {
            return Err(Error::Validation { op: ctx.op, invariant: "weight orbit size matches its case", residual: ws.len() as f64 });
        }
        out.push(BlockSpec { members: all_slots(sys, &ws), case });
    }
    Ok(out)
}

/// `Q(r) = L(sum r_p xi_p, sum r_p xi_p)` from the case formulas, in `c_basis` coordinates.
fn quadratic(ctx: &Ctx, spec: &BlockSpec, r: &[C64]) -> Result<CVec> {
    let m = &spec.members;
    let x = |k: usize| ctx.xi(m[k]);
    let i = m[0].weight;
    let lam = ctx.lam(i);
    let a = ctx.sys.weights[i].a;
    let em = (c(0.0, -2.0) * lam).exp();
    let ep = (c(0.0, 2.0) * lam).exp();
    let n2 = |z: C64| c(z.norm_sqr(), 0.0);
    match spec.case {
        CaseTag::Real => {
            let d = ctx.denom(i)?;
            let coef = -2.0 * (r[0] * r[1].conj() / d).im;
            Ok(ctx.cc(&ctx.br(x(0), x(1)))? * c(coef, 0.0))
        }
        CaseTag::ImagA1 | CaseTag::ImagAm1 => {
            ctx.denom(i)?;
            ctx.denom(m[1].weight)?;
            let coef = if spec.case == CaseTag::ImagA1 {
                n2(r[0]) / (em - ONE) - n2(r[1]) / (ep - ONE)
            } else {
                -(n2(r[0]) / (em + ONE) - n2(r[1]) / (ep + ONE))
            };
            Ok(ctx.cc(&(ctx.br(x(0), x(1)) * I))? * coef)
        }
        CaseTag::ImagOther => {
            let d1 = a * em - ONE;
            let d2 = a * ep - ONE;
            ctx.denom(i)?;
            ctx.denom(m[1].weight)?;
            let w1 = ctx.br(x(0), &ctx.s2.apply(x(3))) * (I * r[0] * r[3].conj() / d1);
            let w2 = ctx.br(x(1), &ctx.s2.apply(x(2))) * (I * r[1] * r[2].conj() / d2);
            ctx.two_re(&(w1 + w2))
        }
        CaseTag::ComplexA1 | CaseTag::ComplexAm1 => {
            ctx.denom(i)?;
            ctx.denom(m[2].weight)?;
            let (rl, sl, rm, sm) = (r[0], r[1], r[2], r[3]);
            let coef = if spec.case == CaseTag::ComplexA1 {
                I * rl * sm.conj() / (em - ONE) - I * rm * sl.conj() / (ep - ONE)
            } else {
                I * rm * sl.conj() / (ep + ONE) - I * rl * sm.conj() / (em + ONE)
            };
            ctx.two_re(&(ctx.br(x(0), x(2)) * coef))
        }
        CaseTag::ComplexOther => {
            ctx.denom(i)?;
            ctx.denom(m[2].weight)?;
            let w1 = ctx.br(x(0), x(2)) * (I * r[0] * r[3].conj() / (a * em - ONE));
            let w2 = ctx.br(x(2), x(0)) * (I * r[2] * r[1].conj() / (a.inv() * ep - ONE));
            ctx.two_re(&(w1 + w2))
        }
        CaseTag::ZeroWeight => {
            let mut acc = CVec::zeros(ctx.sys.setup.dim());
            for p in 0..m.len() {
                for q in 0..m.len() {
                    if r[p] != ZERO && r[q] != ZERO {
                        acc += ctx.pairing(m[p], m[q])? * (r[p] * r[q].conj());
                    }
                }
            }
            ctx.cc(&acc)
        }
    }
}

/// Recovers the Hermitian matrices from `Q` by polarization.
fn polarize(ctx: &Ctx, spec: &BlockSpec) -> Result<Vec<CMat>> {
    let k = spec.members.len();
    let dim = ctx.sys.rank();
    let unit = |p: usize, z: C64| {
        let mut r = vec![ZERO; k];
        r[p] = z;
        r
    };
    let q = |r: &[C64]| -> Result<Vec<f64>> { Ok(quadratic(ctx, spec, r)?.iter().map(|z| z.re).collect()) };
    let mut comps = vec![CMat::zeros(k, k); dim];
    let diag: Vec<Vec<f64>> = (0..k).map(|p| q(&unit(p, ONE))).collect::<Result<_>>()?;
    for p in 0..k {
        for (d, comp) in comps.iter_mut().enumerate() {
            comp[(p, p)] = c(diag[p][d], 0.0);
        }
        for s in p + 1..k {
            let mut r = unit(p, ONE);
            r[s] = ONE;
            let sum = q(&r)?;
            r[s] = I;
            let imag = q(&r)?;
            for (d, comp) in comps.iter_mut().enumerate() {
                let re = sum[d] - diag[p][d] - diag[s][d];
                let im = imag[d] - diag[p][d] - diag[s][d];
                let v = c(re, im) * 0.5;
                comp[(p, s)] = v;
                comp[(s, p)] = v.conj();
            }
        }
    }
    Ok(comps)
}

/// Same layout as `polarize`, entries from the direct pairing formula.
fn direct_components(ctx: &Ctx, members: &[Member]) -> Result<Vec<CMat>> {
    let k = members.len();
    let mut comps = vec![CMat::zeros(k, k); ctx.sys.rank()];
    for p in 0..k {
        for q in 0..k {
            let v = ctx.cc(&ctx.pairing(members[p], members[q])?)?;
            for (d, comp) in comps.iter_mut().enumerate() {
                comp[(p, q)] = v[d];
            }
        }
    }
    Ok(comps)
}

fn strongly_regular_profile(system: &WeightSystem, base: &BasePoint, op: &'static str) -> Result<OrbitProfile> {
    let profile = orbit::orbit_profile(system, base)?;
    if !profile.strongly_regular {
        return Err(Error::Unsupported { op, msg: format!("base point is not strongly regular (|Λ̃| = {})", profile.lambda_tilde.len()) });
    }
    Ok(profile)
}

/// Blocks built from the case formulas of the quadratic form.
pub fn quadratic_blocks(system: &WeightSystem, base: &BasePoint) -> Result<Vec<LeviBlock>> {
    const OP: &str = "leviform::quadratic_blocks";
    let profile = strongly_regular_profile(system, base, OP)?;
    let ctx = Ctx::new(system, base, OP)?;
    block_specs(&ctx, &profile.complex_tangent)?
        .into_iter()
        .map(|s| Ok(LeviBlock { components: polarize(&ctx, &s)?, members: s.members, case: s.case }))
        .collect()
}

/// Same blocks with entries taken from the pairing formula directly.
pub fn theorem_blocks(system: &WeightSystem, base: &BasePoint) -> Result<Vec<LeviBlock>> {
    const OP: &str = "leviform::theorem_blocks";
    let profile = strongly_regular_profile(system, base, OP)?;
    let ctx = Ctx::new(system, base, OP)?;
    block_specs(&ctx, &profile.complex_tangent)?
        .into_iter()
        .map(|s| Ok(LeviBlock { components: direct_components(&ctx, &s.members)?, members: s.members, case: s.case }))
        .collect()
}

/// Largest entrywise gap between two block lists with the same layout, scaled by `max(1, entry size)`.
pub fn block_deviation(a: &[LeviBlock], b: &[LeviBlock]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut dev = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        if x.members != y.members || x.components.len() != y.components.len() {
            return f64::INFINITY;
        }
        let scale = x.max_entry().max(y.max_entry()).max(1.0);
        for (m, n) in x.components.iter().zip(&y.components) {
            dev = dev.max(linalg::max_abs(&(m - n)) / scale);
        }
    }
    dev
}

fn cross_block_residual(ctx: &Ctx, blocks: &[LeviBlock]) -> Result<f64> {
    let mut res = 0.0f64;
    for (u, bu) in blocks.iter().enumerate() {
        for (v, bv) in blocks.iter().enumerate() {
            if u == v {
                continue;
            }
            for &p in &bu.members {
                for &q in &bv.members {
                    res = res.max(linalg::vmax(&ctx.pairing(p, q)?));
                }
            }
        }
    }
    Ok(res)
}

/// Largest direct pairing between members of different blocks.
pub fn cross_block_pairing_residual(system: &WeightSystem, base: &BasePoint, blocks: &[LeviBlock]) -> Result<f64> {
    let ctx = Ctx::new(system, base, "leviform::levi_matrix")?;
    cross_block_residual(&ctx, blocks)
}

/// Scalar Hermitian matrix for `dim c = 1`, assembled block-diagonally.
pub fn scalar_form(blocks: &[LeviBlock], tol: f64) -> Option<ScalarForm> {
    if blocks.iter().any(|b| b.components.len() != 1) {
        return None;
    }
    let members: Vec<Member> = blocks.iter().flat_map(|b| b.members.iter().copied()).collect();
    let n = members.len();
    let mut m = CMat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let k = b.members.len();
        m.view_mut((off, off), (k, k)).copy_from(&b.components[0]);
        off += k;
    }
    let (eigenvalues, _) = linalg::herm_eig(&m);
    let inertia = linalg::inertia(&eigenvalues, tol);
    Some(ScalarForm { members, matrix: m, eigenvalues, inertia })
}

fn block_for(blocks: &[LeviBlock], w: usize) -> Option<&LeviBlock> {
    blocks.iter().find(|b| b.members.iter().any(|m| m.weight == w))
}

/// Generators of the Levi cone, one group per weight orbit.
pub fn cone_generators(system: &WeightSystem, base: &BasePoint) -> Result<Vec<Generator>> {
    const OP: &str = "leviform::cone_generators";
    let profile = strongly_regular_profile(system, base, OP)?;
    let ctx = Ctx::new(system, base, OP)?;
    let specs = block_specs(&ctx, &profile.complex_tangent)?;
    let mut out = Vec::new();
    for spec in &specs {
        generators_for(&ctx, spec, &mut out)?;
    }
    Ok(out)
}

fn push_pm(out: &mut Vec<Generator>, weight: usize, case: CaseTag, v: Vec<f64>) {
    out.push(Generator { weight, case, vector: v.iter().map(|x| -x).collect() });
    out.push(Generator { weight, case, vector: v });
}

fn generators_for(ctx: &Ctx, spec: &BlockSpec, out: &mut Vec<Generator>) -> Result<()> {
    let m = &spec.members;
    let i = m[0].weight;
    let sys = ctx.sys;
    let re = |v: &CVec| v.iter().map(|z| z.re).collect::<Vec<f64>>();
    match spec.case {
        CaseTag::Real => {
            let b = ctx.cc(&ctx.br(ctx.xi(m[0]), ctx.xi(m[1])))?;
            push_pm(out, i, spec.case, re(&b));
        }
        CaseTag::ImagA1 => {
            // i lambda(eta) > 0 gives -i[xi, xi'], < 0 gives +i[xi, xi']
            let s = (I * ctx.lam(i)).re;
            if s.abs() < 1e-12 {
                return Err(Error::NonRegular { op: ctx.op, msg: format!("lambda(eta) = 0 for imaginary weight {i} with a = 1") });
            }
            let b = ctx.cc(&(ctx.br(ctx.xi(m[0]), ctx.xi(m[1])) * I))?;
            let sign = -s.signum();
            out.push(Generator { weight: i, case: spec.case, vector: re(&b).iter().map(|x| sign * x).collect() });
        }
        CaseTag::ImagAm1 => {
            let b = ctx.cc(&(ctx.br(ctx.xi(m[0]), ctx.xi(m[1])) * I))?;
            push_pm(out, i, spec.case, re(&b));
        }
        CaseTag::ImagOther | CaseTag::ComplexA1 | CaseTag::ComplexAm1 | CaseTag::ComplexOther => {
            // Re and Im of [xi_{l,a}, xi_{-l,1/a}] via its sigma2 companion
            let t = sys.theta_action[i];
            let (si, st) = (sys.sigma2_action[i], sys.sigma2_action[t]);
            let x = |w: usize| &sys.weights[w].basis[0];
            let b = ctx.br(x(i), x(t));
            let bs = ctx.br(x(si), x(st));
            let real = ctx.cc(&(&b + &bs))?;
            let imag = ctx.cc(&((&b - &bs) * (-I)))?;
            check(ctx.op, "sigma2-symmetrized generator is real", linalg::vmax(&real.map(|z| c(z.im, 0.0))).max(linalg::vmax(&imag.map(|z| c(z.im, 0.0)))), 1e-8)?;
            push_pm(out, i, spec.case, re(&real));
            push_pm(out, i, spec.case, re(&imag));
        }
        CaseTag::ZeroWeight => {
            // values of Q at the polarization probes, if any are nonzero
            let k = m.len();
            let mut probes: Vec<Vec<C64>> = Vec::new();
            for p in 0..k {
                let mut r = vec![ZERO; k];
                r[p] = ONE;
                probes.push(r.clone());
                for s in p + 1..k {
                    for z in [ONE, I] {
                        let mut r2 = r.clone();
                        r2[s] = z;
                        probes.push(r2);
                    }
                }
            }
            for r in probes {
                let v = re(&quadratic(ctx, spec, &r)?);
                if v.iter().any(|x| x.abs() > 1e-12) {
                    out.push(Generator { weight: i, case: spec.case, vector: v });
                }
            }
        }
    }
    Ok(())
}

/// Case expected from compactness of `c`, the values of `a`, Hermitian type and `C_max`.
pub fn predict_cone_case(system: &WeightSystem, eta: &[f64]) -> Result<ConeCase> {
    const OP: &str = "leviform::cone_verdict";
    if !system.datum.is_compact() {
        return Ok(ConeCase::NoncompactFull);
    }
    if system.weights.iter().any(|w| !w.a_is(1.0)) {
        return Ok(ConeCase::CompactNontrivialAFull);
    }
    // all a = 1 forces tau_n = id, i.e. sigma1' = sigma2
    let tn = weights::tau_n(&system.setup, &system.datum);
    check(OP, "tau_n = id when every a = 1", tn.distance(&RealLinearMap::identity(system.setup.dim())), 1e-8)?;
    if system.setup.p2.ncols() == 0 {
        return Ok(ConeCase::CompactFormPointed);
    }
    if !domains::hermitian_type_of(&system.setup, &system.setup.k2) {
        return Ok(ConeCase::NonhermitianFull);
    }
    let cm = domains::cmax_membership(system, eta)?;
    if !cm.defined {
        return Err(Error::Inconclusive { op: OP, msg: "no good ordering found for the C_max test".into() });
    }
    Ok(if cm.inside { ConeCase::HermitianPointed } else { ConeCase::HermitianOutsideCmaxFull })
}

pub fn cone_verdict(system: &WeightSystem, base: &BasePoint) -> Result<ConeVerdict> {
    let generators = cone_generators(system, base)?;
    verdict_from(system, base, generators)
}

fn verdict_from(system: &WeightSystem, base: &BasePoint, generators: Vec<Generator>) -> Result<ConeVerdict> {
    let zero_block_nonvanishing = generators.iter().any(|g| g.case == CaseTag::ZeroWeight);
    let vecs: Vec<Vec<f64>> = generators.iter().map(|g| g.vector.clone()).collect();
    let test = cone::analyze(&vecs, system.rank())?;
    let cone_case = predict_cone_case(system, &base.eta)?;
    Ok(ConeVerdict {
        cone_full: test.full,
        stein_obstruction: test.full,
        consistent: test.full == cone_case.predicts_full(),
        irreducible: weights::is_irreducible(system),
        cone_case,
        zero_block_nonvanishing,
        generators,
        test,
    })
}

/// Blocks, consistency residuals, scalar form and cone verdict at a strongly regular point.
pub fn levi_matrix(system: &WeightSystem, base: &BasePoint) -> Result<LeviReport> {
    const OP: &str = "leviform::levi_matrix";
    let profile = strongly_regular_profile(system, base, OP)?;
    let ctx = Ctx::new(system, base, OP)?;
    let specs = block_specs(&ctx, &profile.complex_tangent)?;
    let mut blocks = Vec::with_capacity(specs.len());
    let mut direct = Vec::with_capacity(specs.len());
    for s in &specs {
        blocks.push(LeviBlock { components: polarize(&ctx, s)?, members: s.members.clone(), case: s.case });
        direct.push(LeviBlock { components: direct_components(&ctx, &s.members)?, members: s.members.clone(), case: s.case });
    }
    let formula_deviation = block_deviation(&blocks, &direct);
    let hermitian_residual = direct.iter().map(|b| b.hermitian_residual() / b.max_entry().max(1.0)).fold(0.0, f64::max);
    let cross = cross_block_residual(&ctx, &blocks)?;
    check(OP, "Hermitian pairing", hermitian_residual, 1e-10)?;
    check(OP, "blocks match the pairing formula", formula_deviation, 1e-9)?;
    check(OP, "cross-block pairings vanish", cross, 1e-9)?;
    let scalar = scalar_form(&blocks, system.tol.inertia);
    let mut generators = Vec::new();
    for s in &specs {
        generators_for(&ctx, s, &mut generators)?;
    }
    let cone = verdict_from(system, base, generators)?;
    Ok(LeviReport { profile, blocks, formula_deviation, cross_block_residual: cross, hermitian_residual, scalar, cone })
}

/// Blocks of `levi_matrix` whose members include weight `w`.
pub fn find_block(report: &LeviReport, w: usize) -> Option<&LeviBlock> {
    block_for(&report.blocks, w)
}
