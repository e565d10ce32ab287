//! Closed-form Clebsch-Gordan expansion.
//!
//! A type-1 highest vector `f` is lowered by `E21^S/S! E32^{T2}/T2! ∇31^{T1}/T1!`.
//! The `∇31` power is rewritten through `O1`, `O2` and the `d` coefficients;
//! the mixed determinants produced are split by rel2, the remaining powers of
//! `a1`, `b1` are absorbed by rel1, and the `E32`, `E21` powers act on each
//! factor through rel3 and the binomial rule for `E21`. Every path through
//! these choices is a [`PartitionChoice`] and contributes one product of Gelfand-Tsetlin
//! vectors. Type-2 vectors reduce to type 1 through the duality.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;

use crate::contiguity::{compositions3, d_coeff, x_coeff, y_coeff, z_coeff, Reading};
use crate::error::{Cg3Error, Result};
use crate::exact_core::{binomial, factorial_q, int, sign, Rational};
use crate::gamma_series::GammaParams;
use crate::gl3_model::{sopd, GTDiagram, HighestWeight};
use crate::tensor_space::{label_weight, HighestVectorLabel, VectorType};

/// Descent `(T1, T2, S)` from the highest diagram of an irreducible summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentTriple {
    pub t1: i64,
    pub t2: i64,
    pub s: i64,
}

impl DescentTriple {
    pub const ZERO: DescentTriple = DescentTriple { t1: 0, t2: 0, s: 0 };

    pub fn new(t1: i64, t2: i64, s: i64) -> Self {
        DescentTriple { t1, t2, s }
    }
}

impl fmt::Display for DescentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.t1, self.t2, self.s)
    }
}

/// One coefficient of the product-basis expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CGTerm {
    pub diagram_u: GTDiagram,
    pub diagram_v: GTDiagram,
    pub coeff: Rational,
}

/// Per-factor choice of formula reading inside the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Readings {
    pub d: Reading,
    pub y: Reading,
    pub z: Reading,
    pub h: Reading,
    /// Adopted keeps the binomial in `E21^H/H! F_ε`; literal drops it.
    pub e21_binomial: Reading,
}

impl Readings {
    pub const ADOPTED: Readings =
        Readings { d: Reading::Adopted, y: Reading::Adopted, z: Reading::Adopted, h: Reading::Adopted, e21_binomial: Reading::Adopted };
    pub const LITERAL: Readings =
        Readings { d: Reading::Literal, y: Reading::Literal, z: Reading::Literal, h: Reading::Literal, e21_binomial: Reading::Literal };

    /// Adopted everywhere except the named toggle.
    pub fn only_literal(toggle: &str) -> Option<Readings> {
        let mut r = Readings::ADOPTED;
        match toggle {
            "d" => r.d = Reading::Literal,
            "y" => r.y = Reading::Literal,
            "z" => r.z = Reading::Literal,
            "h" => r.h = Reading::Literal,
            "e21_binomial" => r.e21_binomial = Reading::Literal,
            _ => return None,
        }
        Some(r)
    }

    pub const TOGGLES: [&'static str; 5] = ["d", "y", "z", "h", "e21_binomial"];
}

impl Default for Readings {
    fn default() -> Self {
        Readings::ADOPTED
    }
}

/// One summation path of the case-1 expansion.
///
/// `k1`, `k3` count `O1` acting on the `a` and `b` side; `p` and `q_prime`
/// count the `(aab)` and `(abb)` factors created by `O2`. The rel2 split is
/// given by `q_split`, `phi` (of `λ - q - q2`), `psi` (of `μ - q - q3`) and
/// `omega`. `t` and `s` are the rel1 Plücker powers on each side; `n_a`, `h_a`
/// (`n_b`, `h_b`) are the `E32`, `E21` powers landing on the `a` (`b`) side,
/// split by rel3 into `n1_a` and Plücker power `r_a` (resp. `n1_b`, `r_b`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionChoice {
    pub k1: i64,
    pub k3: i64,
    pub p: i64,
    pub q_prime: i64,
    pub q_split: [i64; 3],
    pub phi: [i64; 3],
    pub psi: [i64; 3],
    pub omega: [i64; 2],
    pub t: i64,
    pub s: i64,
    pub n_a: i64,
    pub h_a: i64,
    pub n_b: i64,
    pub h_b: i64,
    pub n1_a: i64,
    pub r_a: i64,
    pub n1_b: i64,
    pub r_b: i64,
}

impl PartitionChoice {
    pub fn q(&self) -> i64 {
        self.q_split.iter().sum()
    }

    /// The four parts `T'1, T''1, T'''1, T''''1`; they sum to `T1 + M3`.
    pub fn t1_parts(&self) -> [i64; 4] {
        let [_, q2, q3] = self.q_split;
        let q = self.q();
        [self.k1 + self.phi[2] + q + q2, self.k3 + self.psi[2] + q + q3, self.psi[0] + self.psi[1], self.phi[0] + self.phi[1]]
    }

    /// `T'2, T''2`.
    pub fn t2_parts(&self) -> [i64; 2] {
        [self.n_a, self.n_b]
    }

    /// `S', S''`.
    pub fn s_parts(&self) -> [i64; 2] {
        [self.h_a, self.h_b]
    }

    /// `L1 = ω2 + φ2 + ψ1` and `L2 = ω1 + ψ2 + φ1`.
    pub fn l_parts(&self) -> [i64; 2] {
        [self.omega[1] + self.phi[1] + self.psi[0], self.omega[0] + self.psi[1] + self.phi[0]]
    }

    /// `A = t + r_a + n1_a` and `B = s + r_b + n1_b`.
    pub fn ab_parts(&self) -> [i64; 2] {
        [self.t + self.r_a + self.n1_a, self.s + self.r_b + self.n1_b]
    }
}

/// The diagram reached from the highest one by `d`; `None` if it is not a
/// valid pattern.
pub fn target_diagram(label: &HighestVectorLabel, d: &DescentTriple) -> Option<GTDiagram> {
    let [m1, m2, m3] = label_weight(label);
    let DescentTriple { t1, t2, s } = *d;
    let g = match label.vtype {
        VectorType::One => GTDiagram::new(m1, m2, m3, m1 - t1, m2 - t2, m1 - t1 - s),
        VectorType::Two => GTDiagram::new(m1, m2, m3, m2 + t2, m3 + t1, m3 + t1 + s),
    };
    g.ok().filter(|_| t1 >= 0 && t2 >= 0 && s >= 0)
}

/// All descents reaching a valid pattern, in lexicographic order.
pub fn valid_descents(label: &HighestVectorLabel) -> Vec<DescentTriple> {
    let [m1, m2, m3] = label_weight(label);
    let mut out = Vec::new();
    let (r1, r2) = match label.vtype {
        VectorType::One => (m1 - m2, m2 - m3),
        VectorType::Two => (m2 - m3, m1 - m2),
    };
    for t1 in 0..=r1 {
        for t2 in 0..=r2 {
            let smax = match label.vtype {
                VectorType::One => (m1 - t1) - (m2 - t2),
                VectorType::Two => m2 + t2 - m3 - t1,
            };
            for s in 0..=smax {
                out.push(DescentTriple::new(t1, t2, s));
            }
        }
    }
    out
}

/// Everything fixed for one case-1 expansion.
#[derive(Debug, Clone, Copy)]
struct Ctx {
    exps: [i64; 7],
    wa: HighestWeight,
    wb: HighestWeight,
    d: DescentTriple,
    readings: Readings,
    slack: i64,
}

impl Ctx {
    fn new(label: &HighestVectorLabel, d: &DescentTriple, readings: Readings, slack: i64) -> Result<Self> {
        if label.vtype != VectorType::One {
            return Err(Cg3Error::InvalidLabel(format!("case 1 needs a type 1 label, got {label}")));
        }
        let wp = label.weight_pair();
        let l = label;
        Ok(Ctx { exps: [l.alpha, l.beta, l.gamma_e, l.delta, l.omega, l.phi, l.psi], wa: wp.w1, wb: wp.w2, d: *d, readings, slack })
    }

    fn h(&self) -> i64 {
        self.exps[..5].iter().sum()
    }
}

/// Result of the `∇31` expansion step for `(k1, k3, p, q')`.
struct Step1 {
    ap: i64,
    bp: i64,
    lam: i64,
    mu: i64,
    c1: Rational,
}

fn step1(ctx: &Ctx, k1: i64, k3: i64, p: i64, qp: i64) -> Result<Option<Step1>> {
    let [al, be, ga, de, _, ph, ps] = ctx.exps;
    let ap = al - qp - k1;
    let bp = be - p - k3;
    if ap < 0 || bp < 0 || ga - p < 0 || de - qp < 0 {
        return Ok(None);
    }
    let (k, m) = (k1 + k3, p + qp);
    let lam = ps + qp;
    let mu = ph + p;
    let dd = d_coeff(ctx.h(), k + m, k, ctx.readings.d)?;
    let c1 = dd * factorial_q(lam) * factorial_q(mu) / (factorial_q(p) * factorial_q(qp));
    Ok(Some(Step1 { ap, bp, lam, mu, c1 }))
}

/// One side after rel3 and the `E21` rule: the diagram and its factor.
#[allow(clippy::too_many_arguments)]
fn side_term(
    i0: i64,
    j0: i64,
    rho: &GammaParams,
    n: i64,
    hh: i64,
    n1: i64,
    r: i64,
    w: &HighestWeight,
    readings: &Readings,
) -> Option<(GTDiagram, Rational)> {
    let n2 = n - n1;
    if n2 < 0 {
        return None;
    }
    let (_, _, eps, z) = z_coeff(rho, i0, j0, n1, n2, r, readings.z);
    if z.is_zero() {
        return None;
    }
    let i = i0 + n1 + r;
    let j = j0 - n2 + r;
    let rp = GammaParams::planar(eps.g1 - hh, eps.g2 + hh, eps.g13);
    if rp.is_empty() {
        return None;
    }
    let binom = match readings.e21_binomial {
        Reading::Adopted => Rational::from_integer(binomial(eps.g2 + hh, hh)),
        Reading::Literal => Rational::one(),
    };
    // P^r = (-a3 a12)^r as a function; the literal reading also carries the printed (-1)^r.
    let mut c = sign(r) * z * binom * factorial_q(i) * factorial_q(j);
    if readings.z == Reading::Literal {
        c *= sign(r);
    }
    let (m1, m2) = (w.m1, w.m2);
    let diag = GTDiagram::new(m1, m2, 0, m1 - i, j, rp.g1 + m2).ok()?;
    debug_assert!(m2 - j == rp.g13 && (m1 - i) - diag.s == rp.g2);
    Some((diag, c))
}

/// Walks every partition choice. With `prune` the walk skips branches whose
/// partial coefficient is zero; otherwise it visits every structurally
/// admissible choice with its (possibly zero) coefficient.
fn walk(
    ctx: &Ctx,
    prune: bool,
    head: Option<(i64, i64, i64, i64)>,
    visit: &mut dyn FnMut(&PartitionChoice, GTDiagram, GTDiagram, &Rational),
) -> Result<()> {
    let [_, _, ga, de, om, _, _] = ctx.exps;
    let DescentTriple { t1, t2, s } = ctx.d;
    let sl = ctx.slack;
    for k in 0..=t1 {
        let m = t1 - k;
        for k1 in 0..=k {
            let k3 = k - k1;
            for p in 0..=m {
                let qp = m - p;
                if head.is_some_and(|h| h != (k1, k3, p, qp)) {
                    continue;
                }
                let Some(st) = step1(ctx, k1, k3, p, qp)? else { continue };
                for q in 0..=st.lam.min(st.mu) {
                    for qs in compositions3(q) {
                        let (q2, q3) = (qs[1], qs[2]);
                        if st.lam - q - q2 < 0 || st.mu - q - q3 < 0 {
                            continue;
                        }
                        for ph in compositions3(st.lam - q - q2) {
                            for ps in compositions3(st.mu - q - q3) {
                                for w1 in 0..=om {
                                    let xt = x_coeff(st.lam, st.mu, om, qs, ph, ps, [w1, om - w1], ctx.readings.h)?;
                                    if xt.theta.is_empty() || xt.vartheta.is_empty() || (prune && xt.x.is_zero()) {
                                        continue;
                                    }
                                    let c2 = &st.c1 * &xt.x;
                                    for t in 0..=st.ap + sl {
                                        let (tht, ya) = y_coeff(st.ap, &xt.theta, t, ctx.readings.y);
                                        if tht.is_empty() || (prune && ya.is_zero()) {
                                            continue;
                                        }
                                        for sb in 0..=st.bp + sl {
                                            let (vtt, yb) = y_coeff(st.bp, &xt.vartheta, sb, ctx.readings.y);
                                            if vtt.is_empty() || (prune && yb.is_zero()) {
                                                continue;
                                            }
                                            let ia = k1 + xt.u + q + t;
                                            let ja = ga - p + xt.v + q + t;
                                            let ib = k3 + xt.v + q + sb;
                                            let jb = de - qp + xt.u + q + sb;
                                            let ca = factorial_q(ia) * factorial_q(ja) / (factorial_q(st.ap) * factorial_q(k1) * factorial_q(ga - p));
                                            let cb = factorial_q(ib) * factorial_q(jb) / (factorial_q(st.bp) * factorial_q(k3) * factorial_q(de - qp));
                                            let mut base = &c2 * &ya * &yb * ca * cb;
                                            if ctx.readings.y == Reading::Literal {
                                                base *= sign(t + sb);
                                            }
                                            if prune && base.is_zero() {
                                                continue;
                                            }
                                            for n_a in 0..=t2 {
                                                for h_a in 0..=s {
                                                    let (n_b, h_b) = (t2 - n_a, s - h_a);
                                                    let sides_a = side_terms(ia, ja, &tht, n_a, h_a, &ctx.wa, &ctx.readings, sl, prune);
                                                    if sides_a.is_empty() {
                                                        continue;
                                                    }
                                                    let sides_b = side_terms(ib, jb, &vtt, n_b, h_b, &ctx.wb, &ctx.readings, sl, prune);
                                                    for (n1_a, r_a, du, cu) in &sides_a {
                                                        for (n1_b, r_b, dv, cv) in &sides_b {
                                                            let choice = PartitionChoice {
                                                                k1,
                                                                k3,
                                                                p,
                                                                q_prime: qp,
                                                                q_split: qs,
                                                                phi: ph,
                                                                psi: ps,
                                                                omega: [w1, om - w1],
                                                                t,
                                                                s: sb,
                                                                n_a,
                                                                h_a,
                                                                n_b,
                                                                h_b,
                                                                n1_a: *n1_a,
                                                                r_a: *r_a,
                                                                n1_b: *n1_b,
                                                                r_b: *r_b,
                                                            };
                                                            let coeff = &base * cu * cv;
                                                            visit(&choice, *du, *dv, &coeff);
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The `(n1, r, diagram, factor)` options on one side. Without pruning,
/// options whose factor vanishes but whose diagram exists are kept with a
/// zero factor.
#[allow(clippy::too_many_arguments)]
fn side_terms(
    i0: i64,
    j0: i64,
    rho: &GammaParams,
    n: i64,
    hh: i64,
    w: &HighestWeight,
    readings: &Readings,
    slack: i64,
    prune: bool,
) -> Vec<(i64, i64, GTDiagram, Rational)> {
    let mut out = Vec::new();
    for n1 in 0..=n {
        let n2 = n - n1;
        for r in 0..=n2 + slack {
            match side_term(i0, j0, rho, n, hh, n1, r, w, readings) {
                Some((d, c)) => out.push((n1, r, d, c)),
                None if !prune => {
                    // Keep the choice visible when only the coefficient vanishes.
                    let i = i0 + n1 + r;
                    let j = j0 - n2 + r;
                    let eps = GammaParams::planar(rho.g1, rho.g2 - n1 - r, rho.g13 + n2 - r);
                    let rp = GammaParams::planar(eps.g1 - hh, eps.g2 + hh, eps.g13);
                    if !rp.is_empty() {
                        if let Ok(d) = GTDiagram::new(w.m1, w.m2, 0, w.m1 - i, j, rp.g1 + w.m2) {
                            out.push((n1, r, d, Rational::zero()));
                        }
                    }
                }
                None => {}
            }
        }
    }
    out
}

/// Every structurally admissible partition choice of a type-1 expansion,
/// in walk order. Empty when the descent is infeasible.
pub fn enumerate_partition_choices(label: &HighestVectorLabel, d: &DescentTriple) -> Result<Vec<PartitionChoice>> {
    enumerate_partition_choices_with_slack(label, d, 0)
}

/// As [`enumerate_partition_choices`], with the Plücker-power ranges widened
/// by `slack` beyond their natural bounds.
pub fn enumerate_partition_choices_with_slack(label: &HighestVectorLabel, d: &DescentTriple, slack: i64) -> Result<Vec<PartitionChoice>> {
    if target_diagram(label, d).is_none() {
        return Ok(Vec::new());
    }
    let ctx = Ctx::new(label, d, Readings::ADOPTED, slack)?;
    let mut out = Vec::new();
    walk(&ctx, false, None, &mut |c, _, _, _| out.push(*c))?;
    Ok(out)
}

/// The diagram pair and coefficient of one partition choice of a type-1
/// expansion; `None` if the choice contributes nothing.
pub fn coefcg_term(
    choice: &PartitionChoice,
    label: &HighestVectorLabel,
    d: &DescentTriple,
    readings: Readings,
) -> Result<Option<CGTerm>> {
    let ctx = Ctx::new(label, d, readings, 0)?;
    let c = choice;
    if c.n_a + c.n_b != d.t2 || c.h_a + c.h_b != d.s || c.k1 + c.k3 + c.p + c.q_prime != d.t1 {
        return Err(Cg3Error::RejectSplit("choice does not match the descent".into()));
    }
    let [_, _, ga, de, om, _, _] = ctx.exps;
    let Some(st) = step1(&ctx, c.k1, c.k3, c.p, c.q_prime)? else { return Ok(None) };
    let xt = match x_coeff(st.lam, st.mu, om, c.q_split, c.phi, c.psi, c.omega, readings.h) {
        Ok(x) => x,
        Err(Cg3Error::RejectSplit(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let (tht, ya) = y_coeff(st.ap, &xt.theta, c.t, readings.y);
    let (vtt, yb) = y_coeff(st.bp, &xt.vartheta, c.s, readings.y);
    let q = c.q();
    let ia = c.k1 + xt.u + q + c.t;
    let ja = ga - c.p + xt.v + q + c.t;
    let ib = c.k3 + xt.v + q + c.s;
    let jb = de - c.q_prime + xt.u + q + c.s;
    let ca = factorial_q(ia) * factorial_q(ja) / (factorial_q(st.ap) * factorial_q(c.k1) * factorial_q(ga - c.p));
    let cb = factorial_q(ib) * factorial_q(jb) / (factorial_q(st.bp) * factorial_q(c.k3) * factorial_q(de - c.q_prime));
    let mut base = st.c1 * xt.x * ya * yb * ca * cb;
    if readings.y == Reading::Literal {
        base *= sign(c.t + c.s);
    }
    if base.is_zero() {
        return Ok(None);
    }
    let Some((du, cu)) = side_term(ia, ja, &tht, c.n_a, c.h_a, c.n1_a, c.r_a, &ctx.wa, &readings) else { return Ok(None) };
    let Some((dv, cv)) = side_term(ib, jb, &vtt, c.n_b, c.h_b, c.n1_b, c.r_b, &ctx.wb, &readings) else { return Ok(None) };
    let coeff = base * cu * cv;
    Ok((!coeff.is_zero()).then_some(CGTerm { diagram_u: du, diagram_v: dv, coeff }))
}

/// Merges equal diagram pairs, drops zeros and sorts by `(diagram_u, diagram_v)`.
pub fn collect_terms(terms: impl IntoIterator<Item = CGTerm>) -> Vec<CGTerm> {
    let mut acc: BTreeMap<(GTDiagram, GTDiagram), Rational> = BTreeMap::new();
    for t in terms {
        *acc.entry((t.diagram_u, t.diagram_v)).or_insert_with(Rational::zero) += t.coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((diagram_u, diagram_v), coeff)| CGTerm { diagram_u, diagram_v, coeff })
        .collect()
}

type TermMap = BTreeMap<(GTDiagram, GTDiagram), Rational>;

fn merge(mut a: TermMap, b: TermMap) -> TermMap {
    for (k, v) in b {
        *a.entry(k).or_insert_with(Rational::zero) += v;
    }
    a
}

fn expansion_map(ctx: &Ctx) -> Result<TermMap> {
    // Split the walk over the O1/O2 distribution so rayon can share it out.
    let t1 = ctx.d.t1;
    let mut heads = Vec::new();
    for k in 0..=t1 {
        for k1 in 0..=k {
            for p in 0..=(t1 - k) {
                heads.push((k1, k - k1, p, t1 - k - p));
            }
        }
    }
    heads
        .into_par_iter()
        .map(|(k1, k3, p, qp)| -> Result<TermMap> {
            let mut local = TermMap::new();
            walk(ctx, true, Some((k1, k3, p, qp)), &mut |_, du, dv, c| {
                *local.entry((du, dv)).or_insert_with(Rational::zero) += c;
            })?;
            Ok(local)
        })
        .try_reduce(TermMap::new, |a, b| Ok(merge(a, b)))
}

/// Type-1 expansion with an explicit choice of readings.
pub fn cg_expansion_case1_with(label: &HighestVectorLabel, d: &DescentTriple, readings: Readings) -> Result<Vec<CGTerm>> {
    if target_diagram(label, d).is_none() {
        return Ok(Vec::new());
    }
    let ctx = Ctx::new(label, d, readings, 0)?;
    let map = expansion_map(&ctx)?;
    Ok(collect_terms(map.into_iter().map(|((du, dv), coeff)| CGTerm { diagram_u: du, diagram_v: dv, coeff })))
}

/// Expansion of the Gelfand-Tsetlin vector `d` below a type-1 highest vector.
pub fn cg_expansion_case1(label: &HighestVectorLabel, d: &DescentTriple) -> Result<Vec<CGTerm>> {
    cg_expansion_case1_with(label, d, Readings::ADOPTED)
}

/// Type-2 expansion with an explicit choice of readings.
pub fn cg_expansion_case2_with(label: &HighestVectorLabel, d: &DescentTriple, readings: Readings) -> Result<Vec<CGTerm>> {
    if label.vtype != VectorType::Two {
        return Err(Cg3Error::InvalidLabel(format!("case 2 needs a type 2 label, got {label}")));
    }
    if target_diagram(label, d).is_none() {
        return Ok(Vec::new());
    }
    let dual = label.dual_type1()?;
    let base = cg_expansion_case1_with(&dual, d, readings)?;
    let global = sign(label.theta + d.t2 + d.s);
    let mut out = Vec::with_capacity(base.len());
    for t in base {
        let (du, eu) = sopd(&t.diagram_u)?;
        let (dv, ev) = sopd(&t.diagram_v)?;
        out.push(CGTerm { diagram_u: du, diagram_v: dv, coeff: &global * int(eu * ev) * t.coeff });
    }
    Ok(collect_terms(out))
}

/// Expansion of the Gelfand-Tsetlin vector `d` above the lowest vector of a
/// type-2 summand.
pub fn cg_expansion_case2(label: &HighestVectorLabel, d: &DescentTriple) -> Result<Vec<CGTerm>> {
    cg_expansion_case2_with(label, d, Readings::ADOPTED)
}

/// Dispatches on the label type.
pub fn cg_expansion(label: &HighestVectorLabel, d: &DescentTriple, readings: Readings) -> Result<Vec<CGTerm>> {
    match label.vtype {
        VectorType::One => cg_expansion_case1_with(label, d, readings),
        VectorType::Two => cg_expansion_case2_with(label, d, readings),
    }
}

/// Checks that widening the Plücker-power ranges by `slack` adds no nonzero
/// contribution to a type-1 expansion.
pub fn slack_check(label: &HighestVectorLabel, d: &DescentTriple, slack: i64) -> Result<bool> {
    if target_diagram(label, d).is_none() {
        return Ok(true);
    }
    let narrow = expansion_map(&Ctx::new(label, d, Readings::ADOPTED, 0)?)?;
    let wide = expansion_map(&Ctx::new(label, d, Readings::ADOPTED, slack)?)?;
    let clean = |m: TermMap| m.into_iter().filter(|(_, v)| !v.is_zero()).collect::<TermMap>();
    Ok(clean(narrow) == clean(wide))
}

/// The two exponents whose parity the type-2 sign rule equates, for one
/// choice of the dual type-1 expansion:
/// `θ + (T2+S) + (T'''1+T'2+S'+L1) + (T''''1+T''2+S''+L2)` and
/// `T'''1 + T''''1 + T''1 + T''2 + ω + θ`, where `ω` is the dual label's `ω`.
pub fn sign_rule_exponents(choice: &PartitionChoice, theta: i64, omega: i64, d: &DescentTriple) -> (i64, i64) {
    let [_, tpp1, t3, t4] = choice.t1_parts();
    let [tp2, tpp2] = choice.t2_parts();
    let [sp, spp] = choice.s_parts();
    let [l1, l2] = choice.l_parts();
    let first = theta + (d.t2 + d.s) + (t3 + tp2 + sp + l1) + (t4 + tpp2 + spp + l2);
    let second = t3 + t4 + tpp1 + tpp2 + omega + theta;
    (first, second)
}

/// Choices of a type-2 label's expansion where the two sign exponents have
/// different parity.
pub fn sign_rule_counterexamples(label: &HighestVectorLabel, d: &DescentTriple) -> Result<(usize, Vec<PartitionChoice>)> {
    let dual = label.dual_type1()?;
    let choices = enumerate_partition_choices(&dual, d)?;
    let bad = choices
        .iter()
        .filter(|c| {
            let (a, b) = sign_rule_exponents(c, label.theta, dual.omega, d);
            (a - b).rem_euclid(2) != 0
        })
        .copied()
        .collect();
    Ok((choices.len(), bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor_space::{enumerate_labels, WeightPair};

    fn dg(a: [i64; 6]) -> GTDiagram {
        GTDiagram::from_array(a).unwrap()
    }

    fn term(u: [i64; 6], v: [i64; 6], c: i64) -> CGTerm {
        CGTerm { diagram_u: dg(u), diagram_v: dg(v), coeff: int(c) }
    }

    #[test]
    fn collect_examples() {
        let (u, v) = ([1, 0, 0, 1, 0, 1], [1, 0, 0, 1, 0, 0]);
        let half = CGTerm { coeff: crate::exact_core::rat(1, 2), ..term(u, v, 0) };
        assert_eq!(collect_terms([half.clone(), half]), vec![term(u, v, 1)]);
        assert!(collect_terms([term(u, v, 1), term(u, v, -1)]).is_empty());
        let sorted = collect_terms([term(v, u, 1), term(u, v, 1)]);
        assert_eq!(sorted, vec![term(v, u, 1), term(u, v, 1)]);
    }

    #[test]
    fn trivial_choice_count() {
        let l = HighestVectorLabel::type1(1, 1, 0, 0, 0, 0, 0);
        let c = enumerate_partition_choices(&l, &DescentTriple::ZERO).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0], PartitionChoice::default());
    }

    #[test]
    fn infeasible_descent_is_empty() {
        let l = HighestVectorLabel::type1(1, 1, 0, 0, 0, 0, 0);
        let d = DescentTriple::new(3, 0, 0);
        assert!(enumerate_partition_choices(&l, &d).unwrap().is_empty());
        assert!(cg_expansion_case1(&l, &d).unwrap().is_empty());
    }

    #[test]
    fn mixed_determinant_expansion() {
        let l = HighestVectorLabel::type1(0, 0, 0, 0, 1, 0, 0);
        let got = cg_expansion_case1(&l, &DescentTriple::ZERO).unwrap();
        assert_eq!(got, vec![term([1, 0, 0, 1, 0, 0], [1, 0, 0, 1, 0, 1], -1), term([1, 0, 0, 1, 0, 1], [1, 0, 0, 1, 0, 0], 1)]);
    }

    #[test]
    fn first_lowering_of_a1b1() {
        let l = HighestVectorLabel::type1(1, 1, 0, 0, 0, 0, 0);
        let got = cg_expansion_case1(&l, &DescentTriple::new(1, 0, 0)).unwrap();
        assert_eq!(got, vec![term([1, 0, 0, 0, 0, 0], [1, 0, 0, 1, 0, 1], 1), term([1, 0, 0, 1, 0, 1], [1, 0, 0, 0, 0, 0], 1)]);
    }

    #[test]
    fn choice_sum_matches_fast_path() {
        let wp = WeightPair::from_ints(2, 1, 2, 0).unwrap();
        for l in enumerate_labels(&wp).into_iter().filter(|l| l.vtype == VectorType::One) {
            for d in valid_descents(&l) {
                let mut terms = Vec::new();
                for c in enumerate_partition_choices(&l, &d).unwrap() {
                    if let Some(t) = coefcg_term(&c, &l, &d, Readings::ADOPTED).unwrap() {
                        terms.push(t);
                    }
                }
                assert_eq!(collect_terms(terms), cg_expansion_case1(&l, &d).unwrap(), "{l} {d}");
            }
        }
    }

    #[test]
    fn t1_parts_sum() {
        let l = HighestVectorLabel::type1(1, 1, 1, 1, 1, 1, 1);
        let d = DescentTriple::new(2, 1, 1);
        for c in enumerate_partition_choices(&l, &d).unwrap() {
            assert_eq!(c.t1_parts().iter().sum::<i64>(), d.t1 + l.phi + l.psi);
        }
    }

    #[test]
    fn slack_adds_nothing() {
        let l = HighestVectorLabel::type1(1, 1, 1, 0, 1, 1, 0);
        for d in valid_descents(&l) {
            assert!(slack_check(&l, &d, 2).unwrap(), "{d}");
        }
    }

    #[test]
    fn first_sign_exponent_is_even() {
        for wp in WeightPair::all_up_to(2) {
            for l in enumerate_labels(&wp).into_iter().filter(|l| l.vtype == VectorType::Two) {
                let dual = l.dual_type1().unwrap();
                for d in valid_descents(&l) {
                    for c in enumerate_partition_choices(&dual, &d).unwrap() {
                        assert_eq!(sign_rule_exponents(&c, l.theta, dual.omega, &d).0 % 2, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn descents_are_valid() {
        let wp = WeightPair::from_ints(2, 1, 2, 1).unwrap();
        for l in enumerate_labels(&wp) {
            for d in valid_descents(&l) {
                assert!(target_diagram(&l, &d).is_some());
            }
        }
    }
}
