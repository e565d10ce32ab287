//! Verification suites, shared by the acceptance tests and `cg3 verify`.
//!
//! Every suite returns a [`SuiteReport`] instead of panicking so that callers
//! can print one line per suite and keep going.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cg_engine::{cg_expansion, sign_rule_counterexamples, slack_check, valid_descents, DescentTriple, Readings};
use crate::contiguity::{c_identity_holds, d_identity_holds, f13_solve, pre1_holds, relation_identity_holds, Reading, RelationInput};
use crate::exact_core::{rat, int, Rational};
use crate::gamma_series::{eval_at_one, expand_standard, fot1_closed_form, gkz_residual, restriction_check, GammaParams};
use crate::gl3_model::{
    alphabet, embed_matrix_entries, generator_action, gt_chain, gt_vector, stva, DetPolynomial, DetVariable, Factor, GTDiagram, HighestWeight,
};
use crate::oracle::{compare, completeness_rank, oracle_expansion};
use crate::tensor_space::{
    brute_force_multiplicity, decomposition_dimension, enumerate_labels, label_function, label_span_rank, multiplicity, VectorType, WeightPair,
};

/// Result of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Informational lines that do not affect the verdict.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), checks: 0, failures: Vec::new(), notes: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, results: Vec<(bool, String)>) {
        for (ok, what) in results {
            self.check(ok, || what);
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checks, {} failures ({:.2?})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failures.len(),
            self.elapsed
        )
    }
}

fn timed(name: &str, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new(name);
    body(&mut r);
    r.elapsed = start.elapsed();
    r
}

fn gammas(max: i64, g23: &[i64]) -> Vec<GammaParams> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                for &d in g23 {
                    out.push(GammaParams::new(a, b, c, d));
                }
            }
        }
    }
    out
}

/// Γ-series properties for all `γ` with entries in `0..=max` and `γ23 ∈ {0, 1}`.
pub fn gamma_suite(max: i64) -> SuiteReport {
    timed("gamma-series", |r| {
        let points = [[int(1), int(1), int(1)], [int(2), int(3), int(5)], [int(-1), rat(1, 2), int(3)]];
        let results: Vec<(bool, String)> = gammas(max, &[0, 1])
            .into_par_iter()
            .flat_map_iter(|g| {
                let mut out = Vec::new();
                let f = expand_standard(&g);
                for k in -2..=2 {
                    out.push((expand_standard(&g.shifted(k)) == f, format!("shift invariance {g} by {k}")));
                }
                for i in 0..4 {
                    let lower = expand_standard(&(g - GammaParams::unit(i)));
                    out.push((f.partial_derivative(i) == lower, format!("derivative {i} of {g}")));
                }
                out.push((gkz_residual(&g).iter().all(|p| p.is_zero()), format!("GKZ system on {g}")));
                if g.g23 == 0 {
                    let closed = fot1_closed_form(&g);
                    out.push((closed.as_ref() == Some(&eval_at_one(&g)), format!("F(1) closed form at {g}")));
                    for pt in &points {
                        out.push((restriction_check(&g, pt.clone()).unwrap_or(false), format!("restriction at {g}")));
                    }
                }
                out
            })
            .collect();
        r.absorb(results);
    })
}

fn monomials(vars: &[DetVariable], max_degree: u32) -> Vec<DetPolynomial> {
    let mut out = vec![Vec::<(DetVariable, u32)>::new()];
    let mut frontier = out.clone();
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.last().map(|(v, _)| vars.iter().position(|x| x == v).unwrap()).unwrap_or(0);
            for v in &vars[start..] {
                let mut n = m.clone();
                n.push((*v, 1));
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(|m| DetPolynomial::monomial(int(1), &m)).collect()
}

/// Polynomial model: Plücker soundness, commutation relations, highest
/// vectors and the lowering-operator path, for `m1 <= max`.
pub fn model_suite(max: i64) -> SuiteReport {
    timed("model", |r| {
        for f in [Factor::A, Factor::B] {
            let v = |x| DetPolynomial::var(x);
            let s = |i| v(DetVariable::Single(f, i));
            let p = |i, j| v(DetVariable::Pair(f, i, j));
            let rel = &(&(&s(1) * &p(2, 3)) - &(&s(2) * &p(1, 3))) + &(&s(3) * &p(1, 2));
            r.check(embed_matrix_entries(&rel).is_zero(), || format!("Plücker relation for factor {f:?}"));
        }
        let vars: Vec<DetVariable> = {
            let a = alphabet();
            vec![a[0], a[1], a[2], a[3], a[4], a[5], a[12], a[15]]
        };
        let gens: Vec<(u8, u8)> = (1..=3).flat_map(|i| (1..=3).map(move |j| (i, j))).collect();
        let results: Vec<(bool, String)> = monomials(&vars, 4)
            .into_par_iter()
            .flat_map_iter(|m| {
                let mut out = Vec::new();
                for &(i, j) in &gens {
                    for &(k, l) in &gens {
                        let lhs = &generator_action(i, j, &generator_action(k, l, &m)) - &generator_action(k, l, &generator_action(i, j, &m));
                        let mut rhs = DetPolynomial::zero();
                        if j == k {
                            rhs += &generator_action(i, l, &m);
                        }
                        if l == i {
                            rhs = &rhs - &generator_action(k, j, &m);
                        }
                        out.push(((&lhs - &rhs).is_syntactically_zero(), format!("[E{i}{j}, E{k}{l}] on {}", m.as_poly())));
                    }
                }
                out
            })
            .collect();
        r.absorb(results);
        for w in HighestWeight::all_up_to(max) {
            for f in [Factor::A, Factor::B] {
                let top = gt_vector(&w.top_diagram(), f).map(|g| g == stva(&w, f)).unwrap_or(false);
                r.check(top, || format!("top diagram of {w} is the highest vector"));
            }
            let results: Vec<(bool, String)> = w
                .diagrams()
                .into_par_iter()
                .map(|d: GTDiagram| {
                    let (t1, t2, s) = (d.m1 - d.k1, d.m2 - d.k2, d.k1 - d.s);
                    let ok = match (gt_chain(&w, Factor::A, t1 as u32, t2 as u32, s as u32), gt_vector(&d, Factor::A)) {
                        (Ok(a), Ok(b)) => a == b,
                        _ => false,
                    };
                    (ok, format!("lowering path to {d}"))
                })
                .collect();
            r.absorb(results);
        }
    })
}

/// Highest vectors: annihilation by raising operators, independence,
/// completeness and multiplicities, for all weight pairs with `m1, n1 <= max`.
pub fn highest_vector_suite(max: i64) -> SuiteReport {
    timed("highest-vectors", |r| {
        let results: Vec<(bool, String)> = WeightPair::all_up_to(max)
            .into_par_iter()
            .flat_map_iter(|wp| {
                let mut out = Vec::new();
                for l in enumerate_labels(&wp) {
                    let f = label_function(&l);
                    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                        out.push((generator_action(i, j, &f).is_zero(), format!("E{i}{j} kills {l}")));
                    }
                }
                let (rank, count) = label_span_rank(&wp);
                out.push((rank == count, format!("independence for {wp}: rank {rank} of {count}")));
                let dim = decomposition_dimension(&wp);
                out.push((dim == wp.product_dimension(), format!("completeness for {wp}: {dim} vs {}", wp.product_dimension())));
                let total = wp.w1.m1 + wp.w1.m2 + wp.w2.m1 + wp.w2.m2;
                for l1 in 0..=total {
                    for l2 in 0..=l1 {
                        let l3 = total - l1 - l2;
                        if l3 < 0 || l3 > l2 {
                            continue;
                        }
                        let w = [l1, l2, l3];
                        let (a, b) = (multiplicity(&wp, w) as i64, brute_force_multiplicity(&wp, w));
                        out.push((a == b, format!("multiplicity of {w:?} in {wp}: {a} vs {b}")));
                    }
                }
                out
            })
            .collect();
        r.absorb(results);
    })
}

/// The relation identities, Proposition-style checks and the `∇31`
/// coefficient identities under the adopted readings. Literal readings are
/// evaluated too and summarised in the notes.
pub fn relation_suite() -> SuiteReport {
    timed("relations", |r| {
        let mut inputs = Vec::new();
        for g in gammas(3, &[0]) {
            for u in 0..=3 {
                inputs.push(RelationInput::Rel1 { u, gamma: g });
            }
            for n in 0..=3 {
                for k2 in 0..=3 {
                    for mk in 0..=2 {
                        inputs.push(RelationInput::Rel3 { n, gamma: g, m1_minus_k1: mk, k2 });
                    }
                }
            }
        }
        for lambda in 0..=4 {
            for mu in 0..=4 - lambda {
                for omega in 0..=4 - lambda - mu {
                    inputs.push(RelationInput::Rel2 { lambda, mu, omega });
                }
            }
        }
        let results: Vec<(bool, bool, String)> = inputs
            .par_iter()
            .map(|inp| (relation_identity_holds(inp, Reading::Adopted), relation_identity_holds(inp, Reading::Literal), format!("{inp:?}")))
            .collect();
        let mut literal_fail = [0usize; 3];
        for (ok, lit, what) in results {
            if !lit {
                let idx = if what.starts_with("Rel1") { 0 } else if what.starts_with("Rel2") { 1 } else { 2 };
                literal_fail[idx] += 1;
            }
            r.check(ok, || what);
        }
        r.notes.push(format!("literal readings failing: rel1 {}, rel2 {}, rel3 {}", literal_fail[0], literal_fail[1], literal_fail[2]));

        let results: Vec<(bool, String)> = gammas(3, &[0])
            .into_par_iter()
            .flat_map_iter(|g| {
                let mut out: Vec<(bool, String)> = (0..=3).map(|k| (pre1_holds(k, &g), format!("hypergeometric operator on P^{k} F_{g}"))).collect();
                out.push((f13_solve(&g).is_some(), format!("a13 F_{g} decomposition")));
                out
            })
            .collect();
        r.absorb(results);

        let mut tests = Vec::new();
        for n in 0..=3i64 {
            for e in coefficient_test_monomials() {
                if e[..5].iter().sum::<i64>() >= n + 1 {
                    tests.push((e, n));
                }
            }
        }
        let results: Vec<(bool, bool, bool, String)> = tests
            .par_iter()
            .map(|&(e, n)| {
                let d_ok = d_identity_holds(e, n, Reading::Adopted).unwrap_or(false);
                let d_lit = d_identity_holds(e, n, Reading::Literal).unwrap_or(false);
                let c_ok = c_identity_holds(e, n, Reading::Adopted);
                (d_ok && c_ok, d_lit, c_identity_holds(e, n, Reading::Literal), format!("coefficient identities n={n} on {e:?}"))
            })
            .collect();
        let (mut d_lit_fail, mut c_lit_fail) = (0, 0);
        for (ok, dl, cl, what) in results {
            d_lit_fail += usize::from(!dl);
            c_lit_fail += usize::from(!cl);
            r.check(ok, || what);
        }
        r.notes.push(format!("literal readings failing: d {d_lit_fail}, c {c_lit_fail} of {}", tests.len()));
    })
}

fn coefficient_test_monomials() -> Vec<[i64; 7]> {
    let mut out = Vec::new();
    for al in 0..=2 {
        for be in 0..=2 {
            for ga in 0..=1 {
                for de in 0..=1 {
                    for om in 0..=1 {
                        for (ph, ps) in [(0, 0), (1, 0), (0, 1)] {
                            out.push([al, be, ga, de, om, ph, ps]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every (label, descent) cell for weight pairs with `m1, n1 <= max`.
pub fn cg_cells(max: i64) -> Vec<(WeightPair, crate::tensor_space::HighestVectorLabel, DescentTriple)> {
    let mut cells = Vec::new();
    for wp in WeightPair::all_up_to(max) {
        for l in enumerate_labels(&wp) {
            for d in valid_descents(&l) {
                cells.push((wp, l, d));
            }
        }
    }
    cells
}

/// Formula against oracle for every cell, plus weight bookkeeping, the
/// range-widening check and oracle completeness.
pub fn cg_suite(max: i64) -> SuiteReport {
    timed("cg-equivalence", |r| {
        let results: Vec<(bool, String)> = cg_cells(max)
            .into_par_iter()
            .flat_map_iter(|(wp, l, d)| {
                let mut out = Vec::new();
                let target = crate::cg_engine::target_diagram(&l, &d).expect("valid descent");
                match (cg_expansion(&l, &d, Readings::ADOPTED), oracle_expansion(&l, &d)) {
                    (Ok(f), Ok(o)) => {
                        let diff = compare(&f, &o.terms);
                        out.push((diff.is_empty(), format!("{wp} {l} {d}: {} differing coefficients", diff.len())));
                        let weights_ok = f.iter().all(|t| {
                            let (a, b) = (t.diagram_u.weight(), t.diagram_v.weight());
                            [a[0] + b[0], a[1] + b[1], a[2] + b[2]] == target.weight()
                        });
                        out.push((weights_ok, format!("{wp} {l} {d}: weight bookkeeping")));
                    }
                    (f, o) => out.push((false, format!("{wp} {l} {d}: formula {:?} oracle {:?}", f.err(), o.err()))),
                }
                if l.vtype == VectorType::One {
                    out.push((slack_check(&l, &d, 2).unwrap_or(false), format!("{wp} {l} {d}: widened ranges add nothing")));
                }
                out
            })
            .collect();
        r.absorb(results);
        let results: Vec<(bool, String)> = WeightPair::all_up_to(max)
            .into_par_iter()
            .map(|wp| match completeness_rank(&wp) {
                Ok((rank, dim)) => (rank == dim, format!("completeness of {wp}: rank {rank} of {dim}")),
                Err(e) => (false, format!("completeness of {wp}: {e}")),
            })
            .collect();
        r.absorb(results);
    })
}

/// Cells where a non-adopted reading disagrees with the oracle.
#[derive(Debug, Clone)]
pub struct ReadingReport {
    pub name: String,
    pub cells: usize,
    pub mismatches: usize,
    pub errors: usize,
}

impl fmt::Display for ReadingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "reading {:<16} {} of {} cells differ from the oracle, {} errors", self.name, self.mismatches, self.cells, self.errors)
    }
}

/// Evaluates the adopted readings, the literal readings and each literal
/// toggle in isolation against the oracle.
pub fn reading_reports(max: i64) -> Vec<ReadingReport> {
    let cells = cg_cells(max);
    let oracles: Vec<Option<Vec<crate::cg_engine::CGTerm>>> =
        cells.par_iter().map(|(_, l, d)| oracle_expansion(l, d).ok().map(|r| r.terms)).collect();
    let mut variants: Vec<(String, Readings)> = vec![("adopted".into(), Readings::ADOPTED), ("literal".into(), Readings::LITERAL)];
    for t in Readings::TOGGLES {
        variants.push((format!("literal-{t}"), Readings::only_literal(t).expect("known toggle")));
    }
    variants
        .into_iter()
        .map(|(name, readings)| {
            let outcomes: Vec<(bool, bool)> = cells
                .par_iter()
                .zip(oracles.par_iter())
                .map(|((_, l, d), o)| match (cg_expansion(l, d, readings), o) {
                    (Ok(f), Some(o)) => (compare(&f, o).is_empty(), false),
                    _ => (false, true),
                })
                .collect();
            ReadingReport {
                name,
                cells: cells.len(),
                mismatches: outcomes.iter().filter(|(ok, err)| !ok && !err).count(),
                errors: outcomes.iter().filter(|(_, err)| *err).count(),
            }
        })
        .collect()
}

/// Parity agreement of the two type-2 sign expressions over every
/// enumerated choice for weight pairs with `m1, n1 <= max`.
pub fn sign_rule_suite(max: i64) -> SuiteReport {
    timed("sign-rule", |r| {
        let cells: Vec<_> = cg_cells(max).into_iter().filter(|(_, l, _)| l.vtype == VectorType::Two).collect();
        let results: Vec<(usize, Vec<String>)> = cells
            .par_iter()
            .map(|(wp, l, d)| match sign_rule_counterexamples(l, d) {
                Ok((n, bad)) => (n, bad.iter().map(|c| format!("{wp} {l} {d}: {c:?}")).collect()),
                Err(e) => (0, vec![format!("{wp} {l} {d}: {e}")]),
            })
            .collect();
        let mut total = 0;
        for (n, bad) in results {
            total += n;
            r.checks += n;
            r.failures.extend(bad);
        }
        r.notes.push(format!("{} of {total} choices have differing parity", r.failures.len()));
    })
}

/// A rational as `num/den` text.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(gamma_suite(1).passed());
        assert!(model_suite(1).passed());
        assert!(highest_vector_suite(1).passed());
        let cg = cg_suite(1);
        assert!(cg.passed(), "{:?}", cg.failures);
    }

    #[test]
    fn monomial_count() {
        let v = [DetVariable::Aab, DetVariable::Abb];
        assert_eq!(monomials(&v, 2).len(), 6);
    }
}
