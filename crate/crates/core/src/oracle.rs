//! Reference expansions built without any closed-form coefficient.
//!
//! The target vector is produced by applying the lowering (or raising)
//! operators to the highest (or lowest) vector, embedded into matrix entries,
//! and solved exactly against products `gt_u(a) · gt_v(b)`. The product basis
//! factorises, so the solve runs in two stages: first over the `a`-side basis
//! for each `b`-monomial, then over the `b`-side basis for each `a`-diagram.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::Zero;

use crate::cg_engine::{collect_terms, target_diagram, valid_descents, CGTerm, DescentTriple};
use crate::error::{Cg3Error, Result};
use crate::exact_core::{inv_factorial, Echelon, Rational, SparsePolynomial, SparseVector};
use crate::gl3_model::{
    embed_matrix_entries, gt_vector, lowering_apply, matrix_vars, DetPolynomial, Factor, GTDiagram, HighestWeight, LadderOp,
    Nabla31Reading,
};
use crate::tensor_space::{case2_seed, enumerate_labels, label_function, label_weight, HighestVectorLabel, VectorType, WeightPair};

/// A product basis element `u_i ⊗ v_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductBasisIndex {
    pub diagram_u: GTDiagram,
    pub diagram_v: GTDiagram,
}

/// Sizes seen by the solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub dim_u: usize,
    pub dim_v: usize,
    pub rank_u: usize,
    pub rank_v: usize,
    /// Number of distinct `b`-monomials in the target.
    pub b_groups: usize,
}

/// Outcome of a product-basis solve.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub terms: Vec<CGTerm>,
    pub residual: SparsePolynomial,
    pub stats: SolverStats,
}

/// The Gelfand-Tsetlin vector `d` of the summand generated by `label`, as a
/// polynomial in both factors.
///
/// Type 1: `E21^S/S! E32^{T2}/T2! ∇31^{T1}/T1!` on the highest vector.
/// Type 2: `E12^S/S! E23^{T2}/T2! ∇13^{T1}/T1!` on the lowest vector.
pub fn tensor_gt_vector(label: &HighestVectorLabel, d: &DescentTriple) -> Result<DetPolynomial> {
    if target_diagram(label, d).is_none() {
        return Err(Cg3Error::InvalidDescent(d.t1, d.t2, d.s));
    }
    let [m1, _, m3] = label_weight(label);
    let (seed, ops) = match label.vtype {
        VectorType::One => (label_function(label), [LadderOp::Nabla31(Nabla31Reading::Adopted { m3 }), LadderOp::E32, LadderOp::E21]),
        VectorType::Two => (case2_seed(label)?, [LadderOp::Nabla13 { m1 }, LadderOp::E23, LadderOp::E12]),
    };
    let mut p = seed;
    for (op, n) in ops.into_iter().zip([d.t1, d.t2, d.s]) {
        p = lowering_apply(op, n as u32, &p)?.scale(&inv_factorial(n));
    }
    Ok(p)
}

/// The embedded Gelfand-Tsetlin basis of one factor, keyed by that factor's
/// six matrix entries.
struct FactorBasis {
    diagrams: Vec<GTDiagram>,
    echelon: Echelon<Vec<u32>>,
}

fn factor_slice(f: Factor) -> std::ops::Range<usize> {
    match f {
        Factor::A => 0..6,
        Factor::B => 6..12,
    }
}

fn factor_basis(f: Factor, w: HighestWeight) -> Result<Arc<FactorBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<(Factor, i64, i64), Arc<FactorBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("basis cache poisoned").get(&(f, w.m1, w.m2)) {
        return Ok(b.clone());
    }
    let diagrams = w.diagrams();
    let mut echelon = Echelon::new();
    let range = factor_slice(f);
    for d in &diagrams {
        let emb = embed_matrix_entries(&gt_vector(d, f)?);
        let v: SparseVector<Vec<u32>> = emb.terms().map(|(e, c)| (e[range.clone()].to_vec(), c.clone())).collect();
        echelon.insert(v);
    }
    if echelon.rank() != diagrams.len() {
        return Err(Cg3Error::RankDeficient { rank: echelon.rank(), size: diagrams.len() });
    }
    let b = Arc::new(FactorBasis { diagrams, echelon });
    cache.lock().expect("basis cache poisoned").insert((f, w.m1, w.m2), b.clone());
    Ok(b)
}

/// Writes `p` in the product basis of `wp`.
pub fn expand_in_product_basis(p: &DetPolynomial, wp: &WeightPair) -> Result<ExpansionReport> {
    let ua = factor_basis(Factor::A, wp.w1)?;
    let vb = factor_basis(Factor::B, wp.w2)?;
    let emb = embed_matrix_entries(p);
    let mut stats =
        SolverStats { dim_u: ua.diagrams.len(), dim_v: vb.diagrams.len(), rank_u: ua.echelon.rank(), rank_v: vb.echelon.rank(), b_groups: 0 };

    // Stage 1: for each b-monomial, solve the a-side polynomial.
    let mut by_b: BTreeMap<Vec<u32>, SparseVector<Vec<u32>>> = BTreeMap::new();
    for (e, c) in emb.terms() {
        by_b.entry(e[6..12].to_vec()).or_default().insert(e[0..6].to_vec(), c.clone());
    }
    stats.b_groups = by_b.len();
    let mut residual = SparsePolynomial::zero(matrix_vars());
    let mut per_u: BTreeMap<usize, SparseVector<Vec<u32>>> = BTreeMap::new();
    for (be, apoly) in &by_b {
        let (sol, res) = ua.echelon.solve(apoly);
        for (ae, c) in res {
            let mut e = ae;
            e.extend_from_slice(be);
            residual.add_term(e, c);
        }
        for (i, c) in sol {
            per_u.entry(i).or_default().insert(be.clone(), c);
        }
    }

    // Stage 2: for each a-diagram, solve the collected b-side polynomial.
    let mut terms = Vec::new();
    for (i, bpoly) in &per_u {
        let (sol, res) = vb.echelon.solve(bpoly);
        for (be, c) in res {
            let mut e = vec![0; 6];
            e.extend_from_slice(&be);
            residual.add_term(e, c);
        }
        for (j, c) in sol {
            terms.push(CGTerm { diagram_u: ua.diagrams[*i], diagram_v: vb.diagrams[j], coeff: c });
        }
    }
    if !residual.is_zero() {
        return Err(Cg3Error::NotInSpan { residual_terms: residual.len() });
    }
    Ok(ExpansionReport { terms: collect_terms(terms), residual, stats })
}

/// Reference expansion of the Gelfand-Tsetlin vector `d` under `label`.
pub fn oracle_expansion(label: &HighestVectorLabel, d: &DescentTriple) -> Result<ExpansionReport> {
    let p = tensor_gt_vector(label, d)?;
    expand_in_product_basis(&p, &label.weight_pair())
}

/// One entry of a coefficient comparison; `None` marks an absent term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffEntry {
    pub index: ProductBasisIndex,
    pub formula: Option<Rational>,
    pub oracle: Option<Rational>,
}

/// Coefficientwise differences between two expansions; empty iff they agree.
pub fn compare(formula: &[CGTerm], oracle: &[CGTerm]) -> Vec<DiffEntry> {
    let key = |t: &CGTerm| ProductBasisIndex { diagram_u: t.diagram_u, diagram_v: t.diagram_v };
    let fm: BTreeMap<_, _> = formula.iter().filter(|t| !t.coeff.is_zero()).map(|t| (key(t), t.coeff.clone())).collect();
    let om: BTreeMap<_, _> = oracle.iter().filter(|t| !t.coeff.is_zero()).map(|t| (key(t), t.coeff.clone())).collect();
    let mut keys: Vec<_> = fm.keys().chain(om.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let (f, o) = (fm.get(&k).cloned(), om.get(&k).cloned());
            (f != o).then_some(DiffEntry { index: k, formula: f, oracle: o })
        })
        .collect()
}

/// Rank of all oracle expansions for `wp` stacked as coefficient vectors,
/// and the product dimension it should reach.
pub fn completeness_rank(wp: &WeightPair) -> Result<(usize, usize)> {
    let mut ech: Echelon<ProductBasisIndex> = Echelon::new();
    for l in enumerate_labels(wp) {
        for d in valid_descents(&l) {
            let rep = oracle_expansion(&l, &d)?;
            let v = rep
                .terms
                .into_iter()
                .map(|t| (ProductBasisIndex { diagram_u: t.diagram_u, diagram_v: t.diagram_v }, t.coeff))
                .collect();
            ech.insert(v);
        }
    }
    Ok((ech.rank(), wp.product_dimension() as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::int;
    use crate::gl3_model::DetVariable;

    fn dg(a: [i64; 6]) -> GTDiagram {
        GTDiagram::from_array(a).unwrap()
    }

    fn wp(m1: i64, m2: i64, n1: i64, n2: i64) -> WeightPair {
        WeightPair::from_ints(m1, m2, n1, n2).unwrap()
    }

    #[test]
    fn product_of_singles() {
        let p = DetPolynomial::monomial(int(1), &[(DetVariable::Single(Factor::A, 1), 1), (DetVariable::Single(Factor::B, 1), 1)]);
        let r = expand_in_product_basis(&p, &wp(1, 0, 1, 0)).unwrap();
        let top = dg([1, 0, 0, 1, 0, 1]);
        assert_eq!(r.terms, vec![CGTerm { diagram_u: top, diagram_v: top, coeff: int(1) }]);
    }

    #[test]
    fn mixed_determinant() {
        let r = expand_in_product_basis(&DetPolynomial::var(DetVariable::Mixed(1, 2)), &wp(1, 0, 1, 0)).unwrap();
        let (a1, a2) = (dg([1, 0, 0, 1, 0, 1]), dg([1, 0, 0, 1, 0, 0]));
        assert_eq!(
            r.terms,
            vec![CGTerm { diagram_u: a2, diagram_v: a1, coeff: int(-1) }, CGTerm { diagram_u: a1, diagram_v: a2, coeff: int(1) }]
        );
    }

    #[test]
    fn zero_has_empty_expansion() {
        let r = expand_in_product_basis(&DetPolynomial::zero(), &wp(2, 1, 1, 0)).unwrap();
        assert!(r.terms.is_empty());
    }

    #[test]
    fn outside_span_is_reported() {
        let p = DetPolynomial::var(DetVariable::Single(Factor::A, 1));
        assert!(matches!(expand_in_product_basis(&p, &wp(1, 0, 1, 0)), Err(Cg3Error::NotInSpan { .. })));
    }

    #[test]
    fn zero_descent_is_label_function() {
        for l in enumerate_labels(&wp(2, 1, 2, 1)).into_iter().filter(|l| l.vtype == VectorType::One) {
            assert_eq!(tensor_gt_vector(&l, &DescentTriple::ZERO).unwrap(), label_function(&l));
        }
    }

    #[test]
    fn round_trip_on_combination() {
        let w = wp(2, 1, 1, 0);
        let us = w.w1.diagrams();
        let vs = w.w2.diagrams();
        let mut p = DetPolynomial::zero();
        let mut expect = Vec::new();
        for (i, u) in us.iter().enumerate().step_by(2) {
            for (j, v) in vs.iter().enumerate() {
                let c = crate::exact_core::rat(i as i64 + 1, j as i64 + 2);
                p += &(&gt_vector(u, Factor::A).unwrap() * &gt_vector(v, Factor::B).unwrap()).scale(&c);
                expect.push(CGTerm { diagram_u: *u, diagram_v: *v, coeff: c });
            }
        }
        assert_eq!(expand_in_product_basis(&p, &w).unwrap().terms, collect_terms(expect));
    }

    #[test]
    fn compare_reports() {
        let t = CGTerm { diagram_u: dg([1, 0, 0, 1, 0, 1]), diagram_v: dg([1, 0, 0, 1, 0, 0]), coeff: int(1) };
        assert!(compare(&[t.clone()], &[t.clone()]).is_empty());
        let flipped = CGTerm { coeff: int(-1), ..t.clone() };
        assert_eq!(compare(&[t.clone()], &[flipped]).len(), 1);
        let diff = compare(&[t.clone()], &[]);
        assert_eq!(diff.len(), 1);
        assert_eq!(diff[0].oracle, None);
    }

    #[test]
    fn small_completeness() {
        let (rank, dim) = completeness_rank(&wp(1, 0, 1, 0)).unwrap();
        assert_eq!((rank, dim), (9, 9));
    }
}
