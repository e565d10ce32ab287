//! Closed-form coefficients of the Γ-series relations and of the `∇31`
//! expansion, each with a symbolic identity check.
//!
//! With `P = a1 a23 - a2 a13` (which equals `-a3 a12` as a function):
//!
//! * rel1: `a1^u F_γ = Σ_p Y_p (a2 a13 - a1 a23)^p F_{γτ}`;
//! * rel2: `(abb)^λ/λ! (aab)^μ/μ! (ab)^ω/ω! =
//!   Σ X a3^u a12^v (a2a13 - a1a23)^q b3^v b12^u (b2b13 - b1b23)^q F_θ(a) G_ϑ(b)`;
//! * rel3: `E32^n/n! [a3^I/I! a12^J/J! F_γ] = Σ Z a3^{I+n1} a12^{J-n2} P^r F_ε`.
//!
//! Every coefficient has two readings. [`Reading::Adopted`] is the one the
//! identity suites confirm; [`Reading::Literal`] follows the printed formulas
//! and is kept so that `verify` can report where they fail.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::error::{Cg3Error, Result};
use crate::exact_core::{binomial, factorial_q, falling_factorial, int, sign, Echelon, Rational, SparsePolynomial, SparseVector};
use crate::gamma_series::{eval_at_one, expand_into, GammaParams};
use crate::gl3_model::{det_vars, generator_action, lowering_apply, DetPolynomial, DetVariable, Factor, LadderOp, Nabla31Reading};

/// Which form of a coefficient formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    Adopted,
    Literal,
}

/// `Π_{t=1}^{p} (t(t+1) + t(γ1 + γ2 + γ13 + γ23))`.
pub fn pi_product(p: i64, gamma: &GammaParams) -> Rational {
    let s = gamma.sum();
    (1..=p).fold(Rational::one(), |acc, t| acc * int(t * (t + 1) + t * s))
}

fn singular(what: &str, h: i64) -> Cg3Error {
    Cg3Error::SingularInverse { context: format!("{what} at h = {h}") }
}

/// Subsets of `1..=n` of size `k`, as increasing vectors.
fn subsets(n: i64, k: usize) -> Vec<Vec<i64>> {
    fn rec(start: i64, n: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficient of `O1^k O2^{n-k}` in the unnormalised `∇̃31^n` on a monomial
/// whose `(E11 - M3)` eigenvalue is `h`.
pub fn c_coeff(h: i64, n: i64, k: i64, reading: Reading) -> Rational {
    assert!(0 <= k && k <= n, "c_coeff needs 0 <= k <= n");
    let m = n - k;
    match reading {
        Reading::Adopted => sign(m) * Rational::from_integer(binomial(n, k) * falling_factorial(h + 1 - m, k as u64)),
        Reading::Literal => {
            let total = subsets(n, k as usize)
                .into_iter()
                .map(|s| s.iter().fold(BigInt::one(), |acc, &i| acc * BigInt::from(h + 1 - i)))
                .fold(BigInt::zero(), |a, b| a + b);
            sign(m) * Rational::from_integer(total)
        }
    }
}

/// Coefficient `d_{k,n-k}` in `∇31^n/n! f = Σ_k d_{k,n-k} O1^k/k! O2^{n-k}/(n-k)! f`.
pub fn d_coeff(h: i64, n: i64, k: i64, reading: Reading) -> Result<Rational> {
    assert!(0 <= k && k <= n, "d_coeff needs 0 <= k <= n");
    let m = n - k;
    match reading {
        Reading::Adopted => {
            let den = falling_factorial(h + 1, m as u64);
            if den.is_zero() {
                return Err(singular("d_coeff", h));
            }
            Ok(sign(m) / Rational::from_integer(den))
        }
        Reading::Literal => {
            let mut total = Rational::zero();
            for s in subsets(n, m as usize) {
                let mut prod = Rational::one();
                for i in s {
                    if h + 1 - i == 0 {
                        return Err(singular("d_coeff", h));
                    }
                    prod /= int(h + 1 - i);
                }
                total += prod;
            }
            Ok(sign(m) * factorial_q(k) * factorial_q(m) * total)
        }
    }
}

fn is_empty(g: &GammaParams) -> bool {
    g.is_empty()
}

/// rel1 coefficient: returns `γτ = (γ1+u, γ2-p, γ13-p, 0)` and `Y_p`.
pub fn y_coeff(u: i64, gamma: &GammaParams, p: i64, reading: Reading) -> (GammaParams, Rational) {
    let tau = GammaParams::planar(gamma.g1 + u, gamma.g2 - p, gamma.g13 - p);
    if is_empty(&tau) || p < 0 {
        return (tau, Rational::zero());
    }
    let ff = Rational::from_integer(falling_factorial(u, p as u64));
    let den = pi_product(p, &tau) * eval_at_one(&tau);
    if ff.is_zero() || den.is_zero() {
        return (tau, Rational::zero());
    }
    let y = match reading {
        Reading::Adopted => {
            let num = eval_at_one(&GammaParams::planar(gamma.g1 + p, gamma.g2 - p, gamma.g13 - p));
            sign(p) * ff * num / den
        }
        Reading::Literal => ff * eval_at_one(gamma) / den,
    };
    (tau, y)
}

/// The combinatorial factor `h^{λ,μ,ω}_{q1,q2,q3}` of rel2.
///
/// Sum over words in `{1,2,3}^q` with `q1` ones and `q2` twos; each position
/// `j` holding a one contributes a factor built from the numbers `n2`, `n3`
/// of twos and threes before it. Adopted factor:
/// `(q - j + 2) + (λ - q - n2) + (μ - q - n3) + ω`; literal factor:
/// `(q - j) + (λ - n2) + (μ - n3) + ω`. Both agree for `q = 1`.
pub fn h_coeff(lambda: i64, mu: i64, omega: i64, q1: i64, q2: i64, q3: i64, reading: Reading) -> BigInt {
    let q = q1 + q2 + q3;
    fn rec(
        j: i64,
        left: [i64; 3],
        n2: i64,
        n3: i64,
        q: i64,
        f: &dyn Fn(i64, i64, i64) -> i64,
    ) -> BigInt {
        if j > q {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        if left[0] > 0 {
            let factor = f(j, n2, n3);
            if factor != 0 {
                total += BigInt::from(factor) * rec(j + 1, [left[0] - 1, left[1], left[2]], n2, n3, q, f);
            }
        }
        if left[1] > 0 {
            total += rec(j + 1, [left[0], left[1] - 1, left[2]], n2 + 1, n3, q, f);
        }
        if left[2] > 0 {
            total += rec(j + 1, [left[0], left[1], left[2] - 1], n2, n3 + 1, q, f);
        }
        total
    }
    let factor: Box<dyn Fn(i64, i64, i64) -> i64> = match reading {
        Reading::Adopted => Box::new(move |j, n2, n3| (q - j + 2) + (lambda - q - n2) + (mu - q - n3) + omega),
        Reading::Literal => Box::new(move |j, n2, n3| (q - j) + (lambda - n2) + (mu - n3) + omega),
    };
    rec(1, [q1, q2, q3], 0, 0, q, factor.as_ref())
}

/// One summand of rel2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XTerm {
    /// Exponent of `a3` and of `b12`.
    pub u: i64,
    /// Exponent of `a12` and of `b3`.
    pub v: i64,
    pub q: i64,
    pub theta: GammaParams,
    pub vartheta: GammaParams,
    pub x: Rational,
}

/// rel2 coefficient for one choice of splits.
///
/// `phi_split` splits `λ - q - q2` (the `(abb)` side), `psi_split` splits
/// `μ - q - q3` (the `(aab)` side) and `omega_split` splits `ω`.
pub fn x_coeff(
    lambda: i64,
    mu: i64,
    omega: i64,
    q_split: [i64; 3],
    phi_split: [i64; 3],
    psi_split: [i64; 3],
    omega_split: [i64; 2],
    reading: Reading,
) -> Result<XTerm> {
    let [q1, q2, q3] = q_split;
    let q = q1 + q2 + q3;
    let all = q_split.iter().chain(&phi_split).chain(&psi_split).chain(&omega_split);
    if all.clone().any(|&x| x < 0) {
        return Err(Cg3Error::RejectSplit("negative part".into()));
    }
    if phi_split.iter().sum::<i64>() != lambda - q - q2 {
        return Err(Cg3Error::RejectSplit(format!("phi split must sum to λ - q - q2 = {}", lambda - q - q2)));
    }
    if psi_split.iter().sum::<i64>() != mu - q - q3 {
        return Err(Cg3Error::RejectSplit(format!("psi split must sum to μ - q - q3 = {}", mu - q - q3)));
    }
    if omega_split.iter().sum::<i64>() != omega {
        return Err(Cg3Error::RejectSplit("omega split must sum to ω".into()));
    }
    let [p1, p2, p3] = phi_split;
    let [s1, s2, s3] = psi_split;
    let [w1, w2] = omega_split;
    let theta = GammaParams::planar(p1 + w1 - s1, p2 + w2 + s1, s1 + s2);
    let vartheta = GammaParams::planar(s1 + w2 - p1, s2 + w1 + p1, p1 + p2);
    let u = p3 + q2;
    let v = s3 + q3;
    if theta.is_empty() || vartheta.is_empty() {
        return Ok(XTerm { u, v, q, theta, vartheta, x: Rational::zero() });
    }
    let h = Rational::from_integer(h_coeff(lambda, mu, omega, q1, q2, q3, reading));
    let den = pi_product(q, &theta) * pi_product(q, &vartheta) * eval_at_one(&theta) * eval_at_one(&vartheta);
    let facts = [p1, p2, p3, s1, s2, s3, w1, w2].iter().fold(Rational::one(), |acc, &n| acc * factorial_q(n));
    let x = if den.is_zero() { Rational::zero() } else { sign(p2 + s2 + w2 + q2 + q3) * h * factorial_q(q) / (den * facts) };
    Ok(XTerm { u, v, q, theta, vartheta, x })
}

/// All nonzero summands of rel2 for `(λ, μ, ω)`.
pub fn rel2_terms(lambda: i64, mu: i64, omega: i64, reading: Reading) -> Vec<XTerm> {
    let mut out = Vec::new();
    for q in 0..=lambda.min(mu) {
        for qs in compositions3(q) {
            let (q2, q3) = (qs[1], qs[2]);
            if lambda - q - q2 < 0 || mu - q - q3 < 0 {
                continue;
            }
            if h_coeff(lambda, mu, omega, qs[0], q2, q3, reading).is_zero() {
                continue;
            }
            for ph in compositions3(lambda - q - q2) {
                for ps in compositions3(mu - q - q3) {
                    for w1 in 0..=omega {
                        let t = x_coeff(lambda, mu, omega, qs, ph, ps, [w1, omega - w1], reading)
                            .expect("enumerated splits are admissible");
                        if !t.x.is_zero() {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn compositions3(total: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in 0..=total {
        for b in 0..=total - a {
            out.push([a, b, total - a - b]);
        }
    }
    out
}

/// rel3 coefficient: returns `(i, j, ε, Z)` with `i = I + n1`, `j = J - n2`
/// and `ε = (γ1, γ2 - n1 - r, γ13 + n2 - r, 0)`.
///
/// Terms with `r > n2`, `n2 > J` or empty `ε` vanish.
pub fn z_coeff(gamma: &GammaParams, i0: i64, j0: i64, n1: i64, n2: i64, r: i64, reading: Reading) -> (i64, i64, GammaParams, Rational) {
    let eps = GammaParams::planar(gamma.g1, gamma.g2 - n1 - r, gamma.g13 + n2 - r);
    let (i, j) = (i0 + n1, j0 - n2);
    if r < 0 || r > n2 || n2 > j0 || n1 < 0 || eps.is_empty() {
        return (i, j, eps, Rational::zero());
    }
    let den = pi_product(r, &eps) * eval_at_one(&eps);
    if den.is_zero() {
        return (i, j, eps, Rational::zero());
    }
    let z = match reading {
        Reading::Adopted => {
            let num = eval_at_one(&GammaParams::planar(gamma.g1, gamma.g2 - n1 - r, gamma.g13));
            sign(r) * num / (den * factorial_q(i0) * factorial_q(n1) * factorial_q(j0 - n2) * factorial_q(n2 - r))
        }
        Reading::Literal => {
            let num = eval_at_one(&GammaParams::planar(gamma.g1, gamma.g2 - n2, gamma.g13));
            num / (den * factorial_q(i0) * factorial_q(n1) * factorial_q(j0 - n2) * factorial_q(n2))
        }
    };
    (i, j, eps, z)
}

/// One summand of a relation, written with `P = x1 x23 - x2 x13` for each
/// factor `x` that carries a Γ-series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub prefactor_exponents: BTreeMap<DetVariable, u32>,
    pub plucker_power: u32,
    pub gamma: GammaParams,
    /// Parameters of the `b`-side series (rel2 only).
    pub gamma_b: Option<GammaParams>,
    pub coeff: Rational,
}

const A1: DetVariable = DetVariable::Single(Factor::A, 1);
const A2: DetVariable = DetVariable::Single(Factor::A, 2);
const A3: DetVariable = DetVariable::Single(Factor::A, 3);
const B3: DetVariable = DetVariable::Single(Factor::B, 3);
const A12: DetVariable = DetVariable::Pair(Factor::A, 1, 2);
const A13: DetVariable = DetVariable::Pair(Factor::A, 1, 3);
const A23: DetVariable = DetVariable::Pair(Factor::A, 2, 3);
const B12: DetVariable = DetVariable::Pair(Factor::B, 1, 2);

fn series_slots(f: Factor) -> [usize; 4] {
    [
        DetVariable::Single(f, 1).index(),
        DetVariable::Single(f, 2).index(),
        DetVariable::Pair(f, 1, 3).index(),
        DetVariable::Pair(f, 2, 3).index(),
    ]
}

/// `F_γ` in the single-factor variables of `f`.
pub fn series(gamma: &GammaParams, f: Factor) -> DetPolynomial {
    DetPolynomial::from_poly(&expand_into(gamma, det_vars(), series_slots(f)))
}

/// `x1 x23 - x2 x13` for the factor `f`.
pub fn plucker_form(f: Factor) -> DetPolynomial {
    let v = DetPolynomial::var;
    &(&v(DetVariable::Single(f, 1)) * &v(DetVariable::Pair(f, 2, 3))) - &(&v(DetVariable::Single(f, 2)) * &v(DetVariable::Pair(f, 1, 3)))
}

impl RelationTerm {
    /// The summand as a polynomial in the (free) determinant alphabet.
    pub fn to_polynomial(&self) -> DetPolynomial {
        let pre: Vec<(DetVariable, u32)> = self.prefactor_exponents.iter().map(|(v, k)| (*v, *k)).collect();
        let mut p = DetPolynomial::monomial(self.coeff.clone(), &pre);
        p = &p * &plucker_form(Factor::A).pow(self.plucker_power);
        p = &p * &series(&self.gamma, Factor::A);
        if let Some(gb) = &self.gamma_b {
            p = &p * &plucker_form(Factor::B).pow(self.plucker_power);
            p = &p * &series(gb, Factor::B);
        }
        p
    }
}

/// Inputs of one relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationInput {
    Rel1 { u: i64, gamma: GammaParams },
    Rel2 { lambda: i64, mu: i64, omega: i64 },
    Rel3 { n: i64, gamma: GammaParams, m1_minus_k1: i64, k2: i64 },
}

/// Right-hand side of a relation as a list of summands.
pub fn expand_rel(input: &RelationInput, reading: Reading) -> Vec<RelationTerm> {
    match *input {
        RelationInput::Rel1 { u, gamma } => (0..=u.max(0))
            .filter_map(|p| {
                let (tau, y) = y_coeff(u, &gamma, p, reading);
                (!y.is_zero()).then(|| RelationTerm {
                    prefactor_exponents: BTreeMap::new(),
                    plucker_power: p as u32,
                    gamma: tau,
                    gamma_b: None,
                    coeff: sign(p) * y,
                })
            })
            .collect(),
        RelationInput::Rel2 { lambda, mu, omega } => rel2_terms(lambda, mu, omega, reading)
            .into_iter()
            .map(|t| {
                let mut pre = BTreeMap::new();
                for (var, k) in [(A3, t.u), (A12, t.v), (B3, t.v), (B12, t.u)] {
                    if k > 0 {
                        pre.insert(var, k as u32);
                    }
                }
                RelationTerm { prefactor_exponents: pre, plucker_power: t.q as u32, gamma: t.theta, gamma_b: Some(t.vartheta), coeff: t.x }
            })
            .collect(),
        RelationInput::Rel3 { n, gamma, m1_minus_k1, k2 } => {
            let mut out = Vec::new();
            for n1 in 0..=n {
                let n2 = n - n1;
                for r in 0..=n2 {
                    let (i, j, eps, z) = z_coeff(&gamma, m1_minus_k1, k2, n1, n2, r, reading);
                    if z.is_zero() {
                        continue;
                    }
                    let mut pre = BTreeMap::new();
                    if i > 0 {
                        pre.insert(A3, i as u32);
                    }
                    if j > 0 {
                        pre.insert(A12, j as u32);
                    }
                    out.push(RelationTerm { prefactor_exponents: pre, plucker_power: r as u32, gamma: eps, gamma_b: None, coeff: z });
                }
            }
            out
        }
    }
}

/// Left-hand side of a relation in the free determinant alphabet.
pub fn relation_lhs(input: &RelationInput) -> DetPolynomial {
    let v = DetPolynomial::var;
    match *input {
        RelationInput::Rel1 { u, gamma } => &v(A1).pow(u as u32) * &series(&gamma, Factor::A),
        RelationInput::Rel2 { lambda, mu, omega } => {
            let b = |i| v(DetVariable::Single(Factor::B, i));
            let bp = |i, j| v(DetVariable::Pair(Factor::B, i, j));
            let ab = &(&v(A1) * &b(2)) - &(&v(A2) * &b(1));
            let aab = &(&(&b(1) * &v(A23)) - &(&b(2) * &v(A13))) + &(&b(3) * &v(A12));
            let abb = &(&(&v(A1) * &bp(2, 3)) - &(&v(A2) * &bp(1, 3))) + &(&v(A3) * &bp(1, 2));
            let norm = crate::exact_core::inv_factorial(lambda) * crate::exact_core::inv_factorial(mu) * crate::exact_core::inv_factorial(omega);
            (&(&abb.pow(lambda as u32) * &aab.pow(mu as u32)) * &ab.pow(omega as u32)).scale(&norm)
        }
        RelationInput::Rel3 { n, gamma, m1_minus_k1, k2 } => {
            let norm = crate::exact_core::inv_factorial(m1_minus_k1) * crate::exact_core::inv_factorial(k2);
            let mut p = DetPolynomial::monomial(norm, &[(A3, m1_minus_k1 as u32), (A12, k2 as u32)]);
            p = &p * &series(&gamma, Factor::A);
            for _ in 0..n {
                p = generator_action(3, 2, &p);
            }
            p.scale(&crate::exact_core::inv_factorial(n))
        }
    }
}

/// Whether both sides agree as polynomials in the free determinant alphabet
/// (a stronger statement than agreement as functions).
pub fn relation_identity_holds(input: &RelationInput, reading: Reading) -> bool {
    let lhs = relation_lhs(input);
    let mut rhs = DetPolynomial::zero();
    for t in expand_rel(input, reading) {
        rhs += &t.to_polynomial();
    }
    (&lhs - &rhs).is_syntactically_zero()
}

/// `∂²/∂x1∂x23 - ∂²/∂x2∂x13` for the factor `f`, treating the determinant
/// variables as free symbols.
pub fn hyper_operator_apply(f: Factor, p: &DetPolynomial) -> DetPolynomial {
    let d = |q: &SparsePolynomial, var: DetVariable| q.partial_derivative(var.index());
    let q = p.as_poly();
    let t1 = d(&d(q, DetVariable::Single(f, 1)), DetVariable::Pair(f, 2, 3));
    let t2 = d(&d(q, DetVariable::Single(f, 2)), DetVariable::Pair(f, 1, 3));
    DetPolynomial::from_poly(&(&t1 - &t2))
}

/// Checks `O(P^k F_γ) = (k(k+1) + k(γ1+γ2+γ13)) P^{k-1} F_γ`.
pub fn pre1_holds(k: u32, gamma: &GammaParams) -> bool {
    let p = plucker_form(Factor::A);
    let f = series(gamma, Factor::A);
    let lhs = hyper_operator_apply(Factor::A, &(&p.pow(k) * &f));
    let k = k as i64;
    let c = int(k * (k + 1) + k * (gamma.g1 + gamma.g2 + gamma.g13));
    let rhs = if k == 0 { DetPolynomial::zero() } else { (&p.pow((k - 1) as u32) * &f).scale(&c) };
    (&lhs - &rhs).is_syntactically_zero()
}

/// Solves `a13 F_γ = X1 F_{γ+e13} + P X2 F_{γ-e2}` exactly; `None` if the
/// left side is outside the span of the two candidates.
pub fn f13_solve(gamma: &GammaParams) -> Option<(Rational, Rational)> {
    let lhs = &DetPolynomial::var(A13) * &series(gamma, Factor::A);
    let c1 = series(&(*gamma + GammaParams::unit(2)), Factor::A);
    let c2 = &plucker_form(Factor::A) * &series(&(*gamma - GammaParams::unit(1)), Factor::A);
    let mut ech: Echelon<Vec<u32>> = Echelon::new();
    ech.insert(c1.as_poly().term_map().clone());
    ech.insert(c2.as_poly().term_map().clone());
    let target: SparseVector<Vec<u32>> = lhs.as_poly().term_map().clone();
    let (sol, residual) = ech.solve(&target);
    residual.is_empty().then(|| (sol.get(&0).cloned().unwrap_or_default(), sol.get(&1).cloned().unwrap_or_default()))
}

/// `O1 = a3 ∂/∂a1 + b3 ∂/∂b1` on the free determinant alphabet.
pub fn o1_apply(p: &DetPolynomial) -> DetPolynomial {
    let q = p.as_poly();
    let mut out = SparsePolynomial::zero(det_vars());
    for f in [Factor::A, Factor::B] {
        let x3 = SparsePolynomial::variable(det_vars(), DetVariable::Single(f, 3).index());
        out += &(&x3 * &q.partial_derivative(DetVariable::Single(f, 1).index()));
    }
    DetPolynomial::from_poly(&out)
}

/// `O2 = (aab) ∂²/∂a12∂b1 + (abb) ∂²/∂a1∂b12` on the free determinant alphabet.
pub fn o2_apply(p: &DetPolynomial) -> DetPolynomial {
    let q = p.as_poly();
    let d = |q: &SparsePolynomial, v: DetVariable| q.partial_derivative(v.index());
    let b1 = DetVariable::Single(Factor::B, 1);
    let aab = SparsePolynomial::variable(det_vars(), DetVariable::Aab.index());
    let abb = SparsePolynomial::variable(det_vars(), DetVariable::Abb.index());
    let t1 = &aab * &d(&d(q, A12), b1);
    let t2 = &abb * &d(&d(q, A1), B12);
    DetPolynomial::from_poly(&(&t1 + &t2))
}

/// Checks `∇31^n/n! f = Σ_k d_{k,n-k} O1^k/k! O2^{n-k}/(n-k)! f` for
/// `f = a1^α b1^β a12^γ b12^δ (ab)^ω (aab)^φ (abb)^ψ`, comparing embeddings.
/// `∇31` is the adopted operator with `m3 = φ + ψ`.
pub fn d_identity_holds(exps: [i64; 7], n: i64, reading: Reading) -> Result<bool> {
    let [al, be, ga, de, om, ph, ps] = exps;
    let u = |x: i64| x as u32;
    let f = DetPolynomial::monomial(
        Rational::one(),
        &[
            (A1, u(al)),
            (DetVariable::Single(Factor::B, 1), u(be)),
            (A12, u(ga)),
            (B12, u(de)),
            (DetVariable::Mixed(1, 2), u(om)),
            (DetVariable::Aab, u(ph)),
            (DetVariable::Abb, u(ps)),
        ],
    );
    let h = al + be + ga + de + om;
    let lhs = lowering_apply(LadderOp::Nabla31(Nabla31Reading::Adopted { m3: ph + ps }), n as u32, &f)?
        .scale(&crate::exact_core::inv_factorial(n));
    let mut rhs = DetPolynomial::zero();
    for k in 0..=n {
        let d = d_coeff(h, n, k, reading)?;
        let mut t = f.clone();
        for _ in 0..(n - k) {
            t = o2_apply(&t);
        }
        for _ in 0..k {
            t = o1_apply(&t);
        }
        rhs += &t.scale(&(d * crate::exact_core::inv_factorial(k) * crate::exact_core::inv_factorial(n - k)));
    }
    Ok(lhs == rhs)
}

/// Checks `∇̃31^n f = Σ_k c_{k,n-k} O1^k O2^{n-k} f` with
/// `∇̃31 = (E11 - E22 + 1) E31 + E32 E21`, for the same monomials as
/// [`d_identity_holds`].
pub fn c_identity_holds(exps: [i64; 7], n: i64, reading: Reading) -> bool {
    let [al, be, ga, de, om, ph, ps] = exps;
    let u = |x: i64| x as u32;
    let f = DetPolynomial::monomial(
        Rational::one(),
        &[
            (A1, u(al)),
            (DetVariable::Single(Factor::B, 1), u(be)),
            (A12, u(ga)),
            (B12, u(de)),
            (DetVariable::Mixed(1, 2), u(om)),
            (DetVariable::Aab, u(ph)),
            (DetVariable::Abb, u(ps)),
        ],
    );
    let h = al + be + ga + de + om;
    let mut lhs = f.clone();
    for _ in 0..n {
        let mut next = DetPolynomial::zero();
        for (w, comp) in lhs.weight_components() {
            next += &generator_action(3, 1, &comp).scale(&int(w[0] - w[1]));
            next += &generator_action(3, 2, &generator_action(2, 1, &comp));
        }
        lhs = next;
    }
    let mut rhs = DetPolynomial::zero();
    for k in 0..=n {
        let mut t = f.clone();
        for _ in 0..(n - k) {
            t = o2_apply(&t);
        }
        for _ in 0..k {
            t = o1_apply(&t);
        }
        rhs += &t.scale(&c_coeff(h, n, k, reading));
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn g(a: i64, b: i64, c: i64) -> GammaParams {
        GammaParams::planar(a, b, c)
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi_product(0, &g(4, 1, 2)), int(1));
        assert_eq!(pi_product(1, &g(1, 0, 0)), int(3));
        assert_eq!(pi_product(2, &g(0, 0, 0)), int(12));
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_coeff(5, 0, 0, Reading::Adopted).unwrap(), int(1));
        assert_eq!(d_coeff(5, 0, 0, Reading::Literal).unwrap(), int(1));
        assert!(d_identity_holds([1, 1, 1, 0, 0, 0, 0], 1, Reading::Adopted).unwrap());
        assert!(matches!(d_coeff(0, 2, 0, Reading::Adopted), Err(Cg3Error::SingularInverse { .. })));
    }

    #[test]
    fn c_leading_value() {
        // With no O2 factor the coefficient is the falling product (h+1)(h)...(h+2-n).
        assert_eq!(c_coeff(4, 2, 2, Reading::Adopted), int(20));
        assert!(c_identity_holds([2, 1, 1, 0, 0, 0, 0], 2, Reading::Adopted));
    }

    #[test]
    fn y_examples() {
        let (tau, y) = y_coeff(1, &g(0, 0, 0), 0, Reading::Adopted);
        assert_eq!((tau, y), (g(1, 0, 0), int(1)));
        let (tau, y) = y_coeff(0, &g(2, 1, 3), 0, Reading::Adopted);
        assert_eq!((tau, y), (g(2, 1, 3), int(1)));
        assert!(relation_identity_holds(&RelationInput::Rel1 { u: 2, gamma: g(0, 1, 1) }, Reading::Adopted));
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_coeff(3, 2, 1, 0, 0, 0, Reading::Adopted), BigInt::one());
        assert_eq!(h_coeff(3, 2, 1, 1, 0, 0, Reading::Adopted), BigInt::from(6));
        assert_eq!(h_coeff(3, 2, 1, 1, 0, 0, Reading::Literal), BigInt::from(6));
        assert_eq!(h_coeff(3, 2, 1, 0, 1, 0, Reading::Adopted), BigInt::one());
    }

    #[test]
    fn x_examples() {
        let t = x_coeff(0, 0, 1, [0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0], Reading::Adopted).unwrap();
        assert_eq!((t.theta, t.vartheta, t.x.clone()), (g(1, 0, 0), g(0, 1, 0), int(1)));
        let t = x_coeff(0, 0, 1, [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 1], Reading::Adopted).unwrap();
        assert_eq!((t.theta, t.vartheta, t.x.clone()), (g(0, 1, 0), g(1, 0, 0), int(-1)));
        assert!(x_coeff(1, 0, 0, [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0], Reading::Adopted).is_err());
        assert!(relation_identity_holds(&RelationInput::Rel2 { lambda: 0, mu: 0, omega: 1 }, Reading::Adopted));
        assert!(relation_identity_holds(&RelationInput::Rel2 { lambda: 1, mu: 0, omega: 0 }, Reading::Adopted));
    }

    #[test]
    fn z_examples() {
        let (i, j, eps, z) = z_coeff(&g(1, 2, 0), 2, 3, 0, 0, 0, Reading::Adopted);
        assert_eq!((i, j, eps, z), (2, 3, g(1, 2, 0), rat(1, 12)));
        assert!(relation_identity_holds(&RelationInput::Rel3 { n: 1, gamma: g(1, 0, 0), m1_minus_k1: 0, k2: 0 }, Reading::Adopted));
        assert!(relation_identity_holds(&RelationInput::Rel3 { n: 1, gamma: g(0, 1, 0), m1_minus_k1: 0, k2: 1 }, Reading::Adopted));
        let (_, _, _, z) = z_coeff(&g(1, 1, 1), 0, 2, 0, 1, 2, Reading::Adopted);
        assert!(z.is_zero());
    }

    #[test]
    fn rel1_single_term() {
        let terms = expand_rel(&RelationInput::Rel1 { u: 1, gamma: g(0, 0, 0) }, Reading::Adopted);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].gamma, g(1, 0, 0));
        assert_eq!(terms[0].coeff, int(1));
    }

    #[test]
    fn rel2_two_terms() {
        let terms = expand_rel(&RelationInput::Rel2 { lambda: 0, mu: 0, omega: 1 }, Reading::Adopted);
        assert_eq!(terms.len(), 2);
    }

    #[test]
    fn hyper_operator_examples() {
        let p = plucker_form(Factor::A);
        assert!((&hyper_operator_apply(Factor::A, &p.pow(2)) - &p.scale(&int(6))).is_syntactically_zero());
        assert!(hyper_operator_apply(Factor::A, &series(&g(2, 1, 2), Factor::A)).is_syntactically_zero());
        assert!(pre1_holds(1, &g(1, 2, 1)));
    }

    #[test]
    fn f13_small() {
        assert!(f13_solve(&g(1, 1, 1)).is_some());
    }
}
