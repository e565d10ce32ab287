//! Finite Γ-series over the lattice spanned by `(1,-1,-1,1)`.
//!
//! `F_γ(z) = Σ_k z^{γ + k·b} / Γ(γ + k·b + 1)` with `b = (1,-1,-1,1)`. The
//! reciprocal Γ vanishes at nonpositive integers, so only the `k` with all four
//! exponents nonnegative survive and every series is a polynomial.
//!
//! The classical `F_{2,1}` connection is not implemented as an operation: all
//! computation stays in Γ-series normal form.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Sub};

use num::{One, Zero};

use crate::error::{Cg3Error, Result};
use crate::exact_core::{inv_factorial, pow_rational, reciprocal_gamma_int, Rational, SparsePolynomial, VarSet};

/// The lattice `B = ℤ·(1,-1,-1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeB;

impl LatticeB {
    pub const GENERATOR: [i64; 4] = [1, -1, -1, 1];

    /// The multiple `k·(1,-1,-1,1)` as parameters.
    pub fn multiple(k: i64) -> GammaParams {
        GammaParams::new(k, -k, -k, k)
    }
}

/// Parameter vector `γ = (γ1, γ2, γ13, γ23)` of a Γ-series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaParams {
    pub g1: i64,
    pub g2: i64,
    pub g13: i64,
    pub g23: i64,
}

impl GammaParams {
    pub const fn new(g1: i64, g2: i64, g13: i64, g23: i64) -> Self {
        GammaParams { g1, g2, g13, g23 }
    }

    /// Parameters with `γ23 = 0`, the only shape arising from representations.
    pub const fn planar(g1: i64, g2: i64, g13: i64) -> Self {
        GammaParams { g1, g2, g13, g23: 0 }
    }

    pub const fn zero() -> Self {
        GammaParams::new(0, 0, 0, 0)
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.g1, self.g2, self.g13, self.g23]
    }

    pub fn from_array(a: [i64; 4]) -> Self {
        GammaParams::new(a[0], a[1], a[2], a[3])
    }

    /// Unit vector `e_i` for `i` in `0..4`.
    pub fn unit(i: usize) -> Self {
        let mut a = [0; 4];
        a[i] = 1;
        Self::from_array(a)
    }

    pub fn sum(&self) -> i64 {
        self.g1 + self.g2 + self.g13 + self.g23
    }

    /// `γ + k·(1,-1,-1,1)`, which defines the same series.
    pub fn shifted(&self, k: i64) -> Self {
        *self + LatticeB::multiple(k)
    }

    /// The range of `k` whose exponent vector is nonnegative.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = (-self.g1).max(-self.g23);
        let hi = self.g2.min(self.g13);
        (lo <= hi).then_some((lo, hi))
    }

    pub fn is_empty(&self) -> bool {
        self.support().is_none()
    }

    /// Exponent vectors and coefficients of the series, in increasing `k`.
    pub fn terms(&self) -> Vec<([u32; 4], Rational)> {
        let Some((lo, hi)) = self.support() else {
            return Vec::new();
        };
        (lo..=hi)
            .map(|k| {
                let e = self.shifted(k).as_array();
                let coeff = e.iter().fold(Rational::one(), |acc, &x| acc * inv_factorial(x));
                (e.map(|x| x as u32), coeff)
            })
            .collect()
    }
}

impl Add for GammaParams {
    type Output = GammaParams;
    fn add(self, o: GammaParams) -> GammaParams {
        GammaParams::new(self.g1 + o.g1, self.g2 + o.g2, self.g13 + o.g13, self.g23 + o.g23)
    }
}

impl Sub for GammaParams {
    type Output = GammaParams;
    fn sub(self, o: GammaParams) -> GammaParams {
        GammaParams::new(self.g1 - o.g1, self.g2 - o.g2, self.g13 - o.g13, self.g23 - o.g23)
    }
}

impl fmt::Display for GammaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.g1, self.g2, self.g13, self.g23)
    }
}

/// The four standard series variables `z1..z4`.
pub fn standard_vars() -> VarSet {
    VarSet::new(["z1", "z2", "z3", "z4"])
}

/// Expands `F_γ` over `vars`, placing `z_i` at position `slots[i]`.
pub fn expand_into(gamma: &GammaParams, vars: &VarSet, slots: [usize; 4]) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(vars);
    for (e, c) in gamma.terms() {
        let mut exps = vec![0; vars.len()];
        for (slot, k) in slots.iter().zip(e) {
            exps[*slot] += k;
        }
        p.add_term(exps, c);
    }
    p
}

/// Expands `F_γ` as a polynomial in the four named variables.
pub fn expand_gamma_series(gamma: &GammaParams, names: [&str; 4]) -> SparsePolynomial {
    let vars = VarSet::new(names);
    expand_into(gamma, &vars, [0, 1, 2, 3])
}

/// Expansion over the standard variables `z1..z4`.
pub fn expand_standard(gamma: &GammaParams) -> SparsePolynomial {
    expand_into(gamma, &standard_vars(), [0, 1, 2, 3])
}

thread_local! {
    static F1_CACHE: RefCell<HashMap<GammaParams, Rational>> = RefCell::new(HashMap::new());
}

/// `F_γ(1,1,1,1)` by direct finite summation.
pub fn eval_at_one(gamma: &GammaParams) -> Rational {
    if let Some(v) = F1_CACHE.with(|c| c.borrow().get(gamma).cloned()) {
        return v;
    }
    let v = gamma.terms().into_iter().fold(Rational::zero(), |acc, (_, c)| acc + c);
    F1_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 1 << 16 {
            c.clear();
        }
        c.insert(*gamma, v.clone());
    });
    v
}

/// Closed form `Γ(g1+g2+g13+1) / (Γ(g2+1)Γ(g13+1)Γ(g1+g2+1)Γ(g1+g13+1))`.
///
/// Defined only when `γ23 = 0` and every Γ argument involved is positive;
/// `None` otherwise.
pub fn fot1_closed_form(gamma: &GammaParams) -> Option<Rational> {
    let GammaParams { g1, g2, g13, g23 } = *gamma;
    if g23 != 0 {
        return None;
    }
    let args = [g1 + 1, g2 + 1, g13 + 1, g1 + g2 + 1, g1 + g13 + 1, g1 + g2 + g13 + 1];
    if args.iter().any(|&a| a < 1) {
        return None;
    }
    let num = reciprocal_gamma_int(g1 + g2 + g13 + 1).recip();
    Some(num * reciprocal_gamma_int(g2 + 1) * reciprocal_gamma_int(g13 + 1) * reciprocal_gamma_int(g1 + g2 + 1) * reciprocal_gamma_int(g1 + g13 + 1))
}

/// Residuals of the box operator `∂1∂4 - ∂2∂3` and of the three Euler
/// operators `z1∂1 + z2∂2 - (γ1+γ2)`, `z1∂1 + z3∂3 - (γ1+γ13)`,
/// `z1∂1 - z4∂4 - (γ1-γ23)` applied to `F_γ`.
pub fn gkz_residual(gamma: &GammaParams) -> [SparsePolynomial; 4] {
    let f = expand_standard(gamma);
    let d: Vec<SparsePolynomial> = (0..4).map(|i| f.partial_derivative(i)).collect();
    let vars = f.vars().clone();
    let z = |i: usize| SparsePolynomial::variable(&vars, i);
    let euler = |i: usize| &z(i) * &d[i];
    let c = |v: i64| f.scale(&Rational::from_integer(v.into()));
    let boxop = &d[0].partial_derivative(3) - &d[1].partial_derivative(2);
    let e12 = &(&euler(0) + &euler(1)) - &c(gamma.g1 + gamma.g2);
    let e13 = &(&euler(0) + &euler(2)) - &c(gamma.g1 + gamma.g13);
    let e14 = &(&euler(0) - &euler(3)) - &c(gamma.g1 - gamma.g23);
    [boxop, e12, e13, e14]
}

/// Checks `F_γ(z1, z2, z3, z2·z3/z1) = z1^γ1 z2^γ2 z3^γ13 F_γ(1)`.
pub fn restriction_check(gamma: &GammaParams, point: [Rational; 3]) -> Result<bool> {
    if gamma.g23 != 0 {
        return Err(Cg3Error::UnsupportedGamma(format!("restriction needs g23 = 0, got {gamma}")));
    }
    if point.iter().any(|z| z.is_zero()) {
        return Err(Cg3Error::ZeroCoordinate);
    }
    let [z1, z2, z3] = point;
    let z4 = &z2 * &z3 / &z1;
    let lhs = expand_standard(gamma).evaluate(&[z1.clone(), z2.clone(), z3.clone(), z4]);
    let rhs = pow_rational(&z1, gamma.g1) * pow_rational(&z2, gamma.g2) * pow_rational(&z3, gamma.g13) * eval_at_one(gamma);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{int, rat};

    fn g(a: i64, b: i64, c: i64, d: i64) -> GammaParams {
        GammaParams::new(a, b, c, d)
    }

    #[test]
    fn expansion_examples() {
        let z = standard_vars();
        assert_eq!(expand_standard(&g(0, 0, 0, 0)), SparsePolynomial::one(&z));
        let z1 = SparsePolynomial::variable(&z, 0);
        let z2 = SparsePolynomial::variable(&z, 1);
        let z3 = SparsePolynomial::variable(&z, 2);
        let z4 = SparsePolynomial::variable(&z, 3);
        assert_eq!(expand_standard(&g(1, 0, 1, 0)), &z1 * &z3);
        assert_eq!(expand_standard(&g(0, 1, 1, 0)), &(&z2 * &z3) + &(&z1 * &z4));
    }

    #[test]
    fn empty_support_is_zero() {
        assert!(g(-1, 0, 0, 0).is_empty());
        assert!(expand_standard(&g(-1, 0, 0, 0)).is_zero());
        assert_eq!(eval_at_one(&g(0, -1, 3, 0)), int(0));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_at_one(&g(0, 0, 0, 0)), int(1));
        assert_eq!(eval_at_one(&g(1, 1, 1, 0)), rat(3, 2));
        assert_eq!(fot1_closed_form(&g(1, 1, 1, 0)), Some(rat(3, 2)));
        assert_eq!(eval_at_one(&g(2, 1, 0, 0)), rat(1, 2));
    }

    #[test]
    fn gkz_examples() {
        for gamma in [g(1, 1, 1, 0), g(0, 0, 0, 0), g(3, 2, 1, 0)] {
            assert!(gkz_residual(&gamma).iter().all(|r| r.is_zero()), "{gamma}");
        }
    }

    #[test]
    fn restriction_examples() {
        assert!(restriction_check(&g(1, 1, 1, 0), [int(1), int(1), int(1)]).unwrap());
        assert!(restriction_check(&g(0, 0, 0, 0), [int(7), rat(-1, 3), int(2)]).unwrap());
        assert!(restriction_check(&g(2, 1, 1, 0), [int(2), int(3), int(5)]).unwrap());
        assert_eq!(restriction_check(&g(1, 1, 1, 0), [int(0), int(1), int(1)]), Err(Cg3Error::ZeroCoordinate));
    }

    #[test]
    fn named_expansion_uses_given_names() {
        let p = expand_gamma_series(&g(1, 0, 0, 0), ["a1", "a2", "a13", "a23"]);
        assert_eq!(p.vars().names()[0], "a1");
        assert_eq!(p.len(), 1);
    }
}
