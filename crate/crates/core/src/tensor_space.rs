//! Highest vectors of `U ⊗ V`, their labels, weights and multiplicities.
//!
//! Two families span the highest vectors of a product of irreducibles with
//! highest weights `[m1, m2, 0]` and `[n1, n2, 0]`:
//!
//! * type 1: `a1^α b1^β a12^γ b12^δ (ab)^ω (aab)^φ (abb)^ψ / (α!β!γ!δ!ω!)`;
//! * type 2: `a1^α b1^β a12^γ b12^δ (abb)^φ (aab)^ψ (aabb)_{12,13}^θ / (α!β!γ!δ!θ!)`, `θ ≥ 1`.
//!
//! A label with `ω = θ = 0` belongs to both families and is listed once, as
//! type 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::BigInt;

use crate::error::{Cg3Error, Result};
use crate::exact_core::{inv_factorial, Echelon, Rational, SparseVector};
use crate::gl3_model::{weyl_dimension, DetPolynomial, DetVariable, Factor, GTDiagram, HighestWeight};

/// Which family a highest vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VectorType {
    One,
    Two,
}

impl VectorType {
    pub fn number(self) -> u8 {
        match self {
            VectorType::One => 1,
            VectorType::Two => 2,
        }
    }

    pub fn from_number(n: i64) -> Result<Self> {
        match n {
            1 => Ok(VectorType::One),
            2 => Ok(VectorType::Two),
            _ => Err(Cg3Error::InvalidLabel(format!("vector type must be 1 or 2, got {n}"))),
        }
    }
}

/// Highest weights of the two tensor factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightPair {
    pub w1: HighestWeight,
    pub w2: HighestWeight,
}

impl WeightPair {
    pub fn new(w1: HighestWeight, w2: HighestWeight) -> Self {
        WeightPair { w1, w2 }
    }

    pub fn from_ints(m1: i64, m2: i64, n1: i64, n2: i64) -> Result<Self> {
        Ok(WeightPair { w1: HighestWeight::new(m1, m2)?, w2: HighestWeight::new(n1, n2)? })
    }

    /// All pairs with first entries at most `max`.
    pub fn all_up_to(max: i64) -> Vec<WeightPair> {
        let ws = HighestWeight::all_up_to(max);
        ws.iter().flat_map(|&w1| ws.iter().map(move |&w2| WeightPair { w1, w2 })).collect()
    }

    pub fn product_dimension(&self) -> i64 {
        self.w1.dimension() * self.w2.dimension()
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.w1, self.w2)
    }
}

/// Exponent data selecting one highest vector.
///
/// For type 1, `phi` is the exponent of `(aab)` and `psi` that of `(abb)`;
/// for type 2 the roles are exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestVectorLabel {
    pub vtype: VectorType,
    pub alpha: i64,
    pub beta: i64,
    pub gamma_e: i64,
    pub delta: i64,
    pub omega: i64,
    pub phi: i64,
    pub psi: i64,
    pub theta: i64,
}

impl HighestVectorLabel {
    pub fn type1(alpha: i64, beta: i64, gamma_e: i64, delta: i64, omega: i64, phi: i64, psi: i64) -> Self {
        HighestVectorLabel { vtype: VectorType::One, alpha, beta, gamma_e, delta, omega, phi, psi, theta: 0 }
    }

    pub fn type2(alpha: i64, beta: i64, gamma_e: i64, delta: i64, phi: i64, psi: i64, theta: i64) -> Self {
        HighestVectorLabel { vtype: VectorType::Two, alpha, beta, gamma_e, delta, omega: 0, phi, psi, theta }
    }

    /// Solves for `α, β, γ, δ` given the weights and the selector exponents.
    pub fn from_selector(wp: &WeightPair, vtype: VectorType, omega: i64, phi: i64, psi: i64, theta: i64) -> Result<Self> {
        let (m1, m2, n1, n2) = (wp.w1.m1, wp.w1.m2, wp.w2.m1, wp.w2.m2);
        let label = match vtype {
            VectorType::One => {
                if theta != 0 {
                    return Err(Cg3Error::InvalidLabel("type 1 requires theta = 0".into()));
                }
                Self::type1(m1 - m2 - omega - psi, n1 - n2 - omega - phi, m2 - phi, n2 - psi, omega, phi, psi)
            }
            VectorType::Two => {
                if omega != 0 {
                    return Err(Cg3Error::InvalidLabel("type 2 requires omega = 0".into()));
                }
                Self::type2(m1 - m2 - phi, n1 - n2 - psi, m2 - theta - psi, n2 - phi - theta, phi, psi, theta)
            }
        };
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.alpha, self.beta, self.gamma_e, self.delta, self.omega, self.phi, self.psi, self.theta];
        if fields.iter().any(|&x| x < 0) {
            return Err(Cg3Error::InvalidLabel(format!("negative exponent in {self}")));
        }
        match self.vtype {
            VectorType::One if self.theta != 0 => Err(Cg3Error::InvalidLabel("type 1 requires theta = 0".into())),
            VectorType::Two if self.omega != 0 => Err(Cg3Error::InvalidLabel("type 2 requires omega = 0".into())),
            VectorType::Two if self.theta == 0 => {
                Err(Cg3Error::InvalidLabel("a type 2 label with theta = 0 is listed as type 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// The factor weights this label belongs to.
    pub fn weight_pair(&self) -> WeightPair {
        let (m2, m12, n2, n12) = match self.vtype {
            VectorType::One => (
                self.gamma_e + self.phi,
                self.alpha + self.omega + self.psi,
                self.delta + self.psi,
                self.beta + self.omega + self.phi,
            ),
            VectorType::Two => (
                self.gamma_e + self.theta + self.psi,
                self.alpha + self.phi,
                self.delta + self.phi + self.theta,
                self.beta + self.psi,
            ),
        };
        WeightPair { w1: HighestWeight { m1: m12 + m2, m2 }, w2: HighestWeight { m1: n12 + n2, m2: n2 } }
    }

    /// The CLI selector `(type, ω, φ, ψ, θ)`.
    pub fn selector(&self) -> [i64; 5] {
        [self.vtype.number() as i64, self.omega, self.phi, self.psi, self.theta]
    }

    /// The type-1 label whose dual produces the lowest vector of this type-2
    /// label, in the dual weights `(m1, m1 - m2)`, `(n1, n1 - n2)`.
    pub fn dual_type1(&self) -> Result<HighestVectorLabel> {
        if self.vtype != VectorType::Two {
            return Err(Cg3Error::InvalidLabel("only type 2 labels are dualised".into()));
        }
        Ok(HighestVectorLabel::type1(self.gamma_e, self.delta, self.alpha, self.beta, self.theta, self.phi, self.psi))
    }
}

impl fmt::Display for HighestVectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type{}(α={},β={},γ={},δ={},ω={},φ={},ψ={},θ={})",
            self.vtype.number(),
            self.alpha,
            self.beta,
            self.gamma_e,
            self.delta,
            self.omega,
            self.phi,
            self.psi,
            self.theta
        )
    }
}

/// All highest-vector labels for `wp`: type 1 first, then type 2.
pub fn enumerate_labels(wp: &WeightPair) -> Vec<HighestVectorLabel> {
    let (m1, m2, n1, n2) = (wp.w1.m1, wp.w1.m2, wp.w2.m1, wp.w2.m2);
    let mut out = Vec::new();
    for omega in 0..=(m1 - m2).min(n1 - n2) {
        for phi in 0..=m2.min(n1 - n2 - omega) {
            for psi in 0..=(m1 - m2 - omega).min(n2) {
                if let Ok(l) = HighestVectorLabel::from_selector(wp, VectorType::One, omega, phi, psi, 0) {
                    out.push(l);
                }
            }
        }
    }
    for theta in 1..=m2.min(n2) {
        for phi in 0..=(m1 - m2) {
            for psi in 0..=(n1 - n2) {
                if let Ok(l) = HighestVectorLabel::from_selector(wp, VectorType::Two, 0, phi, psi, theta) {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// Highest weight `[M1, M2, M3]` of the irreducible generated by the label.
pub fn label_weight(l: &HighestVectorLabel) -> [i64; 3] {
    let base = l.alpha + l.beta + l.gamma_e + l.delta;
    match l.vtype {
        VectorType::One => [
            base + l.omega + l.phi + l.psi,
            l.gamma_e + l.delta + l.omega + l.phi + l.psi,
            l.phi + l.psi,
        ],
        VectorType::Two => [
            base + l.phi + l.psi + 2 * l.theta,
            l.gamma_e + l.delta + l.phi + l.psi + l.theta,
            l.phi + l.psi + l.theta,
        ],
    }
}

fn u(x: i64) -> u32 {
    x as u32
}

const A1: DetVariable = DetVariable::Single(Factor::A, 1);
const B1: DetVariable = DetVariable::Single(Factor::B, 1);
const A3: DetVariable = DetVariable::Single(Factor::A, 3);
const B3: DetVariable = DetVariable::Single(Factor::B, 3);
const A12: DetVariable = DetVariable::Pair(Factor::A, 1, 2);
const B12: DetVariable = DetVariable::Pair(Factor::B, 1, 2);
const A23: DetVariable = DetVariable::Pair(Factor::A, 2, 3);
const B23: DetVariable = DetVariable::Pair(Factor::B, 2, 3);
const AB12: DetVariable = DetVariable::Mixed(1, 2);
const AABB1213: DetVariable = DetVariable::Quad((1, 2), (1, 3));
const AABB1323: DetVariable = DetVariable::Quad((1, 3), (2, 3));

/// The highest vector selected by the label.
pub fn label_function(l: &HighestVectorLabel) -> DetPolynomial {
    let norm = inv_factorial(l.alpha) * inv_factorial(l.beta) * inv_factorial(l.gamma_e) * inv_factorial(l.delta);
    match l.vtype {
        VectorType::One => DetPolynomial::monomial(
            norm * inv_factorial(l.omega),
            &[
                (A1, u(l.alpha)),
                (B1, u(l.beta)),
                (A12, u(l.gamma_e)),
                (B12, u(l.delta)),
                (AB12, u(l.omega)),
                (DetVariable::Aab, u(l.phi)),
                (DetVariable::Abb, u(l.psi)),
            ],
        ),
        VectorType::Two => DetPolynomial::monomial(
            norm * inv_factorial(l.theta),
            &[
                (A1, u(l.alpha)),
                (B1, u(l.beta)),
                (A12, u(l.gamma_e)),
                (B12, u(l.delta)),
                (DetVariable::Abb, u(l.phi)),
                (DetVariable::Aab, u(l.psi)),
                (AABB1213, u(l.theta)),
            ],
        ),
    }
}

/// The lowest vector of the irreducible generated by a type-2 label:
/// `a23^γ b23^δ a3^α b3^β (aabb)_{23,13}^θ (abb)^φ (aab)^ψ / (α!β!γ!δ!θ!)`,
/// with `(aabb)_{23,13} = -(aabb)_{13,23}`.
///
/// It equals `(-1)^θ` times the duality image of the dual type-1 label function.
pub fn case2_seed(l: &HighestVectorLabel) -> Result<DetPolynomial> {
    if l.vtype != VectorType::Two {
        return Err(Cg3Error::InvalidLabel("seed is defined for type 2 labels".into()));
    }
    let norm = inv_factorial(l.alpha) * inv_factorial(l.beta) * inv_factorial(l.gamma_e) * inv_factorial(l.delta) * inv_factorial(l.theta);
    let sign = if l.theta % 2 == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
    Ok(DetPolynomial::monomial(
        norm * sign,
        &[
            (A23, u(l.gamma_e)),
            (B23, u(l.delta)),
            (A3, u(l.alpha)),
            (B3, u(l.beta)),
            (AABB1323, u(l.theta)),
            (DetVariable::Abb, u(l.phi)),
            (DetVariable::Aab, u(l.psi)),
        ],
    ))
}

/// Number of labels of highest weight `w`.
pub fn multiplicity(wp: &WeightPair, w: [i64; 3]) -> usize {
    enumerate_labels(wp).iter().filter(|l| label_weight(l) == w).count()
}

/// Weight multiplicities of `U ⊗ V`, read off the Gelfand-Tsetlin patterns.
pub fn product_weight_multiplicities(wp: &WeightPair) -> HashMap<[i64; 3], i64> {
    let single = |w: &HighestWeight| {
        let mut m: HashMap<[i64; 3], i64> = HashMap::new();
        for d in w.diagrams() {
            *m.entry(d.weight()).or_default() += 1;
        }
        m
    };
    let mu = single(&wp.w1);
    let mv = single(&wp.w2);
    let mut out = HashMap::new();
    for (wa, ca) in &mu {
        for (wb, cb) in &mv {
            *out.entry([wa[0] + wb[0], wa[1] + wb[1], wa[2] + wb[2]]).or_default() += ca * cb;
        }
    }
    out
}

/// Multiplicity of the irreducible `w` in `U ⊗ V` from weight multiplicities
/// alone: `Σ_{σ ∈ S3} sgn(σ) · n(w + ρ - σρ)` with `ρ = (2, 1, 0)`.
pub fn brute_force_multiplicity(wp: &WeightPair, w: [i64; 3]) -> i64 {
    if !(w[0] >= w[1] && w[1] >= w[2]) {
        return 0;
    }
    let n = product_weight_multiplicities(wp);
    let rho = [2i64, 1, 0];
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1)];
    perms
        .iter()
        .map(|(p, sgn)| {
            let key = [w[0] + rho[0] - rho[p[0]], w[1] + rho[1] - rho[p[1]], w[2] + rho[2] - rho[p[2]]];
            sgn * n.get(&key).copied().unwrap_or(0)
        })
        .sum()
}

/// Embeds all label functions of `wp` and returns the rank of their span.
pub fn label_span_rank(wp: &WeightPair) -> (usize, usize) {
    let labels = enumerate_labels(wp);
    let mut ech: Echelon<Vec<u32>> = Echelon::new();
    for l in &labels {
        let v: SparseVector<Vec<u32>> = label_function(l).embed().into_term_map();
        ech.insert(v);
    }
    (ech.rank(), labels.len())
}

/// Sum of Weyl dimensions of the irreducibles generated by the labels.
pub fn decomposition_dimension(wp: &WeightPair) -> i64 {
    enumerate_labels(wp).iter().map(|l| weyl_dimension(label_weight(l))).sum()
}

/// Exponents `(ω, φ, ψ, θ)` of the general highest-vector monomial
/// `a1^α b1^β a12^γ b12^δ (ab)^ω (abb)^φ (aab)^ψ (aabb)_{12,13}^θ`
/// (no factorial normalisation; `α..δ` follow from the weights).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralLabel {
    pub omega: i64,
    pub phi: i64,
    pub psi: i64,
    pub theta: i64,
}

impl GeneralLabel {
    pub fn new(omega: i64, phi: i64, psi: i64, theta: i64) -> Self {
        GeneralLabel { omega, phi, psi, theta }
    }

    /// `(α, β, γ, δ)` for the given weights, or an error if any is negative.
    pub fn exponents(&self, wp: &WeightPair) -> Result<[i64; 4]> {
        let (m1, m2, n1, n2) = (wp.w1.m1, wp.w1.m2, wp.w2.m1, wp.w2.m2);
        let e = [
            m1 - m2 - self.omega - self.phi,
            n1 - n2 - self.omega - self.psi,
            m2 - self.theta - self.psi,
            n2 - self.phi - self.theta,
        ];
        if e.iter().chain([self.omega, self.phi, self.psi, self.theta].iter()).any(|&x| x < 0) {
            return Err(Cg3Error::InvalidLabel(format!("general exponents {self:?} do not fit {wp}")));
        }
        Ok(e)
    }

    pub fn is_basis(&self) -> bool {
        self.omega == 0 || self.theta == 0
    }
}

/// The general monomial `f(ω, φ, ψ, θ)`.
pub fn general_function(g: &GeneralLabel, wp: &WeightPair) -> Result<DetPolynomial> {
    let [alpha, beta, gamma_e, delta] = g.exponents(wp)?;
    Ok(DetPolynomial::monomial(
        Rational::from_integer(1.into()),
        &[
            (A1, u(alpha)),
            (B1, u(beta)),
            (A12, u(gamma_e)),
            (B12, u(delta)),
            (AB12, u(g.omega)),
            (DetVariable::Abb, u(g.phi)),
            (DetVariable::Aab, u(g.psi)),
            (AABB1213, u(g.theta)),
        ],
    ))
}

/// Rewrites `f(ω, φ, ψ, θ)` with
/// `f(ω,φ,ψ,θ) = f(ω-1,φ+1,ψ,θ-1) + f(ω-1,φ,ψ+1,θ-1)`
/// until every term has `ω = 0` or `θ = 0`. Equal terms are collected.
pub fn expand_general_label(g: &GeneralLabel, wp: &WeightPair) -> Result<Vec<(GeneralLabel, BigInt)>> {
    g.exponents(wp)?;
    let mut pending: BTreeMap<GeneralLabel, BigInt> = BTreeMap::new();
    pending.insert(*g, BigInt::from(1));
    let mut done: BTreeMap<GeneralLabel, BigInt> = BTreeMap::new();
    while let Some((cur, c)) = pending.pop_first() {
        if cur.is_basis() {
            *done.entry(cur).or_default() += c;
            continue;
        }
        for next in [
            GeneralLabel::new(cur.omega - 1, cur.phi + 1, cur.psi, cur.theta - 1),
            GeneralLabel::new(cur.omega - 1, cur.phi, cur.psi + 1, cur.theta - 1),
        ] {
            *pending.entry(next).or_default() += &c;
        }
    }
    Ok(done.into_iter().collect())
}

/// The basis label and scalar with `f(ω,φ,ψ,θ) = scalar · label_function`.
pub fn general_to_label(g: &GeneralLabel, wp: &WeightPair) -> Result<(HighestVectorLabel, Rational)> {
    let [alpha, beta, gamma_e, delta] = g.exponents(wp)?;
    let fact = |n: i64| crate::exact_core::factorial_q(n);
    if g.theta == 0 {
        let l = HighestVectorLabel::type1(alpha, beta, gamma_e, delta, g.omega, g.psi, g.phi);
        Ok((l, fact(alpha) * fact(beta) * fact(gamma_e) * fact(delta) * fact(g.omega)))
    } else if g.omega == 0 {
        let l = HighestVectorLabel::type2(alpha, beta, gamma_e, delta, g.phi, g.psi, g.theta);
        Ok((l, fact(alpha) * fact(beta) * fact(gamma_e) * fact(delta) * fact(g.theta)))
    } else {
        Err(Cg3Error::InvalidLabel(format!("{g:?} is not a basis label")))
    }
}

/// Diagrams of the irreducible generated by a label (any top row).
pub fn label_diagrams(l: &HighestVectorLabel) -> Vec<GTDiagram> {
    GTDiagram::enumerate(label_weight(l))
}
