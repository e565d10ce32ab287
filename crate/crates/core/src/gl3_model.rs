//! Polynomial realisation of gl₃ representations on functions on GL₃ × GL₃.
//!
//! Functions are written in an alphabet of twenty determinant variables
//! (minors of the top rows of two matrices `a` and `b`, plus mixed minors of
//! stacked rows). That alphabet satisfies Plücker relations, so equality is
//! decided after embedding into the free ring of the twelve matrix entries
//! `x^{(a)}_{r,i}`, `x^{(b)}_{r,i}` (rows `r = 1, 2`, columns `i = 1..3`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;


use crate::error::{Cg3Error, Result};
use crate::exact_core::{int, inv_factorial, Rational, SparsePolynomial, VarSet};
use crate::gamma_series::{expand_into, GammaParams};

/// One of the two tensor factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    A,
    B,
}

impl Factor {
    fn letter(self) -> char {
        match self {
            Factor::A => 'a',
            Factor::B => 'b',
        }
    }

    fn offset(self) -> usize {
        match self {
            Factor::A => 0,
            Factor::B => 6,
        }
    }
}

/// A determinant variable. Column indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DetVariable {
    /// `a_i` or `b_i`.
    Single(Factor, u8),
    /// `a_{i,j}` or `b_{i,j}` with `i < j`.
    Pair(Factor, u8, u8),
    /// `(ab)_{i,j} = a_i b_j - a_j b_i` with `i < j`.
    Mixed(u8, u8),
    /// The 3×3 determinant of rows `a¹, a², b¹`.
    Aab,
    /// The 3×3 determinant of rows `a¹, b¹, b²`.
    Abb,
    /// `(aabb)_{S,T} = a_S b_T - a_T b_S` for column pairs `S < T`.
    Quad((u8, u8), (u8, u8)),
}

/// Number of determinant variables.
pub const ALPHABET_SIZE: usize = 20;

const PAIRS: [(u8, u8); 3] = [(1, 2), (1, 3), (2, 3)];

/// The alphabet in its fixed order.
pub fn alphabet() -> &'static [DetVariable; ALPHABET_SIZE] {
    static ALPHA: OnceLock<[DetVariable; ALPHABET_SIZE]> = OnceLock::new();
    ALPHA.get_or_init(|| {
        let mut v = Vec::with_capacity(ALPHABET_SIZE);
        for f in [Factor::A, Factor::B] {
            for i in 1..=3 {
                v.push(DetVariable::Single(f, i));
            }
            for (i, j) in PAIRS {
                v.push(DetVariable::Pair(f, i, j));
            }
        }
        for (i, j) in PAIRS {
            v.push(DetVariable::Mixed(i, j));
        }
        v.push(DetVariable::Aab);
        v.push(DetVariable::Abb);
        v.push(DetVariable::Quad((1, 2), (1, 3)));
        v.push(DetVariable::Quad((1, 2), (2, 3)));
        v.push(DetVariable::Quad((1, 3), (2, 3)));
        v.try_into().expect("alphabet has twenty variables")
    })
}

fn pair_slot(i: u8, j: u8) -> usize {
    match (i, j) {
        (1, 2) => 0,
        (1, 3) => 1,
        (2, 3) => 2,
        _ => unreachable!("pair ({i},{j}) is not canonical"),
    }
}

/// Orders a column pair; `None` for a repeated column.
fn canonical_pair(i: u8, j: u8) -> Option<(i64, (u8, u8))> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((1, (i, j))),
        std::cmp::Ordering::Greater => Some((-1, (j, i))),
        std::cmp::Ordering::Equal => None,
    }
}

/// `E_{p,q}` on a column pair, by the derivation rule on both slots.
fn act_on_pair(p: u8, q: u8, (i, j): (u8, u8)) -> Vec<(i64, (u8, u8))> {
    let mut out = Vec::with_capacity(2);
    if i == q {
        out.extend(canonical_pair(p, j));
    }
    if j == q {
        out.extend(canonical_pair(i, p));
    }
    out
}

impl DetVariable {
    pub fn index(&self) -> usize {
        match *self {
            DetVariable::Single(f, i) => f.offset() + (i as usize - 1),
            DetVariable::Pair(f, i, j) => f.offset() + 3 + pair_slot(i, j),
            DetVariable::Mixed(i, j) => 12 + pair_slot(i, j),
            DetVariable::Aab => 15,
            DetVariable::Abb => 16,
            DetVariable::Quad(s, t) => match (s, t) {
                ((1, 2), (1, 3)) => 17,
                ((1, 2), (2, 3)) => 18,
                ((1, 3), (2, 3)) => 19,
                _ => unreachable!("quad variable not canonical"),
            },
        }
    }

    pub fn name(&self) -> String {
        match *self {
            DetVariable::Single(f, i) => format!("{}{i}", f.letter()),
            DetVariable::Pair(f, i, j) => format!("{}{i}{j}", f.letter()),
            DetVariable::Mixed(i, j) => format!("ab{i}{j}"),
            DetVariable::Aab => "aab".into(),
            DetVariable::Abb => "abb".into(),
            DetVariable::Quad((i, j), (k, l)) => format!("aabb{i}{j}{k}{l}"),
        }
    }

    /// Column weight `(E11, E22, E33)` eigenvalues.
    pub fn weight(&self) -> [i64; 3] {
        let mut w = [0; 3];
        let mut bump = |c: u8| w[c as usize - 1] += 1;
        match *self {
            DetVariable::Single(_, i) => bump(i),
            DetVariable::Pair(_, i, j) | DetVariable::Mixed(i, j) => {
                bump(i);
                bump(j)
            }
            DetVariable::Aab | DetVariable::Abb => {
                bump(1);
                bump(2);
                bump(3)
            }
            DetVariable::Quad((i, j), (k, l)) => {
                bump(i);
                bump(j);
                bump(k);
                bump(l)
            }
        }
        w
    }

    /// `E_{p,q}` applied to this variable, as a signed sum of variables.
    pub fn generator_image(&self, p: u8, q: u8) -> Vec<(i64, DetVariable)> {
        match *self {
            DetVariable::Single(f, i) => {
                if i == q {
                    vec![(1, DetVariable::Single(f, p))]
                } else {
                    Vec::new()
                }
            }
            DetVariable::Pair(f, i, j) => {
                act_on_pair(p, q, (i, j)).into_iter().map(|(s, (x, y))| (s, DetVariable::Pair(f, x, y))).collect()
            }
            DetVariable::Mixed(i, j) => {
                act_on_pair(p, q, (i, j)).into_iter().map(|(s, (x, y))| (s, DetVariable::Mixed(x, y))).collect()
            }
            DetVariable::Aab | DetVariable::Abb => {
                if p == q {
                    vec![(1, *self)]
                } else {
                    Vec::new()
                }
            }
            DetVariable::Quad(s, t) => {
                let mut out = Vec::new();
                for (sign, s2) in act_on_pair(p, q, s) {
                    out.extend(quad(s2, t).map(|(c, v)| (sign * c, v)));
                }
                for (sign, t2) in act_on_pair(p, q, t) {
                    out.extend(quad(s, t2).map(|(c, v)| (sign * c, v)));
                }
                out
            }
        }
    }
}

/// Canonical form of `(aabb)_{S,T}`, which is antisymmetric in `S, T`.
fn quad(s: (u8, u8), t: (u8, u8)) -> Option<(i64, DetVariable)> {
    match s.cmp(&t) {
        std::cmp::Ordering::Less => Some((1, DetVariable::Quad(s, t))),
        std::cmp::Ordering::Greater => Some((-1, DetVariable::Quad(t, s))),
        std::cmp::Ordering::Equal => None,
    }
}

impl fmt::Display for DetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The variable set of the determinant alphabet.
pub fn det_vars() -> &'static VarSet {
    static VARS: OnceLock<VarSet> = OnceLock::new();
    VARS.get_or_init(|| VarSet::new(alphabet().iter().map(|v| v.name())))
}

/// The twelve matrix-entry variables `xa11..xa23, xb11..xb23`.
pub fn matrix_vars() -> &'static VarSet {
    static VARS: OnceLock<VarSet> = OnceLock::new();
    VARS.get_or_init(|| {
        let mut names = Vec::with_capacity(12);
        for f in ['a', 'b'] {
            for r in 1..=2 {
                for c in 1..=3 {
                    names.push(format!("x{f}{r}{c}"));
                }
            }
        }
        VarSet::new(names)
    })
}

/// Index of `x^{(f)}_{r,c}` in [`matrix_vars`].
pub fn matrix_index(f: Factor, row: u8, col: u8) -> usize {
    f.offset() + 3 * (row as usize - 1) + (col as usize - 1)
}

fn x(f: Factor, row: u8, col: u8) -> SparsePolynomial {
    SparsePolynomial::variable(matrix_vars(), matrix_index(f, row, col))
}

fn minor2(r1: (Factor, u8), r2: (Factor, u8), i: u8, j: u8) -> SparsePolynomial {
    &(&x(r1.0, r1.1, i) * &x(r2.0, r2.1, j)) - &(&x(r1.0, r1.1, j) * &x(r2.0, r2.1, i))
}

fn minor3(rows: [(Factor, u8); 3]) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(matrix_vars());
    let perms: [([u8; 3], i64); 6] =
        [([1, 2, 3], 1), ([1, 3, 2], -1), ([2, 1, 3], -1), ([2, 3, 1], 1), ([3, 1, 2], 1), ([3, 2, 1], -1)];
    for (perm, sign) in perms {
        let mut t = SparsePolynomial::constant(matrix_vars(), int(sign));
        for (k, (f, r)) in rows.iter().enumerate() {
            t = &t * &x(*f, *r, perm[k]);
        }
        out += &t;
    }
    out
}

fn pair_minor(f: Factor, (i, j): (u8, u8)) -> SparsePolynomial {
    minor2((f, 1), (f, 2), i, j)
}

/// Matrix-entry image of a determinant variable.
pub fn embed_variable(v: &DetVariable) -> SparsePolynomial {
    match *v {
        DetVariable::Single(f, i) => x(f, 1, i),
        DetVariable::Pair(f, i, j) => pair_minor(f, (i, j)),
        DetVariable::Mixed(i, j) => minor2((Factor::A, 1), (Factor::B, 1), i, j),
        DetVariable::Aab => minor3([(Factor::A, 1), (Factor::A, 2), (Factor::B, 1)]),
        DetVariable::Abb => minor3([(Factor::A, 1), (Factor::B, 1), (Factor::B, 2)]),
        DetVariable::Quad(s, t) => {
            &(&pair_minor(Factor::A, s) * &pair_minor(Factor::B, t)) - &(&pair_minor(Factor::A, t) * &pair_minor(Factor::B, s))
        }
    }
}

fn variable_images() -> &'static [SparsePolynomial] {
    static IMAGES: OnceLock<Vec<SparsePolynomial>> = OnceLock::new();
    IMAGES.get_or_init(|| alphabet().iter().map(embed_variable).collect())
}

/// A polynomial in the determinant alphabet.
///
/// Two values compare equal when their matrix-entry embeddings agree, so
/// expressions differing by a Plücker relation are equal.
#[derive(Clone)]
pub struct DetPolynomial(SparsePolynomial);

impl DetPolynomial {
    pub fn zero() -> Self {
        DetPolynomial(SparsePolynomial::zero(det_vars()))
    }

    pub fn one() -> Self {
        DetPolynomial(SparsePolynomial::one(det_vars()))
    }

    pub fn constant(c: Rational) -> Self {
        DetPolynomial(SparsePolynomial::constant(det_vars(), c))
    }

    pub fn var(v: DetVariable) -> Self {
        DetPolynomial(SparsePolynomial::variable(det_vars(), v.index()))
    }

    /// `c · Π v^k` for the listed variables and exponents.
    pub fn monomial(coeff: Rational, factors: &[(DetVariable, u32)]) -> Self {
        let mut e = vec![0; ALPHABET_SIZE];
        for (v, k) in factors {
            e[v.index()] += k;
        }
        DetPolynomial(SparsePolynomial::monomial(det_vars(), e, coeff))
    }

    /// Wraps a polynomial over (a subset of) the determinant alphabet.
    pub fn from_poly(p: &SparsePolynomial) -> Self {
        DetPolynomial(p.align_to(det_vars()))
    }

    pub fn as_poly(&self) -> &SparsePolynomial {
        &self.0
    }

    /// True when the determinant-alphabet normal form has no terms. A
    /// polynomial can be nonzero here yet vanish as a function.
    pub fn is_syntactically_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero() || self.embed().is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DetPolynomial(self.0.scale(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        DetPolynomial(self.0.pow(n))
    }

    pub fn embed(&self) -> SparsePolynomial {
        embed_matrix_entries(self)
    }

    /// Splits into components of constant monomial weight.
    pub fn weight_components(&self) -> BTreeMap<[i64; 3], DetPolynomial> {
        let mut out: BTreeMap<[i64; 3], DetPolynomial> = BTreeMap::new();
        for (e, c) in self.0.terms() {
            let w = monomial_weight(e);
            out.entry(w).or_insert_with(DetPolynomial::zero).0.add_term(e.clone(), c.clone());
        }
        out
    }
}

fn monomial_weight(e: &[u32]) -> [i64; 3] {
    let mut w = [0i64; 3];
    for (v, &k) in alphabet().iter().zip(e) {
        if k > 0 {
            let vw = v.weight();
            for c in 0..3 {
                w[c] += vw[c] * k as i64;
            }
        }
    }
    w
}

impl PartialEq for DetPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0 || (&self.0 - &other.0).is_zero() || embed_matrix_entries(&(self - other)).is_zero()
    }
}

impl Eq for DetPolynomial {}

impl fmt::Debug for DetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for DetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for &DetPolynomial {
    type Output = DetPolynomial;
    fn add(self, rhs: &DetPolynomial) -> DetPolynomial {
        DetPolynomial(&self.0 + &rhs.0)
    }
}

impl Sub for &DetPolynomial {
    type Output = DetPolynomial;
    fn sub(self, rhs: &DetPolynomial) -> DetPolynomial {
        DetPolynomial(&self.0 - &rhs.0)
    }
}

impl Mul for &DetPolynomial {
    type Output = DetPolynomial;
    fn mul(self, rhs: &DetPolynomial) -> DetPolynomial {
        DetPolynomial(&self.0 * &rhs.0)
    }
}

impl Neg for &DetPolynomial {
    type Output = DetPolynomial;
    fn neg(self) -> DetPolynomial {
        DetPolynomial(-&self.0)
    }
}

impl std::ops::AddAssign<&DetPolynomial> for DetPolynomial {
    fn add_assign(&mut self, rhs: &DetPolynomial) {
        self.0 += &rhs.0;
    }
}

/// Substitutes every determinant variable by its minor.
pub fn embed_matrix_entries(p: &DetPolynomial) -> SparsePolynomial {
    p.0.compose(variable_images(), matrix_vars())
}

/// `E_{i,j}` acting as a derivation on the determinant alphabet.
pub fn generator_action(i: u8, j: u8, p: &DetPolynomial) -> DetPolynomial {
    assert!((1..=3).contains(&i) && (1..=3).contains(&j), "generator indices are 1..3");
    let images: Vec<Vec<(i64, usize)>> = alphabet()
        .iter()
        .map(|v| v.generator_image(i, j).into_iter().map(|(s, w)| (s, w.index())).collect())
        .collect();
    let mut out = SparsePolynomial::zero(det_vars());
    for (e, c) in p.0.terms() {
        for (vi, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for &(sign, wi) in &images[vi] {
                let mut ne = e.clone();
                ne[vi] -= 1;
                ne[wi] += 1;
                out.add_term(ne, c * int(sign * k as i64));
            }
        }
    }
    DetPolynomial(out)
}

/// `Σ_r x_{r,i} ∂/∂x_{r,j}` over both factors, on the matrix-entry ring.
pub fn matrix_generator_action(i: u8, j: u8, p: &SparsePolynomial) -> SparsePolynomial {
    let p = p.align_to(matrix_vars());
    let mut out = SparsePolynomial::zero(matrix_vars());
    for (e, c) in p.terms() {
        for f in [Factor::A, Factor::B] {
            for r in 1..=2 {
                let from = matrix_index(f, r, j);
                let k = e[from];
                if k == 0 {
                    continue;
                }
                let to = matrix_index(f, r, i);
                let mut ne = e.clone();
                ne[from] -= 1;
                ne[to] += 1;
                out.add_term(ne, c * int(k as i64));
            }
        }
    }
    out
}

/// Weight of a matrix-entry monomial, summed over columns.
pub fn matrix_monomial_weight(e: &[u32]) -> [i64; 3] {
    let mut w = [0i64; 3];
    for (idx, &k) in e.iter().enumerate() {
        w[idx % 3] += k as i64;
    }
    w
}

/// The common weight of a nonzero weight vector.
pub fn weight_of(p: &DetPolynomial) -> Result<[i64; 3]> {
    let emb = p.embed();
    let mut weights = emb.terms().map(|(e, _)| matrix_monomial_weight(e));
    let first = weights.next().ok_or(Cg3Error::ZeroPolynomial)?;
    if weights.all(|w| w == first) {
        Ok(first)
    } else {
        Err(Cg3Error::NotAWeightVector)
    }
}

/// Gelfand-Tsetlin pattern `(m1, m2, m3; k1, k2; s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTDiagram {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    pub k1: i64,
    pub k2: i64,
    pub s: i64,
}

impl GTDiagram {
    pub fn new(m1: i64, m2: i64, m3: i64, k1: i64, k2: i64, s: i64) -> Result<Self> {
        let d = GTDiagram { m1, m2, m3, k1, k2, s };
        if d.is_valid() {
            Ok(d)
        } else {
            Err(Cg3Error::InvalidDiagram(d.as_array()))
        }
    }

    pub fn from_array(a: [i64; 6]) -> Result<Self> {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }

    pub fn is_valid(&self) -> bool {
        self.m1 >= self.k1 && self.k1 >= self.m2 && self.m2 >= self.k2 && self.k2 >= self.m3 && self.k1 >= self.s && self.s >= self.k2
    }

    pub fn as_array(&self) -> [i64; 6] {
        [self.m1, self.m2, self.m3, self.k1, self.k2, self.s]
    }

    pub fn top(&self) -> [i64; 3] {
        [self.m1, self.m2, self.m3]
    }

    /// `(s, k1 + k2 - s, m1 + m2 + m3 - k1 - k2)`.
    pub fn weight(&self) -> [i64; 3] {
        [self.s, self.k1 + self.k2 - self.s, self.m1 + self.m2 + self.m3 - self.k1 - self.k2]
    }

    /// All patterns with the given top row, in lexicographic order.
    pub fn enumerate(top: [i64; 3]) -> Vec<GTDiagram> {
        let [m1, m2, m3] = top;
        let mut out = Vec::new();
        if !(m1 >= m2 && m2 >= m3) {
            return out;
        }
        for k1 in m2..=m1 {
            for k2 in m3..=m2 {
                for s in k2..=k1 {
                    out.push(GTDiagram { m1, m2, m3, k1, k2, s });
                }
            }
        }
        out
    }
}

impl fmt::Display for GTDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{},{};{})", self.m1, self.m2, self.m3, self.k1, self.k2, self.s)
    }
}

/// Dimension of the irreducible gl₃ module with highest weight `w`.
pub fn weyl_dimension(w: [i64; 3]) -> i64 {
    let a = w[0] - w[1];
    let b = w[1] - w[2];
    if a < 0 || b < 0 {
        return 0;
    }
    (1 + a) * (1 + b) * (2 + a + b) / 2
}

/// Highest weight `[m1, m2, 0]` of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    pub m1: i64,
    pub m2: i64,
}

impl HighestWeight {
    pub fn new(m1: i64, m2: i64) -> Result<Self> {
        if m1 >= m2 && m2 >= 0 {
            Ok(HighestWeight { m1, m2 })
        } else {
            Err(Cg3Error::InvalidWeight(m1, m2))
        }
    }

    pub fn triple(&self) -> [i64; 3] {
        [self.m1, self.m2, 0]
    }

    pub fn dimension(&self) -> i64 {
        weyl_dimension(self.triple())
    }

    pub fn diagrams(&self) -> Vec<GTDiagram> {
        GTDiagram::enumerate(self.triple())
    }

    pub fn top_diagram(&self) -> GTDiagram {
        GTDiagram { m1: self.m1, m2: self.m2, m3: 0, k1: self.m1, k2: self.m2, s: self.m1 }
    }

    /// All highest weights with `m1 <= max`.
    pub fn all_up_to(max: i64) -> Vec<HighestWeight> {
        (0..=max).flat_map(|m1| (0..=m1).map(move |m2| HighestWeight { m1, m2 })).collect()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},0]", self.m1, self.m2)
    }
}

fn single(f: Factor, i: u8) -> DetVariable {
    DetVariable::Single(f, i)
}

fn pair(f: Factor, i: u8, j: u8) -> DetVariable {
    DetVariable::Pair(f, i, j)
}

/// The highest vector `x1^{m1-m2}/(m1-m2)! · x12^{m2}/m2!` of one factor.
pub fn stva(w: &HighestWeight, f: Factor) -> DetPolynomial {
    let c = inv_factorial(w.m1 - w.m2) * inv_factorial(w.m2);
    DetPolynomial::monomial(c, &[(single(f, 1), (w.m1 - w.m2) as u32), (pair(f, 1, 2), w.m2 as u32)])
}

/// The Γ-series parameters `(s - m2, k1 - s, m2 - k2, 0)` of a diagram.
pub fn diagram_gamma(d: &GTDiagram) -> GammaParams {
    GammaParams::planar(d.s - d.m2, d.k1 - d.s, d.m2 - d.k2)
}

/// `x3^{m1-k1}/(m1-k1)! · x12^{k2}/k2! · F_γ(x1, x2, x13, x23)` for a pattern
/// with `m3 = 0`.
pub fn gt_vector(d: &GTDiagram, f: Factor) -> Result<DetPolynomial> {
    if !d.is_valid() || d.m3 != 0 {
        return Err(Cg3Error::InvalidDiagram(d.as_array()));
    }
    let slots = [single(f, 1).index(), single(f, 2).index(), pair(f, 1, 3).index(), pair(f, 2, 3).index()];
    let series = expand_into(&diagram_gamma(d), det_vars(), slots);
    let prefix = DetPolynomial::monomial(
        inv_factorial(d.m1 - d.k1) * inv_factorial(d.k2),
        &[(single(f, 3), (d.m1 - d.k1) as u32), (pair(f, 1, 2), d.k2 as u32)],
    );
    Ok(&prefix * &DetPolynomial(series))
}

/// How the inverse in `∇31 = E31 + (E11 - E22 + 1)^{-1} E32 E21` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nabla31Reading {
    /// The inverse applied to the output of `E32 E21`, exactly as written.
    Literal,
    /// `((E11 - E22 + 1) E31 + E32 E21) / (E11 - m3 + 1)`, where the first
    /// factor acts on the output and the divisor on the input; `m3` is the
    /// third highest-weight entry of the ambient irreducible.
    Adopted { m3: i64 },
}

/// A step operator of the Gelfand-Tsetlin construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    Nabla31(Nabla31Reading),
    /// `((E22 - E11 + 1)(-E13) + E23 E12) / (m1 - E11 + 1)`, the raising
    /// counterpart used from a lowest vector; `m1` is the first
    /// highest-weight entry.
    Nabla13 { m1: i64 },
    E32,
    E21,
    E23,
    E12,
}

fn singular(context: String) -> Cg3Error {
    Cg3Error::SingularInverse { context }
}

fn ladder_once(op: LadderOp, p: &DetPolynomial) -> Result<DetPolynomial> {
    let e = |i, j, q: &DetPolynomial| generator_action(i, j, q);
    match op {
        LadderOp::E32 => Ok(e(3, 2, p)),
        LadderOp::E21 => Ok(e(2, 1, p)),
        LadderOp::E23 => Ok(e(2, 3, p)),
        LadderOp::E12 => Ok(e(1, 2, p)),
        LadderOp::Nabla31(reading) => {
            let mut out = DetPolynomial::zero();
            for (w, comp) in p.weight_components() {
                let direct = e(3, 1, &comp);
                let corr = e(3, 2, &e(2, 1, &comp));
                match reading {
                    Nabla31Reading::Literal => {
                        out += &direct;
                        if !corr.is_syntactically_zero() {
                            let h1 = w[0] - w[1];
                            if h1 == 0 {
                                return Err(singular(format!("E11 - E22 + 1 vanishes at weight {w:?}")));
                            }
                            out += &corr.scale(&Rational::new(1.into(), h1.into()));
                        }
                    }
                    Nabla31Reading::Adopted { m3 } => {
                        let num = &direct.scale(&int(w[0] - w[1])) + &corr;
                        if num.is_syntactically_zero() {
                            continue;
                        }
                        let den = w[0] - m3 + 1;
                        if den == 0 {
                            return Err(singular(format!("E11 - m3 + 1 vanishes at weight {w:?}")));
                        }
                        out += &num.scale(&Rational::new(1.into(), den.into()));
                    }
                }
            }
            Ok(out)
        }
        LadderOp::Nabla13 { m1 } => {
            let mut out = DetPolynomial::zero();
            for (w, comp) in p.weight_components() {
                let direct = e(1, 3, &comp);
                let corr = e(2, 3, &e(1, 2, &comp));
                let num = &direct.scale(&int(w[0] - w[1])) + &corr;
                if num.is_syntactically_zero() {
                    continue;
                }
                let den = m1 - w[0] + 1;
                if den == 0 {
                    return Err(singular(format!("m1 - E11 + 1 vanishes at weight {w:?}")));
                }
                out += &num.scale(&Rational::new(1.into(), den.into()));
            }
            Ok(out)
        }
    }
}

/// Applies `op` `power` times; division by `power!` is left to the caller.
pub fn lowering_apply(op: LadderOp, power: u32, p: &DetPolynomial) -> Result<DetPolynomial> {
    let mut cur = p.clone();
    for _ in 0..power {
        if cur.is_syntactically_zero() {
            break;
        }
        cur = ladder_once(op, &cur)?;
    }
    Ok(cur)
}

/// `E21^S/S! · E32^{T2}/T2! · ∇31^{T1}/T1!` applied to the highest vector of
/// one factor, the defining path of the Gelfand-Tsetlin basis.
pub fn gt_chain(w: &HighestWeight, f: Factor, t1: u32, t2: u32, s: u32) -> Result<DetPolynomial> {
    let mut p = stva(w, f);
    p = lowering_apply(LadderOp::Nabla31(Nabla31Reading::Adopted { m3: 0 }), t1, &p)?.scale(&inv_factorial(t1 as i64));
    p = lowering_apply(LadderOp::E32, t2, &p)?.scale(&inv_factorial(t2 as i64));
    p = lowering_apply(LadderOp::E21, s, &p)?.scale(&inv_factorial(s as i64));
    Ok(p)
}

/// Image of a variable under the contragredient duality, with its sign.
pub fn dual_variable(v: &DetVariable) -> (i64, DetVariable) {
    use DetVariable::*;
    match *v {
        Single(f, 1) => (1, Pair(f, 2, 3)),
        Single(f, 2) => (-1, Pair(f, 1, 3)),
        Single(f, 3) => (1, Pair(f, 1, 2)),
        Pair(f, 2, 3) => (1, Single(f, 1)),
        Pair(f, 1, 3) => (-1, Single(f, 2)),
        Pair(f, 1, 2) => (1, Single(f, 3)),
        Mixed(1, 2) => (1, Quad((1, 3), (2, 3))),
        Mixed(1, 3) => (-1, Quad((1, 2), (2, 3))),
        Mixed(2, 3) => (1, Quad((1, 2), (1, 3))),
        Aab => (1, Abb),
        Abb => (1, Aab),
        Quad((1, 2), (1, 3)) => (1, Mixed(2, 3)),
        Quad((1, 2), (2, 3)) => (-1, Mixed(1, 3)),
        Quad((1, 3), (2, 3)) => (1, Mixed(1, 2)),
        other => unreachable!("non-canonical variable {other:?}"),
    }
}

/// The duality map `x1 ↔ x23`, `x2 ↔ -x13`, `x3 ↔ x12` (both factors),
/// extended to the mixed determinants. It is an involution.
pub fn dual_map(p: &DetPolynomial) -> DetPolynomial {
    let table: Vec<(i64, usize)> = alphabet().iter().map(|v| {
        let (s, w) = dual_variable(v);
        (s, w.index())
    }).collect();
    let mut out = SparsePolynomial::zero(det_vars());
    for (e, c) in p.0.terms() {
        let mut ne = vec![0; ALPHABET_SIZE];
        let mut sign = 1i64;
        for (vi, &k) in e.iter().enumerate() {
            if k > 0 {
                let (s, wi) = table[vi];
                ne[wi] += k;
                if s < 0 && k % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        out.add_term(ne, c * int(sign));
    }
    DetPolynomial(out)
}

/// The diagram matched with `d` by the duality, and the sign in
/// `dual_map(gt(d)) = sign · gt(d*)`, for a single factor with `m3 = 0`.
pub fn sopd(d: &GTDiagram) -> Result<(GTDiagram, i64)> {
    if !d.is_valid() || d.m3 != 0 {
        return Err(Cg3Error::InvalidDiagram(d.as_array()));
    }
    let c = d.m1;
    let star = GTDiagram { m1: c - d.m3, m2: c - d.m2, m3: c - d.m1, k1: c - d.k2, k2: c - d.k1, s: c - d.s };
    let sign = if ((d.k1 - d.s) + (d.m2 - d.k2)) % 2 == 0 { 1 } else { -1 };
    Ok((star, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rat;

    fn v(x: DetVariable) -> DetPolynomial {
        DetPolynomial::var(x)
    }

    const A: Factor = Factor::A;
    const B: Factor = Factor::B;

    #[test]
    fn alphabet_indices_roundtrip() {
        for (i, var) in alphabet().iter().enumerate() {
            assert_eq!(var.index(), i);
        }
        assert_eq!(det_vars().len(), 20);
    }

    #[test]
    fn embedding_examples() {
        let xa = |r, c| x(A, r, c);
        let xb = |r, c| x(B, r, c);
        assert_eq!(v(pair(A, 1, 2)).embed(), &(&xa(1, 1) * &xa(2, 2)) - &(&xa(1, 2) * &xa(2, 1)));
        assert_eq!(v(DetVariable::Mixed(1, 2)).embed(), &(&xa(1, 1) * &xb(1, 2)) - &(&xa(1, 2) * &xb(1, 1)));
        for f in [A, B] {
            let pl = &(&(&v(single(f, 1)) * &v(pair(f, 2, 3))) - &(&v(single(f, 2)) * &v(pair(f, 1, 3)))) + &(&v(single(f, 3)) * &v(pair(f, 1, 2)));
            assert!(pl.embed().is_zero());
            assert!(!pl.is_syntactically_zero());
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(generator_action(2, 1, &v(single(A, 1))).as_poly(), v(single(A, 2)).as_poly());
        assert!(generator_action(2, 1, &v(pair(A, 1, 2))).is_syntactically_zero());
        assert_eq!(generator_action(3, 2, &v(DetVariable::Mixed(1, 2))).as_poly(), v(DetVariable::Mixed(1, 3)).as_poly());
    }

    #[test]
    fn generator_matches_matrix_derivation_on_variables() {
        for var in alphabet() {
            for i in 1..=3 {
                for j in 1..=3 {
                    let lhs = generator_action(i, j, &v(*var)).embed();
                    let rhs = matrix_generator_action(i, j, &v(*var).embed());
                    assert_eq!(lhs, rhs, "E{i}{j} on {var}");
                }
            }
        }
    }

    #[test]
    fn gt_vector_examples() {
        let d = |a| GTDiagram::from_array(a).unwrap();
        assert_eq!(gt_vector(&d([1, 0, 0, 1, 0, 1]), A).unwrap().as_poly(), v(single(A, 1)).as_poly());
        assert_eq!(gt_vector(&d([1, 0, 0, 1, 0, 0]), A).unwrap().as_poly(), v(single(A, 2)).as_poly());
        assert_eq!(gt_vector(&d([1, 0, 0, 0, 0, 0]), A).unwrap().as_poly(), v(single(A, 3)).as_poly());
        assert!(gt_vector(&GTDiagram { m1: 1, m2: 0, m3: 0, k1: 0, k2: 0, s: 1 }, A).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_of(&v(single(A, 1))), Ok([1, 0, 0]));
        let d = GTDiagram::new(2, 1, 0, 2, 1, 1).unwrap();
        assert_eq!(weight_of(&gt_vector(&d, A).unwrap()), Ok([1, 2, 0]));
        let d = GTDiagram::new(2, 1, 0, 1, 1, 1).unwrap();
        assert_eq!(weight_of(&gt_vector(&d, A).unwrap()), Ok([1, 1, 1]));
        assert_eq!(weight_of(&(&v(single(A, 1)) + &v(pair(A, 1, 2)))), Err(Cg3Error::NotAWeightVector));
        assert_eq!(weight_of(&DetPolynomial::zero()), Err(Cg3Error::ZeroPolynomial));
    }

    #[test]
    fn lowering_examples() {
        let a1 = v(single(A, 1));
        let adopted = LadderOp::Nabla31(Nabla31Reading::Adopted { m3: 0 });
        assert_eq!(lowering_apply(adopted, 1, &a1).unwrap().as_poly(), v(single(A, 3)).as_poly());
        let lit = lowering_apply(LadderOp::Nabla31(Nabla31Reading::Literal), 1, &a1).unwrap();
        assert_eq!(lit.as_poly(), v(single(A, 3)).scale(&int(2)).as_poly());
        let sq = a1.pow(2);
        assert_eq!(lowering_apply(LadderOp::E21, 2, &sq).unwrap().as_poly(), v(single(A, 2)).pow(2).scale(&int(2)).as_poly());
        assert!(lowering_apply(LadderOp::E32, 1, &v(single(A, 3))).unwrap().is_syntactically_zero());
    }

    #[test]
    fn literal_inverse_can_be_singular() {
        // a1·a2 has weight (1,1,0): E32 E21 lands in weight (0,1,1), where E11 - E22 + 1 = 0.
        let p = &v(single(A, 1)) * &v(single(A, 2));
        let r = lowering_apply(LadderOp::Nabla31(Nabla31Reading::Literal), 1, &p);
        assert!(matches!(r, Err(Cg3Error::SingularInverse { .. })));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_map(&v(single(A, 1))).as_poly(), v(pair(A, 2, 3)).as_poly());
        assert_eq!(dual_map(&v(single(A, 2))).as_poly(), v(pair(A, 1, 3)).scale(&int(-1)).as_poly());
        let q2313 = v(DetVariable::Quad((1, 3), (2, 3))).scale(&int(-1));
        assert_eq!(dual_map(&q2313).as_poly(), v(DetVariable::Mixed(1, 2)).scale(&int(-1)).as_poly());
    }

    #[test]
    fn dual_is_involution() {
        for var in alphabet() {
            let p = v(*var);
            assert_eq!(dual_map(&dual_map(&p)).as_poly(), p.as_poly());
        }
    }

    #[test]
    fn sopd_matches_dual_map() {
        for w in HighestWeight::all_up_to(3) {
            for d in w.diagrams() {
                let (star, sign) = sopd(&d).unwrap();
                let lhs = dual_map(&gt_vector(&d, A).unwrap());
                let rhs = gt_vector(&star, A).unwrap().scale(&int(sign));
                assert_eq!(lhs, rhs, "{d}");
            }
        }
    }

    #[test]
    fn stva_normalisation() {
        let w = HighestWeight::new(3, 1).unwrap();
        let p = stva(&w, A);
        assert_eq!(p.as_poly().terms().next().unwrap().1, &rat(1, 2));
        assert_eq!(gt_vector(&w.top_diagram(), A).unwrap().as_poly(), p.as_poly());
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dimension([1, 0, 0]), 3);
        assert_eq!(weyl_dimension([2, 1, 0]), 8);
        assert_eq!(weyl_dimension([1, 1, 1]), 1);
        assert_eq!(HighestWeight::new(2, 0).unwrap().diagrams().len(), 6);
        assert!(HighestWeight::new(1, 2).is_err());
    }
}
