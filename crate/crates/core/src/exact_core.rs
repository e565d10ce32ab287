//! Exact arithmetic substrate: rationals, factorials and reciprocal Γ on the
//! integers, sparse multivariate polynomials over named variables, integer
//! compositions and exact linear elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Cg3Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest argument whose factorial is kept in the shared table.
pub const DEFAULT_FACTORIAL_BOUND: usize = 256;

/// A memoized table of factorials `0!..=bound!`.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    values: Vec<BigInt>,
}

impl FactorialTable {
    pub fn with_bound(bound: usize) -> Self {
        let mut values = Vec::with_capacity(bound + 1);
        values.push(BigInt::one());
        for i in 1..=bound {
            let next = &values[i - 1] * BigInt::from(i);
            values.push(next);
        }
        FactorialTable { values }
    }

    pub fn bound(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: u64) -> BigInt {
        let n = n as usize;
        if n <= self.bound() {
            return self.values[n].clone();
        }
        let mut acc = self.values[self.bound()].clone();
        for i in self.bound() + 1..=n {
            acc *= BigInt::from(i);
        }
        acc
    }
}

fn shared_table() -> &'static FactorialTable {
    static TABLE: OnceLock<FactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorialTable::with_bound(DEFAULT_FACTORIAL_BOUND))
}

/// `n!` for `n >= 0`.
pub fn factorial(n: u64) -> BigInt {
    shared_table().get(n)
}

/// `1/Γ(n)`, i.e. `1/(n-1)!` for `n >= 1` and `0` at the poles `n <= 0`.
pub fn reciprocal_gamma_int(n: i64) -> Rational {
    if n <= 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial((n - 1) as u64))
    }
}

/// `1/n!` with the reciprocal-Γ convention (zero for negative `n`).
pub fn inv_factorial(n: i64) -> Rational {
    reciprocal_gamma_int(n + 1)
}

/// `n!` as a rational; panics on negative input.
pub fn factorial_q(n: i64) -> Rational {
    assert!(n >= 0, "factorial of negative integer {n}");
    Rational::from_integer(factorial(n as u64))
}

/// Falling factorial `u (u-1) ... (u-p+1)`.
pub fn falling_factorial(u: i64, p: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..p as i64 {
        acc *= BigInt::from(u - i);
    }
    acc
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn pow_rational(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Ordered list of variable names shared by polynomials of one algebra.
#[derive(Clone)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VarSet(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Variables of `self` followed by the new ones of `other`.
    pub fn union(&self, other: &VarSet) -> VarSet {
        if self == other {
            return self.clone();
        }
        let mut names: Vec<String> = self.0.to_vec();
        for n in other.0.iter() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarSet::new(names)
    }

    fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector of a monomial, indexed like the owning [`VarSet`].
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No stored coefficient is zero and every exponent vector has the length of
/// the variable set, so two polynomials over the same variables are equal iff
/// their term maps are.
#[derive(Clone)]
pub struct SparsePolynomial {
    vars: VarSet,
    terms: BTreeMap<Exponents, Rational>,
}

impl SparsePolynomial {
    pub fn zero(vars: &VarSet) -> Self {
        SparsePolynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn variable(vars: &VarSet, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn variable_named(vars: &VarSet, name: &str) -> Option<Self> {
        vars.index_of(name).map(|i| Self::variable(vars, i))
    }

    pub fn monomial(vars: &VarSet, exps: Exponents, coeff: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        p.add_term(exps, coeff);
        p
    }

    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn into_term_map(self) -> BTreeMap<Exponents, Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Accumulates `coeff * x^exps`, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Exponents, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.vars.len());
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn align_to(&self, target: &VarSet) -> Self {
        if self.vars == *target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).expect("target variable set must contain all variables"))
            .collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    fn aligned_pair(&self, other: &Self) -> (Self, Self) {
        let u = self.vars.union(&other.vars);
        (self.align_to(&u), other.align_to(&u))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[index] -= 1;
            out.add_term(ne, c * Rational::from_integer(BigInt::from(k)));
        }
        out
    }

    /// Derivative with respect to a named variable; zero if it is absent.
    pub fn partial_derivative_by_name(&self, name: &str) -> Self {
        match self.vars.index_of(name) {
            Some(i) => self.partial_derivative(i),
            None => Self::zero(&self.vars),
        }
    }

    /// Evaluates at a point given positionally.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pow_rational(&point[i], k as i64);
                }
            }
            total += t;
        }
        total
    }

    /// Evaluates with every variable assigned by name.
    pub fn substitute(&self, assignments: &HashMap<String, Rational>) -> Result<Rational> {
        let point = self
            .vars
            .names()
            .iter()
            .map(|n| assignments.get(n).cloned().ok_or_else(|| Cg3Error::MissingAssignment(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.evaluate(&point))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn compose(&self, images: &[SparsePolynomial], target: &VarSet) -> Self {
        assert_eq!(images.len(), self.vars.len());
        let images: Vec<SparsePolynomial> = images.iter().map(|p| p.align_to(target)).collect();
        let mut powers: Vec<Vec<SparsePolynomial>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k];
                if t.is_zero() {
                    break;
                }
            }
            out += &t;
        }
        out
    }
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            self.terms == other.terms
        } else {
            let (a, b) = self.aligned_pair(other);
            a.terms == b.terms
        }
    }
}

impl Eq for SparsePolynomial {}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let is_const = e.iter().all(|&k| k == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                write!(f, "{sep}{}", self.vars.names()[i])?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&SparsePolynomial> for SparsePolynomial {
    fn add_assign(&mut self, rhs: &SparsePolynomial) {
        if self.vars != rhs.vars {
            let u = self.vars.union(&rhs.vars);
            *self = self.align_to(&u);
            let r = rhs.align_to(&u);
            for (e, c) in r.terms {
                self.add_term(e, c);
            }
            return;
        }
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&SparsePolynomial> for SparsePolynomial {
    fn sub_assign(&mut self, rhs: &SparsePolynomial) {
        *self += &(-rhs);
    }
}

impl<'a> Sub<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a SparsePolynomial> for &'a SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned_pair(rhs);
            return &a * &b;
        }
        let mut out = SparsePolynomial::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Sum or product over the union of the two variable sets.
pub fn poly_arith(lhs: &SparsePolynomial, rhs: &SparsePolynomial, op: PolyOp) -> SparsePolynomial {
    match op {
        PolyOp::Add => lhs + rhs,
        PolyOp::Mul => lhs * rhs,
    }
}

/// A tuple of nonnegative parts with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    total: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        let total = parts.iter().sum();
        Composition { parts, total }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.total
    }
}

/// All compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order.
pub fn enumerate_compositions(total: u32, parts: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fn rec(remaining: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(Composition::new(current.clone()));
            }
            return;
        }
        if slots == 1 {
            current.push(remaining);
            out.push(Composition::new(current.clone()));
            current.pop();
            return;
        }
        for first in 0..=remaining {
            current.push(first);
            rec(remaining - first, slots - 1, current, out);
            current.pop();
        }
    }
    rec(total, parts, &mut current, &mut out);
    out
}

/// Sparse vector over an ordered index set.
pub type SparseVector<K> = BTreeMap<K, Rational>;

/// Incremental exact Gaussian elimination that remembers how every reduced
/// row was formed from the inserted vectors.
///
/// Rows are normalised so that their largest key (the pivot) has
/// coefficient one.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<EchelonRow<K>>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

#[derive(Debug, Clone)]
struct EchelonRow<K: Ord + Clone> {
    vector: SparseVector<K>,
    combination: BTreeMap<usize, Rational>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_tracked(&self, v: &mut SparseVector<K>, comb: &mut BTreeMap<usize, Rational>) {
        let mut bound: Option<K> = None;
        loop {
            let next = {
                let iter: Box<dyn DoubleEndedIterator<Item = (&K, &Rational)>> = match &bound {
                    None => Box::new(v.iter()),
                    Some(b) => Box::new(v.range(..b.clone())),
                };
                iter.rev().find(|(k, _)| self.pivots.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((key, coeff)) = next else { break };
            let row = &self.rows[self.pivots[&key]];
            for (k, c) in &row.vector {
                let entry = v.entry(k.clone()).or_insert_with(Rational::zero);
                *entry -= &coeff * c;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            for (i, c) in &row.combination {
                let entry = comb.entry(*i).or_insert_with(Rational::zero);
                *entry -= &coeff * c;
                if entry.is_zero() {
                    comb.remove(i);
                }
            }
            bound = Some(key);
        }
    }

    /// Inserts a vector; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, v: SparseVector<K>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut comb = BTreeMap::new();
        comb.insert(index, Rational::one());
        self.reduce_tracked(&mut v, &mut comb);
        let Some((pivot, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        for c in v.values_mut() {
            *c *= &inv;
        }
        for c in comb.values_mut() {
            *c *= &inv;
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(EchelonRow { vector: v, combination: comb });
        true
    }

    /// Writes `target` as a combination of the inserted vectors.
    ///
    /// Returns the coefficients (indexed by insertion order) and the residual,
    /// which is zero exactly when `target` lies in the span.
    pub fn solve(&self, target: &SparseVector<K>) -> (BTreeMap<usize, Rational>, SparseVector<K>) {
        let mut v = target.clone();
        let mut comb = BTreeMap::new();
        self.reduce_tracked(&mut v, &mut comb);
        let solution = comb
            .into_iter()
            .filter_map(|(i, c)| {
                let c = -c;
                (!c.is_zero()).then_some((i, c))
            })
            .collect();
        (solution, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarSet {
        VarSet::new(["x", "y"])
    }

    #[test]
    fn reciprocal_gamma_examples() {
        assert_eq!(reciprocal_gamma_int(1), int(1));
        assert_eq!(reciprocal_gamma_int(4), rat(1, 6));
        assert_eq!(reciprocal_gamma_int(0), int(0));
        assert_eq!(reciprocal_gamma_int(-3), int(0));
    }

    #[test]
    fn reciprocal_gamma_times_factorial_is_one() {
        for n in 1..=20 {
            let prod = reciprocal_gamma_int(n) * factorial_q(n - 1);
            assert_eq!(prod, int(1));
        }
    }

    #[test]
    fn factorial_beyond_table() {
        let small = FactorialTable::with_bound(5);
        assert_eq!(small.get(7), BigInt::from(5040));
        assert_eq!(factorial(300), small.get(300));
    }

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(1, 2), BigInt::zero());
        assert_eq!(falling_factorial(7, 0), BigInt::one());
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::zero());
    }

    #[test]
    fn difference_of_squares() {
        let v = xy();
        let x = SparsePolynomial::variable(&v, 0);
        let y = SparsePolynomial::variable(&v, 1);
        let p = &(&x + &y) * &(&x - &y);
        let expected = &x.pow(2) - &y.pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn derivative_and_substitution() {
        let v = xy();
        let x = SparsePolynomial::variable(&v, 0);
        let y = SparsePolynomial::variable(&v, 1);
        let p = &x.pow(2) * &y;
        let dp = p.partial_derivative_by_name("x");
        assert_eq!(dp, (&x * &y).scale(&int(2)));
        let mut a = HashMap::new();
        a.insert("x".to_string(), int(2));
        a.insert("y".to_string(), int(3));
        assert_eq!(p.substitute(&a).unwrap(), int(12));
        a.remove("y");
        assert_eq!(p.substitute(&a), Err(Cg3Error::MissingAssignment("y".into())));
    }

    #[test]
    fn union_of_variable_sets() {
        let x = SparsePolynomial::variable(&VarSet::new(["x"]), 0);
        let z = SparsePolynomial::variable(&VarSet::new(["z"]), 0);
        let s = &x + &z;
        assert_eq!(s.vars().names(), &["x".to_string(), "z".to_string()]);
        assert_eq!(&s - &z, x);
    }

    #[test]
    fn compose_substitutes_polynomials() {
        let v = xy();
        let x = SparsePolynomial::variable(&v, 0);
        let y = SparsePolynomial::variable(&v, 1);
        let t = VarSet::new(["t"]);
        let tt = SparsePolynomial::variable(&t, 0);
        let p = &x * &y;
        let img = p.compose(&[&tt + &SparsePolynomial::one(&t), &tt - &SparsePolynomial::one(&t)], &t);
        assert_eq!(img, &tt.pow(2) - &SparsePolynomial::one(&t));
    }

    #[test]
    fn composition_examples() {
        let c = enumerate_compositions(2, 2);
        let parts: Vec<Vec<u32>> = c.iter().map(|c| c.parts().to_vec()).collect();
        assert_eq!(parts, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(enumerate_compositions(0, 3).len(), 1);
        assert_eq!(enumerate_compositions(0, 3)[0].parts(), &[0, 0, 0]);
        assert_eq!(enumerate_compositions(3, 3).len(), 10);
        assert!(c.iter().all(|c| c.total() == 2));
    }

    #[test]
    fn echelon_solves_and_detects_dependence() {
        let mut e: Echelon<u32> = Echelon::new();
        let v1: SparseVector<u32> = [(0, int(1)), (1, int(1))].into_iter().collect();
        let v2: SparseVector<u32> = [(1, int(1)), (2, int(2))].into_iter().collect();
        let v3: SparseVector<u32> = [(0, int(1)), (2, int(-2))].into_iter().collect();
        assert!(e.insert(v1.clone()));
        assert!(e.insert(v2.clone()));
        assert!(!e.insert(v3));
        assert_eq!(e.rank(), 2);
        let target: SparseVector<u32> = [(0, int(3)), (1, int(1)), (2, int(-4))].into_iter().collect();
        let (sol, res) = e.solve(&target);
        assert!(res.is_empty());
        assert_eq!(sol.get(&0), Some(&int(3)));
        assert_eq!(sol.get(&1), Some(&int(-2)));
        let outside: SparseVector<u32> = [(2, int(1))].into_iter().collect();
        let (_, res) = e.solve(&outside);
        assert!(!res.is_empty());
    }
}
