//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`Scalar`] is an element of Q[p1, ..., pn] for a declared, ordered
//! parameter list shared by every scalar of a computation. Monomials are
//! exponent vectors ordered lexicographically along the declared list, so
//! all iteration, printing and serialization orders are deterministic.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for an exact rational n/d.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an exact integer rational.
pub fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact small power of a rational.
pub fn rpow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// A sign, +1 or -1. Braiding matrices with entries in {1, -1} multiply
/// entirely inside this type; signs fold into scalars only at the edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign as a small integer, +1 or -1.
    pub fn int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// The sign as an exact rational.
    pub fn rational(self) -> BigRational {
        rint(self.int())
    }

    /// Sign of a product.
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The sign (-1)^k.
    pub fn neg_pow(k: u64) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Parse +1 / -1.
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Configuration of the free sign q12 appearing in two-generator braidings;
/// q21 is determined as -q12 and q11 = q22 = -1 in the Cartan instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignConfig {
    pub q12: Sign,
}

impl SignConfig {
    pub fn new(q12: Sign) -> Self {
        SignConfig { q12 }
    }

    /// q12 as a rational.
    pub fn q12(&self) -> BigRational {
        self.q12.rational()
    }

    /// q21 = -q12 as a rational.
    pub fn q21(&self) -> BigRational {
        -self.q12.rational()
    }
}

/// Ordered list of parameter names. All scalars of a computation share one
/// `Arc<ParamSet>`; mixing scalars over different sets is a logic error and
/// panics with a clear message.
#[derive(Debug, PartialEq, Eq)]
pub struct ParamSet {
    names: Vec<String>,
}

impl ParamSet {
    /// A shared parameter set with the given names, in order.
    pub fn new(names: &[&str]) -> Arc<ParamSet> {
        Arc::new(ParamSet {
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// The empty parameter set: scalars are plain rationals.
    pub fn empty() -> Arc<ParamSet> {
        Arc::new(ParamSet { names: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector; length always equals the parameter count.
pub type Monomial = Vec<u16>;

/// A sparse polynomial in the declared parameters with rational
/// coefficients. The term map never stores zero coefficients.
#[derive(Clone, Debug)]
pub struct Scalar {
    params: Arc<ParamSet>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Scalar {
    /// The zero polynomial.
    pub fn zero(params: &Arc<ParamSet>) -> Scalar {
        Scalar {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The constant one.
    pub fn one(params: &Arc<ParamSet>) -> Scalar {
        Scalar::constant(params, BigRational::one())
    }

    /// A constant polynomial.
    pub fn constant(params: &Arc<ParamSet>, c: BigRational) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u16; params.len()], c);
        }
        Scalar {
            params: params.clone(),
            terms,
        }
    }

    /// A constant integer polynomial.
    pub fn int(params: &Arc<ParamSet>, n: i64) -> Scalar {
        Scalar::constant(params, rint(n))
    }

    /// The parameter with the given index, as a polynomial.
    pub fn param(params: &Arc<ParamSet>, idx: usize) -> Scalar {
        assert!(idx < params.len(), "parameter index out of range");
        let mut exps = vec![0u16; params.len()];
        exps[idx] = 1;
        Scalar::monomial(params, exps, BigRational::one())
    }

    /// The parameter with the given name, as a polynomial.
    pub fn param_named(params: &Arc<ParamSet>, name: &str) -> Scalar {
        let idx = params
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown parameter {name}"));
        Scalar::param(params, idx)
    }

    /// A single term c * p1^e1 * ... * pn^en.
    pub fn monomial(params: &Arc<ParamSet>, exps: Monomial, c: BigRational) -> Scalar {
        assert_eq!(exps.len(), params.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Scalar {
            params: params.clone(),
            terms,
        }
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The constant coefficient (zero if absent).
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0u16; self.params.len()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Some(c) when the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Iterate terms in lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, exps: &[u16]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Total degree, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
    }

    /// Degree in one parameter, or None for the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> Option<u16> {
        self.terms.keys().map(|m| m[idx]).max()
    }

    /// Multiply by a rational.
    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(&self.params);
        }
        Scalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Exact small power.
    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(&self.params);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn assert_same_params(&self, other: &Scalar) {
        assert!(
            Arc::ptr_eq(&self.params, &other.params) || self.params == other.params,
            "scalar arithmetic over mismatched parameter lists: [{}] vs [{}]",
            self.params.names().join(", "),
            other.params.names().join(", "),
        );
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Substitute rationals for a subset of the parameters. The result
    /// lives over the same parameter list with those exponents cleared.
    pub fn substitute(&self, bindings: &BTreeMap<usize, BigRational>) -> Scalar {
        for &idx in bindings.keys() {
            assert!(idx < self.params.len(), "substitution index out of range");
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.clone();
            for (&idx, val) in bindings {
                coeff *= rpow(val, exps[idx] as u32);
                exps[idx] = 0;
            }
            Self::insert_term(&mut terms, exps, coeff);
        }
        Scalar {
            params: self.params.clone(),
            terms,
        }
    }

    /// Evaluate at a full assignment of the parameters.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(
            values.len(),
            self.params.len(),
            "evaluation point has wrong arity"
        );
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (idx, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= rpow(&values[idx], e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients of the polynomial viewed in one parameter, ascending by
    /// degree. Returns None when any other parameter occurs.
    pub fn univariate_in(&self, idx: usize) -> Option<Vec<BigRational>> {
        let deg = match self.degree_in(idx) {
            None => return Some(Vec::new()),
            Some(d) => d,
        };
        let mut coeffs = vec![BigRational::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            for (j, &e) in m.iter().enumerate() {
                if j != idx && e != 0 {
                    return None;
                }
            }
            coeffs[m[idx] as usize] = c.clone();
        }
        Some(coeffs)
    }

    /// Indices of parameters that actually occur.
    pub fn support_params(&self) -> Vec<usize> {
        let mut seen = vec![false; self.params.len()];
        for m in self.terms.keys() {
            for (idx, &e) in m.iter().enumerate() {
                if e > 0 {
                    seen[idx] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| if s { Some(i) } else { None })
            .collect()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.assert_same_params(other);
        self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        self.assert_same_params(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Scalar::insert_term(&mut terms, m.clone(), c.clone());
        }
        Scalar {
            params: self.params.clone(),
            terms,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self.assert_same_params(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Scalar::insert_term(&mut terms, m.clone(), -c.clone());
        }
        Scalar {
            params: self.params.clone(),
            terms,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        self.assert_same_params(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(&a, &b)| a + b).collect();
                Scalar::insert_term(&mut terms, m, ca * cb);
            }
        }
        Scalar {
            params: self.params.clone(),
            terms,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, other: Scalar) -> Scalar {
        &self + &other
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, other: Scalar) -> Scalar {
        &self - &other
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, other: Scalar) -> Scalar {
        &self * &other
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, other: &Scalar) {
        self.assert_same_params(other);
        for (m, c) in &other.terms {
            Scalar::insert_term(&mut self.terms, m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, other: &Scalar) {
        self.assert_same_params(other);
        for (m, c) in &other.terms {
            Scalar::insert_term(&mut self.terms, m.clone(), -c.clone());
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, other: &Scalar) {
        *self = &*self * other;
    }
}

fn fmt_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational, has_vars: bool) -> fmt::Result {
    if !has_vars {
        return write!(f, "{c}");
    }
    if c.is_one() {
        Ok(())
    } else if (-c).is_one() {
        // sign is emitted by the caller; the abs value 1 is implicit
        Ok(())
    } else {
        write!(f, "{}*", c.abs())
    }
}

impl fmt::Display for Scalar {
    /// Canonical rendering: terms in lexicographic monomial order, `*`
    /// between factors, `^` for powers, e.g. `l12 + 2*l1*l2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let has_vars = m.iter().any(|&e| e > 0);
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if has_vars {
                fmt_coefficient(f, c, true)?;
                let mut first = true;
                for (idx, &e) in m.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{}", self.params.name(idx))?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            } else {
                write!(f, "{}", c.abs())?;
            }
        }
        Ok(())
    }
}

/// Outcome of the one-variable common-root search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootOutcome {
    /// Every input polynomial was zero: every field element is a root.
    AllOfK,
    /// The inputs have no common root in any field extension.
    NoRoot,
    /// The common roots that are rational (nonempty, sorted ascending).
    Roots(Vec<BigRational>),
    /// Common roots exist over the algebraic closure but none is rational;
    /// carries the monic gcd, coefficients ascending.
    AlgebraicRoot(Vec<BigRational>),
}

/// Errors from scalar-level solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    /// An input polynomial mentions more than one parameter.
    NotUnivariate(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::NotUnivariate(p) => {
                write!(f, "polynomial is not univariate: {p}")
            }
        }
    }
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_rem(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = num.to_vec();
    poly_trim(&mut r);
    let dn = den.len();
    debug_assert!(dn > 0);
    let lead = &den[dn - 1];
    while r.len() >= dn {
        let k = r.len() - dn;
        let q = &r[r.len() - 1] / lead;
        for i in 0..dn {
            let t = &q * &den[i];
            r[k + i] -= t;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
        // guard against a non-decreasing remainder degree
        debug_assert!(r.len() < k + dn);
    }
    r
}

/// Monic gcd of two rational polynomials (coefficients ascending).
pub fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = a.to_vec();
    let mut b: Vec<BigRational> = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

fn eval_poly(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    debug_assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if dd > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// All rational roots of a nonzero rational polynomial, with the deflated
/// quotient after removing them (with multiplicity).
fn rational_roots(p: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut p: Vec<BigRational> = p.to_vec();
    poly_trim(&mut p);
    debug_assert!(!p.is_empty());
    let mut roots = Vec::new();
    // factor out x^k
    while p.len() > 1 && p[0].is_zero() {
        roots.push(BigRational::zero());
        p.remove(0);
    }
    if p.len() == 1 {
        roots.sort();
        return (roots, p);
    }
    // clear denominators to a primitive integer polynomial
    let mut denlcm = BigInt::one();
    for c in &p {
        denlcm = num_integer::lcm(denlcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &denlcm).to_integer()).collect();
    let a0 = &ints[0];
    let an = &ints[ints.len() - 1];
    let mut candidates: Vec<BigRational> = Vec::new();
    for num in positive_divisors(a0) {
        for den in positive_divisors(an) {
            let r = BigRational::new(num.clone(), den.clone());
            if !candidates.contains(&r) {
                candidates.push(r);
            }
        }
    }
    let mut signed: Vec<BigRational> = Vec::new();
    for c in candidates {
        signed.push(c.clone());
        signed.push(-c);
    }
    for cand in signed {
        // deflate repeatedly in case of multiple roots
        while p.len() > 1 && eval_poly(&p, &cand).is_zero() {
            roots.push(cand.clone());
            // synthetic division by (x - cand), coefficients ascending
            let mut q = vec![BigRational::zero(); p.len() - 1];
            let mut carry = p[p.len() - 1].clone();
            for i in (0..p.len() - 1).rev() {
                q[i] = carry.clone();
                carry = &p[i] + &carry * &cand;
            }
            debug_assert!(carry.is_zero());
            p = q;
        }
    }
    roots.sort();
    (roots, p)
}

/// Common roots of a family of polynomials in (at most) one shared
/// parameter. Zero polynomials are skipped; an all-zero family means every
/// field element works.
pub fn solve_common_root_1var(polys: &[Scalar]) -> Result<RootOutcome, ScalarError> {
    let mut var: Option<usize> = None;
    let mut coeff_lists: Vec<Vec<BigRational>> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let support = p.support_params();
        match support.len() {
            0 => {
                // nonzero constant: no root at all
                return Ok(RootOutcome::NoRoot);
            }
            1 => {
                let v = support[0];
                match var {
                    None => var = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => {
                        return Err(ScalarError::NotUnivariate(p.to_string()));
                    }
                }
                coeff_lists.push(p.univariate_in(v).unwrap());
            }
            _ => return Err(ScalarError::NotUnivariate(p.to_string())),
        }
    }
    if coeff_lists.is_empty() {
        return Ok(RootOutcome::AllOfK);
    }
    let mut g = coeff_lists[0].clone();
    for p in &coeff_lists[1..] {
        g = poly_gcd(&g, p);
        if g.len() == 1 {
            return Ok(RootOutcome::NoRoot);
        }
    }
    poly_trim(&mut g);
    if g.len() <= 1 {
        // deg 0: no common root (g nonzero since inputs were nonzero)
        return Ok(RootOutcome::NoRoot);
    }
    let (roots, _rest) = rational_roots(&g);
    if roots.is_empty() {
        Ok(RootOutcome::AlgebraicRoot(g))
    } else {
        Ok(RootOutcome::Roots(roots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Arc<ParamSet> {
        ParamSet::new(&["l1", "l2", "l12"])
    }

    #[test]
    fn arithmetic_and_display() {
        let ps = lam();
        let l1 = Scalar::param_named(&ps, "l1");
        let l2 = Scalar::param_named(&ps, "l2");
        let l12 = Scalar::param_named(&ps, "l12");
        let p = &(&l1 + &l2) * &l1;
        assert_eq!(p.coefficient(&[2, 0, 0]), rint(1));
        assert_eq!(p.coefficient(&[1, 1, 0]), rint(1));
        let q = &l12 + &(&l1 * &l2).scale(&rint(2));
        assert_eq!(q.to_string(), "l12 + 2*l1*l2");
        let r = &l1 - &l1;
        assert!(r.is_zero());
        assert_eq!(r.to_string(), "0");
        assert_eq!((-&l1).to_string(), "-l1");
        assert_eq!(
            (&l1.pow(2) - &l12.scale(&rat(1, 2))).to_string(),
            "-1/2*l12 + l1^2"
        );
    }

    #[test]
    fn substitute_and_eval() {
        let ps = lam();
        let l1 = Scalar::param_named(&ps, "l1");
        let l2 = Scalar::param_named(&ps, "l2");
        // 2*q12*l1*l2 at q12 = -1, l1 = 3, l2 = 1/2 evaluates to -3
        let p = (&l1 * &l2).scale(&rint(-2));
        assert_eq!(p.eval(&[rint(3), rat(1, 2), rint(7)]), rint(-3));
        let mut b = BTreeMap::new();
        b.insert(0usize, rint(3));
        let s = p.substitute(&b);
        assert_eq!(s.to_string(), "-6*l2");
        // q12*l12*l1 + 4*l1^2*l2 at lambda = (1,1,1), q12 = +1 gives 5
        let l12 = Scalar::param_named(&ps, "l12");
        let t = &(&l12 * &l1) + &(&l1.pow(2) * &l2).scale(&rint(4));
        assert_eq!(t.eval(&[rint(1), rint(1), rint(1)]), rint(5));
    }

    #[test]
    fn univariate_extraction() {
        let ps = ParamSet::new(&["t"]);
        let t = Scalar::param_named(&ps, "t");
        let p = &t.pow(2) - &Scalar::int(&ps, 2);
        assert_eq!(
            p.univariate_in(0).unwrap(),
            alloc::vec![rint(-2), rint(0), rint(1)]
        );
        let ps2 = lam();
        let mixed = &Scalar::param_named(&ps2, "l1") * &Scalar::param_named(&ps2, "l2");
        assert_eq!(mixed.univariate_in(0), None);
    }

    #[test]
    fn common_root_cases() {
        let ps = ParamSet::new(&["t"]);
        let t = Scalar::param_named(&ps, "t");
        // {t - 3} has the single rational root 3
        let p = &t - &Scalar::int(&ps, 3);
        assert_eq!(
            solve_common_root_1var(&[p.clone()]).unwrap(),
            RootOutcome::Roots(alloc::vec![rint(3)])
        );
        // {t, t - 1} has no common root
        let q = &t - &Scalar::int(&ps, 1);
        assert_eq!(
            solve_common_root_1var(&[t.clone(), q]).unwrap(),
            RootOutcome::NoRoot
        );
        // {t^2 - 2} only has irrational roots
        let r = &t.pow(2) - &Scalar::int(&ps, 2);
        match solve_common_root_1var(&[r]).unwrap() {
            RootOutcome::AlgebraicRoot(g) => {
                assert_eq!(g, alloc::vec![rint(-2), rint(0), rint(1)]);
            }
            other => panic!("expected AlgebraicRoot, got {other:?}"),
        }
        // empty and all-zero families leave every field element
        assert_eq!(solve_common_root_1var(&[]).unwrap(), RootOutcome::AllOfK);
        assert_eq!(
            solve_common_root_1var(&[Scalar::zero(&ps)]).unwrap(),
            RootOutcome::AllOfK
        );
        // nonzero constant kills everything
        assert_eq!(
            solve_common_root_1var(&[Scalar::int(&ps, 5)]).unwrap(),
            RootOutcome::NoRoot
        );
        // multiple polynomials sharing the root 0 and also t = 1/2 only in one
        let h1 = &t.pow(2).scale(&rint(2)) - &t; // t(2t - 1)
        let h2 = t.clone();
        assert_eq!(
            solve_common_root_1var(&[h1.clone(), h2]).unwrap(),
            RootOutcome::Roots(alloc::vec![rint(0)])
        );
        assert_eq!(
            solve_common_root_1var(&[h1]).unwrap(),
            RootOutcome::Roots(alloc::vec![rint(0), rat(1, 2)])
        );
    }

    #[test]
    fn gcd_of_shifted_products() {
        // gcd((t-1)(t-2), (t-2)(t-3)) = t - 2
        let one = rint(1);
        let p1 = alloc::vec![rint(2), rint(-3), one.clone()];
        let p2 = alloc::vec![rint(6), rint(-5), one.clone()];
        assert_eq!(poly_gcd(&p1, &p2), alloc::vec![rint(-2), one]);
    }

    #[test]
    #[should_panic(expected = "mismatched parameter lists")]
    fn mismatched_params_panic() {
        let a = Scalar::one(&ParamSet::new(&["a"]));
        let b = Scalar::one(&ParamSet::new(&["b"]));
        let _ = &a + &b;
    }
}
