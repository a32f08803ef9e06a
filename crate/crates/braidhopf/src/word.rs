//! Free-algebra words and noncommutative rewriting.
//!
//! Relations are oriented into rewriting rules along the degree-lexicographic
//! order (longer words first, ties letter-by-letter with higher generator
//! index larger). A capped overlap-completion pass closes the rule set under
//! critical pairs; callers certify the result independently (exhaustive
//! associativity over the finite basis), so completion is a construction
//! device, never a trusted oracle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::scalar::{ParamSet, Scalar};

/// A generator index.
pub type Letter = u8;

/// A word in the free monoid on the generators.
pub type Word = Vec<Letter>;

/// Degree-lexicographic comparison: length first, then letters left to
/// right, higher generator index larger.
pub fn deg_lex(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// An element of the free algebra: a finite sum of words with scalar
/// coefficients. The zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePoly {
    params: Arc<ParamSet>,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(params: &Arc<ParamSet>) -> FreePoly {
        FreePoly {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(params: &Arc<ParamSet>, w: Word) -> FreePoly {
        FreePoly::term(params, w, Scalar::one(params))
    }

    pub fn term(params: &Arc<ParamSet>, w: Word, c: Scalar) -> FreePoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreePoly {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.params))
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        let mut out = FreePoly::zero(&self.params);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> FreePoly {
        let mut out = FreePoly::zero(&self.params);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), -v.clone());
        }
        out
    }

    /// Free product (word concatenation, bilinear).
    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero(&self.params);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    /// The deg-lex largest word with nonzero coefficient.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().max_by(|a, b| deg_lex(a, b))
    }

    /// The common multidegree of all words under the given generator
    /// degrees, or None when the terms are not homogeneous.
    pub fn homogeneous_degree(&self, gen_degrees: &[Vec<u32>]) -> Option<Vec<u32>> {
        let mut deg: Option<Vec<u32>> = None;
        for w in self.terms.keys() {
            let d = word_degree(w, gen_degrees);
            match &deg {
                None => deg = Some(d),
                Some(existing) if *existing == d => {}
                Some(_) => return None,
            }
        }
        deg
    }
}

/// Multidegree of a word under the generator degrees.
pub fn word_degree(w: &Word, gen_degrees: &[Vec<u32>]) -> Vec<u32> {
    let comps = gen_degrees.first().map(|d| d.len()).unwrap_or(0);
    let mut deg = vec![0u32; comps];
    for &l in w {
        for (i, d) in gen_degrees[l as usize].iter().enumerate() {
            deg[i] += d;
        }
    }
    deg
}

/// One oriented rule `lhs -> rhs`, with every word of `rhs` deg-lex smaller
/// than `lhs`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: FreePoly,
}

/// Errors from rewriting-system construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    /// A relation's leading coefficient is not a nonzero rational, so the
    /// relation cannot be oriented by exact division.
    NonConstantLeadingCoefficient(String),
    /// A rule right-hand side failed to be smaller than its left-hand side.
    NotDecreasing(String),
    /// Completion exceeded its rule or length budget.
    BudgetExceeded { rules: usize, max_len: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::NonConstantLeadingCoefficient(p) => {
                write!(f, "cannot orient relation, leading coefficient not a nonzero rational: {p}")
            }
            WordError::NotDecreasing(p) => write!(f, "oriented rule does not decrease: {p}"),
            WordError::BudgetExceeded { rules, max_len } => write!(
                f,
                "completion budget exceeded ({rules} rules, words up to length {max_len})"
            ),
        }
    }
}

/// A terminating rewriting system obtained from oriented relations plus a
/// capped critical-pair completion pass.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    params: Arc<ParamSet>,
    pub rules: Vec<Rule>,
}

fn find_subword(haystack: &Word, needle: &Word) -> Option<usize> {
    if needle.is_empty() || needle.len() > haystack.len() {
        return None;
    }
    (0..=haystack.len() - needle.len()).find(|&i| &haystack[i..i + needle.len()] == &needle[..])
}

impl RewriteSystem {
    /// Orient relations and complete the rule set under critical pairs.
    /// `max_rules` and `max_len` bound the completion pass; exceeding them
    /// is an error, never a silent truncation.
    pub fn complete(
        params: &Arc<ParamSet>,
        relations: &[FreePoly],
        max_rules: usize,
        max_len: usize,
    ) -> Result<RewriteSystem, WordError> {
        let mut sys = RewriteSystem {
            params: params.clone(),
            rules: Vec::new(),
        };
        for rel in relations {
            let nf = sys.normal_form(rel);
            sys.add_oriented(&nf, max_len)?;
            if sys.rules.len() > max_rules {
                return Err(WordError::BudgetExceeded {
                    rules: sys.rules.len(),
                    max_len,
                });
            }
        }
        // close under critical pairs; restart the scan after each new rule
        loop {
            let mut added = false;
            let n = sys.rules.len();
            'scan: for i in 0..n {
                for j in 0..n {
                    let pairs = critical_pairs(&sys.rules[i], &sys.rules[j], &sys.params);
                    for (left_route, right_route) in pairs {
                        let s = sys.normal_form(&left_route.sub(&right_route));
                        if !s.is_zero() {
                            sys.add_oriented(&s, max_len)?;
                            if sys.rules.len() > max_rules {
                                return Err(WordError::BudgetExceeded {
                                    rules: sys.rules.len(),
                                    max_len,
                                });
                            }
                            added = true;
                            break 'scan;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        Ok(sys)
    }

    fn add_oriented(&mut self, poly: &FreePoly, max_len: usize) -> Result<(), WordError> {
        if poly.is_zero() {
            return Ok(());
        }
        let lhs = poly.leading_word().unwrap().clone();
        if lhs.len() > max_len {
            return Err(WordError::BudgetExceeded {
                rules: self.rules.len(),
                max_len,
            });
        }
        let lead_coeff = poly.coefficient(&lhs);
        let Some(c) = lead_coeff.as_constant() else {
            return Err(WordError::NonConstantLeadingCoefficient(format!("{lhs:?}")));
        };
        if c.is_zero() {
            return Err(WordError::NonConstantLeadingCoefficient(format!("{lhs:?}")));
        }
        let mut rest = poly.clone();
        rest.add_term(lhs.clone(), -lead_coeff);
        let rhs = rest.scale(&Scalar::constant(&self.params, -c.recip()));
        for (w, _) in rhs.terms() {
            if deg_lex(w, &lhs) != Ordering::Less {
                return Err(WordError::NotDecreasing(format!("{lhs:?}")));
            }
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    /// Whether a word is in normal form (contains no rule left-hand side).
    pub fn is_normal(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| find_subword(w, &r.lhs).is_none())
    }

    /// The normal form of a free polynomial: rewrite leftmost-innermost
    /// until no rule applies. Terminates because every rule decreases the
    /// deg-lex order.
    pub fn normal_form(&self, poly: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero(&self.params);
        let mut work: Vec<(Word, Scalar)> = poly
            .terms()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            let mut hit = None;
            'scan: for pos in 0..=w.len() {
                for rule in &self.rules {
                    if pos + rule.lhs.len() <= w.len()
                        && w[pos..pos + rule.lhs.len()] == rule.lhs[..]
                    {
                        hit = Some((pos, rule));
                        break 'scan;
                    }
                }
            }
            match hit {
                None => out.add_term(w, c),
                Some((pos, rule)) => {
                    let prefix = &w[..pos];
                    let suffix = &w[pos + rule.lhs.len()..];
                    for (mid, mc) in rule.rhs.terms() {
                        let mut nw = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
                        nw.extend_from_slice(prefix);
                        nw.extend_from_slice(mid);
                        nw.extend_from_slice(suffix);
                        work.push((nw, &c * mc));
                    }
                }
            }
        }
        out
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> FreePoly {
        self.normal_form(&FreePoly::word(&self.params, w.clone()))
    }

    /// Enumerate the normal words by length, at most `cap + 1` of them
    /// (enumeration stops early once the cap is passed). Normal words are
    /// closed under subwords, so extending shorter normal words by one
    /// letter reaches all of them.
    pub fn normal_words(&self, gen_count: usize, cap: usize) -> Vec<Word> {
        let mut out: Vec<Word> = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        while !layer.is_empty() && out.len() <= cap {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..gen_count as u8 {
                    let mut nw = w.clone();
                    nw.push(l);
                    if self.is_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort_by(|a, b| deg_lex(a, b));
        out.truncate(cap + 1);
        out
    }
}

/// All critical pairs of two rules: proper overlaps (a suffix of `a.lhs`
/// equals a prefix of `b.lhs`) and inclusions (`b.lhs` inside `a.lhs`).
/// Each pair is returned as the two one-step reductions of the critical
/// word.
fn critical_pairs(a: &Rule, b: &Rule, params: &Arc<ParamSet>) -> Vec<(FreePoly, FreePoly)> {
    let mut out = Vec::new();
    let la = a.lhs.len();
    let lb = b.lhs.len();
    // proper overlaps: suffix of a.lhs of length k == prefix of b.lhs
    for k in 1..la.min(lb) {
        if a.lhs[la - k..] == b.lhs[..k] {
            // critical word: a.lhs + b.lhs[k..]
            let tail = &b.lhs[k..];
            let head = &a.lhs[..la - k];
            // route 1: rewrite the a-part
            let route1 = a.rhs.mul(&FreePoly::word(params, tail.to_vec()));
            // route 2: rewrite the b-part
            let route2 = FreePoly::word(params, head.to_vec()).mul(&b.rhs);
            out.push((route1, route2));
        }
    }
    // inclusions: b.lhs occurs strictly inside a.lhs
    if lb < la {
        for pos in 0..=la - lb {
            if a.lhs[pos..pos + lb] == b.lhs[..] {
                let route1 = a.rhs.clone();
                let pre = FreePoly::word(params, a.lhs[..pos].to_vec());
                let post = FreePoly::word(params, a.lhs[pos + lb..].to_vec());
                let route2 = pre.mul(&b.rhs).mul(&post);
                out.push((route1, route2));
            }
        }
    }
    out
}

/// Convenience: a rational-coefficient free polynomial from (coefficient,
/// word) pairs.
pub fn free_poly(params: &Arc<ParamSet>, terms: &[(BigRational, &[Letter])]) -> FreePoly {
    let mut p = FreePoly::zero(params);
    for (c, w) in terms {
        p.add_term(w.to_vec(), Scalar::constant(params, c.clone()));
    }
    p
}
