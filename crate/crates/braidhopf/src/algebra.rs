//! Finite-dimensional algebras from presentations, and diagonally braided
//! bialgebras on top of them.
//!
//! Construction pipeline: orient the relations into a rewriting system,
//! complete it under critical pairs (capped), enumerate normal words, build
//! the multiplication table, then certify the table by an exhaustive
//! associativity check over all basis triples. Completion is never trusted;
//! the certification is what validates the table.
//!
//! A presented basis (e.g. a PBW-style basis using composite letters) may be
//! layered on top of the normal-word basis through an invertible change of
//! basis; all public tables are expressed in the presented basis.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::scalar::{ParamSet, Scalar, Sign};
use crate::word::{word_degree, FreePoly, RewriteSystem, Word, WordError};

/// Multidegree in N^theta.
pub type MultiDegree = Vec<u32>;

/// Sum of two multidegrees.
pub fn deg_add(a: &MultiDegree, b: &MultiDegree) -> MultiDegree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Total degree.
pub fn deg_total(a: &MultiDegree) -> u32 {
    a.iter().sum()
}

/// A sparse element in the presented basis of an algebra; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    coords: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element {
            coords: BTreeMap::new(),
        }
    }

    /// The basis element with index `i`.
    pub fn basis(params: &Arc<ParamSet>, i: usize) -> Element {
        let mut e = Element::zero();
        e.add_term(i, Scalar::one(params));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coords.get(&i)
    }

    /// Coefficient as an owned scalar, zero when absent.
    pub fn coeff_or_zero(&self, params: &Arc<ParamSet>, i: usize) -> Scalar {
        self.coords
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(params))
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coords.entry(i) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.coords {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.coords {
            out.add_term(i, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (&i, v) in &self.coords {
            out.add_term(i, v * c);
        }
        out
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero();
        for (&i, v) in &self.coords {
            out.add_term(i, -v.clone());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    /// Render with the given basis names, deterministic term order.
    pub fn display(&self, names: &[String]) -> String {
        if self.coords.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&i, c)) in self.coords.iter().enumerate() {
            let cs = c.to_string();
            if k > 0 {
                out.push_str(" + ");
            }
            if names[i] == "1" {
                out.push_str(&cs);
            } else if cs == "1" {
                out.push_str(&names[i]);
            } else if cs == "-1" {
                out.push('-');
                out.push_str(&names[i]);
            } else if cs.contains(" + ") || cs.contains(" - ") {
                out.push('(');
                out.push_str(&cs);
                out.push_str(")*");
                out.push_str(&names[i]);
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&names[i]);
            }
        }
        out
    }
}

/// Sparse sum of tensors c * (b_i (x) b_j).
pub type PairTerms = Vec<(usize, usize, Scalar)>;

/// Sparse sum of tensors c * (b_i (x) b_j (x) b_k).
pub type TripleTerms = Vec<(usize, usize, usize, Scalar)>;

/// A presentation of a finite-dimensional algebra with a diagonal braiding.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub params: Arc<ParamSet>,
    /// Generator display names, e.g. `x1`, `x2`.
    pub generators: Vec<String>,
    /// Multidegree of each generator.
    pub degrees: Vec<MultiDegree>,
    /// Diagonal braiding matrix, entries in {+1, -1}.
    pub braiding: Vec<Vec<Sign>>,
    /// Relations, each a free polynomial required to vanish.
    pub relations: Vec<FreePoly>,
    /// Declared dimension; the normal-word count must match it exactly.
    pub dimension: usize,
    /// Presented basis: display name plus expansion over the generators.
    /// When absent, the normal words themselves are presented.
    pub basis: Option<Vec<(String, FreePoly)>>,
}

/// Errors from algebra construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    /// Rewriting-system construction failed (orientation or budget).
    Rewriting(WordError),
    /// More normal words than the declared dimension: the presentation is
    /// inconsistent with its declared dimension.
    DimensionExceeded { declared: usize },
    /// Fewer normal words than declared.
    DimensionMismatch { declared: usize, found: usize },
    /// The certified associativity check failed on a basis triple, meaning
    /// the completed rewriting system is not confluent.
    AssociativityFailure { i: usize, j: usize, k: usize },
    /// A relation or presented-basis polynomial is not multidegree
    /// homogeneous.
    NonHomogeneous(String),
    /// The presented basis does not span / is not linearly independent.
    BasisChangeSingular,
    /// Anything else structurally wrong with the presentation.
    BadPresentation(String),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Rewriting(e) => write!(f, "rewriting failure: {e}"),
            BuildError::DimensionExceeded { declared } => {
                write!(f, "presentation inconsistent: more basis words than the declared dimension {declared}")
            }
            BuildError::DimensionMismatch { declared, found } => {
                write!(f, "declared dimension {declared} but found {found} basis words")
            }
            BuildError::AssociativityFailure { i, j, k } => {
                write!(f, "incomplete rewriting: associativity fails on basis triple ({i}, {j}, {k})")
            }
            BuildError::NonHomogeneous(s) => write!(f, "not multidegree homogeneous: {s}"),
            BuildError::BasisChangeSingular => {
                write!(f, "presented basis is not an invertible change of basis")
            }
            BuildError::BadPresentation(s) => write!(f, "bad presentation: {s}"),
        }
    }
}

impl From<WordError> for BuildError {
    fn from(e: WordError) -> BuildError {
        BuildError::Rewriting(e)
    }
}

/// Invert a square scalar matrix whose pivots can always be chosen among
/// nonzero constant entries (true for triangular-with-unit-leading-term
/// changes of basis). Returns None otherwise.
fn invert_scalar_matrix(m: &[Vec<Scalar>], params: &Arc<ParamSet>) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::one(params)
                    } else {
                        Scalar::zero(params)
                    }
                })
                .collect()
        })
        .collect();
    let mut used = vec![false; n];
    let mut pivot_of_col: Vec<usize> = vec![usize::MAX; n];
    for col in 0..n {
        // pick an unused row whose entry in this column is a nonzero constant
        let mut pick = None;
        for (r, row) in a.iter().enumerate() {
            if used[r] {
                continue;
            }
            if let Some(c) = row[col].as_constant() {
                if !c.is_zero() {
                    pick = Some((r, c));
                    break;
                }
            }
        }
        let (r, c) = pick?;
        used[r] = true;
        pivot_of_col[col] = r;
        let scale = Scalar::constant(params, c.recip());
        for j in 0..n {
            a[r][j] = &a[r][j] * &scale;
            inv[r][j] = &inv[r][j] * &scale;
        }
        for rr in 0..n {
            if rr == r || a[rr][col].is_zero() {
                continue;
            }
            let f = a[rr][col].clone();
            for j in 0..n {
                let t = &f * &a[r][j];
                a[rr][j] = &a[rr][j] - &t;
                let t2 = &f * &inv[r][j];
                inv[rr][j] = &inv[rr][j] - &t2;
            }
        }
    }
    // now a is a permutation matrix sending row pivot_of_col[c] to e_c;
    // un-permute the inverse accordingly
    let mut out = vec![vec![Scalar::zero(params); n]; n];
    for col in 0..n {
        let r = pivot_of_col[col];
        if r == usize::MAX {
            return None;
        }
        out[col] = inv[r].clone();
    }
    Some(out)
}

/// A finite-dimensional algebra with a certified multiplication table over
/// a presented basis.
#[derive(Clone, Debug)]
pub struct TableAlgebra {
    pub params: Arc<ParamSet>,
    /// Presented basis display names; `names[unit]` is `1`.
    pub names: Vec<String>,
    /// Internal normal-word basis, deg-lex sorted; index 0 is the empty word.
    pub words: Vec<Word>,
    /// Presented index of the unit element.
    pub unit: usize,
    mult: Vec<Vec<Element>>,
    /// Row i: word coordinates of presented basis element i.
    pub to_words: Vec<Vec<Scalar>>,
    /// Row w: presented coordinates of normal word w.
    pub from_words: Vec<Vec<Scalar>>,
    pub rewriter: RewriteSystem,
}

impl TableAlgebra {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Build the certified multiplication table.
    pub fn build(
        params: &Arc<ParamSet>,
        gen_count: usize,
        relations: &[FreePoly],
        dimension: usize,
        presented: &[(String, FreePoly)],
    ) -> Result<TableAlgebra, BuildError> {
        let rewriter = RewriteSystem::complete(params, relations, 128, 16)?;
        let words = rewriter.normal_words(gen_count, dimension);
        if words.len() > dimension {
            return Err(BuildError::DimensionExceeded {
                declared: dimension,
            });
        }
        if words.len() < dimension {
            return Err(BuildError::DimensionMismatch {
                declared: dimension,
                found: words.len(),
            });
        }
        let n = dimension;
        let word_index: BTreeMap<Word, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let word_coords = |p: &FreePoly| -> Result<Vec<Scalar>, BuildError> {
            let mut v = vec![Scalar::zero(params); n];
            for (w, c) in p.terms() {
                let Some(&i) = word_index.get(w) else {
                    return Err(BuildError::BadPresentation(format!(
                        "normal form contains a non-basis word {w:?}"
                    )));
                };
                v[i] = &v[i] + c;
            }
            Ok(v)
        };
        // products of normal words, in word coordinates
        let mut word_mult: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n);
        for a in &words {
            let mut row = Vec::with_capacity(n);
            for b in &words {
                let mut w = a.clone();
                w.extend_from_slice(b);
                row.push(word_coords(&rewriter.normal_form_word(&w))?);
            }
            word_mult.push(row);
        }
        if presented.len() != n {
            return Err(BuildError::BadPresentation(format!(
                "presented basis has {} elements, dimension is {n}",
                presented.len()
            )));
        }
        let mut to_words: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        for (_, poly) in presented {
            to_words.push(word_coords(&rewriter.normal_form(poly))?);
        }
        let from_words =
            invert_scalar_matrix(&to_words, params).ok_or(BuildError::BasisChangeSingular)?;
        // verify the inverse exactly; this also guards the pivot heuristic
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero(params);
                for w in 0..n {
                    acc += &(&to_words[i][w] * &from_words[w][j]);
                }
                let expect = if i == j {
                    Scalar::one(params)
                } else {
                    Scalar::zero(params)
                };
                if acc != expect {
                    return Err(BuildError::BasisChangeSingular);
                }
            }
        }
        let words_to_presented = |wc: &[Scalar]| -> Element {
            // presented coords p satisfy p^T * to_words = wc, so
            // p_i = sum_w wc_w * from_words[w][i]
            let mut e = Element::zero();
            for i in 0..n {
                let mut acc = Scalar::zero(params);
                for (w, c) in wc.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    acc += &(c * &from_words[w][i]);
                }
                e.add_term(i, acc);
            }
            e
        };
        let mut mult: Vec<Vec<Element>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                // expand presented i and j into words, multiply, convert back
                let mut wc = vec![Scalar::zero(params); n];
                for (wa, ca) in to_words[i].iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (wb, cb) in to_words[j].iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let prod = &word_mult[wa][wb];
                        let f = ca * cb;
                        for (k, pc) in prod.iter().enumerate() {
                            if pc.is_zero() {
                                continue;
                            }
                            wc[k] += &(&f * pc);
                        }
                    }
                }
                row.push(words_to_presented(&wc));
            }
            mult.push(row);
        }
        // locate the unit among presented elements
        let mut unit = None;
        for (i, row) in to_words.iter().enumerate() {
            let is_unit = row
                .iter()
                .enumerate()
                .all(|(w, c)| if w == 0 { c.is_one() } else { c.is_zero() });
            if is_unit {
                unit = Some(i);
                break;
            }
        }
        let Some(unit) = unit else {
            return Err(BuildError::BadPresentation(
                "presented basis does not contain the unit".to_string(),
            ));
        };
        let alg = TableAlgebra {
            params: params.clone(),
            names: presented.iter().map(|(n, _)| n.clone()).collect(),
            words,
            unit,
            mult,
            to_words,
            from_words,
            rewriter,
        };
        // certify: exhaustive associativity and unit laws over all triples
        for i in 0..n {
            if alg.basis_product(i, unit) != &Element::basis(params, i)
                || alg.basis_product(unit, i) != &Element::basis(params, i)
            {
                return Err(BuildError::AssociativityFailure { i, j: unit, k: i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = alg.basis_product(i, j).clone();
                for k in 0..n {
                    let left = alg.multiply(&ij, &Element::basis(params, k));
                    let right = alg.multiply(
                        &Element::basis(params, i),
                        alg.basis_product(j, k),
                    );
                    if left != right {
                        return Err(BuildError::AssociativityFailure { i, j, k });
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The product of two presented basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &Element {
        &self.mult[i][j]
    }

    /// Bilinear product of elements in presented coordinates.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let f = ca * cb;
                for (k, ck) in self.mult[i][j].iter() {
                    out.add_term(k, &f * ck);
                }
            }
        }
        out
    }

    pub fn unit_element(&self) -> Element {
        Element::basis(&self.params, self.unit)
    }

    /// Expand a free polynomial over the generators into presented
    /// coordinates.
    pub fn element_from_free(&self, p: &FreePoly) -> Element {
        let n = self.dim();
        let nf = self.rewriter.normal_form(p);
        let mut out = Element::zero();
        for (w, c) in nf.terms() {
            let idx = self
                .words
                .iter()
                .position(|x| x == w)
                .expect("normal form outside the basis");
            for i in 0..n {
                out.add_term(i, c * &self.from_words[idx][i]);
            }
        }
        out
    }
}

/// A finite-dimensional bialgebra in a category of diagonally braided
/// vector spaces: a certified table algebra plus a multidegree grading, the
/// braiding matrix and the (braided) comultiplication table.
#[derive(Clone, Debug)]
pub struct BraidedBialgebra {
    pub alg: TableAlgebra,
    pub gen_count: usize,
    pub gen_degrees: Vec<MultiDegree>,
    pub braiding: Vec<Vec<Sign>>,
    /// Multidegree of each presented basis element.
    pub degrees: Vec<MultiDegree>,
    /// Full comultiplication of each presented basis element.
    pub comult: Vec<PairTerms>,
}

impl BraidedBialgebra {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.alg.params
    }

    pub fn unit(&self) -> usize {
        self.alg.unit
    }

    /// The braiding sign chi(a, b) = prod q_ij^{a_i b_j}.
    pub fn chi(&self, a: &MultiDegree, b: &MultiDegree) -> Sign {
        let mut parity = 0u64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                if self.braiding[i][j] == Sign::Minus {
                    parity += (ai as u64) * (bj as u64);
                }
            }
        }
        Sign::neg_pow(parity)
    }

    /// Build a braided bialgebra whose comultiplication makes every
    /// generator primitive.
    pub fn build_from_presentation(p: &Presentation) -> Result<BraidedBialgebra, BuildError> {
        let theta = p.generators.len();
        if p.braiding.len() != theta || p.braiding.iter().any(|r| r.len() != theta) {
            return Err(BuildError::BadPresentation(
                "braiding matrix shape does not match the generator count".to_string(),
            ));
        }
        let gen_degrees: Vec<Vec<u32>> = p.degrees.clone();
        if gen_degrees.len() != theta {
            return Err(BuildError::BadPresentation(
                "generator degree list length mismatch".to_string(),
            ));
        }
        for rel in &p.relations {
            if rel.homogeneous_degree(&gen_degrees).is_none() {
                return Err(BuildError::NonHomogeneous(format!("relation {rel:?}")));
            }
        }
        let presented: Vec<(String, FreePoly)> = match &p.basis {
            Some(b) => b.clone(),
            None => {
                // presented basis = normal words, named by their letters
                let sys = RewriteSystem::complete(&p.params, &p.relations, 128, 16)?;
                let words = sys.normal_words(theta, p.dimension);
                words
                    .iter()
                    .map(|w| {
                        let name = if w.is_empty() {
                            "1".to_string()
                        } else {
                            w.iter()
                                .map(|&l| p.generators[l as usize].clone())
                                .collect::<Vec<_>>()
                                .join("*")
                        };
                        (name, FreePoly::word(&p.params, w.clone()))
                    })
                    .collect()
            }
        };
        for (name, poly) in &presented {
            if poly.homogeneous_degree(&gen_degrees).is_none() {
                return Err(BuildError::NonHomogeneous(format!(
                    "presented basis element {name}"
                )));
            }
        }
        let alg = TableAlgebra::build(&p.params, theta, &p.relations, p.dimension, &presented)?;
        let degrees: Vec<MultiDegree> = presented
            .iter()
            .map(|(_, poly)| {
                poly.homogeneous_degree(&gen_degrees)
                    .unwrap_or_else(|| vec![0; gen_degrees[0].len()])
            })
            .collect();
        let mut b = BraidedBialgebra {
            alg,
            gen_count: theta,
            gen_degrees,
            braiding: p.braiding.clone(),
            degrees,
            comult: Vec::new(),
        };
        b.comult = b.compute_comult()?;
        b.verify_bialgebra_axioms()
            .map_err(BuildError::BadPresentation)?;
        Ok(b)
    }

    /// Comultiplication on words: extend Delta(x_i) = x_i (x) 1 + 1 (x) x_i
    /// multiplicatively in the braided tensor square.
    fn compute_comult(&self) -> Result<Vec<PairTerms>, BuildError> {
        let params = self.params().clone();
        let n = self.dim();
        let words = self.alg.words.clone();
        // word-level multidegrees
        let word_deg: Vec<MultiDegree> = words
            .iter()
            .map(|w| word_degree(w, &self.gen_degrees))
            .collect();
        // word-level products in word coordinates
        let word_prod = |wi: usize, l: u8| -> Vec<(usize, Scalar)> {
            let mut w = words[wi].clone();
            w.push(l);
            let nf = self.alg.rewriter.normal_form_word(&w);
            nf.terms()
                .map(|(word, c)| {
                    let idx = words
                        .iter()
                        .position(|x| x == word)
                        .expect("normal form outside basis");
                    (idx, c.clone())
                })
                .collect()
        };
        let mut word_comult: Vec<BTreeMap<(usize, usize), Scalar>> = Vec::with_capacity(n);
        for w in &words {
            let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            acc.insert((0, 0), Scalar::one(&params));
            for &l in w {
                let mut next: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (&(i, j), c) in &acc {
                    // (u (x) v) * (x_l (x) 1): braiding moves v past x_l
                    let chi = self.chi(&word_deg[j], &self.gen_degrees[l as usize]);
                    for (i2, c2) in word_prod(i, l) {
                        let term = &(c * &c2).scale(&chi.rational());
                        let e = next.entry((i2, j)).or_insert_with(|| Scalar::zero(&params));
                        *e += term;
                    }
                    // (u (x) v) * (1 (x) x_l): no braiding
                    for (j2, c2) in word_prod(j, l) {
                        let e = next.entry((i, j2)).or_insert_with(|| Scalar::zero(&params));
                        *e += &(c * &c2);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                acc = next;
            }
            word_comult.push(acc);
        }
        // convert both legs to presented coordinates
        let mut out: Vec<PairTerms> = Vec::with_capacity(n);
        for p in 0..n {
            let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (w, cw) in self.alg.to_words[p].iter().enumerate() {
                if cw.is_zero() {
                    continue;
                }
                for (&(wi, wj), c) in &word_comult[w] {
                    for (pi, ci) in self.alg.from_words[wi].iter().enumerate() {
                        if ci.is_zero() {
                            continue;
                        }
                        for (pj, cj) in self.alg.from_words[wj].iter().enumerate() {
                            if cj.is_zero() {
                                continue;
                            }
                            let term = &(&(cw * c) * ci) * cj;
                            if term.is_zero() {
                                continue;
                            }
                            let e = acc
                                .entry((pi, pj))
                                .or_insert_with(|| Scalar::zero(&params));
                            *e += &term;
                        }
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            out.push(
                acc.into_iter()
                    .map(|((i, j), c)| (i, j, c))
                    .collect::<Vec<_>>(),
            );
        }
        Ok(out)
    }

    /// Full comultiplication of a basis element.
    pub fn comult_basis(&self, i: usize) -> &PairTerms {
        &self.comult[i]
    }

    /// Full comultiplication, extended linearly.
    pub fn comultiply(&self, a: &Element) -> PairTerms {
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (i, c) in a.iter() {
            for (l, r, d) in &self.comult[i] {
                let term = c * d;
                if term.is_zero() {
                    continue;
                }
                let e = acc
                    .entry((*l, *r))
                    .or_insert_with(|| Scalar::zero(self.params()));
                *e += &term;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc.into_iter().map(|((i, j), c)| (i, j, c)).collect()
    }

    /// Two-fold comultiplication of a basis element, as (Delta (x) id) Delta.
    pub fn comult2_basis(&self, i: usize) -> TripleTerms {
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (l, r, c) in &self.comult[i] {
            for (l2, r2, c2) in &self.comult[*l] {
                let term = c * c2;
                if term.is_zero() {
                    continue;
                }
                let e = acc
                    .entry((*l2, *r2, *r))
                    .or_insert_with(|| Scalar::zero(self.params()));
                *e += &term;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc.into_iter().map(|((a, b, d), c)| (a, b, d, c)).collect()
    }

    /// Restricted comultiplication: Delta(b) - b (x) 1 - 1 (x) b for basis
    /// elements of positive degree, and 1 (x) 1 for the unit.
    pub fn restricted_comult(&self, i: usize) -> PairTerms {
        let u = self.unit();
        if i == u {
            return vec![(u, u, Scalar::one(self.params()))];
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (l, r, c) in &self.comult[i] {
            let e = acc
                .entry((*l, *r))
                .or_insert_with(|| Scalar::zero(self.params()));
            *e += c;
        }
        for key in [(i, u), (u, i)] {
            let e = acc
                .entry(key)
                .or_insert_with(|| Scalar::zero(self.params()));
            *e -= &Scalar::one(self.params());
        }
        acc.retain(|_, c| !c.is_zero());
        acc.into_iter().map(|((l, r), c)| (l, r, c)).collect()
    }

    /// Counit: the coefficient of the unit in presented coordinates equals
    /// the coefficient of the empty word.
    pub fn counit(&self, a: &Element) -> Scalar {
        let mut acc = Scalar::zero(self.params());
        for (i, c) in a.iter() {
            let coeff = &self.alg.to_words[i][0];
            if !coeff.is_zero() {
                acc += &(c * coeff);
            }
        }
        acc
    }

    /// Diagonal action of the group element with exponent vector `exps` on
    /// the realization generators: the basis element of multidegree d is an
    /// eigenvector with eigenvalue prod q_ij^{exps_i d_j}.
    pub fn yd_action(&self, exps: &[i64], a: &Element) -> Element {
        let mut out = Element::zero();
        for (i, c) in a.iter() {
            let sign = self.action_sign(exps, &self.degrees[i]);
            out.add_term(i, c.scale(&sign.rational()));
        }
        out
    }

    /// The eigenvalue of g^exps on a homogeneous element of multidegree d.
    pub fn action_sign(&self, exps: &[i64], d: &MultiDegree) -> Sign {
        let mut parity: u64 = 0;
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for (j, &dj) in d.iter().enumerate() {
                if dj == 0 {
                    continue;
                }
                if self.braiding[i][j] == Sign::Minus {
                    parity += (e.unsigned_abs() % 2) * (dj as u64);
                }
            }
        }
        Sign::neg_pow(parity)
    }

    /// The Yetter-Drinfeld coaction degree of a homogeneous element: the
    /// exponent vector of the group-like g^{deg b}.
    pub fn coaction_exponent(&self, i: usize) -> Vec<i64> {
        self.degrees[i].iter().map(|&d| d as i64).collect()
    }

    /// Certify the coalgebra and compatibility axioms exhaustively on the
    /// basis: counit laws, coassociativity, multiplicativity of the
    /// comultiplication in the braided tensor square, the counit being an
    /// algebra map, and homogeneity of every comultiplication leg pair.
    pub fn verify_bialgebra_axioms(&self) -> Result<(), String> {
        let params = self.params().clone();
        let n = self.dim();
        for i in 0..n {
            // counit laws: (eps (x) id) Delta = id = (id (x) eps) Delta
            let mut left = Element::zero();
            let mut right = Element::zero();
            for (l, r, c) in &self.comult[i] {
                left.add_term(*r, c * &self.counit(&Element::basis(&params, *l)));
                right.add_term(*l, c * &self.counit(&Element::basis(&params, *r)));
            }
            let id = Element::basis(&params, i);
            if left != id || right != id {
                return Err(format!("counit law fails on basis {i}"));
            }
            // coassociativity
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (l, r, c) in &self.comult[i] {
                for (l2, r2, c2) in &self.comult[*l] {
                    let term = c * c2;
                    if term.is_zero() {
                        continue;
                    }
                    *lhs.entry((*l2, *r2, *r))
                        .or_insert_with(|| Scalar::zero(&params)) += &term;
                }
            }
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (l, r, c) in &self.comult[i] {
                for (l2, r2, c2) in &self.comult[*r] {
                    let term = c * c2;
                    if term.is_zero() {
                        continue;
                    }
                    *rhs.entry((*l, *l2, *r2))
                        .or_insert_with(|| Scalar::zero(&params)) += &term;
                }
            }
            lhs.retain(|_, c| !c.is_zero());
            rhs.retain(|_, c| !c.is_zero());
            if lhs != rhs {
                return Err(format!("coassociativity fails on basis {i}"));
            }
            // grading: every leg pair adds up to the parent multidegree
            for (l, r, c) in &self.comult[i] {
                if c.is_zero() {
                    continue;
                }
                if deg_add(&self.degrees[*l], &self.degrees[*r]) != self.degrees[i] {
                    return Err(format!("comultiplication leg degrees fail on basis {i}"));
                }
            }
        }
        // Delta is an algebra map into the braided tensor square, and the
        // counit is an algebra map
        for i in 0..n {
            for j in 0..n {
                let prod = self.alg.basis_product(i, j);
                let lhs = self.comultiply(prod);
                let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (l1, r1, c1) in &self.comult[i] {
                    for (l2, r2, c2) in &self.comult[j] {
                        let sign = self.chi(&self.degrees[*r1], &self.degrees[*l2]);
                        let f = (c1 * c2).scale(&sign.rational());
                        if f.is_zero() {
                            continue;
                        }
                        let pl = self.alg.basis_product(*l1, *l2);
                        let pr = self.alg.basis_product(*r1, *r2);
                        for (a, ca) in pl.iter() {
                            for (b, cb) in pr.iter() {
                                let term = &(&f * ca) * cb;
                                if term.is_zero() {
                                    continue;
                                }
                                *acc.entry((a, b)).or_insert_with(|| Scalar::zero(&params)) +=
                                    &term;
                            }
                        }
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                let rhs: PairTerms = acc.into_iter().map(|((a, b), c)| (a, b, c)).collect();
                let mut lhs_sorted = lhs;
                lhs_sorted.sort_by_key(|(a, b, _)| (*a, *b));
                if lhs_sorted != rhs {
                    return Err(format!(
                        "comultiplication is not multiplicative on basis pair ({i}, {j})"
                    ));
                }
                let eps_prod = self.counit(prod);
                let eps_sep = &self.counit(&Element::basis(&params, i))
                    * &self.counit(&Element::basis(&params, j));
                if eps_prod != eps_sep {
                    return Err(format!("counit is not multiplicative on basis pair ({i}, {j})"));
                }
            }
        }
        Ok(())
    }
}
