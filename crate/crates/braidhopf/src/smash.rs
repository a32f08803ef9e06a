//! Smash products with a finite abelian group algebra: the bosonization
//! A = B#kG, its lazily evaluated Hopf structure, factored functionals
//! sigma_B#eps, the two deformed products, and the bosonized cleft object
//! C = E#kG with its A-level section.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{
    deg_add, deg_total, BraidedBialgebra, Element, MultiDegree, PairTerms, TripleTerms,
};
use crate::cleft::{CleftAlgebra, Section};
use crate::cocycle::{act_unit, inverse2, Functional1, Functional2};
use crate::scalar::{Scalar, Sign};
use alloc::collections::BTreeMap;

/// A finite abelian group as a product of cyclic factors, with designated
/// group-likes and characters realizing a diagonal braiding. A factor
/// order of 0 marks a copy of the integers; such factors support the
/// character machinery but not basis enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    /// Cyclic factor orders.
    pub orders: Vec<u32>,
    /// Designated group-likes g_1..g_theta as exponent vectors.
    pub gens: Vec<Vec<u32>>,
    /// chars[j][k] is the value of chi_j on the k-th factor generator.
    pub chars: Vec<Vec<Sign>>,
}

impl GroupData {
    /// Validate shapes, well-definedness of the characters on each cyclic
    /// factor, and the realization constraint chi_j(g_i) = q_ij.
    pub fn new(
        orders: Vec<u32>,
        gens: Vec<Vec<u32>>,
        chars: Vec<Vec<Sign>>,
        braiding: &[Vec<Sign>],
    ) -> Result<GroupData, String> {
        let theta = braiding.len();
        if gens.len() != theta || chars.len() != theta {
            return Err("need one group-like and one character per generator".to_string());
        }
        let rank = orders.len();
        if gens.iter().any(|g| g.len() != rank) || chars.iter().any(|c| c.len() != rank) {
            return Err("exponent vector rank does not match the factor count".to_string());
        }
        for row in chars.iter() {
            for (k, s) in row.iter().enumerate() {
                if *s == Sign::Minus && orders[k] % 2 == 1 && orders[k] != 0 {
                    return Err(format!(
                        "character value -1 is ill-defined on a factor of odd order {}",
                        orders[k]
                    ));
                }
            }
        }
        let data = GroupData {
            orders,
            gens,
            chars,
        };
        for i in 0..theta {
            for j in 0..theta {
                if data.char_value(j, &data.gens[i]) != braiding[i][j] {
                    return Err(format!(
                        "realization constraint fails: chi_{j}(g_{i}) differs from the braiding entry ({i},{j})"
                    ));
                }
            }
        }
        // sign-valued characters square to the trivial character, which is
        // what nonzero deformation parameters require
        for row in data.chars.iter() {
            for s in row {
                assert_eq!(s.mul(*s), Sign::Plus);
            }
        }
        Ok(data)
    }

    /// chi_j at the group element with the given exponent vector.
    pub fn char_value(&self, j: usize, exps: &[u32]) -> Sign {
        let mut parity = 0u64;
        for (k, &e) in exps.iter().enumerate() {
            if self.chars[j][k] == Sign::Minus {
                parity += e as u64;
            }
        }
        Sign::neg_pow(parity)
    }
}

/// The principal realization over a product of cyclic groups: g_i is the
/// i-th factor generator and chi_j(g_i) = q_ij.
pub fn principal_group(braiding: &[Vec<Sign>], orders: &[u32]) -> Result<GroupData, String> {
    let theta = braiding.len();
    if orders.len() != theta {
        return Err("the principal realization needs one cyclic factor per generator".to_string());
    }
    let mut gens = Vec::with_capacity(theta);
    let mut chars = Vec::with_capacity(theta);
    for i in 0..theta {
        let mut e = vec![0u32; theta];
        e[i] = 1;
        gens.push(e);
        chars.push((0..theta).map(|k| braiding[k][i]).collect());
    }
    GroupData::new(orders.to_vec(), gens, chars, braiding)
}

/// The group algebra of a finite GroupData with an enumerated basis.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub data: GroupData,
    elts: Vec<Vec<u32>>,
    /// char_of[g][j] = chi_j(g) for the enumerated element g.
    char_of: Vec<Vec<Sign>>,
}

impl GroupAlgebra {
    pub fn new(data: GroupData) -> Result<GroupAlgebra, String> {
        if data.orders.iter().any(|&n| n == 0) {
            return Err(
                "the smash basis needs a finite group; an infinite factor was declared"
                    .to_string(),
            );
        }
        let rank = data.orders.len();
        let size: usize = data.orders.iter().map(|&n| n as usize).product();
        let mut elts = Vec::with_capacity(size);
        for i in 0..size {
            let mut rem = i;
            let mut exps = vec![0u32; rank];
            for k in (0..rank).rev() {
                let n = data.orders[k] as usize;
                exps[k] = (rem % n) as u32;
                rem /= n;
            }
            elts.push(exps);
        }
        let theta = data.chars.len();
        let char_of = elts
            .iter()
            .map(|e| (0..theta).map(|j| data.char_value(j, e)).collect())
            .collect();
        Ok(GroupAlgebra {
            data,
            elts,
            char_of,
        })
    }

    pub fn size(&self) -> usize {
        self.elts.len()
    }

    pub fn elt(&self, i: usize) -> &[u32] {
        &self.elts[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> usize {
        let mut idx = 0usize;
        for (k, &n) in self.data.orders.iter().enumerate() {
            idx = idx * n as usize + (exps[k] % n) as usize;
        }
        idx
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let a = &self.elts[i];
        let b = &self.elts[j];
        let exps: Vec<u32> = self
            .data
            .orders
            .iter()
            .enumerate()
            .map(|(k, &n)| (a[k] + b[k]) % n)
            .collect();
        self.index_of(&exps)
    }

    pub fn inv(&self, i: usize) -> usize {
        let a = &self.elts[i];
        let exps: Vec<u32> = self
            .data
            .orders
            .iter()
            .enumerate()
            .map(|(k, &n)| (n - a[k]) % n)
            .collect();
        self.index_of(&exps)
    }

    /// Index of the designated group-like g_i.
    pub fn gen_index(&self, i: usize) -> usize {
        self.index_of(&self.data.gens[i])
    }

    /// Index of g^d = prod_i g_i^{d_i} for a multidegree d.
    pub fn power_of_designated(&self, d: &MultiDegree) -> usize {
        let rank = self.data.orders.len();
        let mut exps = vec![0u64; rank];
        for (i, &di) in d.iter().enumerate() {
            for k in 0..rank {
                exps[k] += di as u64 * self.data.gens[i][k] as u64;
            }
        }
        let reduced: Vec<u32> = exps
            .iter()
            .zip(self.data.orders.iter())
            .map(|(&e, &n)| (e % n as u64) as u32)
            .collect();
        self.index_of(&reduced)
    }

    /// The eigenvalue chi^d(g) of the enumerated element g on a
    /// homogeneous element of multidegree d.
    pub fn action_sign(&self, g: usize, d: &MultiDegree) -> Sign {
        let mut parity = 0u64;
        for (j, &dj) in d.iter().enumerate() {
            if self.char_of[g][j] == Sign::Minus {
                parity += dj as u64;
            }
        }
        Sign::neg_pow(parity)
    }

    /// Display name like `g1^2*g2` for the enumerated element.
    pub fn name(&self, i: usize) -> String {
        let exps = &self.elts[i];
        let mut parts = Vec::new();
        for (k, &e) in exps.iter().enumerate() {
            if e == 1 {
                parts.push(format!("g{}", k + 1));
            } else if e > 1 {
                parts.push(format!("g{}^{}", k + 1, e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// The bosonization A = B#kG: an ordinary Hopf algebra on the basis
/// {b # g}, with product and coproduct evaluated lazily from the defining
/// formulas rather than materialized as dimension-squared tables.
pub struct Bosonization<'a> {
    pub b: &'a BraidedBialgebra,
    pub h: &'a GroupAlgebra,
}

impl Bosonization<'_> {
    pub fn dim(&self) -> usize {
        self.b.dim() * self.h.size()
    }

    pub fn params(&self) -> &alloc::sync::Arc<crate::scalar::ParamSet> {
        self.b.params()
    }

    pub fn flat(&self, bi: usize, gi: usize) -> usize {
        bi * self.h.size() + gi
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.h.size(), i % self.h.size())
    }

    pub fn unit_flat(&self) -> usize {
        self.flat(self.b.unit(), self.h.identity())
    }

    pub fn basis_name(&self, i: usize) -> String {
        let (bi, gi) = self.split(i);
        format!("{}#{}", self.b.alg.names[bi], self.h.name(gi))
    }

    /// (b#h)(c#k) = b (h.c) # hk.
    pub fn product_basis(&self, i: usize, j: usize) -> Element {
        let (bi, gi) = self.split(i);
        let (bj, gj) = self.split(j);
        let sign = self.h.action_sign(gi, &self.b.degrees[bj]);
        let gk = self.h.mul(gi, gj);
        let mut out = Element::zero();
        for (m, c) in self.b.alg.basis_product(bi, bj).iter() {
            out.add_term(self.flat(m, gk), c.scale(&sign.rational()));
        }
        out
    }

    pub fn product(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (i, ci) in u.iter() {
            for (j, cj) in v.iter() {
                let w = ci * cj;
                if w.is_zero() {
                    continue;
                }
                for (m, cm) in self.product_basis(i, j).iter() {
                    out.add_term(m, cm * &w);
                }
            }
        }
        out
    }

    /// Delta(b#g) = b_(1) # g^{deg b_(2)} g (x) b_(2) # g.
    pub fn coproduct_basis(&self, i: usize) -> PairTerms {
        let (bi, gi) = self.split(i);
        let mut out = Vec::new();
        for (l, r, c) in &self.b.comult[bi] {
            let gl = self.h.mul(self.h.power_of_designated(&self.b.degrees[*r]), gi);
            out.push((self.flat(*l, gl), self.flat(*r, gi), c.clone()));
        }
        out
    }

    /// (Delta (x) id) Delta on a basis element.
    pub fn coproduct2_basis(&self, i: usize) -> TripleTerms {
        let mut out = Vec::new();
        for (l, r, c) in self.coproduct_basis(i) {
            for (l2, r2, c2) in self.coproduct_basis(l) {
                let w = &c * &c2;
                if !w.is_zero() {
                    out.push((l2, r2, r, w));
                }
            }
        }
        out
    }

    pub fn counit_basis(&self, i: usize) -> Scalar {
        let (bi, _gi) = self.split(i);
        self.b.counit(&Element::basis(self.params(), bi))
    }

    pub fn counit(&self, u: &Element) -> Scalar {
        let mut acc = Scalar::zero(self.params());
        for (i, c) in u.iter() {
            acc += &(c * &self.counit_basis(i));
        }
        acc
    }

    /// Exhaustive counit laws, coassociativity, and group-likeness of the
    /// kG part over the whole smash basis.
    pub fn verify_coalgebra(&self) -> Result<(), String> {
        let params = self.params().clone();
        for i in 0..self.dim() {
            let legs = self.coproduct_basis(i);
            let mut left = Element::zero();
            let mut right = Element::zero();
            for (l, r, c) in &legs {
                left.add_term(*r, c * &self.counit_basis(*l));
                right.add_term(*l, c * &self.counit_basis(*r));
            }
            let id = Element::basis(&params, i);
            if left != id || right != id {
                return Err(format!("counit law fails on smash basis {i}"));
            }
            let (bi, _gi) = self.split(i);
            if bi == self.b.unit() && legs != vec![(i, i, Scalar::one(&params))] {
                return Err(format!("group part of basis {i} is not group-like"));
            }
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (l, r, c) in &legs {
                for (l2, r2, c2) in self.coproduct_basis(*l) {
                    let w = c * &c2;
                    if !w.is_zero() {
                        *lhs.entry((l2, r2, *r)).or_insert_with(|| Scalar::zero(&params)) += &w;
                    }
                }
                for (l2, r2, c2) in self.coproduct_basis(*r) {
                    let w = c * &c2;
                    if !w.is_zero() {
                        *rhs.entry((*l, l2, r2)).or_insert_with(|| Scalar::zero(&params)) += &w;
                    }
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(format!("coassociativity fails on smash basis {i}"));
            }
        }
        Ok(())
    }

    /// Delta(uv) = Delta(u)Delta(v) in the ordinary tensor square, on the
    /// given flat basis pairs.
    pub fn verify_product_compat(&self, pairs: &[(usize, usize)]) -> Result<(), String> {
        let params = self.params().clone();
        for &(i, j) in pairs {
            let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (m, cm) in self.product_basis(i, j).iter() {
                for (l, r, c) in self.coproduct_basis(m) {
                    let w = cm * &c;
                    if !w.is_zero() {
                        *lhs.entry((l, r)).or_insert_with(|| Scalar::zero(&params)) += &w;
                    }
                }
            }
            let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (l1, r1, c1) in self.coproduct_basis(i) {
                for (l2, r2, c2) in self.coproduct_basis(j) {
                    let w = &c1 * &c2;
                    if w.is_zero() {
                        continue;
                    }
                    for (lm, cl) in self.product_basis(l1, l2).iter() {
                        for (rm, cr) in self.product_basis(r1, r2).iter() {
                            let t = &(&w * cl) * cr;
                            if !t.is_zero() {
                                *rhs.entry((lm, rm)).or_insert_with(|| Scalar::zero(&params)) +=
                                    &t;
                            }
                        }
                    }
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(format!(
                    "comultiplication is not an algebra map at pair ({i}, {j})"
                ));
            }
        }
        Ok(())
    }

    /// Associativity of the lazy product on the given flat basis triples.
    pub fn verify_associativity(&self, triples: &[(usize, usize, usize)]) -> Result<(), String> {
        let params = self.params().clone();
        for &(i, j, k) in triples {
            let left = self.product(&self.product_basis(i, j), &Element::basis(&params, k));
            let right = self.product(&Element::basis(&params, i), &self.product_basis(j, k));
            if left != right {
                return Err(format!("associativity fails at triple ({i}, {j}, {k})"));
            }
        }
        Ok(())
    }
}

/// A functional on A (x) A in factored form:
/// sigma(a#g, b#h) = sigma_B(a, g.b) eps(h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFunctional2 {
    pub on_b: Functional2,
}

impl FactoredFunctional2 {
    pub fn eval_basis(&self, a: &Bosonization, i: usize, j: usize) -> Scalar {
        let (bi, gi) = a.split(i);
        let (bj, _gj) = a.split(j);
        let sign = a.h.action_sign(gi, &a.b.degrees[bj]);
        self.on_b.get(bi, bj).scale(&sign.rational())
    }

    pub fn eval(&self, a: &Bosonization, u: &Element, v: &Element) -> Scalar {
        let mut acc = Scalar::zero(a.params());
        for (i, ci) in u.iter() {
            for (j, cj) in v.iter() {
                acc += &(&(ci * cj) * &self.eval_basis(a, i, j));
            }
        }
        acc
    }
}

/// A functional on A in factored form alpha(b#g) = alpha_B(b) eps(g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFunctional1 {
    pub on_b: Functional1,
}

impl FactoredFunctional1 {
    pub fn eval_basis(&self, a: &Bosonization, i: usize) -> Scalar {
        let (bi, _gi) = a.split(i);
        self.on_b.vals[bi].clone()
    }
}

/// Convolution inverse of a factored functional. Factored forms are
/// closed under the ordinary A-level convolution, where they multiply
/// exactly as braided convolutions of their B parts, so the inverse is
/// the braided inverse on B. The correspondence is not assumed silently:
/// the inverse is re-verified against the ordinary A-level convolution
/// over every basis pair.
pub fn factored_inverse(
    a: &Bosonization,
    f: &FactoredFunctional2,
) -> Result<FactoredFunctional2, String> {
    let inv = FactoredFunctional2 {
        on_b: inverse2(a.b, &f.on_b)?,
    };
    let params = a.params().clone();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let fwd = convolve2_smash_at(a, &|x, y| f.eval_basis(a, x, y), &|x, y| {
                inv.eval_basis(a, x, y)
            }, i, j);
            let bwd = convolve2_smash_at(a, &|x, y| inv.eval_basis(a, x, y), &|x, y| {
                f.eval_basis(a, x, y)
            }, i, j);
            let eps = &a.counit_basis(i) * &a.counit_basis(j);
            if fwd != eps || bwd != eps {
                return Err(format!(
                    "factored inverse fails the smash-level convolution identity at ({i}, {j})"
                ));
            }
        }
    }
    let _ = params;
    Ok(inv)
}

/// Ordinary A-level convolution of two functionals on A (x) A, evaluated
/// at one basis pair.
pub fn convolve2_smash_at(
    a: &Bosonization,
    f: &dyn Fn(usize, usize) -> Scalar,
    g: &dyn Fn(usize, usize) -> Scalar,
    i: usize,
    j: usize,
) -> Scalar {
    let mut acc = Scalar::zero(a.params());
    for (l1, r1, c1) in a.coproduct_basis(i) {
        for (l2, r2, c2) in a.coproduct_basis(j) {
            let w = &c1 * &c2;
            if w.is_zero() {
                continue;
            }
            let fv = f(l1, l2);
            if fv.is_zero() {
                continue;
            }
            acc += &(&(&w * &fv) * &g(r1, r2));
        }
    }
    acc
}

/// A failed smash-level cocycle triple with both side values.
#[derive(Clone, Debug)]
pub struct SmashCounterexample {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for SmashCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cocycle identity fails at smash triple ({}, {}, {})",
            self.u, self.v, self.w
        )
    }
}

/// Minimal deterministic generator for sampling basis indices in checks.
struct Lcg(u64);

impl Lcg {
    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() >> 17) as usize % n
    }
}

/// Exhaustive Hopf-cocycle check of a factored functional over the whole
/// bosonization. For u = a#g, v = b#h, w = c#k the two sides of the
/// ordinary cocycle identity
///   sum sigma(u1,v1) sigma(u2 v2, w) = sum sigma(v1,w1) sigma(u, v2 w2)
/// expand, using only homogeneity of comultiplication legs (certified at
/// build time) and multiplicativity of characters, to
///   lhs = chi_{deg b}(g) chi_{deg c}(g) chi_{deg c}(h) E(a,b,c)
///   rhs = chi_{deg c}(h) R(a,b,c; g)
/// with B-level leg sums E and R; neither side depends on k because the
/// factored form kills the group part of every second argument. The check
/// walks all (a,b,c,g,h) on the expanded forms and cross-checks the
/// expansion by brute-force evaluation of both sides from the smash
/// coproduct on deterministically sampled full triples, including
/// nontrivial k.
pub fn is_hopf_cocycle_smash(
    a: &Bosonization,
    sigma: &FactoredFunctional2,
) -> Result<(), SmashCounterexample> {
    let params = a.params().clone();
    let nb = a.b.dim();
    let gsize = a.h.size();
    // sigma_B against products: spl[i][j][k] = sigma_B(i, jk),
    // spr[i][j][k] = sigma_B(ij, k)
    let mut spl = vec![vec![vec![Scalar::zero(&params); nb]; nb]; nb];
    let mut spr = vec![vec![vec![Scalar::zero(&params); nb]; nb]; nb];
    for i in 0..nb {
        for j in 0..nb {
            let p = a.b.alg.basis_product(i, j);
            for k in 0..nb {
                let mut l = Scalar::zero(&params);
                let mut r = Scalar::zero(&params);
                for (m, cm) in p.iter() {
                    l += &(cm * sigma.on_b.get(k, m));
                    r += &(cm * sigma.on_b.get(m, k));
                }
                spl[k][i][j] = l;
                spr[i][j][k] = r;
            }
        }
    }
    for ab in 0..nb {
        for bb in 0..nb {
            for cb in 0..nb {
                let mut e = Scalar::zero(&params);
                for (a1, a2, ca) in &a.b.comult[ab] {
                    for (b1, b2, cbb) in &a.b.comult[bb] {
                        let s = sigma.on_b.get(*a1, *b1);
                        if s.is_zero() {
                            continue;
                        }
                        let chi = a.b.chi(&a.b.degrees[*a2], &a.b.degrees[*b1]);
                        let term = &(&(ca * cbb) * s) * &spr[*a2][*b2][cb];
                        e += &term.scale(&chi.rational());
                    }
                }
                // rhs components grouped by the g-character of
                // deg b_(2) + deg c_(2)
                let mut comps: Vec<(MultiDegree, Scalar)> = Vec::new();
                for (b1, b2, cbb) in &a.b.comult[bb] {
                    for (c1, c2, cc) in &a.b.comult[cb] {
                        let s = sigma.on_b.get(*b1, *c1);
                        if s.is_zero() {
                            continue;
                        }
                        let chi = a.b.chi(&a.b.degrees[*b2], &a.b.degrees[*c1]);
                        let val = (&(&(cbb * cc) * s) * &spl[ab][*b2][*c2])
                            .scale(&chi.rational());
                        if val.is_zero() {
                            continue;
                        }
                        let d = deg_add(&a.b.degrees[*b2], &a.b.degrees[*c2]);
                        match comps.iter_mut().find(|(k, _)| *k == d) {
                            Some((_, acc)) => *acc += &val,
                            None => comps.push((d, val)),
                        }
                    }
                }
                for g in 0..gsize {
                    let lsign = a
                        .h
                        .action_sign(g, &a.b.degrees[bb])
                        .mul(a.h.action_sign(g, &a.b.degrees[cb]));
                    let lhs_g = e.scale(&lsign.rational());
                    let mut rhs_g = Scalar::zero(&params);
                    for (d, val) in &comps {
                        rhs_g += &val.scale(&a.h.action_sign(g, d).rational());
                    }
                    for hh in 0..gsize {
                        let hsign = a.h.action_sign(hh, &a.b.degrees[cb]).rational();
                        let lhs = lhs_g.scale(&hsign);
                        let rhs = rhs_g.scale(&hsign);
                        if lhs != rhs {
                            return Err(SmashCounterexample {
                                u: a.flat(ab, g),
                                v: a.flat(bb, hh),
                                w: a.flat(cb, a.h.identity()),
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
    }
    // brute-force cross-check of the expansion on sampled full triples
    let mut lcg = Lcg(0x5eed_cafe_f00d_0001);
    let dim = a.dim();
    for _ in 0..200 {
        let u = lcg.below(dim);
        let v = lcg.below(dim);
        let w = lcg.below(dim);
        let (lhs, rhs) = cocycle_sides_smash(a, sigma, u, v, w);
        if lhs != rhs {
            return Err(SmashCounterexample { u, v, w, lhs, rhs });
        }
    }
    Ok(())
}

/// Both sides of the ordinary cocycle identity at one smash basis triple,
/// evaluated directly from the smash coproduct and product.
pub fn cocycle_sides_smash(
    a: &Bosonization,
    sigma: &FactoredFunctional2,
    u: usize,
    v: usize,
    w: usize,
) -> (Scalar, Scalar) {
    let params = a.params().clone();
    let wb = Element::basis(&params, w);
    let ub = Element::basis(&params, u);
    let mut lhs = Scalar::zero(&params);
    for (l1, r1, c1) in a.coproduct_basis(u) {
        for (l2, r2, c2) in a.coproduct_basis(v) {
            let s = sigma.eval_basis(a, l1, l2);
            if s.is_zero() {
                continue;
            }
            let p = a.product_basis(r1, r2);
            lhs += &(&(&(&c1 * &c2) * &s) * &sigma.eval(a, &p, &wb));
        }
    }
    let mut rhs = Scalar::zero(&params);
    for (l1, r1, c1) in a.coproduct_basis(v) {
        for (l2, r2, c2) in a.coproduct_basis(w) {
            let s = sigma.eval_basis(a, l1, l2);
            if s.is_zero() {
                continue;
            }
            let p = a.product_basis(r1, r2);
            rhs += &(&(&(&c1 * &c2) * &s) * &sigma.eval(a, &ub, &p));
        }
    }
    (lhs, rhs)
}

/// The deformed product u .sigma v = sigma(u1,v1) u2 v2 sigma^{-1}(u3,v3).
pub fn deform_product(
    a: &Bosonization,
    sigma: &FactoredFunctional2,
    sigma_inv: &FactoredFunctional2,
    u: &Element,
    v: &Element,
) -> Element {
    let mut out = Element::zero();
    for (i, ci) in u.iter() {
        for (j, cj) in v.iter() {
            let cij = ci * cj;
            if cij.is_zero() {
                continue;
            }
            for (i1, i2, i3, cu) in a.coproduct2_basis(i) {
                for (j1, j2, j3, cv) in a.coproduct2_basis(j) {
                    let s1 = sigma.eval_basis(a, i1, j1);
                    if s1.is_zero() {
                        continue;
                    }
                    let s3 = sigma_inv.eval_basis(a, i3, j3);
                    if s3.is_zero() {
                        continue;
                    }
                    let coeff = &(&(&cij * &cu) * &cv) * &(&s1 * &s3);
                    for (m, cm) in a.product_basis(i2, j2).iter() {
                        out.add_term(m, cm * &coeff);
                    }
                }
            }
        }
    }
    out
}

/// The cleft product u .(sigma) v = sigma(u1,v1) u2 v2.
pub fn cleft_multiply_smash(
    a: &Bosonization,
    sigma: &FactoredFunctional2,
    u: &Element,
    v: &Element,
) -> Element {
    let mut out = Element::zero();
    for (i, ci) in u.iter() {
        for (j, cj) in v.iter() {
            let cij = ci * cj;
            if cij.is_zero() {
                continue;
            }
            for (i1, i2, cu) in a.coproduct_basis(i) {
                for (j1, j2, cv) in a.coproduct_basis(j) {
                    let s = sigma.eval_basis(a, i1, j1);
                    if s.is_zero() {
                        continue;
                    }
                    let coeff = &(&(&cij * &cu) * &cv) * &s;
                    for (m, cm) in a.product_basis(i2, j2).iter() {
                        out.add_term(m, cm * &coeff);
                    }
                }
            }
        }
    }
    out
}

/// x_presented # 1 in the bosonization.
pub fn smash_of_basis(a: &Bosonization, presented: usize) -> Element {
    Element::basis(a.params(), a.flat(presented, a.h.identity()))
}

/// 1 # g for an enumerated group index.
pub fn smash_of_group(a: &Bosonization, g: usize) -> Element {
    Element::basis(a.params(), a.flat(a.b.unit(), g))
}

/// The bosonized cleft object C = E#kG: an algebra with a coaction over
/// the bosonization A = B#kG.
pub struct CleftSmash<'a> {
    pub b: &'a BraidedBialgebra,
    pub e: &'a CleftAlgebra,
    pub h: &'a GroupAlgebra,
}

impl CleftSmash<'_> {
    pub fn dim(&self) -> usize {
        self.e.dim() * self.h.size()
    }

    pub fn params(&self) -> &alloc::sync::Arc<crate::scalar::ParamSet> {
        self.e.params()
    }

    pub fn flat(&self, ei: usize, gi: usize) -> usize {
        ei * self.h.size() + gi
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.h.size(), i % self.h.size())
    }

    pub fn unit_flat(&self) -> usize {
        self.flat(self.e.alg.unit, self.h.identity())
    }

    /// (e#h)(f#k) = e (h.f) # hk with the action through the nominal
    /// degrees of E.
    pub fn product_basis(&self, i: usize, j: usize) -> Element {
        let (ei, gi) = self.split(i);
        let (ej, gj) = self.split(j);
        let sign = self.h.action_sign(gi, &self.e.degrees[ej]);
        let gk = self.h.mul(gi, gj);
        let mut out = Element::zero();
        for (m, c) in self.e.alg.basis_product(ei, ej).iter() {
            out.add_term(self.flat(m, gk), c.scale(&sign.rational()));
        }
        out
    }

    pub fn product(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (i, ci) in u.iter() {
            for (j, cj) in v.iter() {
                let w = ci * cj;
                if w.is_zero() {
                    continue;
                }
                for (m, cm) in self.product_basis(i, j).iter() {
                    out.add_term(m, cm * &w);
                }
            }
        }
        out
    }

    /// Coaction C -> C (x) A mirroring the smash coproduct:
    /// delta(e#g) = e^(0) # g^{deg e^(1)} g (x) e^(1) # g, where the right
    /// leg lives in A through the B part of the E-coaction.
    pub fn coact_basis(&self, a: &Bosonization, i: usize) -> Vec<(usize, usize, Scalar)> {
        let (ei, gi) = self.split(i);
        let mut out = Vec::new();
        for (e0, b1, c) in &self.e.coaction[ei] {
            let gl = self.h.mul(self.h.power_of_designated(&self.b.degrees[*b1]), gi);
            out.push((self.flat(*e0, gl), a.flat(*b1, gi), c.clone()));
        }
        out
    }

    /// Counit law, coassociativity against the smash coproduct of A, and
    /// the algebra-map property of the coaction on the given pairs.
    pub fn verify_comodule_algebra(
        &self,
        a: &Bosonization,
        pairs: &[(usize, usize)],
    ) -> Result<(), String> {
        let params = self.params().clone();
        for i in 0..self.dim() {
            let legs = self.coact_basis(a, i);
            let mut back = Element::zero();
            for (l, r, c) in &legs {
                back.add_term(*l, c * &a.counit_basis(*r));
            }
            if back != Element::basis(&params, i) {
                return Err(format!("coaction counit law fails on basis {i}"));
            }
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (l, r, c) in &legs {
                for (l2, r2, c2) in self.coact_basis(a, *l) {
                    let w = c * &c2;
                    if !w.is_zero() {
                        *lhs.entry((l2, r2, *r)).or_insert_with(|| Scalar::zero(&params)) += &w;
                    }
                }
                for (l2, r2, c2) in a.coproduct_basis(*r) {
                    let w = c * &c2;
                    if !w.is_zero() {
                        *rhs.entry((*l, l2, r2)).or_insert_with(|| Scalar::zero(&params)) += &w;
                    }
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(format!("coaction coassociativity fails on basis {i}"));
            }
        }
        for &(i, j) in pairs {
            let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (m, cm) in self.product_basis(i, j).iter() {
                for (l, r, c) in self.coact_basis(a, m) {
                    let w = cm * &c;
                    if !w.is_zero() {
                        *lhs.entry((l, r)).or_insert_with(|| Scalar::zero(&params)) += &w;
                    }
                }
            }
            let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (l1, r1, c1) in self.coact_basis(a, i) {
                for (l2, r2, c2) in self.coact_basis(a, j) {
                    let w = &c1 * &c2;
                    if w.is_zero() {
                        continue;
                    }
                    for (lm, cl) in self.product_basis(l1, l2).iter() {
                        for (rm, cr) in a.product_basis(r1, r2).iter() {
                            let t = &(&w * cl) * cr;
                            if !t.is_zero() {
                                *rhs.entry((lm, rm)).or_insert_with(|| Scalar::zero(&params)) +=
                                    &t;
                            }
                        }
                    }
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(format!("coaction is not an algebra map at pair ({i}, {j})"));
            }
        }
        Ok(())
    }
}

/// An A-level section gamma_A = gamma # id of the bosonized cleft object,
/// with its two-sided convolution inverse.
pub struct SmashSection {
    pub gamma: Vec<Element>,
    pub gamma_inv: Vec<Element>,
}

/// Build gamma_A from a B-level section and compute its convolution
/// inverse by recursion over the B-degree; both identities
/// gamma_A * gamma_A^{-1} = eps 1 = gamma_A^{-1} * gamma_A are verified
/// exhaustively.
pub fn smash_section(
    a: &Bosonization,
    c: &CleftSmash,
    s: &Section,
) -> Result<SmashSection, String> {
    let params = a.params().clone();
    let dim = a.dim();
    let mut gamma = Vec::with_capacity(dim);
    for i in 0..dim {
        let (bi, gi) = a.split(i);
        let mut img = Element::zero();
        for (m, cm) in s.gamma[bi].iter() {
            img.add_term(c.flat(m, gi), cm.clone());
        }
        gamma.push(img);
    }
    let mut inv: Vec<Option<Element>> = vec![None; dim];
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| deg_total(&a.b.degrees[a.split(i).0]));
    for &i in &order {
        let (bi, gi) = a.split(i);
        if bi == a.b.unit() {
            inv[i] = Some(Element::basis(&params, c.flat(c.e.alg.unit, c.h.inv(gi))));
            continue;
        }
        let mut rhs = Element::zero();
        let mut lead_group = None;
        for (l, r, coeff) in &a.b.comult[bi] {
            let gl = a.h.mul(a.h.power_of_designated(&a.b.degrees[*r]), gi);
            if *l == a.b.unit() && *r == bi {
                if !(coeff.clone() - Scalar::one(&params)).is_zero() {
                    return Err("leading comultiplication leg has a non-unit coefficient"
                        .to_string());
                }
                lead_group = Some(gl);
                continue;
            }
            let low = inv[a.flat(*r, gi)]
                .as_ref()
                .ok_or_else(|| "inverse recursion visited a higher degree first".to_string())?;
            let term = c.product(&gamma[a.flat(*l, gl)], low);
            rhs = rhs.add(&term.scale(coeff));
        }
        let gl0 = lead_group.ok_or_else(|| "comultiplication lacks the unit leg".to_string())?;
        let lead_inv = Element::basis(&params, c.flat(c.e.alg.unit, c.h.inv(gl0)));
        inv[i] = Some(c.product(&lead_inv, &rhs.neg()));
    }
    let gamma_inv: Vec<Element> = inv.into_iter().map(|e| e.unwrap()).collect();
    for i in 0..dim {
        let mut fwd = Element::zero();
        let mut bwd = Element::zero();
        for (l, r, coeff) in a.coproduct_basis(i) {
            fwd = fwd.add(&c.product(&gamma[l], &gamma_inv[r]).scale(&coeff));
            bwd = bwd.add(&c.product(&gamma_inv[l], &gamma[r]).scale(&coeff));
        }
        let mut expect = Element::zero();
        expect.add_term(c.unit_flat(), a.counit_basis(i));
        if fwd != expect || bwd != expect {
            return Err(format!("section inverse is not two-sided at basis {i}"));
        }
    }
    Ok(SmashSection { gamma, gamma_inv })
}

/// sigma_A(u, v) = gamma_A(u1) gamma_A(v1) gamma_A^{-1}(u2 v2), evaluated
/// in C at one basis pair; the value must land in k times the unit of C.
pub fn section_cocycle_smash_at(
    a: &Bosonization,
    c: &CleftSmash,
    s: &SmashSection,
    i: usize,
    j: usize,
) -> Result<Scalar, String> {
    let params = a.params().clone();
    let mut val = Element::zero();
    for (l1, r1, c1) in a.coproduct_basis(i) {
        for (l2, r2, c2) in a.coproduct_basis(j) {
            let w = &c1 * &c2;
            if w.is_zero() {
                continue;
            }
            let mut ginv = Element::zero();
            for (m, cm) in a.product_basis(r1, r2).iter() {
                ginv = ginv.add(&s.gamma_inv[m].scale(cm));
            }
            let prod = c.product(&c.product(&s.gamma[l1], &s.gamma[l2]), &ginv);
            val = val.add(&prod.scale(&w));
        }
    }
    for (idx, coeff) in val.iter() {
        if idx != c.unit_flat() && !coeff.is_zero() {
            return Err(format!(
                "section cocycle does not land in the scalars at pair ({i}, {j})"
            ));
        }
    }
    Ok(val.coeff_or_zero(&params, c.unit_flat()))
}

/// Convolution inverse in Hom(A, k) of a factored unit-valued functional,
/// by recursion over the B-degree; two-sidedness verified exhaustively.
pub fn inverse1_smash(
    a: &Bosonization,
    alpha: &FactoredFunctional1,
) -> Result<Vec<Scalar>, String> {
    let params = a.params().clone();
    let one = Scalar::one(&params);
    if (alpha.on_b.vals[a.b.unit()].clone() - one.clone()) != Scalar::zero(&params) {
        return Err("functional is not normalized at the unit".to_string());
    }
    let dim = a.dim();
    let mut inv: Vec<Option<Scalar>> = vec![None; dim];
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| deg_total(&a.b.degrees[a.split(i).0]));
    for &i in &order {
        let (bi, gi) = a.split(i);
        if bi == a.b.unit() {
            inv[i] = Some(one.clone());
            continue;
        }
        let mut acc = Scalar::zero(&params);
        for (l, r, coeff) in &a.b.comult[bi] {
            if *l == a.b.unit() && *r == bi {
                continue;
            }
            let low = inv[a.flat(*r, gi)]
                .as_ref()
                .ok_or_else(|| "inverse recursion visited a higher degree first".to_string())?;
            acc += &(&(coeff * &alpha.on_b.vals[*l]) * low);
        }
        inv[i] = Some(-acc);
    }
    let inv: Vec<Scalar> = inv.into_iter().map(|v| v.unwrap()).collect();
    for i in 0..dim {
        let mut fwd = Scalar::zero(&params);
        let mut bwd = Scalar::zero(&params);
        for (l, r, coeff) in a.coproduct_basis(i) {
            fwd += &(&(&coeff * &alpha.eval_basis(a, l)) * &inv[r]);
            bwd += &(&(&coeff * &inv[l]) * &alpha.eval_basis(a, r));
        }
        let eps = a.counit_basis(i);
        if fwd != eps || bwd != eps {
            return Err(format!("functional inverse is not two-sided at basis {i}"));
        }
    }
    Ok(inv)
}

/// (alpha -> sigma)(u, v) = alpha(u1) alpha(v1) sigma(u2, v2)
/// alpha^{-1}(u3 v3) with the ordinary smash coproduct, at one basis pair.
pub fn act_unit_smash_at(
    a: &Bosonization,
    alpha: &FactoredFunctional1,
    alpha_inv: &[Scalar],
    sigma: &FactoredFunctional2,
    i: usize,
    j: usize,
) -> Scalar {
    let params = a.params().clone();
    let mut acc = Scalar::zero(&params);
    for (i1, i2, i3, cu) in a.coproduct2_basis(i) {
        for (j1, j2, j3, cv) in a.coproduct2_basis(j) {
            let head = &(&cu * &cv) * &(&alpha.eval_basis(a, i1) * &alpha.eval_basis(a, j1));
            if head.is_zero() {
                continue;
            }
            let mid = sigma.eval_basis(a, i2, j2);
            if mid.is_zero() {
                continue;
            }
            let mut tail = Scalar::zero(&params);
            for (m, cm) in a.product_basis(i3, j3).iter() {
                tail += &(cm * &alpha_inv[m]);
            }
            acc += &(&(&head * &mid) * &tail);
        }
    }
    acc
}

/// The B-level gauge action with an H-linear unit agrees with the
/// A-level action of the factored unit on the B-corner of the smash
/// basis; both routes are computed independently and compared entrywise.
pub fn act_unit_consistency(
    a: &Bosonization,
    alpha: &Functional1,
    sigma: &Functional2,
) -> Result<Functional2, String> {
    let b_level = act_unit(a.b, alpha, sigma)?;
    let fa = FactoredFunctional1 {
        on_b: alpha.clone(),
    };
    let fs = FactoredFunctional2 {
        on_b: sigma.clone(),
    };
    let inv = inverse1_smash(a, &fa)?;
    let id = a.h.identity();
    for x in 0..a.b.dim() {
        for y in 0..a.b.dim() {
            let smash = act_unit_smash_at(a, &fa, &inv, &fs, a.flat(x, id), a.flat(y, id));
            if smash != *b_level.get(x, y) {
                return Err(format!(
                    "gauge action differs between the braided and smash routes at ({x}, {y})"
                ));
            }
        }
    }
    Ok(b_level)
}
