//! Built-in presentations: the rank-two nilpotent quadratic instance (two
//! generators, all squares zero, eight-dimensional) and the rank-one
//! instance underlying the four-dimensional smash product.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BraidedBialgebra, BuildError, Presentation};
use crate::scalar::{ParamSet, Scalar, Sign, SignConfig};
use crate::word::{FreePoly, Word};

/// Canonical basis indices of the rank-two instance. The order matches the
/// presented basis: 1, x1, x2, x12, x2*x1, x2*x12, x12*x1, x2*x12*x1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A2Basis {
    One = 0,
    X1 = 1,
    X2 = 2,
    X12 = 3,
    X2X1 = 4,
    X2X12 = 5,
    X12X1 = 6,
    W = 7,
}

impl A2Basis {
    pub const ALL: [A2Basis; 8] = [
        A2Basis::One,
        A2Basis::X1,
        A2Basis::X2,
        A2Basis::X12,
        A2Basis::X2X1,
        A2Basis::X2X12,
        A2Basis::X12X1,
        A2Basis::W,
    ];
}

fn w(letters: &[u8]) -> Word {
    letters.to_vec()
}

/// The free polynomial x1*x2 - q12 * x2*x1 defining the composite letter.
fn x12_poly(params: &Arc<ParamSet>, cfg: SignConfig) -> FreePoly {
    let mut p = FreePoly::word(params, w(&[0, 1]));
    p.add_term(w(&[1, 0]), Scalar::constant(params, -cfg.q12()));
    p
}

fn a2_relations(params: &Arc<ParamSet>, cfg: SignConfig) -> Vec<FreePoly> {
    let x12 = x12_poly(params, cfg);
    vec![
        FreePoly::word(params, w(&[0, 0])),
        FreePoly::word(params, w(&[1, 1])),
        x12.mul(&x12),
    ]
}

fn a2_basis(params: &Arc<ParamSet>, cfg: SignConfig) -> Vec<(alloc::string::String, FreePoly)> {
    let x12 = x12_poly(params, cfg);
    let x1 = FreePoly::word(params, w(&[0]));
    let x2 = FreePoly::word(params, w(&[1]));
    vec![
        ("1".to_string(), FreePoly::word(params, w(&[]))),
        ("x1".to_string(), x1.clone()),
        ("x2".to_string(), x2.clone()),
        ("x12".to_string(), x12.clone()),
        ("x2*x1".to_string(), x2.mul(&x1)),
        ("x2*x12".to_string(), x2.mul(&x12)),
        ("x12*x1".to_string(), x12.mul(&x1)),
        ("x2*x12*x1".to_string(), x2.mul(&x12).mul(&x1)),
    ]
}

/// Presentation of the rank-two instance: generators x1, x2 of multidegrees
/// (1,0) and (0,1), braiding
/// q11 = q22 = -1, q12 free in {+1,-1}, q21 = -q12,
/// relations x1^2 = x2^2 = x12^2 = 0 with x12 = x1 x2 - q12 x2 x1.
pub fn cartan_a2_presentation(params: &Arc<ParamSet>, cfg: SignConfig) -> Presentation {
    Presentation {
        params: params.clone(),
        generators: vec!["x1".to_string(), "x2".to_string()],
        degrees: vec![vec![1, 0], vec![0, 1]],
        braiding: vec![
            vec![Sign::Minus, cfg.q12],
            vec![cfg.q12.mul(Sign::Minus), Sign::Minus],
        ],
        relations: a2_relations(params, cfg),
        dimension: 8,
        basis: Some(a2_basis(params, cfg)),
    }
}

/// Build the rank-two braided bialgebra.
pub fn cartan_a2(params: &Arc<ParamSet>, cfg: SignConfig) -> Result<BraidedBialgebra, BuildError> {
    BraidedBialgebra::build_from_presentation(&cartan_a2_presentation(params, cfg))
}

/// Cleft-object relations for the rank-two instance: the same left-hand
/// sides with scalar right-hand sides l1, l2, l12.
pub fn cartan_a2_cleft_relations(
    params: &Arc<ParamSet>,
    cfg: SignConfig,
    l1: &Scalar,
    l2: &Scalar,
    l12: &Scalar,
) -> Vec<FreePoly> {
    let x12 = x12_poly(params, cfg);
    let mut r1 = FreePoly::word(params, w(&[0, 0]));
    r1.add_term(w(&[]), -l1.clone());
    let mut r2 = FreePoly::word(params, w(&[1, 1]));
    r2.add_term(w(&[]), -l2.clone());
    let mut r3 = x12.mul(&x12);
    r3.add_term(w(&[]), -l12.clone());
    vec![r1, r2, r3]
}

/// Presented cleft basis: the same word polynomials, displayed with y's.
pub fn cartan_a2_cleft_basis(
    params: &Arc<ParamSet>,
    cfg: SignConfig,
) -> Vec<(alloc::string::String, FreePoly)> {
    a2_basis(params, cfg)
        .into_iter()
        .map(|(name, poly)| (name.replace('x', "y"), poly))
        .collect()
}

/// Presentation of the rank-one instance: one generator of degree (1),
/// braiding (-1), relation x^2 = 0, dimension 2.
pub fn rank1_presentation(params: &Arc<ParamSet>) -> Presentation {
    Presentation {
        params: params.clone(),
        generators: vec!["x".to_string()],
        degrees: vec![vec![1]],
        braiding: vec![vec![Sign::Minus]],
        relations: vec![FreePoly::word(params, w(&[0, 0]))],
        dimension: 2,
        basis: Some(vec![
            ("1".to_string(), FreePoly::word(params, w(&[]))),
            ("x".to_string(), FreePoly::word(params, w(&[0]))),
        ]),
    }
}

/// Build the rank-one braided bialgebra.
pub fn rank1(params: &Arc<ParamSet>) -> Result<BraidedBialgebra, BuildError> {
    BraidedBialgebra::build_from_presentation(&rank1_presentation(params))
}

/// Cleft relation for the rank-one instance: x^2 = l.
pub fn rank1_cleft_relations(params: &Arc<ParamSet>, l: &Scalar) -> Vec<FreePoly> {
    let mut r = FreePoly::word(params, w(&[0, 0]));
    r.add_term(w(&[]), -l.clone());
    vec![r]
}

/// Presented cleft basis for the rank-one instance.
pub fn rank1_cleft_basis(params: &Arc<ParamSet>) -> Vec<(alloc::string::String, FreePoly)> {
    vec![
        ("1".to_string(), FreePoly::word(params, w(&[]))),
        ("y".to_string(), FreePoly::word(params, w(&[0]))),
    ]
}

/// The closed-form cocycle table of the rank-two instance over the
/// parameters l1, l2, l12, with all entries outside the listed support
/// equal to zero; the unit row and column follow the counit.
pub fn a2_golden_cocycle(params: &Arc<ParamSet>, cfg: SignConfig) -> crate::cocycle::Functional2 {
    use crate::cocycle::Functional2;
    use crate::scalar::rint;
    let l1 = Scalar::param_named(params, "l1");
    let l2 = Scalar::param_named(params, "l2");
    let l12 = Scalar::param_named(params, "l12");
    let q12 = Scalar::constant(params, cfg.q12());
    let q21 = Scalar::constant(params, cfg.q21());
    let dim = 8usize;
    let mut vals = vec![vec![Scalar::zero(params); dim]; dim];
    use A2Basis::*;
    vals[One as usize][One as usize] = Scalar::one(params);
    vals[X1 as usize][X1 as usize] = l1.clone();
    vals[X1 as usize][X2X12 as usize] = l12.clone();
    vals[X2 as usize][X2 as usize] = l2.clone();
    vals[X2 as usize][X12X1 as usize] = (&q12 * &(&l1 * &l2)).scale(&rint(2));
    vals[X12 as usize][X12 as usize] = l12.clone();
    vals[X2X1 as usize][X2X1 as usize] = -(&q21 * &(&l1 * &l2));
    vals[X2X12 as usize][X2X12 as usize] = -(&q12 * &(&l2 * &l12));
    vals[X12X1 as usize][X2 as usize] =
        &(&q12 * &(&l1 * &l2)).scale(&rint(2)) + &l12;
    vals[X12X1 as usize][X12X1 as usize] =
        &(&q12 * &(&l12 * &l1)) + &(&(&l1 * &l1) * &l2).scale(&rint(4));
    vals[W as usize][W as usize] = &q12 * &(&l2 * &(&l12 * &l1));
    Functional2 { vals }
}

fn unit_functional2(b: &BraidedBialgebra) -> crate::cocycle::Functional2 {
    crate::cocycle::Functional2::zero(b)
}

/// The Hochschild cocycle supported on the splittings of x12*x1.
pub fn xi_121(b: &BraidedBialgebra, cfg: SignConfig) -> crate::cocycle::Functional2 {
    let params = b.params().clone();
    let mut f = unit_functional2(b);
    use A2Basis::*;
    let one = Scalar::one(&params);
    let mq12 = Scalar::constant(&params, -cfg.q12());
    f.vals[X2 as usize][X12X1 as usize] = one.clone();
    f.vals[X2X12 as usize][X1 as usize] = one.clone();
    f.vals[X2X1 as usize][X2X1 as usize] = one.clone();
    f.vals[X12 as usize][X12 as usize] = one;
    f.vals[X12 as usize][X2X1 as usize] = mq12.clone();
    f.vals[X2X1 as usize][X12 as usize] = mq12;
    f
}

/// The Hochschild cocycle supported on the splittings of x2*x12.
pub fn xi_212(b: &BraidedBialgebra, _cfg: SignConfig) -> crate::cocycle::Functional2 {
    let params = b.params().clone();
    let mut f = unit_functional2(b);
    use A2Basis::*;
    let one = Scalar::one(&params);
    f.vals[X1 as usize][X2X12 as usize] = one.clone();
    f.vals[X12 as usize][X12 as usize] = one.clone();
    f.vals[X12X1 as usize][X2 as usize] = one;
    f
}

/// The dual-pair functional supported at (x_i, x_i).
pub fn xi_ii(b: &BraidedBialgebra, i: A2Basis) -> crate::cocycle::Functional2 {
    let params = b.params().clone();
    let mut f = unit_functional2(b);
    f.vals[i as usize][i as usize] = Scalar::one(&params);
    f
}

/// The non-invariant functional supported at (x2, x1).
pub fn xi_21(b: &BraidedBialgebra) -> crate::cocycle::Functional2 {
    let params = b.params().clone();
    let mut f = unit_functional2(b);
    f.vals[A2Basis::X2 as usize][A2Basis::X1 as usize] = Scalar::one(&params);
    f
}
