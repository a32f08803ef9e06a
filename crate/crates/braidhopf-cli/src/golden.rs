//! Frozen regression tables and the golden comparison runner.
//!
//! Expected values are written out by hand, entry by entry: the rank-two
//! cocycle table, the closed-form section and its convolution inverse,
//! the exponential table of the two-parameter family, and the rank-one
//! mirrors. The runner recomputes each object from a clean build of the
//! shipped instance files and compares bit for bit.

use std::sync::Arc;

use braidhopf::algebra::{BraidedBialgebra, Element};
use braidhopf::cleft::{solve_section, CleftAlgebra, Section};
use braidhopf::cocycle::{section_cocycle, Functional2};
use braidhopf::hochschild::exponential;
use braidhopf::instances::{a2_golden_cocycle, xi_121, xi_212, xi_ii, A2Basis};
use braidhopf::scalar::{rint, ParamSet, Scalar, Sign, SignConfig};

use crate::lower::{lower, Lowered};

/// Shipped instance sources.
pub const A2_ALG: &str = include_str!("../instances/a2.alg");
pub const TAFT_ALG: &str = include_str!("../instances/taft.alg");

/// Expected section values on the presented basis.
pub struct SectionGolden {
    pub gamma: Vec<Element>,
    pub gamma_inv: Vec<Element>,
}

/// The closed-form section of the rank-two instance: gamma fixes every
/// basis element except x12*x1, where it subtracts 2*q21*l1*x2.
pub fn a2_section_golden(params: &Arc<ParamSet>, cfg: SignConfig) -> SectionGolden {
    use A2Basis::*;
    let l1 = Scalar::param_named(params, "l1");
    let l12 = Scalar::param_named(params, "l12");
    let q12 = Scalar::constant(params, cfg.q12());
    let q21 = Scalar::constant(params, cfg.q21());
    let basis = |i: A2Basis| Element::basis(params, i as usize);
    let mut gamma: Vec<Element> = A2Basis::ALL.iter().map(|&i| basis(i)).collect();
    gamma[X12X1 as usize].add_term(X2 as usize, (&q21 * &l1).scale(&rint(-2)));
    let mut gamma_inv = vec![Element::zero(); 8];
    gamma_inv[One as usize] = basis(One);
    gamma_inv[X1 as usize] = basis(X1).neg();
    gamma_inv[X2 as usize] = basis(X2).neg();
    gamma_inv[X12 as usize] = basis(X12).add(&basis(X2X1).scale(&q12.scale(&rint(2))));
    gamma_inv[X2X1 as usize] = basis(X2X1).neg();
    gamma_inv[X2X1 as usize].add_term(X12 as usize, q21.clone());
    gamma_inv[X2X12 as usize] = basis(X2X12).neg();
    gamma_inv[X12X1 as usize] = basis(X12X1).neg();
    gamma_inv[X12X1 as usize].add_term(X2 as usize, (&q21 * &l1).scale(&rint(2)));
    gamma_inv[W as usize] = basis(W);
    gamma_inv[W as usize].add_term(One as usize, -l12);
    SectionGolden { gamma, gamma_inv }
}

/// The exponential of h1*xi(1,1) + h121*(xi(2,121) - xi(1,212)), frozen
/// entry by entry.
pub fn a2_exp_golden(b: &BraidedBialgebra, cfg: SignConfig) -> Functional2 {
    use A2Basis::*;
    let params = b.params().clone();
    let h1 = Scalar::param_named(&params, "h1");
    let h121 = Scalar::param_named(&params, "h121");
    let q = Scalar::constant(&params, cfg.q12());
    let mut f = Functional2::zero(b);
    f.vals[One as usize][One as usize] = Scalar::one(&params);
    f.vals[X1 as usize][X1 as usize] = h1.clone();
    f.vals[X1 as usize][X2X12 as usize] = -&h121;
    f.vals[X2 as usize][X12X1 as usize] = h121.clone();
    f.vals[X12 as usize][X2X1 as usize] = -&(&q * &h121);
    f.vals[X2X1 as usize][X12 as usize] = -&(&q * &h121);
    f.vals[X2X1 as usize][X2X1 as usize] = h121.clone();
    f.vals[X2X12 as usize][X1 as usize] = h121.clone();
    f.vals[X12X1 as usize][X2 as usize] = -&h121;
    f.vals[W as usize][W as usize] = -&(&h121 * &h121);
    f
}

/// The rank-one cocycle table: sigma(1,1) = 1, sigma(x,x) = l.
pub fn taft_cocycle_golden(b: &BraidedBialgebra) -> Functional2 {
    let params = b.params().clone();
    let mut f = Functional2::zero(b);
    f.vals[0][0] = Scalar::one(&params);
    f.vals[1][1] = Scalar::param_named(&params, "l");
    f
}

/// The rank-one section: gamma = id on names, gamma^{-1}(x) = -x.
pub fn taft_section_golden(params: &Arc<ParamSet>) -> SectionGolden {
    SectionGolden {
        gamma: vec![Element::basis(params, 0), Element::basis(params, 1)],
        gamma_inv: vec![Element::basis(params, 0), Element::basis(params, 1).neg()],
    }
}

fn table_eq(
    names: &[String],
    got: &Functional2,
    want: &Functional2,
    what: &str,
) -> Result<(), String> {
    for (i, ni) in names.iter().enumerate() {
        for (j, nj) in names.iter().enumerate() {
            if got.vals[i][j] != want.vals[i][j] {
                return Err(format!(
                    "{what} mismatch at ({ni}, {nj}): computed {}, expected {}",
                    got.vals[i][j], want.vals[i][j]
                ));
            }
        }
    }
    Ok(())
}

fn section_eq(
    names: &[String],
    got: &Section,
    want: &SectionGolden,
    what: &str,
) -> Result<(), String> {
    for (i, ni) in names.iter().enumerate() {
        if got.gamma[i] != want.gamma[i] {
            return Err(format!(
                "{what} gamma mismatch at {ni}: computed {}, expected {}",
                got.gamma[i].display(names),
                want.gamma[i].display(names)
            ));
        }
        if got.gamma_inv[i] != want.gamma_inv[i] {
            return Err(format!(
                "{what} gamma_inv mismatch at {ni}: computed {}, expected {}",
                got.gamma_inv[i].display(names),
                want.gamma_inv[i].display(names)
            ));
        }
    }
    Ok(())
}

fn build_with_cleft(
    source: &str,
    q12: Option<Sign>,
    extra: &[&str],
) -> Result<(Lowered, BraidedBialgebra, CleftAlgebra, Section), String> {
    let ast = crate::dsl::parse(source).map_err(|e| e.to_string())?;
    let lowered = lower(&ast, q12, extra)?;
    let b = BraidedBialgebra::build_from_presentation(&lowered.presentation)
        .map_err(|e| e.to_string())?;
    let rels = lowered
        .cleft_relations
        .as_ref()
        .ok_or("the instance declares no cleft block")?;
    let basis = match &lowered.cleft_basis {
        Some(basis) => basis.clone(),
        None => b
            .alg
            .words
            .iter()
            .zip(b.alg.names.iter())
            .map(|(w, n)| {
                (
                    n.clone(),
                    braidhopf::word::FreePoly::word(b.params(), w.clone()),
                )
            })
            .collect(),
    };
    let e = CleftAlgebra::build(&b, rels, &basis).map_err(|e| e.to_string())?;
    let s = solve_section(&b, &e, &lowered.param_degrees).map_err(|e| e.to_string())?;
    Ok((lowered, b, e, s))
}

/// Recompute the rank-two tables for one sign and compare against the
/// frozen values. Returns one line per passed comparison.
pub fn golden_a2(q12: Sign) -> Result<Vec<String>, String> {
    let cfg = SignConfig::new(q12);
    let tag = if q12 == Sign::Minus { "-1" } else { "+1" };
    let mut lines = Vec::new();

    let (_, b, e, s) = build_with_cleft(A2_ALG, Some(q12), &[])?;
    let names = b.alg.names.clone();
    section_eq(&names, &s, &a2_section_golden(b.params(), cfg), "section")?;
    lines.push(format!("ok golden a2 q12={tag} section"));

    let sigma = section_cocycle(&b, &e, &s)?;
    table_eq(&names, &sigma, &a2_golden_cocycle(b.params(), cfg), "cocycle")?;
    lines.push(format!("ok golden a2 q12={tag} cocycle table"));

    let ast = crate::dsl::parse(A2_ALG).map_err(|e| e.to_string())?;
    let lowered = lower(&ast, Some(q12), &["h1", "h121"])?;
    let bh = BraidedBialgebra::build_from_presentation(&lowered.presentation)
        .map_err(|e| e.to_string())?;
    let h1 = Scalar::param_named(bh.params(), "h1");
    let h121 = Scalar::param_named(bh.params(), "h121");
    let eta = xi_ii(&bh, A2Basis::X1)
        .scale(&h1)
        .add(&xi_121(&bh, cfg).sub(&xi_212(&bh, cfg)).scale(&h121));
    let (factor, exp) = exponential(&bh, &eta)?;
    if !factor.is_zero() {
        return Err("the exponential reported a unit factor for a normalized eta".to_string());
    }
    table_eq(&names, &exp, &a2_exp_golden(&bh, cfg), "exponential")?;
    lines.push(format!("ok golden a2 q12={tag} exponential table"));
    Ok(lines)
}

/// Recompute the rank-one tables and compare against the frozen values.
pub fn golden_taft() -> Result<Vec<String>, String> {
    let mut lines = Vec::new();
    let (_, b, e, s) = build_with_cleft(TAFT_ALG, None, &[])?;
    let names = b.alg.names.clone();
    section_eq(&names, &s, &taft_section_golden(b.params()), "section")?;
    lines.push("ok golden taft section".to_string());

    let sigma = section_cocycle(&b, &e, &s)?;
    table_eq(&names, &sigma, &taft_cocycle_golden(&b), "cocycle")?;
    lines.push("ok golden taft cocycle table".to_string());

    let mut eta = Functional2::zero(&b);
    eta.vals[1][1] = Scalar::param_named(b.params(), "l");
    let (factor, exp) = exponential(&b, &eta)?;
    if !factor.is_zero() {
        return Err("the exponential reported a unit factor for a normalized eta".to_string());
    }
    table_eq(&names, &exp, &taft_cocycle_golden(&b), "exponential")?;
    lines.push("ok golden taft exponential table".to_string());
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_passes_for_both_signs_and_the_rank_one_instance() {
        for q12 in [Sign::Plus, Sign::Minus] {
            let lines = golden_a2(q12).unwrap();
            assert_eq!(lines.len(), 3);
        }
        let lines = golden_taft().unwrap();
        assert_eq!(lines.len(), 3);
    }
}
