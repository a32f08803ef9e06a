//! Lowering parsed instances onto kernel presentations.
//!
//! The parser accepts anything grammatical; this pass resolves names,
//! binds the sign symbol, and assembles the kernel `Presentation` plus the
//! cleft relation polynomials. Inconsistencies the kernel can detect
//! itself (dimension mismatch, inhomogeneous relations) are left to the
//! build step so that parsing and semantics stay separate.

use std::collections::BTreeMap;
use std::sync::Arc;

use braidhopf::algebra::{MultiDegree, Presentation};
use braidhopf::scalar::{ParamSet, Scalar, Sign};
use braidhopf::word::FreePoly;
use num_rational::BigRational;

use crate::dsl::{Ast, Factor, PolyExpr, SignExpr};

/// A lowered instance: the kernel presentation plus the optional cleft
/// data and realization orders.
#[derive(Debug)]
pub struct Lowered {
    pub name: String,
    pub sign_symbol: Option<String>,
    pub sign: Option<Sign>,
    pub presentation: Presentation,
    pub cleft_relations: Option<Vec<FreePoly>>,
    pub cleft_basis: Option<Vec<(String, FreePoly)>>,
    pub param_degrees: Vec<Option<MultiDegree>>,
    pub orders: Option<Vec<u32>>,
}

enum Binding {
    Param(usize),
    Gen(u8),
    Let(FreePoly),
    SignVal(BigRational),
}

fn sign_value(decl_value: i8, over: Option<Sign>) -> Sign {
    match over {
        Some(s) => s,
        None => {
            if decl_value < 0 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        }
    }
}

fn lower_sign_expr(
    e: &SignExpr,
    symbol: Option<&str>,
    value: Option<Sign>,
) -> Result<Sign, String> {
    let base = match &e.sym {
        None => Sign::Plus,
        Some(name) => {
            if Some(name.as_str()) != symbol {
                return Err(format!("unknown sign symbol `{name}` in the braiding"));
            }
            value.expect("a declared sign symbol carries a value")
        }
    };
    Ok(if e.neg { base.mul(Sign::Minus) } else { base })
}

fn lower_poly(
    params: &Arc<ParamSet>,
    env: &BTreeMap<String, Binding>,
    expr: &PolyExpr,
) -> Result<FreePoly, String> {
    let mut acc = FreePoly::zero(params);
    for t in &expr.terms {
        let mut term = FreePoly::term(params, Vec::new(), Scalar::one(params));
        for f in &t.factors {
            let fp = match f {
                Factor::Num(r) => {
                    FreePoly::term(params, Vec::new(), Scalar::constant(params, r.clone()))
                }
                Factor::Pow { name, exp } => {
                    let base = match env.get(name) {
                        Some(Binding::Param(i)) => {
                            FreePoly::term(params, Vec::new(), Scalar::param(params, *i))
                        }
                        Some(Binding::Gen(g)) => FreePoly::word(params, vec![*g]),
                        Some(Binding::Let(p)) => p.clone(),
                        Some(Binding::SignVal(v)) => FreePoly::term(
                            params,
                            Vec::new(),
                            Scalar::constant(params, v.clone()),
                        ),
                        None => return Err(format!("unknown symbol `{name}`")),
                    };
                    let mut powed = base.clone();
                    for _ in 1..*exp {
                        powed = powed.mul(&base);
                    }
                    powed
                }
            };
            term = term.mul(&fp);
        }
        if t.neg {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Require an all-scalar polynomial (no generator words).
fn scalar_part(p: &FreePoly, context: &str) -> Result<Scalar, String> {
    let mut out = None;
    for (w, c) in p.terms() {
        if !w.is_empty() {
            return Err(format!("{context} must be a scalar polynomial"));
        }
        out = Some(c.clone());
    }
    Ok(out.unwrap_or_else(|| Scalar::zero(p.params())))
}

/// Infer formal parameter multidegrees from the cleft block: a parameter
/// appearing linearly as a right-hand-side term inherits the degree of
/// the relation's left-hand side.
fn infer_param_degrees(
    params: &Arc<ParamSet>,
    gen_degrees: &[MultiDegree],
    cleft: &[(FreePoly, &PolyExpr)],
) -> Result<Vec<Option<MultiDegree>>, String> {
    let mut out: Vec<Option<MultiDegree>> = vec![None; params.len()];
    for (lhs, rhs) in cleft {
        let Some(deg) = lhs.homogeneous_degree(gen_degrees) else {
            return Err("cleft left-hand side is not homogeneous".to_string());
        };
        for t in &rhs.terms {
            let mut lone_param = None;
            let mut graded = true;
            for f in &t.factors {
                if let Factor::Pow { name, exp } = f {
                    if let Some(i) = params.index_of(name) {
                        if *exp == 1 && lone_param.is_none() {
                            lone_param = Some(i);
                        } else {
                            graded = false;
                        }
                    }
                }
            }
            let (Some(i), true) = (lone_param, graded) else {
                continue;
            };
            match &out[i] {
                None => out[i] = Some(deg.clone()),
                Some(prev) if *prev == deg => {}
                Some(prev) => {
                    return Err(format!(
                        "parameter `{}` needs degree {:?} and {:?} at once",
                        params.name(i),
                        prev,
                        deg
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Lower a parsed instance. `q12_override` rebinds a declared sign
/// symbol; `extra_params` appends formal symbols (used by the
/// exponential report) to the parameter set.
pub fn lower(
    ast: &Ast,
    q12_override: Option<Sign>,
    extra_params: &[&str],
) -> Result<Lowered, String> {
    if q12_override.is_some() && ast.sign.is_none() {
        return Err(format!(
            "instance `{}` declares no sign symbol, so --q12 does not apply",
            ast.name
        ));
    }
    let mut names: Vec<&str> = ast.params.iter().map(|s| s.as_str()).collect();
    names.extend_from_slice(extra_params);
    let params = ParamSet::new(&names);

    let sign_symbol = ast.sign.as_ref().map(|s| s.symbol.clone());
    let sign = ast
        .sign
        .as_ref()
        .map(|s| sign_value(s.value, q12_override));

    let mut env: BTreeMap<String, Binding> = BTreeMap::new();
    for (i, p) in names.iter().enumerate() {
        if env.insert(p.to_string(), Binding::Param(i)).is_some() {
            return Err(format!("duplicate parameter `{p}`"));
        }
    }
    if let (Some(sym), Some(s)) = (&sign_symbol, sign) {
        if env
            .insert(sym.clone(), Binding::SignVal(s.rational()))
            .is_some()
        {
            return Err(format!("sign symbol `{sym}` collides with a parameter"));
        }
    }

    let theta = ast.generators.len();
    let mut generators = Vec::with_capacity(theta);
    let mut degrees = Vec::with_capacity(theta);
    for (g, decl) in ast.generators.iter().enumerate() {
        if decl.degrees.len() != theta {
            return Err(format!(
                "generator `{}` has a degree vector of rank {}, expected {}",
                decl.name,
                decl.degrees.len(),
                theta
            ));
        }
        if env
            .insert(decl.name.clone(), Binding::Gen(g as u8))
            .is_some()
        {
            return Err(format!("generator `{}` collides with another name", decl.name));
        }
        generators.push(decl.name.clone());
        degrees.push(decl.degrees.clone());
    }

    if ast.braiding.len() != theta || ast.braiding.iter().any(|row| row.len() != theta) {
        return Err(format!(
            "the braiding must be a {theta}x{theta} matrix of signs"
        ));
    }
    let mut braiding = Vec::with_capacity(theta);
    for row in &ast.braiding {
        let lowered: Result<Vec<Sign>, String> = row
            .iter()
            .map(|e| lower_sign_expr(e, sign_symbol.as_deref(), sign))
            .collect();
        braiding.push(lowered?);
    }

    for l in &ast.lets {
        let poly = lower_poly(&params, &env, &l.value)?;
        if env.insert(l.name.clone(), Binding::Let(poly)).is_some() {
            return Err(format!("binding `{}` collides with another name", l.name));
        }
    }

    let basis = match &ast.basis {
        None => None,
        Some(entries) => {
            let mut out = Vec::with_capacity(entries.len());
            for e in entries {
                out.push((crate::dsl::print_poly(e), lower_poly(&params, &env, e)?));
            }
            Some(out)
        }
    };

    let mut relations = Vec::with_capacity(ast.relations.len());
    for eq in &ast.relations {
        let lhs = lower_poly(&params, &env, &eq.lhs)?;
        let rhs = lower_poly(&params, &env, &eq.rhs)?;
        relations.push(lhs.sub(&rhs));
    }

    let (cleft_relations, param_degrees) = match &ast.cleft {
        None => (None, vec![None; params.len()]),
        Some(eqs) => {
            let mut rels = Vec::with_capacity(eqs.len());
            let mut for_grading = Vec::with_capacity(eqs.len());
            for eq in eqs {
                let lhs = lower_poly(&params, &env, &eq.lhs)?;
                let rhs = lower_poly(&params, &env, &eq.rhs)?;
                scalar_part(&rhs, "a cleft right-hand side")?;
                rels.push(lhs.sub(&rhs));
                for_grading.push((lhs, &eq.rhs));
            }
            let degs = infer_param_degrees(&params, &degrees, &for_grading)?;
            (Some(rels), degs)
        }
    };

    let presentation = Presentation {
        params,
        generators,
        degrees,
        braiding,
        relations,
        dimension: ast.dimension,
        basis: basis.clone(),
    };
    Ok(Lowered {
        name: ast.name.clone(),
        sign_symbol,
        sign,
        presentation,
        cleft_relations,
        cleft_basis: basis,
        param_degrees,
        orders: ast.realization.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use braidhopf::algebra::BraidedBialgebra;
    use braidhopf::instances::{cartan_a2_presentation, rank1_presentation};
    use braidhopf::scalar::SignConfig;

    const A2: &str = include_str!("../instances/a2.alg");
    const TAFT: &str = include_str!("../instances/taft.alg");

    fn presentations_agree(a: &Presentation, b: &Presentation) {
        assert_eq!(a.params.names(), b.params.names());
        assert_eq!(a.generators, b.generators);
        assert_eq!(a.degrees, b.degrees);
        assert_eq!(a.braiding, b.braiding);
        assert_eq!(a.relations, b.relations);
        assert_eq!(a.dimension, b.dimension);
        assert_eq!(a.basis, b.basis);
    }

    #[test]
    fn lowered_rank_two_matches_the_builtin_presentation() {
        for (q12, over) in [(Sign::Minus, None), (Sign::Plus, Some(Sign::Plus))] {
            let ast = crate::dsl::parse(A2).unwrap();
            let lowered = lower(&ast, over, &[]).unwrap();
            let params = ParamSet::new(&["l1", "l2", "l12"]);
            let expect = cartan_a2_presentation(&params, SignConfig::new(q12));
            presentations_agree(&lowered.presentation, &expect);
            assert_eq!(lowered.sign, Some(q12));
            assert_eq!(lowered.orders, Some(vec![4, 4]));
            assert_eq!(
                lowered.param_degrees,
                vec![Some(vec![2, 0]), Some(vec![0, 2]), Some(vec![2, 2])]
            );
            // the cleft relations match the builtin ones entrywise
            let l1 = Scalar::param_named(&params, "l1");
            let l2 = Scalar::param_named(&params, "l2");
            let l12 = Scalar::param_named(&params, "l12");
            let expect_rels = braidhopf::instances::cartan_a2_cleft_relations(
                &params,
                SignConfig::new(q12),
                &l1,
                &l2,
                &l12,
            );
            assert_eq!(lowered.cleft_relations.as_ref().unwrap(), &expect_rels);
        }
    }

    #[test]
    fn lowered_rank_one_matches_the_builtin_presentation() {
        let ast = crate::dsl::parse(TAFT).unwrap();
        let lowered = lower(&ast, None, &[]).unwrap();
        let params = ParamSet::new(&["l"]);
        let expect = rank1_presentation(&params);
        presentations_agree(&lowered.presentation, &expect);
        assert_eq!(lowered.sign, None);
        assert_eq!(lowered.orders, Some(vec![2]));
        assert_eq!(lowered.param_degrees, vec![Some(vec![2])]);
    }

    #[test]
    fn sign_override_requires_a_declared_symbol() {
        let ast = crate::dsl::parse(TAFT).unwrap();
        let err = lower(&ast, Some(Sign::Plus), &[]).unwrap_err();
        assert!(err.contains("declares no sign symbol"), "{err}");
    }

    #[test]
    fn unknown_symbols_are_reported() {
        let src = "algebra a {\n  generators x[1];\n  braiding [[-1]];\n  relations {\n    x*y = 0;\n  }\n  dimension 2;\n}\n";
        let ast = crate::dsl::parse(src).unwrap();
        let err = lower(&ast, None, &[]).unwrap_err();
        assert!(err.contains("unknown symbol `y`"), "{err}");
    }

    #[test]
    fn inconsistent_dimension_parses_but_fails_at_build() {
        let src = "algebra a {\n  generators x1[1];\n  braiding [[-1]];\n  relations {\n    x1^3 = 0;\n  }\n  dimension 2;\n}\n";
        let ast = crate::dsl::parse(src).unwrap();
        let lowered = lower(&ast, None, &[]).unwrap();
        let err = BraidedBialgebra::build_from_presentation(&lowered.presentation);
        assert!(err.is_err(), "x1^3 = 0 with dimension 2 must fail to build");
    }
}
