//! Randomized check that parsing a printed syntax tree returns the
//! identical tree, over generated instances covering every clause.

use braidhopf_cli::dsl::{
    parse, print, Ast, EqDecl, Factor, GenDecl, LetDecl, PolyExpr, SignDecl, SignExpr, TermExpr,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const KEYWORDS: &[&str] = &[
    "algebra",
    "params",
    "sign",
    "generators",
    "braiding",
    "let",
    "basis",
    "relations",
    "dimension",
    "cleft",
    "realization",
    "group",
    "x",
    "Z",
];

fn name() -> impl Strategy<Value = String> {
    "[a-w][0-9a-w]{0,3}".prop_filter("names avoid keywords", |s| !KEYWORDS.contains(&s.as_str()))
}

/// Nonnegative reduced rationals, the only literals the printer emits.
fn rational() -> impl Strategy<Value = BigRational> {
    (0i64..=20, 1i64..=9)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        rational().prop_map(Factor::Num),
        (name(), 1u32..=3).prop_map(|(name, exp)| Factor::Pow { name, exp }),
    ]
}

fn poly() -> impl Strategy<Value = PolyExpr> {
    prop::collection::vec(
        (any::<bool>(), prop::collection::vec(factor(), 1..=3))
            .prop_map(|(neg, factors)| TermExpr { neg, factors }),
        1..=3,
    )
    .prop_map(|terms| PolyExpr { terms })
}

fn eq() -> impl Strategy<Value = EqDecl> {
    (poly(), poly()).prop_map(|(lhs, rhs)| EqDecl { lhs, rhs })
}

fn sign_decl() -> impl Strategy<Value = SignDecl> {
    (name(), prop_oneof![Just(1i8), Just(-1i8)])
        .prop_map(|(symbol, value)| SignDecl { symbol, value })
}

/// A braiding entry; symbolic entries reuse the declared sign symbol.
fn sign_entry(sym: Option<String>) -> BoxedStrategy<SignExpr> {
    match sym {
        Some(s) => (any::<bool>(), prop::option::of(Just(s)))
            .prop_map(|(neg, sym)| SignExpr { neg, sym })
            .boxed(),
        None => any::<bool>()
            .prop_map(|neg| SignExpr { neg, sym: None })
            .boxed(),
    }
}

fn gen_decl(theta: usize) -> impl Strategy<Value = GenDecl> {
    (name(), prop::collection::vec(0u32..=3, theta))
        .prop_map(|(name, degrees)| GenDecl { name, degrees })
}

fn ast() -> impl Strategy<Value = Ast> {
    (1usize..=4, prop::option::of(sign_decl())).prop_flat_map(|(theta, sign)| {
        let sym = sign.as_ref().map(|s| s.symbol.clone());
        (
            name(),
            prop::collection::vec(name(), 0..=3),
            Just(sign),
            prop::collection::vec(gen_decl(theta), theta),
            prop::collection::vec(
                prop::collection::vec(sign_entry(sym), theta),
                theta,
            ),
            (
                prop::collection::vec(
                    (name(), poly()).prop_map(|(name, value)| LetDecl { name, value }),
                    0..=2,
                ),
                prop::option::of(prop::collection::vec(poly(), 1..=3)),
                prop::collection::vec(eq(), 0..=3),
                1usize..=64,
                prop::option::of(prop::collection::vec(eq(), 0..=2)),
                prop::option::of(prop::collection::vec(1u32..=6, 1..=3)),
            ),
        )
            .prop_map(
                |(
                    name,
                    params,
                    sign,
                    generators,
                    braiding,
                    (lets, basis, relations, dimension, cleft, realization),
                )| Ast {
                    name,
                    params,
                    sign,
                    generators,
                    braiding,
                    lets,
                    basis,
                    relations,
                    dimension,
                    cleft,
                    realization,
                },
            )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parsing_a_printed_tree_returns_the_identical_tree(ast in ast()) {
        let text = print(&ast);
        prop_assert_eq!(parse(&text), Ok(ast));
    }
}
