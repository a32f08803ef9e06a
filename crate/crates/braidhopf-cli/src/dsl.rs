//! Presentation DSL: tokenizer, syntax tree, parser, and printer.
//!
//! An instance file is one `algebra NAME { ... }` block with clauses in a
//! fixed order: params, sign, generators, braiding, let bindings, basis,
//! relations, dimension, cleft, realization. Words use `*` and `^`;
//! scalars are polynomial expressions in the parameters and the sign
//! symbol. The printer emits the canonical layout, and parsing printed
//! text returns the identical syntax tree.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A source-located parse failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at line {}, column {}: {}",
            self.line, self.col, self.msg
        )
    }
}

impl std::error::Error for ParseError {}

/// One parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ast {
    pub name: String,
    pub params: Vec<String>,
    pub sign: Option<SignDecl>,
    pub generators: Vec<GenDecl>,
    pub braiding: Vec<Vec<SignExpr>>,
    pub lets: Vec<LetDecl>,
    pub basis: Option<Vec<PolyExpr>>,
    pub relations: Vec<EqDecl>,
    pub dimension: usize,
    pub cleft: Option<Vec<EqDecl>>,
    pub realization: Option<Vec<u32>>,
}

/// `sign SYMBOL = +1|-1;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDecl {
    pub symbol: String,
    pub value: i8,
}

/// `NAME[d1,...,dk]` inside the generators clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub degrees: Vec<u32>,
}

/// A braiding entry: `1`, `-1`, `SYM`, or `-SYM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignExpr {
    pub neg: bool,
    pub sym: Option<String>,
}

/// `let NAME = poly;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetDecl {
    pub name: String,
    pub value: PolyExpr,
}

/// `lhs = rhs` inside a relations or cleft block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqDecl {
    pub lhs: PolyExpr,
    pub rhs: PolyExpr,
}

/// A sum of terms; always at least one term (`0` is the single term 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpr {
    pub terms: Vec<TermExpr>,
}

/// A signed product of factors, in source order; always at least one
/// factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpr {
    pub neg: bool,
    pub factors: Vec<Factor>,
}

/// A single multiplicand: a nonnegative rational literal or a named
/// symbol with a positive exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Num(BigRational),
    Pow { name: String, exp: u32 },
}

impl PolyExpr {
    /// The literal `0`.
    pub fn zero() -> PolyExpr {
        PolyExpr {
            terms: vec![TermExpr {
                neg: false,
                factors: vec![Factor::Num(BigRational::zero())],
            }],
        }
    }

    /// A single bare symbol.
    pub fn symbol(name: &str) -> PolyExpr {
        PolyExpr {
            terms: vec![TermExpr {
                neg: false,
                factors: vec![Factor::Pow {
                    name: name.to_string(),
                    exp: 1,
                }],
            }],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    Ident(String),
    Int(BigInt),
    Punct(char),
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokKind::Int(n) => write!(f, "integer `{n}`"),
            TokKind::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let (l, co) = (line, col);
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok {
                kind: TokKind::Ident(s),
                line: l,
                col: co,
            });
        } else if c.is_ascii_digit() {
            let (l, co) = (line, col);
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok {
                kind: TokKind::Int(s.parse().expect("digit string")),
                line: l,
                col: co,
            });
        } else if "{}[](),;=*^+-/".contains(c) {
            toks.push(Tok {
                kind: TokKind::Punct(c),
                line,
                col,
            });
            chars.next();
            col += 1;
        } else {
            return Err(ParseError {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn end_pos(&self) -> (usize, usize) {
        self.toks
            .last()
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1))
    }

    fn err_here(&self, msg: String) -> ParseError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end_pos());
        ParseError { line, col, msg }
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn next(&mut self, what: &str) -> Result<Tok, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err_here(format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(t)
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&TokKind::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next(&format!("`{c}`"))?;
        if t.kind == TokKind::Punct(c) {
            Ok(())
        } else {
            Err(ParseError {
                line: t.line,
                col: t.col,
                msg: format!("expected `{c}`, found {}", t.kind),
            })
        }
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(TokKind::Ident(s)) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.kind == TokKind::Ident(kw.to_string()) {
            Ok(())
        } else {
            Err(ParseError {
                line: t.line,
                col: t.col,
                msg: format!("expected `{kw}`, found {}", t.kind),
            })
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        let t = self.next(what)?;
        match t.kind {
            TokKind::Ident(s) => Ok(s),
            other => Err(ParseError {
                line: t.line,
                col: t.col,
                msg: format!("expected {what}, found {other}"),
            }),
        }
    }

    fn int(&mut self, what: &str) -> Result<BigInt, ParseError> {
        let t = self.next(what)?;
        match t.kind {
            TokKind::Int(n) => Ok(n),
            other => Err(ParseError {
                line: t.line,
                col: t.col,
                msg: format!("expected {what}, found {other}"),
            }),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        let at = self.pos;
        let n = self.int(what)?;
        u32::try_from(&n).map_err(|_| ParseError {
            line: self.toks[at].line,
            col: self.toks[at].col,
            msg: format!("{what} out of range: {n}"),
        })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        match self.peek() {
            Some(TokKind::Int(_)) => {
                let numer = self.int("a number")?;
                let denom = if self.eat_punct('/') {
                    let at = self.pos;
                    let d = self.int("a denominator")?;
                    if d.is_zero() {
                        return Err(ParseError {
                            line: self.toks[at].line,
                            col: self.toks[at].col,
                            msg: "denominator is zero".to_string(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Factor::Num(BigRational::new(numer, denom)))
            }
            Some(TokKind::Ident(_)) => {
                let name = self.ident("a symbol")?;
                let exp = if self.eat_punct('^') {
                    let at = self.pos;
                    let e = self.small_int("an exponent")?;
                    if e == 0 {
                        return Err(ParseError {
                            line: self.toks[at].line,
                            col: self.toks[at].col,
                            msg: "exponent must be positive".to_string(),
                        });
                    }
                    e
                } else {
                    1
                };
                Ok(Factor::Pow { name, exp })
            }
            _ => Err(self.err_here("expected a number or a symbol".to_string())),
        }
    }

    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let mut terms = Vec::new();
        let mut neg = self.eat_punct('-');
        loop {
            let mut factors = vec![self.factor()?];
            while self.eat_punct('*') {
                factors.push(self.factor()?);
            }
            terms.push(TermExpr { neg, factors });
            if self.eat_punct('+') {
                neg = false;
            } else if self.eat_punct('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(PolyExpr { terms })
    }

    fn sign_expr(&mut self) -> Result<SignExpr, ParseError> {
        let neg = if self.eat_punct('-') {
            true
        } else {
            self.eat_punct('+');
            false
        };
        match self.peek() {
            Some(TokKind::Int(_)) => {
                let at = self.pos;
                let n = self.int("a braiding entry")?;
                if !n.is_one() {
                    return Err(ParseError {
                        line: self.toks[at].line,
                        col: self.toks[at].col,
                        msg: format!("braiding entries are signs, found {n}"),
                    });
                }
                Ok(SignExpr { neg, sym: None })
            }
            Some(TokKind::Ident(_)) => {
                let name = self.ident("a sign symbol")?;
                Ok(SignExpr {
                    neg,
                    sym: Some(name),
                })
            }
            _ => Err(self.err_here("expected a braiding entry".to_string())),
        }
    }

    fn eq_block(&mut self) -> Result<Vec<EqDecl>, ParseError> {
        self.expect_punct('{')?;
        let mut eqs = Vec::new();
        while !self.eat_punct('}') {
            let lhs = self.poly()?;
            self.expect_punct('=')?;
            let rhs = self.poly()?;
            self.expect_punct(';')?;
            eqs.push(EqDecl { lhs, rhs });
        }
        Ok(eqs)
    }

    fn instance(&mut self) -> Result<Ast, ParseError> {
        self.expect_keyword("algebra")?;
        let name = self.ident("an instance name")?;
        self.expect_punct('{')?;

        let mut params = Vec::new();
        if self.peek_keyword("params") {
            self.pos += 1;
            params.push(self.ident("a parameter name")?);
            while self.eat_punct(',') {
                params.push(self.ident("a parameter name")?);
            }
            self.expect_punct(';')?;
        }

        let mut sign = None;
        if self.peek_keyword("sign") {
            self.pos += 1;
            let symbol = self.ident("a sign symbol")?;
            self.expect_punct('=')?;
            let neg = if self.eat_punct('-') {
                true
            } else {
                self.eat_punct('+');
                false
            };
            let at = self.pos;
            let n = self.int("a sign value")?;
            if !n.is_one() {
                return Err(ParseError {
                    line: self.toks[at].line,
                    col: self.toks[at].col,
                    msg: format!("sign value must be 1 or -1, found {n}"),
                });
            }
            self.expect_punct(';')?;
            sign = Some(SignDecl {
                symbol,
                value: if neg { -1 } else { 1 },
            });
        }

        self.expect_keyword("generators")?;
        let mut generators = Vec::new();
        loop {
            let gname = self.ident("a generator name")?;
            self.expect_punct('[')?;
            let mut degrees = vec![self.small_int("a degree")?];
            while self.eat_punct(',') {
                degrees.push(self.small_int("a degree")?);
            }
            self.expect_punct(']')?;
            generators.push(GenDecl {
                name: gname,
                degrees,
            });
            if !self.eat_punct(',') {
                break;
            }
        }
        if generators.len() > 4 {
            return Err(self.err_here(format!(
                "at most four generators are supported, found {}",
                generators.len()
            )));
        }
        self.expect_punct(';')?;

        self.expect_keyword("braiding")?;
        self.expect_punct('[')?;
        let mut braiding = Vec::new();
        loop {
            self.expect_punct('[')?;
            let mut row = vec![self.sign_expr()?];
            while self.eat_punct(',') {
                row.push(self.sign_expr()?);
            }
            self.expect_punct(']')?;
            braiding.push(row);
            if !self.eat_punct(',') {
                break;
            }
        }
        self.expect_punct(']')?;
        self.expect_punct(';')?;

        let mut lets = Vec::new();
        while self.peek_keyword("let") {
            self.pos += 1;
            let lname = self.ident("a binding name")?;
            self.expect_punct('=')?;
            let value = self.poly()?;
            self.expect_punct(';')?;
            lets.push(LetDecl { name: lname, value });
        }

        let mut basis = None;
        if self.peek_keyword("basis") {
            self.pos += 1;
            self.expect_punct('[')?;
            let mut entries = vec![self.poly()?];
            while self.eat_punct(',') {
                entries.push(self.poly()?);
            }
            self.expect_punct(']')?;
            self.expect_punct(';')?;
            basis = Some(entries);
        }

        self.expect_keyword("relations")?;
        let relations = self.eq_block()?;

        self.expect_keyword("dimension")?;
        let dimension = self.small_int("a dimension")? as usize;
        self.expect_punct(';')?;

        let mut cleft = None;
        if self.peek_keyword("cleft") {
            self.pos += 1;
            cleft = Some(self.eq_block()?);
        }

        let mut realization = None;
        if self.peek_keyword("realization") {
            self.pos += 1;
            self.expect_keyword("group")?;
            let mut orders = Vec::new();
            loop {
                self.expect_punct('(')?;
                self.expect_keyword("Z")?;
                self.expect_punct('/')?;
                let at = self.pos;
                let n = self.small_int("a cyclic order")?;
                if n == 0 {
                    return Err(ParseError {
                        line: self.toks[at].line,
                        col: self.toks[at].col,
                        msg: "cyclic order must be positive".to_string(),
                    });
                }
                orders.push(n);
                self.expect_punct(')')?;
                if self.peek_keyword("x") {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            self.expect_punct(';')?;
            realization = Some(orders);
        }

        self.expect_punct('}')?;
        if self.pos != self.toks.len() {
            return Err(self.err_here("expected end of input".to_string()));
        }
        Ok(Ast {
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
        })
    }
}

/// Parse one instance file.
pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    p.instance()
}

fn print_factor(out: &mut String, f: &Factor) {
    match f {
        Factor::Num(r) => {
            if r.is_integer() {
                out.push_str(&r.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", r.numer(), r.denom()));
            }
        }
        Factor::Pow { name, exp } => {
            out.push_str(name);
            if *exp > 1 {
                out.push_str(&format!("^{exp}"));
            }
        }
    }
}

/// Canonical rendering of a polynomial expression.
pub fn print_poly(p: &PolyExpr) -> String {
    let mut out = String::new();
    for (i, t) in p.terms.iter().enumerate() {
        if i == 0 {
            if t.neg {
                out.push('-');
            }
        } else if t.neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        for (k, f) in t.factors.iter().enumerate() {
            if k > 0 {
                out.push('*');
            }
            print_factor(&mut out, f);
        }
    }
    out
}

fn print_sign_expr(s: &SignExpr) -> String {
    let body = match &s.sym {
        Some(name) => name.clone(),
        None => "1".to_string(),
    };
    if s.neg {
        format!("-{body}")
    } else {
        body
    }
}

fn print_eq_block(out: &mut String, kw: &str, eqs: &[EqDecl]) {
    out.push_str(&format!("  {kw} {{\n"));
    for eq in eqs {
        out.push_str(&format!(
            "    {} = {};\n",
            print_poly(&eq.lhs),
            print_poly(&eq.rhs)
        ));
    }
    out.push_str("  }\n");
}

/// Canonical rendering of a full instance; parsing the output returns the
/// identical tree.
pub fn print(ast: &Ast) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {} {{\n", ast.name));
    if !ast.params.is_empty() {
        out.push_str(&format!("  params {};\n", ast.params.join(", ")));
    }
    if let Some(s) = &ast.sign {
        out.push_str(&format!(
            "  sign {} = {};\n",
            s.symbol,
            if s.value < 0 { "-1" } else { "1" }
        ));
    }
    let gens: Vec<String> = ast
        .generators
        .iter()
        .map(|g| {
            let degs: Vec<String> = g.degrees.iter().map(|d| d.to_string()).collect();
            format!("{}[{}]", g.name, degs.join(","))
        })
        .collect();
    out.push_str(&format!("  generators {};\n", gens.join(", ")));
    let rows: Vec<String> = ast
        .braiding
        .iter()
        .map(|row| {
            let entries: Vec<String> = row.iter().map(print_sign_expr).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    out.push_str(&format!("  braiding [{}];\n", rows.join(", ")));
    for l in &ast.lets {
        out.push_str(&format!("  let {} = {};\n", l.name, print_poly(&l.value)));
    }
    if let Some(entries) = &ast.basis {
        let names: Vec<String> = entries.iter().map(print_poly).collect();
        out.push_str(&format!("  basis [{}];\n", names.join(", ")));
    }
    print_eq_block(&mut out, "relations", &ast.relations);
    out.push_str(&format!("  dimension {};\n", ast.dimension));
    if let Some(eqs) = &ast.cleft {
        print_eq_block(&mut out, "cleft", eqs);
    }
    if let Some(orders) = &ast.realization {
        let groups: Vec<String> = orders.iter().map(|n| format!("(Z/{n})")).collect();
        out.push_str(&format!("  realization group {};\n", groups.join("x")));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = include_str!("../instances/a2.alg");
    const TAFT: &str = include_str!("../instances/taft.alg");

    #[test]
    fn shipped_files_parse_and_round_trip_textually() {
        for text in [A2, TAFT] {
            let ast = parse(text).expect("shipped file parses");
            assert_eq!(print(&ast), text);
        }
    }

    #[test]
    fn shipped_rank_two_file_has_the_expected_shape() {
        let ast = parse(A2).unwrap();
        assert_eq!(ast.name, "a2");
        assert_eq!(ast.params, vec!["l1", "l2", "l12"]);
        assert_eq!(
            ast.sign,
            Some(SignDecl {
                symbol: "q12".to_string(),
                value: -1
            })
        );
        assert_eq!(ast.generators.len(), 2);
        assert_eq!(ast.generators[0].degrees, vec![1, 0]);
        assert_eq!(ast.braiding.len(), 2);
        assert_eq!(ast.lets.len(), 1);
        assert_eq!(ast.basis.as_ref().map(|b| b.len()), Some(8));
        assert_eq!(ast.relations.len(), 3);
        assert_eq!(ast.dimension, 8);
        assert_eq!(ast.cleft.as_ref().map(|c| c.len()), Some(3));
        assert_eq!(ast.realization, Some(vec![4, 4]));
    }

    #[test]
    fn printed_tree_reparses_identically() {
        // exponent one, rationals, multi-symbol terms, no optional clauses
        let ast = Ast {
            name: "t".to_string(),
            params: vec!["a".to_string()],
            sign: None,
            generators: vec![GenDecl {
                name: "x".to_string(),
                degrees: vec![1],
            }],
            braiding: vec![vec![SignExpr {
                neg: true,
                sym: None,
            }]],
            lets: vec![LetDecl {
                name: "y".to_string(),
                value: PolyExpr {
                    terms: vec![
                        TermExpr {
                            neg: false,
                            factors: vec![
                                Factor::Num(BigRational::new(1.into(), 2.into())),
                                Factor::Pow {
                                    name: "x".to_string(),
                                    exp: 1,
                                },
                            ],
                        },
                        TermExpr {
                            neg: true,
                            factors: vec![Factor::Pow {
                                name: "a".to_string(),
                                exp: 3,
                            }],
                        },
                    ],
                },
            }],
            basis: None,
            relations: vec![EqDecl {
                lhs: PolyExpr::symbol("x"),
                rhs: PolyExpr::zero(),
            }],
            dimension: 1,
            cleft: None,
            realization: None,
        };
        let text = print(&ast);
        assert_eq!(parse(&text).unwrap(), ast);
    }

    #[test]
    fn leading_minus_and_signs_round_trip() {
        let src = "algebra s {\n  generators x[1];\n  braiding [[-1]];\n  let z = -2*x + 1/3;\n  relations {\n    x^2 = 0;\n  }\n  dimension 2;\n}\n";
        let ast = parse(src).unwrap();
        assert_eq!(print(&ast), src);
        assert!(ast.lets[0].value.terms[0].neg);
    }

    #[test]
    fn errors_carry_line_and_column() {
        let src = "algebra a {\n  generators x[1]\n  braiding [[-1]];\n  relations {\n  }\n  dimension 2;\n}\n";
        let err = parse(src).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.msg.contains("expected `;`"), "{}", err.msg);
    }

    #[test]
    fn five_generators_are_rejected() {
        let src = "algebra a {\n  generators a[1], b[1], c[1], d[1], e[1];\n  braiding [[-1]];\n  relations {\n  }\n  dimension 1;\n}\n";
        let err = parse(src).unwrap_err();
        assert!(err.msg.contains("at most four"), "{}", err.msg);
    }

    #[test]
    fn braiding_entries_must_be_signs() {
        let src = "algebra a {\n  generators x[1];\n  braiding [[2]];\n  relations {\n  }\n  dimension 1;\n}\n";
        let err = parse(src).unwrap_err();
        assert!(err.msg.contains("signs"), "{}", err.msg);
    }
}
