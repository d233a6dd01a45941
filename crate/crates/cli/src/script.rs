//! The script language.
//!
//! ```text
//! script    := (statement? comment?)*            one statement per line
//! statement := "manifold" group "weak"?
//!            | "let" NAME "=" ring
//!            | "check" expr "==" expr | "check" ring "==" ring
//!            | "reduce" ring
//!            | "eval" expr
//! group     := "S4" | "D3xS1" | factor | "freeprod" "(" factor ("," factor)* ")"
//! factor    := "free" "(" NAME ("," NAME)* ")" | "cyclic" "(" (INT | "inf") ("," NAME)? ")"
//! expr      := power ("*" power)*
//! power     := primary ("^" SIGNED_INT)*
//! primary   := "id" | "(" expr ")" | "inv" "(" expr ")"
//!            | "wat" "(" word "," word ")" | "bg" "(" word ")" | "bg_knotted1" "(" word ")"
//!            | ("sref" | "sref_l" | "sref_rr" | "sref_lower" | "r") "(" ring ")"
//!            | "ps" "(" "r" "(" ring ")" ")"
//! ```
//!
//! Words and rings use the core syntax. Everything is checked when the
//! script is parsed: group specifications, names, and which identifiers a
//! position may mention.

use std::collections::BTreeMap;

use grasper_core::syntax::{lex_line, AtomKind, Cursor, RingAst, Tok, Token, WordAst};
use grasper_core::{Error, FactorSpec, Mode, Pos, ReductionContext, Result, SrefVariant};

const KEYWORDS: &[&str] = &[
    "manifold",
    "weak",
    "let",
    "check",
    "reduce",
    "eval",
    "free",
    "cyclic",
    "freeprod",
    "inf",
    "id",
    "inv",
    "wat",
    "bg",
    "bg_knotted1",
    "sref",
    "sref_l",
    "sref_rr",
    "sref_lower",
    "r",
    "ps",
];

const EXPR_HEADS: &[&str] = &[
    "id",
    "inv",
    "wat",
    "bg",
    "bg_knotted1",
    "sref",
    "sref_l",
    "sref_rr",
    "sref_lower",
    "r",
    "ps",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Id,
    Wat(WordAst, WordAst),
    Bg { word: WordAst, knotted1: bool },
    Sref(SrefVariant, RingAst),
    PsR(RingAst),
    Compose(Vec<ExprAst>),
    Inverse(Box<ExprAst>),
    Power(Box<ExprAst>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Diffeo(ExprAst, ExprAst),
    Ring(RingAst, RingAst),
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Manifold(ReductionContext),
    Let(String, RingAst),
    Check(Check),
    Reduce(RingAst),
    Eval(ExprAst),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub line: usize,
    pub text: String,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// Which generators a position may name.
#[derive(Clone, Copy)]
enum Scope {
    /// Base generators and `t`.
    Ambient,
    /// Base generators, `x` and `y`.
    Bar,
    /// Anything a `let` body may later be used as.
    Any,
}

struct Parser {
    rctx: Option<ReductionContext>,
    lets: BTreeMap<String, RingAst>,
}

pub fn parse_script(source: &str) -> Result<Script> {
    let mut p = Parser {
        rctx: None,
        lets: BTreeMap::new(),
    };
    let mut statements = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let tokens = lex_line(text, line)?;
        if tokens.is_empty() {
            continue;
        }
        let end = Pos::new(line, text.trim_end().chars().count() + 1);
        let kind = p.statement(&tokens, end)?;
        statements.push(Statement {
            line,
            text: text.trim().to_string(),
            kind,
        });
    }
    Ok(Script { statements })
}

fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        message: message.into(),
    }
}

/// Parses a manifold description such as `S4` or `free(a,b) weak`.
pub fn parse_manifold(text: &str) -> Result<ReductionContext> {
    let tokens = lex_line(text, 1)?;
    let mut c = Cursor::new(&tokens, Pos::new(1, text.chars().count() + 1));
    let rctx = manifold(&mut c)?;
    c.expect_end()?;
    Ok(rctx)
}

fn manifold(c: &mut Cursor) -> Result<ReductionContext> {
    let pos = c.pos();
    let (name, _) = c.expect_ident()?;
    let (factors, label) = match name.as_str() {
        "S4" => (vec![FactorSpec::Trivial], Some("S4")),
        "D3xS1" => (vec![FactorSpec::IntegerCyclic("g".into())], Some("D3xS1")),
        "freeprod" => {
            c.expect(&Tok::LParen)?;
            let mut fs = vec![factor(c)?];
            while c.eat(&Tok::Comma) {
                fs.push(factor(c)?);
            }
            c.expect(&Tok::RParen)?;
            (fs, None)
        }
        "free" | "cyclic" => (vec![factor_body(c, &name)?], None),
        _ => {
            return Err(parse_error(
                pos,
                format!("unknown manifold `{name}`; expected S4, D3xS1, free, cyclic or freeprod"),
            ))
        }
    };
    let mode = if c.eat(&Tok::Ident("weak".into())) {
        Mode::Weak
    } else {
        Mode::Full
    };
    for f in &factors {
        for g in f.generator_names() {
            if KEYWORDS.contains(&g.as_str()) {
                return Err(parse_error(pos, format!("`{g}` is a keyword")));
            }
        }
    }
    let spec = grasper_core::GroupSpec::new(factors, &[grasper_core::Reserved::T])
        .map_err(|e| parse_error(pos, e.to_string()))?;
    let rctx = ReductionContext::new(&spec, mode).map_err(|e| parse_error(pos, e.to_string()))?;
    Ok(match label {
        Some(l) => rctx.with_label(l),
        None => rctx,
    })
}

fn factor(c: &mut Cursor) -> Result<FactorSpec> {
    let pos = c.pos();
    let (name, _) = c.expect_ident()?;
    match name.as_str() {
        "free" | "cyclic" => factor_body(c, &name),
        _ => Err(parse_error(
            pos,
            format!("expected `free` or `cyclic`, found `{name}`"),
        )),
    }
}

fn factor_body(c: &mut Cursor, kind: &str) -> Result<FactorSpec> {
    c.expect(&Tok::LParen)?;
    let f = if kind == "free" {
        let mut names = vec![c.expect_ident()?.0];
        while c.eat(&Tok::Comma) {
            names.push(c.expect_ident()?.0);
        }
        FactorSpec::FreeGroup(names)
    } else {
        let order_pos = c.pos();
        let order = match c.advance().map(|t| &t.tok) {
            Some(Tok::Int(d)) => Some(
                d.parse::<u64>()
                    .map_err(|_| parse_error(order_pos, format!("order `{d}` is too large")))?,
            ),
            Some(Tok::Ident(s)) if s == "inf" => None,
            _ => return Err(parse_error(order_pos, "expected an order or `inf`")),
        };
        let name = if c.eat(&Tok::Comma) {
            c.expect_ident()?.0
        } else {
            "g".to_string()
        };
        match order {
            None => FactorSpec::IntegerCyclic(name),
            Some(0) => return Err(parse_error(order_pos, "order must be positive")),
            Some(1) => FactorSpec::Trivial,
            Some(order) => FactorSpec::FiniteCyclic { name, order },
        }
    };
    c.expect(&Tok::RParen)?;
    Ok(f)
}

fn expect_keyword(c: &mut Cursor, kw: &str) -> Result<()> {
    match c.peek() {
        Some(Tok::Ident(s)) if s == kw => {
            c.advance();
            Ok(())
        }
        _ => Err(c.unexpected(&format!("`{kw}`"))),
    }
}

impl Parser {
    fn statement(&mut self, tokens: &[Token], end: Pos) -> Result<StmtKind> {
        let mut c = Cursor::new(tokens, end);
        let (kw, pos) = c
            .expect_ident()
            .map_err(|_| c.unexpected("a statement keyword"))?;
        let kind = match kw.as_str() {
            "manifold" => {
                let rctx = manifold(&mut c)?;
                for g in rctx.ctx().generator_names() {
                    if self.lets.contains_key(g) {
                        return Err(parse_error(
                            pos,
                            format!("generator `{g}` shadows a let binding"),
                        ));
                    }
                }
                self.rctx = Some(rctx.clone());
                StmtKind::Manifold(rctx)
            }
            "let" => {
                let (name, name_pos) = c.expect_ident()?;
                self.check_new_name(&name, name_pos)?;
                c.expect(&Tok::Eq)?;
                let body = RingAst::parse(&mut c)?;
                self.check_ring(&body, Scope::Any)?;
                self.lets.insert(name.clone(), body.clone());
                StmtKind::Let(name, body)
            }
            "check" => {
                self.require_manifold(pos)?;
                StmtKind::Check(self.check_body(&mut c)?)
            }
            "reduce" => {
                self.require_manifold(pos)?;
                let r = RingAst::parse(&mut c)?;
                self.check_ring(&r, Scope::Ambient)?;
                StmtKind::Reduce(r)
            }
            "eval" => {
                self.require_manifold(pos)?;
                StmtKind::Eval(self.expr(&mut c)?)
            }
            _ => {
                return Err(parse_error(
                    pos,
                    format!(
                        "unknown statement `{kw}`; expected manifold, let, check, reduce or eval"
                    ),
                ))
            }
        };
        c.expect_end()?;
        Ok(kind)
    }

    fn require_manifold(&self, pos: Pos) -> Result<()> {
        if self.rctx.is_none() {
            return Err(parse_error(pos, "no manifold declared yet"));
        }
        Ok(())
    }

    fn check_new_name(&self, name: &str, pos: Pos) -> Result<()> {
        let why = if KEYWORDS.contains(&name) {
            "is a keyword"
        } else if matches!(name, "t" | "x" | "y") {
            "is a reserved generator"
        } else if self
            .rctx
            .as_ref()
            .is_some_and(|r| r.ctx().lookup(name).is_some())
        {
            "is a generator"
        } else if self.lets.contains_key(name) {
            "is already defined"
        } else {
            return Ok(());
        };
        Err(parse_error(pos, format!("`{name}` {why}")))
    }

    fn known(&self, name: &str, scope: Scope) -> bool {
        if self.lets.contains_key(name) {
            return true;
        }
        let Some(r) = &self.rctx else {
            return matches!(scope, Scope::Any) && matches!(name, "t" | "x" | "y");
        };
        let base = r
            .ctx()
            .lookup(name)
            .is_some_and(|g| !r.ctx().is_reserved_factor(g.factor));
        match scope {
            Scope::Ambient => base || name == "t",
            Scope::Bar => base || name == "x" || name == "y",
            Scope::Any => base || matches!(name, "t" | "x" | "y"),
        }
    }

    fn check_word(&self, w: &WordAst, scope: Scope) -> Result<()> {
        for a in &w.atoms {
            match &a.kind {
                AtomKind::Name(n) if !self.known(n, scope) => {
                    return Err(Error::UnknownGenerator {
                        name: n.clone(),
                        pos: a.pos,
                    })
                }
                AtomKind::Name(_) => {}
                AtomKind::Group(inner) => self.check_word(inner, scope)?,
            }
        }
        Ok(())
    }

    fn check_ring(&self, r: &RingAst, scope: Scope) -> Result<()> {
        r.terms
            .iter()
            .filter_map(|t| t.word.as_ref())
            .try_for_each(|w| self.check_word(w, scope))
    }

    fn check_body(&self, c: &mut Cursor) -> Result<Check> {
        // `(` may open a grouped expression or a grouped word
        let mut k = 0;
        while c.peek_at(k) == Some(&Tok::LParen) {
            k += 1;
        }
        let diffeo =
            matches!(c.peek_at(k), Some(Tok::Ident(s)) if EXPR_HEADS.contains(&s.as_str()));
        if diffeo {
            let lhs = self.expr(c)?;
            c.expect(&Tok::EqEq)?;
            let rhs = self.expr(c)?;
            Ok(Check::Diffeo(lhs, rhs))
        } else {
            let lhs = RingAst::parse(c)?;
            self.check_ring(&lhs, Scope::Ambient)?;
            c.expect(&Tok::EqEq)?;
            let rhs = RingAst::parse(c)?;
            self.check_ring(&rhs, Scope::Ambient)?;
            Ok(Check::Ring(lhs, rhs))
        }
    }

    fn expr(&self, c: &mut Cursor) -> Result<ExprAst> {
        let mut parts = vec![self.power(c)?];
        while c.eat(&Tok::Star) {
            parts.push(self.power(c)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            ExprAst::Compose(parts)
        })
    }

    fn power(&self, c: &mut Cursor) -> Result<ExprAst> {
        let mut e = self.primary(c)?;
        while c.eat(&Tok::Caret) {
            e = ExprAst::Power(Box::new(e), c.signed_int()?);
        }
        Ok(e)
    }

    fn primary(&self, c: &mut Cursor) -> Result<ExprAst> {
        if c.eat(&Tok::LParen) {
            let e = self.expr(c)?;
            c.expect(&Tok::RParen)?;
            return Ok(e);
        }
        let pos = c.pos();
        let head = match c.peek() {
            Some(Tok::Ident(s)) if EXPR_HEADS.contains(&s.as_str()) => s.clone(),
            _ => return Err(c.unexpected("an expression")),
        };
        c.advance();
        if head == "id" {
            return Ok(ExprAst::Id);
        }
        c.expect(&Tok::LParen)?;
        let e = match head.as_str() {
            "inv" => ExprAst::Inverse(Box::new(self.expr(c)?)),
            "wat" => {
                let a = WordAst::parse(c)?;
                self.check_word(&a, Scope::Ambient)?;
                c.expect(&Tok::Comma)?;
                let b = WordAst::parse(c)?;
                self.check_word(&b, Scope::Ambient)?;
                ExprAst::Wat(a, b)
            }
            "bg" | "bg_knotted1" => {
                let word = WordAst::parse(c)?;
                self.check_word(&word, Scope::Bar)?;
                ExprAst::Bg {
                    word,
                    knotted1: head == "bg_knotted1",
                }
            }
            "ps" => {
                expect_keyword(c, "r")?;
                c.expect(&Tok::LParen)?;
                let r = RingAst::parse(c)?;
                self.check_ring(&r, Scope::Ambient)?;
                c.expect(&Tok::RParen)?;
                ExprAst::PsR(r)
            }
            _ => {
                let r = RingAst::parse(c)?;
                self.check_ring(&r, Scope::Ambient)?;
                match head.as_str() {
                    "r" => ExprAst::PsR(r),
                    "sref" => ExprAst::Sref(SrefVariant::R, r),
                    "sref_l" => ExprAst::Sref(SrefVariant::L, r),
                    "sref_rr" => ExprAst::Sref(SrefVariant::RR, r),
                    "sref_lower" => ExprAst::Sref(SrefVariant::Lower, r),
                    _ => unreachable!("heads are listed in EXPR_HEADS"),
                }
            }
        };
        c.expect(&Tok::RParen).map_err(|_| {
            parse_error(
                c.pos(),
                format!("expected `)` to close `{head}(` opened at {pos}"),
            )
        })?;
        Ok(e)
    }
}

/// Names bound by `let` statements, for evaluation.
pub fn let_bindings(script: &Script) -> BTreeMap<String, RingAst> {
    script
        .statements
        .iter()
        .filter_map(|s| match &s.kind {
            StmtKind::Let(n, r) => Some((n.clone(), r.clone())),
            _ => None,
        })
        .collect()
}
