//! Lexer and recursive-descent parser for words and ring elements.
//!
//! ```text
//! word := atom ("*" atom)* | "1"
//! atom := IDENT ("^" SIGNED_INT)? | "(" word ")" ("^" SIGNED_INT)?
//! ring := ("+"|"-")? term (("+"|"-") term)*
//! term := INT | INT? "*"? word
//! ```
//!
//! Parsing produces a context-free syntax tree; identifiers are resolved when
//! the tree is evaluated against a [`GroupSpec`]. Names that are not
//! generators can be bound by the caller through a resolver.

use std::sync::Arc;

use crate::error::{Error, Pos, Result};
use crate::group::GroupSpec;
use crate::ring::RingElement;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Star,
    Caret,
    LParen,
    RParen,
    Plus,
    Minus,
    Comma,
    Eq,
    EqEq,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::EqEq => "`==`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Tokenizes one line of text; columns are 1-based character offsets.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, i + 1);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, pos });
            i += 1;
        } else if c == '=' {
            if chars.get(i + 1) == Some(&'=') {
                out.push(Token {
                    tok: Tok::EqEq,
                    pos,
                });
                i += 2;
            } else {
                out.push(Token { tok: Tok::Eq, pos });
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Int(chars[start..i].iter().collect()),
                pos,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
        } else {
            return Err(Error::Parse {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Tokenizes text that may span several lines.
pub fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        out.extend(lex_line(line, i + 1)?);
    }
    Ok(out)
}

/// Token stream with one-token lookahead.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    at: usize,
    end: Pos,
}

impl<'a> Cursor<'a> {
    /// `end` is reported when input runs out.
    pub fn new(tokens: &'a [Token], end: Pos) -> Self {
        Cursor { tokens, at: 0, end }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    pub fn peek_at(&self, offset: usize) -> Option<&'a Tok> {
        self.tokens.get(self.at + offset).map(|t| &t.tok)
    }

    pub fn pos(&self) -> Pos {
        self.tokens.get(self.at).map(|t| t.pos).unwrap_or(self.end)
    }

    pub fn advance(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.at);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.tokens.len()
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<Pos> {
        let pos = self.pos();
        if self.eat(tok) {
            Ok(pos)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok((s.clone(), pos))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// Parse error at the current token.
    pub fn unexpected(&self, wanted: &str) -> Error {
        let found = self
            .peek()
            .map(|t| t.describe())
            .unwrap_or_else(|| "end of input".into());
        Error::Parse {
            pos: self.pos(),
            message: format!("expected {wanted}, found {found}"),
        }
    }

    /// Signed integer literal; used for exponents.
    pub fn signed_int(&mut self) -> Result<i64> {
        let pos = self.pos();
        let negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        match self.peek() {
            Some(Tok::Int(digits)) => {
                self.at += 1;
                let v: i64 = digits.parse().map_err(|_| Error::MalformedExponent {
                    pos,
                    message: format!("`{digits}` does not fit in 64 bits"),
                })?;
                Ok(if negative { -v } else { v })
            }
            _ => Err(Error::MalformedExponent {
                pos: self.pos(),
                message: "expected an integer after `^`".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomKind {
    Name(String),
    Group(WordAst),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomAst {
    pub kind: AtomKind,
    pub exp: i64,
    pub pos: Pos,
}

/// Product of atoms; empty for the literal `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordAst {
    pub atoms: Vec<AtomAst>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermAst {
    pub coeff: i64,
    pub word: Option<WordAst>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingAst {
    pub terms: Vec<TermAst>,
    pub pos: Pos,
}

fn starts_word(tok: Option<&Tok>) -> bool {
    matches!(tok, Some(Tok::Ident(_)) | Some(Tok::LParen))
}

impl WordAst {
    pub fn parse(c: &mut Cursor) -> Result<WordAst> {
        let pos = c.pos();
        if let Some(Tok::Int(d)) = c.peek() {
            if d == "1" {
                c.advance();
                return Ok(WordAst {
                    atoms: Vec::new(),
                    pos,
                });
            }
            return Err(c.unexpected("a generator or `1`"));
        }
        let mut atoms = vec![AtomAst::parse(c)?];
        while c.peek() == Some(&Tok::Star) && starts_word(c.peek_at(1)) {
            c.advance();
            atoms.push(AtomAst::parse(c)?);
        }
        Ok(WordAst { atoms, pos })
    }

    pub fn eval(&self, ctx: &Arc<GroupSpec>, resolver: &dyn Resolver) -> Result<RingElement> {
        let mut acc = RingElement::one(ctx);
        for a in &self.atoms {
            acc = acc.checked_mul(&a.eval(ctx, resolver)?)?;
        }
        Ok(acc)
    }

    /// Evaluates to a single group element.
    pub fn eval_word(&self, ctx: &Arc<GroupSpec>, resolver: &dyn Resolver) -> Result<Word> {
        let r = self.eval(ctx, resolver)?;
        r.as_word()
            .cloned()
            .ok_or_else(|| Error::NotAWord(r.to_string()))
    }
}

impl AtomAst {
    fn parse(c: &mut Cursor) -> Result<AtomAst> {
        let pos = c.pos();
        let kind = match c.peek() {
            Some(Tok::Ident(name)) => {
                c.advance();
                AtomKind::Name(name.clone())
            }
            Some(Tok::LParen) => {
                c.advance();
                let inner = WordAst::parse(c)?;
                c.expect(&Tok::RParen)?;
                AtomKind::Group(inner)
            }
            _ => return Err(c.unexpected("a generator")),
        };
        let exp = if c.eat(&Tok::Caret) {
            c.signed_int()?
        } else {
            1
        };
        Ok(AtomAst { kind, exp, pos })
    }

    fn eval(&self, ctx: &Arc<GroupSpec>, resolver: &dyn Resolver) -> Result<RingElement> {
        let base = match &self.kind {
            AtomKind::Name(name) => match ctx.lookup(name) {
                Some(g) => {
                    return Ok(RingElement::from_word(Word::from_powers(
                        ctx,
                        [(g, self.exp)],
                    )?))
                }
                None => match resolver.resolve(name) {
                    Some(ast) => ast.eval(ctx, resolver)?,
                    None => {
                        return Err(Error::UnknownGenerator {
                            name: name.clone(),
                            pos: self.pos,
                        })
                    }
                },
            },
            AtomKind::Group(w) => w.eval(ctx, resolver)?,
        };
        ring_pow(&base, self.exp)
    }
}

/// Powers of ring elements: any exponent for `±w`, nonnegative otherwise.
fn ring_pow(base: &RingElement, n: i64) -> Result<RingElement> {
    if n == 1 {
        return Ok(base.clone());
    }
    if base.len() == 1 {
        let (w, c) = base.terms().next().expect("one term");
        if c == 1 || c == -1 {
            let sign = if c == -1 && n % 2 != 0 { -1 } else { 1 };
            return Ok(RingElement::monomial(sign, w.pow(n)?));
        }
    }
    if n < 0 {
        return Err(Error::NotAWord(format!(
            "({base})^{n}: only group elements can be inverted"
        )));
    }
    let mut acc = RingElement::one(base.ctx());
    for _ in 0..n {
        acc = acc.checked_mul(base)?;
    }
    Ok(acc)
}

impl RingAst {
    pub fn parse(c: &mut Cursor) -> Result<RingAst> {
        let pos = c.pos();
        let mut terms = Vec::new();
        let mut sign = if c.eat(&Tok::Minus) {
            -1
        } else {
            c.eat(&Tok::Plus);
            1
        };
        loop {
            terms.push(TermAst::parse(c, sign)?);
            if c.eat(&Tok::Plus) {
                sign = 1;
            } else if c.eat(&Tok::Minus) {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(RingAst { terms, pos })
    }

    pub fn eval(&self, ctx: &Arc<GroupSpec>, resolver: &dyn Resolver) -> Result<RingElement> {
        let mut acc = RingElement::zero(ctx);
        for t in &self.terms {
            let value = match &t.word {
                Some(w) => w.eval(ctx, resolver)?,
                None => RingElement::one(ctx),
            };
            acc = acc.checked_add(&value.scale(t.coeff)?)?;
        }
        Ok(acc)
    }

    /// The ring expression when it is a bare word (`1·w` syntactically).
    pub fn as_word_ast(&self) -> Option<&WordAst> {
        match self.terms.as_slice() {
            [TermAst {
                coeff: 1,
                word: Some(w),
                ..
            }] => Some(w),
            _ => None,
        }
    }
}

impl TermAst {
    fn parse(c: &mut Cursor, sign: i64) -> Result<TermAst> {
        let pos = c.pos();
        if let Some(Tok::Int(digits)) = c.peek() {
            c.advance();
            let v: i64 = digits.parse().map_err(|_| Error::Parse {
                pos,
                message: format!("coefficient `{digits}` does not fit in 64 bits"),
            })?;
            let coeff = v * sign;
            let word = if c.peek() == Some(&Tok::Star) && starts_word(c.peek_at(1)) {
                c.advance();
                Some(WordAst::parse(c)?)
            } else if starts_word(c.peek()) {
                Some(WordAst::parse(c)?)
            } else {
                None
            };
            return Ok(TermAst { coeff, word, pos });
        }
        Ok(TermAst {
            coeff: sign,
            word: Some(WordAst::parse(c)?),
            pos,
        })
    }
}

/// Lookup for names that are not generators of the evaluation context.
pub trait Resolver {
    fn resolve(&self, name: &str) -> Option<&RingAst>;
}

/// Resolver that knows no names.
pub struct NoNames;

impl Resolver for NoNames {
    fn resolve(&self, _name: &str) -> Option<&RingAst> {
        None
    }
}

impl Resolver for std::collections::BTreeMap<String, RingAst> {
    fn resolve(&self, name: &str) -> Option<&RingAst> {
        self.get(name)
    }
}

fn end_of(text: &str) -> Pos {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map(|l| l.chars().count()).unwrap_or(0) + 1;
    Pos::new(line, column)
}

/// Parses a word in normal form.
pub fn parse_word(text: &str, ctx: &Arc<GroupSpec>) -> Result<Word> {
    let tokens = lex(text)?;
    let mut c = Cursor::new(&tokens, end_of(text));
    let ast = WordAst::parse(&mut c)?;
    c.expect_end()?;
    ast.eval_word(ctx, &NoNames)
}

/// Parses a ring element.
pub fn parse_ring(text: &str, ctx: &Arc<GroupSpec>) -> Result<RingElement> {
    let tokens = lex(text)?;
    let mut c = Cursor::new(&tokens, end_of(text));
    let ast = RingAst::parse(&mut c)?;
    c.expect_end()?;
    ast.eval(ctx, &NoNames)
}
