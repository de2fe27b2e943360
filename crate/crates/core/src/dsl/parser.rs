//! Recursive-descent parser and printer for morphism expressions and scripts.
//!
//! ```text
//! script  := item*
//! item    := "mor" NAME ":" obj "->" obj "=" expr ";"
//!          | "show" expr ";"
//!          | "assert" expr "==" expr ";"
//! obj     := "I" | INT ("*" INT)*
//! expr    := tensor (";" tensor)*          diagrammatic: first ; second
//! tensor  := unary ("ox" unary)*
//! unary   := ("dagger" | "conj" | "star") unary | atom
//! atom    := "id" INT | "swap" INT INT | "cup" INT | "cap" INT
//!          | "discard" INT | NAME | matrix | "(" expr ")"
//! matrix  := "[" row (";" row)* "]"
//! row     := scalar ("," scalar)*
//! scalar  := ["-"] num [("+" | "-") num]    num: real or imaginary literal
//! ```
//!
//! Inside a script a `;` that is followed by end of input or by one of the
//! item keywords terminates the item instead of composing.

use std::collections::HashSet;
use std::fmt;

use super::lexer::{tokenize, Tok, Token};
use super::DslError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lit {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Id(usize),
    Swap(usize, usize),
    Cup(usize),
    Cap(usize),
    Discard(usize),
    Name(String),
    Matrix(Vec<Vec<Lit>>),
    Dagger(Box<Term>),
    Conj(Box<Term>),
    Star(Box<Term>),
    /// `first ; second`, i.e. `second o first`.
    Seq(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Bind { name: String, dom: Vec<usize>, cod: Vec<usize>, expr: Term },
    Show(Term),
    Assert(Term, Term),
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Script {
    pub items: Vec<Item>,
}

const KEYWORDS: [&str; 12] =
    ["mor", "show", "assert", "id", "swap", "cup", "cap", "discard", "dagger", "conj", "star", "ox"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    in_script: bool,
}

pub fn parse_expr(src: &str) -> Result<Term, DslError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, in_script: false };
    let t = p.expr()?;
    if p.peek() == &Tok::Semi {
        p.bump();
    }
    p.expect_eof()?;
    Ok(t)
}

/// Parses a script and checks that every name is bound before use.
pub fn parse_script(src: &str) -> Result<Script, DslError> {
    parse_script_with(src, &HashSet::new())
}

/// Like [`parse_script`] with some names already bound by the caller.
pub fn parse_script_with(src: &str, prebound: &HashSet<String>) -> Result<Script, DslError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, in_script: true };
    let mut bound = prebound.clone();
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        let start = p.pos;
        let item = p.item()?;
        p.check_names(start, &bound)?;
        if let Item::Bind { name, .. } = &item {
            bound.insert(name.clone());
        }
        items.push(item);
    }
    Ok(Script { items })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        let t = self.here();
        Err(DslError::syntax(t.line, t.col, msg.into()))
    }

    fn expect(&mut self, want: Tok) -> Result<(), DslError> {
        if self.peek() == &want {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn expect_eof(&self) -> Result<(), DslError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => self.err(format!("unexpected {} after expression", t.describe())),
        }
    }

    fn is_kw(&self, k: usize, kw: &str) -> bool {
        matches!(self.peek_at(k), Tok::Ident(s) if s == kw)
    }

    fn item_starts_at(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Eof) || ["mor", "show", "assert"].iter().any(|kw| self.is_kw(k, kw))
    }

    fn item(&mut self) -> Result<Item, DslError> {
        let item = if self.is_kw(0, "mor") {
            self.bump();
            let name = self.name()?;
            self.expect(Tok::Colon)?;
            let dom = self.obj()?;
            self.expect(Tok::Arrow)?;
            let cod = self.obj()?;
            self.expect(Tok::Eq)?;
            let expr = self.expr()?;
            Item::Bind { name, dom, cod, expr }
        } else if self.is_kw(0, "show") {
            self.bump();
            Item::Show(self.expr()?)
        } else if self.is_kw(0, "assert") {
            self.bump();
            let lhs = self.expr()?;
            self.expect(Tok::EqEq)?;
            Item::Assert(lhs, self.expr()?)
        } else {
            return self.err(format!("expected 'mor', 'show' or 'assert', found {}", self.peek().describe()));
        };
        self.expect(Tok::Semi)?;
        Ok(item)
    }

    fn name(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) && s != "I" => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected a name, found {}", t.describe())),
        }
    }

    fn int(&mut self) -> Result<usize, DslError> {
        match self.peek() {
            Tok::Int(n) if *n > 0 => {
                let n = *n as usize;
                self.bump();
                Ok(n)
            }
            t => self.err(format!("expected a positive integer, found {}", t.describe())),
        }
    }

    fn obj(&mut self) -> Result<Vec<usize>, DslError> {
        if self.is_kw(0, "I") {
            self.bump();
            return Ok(Vec::new());
        }
        let mut factors = vec![self.int()?];
        while self.peek() == &Tok::Star {
            self.bump();
            factors.push(self.int()?);
        }
        Ok(factors)
    }

    fn expr(&mut self) -> Result<Term, DslError> {
        let mut lhs = self.tensor()?;
        while self.peek() == &Tok::Semi {
            if self.in_script && self.item_starts_at(1) {
                break;
            }
            if !self.in_script && matches!(self.peek_at(1), Tok::Eof) {
                break;
            }
            self.bump();
            let rhs = self.tensor()?;
            lhs = Term::Seq(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> Result<Term, DslError> {
        let mut lhs = self.unary()?;
        while self.is_kw(0, "ox") {
            self.bump();
            let rhs = self.unary()?;
            lhs = Term::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term, DslError> {
        for (kw, wrap) in [("dagger", Term::Dagger as fn(Box<Term>) -> Term), ("conj", Term::Conj), ("star", Term::Star)] {
            if self.is_kw(0, kw) {
                self.bump();
                return Ok(wrap(Box::new(self.unary()?)));
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term, DslError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr_nested()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBracket => self.matrix(),
            Tok::Ident(s) => match s.as_str() {
                "id" => {
                    self.bump();
                    Ok(Term::Id(self.int()?))
                }
                "swap" => {
                    self.bump();
                    let a = self.int()?;
                    Ok(Term::Swap(a, self.int()?))
                }
                "cup" => {
                    self.bump();
                    Ok(Term::Cup(self.int()?))
                }
                "cap" => {
                    self.bump();
                    Ok(Term::Cap(self.int()?))
                }
                "discard" => {
                    self.bump();
                    Ok(Term::Discard(self.int()?))
                }
                _ => Ok(Term::Name(self.name()?)),
            },
            t => self.err(format!("expected an expression, found {}", t.describe())),
        }
    }

    /// Inside parentheses `;` always composes.
    fn expr_nested(&mut self) -> Result<Term, DslError> {
        let saved = self.in_script;
        self.in_script = false;
        let mut lhs = self.tensor();
        if let Ok(mut acc) = lhs {
            while self.peek() == &Tok::Semi {
                self.bump();
                let rhs = self.tensor()?;
                acc = Term::Seq(Box::new(acc), Box::new(rhs));
            }
            lhs = Ok(acc);
        }
        self.in_script = saved;
        lhs
    }

    fn matrix(&mut self) -> Result<Term, DslError> {
        self.expect(Tok::LBracket)?;
        let mut rows = vec![self.row()?];
        while self.peek() == &Tok::Semi {
            self.bump();
            rows.push(self.row()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(Term::Matrix(rows))
    }

    fn row(&mut self) -> Result<Vec<Lit>, DslError> {
        let mut row = vec![self.scalar()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            row.push(self.scalar()?);
        }
        Ok(row)
    }

    fn signed_num(&mut self, negate: bool) -> Result<Lit, DslError> {
        let s = if negate { -1.0 } else { 1.0 };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Lit { re: s * n as f64, im: 0.0 })
            }
            Tok::Real(x) => {
                self.bump();
                Ok(Lit { re: s * x, im: 0.0 })
            }
            Tok::Imag(x) => {
                self.bump();
                Ok(Lit { re: 0.0, im: s * x })
            }
            t => self.err(format!("expected a number, found {}", t.describe())),
        }
    }

    fn scalar(&mut self) -> Result<Lit, DslError> {
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let first = self.signed_num(neg)?;
        let sign = match self.peek() {
            Tok::Plus => false,
            Tok::Minus => true,
            _ => return Ok(first),
        };
        if first.im != 0.0 || matches!(self.peek_at(1), Tok::Int(_) | Tok::Real(_)) {
            return self.err("expected an imaginary part after the real part");
        }
        self.bump();
        let second = self.signed_num(sign)?;
        Ok(Lit { re: first.re, im: second.im })
    }

    /// Every `Name` token between `start` and the current position must be
    /// bound, except the name being defined by a `mor` item.
    fn check_names(&self, start: usize, bound: &HashSet<String>) -> Result<(), DslError> {
        let mut k = start;
        if matches!(&self.toks[k].tok, Tok::Ident(s) if s == "mor") {
            k += 2;
        }
        while k < self.pos {
            let t = &self.toks[k];
            if let Tok::Ident(s) = &t.tok {
                if !KEYWORDS.contains(&s.as_str()) && s != "I" && !bound.contains(s) {
                    return Err(DslError::UnknownIdentifier { name: s.clone(), line: t.line, col: t.col });
                }
            }
            k += 1;
        }
        Ok(())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re, self.im);
        if im == 0.0 && im.is_sign_positive() {
            return write!(f, "{re}");
        }
        if re == 0.0 && re.is_sign_positive() {
            return write!(f, "{im}i");
        }
        let sign = if im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{re}{sign}{}i", im.abs())
    }
}

impl Term {
    fn prec(&self) -> u8 {
        match self {
            Term::Seq(..) => 0,
            Term::Tensor(..) => 1,
            Term::Dagger(_) | Term::Conj(_) | Term::Star(_) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Term::Id(n) => write!(f, "id {n}"),
            Term::Swap(a, b) => write!(f, "swap {a} {b}"),
            Term::Cup(n) => write!(f, "cup {n}"),
            Term::Cap(n) => write!(f, "cap {n}"),
            Term::Discard(n) => write!(f, "discard {n}"),
            Term::Name(s) => write!(f, "{s}"),
            Term::Matrix(rows) => {
                write!(f, "[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    let cells: Vec<String> = row.iter().map(|l| l.to_string()).collect();
                    write!(f, "{}", cells.join(", "))?;
                }
                write!(f, "]")
            }
            Term::Dagger(t) => {
                write!(f, "dagger ")?;
                t.write_at(f, 2)
            }
            Term::Conj(t) => {
                write!(f, "conj ")?;
                t.write_at(f, 2)
            }
            Term::Star(t) => {
                write!(f, "star ")?;
                t.write_at(f, 2)
            }
            Term::Seq(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " ; ")?;
                b.write_at(f, 1)
            }
            Term::Tensor(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " ox ")?;
                b.write_at(f, 2)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

fn fmt_obj(factors: &[usize]) -> String {
    if factors.is_empty() {
        "I".to_string()
    } else {
        factors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Bind { name, dom, cod, expr } => {
                write!(f, "mor {name} : {} -> {} = ", fmt_obj(dom), fmt_obj(cod))?;
                // a trailing composition would be read as the item terminator
                expr.write_at(f, 0)?;
                write!(f, ";")
            }
            Item::Show(t) => write!(f, "show {t};"),
            Item::Assert(a, b) => write!(f, "assert {a} == {b};"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}
