//! Recursive-descent parser and canonical printer for bundle expressions.
//!
//! Grammar (whitespace insignificant between tokens):
//!
//! ```text
//! expr    := term { "(+)" term }
//! term    := atom [ "^" int ]
//! atom    := line | "omega(" int ")" | "twist(" expr "," line ")"
//!          | "ext(" expr "," expr ")" | "ker(" expr "->" expr ")"
//! line    := "O(" ints ")"            per-surface divisor coordinates
//! ```

use crate::bundlecalc::BundleExpr;
use crate::error::{Error, Result};
use crate::geometry::{DivisorClass, Surface, SurfaceKind};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Semicolon,
    Caret,
    Arrow,
    OPlus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
            Tok::Comma => "','".to_string(),
            Tok::Semicolon => "';'".to_string(),
            Tok::Caret => "'^'".to_string(),
            Tok::Arrow => "'->'".to_string(),
            Tok::OPlus => "'(+)'".to_string(),
            Tok::End => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), at: 0, line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.at).copied()?;
        self.at += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.at).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    /// Does `(` start the direct-sum token `(+)` (allowing interior spaces)?
    fn lparen_is_oplus(&self) -> bool {
        let mut i = self.at + 1;
        while matches!(self.src.get(i), Some(c) if c.is_ascii_whitespace()) {
            i += 1;
        }
        if self.src.get(i) != Some(&b'+') {
            return false;
        }
        i += 1;
        while matches!(self.src.get(i), Some(c) if c.is_ascii_whitespace()) {
            i += 1;
        }
        self.src.get(i) == Some(&b')')
    }

    fn err(&self, pos: Pos, msg: impl Into<String>) -> Error {
        Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn next_tok(&mut self) -> Result<(Tok, Pos)> {
        self.skip_ws();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok((Tok::End, pos));
        };
        match c {
            b'(' => {
                if self.lparen_is_oplus() {
                    self.bump(); // (
                    self.skip_ws();
                    self.bump(); // +
                    self.skip_ws();
                    self.bump(); // )
                    Ok((Tok::OPlus, pos))
                } else {
                    self.bump();
                    Ok((Tok::LParen, pos))
                }
            }
            b')' => {
                self.bump();
                Ok((Tok::RParen, pos))
            }
            b',' => {
                self.bump();
                Ok((Tok::Comma, pos))
            }
            b';' => {
                self.bump();
                Ok((Tok::Semicolon, pos))
            }
            b'^' => {
                self.bump();
                Ok((Tok::Caret, pos))
            }
            b'-' => {
                self.bump();
                match self.peek() {
                    Some(b'>') => {
                        self.bump();
                        Ok((Tok::Arrow, pos))
                    }
                    Some(d) if d.is_ascii_digit() => {
                        let n = self.lex_int(pos, true)?;
                        Ok((Tok::Int(n), pos))
                    }
                    _ => Err(self.err(pos, "dangling '-' (expected '->' or a digit)")),
                }
            }
            d if d.is_ascii_digit() => {
                let n = self.lex_int(pos, false)?;
                Ok((Tok::Int(n), pos))
            }
            a if a.is_ascii_alphabetic() => {
                let mut name = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    name.push(self.bump().unwrap() as char);
                }
                Ok((Tok::Ident(name), pos))
            }
            other => Err(self.err(pos, format!("unexpected character {:?}", other as char))),
        }
    }

    fn lex_int(&mut self, pos: Pos, negative: bool) -> Result<i64> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap() as char);
        }
        let text = if negative { format!("-{digits}") } else { digits };
        text.parse::<i64>()
            .map_err(|_| self.err(pos, format!("integer {text:?} out of range")))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    surface: &'a Surface,
}

impl<'a> Parser<'a> {
    fn new(text: &str, surface: &'a Surface) -> Result<Self> {
        let mut lexer = Lexer::new(text);
        let mut toks = Vec::new();
        loop {
            let (tok, pos) = lexer.next_tok()?;
            let done = tok == Tok::End;
            toks.push((tok, pos));
            if done {
                break;
            }
        }
        Ok(Parser { toks, at: 0, surface })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let pos = self.pos();
        Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {}, found {}", want.describe(), self.peek().describe())))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.bump() {
            Tok::Int(n) => Ok(n),
            other => Err(self.err(format!("expected an integer, found {}", other.describe()))),
        }
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        let first = self.term()?;
        if *self.peek() != Tok::OPlus {
            return Ok(first);
        }
        let mut parts = Vec::new();
        let push = |e: BundleExpr, parts: &mut Vec<BundleExpr>| match e {
            BundleExpr::Sum(inner) => parts.extend(inner),
            other => parts.push(other),
        };
        push(first, &mut parts);
        while *self.peek() == Tok::OPlus {
            self.bump();
            let next = self.term()?;
            push(next, &mut parts);
        }
        Ok(BundleExpr::Sum(parts))
    }

    fn term(&mut self) -> Result<BundleExpr> {
        let atom = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let n = self.int()?;
            if n < 1 {
                return Err(Error::Parse {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("multiplicity {n} must be at least 1"),
                });
            }
            return Ok(BundleExpr::sum_of(atom, n as usize));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<BundleExpr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) => match name.as_str() {
                "O" => {
                    let d = self.divisor_body()?;
                    Ok(BundleExpr::Line(d))
                }
                "omega" => {
                    if self.surface.kind != SurfaceKind::P2 {
                        return Err(Error::Parse {
                            line: pos.line,
                            col: pos.col,
                            msg: format!("omega(t) only lives on P2, not {}", self.surface.kind),
                        });
                    }
                    self.expect(Tok::LParen)?;
                    let t = self.int()?;
                    self.expect(Tok::RParen)?;
                    Ok(BundleExpr::OmegaP2(t))
                }
                "twist" => {
                    self.expect(Tok::LParen)?;
                    let e = self.expr()?;
                    self.expect(Tok::Comma)?;
                    let ident = self.bump();
                    if ident != Tok::Ident("O".to_string()) {
                        return Err(self.err(format!(
                            "expected a divisor O(...), found {}",
                            ident.describe()
                        )));
                    }
                    let d = self.divisor_body()?;
                    self.expect(Tok::RParen)?;
                    Ok(BundleExpr::Twist(Box::new(e), d))
                }
                "ext" => {
                    self.expect(Tok::LParen)?;
                    let sub = self.expr()?;
                    self.expect(Tok::Comma)?;
                    let quot = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(BundleExpr::Ext(Box::new(sub), Box::new(quot)))
                }
                "ker" => {
                    self.expect(Tok::LParen)?;
                    let mid = self.expr()?;
                    self.expect(Tok::Arrow)?;
                    let target = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(BundleExpr::Ker(Box::new(mid), Box::new(target)))
                }
                other => Err(Error::Parse {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("unknown bundle constructor {other:?}"),
                }),
            },
            other => Err(Error::Parse {
                line: pos.line,
                col: pos.col,
                msg: format!("expected a bundle atom, found {}", other.describe()),
            }),
        }
    }

    /// The `( coords )` part of a line bundle, using the per-surface syntax.
    fn divisor_body(&mut self) -> Result<DivisorClass> {
        self.expect(Tok::LParen)?;
        let pos = self.pos();
        let mut coords = vec![self.int()?];
        let mut saw_semicolon = false;
        loop {
            match self.peek() {
                Tok::Semicolon if coords.len() == 1 => {
                    saw_semicolon = true;
                    self.bump();
                    coords.push(self.int()?);
                }
                Tok::Comma => {
                    self.bump();
                    coords.push(self.int()?);
                }
                _ => break,
            }
        }
        self.expect(Tok::RParen)?;
        let mk_err = |msg: String| Error::Parse { line: pos.line, col: pos.col, msg };
        if coords.len() != self.surface.rank {
            return Err(mk_err(format!(
                "divisor has {} coordinates, {} has Picard rank {}",
                coords.len(),
                self.surface.kind,
                self.surface.rank
            )));
        }
        match self.surface.kind {
            SurfaceKind::P1xP1 if saw_semicolon => {
                Err(mk_err("P1xP1 divisors are written O(a,b)".to_string()))
            }
            SurfaceKind::Bl1 | SurfaceKind::Bl2 | SurfaceKind::Bl3 if !saw_semicolon => {
                Err(mk_err("blow-up divisors are written O(a;b1,...,bn)".to_string()))
            }
            _ => Ok(DivisorClass(coords)),
        }
    }
}

/// Parse `text` as a bundle expression on `surface`.
pub fn parse_bundle_expr(text: &str, surface: &Surface) -> Result<BundleExpr> {
    let mut parser = Parser::new(text, surface)?;
    let expr = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.err(format!("trailing {}", parser.peek().describe())));
    }
    expr.validate(surface)?;
    Ok(expr)
}

/// Canonical textual form; parses back to the same (normalized) tree.
pub fn print_bundle_expr(surface: &Surface, expr: &BundleExpr) -> String {
    match expr {
        BundleExpr::Line(d) => surface.format_divisor(d),
        BundleExpr::OmegaP2(t) => format!("omega({t})"),
        BundleExpr::Twist(e, d) => format!(
            "twist({}, {})",
            print_bundle_expr(surface, e),
            surface.format_divisor(d)
        ),
        BundleExpr::Sum(es) => {
            // Group equal consecutive summands into `atom^n`.
            let mut groups: Vec<(usize, &BundleExpr)> = Vec::new();
            for e in es {
                match groups.last_mut() {
                    Some((n, prev)) if *prev == e => *n += 1,
                    _ => groups.push((1, e)),
                }
            }
            groups
                .into_iter()
                .map(|(n, e)| {
                    let body = print_bundle_expr(surface, e);
                    if n == 1 {
                        body
                    } else {
                        format!("{body}^{n}")
                    }
                })
                .collect::<Vec<_>>()
                .join(" (+) ")
        }
        BundleExpr::Ext(a, b) => format!(
            "ext({}, {})",
            print_bundle_expr(surface, a),
            print_bundle_expr(surface, b)
        ),
        BundleExpr::Ker(m, n) => format!(
            "ker({} -> {})",
            print_bundle_expr(surface, m),
            print_bundle_expr(surface, n)
        ),
    }
}
