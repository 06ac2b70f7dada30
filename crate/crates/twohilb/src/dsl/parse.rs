use std::fmt;

use super::{BasisName, Expr, ExprKind, Generator, Scalar, Span, MAX_ARG};

const MAX_NESTING: usize = 64;
const MAX_NODES: usize = 512;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Lexical(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("{name} {expected}")]
    Arity { name: String, expected: &'static str },
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("expression too deeply nested or too large")]
    TooLarge,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Plus,
    Minus,
    Slash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "{s:?}"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Comma => f.write_str("','"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Slash => f.write_str("'/'"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < b.len() {
        let start = i;
        let ch = b[i];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                i = digits(i);
                if i + 1 < b.len() && b[i] == b'.' && b[i + 1].is_ascii_digit() {
                    i = digits(i + 1);
                }
                if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                    let mut j = i + 1;
                    if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                        j += 1;
                    }
                    if j < b.len() && b[j].is_ascii_digit() {
                        i = digits(j);
                    }
                }
                out.push((Tok::Num(src[start..i].to_string()), Span::new(start, i)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), Span::new(start, i)));
                continue;
            }
            _ => {
                let c = src[start..].chars().next().expect("in bounds");
                return Err(ParseError {
                    kind: ParseErrorKind::Lexical(c),
                    span: Span::new(start, start + c.len_utf8()),
                });
            }
        };
        i += 1;
        out.push((tok, Span::new(start, i)));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: usize,
    depth: usize,
    nodes: usize,
}

/// Parse a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
        depth: 0,
        nodes: 0,
    };
    let e = p.expr()?;
    if let Some((t, span)) = p.toks.get(p.pos) {
        return Err(ParseError {
            kind: ParseErrorKind::Unexpected {
                expected: "end of input",
                found: t.to_string(),
            },
            span: *span,
        });
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(Span::new(self.end, self.end))
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Unexpected {
                expected,
                found: self.peek().map_or("end of input".into(), Tok::to_string),
            },
            span: self.span(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<Span, ParseError> {
        if self.peek() == Some(&tok) {
            let s = self.span();
            self.pos += 1;
            Ok(s)
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn node(&mut self, kind: ExprKind, span: Span) -> Result<Expr, ParseError> {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return Err(ParseError {
                kind: ParseErrorKind::TooLarge,
                span,
            });
        }
        Ok(Expr { kind, span })
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError {
                kind: ParseErrorKind::TooLarge,
                span: self.span(),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.vterm()?];
        while self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
            items.push(self.vterm()?);
        }
        let mut acc = items.pop().expect("at least one term");
        while let Some(upper) = items.pop() {
            let span = upper.span.to(acc.span);
            acc = self.node(ExprKind::VComp(Box::new(upper), Box::new(acc)), span)?;
        }
        Ok(acc)
    }

    fn vterm(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.hterm()?;
        while matches!(self.peek(), Some(Tok::Ident(s)) if s == "o") {
            self.pos += 1;
            let right = self.hterm()?;
            let span = acc.span.to(right.span);
            acc = self.node(ExprKind::HComp(Box::new(acc), Box::new(right)), span)?;
        }
        Ok(acc)
    }

    fn hterm(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let start = self.span();
        let e = match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let mut e = self.expr()?;
                let close = self.expect(Tok::RParen, "')'")?;
                e.span = start.to(close);
                e
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "dag" => {
                        self.expect(Tok::LParen, "'(' after dag")?;
                        let inner = self.expr()?;
                        let close = self.expect(Tok::RParen, "')'")?;
                        self.node(ExprKind::Dagger(Box::new(inner)), start.to(close))?
                    }
                    "scale" => {
                        self.expect(Tok::LParen, "'(' after scale")?;
                        let s = self.scalar()?;
                        self.expect(Tok::Comma, "','")?;
                        let inner = self.expr()?;
                        let close = self.expect(Tok::RParen, "')'")?;
                        self.node(ExprKind::Scale(s, Box::new(inner)), start.to(close))?
                    }
                    _ => self.generator(name, start)?,
                }
            }
            _ => return Err(self.unexpected("an expression")),
        };
        self.depth -= 1;
        Ok(e)
    }

    fn arity(&self, name: &str, expected: &'static str, span: Span) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Arity {
                name: name.to_string(),
                expected,
            },
            span,
        }
    }

    fn generator(&mut self, name: String, start: Span) -> Result<Expr, ParseError> {
        let has_parens = self.peek() == Some(&Tok::LParen);
        match name.as_str() {
            "MBell" | "UBell" => {
                if has_parens {
                    return Err(self.arity(&name, "takes no arguments", start.to(self.span())));
                }
                let g = if name == "MBell" {
                    Generator::MBell
                } else {
                    Generator::UBell
                };
                return self.node(ExprKind::Generator(g), start);
            }
            "WL" | "WR" | "Q" | "Copy" | "Compare" | "Create" | "Delete" | "Bell" | "Id" | "Meas" | "CPhase" => {}
            _ => {
                return Err(ParseError {
                    kind: ParseErrorKind::UnknownGenerator(name),
                    span: start,
                })
            }
        }
        if !has_parens {
            let expected = match name.as_str() {
                "Id" => "expects a one-cell argument",
                "Meas" => "expects a basis name",
                "CPhase" => "expects a matrix of phases",
                _ => "expects one integer argument",
            };
            return Err(self.arity(&name, expected, start));
        }
        self.pos += 1;
        let kind = match name.as_str() {
            "Id" => ExprKind::Id(Box::new(self.expr()?)),
            "Meas" => {
                let span = self.span();
                let basis = match self.peek() {
                    Some(Tok::Ident(s)) => BasisName::from_name(s).ok_or_else(|| ParseError {
                        kind: ParseErrorKind::BadArgument(format!("unknown basis {s:?}, expected comp, plus or bell")),
                        span,
                    })?,
                    _ => return Err(self.unexpected("a basis name")),
                };
                self.pos += 1;
                ExprKind::Generator(Generator::Meas(basis))
            }
            "CPhase" => ExprKind::Generator(Generator::CPhase(self.matrix()?)),
            _ => {
                let n = self.int()?;
                ExprKind::Generator(Generator::with_int(&name, n).expect("integer generator"))
            }
        };
        if self.peek() == Some(&Tok::Comma) {
            return Err(self.arity(&name, "takes exactly one argument", self.span()));
        }
        let close = self.expect(Tok::RParen, "')'")?;
        self.node(kind, start.to(close))
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        self.bounded_int(MAX_ARG)
    }

    fn bounded_int(&mut self, max: usize) -> Result<usize, ParseError> {
        let span = self.span();
        let Some(Tok::Num(text)) = self.peek().cloned() else {
            return Err(self.unexpected("an integer"));
        };
        self.pos += 1;
        let bad = |msg: String| ParseError {
            kind: ParseErrorKind::BadArgument(msg),
            span,
        };
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(format!("{text} is not an integer")));
        }
        match text.parse::<usize>() {
            Ok(n) if n <= max => Ok(n),
            _ => Err(bad(format!("{text} exceeds the limit {max}"))),
        }
    }

    fn real(&mut self) -> Result<f64, ParseError> {
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.unsigned(negative)
    }

    fn unsigned(&mut self, negative: bool) -> Result<f64, ParseError> {
        let span = self.span();
        let Some(Tok::Num(text)) = self.peek().cloned() else {
            return Err(self.unexpected("a number"));
        };
        self.pos += 1;
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(if negative { -x } else { x }),
            _ => Err(ParseError {
                kind: ParseErrorKind::BadArgument(format!("{text} is not a finite number")),
                span,
            }),
        }
    }

    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        let inv_sqrt = matches!(self.peek(), Some(Tok::Num(s)) if s == "1") && self.peek_at(1) == Some(&Tok::Slash);
        if inv_sqrt {
            self.pos += 2;
            match self.peek() {
                Some(Tok::Ident(s)) if s == "sqrt" => self.pos += 1,
                _ => return Err(self.unexpected("sqrt")),
            }
            self.expect(Tok::LParen, "'('")?;
            let span = self.span();
            let k = self.bounded_int(u32::MAX as usize)?;
            if k == 0 {
                return Err(ParseError {
                    kind: ParseErrorKind::BadArgument("1/sqrt(0) is not finite".into()),
                    span,
                });
            }
            self.expect(Tok::RParen, "')'")?;
            return Ok(Scalar::InvSqrt(k as u64));
        }
        let re = self.real()?;
        let sign = match self.peek() {
            Some(Tok::Plus) => 1.0,
            Some(Tok::Minus) => -1.0,
            _ => return Ok(Scalar::Literal { re, im: 0.0 }),
        };
        self.pos += 1;
        let im = sign * self.unsigned(false)?;
        match self.peek() {
            Some(Tok::Ident(s)) if s == "i" => self.pos += 1,
            _ => return Err(self.unexpected("'i'")),
        }
        Ok(Scalar::Literal { re, im })
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Scalar>>, ParseError> {
        let start = self.expect(Tok::LBracket, "'['")?;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        loop {
            self.expect(Tok::LBracket, "'['")?;
            let mut row = vec![self.scalar()?];
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                row.push(self.scalar()?);
            }
            self.expect(Tok::RBracket, "']'")?;
            rows.push(row);
            if rows.len() > MAX_ARG || rows.last().map_or(0, Vec::len) > MAX_ARG {
                return Err(ParseError {
                    kind: ParseErrorKind::BadArgument(format!("matrix larger than {MAX_ARG}x{MAX_ARG}")),
                    span: start.to(self.span()),
                });
            }
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        let close = self.expect(Tok::RBracket, "']'")?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(ParseError {
                kind: ParseErrorKind::BadArgument("ragged matrix".into()),
                span: start.to(close),
            });
        }
        Ok(rows)
    }
}
