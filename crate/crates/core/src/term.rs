//! Symbolic WPO terms built from ordinals and finite posets.

use std::fmt;
use std::str::FromStr;

use crate::construct::enumeration::{enum_below, round_robin, split, Size};
use crate::error::{Error, Result};
use crate::io::PosetFile;
use crate::ordinal::{parse_ordinal, CnfOrdinal};
use crate::poset::{BitMatrix, FinPoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetTerm {
    Ord(CnfOrdinal),
    Fin(FinPoset),
    DSum(Box<PosetTerm>, Box<PosetTerm>),
    LexSum(Box<PosetTerm>, Box<PosetTerm>),
    Prod(Box<PosetTerm>, Box<PosetTerm>),
}

/// A vertex of a term's denotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermVertex {
    Ord(CnfOrdinal),
    Fin(usize),
    Left(Box<TermVertex>),
    Right(Box<TermVertex>),
    Pair(Box<TermVertex>, Box<TermVertex>),
}

impl PosetTerm {
    pub fn dsum(a: PosetTerm, b: PosetTerm) -> Self {
        PosetTerm::DSum(Box::new(a), Box::new(b))
    }

    pub fn lexsum(a: PosetTerm, b: PosetTerm) -> Self {
        PosetTerm::LexSum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: PosetTerm, b: PosetTerm) -> Self {
        PosetTerm::Prod(Box::new(a), Box::new(b))
    }

    /// The length by the de Jongh–Parikh rules: `⊕` for direct sums, `⊗` for
    /// products and the ordinal sum for lexicographic sums.
    pub fn length(&self) -> CnfOrdinal {
        match self {
            PosetTerm::Ord(a) => a.clone(),
            PosetTerm::Fin(p) => CnfOrdinal::from(p.n() as u64),
            PosetTerm::DSum(a, b) => a.length().nat_add(&b.length()),
            PosetTerm::LexSum(a, b) => a.length().add(&b.length()),
            PosetTerm::Prod(a, b) => a.length().nat_mul(&b.length()),
        }
    }

    pub fn size(&self) -> Size {
        match self {
            PosetTerm::Ord(a) => a.as_finite(),
            PosetTerm::Fin(p) => Some(p.n() as u64),
            PosetTerm::DSum(a, b) | PosetTerm::LexSum(a, b) => Some(a.size()? + b.size()?),
            PosetTerm::Prod(a, b) => match (a.size(), b.size()) {
                (Some(0), _) | (_, Some(0)) => Some(0),
                (x, y) => Some(x? * y?),
            },
        }
    }

    /// The `n`-th vertex of the canonical enumeration: sums alternate between
    /// their factors, products use [`split`] on the factor sizes and ordinals
    /// use [`enum_below`].
    pub fn vertex(&self, n: u64) -> Option<TermVertex> {
        if self.size().is_some_and(|s| n >= s) {
            return None;
        }
        match self {
            PosetTerm::Ord(a) => Some(TermVertex::Ord(enum_below(a).ok()?.get(n)?)),
            PosetTerm::Fin(_) => Some(TermVertex::Fin(n as usize)),
            PosetTerm::DSum(a, b) | PosetTerm::LexSum(a, b) => {
                let (side, i) = round_robin(n, &[a.size(), b.size()])?;
                Some(if side == 0 {
                    TermVertex::Left(Box::new(a.vertex(i)?))
                } else {
                    TermVertex::Right(Box::new(b.vertex(i)?))
                })
            }
            PosetTerm::Prod(a, b) => {
                let (i, j) = split(n, a.size(), b.size());
                Some(TermVertex::Pair(
                    Box::new(a.vertex(i)?),
                    Box::new(b.vertex(j)?),
                ))
            }
        }
    }

    /// The strict order of the denotation.
    pub fn lt(&self, x: &TermVertex, y: &TermVertex) -> bool {
        use TermVertex as V;
        match (self, x, y) {
            (PosetTerm::Ord(_), V::Ord(a), V::Ord(b)) => a < b,
            (PosetTerm::Fin(p), V::Fin(i), V::Fin(j)) => p.lt(*i, *j),
            (PosetTerm::DSum(a, _) | PosetTerm::LexSum(a, _), V::Left(u), V::Left(v)) => a.lt(u, v),
            (PosetTerm::DSum(_, b) | PosetTerm::LexSum(_, b), V::Right(u), V::Right(v)) => {
                b.lt(u, v)
            }
            (PosetTerm::LexSum(..), V::Left(_), V::Right(_)) => true,
            (PosetTerm::Prod(a, b), V::Pair(u1, u2), V::Pair(v1, v2)) => {
                let le_a = u1 == v1 || a.lt(u1, v1);
                let le_b = u2 == v2 || b.lt(u2, v2);
                le_a && le_b && x != y
            }
            _ => false,
        }
    }

    /// The poset induced on the first `budget` vertices of the enumeration.
    pub fn denote_prefix(&self, budget: usize) -> FinPoset {
        let vs: Vec<TermVertex> = (0..budget as u64).map_while(|n| self.vertex(n)).collect();
        let mut m = BitMatrix::new(vs.len());
        for (i, x) in vs.iter().enumerate() {
            for (j, y) in vs.iter().enumerate() {
                if self.lt(x, y) {
                    m.set(i, j);
                }
            }
        }
        FinPoset::from_matrix(m).expect("term orders are partial orders")
    }
}

impl fmt::Display for PosetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetTerm::Ord(a) => write!(f, "ord({a})"),
            PosetTerm::Fin(p) if *p == FinPoset::chain(p.n()) && p.n() > 1 => {
                write!(f, "fin(chain{})", p.n())
            }
            PosetTerm::Fin(p) if *p == FinPoset::antichain(p.n()) => {
                write!(f, "fin(antichain{})", p.n())
            }
            PosetTerm::Fin(p) => write!(f, "fin({})", PosetFile::from_poset(p).to_json()),
            PosetTerm::DSum(a, b) => write!(f, "dsum({a}, {b})"),
            PosetTerm::LexSum(a, b) => write!(f, "lexsum({a}, {b})"),
            PosetTerm::Prod(a, b) => write!(f, "prod({a}, {b})"),
        }
    }
}

impl FromStr for PosetTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// Parses `ord(…)`, `fin(chainN | antichainN | {json} | @path)`,
/// `dsum(t, t)`, `lexsum(t, t)` and `prod(t, t)`, with optional whitespace
/// between tokens.
pub fn parse_term(text: &str) -> Result<PosetTerm> {
    let mut p = TermParser { s: text, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct TermParser<'a> {
    s: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn term(&mut self) -> Result<PosetTerm> {
        self.skip_ws();
        let name_len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        let name = &self.s[self.pos..self.pos + name_len];
        let start = self.pos;
        match name {
            "ord" | "fin" => {
                self.pos += name_len;
                self.expect("(")?;
                self.skip_ws();
                let body_start = self.pos;
                let body_end = self.closing_paren()?;
                let body = self.s[body_start..body_end].trim_end();
                let t = if name == "ord" {
                    PosetTerm::Ord(parse_ordinal(body).map_err(|e| shift(e, body_start))?)
                } else {
                    PosetTerm::Fin(parse_fin(body).map_err(|e| shift(e, body_start))?)
                };
                self.pos = body_end + 1;
                Ok(t)
            }
            "dsum" | "lexsum" | "prod" => {
                self.pos += name_len;
                self.expect("(")?;
                let a = self.term()?;
                self.expect(",")?;
                let b = self.term()?;
                self.expect(")")?;
                Ok(match name {
                    "dsum" => PosetTerm::dsum(a, b),
                    "lexsum" => PosetTerm::lexsum(a, b),
                    _ => PosetTerm::prod(a, b),
                })
            }
            _ => {
                self.pos = start;
                Err(self.error("expected one of ord, fin, dsum, lexsum, prod"))
            }
        }
    }

    /// Byte offset of the `)` closing the current argument, skipping nested
    /// parentheses and JSON strings.
    fn closing_paren(&self) -> Result<usize> {
        let mut depth = 0usize;
        let mut in_string = false;
        let mut escaped = false;
        for (i, c) in self.rest().char_indices() {
            if in_string {
                match (escaped, c) {
                    (true, _) => escaped = false,
                    (false, '\\') => escaped = true,
                    (false, '"') => in_string = false,
                    _ => {}
                }
                continue;
            }
            match c {
                '"' => in_string = true,
                '(' => depth += 1,
                ')' if depth == 0 => return Ok(self.pos + i),
                ')' => depth -= 1,
                _ => {}
            }
        }
        Err(Error::Syntax {
            pos: self.s.len(),
            msg: "unclosed `(`".into(),
        })
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        other => other,
    }
}

fn parse_fin(body: &str) -> Result<FinPoset> {
    let count = |digits: &str| -> Result<usize> {
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || (digits.len() > 1 && digits.starts_with('0'))
        {
            return Err(Error::Syntax {
                pos: body.len() - digits.len(),
                msg: "expected a vertex count".into(),
            });
        }
        digits.parse().map_err(|_| Error::Syntax {
            pos: 0,
            msg: "vertex count too large".into(),
        })
    };
    if let Some(d) = body.strip_prefix("antichain") {
        Ok(FinPoset::antichain(count(d)?))
    } else if let Some(d) = body.strip_prefix("chain") {
        Ok(FinPoset::chain(count(d)?))
    } else if let Some(path) = body.strip_prefix('@') {
        crate::io::load_poset(path)
    } else if body.starts_with('{') {
        PosetFile::from_json(body)?.to_poset()
    } else {
        Err(Error::Syntax {
            pos: 0,
            msg: "expected chainN, antichainN, a JSON poset or @path".into(),
        })
    }
}
