//! Text form of ordinals.
//!
//! ```text
//! ordinal := "0" | term ("+" term)*
//! term    := base ("*" nat)?
//! base    := "w" | "w^" atom | nat≥1
//! atom    := nat | "w" | "(" ordinal ")"
//! scaled  := "W" k "*(" ordinal ")+(" (scaled | ordinal) ")"
//! ```
//!
//! Only canonical spellings are accepted; anything else that still denotes
//! an ordinal is rejected with its canonical spelling as a hint.

use super::cnf::CnfOrdinal;
use super::kord::KOrdinal;
use crate::error::{Error, Result};

pub fn render_ordinal(a: &CnfOrdinal) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = a
        .terms()
        .iter()
        .map(|(e, c)| {
            if e.is_zero() {
                return c.to_string();
            }
            let base = match e.as_finite() {
                Some(1) => "w".to_string(),
                Some(n) => format!("w^{n}"),
                None if *e == CnfOrdinal::omega() => "w^w".to_string(),
                None => format!("w^({e})"),
            };
            if *c == 1 {
                base
            } else {
                format!("{base}*{c}")
            }
        })
        .collect();
    parts.join("+")
}

pub fn parse_ordinal(text: &str) -> Result<CnfOrdinal> {
    let mut p = Parser::new(text);
    let (value, canonical) = p.ordinal()?;
    p.end()?;
    if canonical {
        Ok(value)
    } else {
        Err(Error::NonCanonical {
            input: text.to_string(),
            hint: value.to_string(),
        })
    }
}

pub fn render_kordinal(a: &KOrdinal) -> String {
    match a.as_countable() {
        Some(c) => render_ordinal(&c),
        None => format!(
            "W{}*({})+({})",
            a.level(),
            a.quotient(),
            render_kordinal(&a.remainder())
        ),
    }
}

/// Parses a plain ordinal, a scaled form `W<k>*(q)+(r)`, or the shorthand `W<k>`.
pub fn parse_kordinal(text: &str) -> Result<KOrdinal> {
    let mut p = Parser::new(text);
    let v = p.kordinal()?;
    p.end()?;
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            s: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        for b in lit.bytes() {
            if !self.eat(b) {
                return self.err(format!("expected `{lit}`"));
            }
        }
        Ok(())
    }

    fn end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.s[start..self.pos];
        if digits.is_empty() {
            self.pos = start;
            return self.err("expected a number");
        }
        if digits.len() > 1 && digits[0] == b'0' {
            self.pos = start;
            return self.err("leading zero");
        }
        std::str::from_utf8(digits).unwrap().parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    /// Returns the value and whether the spelling was canonical.
    fn ordinal(&mut self) -> Result<(CnfOrdinal, bool)> {
        if self.peek() == Some(b'0') {
            self.pos += 1;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos -= 1;
                return self.err("leading zero");
            }
            return Ok((CnfOrdinal::zero(), true));
        }
        let mut value = CnfOrdinal::zero();
        let mut canonical = true;
        let mut prev: Option<CnfOrdinal> = None;
        loop {
            let (e, c, ok) = self.term()?;
            if prev.as_ref().is_some_and(|p| *p <= e) {
                canonical = false;
            }
            canonical &= ok;
            value = value.add(&CnfOrdinal::monomial(e.clone(), c));
            prev = Some(e);
            if !self.eat(b'+') {
                break;
            }
        }
        Ok((value, canonical))
    }

    fn term(&mut self) -> Result<(CnfOrdinal, u64, bool)> {
        let (e, mut c, mut ok, nat_base) = match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let (e, ok) = self.atom()?;
                    (e, 1, ok, false)
                } else {
                    (CnfOrdinal::one(), 1, true, false)
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                if n == 0 {
                    self.pos -= 1;
                    return self.err("zero is only valid as a whole ordinal");
                }
                (CnfOrdinal::zero(), n, true, true)
            }
            _ => return self.err("expected `w` or a number"),
        };
        if self.eat(b'*') {
            let k = self.nat()?;
            ok &= !nat_base && k >= 2;
            c = c.checked_mul(k).ok_or(Error::Syntax {
                pos: self.pos,
                msg: "number too large".into(),
            })?;
        }
        if nat_base && self.peek() == Some(b'+') {
            ok = false;
        }
        Ok((e, c, ok))
    }

    fn atom(&mut self) -> Result<(CnfOrdinal, bool)> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok((CnfOrdinal::omega(), true))
            }
            Some(b'(') => {
                self.pos += 1;
                let (e, ok) = self.ordinal()?;
                self.expect(")")?;
                let plain = e.as_finite().is_some() || e == CnfOrdinal::omega();
                Ok((e, ok && !plain))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok((CnfOrdinal::from(n), n >= 2))
            }
            _ => self.err("expected an exponent"),
        }
    }

    fn kordinal(&mut self) -> Result<KOrdinal> {
        if !self.eat(b'W') {
            let start = self.pos;
            let (v, ok) = self.ordinal()?;
            if !ok {
                let input = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
                return Err(Error::NonCanonical {
                    input,
                    hint: v.to_string(),
                });
            }
            return Ok(KOrdinal::from(v));
        }
        let at = self.pos;
        let k = self.nat()?;
        let level = u8::try_from(k)
            .ok()
            .filter(|&k| k <= KOrdinal::MAX_LEVEL)
            .ok_or(Error::LevelOverflow {
                level: k as usize,
                max: KOrdinal::MAX_LEVEL,
            })?;
        if self.peek() != Some(b'*') {
            return Ok(KOrdinal::omega_k(level));
        }
        self.expect("*(")?;
        let start = self.pos;
        let (q, ok) = self.ordinal()?;
        if !ok {
            let input = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
            return Err(Error::NonCanonical {
                input,
                hint: q.to_string(),
            });
        }
        self.expect(")+(")?;
        let r = self.kordinal()?;
        self.expect(")")?;
        KOrdinal::from_parts(level, &q, &r).map_err(|e| match e {
            Error::Precondition(msg) => Error::Syntax { pos: at, msg },
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noncanonical_hint(s: &str) -> String {
        match parse_ordinal(s) {
            Err(Error::NonCanonical { hint, .. }) => hint,
            other => panic!("{s}: expected a non-canonical error, got {other:?}"),
        }
    }

    #[test]
    fn literals() {
        assert!(parse_ordinal("0").unwrap().is_zero());
        let a = parse_ordinal("w^2+w*3+5").unwrap();
        assert_eq!(a.terms().len(), 3);
        assert_eq!(render_ordinal(&a), "w^2+w*3+5");
        let b = parse_ordinal("w^(w+1)*2+3").unwrap();
        assert_eq!(b.to_string(), "w^(w+1)*2+3");
        assert_eq!(parse_ordinal("w^w").unwrap().to_string(), "w^w");
        assert_eq!(parse_ordinal("w^(w^w*2)").unwrap().to_string(), "w^(w^w*2)");
    }

    #[test]
    fn rejects_noncanonical_spellings() {
        assert_eq!(noncanonical_hint("w+w"), "w*2");
        assert_eq!(noncanonical_hint("w*1"), "w");
        assert_eq!(noncanonical_hint("w^1"), "w");
        assert_eq!(noncanonical_hint("w^0"), "1");
        assert_eq!(noncanonical_hint("w^(2)"), "w^2");
        assert_eq!(noncanonical_hint("w^(w)"), "w^w");
        assert_eq!(noncanonical_hint("5*2"), "10");
        assert_eq!(noncanonical_hint("1+w"), "w");
        assert_eq!(noncanonical_hint("w+w^2"), "w^2");
    }

    #[test]
    fn syntax_errors_report_positions() {
        for (s, pos) in [
            ("", 0),
            ("w+", 2),
            ("05", 0),
            ("w^", 2),
            ("w^(w", 4),
            ("w+0", 2),
            ("x", 0),
            ("w ", 1),
        ] {
            match parse_ordinal(s) {
                Err(Error::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{s:?}"),
                other => panic!("{s:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn scaled_forms() {
        let a = parse_kordinal("W1*(2)+(w)").unwrap();
        assert_eq!(render_kordinal(&a), "W1*(2)+(w)");
        let b = parse_kordinal("W2*(w)+(W1*(3)+(0))").unwrap();
        assert_eq!(b.to_string(), "W2*(w)+(W1*(3)+(0))");
        assert_eq!(parse_kordinal("W3").unwrap().to_string(), "W3*(1)+(0)");
        assert_eq!(parse_kordinal("w*2+1").unwrap().to_string(), "w*2+1");
        assert_eq!(parse_kordinal("W0*(w)+(3)").unwrap().to_string(), "w^2+3");
        assert!(parse_kordinal("W1*(2)+(W1*(1)+(0))").is_err());
        assert!(parse_kordinal("W10").is_err());
    }
}
