//! The ring-spec mini-grammar: `Zmod(4)`, `GF(2,2)`, `Quot(GF(2),[x],[x^4])`,
//! `Prod(a,b)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::parse::parse_poly;
use crate::poly::QPoly;

use super::finite_ring::FiniteRing;

#[derive(Debug, Clone, PartialEq)]
pub enum RingSpec {
    Zmod(u64),
    Gf(u64, u32),
    /// `F_p[vars]/(relations)`.
    Quot { p: u64, vars: Vec<String>, relations: Vec<QPoly> },
    Prod(Vec<RingSpec>),
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut r = SpecReader { s: text.as_bytes(), text, pos: 0 };
        let spec = r.spec()?;
        r.ws();
        if r.pos != r.s.len() {
            return Err(r.err("trailing input"));
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            RingSpec::Zmod(m) => FiniteRing::zmod(*m),
            RingSpec::Gf(p, k) => FiniteRing::gf(*p, *k),
            RingSpec::Quot { p, vars, relations } => FiniteRing::quotient_of_polynomials(*p, vars, relations),
            RingSpec::Prod(parts) => {
                let rings = parts.iter().map(|s| s.build()).collect::<Result<Vec<_>>>()?;
                FiniteRing::product(&rings)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(m) => write!(f, "Zmod({m})"),
            RingSpec::Gf(p, 1) => write!(f, "GF({p})"),
            RingSpec::Gf(p, k) => write!(f, "GF({p},{k})"),
            RingSpec::Quot { p, vars, relations } => {
                let rels: Vec<String> = relations.iter().map(|r| r.display_with(vars)).collect();
                write!(f, "Quot(GF({p}),[{}],[{}])", vars.join(","), rels.join(","))
            }
            RingSpec::Prod(parts) => {
                let inner: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                write!(f, "Prod({})", inner.join(","))
            }
        }
    }
}

struct SpecReader<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl SpecReader<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::RingSpec(format!("{msg} at offset {} in `{}`", self.pos, self.text))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("expected a number"))
    }

    /// Raw text of a bracketed list, split on top-level commas.
    fn bracket_list(&mut self) -> Result<Vec<String>> {
        self.eat(b'[')?;
        let start = self.pos;
        let mut depth = 0;
        let mut items = Vec::new();
        let mut item_start = start;
        loop {
            let Some(&c) = self.s.get(self.pos) else {
                return Err(self.err("unterminated list"));
            };
            match c {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b',' if depth == 0 => {
                    items.push(self.text[item_start..self.pos].trim().to_string());
                    item_start = self.pos + 1;
                }
                b']' if depth == 0 => {
                    let last = self.text[item_start..self.pos].trim();
                    if !last.is_empty() || !items.is_empty() {
                        items.push(last.to_string());
                    }
                    self.pos += 1;
                    return Ok(items);
                }
                _ => {}
            }
            self.pos += 1;
        }
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let head = self.ident()?;
        self.eat(b'(')?;
        let spec = match head.as_str() {
            "Zmod" => RingSpec::Zmod(self.number()?),
            "GF" => {
                let p = self.number()?;
                let k = if self.peek() == Some(b',') {
                    self.eat(b',')?;
                    self.number()? as u32
                } else {
                    1
                };
                if k > 4 {
                    return Err(self.err("GF degree is limited to 4"));
                }
                RingSpec::Gf(p, k)
            }
            "Quot" => {
                let base = self.spec()?;
                let RingSpec::Gf(p, 1) = base else {
                    return Err(self.err("Quot needs a prime field GF(p) as base"));
                };
                self.eat(b',')?;
                let vars = self.bracket_list()?;
                if vars.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_')) {
                    return Err(self.err("bad variable list"));
                }
                self.eat(b',')?;
                let rels = self.bracket_list()?;
                let relations = rels.iter().map(|r| parse_poly(r, &vars)).collect::<Result<Vec<_>>>()?;
                RingSpec::Quot { p, vars, relations }
            }
            "Prod" => {
                let mut parts = vec![self.spec()?];
                while self.peek() == Some(b',') {
                    self.eat(b',')?;
                    parts.push(self.spec()?);
                }
                RingSpec::Prod(parts)
            }
            other => return Err(Error::RingSpec(format!("unknown ring constructor `{other}`"))),
        };
        self.eat(b')')?;
        Ok(spec)
    }
}

/// The documented default test-ring corpus for a prime `p`.
pub fn default_corpus(p: u64) -> Vec<RingSpec> {
    let x = vec!["x".to_string()];
    let e = vec!["e".to_string()];
    vec![
        RingSpec::Gf(p, 1),
        RingSpec::Quot { p, vars: e.clone(), relations: vec![QPoly::q_var(1, 0).pow(2)] },
        RingSpec::Zmod(p * p),
        RingSpec::Zmod(p * p * p),
        RingSpec::Quot { p, vars: x.clone(), relations: vec![QPoly::q_var(1, 0).pow(4)] },
        RingSpec::Prod(vec![RingSpec::Gf(p, 1), RingSpec::Gf(p, 1)]),
    ]
}
