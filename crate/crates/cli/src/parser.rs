//! Recursive-descent parser for session scripts, followed by a resolve pass
//! that checks names and arities.

use std::collections::BTreeMap;
use std::fmt;

use crate::ast::{Arg, Expr, Item, Pos, Script, Value, ValueKind};
use crate::lexer::{lex, Tok, Token};
use crate::signature::{call_signature, command_signature, is_ring_spec, Kind, NameKind, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    pub fn new(message: &str, pos: Pos) -> Self {
        ParseError { message: message.to_string(), line: pos.line, col: pos.col }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}:{}", self.message, self.line, self.col)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Str(s) => format!("{s:?}"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.i + k).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let t = self.peek();
        ParseError::new(&format!("expected {wanted}, found {}", describe(&t.tok)), t.pos)
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn script(&mut self) -> PResult<Script> {
        let mut items = Vec::new();
        while self.peek().tok != Tok::Eof {
            items.push(self.item()?);
        }
        Ok(Script { items })
    }

    fn item(&mut self) -> PResult<Item> {
        let (first, pos) = self.ident()?;
        if self.eat('=') {
            let value = self.value()?;
            self.expect(';')?;
            return Ok(Item::Decl { name: first, value, pos });
        }
        // Hyphenated command words are written without spaces.
        let mut name = first;
        while self.is_sym('-')
            && self.toks[self.i - 1].end == self.peek().start
            && matches!(self.peek_at(1).tok, Tok::Ident(_))
            && self.peek().end == self.peek_at(1).start
        {
            self.bump();
            name.push('-');
            name.push_str(&self.ident()?.0);
        }
        let mut args = Vec::new();
        while !self.is_sym(';') {
            if self.peek().tok == Tok::Eof {
                return Err(self.unexpected("';'"));
            }
            let key = match (&self.peek().tok, &self.peek_at(1).tok) {
                (Tok::Ident(k), Tok::Sym('=')) => {
                    let k = k.clone();
                    self.bump();
                    self.bump();
                    Some(k)
                }
                _ => None,
            };
            args.push(Arg { key, value: self.value()? });
        }
        self.bump();
        Ok(Item::Command { name, args, pos })
    }

    fn value(&mut self) -> PResult<Value> {
        let t = self.peek().clone();
        let pos = t.pos;
        match &t.tok {
            Tok::Sym('[') => {
                self.bump();
                let items = self.sequence(']')?.0;
                Ok(Value { kind: ValueKind::List(items), pos })
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Value { kind: ValueKind::Str(s.clone()), pos })
            }
            Tok::Ident(name) if self.peek_at(1).tok == Tok::Sym('(') && self.peek_at(1).start == t.end => {
                self.bump();
                self.bump();
                let (args, opts) = self.call_args()?;
                Ok(Value { kind: ValueKind::Call(name.clone(), args, opts), pos })
            }
            _ => {
                let save = self.i;
                match self.expr() {
                    Ok(e) => Ok(Value { kind: ValueKind::Expr(e), pos }),
                    Err(err) => {
                        if t.tok != Tok::Sym('(') {
                            return Err(err);
                        }
                        self.i = save;
                        self.bump();
                        let (items, trailing) = self.sequence(')')?;
                        if items.len() == 1 && !trailing {
                            return Err(err);
                        }
                        Ok(Value { kind: ValueKind::Tuple(items), pos })
                    }
                }
            }
        }
    }

    /// Comma-separated values up to `close`; reports a trailing comma.
    fn sequence(&mut self, close: char) -> PResult<(Vec<Value>, bool)> {
        let mut items = Vec::new();
        let mut trailing = false;
        while !self.eat(close) {
            items.push(self.value()?);
            trailing = false;
            if !self.is_sym(close) {
                self.expect(',')?;
                trailing = true;
            }
        }
        Ok((items, trailing))
    }

    fn call_args(&mut self) -> PResult<(Vec<Value>, Vec<(String, Value)>)> {
        let mut args = Vec::new();
        let mut opts = Vec::new();
        loop {
            if self.eat(')') {
                return Ok((args, opts));
            }
            if self.eat(';') {
                loop {
                    let (k, _) = self.ident()?;
                    self.expect('=')?;
                    opts.push((k, self.value()?));
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(')')?;
                return Ok((args, opts));
            }
            args.push(self.value()?);
            if !self.is_sym(')') && !self.is_sym(';') {
                self.expect(',')?;
            }
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let t = self.bump();
            return match t.tok {
                Tok::Int(n) => {
                    let k = u32::try_from(&n).map_err(|_| ParseError::new("exponent too large", t.pos))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(ParseError::new("expected a non-negative integer exponent", t.pos)),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Var(s))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected("a polynomial")),
        }
    }
}

/// Parses without checking names.
pub fn parse_syntax(text: &str) -> PResult<Script> {
    let toks = lex(text)?;
    Parser { toks, i: 0 }.script()
}

/// Parses and resolves: every referenced name must be declared earlier with
/// the right kind, and every call and command must have a valid shape.
pub fn parse_script(text: &str) -> PResult<Script> {
    let script = parse_syntax(text)?;
    resolve(&script)?;
    Ok(script)
}

struct Resolver {
    names: BTreeMap<String, NameKind>,
}

impl Resolver {
    fn kind_of(&self, v: &Value) -> PResult<NameKind> {
        match &v.kind {
            ValueKind::Expr(Expr::Var(n)) => {
                self.names.get(n).copied().ok_or_else(|| ParseError::new(&format!("undefined name {n}"), v.pos))
            }
            ValueKind::Call(name, args, opts) => {
                let sig = call_signature(name).ok_or_else(|| ParseError::new(&format!("unknown constructor {name}"), v.pos))?;
                let positional: Vec<Arg> = args.iter().map(|a| Arg { key: None, value: a.clone() }).collect();
                let keyed: Vec<Arg> = opts.iter().map(|(k, a)| Arg { key: Some(k.clone()), value: a.clone() }).collect();
                self.check(name, &sig, &positional, &keyed, v.pos)?;
                Ok(sig.produces.expect("constructors produce a kind"))
            }
            _ => Err(ParseError::new(&format!("expected a declared name, found {v}"), v.pos)),
        }
    }

    fn check_kind(&self, kind: &Kind, v: &Value) -> PResult<()> {
        let bad = |what: &str| Err(ParseError::new(&format!("expected {what}, found {v}"), v.pos));
        match kind {
            Kind::Obj(allowed) => {
                // Ring specs may be written inline.
                if allowed.contains(&NameKind::Ring) && is_ring_spec(v) {
                    return Ok(());
                }
                let k = self.kind_of(v)?;
                if allowed.contains(&k) {
                    Ok(())
                } else {
                    let names: Vec<&str> = allowed.iter().map(|k| k.as_str()).collect();
                    Err(ParseError::new(&format!("{v} is a {}, expected a {}", k.as_str(), names.join(" or ")), v.pos))
                }
            }
            Kind::Poly => match v.kind {
                ValueKind::Expr(_) => Ok(()),
                _ => bad("a polynomial"),
            },
            Kind::Int => match v.kind {
                ValueKind::Expr(Expr::Int(_)) => Ok(()),
                _ => bad("an integer"),
            },
            Kind::Rational => match &v.kind {
                ValueKind::Expr(Expr::Int(_)) => Ok(()),
                ValueKind::Expr(Expr::Div(a, b)) if matches!((&**a, &**b), (Expr::Int(_), Expr::Int(_))) => Ok(()),
                _ => bad("a rational number"),
            },
            Kind::Word(words) => match v.as_name() {
                Some(w) if words.contains(&w) => Ok(()),
                _ => bad(&format!("one of {}", words.join(", "))),
            },
            Kind::Str => match v.kind {
                ValueKind::Str(_) => Ok(()),
                _ => bad("a string"),
            },
            Kind::Tuple => match v.kind {
                ValueKind::Tuple(_) => Ok(()),
                _ => bad("a tuple"),
            },
            Kind::PolyPair => match &v.kind {
                ValueKind::Tuple(items) if items.len() == 2 && items.iter().all(|i| matches!(i.kind, ValueKind::Expr(_))) => Ok(()),
                _ => bad("a pair of polynomials"),
            },
            Kind::List(inner) => match &v.kind {
                ValueKind::List(items) => items.iter().try_for_each(|i| self.check_kind(inner, i)),
                _ => bad("a list"),
            },
            Kind::Names => match &v.kind {
                ValueKind::List(items) if items.iter().all(|i| i.as_name().is_some()) => Ok(()),
                _ => bad("a list of variable names"),
            },
            Kind::Coefficients => match &v.kind {
                ValueKind::Call(n, args, opts)
                    if matches!(n.as_str(), "Qp" | "Fp" | "Zp")
                        && opts.is_empty()
                        && (1..=if n == "Qp" { 2 } else { 1 }).contains(&args.len())
                        && args.iter().all(|a| matches!(a.kind, ValueKind::Expr(Expr::Int(_)))) =>
                {
                    Ok(())
                }
                _ => bad("Qp(p, N), Fp(p) or Zp(p)"),
            },
            Kind::Any => Ok(()),
        }
    }

    fn check(&self, name: &str, sig: &Signature, positional: &[Arg], keyed: &[Arg], pos: Pos) -> PResult<()> {
        let (min, max) = (sig.required, sig.positional.len());
        if positional.len() < min || positional.len() > max {
            let range = if min == max { format!("{min}") } else { format!("{min} to {max}") };
            return Err(ParseError::new(
                &format!("{name} takes {range} positional arguments, got {}", positional.len()),
                pos,
            ));
        }
        for (kind, arg) in sig.positional.iter().zip(positional) {
            self.check_kind(kind, &arg.value)?;
        }
        let mut seen = Vec::new();
        for arg in keyed {
            let key = arg.key.as_deref().expect("keyed");
            let Some((_, kind)) = sig.keys.iter().find(|(k, _)| *k == key) else {
                return Err(ParseError::new(&format!("{name} has no option {key}"), arg.value.pos));
            };
            if seen.contains(&key) {
                return Err(ParseError::new(&format!("option {key} given twice"), arg.value.pos));
            }
            seen.push(key);
            self.check_kind(kind, &arg.value)?;
        }
        for key in sig.required_keys {
            if !seen.contains(key) {
                return Err(ParseError::new(&format!("{name} needs {key}="), pos));
            }
        }
        Ok(())
    }
}

pub fn resolve(script: &Script) -> PResult<()> {
    let mut r = Resolver { names: BTreeMap::new() };
    for item in &script.items {
        match item {
            Item::Decl { name, value, .. } => {
                let kind = r.kind_of(value)?;
                r.names.insert(name.clone(), kind);
            }
            Item::Command { name, args, pos } => {
                let sig = command_signature(name).ok_or_else(|| ParseError::new(&format!("unknown command {name}"), *pos))?;
                let positional: Vec<Arg> = args.iter().filter(|a| a.key.is_none()).cloned().collect();
                let keyed: Vec<Arg> = args.iter().filter(|a| a.key.is_some()).cloned().collect();
                r.check(name, &sig, &positional, &keyed, *pos)?;
            }
        }
    }
    Ok(())
}
