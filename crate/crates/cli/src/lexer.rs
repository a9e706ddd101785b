use num_bigint::BigInt;

use crate::ast::Pos;
use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    pub start: usize,
    pub end: usize,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let pos = Pos { line, col };
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i].1 == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        let start = off;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                advance(&mut i, &mut line, &mut col);
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                s.push(chars[i].1);
                advance(&mut i, &mut line, &mut col);
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c == '"' {
            advance(&mut i, &mut line, &mut col);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(ParseError::new("unterminated string", pos)),
                    Some((_, '"')) => {
                        advance(&mut i, &mut line, &mut col);
                        break;
                    }
                    Some((_, '\\')) if matches!(chars.get(i + 1), Some((_, '"' | '\\'))) => {
                        advance(&mut i, &mut line, &mut col);
                        s.push(chars[i].1);
                        advance(&mut i, &mut line, &mut col);
                    }
                    Some((_, ch)) => {
                        s.push(*ch);
                        advance(&mut i, &mut line, &mut col);
                    }
                }
            }
            Tok::Str(s)
        } else if "=;,()[]+-*/^".contains(c) {
            advance(&mut i, &mut line, &mut col);
            Tok::Sym(c)
        } else {
            return Err(ParseError::new(&format!("unexpected character '{c}'"), pos));
        };
        let end = chars.get(i).map_or(src.len(), |(o, _)| *o);
        out.push(Token { tok, pos, start, end });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col }, start: src.len(), end: src.len() });
    Ok(out)
}
