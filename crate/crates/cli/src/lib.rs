//! `adic-kit`: a small language for describing presentations, finite test
//! rings and morphisms, and a driver that runs checks on them and emits JSON.

pub mod ast;
mod lexer;
pub mod parser;
pub mod runner;
pub mod signature;

pub use parser::{parse_script, parse_syntax, ParseError};
pub use runner::{render, run_script, Options, Report, Status};
