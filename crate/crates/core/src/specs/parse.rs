//! Lexer and recursive-descent parser for the `.var` / `.alg` text format.
//!
//! ```text
//! variety Grp {
//!   op mul/2; op inv/1; const e = 0;
//!   eq mul(x, e) = x;
//! }
//! algebra Z2 : Grp { size 2; mul: [0,1,1,0]; inv: [0,1]; e = 0; }
//! ```
//!
//! `const NAME = INT;` inside a variety pins the constant for model
//! enumeration. Constant names may be numerals (`const 0;`), operation names
//! may not. A bare name in a term that is not a declared constant is a
//! variable and must start with a lowercase letter or `_`.

use std::fmt;

use crate::algebra::FiniteAlgebra;

use super::{Equation, Signature, SpecError, Symbol, Term, VarietyPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(s) => write!(f, "integer `{s}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, SpecError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Int(s), pos));
        } else if "{}()[],;:/=".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Punct(c), pos));
        } else {
            return Err(SpecError::Syntax {
                pos,
                found: format!("character `{c}`"),
                expected: vec!["a token".into()],
            });
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// Term as written, before names are resolved against the signature.
#[derive(Clone, Debug)]
struct RawTerm {
    name: String,
    args: Option<Vec<RawTerm>>,
    pos: Pos,
}

/// An algebra block whose tables have not yet been checked against a variety.
#[derive(Clone, Debug)]
pub struct AlgebraDecl {
    pub name: String,
    pub variety: String,
    pub size: usize,
    pub tables: Vec<(String, Vec<usize>)>,
    pub consts: Vec<(String, usize)>,
}

#[derive(Clone, Debug)]
pub enum Block {
    Variety(VarietyPresentation),
    Algebra(AlgebraDecl),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
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

    fn fail<T>(&self, expected: &[&str]) -> Result<T, SpecError> {
        Err(SpecError::Syntax {
            pos: self.pos(),
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn punct(&mut self, c: char) -> Result<(), SpecError> {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SpecError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&[&format!("`{kw}`")]),
        }
    }

    fn ident(&mut self) -> Result<String, SpecError> {
        match self.bump_if(|t| matches!(t, Tok::Ident(_))) {
            Some(Tok::Ident(s)) => Ok(s),
            _ => self.fail(&["identifier"]),
        }
    }

    /// Identifier or numeral; used for constant names and term heads.
    fn name(&mut self) -> Result<String, SpecError> {
        match self.bump_if(|t| matches!(t, Tok::Ident(_) | Tok::Int(_))) {
            Some(Tok::Ident(s)) | Some(Tok::Int(s)) => Ok(s),
            _ => self.fail(&["name"]),
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        let pos = self.pos();
        match self.bump_if(|t| matches!(t, Tok::Int(_))) {
            Some(Tok::Int(s)) => s.parse().map_err(|_| SpecError::Syntax {
                pos,
                found: format!("integer `{s}`"),
                expected: vec!["an integer that fits in usize".into()],
            }),
            _ => self.fail(&["integer"]),
        }
    }

    fn bump_if(&mut self, pred: impl Fn(&Tok) -> bool) -> Option<Tok> {
        if pred(self.peek()) {
            Some(self.bump())
        } else {
            None
        }
    }

    fn blocks(&mut self) -> Result<Vec<Block>, SpecError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(out),
                Tok::Ident(s) if s == "variety" => out.push(Block::Variety(self.variety()?)),
                Tok::Ident(s) if s == "algebra" => out.push(Block::Algebra(self.algebra()?)),
                _ => return self.fail(&["`variety`", "`algebra`", "end of input"]),
            }
        }
    }

    fn variety(&mut self) -> Result<VarietyPresentation, SpecError> {
        self.keyword("variety")?;
        let name = self.ident()?;
        self.punct('{')?;
        let mut sig = Signature::new();
        let mut pins = Vec::new();
        let mut raw_eqs = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Punct('}') => {
                    self.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "op" => {
                    self.bump();
                    let op = self.ident()?;
                    self.punct('/')?;
                    let arity = self.int()?;
                    self.punct(';')?;
                    sig.add_op(op, arity)?;
                }
                Tok::Ident(kw) if kw == "const" => {
                    self.bump();
                    let c = self.name()?;
                    let pin = if *self.peek() == Tok::Punct('=') {
                        self.bump();
                        Some(self.int()?)
                    } else {
                        None
                    };
                    self.punct(';')?;
                    sig.add_const(c)?;
                    pins.push(pin);
                }
                Tok::Ident(kw) if kw == "eq" => {
                    self.bump();
                    let lhs = self.term()?;
                    self.punct('=')?;
                    let rhs = self.term()?;
                    self.punct(';')?;
                    raw_eqs.push((lhs, rhs));
                }
                _ => return self.fail(&["`op`", "`const`", "`eq`", "`}`"]),
            }
        }
        let equations = raw_eqs
            .into_iter()
            .map(|(l, r)| Ok(Equation::new(resolve(&l, &sig)?, resolve(&r, &sig)?)))
            .collect::<Result<Vec<_>, SpecError>>()?;
        VarietyPresentation::with_pins(name, sig, equations, pins)
    }

    fn term(&mut self) -> Result<RawTerm, SpecError> {
        let pos = self.pos();
        let name = self.name()?;
        if *self.peek() != Tok::Punct('(') {
            return Ok(RawTerm { name, args: None, pos });
        }
        self.bump();
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Punct(',') => {
                    self.bump();
                    args.push(self.term()?);
                }
                Tok::Punct(')') => {
                    self.bump();
                    break;
                }
                _ => return self.fail(&["`,`", "`)`"]),
            }
        }
        Ok(RawTerm { name, args: Some(args), pos })
    }

    fn algebra(&mut self) -> Result<AlgebraDecl, SpecError> {
        self.keyword("algebra")?;
        let name = self.ident()?;
        self.punct(':')?;
        let variety = self.ident()?;
        self.punct('{')?;
        self.keyword("size")?;
        let size = self.int()?;
        self.punct(';')?;
        let mut decl = AlgebraDecl {
            name,
            variety,
            size,
            tables: Vec::new(),
            consts: Vec::new(),
        };
        loop {
            if *self.peek() == Tok::Punct('}') {
                self.bump();
                break;
            }
            if !matches!(self.peek(), Tok::Ident(_) | Tok::Int(_)) {
                return self.fail(&["table or constant assignment", "`}`"]);
            }
            match self.peek2() {
                Tok::Punct(':') => {
                    let op = self.ident()?;
                    self.punct(':')?;
                    self.punct('[')?;
                    let mut entries = Vec::new();
                    if *self.peek() != Tok::Punct(']') {
                        entries.push(self.int()?);
                        while *self.peek() == Tok::Punct(',') {
                            self.bump();
                            entries.push(self.int()?);
                        }
                    }
                    self.punct(']')?;
                    self.punct(';')?;
                    decl.tables.push((op, entries));
                }
                Tok::Punct('=') => {
                    let c = self.name()?;
                    self.punct('=')?;
                    let v = self.int()?;
                    self.punct(';')?;
                    decl.consts.push((c, v));
                }
                _ => {
                    self.bump();
                    return self.fail(&["`:`", "`=`"]);
                }
            }
        }
        Ok(decl)
    }
}

fn resolve(raw: &RawTerm, sig: &Signature) -> Result<Term, SpecError> {
    match (&raw.args, sig.lookup(&raw.name)) {
        (Some(args), Some(Symbol::Op(i))) => {
            let arity = sig.op(i).arity;
            if arity != args.len() {
                return Err(SpecError::ArityMismatch {
                    op: raw.name.clone(),
                    expected: arity,
                    found: args.len(),
                });
            }
            let args = args.iter().map(|a| resolve(a, sig)).collect::<Result<_, _>>()?;
            Ok(Term::Apply(raw.name.clone(), args))
        }
        (Some(args), Some(Symbol::Const(_))) => Err(SpecError::ArityMismatch {
            op: raw.name.clone(),
            expected: 0,
            found: args.len(),
        }),
        (None, Some(Symbol::Const(_))) => Ok(Term::Const(raw.name.clone())),
        (None, Some(Symbol::Op(i))) => Err(SpecError::ArityMismatch {
            op: raw.name.clone(),
            expected: sig.op(i).arity,
            found: 0,
        }),
        (None, None) if raw.name.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') => {
            Ok(Term::Var(raw.name.clone()))
        }
        _ => Err(SpecError::UnknownSymbolAt {
            name: raw.name.clone(),
            pos: raw.pos,
        }),
    }
}

/// Parses every block of a source file.
pub fn parse_blocks(text: &str) -> Result<Vec<Block>, SpecError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.blocks()
}

/// Parses a source containing exactly one `variety` block.
pub fn parse_variety(text: &str) -> Result<VarietyPresentation, SpecError> {
    let mut blocks = parse_blocks(text)?;
    match (blocks.len(), blocks.pop()) {
        (1, Some(Block::Variety(v))) => Ok(v),
        (n, _) => Err(SpecError::WrongBlocks {
            expected: "exactly one variety block",
            found: n,
        }),
    }
}

/// Parses a source containing exactly one `algebra` block over `v`.
///
/// Only shape is validated (tables complete, entries and constants in range);
/// equations are checked separately by [`super::check_identities`].
pub fn parse_algebra(text: &str, v: &VarietyPresentation) -> Result<FiniteAlgebra, SpecError> {
    let mut blocks = parse_blocks(text)?;
    match (blocks.len(), blocks.pop()) {
        (1, Some(Block::Algebra(decl))) => decl.resolve(v),
        (n, _) => Err(SpecError::WrongBlocks {
            expected: "exactly one algebra block",
            found: n,
        }),
    }
}

impl AlgebraDecl {
    pub fn resolve(&self, v: &VarietyPresentation) -> Result<FiniteAlgebra, SpecError> {
        if self.variety != v.name {
            return Err(SpecError::VarietyMismatch {
                algebra: self.name.clone(),
                wanted: self.variety.clone(),
                given: v.name.clone(),
            });
        }
        let sig = &v.signature;
        let n = self.size;
        let mut tables: Vec<Option<Vec<usize>>> = vec![None; sig.ops().len()];
        for (op, entries) in &self.tables {
            let i = match sig.lookup(op) {
                Some(Symbol::Op(i)) => i,
                _ => return Err(SpecError::UnknownSymbol(op.clone())),
            };
            if tables[i].is_some() {
                return Err(SpecError::DuplicateName(op.clone()));
            }
            let expected = checked_pow(n, sig.op(i).arity).ok_or(SpecError::TooLarge)?;
            if entries.len() != expected {
                return Err(SpecError::TableLength {
                    op: op.clone(),
                    expected,
                    found: entries.len(),
                });
            }
            if let Some(&bad) = entries.iter().find(|&&e| e >= n) {
                return Err(SpecError::OutOfRange {
                    what: op.clone(),
                    value: bad,
                    size: n,
                });
            }
            tables[i] = Some(entries.clone());
        }
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| SpecError::MissingTable(sig.op(i).name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut consts: Vec<Option<usize>> = vec![None; sig.consts().len()];
        for (c, val) in &self.consts {
            let i = match sig.lookup(c) {
                Some(Symbol::Const(i)) => i,
                _ => return Err(SpecError::UnknownSymbol(c.clone())),
            };
            if consts[i].is_some() {
                return Err(SpecError::DuplicateName(c.clone()));
            }
            if *val >= n {
                return Err(SpecError::OutOfRange {
                    what: c.clone(),
                    value: *val,
                    size: n,
                });
            }
            consts[i] = Some(*val);
        }
        let consts = consts
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| SpecError::MissingTable(sig.consts()[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        FiniteAlgebra::new(self.name.clone(), v.name.clone(), sig.clone(), n, tables, consts)
            .map_err(|e| SpecError::Invalid(e.to_string()))
    }
}

pub(crate) fn checked_pow(n: usize, k: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..k {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}
