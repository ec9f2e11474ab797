//! Text syntax for rings, modules, complexes and chain maps.
//!
//! ```text
//! ring     := Z | Z/n
//! module   := term (+ term)*
//! term     := 0 | R | R^r | Z | Z^r | Z/k | coker matrix
//! matrix   := [ row, ... ]        row := [ int, ... ]
//! complex  := (int :)? module (<-matrix- module)*  |  S^n(module)  |  D^n(module)
//! map      := 0 | (int : matrix) (; int : matrix)*
//! ```
//!
//! In a complex the leading integer is the lowest degree and the matrix on
//! an arrow is the differential into the module on its left. `0` stands for
//! a zero matrix of the right size.

use std::collections::BTreeMap;
use std::fmt;

use homalg::chaincx::{disk, sphere, ChainComplex};
use homalg::fpmod::{direct_sum_over, FpModule};
use homalg::{Matrix, Ring};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("wrong ring at {pos}: {msg}")]
    WrongRing { pos: usize, msg: String },
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

pub fn parse_ring(text: &str) -> Result<Ring, ParseError> {
    let t = text.trim();
    if t == "Z" {
        return Ok(Ring::Integers);
    }
    let Some(n) = t.strip_prefix("Z/") else {
        return syntax(0, format!("expected `Z` or `Z/n`, found `{t}`"));
    };
    let n: BigInt = n.trim().parse().or_else(|_| syntax(2, "expected a modulus"))?;
    Ring::try_modulo(n).ok_or(ParseError::Syntax { pos: 2, msg: "modulus must be at least 2".into() })
}

/// An unparsed matrix: rows of integers, possibly the `0` shorthand.
#[derive(Clone, Debug)]
enum RawMatrix {
    Zero,
    Rows(Vec<Vec<BigInt>>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a Ring) -> Parser<'a> {
        Parser { src, pos: 0, ring }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("`{c}`"));
            syntax(self.pos, format!("expected `{token}`, found {found}"))
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return syntax(self.pos, format!("unexpected `{}`", self.rest()));
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            if c.is_ascii_digit() || (i == 0 && c == '-') {
                len = i + c.len_utf8();
            } else {
                break;
            }
        }
        let digits = &rest[..len];
        match digits.parse::<BigInt>() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => syntax(start, "expected an integer"),
        }
    }

    fn small(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let v = self.integer()?;
        i64::try_from(v).or_else(|_| syntax(start, "integer out of range"))
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.small()?;
        usize::try_from(v).or_else(|_| syntax(start, "expected a non-negative integer"))
    }

    fn raw_matrix(&mut self) -> Result<RawMatrix, ParseError> {
        if self.peek() == Some('0') {
            self.pos += 1;
            return Ok(RawMatrix::Zero);
        }
        self.expect("[")?;
        let mut rows = Vec::new();
        if self.eat("]") {
            return Ok(RawMatrix::Rows(rows));
        }
        loop {
            let start = self.pos;
            self.expect("[")?;
            let mut row = Vec::new();
            if !self.eat("]") {
                loop {
                    row.push(self.integer()?);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            if let Some(first) = rows.first() {
                let first: &Vec<BigInt> = first;
                if first.len() != row.len() {
                    return syntax(start, "rows have different lengths");
                }
            }
            rows.push(row);
            if self.eat("]") {
                break;
            }
            self.expect(",")?;
        }
        Ok(RawMatrix::Rows(rows))
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Result<Matrix, ParseError> {
        let start = self.pos;
        let raw = self.raw_matrix()?;
        self.build_matrix(raw, rows, cols, start)
    }

    fn build_matrix(&self, raw: RawMatrix, rows: usize, cols: usize, pos: usize) -> Result<Matrix, ParseError> {
        match raw {
            RawMatrix::Zero => Ok(Matrix::zeros(self.ring, rows, cols)),
            RawMatrix::Rows(data) => {
                let c = data.first().map_or(0, Vec::len);
                let (r, c) = if data.is_empty() { (0, cols) } else { (data.len(), c) };
                if r != rows || c != cols {
                    return syntax(pos, format!("expected a {rows}x{cols} matrix, found {r}x{c}"));
                }
                Ok(Matrix::from_vec(self.ring, r, c, data.into_iter().flatten().collect()))
            }
        }
    }

    fn term(&mut self) -> Result<FpModule, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("coker") {
            let raw = self.raw_matrix()?;
            let m = match raw {
                RawMatrix::Zero => return syntax(start, "a presentation needs explicit rows"),
                RawMatrix::Rows(data) => {
                    let r = data.len();
                    let c = data.first().map_or(0, Vec::len);
                    Matrix::from_vec(self.ring, r, c, data.into_iter().flatten().collect())
                }
            };
            return Ok(FpModule::from_relations(m));
        }
        if self.eat("0") {
            return Ok(FpModule::zero(self.ring));
        }
        if self.eat("R") {
            let rank = if self.eat("^") { self.count()? } else { 1 };
            return Ok(FpModule::free(self.ring, rank));
        }
        if self.eat("Z") {
            if self.eat("/") {
                let kpos = self.pos;
                let k = self.integer()?;
                if k <= BigInt::zero() {
                    return syntax(kpos, "cyclic order must be positive");
                }
                if let Some(n) = self.ring.modulus() {
                    if !(n % &k).is_zero() {
                        return Err(ParseError::WrongRing {
                            pos: start,
                            msg: format!("Z/{k} is not a module over Z/{n}"),
                        });
                    }
                }
                if k.is_one() {
                    return Ok(FpModule::zero(self.ring));
                }
                return Ok(FpModule::cyclic(self.ring, k));
            }
            if let Some(n) = self.ring.modulus() {
                return Err(ParseError::WrongRing {
                    pos: start,
                    msg: format!("Z is not a module over Z/{n}; use R or Z/{n}"),
                });
            }
            let rank = if self.eat("^") { self.count()? } else { 1 };
            return Ok(FpModule::free(self.ring, rank));
        }
        syntax(start, "expected a module")
    }

    fn module(&mut self) -> Result<FpModule, ParseError> {
        let mut parts = vec![self.term()?];
        while self.eat("+") {
            parts.push(self.term()?);
        }
        if parts.len() == 1 {
            return Ok(parts.pop().unwrap());
        }
        let refs: Vec<&FpModule> = parts.iter().collect();
        Ok(direct_sum_over(self.ring, &refs).module)
    }

    fn complex(&mut self) -> Result<ChainComplex, ParseError> {
        self.skip_ws();
        let start = self.pos;
        for (tag, build) in [("S^", sphere as fn(&FpModule, i64) -> ChainComplex), ("D^", disk)] {
            if self.eat(tag) {
                let n = self.small()?;
                self.expect("(")?;
                let m = self.module()?;
                self.expect(")")?;
                return Ok(build(&m, n));
            }
        }
        let save = self.pos;
        let lo = match self.small() {
            Ok(n) if self.eat(":") => n,
            _ => {
                self.pos = save;
                0
            }
        };
        let mut modules = vec![self.module()?];
        let mut raws = Vec::new();
        while self.eat("<-") {
            let mpos = self.pos;
            raws.push((self.raw_matrix()?, mpos));
            self.expect("-")?;
            modules.push(self.module()?);
        }
        let mut diffs = Vec::new();
        for (k, (raw, mpos)) in raws.into_iter().enumerate() {
            diffs.push(self.build_matrix(raw, modules[k].gens(), modules[k + 1].gens(), mpos)?);
        }
        ChainComplex::new(self.ring, lo, modules, diffs).or_else(|e| syntax(start, format!("not a complex: {e}")))
    }

    fn components(&mut self, source: &ChainComplex, target: &ChainComplex) -> Result<BTreeMap<i64, Matrix>, ParseError> {
        let mut comps = BTreeMap::new();
        if self.peek().is_none() {
            return Ok(comps);
        }
        loop {
            let dpos = self.pos;
            let n = self.small()?;
            self.expect(":")?;
            let m = self.matrix(target.gens(n), source.gens(n))?;
            if comps.insert(n, m).is_some() {
                return syntax(dpos, format!("degree {n} given twice"));
            }
            if !self.eat(";") {
                break;
            }
        }
        Ok(comps)
    }
}

pub fn parse_module(text: &str, ring: &Ring) -> Result<FpModule, ParseError> {
    let mut p = Parser::new(text, ring);
    let m = p.module()?;
    p.end()?;
    Ok(m)
}

pub fn parse_complex(text: &str, ring: &Ring) -> Result<ChainComplex, ParseError> {
    let mut p = Parser::new(text, ring);
    let c = p.complex()?;
    p.end()?;
    Ok(c)
}

/// Components of a map `source -> target`, by degree; absent degrees are
/// zero and `0` is the zero map.
pub fn parse_components(
    text: &str,
    ring: &Ring,
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<BTreeMap<i64, Matrix>, ParseError> {
    if text.trim() == "0" {
        return Ok(BTreeMap::new());
    }
    let mut p = Parser::new(text, ring);
    let c = p.components(source, target)?;
    p.end()?;
    Ok(c)
}

pub struct MatrixText<'a>(pub &'a Matrix);

impl fmt::Display for MatrixText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0;
        write!(f, "[")?;
        for i in 0..m.rows() {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// A module in the input syntax; diagonal presentations print as sums.
pub fn render_module(m: &FpModule) -> String {
    if let Some(orders) = m.generator_orders() {
        let ring = m.ring();
        let free = if ring.is_integers() { "Z" } else { "R" };
        let terms: Vec<String> = orders
            .iter()
            .map(|d| if d.is_zero() { free.to_string() } else { format!("Z/{d}") })
            .collect();
        let text = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if parse_module(&text, ring).as_ref() == Ok(m) {
            return text;
        }
    }
    if m.gens() == 0 {
        return "0".into();
    }
    format!("coker{}", MatrixText(m.relations()))
}

pub fn render_complex(x: &ChainComplex) -> String {
    let Some((lo, hi)) = x.support() else {
        return "0".into();
    };
    let mut out = format!("{lo}: {}", render_module(&x.module(lo)));
    for n in (lo + 1)..=hi {
        out.push_str(&format!(" <-{}- {}", MatrixText(x.differential(n).matrix()), render_module(&x.module(n))));
    }
    out
}
