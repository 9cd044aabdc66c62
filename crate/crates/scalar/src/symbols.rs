use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::ScalarError;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Ordered, duplicate-free list of parameter names.
///
/// Symbol `i` of the table is variable index `i` in every [`Scalar`] built
/// against it. The order also fixes the monomial order used for printing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolTable {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolTable {
    pub fn new<I, S>(names: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = SymbolTable::default();
        for n in names {
            table.declare(n)?;
        }
        Ok(table)
    }

    /// Appends a symbol and returns its index.
    pub fn declare<S: Into<String>>(&mut self, name: S) -> Result<usize, ScalarError> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(ScalarError::InvalidSymbol(name));
        }
        if self.names.contains(&name) {
            return Err(ScalarError::DuplicateSymbol(name));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    /// Index of `name`, declaring it if absent.
    pub fn intern(&mut self, name: &str) -> Result<usize, ScalarError> {
        match self.index(name) {
            Some(i) => Ok(i),
            None => self.declare(name),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The scalar for a declared symbol.
    pub fn symbol(&self, name: &str) -> Result<Scalar, ScalarError> {
        self.index(name)
            .map(Scalar::var)
            .ok_or_else(|| ScalarError::UndeclaredSymbol(name.to_string()))
    }

    /// Parses an expression over `+ - * / ^`, integers, parentheses and declared symbols.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            table: self,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        let mut out = String::new();
        if p.is_zero() {
            return "0".into();
        }
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{abs}*{mono}");
            }
        }
        out
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = self
                .names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x{i}"));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }

    /// Canonical text `num / den` (just `num` when the denominator is 1).
    pub fn format(&self, s: &Scalar) -> String {
        let num = self.format_poly(s.numer());
        if s.denom().is_one() {
            return num;
        }
        let num = if s.numer().len() > 1 { format!("({num})") } else { num };
        let den = s.denom();
        let den_text = self.format_poly(den);
        let bare = den.is_constant()
            || (den.is_monomial()
                && den.leading_coeff().is_one()
                && den.leading().is_some_and(|(m, _)| m.exps().iter().filter(|&&e| e > 0).count() == 1));
        let den_text = if bare { den_text } else { format!("({den_text})") };
        format!("{num} / {den_text}")
    }

    /// A display adapter bound to this table.
    pub fn display<'a>(&'a self, s: &'a Scalar) -> ScalarDisplay<'a> {
        ScalarDisplay { table: self, s }
    }
}

pub struct ScalarDisplay<'a> {
    table: &'a SymbolTable,
    s: &'a Scalar,
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table.format(self.s))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ => false,
            };
            let e = self.integer()?;
            let e: i64 = i64::try_from(&e).map_err(|_| ScalarError::ExponentTooLarge)?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_int(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.table.symbol(name)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
