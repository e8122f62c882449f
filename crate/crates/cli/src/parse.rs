//! Recursive-descent parser for the expression language.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! rep      := factor ("x" factor)*
//! factor   := "U" "(" "delta" "[" cusp "," INT "]" "," INT ")"
//! cusp     := IDENT (":" INT)? ("@" RATIONAL)?
//! mseg     := "<" (seg ("," seg)*)? ">"
//! seg      := "[" cusp ";" INT "]"
//! IDENT    := [A-Za-z_][A-Za-z0-9_]*
//! INT      := [0-9]+                  (bounded, see MAX_INT)
//! RATIONAL := "-"? [0-9]+ ("/" [0-9]+)?
//! ```
//!
//! Omitted degree defaults to 1 and omitted exponent to 0. Atoms inside
//! `U(...)` must be untwisted. Every rejection is a [`ParseError`] with the
//! byte offset of the offending token; parsing never panics.

use std::fmt;

use num_traits::Zero;
use sl2calc_core::cuspidal::{
    parse_exponent, Alphabet, CuspidalAtom, Exponent, Multisegment, Segment, TwistedCuspidal,
};
use sl2calc_core::tadic::{UnitaryFactor, UnitaryRep};

/// Upper bound for plain integer literals (degrees, lengths, factor
/// parameters). Exponent numerators and denominators are unbounded.
pub const MAX_INT: u64 = 65_536;

/// A positioned parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token in the input.
    pub offset: usize,
    /// What the parser would have accepted at that point.
    pub expected: Vec<String>,
    /// Description of what was found instead.
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected ", self.offset)?;
        for (i, e) in self.expected.iter().enumerate() {
            if i > 0 {
                write!(f, " or ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

/// Parses a product of unitary factors.
pub fn parse_rep(text: &str) -> Result<UnitaryRep, ParseError> {
    let mut s = Scanner::new(text);
    let mut alphabet = Alphabet::new();
    let mut factors = vec![s.factor(&mut alphabet)?];
    loop {
        s.skip_ws();
        if s.at_end() {
            break;
        }
        if s.peek() == Some(b'x') {
            s.pos += 1;
            factors.push(s.factor(&mut alphabet)?);
        } else {
            return Err(s.err(&["'x'", "end of input"]));
        }
    }
    Ok(UnitaryRep::new(factors))
}

/// Parses a multisegment literal.
pub fn parse_multisegment(text: &str) -> Result<Multisegment, ParseError> {
    let mut s = Scanner::new(text);
    let mut alphabet = Alphabet::new();
    s.expect(b'<', "'<'")?;
    let mut segments = Vec::new();
    s.skip_ws();
    if s.peek() != Some(b'>') {
        segments.push(s.segment(&mut alphabet)?);
        loop {
            s.skip_ws();
            match s.peek() {
                Some(b',') => {
                    s.pos += 1;
                    segments.push(s.segment(&mut alphabet)?);
                }
                Some(b'>') => break,
                _ => return Err(s.err(&["','", "'>'"])),
            }
        }
    }
    s.expect(b'>', "'>'")?;
    s.skip_ws();
    if !s.at_end() {
        return Err(s.err(&["end of input"]));
    }
    Ok(Multisegment::new(segments))
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self
            .peek()
            .map(|b| b.is_ascii_whitespace())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
    }

    /// Describes the input at the current position for error messages.
    fn found_here(&self) -> String {
        // The scanner only advances over ASCII, so `pos` is always a char
        // boundary.
        match self.src[self.pos.min(self.src.len())..].chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        }
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found_here(),
        }
    }

    fn err_at(&self, offset: usize, expected: Vec<String>, found: String) -> ParseError {
        ParseError {
            offset,
            expected,
            found,
        }
    }

    fn expect(&mut self, byte: u8, desc: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&[desc]))
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => self.pos += 1,
            _ => return Err(self.err(&["identifier"])),
        }
        while self
            .peek()
            .map(|b| b.is_ascii_alphanumeric() || b == b'_')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn digits(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(&["integer"]));
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    /// A plain integer in `1..=MAX_INT`.
    fn positive_int(&mut self, what: &str) -> Result<u64, ParseError> {
        let (digits, start) = self.digits()?;
        let value: u64 = digits.parse().map_err(|_| {
            self.err_at(
                start,
                vec![format!("{what} in 1..={MAX_INT}")],
                format!("{digits:?}"),
            )
        })?;
        if value == 0 || value > MAX_INT {
            return Err(self.err_at(
                start,
                vec![format!("{what} in 1..={MAX_INT}")],
                format!("{digits:?}"),
            ));
        }
        Ok(value)
    }

    /// `-? digits ("/" digits)?` as an exact rational; no interior
    /// whitespace.
    fn rational(&mut self) -> Result<(Exponent, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let num_start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if self.pos == num_start {
            return Err(self.err_at(
                start,
                vec!["rational number".to_string()],
                self.found_here(),
            ));
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_start = self.pos;
            while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
                self.pos += 1;
            }
            if self.pos == den_start {
                return Err(self.err(&["integer"]));
            }
            let den = &self.src[den_start..self.pos];
            if den.bytes().all(|b| b == b'0') {
                return Err(self.err_at(
                    den_start,
                    vec!["non-zero denominator".to_string()],
                    format!("{den:?}"),
                ));
            }
        }
        let text = &self.src[start..self.pos];
        let value = parse_exponent(text)
            .map_err(|e| self.err_at(start, vec!["rational number".to_string()], e))?;
        Ok((value, start))
    }

    /// `IDENT (":" INT)? ("@" RATIONAL)?` with alphabet consistency.
    fn cusp(
        &mut self,
        alphabet: &mut Alphabet,
    ) -> Result<(CuspidalAtom, Exponent, Option<usize>), ParseError> {
        let (id, id_start) = self.ident()?;
        self.skip_ws();
        let degree = if self.peek() == Some(b':') {
            self.pos += 1;
            self.positive_int("degree")?
        } else {
            1
        };
        self.skip_ws();
        let (exponent, exp_offset) = if self.peek() == Some(b'@') {
            self.pos += 1;
            let (e, off) = self.rational()?;
            (e, Some(off))
        } else {
            (Exponent::zero(), None)
        };
        let atom = CuspidalAtom::new(id.clone(), degree)
            .map_err(|e| self.err_at(id_start, vec!["cuspidal atom".to_string()], e.to_string()))?;
        if let Err(e) = alphabet.register(&atom) {
            return Err(self.err_at(
                id_start,
                vec!["consistent atom degree".to_string()],
                e.to_string(),
            ));
        }
        Ok((atom, exponent, exp_offset))
    }

    /// `"U" "(" "delta" "[" cusp "," INT "]" "," INT ")"`.
    fn factor(&mut self, alphabet: &mut Alphabet) -> Result<UnitaryFactor, ParseError> {
        self.skip_ws();
        if self.peek() != Some(b'U') {
            return Err(self.err(&["'U'"]));
        }
        self.pos += 1;
        self.expect(b'(', "'('")?;
        let (kw, kw_start) = self.ident()?;
        if kw != "delta" {
            return Err(self.err_at(kw_start, vec!["'delta'".to_string()], format!("{kw:?}")));
        }
        self.expect(b'[', "'['")?;
        let (atom, exponent, exp_offset) = self.cusp(alphabet)?;
        if !exponent.is_zero() {
            return Err(self.err_at(
                exp_offset.unwrap_or(self.pos),
                vec!["exponent 0 (unitary atoms are untwisted inside U(...))".to_string()],
                format!("exponent {exponent}"),
            ));
        }
        self.expect(b',', "','")?;
        let n = self.positive_int("n")?;
        self.expect(b']', "']'")?;
        self.expect(b',', "','")?;
        let r = self.positive_int("r")?;
        self.expect(b')', "')'")?;
        Ok(UnitaryFactor::new(atom, n, r).expect("parameters validated by the grammar"))
    }

    /// `"[" cusp ";" INT "]"`.
    fn segment(&mut self, alphabet: &mut Alphabet) -> Result<Segment, ParseError> {
        self.expect(b'[', "'['")?;
        let (atom, exponent, _) = self.cusp(alphabet)?;
        self.expect(b';', "';'")?;
        let len = self.positive_int("segment length")?;
        self.expect(b']', "']'")?;
        let center = TwistedCuspidal::new(atom, exponent);
        Ok(Segment::new(center, len).expect("length validated by the grammar"))
    }
}
