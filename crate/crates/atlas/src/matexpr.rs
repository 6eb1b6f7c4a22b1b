//! Parsing and printing of matrix expressions over cyclotomic fields.
//!
//! A matrix is written either as `diag(e1, …, en)` or as a bracketed
//! row-major array `[[e11, e12], [e21, e22]]`.  Each entry is an integer or
//! rational combination of root-of-unity tokens `zN^k` (with `zN` short for
//! `zN^1`), e.g. `diag(z4^3, z4^3, z4)` or `[[1, 0], [0, -1]]` or
//! `1/2 + 1/2*z8 - z8^3`.
//!
//! Printing is canonical: diagonal matrices render through `diag(…)`, each
//! entry prefers a plain rational, then a single `±zN^k` token, and falls
//! back to the explicit power-basis combination.  Every printed form parses
//! back to the same matrix, so round trips are exact.

use num::{BigInt, BigRational};
use num_traits::{One, Signed, Zero};

use siegel_core::cyclotomic::{CycMatrix, CycNum};

use crate::error::{AtlasError, Result};

/// One parsed additive term: `coeff · ζ_N^k`, with `root = None` meaning a
/// bare rational term.
#[derive(Debug, Clone, PartialEq)]
struct Term {
    coeff: BigRational,
    root: Option<(u32, i64)>,
}

fn parse_error(text: &str, msg: impl Into<String>) -> AtlasError {
    AtlasError::MatrixSyntax {
        input: text.to_string(),
        message: msg.into(),
    }
}

/// Least common multiple of the conductors appearing in an entry list, with
/// a floor of 1 so purely rational matrices live in `ℚ(ζ_1) = ℚ`.
fn common_conductor(terms: &[Vec<Term>]) -> u32 {
    let mut m = 1u64;
    for entry in terms {
        for t in entry {
            if let Some((n, _)) = t.root {
                m = num::integer::lcm(m, n as u64);
            }
        }
    }
    m as u32
}

fn term_value(term: &Term, conductor: u32) -> CycNum {
    let base = match term.root {
        Some((n, k)) => {
            let scaled = k.rem_euclid(n as i64) * (conductor / n) as i64;
            CycNum::root_of_unity(conductor, scaled)
        }
        None => CycNum::one(conductor),
    };
    base.scale(&term.coeff)
}

fn entry_value(terms: &[Term], conductor: u32) -> CycNum {
    let mut acc = CycNum::zero(conductor);
    for t in terms {
        acc = &acc + &term_value(t, conductor);
    }
    acc
}

/// A tiny character-level scanner for entry expressions.
struct Scanner<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn parse_uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(parse_error(self.src, format!("expected digits at byte {start}")));
        }
        self.src[start..self.pos]
            .parse::<u64>()
            .map_err(|_| parse_error(self.src, "integer literal too large"))
    }

    /// `zN` or `zN^k`, positioned after the leading `z`.
    fn parse_root(&mut self) -> Result<(u32, i64)> {
        let n = self.parse_uint()?;
        if n == 0 || n > 10_000 {
            return Err(parse_error(self.src, format!("root order {n} out of range")));
        }
        let mut k = 1i64;
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let neg = if self.peek() == Some(b'-') {
                self.bump();
                true
            } else {
                false
            };
            let raw = self.parse_uint()? as i64;
            k = if neg { -raw } else { raw };
        }
        Ok((n as u32, k))
    }

    /// One additive term after its sign has been consumed.
    fn parse_term(&mut self, sign: i64) -> Result<Term> {
        self.skip_ws();
        let mut coeff = BigRational::from(BigInt::from(sign));
        let mut have_coeff = false;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let num = self.parse_uint()?;
            let mut q = BigRational::from(BigInt::from(num));
            self.skip_ws();
            if self.peek() == Some(b'/') {
                self.bump();
                self.skip_ws();
                let den = self.parse_uint()?;
                if den == 0 {
                    return Err(parse_error(self.src, "zero denominator"));
                }
                q /= BigRational::from(BigInt::from(den));
            }
            coeff *= q;
            have_coeff = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                self.skip_ws();
            }
        }
        if self.peek() == Some(b'z') {
            self.bump();
            let root = self.parse_root()?;
            return Ok(Term {
                coeff,
                root: Some(root),
            });
        }
        if !have_coeff {
            return Err(parse_error(
                self.src,
                format!("expected a number or zN^k token at byte {}", self.pos),
            ));
        }
        Ok(Term { coeff, root: None })
    }

    /// A full entry: signed terms joined by `+` / `-`.
    fn parse_entry(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            self.bump();
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        terms.push(self.parse_term(sign)?);
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    terms.push(self.parse_term(1)?);
                }
                Some(b'-') => {
                    self.bump();
                    terms.push(self.parse_term(-1)?);
                }
                _ => break,
            }
        }
        Ok(terms)
    }
}

/// Split a comma-separated list at the top level (no nested brackets are
/// possible inside entries, so this is a plain split with trimming).
fn split_entries(body: &str, src: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for piece in body.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(parse_error(src, "empty matrix entry"));
        }
        out.push(piece.to_string());
    }
    Ok(out)
}

fn parse_entry_text(text: &str, src: &str) -> Result<Vec<Term>> {
    let mut sc = Scanner::new(text);
    let terms = sc.parse_entry()?;
    sc.skip_ws();
    if sc.pos != sc.bytes.len() {
        return Err(parse_error(
            src,
            format!("trailing characters in entry `{text}`"),
        ));
    }
    Ok(terms)
}

/// Parse one matrix expression.
pub fn parse_matrix(text: &str) -> Result<CycMatrix> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("diag") {
        let rest = rest.trim_start();
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_error(text, "diag(...) must be parenthesised"))?;
        let entries = split_entries(body, text)?;
        let terms: Vec<Vec<Term>> = entries
            .iter()
            .map(|e| parse_entry_text(e, text))
            .collect::<Result<_>>()?;
        let conductor = common_conductor(&terms);
        let diag: Vec<CycNum> = terms.iter().map(|t| entry_value(t, conductor)).collect();
        return Ok(CycMatrix::diagonal(&diag, conductor));
    }
    if trimmed.starts_with('[') {
        let body = trimmed
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| parse_error(text, "unbalanced outer brackets"))?;
        // Split into rows on `],` boundaries.
        let mut rows_text = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in body.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| parse_error(text, "unbalanced brackets"))?
                }
                ',' if depth == 0 => {
                    rows_text.push(&body[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(parse_error(text, "unbalanced brackets"));
        }
        rows_text.push(&body[start..]);
        let mut rows: Vec<Vec<Vec<Term>>> = Vec::new();
        for row in rows_text {
            let row = row.trim();
            let inner = row
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| parse_error(text, "each row must be bracketed"))?;
            let entries = split_entries(inner, text)?;
            rows.push(
                entries
                    .iter()
                    .map(|e| parse_entry_text(e, text))
                    .collect::<Result<_>>()?,
            );
        }
        let n_cols = rows[0].len();
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(parse_error(text, "rows have unequal lengths"));
        }
        let flat: Vec<Vec<Term>> = rows.iter().flatten().cloned().collect();
        let conductor = common_conductor(&flat);
        let mut m = CycMatrix::zero(rows.len(), n_cols, conductor);
        for (i, row) in rows.iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                m.set(i, j, entry_value(terms, conductor));
            }
        }
        return Ok(m);
    }
    Err(parse_error(
        text,
        "expected `diag(…)` or a bracketed row list",
    ))
}

/// Parse a generator list and embed every matrix into the least common
/// cyclotomic field, so the list is ready for an explicit group action.
pub fn parse_generators(texts: &[String]) -> Result<Vec<CycMatrix>> {
    let parsed: Vec<CycMatrix> = texts
        .iter()
        .map(|t| parse_matrix(t))
        .collect::<Result<_>>()?;
    let conductor = parsed
        .iter()
        .fold(1u64, |acc, m| num::integer::lcm(acc, m.conductor() as u64))
        as u32;
    parsed
        .iter()
        .map(|m| m.embed(conductor).map_err(AtlasError::from))
        .collect()
}

fn print_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render one coefficient-times-token term; `first` controls sign spelling.
fn print_term(coeff: &BigRational, token: Option<String>, first: bool) -> String {
    let mag = coeff.abs();
    let sign = if coeff.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let body = match token {
        None => print_rational(&mag),
        Some(tok) if mag.is_one() => tok,
        Some(tok) => format!("{}*{}", print_rational(&mag), tok),
    };
    format!("{sign}{body}")
}

fn root_token(n: u32, k: u32) -> String {
    if k == 1 {
        format!("z{n}")
    } else {
        format!("z{n}^{k}")
    }
}

/// Canonical text for one cyclotomic entry.
pub fn print_entry(x: &CycNum) -> String {
    if let Some(q) = x.as_rational() {
        return print_rational(&q);
    }
    let n = x.conductor();
    // Prefer a single root-of-unity token when the value is exactly `±ζ^k`.
    for k in 1..n {
        let root = CycNum::root_of_unity(n, k as i64);
        if *x == root {
            return root_token(n, k);
        }
        if *x == -&root {
            return format!("-{}", root_token(n, k));
        }
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let token = if k == 0 {
            None
        } else {
            Some(root_token(n, k as u32))
        };
        out.push_str(&print_term(c, token, first));
        first = false;
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text for a whole matrix.
pub fn print_matrix(m: &CycMatrix) -> String {
    if m.is_square() && m.is_diagonal() {
        let entries: Vec<String> = (0..m.rows()).map(|i| print_entry(m.get(i, i))).collect();
        return format!("diag({})", entries.join(","));
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = (0..m.cols()).map(|j| print_entry(m.get(i, j))).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}
