//! Noncommutative polynomials over generator words.
//!
//! A generator is a matrix-entry symbol with 1-based row and column indices:
//! `a[i,j]` in the reflection equation algebra, `x[i,j]` in the FRT algebra.
//! Words are finite products of generators; polynomials are finite linear
//! combinations with [`RatFunc`] coefficients. Multiplication here is the free
//! product (plain concatenation); all defining relations live in [`crate::pbw`].
//!
//! Term order for storage, printing and normal forms: by word degree first,
//! then lexicographically on the letter sequence, where letters compare by
//! `(row, col)`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::scalars::{rat, RatFunc, Rational};

/// Which of the two algebras a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algebra {
    /// Reflection equation algebra; generators print as `a[i,j]`.
    Rea,
    /// FRT bialgebra; generators print as `x[i,j]`.
    Frt,
}

impl Algebra {
    pub fn letter(self) -> char {
        match self {
            Algebra::Rea => 'a',
            Algebra::Frt => 'x',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Rea => "REA",
            Algebra::Frt => "FRT",
        }
    }
}

/// One generator letter. Indices are 1-based and bounded by the matrix size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub row: u8,
    pub col: u8,
}

impl Gen {
    pub fn new(row: u8, col: u8) -> Self {
        Gen { row, col }
    }
}

/// A word in the generators. Ordering: degree first, then lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        let mut v = Vec::with_capacity(1);
        v.push(g);
        Word(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, g: Gen) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(g);
        Word(v)
    }

    /// True when adjacent letters are weakly increasing in `(row, col)`.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Errors from polynomial construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NcError {
    /// Operands live in different algebras.
    AlgebraMismatch,
    /// Operands have different matrix sizes.
    SizeMismatch { left: u8, right: u8 },
    /// A generator index is outside `1..=n`.
    IndexRange { gen: (u8, u8), n: u8 },
    /// Parse failure with byte offset and message.
    Parse { pos: usize, msg: String },
}

impl fmt::Display for NcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcError::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            NcError::SizeMismatch { left, right } => {
                write!(f, "operands have different matrix sizes {} and {}", left, right)
            }
            NcError::IndexRange { gen, n } => {
                write!(f, "generator index [{},{}] outside 1..={}", gen.0, gen.1, n)
            }
            NcError::Parse { pos, msg } => write!(f, "parse error at byte {}: {}", pos, msg),
        }
    }
}

impl core::error::Error for NcError {}

/// Noncommutative polynomial attached to one algebra and one matrix size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    algebra: Algebra,
    n: u8,
    terms: BTreeMap<Word, RatFunc>,
}

impl NCPoly {
    pub fn zero(algebra: Algebra, n: u8) -> Self {
        NCPoly { algebra, n, terms: BTreeMap::new() }
    }

    pub fn one(algebra: Algebra, n: u8) -> Self {
        Self::scalar(algebra, n, RatFunc::one())
    }

    pub fn scalar(algebra: Algebra, n: u8, c: RatFunc) -> Self {
        let mut p = Self::zero(algebra, n);
        if !c.is_zero() {
            p.terms.insert(Word::empty(), c);
        }
        p
    }

    pub fn gen(algebra: Algebra, n: u8, g: Gen) -> Result<Self, NcError> {
        check_gen(g, n)?;
        Ok(Self::monomial_unchecked(algebra, n, Word::single(g), RatFunc::one()))
    }

    pub fn monomial(algebra: Algebra, n: u8, w: Word, c: RatFunc) -> Result<Self, NcError> {
        for g in &w.0 {
            check_gen(*g, n)?;
        }
        Ok(Self::monomial_unchecked(algebra, n, w, c))
    }

    fn monomial_unchecked(algebra: Algebra, n: u8, w: Word, c: RatFunc) -> Self {
        let mut p = Self::zero(algebra, n);
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial has no generator letters.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|w| w.degree() == 0)
    }

    /// The coefficient of the empty word.
    pub fn scalar_part(&self) -> RatFunc {
        self.terms.get(&Word::empty()).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Maximal word degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    fn check_compat(&self, other: &Self) -> Result<(), NcError> {
        if self.algebra != other.algebra {
            return Err(NcError::AlgebraMismatch);
        }
        if self.n != other.n {
            return Err(NcError::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// In-place accumulate of a single term.
    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(entry) => {
                *entry = entry.add(c);
                if entry.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NcError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            algebra: self.algebra,
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NcError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.algebra, self.n);
        }
        NCPoly {
            algebra: self.algebra,
            n: self.n,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k.mul(c))).collect(),
        }
    }

    /// Free product: concatenates words, no relations applied.
    pub fn mul(&self, other: &Self) -> Result<Self, NcError> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.algebra, self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Apply a scalar-valued map to each word and sum the results; used for
    /// algebra homomorphisms into scalars such as the counit.
    pub fn fold_words<F: FnMut(&Word) -> RatFunc>(&self, mut f: F) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (w, c) in &self.terms {
            acc = acc.add(&c.mul(&f(w)));
        }
        acc
    }

    /// Evaluate all coefficients at `q = 1`, dropping terms that vanish.
    /// Errors if any coefficient has a pole there.
    pub fn eval_q1(&self) -> Result<Vec<(Word, Rational)>, crate::scalars::ScalarError> {
        use num_traits::Zero;
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            let v = c.eval_q1()?;
            if !v.is_zero() {
                out.push((w.clone(), v));
            }
        }
        Ok(out)
    }
}

fn check_gen(g: Gen, n: u8) -> Result<(), NcError> {
    if g.row == 0 || g.col == 0 || g.row > n || g.col > n {
        return Err(NcError::IndexRange { gen: (g.row, g.col), n });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

fn fmt_word(algebra: Algebra, w: &Word, out: &mut String) {
    use core::fmt::Write;
    let mut first = true;
    for g in &w.0 {
        if !first {
            out.push('*');
        }
        let _ = write!(out, "{}[{},{}]", algebra.letter(), g.row, g.col);
        first = false;
    }
}

/// Coefficient classification for printing: single Laurent monomials attach
/// to the word bare (`q^-6*a[1,1]`), anything else is parenthesized.
fn coeff_pieces(c: &RatFunc) -> (bool, String) {
    use core::fmt::Write;
    use num_traits::One;
    if c.is_polynomial() {
        let entries: Vec<_> = c.numer().iter().collect();
        if entries.len() == 1 {
            let (e, k) = entries[0];
            let neg = k < &rat(0);
            let mag = if neg { -k.clone() } else { k.clone() };
            let mut s = String::new();
            if mag.is_one() && *e != 0 {
                if *e == 1 {
                    s.push('q');
                } else {
                    let _ = write!(s, "q^{}", e);
                }
            } else if *e == 0 {
                let _ = write!(s, "{}", crate::scalars::RatFunc::from_rational(mag.clone()));
            } else if *e == 1 {
                let _ = write!(s, "{}*q", RatFunc::from_rational(mag.clone()));
            } else {
                let _ = write!(s, "{}*q^{}", RatFunc::from_rational(mag.clone()), e);
            }
            return (neg, s);
        }
    }
    let mut s = String::new();
    let _ = write!(s, "({})", c);
    (false, s)
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (neg, cs) = coeff_pieces(c);
            let sep = if first {
                if neg { "-" } else { "" }
            } else if neg {
                " - "
            } else {
                " + "
            };
            write!(f, "{}", sep)?;
            if w.degree() == 0 {
                write!(f, "{}", cs)?;
            } else if cs == "1" {
                let mut s = String::new();
                fmt_word(self.algebra, w, &mut s);
                write!(f, "{}", s)?;
            } else {
                let mut s = String::new();
                fmt_word(self.algebra, w, &mut s);
                write!(f, "{}*{}", cs, s)?;
            }
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parse a polynomial expression.
///
/// Grammar (whitespace free between tokens is allowed anywhere):
///
/// ```text
/// expr   := ['-'] term (('+'|'-') term)*
/// term   := factor (('*'|'/') factor)*        -- '/' needs a scalar divisor
/// factor := atom ['^' int]                    -- '^' needs a scalar base
/// atom   := generator | 'q' | integer | rational | '(' expr ')'
/// generator := ('a'|'x') '[' int ',' int ']'
/// ```
///
/// The generator letter must match `algebra`; indices are validated against
/// `n`. Scalar-only input is accepted (e.g. `q^-2 - 1`).
pub fn parse(input: &str, algebra: Algebra, n: u8) -> Result<NCPoly, NcError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0, algebra, n };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    algebra: Algebra,
    n: u8,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> NcError {
        NcError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\n') | Some(b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, what: &str) -> Result<(), NcError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn integer(&mut self) -> Result<i64, NcError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are utf8");
        let v: i64 = s.parse().map_err(|_| self.err("integer literal too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<NCPoly, NcError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly, NcError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    if !f.is_scalar() {
                        return Err(NcError::Parse {
                            pos: at,
                            msg: "division is only defined by scalar expressions".to_string(),
                        });
                    }
                    let inv = f.scalar_part().inv().map_err(|_| NcError::Parse {
                        pos: at,
                        msg: "division by zero".to_string(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly, NcError> {
        self.skip_ws();
        let atom_pos = self.pos;
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if !atom.is_scalar() {
                return Err(NcError::Parse {
                    pos: atom_pos,
                    msg: "exponentiation is only defined for scalar expressions".to_string(),
                });
            }
            let e32: i32 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
            let v = atom.scalar_part().powi(e32).map_err(|_| NcError::Parse {
                pos: atom_pos,
                msg: "zero cannot be raised to a negative power".to_string(),
            })?;
            return Ok(NCPoly::scalar(self.algebra, self.n, v));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<NCPoly, NcError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                self.expect(b')', "expected ')'")?;
                Ok(e)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(NCPoly::scalar(self.algebra, self.n, RatFunc::q_pow(1)))
            }
            Some(b'a') | Some(b'x') => {
                let letter = self.bump().unwrap() as char;
                let expected = self.algebra.letter();
                if letter != expected {
                    self.pos -= 1;
                    return Err(self.err(match self.algebra {
                        Algebra::Rea => "generator letter 'x' in a REA expression",
                        Algebra::Frt => "generator letter 'a' in an FRT expression",
                    }));
                }
                self.skip_ws();
                self.expect(b'[', "expected '[' after generator letter")?;
                self.skip_ws();
                let row = self.integer()?;
                self.skip_ws();
                self.expect(b',', "expected ',' between generator indices")?;
                self.skip_ws();
                let col = self.integer()?;
                self.skip_ws();
                self.expect(b']', "expected ']' after generator indices")?;
                if !(1..=self.n as i64).contains(&row) || !(1..=self.n as i64).contains(&col) {
                    return Err(NcError::IndexRange {
                        gen: (row.clamp(0, 255) as u8, col.clamp(0, 255) as u8),
                        n: self.n,
                    });
                }
                NCPoly::gen(self.algebra, self.n, Gen::new(row as u8, col as u8))
            }
            Some(b'0'..=b'9') => {
                let v = self.integer()?;
                Ok(NCPoly::scalar(self.algebra, self.n, RatFunc::from_int(v)))
            }
            Some(_) => Err(self.err("expected a generator, scalar, or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Detect which algebra an expression's generators belong to, if any.
/// Returns `None` for scalar-only input, an error on mixed letters.
pub fn detect_algebra(input: &str) -> Result<Option<Algebra>, NcError> {
    let mut found: Option<Algebra> = None;
    let bytes = input.as_bytes();
    for (i, b) in bytes.iter().enumerate() {
        let alg = match b {
            b'a' => Algebra::Rea,
            b'x' => Algebra::Frt,
            _ => continue,
        };
        // Only count letters directly introducing an index block.
        let mut j = i + 1;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if bytes.get(j) != Some(&b'[') {
            continue;
        }
        match found {
            None => found = Some(alg),
            Some(prev) if prev != alg => {
                return Err(NcError::Parse {
                    pos: i,
                    msg: "mixed generator letters in one expression".to_string(),
                })
            }
            _ => {}
        }
    }
    Ok(found)
}
