//! Words over the alphabets used by the algebra, and formal linear
//! combinations of them.
//!
//! A single [`Composition`] type represents both `z_{n1} ... z_{nk}` (the
//! integer-letter alphabet) and the normal form `p^{n1} y ... p^{nk} y` of a
//! word over `{p, d, y}` modulo `dp = pd = 1`. The map between the two
//! readings is the identity on tuples, see [`r_map`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Signed;
use serde_json::{json, Value};

use crate::coeffs::{format_rational, parse_rational, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::Rational;

/// Common interface of the word types stored in a [`LinComb`].
pub trait Word: Clone + Ord + fmt::Debug {
    fn empty() -> Self;
    fn is_empty(&self) -> bool;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    fn fmt_text(&self) -> String;
}

/// Compare by length first, then lexicographically descending.
fn canonical_cmp<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| b.cmp(a))
}

fn json_int_array(v: &Value) -> Result<Vec<i64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::parse(0, format!("expected an array of integers, got {v}")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_i64()
                .ok_or_else(|| Error::parse(i, format!("expected integer, got {x}")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Compositions
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(pub Vec<i64>);

impl Composition {
    pub fn new(exps: impl Into<Vec<i64>>) -> Self {
        Composition(exps.into())
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// Letter count of the normal form `p^{n1} y ... p^{nk} y`.
    pub fn length(&self) -> usize {
        self.0.len() + self.0.iter().map(|n| n.unsigned_abs() as usize).sum::<usize>()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Sum of the positive parts of the exponents.
    pub fn weight_plus(&self) -> i64 {
        self.0.iter().map(|&n| n.max(0)).sum()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    /// The word without its first letter.
    pub fn tail(&self) -> Composition {
        Composition(self.0.get(1..).unwrap_or_default().to_vec())
    }

    /// `z_n` followed by `self`.
    pub fn prepend(&self, n: i64) -> Composition {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(n);
        v.extend_from_slice(&self.0);
        Composition(v)
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// Expansion into letters, `p^n` for `n > 0` and `d^{|n|}` for `n < 0`.
    pub fn to_letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.length());
        for &n in &self.0 {
            let l = if n >= 0 { Letter::P } else { Letter::D };
            out.extend(std::iter::repeat_n(l, n.unsigned_abs() as usize));
            out.push(Letter::Y);
        }
        out
    }

    /// `p^{n1} y ... p^{nk} y` text with letters separated by spaces.
    pub fn format_w(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for &n in &self.0 {
            match n {
                0 => {}
                1 => parts.push("p".to_string()),
                -1 => parts.push("d".to_string()),
                _ => parts.push(format!("p^{n}")),
            }
            parts.push("y".into());
        }
        parts.join(" ")
    }

    /// Compact form of [`Composition::format_w`] without separators.
    pub fn format_w_compact(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for &n in &self.0 {
            match n {
                0 => {}
                1 => s.push('p'),
                -1 => s.push('d'),
                _ => s.push_str(&format!("p^{n}")),
            }
            s.push('y');
        }
        s
    }

    pub fn format_ytilde(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(i64::to_string).collect();
        format!("z({})", inner.join(","))
    }
}

impl From<Vec<i64>> for Composition {
    fn from(v: Vec<i64>) -> Self {
        Composition(v)
    }
}

impl<const N: usize> From<[i64; N]> for Composition {
    fn from(v: [i64; N]) -> Self {
        Composition(v.to_vec())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_ytilde())
    }
}

impl Word for Composition {
    fn empty() -> Self {
        Composition(Vec::new())
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    fn to_json(&self) -> Value {
        json!(self.0)
    }
    fn from_json(v: &Value) -> Result<Self> {
        json_int_array(v).map(Composition)
    }
    fn fmt_text(&self) -> String {
        self.format_ytilde()
    }
}

/// `(depth, length, weight)` of a composition.
pub fn word_stats(w: &Composition) -> (usize, usize, i64) {
    (w.depth(), w.length(), w.weight())
}

/// The bijection `z_n -> p^n y`; a relabelling on exponent tuples.
pub fn r_map(u: &Composition) -> Composition {
    u.clone()
}

// ---------------------------------------------------------------------------
// Letters p, d, y
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    P,
    D,
    Y,
}

/// Reduces a letter sequence modulo `dp = pd = 1` to its normal form.
pub fn normalize_letters(letters: &[Letter]) -> Result<Composition> {
    let mut exps = Vec::new();
    let mut pending = 0i64;
    let mut open = false;
    for l in letters {
        match l {
            Letter::P => {
                pending += 1;
                open = true;
            }
            Letter::D => {
                pending -= 1;
                open = true;
            }
            Letter::Y => {
                exps.push(pending);
                pending = 0;
                open = false;
            }
        }
    }
    if open {
        let text: String = letters
            .iter()
            .map(|l| match l {
                Letter::P => 'p',
                Letter::D => 'd',
                Letter::Y => 'y',
            })
            .collect();
        return Err(Error::NotWWord(format!("{text:?} does not end with y after cancellation")));
    }
    Ok(Composition(exps))
}

// ---------------------------------------------------------------------------
// Words over {x0, x1} and over {y1, y2, ...}
// ---------------------------------------------------------------------------

/// Word over `{x0, x1}`, letters stored as 0 and 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XWord(pub Vec<u8>);

impl XWord {
    pub fn new(letters: impl Into<Vec<u8>>) -> Self {
        let v = letters.into();
        assert!(v.iter().all(|&b| b <= 1), "x-letters are 0 or 1");
        XWord(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for XWord {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for XWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_text())
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_text())
    }
}

impl Word for XWord {
    fn empty() -> Self {
        XWord(Vec::new())
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    fn to_json(&self) -> Value {
        json!(self.0)
    }
    fn from_json(v: &Value) -> Result<Self> {
        let raw = json_int_array(v)?;
        if let Some(i) = raw.iter().position(|&b| b != 0 && b != 1) {
            return Err(Error::parse(i, "x-letters must be 0 or 1"));
        }
        Ok(XWord(raw.into_iter().map(|b| b as u8).collect()))
    }
    fn fmt_text(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|b| format!("x{b}")).collect()
    }
}

/// Word over `{y1, y2, ...}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct YWord(pub Vec<i64>);

impl YWord {
    pub fn new(letters: impl Into<Vec<i64>>) -> Result<Self> {
        let v = letters.into();
        if let Some(i) = v.iter().position(|&n| n < 1) {
            return Err(Error::precondition(format!(
                "y-letters are positive, entry {i} is {}",
                v[i]
            )));
        }
        Ok(YWord(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }
}

impl Ord for YWord {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for YWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_text())
    }
}

impl fmt::Display for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_text())
    }
}

impl Word for YWord {
    fn empty() -> Self {
        YWord(Vec::new())
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    fn to_json(&self) -> Value {
        json!(self.0)
    }
    fn from_json(v: &Value) -> Result<Self> {
        YWord::new(json_int_array(v)?)
    }
    fn fmt_text(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(i64::to_string).collect();
        format!("y({})", inner.join(","))
    }
}

/// `y_n -> x0^{n-1} x1`, extended multiplicatively.
pub fn s_map(u: &YWord) -> XWord {
    let mut out = Vec::new();
    for &n in &u.0 {
        out.extend(std::iter::repeat_n(0u8, (n - 1) as usize));
        out.push(1);
    }
    XWord(out)
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WordKind {
    W,
    Ytilde,
    X,
    Y,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyWord {
    W(Composition),
    Ytilde(Composition),
    X(XWord),
    Y(YWord),
}

pub fn parse_word(text: &str, kind: WordKind) -> Result<AnyWord> {
    Ok(match kind {
        WordKind::W => AnyWord::W(parse_w(text)?),
        WordKind::Ytilde => AnyWord::Ytilde(parse_ytilde(text)?),
        WordKind::X => AnyWord::X(parse_x(text)?),
        WordKind::Y => AnyWord::Y(parse_y(text)?),
    })
}

/// Parses `name(n1,n2,...)`, returning the signed entries.
fn parse_tuple(text: &str, name: char) -> Result<Vec<i64>> {
    let s = text.trim();
    let lead = text.len() - text.trim_start().len();
    let body = s
        .strip_prefix(name)
        .ok_or_else(|| Error::parse(lead, format!("expected `{name}(`")))?;
    let body = body
        .strip_prefix('(')
        .ok_or_else(|| Error::parse(lead + 1, "expected `(`"))?;
    let inner = body
        .strip_suffix(')')
        .ok_or_else(|| Error::parse(lead + s.len(), "expected closing `)`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = lead + 2;
    for part in inner.split(',') {
        let t = part.trim();
        if t.is_empty() {
            return Err(Error::parse(pos, "empty entry"));
        }
        let n = t
            .parse::<i64>()
            .map_err(|_| Error::parse(pos, format!("bad integer {t:?}")))?;
        out.push(n);
        pos += part.len() + 1;
    }
    Ok(out)
}

pub fn parse_ytilde(text: &str) -> Result<Composition> {
    parse_tuple(text, 'z').map(Composition)
}

pub fn parse_y(text: &str) -> Result<YWord> {
    let v = parse_tuple(text, 'y')?;
    if let Some(i) = v.iter().position(|&n| n < 1) {
        return Err(Error::parse(i, "y-letters must be positive"));
    }
    Ok(YWord(v))
}

pub fn parse_x(text: &str) -> Result<XWord> {
    let s: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i].is_whitespace() {
            i += 1;
            continue;
        }
        match (s.get(i), s.get(i + 1)) {
            (Some('x'), Some('0')) => out.push(0),
            (Some('x'), Some('1')) => out.push(1),
            _ => return Err(Error::parse(i, "expected x0 or x1")),
        }
        i += 2;
    }
    Ok(XWord(out))
}

/// Parses a word over `{p, d, y}`. Tokens are `p`, `d`, `y`, `p^k` and
/// `d^k` (signed `k`), with optional whitespace; `1` or an empty string
/// denotes the empty word.
pub fn parse_w(text: &str) -> Result<Composition> {
    let s: Vec<char> = text.chars().collect();
    if text.trim() == "1" {
        return Ok(Composition::empty());
    }
    let mut letters = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let c = s[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        i += 1;
        let base = match c {
            'p' => Letter::P,
            'd' => Letter::D,
            'y' => {
                letters.push(Letter::Y);
                continue;
            }
            _ => return Err(Error::parse(start, format!("unexpected character {c:?}"))),
        };
        let mut k = 1i64;
        if s.get(i) == Some(&'^') {
            i += 1;
            let num_start = i;
            if matches!(s.get(i), Some('-') | Some('+')) {
                i += 1;
            }
            while s.get(i).is_some_and(char::is_ascii_digit) {
                i += 1;
            }
            let digits: String = s[num_start..i].iter().collect();
            k = digits
                .parse()
                .map_err(|_| Error::parse(num_start, format!("bad exponent {digits:?}")))?;
        }
        let (fwd, back) = if base == Letter::P {
            (Letter::P, Letter::D)
        } else {
            (Letter::D, Letter::P)
        };
        let l = if k >= 0 { fwd } else { back };
        letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
    }
    normalize_letters(&letters).map_err(|e| match e {
        Error::NotWWord(m) => Error::parse(s.len(), m),
        other => other,
    })
}

// ---------------------------------------------------------------------------
// Coefficients with a text form
// ---------------------------------------------------------------------------

/// Coefficient rings that can be written to and read from JSON.
pub trait TextCoeff: Ring {
    const RING: &'static str;
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Result<Self>;
    /// Whether the coefficient needs parentheses when followed by a word.
    fn is_compound(&self) -> bool;
    /// Strictly negative leading sign (used for pretty `a - b` output).
    fn is_negative(&self) -> bool;
}

impl TextCoeff for Rational {
    const RING: &'static str = "Q";
    fn to_text(&self) -> String {
        format_rational(self)
    }
    fn from_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn is_compound(&self) -> bool {
        false
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl TextCoeff for LaurentPoly {
    const RING: &'static str = "Q[h,h^-1]";
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn from_text(s: &str) -> Result<Self> {
        s.parse()
    }
    fn is_compound(&self) -> bool {
        self.len() > 1
    }
    fn is_negative(&self) -> bool {
        self.len() == 1 && self.terms().next().is_some_and(|(_, c)| Signed::is_negative(c))
    }
}

// ---------------------------------------------------------------------------
// Linear combinations
// ---------------------------------------------------------------------------

/// Finite formal linear combination of words, zero coefficients pruned and
/// terms kept in canonical word order.
#[derive(Clone, PartialEq)]
pub struct LinComb<W, R> {
    terms: BTreeMap<W, R>,
}

impl<W: Word, R: Ring> Default for LinComb<W, R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<W: Word, R: Ring> LinComb<W, R> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: W) -> Self {
        Self::term(w, R::one())
    }

    pub fn term(w: W, c: R) -> Self {
        let mut l = Self::zero();
        l.add_term(w, c);
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (W, R)>) -> Self {
        let mut l = Self::zero();
        for (w, c) in terms {
            l.add_term(w, c);
        }
        l
    }

    pub fn add_term(&mut self, w: W, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d.clone() * c.clone());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&W, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &W) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, d)| (w.clone(), d.clone() * c.clone())))
    }

    pub fn map_coeffs<T: Ring>(&self, f: impl Fn(&R) -> T) -> LinComb<W, T> {
        LinComb::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn map_words(&self, f: impl Fn(&W) -> W) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Applies a linear map given on basis words.
    pub fn apply_linear(&self, f: impl Fn(&W) -> Self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }
}

impl<W: Word, R: Ring> Add for LinComb<W, R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<W: Word, R: Ring> Sub for LinComb<W, R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<W: Word, R: Ring> Neg for LinComb<W, R> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<W: Word, R: TextCoeff> LinComb<W, R> {
    /// Human-readable text using a custom word formatter.
    pub fn display_with(&self, fmt_word: impl Fn(&W) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            out.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let word = fmt_word(w);
            if mag.is_one() {
                out.push_str(&word);
            } else if mag.is_compound() {
                out.push_str(&format!("({})*{}", mag.to_text(), word));
            } else {
                out.push_str(&format!("{}*{}", mag.to_text(), word));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({"word": w.to_json(), "coeff": c.to_text()}))
            .collect();
        json!({"ring": R::RING, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = v
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse(0, "missing \"ring\""))?;
        if ring != R::RING {
            return Err(Error::parse(0, format!("expected ring {:?}, got {ring:?}", R::RING)));
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse(0, "missing \"terms\""))?;
        let mut out = Self::zero();
        for (i, t) in terms.iter().enumerate() {
            let w = W::from_json(t.get("word").unwrap_or(&Value::Null))?;
            let c = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::parse(i, "term without string \"coeff\""))?;
            out.add_term(w, R::from_text(c)?);
        }
        Ok(out)
    }
}

impl<W: Word, R: TextCoeff> fmt::Display for LinComb<W, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(W::fmt_text))
    }
}

impl<W: Word, R: TextCoeff> fmt::Debug for LinComb<W, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<W: Word> LinComb<W, Rational> {
    /// Embeds rational coefficients into the Laurent ring.
    pub fn to_laurent(&self) -> LinComb<W, LaurentPoly> {
        self.map_coeffs(|c| LaurentPoly::constant(c.clone()))
    }
}

impl<W: Word> LinComb<W, LaurentPoly> {
    /// Specialisation `h = 1`.
    pub fn at_h_one(&self) -> LinComb<W, Rational> {
        self.map_coeffs(LaurentPoly::at_one)
    }
}

/// All compositions of the given depth with entries in `lo..=hi`.
pub fn compositions_of_depth(depth: usize, lo: i64, hi: i64) -> Vec<Composition> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |n| {
                    let mut q = p.clone();
                    q.push(n);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Composition).collect()
}

/// All compositions of depth `1..=max_depth` with entries in `lo..=hi`,
/// optionally including the empty word.
pub fn desk_set(max_depth: usize, lo: i64, hi: i64, with_empty: bool) -> Vec<Composition> {
    let start = if with_empty { 0 } else { 1 };
    (start..=max_depth)
        .flat_map(|d| compositions_of_depth(d, lo, hi))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use Letter::{D, P, Y};

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_letters(&[P, D, P, Y]).unwrap(), Composition::from([1]));
        assert_eq!(normalize_letters(&[D, D, Y, P, Y]).unwrap(), Composition::from([-2, 1]));
        assert!(matches!(normalize_letters(&[P, D]), Err(Error::NotWWord(_))));
        assert!(matches!(normalize_letters(&[P, Y, P]), Err(Error::NotWWord(_))));
    }

    #[test]
    fn not_a_w_word_after_cancellation() {
        // trailing letters after the last y are rejected even when they cancel
        assert!(normalize_letters(&[P]).is_err());
        assert!(normalize_letters(&[Y, D, P]).is_err());
        assert_eq!(normalize_letters(&[D, P, Y]).unwrap(), Composition::from([0]));
        assert!(parse_w("p y d").is_err());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(word_stats(&[2, 1].into()), (2, 5, 3));
        assert_eq!(word_stats(&Composition::empty()), (0, 0, 0));
        assert_eq!(word_stats(&[-2, 0, 3].into()), (3, 8, 1));
    }

    #[test]
    fn s_map_examples() {
        assert_eq!(s_map(&YWord(vec![2, 1])), XWord(vec![0, 1, 1]));
        assert_eq!(s_map(&YWord(vec![1])), XWord(vec![1]));
        assert_eq!(s_map(&YWord(vec![])), XWord(vec![]));
    }

    #[test]
    fn r_map_is_relabelling() {
        let w = Composition::from([2, 1]);
        assert_eq!(r_map(&w), w);
        assert_eq!(r_map(&[0].into()).format_w(), "y");
        assert!(r_map(&Composition::empty()).is_empty());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_ytilde("z(2,1)").unwrap(), Composition::from([2, 1]));
        assert_eq!(parse_w("p^-2 y p y").unwrap(), Composition::from([-2, 1]));
        assert!(matches!(parse_ytilde("z(2,)"), Err(Error::Parse { .. })));
        assert_eq!(parse_w("pypy").unwrap(), Composition::from([1, 1]));
        assert_eq!(parse_w("d^2 y").unwrap(), Composition::from([-2]));
        assert_eq!(parse_w("1").unwrap(), Composition::empty());
        assert_eq!(parse_x("x0x1 x1").unwrap(), XWord(vec![0, 1, 1]));
        assert_eq!(parse_y("y(2,1)").unwrap(), YWord(vec![2, 1]));
        assert!(parse_y("y(0)").is_err());
        assert_eq!(parse_ytilde("z()").unwrap(), Composition::empty());
    }

    #[test]
    fn format_parse_round_trip() {
        for w in desk_set(3, -3, 3, true) {
            assert_eq!(parse_w(&w.format_w()).unwrap(), w);
            assert_eq!(parse_w(&w.format_w_compact()).unwrap(), w);
            assert_eq!(parse_ytilde(&w.format_ytilde()).unwrap(), w);
            assert_eq!(normalize_letters(&w.to_letters()).unwrap(), w);
        }
    }

    #[test]
    fn lincomb_order_and_text() {
        let l: LinComb<Composition, Rational> = LinComb::from_terms([
            (Composition::from([1, 0]), rat(-1, 1)),
            (Composition::from([1, 1]), rat(2, 1)),
            (Composition::from([3]), rat(1, 2)),
        ]);
        assert_eq!(l.to_string(), "1/2*z(3) + 2*z(1,1) - z(1,0)");
        assert_eq!(l.display_with(Composition::format_w_compact), "1/2*p^3y + 2*pypy - pyy");
        let back = LinComb::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
        assert_eq!(
            l.to_json().to_string(),
            r#"{"ring":"Q","terms":[{"word":[3],"coeff":"1/2"},{"word":[1,1],"coeff":"2"},{"word":[1,0],"coeff":"-1"}]}"#
        );
    }

    #[test]
    fn lincomb_prunes_zeros() {
        let mut l: LinComb<Composition, Rational> = LinComb::word([2].into());
        l.add_term([2].into(), rat(-1, 1));
        assert!(l.is_zero());
        assert_eq!(l.to_string(), "0");
    }

    #[test]
    fn s_map_injective_small() {
        let mut seen = std::collections::HashSet::new();
        let mut words = vec![Vec::<i64>::new()];
        let mut all = vec![];
        for _ in 0..6 {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (1..=5).map(move |n| {
                        let mut v = w.clone();
                        v.push(n);
                        v
                    })
                })
                .collect();
            all.extend(words.iter().cloned());
        }
        for w in all {
            assert!(seen.insert(s_map(&YWord(w))));
        }
    }
}
