use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::scalar::{pow, RationalAlgebra, Ring};
use crate::series::Series;
use crate::{QSeries, Rational};

/// Finite Laurent polynomial `sum c_e h^e` with rational coefficients.
///
/// Stored sparsely; no zero coefficient is ever kept, so the zero polynomial
/// is the empty map and derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `h^exp`.
    pub fn h_pow(exp: i64) -> Self {
        Self::monomial(exp, Rational::one())
    }

    pub fn h() -> Self {
        Self::h_pow(1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `h^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// Value at `h = 1`, i.e. the sum of the coefficients.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Exact value at a nonzero rational `h`.
    pub fn eval(&self, h: &Rational) -> Result<Rational> {
        if h.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                pow(h, e as u64)
            } else {
                pow(&h.recip(), e.unsigned_abs())
            };
            acc += c * p;
        }
        Ok(acc)
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::h_pow(0)
    }
}

impl Add for LaurentPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for LaurentPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for LaurentPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Ring for LaurentPoly {
    fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_i64(n))
    }
}

impl RationalAlgebra for LaurentPoly {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

impl From<Rational> for LaurentPoly {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical ascending-exponent text such as `-1/2*h^-1 + 3 - 2*h^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let hpart = match e {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{e}"),
            };
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (_, true) => f.write_str(&hpart)?,
                (_, false) => write!(f, "{}*{}", format_rational(&mag), hpart)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the canonical text produced by `Display`, and more loosely any
    /// sum of terms `c`, `c*h`, `h^e`, `c*h^e` separated by `+` / `-`.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = LaurentPoly::zero();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i == chars.len() {
            return Err(Error::parse(0, "empty Laurent polynomial"));
        }
        let mut first = true;
        while i < chars.len() {
            skip_ws(&mut i);
            let mut sign = 1i64;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
                skip_ws(&mut i);
            }
            if !first && i == chars.len() {
                return Err(Error::parse(i, "dangling operator"));
            }
            first = false;
            let start = i;
            while i < chars.len() && chars[i] != '+' && !(chars[i] == '-' && i > start && !is_exp_sign(&chars, i)) {
                i += 1;
            }
            let term: String = chars[start..i].iter().collect();
            let (c, e) = parse_term(term.trim(), start)?;
            out.add_term(e, c * Rational::from_i64(sign));
        }
        Ok(out)
    }
}

/// A `-` directly after `h^` belongs to the exponent.
fn is_exp_sign(chars: &[char], i: usize) -> bool {
    i > 0 && chars[i - 1] == '^'
}

fn parse_term(term: &str, pos: usize) -> Result<(Rational, i64)> {
    if term.is_empty() {
        return Err(Error::parse(pos, "empty term"));
    }
    let (coeff_txt, h_txt) = match term.split_once('*') {
        Some((c, h)) => (c.trim(), Some(h.trim())),
        None if term.starts_with('h') => ("1", Some(term)),
        None => (term, None),
    };
    let coeff = parse_rational(coeff_txt).map_err(|_| Error::parse(pos, format!("bad coefficient {coeff_txt:?}")))?;
    let exp = match h_txt {
        None => 0,
        Some("h") => 1,
        Some(h) => {
            let rest = h
                .strip_prefix("h^")
                .ok_or_else(|| Error::parse(pos, format!("expected h or h^e, got {h:?}")))?;
            rest.trim()
                .parse::<i64>()
                .map_err(|_| Error::parse(pos, format!("bad exponent {rest:?}")))?
        }
    };
    Ok((coeff, exp))
}

/// Substitutes the series `s` for `h`, truncated at `order`.
///
/// Negative powers of `h` need `s` to be invertible (nonzero constant term).
pub fn laurent_substitute(p: &LaurentPoly, s: &QSeries, order: usize) -> Result<QSeries> {
    let s = s.truncate(order);
    let mut acc = Series::zero(s.order());
    if p.is_zero() {
        return Ok(acc);
    }
    let inv = if p.min_exp().is_some_and(|e| e < 0) {
        Some(s.inverse()?)
    } else {
        None
    };
    for (e, c) in p.terms() {
        let power = if e >= 0 {
            s.pow(e as u64)
        } else {
            inv.as_ref().expect("inverse computed above").pow(e.unsigned_abs())
        };
        acc = &acc + &power.scale(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn lp(text: &str) -> LaurentPoly {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(LaurentPoly::h() * LaurentPoly::h_pow(-1), LaurentPoly::one());
        let one = LaurentPoly::one();
        let h = LaurentPoly::h();
        assert_eq!(
            (one.clone() - h.clone()) * (one.clone() + h.clone()),
            one - h.clone() * h
        );
        let sum = LaurentPoly::h_pow(2) + (-LaurentPoly::h_pow(2));
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn display_and_parse() {
        let p = LaurentPoly::monomial(-1, rat(-1, 2))
            + LaurentPoly::constant(rat(3, 1))
            + LaurentPoly::monomial(2, rat(-2, 1))
            + LaurentPoly::h();
        assert_eq!(p.to_string(), "-1/2*h^-1 + 3 + h - 2*h^2");
        assert_eq!(lp(&p.to_string()), p);
        assert_eq!(lp("1 - h^2"), LaurentPoly::one() - LaurentPoly::h_pow(2));
        assert_eq!(lp("-h"), -LaurentPoly::h());
        assert_eq!(lp("0"), LaurentPoly::zero());
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("h^x".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn evaluation() {
        let p = lp("h^-1 + 2 + 3*h");
        assert_eq!(p.at_one(), rat(6, 1));
        assert_eq!(p.eval(&rat(1, 2)).unwrap(), rat(2 + 2, 1) + rat(3, 2));
        assert_eq!(p.eval(&rat(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitution_examples() {
        let one_minus_q = QSeries::from_ints(&[1, -1], 6);
        let got = laurent_substitute(&LaurentPoly::h(), &one_minus_q, 6).unwrap();
        assert_eq!(got, QSeries::from_ints(&[1, -1], 6));
        let got = laurent_substitute(&LaurentPoly::h_pow(-1), &one_minus_q, 4).unwrap();
        assert_eq!(got, QSeries::from_ints(&[1, 1, 1, 1, 1], 4));
        let c = LaurentPoly::constant(rat(3, 2));
        let any = QSeries::from_ints(&[0, 5, 7], 3);
        let got = laurent_substitute(&c, &any, 3).unwrap();
        assert_eq!(got.coeff(0), rat(3, 2));
        assert!((1..=3).all(|n| got.coeff(n).is_zero()));
    }

    #[test]
    fn substitution_needs_invertible_series() {
        let q = QSeries::from_ints(&[0, 1], 5);
        assert_eq!(
            laurent_substitute(&LaurentPoly::h_pow(-2), &q, 5),
            Err(Error::NotInvertible)
        );
        assert!(laurent_substitute(&LaurentPoly::h_pow(2), &q, 5).is_ok());
    }
}
