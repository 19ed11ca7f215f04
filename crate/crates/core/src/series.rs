//! Truncated univariate power series in `q`.
//!
//! A series carries its truncation order `N` and exactly `N + 1` dense
//! coefficients. Binary operations return the smaller of the two orders and
//! never extend precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeffs::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::Rational;

#[derive(Clone)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> Series<S> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// `c q^exp`, or zero if `exp` exceeds the order.
    pub fn monomial(exp: usize, c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn from_coeffs(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| S::from_i64(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> S {
        self.coeffs.get(n).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Restricts to a lower order (never extends).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// First degree, up to the common order, where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Multiplication by `q^k`, dropping what falls beyond the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for i in k..=self.order() {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// The derivation `q d/dq`: `c_n q^n -> n c_n q^n`.
    pub fn delta(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.clone() * S::from_i64(n as i64))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// In place multiplication by `(1 - q^m)^{-1}` (stride-`m` prefix sum).
    pub fn div_one_minus_qm(&mut self, m: usize) {
        assert!(m >= 1, "(1 - q^0) is not invertible");
        for i in m..self.coeffs.len() {
            let prev = self.coeffs[i - m].clone();
            self.coeffs[i] = self.coeffs[i].clone() + prev;
        }
    }

    /// In place multiplication by `(1 - q^m)`.
    pub fn mul_one_minus_qm(&mut self, m: usize) {
        for i in (m..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - m].clone();
            self.coeffs[i] = self.coeffs[i].clone() - prev;
        }
    }

    /// In place multiplication by `(1 - q^m)^{-n}` for any integer `n`.
    pub fn mul_factor(&mut self, m: usize, n: i64) {
        if n >= 0 {
            for _ in 0..n {
                self.div_one_minus_qm(m);
            }
        } else {
            for _ in 0..n.unsigned_abs() {
                self.mul_one_minus_qm(m);
            }
        }
    }

    /// Applies a ring map coefficient-wise.
    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Series<T> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval_at(&self, q0: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * q0.clone() + c.clone())
    }
}

impl<S: Scalar> Series<S> {
    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = S::one() / c0;
        let n = self.order();
        let mut out = vec![S::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -(acc * inv0.clone());
        }
        Ok(Self { coeffs: out })
    }
}

/// `(1 - q^m)^{-n}` truncated at `order`: the binomial series for `n >= 0`,
/// the polynomial `(1 - q^m)^{|n|}` for `n < 0`.
pub fn expand_factor<S: Ring>(m: i64, n: i64, order: usize) -> Result<Series<S>> {
    if m < 1 {
        return Err(Error::precondition(format!("factor (1 - q^{m}) needs m >= 1")));
    }
    let mut s = Series::one(order);
    s.mul_factor(m as usize, n);
    Ok(s)
}

/// `(1 - q)^w` for any integer `w`.
pub fn pow_one_minus_q<S: Ring>(w: i64, order: usize) -> Series<S> {
    let mut s = Series::one(order);
    s.mul_factor(1, -w);
    s
}

impl<S: Ring> PartialEq for Series<S> {
    /// Equality up to the smaller of the two truncation orders.
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl<'a, S: Ring> Add<&'a Series<S>> for &'a Series<S> {
    type Output = Series<S>;
    fn add(self, rhs: &Series<S>) -> Series<S> {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        }
    }
}

impl<'a, S: Ring> Sub<&'a Series<S>> for &'a Series<S> {
    type Output = Series<S>;
    fn sub(self, rhs: &Series<S>) -> Series<S> {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
                .collect(),
        }
    }
}

impl<'a, S: Ring> Mul<&'a Series<S>> for &'a Series<S> {
    type Output = Series<S>;
    fn mul(self, rhs: &Series<S>) -> Series<S> {
        let n = self.order().min(rhs.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }
}

impl<S: Ring> Add for Series<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Ring> Sub for Series<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Ring> Mul for Series<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<S: Ring> Neg for Series<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Series {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<S: Ring> fmt::Debug for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(order {}, {:?})", self.order(), self.coeffs)
    }
}

impl fmt::Display for Series<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (wrote, neg) {
                (false, true) => f.write_str("-")?,
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, false) => {}
            }
            let qpart = match n {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{n}"),
            };
            if n == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&qpart)?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), qpart)?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    var: String,
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Series<Rational> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        SeriesJson {
            var: "q".into(),
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Series<Rational> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(de)?;
        if raw.var != "q" {
            return Err(D::Error::custom(format!("unexpected variable {:?}", raw.var)));
        }
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Series { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use crate::QSeries;

    fn s(c: &[i64], order: usize) -> QSeries {
        QSeries::from_ints(c, order)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&s(&[0, 1], 5) * &s(&[0, 1], 5), s(&[0, 0, 1], 5));
        assert_eq!(&s(&[1, 1], 3) * &s(&[1, -1], 3), s(&[1, 0, -1], 3));
        assert_eq!(&s(&[0, 1, 1], 2) + &s(&[0, 1, 1], 2), s(&[0, 2, 2], 2));
        let mixed = &s(&[1, 2, 3, 4], 3) + &s(&[1], 1);
        assert_eq!(mixed.order(), 1);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(s(&[0, 0, 1], 4).delta(), s(&[0, 0, 2], 4));
        assert!(s(&[5], 4).delta().is_zero());
        assert_eq!(s(&[0, 1, 3, 4], 3).delta(), s(&[0, 1, 6, 12], 3));
    }

    #[test]
    fn factor_examples() {
        let f: QSeries = expand_factor(1, 2, 3).unwrap();
        assert_eq!(f, s(&[1, 2, 3, 4], 3));
        let f: QSeries = expand_factor(2, -1, 4).unwrap();
        assert_eq!(f, s(&[1, 0, -1, 0, 0], 4));
        let f: QSeries = expand_factor(1, 0, 4).unwrap();
        assert_eq!(f, QSeries::one(4));
        assert!(expand_factor::<Rational>(0, 1, 4).is_err());
    }

    #[test]
    fn one_minus_q_powers() {
        assert_eq!(pow_one_minus_q::<Rational>(2, 3), s(&[1, -2, 1, 0], 3));
        assert_eq!(pow_one_minus_q::<Rational>(-1, 3), s(&[1, 1, 1, 1], 3));
        assert_eq!(pow_one_minus_q::<Rational>(0, 3), QSeries::one(3));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(s(&[1, 1, 1], 2).eval_at(&rat(1, 2)), rat(7, 4));
        assert_eq!(QSeries::zero(6).eval_at(&rat(3, 1)), rat(0, 1));
        assert_eq!(s(&[0, 1], 1).eval_at(&rat(2, 3)), rat(2, 3));
    }

    #[test]
    fn inverse_and_pow() {
        let g = s(&[1, -1], 6);
        assert_eq!(g.inverse().unwrap(), s(&[1, 1, 1, 1, 1, 1, 1], 6));
        assert_eq!(s(&[0, 1], 6).inverse().unwrap_err(), Error::NotInvertible);
        assert_eq!(g.pow(3), s(&[1, -3, 3, -1], 6));
        assert_eq!(g.pow(0), QSeries::one(6));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_string(&s(&[0, 1, 3], 2)).unwrap();
        assert_eq!(v, r#"{"var":"q","order":2,"coeffs":["0","1","3"]}"#);
        let back: QSeries = serde_json::from_str(&v).unwrap();
        assert_eq!(back, s(&[0, 1, 3], 2));
        assert!(serde_json::from_str::<QSeries>(r#"{"var":"q","order":3,"coeffs":["0"]}"#).is_err());
    }

    #[test]
    fn display_text() {
        assert_eq!(s(&[0, 1, -2], 2).to_string(), "q - 2*q^2 + O(q^3)");
        assert_eq!(QSeries::zero(1).to_string(), "0 + O(q^2)");
    }
}
