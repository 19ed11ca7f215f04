//! The algebra `t Q[[t, q]]` of bivariate series under total-degree
//! truncation, with q-dilation, q-summation, q-difference and the Jackson
//! integral.
//!
//! A [`BiSeries`] of order `N` keeps the coefficients of `t^i q^j` for
//! `i + j <= N`. Every operator used by the evaluation pipeline keeps or
//! raises `i + j`, so setting `t = q` afterwards is exact to order `N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeffs::format_rational;
use crate::error::{Error, Result};
use crate::scalar::Ring;
use crate::series::Series;
use crate::words::Composition;
use crate::Rational;

/// Triangular array `rows[i][j]`, `i + j <= order`.
#[derive(Clone, PartialEq)]
pub struct BiSeries<S> {
    order: usize,
    rows: Vec<Vec<S>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x = 1/t`; not a power series.
    X,
    /// `y = 1/(1 - t)`; has a constant term, so lies outside the algebra.
    Y,
    /// `ybar = t/(1 - t)`.
    Ybar,
}

impl<S: Ring> BiSeries<S> {
    pub fn zero(order: usize) -> Self {
        BiSeries {
            order,
            rows: (0..=order).map(|i| vec![S::zero(); order - i + 1]).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 0, S::one(), order)
    }

    /// `c t^i q^j`, or zero beyond the truncation.
    pub fn monomial(i: usize, j: usize, c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(i, j, c);
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        if i + j > self.order {
            return S::zero();
        }
        self.rows[i][j].clone()
    }

    /// Sets a coefficient; silently ignored beyond the truncation.
    pub fn set(&mut self, i: usize, j: usize, c: S) {
        if i + j <= self.order {
            self.rows[i][j] = c;
        }
    }

    /// Nonzero terms in `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    /// Whether the series has no `t^0` terms.
    pub fn in_algebra(&self) -> bool {
        self.rows[0].iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order);
        BiSeries {
            order: n,
            rows: (0..=n).map(|i| self.rows[i][..=n - i].to_vec()).collect(),
        }
    }

    fn require_algebra(&self, what: &str) -> Result<()> {
        if let Some(j) = self.rows[0].iter().position(|c| !c.is_zero()) {
            return Err(Error::precondition(format!(
                "{what} needs a series without t^0 terms; found t^0 q^{j}"
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &S) -> Self {
        BiSeries {
            order: self.order,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
                .collect(),
        }
    }

    /// `E_q[f](t) = f(qt)`: `t^i q^j -> t^i q^{i+j}`.
    pub fn apply_eq(&self) -> Result<Self> {
        self.require_algebra("E_q")?;
        Ok(self.dilate())
    }

    fn dilate(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i + j + i <= self.order {
                    out.rows[i][j + i] = c.clone();
                }
            }
        }
        out
    }

    /// `P_q`: each monomial `t^i q^j` becomes `t^i q^j / (1 - q^i)`.
    fn sum_once(&mut self) {
        for i in 1..self.rows.len() {
            let row = &mut self.rows[i];
            for j in i..row.len() {
                let prev = row[j - i].clone();
                row[j] = row[j].clone() + prev;
            }
        }
    }

    /// `D_q = I - E_q`.
    fn difference_once(&mut self) {
        for i in 1..self.rows.len() {
            let row = &mut self.rows[i];
            for j in (i..row.len()).rev() {
                let prev = row[j - i].clone();
                row[j] = row[j].clone() - prev;
            }
        }
    }

    /// `P_q^n` for `n > 0`, `D_q^{|n|}` for `n < 0`, identity for `n = 0`.
    pub fn apply_pq_pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(self.clone());
        }
        self.require_algebra(if n > 0 { "P_q" } else { "D_q" })?;
        let mut out = self.clone();
        out.apply_pq_pow_unchecked(n);
        Ok(out)
    }

    fn apply_pq_pow_unchecked(&mut self, n: i64) {
        for _ in 0..n.unsigned_abs() {
            if n > 0 {
                self.sum_once();
            } else {
                self.difference_once();
            }
        }
    }

    pub fn apply_pq(&self) -> Result<Self> {
        self.apply_pq_pow(1)
    }

    pub fn apply_dq(&self) -> Result<Self> {
        self.apply_pq_pow(-1)
    }

    /// Multiplication by `t`.
    pub fn mul_t(&self) -> Self {
        let mut out = Self::zero(self.order);
        for i in 1..=self.order {
            out.rows[i].clone_from_slice(&self.rows[i - 1][..=self.order - i]);
        }
        out
    }

    /// Multiplication by `1 - q`.
    pub fn mul_one_minus_q(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            for j in (1..row.len()).rev() {
                let prev = row[j - 1].clone();
                row[j] = row[j].clone() - prev;
            }
        }
        out
    }

    /// Multiplication by `ybar = t + t^2 + ...` (prefix sums along `t`).
    pub fn mul_ybar(&self) -> Self {
        let mut out = Self::zero(self.order);
        for i in 1..=self.order {
            for j in 0..=self.order - i {
                out.rows[i][j] = out.rows[i - 1].get(j).cloned().unwrap_or_else(S::zero)
                    + self.rows[i - 1][j].clone();
            }
        }
        out
    }

    /// The Jackson integral `J[f] = (1 - q) P_q[t f]`.
    pub fn apply_j(&self) -> Result<Self> {
        self.require_algebra("J")?;
        let mut g = self.mul_t();
        g.sum_once();
        Ok(g.mul_one_minus_q())
    }

    /// Sets `t = q`: `t^i q^j -> q^{i+j}`.
    pub fn subst_diag(&self) -> Series<S> {
        let mut coeffs = vec![S::zero(); self.order + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + c.clone();
            }
        }
        Series::from_coeffs(coeffs, self.order)
    }
}

impl BiSeries<Rational> {
    /// Sorted `(i,j): c` lines of the nonzero terms.
    pub fn debug_lines(&self) -> Vec<String> {
        self.terms()
            .map(|(i, j, c)| format!("({i},{j}): {}", format_rational(c)))
            .collect()
    }
}

/// The generator functions; `x` has no power-series expansion.
pub fn gen_function<S: Ring>(g: Generator, order: usize) -> Result<BiSeries<S>> {
    let start = match g {
        Generator::X => {
            return Err(Error::Unsupported(
                "x = 1/t has a negative t-exponent and is not a power series".into(),
            ))
        }
        Generator::Y => 0,
        Generator::Ybar => 1,
    };
    let mut s = BiSeries::zero(order);
    for i in start..=order {
        s.rows[i][0] = S::one();
    }
    Ok(s)
}

/// `Z(p^{n1} y ... p^{nk} y) = P^{n1}[ybar P^{n2}[ybar ... P^{nk}[ybar]]]`,
/// and `Z(empty) = 1`.
pub fn cal_z<S: Ring>(w: &Composition, order: usize) -> BiSeries<S> {
    let mut acc = BiSeries::one(order);
    for &n in w.exps().iter().rev() {
        acc = acc.mul_ybar();
        acc.apply_pq_pow_unchecked(n);
    }
    acc
}

/// Evaluation `Z(w)` at `t = q`.
pub fn cal_z_series<S: Ring>(w: &Composition, order: usize) -> Series<S> {
    cal_z::<S>(w, order).subst_diag()
}

impl<'a, S: Ring> Add<&'a BiSeries<S>> for &'a BiSeries<S> {
    type Output = BiSeries<S>;
    fn add(self, rhs: &BiSeries<S>) -> BiSeries<S> {
        let n = self.order.min(rhs.order);
        let mut out = BiSeries::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                out.rows[i][j] = self.rows[i][j].clone() + rhs.rows[i][j].clone();
            }
        }
        out
    }
}

impl<'a, S: Ring> Sub<&'a BiSeries<S>> for &'a BiSeries<S> {
    type Output = BiSeries<S>;
    fn sub(self, rhs: &BiSeries<S>) -> BiSeries<S> {
        self + &(-rhs.clone())
    }
}

impl<S: Ring> Neg for BiSeries<S> {
    type Output = BiSeries<S>;
    fn neg(self) -> BiSeries<S> {
        BiSeries {
            order: self.order,
            rows: self
                .rows
                .into_iter()
                .map(|r| r.into_iter().map(Neg::neg).collect())
                .collect(),
        }
    }
}

impl<'a, S: Ring> Mul<&'a BiSeries<S>> for &'a BiSeries<S> {
    type Output = BiSeries<S>;
    fn mul(self, rhs: &BiSeries<S>) -> BiSeries<S> {
        let n = self.order.min(rhs.order);
        let mut out: BiSeries<S> = BiSeries::zero(n);
        for (i1, j1, a) in self.truncate(n).terms() {
            for (i2, j2, b) in rhs.truncate(n).terms() {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + j <= n {
                    out.rows[i][j] = out.rows[i][j].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl fmt::Debug for BiSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BiSeries(order {})", self.order)?;
        for line in self.debug_lines() {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use crate::{QSeries, TQSeries};

    fn mono(i: usize, j: usize, c: i64, n: usize) -> TQSeries {
        TQSeries::monomial(i, j, rat(c, 1), n)
    }

    #[test]
    fn dilation() {
        assert_eq!(mono(2, 1, 1, 8).apply_eq().unwrap(), mono(2, 3, 1, 8));
        assert_eq!(mono(1, 0, 1, 8).apply_eq().unwrap(), mono(1, 1, 1, 8));
        assert!(matches!(mono(0, 2, 1, 8).apply_eq(), Err(Error::Precondition(_))));
        // dropped beyond the total degree
        assert!(mono(3, 1, 1, 6).apply_eq().unwrap().is_zero());
    }

    #[test]
    fn summation_and_difference() {
        let n = 6;
        let p = mono(1, 0, 1, n).apply_pq().unwrap();
        for j in 0..n {
            assert_eq!(p.coeff(1, j), rat(1, 1));
        }
        let d = mono(2, 0, 1, n).apply_dq().unwrap();
        assert_eq!(d, &mono(2, 0, 1, n) - &mono(2, 2, 1, n));
        let f = &mono(1, 2, 3, n) + &mono(3, 1, -2, n);
        assert_eq!(f.apply_pq().unwrap().apply_dq().unwrap(), f);
        assert_eq!(f.apply_dq().unwrap().apply_pq().unwrap(), f);
        assert!(mono(0, 0, 1, n).apply_pq().is_err());
    }

    #[test]
    fn jackson_integral_of_t() {
        // oracle: (1 - q) sum_n q^{2n} t^2
        let n = 9;
        let j = mono(1, 0, 1, n).apply_j().unwrap();
        let mut want = TQSeries::zero(n);
        for k in 0..=n {
            for (e, s) in [(2 * k, 1), (2 * k + 1, -1)] {
                if e + 2 <= n {
                    want.set(2, e, want.coeff(2, e) + rat(s, 1));
                }
            }
        }
        assert_eq!(j, want);
        assert!(TQSeries::zero(n).apply_j().unwrap().is_zero());
    }

    #[test]
    fn generators() {
        let yb: TQSeries = gen_function(Generator::Ybar, 3).unwrap();
        assert_eq!(yb.debug_lines(), ["(1,0): 1", "(2,0): 1", "(3,0): 1"]);
        let y: TQSeries = gen_function(Generator::Y, 2).unwrap();
        assert!(!y.in_algebra());
        assert_eq!(y.coeff(0, 0), rat(1, 1));
        assert!(matches!(gen_function::<Rational>(Generator::X, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ybar_multiplication_matches_product() {
        let n = 7;
        let f = &mono(1, 2, 3, n) + &mono(2, 0, -1, n);
        let yb = gen_function(Generator::Ybar, n).unwrap();
        assert_eq!(f.mul_ybar(), &f * &yb);
    }

    #[test]
    fn cal_z_examples() {
        let n = 6;
        let z0: TQSeries = cal_z(&Composition::from([0]), n);
        assert_eq!(z0, gen_function(Generator::Ybar, n).unwrap());
        let zm1: TQSeries = cal_z(&Composition::from([-1]), n);
        let mut want = TQSeries::zero(n);
        for m in 1..=n {
            want.set(m, 0, rat(1, 1));
            want.set(m, m, rat(-1, 1));
        }
        assert_eq!(zm1, want);
        assert_eq!(cal_z::<Rational>(&Composition::empty(), n), TQSeries::one(n));
        assert_eq!(z0.subst_diag(), QSeries::from_ints(&[0, 1, 1, 1, 1, 1, 1], n));
        assert_eq!(mono(2, 1, 1, 5).subst_diag(), QSeries::from_ints(&[0, 0, 0, 1], 5));
        assert!(TQSeries::zero(4).subst_diag().is_zero());
    }
}
