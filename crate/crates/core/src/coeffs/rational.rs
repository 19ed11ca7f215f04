use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Builds `p/q` in canonical form. Panics on `q == 0`; use [`try_rat`] for
/// untrusted input.
pub fn rat(p: i64, q: i64) -> Rational {
    try_rat(p, q).expect("rational literal with zero denominator")
}

pub fn try_rat(p: i64, q: i64) -> Result<Rational> {
    if q == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

/// `"p/q"`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.75"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse(0, "empty rational"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(num.len() + 1, format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits
                .parse()
                .map_err(|_| Error::parse(0, format!("bad decimal {s:?}")))?,
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(int.len() + 1, format!("bad decimal {s:?}")));
        }
        let frac_part: BigInt = frac.parse().expect("digits");
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(int_part * &scale + frac_part, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::parse(0, format!("bad rational {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalised binomial `n (n-1) ... (n-k+1) / k!` for any integer `n`,
/// zero for `k < 0`.
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial `(n; k_1, ..., k_r)` evaluated as the chained product
/// `C(n, k_1) C(n - k_1, k_2) ...`. It agrees with `n! / prod k_i!` when the
/// slots sum to `n`, and vanishes as soon as any slot is negative.
pub fn multinomial(n: i64, ks: &[i64]) -> BigInt {
    let mut rest = n;
    let mut acc = BigInt::one();
    for &k in ks {
        let c = binomial(rest, k);
        if c.is_zero() {
            return c;
        }
        acc *= c;
        rest -= k;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat_arith(&rat(1, 2), &rat(1, 3), RatOp::Add).unwrap(), rat(5, 6));
        assert_eq!(rat(3, 6), rat(1, 2));
        assert_eq!(
            rat_arith(&rat(2, 3), &rat(0, 1), RatOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(rat_arith(&rat(2, 3), &rat(-4, 9), RatOp::Div).unwrap(), rat(-3, 2));
        assert_eq!(try_rat(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rat(7, 1)), "7");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert_eq!(parse_rational("0.75").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-2, 1), BigInt::zero());
        assert_eq!(binomial_i(-2, 2), BigInt::from(3));
        assert_eq!(multinomial(4, &[1, 1, 2]), BigInt::from(12));
        assert_eq!(multinomial(3, &[1, -1, 3]), BigInt::zero());
        // 60 choose 30 overflows u64 products along the way
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }
}
