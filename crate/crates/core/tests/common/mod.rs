//! Brute-force oracles written straight from the defining sums. They share
//! no code with the library and trade speed for obviousness.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use qmzv::products::QLin;
use qmzv::QSeries;

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(1 - q^m)^{-n}` truncated after `q^order`.
fn factor(m: usize, n: i64, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    let mut k = 0;
    while k * m <= order {
        out[k * m] = if n == 0 {
            BigInt::from(u8::from(k == 0))
        } else if n > 0 {
            binom(n - 1 + k as i64, k as i64)
        } else {
            let c = binom(-n, k as i64);
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        };
        k += 1;
    }
    out
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len() - 1;
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `sum_{m1 > ... > mk > 0} q^{m1} prod (1 - q^{mi})^{-ni}` through `q^order`.
/// Only `m1 <= order` contributes, which bounds every inner index as well.
pub fn zbar(w: &[i64], order: usize) -> Vec<BigInt> {
    let zero = vec![BigInt::zero(); order + 1];
    if w.is_empty() {
        let mut one = zero;
        one[0] = BigInt::one();
        return one;
    }
    // g[m] is the sum over the indices from slot j on, with slot j equal to m.
    let mut g: Vec<Vec<BigInt>> = (0..=order).map(|m| if m == 0 { zero.clone() } else { factor(m, w[w.len() - 1], order) }).collect();
    for &n in w[..w.len() - 1].iter().rev() {
        let mut next = vec![zero.clone(); order + 1];
        let mut below = zero.clone();
        for m in 1..=order {
            for (b, x) in below.iter_mut().zip(&g[m - 1]) {
                *b += x;
            }
            next[m] = mul(&factor(m, n, order), &below);
        }
        g = next;
    }
    let mut out = zero;
    for (m, gm) in g.iter().enumerate().skip(1) {
        for (d, c) in gm.iter().enumerate() {
            if d + m <= order {
                out[d + m] += c;
            }
        }
    }
    out
}

pub fn lin(l: &QLin, order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (w, c) in l.iter() {
        for (o, x) in out.iter_mut().zip(zbar(&w.0, order)) {
            *o += c * BigRational::from_integer(x);
        }
    }
    out
}

/// `q d/dq`.
pub fn delta(s: &[BigRational]) -> Vec<BigRational> {
    s.iter().enumerate().map(|(k, c)| c * BigRational::from_integer(k.into())).collect()
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn agrees(lib: &QSeries, naive: &[BigRational]) -> bool {
    naive.iter().enumerate().all(|(d, c)| lib.coeff(d) == *c)
}

pub fn agrees_int(lib: &QSeries, naive: &[BigInt]) -> bool {
    naive.iter().enumerate().all(|(d, c)| lib.coeff(d) == BigRational::from_integer(c.clone()))
}

/// Floating-point `zbar_{q0}(w)` by summing until the outer term is
/// negligible, inner sums carried as running totals. Only depth 1 and 2.
pub fn zbar_f64(w: &[i64], q0: f64) -> f64 {
    let f = |m: usize, n: i64| (1.0 - q0.powi(m as i32)).powi(-(n as i32));
    let mut total = 0.0;
    let mut inner = 0.0;
    let mut m = 1usize;
    loop {
        let qm = q0.powi(m as i32);
        let term = match w {
            [a] => qm * f(m, *a),
            [a, _] => qm * f(m, *a) * inner,
            _ => panic!("depth {} not supported", w.len()),
        };
        total += term;
        if let [_, b] = w {
            inner += f(m, *b);
        }
        if m > 64 && qm * (m as f64).powi(4) < 1e-18 * total.abs().max(1e-300) {
            break;
        }
        m += 1;
    }
    total
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}
