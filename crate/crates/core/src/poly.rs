//! Dense integer polynomials with exact coefficients, stored most significant
//! first.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPolynomial {
    /// Coefficients in descending degree order; empty means the zero polynomial.
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(i) => {
                self.coeffs.drain(..i);
            }
            None => self.coeffs.clear(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of x^k.
    pub fn coeff(&self, k: usize) -> BigInt {
        if k >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[self.coeffs.len() - 1 - k].clone()
        }
    }

    /// Coefficients in descending degree order.
    pub fn coeffs_desc(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let deg = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .take(deg)
            .enumerate()
            .map(|(i, c)| c * BigInt::from(deg - i))
            .collect();
        IntPolynomial::new(coeffs)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc = acc * x + big_to_f64(c);
        }
        acc
    }

    /// Renders the polynomial in the given variable, e.g.
    /// "u^8 - 8u^6 + 18u^4 - 11u^2".
    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let deg = self.degree();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = deg - i;
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_part = if mag.is_one() && exp > 0 { String::new() } else { mag.to_string() };
            out.push_str(&coeff_part);
            match exp {
                0 => {}
                1 => out.push(var),
                _ => out.push_str(&format!("{var}^{exp}")),
            }
        }
        out
    }

    /// Coefficients in descending order as decimal strings, exact at any size.
    pub fn coeffs_json(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_expected_shapes() {
        let p = IntPolynomial::from_i64(&[1, 0, -8, 0, 18, 0, -11, 0, 0]);
        assert_eq!(p.display_with('u'), "u^8 - 8u^6 + 18u^4 - 11u^2");
        let q = IntPolynomial::from_i64(&[1, 0, -3, -2]);
        assert_eq!(q.display_with('x'), "x^3 - 3x - 2");
        let r = IntPolynomial::from_i64(&[-1, 1, 5]);
        assert_eq!(r.display_with('x'), "-x^2 + x + 5");
        assert_eq!(IntPolynomial::zero().display_with('x'), "0");
        assert_eq!(IntPolynomial::from_i64(&[7]).display_with('x'), "7");
        assert_eq!(IntPolynomial::from_i64(&[1, -1]).display_with('x'), "x - 1");
    }

    #[test]
    fn coeff_indexing_is_by_power() {
        let p = IntPolynomial::from_i64(&[2, 3, 5]);
        assert_eq!(p.coeff(0), BigInt::from(5));
        assert_eq!(p.coeff(1), BigInt::from(3));
        assert_eq!(p.coeff(2), BigInt::from(2));
        assert_eq!(p.coeff(9), BigInt::zero());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn trim_drops_leading_zeros() {
        let p = IntPolynomial::from_i64(&[0, 0, 4, 1]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs_json(), vec!["4", "1"]);
    }

    #[test]
    fn derivative_examples() {
        let p = IntPolynomial::from_i64(&[1, 0, -4, 0, 2]);
        assert_eq!(p.derivative(), IntPolynomial::from_i64(&[4, 0, -8, 0]));
        assert_eq!(IntPolynomial::from_i64(&[5]).derivative(), IntPolynomial::zero());
    }
}
