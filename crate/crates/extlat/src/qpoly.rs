//! Dense integer polynomials in one variable `q`, used for q-analogues of
//! order polynomials and for truncated generating series. Coefficients are
//! exact `BigInt`s; comparisons at rational points are cross-multiplied.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    /// `coeffs[i]` is the coefficient of `q^i`; no trailing zeros.
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> QPoly {
        QPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn monomial(deg: usize) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = BigInt::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> QPoly {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product keeping only powers `q^i` with `i <= max_deg`.
    pub fn mul_truncated(&self, other: &QPoly, max_deg: usize) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let full = self.coeffs.len() + other.coeffs.len() - 2;
        let deg = full.min(max_deg);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > deg {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > deg {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Are all coefficients of `self - other` nonnegative?
    pub fn ge_coefficientwise(&self, other: &QPoly) -> bool {
        let d = self.sub(other);
        d.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Exact value of `p(num/den) * den^scale_deg` as an integer, where
    /// `scale_deg >= degree(p)`. Used to compare polynomial values at a
    /// rational point without leaving the integers.
    pub fn eval_scaled(&self, num: &BigInt, den: &BigInt, scale_deg: usize) -> BigInt {
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        let mut den_pows = vec![BigInt::one()];
        for _ in 0..scale_deg {
            den_pows.push(den_pows.last().unwrap() * den);
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &num_pow * &den_pows[scale_deg - i];
            num_pow *= num;
        }
        acc
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_in("q"))
    }
}
