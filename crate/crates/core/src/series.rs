//! Formal polynomials in one variable with nonnegative integer coefficients.
//!
//! These carry graded rank counts, so subtraction that would go negative and
//! division by `1 + λ` that leaves a remainder are errors, not approximations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("coefficient at degree {degree} would be negative; not a Poincaré-type difference")]
    NegativeCoefficient { degree: u32 },
    #[error("division by 1 + λ leaves remainder {remainder} at degree {degree}")]
    NonzeroRemainder { degree: u32, remainder: i64 },
}

/// Polynomial with coefficients in the nonnegative integers, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalSeries {
    coeffs: BTreeMap<u32, u64>,
}

impl FormalSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(degree: u32, coeff: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(degree, coeff);
        }
        Self { coeffs }
    }

    pub fn from_coeffs(pairs: &[(u32, u64)]) -> Self {
        let mut out = Self::zero();
        for &(degree, coeff) in pairs {
            if coeff != 0 {
                *out.coeffs.entry(degree).or_insert(0) += coeff;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: u32) -> u64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Sum of all coefficients: the value at `λ = 1`.
    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        let mut out = self.clone();
        for (&degree, &coeff) in &other.coeffs {
            *out.coeffs.entry(degree).or_insert(0) += coeff;
        }
        out.prune();
        out
    }

    /// Coefficientwise difference, failing on the first degree that would go
    /// negative.
    pub fn sub_checked(&self, other: &FormalSeries) -> Result<FormalSeries, SeriesError> {
        let mut out = self.clone();
        for (&degree, &coeff) in &other.coeffs {
            let have = out.coeffs.entry(degree).or_insert(0);
            if *have < coeff {
                return Err(SeriesError::NegativeCoefficient { degree });
            }
            *have -= coeff;
        }
        out.prune();
        Ok(out)
    }

    /// Exact division by `1 + λ` via synthetic division; the quotient must
    /// come out with nonnegative coefficients and zero remainder.
    pub fn divide_one_plus_lambda(&self) -> Result<FormalSeries, SeriesError> {
        let Some(top) = self.degree() else {
            return Ok(FormalSeries::zero());
        };
        let mut quotient = Vec::with_capacity(top as usize + 1);
        let mut carry: i64 = 0;
        for degree in 0..=top {
            let s = self.coeff(degree) as i64;
            let q = s - carry;
            if degree == top {
                if q != 0 {
                    return Err(SeriesError::NonzeroRemainder {
                        degree: top,
                        remainder: q,
                    });
                }
                break;
            }
            if q < 0 {
                return Err(SeriesError::NegativeCoefficient { degree });
            }
            quotient.push((degree, q as u64));
            carry = q;
        }
        Ok(FormalSeries::from_coeffs(&quotient))
    }

    /// Coefficients as a compact ascending list through the top degree, e.g.
    /// `1 + 3λ²` becomes `"1,0,3"`. The zero series is `"0"`.
    pub fn to_compact(&self) -> String {
        match self.degree() {
            None => "0".to_owned(),
            Some(top) => (0..=top)
                .map(|d| self.coeff(d).to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != 0);
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&degree, &coeff) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (degree, coeff) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "λ")?,
                (1, c) => write!(f, "{c}λ")?,
                (d, 1) => write!(f, "λ^{d}")?,
                (d, c) => write!(f, "{c}λ^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_and_accessors() {
        let s = FormalSeries::from_coeffs(&[(0, 1), (1, 3), (3, 1)]);
        assert_eq!(s.coeff(0), 1);
        assert_eq!(s.coeff(1), 3);
        assert_eq!(s.coeff(2), 0);
        assert_eq!(s.degree(), Some(3));
        assert_eq!(s.eval_at_one(), 5);
        assert!(FormalSeries::zero().is_zero());
        assert_eq!(FormalSeries::zero().degree(), None);
        assert_eq!(FormalSeries::monomial(2, 0), FormalSeries::zero());
    }

    #[test]
    fn addition_merges_degrees() {
        let a = FormalSeries::from_coeffs(&[(0, 1), (1, 2)]);
        let b = FormalSeries::from_coeffs(&[(1, 1), (2, 4)]);
        assert_eq!(a.add(&b), FormalSeries::from_coeffs(&[(0, 1), (1, 3), (2, 4)]));
    }

    #[test]
    fn subtraction_is_checked() {
        let a = FormalSeries::from_coeffs(&[(0, 2), (1, 1)]);
        let b = FormalSeries::from_coeffs(&[(0, 1), (1, 1)]);
        assert_eq!(a.sub_checked(&b), Ok(FormalSeries::one()));
        assert_eq!(
            b.sub_checked(&FormalSeries::monomial(2, 1)),
            Err(SeriesError::NegativeCoefficient { degree: 2 })
        );
    }

    #[test]
    fn division_examples() {
        // λ + λ² = λ(1 + λ).
        let s = FormalSeries::from_coeffs(&[(1, 1), (2, 1)]);
        assert_eq!(s.divide_one_plus_lambda(), Ok(FormalSeries::monomial(1, 1)));

        // 3 + 3λ = 3(1 + λ).
        let s = FormalSeries::from_coeffs(&[(0, 3), (1, 3)]);
        assert_eq!(s.divide_one_plus_lambda(), Ok(FormalSeries::monomial(0, 3)));

        assert_eq!(FormalSeries::zero().divide_one_plus_lambda(), Ok(FormalSeries::zero()));

        // 1 + λ + λ³ has remainder 1 at the top degree.
        let s = FormalSeries::from_coeffs(&[(0, 1), (1, 1), (3, 1)]);
        assert_eq!(
            s.divide_one_plus_lambda(),
            Err(SeriesError::NonzeroRemainder { degree: 3, remainder: 1 })
        );

        // 1 + λ² would need a negative middle coefficient.
        let s = FormalSeries::from_coeffs(&[(0, 1), (2, 1)]);
        assert_eq!(
            s.divide_one_plus_lambda(),
            Err(SeriesError::NegativeCoefficient { degree: 1 })
        );
    }

    #[test]
    fn division_inverts_multiplication() {
        // (1 + λ)(2 + λ + 3λ²) expanded by hand.
        let product = FormalSeries::from_coeffs(&[(0, 2), (1, 3), (2, 4), (3, 3)]);
        let q = product.divide_one_plus_lambda().unwrap();
        assert_eq!(q, FormalSeries::from_coeffs(&[(0, 2), (1, 1), (2, 3)]));
    }

    #[test]
    fn display_and_compact_forms() {
        let s = FormalSeries::from_coeffs(&[(0, 1), (1, 3), (3, 1)]);
        assert_eq!(s.to_string(), "1 + 3λ + λ^3");
        assert_eq!(s.to_compact(), "1,3,0,1");
        assert_eq!(FormalSeries::zero().to_string(), "0");
        assert_eq!(FormalSeries::zero().to_compact(), "0");
        assert_eq!(FormalSeries::monomial(1, 1).to_string(), "λ");
    }
}
