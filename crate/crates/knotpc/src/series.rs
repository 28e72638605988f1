//! Truncated formal power series with exact integer coefficients, together
//! with the discrete exponential and logarithm.
//!
//! The discrete exponential maps `x·Z[[x]]` to `1 + x·Z[[x]]` by
//! `exp_z(Σ aᵢ xⁱ) = Π (1 + (−x)ⁱ)^{aᵢ}`; `log_z` is its inverse. Both are
//! bijections and turn multiplication of series into addition of exponents,
//! which is what makes the coefficients of `log_z` additive under products.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{validation, Result};

/// A formal power series truncated (inclusively) at `order`, with exact
/// integer coefficients. `coeffs.len() == order + 1` always holds.
///
/// Values are immutable; all operations return new series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Builds a series from the given low-order coefficients, padding missing
    /// high coefficients with zero.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(validation(format!(
                "{} coefficients given but order is {}",
                coeffs.len(),
                order
            )));
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, BigInt::zero());
        Ok(IntSeries { order, coeffs })
    }

    pub fn from_i64(order: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(order, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        IntSeries {
            order,
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Parses the comma-separated literal form `c0,c1,c2,...`.
    pub fn parse(text: &str, order: usize) -> Result<Self> {
        let mut coeffs = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(validation("empty coefficient in series literal"));
            }
            let c: BigInt = piece
                .parse()
                .map_err(|_| validation(format!("bad coefficient {piece:?}")))?;
            coeffs.push(c);
        }
        Self::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(validation(format!(
                "order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        IntSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Coefficient-wise convolution truncated at the common order. Both
    /// operands must carry the same order; there is no silent re-truncation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut coeffs = vec![BigInt::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(IntSeries {
            order: self.order,
            coeffs,
        })
    }

    /// The discrete exponential: the truncation of `Π (1 + (−x)ⁱ)^{aᵢ}`.
    ///
    /// Requires a zero constant term. Negative exponents are fine: the factor
    /// `(1 + (−x)ⁱ)^{a}` is expanded with generalized binomial coefficients,
    /// which for `a < 0` is the truncated inverse power.
    pub fn exp_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(validation(format!(
                "exp_z input must have constant term 0, got {}",
                self.coeffs[0]
            )));
        }
        let mut result = Self::one(self.order);
        for i in 1..=self.order {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            // (1 + (−x)^i)^a = Σ_j binom(a, j) (−1)^{i·j} x^{i·j}
            let mut factor = Self::zero(self.order);
            let mut j = 0;
            while i * j <= self.order {
                let mut c = binomial(a, j);
                if (i * j) % 2 == 1 {
                    c = -c;
                }
                factor.coeffs[i * j] = c;
                j += 1;
            }
            result = result.mul(&factor)?;
        }
        Ok(result)
    }

    /// The discrete logarithm, inverse to [`exp_z`](Self::exp_z).
    ///
    /// Solved degree by degree: the degree-`i` coefficient of the exponential
    /// is `(−1)ⁱ(aᵢ + Qᵢ(a₁,…,a_{i−1}))`, so with `a₁..a_{i−1}` known,
    /// `aᵢ = (−1)ⁱ(bᵢ − eᵢ)` where `e = exp_z` of the partial solution.
    pub fn log_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(validation(format!(
                "log_z input must have constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let mut a = Self::zero(self.order);
        for i in 1..=self.order {
            let e = a.exp_z()?;
            let diff = &self.coeffs[i] - &e.coeffs[i];
            a.coeffs[i] = if i % 2 == 1 { -diff } else { diff };
        }
        debug_assert_eq!(a.exp_z().unwrap(), *self);
        Ok(a)
    }
}

impl fmt::Display for IntSeries {
    /// Comma-separated literal form, matching the CLI input format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Generalized binomial coefficient `binom(a, k)` for integer `a` of either
/// sign: the falling factorial `a(a−1)…(a−k+1)/k!`. Always an integer.
pub fn binomial(a: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= a - BigInt::from(i);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(i);
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero());
    let _ = r.abs();
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn s(order: usize, coeffs: &[i64]) -> IntSeries {
        IntSeries::from_i64(order, coeffs).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(1), 2), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(-2), 2), BigInt::from(3));
        assert_eq!(binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(7), 0), BigInt::one());
    }

    #[test]
    fn mul_difference_of_squares() {
        let f = s(2, &[1, 1]);
        let g = s(2, &[1, -1]);
        assert_eq!(f.mul(&g).unwrap(), s(2, &[1, 0, -1]));
    }

    #[test]
    fn mul_hand_expansion() {
        // (1−x)(1+x²) at order 3, cross-checked by the naive double loop.
        let f = s(3, &[1, -1]);
        let g = s(3, &[1, 0, 1]);
        let expected = s(3, &[1, -1, 1, -1]);
        assert_eq!(f.mul(&g).unwrap(), expected);
        assert_eq!(oracle::naive_series_mul(&f, &g), expected);
    }

    #[test]
    fn mul_identity() {
        let f = s(8, &[3, -1, 4, 1, -5, 9, -2, 6, 5]);
        assert_eq!(f.mul(&IntSeries::one(8)).unwrap(), f);
    }

    #[test]
    fn mul_order_mismatch() {
        assert!(s(2, &[1]).mul(&s(3, &[1])).is_err());
    }

    #[test]
    fn exp_z_single_term() {
        assert_eq!(s(3, &[0, 1]).exp_z().unwrap(), s(3, &[1, -1]));
    }

    #[test]
    fn exp_z_double_term() {
        // (1−x)²
        assert_eq!(s(2, &[0, 2]).exp_z().unwrap(), s(2, &[1, -2, 1]));
    }

    #[test]
    fn exp_z_two_factors() {
        // (1−x)(1+x²)
        assert_eq!(s(3, &[0, 1, 1]).exp_z().unwrap(), s(3, &[1, -1, 1, -1]));
    }

    #[test]
    fn exp_z_empty_product() {
        assert_eq!(IntSeries::zero(4).exp_z().unwrap(), IntSeries::one(4));
    }

    #[test]
    fn exp_z_rejects_nonzero_constant() {
        assert!(s(2, &[1, 1]).exp_z().is_err());
    }

    #[test]
    fn log_z_of_one() {
        assert_eq!(IntSeries::one(5).log_z().unwrap(), IntSeries::zero(5));
    }

    #[test]
    fn log_z_examples() {
        assert_eq!(s(3, &[1, -1]).log_z().unwrap(), s(3, &[0, 1]));
        // log_z(1+x) = −x − x² + 0·x³
        assert_eq!(s(3, &[1, 1]).log_z().unwrap(), s(3, &[0, -1, -1, 0]));
        // a₁ = −2; a₂ = b₂ − binom(−2,2) = 2 − 3 = −1
        assert_eq!(s(2, &[1, 2, 2]).log_z().unwrap(), s(2, &[0, -2, -1]));
    }

    #[test]
    fn log_z_rejects_bad_constant() {
        assert!(s(2, &[0, 1]).log_z().is_err());
        assert!(s(2, &[2, 1]).log_z().is_err());
    }

    #[test]
    fn parse_and_display() {
        let f = IntSeries::parse("1,-2,0", 4).unwrap();
        assert_eq!(f, s(4, &[1, -2, 0, 0, 0]));
        assert_eq!(f.to_string(), "1,-2,0,0,0");
        assert!(IntSeries::parse("1,2,3", 1).is_err());
        assert!(IntSeries::parse("1,,2", 4).is_err());
        assert!(IntSeries::parse("x", 2).is_err());
    }

    #[test]
    fn coefficient_formula_cross_check() {
        // The degree-ℓ coefficient of exp_z equals
        // (−1)^ℓ Σ_{Σ j·i_j = ℓ} Π binom(a_j, i_j), by independent enumeration.
        let cases = [
            s(6, &[0, 1, 0, 2]),
            s(6, &[0, -1, 3, 0, -2]),
            s(5, &[0, 2, -2, 1, 0, 4]),
        ];
        for a in &cases {
            let e = a.exp_z().unwrap();
            for l in 0..=a.order() {
                assert_eq!(*e.coeff(l), oracle::exp_z_coefficient(a, l), "x^{l} of {a}");
            }
        }
    }

    fn small_series(order: usize, first_zero: bool) -> impl Strategy<Value = IntSeries> {
        prop::collection::vec(-5i64..=5, order)
            .prop_map(move |tail| {
                let mut coeffs = vec![if first_zero { 0 } else { 1 }];
                coeffs.extend(tail);
                IntSeries::from_i64(order, &coeffs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn round_trip_log_exp(a in small_series(10, true)) {
            prop_assert_eq!(a.exp_z().unwrap().log_z().unwrap(), a);
        }

        #[test]
        fn round_trip_exp_log(b in small_series(10, false)) {
            prop_assert_eq!(b.log_z().unwrap().exp_z().unwrap(), b);
        }

        #[test]
        fn exp_is_homomorphism(f in small_series(8, true), g in small_series(8, true)) {
            let lhs = f.add(&g).unwrap().exp_z().unwrap();
            let rhs = f.exp_z().unwrap().mul(&g.exp_z().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn log_of_product_is_sum(p in small_series(8, false), q in small_series(8, false)) {
            let lhs = p.mul(&q).unwrap().log_z().unwrap();
            let rhs = p.log_z().unwrap().add(&q.log_z().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn leading_structure(b in small_series(7, false), i in 1usize..=7, delta in 1i64..=4) {
            // Inputs agreeing below i and differing at i have log outputs
            // differing by (−1)^i times the input difference at i.
            let mut coeffs: Vec<BigInt> = b.coeffs().to_vec();
            coeffs[i] += BigInt::from(delta);
            let b2 = IntSeries::from_coeffs(b.order(), coeffs).unwrap();
            let a = b.log_z().unwrap();
            let a2 = b2.log_z().unwrap();
            let expect = if i % 2 == 1 { BigInt::from(-delta) } else { BigInt::from(delta) };
            prop_assert_eq!(a2.coeff(i) - a.coeff(i), expect);
        }
    }
}
