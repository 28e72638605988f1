//! Exact Laurent-polynomial arithmetic in the variable `s = t^{1/2}`,
//! determinants over this ring, and rewriting of symmetric Laurent
//! polynomials as polynomials in `z = s − s⁻¹`.
//!
//! Working in `s` keeps every exponent an integer: expressions in `t^{±n/2}`
//! become `s^{±n}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{validation, Result};

/// Laurent polynomial in `s` with exact integer coefficients. Zero
/// coefficients are never stored; the zero polynomial has empty support.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let coeff = coeff.into();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Support as (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact division, returning `None` when `other` does not divide `self`
    /// in the Laurent ring.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let d_top = other.max_exp().unwrap();
        let d_lead = other.coeff(d_top);
        // Peel leading terms; a failed integer division means non-divisibility.
        while !rem.is_zero() {
            let r_top = rem.max_exp().unwrap();
            let r_lead = rem.coeff(r_top);
            let (q, r) = num_integer::Integer::div_rem(&r_lead, &d_lead);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(r_top - d_top, q);
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(other));
            if let Some(new_top) = rem.max_exp() {
                if new_top >= r_top {
                    return None;
                }
            }
        }
        Some(quot)
    }

    /// Reinterprets a polynomial in the whole variable `t` as one in
    /// `s = t^{1/2}` by doubling every exponent.
    pub fn substitute_t(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (2 * e, c.clone())).collect(),
        }
    }

    /// True when the polynomial is invariant under `s ↦ −s⁻¹`, i.e.
    /// `coeff(−k) == (−1)^k coeff(k)` for all `k`. Exactly these polynomials
    /// are expressible in `z = s − s⁻¹`.
    pub fn is_z_expressible(&self) -> bool {
        self.terms.iter().all(|(&e, c)| {
            let mirror = self.coeff(-e);
            if e % 2 == 0 {
                mirror == *c
            } else {
                mirror == -c
            }
        })
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing exponent, e.g. `-2*s^-2 + 5 - 2*s^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, self.terms.iter().map(|(&e, c)| (e, c)), "s")
    }
}

pub(crate) fn fmt_poly<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, var: &str) -> fmt::Result
where
    I: Iterator<Item = (i64, &'a BigInt)>,
{
    let mut first = true;
    for (e, c) in terms {
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = c.abs();
        if e == 0 {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Polynomial in `z = s − s⁻¹` with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(deg: u32, coeff: impl Into<BigInt>) -> Self {
        let mut coeffs = BTreeMap::new();
        let coeff = coeff.into();
        if !coeff.is_zero() {
            coeffs.insert(deg, coeff);
        }
        ZPoly { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in iter {
            p.add_term(d, c);
        }
        p
    }

    fn add_term(&mut self, deg: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(deg).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, deg: u32) -> BigInt {
        self.coeffs.get(&deg).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&d1, c1) in &self.coeffs {
            for (&d2, c2) in &other.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// Expands back to a Laurent polynomial by substituting `z = s − s⁻¹`.
    pub fn expand_in_s(&self) -> LaurentPoly {
        let z = LaurentPoly::from_terms([(1, BigInt::one()), (-1, BigInt::from(-1))]);
        let mut out = LaurentPoly::zero();
        for (&d, c) in &self.coeffs {
            out = out.add(&z.pow(d as usize).scale(c));
        }
        out
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, self.coeffs.iter().map(|(&d, c)| (d as i64, c)), "z")
    }
}

/// Rewrites a Laurent polynomial invariant under `s ↦ −s⁻¹` as the unique
/// polynomial `Q` with `Q(s − s⁻¹) == p`.
///
/// Works from the top degree down, subtracting `(top coefficient)·z^(top)`.
/// A failed invariance check or a nonzero residue is reported as an error
/// rather than projected away: it signals input that is not a symmetrized
/// determinant (or a caller bug).
pub fn rewrite_in_z(p: &LaurentPoly) -> Result<ZPoly> {
    if !p.is_z_expressible() {
        return Err(validation(format!(
            "not expressible in z: {p} is not invariant under s -> -1/s"
        )));
    }
    let mut work = p.clone();
    let mut out = ZPoly::zero();
    let z = LaurentPoly::from_terms([(1, BigInt::one()), (-1, BigInt::from(-1))]);
    while let Some(top) = work.max_exp() {
        if top < 0 {
            return Err(validation(format!(
                "not expressible in z: residue {work} remains"
            )));
        }
        let c = work.coeff(top);
        out.add_term(top as u32, c.clone());
        work = work.sub(&z.pow(top as usize).scale(&c));
        if let Some(new_top) = work.max_exp() {
            if new_top >= top {
                return Err(validation(format!(
                    "not expressible in z: residue {work} remains"
                )));
            }
        }
    }
    Ok(out)
}

/// Exact determinant of a square matrix of Laurent polynomials.
///
/// Cofactor expansion up to 8×8, fraction-free Gaussian elimination (exact
/// division in the polynomial ring) above that. The empty matrix has
/// determinant 1.
pub fn det(matrix: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(validation(format!(
                "non-square matrix: {n} rows but a row of length {}",
                row.len()
            )));
        }
    }
    if n <= 8 {
        Ok(det_cofactor(matrix))
    } else {
        Ok(det_bareiss(matrix))
    }
}

pub(crate) fn det_cofactor(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = matrix.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut out = LaurentPoly::zero();
    for j in 0..n {
        if matrix[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let cof = matrix[0][j].mul(&det_cofactor(&minor));
        if j % 2 == 0 {
            out = out.add(&cof);
        } else {
            out = out.sub(&cof);
        }
    }
    out
}

pub(crate) fn det_bareiss(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = matrix.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut m: Vec<Vec<LaurentPoly>> = matrix.to_vec();
    let mut sign_flip = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = p(&[(1, 1), (-1, -1)]);
        let b = p(&[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b), p(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn mul_by_zero() {
        let a = p(&[(3, 2), (-1, 5)]);
        assert!(a.mul(&LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn square_of_z() {
        let z = p(&[(1, 1), (-1, -1)]);
        assert_eq!(z.mul(&z), p(&[(2, 1), (0, -2), (-2, 1)]));
    }

    #[test]
    fn substitute_t_examples() {
        assert_eq!(p(&[(1, 1)]).substitute_t(), p(&[(2, 1)]));
        assert_eq!(p(&[(0, 1), (-1, -1)]).substitute_t(), p(&[(0, 1), (-2, -1)]));
        // (2−t)(2−t⁻¹) expanded in t, then doubled
        let a = p(&[(0, 2), (1, -1)]);
        let b = p(&[(0, 2), (-1, -1)]);
        assert_eq!(
            a.mul(&b).substitute_t(),
            p(&[(0, 5), (2, -2), (-2, -2)])
        );
    }

    #[test]
    fn det_trivial() {
        assert_eq!(det(&[]).unwrap(), LaurentPoly::one());
        let diag = vec![
            vec![p(&[(1, 1)]), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), p(&[(-1, 1)])],
        ];
        assert_eq!(det(&diag).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn det_trefoil_symmetrization() {
        // sΘ − s⁻¹Θᵀ for Θ = [[−1,1],[0,−1]]
        let m = vec![
            vec![p(&[(1, -1), (-1, 1)]), p(&[(1, 1)])],
            vec![p(&[(-1, -1)]), p(&[(1, -1), (-1, 1)])],
        ];
        assert_eq!(det(&m).unwrap(), p(&[(2, 1), (0, -1), (-2, 1)]));
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(det(&[vec![LaurentPoly::one()], vec![]]).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..20 {
            let n = 3 + (trial % 4);
            let m: Vec<Vec<LaurentPoly>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let e = (next() % 5) as i64 - 2;
                            let c = (next() % 7) as i64 - 3;
                            LaurentPoly::monomial(e, c)
                        })
                        .collect()
                })
                .collect();
            assert_eq!(det_bareiss(&m), det_cofactor(&m), "{n}x{n} trial {trial}");
        }
    }

    #[test]
    fn det_matches_permutation_oracle() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..25 {
            let m: Vec<Vec<LaurentPoly>> = (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| {
                            let e1 = (next() % 5) as i64 - 2;
                            let c1 = (next() % 9) as i64 - 4;
                            let e2 = (next() % 5) as i64 - 2;
                            let c2 = (next() % 9) as i64 - 4;
                            p(&[(e1, c1)]).add(&p(&[(e2, c2)]))
                        })
                        .collect()
                })
                .collect();
            assert_eq!(
                det(&m).unwrap(),
                oracle::det_permutation(&m),
                "trial {trial}"
            );
        }
    }

    #[test]
    fn rewrite_examples() {
        let z = p(&[(1, 1), (-1, -1)]);
        assert_eq!(rewrite_in_z(&z).unwrap(), ZPoly::monomial(1, 1));
        assert_eq!(
            rewrite_in_z(&p(&[(2, 1), (-2, 1)])).unwrap(),
            ZPoly::from_coeffs([(2, BigInt::one()), (0, BigInt::from(2))])
        );
        assert_eq!(rewrite_in_z(&z.neg()).unwrap(), ZPoly::monomial(1, -1));
        assert_eq!(
            rewrite_in_z(&p(&[(0, 5), (2, -2), (-2, -2)])).unwrap(),
            ZPoly::from_coeffs([(0, BigInt::one()), (2, BigInt::from(-2))])
        );
    }

    #[test]
    fn rewrite_rejects_asymmetric() {
        assert!(rewrite_in_z(&p(&[(1, 1)])).is_err());
        assert!(rewrite_in_z(&p(&[(1, 1), (-1, 1)])).is_err());
        assert!(rewrite_in_z(&p(&[(0, 1), (2, 1), (-2, -1)])).is_err());
    }

    #[test]
    fn display_convention() {
        assert_eq!(p(&[(0, 5), (2, -2), (-2, -2)]).to_string(), "-2*s^-2 + 5 - 2*s^2");
        assert_eq!(p(&[(1, 1), (-1, -1)]).to_string(), "-s^-1 + s");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(
            ZPoly::from_coeffs([(0, BigInt::one()), (2, BigInt::one())]).to_string(),
            "1 + z^2"
        );
    }

    fn zpoly_strategy(max_deg: u32) -> impl Strategy<Value = ZPoly> {
        prop::collection::vec(-6i64..=6, max_deg as usize + 1).prop_map(|cs| {
            ZPoly::from_coeffs(
                cs.into_iter()
                    .enumerate()
                    .map(|(d, c)| (d as u32, BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn rewrite_round_trip(q in zpoly_strategy(10)) {
            prop_assert_eq!(rewrite_in_z(&q.expand_in_s()).unwrap(), q);
        }

        #[test]
        fn rewrite_is_additive_and_multiplicative(a in zpoly_strategy(5), b in zpoly_strategy(5)) {
            let pa = a.expand_in_s();
            let pb = b.expand_in_s();
            prop_assert_eq!(rewrite_in_z(&pa.add(&pb)).unwrap(), a.add(&b));
            prop_assert_eq!(rewrite_in_z(&pa.mul(&pb)).unwrap(), a.mul(&b));
        }
    }
}
