//! Seifert matrices, the Alexander and Conway polynomials computed from
//! them, the primitive coefficients of the Conway logarithm, and a verified
//! family of wheel knots with a closed-form Alexander polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{validation, verification, Result};
use crate::laurent::{det, rewrite_in_z, LaurentPoly, ZPoly};
use crate::series::IntSeries;

/// A square integer matrix of Seifert linking numbers. Any square matrix is
/// accepted at construction; operations that interpret it as a knot require
/// `det(Θ − Θᵀ) == 1` (the 0×0 matrix, the unknot, is valid).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl SeifertMatrix {
    pub fn from_rows(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let g = entries.len();
        for row in &entries {
            if row.len() != g {
                return Err(validation(format!(
                    "matrix has {g} rows but a row of length {}",
                    row.len()
                )));
            }
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    /// The unknot: the empty Seifert matrix.
    pub fn unknot() -> Self {
        SeifertMatrix { entries: vec![] }
    }

    /// Parses the matrix file format: `#` starts a comment line, the first
    /// non-comment token is the size `g`, followed by `g · g` whitespace-
    /// separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(|l| l.split_whitespace());
        let g: usize = tokens
            .next()
            .ok_or_else(|| validation("empty matrix file"))?
            .parse()
            .map_err(|_| validation("matrix size must be a non-negative integer"))?;
        let mut entries = Vec::with_capacity(g);
        for i in 0..g {
            let mut row = Vec::with_capacity(g);
            for j in 0..g {
                let tok = tokens.next().ok_or_else(|| {
                    validation(format!("matrix entry ({i},{j}) missing; expected {g}x{g}"))
                })?;
                row.push(
                    tok.parse()
                        .map_err(|_| validation(format!("bad matrix entry {tok:?}")))?,
                );
            }
            entries.push(row);
        }
        if let Some(extra) = tokens.next() {
            return Err(validation(format!(
                "unexpected trailing token {extra:?} after {g}x{g} entries"
            )));
        }
        Self::from_rows(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    /// `det(Θ − Θᵀ)`.
    pub fn skew_determinant(&self) -> BigInt {
        let g = self.size();
        let m: Vec<Vec<LaurentPoly>> = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| LaurentPoly::monomial(0, &self.entries[i][j] - &self.entries[j][i]))
                    .collect()
            })
            .collect();
        det(&m).expect("square by construction").coeff(0)
    }

    /// A matrix is a genuine Seifert form exactly when `det(Θ − Θᵀ) == +1`;
    /// the skew part has square determinant, so +1 is the only unimodular
    /// value and anything else flags transposed or garbled input.
    pub fn is_valid(&self) -> bool {
        self.skew_determinant().is_one()
    }

    fn require_valid(&self, force: bool) -> Result<()> {
        if force || self.is_valid() {
            Ok(())
        } else {
            Err(validation(format!(
                "not a Seifert matrix: det(theta - theta^T) = {}, expected 1 (pass --force to compute anyway)",
                self.skew_determinant()
            )))
        }
    }

    /// The symmetrized determinant `det(sΘ − s⁻¹Θᵀ)` as a Laurent polynomial
    /// in `s = t^{1/2}`.
    pub fn alexander(&self, force: bool) -> Result<LaurentPoly> {
        self.require_valid(force)?;
        let g = self.size();
        let m: Vec<Vec<LaurentPoly>> = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        LaurentPoly::from_terms([
                            (1, self.entries[i][j].clone()),
                            (-1, -&self.entries[j][i]),
                        ])
                    })
                    .collect()
            })
            .collect();
        det(&m)
    }

    /// The Conway normalization: the Alexander polynomial rewritten in
    /// `z = s − s⁻¹`. For a valid matrix the constant term is 1 and only
    /// even powers appear.
    pub fn conway(&self, force: bool) -> Result<ZPoly> {
        rewrite_in_z(&self.alexander(force)?)
    }

    /// The primitive coefficients `pc_2, pc_4, …, pc_{2K}`: the Conway
    /// polynomial is read as a series in `x = z²` and fed through the
    /// discrete logarithm. Coefficients beyond the polynomial's degree are
    /// still meaningful (the logarithm of a polynomial is an infinite
    /// series), so any `K ≥ 1` is allowed.
    pub fn pc(&self, k: usize, force: bool) -> Result<PcVector> {
        if k == 0 {
            return Err(validation("pc truncation K must be at least 1"));
        }
        let conway = self.conway(force)?;
        if let Some((d, _)) = conway.terms().find(|(d, _)| d % 2 == 1) {
            return Err(validation(format!(
                "Conway polynomial {conway} has an odd-degree term z^{d}"
            )));
        }
        let coeffs: Vec<BigInt> = (0..=k as u32).map(|i| conway.coeff(2 * i)).collect();
        let b = IntSeries::from_coeffs(k, coeffs)?;
        let a = b.log_z()?;
        Ok(PcVector {
            values: a.coeffs()[1..].to_vec(),
        })
    }

    /// Block-diagonal sum, the Seifert-form picture of a connected sum.
    pub fn block_sum(&self, other: &Self) -> Result<Self> {
        self.require_valid(false)?;
        other.require_valid(false)?;
        let (g1, g2) = (self.size(), other.size());
        let mut entries = vec![vec![BigInt::zero(); g1 + g2]; g1 + g2];
        for i in 0..g1 {
            for j in 0..g1 {
                entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..g2 {
            for j in 0..g2 {
                entries[g1 + i][g1 + j] = other.entries[i][j].clone();
            }
        }
        Ok(SeifertMatrix { entries })
    }

    /// The congruence move `Θ ↦ UΘUᵀ` for unimodular `U`.
    pub fn congruence(&self, u: &[Vec<BigInt>]) -> Result<Self> {
        let g = self.size();
        if u.len() != g || u.iter().any(|row| row.len() != g) {
            return Err(validation(format!("congruence matrix must be {g}x{g}")));
        }
        let lm: Vec<Vec<LaurentPoly>> = u
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| LaurentPoly::monomial(0, c.clone()))
                    .collect()
            })
            .collect();
        let u_det = det(&lm).expect("square by construction").coeff(0);
        if !u_det.abs().is_one() {
            return Err(validation(format!(
                "congruence matrix must be unimodular, det = {u_det}"
            )));
        }
        let mut product = vec![vec![BigInt::zero(); g]; g];
        for i in 0..g {
            for j in 0..g {
                let mut acc = BigInt::zero();
                for a in 0..g {
                    for b in 0..g {
                        acc += &u[i][a] * &self.entries[a][b] * &u[j][b];
                    }
                }
                product[i][j] = acc;
            }
        }
        Ok(SeifertMatrix { entries: product })
    }

    /// The enlargement move: extends `Θ` to the `(g+2)×(g+2)` matrix
    ///
    /// ```text
    /// [ Θ  ξ  0 ]
    /// [ 0  a  1 ]
    /// [ 0  0  0 ]
    /// ```
    ///
    /// which leaves the symmetrized determinant unchanged.
    pub fn enlargement(&self, xi: &[BigInt], a: &BigInt) -> Result<Self> {
        let g = self.size();
        if xi.len() != g {
            return Err(validation(format!(
                "enlargement column has {} entries, expected {g}",
                xi.len()
            )));
        }
        let mut entries = vec![vec![BigInt::zero(); g + 2]; g + 2];
        for i in 0..g {
            for j in 0..g {
                entries[i][j] = self.entries[i][j].clone();
            }
            entries[i][g] = xi[i].clone();
        }
        entries[g][g] = a.clone();
        entries[g][g + 1] = BigInt::one();
        Ok(SeifertMatrix { entries })
    }
}

/// The primitive coefficients `pc_2 … pc_{2K}` of a knot: exact integers,
/// additive under connected sum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PcVector {
    values: Vec<BigInt>,
}

impl PcVector {
    /// `values()[i]` is `pc_{2(i+1)}`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `pc_{2i}`, 1-based in `i`.
    pub fn get(&self, i: usize) -> &BigInt {
        &self.values[i - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The Seifert matrix of the `n`-th wheel knot: the block form
/// `[[0, M], [Mᵀ + I, 0]]` with `M` a cyclic-shift matrix of size `n` whose
/// wrap-around entry is `(−1)^{n+1}`.
///
/// The corner sign is forced: the shift's characteristic root must satisfy
/// `ω^n = (−1)^{n+1}` for the symmetrized determinant to equal the family's
/// closed-form Alexander polynomial at every `n` (a plain `+1` corner flips
/// the sign of the middle coefficient for even `n`). Validity is automatic:
/// `Θ − Θᵀ = [[0, −I], [I, 0]]` has determinant 1 whatever `M` is.
pub fn family_theta(n: usize) -> SeifertMatrix {
    assert!(n >= 1, "family index must be at least 1");
    let mut entries = vec![vec![BigInt::zero(); 2 * n]; 2 * n];
    let set = |entries: &mut Vec<Vec<BigInt>>, i: usize, j: usize, value: i64| {
        // M[i][j] in the top-right block, its transpose in the bottom-left.
        entries[i][n + j] = BigInt::from(value);
        entries[n + j][i] = BigInt::from(value);
    };
    for i in 0..n.saturating_sub(1) {
        set(&mut entries, i, i + 1, 1);
    }
    let corner = if n % 2 == 1 { 1 } else { -1 };
    set(&mut entries, n - 1, 0, corner);
    for i in 0..n {
        entries[n + i][i] += BigInt::one();
    }
    SeifertMatrix { entries }
}

/// The closed-form Alexander polynomial of the `n`-th wheel knot,
/// `(1 + (1−t)ⁿ)(1 + (1−t⁻¹)ⁿ)`, expanded and re-expressed in `s`.
pub fn family_closed_form(n: usize) -> LaurentPoly {
    assert!(n >= 1, "family index must be at least 1");
    let one_minus_t = LaurentPoly::from_terms([(0, BigInt::one()), (1, BigInt::from(-1))]);
    let one_minus_t_inv = LaurentPoly::from_terms([(0, BigInt::one()), (-1, BigInt::from(-1))]);
    let f = LaurentPoly::one().add(&one_minus_t.pow(n));
    let g = LaurentPoly::one().add(&one_minus_t_inv.pow(n));
    f.mul(&g).substitute_t()
}

/// Checks the wheel-knot identities for index `n` and returns a printable
/// report. Any mismatch is a verification failure carrying both sides.
///
/// Checked: the symmetrized determinant of the family matrix equals the
/// closed form; the Conway polynomial has the shape
/// `1 + w(z)·zⁿ + (−1)ⁿ z^{2n}` with `w` the rewrite of `s⁻ⁿ + (−1)ⁿ sⁿ`;
/// for even `n`, `|pc_n| == 2`; for odd `n ≥ 3`, `c_{n+1} == −n` and
/// `pc_{n+1}` is odd.
pub fn verify_family(n: usize) -> Result<Vec<String>> {
    if n == 0 {
        return Err(validation("family index must be at least 1"));
    }
    let theta = family_theta(n);
    let determinant = theta.alexander(false)?;
    let closed = family_closed_form(n);
    let mut lines = vec![
        format!("n = {n}"),
        format!("A(s) = {determinant}"),
    ];
    if determinant != closed {
        return Err(verification(format!(
            "family n = {n}: determinant {determinant} does not equal closed form {closed}"
        )));
    }
    lines.push("determinant_matches_closed_form = true".to_string());

    let conway = rewrite_in_z(&determinant)?;
    lines.push(format!("C(z) = {conway}"));
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let middle = rewrite_in_z(&LaurentPoly::from_terms([
        (-(n as i64), BigInt::one()),
        (n as i64, BigInt::from(sign)),
    ]))?;
    let expected = ZPoly::one()
        .add(&middle.mul(&ZPoly::monomial(n as u32, 1)))
        .add(&ZPoly::monomial(2 * n as u32, sign));
    if conway != expected {
        return Err(verification(format!(
            "family n = {n}: Conway polynomial {conway} does not match the structural form {expected}"
        )));
    }
    lines.push("structural_form_ok = true".to_string());

    if n % 2 == 0 {
        let half = n / 2;
        let pcs = theta.pc(half, false)?;
        let value = pcs.get(half);
        lines.push(format!("pc_{n} = {value}"));
        if value.abs() != BigInt::from(2) {
            return Err(verification(format!(
                "family n = {n}: |pc_{n}| = {} but 2 was expected",
                value.abs()
            )));
        }
        lines.push(format!("pc_{n}_magnitude_ok = true"));
    } else if n >= 3 {
        let c = conway.coeff(n as u32 + 1);
        lines.push(format!("c_{} = {c}", n + 1));
        if c != BigInt::from(-(n as i64)) {
            return Err(verification(format!(
                "family n = {n}: c_{} = {c} but {} was expected",
                n + 1,
                -(n as i64)
            )));
        }
        let pcs = theta.pc((n + 1) / 2, false)?;
        let value = pcs.get((n + 1) / 2);
        lines.push(format!("pc_{} = {value}", n + 1));
        if (value % BigInt::from(2)).is_zero() {
            return Err(verification(format!(
                "family n = {n}: pc_{} = {value} is even but an odd value was expected",
                n + 1
            )));
        }
        lines.push(format!("pc_{}_parity_ok = true", n + 1));
    }
    Ok(lines)
}
