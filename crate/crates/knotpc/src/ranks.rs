//! Quotient ranks of diagram spaces: GF(2) elimination over chord-diagram
//! bases modulo chosen relator families, and the exact-rational calculus of
//! theta graphs with hairs.

use std::collections::HashMap;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagrams::{
    enumerate_chord_diagrams_unguarded, enumerate_jacobi_unguarded, four_t_relators_unguarded,
    ChordDiagram, JacobiFilter,
};
use crate::error::{validation, Result};

/// The relator families that can be imposed on a degree-`n` chord basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelatorKind {
    /// All four-term relators.
    FourT,
    /// Unit relators on every separated diagram.
    Separated,
    /// STU images of every Jacobi diagram with an insulated vertex.
    InsulatedVertex,
    /// STU images of every Jacobi diagram with two non-adjacent insulated
    /// vertices.
    TwoInsulatedVertex,
}

impl FromStr for RelatorKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "4T" | "4t" | "fourT" | "fourt" => Ok(RelatorKind::FourT),
            "sep" | "separated" => Ok(RelatorKind::Separated),
            "iv" => Ok(RelatorKind::InsulatedVertex),
            "2iv" | "twoiv" => Ok(RelatorKind::TwoInsulatedVertex),
            other => Err(validation(format!(
                "unknown relator kind {other:?}; expected 4T, sep, iv or 2iv"
            ))),
        }
    }
}

/// A GF(2) relator system over an ordered basis of canonical chord diagrams.
/// Each relator is the characteristic vector of a diagram multiset mod 2,
/// stored bit-packed.
#[derive(Clone, Debug)]
pub struct RelatorSystem {
    basis: Vec<ChordDiagram>,
    index: HashMap<ChordDiagram, usize>,
    relators: Vec<Vec<u64>>,
}

impl RelatorSystem {
    pub fn new(basis: Vec<ChordDiagram>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, d) in basis.iter().enumerate() {
            if index.insert(d.clone(), i).is_some() {
                return Err(validation(format!("duplicate basis diagram {d}")));
            }
        }
        Ok(RelatorSystem {
            basis,
            index,
            relators: Vec::new(),
        })
    }

    pub fn basis(&self) -> &[ChordDiagram] {
        &self.basis
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    fn words(&self) -> usize {
        self.basis.len().div_ceil(64)
    }

    /// Adds the mod-2 characteristic vector of the given diagram multiset;
    /// diagrams are canonicalized before lookup.
    pub fn add_relator<'a, I>(&mut self, diagrams: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a ChordDiagram>,
    {
        let mut row = vec![0u64; self.words()];
        for d in diagrams {
            let canon = d.canonicalize();
            let &i = self
                .index
                .get(&canon)
                .ok_or_else(|| validation(format!("diagram {canon} is not in the basis")))?;
            row[i / 64] ^= 1 << (i % 64);
        }
        self.relators.push(row);
        Ok(())
    }

    /// Gaussian elimination over GF(2): returns `(rank, quotient_dimension)`
    /// with `quotient_dimension = basis size − rank`.
    pub fn gf2_rank(&self) -> (usize, usize) {
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        for row in &self.relators {
            let mut row = row.clone();
            for (bit, pivot) in &pivots {
                if row[bit / 64] >> (bit % 64) & 1 == 1 {
                    for (r, p) in row.iter_mut().zip(pivot) {
                        *r ^= p;
                    }
                }
            }
            if let Some(word) = row.iter().position(|&w| w != 0) {
                let bit = word * 64 + row[word].trailing_zeros() as usize;
                pivots.push((bit, row));
            }
        }
        let rank = pivots.len();
        (rank, self.basis.len() - rank)
    }

    /// The relators as plain boolean vectors, for cross-checks.
    pub fn relator_bits(&self) -> Vec<Vec<bool>> {
        self.relators
            .iter()
            .map(|row| {
                (0..self.basis.len())
                    .map(|i| row[i / 64] >> (i % 64) & 1 == 1)
                    .collect()
            })
            .collect()
    }

    /// True iff the weight function's value vector is orthogonal mod 2 to
    /// every relator, i.e. the function descends to the quotient.
    pub fn check_weight_system<F>(&self, w: F) -> bool
    where
        F: Fn(&ChordDiagram) -> bool,
    {
        let mut values = vec![0u64; self.words()];
        for (i, d) in self.basis.iter().enumerate() {
            if w(d) {
                values[i / 64] |= 1 << (i % 64);
            }
        }
        self.relators.iter().all(|row| {
            let dot: u32 = row
                .iter()
                .zip(&values)
                .map(|(r, v)| (r & v).count_ones())
                .sum();
            dot % 2 == 0
        })
    }
}

const RANK_GUARD_PLAIN: usize = 6;
const RANK_GUARD_JACOBI: usize = 5;

/// Builds the degree-`n` system with the requested relator families.
/// Guarded to `n ≤ 5` when insulated-vertex families are requested (they
/// need the Jacobi enumeration) and `n ≤ 6` otherwise.
pub fn build_system(n: usize, kinds: &[RelatorKind]) -> Result<RelatorSystem> {
    let needs_jacobi = kinds.iter().any(|k| {
        matches!(
            k,
            RelatorKind::InsulatedVertex | RelatorKind::TwoInsulatedVertex
        )
    });
    let guard = if needs_jacobi {
        RANK_GUARD_JACOBI
    } else {
        RANK_GUARD_PLAIN
    };
    if n == 0 || n > guard {
        return Err(validation(format!(
            "degree {n} outside the rank guard 1..={guard} for the requested relators"
        )));
    }
    build_system_unguarded(n, kinds)
}

pub fn build_system_unguarded(n: usize, kinds: &[RelatorKind]) -> Result<RelatorSystem> {
    let basis = enumerate_chord_diagrams_unguarded(n);
    let mut sys = RelatorSystem::new(basis)?;
    for &kind in kinds {
        match kind {
            RelatorKind::FourT => {
                for relator in four_t_relators_unguarded(n) {
                    sys.add_relator(relator.iter())?;
                }
            }
            RelatorKind::Separated => {
                let separated: Vec<ChordDiagram> = sys
                    .basis
                    .iter()
                    .filter(|d| d.is_separated())
                    .cloned()
                    .collect();
                for d in separated {
                    sys.add_relator([&d])?;
                }
            }
            RelatorKind::InsulatedVertex => {
                for j in enumerate_jacobi_unguarded(n, JacobiFilter::Insulated) {
                    let sum = j.stu_reduce();
                    let terms: Vec<&ChordDiagram> = sum.terms().collect();
                    sys.add_relator(terms)?;
                }
            }
            RelatorKind::TwoInsulatedVertex => {
                for j in enumerate_jacobi_unguarded(n, JacobiFilter::TwoInsulatedNonAdjacent) {
                    let sum = j.stu_reduce();
                    let terms: Vec<&ChordDiagram> = sum.terms().collect();
                    sys.add_relator(terms)?;
                }
            }
        }
    }
    Ok(sys)
}

/// An unordered hair-count triple `(a, b, c)` with `a ≤ b ≤ c`.
pub type Triple = (u32, u32, u32);

/// Result of the theta-with-hairs elimination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaQuotient {
    pub dimension: usize,
    /// A surviving generator; `(0, 1, n−2)` whenever that class is nonzero.
    pub generator: Option<Triple>,
}

/// Quotient of the span of theta graphs with `n−1` hairs distributed over
/// the three edges, for odd `n` (the wheel generator is removed by its
/// orientation-reversing symmetry at odd degree).
///
/// Relators: `(a+1,b,c) + (a,b+1,c) + (a,b,c+1) = 0` for every unordered
/// parent with `a+b+c = n−2`, and the vanishing of every triple whose
/// entries are all nonzero. Elimination is exact over the rationals.
pub fn theta_quotient(n: u32) -> Result<ThetaQuotient> {
    theta_quotient_with(n, true)
}

/// The same elimination with the all-nonzero-triple relators optionally
/// dropped; dropping them strictly enlarges the quotient for odd `n ≥ 7`.
pub fn theta_quotient_with(n: u32, kill_interior_triples: bool) -> Result<ThetaQuotient> {
    if n % 2 == 0 {
        return Err(validation(format!(
            "theta quotient is defined for odd n, got {n}"
        )));
    }
    if !(3..=15).contains(&n) {
        return Err(validation(format!("theta quotient requires 3 <= n <= 15, got {n}")));
    }
    let basis = sorted_triples(n - 1);
    let index: HashMap<Triple, usize> = basis.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut relators: Vec<Vec<BigRational>> = Vec::new();
    for parent in sorted_triples(n - 2) {
        let mut row = vec![BigRational::zero(); basis.len()];
        let (a, b, c) = parent;
        for child in [(a + 1, b, c), (a, b + 1, c), (a, b, c + 1)] {
            let i = index[&sort3(child)];
            row[i] += BigRational::one();
        }
        relators.push(row);
    }
    if kill_interior_triples {
        for (i, &(a, _, _)) in basis.iter().enumerate() {
            if a > 0 {
                let mut row = vec![BigRational::zero(); basis.len()];
                row[i] = BigRational::one();
                relators.push(row);
            }
        }
    }

    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let reduce = |mut row: Vec<BigRational>, pivots: &Vec<(usize, Vec<BigRational>)>| {
        for (col, pivot) in pivots {
            if !row[*col].is_zero() {
                let factor = row[*col].clone();
                for (r, p) in row.iter_mut().zip(pivot) {
                    *r -= &factor * p;
                }
            }
        }
        row
    };
    for row in relators {
        let row = reduce(row, &pivots);
        if let Some(col) = row.iter().position(|c| !c.is_zero()) {
            let lead = row[col].clone();
            let normalized: Vec<BigRational> = row.iter().map(|c| c / &lead).collect();
            pivots.push((col, normalized));
        }
    }
    let dimension = basis.len() - pivots.len();

    let survives = |t: Triple| -> bool {
        let mut unit = vec![BigRational::zero(); basis.len()];
        unit[index[&t]] = BigRational::one();
        let reduced = reduce(unit, &pivots);
        reduced.iter().any(|c| !c.is_zero())
    };
    let canonical: Triple = sort3((0, 1, n - 2));
    let generator = if survives(canonical) {
        Some(canonical)
    } else {
        basis.iter().copied().find(|&t| survives(t))
    };
    Ok(ThetaQuotient {
        dimension,
        generator,
    })
}

fn sort3((a, b, c): (u32, u32, u32)) -> Triple {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

fn sorted_triples(total: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 0..=total / 3 {
        for b in a..=(total - a) / 2 {
            out.push((a, b, total - a - b));
        }
    }
    out
}
