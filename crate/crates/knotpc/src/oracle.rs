//! Naive reference implementations used as independent cross-checks in the
//! test suites. Everything here is deliberately brute force and shares no
//! code with the implementations it checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagrams::IntersectionGraph;
use crate::laurent::LaurentPoly;
use crate::series::{binomial, IntSeries};

/// Plain double-loop convolution, truncated at the common order.
pub fn naive_series_mul(f: &IntSeries, g: &IntSeries) -> IntSeries {
    assert_eq!(f.order(), g.order());
    let order = f.order();
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for i in 0..=order {
        for j in 0..=order {
            if i + j <= order {
                coeffs[i + j] += f.coeff(i) * g.coeff(j);
            }
        }
    }
    IntSeries::from_coeffs(order, coeffs).unwrap()
}

/// The degree-`l` coefficient of the discrete exponential of `a`, computed by
/// direct enumeration: `(−1)^l` times the sum over all multi-indices
/// `(i_1, …, i_N)` with `Σ j·i_j = l` of `Π binom(a_j, i_j)`.
pub fn exp_z_coefficient(a: &IntSeries, l: usize) -> BigInt {
    fn recurse(a: &IntSeries, j: usize, remaining: usize) -> BigInt {
        if remaining == 0 {
            return BigInt::one();
        }
        if j > a.order() || j > remaining {
            return BigInt::zero();
        }
        let mut total = BigInt::zero();
        let mut ij = 0usize;
        while j * ij <= remaining {
            let tail = recurse(a, j + 1, remaining - j * ij);
            if !tail.is_zero() {
                total += binomial(a.coeff(j), ij) * tail;
            }
            ij += 1;
        }
        total
    }
    let sum = recurse(a, 1, l);
    if l % 2 == 1 {
        -sum
    } else {
        sum
    }
}

/// Determinant as the signed sum over all permutations.
pub fn det_permutation(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = matrix.len();
    let mut total = LaurentPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut prod = LaurentPoly::one();
        for (i, &j) in p.iter().enumerate() {
            prod = prod.mul(&matrix[i][j]);
        }
        if permutation_sign(p) {
            total = total.add(&prod);
        } else {
            total = total.sub(&prod);
        }
    });
    total
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// True for even permutations.
fn permutation_sign(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Unoriented Hamiltonian cycle count by enumerating all vertex orders that
/// start at vertex 0, then dividing out the two traversal directions.
pub fn hamiltonian_count_permutations(g: &IntersectionGraph) -> u64 {
    let n = g.vertex_count();
    if n < 3 {
        return 0;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut count = 0u64;
    permute(&mut rest, 0, &mut |p| {
        let mut prev = 0usize;
        for &v in p {
            if !g.adjacent(prev, v) {
                return;
            }
            prev = v;
        }
        if g.adjacent(prev, 0) {
            count += 1;
        }
    });
    count / 2
}

/// GF(2) rank by schoolbook elimination on boolean vectors, pivoting on the
/// highest set column instead of the lowest.
pub fn gf2_rank_naive(rows: &[Vec<bool>]) -> usize {
    let mut reduced: Vec<Vec<bool>> = Vec::new();
    for row in rows {
        let mut row = row.clone();
        loop {
            let Some(lead) = row.iter().rposition(|&b| b) else {
                break;
            };
            match reduced
                .iter()
                .find(|r| r.iter().rposition(|&b| b) == Some(lead))
            {
                Some(pivot) => {
                    for (a, b) in row.iter_mut().zip(pivot) {
                        *a ^= b;
                    }
                }
                None => {
                    reduced.push(row);
                    break;
                }
            }
        }
    }
    reduced.len()
}

/// Number of rotation classes of degree-`n` chord diagrams, computed by orbit
/// counting: the average over all `2n` rotations of the number of raw
/// pairings fixed by that rotation.
pub fn chord_class_count_by_symmetry(n: usize) -> usize {
    let len = 2 * n;
    let mut pairings: Vec<Vec<(usize, usize)>> = Vec::new();
    collect_pairings(&mut vec![false; len], &mut Vec::new(), &mut pairings);
    let mut fixed_total = 0usize;
    for r in 0..len {
        for pairing in &pairings {
            let rotated: std::collections::BTreeSet<(usize, usize)> = pairing
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = ((a + r) % len, (b + r) % len);
                    (x.min(y), x.max(y))
                })
                .collect();
            let original: std::collections::BTreeSet<(usize, usize)> =
                pairing.iter().copied().collect();
            if rotated == original {
                fixed_total += 1;
            }
        }
    }
    assert_eq!(fixed_total % len, 0);
    fixed_total / len
}

/// Number of degree-`n` Jacobi diagram classes, generated independently of
/// the structured enumeration: every pairing of edge ends (one end per loop
/// position, three per internal vertex) is visited, invalid diagrams are
/// rejected by the ordinary validator, and classes are separated with the
/// exhaustive-relabeling certificate. Exponential; intended for degree <= 3.
pub fn jacobi_class_count_by_end_pairing(n: usize) -> usize {
    use crate::diagrams::{jacobi_canonical_code_exhaustive, End, JacobiDiagram};
    let mut codes: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    for inner in 0..2 * n {
        let loop_len = 2 * n - inner;
        let mut owners: Vec<End> = (0..loop_len).map(End::Loop).collect();
        for v in 0..inner {
            owners.extend([End::Inner(v); 3]);
        }
        let mut used = vec![false; owners.len()];
        let mut acc: Vec<(End, End)> = Vec::new();
        pair_ends(&owners, &mut used, &mut acc, &mut |edges| {
            if let Ok(d) = JacobiDiagram::new(loop_len, inner, edges.to_vec()) {
                codes.insert(jacobi_canonical_code_exhaustive(&d));
            }
        });
    }
    codes.len()
}

fn pair_ends(
    owners: &[crate::diagrams::End],
    used: &mut Vec<bool>,
    acc: &mut Vec<(crate::diagrams::End, crate::diagrams::End)>,
    visit: &mut impl FnMut(&[(crate::diagrams::End, crate::diagrams::End)]),
) {
    use crate::diagrams::End;
    let Some(first) = used.iter().position(|&u| !u) else {
        visit(acc);
        return;
    };
    used[first] = true;
    for second in first + 1..owners.len() {
        if used[second] {
            continue;
        }
        // No loop edges: diagrams with a self-loop are dropped by convention.
        if let (End::Inner(a), End::Inner(b)) = (owners[first], owners[second]) {
            if a == b {
                continue;
            }
        }
        used[second] = true;
        acc.push((owners[first], owners[second]));
        pair_ends(owners, used, acc, visit);
        acc.pop();
        used[second] = false;
    }
    used[first] = false;
}

fn collect_pairings(
    used: &mut Vec<bool>,
    acc: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let Some(first) = used.iter().position(|&u| !u) else {
        out.push(acc.clone());
        return;
    };
    used[first] = true;
    for second in first + 1..used.len() {
        if used[second] {
            continue;
        }
        used[second] = true;
        acc.push((first, second));
        collect_pairings(used, acc, out);
        acc.pop();
        used[second] = false;
    }
    used[first] = false;
}
