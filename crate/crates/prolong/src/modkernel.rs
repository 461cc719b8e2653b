//! Exact kernels of dense integer matrices through modular imaging.
//!
//! The sparse rational echelon in [`crate::linalg`] is the right tool for
//! the incremental, mostly sparse eliminations used elsewhere, but dense
//! evaluation matrices with fat entries make its coefficient growth
//! explode. This module computes nullspaces the standard exact way
//! instead: row-reduce modulo word-size primes, assemble the Cramer-scaled
//! integer kernel vectors by Chinese remaindering, strip common factors,
//! and check the candidates against the original matrix in exact integer
//! arithmetic. The final check makes the answer unconditional: the free
//! columns give dim(kernel) <= n - rank(mod p) candidates, so a full set of
//! verified independent vectors is the kernel no matter what the primes
//! did. If verification keeps failing the computation falls back to the
//! rational echelon, so the function is total and exact either way.

use crate::linalg::{nullspace, SparseVec};
use crate::{Q, Z};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Largest Mersenne prime below 2^64; leaves headroom for u128 products.
const FIRST_PRIME: u64 = (1 << 61) - 1;
const FIRST_ROUND: usize = 24;
const MAX_PRIMES: usize = 4096;
const STRUCTURE_ATTEMPTS: usize = 3;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed base set decides primality for
/// every u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending stream of primes starting at [`FIRST_PRIME`].
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Primes {
        Primes { next: FIRST_PRIME }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let candidate = self.next;
            self.next -= 2;
            if is_prime(candidate) {
                return candidate;
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); a is nonzero mod the prime p.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

fn reduce_entry(v: &Z, p: u64) -> u64 {
    v.mod_floor(&Z::from(p)).to_u64().expect("residue fits")
}

fn reduce_row(row: &[Z], p: u64) -> Vec<u64> {
    row.iter().map(|v| reduce_entry(v, p)).collect()
}

/// Incremental rank tracker modulo a fixed prime. Rank mod p never exceeds
/// the exact rank, and equals it unless p divides a leading minor.
pub(crate) struct ModEchelon {
    p: u64,
    /// Unit-pivot rows keyed by pivot column, no support left of the pivot.
    rows: BTreeMap<usize, Vec<u64>>,
}

impl ModEchelon {
    pub(crate) fn new() -> ModEchelon {
        ModEchelon::with_prime(FIRST_PRIME)
    }

    fn with_prime(p: u64) -> ModEchelon {
        ModEchelon {
            p,
            rows: BTreeMap::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces the row by the stored pivots and keeps the remainder if it is
    /// nonzero. Returns whether the rank grew, and through which column.
    fn insert_reduced(&mut self, mut row: Vec<u64>) -> Option<usize> {
        for (&col, pivot_row) in &self.rows {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let neg = self.p - c;
            for (target, source) in row.iter_mut().zip(pivot_row) {
                *target = (*target + mulmod(neg, *source, self.p)) % self.p;
            }
        }
        let col = row.iter().position(|&v| v != 0)?;
        let inv = inv_mod(row[col], self.p);
        for v in row.iter_mut() {
            *v = mulmod(*v, inv, self.p);
        }
        self.rows.insert(col, row);
        Some(col)
    }

    pub(crate) fn insert_integers(&mut self, row: &[Z]) -> bool {
        self.insert_reduced(reduce_row(row, self.p)).is_some()
    }
}

/// Pivot structure discovered modulo one prime: which columns carry pivots
/// and which input rows realize them, sorted by pivot column.
struct Structure {
    pivots: Vec<usize>,
    used_rows: Vec<usize>,
}

fn discover(rows: &[Vec<Z>], ncols: usize, p: u64) -> Structure {
    let mut ech = ModEchelon::with_prime(p);
    let mut paired: Vec<(usize, usize)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if let Some(col) = ech.insert_reduced(reduce_row(row, p)) {
            paired.push((col, i));
        }
        if ech.rank() == ncols {
            break;
        }
    }
    paired.sort_unstable();
    Structure {
        pivots: paired.iter().map(|&(c, _)| c).collect(),
        used_rows: paired.iter().map(|&(_, r)| r).collect(),
    }
}

/// Gauss-Jordan on the selected rows with the pivot columns fixed in
/// advance. Returns the fully reduced rows and the determinant of the pivot
/// submatrix, or None when p divides that determinant.
fn replay(selected: &[&Vec<Z>], pivots: &[usize], p: u64) -> Option<(Vec<Vec<u64>>, u64)> {
    let mut w: Vec<Vec<u64>> = selected.iter().map(|r| reduce_row(r, p)).collect();
    let mut det = 1u64;
    for (i, &col) in pivots.iter().enumerate() {
        let v = w[i][col];
        if v == 0 {
            return None;
        }
        det = mulmod(det, v, p);
        let inv = inv_mod(v, p);
        for x in w[i].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = w[i].clone();
        for (j, row) in w.iter_mut().enumerate() {
            let c = row[col];
            if j == i || c == 0 {
                continue;
            }
            let neg = p - c;
            for (target, source) in row.iter_mut().zip(&pivot_row) {
                *target = (*target + mulmod(neg, *source, p)) % p;
            }
        }
    }
    Some((w, det))
}

/// One CRT-tracked kernel candidate: the Cramer-scaled integer vector for a
/// single free column, supported on the pivot columns and that free column.
struct Candidate {
    free_col: usize,
    /// Residues modulo the running modulus, indexed like `support`.
    residues: Vec<Z>,
}

/// det * (the kernel vector with coordinate 1 at the free column), read off
/// one prime's reduced rows.
fn candidate_residues_mod_p(
    reduced: &[Vec<u64>],
    det: u64,
    pivots: &[usize],
    free_col: usize,
    p: u64,
) -> Vec<u64> {
    let mut out = Vec::with_capacity(pivots.len() + 1);
    for i in 0..pivots.len() {
        let c = reduced[i][free_col];
        out.push(if c == 0 { 0 } else { p - mulmod(c, det, p) });
    }
    out.push(det);
    out
}

fn crt_step(current: &mut Z, modulus: &Z, residue: u64, p: u64) {
    // current' = current + modulus * ((residue - current) / modulus mod p).
    let p_z = Z::from(p);
    let cur_mod_p = reduce_entry(current, p);
    let diff = (residue + p - cur_mod_p) % p;
    let m_inv = inv_mod(reduce_entry(modulus, p), p);
    let t = mulmod(diff, m_inv, p);
    *current += modulus * Z::from(t);
    debug_assert!(current.mod_floor(&p_z).to_u64() == Some(residue));
}

fn symmetric_lift(residue: &Z, modulus: &Z) -> Z {
    if residue + residue > *modulus {
        residue - modulus
    } else {
        residue.clone()
    }
}

/// Divides by the gcd of the entries and makes the anchor coordinate
/// positive. The anchor is the last support entry (the free column).
fn primitivize(entries: &mut [Z]) {
    let mut g = Z::zero();
    for v in entries.iter() {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return;
    }
    if entries.last().map(Signed::is_negative) == Some(true) {
        g = -g;
    }
    for v in entries.iter_mut() {
        *v = &*v / &g;
    }
}

/// Exact check: does the vector kill every row?
fn kills_all_rows(rows: &[Vec<Z>], support: &[usize], entries: &[Z]) -> bool {
    rows.iter().all(|row| {
        let mut dot = Z::zero();
        for (&col, v) in support.iter().zip(entries) {
            if !v.is_zero() {
                dot += &row[col] * v;
            }
        }
        dot.is_zero()
    })
}

/// Primitive integer kernel basis of the matrix with the given rows, one
/// vector per free column in ascending column order, each sign-normalized
/// so its free coordinate is positive. Exact for every input; the modular
/// imaging only decides how fast the answer arrives.
pub(crate) fn integer_kernel(rows: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    if ncols == 0 {
        return Vec::new();
    }
    if rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
        return (0..ncols)
            .map(|f| {
                let mut v = vec![Z::zero(); ncols];
                v[f] = Z::one();
                v
            })
            .collect();
    }
    let mut primes = Primes::new();
    for _ in 0..STRUCTURE_ATTEMPTS {
        let structure_prime = primes.next_prime();
        let structure = discover(rows, ncols, structure_prime);
        if structure.pivots.len() == ncols {
            // Full column rank mod p forces full column rank exactly.
            return Vec::new();
        }
        if let Some(kernel) = kernel_for_structure(rows, ncols, &structure, &mut primes) {
            return kernel;
        }
    }
    // Unreachable in practice; keeps the function exact unconditionally.
    exact_kernel_by_echelon(rows, ncols)
}

fn kernel_for_structure(
    rows: &[Vec<Z>],
    ncols: usize,
    structure: &Structure,
    primes: &mut Primes,
) -> Option<Vec<Vec<Z>>> {
    let selected: Vec<&Vec<Z>> = structure.used_rows.iter().map(|&i| &rows[i]).collect();
    let pivot_set: std::collections::BTreeSet<usize> = structure.pivots.iter().copied().collect();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    // Kernel vectors live on the pivot columns plus their own free column.
    let support_of = |f: usize| -> Vec<usize> {
        let mut s = structure.pivots.clone();
        s.push(f);
        s
    };
    let mut candidates: Vec<Candidate> = free_cols
        .iter()
        .map(|&f| Candidate {
            free_col: f,
            residues: vec![Z::zero(); structure.pivots.len() + 1],
        })
        .collect();
    let mut modulus = Z::one();
    let mut used = 0usize;
    let mut round_target = FIRST_ROUND;
    loop {
        while used < round_target {
            let p = primes.next_prime();
            let Some((reduced, det)) = replay(&selected, &structure.pivots, p) else {
                // p divides the pivot determinant; any other prime serves.
                continue;
            };
            for cand in candidates.iter_mut() {
                let res_p =
                    candidate_residues_mod_p(&reduced, det, &structure.pivots, cand.free_col, p);
                for (cur, r) in cand.residues.iter_mut().zip(res_p) {
                    crt_step(cur, &modulus, r, p);
                }
            }
            modulus *= Z::from(p);
            used += 1;
        }
        let mut kernel = Vec::with_capacity(candidates.len());
        let mut all_verified = true;
        for cand in &candidates {
            let mut entries: Vec<Z> = cand
                .residues
                .iter()
                .map(|r| symmetric_lift(r, &modulus))
                .collect();
            primitivize(&mut entries);
            let support = support_of(cand.free_col);
            if !kills_all_rows(rows, &support, &entries) {
                all_verified = false;
                break;
            }
            let mut v = vec![Z::zero(); ncols];
            for (&col, e) in support.iter().zip(entries) {
                v[col] = e;
            }
            kernel.push(v);
        }
        if all_verified {
            // Candidates iterate the free columns in ascending order already.
            return Some(kernel);
        }
        if round_target >= MAX_PRIMES {
            return None;
        }
        round_target *= 2;
    }
}

/// Slow exact path: rational echelon nullspace, cleared to primitive
/// integer vectors. Oracle for the modular route and its last resort.
fn exact_kernel_by_echelon(rows: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    let sparse_rows = rows.iter().map(|row| {
        row.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, Q::from(v.clone())))
            .collect::<SparseVec>()
    });
    nullspace(sparse_rows, ncols)
        .into_iter()
        .map(|v| {
            // Clear denominators, then strip the common factor. The free
            // coordinate starts at 1, so it stays positive throughout.
            let mut denom = Z::one();
            for c in v.values() {
                denom = denom.lcm(c.denom());
            }
            let mut out = vec![Z::zero(); ncols];
            for (&i, c) in &v {
                out[i] = c.numer() * (&denom / c.denom());
            }
            let mut g = Z::zero();
            for e in &out {
                g = g.gcd(e);
            }
            if !g.is_zero() && !g.is_one() {
                for e in out.iter_mut() {
                    *e = &*e / &g;
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Echelon;
    use crate::sample::SampleConfig;

    fn z(v: i64) -> Z {
        Z::from(v)
    }

    fn canonical_span(vectors: &[Vec<Z>]) -> Vec<Vec<Q>> {
        let mut ech = Echelon::new();
        for v in vectors {
            let row: SparseVec = v
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| (i, Q::from(e.clone())))
                .collect();
            ech.insert(row);
        }
        let n = vectors.first().map(|v| v.len()).unwrap_or(0);
        ech.into_rref()
            .into_iter()
            .map(|row| {
                (0..n)
                    .map(|i| row.get(&i).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect()
    }

    fn random_matrix(seed: u64, nrows: usize, ncols: usize) -> Vec<Vec<Z>> {
        let mut rng = SampleConfig::with_range(seed, 19).rng();
        (0..nrows)
            .map(|_| {
                (0..ncols)
                    .map(|_| z(rng.draw() as i64 - 10))
                    .collect::<Vec<Z>>()
            })
            .collect()
    }

    #[test]
    fn matches_the_rational_echelon_on_random_matrices() {
        for seed in 0..40u64 {
            let nrows = 1 + (seed as usize % 9);
            let ncols = 2 + (seed as usize * 7 % 8);
            let mut rows = random_matrix(seed, nrows, ncols);
            if seed % 3 == 0 && rows.len() >= 2 {
                // Plant a dependent row so the rank drops.
                let dup: Vec<Z> = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
                rows.push(dup);
            }
            let fast = integer_kernel(&rows, ncols);
            let slow = exact_kernel_by_echelon(&rows, ncols);
            assert_eq!(
                canonical_span(&fast),
                canonical_span(&slow),
                "seed {seed}: kernels span different spaces"
            );
            assert_eq!(fast.len(), slow.len());
            for v in &fast {
                let support: Vec<usize> = (0..ncols).collect();
                assert!(kills_all_rows(&rows, &support, v), "seed {seed}");
                let mut g = Z::zero();
                for e in v {
                    g = g.gcd(e);
                }
                assert!(g.is_one(), "seed {seed}: vector not primitive");
            }
        }
    }

    #[test]
    fn huge_entries_take_several_rounds_and_stay_exact() {
        // Entries around 10^80 push the Cramer scalings past the first CRT
        // round, exercising the doubling loop.
        let big = Z::from(10u32).pow(80);
        let mut rows = random_matrix(7, 6, 8);
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = &*v * &big + z((i as i64 + 2) * (j as i64 + 3));
            }
        }
        let fast = integer_kernel(&rows, 8);
        let slow = exact_kernel_by_echelon(&rows, 8);
        assert_eq!(fast.len(), 2);
        assert_eq!(canonical_span(&fast), canonical_span(&slow));
    }

    #[test]
    fn zero_matrix_and_full_rank_edges() {
        let zeros = vec![vec![Z::zero(); 4]; 3];
        let kernel = integer_kernel(&zeros, 4);
        assert_eq!(kernel.len(), 4);
        for (i, v) in kernel.iter().enumerate() {
            assert!(v[i].is_one());
        }

        let identity: Vec<Vec<Z>> = (0..4)
            .map(|i| (0..4).map(|j| z((i == j) as i64)).collect())
            .collect();
        assert!(integer_kernel(&identity, 4).is_empty());

        let no_rows: Vec<Vec<Z>> = Vec::new();
        assert!(integer_kernel(&no_rows, 0).is_empty());
    }

    #[test]
    fn single_relation_comes_out_primitive_and_sign_normalized() {
        // Rows of [6, 10, 15] scaled: kernel of the 2x3 matrix below is
        // spanned by (5, -5, 2).
        let rows = vec![
            vec![z(2), z(4), z(5)],
            vec![z(4), z(8), z(10)],
            vec![z(1), z(3), z(5)],
        ];
        let kernel = integer_kernel(&rows, 3);
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        assert!(kills_all_rows(&rows, &[0, 1, 2], v));
        let mut g = Z::zero();
        for e in v {
            g = g.gcd(e);
        }
        assert!(g.is_one());
        // Anchor coordinate (the free column) is positive.
        assert!(v.iter().rev().find(|e| !e.is_zero()).unwrap().is_positive());
    }

    #[test]
    fn deterministic_across_calls() {
        let rows = random_matrix(11, 5, 7);
        assert_eq!(integer_kernel(&rows, 7), integer_kernel(&rows, 7));
    }

    #[test]
    fn rank_tracker_agrees_with_exact_rank() {
        for seed in 0..25u64 {
            let nrows = 1 + (seed as usize % 7);
            let ncols = 2 + (seed as usize * 5 % 6);
            let rows = random_matrix(seed + 100, nrows, ncols);
            let mut tracker = ModEchelon::new();
            for row in &rows {
                tracker.insert_integers(row);
            }
            let mut exact = Echelon::new();
            for row in &rows {
                let sparse: SparseVec = row
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, Q::from(v.clone())))
                    .collect();
                exact.insert(sparse);
            }
            assert_eq!(tracker.rank(), exact.rank(), "seed {}", seed + 100);
        }
    }

    #[test]
    fn prime_stream_is_prime_and_descending() {
        let mut primes = Primes::new();
        let first = primes.next_prime();
        assert_eq!(first, (1 << 61) - 1);
        let mut prev = first;
        for _ in 0..50 {
            let p = primes.next_prime();
            assert!(p < prev);
            assert!(is_prime(p));
            prev = p;
        }
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(!is_prime((1 << 61) + 1));
    }
}
