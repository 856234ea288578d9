//! Quadratic-residue machinery and linear algebra over F_2.
//!
//! Covers Legendre symbols, the residue/non-residue partition of
//! (Z/pZ)^x, Gaussian sums inside Q(zeta_p), the two Q/N product
//! identities, and word-packed F_2 matrices with rank and nullspace
//! computation, including the all-ones-off-diagonal rank lemma used by
//! the sign-system step.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{is_odd_prime, rat, rat_frac, CycNum, Rational};

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (r | p) via Euler's criterion.
pub fn legendre(r: i64, p: u64) -> Result<i32> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    let r = r.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = mod_pow(r, (p - 1) / 2, p);
    if e == 1 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// The residue/non-residue partition of {1, ..., p-1} together with the
/// sign epsilon with p = epsilon mod 4.
#[derive(Clone, Debug)]
pub struct ResidueData {
    p: u64,
    epsilon: i32,
    q_set: Vec<u64>,
    n_set: Vec<u64>,
    is_residue: Vec<bool>,
}

impl ResidueData {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn epsilon(&self) -> i32 {
        self.epsilon
    }

    /// Least positive representatives of the quadratic residues, sorted.
    pub fn residues(&self) -> &[u64] {
        &self.q_set
    }

    /// Least positive representatives of the non-residues, sorted.
    pub fn non_residues(&self) -> &[u64] {
        &self.n_set
    }

    pub fn is_residue(&self, x: u64) -> bool {
        self.is_residue[(x % self.p) as usize]
    }

    /// Least positive non-residue; the canonical choice of n.
    pub fn least_non_residue(&self) -> u64 {
        self.n_set[0]
    }
}

/// Computes Q, N and epsilon by direct square enumeration.
pub fn residue_sets(p: u64) -> Result<ResidueData> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    let mut is_residue = vec![false; p as usize];
    for x in 1..p {
        is_residue[((x as u128 * x as u128) % p as u128) as usize] = true;
    }
    let q_set: Vec<u64> = (1..p).filter(|&x| is_residue[x as usize]).collect();
    let n_set: Vec<u64> = (1..p).filter(|&x| !is_residue[x as usize]).collect();
    let epsilon = if p % 4 == 1 { 1 } else { -1 };
    Ok(ResidueData { p, epsilon, q_set, n_set, is_residue })
}

/// sum_{e in set} zeta^e as an exact element of Q(zeta_p).
pub fn root_sum(p: u64, set: &[u64]) -> Result<CycNum> {
    let mut raw = vec![Rational::zero(); p as usize];
    for &e in set {
        raw[(e % p) as usize] += rat(1);
    }
    CycNum::reduce(p, &raw)
}

/// The Gaussian sum 1 + 2 sum_{q in Q} zeta^q, a square root of epsilon * p.
pub fn gauss_sum(p: u64) -> Result<CycNum> {
    let rd = residue_sets(p)?;
    let sq = root_sum(p, rd.residues())?;
    CycNum::one(p)?.try_add(&sq.scale(&rat(2)))
}

/// The non-residue analogue 1 + 2 sum_{n in N} zeta^n = -gauss_sum(p).
pub fn gauss_sum_n(p: u64) -> Result<CycNum> {
    let rd = residue_sets(p)?;
    let sn = root_sum(p, rd.non_residues())?;
    CycNum::one(p)?.try_add(&sn.scale(&rat(2)))
}

/// The two Q/N product identities:
/// SQ*SQ + SN*SN = (epsilon p + 1)/2 and SN*SQ + SQ*SN = (-epsilon p + 1)/2,
/// where SQ = sum_{q in Q} zeta^q and SN = sum_{n in N} zeta^n.
///
/// Both left-hand sides are computed symbolically; a mismatch with the
/// closed form is reported as an identity violation.
pub fn product_identities(p: u64) -> Result<(Rational, Rational)> {
    let rd = residue_sets(p)?;
    let sq = root_sum(p, rd.residues())?;
    let sn = root_sum(p, rd.non_residues())?;
    let same = sq.try_mul(&sq)?.try_add(&sn.try_mul(&sn)?)?;
    let cross = sn.try_mul(&sq)?.try_add(&sq.try_mul(&sn)?)?;
    let e = rd.epsilon() as i64;
    let same_expected = rat_frac(e * p as i64 + 1, 2);
    let cross_expected = rat_frac(-e * p as i64 + 1, 2);
    let same_val = same
        .to_rational()
        .ok_or_else(|| Error::IdentityViolation(format!("QQ+NN not rational at p = {p}")))?;
    let cross_val = cross
        .to_rational()
        .ok_or_else(|| Error::IdentityViolation(format!("NQ+QN not rational at p = {p}")))?;
    if same_val != same_expected || cross_val != cross_expected {
        return Err(Error::IdentityViolation(format!(
            "product identities fail at p = {p}: got ({same_val}, {cross_val})"
        )));
    }
    Ok((same_val, cross_val))
}

/// Dense bit matrix over F_2, rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> F2Matrix {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        let words_per_row = cols.div_ceil(64);
        F2Matrix { rows, cols, words_per_row, bits: vec![0; rows * words_per_row] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> F2Matrix {
        let mut m = F2Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = i * self.words_per_row + j / 64;
        if v {
            self.bits[w] |= 1 << (j % 64);
        } else {
            self.bits[w] &= !(1 << (j % 64));
        }
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.words_per_row, source * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.bits[s + k];
            self.bits[t + k] ^= v;
        }
    }

    /// Row-echelon elimination; returns pivot column per eliminated row.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let mut pivot_row = None;
            for r in row..self.rows {
                if self.get(r, col) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for k in 0..self.words_per_row {
                    self.bits.swap(row * self.words_per_row + k, pr * self.words_per_row + k);
                }
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }
}

/// Rank over F_2 via word-packed elimination.
pub fn f2_rank(m: &F2Matrix) -> usize {
    let mut work = m.clone();
    work.eliminate().len()
}

/// Basis of the right kernel over F_2, one 0/1 vector per free column.
pub fn f2_nullspace(m: &F2Matrix) -> Vec<Vec<u8>> {
    let mut work = m.clone();
    let pivots = work.eliminate();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u8; m.cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            if work.get(r, free) {
                v[pc] = 1;
            }
        }
        basis.push(v);
    }
    basis
}

/// The m x m matrix with zero diagonal and ones elsewhere.
pub fn lemma_matrix(m: usize) -> F2Matrix {
    assert!(m >= 1);
    F2Matrix::from_fn(m, m, |i, j| i != j)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent rank oracle over F_2: naive elimination on u8 entries.
    fn naive_rank(m: &F2Matrix) -> usize {
        let mut a: Vec<Vec<u8>> =
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect()).collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(pr) = (rank..m.rows()).find(|&r| a[r][col] == 1) else { continue };
            a.swap(rank, pr);
            for r in 0..m.rows() {
                if r != rank && a[r][col] == 1 {
                    for c in 0..m.cols() {
                        a[r][c] ^= a[rank][c];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(4, 7).unwrap(), 1);
        assert_eq!(legendre(21, 3).unwrap(), 0);
        assert!(legendre(1, 2).is_err());
        assert!(legendre(1, 9).is_err());
    }

    #[test]
    fn legendre_is_multiplicative() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p as i64 {
                for b in 1..p as i64 {
                    assert_eq!(
                        legendre(a * b, p).unwrap(),
                        legendre(a, p).unwrap() * legendre(b, p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn legendre_sums_to_zero() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let s: i32 = (1..p as i64).map(|i| legendre(i, p).unwrap()).sum();
            assert_eq!(s, 0, "p = {p}");
        }
    }

    #[test]
    fn residue_set_examples() {
        let r3 = residue_sets(3).unwrap();
        assert_eq!((r3.epsilon(), r3.residues(), r3.non_residues()), (-1, &[1u64][..], &[2u64][..]));
        let r5 = residue_sets(5).unwrap();
        assert_eq!((r5.epsilon(), r5.residues(), r5.non_residues()), (1, &[1u64, 4][..], &[2u64, 3][..]));
        let r7 = residue_sets(7).unwrap();
        assert_eq!(
            (r7.epsilon(), r7.residues(), r7.non_residues()),
            (-1, &[1u64, 2, 4][..], &[3u64, 5, 6][..])
        );
    }

    #[test]
    fn residue_sets_partition() {
        for p in [3u64, 5, 7, 11, 13, 29, 97] {
            let rd = residue_sets(p).unwrap();
            assert_eq!(rd.residues().len(), (p as usize - 1) / 2);
            assert_eq!(rd.non_residues().len(), (p as usize - 1) / 2);
            let mut all: Vec<u64> = rd.residues().iter().chain(rd.non_residues()).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (1..p).collect::<Vec<_>>());
            assert_eq!(rd.epsilon(), if p % 4 == 1 { 1 } else { -1 });
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let g3 = gauss_sum(3).unwrap();
        assert_eq!(g3, CycNum::reduce(3, &[rat(1), rat(2)]).unwrap());
        assert_eq!(g3.try_mul(&g3).unwrap(), CycNum::from_int(3, -3).unwrap());
        let g5 = gauss_sum(5).unwrap();
        assert_eq!(g5.try_mul(&g5).unwrap(), CycNum::from_int(5, 5).unwrap());
        // Q-sum and N-sum variants are negatives of each other.
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(gauss_sum_n(p).unwrap(), gauss_sum(p).unwrap().negate());
        }
    }

    #[test]
    fn gauss_sum_galois_action() {
        for p in [3u64, 5, 7, 11, 13] {
            let rd = residue_sets(p).unwrap();
            let g = gauss_sum(p).unwrap();
            for &q in rd.residues() {
                assert_eq!(g.galois(q).unwrap(), g);
            }
            for &n in rd.non_residues() {
                assert_eq!(g.galois(n).unwrap(), g.negate());
            }
        }
    }

    #[test]
    fn product_identity_examples() {
        assert_eq!(product_identities(3).unwrap(), (rat(-1), rat(2)));
        assert_eq!(product_identities(5).unwrap(), (rat(3), rat(-2)));
        assert_eq!(product_identities(7).unwrap(), (rat(-3), rat(4)));
    }

    #[test]
    fn lemma_matrix_examples() {
        let m1 = lemma_matrix(1);
        assert!(!m1.get(0, 0));
        let m3 = lemma_matrix(3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m3.get(i, j), i != j);
            }
        }
        assert_eq!(f2_rank(&lemma_matrix(3)), 2);
        assert_eq!(f2_rank(&lemma_matrix(5)), 4);
        assert_eq!(f2_rank(&lemma_matrix(4)), 4);
    }

    #[test]
    fn rank_matches_naive_oracle() {
        for m in 1..40 {
            let a = lemma_matrix(m);
            assert_eq!(f2_rank(&a), naive_rank(&a), "m = {m}");
        }
        // A few structured non-lemma matrices.
        let tri = F2Matrix::from_fn(6, 6, |i, j| j >= i);
        assert_eq!(f2_rank(&tri), naive_rank(&tri));
        let circ = F2Matrix::from_fn(8, 8, |i, j| (i + j) % 3 == 0);
        assert_eq!(f2_rank(&circ), naive_rank(&circ));
    }

    #[test]
    fn nullspace_examples() {
        let b3 = f2_nullspace(&lemma_matrix(3));
        assert_eq!(b3, vec![vec![1u8, 1, 1]]);
        let b7 = f2_nullspace(&lemma_matrix(7));
        assert_eq!(b7, vec![vec![1u8; 7]]);
        let id = F2Matrix::from_fn(4, 4, |i, j| i == j);
        assert!(f2_nullspace(&id).is_empty());
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        for m in [3usize, 5, 9, 15, 31] {
            let a = lemma_matrix(m);
            for v in f2_nullspace(&a) {
                for i in 0..m {
                    let dot: u8 = (0..m).map(|j| (a.get(i, j) as u8) & v[j]).fold(0, |x, y| x ^ y);
                    assert_eq!(dot, 0);
                }
            }
            assert_eq!(f2_nullspace(&a).len(), m - f2_rank(&a));
        }
    }

    #[test]
    fn wide_matrix_crosses_word_boundary() {
        // 70 columns forces two words per row.
        let a = F2Matrix::from_fn(3, 70, |i, j| (i + j) % 2 == 0);
        assert_eq!(f2_rank(&a), naive_rank(&a));
        assert_eq!(f2_nullspace(&a).len(), 70 - f2_rank(&a));
    }
}
