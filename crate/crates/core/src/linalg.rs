//! Exact rank and kernel computations for sparse matrices over `Q` and
//! over prime fields.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{inv_mod, mul_mod, sub_mod, PrimeSource, Rational};
use crate::error::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

/// Coordinate-format sparse matrix. Entries are sorted by `(row, col)`,
/// unique, and nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<T> {
    rows: usize,
    cols: usize,
    field: FieldTag,
    entries: Vec<(usize, usize, T)>,
}

pub type QMat = SparseMat<Rational>;
pub type FpMat = SparseMat<u64>;

impl<T> SparseMat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn check_index(rows: usize, cols: usize, r: usize, c: usize) {
        assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
    }
}

impl QMat {
    /// Builds a rational matrix; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        it: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut raw: Vec<(usize, usize, Rational)> = it.into_iter().collect();
        raw.sort_by_key(|a| (a.0, a.1));
        let mut entries: Vec<(usize, usize, Rational)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            Self::check_index(rows, cols, r, c);
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = &last.2 + &v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero());
        SparseMat {
            rows,
            cols,
            field: FieldTag::Rationals,
            entries,
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        QMat::from_triplets(
            rows.len(),
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn reduce_mod(&self, p: u64) -> Result<FpMat, ArithError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (r, c, v) in &self.entries {
            let e = v.reduce_mod(p)?.value();
            if e != 0 {
                entries.push((*r, *c, e));
            }
        }
        Ok(SparseMat {
            rows: self.rows,
            cols: self.cols,
            field: FieldTag::Prime(p),
            entries,
        })
    }

    /// `m * v` computed exactly.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, a) in &self.entries {
            out[*r] = &out[*r] + &(a * &v[*c]);
        }
        out
    }

    fn dense_integer_rows(&self) -> Vec<Vec<BigInt>> {
        let mut dense = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            dense[*r][*c] = v.clone();
        }
        dense
            .into_iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.into_iter()
                    .map(|q| q.numer() * (&l / q.denom()))
                    .collect()
            })
            .collect()
    }
}

impl FpMat {
    pub fn from_triplets_mod(
        rows: usize,
        cols: usize,
        p: u64,
        it: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Self {
        let mut raw: Vec<(usize, usize, u64)> = it.into_iter().collect();
        raw.sort_unstable_by_key(|a| (a.0, a.1));
        let mut entries: Vec<(usize, usize, u64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            Self::check_index(rows, cols, r, c);
            let v = v % p;
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = (last.2 + v) % p,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        SparseMat {
            rows,
            cols,
            field: FieldTag::Prime(p),
            entries,
        }
    }

    pub fn modulus(&self) -> u64 {
        match self.field {
            FieldTag::Prime(p) => p,
            FieldTag::Rationals => unreachable!("FpMat always carries a prime"),
        }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let p = self.modulus();
        let mut out = vec![0u64; self.rows];
        for (r, c, a) in &self.entries {
            out[*r] = (out[*r] + mul_mod(*a, v[*c], p)) % p;
        }
        out
    }

    fn row_vectors(&self) -> Vec<Vec<(u32, u64)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c as u32, *v));
        }
        out
    }

    fn col_vectors(&self) -> Vec<Vec<(u32, u64)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r as u32, *v));
        }
        out
    }
}

/// Left-looking sparse elimination of a family of vectors of length `len`.
/// Returns the rank of their span.
///
/// Vectors are processed by increasing fill; each reduced vector picks as
/// pivot the coordinate with the smallest original occupancy (ties to the
/// lowest index), which is the Markowitz cost restricted to one candidate row.
pub fn sparse_rank_mod_p(mut vectors: Vec<Vec<(u32, u64)>>, len: usize, p: u64) -> usize {
    let target = vectors.len().min(len);
    let mut occupancy = vec![0u32; len];
    for v in &vectors {
        for (c, _) in v {
            occupancy[*c as usize] += 1;
        }
    }
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&i| (vectors[i].len(), i));

    let p2 = p * p;
    let mut acc = vec![0u64; len];
    let mut pivots: Vec<(u32, Vec<(u32, u64)>)> = Vec::new();
    for i in order {
        if pivots.len() == target {
            break;
        }
        let v = std::mem::take(&mut vectors[i]);
        if v.is_empty() {
            continue;
        }
        for (c, a) in &v {
            acc[*c as usize] = *a;
        }
        for (pc, row) in &pivots {
            let a = acc[*pc as usize] % p;
            if a == 0 {
                continue;
            }
            let m = p - a;
            for (c, val) in row {
                let slot = &mut acc[*c as usize];
                let t = *slot + m * val;
                *slot = if t >= p2 { t - p2 } else { t };
            }
        }
        let mut best: Option<(u32, u32)> = None;
        let mut nz: Vec<(u32, u64)> = Vec::new();
        for (c, slot) in acc.iter_mut().enumerate() {
            if *slot == 0 {
                continue;
            }
            let r = *slot % p;
            *slot = 0;
            if r != 0 {
                nz.push((c as u32, r));
                let key = (occupancy[c], c as u32);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        if let Some((_, pc)) = best {
            let pv = nz.iter().find(|e| e.0 == pc).unwrap().1;
            let inv = inv_mod(pv, p);
            for e in nz.iter_mut() {
                e.1 = mul_mod(e.1, inv, p);
            }
            pivots.push((pc, nz));
        }
    }
    pivots.len()
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &FpMat) -> usize {
    let p = m.modulus();
    if m.rows <= m.cols {
        sparse_rank_mod_p(m.row_vectors(), m.cols, p)
    } else {
        sparse_rank_mod_p(m.col_vectors(), m.rows, p)
    }
}

/// Reduced row echelon form over `F_p`, pivoting on the leftmost column.
/// Returns the nonzero rows and their pivot columns.
pub fn rref_mod_p(m: &FpMat) -> (Vec<Vec<u64>>, Vec<usize>) {
    let p = m.modulus();
    let mut a = vec![vec![0u64; m.cols]; m.rows];
    for (r, c, v) in &m.entries {
        a[*r][*c] = *v;
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for v in a[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if *y != 0 {
                    *x = sub_mod(*x, mul_mod(f, *y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of the right kernel over `F_p`, one vector per non-pivot column of
/// the reduced echelon form.
pub fn kernel_basis_mod_p(m: &FpMat) -> Vec<Vec<u64>> {
    let p = m.modulus();
    let (rref, pivots) = rref_mod_p(m);
    let is_pivot: HashSet<usize> = pivots.iter().copied().collect();
    (0..m.cols)
        .filter(|c| !is_pivot.contains(c))
        .map(|free| {
            let mut v = vec![0u64; m.cols];
            v[free] = 1;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = sub_mod(0, row[free], p);
            }
            v
        })
        .collect()
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn rank_exact(m: &QMat) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    // rank is unchanged by scaling columns, so make each one primitive
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    let mut by_col: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); cols];
    for (r, c, v) in &m.entries {
        by_col[*c].push((*r, v));
    }
    for (c, col) in by_col.iter().enumerate() {
        let l = col.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut ints: Vec<BigInt> = col.iter().map(|(_, q)| q.numer() * (&l / q.denom())).collect();
        remove_content(&mut ints);
        for ((r, _), x) in col.iter().zip(ints) {
            a[*r][c] = x;
        }
    }
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for x in row[c + 1..].iter_mut().filter(|x| !x.is_zero()) {
                *x *= piv;
            }
            if !lead.is_zero() {
                for &j in &support {
                    row[j] -= &lead * &pivot_row[j];
                }
            }
            if !prev.is_one() {
                for x in row[c + 1..].iter_mut().filter(|x| !x.is_zero()) {
                    *x /= &prev;
                }
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// Basis of the right kernel over `Q`, each vector scaled to coprime
/// integer entries. Computed by integer-preserving Gauss-Jordan elimination.
pub fn kernel_basis_exact(m: &QMat) -> Vec<Vec<Rational>> {
    let mut a = m.dense_integer_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let (s, t) = (&pivot_row[c] / &g, &row[c] / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &s - &t * y;
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    let is_pivot: HashSet<usize> = pivots.iter().copied().collect();
    (0..cols)
        .filter(|c| !is_pivot.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = Rational::new(-&row[free], row[pc].clone()).expect("nonzero pivot");
            }
            primitive_integer_vector(v)
        })
        .collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational vector to coprime integers with a positive leading entry.
pub fn primitive_integer_vector(v: Vec<Rational>) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    remove_content(&mut ints);
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Rational::from_int).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankMethod {
    MultiModular,
    FractionFreeExact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub primes_used: Vec<u64>,
    /// Rank observed for each entry of `primes_used`.
    pub ranks: Vec<usize>,
    pub skipped_primes: Vec<u64>,
    pub method: RankMethod,
    pub agreement: bool,
}

impl RankCertificate {
    /// A rank mod p never exceeds the rank over Q, so the reported value is
    /// the maximum observed; it is exact unless every sampled prime divides
    /// the same nonzero minor.
    pub const SOUNDNESS_NOTE: &'static str =
        "rank mod p <= rank over Q; maximum over agreeing primes reported";

    pub fn exact(rank: usize) -> Self {
        RankCertificate {
            rank,
            primes_used: Vec::new(),
            ranks: Vec::new(),
            skipped_primes: Vec::new(),
            method: RankMethod::FractionFreeExact,
            agreement: true,
        }
    }
}

const MAX_PRIME_ATTEMPTS: usize = 64;

/// Rank over `Q` from ranks modulo fresh primes: stops once the last
/// `min_agree` primes all attain the maximum rank seen so far.
pub fn multi_modular_rank(m: &QMat, min_agree: usize, primes: &mut dyn PrimeSource) -> RankCertificate {
    multi_modular_value(min_agree, primes, |p| m.reduce_mod(p).map(|mp| rank_mod_p(&mp)), Extremum::Max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    /// Unlucky primes can only lower the observed value.
    Max,
    /// Unlucky primes can only raise the observed value.
    Min,
}

/// Shared driver for multi-modular integer invariants.
pub fn multi_modular_value(
    min_agree: usize,
    primes: &mut dyn PrimeSource,
    mut eval: impl FnMut(u64) -> Result<usize, ArithError>,
    extremum: Extremum,
) -> RankCertificate {
    assert!(min_agree >= 2, "multi-modular agreement needs at least two primes");
    let mut exclude = HashSet::new();
    let mut cert = RankCertificate {
        rank: 0,
        primes_used: Vec::new(),
        ranks: Vec::new(),
        skipped_primes: Vec::new(),
        method: RankMethod::MultiModular,
        agreement: false,
    };
    for _ in 0..MAX_PRIME_ATTEMPTS {
        let p = primes.next_prime(&exclude);
        exclude.insert(p);
        match eval(p) {
            Err(_) => {
                log::debug!("skipping bad prime {p}");
                cert.skipped_primes.push(p);
                continue;
            }
            Ok(r) => {
                cert.primes_used.push(p);
                cert.ranks.push(r);
            }
        }
        let best = match extremum {
            Extremum::Max => *cert.ranks.iter().max().unwrap(),
            Extremum::Min => *cert.ranks.iter().min().unwrap(),
        };
        cert.rank = best;
        let n = cert.ranks.len();
        if n >= min_agree && cert.ranks[n - min_agree..].iter().all(|&r| r == best) {
            cert.agreement = true;
            return cert;
        }
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeSampler, ScriptedPrimes};

    const P: u64 = 1_073_741_827;

    fn qm(rows: &[&[i64]]) -> QMat {
        QMat::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_mod_p_examples() {
        let id = FpMat::from_triplets_mod(2, 2, P, [(0, 0, 1), (1, 1, 1)]);
        assert_eq!(rank_mod_p(&id), 2);
        let zero = FpMat::from_triplets_mod(3, 4, P, []);
        assert_eq!(rank_mod_p(&zero), 0);
    }

    #[test]
    fn kernel_examples() {
        let id = FpMat::from_triplets_mod(2, 2, P, [(0, 0, 1), (1, 1, 1)]);
        assert!(kernel_basis_mod_p(&id).is_empty());
        let row = FpMat::from_triplets_mod(1, 2, P, [(0, 0, 1), (0, 1, 1)]);
        let k = kernel_basis_mod_p(&row);
        assert_eq!(k, vec![vec![P - 1, 1]]);
        assert_eq!(row.mul_vec(&k[0]), vec![0]);
    }

    #[test]
    fn exact_rank_examples() {
        assert_eq!(rank_exact(&qm(&[&[1, 2], &[2, 4]])), 1);
        let r = |n, d| Rational::new(n, d).unwrap();
        let m = QMat::from_dense(&[vec![r(1, 2), r(1, 3)], vec![r(1, 4), r(1, 5)]]);
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn exact_kernel_is_annihilated() {
        let m = qm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let k = kernel_basis_exact(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn multimodular_small_cases() {
        let m = qm(&[&[2, 0], &[0, 3]]);
        let script = ScriptedPrimes::new([5, 7], PrimeSampler::default());
        let mut src = script;
        let cert = multi_modular_rank(&m, 2, &mut src);
        assert_eq!(cert.rank, 2);
        assert!(cert.agreement);
        assert_eq!(cert.primes_used, vec![5, 7]);
    }

    #[test]
    fn multimodular_recovers_from_unlucky_prime() {
        let sampler = PrimeSampler::new(99);
        let first = sampler.clone().fresh_prime(&HashSet::new());
        let m = QMat::from_triplets(
            2,
            2,
            [(0, 0, Rational::from(first as i64)), (1, 1, Rational::one())],
        );
        let mut src = sampler;
        let cert = multi_modular_rank(&m, 2, &mut src);
        assert_eq!(cert.primes_used[0], first);
        assert_eq!(cert.ranks[0], 1);
        assert_eq!(cert.rank, 2);
        assert!(cert.agreement);
    }

    #[test]
    fn bad_primes_are_skipped() {
        let m = QMat::from_triplets(1, 1, [(0, 0, Rational::new(1, 5).unwrap())]);
        let mut src = ScriptedPrimes::new([5, 7, 11], PrimeSampler::default());
        let cert = multi_modular_rank(&m, 2, &mut src);
        assert_eq!(cert.skipped_primes, vec![5]);
        assert_eq!(cert.rank, 1);
    }
}
