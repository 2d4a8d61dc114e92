//! Hilbert functions of homogeneous ideals in `F_p[x, y, z]` from a
//! degree-truncated Gröbner basis (degree reverse lexicographic order).
//!
//! Used for curves whose graded pieces are too large for per-degree rank
//! computations. The ideal is the same as the one spanned degree by degree
//! in the Jacobian evaluation maps; only the route to its dimensions differs.

use std::collections::HashMap;

use crate::arith::{inv_mod, mul_mod};
use crate::tripoly::{basis_len, Monomial};

/// Index of `m` among the monomials of its degree, degrevlex descending.
#[inline]
fn drl_index(m: Monomial) -> usize {
    let d = m.degree() as usize;
    let c = m.z as usize;
    c * (d + 1) - c * c.saturating_sub(1) / 2 + m.y as usize
}

/// Monomials of degree `d` in degrevlex descending order.
fn drl_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(d as usize));
    for z in 0..=d {
        for y in 0..=d - z {
            out.push(Monomial::new(d - z - y, y, z));
        }
    }
    out
}

#[inline]
fn lcm(a: Monomial, b: Monomial) -> Monomial {
    Monomial::new(a.x.max(b.x), a.y.max(b.y), a.z.max(b.z))
}

#[inline]
fn coprime(a: Monomial, b: Monomial) -> bool {
    (a.x == 0 || b.x == 0) && (a.y == 0 || b.y == 0) && (a.z == 0 || b.z == 0)
}

struct Element {
    lm: Monomial,
    /// Monic, leading term first.
    terms: Vec<(Monomial, u64)>,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Truncated Gröbner basis data sufficient to read off the Hilbert function.
pub struct TruncatedBasis {
    pub p: u64,
    pub max_degree: u32,
    leading: Vec<Monomial>,
}

impl TruncatedBasis {
    /// Dimension of `(S/I)_k`, valid for `k <= max_degree`.
    pub fn quotient_dim(&self, k: u32) -> usize {
        assert!(k <= self.max_degree, "degree {k} beyond truncation {}", self.max_degree);
        let relevant: Vec<Monomial> =
            self.leading.iter().copied().filter(|m| m.degree() <= k).collect();
        drl_basis(k)
            .into_iter()
            .filter(|m| !relevant.iter().any(|l| l.divides(m)))
            .count()
    }

    pub fn hilbert_function(&self, upto: u32) -> Vec<usize> {
        (0..=upto).map(|k| self.quotient_dim(k)).collect()
    }

    pub fn basis_size(&self) -> usize {
        self.leading.len()
    }
}

struct Engine {
    p: u64,
    gb: Vec<Element>,
    pairs: Vec<Pair>,
    acc: Vec<u64>,
}

impl Engine {
    /// Adds `c * t * g` into the dense accumulator of degree `deg(t * lm(g))`.
    fn axpy(&mut self, c: u64, t: Monomial, g: usize) {
        let p = self.p;
        let p2 = p * p;
        for (m, v) in &self.gb[g].terms {
            let idx = drl_index(m.mul(&t));
            let slot = &mut self.acc[idx];
            let s = *slot + c * v;
            *slot = if s >= p2 { s - p2 } else { s };
        }
    }

    /// Fully reduces the accumulator (degree `d`) and returns its normal form.
    fn reduce(&mut self, d: u32, basis: &[Monomial], reducer: &[Option<usize>]) -> Vec<(Monomial, u64)> {
        let p = self.p;
        let mut out = Vec::new();
        for idx in 0..basis.len() {
            let raw = self.acc[idx];
            if raw == 0 {
                continue;
            }
            let c = raw % p;
            self.acc[idx] = 0;
            if c == 0 {
                continue;
            }
            match reducer[idx] {
                Some(g) => {
                    let t = self.gb[g].lm.quotient_of(&basis[idx]).expect("reducer divides");
                    self.axpy(p - c, t, g);
                    self.acc[idx] = 0;
                }
                None => out.push((basis[idx], c)),
            }
        }
        debug_assert!(out.iter().all(|(m, _)| m.degree() == d));
        out
    }

    fn insert(&mut self, terms: Vec<(Monomial, u64)>) -> usize {
        let inv = inv_mod(terms[0].1, self.p);
        let terms: Vec<(Monomial, u64)> =
            terms.into_iter().map(|(m, c)| (m, mul_mod(c, inv, self.p))).collect();
        let h = self.gb.len();
        self.gb.push(Element { lm: terms[0].0, terms });
        self.update_pairs(h);
        h
    }

    /// Gebauer-Möller installation of the pairs created by element `h`.
    fn update_pairs(&mut self, h: usize) {
        let lh = self.gb[h].lm;
        let mut candidates: Vec<Pair> = (0..h)
            .map(|g| Pair { i: g, j: h, lcm: lcm(self.gb[g].lm, lh) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(c) = candidates.pop() {
            let lg = self.gb[c.i].lm;
            let dominated = |q: &Pair| q.lcm.divides(&c.lcm);
            if coprime(lg, lh) || !(candidates.iter().any(dominated) || kept.iter().any(dominated)) {
                kept.push(c);
            }
        }
        kept.retain(|c| !coprime(self.gb[c.i].lm, lh));
        let gb = &self.gb;
        self.pairs.retain(|q| {
            let chain = lh.divides(&q.lcm)
                && lcm(gb[q.i].lm, lh) != q.lcm
                && lcm(gb[q.j].lm, lh) != q.lcm;
            !chain
        });
        self.pairs.extend(kept);
    }
}

/// Computes a Gröbner basis of the ideal generated by `gens` (homogeneous,
/// coefficients already reduced mod `p`) correct in all degrees `<= max_degree`.
pub fn truncated_basis(gens: &[Vec<(Monomial, u64)>], p: u64, max_degree: u32) -> TruncatedBasis {
    let mut pending: HashMap<u32, Vec<Vec<(Monomial, u64)>>> = HashMap::new();
    for g in gens.iter().filter(|g| !g.is_empty()) {
        let d = g[0].0.degree();
        assert!(g.iter().all(|(m, _)| m.degree() == d), "generator is not homogeneous");
        pending.entry(d).or_default().push(g.clone());
    }
    let mut eng = Engine {
        p,
        gb: Vec::new(),
        pairs: Vec::new(),
        acc: Vec::new(),
    };
    loop {
        let next_pair = eng.pairs.iter().map(|q| q.lcm.degree()).min();
        let next_gen = pending.keys().copied().min();
        let d = match (next_pair, next_gen) {
            (None, None) => break,
            (a, b) => a.into_iter().chain(b).min().unwrap(),
        };
        if d > max_degree {
            break;
        }
        let basis = drl_basis(d);
        eng.acc.clear();
        eng.acc.resize(basis.len(), 0);
        let mut reducer: Vec<Option<usize>> = basis
            .iter()
            .map(|m| eng.gb.iter().position(|g| g.lm.divides(m)))
            .collect();

        let mut todo: Vec<Pair> = Vec::new();
        eng.pairs.retain(|q| {
            if q.lcm.degree() == d {
                todo.push(*q);
                false
            } else {
                true
            }
        });
        todo.sort_by_key(|q| (drl_index(q.lcm), q.i, q.j));

        for g in pending.remove(&d).unwrap_or_default() {
            for (m, c) in g {
                eng.acc[drl_index(m)] = c;
            }
            let nf = eng.reduce(d, &basis, &reducer);
            if !nf.is_empty() {
                let lm_idx = drl_index(nf[0].0);
                let h = eng.insert(nf);
                reducer[lm_idx] = Some(h);
            }
        }
        for q in todo {
            let (li, lj) = (eng.gb[q.i].lm, eng.gb[q.j].lm);
            let ti = li.quotient_of(&q.lcm).unwrap();
            let tj = lj.quotient_of(&q.lcm).unwrap();
            eng.axpy(1, ti, q.i);
            eng.axpy(p - 1, tj, q.j);
            let nf = eng.reduce(d, &basis, &reducer);
            if !nf.is_empty() {
                let lm_idx = drl_index(nf[0].0);
                let h = eng.insert(nf);
                reducer[lm_idx] = Some(h);
            }
        }
    }
    TruncatedBasis {
        p,
        max_degree,
        leading: eng.gb.iter().map(|g| g.lm).collect(),
    }
}

/// Applies the linear substitution `x -> sum a[0][j] v_j`, `y -> ...`,
/// `z -> ...` to a homogeneous polynomial over `F_p`.
pub fn linear_substitute(terms: &[(Monomial, u64)], a: [[u64; 3]; 3], p: u64) -> Vec<(Monomial, u64)> {
    let Some(d) = terms.first().map(|t| t.0.degree()) else {
        return Vec::new();
    };
    // powers[v][e] is the dense degree-e image of variable v raised to e
    let forms: Vec<Vec<(Monomial, u64)>> = a
        .iter()
        .map(|row| {
            [Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)]
                .into_iter()
                .zip(row.iter().copied())
                .filter(|(_, c)| *c % p != 0)
                .collect()
        })
        .collect();
    let mul = |lhs: &Vec<u64>, ld: u32, rhs: &[(Monomial, u64)], rd: u32| -> Vec<u64> {
        let lb = drl_basis(ld);
        let mut out = vec![0u64; basis_len((ld + rd) as usize)];
        for (i, c) in lhs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (m, v) in rhs {
                let idx = drl_index(lb[i].mul(m));
                out[idx] = (out[idx] + mul_mod(*c, *v, p)) % p;
            }
        }
        out
    };
    let mut powers: Vec<Vec<Vec<u64>>> = Vec::new();
    for form in &forms {
        let mut pw = vec![vec![1u64]];
        for e in 1..=d {
            let next = mul(&pw[e as usize - 1], e - 1, form, 1);
            pw.push(next);
        }
        powers.push(pw);
    }
    let sparse = |v: &Vec<u64>, deg: u32| -> Vec<(Monomial, u64)> {
        drl_basis(deg)
            .into_iter()
            .zip(v.iter().copied())
            .filter(|(_, c)| *c != 0)
            .collect()
    };
    let mut out = vec![0u64; basis_len(d as usize)];
    for (m, c) in terms {
        let xy = mul(&powers[0][m.x as usize], m.x, &sparse(&powers[1][m.y as usize], m.y), m.y);
        let xyz = mul(&xy, m.x + m.y, &sparse(&powers[2][m.z as usize], m.z), m.z);
        for (o, v) in out.iter_mut().zip(xyz) {
            *o = (*o + mul_mod(v, *c, p)) % p;
        }
    }
    let mut res = sparse(&out, d);
    res.sort_by_key(|u| drl_index(u.0));
    res
}

/// Sorts terms into degrevlex-descending order (leading term first).
pub fn drl_sorted(mut terms: Vec<(Monomial, u64)>) -> Vec<(Monomial, u64)> {
    terms.sort_by_key(|u| drl_index(u.0));
    terms
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_073_741_827;

    #[test]
    fn drl_index_matches_basis() {
        for d in 0..9 {
            for (i, m) in drl_basis(d).into_iter().enumerate() {
                assert_eq!(drl_index(m), i);
            }
        }
    }

    #[test]
    fn monomial_ideal_hilbert_function() {
        // (x^2, y^2, z^2): complete intersection, h = 1,3,3,1
        let gens: Vec<Vec<(Monomial, u64)>> = [(2, 0, 0), (0, 2, 0), (0, 0, 2)]
            .into_iter()
            .map(|(a, b, c)| vec![(Monomial::new(a, b, c), 1)])
            .collect();
        let tb = truncated_basis(&gens, P, 6);
        assert_eq!(tb.hilbert_function(6), vec![1, 3, 3, 1, 0, 0, 0]);
    }

    #[test]
    fn cuspidal_cubic_jacobian() {
        // gradient of y^2 z - x^3: (-3x^2, 2yz, y^2)
        let gens = vec![
            vec![(Monomial::new(2, 0, 0), P - 3)],
            drl_sorted(vec![(Monomial::new(0, 1, 1), 2)]),
            vec![(Monomial::new(0, 2, 0), 1)],
        ];
        let tb = truncated_basis(&gens, P, 8);
        assert_eq!(tb.hilbert_function(8), vec![1, 3, 3, 2, 2, 2, 2, 2, 2]);
    }
}
