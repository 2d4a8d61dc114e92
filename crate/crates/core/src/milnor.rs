//! Graded pieces of the Jacobian evaluation map and the Koszul complex of
//! the gradient, and the invariant profile read off from them.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{choose2, PrimeSampler, DEFAULT_SEED};
use crate::error::{ArithError, CurveError};
use crate::groebner::{drl_sorted, truncated_basis};
use crate::linalg::{
    kernel_basis_exact, multi_modular_value, rank_exact, sparse_rank_mod_p, Extremum, QMat, RankCertificate,
};
use crate::tripoly::{basis_len, monomial_basis, Monomial, TriPoly};

/// A reduced plane curve `f = 0` with its cached gradient.
#[derive(Clone, Debug)]
pub struct CurveInput {
    f: TriPoly,
    d: u32,
    grad: [TriPoly; 3],
}

impl CurveInput {
    pub fn new(f: TriPoly) -> Result<Self, CurveError> {
        if f.is_zero() {
            return Err(CurveError::Zero);
        }
        let d = f.homogeneous_degree().ok_or(CurveError::NotHomogeneous)?;
        if d == 0 {
            return Err(CurveError::DegreeTooSmall(0, 1));
        }
        let grad = f.gradient();
        Ok(CurveInput { f, d, grad })
    }

    pub fn f(&self) -> &TriPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn gradient(&self) -> &[TriPoly; 3] {
        &self.grad
    }

    pub(crate) fn gradient_mod_p(&self, p: u64) -> Result<[Vec<(Monomial, u64)>; 3], ArithError> {
        Ok([self.grad[0].to_modp(p)?, self.grad[1].to_modp(p)?, self.grad[2].to_modp(p)?])
    }
}

/// `dim S_k`, zero for negative `k`.
pub fn dim_s(k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        basis_len(k as usize) as i64
    }
}

/// Hilbert function of the Milnor algebra of a smooth curve of degree `d`:
/// the coefficient of `t^k` in `((1 - t^(d-1)) / (1 - t))^3`.
pub fn smooth_reference_dim(d: u32, k: i64) -> i64 {
    let step = d as i64 - 1;
    [1i64, -3, 3, -1]
        .iter()
        .enumerate()
        .map(|(i, s)| s * choose2(k - i as i64 * step + 2))
        .sum()
}

/// Coefficient degree of the domain of the evaluation map landing in degree `k`.
fn coefficient_degree(d: u32, k: i64) -> i64 {
    k - d as i64 + 1
}

/// Matrix of `(a, b, c) -> a f_x + b f_y + c f_z` from `S_{k-d+1}^3` to `S_k`.
/// Column `v * dim S_{k-d+1} + i` carries the `i`-th monomial in slot `v`.
pub fn jacobian_matrix_in_degree(c: &CurveInput, k: i64) -> QMat {
    let rows = dim_s(k) as usize;
    let e = coefficient_degree(c.d, k);
    let n = dim_s(e) as usize;
    let mut trip = Vec::new();
    if e >= 0 {
        for (v, g) in c.grad.iter().enumerate() {
            for (i, t) in monomial_basis(e as u32).iter().enumerate() {
                for (m, coef) in g.terms() {
                    trip.push((m.mul(t).index_in_degree(), v * n + i, coef.clone()));
                }
            }
        }
    }
    QMat::from_triplets(rows, 3 * n, trip)
}

/// Matrix of the second Koszul differential with coefficient degree `k`:
/// `(u, v, w) -> (v f_z - w f_y, w f_x - u f_z, u f_y - v f_x)`.
pub fn koszul_matrix(c: &CurveInput, k: i64) -> QMat {
    let rows = 3 * dim_s(k) as usize;
    let e = coefficient_degree(c.d, k);
    let n = dim_s(e) as usize;
    let nk = dim_s(k) as usize;
    let mut trip = Vec::new();
    if e >= 0 {
        for (slot, blocks) in koszul_pattern().iter().enumerate() {
            for (i, t) in monomial_basis(e as u32).iter().enumerate() {
                for &(block, var, sign) in blocks {
                    for (m, coef) in c.grad[var].terms() {
                        let v = if sign > 0 { coef.clone() } else { -coef };
                        trip.push((block * nk + m.mul(t).index_in_degree(), slot * n + i, v));
                    }
                }
            }
        }
    }
    QMat::from_triplets(rows, 3 * n, trip)
}

/// For each domain slot `(u, v, w)`: the output blocks, the gradient entry
/// used, and its sign.
fn koszul_pattern() -> [[(usize, usize, i8); 2]; 3] {
    [
        [(1, 2, -1), (2, 1, 1)],
        [(0, 2, 1), (2, 0, -1)],
        [(0, 1, -1), (1, 0, 1)],
    ]
}

/// Columns of the Jacobian evaluation map into degree `k` over `F_p`, as
/// sparse vectors indexed by `monomial_basis(k)`.
pub(crate) fn jacobian_columns_mod_p(g: &[Vec<(Monomial, u64)>; 3], d: u32, k: i64) -> Vec<Vec<(u32, u64)>> {
    let e = coefficient_degree(d, k);
    if e < 0 {
        return Vec::new();
    }
    let basis = monomial_basis(e as u32);
    let mut cols = Vec::with_capacity(3 * basis.len());
    for gv in g {
        for t in &basis {
            cols.push(gv.iter().map(|(m, c)| (m.mul(t).index_in_degree() as u32, *c)).collect());
        }
    }
    cols
}

fn jacobian_rank_mod_p(g: &[Vec<(Monomial, u64)>; 3], d: u32, k: i64, p: u64) -> usize {
    sparse_rank_mod_p(jacobian_columns_mod_p(g, d, k), dim_s(k) as usize, p)
}

fn koszul_rank_mod_p(g: &[Vec<(Monomial, u64)>; 3], d: u32, k: i64, p: u64) -> usize {
    let e = coefficient_degree(d, k);
    if e < 0 {
        return 0;
    }
    let nk = dim_s(k) as usize;
    let basis = monomial_basis(e as u32);
    let mut cols = Vec::with_capacity(3 * basis.len());
    for blocks in koszul_pattern() {
        for t in &basis {
            let mut col = Vec::new();
            for (block, var, sign) in blocks {
                for (m, c) in &g[var] {
                    let v = if sign > 0 { *c } else { p - c };
                    col.push(((block * nk + m.mul(t).index_in_degree()) as u32, v));
                }
            }
            cols.push(col);
        }
    }
    sparse_rank_mod_p(cols, 3 * nk, p)
}

fn degree_seed(seed: u64, k: i64, salt: u64) -> u64 {
    seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt.wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
}

/// Rank of a degree-`k` matrix built from the gradient reduced mod `p`.
type ModRankFn = fn(&[Vec<(Monomial, u64)>; 3], u32, i64, u64) -> usize;

fn modular_rank(
    c: &CurveInput,
    k: i64,
    min_agree: usize,
    seed: u64,
    rank: ModRankFn,
    salt: u64,
) -> RankCertificate {
    let mut primes = PrimeSampler::new(degree_seed(seed, k, salt));
    multi_modular_value(
        min_agree,
        &mut primes,
        |p| c.gradient_mod_p(p).map(|g| rank(&g, c.d, k, p)),
        Extremum::Max,
    )
}

/// Rank of the Jacobian evaluation map into degree `k` (multi-modular).
pub fn jacobian_rank(c: &CurveInput, k: i64) -> RankCertificate {
    modular_rank(c, k, 2, DEFAULT_SEED, jacobian_rank_mod_p, 0)
}

/// `m(f)_k = dim S_k - rank`.
pub fn milnor_dim(c: &CurveInput, k: i64) -> i64 {
    dim_s(k) - jacobian_rank(c, k).rank as i64
}

/// Dimension of the space of relations with coefficients of degree `k`.
pub fn ar_dim(c: &CurveInput, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    3 * dim_s(k) - jacobian_rank(c, k + c.d as i64 - 1).rank as i64
}

/// Rank of the second Koszul differential with coefficient degree `k`.
pub fn koszul_image_rank(c: &CurveInput, k: i64) -> i64 {
    modular_rank(c, k, 2, DEFAULT_SEED, koszul_rank_mod_p, 1).rank as i64
}

/// Dimension of essential relations in coefficient degree `k`.
pub fn er_dim(c: &CurveInput, k: i64) -> i64 {
    ar_dim(c, k) - koszul_image_rank(c, k)
}

/// A relation `a f_x + b f_y + c f_z = 0`.
pub type Syzygy = [TriPoly; 3];

/// Exact basis of the relations with coefficients of degree `k`, each scaled
/// to coprime integer coefficients and verified against the gradient.
pub fn syzygy_basis_in_degree(c: &CurveInput, k: i64) -> Result<Vec<Syzygy>, CurveError> {
    if k < 0 {
        return Ok(Vec::new());
    }
    let mat = jacobian_matrix_in_degree(c, k + c.d as i64 - 1);
    let basis = monomial_basis(k as u32);
    let n = basis.len();
    let mut out = Vec::new();
    for v in kernel_basis_exact(&mat) {
        let triple: Syzygy = std::array::from_fn(|slot| {
            TriPoly::from_terms(
                basis
                    .iter()
                    .zip(&v[slot * n..(slot + 1) * n])
                    .map(|(m, q)| (*m, q.clone())),
            )
        });
        if !annihilates_gradient(c, &triple) {
            return Err(CurveError::Soundness(format!("kernel vector in degree {k} is not a relation")));
        }
        out.push(triple);
    }
    Ok(out)
}

/// Checks `a f_x + b f_y + c f_z = 0` symbolically.
pub fn annihilates_gradient(c: &CurveInput, s: &Syzygy) -> bool {
    let g = &c.grad;
    (&(&(&s[0] * &g[0]) + &(&s[1] * &g[1])) + &(&s[2] * &g[2])).is_zero()
}

/// A threshold that may be infinite (smooth curves).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(i64),
    Infinite,
}

impl Threshold {
    pub fn finite(self) -> Option<i64> {
        match self {
            Threshold::Finite(v) => Some(v),
            Threshold::Infinite => None,
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Threshold::Finite(v) => s.serialize_i64(*v),
            Threshold::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Threshold::Finite(v) => write!(f, "{v}"),
            Threshold::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Matrix ranks for small degrees, Gröbner basis beyond.
    #[default]
    Auto,
    Matrix,
    Groebner,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    /// Multi-modular ranks, with exact spot checks on small matrices.
    #[default]
    Auto,
    /// Fraction-free elimination over `Q` only.
    Exact,
}

/// Degrees above which `Engine::Auto` switches to the Gröbner engine.
pub const GROEBNER_DEGREE_THRESHOLD: u32 = 12;

#[derive(Clone, Debug)]
pub struct ProfileOptions {
    pub engine: Engine,
    pub field: FieldMode,
    pub min_agree: usize,
    pub seed: u64,
    /// Overrides `T + 2` as the last computed degree.
    pub kmax: Option<u32>,
    /// Matrices with at most this many columns are also ranked exactly.
    pub spot_check_max_cols: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            engine: Engine::Auto,
            field: FieldMode::Auto,
            min_agree: 2,
            seed: DEFAULT_SEED,
            kmax: None,
            spot_check_max_cols: 200,
        }
    }
}

/// Exact rank compared with the modular rank of the same matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub map: &'static str,
    pub k: i64,
    pub cols: usize,
    pub exact: usize,
    pub modular: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ProfileDiagnostics {
    pub engine: Option<Engine>,
    pub primes: Vec<u64>,
    pub spot_checks: Vec<SpotCheck>,
    pub ct_mdr_consistent: Option<bool>,
    pub plateau_extended: bool,
    pub warnings: Vec<String>,
}

/// Hilbert function of the Milnor algebra with the derived thresholds.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorProfile {
    pub d: u32,
    #[serde(rename = "T")]
    pub t: i64,
    pub tau: i64,
    pub ct: Threshold,
    pub st: i64,
    pub mdr: Threshold,
    pub plateau_verified: bool,
    pub m: Vec<i64>,
    pub m_smooth: Vec<i64>,
    pub ar: Vec<i64>,
    pub er: Vec<i64>,
    #[serde(skip)]
    pub diagnostics: ProfileDiagnostics,
}

impl MilnorProfile {
    /// Last degree with a computed `m(f)_k`.
    pub fn kmax(&self) -> i64 {
        self.m.len() as i64 - 1
    }

    /// `m(f)_k`; zero for negative `k`, `tau` beyond the computed range.
    pub fn m_at(&self, k: i64) -> i64 {
        if k < 0 {
            0
        } else {
            self.m.get(k as usize).copied().unwrap_or(self.tau)
        }
    }

    pub fn ms_at(&self, k: i64) -> i64 {
        if k < 0 {
            0
        } else {
            smooth_reference_dim(self.d, k)
        }
    }

    /// `ar(f)_j`; zero for negative `j`, `None` beyond the computed range.
    pub fn ar_at(&self, j: i64) -> Option<i64> {
        if j < 0 {
            Some(0)
        } else {
            self.ar.get(j as usize).copied()
        }
    }

    pub fn er_at(&self, j: i64) -> Option<i64> {
        if j < 0 {
            Some(0)
        } else {
            self.er.get(j as usize).copied()
        }
    }
}

fn resolve_engine(d: u32, opts: &ProfileOptions) -> Engine {
    match (opts.engine, opts.field) {
        (_, FieldMode::Exact) => Engine::Matrix,
        (Engine::Auto, _) if d > GROEBNER_DEGREE_THRESHOLD => Engine::Groebner,
        (Engine::Auto, _) => Engine::Matrix,
        (e, _) => e,
    }
}

struct DegreeResult {
    k: i64,
    m: i64,
    primes: Vec<u64>,
    spot: Option<SpotCheck>,
}

fn matrix_dims(c: &CurveInput, range: std::ops::RangeInclusive<i64>, opts: &ProfileOptions) -> Vec<DegreeResult> {
    let d = c.d;
    range
        .into_par_iter()
        .map(|k| {
            let cols = 3 * dim_s(coefficient_degree(d, k)) as usize;
            if cols == 0 {
                return DegreeResult { k, m: dim_s(k), primes: Vec::new(), spot: None };
            }
            match opts.field {
                FieldMode::Exact => {
                    let r = rank_exact(&jacobian_matrix_in_degree(c, k));
                    DegreeResult { k, m: dim_s(k) - r as i64, primes: Vec::new(), spot: None }
                }
                FieldMode::Auto => {
                    let cert = modular_rank(c, k, opts.min_agree, opts.seed, jacobian_rank_mod_p, 0);
                    let spot = (cols <= opts.spot_check_max_cols).then(|| SpotCheck {
                        map: "jacobian",
                        k,
                        cols,
                        exact: rank_exact(&jacobian_matrix_in_degree(c, k)),
                        modular: cert.rank,
                    });
                    DegreeResult { k, m: dim_s(k) - cert.rank as i64, primes: cert.primes_used, spot }
                }
            }
        })
        .collect()
}

/// Hilbert function from truncated Gröbner bases modulo several primes; the
/// pointwise minimum is kept once `min_agree` consecutive primes agree on it.
fn groebner_dims(c: &CurveInput, kmax: u32, opts: &ProfileOptions) -> Result<(Vec<i64>, Vec<u64>), CurveError> {
    let mut sampler = PrimeSampler::new(degree_seed(opts.seed, -1, 2));
    let mut exclude = std::collections::HashSet::new();
    let mut runs: Vec<Vec<usize>> = Vec::new();
    let mut used = Vec::new();
    for _ in 0..16 {
        let p = sampler.fresh_prime(&exclude);
        exclude.insert(p);
        let Ok(g) = c.gradient_mod_p(p) else {
            continue;
        };
        let gens: Vec<_> = g.into_iter().map(drl_sorted).collect();
        let h = truncated_basis(&gens, p, kmax).hilbert_function(kmax);
        used.push(p);
        runs.push(h);
        let best: Vec<usize> = (0..=kmax as usize)
            .map(|k| runs.iter().map(|r| r[k]).min().unwrap())
            .collect();
        let n = runs.len();
        if n >= opts.min_agree && runs[n - opts.min_agree..].iter().all(|r| *r == best) {
            return Ok((best.into_iter().map(|v| v as i64).collect(), used));
        }
    }
    Err(CurveError::Soundness("modular Hilbert functions never agreed".into()))
}

fn milnor_dims(
    c: &CurveInput,
    range: std::ops::RangeInclusive<i64>,
    engine: Engine,
    opts: &ProfileOptions,
    diag: &mut ProfileDiagnostics,
) -> Result<Vec<i64>, CurveError> {
    let lo = *range.start();
    match engine {
        Engine::Groebner => {
            let (h, primes) = groebner_dims(c, *range.end() as u32, opts)?;
            diag.primes.extend(primes);
            for k in range.clone() {
                let cols = 3 * dim_s(coefficient_degree(c.d, k)) as usize;
                if cols > 0 && cols <= opts.spot_check_max_cols && opts.field == FieldMode::Auto {
                    diag.spot_checks.push(SpotCheck {
                        map: "jacobian",
                        k,
                        cols,
                        exact: rank_exact(&jacobian_matrix_in_degree(c, k)),
                        modular: (dim_s(k) - h[k as usize]) as usize,
                    });
                }
            }
            Ok(h[lo as usize..].to_vec())
        }
        _ => {
            let mut res = matrix_dims(c, range, opts);
            res.sort_by_key(|r| r.k);
            let mut out = Vec::with_capacity(res.len());
            for r in res {
                diag.primes.extend(r.primes);
                diag.spot_checks.extend(r.spot);
                out.push(r.m);
            }
            Ok(out)
        }
    }
}

fn koszul_ranks(c: &CurveInput, ks: Vec<i64>, engine: Engine, opts: &ProfileOptions, diag: &mut ProfileDiagnostics) -> Vec<i64> {
    let d = c.d as i64;
    let mut res: Vec<(i64, i64, Option<SpotCheck>)> = ks
        .into_par_iter()
        .map(|k| {
            let e = k - d + 1;
            let cols = 3 * dim_s(e) as usize;
            if cols == 0 {
                return (k, 0, None);
            }
            match (opts.field, engine) {
                (FieldMode::Exact, _) => (k, rank_exact(&koszul_matrix(c, k)) as i64, None),
                // the kernel of the second differential is the image of the
                // third one when the partials have no common factor
                (FieldMode::Auto, Engine::Groebner) => (k, 3 * dim_s(e) - dim_s(k - 2 * d + 2), None),
                (FieldMode::Auto, _) => {
                    let cert = modular_rank(c, k, opts.min_agree, opts.seed, koszul_rank_mod_p, 1);
                    let spot = (cols <= opts.spot_check_max_cols).then(|| SpotCheck {
                        map: "koszul",
                        k,
                        cols,
                        exact: rank_exact(&koszul_matrix(c, k)),
                        modular: cert.rank,
                    });
                    (k, cert.rank as i64, spot)
                }
            }
        })
        .collect();
    res.sort_by_key(|r| r.0);
    res.into_iter()
        .map(|(_, r, spot)| {
            diag.spot_checks.extend(spot);
            r
        })
        .collect()
}

fn plateau(m: &[i64]) -> bool {
    let n = m.len();
    n >= 3 && m[n - 3] == m[n - 1] && m[n - 2] == m[n - 1]
}

/// Computes `m(f)_k` for `k <= K_max = T + 2`, `ar` and `er` in the
/// coefficient degrees this range supports, and the thresholds.
pub fn full_profile(c: &CurveInput, opts: &ProfileOptions) -> Result<MilnorProfile, CurveError> {
    let d = c.d;
    if d < 3 {
        return Err(CurveError::DegreeTooSmall(d, 3));
    }
    let t = 3 * (d as i64 - 2);
    let mut kmax = opts.kmax.map(|k| k as i64).unwrap_or(t + 2);
    let engine = resolve_engine(d, opts);
    let mut diag = ProfileDiagnostics { engine: Some(engine), ..Default::default() };

    let mut m = milnor_dims(c, 0..=kmax, engine, opts, &mut diag)?;
    if !plateau(&m) {
        log::warn!("no plateau at K_max = {kmax}; extending by {d}");
        diag.plateau_extended = true;
        diag.warnings.push(format!("plateau check failed at K_max = {kmax}; extended by {d}"));
        let ext_to = kmax + d as i64;
        m = match engine {
            Engine::Groebner => milnor_dims(c, 0..=ext_to, engine, opts, &mut diag)?,
            _ => {
                let more = milnor_dims(c, kmax + 1..=ext_to, engine, opts, &mut diag)?;
                m.into_iter().chain(more).collect()
            }
        };
        kmax = ext_to;
    }
    let plateau_verified = plateau(&m);
    if !plateau_verified {
        diag.warnings.push("Hilbert function did not stabilize; the curve may be non-reduced".into());
    }
    if let Some(bad) = diag.spot_checks.iter().find(|s| s.exact != s.modular) {
        return Err(CurveError::Soundness(format!(
            "{} rank in degree {}: exact {} vs modular {}",
            bad.map, bad.k, bad.exact, bad.modular
        )));
    }

    let tau = m[kmax as usize];
    let m_smooth: Vec<i64> = (0..=kmax).map(|k| smooth_reference_dim(d, k)).collect();
    let ct = match (0..=kmax as usize).find(|&k| m[k] != m_smooth[k]) {
        Some(k) => Threshold::Finite(k as i64 - 1),
        None => Threshold::Infinite,
    };
    let st = (0..=kmax as usize).rev().take_while(|&k| m[k] == tau).last().unwrap() as i64;

    let di = d as i64;
    let ar_top = kmax - di + 1;
    let ar: Vec<i64> = (0..=ar_top)
        .map(|k| 3 * dim_s(k) - dim_s(k + di - 1) + m[(k + di - 1) as usize])
        .collect();
    let kz = koszul_ranks(c, (0..=ar_top).collect(), engine, opts, &mut diag);
    if let Some(bad) = diag.spot_checks.iter().find(|s| s.exact != s.modular) {
        return Err(CurveError::Soundness(format!(
            "{} rank in degree {}: exact {} vs modular {}",
            bad.map, bad.k, bad.exact, bad.modular
        )));
    }
    let er: Vec<i64> = ar.iter().zip(&kz).map(|(a, r)| a - r).collect();
    let mdr = match er.iter().position(|&e| e != 0) {
        Some(k) => Threshold::Finite(k as i64),
        None => Threshold::Infinite,
    };
    diag.ct_mdr_consistent = match (ct, mdr) {
        (Threshold::Finite(ct), Threshold::Finite(mdr)) => Some(ct == mdr + di - 2),
        (Threshold::Infinite, Threshold::Infinite) => Some(true),
        _ => Some(false),
    };
    Ok(MilnorProfile {
        d,
        t,
        tau,
        ct,
        st,
        mdr,
        plateau_verified,
        m,
        m_smooth,
        ar,
        er,
        diagnostics: diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_homogeneous;

    fn curve(s: &str) -> CurveInput {
        CurveInput::new(parse_homogeneous(s).unwrap()).unwrap()
    }

    #[test]
    fn smooth_reference_examples() {
        let seq: Vec<i64> = (0..10).map(|k| smooth_reference_dim(5, k)).collect();
        assert_eq!(seq, vec![1, 3, 6, 10, 12, 12, 10, 6, 3, 1]);
        assert_eq!(smooth_reference_dim(4, 3), 7);
        assert_eq!(smooth_reference_dim(6, 12), 1);
        assert_eq!(smooth_reference_dim(6, 13), 0);
    }

    #[test]
    fn jacobian_matrix_shapes() {
        let fermat = curve("x^5+y^5+z^5");
        let m = jacobian_matrix_in_degree(&fermat, 4);
        assert_eq!((m.rows(), m.cols()), (15, 3));
        let cusp = curve("y^2*z - x^3");
        let m = jacobian_matrix_in_degree(&cusp, 2);
        assert_eq!((m.rows(), m.cols()), (6, 3));
        assert_eq!(rank_exact(&m), 3);
    }

    #[test]
    fn cuspidal_cubic_profile() {
        let c = curve("y^2*z - x^3");
        let p = full_profile(&c, &ProfileOptions::default()).unwrap();
        assert_eq!(p.m, vec![1, 3, 3, 2, 2, 2]);
        assert_eq!((p.tau, p.ct, p.st, p.mdr, p.t), (2, Threshold::Finite(2), 3, Threshold::Finite(1), 3));
        assert!(p.plateau_verified);
        assert_eq!(p.diagnostics.ct_mdr_consistent, Some(true));
    }

    #[test]
    fn fermat_is_smooth() {
        let c = curve("x^5+y^5+z^5");
        let p = full_profile(&c, &ProfileOptions::default()).unwrap();
        assert_eq!(p.m, p.m_smooth);
        assert_eq!(p.tau, 0);
        assert_eq!(p.ct, Threshold::Infinite);
        assert_eq!(p.mdr, Threshold::Infinite);
        assert_eq!(&p.ar[..5], &[0, 0, 0, 0, 3]);
        assert!(p.er.iter().all(|&e| e == 0));
        assert!(syzygy_basis_in_degree(&c, 3).unwrap().is_empty());
    }

    #[test]
    fn theorem_curve_degree_five() {
        let c = curve("(y*z+x^2)^2*y - x^5");
        let p = full_profile(&c, &ProfileOptions::default()).unwrap();
        assert_eq!(&p.m[..8], &[1, 3, 6, 10, 12, 12, 12, 12]);
        assert_eq!(p.tau, 12);
        assert_eq!((p.ar[1], p.ar[2]), (0, 2));
        let syz = syzygy_basis_in_degree(&c, 2).unwrap();
        assert_eq!(syz.len(), 2);
    }

    #[test]
    fn engines_agree() {
        let c = curve("(y*z+x^2)^2*y - x^5");
        let m = full_profile(&c, &ProfileOptions { engine: Engine::Matrix, ..Default::default() }).unwrap();
        let g = full_profile(&c, &ProfileOptions { engine: Engine::Groebner, ..Default::default() }).unwrap();
        let e = full_profile(&c, &ProfileOptions { field: FieldMode::Exact, ..Default::default() }).unwrap();
        assert_eq!(m.m, g.m);
        assert_eq!(m.er, g.er);
        assert_eq!(m.m, e.m);
        assert_eq!(m.er, e.er);
    }

    #[test]
    fn profile_json_field_names() {
        let c = curve("y^2*z - x^3");
        let p = full_profile(&c, &ProfileOptions::default()).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        for key in ["d", "T", "tau", "ct", "st", "mdr", "plateau_verified", "m", "m_smooth", "ar", "er"] {
            assert!(keys.contains(&key), "missing {key}");
        }
        let fermat = full_profile(&curve("x^4+y^4+z^4"), &ProfileOptions::default()).unwrap();
        assert_eq!(serde_json::to_value(&fermat).unwrap()["mdr"], "infinite");
    }
}
