//! Freeness criteria on the Milnor algebra profile, exponents of free
//! curves, structural identities, saturation defects and conjecture probes.

use std::collections::HashSet;

use serde::{Serialize, Serializer};

use crate::arith::{choose2, PrimeSampler};
use crate::error::FreenessError;
use crate::families::SingularityMeta;
use crate::linalg::{rref_mod_p, sparse_rank_mod_p, FpMat};
use crate::milnor::{dim_s, jacobian_columns_mod_p, CurveInput, MilnorProfile, Threshold};
use crate::tripoly::monomial_basis;

/// Balance criterion: `m(f)_{2d-5-j} + ar(f)_j = tau` for `-1 <= j <= d-2`
/// and `ar(f)_{d-2} != 0`.
pub fn freeness_by_balance(p: &MilnorProfile) -> bool {
    let d = p.d as i64;
    let balanced = (-1..=d - 2).all(|j| p.ar_at(j).is_some_and(|ar| p.m_at(2 * d - 5 - j) + ar == p.tau));
    balanced && p.ar_at(d - 2).is_some_and(|ar| ar != 0)
}

/// Midpoint criterion: `m(f)_h + m(f)_{T-h} - m(f_s)_h = tau`, `h = [T/2]`.
pub fn freeness_by_midpoint(p: &MilnorProfile) -> bool {
    let h = p.t / 2;
    p.m_at(h) + p.m_at(p.t - h) - p.ms_at(h) == p.tau
}

/// `4 tau - 3(d-1)^2`.
pub fn delta(d: u32, tau: i64) -> i64 {
    let d1 = d as i64 - 1;
    4 * tau - 3 * d1 * d1
}

fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&s| s >= 0 && s * s == n)
}

/// Integer roots `d1 <= d2` of `t^2 - (d-1) t + (d-1)^2 - tau`.
pub fn exponents_from_tau(d: u32, tau: i64) -> Result<(i64, i64), FreenessError> {
    let s = d as i64 - 1;
    let prod = s * s - tau;
    let err = FreenessError::NonIntegerExponents { sum: s, prod };
    let r = exact_sqrt(delta(d, tau)).ok_or(err.clone())?;
    if (s - r) % 2 != 0 {
        return Err(err);
    }
    Ok(((s - r) / 2, (s + r) / 2))
}

/// Free module census: `C(k-d1+2, 2) + C(k-d2+2, 2)`.
pub fn free_module_count(k: i64, d1: i64, d2: i64) -> i64 {
    choose2(k - d1 + 2) + choose2(k - d2 + 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentCheck {
    pub d1: i64,
    pub d2: i64,
    pub mdr_matches: bool,
    pub ct_matches: bool,
    pub st_matches: bool,
    /// `ar(f)_k` equals the free-module count for every `k <= d-2`.
    pub census_matches: bool,
}

impl ExponentCheck {
    pub fn all_ok(&self) -> bool {
        self.mdr_matches && self.ct_matches && self.st_matches && self.census_matches
    }
}

/// Exponents of a free curve, cross-checked against the thresholds and the
/// degrees of the relation space.
pub fn exponents(p: &MilnorProfile) -> Result<ExponentCheck, FreenessError> {
    let (d1, d2) = exponents_from_tau(p.d, p.tau)?;
    let d = p.d as i64;
    Ok(ExponentCheck {
        d1,
        d2,
        mdr_matches: p.mdr == Threshold::Finite(d1),
        ct_matches: p.ct == Threshold::Finite(d + d1 - 2),
        st_matches: p.st == d + d2 - 3,
        census_matches: (0..=d - 2).all(|k| p.ar_at(k) == Some(free_module_count(k, d1, d2))),
    })
}

/// `m(f)_{d+j} = m(f_s)_{d+j} + C(j-d1+3, 2)` for `d1-2 <= j <= d2-3`, and
/// `tau = m(f_s)_{d+d2-3} + C(d2-d1, 2)`.
pub fn hp_hilbert_identities(p: &MilnorProfile, d1: i64, d2: i64) -> bool {
    let d = p.d as i64;
    let range_ok = (d1 - 2..=d2 - 3).all(|j| p.m_at(d + j) == p.ms_at(d + j) + choose2(j - d1 + 3));
    range_ok && p.tau == p.ms_at(d + d2 - 3) + choose2(d2 - d1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    /// False for reducible or unknown inputs: values are recorded only.
    pub enforced: bool,
    pub degree_ok: bool,
    pub tau_bounds_ok: bool,
    pub delta_square: bool,
    pub delta_matches_exponents: bool,
    pub d1_at_least_two: bool,
}

impl StructuralReport {
    pub fn all_ok(&self) -> bool {
        self.degree_ok && self.tau_bounds_ok && self.delta_square && self.delta_matches_exponents && self.d1_at_least_two
    }
}

/// Restrictions on irreducible free curves: `d >= 5`; `tau = 12` and
/// `d1 = d2 = 2` when `d = 5`; `3/4 (d-1)^2 <= tau <= d^2 - 4d + 7`,
/// `d1 >= 2` and `Delta = (d2 - d1)^2` a perfect square otherwise.
pub fn wh_structural_checks(p: &MilnorProfile, d1: i64, d2: i64, irreducible: Option<bool>) -> StructuralReport {
    let d = p.d as i64;
    let dl = delta(p.d, p.tau);
    let tau_bounds_ok = if d == 5 {
        p.tau == 12 && d1 == 2 && d2 == 2
    } else {
        4 * p.tau >= 3 * (d - 1) * (d - 1) && p.tau <= d * d - 4 * d + 7
    };
    StructuralReport {
        enforced: irreducible == Some(true),
        degree_ok: d >= 5,
        tau_bounds_ok,
        delta_square: exact_sqrt(dl).is_some(),
        delta_matches_exponents: dl == (d2 - d1) * (d2 - d1),
        d1_at_least_two: d1 >= 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    #[serde(rename = "EC")]
    pub ec: i64,
    #[serde(rename = "EU")]
    pub eu: i64,
    pub mu: i64,
    /// `(d1-1)(d2-1) = mu - tau + 1`.
    pub cuspidal_consistent: bool,
}

/// `E(C) = 2 - (d-1)(d-2) + mu`, `E(U) = tau - mu + (d1-1)(d2-1)`.
pub fn euler_and_cuspidal_check(p: &MilnorProfile, d1: i64, d2: i64, meta: &SingularityMeta) -> EulerReport {
    let d = p.d as i64;
    let mu = meta.total_mu() as i64;
    EulerReport {
        ec: 2 - (d - 1) * (d - 2) + mu,
        eu: p.tau - mu + (d1 - 1) * (d2 - 1),
        mu,
        cuspidal_consistent: (d1 - 1) * (d2 - 1) == mu - p.tau + 1,
    }
}

/// Defect formula `n(f)_j = m(f)_j + ar(f)_{2d-5-j} - tau` on
/// `d-3 <= j <= 2d-4`, extended by `n(f)_j = n(f)_{T-j}`.
pub fn saturation_defect_formula(p: &MilnorProfile, j: i64) -> Result<i64, FreenessError> {
    let d = p.d as i64;
    let direct = |j: i64| -> Option<i64> {
        if (d - 3..=2 * d - 4).contains(&j) {
            p.ar_at(2 * d - 5 - j).map(|ar| p.m_at(j) + ar - p.tau)
        } else {
            None
        }
    };
    direct(j).or_else(|| direct(p.t - j)).ok_or(FreenessError::RangeNotCovered(j))
}

/// Largest degree for which the direct saturation oracle is run by default.
pub const DIRECT_ORACLE_MAX_DEGREE: u32 = 12;

/// Normal forms modulo `J_K` over `F_p`: for each monomial of degree `K`
/// its image in the quotient, written in the non-pivot coordinates.
fn normal_forms(c: &CurveInput, g: &[Vec<(crate::tripoly::Monomial, u64)>; 3], k: i64, p: u64) -> (Vec<Vec<(u32, u64)>>, usize) {
    let n = dim_s(k) as usize;
    let cols = jacobian_columns_mod_p(g, c.degree(), k);
    let trip = cols
        .iter()
        .enumerate()
        .flat_map(|(r, v)| v.iter().map(move |(i, x)| (r, *i as usize, *x)));
    let (rref, pivots) = rref_mod_p(&FpMat::from_triplets_mod(cols.len(), n, p, trip));
    let mut slot = vec![usize::MAX; n];
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|i| !pivot_set.contains(i)).collect();
    for (s, &i) in free.iter().enumerate() {
        slot[i] = s;
    }
    let mut nf = vec![Vec::new(); n];
    for (row, &pc) in rref.iter().zip(&pivots) {
        nf[pc] = free
            .iter()
            .enumerate()
            .filter(|(_, &f)| row[f] != 0)
            .map(|(s, &f)| (s as u32, p - row[f]))
            .collect();
    }
    for &i in &free {
        nf[i] = vec![(slot[i] as u32, 1)];
    }
    (nf, free.len())
}

/// Ranks of `g -> (m g mod J_{T+1})_m` for `g in S_j`, `m` over monomials of
/// degree `T+1-j`, for all `0 <= j <= T`, over `F_p`.
fn saturation_ranks_mod_p(c: &CurveInput, t: i64, tau: i64, p: u64) -> Option<Vec<usize>> {
    let g = c.gradient_mod_p(p).ok()?;
    let top = t + 1;
    let (nf, q) = normal_forms(c, &g, top, p);
    if q as i64 != tau {
        return None;
    }
    let out = (0..=t)
        .map(|j| {
            let e = (top - j) as u32;
            let multipliers = monomial_basis(e);
            let vectors: Vec<Vec<(u32, u64)>> = monomial_basis(j as u32)
                .iter()
                .map(|gm| {
                    let mut v = Vec::new();
                    for (mi, m) in multipliers.iter().enumerate() {
                        for (s, x) in &nf[m.mul(gm).index_in_degree()] {
                            v.push(((mi * q) as u32 + s, *x));
                        }
                    }
                    v
                })
                .collect();
            sparse_rank_mod_p(vectors, multipliers.len() * q, p)
        })
        .collect();
    Some(out)
}

/// `n(f)_j = dim I_{f,j} - dim J_{f,j}` for `0 <= j <= T` by linear algebra:
/// `g in I_{f,j}` iff `m g in J_{f,T+1}` for every monomial `m` of degree
/// `T+1-j`. Multi-modular; two consecutive primes must agree.
pub fn saturation_defects_direct(c: &CurveInput, p: &MilnorProfile, seed: u64) -> Result<Vec<i64>, FreenessError> {
    if p.m.len() <= (p.t + 1) as usize {
        return Err(FreenessError::Soundness("profile does not reach degree T+1".into()));
    }
    let mut sampler = PrimeSampler::new(seed ^ 0x5a7u64);
    let mut exclude = HashSet::new();
    let mut best: Option<Vec<usize>> = None;
    let mut streak = 0;
    for _ in 0..16 {
        let prime = sampler.fresh_prime(&exclude);
        exclude.insert(prime);
        let Some(ranks) = saturation_ranks_mod_p(c, p.t, p.tau, prime) else {
            continue;
        };
        match &best {
            Some(b) if *b == ranks => streak += 1,
            Some(b) => {
                let merged: Vec<usize> = b.iter().zip(&ranks).map(|(x, y)| *x.max(y)).collect();
                streak = usize::from(merged == ranks);
                best = Some(merged);
            }
            None => {
                best = Some(ranks);
                streak = 1;
            }
        }
        if streak >= 2 {
            let ranks = best.unwrap();
            return Ok((0..=p.t).map(|j| p.m_at(j) - ranks[j as usize] as i64).collect());
        }
    }
    Err(FreenessError::Soundness("saturation ranks never stabilized across primes".into()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SaturationMode {
    #[default]
    Formula,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefectMethod {
    Formula,
    DirectOracle,
    BothAgree,
    /// Formula and oracle differ; the oracle value is reported.
    Disagree,
    Uncomputed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    pub j: i64,
    pub n: Option<i64>,
    pub method: DefectMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationDefects {
    pub entries: Vec<Defect>,
}

impl SaturationDefects {
    pub fn at(&self, j: i64) -> Option<i64> {
        if j < 0 || j as usize >= self.entries.len() {
            return Some(0);
        }
        self.entries[j as usize].n
    }

    pub fn all_zero(&self) -> Option<bool> {
        if self.entries.iter().any(|e| e.n.is_some_and(|n| n != 0)) {
            return Some(false);
        }
        self.entries.iter().all(|e| e.n.is_some()).then_some(true)
    }

    /// Indices where formula and oracle were both computed and differ.
    pub fn disagreements(&self) -> Vec<i64> {
        self.entries.iter().filter(|e| e.method == DefectMethod::Disagree).map(|e| e.j).collect()
    }

    /// Indices `j` where both `n_j` and `n_{T-j}` are known and differ.
    pub fn symmetry_violations(&self) -> Vec<i64> {
        let t = self.entries.len() as i64 - 1;
        (0..=t)
            .filter(|&j| match (self.at(j), self.at(t - j)) {
                (Some(a), Some(b)) => a != b,
                _ => false,
            })
            .collect()
    }
}

/// Saturation defects for `0 <= j <= T` by the requested method.
pub fn saturation_defects(
    c: &CurveInput,
    p: &MilnorProfile,
    mode: SaturationMode,
    seed: u64,
) -> Result<SaturationDefects, FreenessError> {
    let direct = match mode {
        SaturationMode::Formula => None,
        _ => Some(saturation_defects_direct(c, p, seed)?),
    };
    let entries = (0..=p.t)
        .map(|j| {
            let formula = if mode == SaturationMode::Direct { None } else { saturation_defect_formula(p, j).ok() };
            let oracle = direct.as_ref().map(|v| v[j as usize]);
            let (n, method) = match (formula, oracle) {
                (Some(f), Some(o)) if f == o => (Some(o), DefectMethod::BothAgree),
                (Some(_), Some(o)) => (Some(o), DefectMethod::Disagree),
                (None, Some(o)) => (Some(o), DefectMethod::DirectOracle),
                (Some(f), None) => (Some(f), DefectMethod::Formula),
                (None, None) => (None, DefectMethod::Uncomputed),
            };
            Defect { j, n, method, formula: if method == DefectMethod::Disagree { formula } else { None } }
        })
        .collect();
    Ok(SaturationDefects { entries })
}

/// Projective rigidity: `n(f)_d = 0`.
pub fn rigidity_check(defects: &SaturationDefects, d: u32) -> Option<bool> {
    defects.at(d as i64).map(|n| n == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureProbe {
    pub ct_plus_st: Option<i64>,
    #[serde(rename = "T")]
    pub t: i64,
    /// `ct + st = T`.
    pub holds: bool,
    /// The equality holds exactly when the curve is free.
    pub consistent_with_freeness: bool,
}

pub fn conjecture_probe(p: &MilnorProfile, free: bool) -> ConjectureProbe {
    let sum = p.ct.finite().map(|ct| ct + p.st);
    let holds = sum == Some(p.t);
    ConjectureProbe { ct_plus_st: sum, t: p.t, holds, consistent_with_freeness: holds == free }
}

/// Context supplied with a curve: irreducibility and singularity metadata.
#[derive(Clone, Debug, Default)]
pub struct CurveContext {
    pub irreducible: Option<bool>,
    pub singularities: Option<SingularityMeta>,
}

#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub free: bool,
    pub criterion_ii: bool,
    pub criterion_iii: bool,
    pub d1: Option<i64>,
    pub d2: Option<i64>,
    pub tau: i64,
    pub delta: i64,
    pub exponent_check: Option<ExponentCheck>,
    pub hp_identities_ok: Option<bool>,
    pub structural: Option<StructuralReport>,
    pub euler: Option<EulerReport>,
    pub defects: SaturationDefects,
    pub rigid: Option<bool>,
    pub conj10: ConjectureProbe,
    pub notes: Vec<String>,
}

impl Serialize for FreenessReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Criteria {
            balance: bool,
            midpoint: bool,
        }
        #[derive(Serialize)]
        struct Euler {
            #[serde(rename = "EC")]
            ec: i64,
            #[serde(rename = "EU")]
            eu: i64,
            mu: i64,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            free: bool,
            d1: Option<i64>,
            d2: Option<i64>,
            tau: i64,
            delta: i64,
            criteria: Criteria,
            defects: &'a [Defect],
            rigid: Option<bool>,
            conj10: bool,
            euler: Option<Euler>,
            cuspidal_consistent: Option<bool>,
            exponent_check: &'a Option<ExponentCheck>,
            hp_identities_ok: Option<bool>,
            structural: &'a Option<StructuralReport>,
            notes: &'a [String],
        }
        Out {
            free: self.free,
            d1: self.d1,
            d2: self.d2,
            tau: self.tau,
            delta: self.delta,
            criteria: Criteria { balance: self.criterion_ii, midpoint: self.criterion_iii },
            defects: &self.defects.entries,
            rigid: self.rigid,
            conj10: self.conj10.holds,
            euler: self.euler.as_ref().map(|e| Euler { ec: e.ec, eu: e.eu, mu: e.mu }),
            cuspidal_consistent: self.euler.as_ref().map(|e| e.cuspidal_consistent),
            exponent_check: &self.exponent_check,
            hp_identities_ok: self.hp_identities_ok,
            structural: &self.structural,
            notes: &self.notes,
        }
        .serialize(s)
    }
}

/// Full freeness analysis. The midpoint identity decides; the balance
/// criterion must agree, and a free verdict must produce integer exponents
/// satisfying the structural identities, otherwise a soundness error is
/// returned.
pub fn analyze_freeness(
    c: &CurveInput,
    p: &MilnorProfile,
    ctx: &CurveContext,
    mode: SaturationMode,
    seed: u64,
) -> Result<FreenessReport, FreenessError> {
    let mut notes = Vec::new();
    if !p.plateau_verified {
        notes.push("Hilbert function did not stabilize; verdicts are unreliable".to_string());
    }
    let criterion_ii = freeness_by_balance(p);
    let criterion_iii = freeness_by_midpoint(p);
    if criterion_ii != criterion_iii {
        return Err(FreenessError::Soundness(format!(
            "balance criterion says {criterion_ii}, midpoint criterion says {criterion_iii}"
        )));
    }
    let free = criterion_iii;
    let mode = if mode != SaturationMode::Formula && p.d > DIRECT_ORACLE_MAX_DEGREE {
        notes.push(format!("direct saturation oracle skipped above degree {DIRECT_ORACLE_MAX_DEGREE}"));
        SaturationMode::Formula
    } else {
        mode
    };
    let defects = saturation_defects(c, p, mode, seed)?;
    let rigid = rigidity_check(&defects, p.d);
    let conj10 = conjecture_probe(p, free);
    if !conj10.consistent_with_freeness {
        log::warn!("ct + st = T probe disagrees with the freeness verdict");
        notes.push("COUNTEREXAMPLE CANDIDATE: ct + st = T probe disagrees with the freeness verdict".into());
    }

    let (mut d1, mut d2, mut exponent_check, mut hp, mut structural, mut euler) = (None, None, None, None, None, None);
    if free {
        let ex = exponents(p)?;
        if !ex.all_ok() {
            return Err(FreenessError::Soundness(format!("exponent cross-checks failed: {ex:?}")));
        }
        let hp_ok = hp_hilbert_identities(p, ex.d1, ex.d2);
        if !hp_ok {
            return Err(FreenessError::Soundness("Hilbert function identities fail on a free curve".into()));
        }
        if defects.all_zero() == Some(false) {
            return Err(FreenessError::Soundness("nonzero saturation defect on a free curve".into()));
        }
        let st = wh_structural_checks(p, ex.d1, ex.d2, ctx.irreducible);
        if st.enforced && !st.all_ok() {
            return Err(FreenessError::Soundness(format!("irreducible free curve violates degree/tau bounds: {st:?}")));
        }
        if let Some(meta) = &ctx.singularities {
            let e = euler_and_cuspidal_check(p, ex.d1, ex.d2, meta);
            if ctx.irreducible == Some(true) && e.eu < 1 {
                notes.push(format!("E(U) = {} < 1 on an irreducible curve; singularity metadata is inconsistent", e.eu));
            }
            euler = Some(e);
        } else {
            notes.push("mu unknown, Euler number check skipped".into());
        }
        d1 = Some(ex.d1);
        d2 = Some(ex.d2);
        hp = Some(hp_ok);
        structural = Some(st);
        exponent_check = Some(ex);
    }
    Ok(FreenessReport {
        free,
        criterion_ii,
        criterion_iii,
        d1,
        d2,
        tau: p.tau,
        delta: delta(p.d, p.tau),
        exponent_check,
        hp_identities_ok: hp,
        structural,
        euler,
        defects,
        rigid,
        conj10,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{full_profile, ProfileOptions};
    use crate::parser::parse_homogeneous;

    fn profile(s: &str) -> (CurveInput, MilnorProfile) {
        let c = CurveInput::new(parse_homogeneous(s).unwrap()).unwrap();
        let p = full_profile(&c, &ProfileOptions::default()).unwrap();
        (c, p)
    }

    #[test]
    fn criteria_examples() {
        let (_, p) = profile("(y*z+x^2)^2*y - x^5");
        assert!(freeness_by_balance(&p) && freeness_by_midpoint(&p));
        let (_, p) = profile("y^2*z - x^3");
        assert!(!freeness_by_balance(&p) && !freeness_by_midpoint(&p));
        assert_eq!(p.m_at(1) + p.ar_at(0).unwrap(), 3);
        let (_, p) = profile("x^5+y^5+z^5");
        assert!(!freeness_by_balance(&p) && !freeness_by_midpoint(&p));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponents_from_tau(7, 28).unwrap(), (2, 4));
        assert_eq!(exponents_from_tau(13, 108).unwrap(), (6, 6));
        assert_eq!(exponents_from_tau(34, 823).unwrap(), (14, 19));
        assert!(exponents_from_tau(5, 11).is_err());
        assert_eq!(delta(13, 108), 0);
        assert_eq!(delta(9, 49), 4);
    }

    #[test]
    fn cuspidal_cubic_defects_agree() {
        let (c, p) = profile("y^2*z - x^3");
        let direct = saturation_defects_direct(&c, &p, 1).unwrap();
        assert_eq!(direct, vec![0, 1, 1, 0]);
        for j in 0..=2 {
            assert_eq!(saturation_defect_formula(&p, j).unwrap(), direct[j as usize]);
        }
        let d = saturation_defects(&c, &p, SaturationMode::Both, 1).unwrap();
        assert!(d.disagreements().is_empty());
        assert!(d.symmetry_violations().is_empty());
    }

    #[test]
    fn free_curve_report() {
        let (c, p) = profile("(y^2*z+x^3)^2*y - x^7");
        let r = analyze_freeness(&c, &p, &CurveContext { irreducible: Some(true), singularities: None }, SaturationMode::Both, 7).unwrap();
        assert!(r.free);
        assert_eq!((r.d1, r.d2, r.tau), (Some(3), Some(3), 27));
        assert_eq!(r.rigid, Some(true));
        assert!(r.conj10.holds);
        assert_eq!(r.defects.all_zero(), Some(true));
        let fermat = profile("x^5+y^5+z^5");
        let r = analyze_freeness(&fermat.0, &fermat.1, &CurveContext::default(), SaturationMode::Direct, 7).unwrap();
        assert!(!r.free);
        assert_eq!(r.rigid, Some(false));
    }

    #[test]
    fn formula_range() {
        let (_, p) = profile("x^5+y^5+z^5");
        assert!(matches!(saturation_defect_formula(&p, 0), Err(FreenessError::RangeNotCovered(0))));
        assert!(saturation_defect_formula(&p, 2).is_ok());
        assert!(saturation_defect_formula(&p, 7).is_ok());
        assert!(saturation_defect_formula(&p, 8).is_err());
    }
}
