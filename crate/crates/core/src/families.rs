//! Generators for the explicit curve families, each paired with the values
//! recorded for it (Tjurina number, Milnor number, exponents, freeness) and
//! the declared singularities.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{FamilyError, PolyError};
use crate::milnor::Syzygy;
use crate::tripoly::{Monomial, TriPoly};

/// One declared singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Singularity {
    /// Unibranch germ topologically `u^a + v^b`, `gcd(a, b) = 1`.
    Cusp { a: u64, b: u64 },
    /// `u^2 + v^(k+1)`.
    A { k: u64 },
    /// Ordinary point where `multiplicity` smooth branches meet transversally.
    Ordinary { multiplicity: u64 },
    /// Unibranch singularities with a known total Milnor number only.
    UnibranchTotal { mu: u64 },
}

impl Singularity {
    pub fn milnor_number(&self) -> u64 {
        match *self {
            Singularity::Cusp { a, b } => (a - 1) * (b - 1),
            Singularity::A { k } => k,
            Singularity::Ordinary { multiplicity } => (multiplicity - 1) * (multiplicity - 1),
            Singularity::UnibranchTotal { mu } => mu,
        }
    }

    /// Weighted homogeneous germs have equal Milnor and Tjurina numbers.
    pub fn is_weighted_homogeneous(&self) -> bool {
        !matches!(self, Singularity::UnibranchTotal { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityMeta {
    pub points: Vec<Singularity>,
    /// False when the family's coefficients were overridden and the
    /// singularity types are no longer guaranteed.
    pub verified: bool,
}

impl SingularityMeta {
    pub fn new(points: Vec<Singularity>) -> Self {
        SingularityMeta { points, verified: true }
    }

    pub fn total_mu(&self) -> u64 {
        self.points.iter().map(Singularity::milnor_number).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rigid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_cuspidal: Option<bool>,
}

/// A generated family member.
#[derive(Clone, Debug, Serialize)]
pub struct CurveSpec {
    pub id: String,
    pub family: &'static str,
    pub d: u32,
    pub f: TriPoly,
    pub params: BTreeMap<String, String>,
    pub expected: Expected,
    pub singularities: Option<SingularityMeta>,
    pub provenance: String,
}

/// Parameters accepted by the generators; unused fields are ignored.
#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    pub d: Option<u32>,
    pub k: Option<u32>,
    pub j: Option<u32>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub c: Option<Rational>,
    pub which: Option<String>,
    pub coeffs: Option<Vec<Rational>>,
}

fn x() -> TriPoly {
    TriPoly::x()
}
fn y() -> TriPoly {
    TriPoly::y()
}
fn z() -> TriPoly {
    TriPoly::z()
}
fn int(n: i64) -> TriPoly {
    TriPoly::constant(Rational::from(n))
}
fn cst(q: &Rational) -> TriPoly {
    TriPoly::constant(q.clone())
}
fn mono(a: u32, b: u32, c: u32) -> TriPoly {
    TriPoly::term(Rational::one(), Monomial::new(a, b, c))
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameter(msg.into())
}

fn need_int(v: Option<u32>, name: &str, default: Option<u32>) -> Result<u32, FamilyError> {
    v.or(default).ok_or_else(|| invalid(format!("missing parameter `{name}`")))
}

fn rational_int(q: &Rational, name: &str) -> Result<u32, FamilyError> {
    if !q.is_integer() || q.is_negative() {
        return Err(invalid(format!("`{name}` must be a nonnegative integer")));
    }
    q.to_string().parse().map_err(|_| invalid(format!("`{name}` is too large")))
}

fn params_map(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn make_id(family: &str, params: &BTreeMap<String, String>) -> String {
    let body: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if body.is_empty() {
        family.to_string()
    } else {
        format!("{family}:{}", body.join(","))
    }
}

/// `n`-th Fibonacci number with `a_0 = 0`, `a_1 = 1`.
pub fn fibonacci(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `y^(d-1) z + x^d + a x^2 y^(d-2) + b x y^(d-1) + c y^d`, `a != 0`.
pub fn gen_stfam(d: u32, a: &Rational, b: &Rational, c: &Rational) -> Result<CurveSpec, FamilyError> {
    if d < 5 {
        return Err(invalid("stfam needs d >= 5"));
    }
    if a.is_zero() {
        return Err(invalid("stfam needs a != 0"));
    }
    let f = mono(0, d - 1, 1)
        + mono(d, 0, 0)
        + cst(a) * mono(2, d - 2, 0)
        + cst(b) * mono(1, d - 1, 0)
        + cst(c) * mono(0, d, 0);
    let di = d as i64;
    let params = params_map(&[("d", d.to_string()), ("a", a.to_string()), ("b", b.to_string()), ("c", c.to_string())]);
    Ok(CurveSpec {
        id: make_id("stfam", &params),
        family: "stfam",
        d,
        f,
        params,
        expected: Expected {
            tau: Some(di * di - 4 * di + 7),
            mu: Some((di - 1) * (di - 2)),
            d1: Some(2),
            d2: Some(di - 3),
            free: Some(true),
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta::new(vec![Singularity::Cusp { a: d as u64, b: d as u64 - 1 }])),
        provenance: "free rational cuspidal family y^{d-1}z+x^d+ax^2y^{d-2}+bxy^{d-1}+cy^d, a != 0; \
                     tau = d^2-4d+7 with exponents (2, d-3)"
            .into(),
    })
}

/// `xyz(x^3+y^3+z^3)[(x^3+y^3+z^3)^3 - 27 x^3 y^3 z^3]`.
pub fn gen_valles_pencil() -> CurveSpec {
    let s = mono(3, 0, 0) + mono(0, 3, 0) + mono(0, 0, 3);
    let f = mono(1, 1, 1) * &s * (s.pow(3) - int(27) * mono(3, 3, 3));
    CurveSpec {
        id: "valles".into(),
        family: "valles",
        d: 15,
        f,
        params: BTreeMap::new(),
        expected: Expected {
            free: Some(true),
            irreducible: Some(false),
            ..Default::default()
        },
        singularities: None,
        provenance: "degree-15 union of members of the Hesse pencil xyz(x^3+y^3+z^3)[(x^3+y^3+z^3)^3-27x^3y^3z^3]; \
                     free, Tjurina number not recorded"
            .into(),
    }
}

/// `(y^k z + sum_{i=1}^{k+1} a_i x^i y^(k+1-i))^2 - x y^(2k+1)`, degree `2k+2`.
pub fn gen_prop1(k: u32, coeffs: Option<&[Rational]>) -> Result<CurveSpec, FamilyError> {
    if k < 1 {
        return Err(invalid("prop1 needs k >= 1"));
    }
    let default: Vec<Rational> = (1..=k + 1).map(|i| if i == k + 1 { Rational::one() } else { Rational::zero() }).collect();
    let a = coeffs.map(|c| c.to_vec()).unwrap_or_else(|| default.clone());
    if a.len() != (k + 1) as usize {
        return Err(invalid(format!("prop1 needs {} coefficients a_1..a_{}", k + 1, k + 1)));
    }
    if a[k as usize].is_zero() {
        return Err(invalid(format!("prop1 needs a_{} != 0", k + 1)));
    }
    let mut inner = mono(0, k, 1);
    for (i, ai) in (1..=k + 1).zip(&a) {
        inner = inner + cst(ai) * mono(i, k + 1 - i, 0);
    }
    let f = inner.pow(2) - mono(1, 2 * k + 1, 0);
    let d = 2 * k + 2;
    let params = params_map(&[("k", k.to_string()), ("coeffs", join(&a))]);
    Ok(CurveSpec {
        id: make_id("prop1", &params),
        family: "prop1",
        d,
        f,
        params,
        expected: Expected {
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta {
            points: vec![Singularity::UnibranchTotal { mu: rational_cuspidal_mu(d) }],
            verified: a == default,
        }),
        provenance: "unicuspidal curves (y^kz+sum a_i x^i y^{k+1-i})^2 - xy^{2k+1}, a_{k+1} != 0, d = 2k+2".into(),
    })
}

/// Total Milnor number of a rational curve whose singularities are unibranch.
pub fn rational_cuspidal_mu(d: u32) -> u64 {
    (d as u64 - 1) * (d as u64 - 2)
}

fn join(a: &[Rational]) -> String {
    a.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(";")
}

/// Printed equations of the two-cusp curves with an `A_{2d-4}` point,
/// degrees 4 through 10.
pub const PRINTED_PROP2I: [(u32, &str); 7] = [
    (4, "(y*z+x^2)^2-x^3*z"),
    (5, "y*(y*z+x^2)^2+2*x^3*(y*z+x^2)-x^4*z"),
    (6, "(y*z + 2*x^2)^2*y^2 + 2*(y*z + 2*x^2)*y*x^3 + (2*y*z + 5*x^2)*x^4 - x^5*z"),
    (
        7,
        "14*x^7 + 14*x^6*y + 20*x^5*y^2 + 25*x^4*y^3 - x^6*z + 2*x^5*y*z + 2*x^4*y^2*z + 4*x^3*y^3*z \
         + 10*x^2*y^4*z + y^5*z^2",
    ),
    (
        8,
        "42*x^8 + 48*x^7*y + 81*x^6*y^2 + 140*x^5*y^3 + 196*x^4*y^4 - x^7*z + 2*x^6*y*z + 2*x^5*y^2*z \
         + 4*x^4*y^3*z + 10*x^3*y^4*z + 28*x^2*y^5*z + y^6*z^2",
    ),
    (
        9,
        "132*x^9 + 165*x^8*y + 308*x^7*y^2 + 616*x^6*y^3 + 1176*x^5*y^4 + 1764*x^4*y^5 - x^8*z + 2*x^7*y*z \
         + 2*x^6*y^2*z + 4*x^5*y^3*z + 10*x^4*y^4*z + 28*x^3*y^5*z + 84*x^2*y^6*z + y^7*z^2",
    ),
    (
        10,
        "429*x^10 + 572*x^9*y + 1144*x^8*y^2 + 2496*x^7*y^3 + 5460*x^6*y^4 + 11088*x^5*y^5 + 17424*x^4*y^6 \
         - x^9*z + 2*x^8*y*z + 2*x^7*y^2*z + 4*x^6*y^3*z + 10*x^5*y^4*z + 28*x^4*y^5*z + 84*x^3*y^6*z \
         + 264*x^2*y^7*z + y^8*z^2",
    ),
];

/// The recursion `f_d = f_{d-1}(x^2, xy, yz + a_{d-1} x^2) / (x^(d-3) y)`
/// seeded by the cuspidal cubic `yz^2 - x^2 z + x^3`. Returns `f_3..f_d`.
pub fn prop2i_chain(d: u32) -> Result<Vec<TriPoly>, FamilyError> {
    if d < 3 {
        return Err(invalid("prop2i needs d >= 3"));
    }
    let mut chain = vec![mono(0, 1, 2) - mono(2, 0, 1) + mono(3, 0, 0)];
    for e in 4..=d {
        let prev = chain.last().unwrap();
        let a = prev.coefficient(&Monomial::new(e - 1, 0, 0));
        let sub = prev.substitute(&mono(2, 0, 0), &mono(1, 1, 0), &(mono(0, 1, 1) + cst(&a) * mono(2, 0, 0)));
        let next = sub.exact_divide(&mono(e - 3, 1, 0))?;
        if next.homogeneous_degree() != Some(e) {
            return Err(FamilyError::Construction(PolyError::NotHomogeneous));
        }
        chain.push(next);
    }
    Ok(chain)
}

/// Two-cusp curve with a cusp of type `(d-1, d-2)` and an `A_{2d-4}` point.
pub fn gen_prop2i(d: u32) -> Result<CurveSpec, FamilyError> {
    if d < 4 {
        return Err(invalid("prop2i needs d >= 4"));
    }
    let f = prop2i_chain(d)?.pop().unwrap();
    let di = d as i64;
    let singularities = SingularityMeta::new(vec![
        Singularity::Cusp { a: d as u64 - 1, b: d as u64 - 2 },
        Singularity::A { k: 2 * d as u64 - 4 },
    ]);
    let free = d >= 5;
    let params = params_map(&[("d", d.to_string())]);
    Ok(CurveSpec {
        id: make_id("prop2i", &params),
        family: "prop2i",
        d,
        f,
        params,
        expected: Expected {
            tau: free.then_some(di * di - 4 * di + 7),
            mu: Some(singularities.total_mu() as i64),
            d1: free.then_some(2),
            d2: free.then_some(di - 3),
            free: Some(free),
            rigid: Some(true),
            irreducible: Some(true),
            rational_cuspidal: Some(true),
        },
        singularities: Some(singularities),
        provenance: "two-cusp curves of type (d,d-2) with an A_{2d-4} point, built by the substitution recursion \
                     from the cuspidal cubic; free for 5 <= d <= 15 with d1 = 2 and tau = d^2-4d+7"
            .into(),
    })
}

/// The coefficient `a_{d-1}` of `x^(d-1)` in `f_{d-1}`.
pub fn prop2i_coefficient(d: u32) -> Result<Rational, FamilyError> {
    let chain = prop2i_chain(d - 1)?;
    Ok(chain.last().unwrap().coefficient(&Monomial::new(d - 1, 0, 0)))
}

/// `(y^(k-1) z + sum_{i=2}^k a_i x^i y^(k-i))^2 y - x^(2k+1)`.
pub fn gen_prop2ii(k: u32, coeffs: Option<&[Rational]>) -> Result<CurveSpec, FamilyError> {
    if k < 2 {
        return Err(invalid("prop2ii needs k >= 2"));
    }
    let default: Vec<Rational> = (2..=k).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect();
    let a = coeffs.map(|c| c.to_vec()).unwrap_or_else(|| default.clone());
    if a.len() != (k - 1) as usize {
        return Err(invalid(format!("prop2ii needs {} coefficients a_2..a_{k}", k - 1)));
    }
    let mut inner = mono(0, k - 1, 1);
    for (i, ai) in (2..=k).zip(&a) {
        inner = inner + cst(ai) * mono(i, k - i, 0);
    }
    let f = inner.pow(2) * y() - mono(2 * k + 1, 0, 0);
    let d = 2 * k + 1;
    let params = params_map(&[("k", k.to_string()), ("coeffs", join(&a))]);
    Ok(CurveSpec {
        id: make_id("prop2ii", &params),
        family: "prop2ii",
        d,
        f,
        params,
        expected: Expected {
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta {
            points: vec![Singularity::UnibranchTotal { mu: rational_cuspidal_mu(d) }],
            verified: a == default,
        }),
        provenance: "two-cusp curves (y^{k-1}z+sum a_i x^i y^{k-i})^2 y - x^{2k+1} with an A_{d-1} point, d = 2k+1"
            .into(),
    })
}

/// `(y^(k-1) z + x^k)^2 y - x^(2k+1)`: free with `tau = 3k^2`, `d1 = d2 = k`.
pub fn gen_thm2ii(k: u32) -> Result<CurveSpec, FamilyError> {
    if k < 2 {
        return Err(invalid("thm2ii needs k >= 2"));
    }
    let mut spec = gen_prop2ii(k, None)?;
    let ki = k as i64;
    let kk = k as u64;
    let singularities = SingularityMeta::new(vec![
        Singularity::Cusp { a: 2 * kk + 1, b: 2 * kk - 1 },
        Singularity::A { k: 2 * kk },
    ]);
    spec.params = params_map(&[("k", k.to_string())]);
    spec.id = make_id("thm2ii", &spec.params);
    spec.family = "thm2ii";
    spec.expected = Expected {
        tau: Some(3 * ki * ki),
        mu: Some(2 * ki * (2 * ki - 1)),
        d1: Some(ki),
        d2: Some(ki),
        free: Some(true),
        irreducible: Some(true),
        rational_cuspidal: Some(true),
        ..Default::default()
    };
    spec.singularities = Some(singularities);
    spec.provenance = "free two-cusp curves (y^{k-1}z+x^k)^2y-x^{2k+1}, cusps (2k+1,2k-1) and A_{2k}; \
                       tau = 3k^2, mu = 2k(2k-1), d1 = d2 = k"
        .into();
    Ok(spec)
}

/// `(y^(k+j) z + sum_{i=2}^{k+j+1} a_i x^i y^(k+j+1-i))^2 - x^(2j+1) y^(2k+1)`.
pub fn gen_prop2iii(k: u32, j: u32, coeffs: Option<&[Rational]>) -> Result<CurveSpec, FamilyError> {
    if j < 1 || k + j < 2 {
        return Err(invalid("prop2iii needs j >= 1 and d = 2k+2j+2 >= 6"));
    }
    let n = k + j + 1;
    let default: Vec<Rational> = (2..=n).map(|i| if i == n { Rational::one() } else { Rational::zero() }).collect();
    let a = coeffs.map(|c| c.to_vec()).unwrap_or_else(|| default.clone());
    if a.len() != (n - 1) as usize {
        return Err(invalid(format!("prop2iii needs {} coefficients a_2..a_{n}", n - 1)));
    }
    if a.last().unwrap().is_zero() {
        return Err(invalid(format!("prop2iii needs a_{n} != 0")));
    }
    let mut inner = mono(0, k + j, 1);
    for (i, ai) in (2..=n).zip(&a) {
        inner = inner + cst(ai) * mono(i, n - i, 0);
    }
    let f = inner.pow(2) - mono(2 * j + 1, 2 * k + 1, 0);
    let d = 2 * k + 2 * j + 2;
    let params = params_map(&[("k", k.to_string()), ("j", j.to_string()), ("coeffs", join(&a))]);
    Ok(CurveSpec {
        id: make_id("prop2iii", &params),
        family: "prop2iii",
        d,
        f,
        params,
        expected: Expected {
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta {
            points: vec![Singularity::UnibranchTotal { mu: rational_cuspidal_mu(d) }],
            verified: a == default,
        }),
        provenance: "two-cusp curves with a cusp of multiplicity d-2 and an A_{2j} point, d = 2k+2j+2".into(),
    })
}

/// Affine numerator construction of the three-cusp curves; `a >= b >= 1`.
pub fn gen_prop3(a: u32, b: u32) -> Result<CurveSpec, FamilyError> {
    if b < 1 || a < b {
        return Err(invalid("prop3 needs a >= b >= 1"));
    }
    let d = a + b + 2;
    // g(x, y) = sum_k a_k / k! (x - y)^k y^(d-3-k), a_k the falling factorial of a_1 = a - 1/2
    let a1 = &Rational::from(a as i64) - &Rational::new(1, 2).unwrap();
    let xmy = x() - y();
    let mut g = TriPoly::zero();
    let mut coef = Rational::one();
    for k in 0..=d - 3 {
        if k > 0 {
            let fall = &a1 - &Rational::from(k as i64 - 1);
            coef = &(&coef * &fall) / &Rational::from(k as i64);
        }
        g = g + cst(&coef) * xmy.pow(k) * mono(0, d - 3 - k, 0);
    }
    let inner = xmy.pow(d - 2) - mono(1, 1, 0) * g;
    let numerator = mono(2 * a + 1, 2 * b + 1, 0) - inner.pow(2);
    let affine = numerator.exact_divide(&xmy.pow(d - 2))?;
    let f = affine.homogenize(d)?;
    let di = d as i64;
    let free = (5..=10).contains(&d).then_some(true).or((d == 4).then_some(false));
    let params = params_map(&[("a", a.to_string()), ("b", b.to_string())]);
    Ok(CurveSpec {
        id: make_id("prop3", &params),
        family: "prop3",
        d,
        f,
        params,
        expected: Expected {
            tau: (free == Some(true)).then_some(di * di - 4 * di + 7),
            mu: Some((di - 1) * (di - 2)),
            d1: (free == Some(true)).then_some(2),
            d2: (free == Some(true)).then_some(di - 3),
            free,
            rigid: Some(true),
            irreducible: Some(true),
            rational_cuspidal: Some(true),
        },
        singularities: Some(SingularityMeta::new(vec![Singularity::UnibranchTotal { mu: rational_cuspidal_mu(d) }])),
        provenance: "three-cusp curves of type (d,d-2), affine equation [x^{2a+1}y^{2b+1}-((x-y)^{d-2}-xyg)^2]/(x-y)^{d-2}, \
                     d = a+b+2; free for 5 <= d <= 10 with d1 = 2, mu = d^2-3d+2"
            .into(),
    })
}

/// `(zy - x^2)^k - x y^(2k-1)`: unicuspidal with Puiseux pair `(k, 4k-1)`.
pub fn gen_prop4i(k: u32) -> Result<CurveSpec, FamilyError> {
    if k < 2 {
        return Err(invalid("prop4i needs k >= 2"));
    }
    let f = (mono(0, 1, 1) - mono(2, 0, 0)).pow(k) - mono(1, 2 * k - 1, 0);
    let d = 2 * k;
    let di = d as i64;
    let free = if k == 2 {
        Some(false)
    } else if k <= 10 {
        Some(true)
    } else {
        None
    };
    let params = params_map(&[("k", k.to_string())]);
    let kk = k as u64;
    Ok(CurveSpec {
        id: make_id("prop4i", &params),
        family: "prop4i",
        d,
        f,
        params,
        expected: Expected {
            tau: (free == Some(true)).then_some(di * di - 4 * di + 7),
            mu: Some(((kk - 1) * (4 * kk - 2)) as i64),
            d1: (free == Some(true)).then_some(2),
            d2: (free == Some(true)).then_some(di - 3),
            free,
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta::new(vec![Singularity::Cusp { a: kk, b: 4 * kk - 1 }])),
        provenance: "unicuspidal curves (zy-x^2)^k - xy^{2k-1} of degree 2k, Puiseux pair (k,4k-1); \
                     free with d1 = 2 for 6 <= d <= 20; rational quartics are never free"
            .into(),
    })
}

/// Affine Fibonacci recursion: returns `P_k` in `x, y` only.
pub fn prop4ii_affine(k: u32) -> Result<TriPoly, FamilyError> {
    let p_m1 = y() - mono(2, 0, 0);
    let p0 = (y() - mono(2, 0, 0)).pow(2) - int(2) * mono(1, 2, 0) * (y() - mono(2, 0, 0)) + mono(0, 5, 0);
    let g = mono(1, 1, 0) - mono(3, 0, 0) - mono(0, 3, 0);
    // (P_{i-1}, P_i) with Q_i = P_{i-1}
    let (mut prev, mut cur) = (p_m1, p0);
    for i in 1..=k {
        let q_i = &cur;
        let num = g.pow(fibonacci(2 * i + 3) as u32) + q_i.pow(3);
        let next = num.exact_divide(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Unicuspidal curve of degree `a_{2k+5}` with Puiseux pair `(a_{2k+3}, a_{2k+7})`.
pub fn gen_prop4ii(k: u32) -> Result<CurveSpec, FamilyError> {
    if k > 6 {
        return Err(invalid("prop4ii is limited to k <= 6"));
    }
    let d = fibonacci(2 * k + 5) as u32;
    let affine = prop4ii_affine(k)?;
    if affine.total_degree() != Some(d) {
        return Err(FamilyError::Construction(PolyError::DegreeTooLarge {
            degree: affine.total_degree().unwrap_or(0),
            target: d,
        }));
    }
    let f = affine.homogenize(d)?;
    let recorded: [(i64, i64, i64); 4] = [(12, 12, 2), (108, 132, 6), (823, 1056, 14), (5889, 7656, 35)];
    let (a, b) = (fibonacci(2 * k + 3), fibonacci(2 * k + 7));
    let params = params_map(&[("k", k.to_string())]);
    let exp = recorded.get(k as usize).map(|&(tau, mu, d1)| Expected {
        tau: Some(tau),
        mu: Some(mu),
        d1: Some(d1),
        d2: Some(d as i64 - 1 - d1),
        free: Some(true),
        irreducible: Some(true),
        rational_cuspidal: Some(true),
        ..Default::default()
    });
    Ok(CurveSpec {
        id: make_id("prop4ii", &params),
        family: "prop4ii",
        d,
        f,
        params,
        expected: exp.unwrap_or(Expected {
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        }),
        singularities: Some(SingularityMeta::new(vec![Singularity::Cusp { a, b }])),
        provenance: "Fibonacci unicuspidal curves P_k = (G^{a_{2k+3}} + P_{k-1}^3)/P_{k-2}, G = xy-x^3-y^3; \
                     (d, tau, mu, d1) = (5,12,12,2), (13,108,132,6), (34,823,1056,14), (89,5889,7656,35)"
            .into(),
    })
}

/// Line arrangements with recorded Tjurina numbers 27, 37, 49.
pub fn gen_line_arrangement(which: &str) -> Result<CurveSpec, FamilyError> {
    let base: Vec<[i64; 3]> = vec![[1, 0, 1], [1, 0, -1], [0, 1, 1], [0, 1, -1], [1, 1, 0], [1, -1, 0]];
    let (extra, tau, exps): (Vec<[i64; 3]>, i64, (i64, i64)) = match which {
        "d7" => (vec![[0, 0, 1]], 27, (3, 3)),
        "d8" => (vec![[0, 1, 0], [0, 0, 1]], 37, (3, 4)),
        "d9" => (vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]], 49, (3, 5)),
        other => return Err(invalid(format!("unknown arrangement `{other}` (expected d7, d8 or d9)"))),
    };
    let lines: Vec<[i64; 3]> = base.into_iter().chain(extra).collect();
    let f = lines
        .iter()
        .fold(TriPoly::one(), |acc, l| acc * (int(l[0]) * x() + int(l[1]) * y() + int(l[2]) * z()));
    let d = lines.len() as u32;
    let points = arrangement_points(&lines)
        .into_iter()
        .map(|m| Singularity::Ordinary { multiplicity: m })
        .collect();
    let params = params_map(&[("which", which.to_string())]);
    let singularities = SingularityMeta::new(points);
    Ok(CurveSpec {
        id: make_id("arrangement", &params),
        family: "arrangement",
        d,
        f,
        params,
        expected: Expected {
            tau: Some(tau),
            mu: Some(singularities.total_mu() as i64),
            d1: Some(exps.0),
            d2: Some(exps.1),
            free: Some(true),
            irreducible: Some(false),
            ..Default::default()
        },
        singularities: Some(singularities),
        provenance: "free line arrangements (x^2-z^2)(y^2-z^2)(x^2-y^2) times z, yz or xyz; tau = 27, 37, 49".into(),
    })
}

/// Multiplicities (at least 2) of the intersection points of distinct lines
/// with integer coefficients.
pub fn arrangement_points(lines: &[[i64; 3]]) -> Vec<u64> {
    let normalize = |mut p: [i64; 3]| {
        let g = p.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
        for v in p.iter_mut() {
            *v /= g;
        }
        if p.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
            for v in p.iter_mut() {
                *v = -*v;
            }
        }
        p
    };
    let mut pts: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            let cross = [l[1] * m[2] - l[2] * m[1], l[2] * m[0] - l[0] * m[2], l[0] * m[1] - l[1] * m[0]];
            pts.entry(normalize(cross)).or_insert(0);
        }
    }
    pts.keys()
        .map(|p| lines.iter().filter(|l| l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == 0).count() as u64)
        .collect()
}

/// Cuspidal cubic `y^2 z - x^3`.
pub fn gen_cuspidal_cubic() -> CurveSpec {
    CurveSpec {
        id: "cusp3".into(),
        family: "cusp3",
        d: 3,
        f: mono(0, 2, 1) - mono(3, 0, 0),
        params: BTreeMap::new(),
        expected: Expected {
            tau: Some(2),
            mu: Some(2),
            free: Some(false),
            irreducible: Some(true),
            rational_cuspidal: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta::new(vec![Singularity::Cusp { a: 2, b: 3 }])),
        provenance: "cuspidal cubic; not free".into(),
    }
}

/// Fermat curve `x^d + y^d + z^d`.
pub fn gen_fermat(d: u32) -> Result<CurveSpec, FamilyError> {
    if d < 3 {
        return Err(invalid("fermat needs d >= 3"));
    }
    let params = params_map(&[("d", d.to_string())]);
    Ok(CurveSpec {
        id: make_id("fermat", &params),
        family: "fermat",
        d,
        f: mono(d, 0, 0) + mono(0, d, 0) + mono(0, 0, d),
        params,
        expected: Expected {
            tau: Some(0),
            mu: Some(0),
            free: Some(false),
            irreducible: Some(true),
            ..Default::default()
        },
        singularities: Some(SingularityMeta::new(Vec::new())),
        provenance: "smooth Fermat curve".into(),
    })
}

/// Relations `(r1, r2)` of coefficient degree `k` for `(y^(k-1) z + x^k)^2 y - x^(2k+1)`.
pub fn syzygy_templates_thm2ii(k: u32) -> [Syzygy; 2] {
    let ki = k as i64;
    let r1 = [
        int(2) * mono(k, 0, 0) + int(2) * mono(0, k - 1, 1),
        int(4 * ki + 2) * mono(k, 0, 0) - int(4 * ki) * mono(k - 1, 1, 0) - int(8 * ki * ki - 2) * mono(0, k - 1, 1),
        int(4 * ki * (ki - 1)) * mono(k - 1, 0, 1) + int(8 * ki * ki * ki - 4 * ki * ki - 2 * ki + 1) * mono(0, k - 2, 2),
    ];
    let r2 = [TriPoly::zero(), int(-2) * mono(0, k, 0), mono(k, 0, 0) + int(2 * ki - 1) * mono(0, k - 1, 1)];
    [r1, r2]
}

/// The quadratic relation `(A_d, B_d, C_d)` of the substitution-recursion
/// curves, with `A_d = (d-2) x^2 - 4(d-3) xy`.
pub fn syzygy_template_rkeq2i(d: u32, a_prev: &Rational) -> Syzygy {
    rkeq2i_template(d, a_prev, -1)
}

/// Same triple with `A_d = (d-2) x^2 + 4(d-3) xy` as printed; kept to
/// document that this sign does not give a relation.
pub fn syzygy_template_rkeq2i_as_printed(d: u32, a_prev: &Rational) -> Syzygy {
    rkeq2i_template(d, a_prev, 1)
}

fn rkeq2i_template(d: u32, a_prev: &Rational, sign: i64) -> Syzygy {
    let di = d as i64;
    [
        int(di - 2) * mono(2, 0, 0) + int(sign * 4 * (di - 3)) * mono(1, 1, 0),
        int(2 * (di - 1)) * mono(1, 1, 0) - int(4 * (2 * di - 3)) * mono(0, 2, 0),
        cst(&(&Rational::from(2 * di * (2 * di - 7)) * a_prev)) * mono(2, 0, 0)
            - int((di - 1) * (di - 2)) * mono(1, 0, 1)
            + int(2 * (di - 2) * (2 * di - 3)) * mono(0, 1, 1),
    ]
}

/// Catalogue entry for `families list`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub id: &'static str,
    pub parameters: &'static str,
    pub defaults: &'static str,
    pub description: &'static str,
}

pub fn catalogue() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo { id: "stfam", parameters: "d>=5, a!=0, b, c", defaults: "a=1, b=0, c=0", description: "y^{d-1}z+x^d+ax^2y^{d-2}+bxy^{d-1}+cy^d; free, tau=d^2-4d+7, exponents (2,d-3)" },
        FamilyInfo { id: "valles", parameters: "none", defaults: "", description: "xyz(x^3+y^3+z^3)[(x^3+y^3+z^3)^3-27x^3y^3z^3]; free, degree 15" },
        FamilyInfo { id: "prop1", parameters: "k>=1, coeffs a_1..a_{k+1} (a_{k+1}!=0)", defaults: "a_{k+1}=1, others 0", description: "(y^kz+sum a_i x^i y^{k+1-i})^2-xy^{2k+1}; unicuspidal, d=2k+2" },
        FamilyInfo { id: "prop2i", parameters: "d>=4", defaults: "", description: "substitution recursion from the cuspidal cubic; free for 5<=d<=15, tau=d^2-4d+7" },
        FamilyInfo { id: "prop2ii", parameters: "k>=2, coeffs a_2..a_k", defaults: "a_k=1, others 0", description: "(y^{k-1}z+sum a_i x^i y^{k-i})^2y-x^{2k+1}; two cusps, d=2k+1" },
        FamilyInfo { id: "thm2ii", parameters: "k>=2", defaults: "", description: "(y^{k-1}z+x^k)^2y-x^{2k+1}; free, tau=3k^2, d1=d2=k" },
        FamilyInfo { id: "prop2iii", parameters: "k>=0, j>=1, coeffs a_2..a_{k+j+1} (last !=0)", defaults: "a_{k+j+1}=1, others 0", description: "(y^{k+j}z+sum a_i x^i y^{k+j+1-i})^2-x^{2j+1}y^{2k+1}; d=2k+2j+2" },
        FamilyInfo { id: "prop3", parameters: "a>=b>=1", defaults: "", description: "three-cusp curves of degree a+b+2; free for 5<=d<=10" },
        FamilyInfo { id: "prop4i", parameters: "k>=2", defaults: "", description: "(zy-x^2)^k-xy^{2k-1}; Puiseux pair (k,4k-1); free for 3<=k<=10, not free for k=2" },
        FamilyInfo { id: "prop4ii", parameters: "0<=k<=6", defaults: "", description: "Fibonacci unicuspidal curves of degree a_{2k+5}" },
        FamilyInfo { id: "arrangement", parameters: "which in {d7, d8, d9}", defaults: "", description: "free line arrangements with tau 27, 37, 49" },
        FamilyInfo { id: "cusp3", parameters: "none", defaults: "", description: "cuspidal cubic y^2z-x^3" },
        FamilyInfo { id: "fermat", parameters: "d>=3", defaults: "", description: "smooth Fermat curve x^d+y^d+z^d" },
    ]
}

fn known_ids() -> String {
    catalogue().iter().map(|f| f.id).collect::<Vec<_>>().join(", ")
}

/// Dispatches on a catalogue id.
pub fn generate(id: &str, p: &FamilyParams) -> Result<CurveSpec, FamilyError> {
    let one = Rational::one();
    let zero = Rational::zero();
    match id {
        "stfam" => gen_stfam(
            need_int(p.d, "d", None)?,
            p.a.as_ref().unwrap_or(&one),
            p.b.as_ref().unwrap_or(&zero),
            p.c.as_ref().unwrap_or(&zero),
        ),
        "valles" => Ok(gen_valles_pencil()),
        "prop1" => gen_prop1(need_int(p.k, "k", None)?, p.coeffs.as_deref()),
        "prop2i" => gen_prop2i(need_int(p.d, "d", None)?),
        "prop2ii" => gen_prop2ii(need_int(p.k, "k", None)?, p.coeffs.as_deref()),
        "thm2ii" => gen_thm2ii(need_int(p.k, "k", None)?),
        "prop2iii" => gen_prop2iii(need_int(p.k, "k", Some(1))?, need_int(p.j, "j", Some(1))?, p.coeffs.as_deref()),
        "prop3" => {
            let a = p.a.as_ref().ok_or_else(|| invalid("missing parameter `a`"))?;
            let b = p.b.as_ref().ok_or_else(|| invalid("missing parameter `b`"))?;
            gen_prop3(rational_int(a, "a")?, rational_int(b, "b")?)
        }
        "prop4i" => gen_prop4i(need_int(p.k, "k", None)?),
        "prop4ii" => gen_prop4ii(need_int(p.k, "k", None)?),
        "arrangement" => gen_line_arrangement(p.which.as_deref().unwrap_or("d9")),
        "cusp3" => Ok(gen_cuspidal_cubic()),
        "fermat" => gen_fermat(need_int(p.d, "d", None)?),
        other => Err(FamilyError::UnknownFamily(other.to_string(), known_ids())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{annihilates_gradient, CurveInput};
    use crate::parser::parse_expression;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn stfam_examples() {
        for (d, a, b, c, tau) in [(5, 1, 0, 0, 12), (7, 1, 0, 0, 28), (8, 1, 1, 1, 39)] {
            let s = gen_stfam(d, &q(a), &q(b), &q(c)).unwrap();
            assert_eq!(s.expected.tau, Some(tau));
            assert_eq!(s.f.homogeneous_degree(), Some(d));
        }
        assert!(gen_stfam(6, &q(0), &q(0), &q(0)).is_err());
    }

    #[test]
    fn valles_degree() {
        assert_eq!(gen_valles_pencil().f.homogeneous_degree(), Some(15));
    }

    #[test]
    fn prop1_examples() {
        let s = gen_prop1(1, Some(&[q(0), q(1)])).unwrap();
        assert_eq!(s.f, parse_expression("(y*z+x^2)^2-x*y^3").unwrap());
        assert_eq!(gen_prop1(2, None).unwrap().f.homogeneous_degree(), Some(6));
        let coeffs = [Rational::new(3, 7).unwrap(), q(-2), q(5)];
        assert_eq!(gen_prop1(2, Some(&coeffs)).unwrap().f.homogeneous_degree(), Some(6));
        assert!(gen_prop1(1, Some(&[q(1), q(0)])).is_err());
    }

    #[test]
    fn prop2i_matches_printed_equations() {
        let chain = prop2i_chain(10).unwrap();
        for (d, text) in PRINTED_PROP2I {
            assert_eq!(chain[(d - 3) as usize], parse_expression(text).unwrap(), "degree {d}");
        }
        assert_eq!(chain[7].coefficient(&Monomial::new(10, 0, 0)), q(429));
    }

    #[test]
    fn prop2i_relation_templates() {
        for d in 5..=15 {
            let spec = gen_prop2i(d).unwrap();
            let c = CurveInput::new(spec.f).unwrap();
            let a = prop2i_coefficient(d).unwrap();
            assert!(annihilates_gradient(&c, &syzygy_template_rkeq2i(d, &a)), "d = {d}");
            assert!(!annihilates_gradient(&c, &syzygy_template_rkeq2i_as_printed(d, &a)), "d = {d}");
        }
    }

    #[test]
    fn thm2ii_relation_templates() {
        for k in 2..=6 {
            let c = CurveInput::new(gen_thm2ii(k).unwrap().f).unwrap();
            for r in syzygy_templates_thm2ii(k) {
                assert!(annihilates_gradient(&c, &r), "k = {k}");
            }
        }
        let [_, r2] = syzygy_templates_thm2ii(2);
        assert_eq!(r2[2], parse_expression("x^2+3*y*z").unwrap());
    }

    #[test]
    fn prop2ii_and_prop2iii_degrees() {
        assert_eq!(gen_thm2ii(2).unwrap().f, parse_expression("(y*z+x^2)^2*y - x^5").unwrap());
        assert_eq!(gen_thm2ii(4).unwrap().expected.tau, Some(48));
        let c = [q(3), Rational::new(-1, 2).unwrap(), q(2)];
        assert_eq!(gen_prop2ii(4, Some(&c)).unwrap().f.homogeneous_degree(), Some(9));
        assert_eq!(gen_prop2iii(1, 1, None).unwrap().d, 6);
        assert_eq!(gen_prop2iii(0, 2, None).unwrap().d, 6);
        assert_eq!(gen_prop2iii(1, 2, None).unwrap().f.homogeneous_degree(), Some(8));
        assert!(gen_prop2iii(0, 1, None).is_err());
        assert!(gen_prop2iii(1, 1, Some(&[q(1), q(0)])).is_err());
    }

    #[test]
    fn prop3_constructions_divide() {
        for d in 4..=10u32 {
            for b in 1..=(d - 2) / 2 {
                let a = d - 2 - b;
                let s = gen_prop3(a, b).unwrap();
                assert_eq!(s.f.homogeneous_degree(), Some(d));
            }
        }
        let s = gen_prop3(2, 1).unwrap();
        assert!(s.f.terms().any(|(_, c)| !c.is_integer()));
        assert_ne!(gen_prop3(3, 1).unwrap().f, gen_prop3(2, 2).unwrap().f);
    }

    #[test]
    fn prop4_constructions() {
        assert_eq!(gen_prop4i(3).unwrap().expected.tau, Some(19));
        assert_eq!(gen_prop4i(2).unwrap().expected.free, Some(false));
        for (k, d) in [(0, 5), (1, 13), (2, 34)] {
            let s = gen_prop4ii(k).unwrap();
            assert_eq!((s.d, s.f.homogeneous_degree()), (d, Some(d)));
            assert_eq!(s.singularities.unwrap().total_mu() as i64, s.expected.mu.unwrap());
        }
    }

    #[test]
    fn fibonacci_numbers() {
        assert_eq!((0..10).map(fibonacci).collect::<Vec<_>>(), vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
        assert_eq!(fibonacci(11), 89);
    }

    #[test]
    fn arrangements() {
        for (w, d) in [("d7", 7), ("d8", 8), ("d9", 9)] {
            let s = gen_line_arrangement(w).unwrap();
            assert_eq!(s.f.homogeneous_degree(), Some(d));
            // weighted homogeneous singularities: mu = tau
            assert_eq!(s.expected.mu, s.expected.tau);
        }
        assert!(gen_line_arrangement("d10").is_err());
    }

    #[test]
    fn dispatch_and_catalogue() {
        assert!(catalogue().len() >= 10);
        let p = FamilyParams { a: Some(q(2)), b: Some(q(1)), ..Default::default() };
        assert_eq!(generate("prop3", &p).unwrap().d, 5);
        match generate("nope", &FamilyParams::default()) {
            Err(FamilyError::UnknownFamily(_, hint)) => assert!(hint.contains("stfam")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
