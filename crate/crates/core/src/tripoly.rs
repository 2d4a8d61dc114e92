//! Sparse polynomials in `x, y, z` with exact rational coefficients.
//!
//! Monomials are ordered graded-lexicographically with `x > y > z`; every
//! matrix layout and rendering in the crate follows this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{ArithError, PolyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };

    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial { x, y, z }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Monomial::new(1, 0, 0),
            Var::Y => Monomial::new(0, 1, 0),
            Var::Z => Monomial::new(0, 0, 1),
        }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
            Var::Z => self.z,
        }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.x <= o.x && self.y <= o.y && self.z <= o.z
    }

    /// `o / self`, if `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        self.divides(o)
            .then(|| Monomial::new(o.x - self.x, o.y - self.y, o.z - self.z))
    }

    /// Position of this monomial in `monomial_basis(self.degree())`.
    pub fn index_in_degree(&self) -> usize {
        let k = self.degree();
        let r = (k - self.x) as usize;
        r * (r + 1) / 2 + (k - self.x - self.y) as usize
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then(self.x.cmp(&o.x))
            .then(self.y.cmp(&o.y))
            .then(self.z.cmp(&o.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of degree `k` in three variables.
pub fn basis_len(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// All monomials of degree `k`, in descending order.
pub fn monomial_basis(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(k as usize));
    for x in (0..=k).rev() {
        for y in (0..=k - x).rev() {
            out.push(Monomial::new(x, y, k - x - y));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        TriPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        TriPoly::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        TriPoly::term(Rational::one(), Monomial::var(v))
    }

    pub fn x() -> Self {
        TriPoly::var(Var::X)
    }

    pub fn y() -> Self {
        TriPoly::var(Var::Y)
    }

    pub fn z() -> Self {
        TriPoly::var(Var::Z)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TriPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = TriPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Homogeneity::Zero;
        };
        let d = first.degree();
        if it.all(|m| m.degree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.homogeneity(), Homogeneity::Homogeneous(_))
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> TriPoly {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> TriPoly {
        let mut acc = TriPoly::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> TriPoly {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut d = *m;
            match v {
                Var::X => d.x -= 1,
                Var::Y => d.y -= 1,
                Var::Z => d.z -= 1,
            }
            out.insert(d, c * &Rational::from(e as i64));
        }
        TriPoly { terms: out }
    }

    pub fn gradient(&self) -> [TriPoly; 3] {
        Var::ALL.map(|v| self.partial_derivative(v))
    }

    /// `p(sx, sy, sz)`, fully expanded.
    pub fn substitute(&self, sx: &TriPoly, sy: &TriPoly, sz: &TriPoly) -> TriPoly {
        let powers = |s: &TriPoly, n: u32| {
            let mut v = vec![TriPoly::one()];
            for i in 1..=n as usize {
                let next = &v[i - 1] * s;
                v.push(next);
            }
            v
        };
        let px = powers(sx, self.degree_in(Var::X));
        let py = powers(sy, self.degree_in(Var::Y));
        let pz = powers(sz, self.degree_in(Var::Z));
        let mut out = TriPoly::zero();
        for (m, c) in &self.terms {
            let t = &(&px[m.x as usize] * &py[m.y as usize]) * &pz[m.z as usize];
            for (tm, tc) in &t.terms {
                out.add_term(*tm, &(tc * c));
            }
        }
        out
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc = acc + &(&(&(c * &x.pow(m.x)) * &y.pow(m.y)) * &z.pow(m.z));
        }
        acc
    }

    /// Exact quotient `self / q`; errors unless the division leaves no remainder.
    pub fn exact_divide(&self, q: &TriPoly) -> Result<TriPoly, PolyError> {
        let (qlm, qlc) = q.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (qlm, qlc_inv) = (*qlm, qlc.inv().expect("nonzero leading coefficient"));
        let mut rem = self.clone();
        let mut quot = TriPoly::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            let m = qlm.quotient_of(lm).ok_or(PolyError::NotDivisible)?;
            let c = lc * &qlc_inv;
            for (qm, qc) in &q.terms {
                rem.add_term(qm.mul(&m), &-(qc * &c));
            }
            quot.add_term(m, &c);
        }
        Ok(quot)
    }

    /// `z^d p(x/z, y/z, 1)` applied termwise: each term is padded with a
    /// power of `z` up to total degree `d`.
    pub fn homogenize(&self, d: u32) -> Result<TriPoly, PolyError> {
        if let Some(deg) = self.total_degree() {
            if deg > d {
                return Err(PolyError::DegreeTooLarge { degree: deg, target: d });
            }
        }
        Ok(TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x, m.y, m.z + d - m.degree()), c.clone()))
                .collect(),
        })
    }

    /// Coefficients reduced modulo `p`, zero images dropped.
    pub fn to_modp(&self, p: u64) -> Result<Vec<(Monomial, u64)>, ArithError> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms() {
            let v = c.reduce_mod(p)?.value();
            if v != 0 {
                out.push((*m, v));
            }
        }
        Ok(out)
    }

    /// Denominators of the coefficients.
    pub fn denominators(&self) -> impl Iterator<Item = &num_bigint::BigInt> + '_ {
        self.terms.values().map(|c| c.denom())
    }
}

impl Add<&TriPoly> for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&TriPoly> for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&TriPoly> for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<TriPoly> for TriPoly {
            type Output = TriPoly;
            fn $method(self, rhs: TriPoly) -> TriPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&TriPoly> for TriPoly {
            type Output = TriPoly;
            fn $method(self, rhs: &TriPoly) -> TriPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<TriPoly> for &TriPoly {
            type Output = TriPoly;
            fn $method(self, rhs: TriPoly) -> TriPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        -&self
    }
}

/// Canonical rendering: descending monomial order, `*` between factors,
/// coefficients as `n` or `n/m`.
impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({self})")
    }
}

impl Serialize for TriPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
