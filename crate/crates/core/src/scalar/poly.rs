use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RationalFunction;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Ordered coordinate names shared by every scalar living on one chart.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials, zero
/// coefficients are never stored, so two polynomials over the same
/// coordinate list are equal iff their term maps are identical.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

fn union_vars(a: &Vars, b: &Vars) -> Vars {
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.into()
}

impl Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The coordinate function at position `idx`.
    pub fn var(vars: Vars, idx: usize) -> Self {
        let mut m = Monomial::one(vars.len());
        m.0[idx] = 1;
        let mut p = Polynomial::zero(vars);
        p.terms.insert(m, Rational::one());
        p
    }

    /// Builds a polynomial from raw terms; zero coefficients are dropped and
    /// repeated monomials are summed.
    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.vars.len(), "exponent vector length");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// coordinate the polynomial actually uses.
    pub fn embed(&self, target: &Vars) -> Result<Polynomial> {
        if same_vars(&self.vars, target) {
            return Ok(Polynomial { vars: target.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            map.push(target.iter().position(|t| t == v));
        }
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => return Err(Error::UnknownCoordinate(self.vars[i].clone())),
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    fn aligned<'a>(&'a self, other: &'a Polynomial) -> (Cow<'a, Polynomial>, Cow<'a, Polynomial>) {
        if same_vars(&self.vars, &other.vars) {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        if other.is_zero() || other.as_constant().is_some() {
            let o = other.embed(&self.vars).expect("constant embeds anywhere");
            return (Cow::Borrowed(self), Cow::Owned(o));
        }
        if self.as_constant().is_some() {
            let s = self.embed(&other.vars).expect("constant embeds anywhere");
            return (Cow::Owned(s), Cow::Borrowed(other));
        }
        let u = union_vars(&self.vars, &other.vars);
        (
            Cow::Owned(self.embed(&u).expect("union contains all")),
            Cow::Owned(other.embed(&u).expect("union contains all")),
        )
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(other);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(other);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(other);
        let mut out = Polynomial::zero(a.vars.clone());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to the variable at position `idx`.
    pub fn derive_index(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Partial derivative by coordinate name; a coordinate the polynomial
    /// does not carry yields zero.
    pub fn derive_name(&self, name: &str) -> Polynomial {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.derive_index(i),
            None => Polynomial::zero(self.vars.clone()),
        }
    }

    pub fn evaluate(&self, values: &[Option<Rational>]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values[i]
                    .as_ref()
                    .ok_or_else(|| Error::UnassignedCoordinate(self.vars[i].clone()))?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for the variable at position `i`.
    pub fn substitute(&self, images: &[RationalFunction], target: &Vars) -> RationalFunction {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let mut cache: BTreeMap<(usize, u32), RationalFunction> = BTreeMap::new();
        let mut acc = RationalFunction::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = RationalFunction::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.vars.len());
        };
        let mut out = first.clone();
        for m in it {
            for (a, b) in out.0.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        out
    }

    pub(crate) fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / d` when `d` divides `self`, otherwise `None`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (a, b) = self.aligned(d);
        let (lm, lc) = b.leading_term()?;
        let mut rem = a.into_owned();
        let mut quo = Polynomial::zero(rem.vars.clone());
        while let Some((rm, rc)) = rem.leading_term() {
            if rm.degree() < lm.degree() || !lm.divides(rm) {
                return None;
            }
            let qm = rm.div(lm);
            let qc = rc / lc;
            for (m, c) in &b.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Mathematical equality, insensitive to the coordinate lists carried.
    pub fn equals(&self, other: &Polynomial) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}**{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
