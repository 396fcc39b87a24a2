use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Polynomial, Rational, Vars};
use super::SamplePoint;
use crate::error::{Error, Result};

/// Element of the fraction field `Q(x_1, ..., x_n)`.
///
/// Normal form: the denominator has leading coefficient one, the common
/// monomial factor of numerator and denominator is removed, and whenever one
/// side divides the other exactly the quotient is taken. No multivariate gcd
/// is computed, so equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn zero(vars: Vars) -> Self {
        RationalFunction { num: Polynomial::zero(vars.clone()), den: Polynomial::one(vars) }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(vars.clone(), c), den: Polynomial::one(vars) }
    }

    pub fn integer(vars: Vars, n: i64) -> Self {
        Self::constant(vars, Rational::from_integer(n.into()))
    }

    pub fn var(vars: Vars, idx: usize) -> Self {
        RationalFunction::from(Polynomial::var(vars, idx))
    }

    /// `num / den`, normalized.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let vars = den.vars().clone();
            return RationalFunction::zero(vars);
        }
        if let Some(c) = den.as_constant() {
            let num = if c.is_one() { num } else { num.scale(&c.recip()) };
            let vars = num.vars().clone();
            return RationalFunction { num, den: Polynomial::one(vars) };
        }
        let (mut num, mut den) = {
            let nm = num.monomial_content();
            let dm = den.monomial_content();
            // align to a common coordinate list before comparing exponents
            if num.vars()[..] == den.vars()[..] {
                let common = super::poly::Monomial(
                    nm.exponents().iter().zip(dm.exponents()).map(|(a, b)| *a.min(b)).collect(),
                );
                (num.div_monomial(&common), den.div_monomial(&common))
            } else {
                let u = num.add(&den).vars().clone();
                let n2 = num.embed(&u).expect("union");
                let d2 = den.embed(&u).expect("union");
                return Self::normalized(n2, d2);
            }
        };
        if let Some(q) = num.div_exact(&den) {
            let vars = q.vars().clone();
            return RationalFunction { num: q, den: Polynomial::one(vars) };
        }
        if num.total_degree() < den.total_degree() {
            if let Some(q) = den.div_exact(&num) {
                // num / den = 1 / q
                let lc = q.leading_coefficient().cloned().unwrap();
                let vars = q.vars().clone();
                return RationalFunction {
                    num: Polynomial::constant(vars, lc.recip()),
                    den: q.scale(&lc.recip()),
                };
            }
        }
        let lc = den.leading_coefficient().cloned().unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Equality decided by `a*d - b*c == 0`.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        if self.is_polynomial() && other.is_polynomial() {
            return self.num.equals(&other.num);
        }
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }

    pub fn embed(&self, target: &Vars) -> Result<Self> {
        Ok(RationalFunction { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return RationalFunction::zero(self.vars().clone());
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Partial derivative by coordinate position in `vars()`.
    pub fn derive_index(&self, idx: usize) -> Self {
        let dn = self.num.derive_index(idx);
        if self.is_polynomial() {
            let vars = dn.vars().clone();
            return RationalFunction { num: dn, den: Polynomial::one(vars) };
        }
        let dd = self.den.derive_index(idx);
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::normalized(top, self.den.mul(&self.den))
    }

    /// Partial derivative by coordinate name.
    pub fn derive(&self, coord: &str) -> Result<Self> {
        let idx = self
            .vars()
            .iter()
            .position(|v| v == coord)
            .ok_or_else(|| Error::UnknownCoordinate(coord.to_string()))?;
        Ok(self.derive_index(idx))
    }

    /// Exact value at `pt`; `PoleAtPoint` when the denominator vanishes.
    pub fn evaluate(&self, pt: &SamplePoint) -> Result<Rational> {
        let values: Vec<Option<Rational>> =
            self.vars().iter().map(|v| pt.get(v).cloned()).collect();
        self.evaluate_values(&values, || pt.to_string())
    }

    pub(crate) fn evaluate_values(
        &self,
        values: &[Option<Rational>],
        describe: impl Fn() -> String,
    ) -> Result<Rational> {
        let d = self.den.evaluate(values)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(describe()));
        }
        Ok(self.num.evaluate(values)? / d)
    }

    /// Composition: substitutes `images[i]` (functions over `target`) for
    /// the variable at position `i`.
    pub fn substitute(&self, images: &[RationalFunction], target: &Vars) -> Result<Self> {
        let n = self.num.substitute(images, target);
        if self.is_polynomial() {
            return Ok(n);
        }
        let d = self.den.substitute(images, target);
        n.checked_div(&d)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        let vars = p.vars().clone();
        RationalFunction { num: p, den: Polynomial::one(vars) }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RationalFunction::from(self.num.add(&rhs.num));
        }
        if self.den.equals(&rhs.den) {
            return RationalFunction::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        RationalFunction::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.vars().clone());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RationalFunction::from(self.num.mul(&rhs.num));
        }
        RationalFunction::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

