//! Seeded generation of rational sample points and test polynomials.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::index::increasing_tuples;
use crate::calculus::{Chart, DiffForm, MultiVectorField, SmoothMap};
use crate::error::{Error, Result};
use crate::scalar::{Polynomial, Rational, RationalFunction, SamplePoint};

/// Largest denominator of a sampled rational.
pub const MAX_DENOMINATOR: i64 = 64;
const RETRIES: usize = 64;

/// Seed for the check at `index` under a global seed. Independent of the
/// order in which checks run.
pub fn derive_seed(global: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = global ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    /// Numerators are drawn from `[-bound, bound]`.
    pub fn new(seed: u64, bound: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: bound.max(1) }
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=MAX_DENOMINATOR);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn point(&mut self, chart: &Chart) -> SamplePoint {
        SamplePoint::from_pairs(chart.coords().iter().map(|c| (c.clone(), self.rational())).collect::<Vec<_>>())
    }

    /// `count` points at which none of `avoid` vanishes, redrawing each
    /// point at most a fixed number of times.
    pub fn points_avoiding(&mut self, chart: &Chart, count: usize, avoid: &[Polynomial]) -> Result<Vec<SamplePoint>> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut found = None;
            for _ in 0..RETRIES {
                let pt = self.point(chart);
                let values = pt.values_for(chart.coords());
                let mut ok = true;
                for p in avoid {
                    let v = p.evaluate(&values)?;
                    if v == Rational::from_integer(0.into()) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    found = Some(pt);
                    break;
                }
            }
            out.push(found.ok_or_else(|| Error::PoleAtPoint("no sample point off the locus".into()))?);
        }
        Ok(out)
    }

    /// Polynomial with at most `terms` monomials of total degree at most
    /// `degree` and small integer coefficients.
    pub fn polynomial(&mut self, chart: &Chart, degree: u32, terms: usize) -> RationalFunction {
        let n = chart.dim();
        let mut raw = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut exps = vec![0u32; n];
            let total = self.rng.gen_range(0..=degree);
            for _ in 0..total {
                if n > 0 {
                    exps[self.rng.gen_range(0..n)] += 1;
                }
            }
            let c = self.rng.gen_range(-5i64..=5);
            raw.push((exps, Rational::from_integer(c.into())));
        }
        Polynomial::from_terms(chart.coords().clone(), raw).into()
    }

    /// Polynomial coefficients, each present with probability one half.
    fn coefficients(&mut self, chart: &Chart, count: usize, degree: u32) -> Vec<RationalFunction> {
        (0..count)
            .map(|_| if self.rng.gen_bool(0.5) { self.polynomial(chart, degree, 3) } else { chart.zero() })
            .collect()
    }

    pub fn form(&mut self, chart: &Chart, k: usize, degree: u32) -> DiffForm {
        let n = increasing_tuples(chart.dim(), k).len();
        DiffForm::from_components(chart, k, &self.coefficients(chart, n, degree))
    }

    pub fn multivector(&mut self, chart: &Chart, k: usize, degree: u32) -> MultiVectorField {
        let n = increasing_tuples(chart.dim(), k).len();
        MultiVectorField::from_components(chart, k, &self.coefficients(chart, n, degree))
    }

    pub fn map(&mut self, source: &Chart, target: &Chart, degree: u32) -> SmoothMap {
        let comps = (0..target.dim()).map(|_| self.polynomial(source, degree, 3)).collect();
        SmoothMap::new(source, target, comps).expect("component count")
    }
}
