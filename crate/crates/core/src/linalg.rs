//! Exact linear algebra over the fraction field of the polynomial ring.
//!
//! Elimination is plain Gauss–Jordan with the first non-zero entry of each
//! column (scanning rows downward) as pivot. Every pivot is recorded: the
//! symbolic result is valid wherever none of them vanish ("generic"), while
//! [`rank_at_points`] gives exact pointwise answers.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::{Polynomial, Rational, RationalFunction, SamplePoint, Vars};

/// Field operations needed by the elimination kernel.
pub(crate) trait FieldEntry: Clone {
    fn is_zero_entry(&self) -> bool;
    fn sub_entry(&self, other: &Self) -> Self;
    fn mul_entry(&self, other: &Self) -> Self;
    fn div_entry(&self, other: &Self) -> Self;
}

impl FieldEntry for RationalFunction {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn sub_entry(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_entry(&self, other: &Self) -> Self {
        self * other
    }
    fn div_entry(&self, other: &Self) -> Self {
        self.checked_div(other).expect("pivot is nonzero")
    }
}

impl FieldEntry for Rational {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn sub_entry(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_entry(&self, other: &Self) -> Self {
        self * other
    }
    fn div_entry(&self, other: &Self) -> Self {
        self / other
    }
}

pub(crate) struct Reduction<T> {
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    pub pivot_values: Vec<T>,
}

/// Gauss–Jordan on `rows`, choosing pivots only among the first
/// `pivot_cols` columns; the remaining columns ride along.
pub(crate) fn reduce<T: FieldEntry>(mut rows: Vec<Vec<T>>, pivot_cols: usize) -> Reduction<T> {
    let mut pivots = Vec::new();
    let mut pivot_values = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero_entry()) else {
            continue;
        };
        rows.swap(r, found);
        let p = rows[r][col].clone();
        for j in col..rows[r].len() {
            if !rows[r][j].is_zero_entry() {
                rows[r][j] = rows[r][j].div_entry(&p);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero_entry() {
                continue;
            }
            let f = row[col].clone();
            for j in col..row.len() {
                if !pivot_row[j].is_zero_entry() {
                    row[j] = row[j].sub_entry(&f.mul_entry(&pivot_row[j]));
                }
            }
        }
        pivots.push(col);
        pivot_values.push(p);
        r += 1;
    }
    Reduction { rows, pivots, pivot_values }
}

/// Rectangular matrix of rational functions.
#[derive(Clone, Debug)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    vars: Vars,
    data: Vec<RationalFunction>,
}

impl SymMatrix {
    pub fn zeros(vars: Vars, rows: usize, cols: usize) -> Self {
        let z = RationalFunction::zero(vars.clone());
        SymMatrix { rows, cols, vars, data: vec![z; rows * cols] }
    }

    pub fn identity(vars: Vars, n: usize) -> Self {
        let mut m = Self::zeros(vars.clone(), n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one(vars.clone()));
        }
        m
    }

    pub fn from_rows(vars: Vars, rows: Vec<Vec<RationalFunction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "rectangular");
        SymMatrix { rows: r, cols: c, vars, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(vars: Vars, rows: usize, columns: &[Vec<RationalFunction>]) -> Self {
        let mut m = Self::zeros(vars, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RationalFunction> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<RationalFunction> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<RationalFunction>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> SymMatrix {
        let mut t = SymMatrix::zeros(self.vars.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalFunction::zero(self.vars.clone());
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.cols, other.rows);
        let cols: Vec<Vec<RationalFunction>> =
            (0..other.cols).map(|j| self.mul_vec(&other.column(j))).collect();
        SymMatrix::from_columns(self.vars.clone(), self.rows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    /// Exact numeric matrix at `pt`.
    pub fn evaluate(&self, pt: &SamplePoint) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(pt)).collect())
            .collect()
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn push_locus(loci: &mut Vec<Polynomial>, p: &Polynomial) {
    if p.as_constant().is_some() {
        return;
    }
    let lc = p.leading_coefficient().cloned().expect("nonzero");
    let monic = p.scale(&lc.recip());
    if !loci.iter().any(|q| q.equals(&monic)) {
        loci.push(monic);
    }
}

fn loci_of(pivot_values: &[RationalFunction]) -> Vec<Polynomial> {
    let mut loci = Vec::new();
    for p in pivot_values {
        push_locus(&mut loci, p.numer());
        push_locus(&mut loci, p.denom());
    }
    loci
}

pub(crate) fn merge_loci(into: &mut Vec<Polynomial>, more: &[Polynomial]) {
    for p in more {
        push_locus(into, p);
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug)]
pub struct EchelonData {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel_basis: Vec<Vec<RationalFunction>>,
    /// Polynomials whose zero sets bound the region where the generic
    /// answer is valid.
    pub pivot_denominators: Vec<Polynomial>,
    pub reduced: SymMatrix,
}

pub fn rref(m: &SymMatrix) -> EchelonData {
    let red = reduce(m.to_rows(), m.cols);
    let rank = red.pivots.len();
    let zero = RationalFunction::zero(m.vars.clone());
    let one = RationalFunction::one(m.vars.clone());
    let mut kernel_basis = Vec::new();
    for free in (0..m.cols).filter(|c| !red.pivots.contains(c)) {
        let mut v = vec![zero.clone(); m.cols];
        v[free] = one.clone();
        for (r, &p) in red.pivots.iter().enumerate() {
            v[p] = -&red.rows[r][free];
        }
        kernel_basis.push(v);
    }
    let reduced = SymMatrix::from_rows(m.vars.clone(), red.rows);
    let reduced = if m.rows == 0 { SymMatrix::zeros(m.vars.clone(), 0, m.cols) } else { reduced };
    EchelonData {
        rank,
        pivots: red.pivots,
        kernel_basis,
        pivot_denominators: loci_of(&red.pivot_values),
        reduced,
    }
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug)]
pub enum LinearSolution {
    /// A particular solution; `kernel` spans the homogeneous solutions.
    Solution {
        x: Vec<RationalFunction>,
        kernel: Vec<Vec<RationalFunction>>,
        locus: Vec<Polynomial>,
    },
    /// A covector `y` with `y M = 0` and `y b != 0`.
    Inconsistent { certificate: Vec<RationalFunction>, locus: Vec<Polynomial> },
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&[RationalFunction]> {
        match self {
            LinearSolution::Solution { x, .. } => Some(x),
            LinearSolution::Inconsistent { .. } => None,
        }
    }
}

fn augmented_with_identity(m: &SymMatrix, extra: &[Vec<RationalFunction>]) -> Vec<Vec<RationalFunction>> {
    let zero = RationalFunction::zero(m.vars.clone());
    let one = RationalFunction::one(m.vars.clone());
    (0..m.rows)
        .map(|i| {
            let mut row = m.row(i);
            for col in extra {
                row.push(col[i].clone());
            }
            for k in 0..m.rows {
                row.push(if k == i { one.clone() } else { zero.clone() });
            }
            row
        })
        .collect()
}

pub fn solve_linear(m: &SymMatrix, b: &[RationalFunction]) -> LinearSolution {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let n = m.cols;
    let red = reduce(augmented_with_identity(m, &[b.to_vec()]), n);
    let locus = loci_of(&red.pivot_values);
    let rank = red.pivots.len();
    for row in &red.rows[rank..] {
        if !row[n].is_zero() {
            return LinearSolution::Inconsistent { certificate: row[n + 1..].to_vec(), locus };
        }
    }
    let zero = RationalFunction::zero(m.vars.clone());
    let mut x = vec![zero; n];
    for (r, &p) in red.pivots.iter().enumerate() {
        x[p] = red.rows[r][n].clone();
    }
    let kernel = rref(m).kernel_basis;
    LinearSolution::Solution { x, kernel, locus }
}

/// Outcome of a span-membership test.
#[derive(Clone, Debug)]
pub enum SpanMembership {
    Member(Vec<RationalFunction>),
    Residual(Vec<RationalFunction>),
}

impl SpanMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, SpanMembership::Member(_))
    }
}

/// Precomputed elimination of a list of row vectors, reusable for many
/// membership queries.
#[derive(Clone, Debug)]
pub struct SpanTester {
    vars: Vars,
    len: usize,
    count: usize,
    reduced: Vec<Vec<RationalFunction>>,
    pivots: Vec<usize>,
    locus: Vec<Polynomial>,
}

impl SpanTester {
    pub fn new(vars: Vars, len: usize, rows: &[Vec<RationalFunction>]) -> Self {
        let m = SymMatrix::from_rows(vars.clone(), rows.to_vec());
        let m = if rows.is_empty() { SymMatrix::zeros(vars.clone(), 0, len) } else { m };
        assert_eq!(m.cols, len, "vector length");
        let red = reduce(augmented_with_identity(&m, &[]), len);
        let rank = red.pivots.len();
        SpanTester {
            vars,
            len,
            count: rows.len(),
            locus: loci_of(&red.pivot_values),
            reduced: red.rows.into_iter().take(rank).collect(),
            pivots: red.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn locus(&self) -> &[Polynomial] {
        &self.locus
    }

    pub fn test(&self, v: &[RationalFunction]) -> SpanMembership {
        assert_eq!(v.len(), self.len, "vector length");
        let mut residual = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.len {
                let a = &self.reduced[r][j];
                if !a.is_zero() {
                    residual[j] = &residual[j] - &(&f * a);
                }
            }
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return SpanMembership::Residual(residual);
        }
        let mut coeffs = vec![RationalFunction::zero(self.vars.clone()); self.count];
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = &v[p];
            if f.is_zero() {
                continue;
            }
            for (i, c) in coeffs.iter_mut().enumerate() {
                let t = &self.reduced[r][self.len + i];
                if !t.is_zero() {
                    *c = &*c + &(f * t);
                }
            }
        }
        SpanMembership::Member(coeffs)
    }
}

pub fn in_span(vars: &Vars, rows: &[Vec<RationalFunction>], v: &[RationalFunction]) -> SpanMembership {
    SpanTester::new(vars.clone(), v.len(), rows).test(v)
}

/// Rank of an exact rational matrix.
pub fn numeric_rank(m: &[Vec<Rational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    reduce(m.to_vec(), cols).pivots.len()
}

/// Kernel basis of an exact rational matrix with `cols` columns.
pub fn numeric_kernel(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let red = reduce(m.to_vec(), cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !red.pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in red.pivots.iter().enumerate() {
            v[p] = -red.rows[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `m x = b` over the rationals, returning a particular solution and
/// a kernel basis, or `None` when inconsistent.
pub fn numeric_solve(
    m: &[Vec<Rational>],
    cols: usize,
    b: &[Rational],
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let rows: Vec<Vec<Rational>> =
        m.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let red = reduce(rows, cols);
    let rank = red.pivots.len();
    if red.rows[rank..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in red.pivots.iter().enumerate() {
        x[p] = red.rows[r][cols].clone();
    }
    Some((x, numeric_kernel(m, cols)))
}

/// Exact rank of `m` evaluated at each point.
pub fn rank_at_points(m: &SymMatrix, pts: &[SamplePoint]) -> Result<Vec<usize>> {
    pts.iter().map(|pt| Ok(numeric_rank(&m.evaluate(pt)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, vars};

    fn mat(v: &Vars, rows: &[&[&str]]) -> SymMatrix {
        SymMatrix::from_rows(
            v.clone(),
            rows.iter().map(|r| r.iter().map(|s| parse_scalar(s, v).unwrap()).collect()).collect(),
        )
    }

    fn vecs(v: &Vars, xs: &[&str]) -> Vec<RationalFunction> {
        xs.iter().map(|s| parse_scalar(s, v).unwrap()).collect()
    }

    #[test]
    fn rref_examples() {
        let v = vars(&["x", "y"]);
        let id = SymMatrix::identity(v.clone(), 3);
        let e = rref(&id);
        assert_eq!(e.rank, 3);
        assert!(e.kernel_basis.is_empty());

        let e = rref(&mat(&v, &[&["x", "x"], &["1", "1"]]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.kernel_basis, vec![vecs(&v, &["-1", "1"])]);
        // pivot x recorded as the validity locus
        assert_eq!(e.pivot_denominators.len(), 1);

        let z = SymMatrix::zeros(v.clone(), 2, 3);
        let e = rref(&z);
        assert_eq!(e.rank, 0);
        assert_eq!(e.kernel_basis.len(), 3);
    }

    #[test]
    fn solve_examples() {
        let v = vars(&["x", "y"]);
        let id = SymMatrix::identity(v.clone(), 2);
        let s = solve_linear(&id, &vecs(&v, &["x", "y"]));
        assert_eq!(s.solution().unwrap(), &vecs(&v, &["x", "y"])[..]);

        let m = mat(&v, &[&["1"], &["1"]]);
        match solve_linear(&m, &vecs(&v, &["1", "0"])) {
            LinearSolution::Inconsistent { certificate, .. } => {
                // y M = 0 and y b != 0
                assert_eq!(certificate, vecs(&v, &["-1", "1"]));
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }

        let m = mat(&v, &[&["x"]]);
        let s = solve_linear(&m, &vecs(&v, &["x**2"]));
        assert_eq!(s.solution().unwrap(), &vecs(&v, &["x"])[..]);
    }

    #[test]
    fn span_examples() {
        let v = vars(&["x", "y"]);
        match in_span(&v, &[vecs(&v, &["1", "0"])], &vecs(&v, &["x", "0"])) {
            SpanMembership::Member(c) => assert_eq!(c, vecs(&v, &["x"])),
            r => panic!("{r:?}"),
        }
        match in_span(&v, &[vecs(&v, &["1", "0"])], &vecs(&v, &["0", "1"])) {
            SpanMembership::Residual(r) => assert_eq!(r, vecs(&v, &["0", "1"])),
            r => panic!("{r:?}"),
        }
        match in_span(&v, &[vecs(&v, &["1", "x"])], &vecs(&v, &["y", "x*y"])) {
            SpanMembership::Member(c) => assert_eq!(c, vecs(&v, &["y"])),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn rank_at_points_examples() {
        let v = vars(&["x"]);
        let m = mat(&v, &[&["x"]]);
        let pts = [SamplePoint::from_ints([("x", 0)]), SamplePoint::from_ints([("x", 1)])];
        assert_eq!(rank_at_points(&m, &pts).unwrap(), vec![0, 1]);
        assert_eq!(rank_at_points(&SymMatrix::identity(v.clone(), 4), &pts).unwrap(), vec![4, 4]);
        let inv = mat(&v, &[&["1/x"]]);
        assert!(rank_at_points(&inv, &pts).is_err());
    }
}
