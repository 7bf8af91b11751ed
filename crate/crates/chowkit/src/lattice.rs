//! Exact integer-lattice linear algebra: Hermite and Smith normal forms,
//! sublattice indices and membership for graded lattices presented by
//! rational coordinates, and cokernels of graded integer map families with
//! their invariant factors.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{Int, Rat};
use crate::linalg::RatMat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("per-degree ranks differ at degree {degree}: {sub} vs {sup}")]
    RankMismatch { degree: u32, sub: usize, sup: usize },
    #[error("sublattice is not contained in the ambient lattice at degree {degree}")]
    NotContained { degree: u32 },
    #[error("vector is not a member of the lattice")]
    NotAMember,
    #[error("dimension mismatch: expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map family shape mismatch at degree {degree}")]
    ShapeMismatch { degree: u32 },
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = Int::from(*v);
            }
        }
        m
    }

    pub fn from_int_columns(rows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = IntMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rational(&self) -> RatMat {
        let mut out = RatMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = Rat::from_integer(self[(i, j)].clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }

    /// `row[dst] += q * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(dst, j)] + q * &self[(src, j)];
            self[(dst, j)] = v;
        }
    }

    /// `col[dst] += q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, dst)] + q * &self[(i, src)];
            self[(i, dst)] = v;
        }
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Hermite normal form
// ---------------------------------------------------------------------------

fn row_hnf(a: &IntMatrix) -> IntMatrix {
    let mut b = a.clone();
    let mut r = 0;
    for c in 0..b.cols {
        if r == b.rows {
            break;
        }
        // gcd phase: smallest pivot, reduce below, repeat until clean
        loop {
            let pivot = (r..b.rows)
                .filter(|&i| !b[(i, c)].is_zero())
                .min_by_key(|&i| b[(i, c)].abs());
            let Some(p) = pivot else { break };
            b.swap_rows(r, p);
            if b[(r, c)].is_negative() {
                b.negate_row(r);
            }
            let mut dirty = false;
            for i in r + 1..b.rows {
                if !b[(i, c)].is_zero() {
                    let q = b[(i, c)].div_floor(&b[(r, c)]);
                    b.row_axpy(i, r, &-q);
                    if !b[(i, c)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if b[(r, c)].is_zero() {
            continue;
        }
        for i in 0..r {
            let q = b[(i, c)].div_floor(&b[(r, c)]);
            b.row_axpy(i, r, &-q);
        }
        r += 1;
    }
    b
}

/// Column-style Hermite normal form: unimodular column operations only, so
/// the column span over `Z` is preserved. Each nonzero column's topmost
/// nonzero entry is a positive pivot, pivot rows increase left to right, and
/// the entries in a pivot's row are reduced modulo the pivot.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    row_hnf(&a.transpose()).transpose()
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Invariant factor decomposition `u * a * v = diag(factors)` with
/// unimodular `u`, `v`; the factors are positive and form a divisibility
/// chain `d_1 | d_2 | ... | d_r`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<Int>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Torsion coefficients: the invariant factors larger than 1.
    pub fn torsion(&self) -> Vec<Int> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }

    /// Reconstructs the diagonal and checks it against `u * a * v`, the
    /// divisibility chain and unimodularity of the transforms.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let prod = self.u.mul(a).mul(&self.v);
        for i in 0..prod.rows {
            for j in 0..prod.cols {
                let expect = if i == j && i < self.factors.len() {
                    self.factors[i].clone()
                } else {
                    Int::zero()
                };
                if prod[(i, j)] != expect {
                    return false;
                }
            }
        }
        for w in self.factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return false;
            }
        }
        if self.factors.iter().any(|f| !f.is_positive()) {
            return false;
        }
        self.u.det().abs().is_one() && self.v.det().abs().is_one()
    }
}

/// Smith normal form by repeated pivoting on the smallest nonzero entry,
/// which keeps coefficient growth tame at the sizes used here.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let mut b = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let t = a.rows.min(a.cols);

    for k in 0..t {
        'pivot: loop {
            // smallest nonzero entry of the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in k..b.rows {
                for j in k..b.cols {
                    if !b[(i, j)].is_zero()
                        && best
                            .map(|(bi, bj)| b[(i, j)].abs() < b[(bi, bj)].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            b.swap_rows(k, pi);
            u.swap_rows(k, pi);
            b.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if b[(k, k)].is_negative() {
                b.negate_row(k);
                u.negate_row(k);
            }

            let mut clean = true;
            for i in k + 1..b.rows {
                if !b[(i, k)].is_zero() {
                    let q = -b[(i, k)].div_floor(&b[(k, k)]);
                    b.row_axpy(i, k, &q);
                    u.row_axpy(i, k, &q);
                    if !b[(i, k)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..b.cols {
                if !b[(k, j)].is_zero() {
                    let q = -b[(k, j)].div_floor(&b[(k, k)]);
                    b.col_axpy(j, k, &q);
                    v.col_axpy(j, k, &q);
                    if !b[(k, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }

            // enforce divisibility into the trailing submatrix
            for i in k + 1..b.rows {
                for j in k + 1..b.cols {
                    if !b[(i, j)].is_multiple_of(&b[(k, k)]) {
                        b.row_axpy(k, i, &Int::one());
                        u.row_axpy(k, i, &Int::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    let mut factors = Vec::new();
    for k in 0..t {
        if b[(k, k)].is_zero() {
            break;
        }
        factors.push(b[(k, k)].clone());
    }
    let rank = factors.len();
    SmithForm { factors, rank, u, v }
}

// ---------------------------------------------------------------------------
// Graded lattices
// ---------------------------------------------------------------------------

/// A finitely generated free abelian group graded by even degree, presented
/// per degree by linearly independent rational coordinate columns in a fixed
/// ambient basis.
#[derive(Clone, Debug)]
pub struct GradedLattice {
    bases: BTreeMap<u32, Vec<Vec<Rat>>>,
}

impl GradedLattice {
    pub fn new(bases: BTreeMap<u32, Vec<Vec<Rat>>>) -> Self {
        for (d, cols) in &bases {
            assert!(d % 2 == 0, "odd degree {d} in graded lattice");
            assert!(!cols.is_empty(), "empty basis stored at degree {d}");
            let ambient = cols[0].len();
            assert!(cols.iter().all(|c| c.len() == ambient));
            let rank = RatMat::from_columns(ambient, cols).rank();
            assert_eq!(rank, cols.len(), "dependent basis at degree {d}");
        }
        GradedLattice { bases }
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.bases.keys().copied()
    }

    pub fn basis(&self, degree: u32) -> Option<&Vec<Vec<Rat>>> {
        self.bases.get(&degree)
    }

    pub fn rank_at(&self, degree: u32) -> usize {
        self.bases.get(&degree).map_or(0, |b| b.len())
    }

    pub fn total_rank(&self) -> usize {
        self.bases.values().map(|b| b.len()).sum()
    }

    /// Integer coordinates of `v` in the degree-`degree` basis, or
    /// `NotAMember` when `v` is outside the lattice; mismatched vector
    /// lengths are reported separately.
    pub fn coords_in(&self, v: &[Rat], degree: u32) -> Result<Vec<Int>, LatticeError> {
        let Some(cols) = self.bases.get(&degree) else {
            if v.iter().all(|x| x.is_zero()) {
                return Ok(Vec::new());
            }
            return Err(LatticeError::DimensionMismatch {
                expected: 0,
                got: v.len(),
            });
        };
        let ambient = cols[0].len();
        if v.len() != ambient {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient,
                got: v.len(),
            });
        }
        let mat = RatMat::from_columns(ambient, cols);
        let x = mat.solve(v).ok_or(LatticeError::NotAMember)?;
        let mut out = Vec::with_capacity(x.len());
        for c in x {
            if !c.denom().is_one() {
                return Err(LatticeError::NotAMember);
            }
            out.push(c.numer().clone());
        }
        Ok(out)
    }

    /// Saturation of `sub` inside `sup`: the largest sublattice of `sup`
    /// with the same rational span as `sub` per degree, so that the quotient
    /// `sup / saturation` is torsion-free. Computed from the Smith form of
    /// the change-of-basis matrix.
    pub fn saturate_in(sub: &GradedLattice, sup: &GradedLattice) -> Result<GradedLattice, LatticeError> {
        let mut bases: BTreeMap<u32, Vec<Vec<Rat>>> = BTreeMap::new();
        for d in sub.degrees() {
            let sub_cols = sub.bases.get(&d).unwrap();
            let Some(sup_cols) = sup.bases.get(&d) else {
                return Err(LatticeError::RankMismatch {
                    degree: d,
                    sub: sub_cols.len(),
                    sup: 0,
                });
            };
            let ambient = sup_cols[0].len();
            let mat = RatMat::from_columns(ambient, sup_cols);
            // integer coordinates of the sub basis in the sup basis
            let mut change = IntMatrix::zero(sup_cols.len(), sub_cols.len());
            for (j, col) in sub_cols.iter().enumerate() {
                let x = mat.solve(col).ok_or(LatticeError::NotContained { degree: d })?;
                for (i, c) in x.into_iter().enumerate() {
                    if !c.denom().is_one() {
                        return Err(LatticeError::NotContained { degree: d });
                    }
                    change[(i, j)] = c.numer().clone();
                }
            }
            // u * change * v = diag(d_1..d_r): the saturation is spanned by
            // the first r columns of u^(-1), i.e. the preimages of the
            // unit vectors
            let s = snf(&change);
            let u_rat = s.u.to_rational();
            let u_inv = u_rat.inverse().expect("unimodular transform");
            let mut cols = Vec::with_capacity(s.rank);
            for j in 0..s.rank {
                // coordinates in the sup basis of the j-th saturated vector
                let coords = u_inv.column(j);
                let mut v = vec![Rat::zero(); ambient];
                for (i, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (row, b) in sup_cols[i].iter().enumerate() {
                        v[row] += c * b;
                    }
                }
                cols.push(v);
            }
            if !cols.is_empty() {
                bases.insert(d, cols);
            }
        }
        Ok(GradedLattice::new(bases))
    }

    /// `[sup : sub]`: requires equal per-degree ranks and `sub` contained in
    /// `sup`; returns the product over degrees of `|det|` of the change of
    /// basis.
    pub fn index_of(sub: &GradedLattice, sup: &GradedLattice) -> Result<Int, LatticeError> {
        let mut degrees: Vec<u32> = sub.degrees().collect();
        for d in sup.degrees() {
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
        degrees.sort_unstable();
        let mut index = Int::one();
        for d in degrees {
            let (rs, rp) = (sub.rank_at(d), sup.rank_at(d));
            if rs != rp {
                return Err(LatticeError::RankMismatch {
                    degree: d,
                    sub: rs,
                    sup: rp,
                });
            }
            if rs == 0 {
                continue;
            }
            let sup_cols = sup.bases.get(&d).unwrap();
            let ambient = sup_cols[0].len();
            let mat = RatMat::from_columns(ambient, sup_cols);
            let mut change = RatMat::zero(rs, rs);
            for (j, col) in sub.bases.get(&d).unwrap().iter().enumerate() {
                if col.len() != ambient {
                    return Err(LatticeError::DimensionMismatch {
                        expected: ambient,
                        got: col.len(),
                    });
                }
                let x = mat.solve(col).ok_or(LatticeError::NotContained { degree: d })?;
                for (i, c) in x.into_iter().enumerate() {
                    if !c.denom().is_one() {
                        return Err(LatticeError::NotContained { degree: d });
                    }
                    change[(i, j)] = c;
                }
            }
            let det = change.det();
            if det.is_zero() {
                return Err(LatticeError::RankMismatch {
                    degree: d,
                    sub: rs,
                    sup: rp,
                });
            }
            index *= det.numer().abs();
        }
        Ok(index)
    }
}

// ---------------------------------------------------------------------------
// Graded cokernels
// ---------------------------------------------------------------------------

/// Per-degree free rank and invariant factors (> 1) of a finitely generated
/// graded abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupReport {
    pub parts: Vec<DegreeGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGroup {
    pub degree: u32,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroupReport {
    pub fn at(&self, degree: u32) -> Option<&DegreeGroup> {
        self.parts.iter().find(|p| p.degree == degree)
    }

    pub fn total_free_rank(&self) -> usize {
        self.parts.iter().map(|p| p.free_rank).sum()
    }

    pub fn total_torsion_order(&self) -> Int {
        let mut acc = Int::one();
        for p in &self.parts {
            for t in &p.torsion {
                acc *= t;
            }
        }
        acc
    }
}

/// Cokernel of a family of integer maps raising degree by 2: the degree-`d`
/// part of the result is `Z^dims[d] / colspan(maps[d-2])`. `dims` fixes the
/// ambient rank at every degree; a map keyed by source degree `d` must have
/// `cols = dims[d]` and `rows = dims[d+2]`.
pub fn cokernel(
    dims: &BTreeMap<u32, usize>,
    maps: &BTreeMap<u32, IntMatrix>,
) -> Result<AbelianGroupReport, LatticeError> {
    for (&d, m) in maps {
        let src = dims.get(&d).copied().unwrap_or(0);
        let dst = dims.get(&(d + 2)).copied().unwrap_or(0);
        if m.cols != src || m.rows != dst {
            return Err(LatticeError::ShapeMismatch { degree: d });
        }
    }
    let mut parts = Vec::new();
    for (&d, &dim) in dims {
        let incoming = d.checked_sub(2).and_then(|s| maps.get(&s));
        let (free_rank, torsion) = match incoming {
            None => (dim, Vec::new()),
            Some(m) => {
                let s = snf(m);
                (dim - s.rank, s.torsion())
            }
        };
        parts.push(DegreeGroup {
            degree: d,
            free_rank,
            torsion,
        });
    }
    Ok(AbelianGroupReport { parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(hnf(&id), id);
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![0, 2]]);
        assert_eq!(hnf(&a), IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
        let z = IntMatrix::from_rows(&[vec![0]]);
        assert_eq!(hnf(&z), z);
    }

    #[test]
    fn hnf_idempotent() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, 8, 9], vec![0, 5, 5]]);
        let h = hnf(&a);
        assert_eq!(hnf(&h), h);
    }

    #[test]
    fn snf_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&a);
        assert_eq!(s.factors, vec![int(1), int(6)]);
        assert!(s.verify(&a));

        let z = IntMatrix::zero(2, 3);
        let s = snf(&z);
        assert!(s.factors.is_empty());
        assert_eq!(s.rank, 0);
        assert!(s.verify(&z));

        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let s = snf(&a);
        assert_eq!(s.factors, vec![int(2), int(2)]);
        assert!(s.verify(&a));
    }

    #[test]
    fn det_bareiss() {
        let a = IntMatrix::from_rows(&[vec![2, 3], vec![1, 4]]);
        assert_eq!(a.det(), int(5));
        let b = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(b.det(), int(0));
    }

    fn unit_lattice(dim: usize, scale: i64) -> GradedLattice {
        let mut cols = Vec::new();
        for j in 0..dim {
            let mut c = vec![rat(0); dim];
            c[j] = rat(scale);
            cols.push(c);
        }
        GradedLattice::new(BTreeMap::from([(0u32, cols)]))
    }

    #[test]
    fn index_examples() {
        let l = unit_lattice(2, 1);
        assert_eq!(GradedLattice::index_of(&l, &l).unwrap(), int(1));
        let doubled = unit_lattice(2, 2);
        assert_eq!(GradedLattice::index_of(&doubled, &l).unwrap(), int(4));
        assert_eq!(
            GradedLattice::index_of(&l, &doubled).unwrap_err(),
            LatticeError::NotContained { degree: 0 }
        );
    }

    #[test]
    fn coords_examples() {
        let l = unit_lattice(3, 1);
        assert_eq!(
            l.coords_in(&[rat(0), rat(1), rat(0)], 0).unwrap(),
            vec![int(0), int(1), int(0)]
        );
        assert_eq!(
            l.coords_in(&[rat(0), rat(2), rat(0)], 0).unwrap(),
            vec![int(0), int(2), int(0)]
        );
        assert_eq!(
            l.coords_in(&[ratio_half(), rat(0), rat(0)], 0).unwrap_err(),
            LatticeError::NotAMember
        );
        assert!(matches!(
            l.coords_in(&[rat(1)], 0).unwrap_err(),
            LatticeError::DimensionMismatch { .. }
        ));
    }

    fn ratio_half() -> Rat {
        crate::arith::ratio(1, 2)
    }

    #[test]
    fn saturation_examples() {
        let ambient = unit_lattice(2, 1);
        // 2Z^2 saturates to Z^2
        let doubled = unit_lattice(2, 2);
        let sat = GradedLattice::saturate_in(&doubled, &ambient).unwrap();
        assert_eq!(GradedLattice::index_of(&sat, &ambient).unwrap(), int(1));
        // the span of (2, 4) inside Z^2 saturates to the span of (1, 2)
        let line = GradedLattice::new(BTreeMap::from([(0u32, vec![vec![rat(2), rat(4)]])]));
        let sat = GradedLattice::saturate_in(&line, &ambient).unwrap();
        assert_eq!(sat.rank_at(0), 1);
        assert_eq!(
            sat.coords_in(&[rat(1), rat(2)], 0).map(|v| v.len()),
            Ok(1)
        );
        assert_eq!(GradedLattice::index_of(&line, &sat).unwrap(), int(2));
        // saturation is idempotent
        let sat2 = GradedLattice::saturate_in(&sat, &ambient).unwrap();
        assert_eq!(GradedLattice::index_of(&sat, &sat2).unwrap(), int(1));
    }

    #[test]
    fn cokernel_examples() {
        // zero map on Z^1: free rank 1, no torsion at the target degree
        let dims = BTreeMap::from([(0u32, 1usize), (2u32, 1usize)]);
        let maps = BTreeMap::from([(0u32, IntMatrix::from_rows(&[vec![0]]))]);
        let rep = cokernel(&dims, &maps).unwrap();
        assert_eq!(rep.at(2).unwrap().free_rank, 1);
        assert!(rep.at(2).unwrap().torsion.is_empty());
        // multiplication by 2: Z/2
        let maps = BTreeMap::from([(0u32, IntMatrix::from_rows(&[vec![2]]))]);
        let rep = cokernel(&dims, &maps).unwrap();
        assert_eq!(rep.at(2).unwrap().free_rank, 0);
        assert_eq!(rep.at(2).unwrap().torsion, vec![int(2)]);
        // shape mismatch
        let maps = BTreeMap::from([(0u32, IntMatrix::zero(2, 1))]);
        assert_eq!(
            cokernel(&dims, &maps).unwrap_err(),
            LatticeError::ShapeMismatch { degree: 0 }
        );
    }
}
