//! Exact rational and integer matrix algebra.
//!
//! Everything that decides anything is exact: rank by fraction-free (Bareiss)
//! elimination over big integers, positive-semidefiniteness by rational
//! `L D L^t` with diagonal pivoting, and the rank-`r` reduction `M = R M' R^t`
//! over big rationals. The only floating-point routine is
//! [`min_eigenvalue_estimate`], a cyclic Jacobi eigensolver used for the
//! numeric acceptance filter and for validation cross-checks.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&k| BigInt::from(k)).collect();
        Self::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch("matmul dimension mismatch".into()));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * rhs.get(k, j);
                    *out.get_mut(i, j) += t;
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Principal submatrix on an ordered index selection.
    pub fn principal_submatrix(&self, sel: &[usize]) -> Self {
        let n = sel.len();
        let mut out = Self::zero(n, n);
        for (a, &i) in sel.iter().enumerate() {
            for (b, &j) in sel.iter().enumerate() {
                *out.get_mut(a, b) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entries as `i64`, or an error if anything overflows.
    pub fn to_i64_vec(&self) -> Result<Vec<i64>> {
        self.data
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::invalid("matrix entry exceeds i64 range"))
            })
            .collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{}", self.rows, self.cols)
    }
}

/// Aligned grid, one row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(i, j).to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dense row-major matrix of big rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch("rational matrix shape".into()));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `Some` if every entry is an integer.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|q| q.denom().is_one()) {
            Some(IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|q| q.numer().clone()).collect(),
            })
        } else {
            None
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{}", self.rows, self.cols)
    }
}

/// A strictly increasing list of indices inside an ambient range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSubset {
    ambient: usize,
    indices: Vec<usize>,
}

impl IndexSubset {
    pub fn new(ambient: usize, indices: Vec<usize>) -> Result<Self> {
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("subset indices must be strictly increasing"));
        }
        if indices.iter().any(|&i| i >= ambient) {
            return Err(Error::invalid("subset index out of range"));
        }
        Ok(IndexSubset { ambient, indices })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    bareiss(m).0
}

/// Determinant of a square matrix, fraction-free.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::invalid("determinant of a non-square matrix"));
    }
    let (rank, det) = bareiss(m);
    if rank < m.rows {
        return Ok(BigInt::zero());
    }
    Ok(det)
}

/// Fraction-free row reduction; returns (rank, determinant-so-far).
/// The determinant value is meaningful only for square full-rank input.
fn bareiss(m: &IntMatrix) -> (usize, BigInt) {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<BigInt> = m.data.clone();
    let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * cols + j].clone();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    let mut sign = 1i32;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
            sign = -sign;
        }
        let pivot = at(&a, rank, c);
        for i in (rank + 1)..rows {
            let lead = at(&a, i, c);
            for j in 0..cols {
                let v = (&at(&a, i, j) * &pivot - &lead * &at(&a, rank, j)) / &prev;
                a[i * cols + j] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (rank, det)
}

/// Incremental row-space tracker over the rationals, for independence tests.
struct RowBasis {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    fn new(cols: usize) -> Self {
        RowBasis { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Reduce `row` by the basis; if independent, absorb it and return true.
    fn try_add(&mut self, row: &[BigInt]) -> bool {
        let mut v: Vec<BigRational> = row
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for (b, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.cols {
                    let t = &f * &b[j];
                    v[j] -= t;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let lead = v[p].clone();
                for x in v.iter_mut() {
                    *x /= &lead;
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// The permutation sorting the diagonal increasingly (stable in the original
/// index) and, reading positions in that order, the lexicographically least
/// `r`-subset of rows/columns whose principal submatrix is nonsingular.
///
/// The returned subset indexes positions of the *permuted* order; map through
/// the permutation to recover original indices. `selection_in_order` does this.
pub fn select_nonsingular_minor(m: &IntMatrix, r: usize) -> Result<(Vec<usize>, IndexSubset)> {
    if !m.is_symmetric() {
        return Err(Error::invalid("minor selection requires a symmetric matrix"));
    }
    let n = m.rows;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| m.get(a, a).cmp(m.get(b, b)).then(a.cmp(&b)));

    // greedy lex-least independent subset in permuted order
    let mut basis = RowBasis::new(n);
    let mut positions = Vec::with_capacity(r);
    for (pos, &orig) in perm.iter().enumerate() {
        if positions.len() == r {
            break;
        }
        if basis.try_add(m.row(orig)) {
            positions.push(pos);
        }
    }
    if positions.len() == r {
        let sel: Vec<usize> = positions.iter().map(|&p| perm[p]).collect();
        let det = determinant(&m.principal_submatrix(&sel))?;
        if !det.is_zero() {
            return Ok((perm.clone(), IndexSubset::new(n, positions)?));
        }
    }
    // Row independence does not force a nonsingular principal minor for
    // general symmetric matrices (it does for PSD ones), so fall back to a
    // lexicographic scan over r-subsets of permuted positions.
    let mut chosen: Vec<usize> = Vec::new();
    if lex_subset_search(m, &perm, r, 0, &mut chosen) {
        return Ok((perm.clone(), IndexSubset::new(n, chosen)?));
    }
    Err(Error::InvariantViolation(
        "no nonsingular principal minor of the requested size".into(),
    ))
}

fn lex_subset_search(
    m: &IntMatrix,
    perm: &[usize],
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == r {
        let sel: Vec<usize> = chosen.iter().map(|&p| perm[p]).collect();
        return !determinant(&m.principal_submatrix(&sel))
            .unwrap_or_else(|_| BigInt::zero())
            .is_zero();
    }
    for pos in start..perm.len() {
        chosen.push(pos);
        // prune: the chosen rows must stay independent
        let mut basis = RowBasis::new(m.cols);
        if chosen.iter().all(|&p| basis.try_add(m.row(perm[p]))) {
            if lex_subset_search(m, perm, r, pos + 1, chosen) {
                return true;
            }
        }
        chosen.pop();
    }
    false
}

/// Original-index selection list for a `(perm, subset)` pair, in the permuted
/// (diagonal-increasing) order. This ordering is what reproduces a reduced
/// matrix with increasing diagonal.
pub fn selection_in_order(perm: &[usize], subset: &IndexSubset) -> Vec<usize> {
    subset.indices().iter().map(|&p| perm[p]).collect()
}

/// The unique rational `R` with `M = R M' R^t`, where `M'` is the principal
/// submatrix of `M` on the ordered selection `sel` (which must be nonsingular
/// and of size `rank(M)`). Rows of `R` follow `M`'s original row order; the
/// rows indexed by `sel` form an identity block.
pub fn compute_reduction(m: &IntMatrix, sel: &[usize]) -> Result<RatMatrix> {
    if !m.is_symmetric() {
        return Err(Error::invalid("reduction requires a symmetric matrix"));
    }
    let n = m.rows;
    let r = sel.len();
    let mp = m.principal_submatrix(sel);
    let mp_inv = invert_rational(&mp.to_rat())
        .ok_or_else(|| Error::invalid("selected principal minor is singular"))?;
    // R = M[:, sel] * (M')^-1
    let mut reduction = RatMatrix::zero(n, r);
    for i in 0..n {
        for c in 0..r {
            let mut acc = BigRational::zero();
            for (k, &s) in sel.iter().enumerate() {
                acc += BigRational::from_integer(m.get(i, s).clone()) * mp_inv.get(k, c);
            }
            *reduction.get_mut(i, c) = acc;
        }
    }
    // exact round trip: R M' R^t = M; fails when rank(M) > |sel|
    for i in 0..n {
        for j in 0..=i {
            let mut acc = BigRational::zero();
            for a in 0..r {
                for b in 0..r {
                    acc += reduction.get(i, a)
                        * BigRational::from_integer(mp.get(a, b).clone())
                        * reduction.get(j, b);
                }
            }
            if acc != BigRational::from_integer(m.get(i, j).clone()) {
                return Err(Error::invalid(
                    "selection does not span the matrix: R M' R^t != M",
                ));
            }
        }
    }
    Ok(reduction)
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
pub fn invert_rational(m: &RatMatrix) -> Option<RatMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for c in 0..n {
        let piv = (c..n).find(|&i| !a.get(i, c).is_zero())?;
        if piv != c {
            for j in 0..n {
                let tmp = a.get(piv, j).clone();
                *a.get_mut(piv, j) = a.get(c, j).clone();
                *a.get_mut(c, j) = tmp;
                let tmp = inv.get(piv, j).clone();
                *inv.get_mut(piv, j) = inv.get(c, j).clone();
                *inv.get_mut(c, j) = tmp;
            }
        }
        let d = a.get(c, c).clone();
        for j in 0..n {
            *a.get_mut(c, j) /= &d;
            *inv.get_mut(c, j) /= &d;
        }
        for i in 0..n {
            if i != c && !a.get(i, c).is_zero() {
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let t = &f * a.get(c, j);
                    *a.get_mut(i, j) -= t;
                    let t = &f * inv.get(c, j);
                    *inv.get_mut(i, j) -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Exact positive-semidefiniteness by rational symmetric elimination with
/// greatest-diagonal pivoting: every pivot must be non-negative, and a zero
/// maximal diagonal forces the whole remaining block to vanish.
pub fn is_psd_exact(m: &RatMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::invalid("PSD test requires a symmetric matrix"));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let &p = active
            .iter()
            .max_by(|&&x, &&y| a.get(x, x).cmp(a.get(y, y)))
            .unwrap();
        let d = a.get(p, p).clone();
        if d.is_negative() {
            return Ok(false);
        }
        if d.is_zero() {
            return Ok(active
                .iter()
                .all(|&i| active.iter().all(|&j| a.get(i, j).is_zero())));
        }
        active.retain(|&i| i != p);
        for &i in &active {
            for &j in &active {
                let t = a.get(i, p) * a.get(p, j) / &d;
                *a.get_mut(i, j) -= t;
            }
        }
    }
    Ok(true)
}

/// Double-precision estimate of the least eigenvalue of a symmetric integer
/// matrix, via cyclic Jacobi rotations.
pub fn min_eigenvalue_estimate(m: &IntMatrix) -> Result<f64> {
    if !m.is_symmetric() {
        return Err(Error::invalid("eigenvalue estimate requires a symmetric matrix"));
    }
    let n = m.rows;
    let mut a: Vec<f64> = m
        .data
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::NAN))
        .collect();
    Ok(min_eig_symmetric(&mut a, n))
}

/// Cyclic Jacobi on a dense symmetric matrix (row-major, overwritten);
/// returns the smallest eigenvalue.
pub(crate) fn min_eig_symmetric(a: &mut [f64], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return a[0];
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let tol = 1e-14 * scale;
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].abs();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).fold(f64::INFINITY, f64::min)
}

/// Basis of the right nullspace of a matrix over Q(zeta_n), by Gaussian
/// elimination in the field. `rows` must be rectangular with one conductor.
pub fn field_kernel(rows: &[Vec<CycloNumber>]) -> Result<Vec<Vec<CycloNumber>>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch("ragged field matrix".into()));
    }
    let conductor = rows[0]
        .first()
        .map(|x| x.conductor())
        .ok_or_else(|| Error::invalid("empty field matrix row"))?;
    if rows.iter().flatten().any(|x| x.conductor() != conductor) {
        return Err(Error::ConductorMismatch { left: conductor, right: 0 });
    }
    let mut a: Vec<Vec<CycloNumber>> = rows.to_vec();
    let nrows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(piv) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][c].inv()?;
        for j in 0..cols {
            a[rank][j] = a[rank][j].mul(&inv)?;
        }
        for i in 0..nrows {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&a[rank][j])?;
                    a[i][j] = a[i][j].sub(&t)?;
                }
            }
        }
        pivot_of_col[c] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![CycloNumber::zero(conductor); cols];
        v[free] = CycloNumber::one(conductor);
        for c in 0..cols {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = a[pr][free].neg();
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_rational(&IntMatrix::identity(5)), 5);
        assert_eq!(rank_rational(&IntMatrix::zero(3, 3)), 0);
        assert_eq!(rank_rational(&im(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank_rational(&im(&[vec![2, 1], vec![1, 3]])), 2);
        let wide = im(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank_rational(&wide), 1);
        assert_eq!(rank_rational(&wide.transpose()), 1);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(4)).unwrap(), BigInt::from(1));
        assert_eq!(
            determinant(&im(&[vec![2, 1], vec![1, 3]])).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            determinant(&im(&[vec![1, 1], vec![1, 1]])).unwrap(),
            BigInt::from(0)
        );
        // row swaps keep the sign right
        assert_eq!(
            determinant(&im(&[vec![0, 1], vec![1, 0]])).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn minor_selection_simple() {
        // nonsingular with increasing diagonal: identity permutation, first r
        let m = im(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        let (perm, subset) = select_nonsingular_minor(&m, 3).unwrap();
        assert_eq!(perm, vec![0, 1, 2]);
        assert_eq!(subset.indices(), &[0, 1, 2]);

        let m = im(&[vec![1, 1], vec![1, 1]]);
        let (perm, subset) = select_nonsingular_minor(&m, 1).unwrap();
        assert_eq!(perm, vec![0, 1]);
        assert_eq!(subset.indices(), &[0]);
        assert_eq!(selection_in_order(&perm, &subset), vec![0]);
    }

    #[test]
    fn reduction_identity_and_duplicate_row() {
        let m = im(&[vec![2, 1], vec![1, 3]]);
        let r = compute_reduction(&m, &[0, 1]).unwrap();
        assert_eq!(r, RatMatrix::identity(2));

        let m = im(&[vec![1, 1], vec![1, 1]]);
        let r = compute_reduction(&m, &[0]).unwrap();
        assert_eq!(r.get(0, 0), &BigRational::from_integer(BigInt::from(1)));
        assert_eq!(r.get(1, 0), &BigRational::from_integer(BigInt::from(1)));

        // undersized selection cannot span: error
        let m = im(&[vec![1, 0], vec![0, 1]]);
        assert!(compute_reduction(&m, &[0]).is_err());
        // singular minor: error
        let m = im(&[vec![0, 1], vec![1, 0]]);
        assert!(compute_reduction(&m, &[0]).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd_exact(&IntMatrix::identity(3).to_rat()).unwrap());
        assert!(!is_psd_exact(&im(&[vec![1, 2], vec![2, 1]]).to_rat()).unwrap());
        assert!(is_psd_exact(&im(&[vec![0, 0], vec![0, 0]]).to_rat()).unwrap());
        // zero diagonal with nonzero off-diagonal is not PSD
        assert!(!is_psd_exact(&im(&[vec![0, 1], vec![1, 0]]).to_rat()).unwrap());
        assert!(is_psd_exact(&im(&[vec![1, 1], vec![1, 1]]).to_rat()).unwrap());
        let nonsym = RatMatrix::new(
            2,
            2,
            vec![
                BigRational::from_integer(BigInt::from(1)),
                BigRational::from_integer(BigInt::from(2)),
                BigRational::from_integer(BigInt::from(3)),
                BigRational::from_integer(BigInt::from(4)),
            ],
        )
        .unwrap();
        assert!(is_psd_exact(&nonsym).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let e = min_eigenvalue_estimate(&IntMatrix::identity(4)).unwrap();
        assert!((e - 1.0).abs() < 1e-9);
        let e = min_eigenvalue_estimate(&im(&[vec![1, 2], vec![2, 1]])).unwrap();
        assert!((e + 1.0).abs() < 1e-9);
    }

    #[test]
    fn psd_agreement_with_numeric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(1729);
        for _ in 0..400 {
            let n = rng.gen_range(1..=6);
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.gen_range(-5..=5);
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let m = im(&rows);
            let exact = is_psd_exact(&m.to_rat()).unwrap();
            let est = min_eigenvalue_estimate(&m).unwrap();
            if est.abs() > 1e-6 {
                assert_eq!(exact, est >= -1e-6, "disagreement on {rows:?} (est {est})");
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let one = CycloNumber::one(5);
        let zero = CycloNumber::zero(5);
        let ident = vec![
            vec![one.clone(), zero.clone()],
            vec![zero.clone(), one.clone()],
        ];
        assert!(field_kernel(&ident).unwrap().is_empty());
        let zeros = vec![
            vec![zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone()],
        ];
        assert_eq!(field_kernel(&zeros).unwrap().len(), 2);

        // Fibonacci fusion matrix minus golden-ratio times identity has a
        // one-dimensional kernel spanned by (1, phi)
        let phi = CycloNumber::root_of_unity(5, 1)
            .unwrap()
            .add(&CycloNumber::root_of_unity(5, 4).unwrap())
            .unwrap()
            .add(&one)
            .unwrap();
        let m = vec![
            vec![phi.neg(), one.clone()],
            vec![one.clone(), one.sub(&phi).unwrap()],
        ];
        let kernel = field_kernel(&m).unwrap();
        assert_eq!(kernel.len(), 1);
        let v = &kernel[0];
        // normalize first coordinate to 1 and compare
        let f = v[0].inv().unwrap();
        assert_eq!(v[0].mul(&f).unwrap(), one);
        assert_eq!(v[1].mul(&f).unwrap(), phi);
    }

    #[test]
    fn reduction_roundtrip_random_psd() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=3);
            let mut a0 = vec![vec![0i64; k]; n];
            for row in a0.iter_mut() {
                for x in row.iter_mut() {
                    *x = rng.gen_range(0..=2);
                }
            }
            let mut g = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    g[i][j] = (0..k).map(|c| a0[i][c] * a0[j][c]).sum();
                }
            }
            let m = im(&g);
            let r = rank_rational(&m);
            if r == 0 {
                continue;
            }
            let (perm, subset) = select_nonsingular_minor(&m, r).unwrap();
            let sel = selection_in_order(&perm, &subset);
            let red = compute_reduction(&m, &sel).unwrap();
            // identity block on the selected rows
            for (c, &s) in sel.iter().enumerate() {
                for cc in 0..r {
                    let expect = if cc == c { 1 } else { 0 };
                    assert_eq!(
                        red.get(s, cc),
                        &BigRational::from_integer(BigInt::from(expect))
                    );
                }
            }
        }
    }
}
