//! Enumeration of all algebraic decompositions of a Gram-matrix problem.
//!
//! A decomposition of a symmetric non-negative integer matrix `M` is a
//! non-negative integer matrix `A` with `M = A A^t`; it is *algebraic* for
//! `(M, {v_i}, D)` when every column `w` satisfies, for each dimension vector
//! `v_i`, that `v_i . w` is an Ostrik d-number dividing `D` as an algebraic
//! integer.
//!
//! The search first replaces `M` by a full-rank principal submatrix `M'` with
//! `M = R M' R^t` (rows and columns are permuted so the diagonal increases,
//! then the lexicographically least nonsingular principal minor of size
//! `rank M` is selected). Decompositions of `M` are exactly the integral,
//! entrywise non-negative `R A'` over decompositions `A'` of `M'`, and the
//! algebraic conditions transport through `v_i . (R w) = (v_i R) . w`, so each
//! candidate column is filtered by lifting it immediately.
//!
//! Columns are generated in decreasing lexicographic order, and a candidate
//! `w` extending a partial decomposition `B` (last column `u`) must satisfy:
//!
//! 1. `w >= 0` entrywise;
//! 2. `w[p] > 0`, where the top-left `p x p` block of `M' - B B^t` is the
//!    largest identically-zero leading block;
//! 3. `w <= u` lexicographically;
//! 4. `w_i * w_j <= (M' - B B^t)_ij` (enumeration bounds);
//! 5. the algebraic conditions on every `(v_i R) . w`, plus integrality and
//!    non-negativity of `R w`;
//! 6. `M' - B B^t - w w^t` entrywise non-negative (by the bounds in 4) and
//!    positive semidefinite, checked numerically against an eigenvalue
//!    tolerance or exactly, per configuration.
//!
//! Every partial decomposition in this canonical order arises exactly once,
//! so solutions are emitted duplicate-free; a solution is recognized when the
//! residual vanishes. Results are lifted, verified exactly against the
//! original problem, and canonically sorted.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};
use crate::exact_linalg::{
    compute_reduction, is_psd_exact, min_eig_symmetric, rank_rational,
    select_nonsingular_minor, selection_in_order, IntMatrix, RatMatrix,
};

/// How condition (6)'s positive-semidefiniteness is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsdMode {
    /// Jacobi eigenvalue estimates, accepted at `eig_tolerance`.
    Numeric,
    /// Exact integer/rational elimination.
    Exact,
}

/// Search configuration.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub psd_mode: PsdMode,
    /// Acceptance threshold for the least eigenvalue in numeric mode; must be <= 0.
    pub eig_tolerance: f64,
    pub max_solutions: Option<usize>,
    pub max_columns: Option<usize>,
    pub time_limit: Option<Duration>,
    pub thread_count: usize,
    /// Reject columns whose dot with some dimension vector vanishes.
    pub forbid_zero_dots: bool,
    /// Search the reduced problem (default) or the full matrix directly.
    pub use_reduction: bool,
    /// Explicit ordered row selection overriding the minor heuristic.
    pub minor_override: Option<Vec<usize>>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            psd_mode: PsdMode::Numeric,
            eig_tolerance: -0.001,
            max_solutions: None,
            max_columns: None,
            time_limit: None,
            thread_count: 1,
            forbid_zero_dots: false,
            use_reduction: true,
            minor_override: None,
        }
    }
}

impl SolverConfig {
    fn check(&self) -> Result<()> {
        if self.eig_tolerance > 0.0 {
            return Err(Error::invalid("eig_tolerance must be <= 0"));
        }
        if self.thread_count == 0 {
            return Err(Error::invalid("thread_count must be >= 1"));
        }
        Ok(())
    }
}

/// A decomposition problem `(M, {v_i}, D)` over one cyclotomic field.
#[derive(Clone, Debug)]
pub struct DecompositionProblem {
    gram: IntMatrix,
    vs: Vec<Vec<CycloNumber>>,
    global_dim: CycloNumber,
    conductor: u32,
    /// Per-object simple counts when the problem came from fusion data.
    layout: Option<Vec<usize>>,
}

impl DecompositionProblem {
    pub fn new(
        gram: IntMatrix,
        vs: Vec<Vec<CycloNumber>>,
        global_dim: CycloNumber,
        conductor: u32,
        layout: Option<Vec<usize>>,
    ) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::invalid("Gram matrix must be symmetric"));
        }
        if !gram.is_nonnegative() {
            return Err(Error::invalid("Gram matrix must be entrywise non-negative"));
        }
        let n = gram.rows();
        for v in &vs {
            if v.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "dimension vector of length {} for a {n}x{n} matrix",
                    v.len()
                )));
            }
            for x in v {
                if x.conductor() != conductor {
                    return Err(Error::ConductorMismatch {
                        left: conductor,
                        right: x.conductor(),
                    });
                }
            }
        }
        if global_dim.conductor() != conductor {
            return Err(Error::ConductorMismatch {
                left: conductor,
                right: global_dim.conductor(),
            });
        }
        if let Some(layout) = &layout {
            if layout.iter().sum::<usize>() != n {
                return Err(Error::ShapeMismatch("layout does not sum to matrix size".into()));
            }
        }
        Ok(DecompositionProblem { gram, vs, global_dim, conductor, layout })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn vs(&self) -> &[Vec<CycloNumber>] {
        &self.vs
    }

    pub fn global_dim(&self) -> &CycloNumber {
        &self.global_dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn layout(&self) -> Option<&[usize]> {
        self.layout.as_deref()
    }
}

/// A problem reduced to a nonsingular principal minor, with the lift `R`.
#[derive(Clone, Debug)]
pub struct ReducedProblem {
    pub m_prime: IntMatrix,
    pub reduction: RatMatrix,
    pub vs_reduced: Vec<Vec<CycloNumber>>,
    /// Ordered original indices of the selected rows/columns.
    pub selection: Vec<usize>,
    /// The diagonal-increasing permutation the selection was read from.
    pub permutation: Vec<usize>,
}

impl ReducedProblem {
    pub fn rank(&self) -> usize {
        self.selection.len()
    }
}

/// Reduce a problem per the diagonal-increasing / lexicographically-least
/// heuristic, or an explicit ordered selection when one is supplied.
pub fn reduce_problem(
    problem: &DecompositionProblem,
    minor_override: Option<&[usize]>,
) -> Result<ReducedProblem> {
    let m = &problem.gram;
    let n = m.rows();
    let r = rank_rational(m);
    let (selection, permutation) = match minor_override {
        Some(sel) => {
            let mut sorted = sel.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != sel.len() || sel.iter().any(|&i| i >= n) {
                return Err(Error::invalid("minor override must list distinct row indices"));
            }
            if sel.len() != r {
                return Err(Error::invalid(format!(
                    "minor override has {} indices but the matrix has rank {r}",
                    sel.len()
                )));
            }
            (sel.to_vec(), (0..n).collect())
        }
        None => {
            if r == 0 {
                ((Vec::new()), (0..n).collect())
            } else {
                let (perm, subset) = select_nonsingular_minor(m, r)?;
                (selection_in_order(&perm, &subset), perm)
            }
        }
    };
    let m_prime = m.principal_submatrix(&selection);
    let reduction = if r == 0 {
        RatMatrix::zero(n, 0)
    } else {
        compute_reduction(m, &selection)?
    };
    let mut vs_reduced = Vec::with_capacity(problem.vs.len());
    for v in &problem.vs {
        let mut row = Vec::with_capacity(selection.len());
        for c in 0..selection.len() {
            let mut acc = CycloNumber::zero(problem.conductor);
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() && !reduction.get(i, c).is_zero() {
                    acc = acc.add(&x.scale(reduction.get(i, c)))?;
                }
            }
            row.push(acc);
        }
        vs_reduced.push(row);
    }
    Ok(ReducedProblem { m_prime, reduction, vs_reduced, selection, permutation })
}

/// The identity "reduction" used when searching the full matrix directly.
fn identity_reduction(problem: &DecompositionProblem) -> ReducedProblem {
    let n = problem.gram.rows();
    ReducedProblem {
        m_prime: problem.gram.clone(),
        reduction: RatMatrix::identity(n),
        vs_reduced: problem.vs.clone(),
        selection: (0..n).collect(),
        permutation: (0..n).collect(),
    }
}

/// A column prefix of a candidate decomposition, with its cached residual
/// `M' - B B^t` and the size of the leading identically-zero block.
#[derive(Clone, Debug)]
pub struct PartialDecomposition {
    r: usize,
    columns: Vec<Vec<i64>>,
    residual: Vec<i64>,
    zero_prefix: usize,
}

impl PartialDecomposition {
    /// The empty prefix for a reduced matrix.
    pub fn root(m_prime: &IntMatrix) -> Result<Self> {
        let r = m_prime.rows();
        if !m_prime.is_symmetric() {
            return Err(Error::invalid("reduced matrix must be symmetric"));
        }
        let residual = m_prime.to_i64_vec().map_err(|_| {
            Error::invalid("matrix entries exceed the search core's i64 range")
        })?;
        if residual.iter().any(|&x| x > (1 << 31)) {
            return Err(Error::invalid("matrix entries exceed 2^31; search bounds would overflow"));
        }
        Ok(PartialDecomposition {
            r,
            columns: Vec::new(),
            zero_prefix: zero_prefix(&residual, r),
            residual,
        })
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn residual(&self) -> &[i64] {
        &self.residual
    }

    pub fn zero_prefix(&self) -> usize {
        self.zero_prefix
    }

    pub fn is_complete(&self) -> bool {
        self.zero_prefix == self.r
    }

    pub fn last_column(&self) -> Option<&[i64]> {
        self.columns.last().map(|c| c.as_slice())
    }

    /// Append a column and update the cached residual.
    pub fn extend(&self, w: &[i64]) -> PartialDecomposition {
        let r = self.r;
        let mut residual = self.residual.clone();
        for i in 0..r {
            for j in 0..r {
                residual[i * r + j] -= w[i] * w[j];
            }
        }
        let mut columns = self.columns.clone();
        columns.push(w.to_vec());
        PartialDecomposition {
            r,
            columns,
            zero_prefix: zero_prefix(&residual, r),
            residual,
        }
    }
}

/// Largest `p` such that the top-left `p x p` block is identically zero.
fn zero_prefix(residual: &[i64], r: usize) -> usize {
    let mut p = 0;
    'outer: while p < r {
        for i in 0..=p {
            if residual[i * r + p] != 0 || residual[p * r + i] != 0 {
                break 'outer;
            }
        }
        p += 1;
    }
    p
}

fn isqrt_i64(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut s = (x as f64).sqrt() as i64;
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    while s * s > x {
        s -= 1;
    }
    s
}

/// Scaled-integer view of the lift `R`, for fast per-column integrality and
/// sign checks: `R = num / den` entrywise.
struct LiftFilter {
    n: usize,
    r: usize,
    num: Vec<i128>,
    den: i128,
    identity: bool,
}

impl LiftFilter {
    fn new(reduction: &RatMatrix) -> Result<Self> {
        let n = reduction.rows();
        let r = reduction.cols();
        let mut den = BigInt::one();
        for i in 0..n {
            for c in 0..r {
                den = num::integer::lcm(den, reduction.get(i, c).denom().clone());
            }
        }
        let mut num = vec![0i128; n * r];
        let mut identity = n == r;
        for i in 0..n {
            for c in 0..r {
                let scaled = reduction.get(i, c) * BigRational::from_integer(den.clone());
                debug_assert!(scaled.denom().is_one());
                let v = scaled.numer().to_i128().ok_or_else(|| {
                    Error::invalid("reduction matrix entries too large for the search core")
                })?;
                if v.unsigned_abs() > (1 << 80) {
                    return Err(Error::invalid("reduction matrix entries too large"));
                }
                num[i * r + c] = v;
                if identity && v != i128::from(den.to_i128().unwrap_or(0)) * i128::from(i == c) {
                    identity = false;
                }
            }
        }
        let den = den
            .to_i128()
            .ok_or_else(|| Error::invalid("reduction denominator too large"))?;
        Ok(LiftFilter { n, r, num, den, identity })
    }

    /// `R w` when integral and non-negative; `None` otherwise.
    fn lift(&self, w: &[i64]) -> Option<Vec<i64>> {
        if self.identity {
            return Some(w.to_vec());
        }
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc: i128 = 0;
            for c in 0..self.r {
                acc += self.num[i * self.r + c] * i128::from(w[c]);
            }
            if acc < 0 || acc % self.den != 0 {
                return None;
            }
            out.push((acc / self.den) as i64);
        }
        Some(out)
    }
}

/// Algebraic column filter with a cache keyed on the exact dot value.
struct AlgebraicFilter<'a> {
    vs_reduced: &'a [Vec<CycloNumber>],
    global_dim: &'a CycloNumber,
    conductor: u32,
    forbid_zero_dots: bool,
    cache: Mutex<HashMap<CycloNumber, bool>>,
}

impl<'a> AlgebraicFilter<'a> {
    fn new(
        vs_reduced: &'a [Vec<CycloNumber>],
        global_dim: &'a CycloNumber,
        conductor: u32,
        forbid_zero_dots: bool,
    ) -> Self {
        AlgebraicFilter {
            vs_reduced,
            global_dim,
            conductor,
            forbid_zero_dots,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn column_ok(&self, w: &[i64]) -> Result<bool> {
        for v in self.vs_reduced {
            let mut dot = CycloNumber::zero(self.conductor);
            for (c, x) in v.iter().enumerate() {
                dot.add_assign_scaled(x, w[c]);
            }
            if dot.is_zero() {
                if self.forbid_zero_dots {
                    return Ok(false);
                }
                continue;
            }
            if let Some(&ok) = self.cache.lock().unwrap().get(&dot) {
                if !ok {
                    return Ok(false);
                }
                continue;
            }
            let ok = dot.is_d_number()?
                && dot.divides_as_algebraic_integer(self.global_dim)?;
            self.cache.lock().unwrap().insert(dot, ok);
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Positive-semidefiniteness check for residuals.
enum PsdCheck {
    Numeric { tol: f64 },
    ExactI128,
    ExactRational,
}

impl PsdCheck {
    fn new(mode: PsdMode, tol: f64, m_prime: &IntMatrix) -> Self {
        match mode {
            PsdMode::Numeric => PsdCheck::Numeric { tol },
            PsdMode::Exact => {
                // Hadamard bound on the minors Bareiss produces; beyond i128,
                // fall back to rational elimination
                let r = m_prime.rows().max(1) as f64;
                let maxabs = (0..m_prime.rows())
                    .flat_map(|i| (0..m_prime.cols()).map(move |j| (i, j)))
                    .map(|(i, j)| m_prime.get(i, j).to_f64().unwrap_or(f64::INFINITY).abs())
                    .fold(1.0f64, f64::max);
                let bound = r.powf(r / 2.0) * maxabs.powf(r);
                if bound < 2f64.powi(120) {
                    PsdCheck::ExactI128
                } else {
                    PsdCheck::ExactRational
                }
            }
        }
    }

    fn residual_ok(&self, residual: &[i64], w: &[i64], r: usize) -> Result<bool> {
        let mut b = vec![0i64; r * r];
        for i in 0..r {
            for j in 0..r {
                b[i * r + j] = residual[i * r + j] - w[i] * w[j];
            }
        }
        // An exactly negative 2x2 principal minor proves the residual
        // indefinite, which no mode may accept; residuals of completable
        // branches are exact Gram matrices, so this rejects nothing valid.
        for i in 0..r {
            for j in (i + 1)..r {
                if i128::from(b[i * r + i]) * i128::from(b[j * r + j])
                    < i128::from(b[i * r + j]) * i128::from(b[i * r + j])
                {
                    return Ok(false);
                }
            }
        }
        match self {
            PsdCheck::Numeric { tol } => {
                let mut a: Vec<f64> = b.iter().map(|&x| x as f64).collect();
                match ldl_psd_screen(&mut a, r, -*tol) {
                    Some(ok) => Ok(ok),
                    None => {
                        let mut a: Vec<f64> = b.iter().map(|&x| x as f64).collect();
                        Ok(min_eig_symmetric(&mut a, r) >= *tol)
                    }
                }
            }
            PsdCheck::ExactI128 => {
                let mut a: Vec<i128> = b.iter().map(i128::from).collect();
                Ok(psd_exact_i128(&mut a, r))
            }
            PsdCheck::ExactRational => {
                let data = b
                    .iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect();
                is_psd_exact(&RatMatrix::new(r, r, data)?)
            }
        }
    }
}

/// Fast screen for `a + shift I` being positive semidefinite, by floating
/// `L D L^t` with greatest-diagonal pivoting. Returns `None` when a pivot
/// lands within the error margin, leaving the decision to the eigensolver.
fn ldl_psd_screen(a: &mut [f64], n: usize, shift: f64) -> Option<bool> {
    let mut scale = shift.abs();
    for i in 0..n {
        scale = scale.max(a[i * n + i].abs());
    }
    let margin = 1e-9 * scale.max(1.0) * n as f64;
    for i in 0..n {
        a[i * n + i] += shift;
    }
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(pos) = active
        .iter()
        .enumerate()
        .max_by(|x, y| a[x.1 * n + x.1].total_cmp(&a[*y.1 * n + *y.1]))
        .map(|(k, _)| k)
    {
        let p = active.swap_remove(pos);
        let d = a[p * n + p];
        if d < -margin {
            return Some(false);
        }
        if d <= margin {
            // max remaining diagonal is numerically zero: the block must be
            // zero too, and that call is too close to make here
            return None;
        }
        for &i in &active {
            let f = a[i * n + p] / d;
            for &j in &active {
                a[i * n + j] -= f * a[p * n + j];
            }
        }
    }
    Some(true)
}

/// Fraction-free symmetric elimination with greatest-diagonal pivoting.
/// Divisions are exact (Sylvester identity); entries stay within i128 when
/// the caller has checked the Hadamard bound.
fn psd_exact_i128(a: &mut [i128], n: usize) -> bool {
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev: i128 = 1;
    while !active.is_empty() {
        let &p = active
            .iter()
            .max_by_key(|&&i| a[i * n + i])
            .unwrap();
        let d = a[p * n + p];
        if d < 0 {
            return false;
        }
        if d == 0 {
            return active
                .iter()
                .all(|&i| active.iter().all(|&j| a[i * n + j] == 0));
        }
        active.retain(|&i| i != p);
        for &i in &active {
            for &j in &active {
                a[i * n + j] = (a[i * n + j] * d - a[i * n + p] * a[p * n + j]) / prev;
            }
        }
        prev = d;
    }
    true
}

/// All new columns for a partial decomposition, in decreasing lexicographic
/// order. Exposed for tests and diagnostics; `search_all` drives the same
/// enumeration internally.
pub fn new_column_candidates(
    partial: &PartialDecomposition,
    reduced: &ReducedProblem,
    global_dim: &CycloNumber,
    cfg: &SolverConfig,
) -> Result<Vec<Vec<i64>>> {
    cfg.check()?;
    let conductor = global_dim.conductor();
    let alg = AlgebraicFilter::new(&reduced.vs_reduced, global_dim, conductor, cfg.forbid_zero_dots);
    let lift = LiftFilter::new(&reduced.reduction)?;
    let psd = PsdCheck::new(cfg.psd_mode, cfg.eig_tolerance, &reduced.m_prime);
    enumerate_columns(partial, &psd, &lift, &alg, None, &AtomicU64::new(0))
}

fn enumerate_columns(
    partial: &PartialDecomposition,
    psd: &PsdCheck,
    lift: &LiftFilter,
    alg: &AlgebraicFilter,
    stop: Option<&AtomicBool>,
    candidates: &AtomicU64,
) -> Result<Vec<Vec<i64>>> {
    let r = partial.r;
    let p = partial.zero_prefix;
    if p == r {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut w = vec![0i64; r];
    descend(
        partial, psd, lift, alg, stop, candidates, 0, partial.last_column().is_some(), &mut w,
        &mut out, p,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    partial: &PartialDecomposition,
    psd: &PsdCheck,
    lift: &LiftFilter,
    alg: &AlgebraicFilter,
    stop: Option<&AtomicBool>,
    candidates: &AtomicU64,
    i: usize,
    tight: bool,
    w: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    p: usize,
) -> Result<()> {
    let r = partial.r;
    let residual = &partial.residual;
    if i == r {
        if let Some(flag) = stop {
            if flag.load(Ordering::Relaxed) {
                return Ok(());
            }
        }
        candidates.fetch_add(1, Ordering::Relaxed);
        if !psd.residual_ok(residual, w, r)? {
            return Ok(());
        }
        if lift.lift(w).is_none() {
            return Ok(());
        }
        if !alg.column_ok(w)? {
            return Ok(());
        }
        out.push(w.clone());
        return Ok(());
    }
    let mut hi = isqrt_i64(residual[i * r + i]);
    for j in 0..i {
        if w[j] > 0 {
            hi = hi.min(residual[i * r + j] / w[j]);
        }
    }
    let last = partial.last_column();
    if tight {
        hi = hi.min(last.unwrap()[i]);
    }
    let lo = if i == p { 1 } else { 0 };
    let mut val = hi;
    while val >= lo {
        w[i] = val;
        let still_tight = tight && val == last.unwrap()[i];
        descend(partial, psd, lift, alg, stop, candidates, i + 1, still_tight, w, out, p)?;
        val -= 1;
    }
    w[i] = 0;
    Ok(())
}

/// One algebraic decomposition, lifted back to the original matrix.
#[derive(Clone, Debug)]
pub struct InductionResult {
    /// The full decomposition, `gram = a a^t` exactly.
    pub a: IntMatrix,
    /// Consecutive row blocks of `a`, one per object when a layout is known.
    pub blocks: Vec<IntMatrix>,
    pub column_count: usize,
    /// For each column, its dot product with each dimension vector.
    pub column_dots: Vec<Vec<CycloNumber>>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub candidates: u64,
    pub wall: Duration,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub results: Vec<InductionResult>,
    pub truncated: bool,
    pub stats: SearchStats,
}

struct SearchShared<'a> {
    psd: PsdCheck,
    lift: LiftFilter,
    alg: AlgebraicFilter<'a>,
    stop: AtomicBool,
    truncated: AtomicBool,
    found: AtomicU64,
    nodes: AtomicU64,
    candidates: AtomicU64,
    max_solutions: Option<usize>,
    max_columns: Option<usize>,
    deadline: Option<Instant>,
}

impl<'a> SearchShared<'a> {
    fn should_stop(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.stop.store(true, Ordering::Relaxed);
                self.truncated.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn record_solution(&self) {
        let found = self.found.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(max) = self.max_solutions {
            if found as usize >= max {
                self.stop.store(true, Ordering::Relaxed);
                self.truncated.store(true, Ordering::Relaxed);
            }
        }
    }
}

/// Depth-first search; candidate subtrees run in parallel while
/// `parallel_budget > 0`. Candidate order is preserved when flattening, so
/// the emission order is the sequential one regardless of thread count.
fn dfs(
    partial: &PartialDecomposition,
    shared: &SearchShared,
    parallel_budget: usize,
) -> Result<Vec<Vec<Vec<i64>>>> {
    if shared.should_stop() {
        return Ok(Vec::new());
    }
    shared.nodes.fetch_add(1, Ordering::Relaxed);
    if partial.is_complete() {
        shared.record_solution();
        return Ok(vec![partial.columns.clone()]);
    }
    if let Some(maxc) = shared.max_columns {
        if partial.columns.len() >= maxc {
            // a live branch was cut iff it could still be extended
            let cands = enumerate_columns(
                partial, &shared.psd, &shared.lift, &shared.alg, Some(&shared.stop),
                &shared.candidates,
            )?;
            if !cands.is_empty() {
                shared.truncated.store(true, Ordering::Relaxed);
            }
            return Ok(Vec::new());
        }
    }
    let cands = enumerate_columns(
        partial, &shared.psd, &shared.lift, &shared.alg, Some(&shared.stop), &shared.candidates,
    )?;
    if parallel_budget > 0 && cands.len() > 1 {
        let nested: Vec<Result<Vec<Vec<Vec<i64>>>>> = cands
            .par_iter()
            .map(|w| dfs(&partial.extend(w), shared, parallel_budget - 1))
            .collect();
        let mut out = Vec::new();
        for branch in nested {
            out.extend(branch?);
        }
        Ok(out)
    } else {
        let mut out = Vec::new();
        for w in cands {
            out.extend(dfs(&partial.extend(&w), shared, 0)?);
            if shared.should_stop() {
                break;
            }
        }
        Ok(out)
    }
}

/// Enumerate all algebraic decompositions of `problem`.
pub fn search_all(problem: &DecompositionProblem, cfg: &SolverConfig) -> Result<SearchOutcome> {
    cfg.check()?;
    let start = Instant::now();
    let reduced = if cfg.use_reduction {
        reduce_problem(problem, cfg.minor_override.as_deref())?
    } else {
        identity_reduction(problem)
    };
    let shared = SearchShared {
        psd: PsdCheck::new(cfg.psd_mode, cfg.eig_tolerance, &reduced.m_prime),
        lift: LiftFilter::new(&reduced.reduction)?,
        alg: AlgebraicFilter::new(
            &reduced.vs_reduced,
            &problem.global_dim,
            problem.conductor,
            cfg.forbid_zero_dots,
        ),
        stop: AtomicBool::new(cfg.max_solutions == Some(0)),
        truncated: AtomicBool::new(cfg.max_solutions == Some(0)),
        found: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        candidates: AtomicU64::new(0),
        max_solutions: cfg.max_solutions,
        max_columns: cfg.max_columns,
        deadline: cfg.time_limit.map(|t| start + t),
    };
    let root = PartialDecomposition::root(&reduced.m_prime)?;

    let raw: Vec<Vec<Vec<i64>>> = if cfg.thread_count <= 1 {
        dfs(&root, &shared, 0)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.thread_count)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| dfs(&root, &shared, 8))?
    };

    // lift, verify, and package
    let mut results = Vec::with_capacity(raw.len());
    for columns in raw {
        results.push(package_solution(&columns, &reduced, problem, cfg)?);
    }
    results.sort_by(|a, b| {
        a.column_count
            .cmp(&b.column_count)
            .then_with(|| matrix_key(&a.a).cmp(&matrix_key(&b.a)))
    });
    Ok(SearchOutcome {
        results,
        truncated: shared.truncated.load(Ordering::Relaxed),
        stats: SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            candidates: shared.candidates.load(Ordering::Relaxed),
            wall: start.elapsed(),
        },
    })
}

fn matrix_key(m: &IntMatrix) -> Vec<BigInt> {
    let mut key = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            key.push(m.get(i, j).clone());
        }
    }
    key
}

fn package_solution(
    columns: &[Vec<i64>],
    reduced: &ReducedProblem,
    problem: &DecompositionProblem,
    cfg: &SolverConfig,
) -> Result<InductionResult> {
    let n = problem.gram.rows();
    let m = columns.len();
    let mut a = IntMatrix::zero(n, m);
    for (j, w) in columns.iter().enumerate() {
        let lifted = lift_column(w, &reduced.reduction).ok_or_else(|| {
            Error::InvariantViolation("accepted column failed to lift".into())
        })?;
        for i in 0..n {
            *a.get_mut(i, j) = lifted[i].clone();
        }
    }
    if !verify_decomposition_with(&a, problem, cfg.forbid_zero_dots)? {
        return Err(Error::InvariantViolation(
            "emitted solution failed exact verification".into(),
        ));
    }
    let blocks = match &problem.layout {
        Some(layout) => split_blocks(&a, layout)?,
        None => vec![a.clone()],
    };
    let mut column_dots = Vec::with_capacity(m);
    for j in 0..m {
        let mut dots = Vec::with_capacity(problem.vs.len());
        for v in &problem.vs {
            let mut dot = CycloNumber::zero(problem.conductor);
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() && !a.get(i, j).is_zero() {
                    dot = dot.add(&x.scale(&BigRational::from_integer(a.get(i, j).clone())))?;
                }
            }
            dots.push(dot);
        }
        column_dots.push(dots);
    }
    Ok(InductionResult { a, blocks, column_count: m, column_dots })
}

/// `R w` when every entry is a non-negative integer; `None` otherwise.
pub fn lift_column(w: &[i64], reduction: &RatMatrix) -> Option<Vec<BigInt>> {
    if reduction.cols() != w.len() {
        return None;
    }
    let mut out = Vec::with_capacity(reduction.rows());
    for i in 0..reduction.rows() {
        let mut acc = BigRational::zero();
        for (c, &wc) in w.iter().enumerate() {
            if wc != 0 {
                acc += reduction.get(i, c) * BigRational::from_integer(BigInt::from(wc));
            }
        }
        if !acc.denom().is_one() || acc.numer().is_negative() {
            return None;
        }
        out.push(acc.numer().clone());
    }
    Some(out)
}

/// Check that `a` is an algebraic decomposition of the problem: exact
/// `a a^t = gram`, non-negative entries, and the algebraic conditions on
/// every column dot. Column order is irrelevant (all checks are per-column).
pub fn verify_decomposition(a: &IntMatrix, problem: &DecompositionProblem) -> Result<bool> {
    verify_decomposition_with(a, problem, false)
}

pub fn verify_decomposition_with(
    a: &IntMatrix,
    problem: &DecompositionProblem,
    forbid_zero_dots: bool,
) -> Result<bool> {
    Ok(verify_report(a, problem, forbid_zero_dots)?.is_none())
}

/// Everything `verify` has to say: the first `A A^t` mismatch (or negative
/// entry), and per offending column its first violated condition.
#[derive(Clone, Debug, Default)]
pub struct VerifyDiagnostics {
    pub product_mismatch: Option<String>,
    pub column_issues: Vec<(usize, String)>,
}

impl VerifyDiagnostics {
    pub fn is_pass(&self) -> bool {
        self.product_mismatch.is_none() && self.column_issues.is_empty()
    }
}

pub fn verify_diagnostics(
    a: &IntMatrix,
    problem: &DecompositionProblem,
    forbid_zero_dots: bool,
) -> Result<VerifyDiagnostics> {
    let n = problem.gram.rows();
    if a.rows() != n {
        return Err(Error::invalid(format!(
            "candidate has {} rows but the Gram matrix is {n}x{n}",
            a.rows()
        )));
    }
    let mut diag = VerifyDiagnostics::default();
    if !a.is_nonnegative() {
        diag.product_mismatch = Some("negative entry in candidate".into());
        return Ok(diag);
    }
    let prod = a.matmul(&a.transpose())?;
    'product: for i in 0..n {
        for j in 0..n {
            if prod.get(i, j) != problem.gram.get(i, j) {
                diag.product_mismatch = Some(format!(
                    "AA^t mismatch at ({i}, {j}): {} != {}",
                    prod.get(i, j),
                    problem.gram.get(i, j)
                ));
                break 'product;
            }
        }
    }
    for j in 0..a.cols() {
        if let Some(msg) = column_violation(a, j, problem, forbid_zero_dots)? {
            diag.column_issues.push((j, msg));
        }
    }
    Ok(diag)
}

/// First violated algebraic condition of column `j`, if any.
fn column_violation(
    a: &IntMatrix,
    j: usize,
    problem: &DecompositionProblem,
    forbid_zero_dots: bool,
) -> Result<Option<String>> {
    for (vi, v) in problem.vs.iter().enumerate() {
        let mut dot = CycloNumber::zero(problem.conductor);
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() && !a.get(i, j).is_zero() {
                dot = dot.add(&x.scale(&BigRational::from_integer(a.get(i, j).clone())))?;
            }
        }
        if dot.is_zero() {
            if forbid_zero_dots {
                return Ok(Some(format!("zero dot with v_{vi} is forbidden")));
            }
            continue;
        }
        if !dot.is_d_number()? {
            return Ok(Some(format!("dot with v_{vi} is not a d-number")));
        }
        if !dot.divides_as_algebraic_integer(&problem.global_dim)? {
            return Ok(Some(format!(
                "dot with v_{vi} does not divide the global dimension"
            )));
        }
    }
    Ok(None)
}

/// First violated condition, or `None` when the decomposition verifies.
pub fn verify_report(
    a: &IntMatrix,
    problem: &DecompositionProblem,
    forbid_zero_dots: bool,
) -> Result<Option<String>> {
    let diag = verify_diagnostics(a, problem, forbid_zero_dots)?;
    if let Some(msg) = diag.product_mismatch {
        return Ok(Some(msg));
    }
    Ok(diag
        .column_issues
        .into_iter()
        .next()
        .map(|(j, msg)| format!("column {j}: {msg}")))
}

/// Exhaustive oracle: all multisets of nonzero non-negative integer columns
/// with `sum w w^t = M`, found by plain recursion with entrywise bounds only.
/// Columns of each solution are non-increasing lexicographically; solutions
/// are sorted by (column count, entries). Instances are size-limited so the
/// unpruned enumeration stays feasible.
pub fn brute_force_decompositions(m: &IntMatrix) -> Result<Vec<Vec<Vec<i64>>>> {
    let n = m.rows();
    if !m.is_symmetric() {
        return Err(Error::invalid("oracle requires a symmetric matrix"));
    }
    if !m.is_nonnegative() {
        return Err(Error::invalid("oracle requires non-negative entries"));
    }
    let data = m.to_i64_vec()?;
    let trace: i64 = (0..n).map(|i| data[i * n + i]).sum();
    if n > 6 || trace > 24 {
        return Err(Error::invalid(
            "oracle bounds exceeded (needs n <= 6 and trace <= 24)",
        ));
    }
    let mut solutions = Vec::new();
    let mut columns: Vec<Vec<i64>> = Vec::new();
    oracle_rec(&data, n, &mut columns, &mut solutions);
    solutions.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    solutions.dedup();
    Ok(solutions)
}

fn oracle_rec(
    residual: &[i64],
    n: usize,
    columns: &mut Vec<Vec<i64>>,
    solutions: &mut Vec<Vec<Vec<i64>>>,
) {
    if residual.iter().all(|&x| x == 0) {
        solutions.push(columns.clone());
        return;
    }
    let last = columns.last().cloned();
    let mut w = vec![0i64; n];
    let mut cands = Vec::new();
    oracle_columns(residual, n, &mut w, 0, last.as_deref(), last.is_some(), &mut cands);
    for w in cands {
        let mut next = residual.to_vec();
        let mut ok = true;
        for i in 0..n {
            for j in 0..n {
                next[i * n + j] -= w[i] * w[j];
                if next[i * n + j] < 0 {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        columns.push(w);
        oracle_rec(&next, n, columns, solutions);
        columns.pop();
    }
}

fn oracle_columns(
    residual: &[i64],
    n: usize,
    w: &mut Vec<i64>,
    i: usize,
    last: Option<&[i64]>,
    tight: bool,
    out: &mut Vec<Vec<i64>>,
) {
    if i == n {
        if w.iter().any(|&x| x != 0) {
            out.push(w.clone());
        }
        return;
    }
    let mut hi = isqrt_i64(residual[i * n + i]);
    for j in 0..i {
        if w[j] > 0 {
            hi = hi.min(residual[i * n + j] / w[j]);
        }
    }
    if tight {
        hi = hi.min(last.unwrap()[i]);
    }
    let mut val = hi;
    while val >= 0 {
        w[i] = val;
        oracle_columns(residual, n, w, i + 1, last, tight && val == last.unwrap_or(w)[i], out);
        val -= 1;
    }
    w[i] = 0;
}

/// Slice a stacked decomposition into consecutive per-object row blocks.
pub fn split_blocks(a: &IntMatrix, layout: &[usize]) -> Result<Vec<IntMatrix>> {
    if layout.iter().sum::<usize>() != a.rows() {
        return Err(Error::invalid(format!(
            "layout sums to {} but the matrix has {} rows",
            layout.iter().sum::<usize>(),
            a.rows()
        )));
    }
    let mut out = Vec::with_capacity(layout.len());
    let mut off = 0;
    for &k in layout {
        let mut block = IntMatrix::zero(k, a.cols());
        for i in 0..k {
            for j in 0..a.cols() {
                *block.get_mut(i, j) = a.get(off + i, j).clone();
            }
        }
        out.push(block);
        off += k;
    }
    Ok(out)
}

/// A problem with no algebraic constraints, for oracle-scale testing: the
/// divisibility target is trace(M)! so that every possible column dot (an
/// integer at most trace(M)) divides it.
pub fn unconstrained_problem(m: &IntMatrix) -> Result<DecompositionProblem> {
    let n = m.rows();
    let data = m.to_i64_vec()?;
    let trace: i64 = (0..n).map(|i| data[i * n + i]).sum();
    let mut f = BigInt::one();
    for k in 2..=trace.max(1) {
        f *= k;
    }
    let ones = vec![CycloNumber::one(1); n];
    DecompositionProblem::new(
        m.clone(),
        vec![ones],
        CycloNumber::from_rational(1, BigRational::from_integer(f)),
        1,
        None,
    )
}
