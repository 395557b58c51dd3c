//! Grothendieck data of a fusion 2-category and the Gram matrix of induced
//! objects.
//!
//! An input consists of one fusion ring per object (structure constants
//! `N[i][j][l]` = multiplicity of `X_l` in `X_i X_j`, plus exact dimensions in
//! a fixed cyclotomic field) and one bimodule block per unordered pair of
//! distinct objects. A block records the category of 1-morphisms from its
//! `to`-object to its `from`-object: the `from` ring acts on the left, the
//! `to` ring on the right, and both actions are stored as one square matrix
//! per acting simple, indexed `[input simple][output simple]`.
//!
//! The Gram matrix entry for simples `X` in object `a` and `Y` in object `b`
//! counts pairs of 1-morphisms `W, Z` weighted by
//! `mult(W in Y (x) Z) * mult(W in Z (x) X)`. On a diagonal block both factors
//! are ring structure constants; on an off-diagonal block the first factor is
//! the right action of `Y` and the second the left action of `X`, evaluated on
//! the `(a, b)` bimodule. The `(b, a)` block is computed independently through
//! the dual bimodule (actions composed with the rings' duality) and must come
//! out as the exact transpose; an asymmetric result signals mis-oriented
//! input.
//!
//! Simples are kept in input order throughout; the Gram matrix row order is
//! the concatenation of the objects' simple lists.

use num::BigInt;

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::solver::DecompositionProblem;

/// Fusion ring of one object: structure constants, derived unit and duality,
/// and exact simple dimensions.
#[derive(Clone, Debug)]
pub struct FusionRing {
    name: String,
    simple_count: usize,
    structure: Vec<u64>,
    unit: usize,
    dual: Vec<usize>,
    dims: Vec<CycloNumber>,
}

impl FusionRing {
    /// Build a ring from nested structure constants (`fusion[i][j][l]`) and
    /// dimensions. The unit and the duality involution are derived; their
    /// absence is rejected here since nothing downstream makes sense without
    /// them. The remaining axioms are checked by [`TwoCategoryData::validate`].
    pub fn new(
        name: impl Into<String>,
        fusion: &[Vec<Vec<u64>>],
        dims: Vec<CycloNumber>,
    ) -> Result<Self> {
        let name = name.into();
        let k = fusion.len();
        if k == 0 {
            return Err(Error::invalid(format!("ring {name}: no simples")));
        }
        if fusion.iter().any(|m| m.len() != k || m.iter().any(|r| r.len() != k)) {
            return Err(Error::ShapeMismatch(format!(
                "ring {name}: fusion matrices must be {k}x{k}"
            )));
        }
        if dims.len() != k {
            return Err(Error::ShapeMismatch(format!(
                "ring {name}: {} dims for {} simples",
                dims.len(),
                k
            )));
        }
        let mut structure = vec![0u64; k * k * k];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    structure[(i * k + j) * k + l] = fusion[i][j][l];
                }
            }
        }
        let ring_probe = FusionRing {
            name: name.clone(),
            simple_count: k,
            structure,
            unit: 0,
            dual: vec![0; k],
            dims,
        };
        let unit = (0..k)
            .find(|&u| {
                (0..k).all(|j| (0..k).all(|l| ring_probe.n(u, j, l) == u64::from(j == l)))
            })
            .ok_or_else(|| {
                Error::InconsistentData(format!("ring {name}: no unit simple found"))
            })?;
        let mut dual = Vec::with_capacity(k);
        for i in 0..k {
            let mut ds = (0..k).filter(|&j| ring_probe.n(i, j, unit) != 0);
            let d = ds.next().ok_or_else(|| {
                Error::InconsistentData(format!("ring {name}: simple {i} has no dual"))
            })?;
            if ds.next().is_some() || ring_probe.n(i, d, unit) != 1 {
                return Err(Error::InconsistentData(format!(
                    "ring {name}: simple {i} has no unique dual"
                )));
            }
            dual.push(d);
        }
        Ok(FusionRing { unit, dual, ..ring_probe })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn simple_count(&self) -> usize {
        self.simple_count
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn dims(&self) -> &[CycloNumber] {
        &self.dims
    }

    /// Multiplicity of `X_l` in `X_i X_j`.
    pub fn n(&self, i: usize, j: usize, l: usize) -> u64 {
        self.structure[(i * self.simple_count + j) * self.simple_count + l]
    }

    /// Global dimension: the sum of the squared simple dimensions.
    pub fn global_dimension(&self) -> Result<CycloNumber> {
        let conductor = self.dims[0].conductor();
        let mut acc = CycloNumber::zero(conductor);
        for d in &self.dims {
            acc = acc.add(&d.mul(d)?)?;
        }
        Ok(acc)
    }

    /// Numeric guard: the embedded dimensions must form the Perron-Frobenius
    /// eigenvector of every fusion matrix (relative error 1e-8), with the
    /// unit dimension equal to 1 and all entries positive.
    pub fn fp_dimension_check(&self) -> bool {
        let d: Vec<f64> = self.dims.iter().map(|x| x.approx_real()).collect();
        if self.dims.iter().any(|x| x.to_complex_approx().im.abs() > 1e-8) {
            return false;
        }
        if (d[self.unit] - 1.0).abs() > 1e-8 || d.iter().any(|&x| x <= 0.0) {
            return false;
        }
        let k = self.simple_count;
        for i in 0..k {
            for j in 0..k {
                let lhs: f64 = (0..k).map(|l| self.n(i, j, l) as f64 * d[l]).sum();
                let rhs = d[i] * d[j];
                if (lhs - rhs).abs() > 1e-8 * (1.0 + rhs.abs()) {
                    return false;
                }
            }
        }
        true
    }

    /// The opposite ring (`X_i X_j` and `X_j X_i` swapped), same dimensions.
    pub fn opposite(&self) -> Result<FusionRing> {
        let k = self.simple_count;
        let fusion: Vec<Vec<Vec<u64>>> = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| self.n(j, i, l)).collect()).collect())
            .collect();
        FusionRing::new(format!("{}^op", self.name), &fusion, self.dims.clone())
    }

    /// The same ring with simples relabeled by `perm` (new index `i` is old
    /// `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<FusionRing> {
        let k = self.simple_count;
        let fusion: Vec<Vec<Vec<u64>>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).map(|l| self.n(perm[i], perm[j], perm[l])).collect())
                    .collect()
            })
            .collect();
        let dims = perm.iter().map(|&p| self.dims[p].clone()).collect();
        FusionRing::new(self.name.clone(), &fusion, dims)
    }

    fn validate_into(&self, report: &mut Vec<String>) {
        let k = self.simple_count;
        let name = &self.name;
        for j in 0..k {
            for l in 0..k {
                if self.n(self.unit, j, l) != u64::from(j == l)
                    || self.n(j, self.unit, l) != u64::from(j == l)
                {
                    report.push(format!("ring {name}: unit law fails at ({j}, {l})"));
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    for p in 0..k {
                        let lhs: u64 = (0..k).map(|m| self.n(i, j, m) * self.n(m, l, p)).sum();
                        let rhs: u64 = (0..k).map(|m| self.n(j, l, m) * self.n(i, m, p)).sum();
                        if lhs != rhs {
                            report.push(format!(
                                "ring {name}: associativity fails at ({i}, {j}, {l}, {p})"
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                let expect = u64::from(j == self.dual[i]);
                if self.n(i, j, self.unit) != expect {
                    report.push(format!(
                        "ring {name}: Frobenius duality fails at ({i}, {j})"
                    ));
                }
            }
        }
        if self.dual.iter().enumerate().any(|(i, &d)| self.dual[d] != i) {
            report.push(format!("ring {name}: duality is not an involution"));
        }
        // exact multiplicativity of the dimension function
        for i in 0..k {
            for j in 0..k {
                let lhs = match self.dims[i].mul(&self.dims[j]) {
                    Ok(x) => x,
                    Err(e) => {
                        report.push(format!("ring {name}: dims arithmetic failed: {e}"));
                        return;
                    }
                };
                let mut rhs = CycloNumber::zero(self.dims[0].conductor());
                for l in 0..k {
                    rhs.add_assign_scaled(&self.dims[l], self.n(i, j, l) as i64);
                }
                if lhs != rhs {
                    report.push(format!(
                        "ring {name}: dims not multiplicative at ({i}, {j})"
                    ));
                }
            }
        }
        for (i, d) in self.dims.iter().enumerate() {
            let c = d.to_complex_approx();
            if c.re <= 0.0 || c.im.abs() > 1e-8 {
                report.push(format!(
                    "ring {name}: dim of simple {i} is not positive real ({c})"
                ));
            }
        }
    }
}

/// Bimodule category between two objects. `left[x]` and `right[y]` are
/// square matrices over the bimodule simples, indexed `[input][output]`.
#[derive(Clone, Debug)]
pub struct BimoduleBlock {
    from: usize,
    to: usize,
    simple_count: usize,
    left: Vec<u64>,
    right: Vec<u64>,
}

impl BimoduleBlock {
    pub fn new(
        from: usize,
        to: usize,
        simple_count: usize,
        left_action: &[Vec<Vec<u64>>],
        right_action: &[Vec<Vec<u64>>],
        from_simples: usize,
        to_simples: usize,
    ) -> Result<Self> {
        let m = simple_count;
        if from == to {
            return Err(Error::invalid("bimodule endpoints must be distinct objects"));
        }
        if left_action.len() != from_simples || right_action.len() != to_simples {
            return Err(Error::ShapeMismatch(
                "bimodule needs one action matrix per acting simple".into(),
            ));
        }
        let check = |mats: &[Vec<Vec<u64>>]| {
            mats.iter().all(|mat| mat.len() == m && mat.iter().all(|r| r.len() == m))
        };
        if !check(left_action) || !check(right_action) {
            return Err(Error::ShapeMismatch(format!(
                "bimodule action matrices must be {m}x{m}"
            )));
        }
        let flatten = |mats: &[Vec<Vec<u64>>]| {
            mats.iter()
                .flat_map(|mat| mat.iter().flatten().copied())
                .collect::<Vec<u64>>()
        };
        Ok(BimoduleBlock {
            from,
            to,
            simple_count: m,
            left: flatten(left_action),
            right: flatten(right_action),
        })
    }

    pub fn from_object(&self) -> usize {
        self.from
    }

    pub fn to_object(&self) -> usize {
        self.to
    }

    pub fn simple_count(&self) -> usize {
        self.simple_count
    }

    /// Multiplicity of bimodule simple `out` in `x` acting on `m` from the left.
    pub fn left(&self, x: usize, m: usize, out: usize) -> u64 {
        self.left[(x * self.simple_count + m) * self.simple_count + out]
    }

    /// Multiplicity of bimodule simple `out` in `m` acted on by `y` from the right.
    pub fn right(&self, y: usize, m: usize, out: usize) -> u64 {
        self.right[(y * self.simple_count + m) * self.simple_count + out]
    }

    /// The dual bimodule, with the roles of the two objects exchanged: the
    /// new left action of `y` is the old right action of `dual(y)`, and the
    /// new right action of `x` is the old left action of `dual(x)`.
    pub fn reversed(&self, from_ring: &FusionRing, to_ring: &FusionRing) -> BimoduleBlock {
        let m = self.simple_count;
        let pick = |src: &[u64], actor: usize| {
            src[actor * m * m..(actor + 1) * m * m].to_vec()
        };
        let mut left = Vec::with_capacity(to_ring.simple_count() * m * m);
        for y in 0..to_ring.simple_count() {
            left.extend(pick(&self.right, to_ring.dual(y)));
        }
        let mut right = Vec::with_capacity(from_ring.simple_count() * m * m);
        for x in 0..from_ring.simple_count() {
            right.extend(pick(&self.left, from_ring.dual(x)));
        }
        BimoduleBlock {
            from: self.to,
            to: self.from,
            simple_count: m,
            left,
            right,
        }
    }

    fn validate_into(&self, rings: &[FusionRing], report: &mut Vec<String>) {
        let m = self.simple_count;
        let fr = &rings[self.from];
        let tr = &rings[self.to];
        let label = format!("bimodule {} -> {}", fr.name(), tr.name());
        for (mat, unit, side) in [
            (&self.left, fr.unit(), "left"),
            (&self.right, tr.unit(), "right"),
        ] {
            for a in 0..m {
                for b in 0..m {
                    if mat[(unit * m + a) * m + b] != u64::from(a == b) {
                        report.push(format!("{label}: {side} unit does not act as identity"));
                        break;
                    }
                }
            }
        }
        // module associativity: x1 . (x2 . m) = (x1 x2) . m, i.e. as
        // input-by-output matrices, sum N(x1,x2;x) L[x] = L[x2] L[x1]
        let kf = fr.simple_count();
        for x1 in 0..kf {
            for x2 in 0..kf {
                for a in 0..m {
                    for b in 0..m {
                        let lhs: u64 =
                            (0..kf).map(|x| fr.n(x1, x2, x) * self.left(x, a, b)).sum();
                        let rhs: u64 =
                            (0..m).map(|mu| self.left(x2, a, mu) * self.left(x1, mu, b)).sum();
                        if lhs != rhs {
                            report.push(format!(
                                "{label}: left action not associative at ({x1}, {x2})"
                            ));
                        }
                    }
                }
            }
        }
        let kt = tr.simple_count();
        for y1 in 0..kt {
            for y2 in 0..kt {
                for a in 0..m {
                    for b in 0..m {
                        let lhs: u64 =
                            (0..kt).map(|y| tr.n(y1, y2, y) * self.right(y, a, b)).sum();
                        let rhs: u64 =
                            (0..m).map(|mu| self.right(y1, a, mu) * self.right(y2, mu, b)).sum();
                        if lhs != rhs {
                            report.push(format!(
                                "{label}: right action not associative at ({y1}, {y2})"
                            ));
                        }
                    }
                }
            }
        }
        // the two actions commute at the multiplicity level
        for x in 0..kf {
            for y in 0..kt {
                for a in 0..m {
                    for b in 0..m {
                        let lhs: u64 =
                            (0..m).map(|mu| self.left(x, a, mu) * self.right(y, mu, b)).sum();
                        let rhs: u64 =
                            (0..m).map(|mu| self.right(y, a, mu) * self.left(x, mu, b)).sum();
                        if lhs != rhs {
                            report.push(format!(
                                "{label}: left and right actions do not commute at ({x}, {y})"
                            ));
                        }
                    }
                }
            }
        }
    }
}

/// Result of structural validation: pass, or a list of violated invariants.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_pass() {
            writeln!(f, "pass")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// The full Grothendieck data of a fusion 2-category.
#[derive(Clone, Debug)]
pub struct TwoCategoryData {
    conductor: u32,
    objects: Vec<FusionRing>,
    blocks: Vec<BimoduleBlock>,
}

impl TwoCategoryData {
    pub fn new(
        conductor: u32,
        objects: Vec<FusionRing>,
        blocks: Vec<BimoduleBlock>,
    ) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        if objects.is_empty() {
            return Err(Error::invalid("at least one object required"));
        }
        for ring in &objects {
            for d in ring.dims() {
                if d.conductor() != conductor {
                    return Err(Error::ConductorMismatch {
                        left: conductor,
                        right: d.conductor(),
                    });
                }
            }
        }
        let k = objects.len();
        let mut seen = vec![vec![false; k]; k];
        for b in &blocks {
            if b.from_object() >= k || b.to_object() >= k {
                return Err(Error::invalid("bimodule references unknown object"));
            }
            let (lo, hi) = (
                b.from_object().min(b.to_object()),
                b.from_object().max(b.to_object()),
            );
            if seen[lo][hi] {
                return Err(Error::InconsistentData(format!(
                    "duplicate bimodule between objects {lo} and {hi}"
                )));
            }
            seen[lo][hi] = true;
        }
        for a in 0..k {
            for b in (a + 1)..k {
                if !seen[a][b] {
                    return Err(Error::InconsistentData(format!(
                        "missing bimodule between objects {a} and {b}"
                    )));
                }
            }
        }
        Ok(TwoCategoryData { conductor, objects, blocks })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn objects(&self) -> &[FusionRing] {
        &self.objects
    }

    pub fn simple_counts(&self) -> Vec<usize> {
        self.objects.iter().map(|r| r.simple_count()).collect()
    }

    pub fn total_simples(&self) -> usize {
        self.objects.iter().map(|r| r.simple_count()).sum()
    }

    fn offset(&self, a: usize) -> usize {
        self.objects[..a].iter().map(|r| r.simple_count()).sum()
    }

    /// The bimodule on which object `a` acts from the left and `b` from the
    /// right, deriving the dual block when only the reverse was supplied.
    fn oriented_block(&self, a: usize, b: usize) -> Result<BimoduleBlock> {
        for block in &self.blocks {
            if block.from_object() == a && block.to_object() == b {
                return Ok(block.clone());
            }
            if block.from_object() == b && block.to_object() == a {
                return Ok(block.reversed(&self.objects[b], &self.objects[a]));
            }
        }
        Err(Error::InconsistentData(format!(
            "no bimodule between objects {a} and {b}"
        )))
    }

    /// Check every structural invariant; failures are report entries.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for ring in &self.objects {
            ring.validate_into(&mut violations);
        }
        for block in &self.blocks {
            block.validate_into(&self.objects, &mut violations);
        }
        ValidationReport { violations }
    }

    /// The Gram matrix of inner products between induced objects, one row and
    /// column per simple of every object, in input order.
    pub fn build_gram_matrix(&self) -> Result<IntMatrix> {
        let n = self.total_simples();
        let mut gram = IntMatrix::zero(n, n);
        let k = self.objects.len();
        for a in 0..k {
            let ring = &self.objects[a];
            let ka = ring.simple_count();
            let off = self.offset(a);
            for x in 0..ka {
                for y in 0..ka {
                    let mut acc: u128 = 0;
                    for z in 0..ka {
                        for w in 0..ka {
                            acc += u128::from(ring.n(y, z, w)) * u128::from(ring.n(z, x, w));
                        }
                    }
                    *gram.get_mut(off + x, off + y) = BigInt::from(acc);
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let block = self.oriented_block(a, b)?;
                let m = block.simple_count();
                let off_a = self.offset(a);
                let off_b = self.offset(b);
                for x in 0..self.objects[a].simple_count() {
                    for y in 0..self.objects[b].simple_count() {
                        let mut acc: u128 = 0;
                        for z in 0..m {
                            for w in 0..m {
                                acc += u128::from(block.right(y, z, w))
                                    * u128::from(block.left(x, z, w));
                            }
                        }
                        *gram.get_mut(off_a + x, off_b + y) = BigInt::from(acc);
                    }
                }
            }
        }
        // the two independently computed off-diagonal blocks must agree
        if !gram.is_symmetric() {
            return Err(Error::InvariantViolation(
                "Gram matrix came out asymmetric; bimodule orientation is inconsistent".into(),
            ));
        }
        Ok(gram)
    }

    /// One dimension vector per object: that object's dims on its own index
    /// range, zero elsewhere, matching the Gram matrix row order.
    pub fn build_dimension_vectors(&self) -> Vec<Vec<CycloNumber>> {
        let n = self.total_simples();
        let mut out = Vec::with_capacity(self.objects.len());
        for (a, ring) in self.objects.iter().enumerate() {
            let mut v = vec![CycloNumber::zero(self.conductor); n];
            let off = self.offset(a);
            for (i, d) in ring.dims().iter().enumerate() {
                v[off + i] = d.clone();
            }
            out.push(v);
        }
        out
    }

    /// Bundle the Gram matrix, padded dimension vectors, and global dimension
    /// into a solver problem, cross-checking that every object reports the
    /// same global dimension exactly and that the Perron-Frobenius eigenvalue
    /// of the Gram matrix is (number of objects) times the global dimension.
    pub fn build_problem(&self) -> Result<DecompositionProblem> {
        let global = self.objects[0].global_dimension()?;
        for ring in &self.objects[1..] {
            if ring.global_dimension()? != global {
                return Err(Error::InconsistentData(format!(
                    "global dimension differs between {} and {}",
                    self.objects[0].name(),
                    ring.name()
                )));
            }
        }
        let gram = self.build_gram_matrix()?;
        let expected = self.objects.len() as f64 * global.approx_real();
        let fp = dominant_eigenvalue(&gram)?;
        if (fp - expected).abs() > 1e-6 * expected.abs().max(1.0) {
            return Err(Error::InconsistentData(format!(
                "Perron-Frobenius eigenvalue {fp} of the Gram matrix is not \
                 (object count) x (global dimension) = {expected}"
            )));
        }
        DecompositionProblem::new(
            gram,
            self.build_dimension_vectors(),
            global,
            self.conductor,
            Some(self.simple_counts()),
        )
    }
}

/// Largest eigenvalue of a symmetric non-negative integer matrix.
pub fn dominant_eigenvalue(m: &IntMatrix) -> Result<f64> {
    // Jacobi gives the whole spectrum; negate to reuse the min-eigenvalue path.
    let n = m.rows();
    let mut a = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            use num::ToPrimitive;
            a[i * n + j] = -m.get(i, j).to_f64().unwrap_or(f64::NAN);
        }
    }
    if !m.is_symmetric() {
        return Err(Error::invalid("dominant eigenvalue of asymmetric matrix"));
    }
    Ok(-crate::exact_linalg::min_eig_symmetric(&mut a, n))
}

/// Convenience: a valid single-object, single-simple 2-category over Q.
pub fn trivial_two_category() -> TwoCategoryData {
    let ring = FusionRing::new(
        "pt",
        &[vec![vec![1]]],
        vec![CycloNumber::one(1)],
    )
    .expect("trivial ring is valid");
    TwoCategoryData::new(1, vec![ring], Vec::new()).expect("trivial data is valid")
}

/// Convenience used across tests: the Fibonacci ring over Q(zeta_5).
pub fn fibonacci_two_category() -> TwoCategoryData {
    let one = CycloNumber::one(5);
    let phi = CycloNumber::root_of_unity(5, 1)
        .unwrap()
        .add(&CycloNumber::root_of_unity(5, 4).unwrap())
        .unwrap()
        .add(&one)
        .unwrap();
    let fusion = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 1]],
    ];
    let ring = FusionRing::new("fib", &fusion, vec![one, phi]).unwrap();
    TwoCategoryData::new(5, vec![ring], Vec::new()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    #[test]
    fn trivial_data() {
        let data = trivial_two_category();
        assert!(data.validate().is_pass());
        let gram = data.build_gram_matrix().unwrap();
        assert_eq!(gram, IntMatrix::from_i64_rows(&[vec![1]]).unwrap());
        let d = data.objects()[0].global_dimension().unwrap();
        assert_eq!(d, CycloNumber::one(1));
        let problem = data.build_problem().unwrap();
        assert_eq!(problem.gram().rows(), 1);
    }

    #[test]
    fn fibonacci_data() {
        let data = fibonacci_two_category();
        assert!(data.validate().is_pass());
        assert!(data.objects()[0].fp_dimension_check());
        let gram = data.build_gram_matrix().unwrap();
        assert_eq!(
            gram,
            IntMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]).unwrap()
        );
        // global dimension is (5 + sqrt 5)/2, with sqrt 5 as the Gauss sum
        let d = data.objects()[0].global_dimension().unwrap();
        let sqrt5 = CycloNumber::make(
            5,
            &["0", "1", "-1", "-1", "1"]
                .iter()
                .map(|s| crate::cyclotomic::rational_from_str(s).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let expect = sqrt5
            .add(&CycloNumber::from_integer(5, 5))
            .unwrap()
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(d, expect);
        // dimension vectors: a single padded vector (1, phi)
        let vs = data.build_dimension_vectors();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].len(), 2);
        assert_eq!(vs[0][0], CycloNumber::one(5));
        let problem = data.build_problem().unwrap();
        assert_eq!(problem.vs().len(), 1);
    }

    #[test]
    fn fibonacci_wrong_dims_fails() {
        let one = CycloNumber::one(5);
        let fusion = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 1]],
        ];
        let ring = FusionRing::new("bad", &fusion, vec![one.clone(), one]).unwrap();
        assert!(!ring.fp_dimension_check());
        let data = TwoCategoryData::new(5, vec![ring], Vec::new()).unwrap();
        let report = data.validate();
        assert!(!report.is_pass());
        assert!(report.violations.iter().any(|v| v.contains("multiplicative")));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // the Z/3 group ring with one structure constant incremented: the
        // unit and duality survive, associativity does not
        let k = 3usize;
        let mut fusion = vec![vec![vec![0u64; k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                fusion[i][j][(i + j) % k] = 1;
            }
        }
        let good = FusionRing::new(
            "z3",
            &fusion,
            vec![CycloNumber::one(1), CycloNumber::one(1), CycloNumber::one(1)],
        )
        .unwrap();
        assert_eq!(good.dual(1), 2);
        let data = TwoCategoryData::new(1, vec![good], Vec::new()).unwrap();
        assert!(data.validate().is_pass());

        fusion[1][1][2] += 1;
        let broken = FusionRing::new(
            "z3",
            &fusion,
            vec![CycloNumber::one(1), CycloNumber::one(1), CycloNumber::one(1)],
        )
        .unwrap();
        // independent associativity oracle over all quadruples
        let mut assoc_breaks = 0;
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    for p in 0..k {
                        let lhs: u64 =
                            (0..k).map(|m| broken.n(i, j, m) * broken.n(m, l, p)).sum();
                        let rhs: u64 =
                            (0..k).map(|m| broken.n(j, l, m) * broken.n(i, m, p)).sum();
                        if lhs != rhs {
                            assoc_breaks += 1;
                        }
                    }
                }
            }
        }
        assert!(assoc_breaks > 0);
        let data = TwoCategoryData::new(1, vec![broken], Vec::new()).unwrap();
        let report = data.validate();
        assert!(!report.is_pass());
        assert!(report.violations.iter().any(|v| v.contains("associativity")));
    }

    #[test]
    fn global_dimension_invariances() {
        let data = fibonacci_two_category();
        let ring = &data.objects()[0];
        let d = ring.global_dimension().unwrap();
        let swapped = ring.permuted(&[1, 0]).unwrap();
        assert_eq!(swapped.global_dimension().unwrap(), d);
        let op = ring.opposite().unwrap();
        assert_eq!(op.global_dimension().unwrap(), d);
        // the opposite ring is still a valid ring
        let data_op = TwoCategoryData::new(5, vec![op], Vec::new()).unwrap();
        assert!(data_op.validate().is_pass());
    }

    #[test]
    fn unit_self_inner_product_counts_simples() {
        // diagonal Gram block at (unit, unit) counts the simples of the object
        let data = fibonacci_two_category();
        let gram = data.build_gram_matrix().unwrap();
        assert_eq!(gram.get(0, 0), &BigInt::from(2));
    }
}
