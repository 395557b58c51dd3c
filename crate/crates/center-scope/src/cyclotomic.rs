//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! A `CycloNumber` stores rational coordinates on the reduced power basis
//! `1, zeta, ..., zeta^(phi(n)-1)` modulo the n-th cyclotomic polynomial, so
//! equality is plain coefficient comparison. The conductor is fixed per value;
//! mixed-conductor arithmetic is rejected rather than coerced.
//!
//! Minimal polynomials are computed as products of `T - c` over the distinct
//! Galois conjugates `c` (the maps `zeta -> zeta^k` for `k` coprime to `n`),
//! which avoids any polynomial factorization. The number-theoretic predicates
//! needed by decomposition searches (`is_algebraic_integer`, `is_d_number`,
//! `divides_as_algebraic_integer`) are built on top of that.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num::bigint::BigInt;
use num::complex::Complex64;
use num::integer::gcd;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(n: u32) -> usize {
    assert!(n >= 1);
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result as usize
}

/// Residues in `1..=n` coprime to `n`, ascending. For `n = 1` this is `[1]`.
pub fn coprime_residues(n: u32) -> Vec<u32> {
    (1..=n).filter(|&k| gcd(k, n) == 1).collect()
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial, monic, integer coefficients ascending.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d(x)` and cached.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::from(1);
        let mut result = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                result = poly_div_exact(&result, &phi_d);
            }
        }
        result
    };
    let arc = Arc::new(poly);
    CYCLO_CACHE.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(dd) {
            rem[i - dd + j] -= &c * dj;
        }
        quot[i - dd] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An element of Q(zeta_n) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    /// Canonical reduction of `sum raw[k] * zeta^k`; exponents are taken mod `n`,
    /// so `raw` may have any length.
    pub fn make(conductor: u32, raw: &[BigRational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        let n = conductor as usize;
        let mut full = vec![BigRational::zero(); n];
        for (k, c) in raw.iter().enumerate() {
            full[k % n] += c;
        }
        Ok(Self::reduce(conductor, full))
    }

    /// Reduce a coefficient vector of length `conductor` modulo Phi_n.
    fn reduce(conductor: u32, mut full: Vec<BigRational>) -> Self {
        let phi = euler_phi(conductor);
        let cp = cyclotomic_polynomial(conductor);
        for i in (phi..full.len()).rev() {
            if full[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut full[i], BigRational::zero());
            for (j, pj) in cp.iter().enumerate().take(phi) {
                let t = &c * BigRational::from_integer(pj.clone());
                full[i - phi + j] -= t;
            }
        }
        full.truncate(phi);
        full.resize(phi, BigRational::zero());
        CycloNumber { conductor, coeffs: full }
    }

    pub fn zero(conductor: u32) -> Self {
        CycloNumber {
            conductor,
            coeffs: vec![BigRational::zero(); euler_phi(conductor)],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = q;
        x
    }

    pub fn from_integer(conductor: u32, k: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(k)))
    }

    /// `zeta_n^power`.
    pub fn root_of_unity(conductor: u32, power: u32) -> Result<Self> {
        let mut raw = vec![BigRational::zero(); (power as usize % conductor.max(1) as usize) + 1];
        let last = raw.len() - 1;
        raw[last] = BigRational::one();
        Self::make(conductor, &raw)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coordinates on the reduced power basis, length `phi(conductor)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_conductor(&self, rhs: &Self) -> Result<()> {
        if self.conductor != rhs.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: rhs.conductor,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_conductor(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNumber { conductor: self.conductor, coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_conductor(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloNumber { conductor: self.conductor, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// In-place `self += k * rhs`. Conductors must already agree.
    pub(crate) fn add_assign_scaled(&mut self, rhs: &Self, k: i64) {
        debug_assert_eq!(self.conductor, rhs.conductor);
        if k == 0 {
            return;
        }
        let kq = BigRational::from_integer(BigInt::from(k));
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b * &kq;
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_conductor(rhs)?;
        let n = self.conductor as usize;
        let phi = self.coeffs.len();
        let mut full = vec![BigRational::zero(); n.max(2 * phi.max(1) - 1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        // fold exponents >= n back down, then reduce mod Phi_n
        for i in (n..full.len()).rev() {
            let c = std::mem::replace(&mut full[i], BigRational::zero());
            full[i - n] += c;
        }
        full.truncate(n);
        full.resize(n, BigRational::zero());
        Ok(Self::reduce(self.conductor, full))
    }

    /// Multiplicative inverse, via the product of the remaining Galois
    /// conjugates divided by the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rest = Self::one(self.conductor);
        for k in coprime_residues(self.conductor) {
            if k == 1 {
                continue;
            }
            rest = rest.mul(&self.apply_galois(k))?;
        }
        let norm = self.mul(&rest)?;
        let norm_q = norm.as_rational().ok_or_else(|| {
            Error::InvariantViolation("norm of a field element must be rational".into())
        })?;
        if norm_q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(rest.scale(&norm_q.recip()))
    }

    /// The automorphism `zeta -> zeta^k`; `k` must be coprime to the conductor.
    pub fn apply_galois(&self, k: u32) -> Self {
        let n = self.conductor as usize;
        let mut full = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(j * k as usize) % n] += c;
            }
        }
        Self::reduce(self.conductor, full)
    }

    /// All Galois conjugates `sigma_k(x)` for `k` coprime to `n`, ascending in
    /// `k`. The list has length `phi(n)` and contains `x` itself (`k = 1`);
    /// repeated values are kept.
    pub fn galois_conjugates(&self) -> Vec<CycloNumber> {
        coprime_residues(self.conductor)
            .into_iter()
            .map(|k| self.apply_galois(k))
            .collect()
    }

    /// Monic minimal polynomial over Q, as the product of `T - c` over the
    /// distinct Galois conjugates `c`.
    pub fn minimal_polynomial(&self) -> Result<RationalPolynomial> {
        let mut distinct: Vec<CycloNumber> = Vec::new();
        for c in self.galois_conjugates() {
            if !distinct.contains(&c) {
                distinct.push(c);
            }
        }
        // product of (T - c), coefficients in the field
        let mut poly = vec![Self::one(self.conductor)];
        for c in &distinct {
            let nc = c.neg();
            let mut next = vec![Self::zero(self.conductor); poly.len() + 1];
            for (i, p) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add(p)?;
                next[i] = next[i].add(&p.mul(&nc)?)?;
            }
            poly = next;
        }
        let mut coeffs = Vec::with_capacity(poly.len());
        for p in &poly {
            let q = p.as_rational().ok_or_else(|| {
                Error::InvariantViolation(
                    "Galois-orbit product produced a non-rational coefficient".into(),
                )
            })?;
            coeffs.push(q);
        }
        RationalPolynomial::new(coeffs)
    }

    /// True iff the minimal polynomial is monic with integer coefficients.
    pub fn is_algebraic_integer(&self) -> Result<bool> {
        let mp = self.minimal_polynomial()?;
        Ok(mp.is_monic() && mp.has_integer_coefficients())
    }

    /// Ostrik d-number test: for the monic integer minimal polynomial
    /// `sum a_i T^i` of degree m, `a_0^i` must divide `a_(m-i)^m` in the
    /// integers for every `i`. Zero counts as a d-number (minimal polynomial
    /// `T`, and `0 | 0`).
    pub fn is_d_number(&self) -> Result<bool> {
        let mp = self.minimal_polynomial()?;
        if !(mp.is_monic() && mp.has_integer_coefficients()) {
            return Ok(false);
        }
        let m = mp.degree();
        let a: Vec<BigInt> = mp
            .coeffs()
            .iter()
            .map(|q| q.to_integer())
            .collect();
        for i in 0..=m {
            let lhs = pow_bigint(&a[0], i as u32);
            let rhs = pow_bigint(&a[m - i], m as u32);
            if !divides_int(&lhs, &rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `big / self` is an algebraic integer. A zero divisor passes by
    /// convention (callers that want to exclude vanishing dot products apply
    /// their own filter).
    pub fn divides_as_algebraic_integer(&self, big: &Self) -> Result<bool> {
        self.check_conductor(big)?;
        if self.is_zero() {
            return Ok(true);
        }
        let q = big.mul(&self.inv()?)?;
        q.is_algebraic_integer()
    }

    /// Double-precision evaluation under the embedding `zeta -> exp(2*pi*i/n)`.
    pub fn to_complex_approx(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            acc += Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Real part of the numeric embedding; handy for dimension checks.
    pub fn approx_real(&self) -> f64 {
        self.to_complex_approx().re
    }
}

fn pow_bigint(base: &BigInt, exp: u32) -> BigInt {
    num::pow::pow(base.clone(), exp as usize)
}

/// Integer divisibility with the `0 | b iff b = 0` convention.
fn divides_int(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(n={}; {})", self.conductor, self)
    }
}

/// Human-readable polynomial-in-zeta form, e.g. `2 + z^2 - 1/2 z^5`.
impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", rational_to_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{} ", rational_to_string(&mag))?;
                }
                if j == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", j)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Rational string form: `p` when the denominator is 1, else `p/q`.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycloNumber", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u32,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let phi = euler_phi(raw.conductor);
        if raw.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}, got {}",
                phi,
                raw.conductor,
                raw.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(phi);
        for s in &raw.coeffs {
            coeffs.push(rational_from_str(s).map_err(D::Error::custom)?);
        }
        CycloNumber::make(raw.conductor, &coeffs).map_err(D::Error::custom)
    }
}

/// A univariate polynomial with rational coefficients, ascending degree.
/// Nonzero leading coefficient; produced monic by `minimal_polynomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() || coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::invalid("zero polynomial"));
        }
        Ok(RationalPolynomial { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&k| BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Exact evaluation at a field element (Horner).
    pub fn eval_in_field(&self, x: &CycloNumber) -> Result<CycloNumber> {
        let mut acc = CycloNumber::zero(x.conductor());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?;
            acc = acc.add(&CycloNumber::from_rational(x.conductor(), c.clone()))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{}", i)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
