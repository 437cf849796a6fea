//! Exact cyclotomic integer arithmetic in the power basis of `Z[ζ_m]`
//! modulo the m-th cyclotomic polynomial, and dense matrices over it with a
//! fraction-free determinant.
//!
//! Equality of elements is coefficient equality: the power basis
//! `1, ζ, ..., ζ^(φ(m)-1)` is a Z-basis, so representations are canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("exact division failed (quotient not integral)")]
    DivisionFailed,
}

/// Euler phi.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial (monic, integer coefficients), computed by
/// exact division of `x^m - 1` by the lower cyclotomic polynomials.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        // both monic; exact division
        let mut rem = num.to_vec();
        let dn = den.len() - 1;
        let mut quot = vec![BigInt::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn].clone();
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (j, d) in den.iter().enumerate() {
                let t = &c * d;
                rem[i + j] -= t;
            }
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        quot
    }

    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut result = num;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial_cached(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

fn cyclotomic_polynomial_cached(m: u32) -> Vec<BigInt> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    use std::sync::OnceLock;
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = cyclotomic_polynomial(m);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// An element of the ring of integers of the m-th cyclotomic field, in the
/// power basis of a primitive m-th root ζ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    conductor: u32,
    /// Length φ(m).
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(m: u32) -> Self {
        CycInt { conductor: m, coeffs: vec![BigInt::zero(); euler_phi(m) as usize] }
    }

    pub fn one(m: u32) -> Self {
        let mut c = CycInt::zero(m);
        c.coeffs[0] = BigInt::one();
        c
    }

    pub fn from_integer(m: u32, v: i64) -> Self {
        let mut c = CycInt::zero(m);
        c.coeffs[0] = BigInt::from(v);
        c
    }

    /// ζ^k, reduced into the power basis.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let kk = k.rem_euclid(m as i64) as usize;
        let phi = euler_phi(m) as usize;
        if kk < phi {
            let mut c = CycInt::zero(m);
            c.coeffs[kk] = BigInt::one();
            return c;
        }
        // reduce x^kk mod Φ_m
        let mut poly = vec![BigInt::zero(); kk + 1];
        poly[kk] = BigInt::one();
        CycInt { conductor: m, coeffs: reduce_mod_cyclotomic(m, poly) }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &CycInt) -> Result<(), CycError> {
        if self.conductor != other.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { conductor: self.conductor, coeffs })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { conductor: self.conductor, coeffs })
    }

    pub fn neg(&self) -> CycInt {
        CycInt { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt, CycError> {
        self.check(other)?;
        let phi = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycInt { conductor: self.conductor, coeffs: reduce_mod_cyclotomic(self.conductor, prod) })
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact division: `self = q * other` with `q` integral, if it exists.
    /// Solves the linear system given by the multiplication-by-`other`
    /// matrix over the rationals and verifies integrality.
    pub fn div_exact(&self, other: &CycInt) -> Result<CycInt, CycError> {
        self.check(other)?;
        if other.is_zero() {
            return Err(CycError::DivisionFailed);
        }
        let phi = self.coeffs.len();
        // columns: other * ζ^j in the power basis
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let zj = CycInt::zeta_pow(self.conductor, j as i64);
            cols.push(other.mul(&zj)?.coeffs);
        }
        // rational Gaussian elimination on [cols | self]
        let mut a: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                (0..phi)
                    .map(|c| BigRational::from_integer(cols[c][r].clone()))
                    .chain(std::iter::once(BigRational::from_integer(self.coeffs[r].clone())))
                    .collect()
            })
            .collect();
        let n = phi;
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, p);
            let inv = a[row][col].clone();
            for c in col..=n {
                a[row][c] = &a[row][c] / &inv;
            }
            for r in 0..n {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..=n {
                        let t = &factor * &a[row][c];
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == n {
                break;
            }
        }
        // read the solution; non-pivot columns get zero
        let mut sol = vec![BigRational::zero(); n];
        for &(r, c) in &pivots {
            sol[c] = a[r][n].clone();
        }
        // consistency of the remaining rows
        for r in row..n {
            if !a[r][n].is_zero() {
                return Err(CycError::DivisionFailed);
            }
        }
        let mut coeffs = Vec::with_capacity(n);
        for s in sol {
            if !s.denom().is_one() {
                return Err(CycError::DivisionFailed);
            }
            coeffs.push(s.numer().clone());
        }
        let q = CycInt { conductor: self.conductor, coeffs };
        // verify (guards against inconsistent systems with free columns)
        if q.mul(other)? != *self {
            return Err(CycError::DivisionFailed);
        }
        Ok(q)
    }

    /// Lift into the field of conductor `big` (a multiple of this one),
    /// substituting ζ_m = ζ_big^(big/m).
    pub fn lift_conductor(&self, big: u32) -> CycInt {
        assert_eq!(big % self.conductor, 0, "target conductor must be a multiple");
        if big == self.conductor {
            return self.clone();
        }
        let step = (big / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        CycInt { conductor: big, coeffs: reduce_mod_cyclotomic(big, poly) }
    }
}

/// Reduce an integer polynomial in ζ modulo Φ_m into the power basis.
fn reduce_mod_cyclotomic(m: u32, mut poly: Vec<BigInt>) -> Vec<BigInt> {
    let modulus = cyclotomic_polynomial_cached(m);
    let phi = modulus.len() - 1;
    // long division by the monic modulus
    for i in (phi..poly.len()).rev() {
        let c = poly[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, mj) in modulus.iter().enumerate() {
            let t = &c * mj;
            poly[i - phi + j] -= t;
        }
        debug_assert!(poly[i].is_zero());
    }
    poly.truncate(phi);
    poly.resize(phi, BigInt::zero());
    poly
}

/// A dense square matrix over `Z[ζ_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMat {
    pub dim: usize,
    pub conductor: u32,
    /// Row-major entries.
    pub entries: Vec<CycInt>,
}

impl CycMat {
    pub fn identity(dim: usize, m: u32) -> Self {
        let mut entries = vec![CycInt::zero(m); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = CycInt::one(m);
        }
        CycMat { dim, conductor: m, entries }
    }

    pub fn from_entries(dim: usize, m: u32, entries: Vec<CycInt>) -> Result<Self, CycError> {
        if entries.len() != dim * dim {
            return Err(CycError::DimensionMismatch);
        }
        if entries.iter().any(|e| e.conductor != m) {
            return Err(CycError::ConductorMismatch(m, 0));
        }
        Ok(CycMat { dim, conductor: m, entries })
    }

    pub fn at(&self, i: usize, j: usize) -> &CycInt {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &CycMat) -> Result<CycMat, CycError> {
        if self.dim != other.dim {
            return Err(CycError::DimensionMismatch);
        }
        if self.conductor != other.conductor {
            return Err(CycError::ConductorMismatch(self.conductor, other.conductor));
        }
        let n = self.dim;
        let mut entries = vec![CycInt::zero(self.conductor); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    entries[i * n + j] = entries[i * n + j].add(&prod)?;
                }
            }
        }
        Ok(CycMat { dim: n, conductor: self.conductor, entries })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let e = self.at(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn scale(&self, s: &CycInt) -> Result<CycMat, CycError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycMat { dim: self.dim, conductor: self.conductor, entries })
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting;
    /// every division is exact in `Z[ζ_m]`.
    pub fn determinant(&self) -> Result<CycInt, CycError> {
        let n = self.dim;
        let m = self.conductor;
        if n == 0 {
            return Ok(CycInt::one(m));
        }
        let mut a: Vec<Vec<CycInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = CycInt::one(m);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(CycInt::zero(m));
                };
                a.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t1 = a[k][k].mul(&a[i][j])?;
                    let t2 = a[i][k].mul(&a[k][j])?;
                    let num = t1.sub(&t2)?;
                    a[i][j] = num.div_exact(&prev)?;
                }
                a[i][k] = CycInt::zero(m);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign { det.neg() } else { det })
    }
}
