//! Finite abelian groups presented as products of cyclic groups, their
//! homomorphisms, and quotient presentations with explicit coordinate maps.
//!
//! A [`FinAb`] is a list of moduli `[m1, ..., mk]`, each >= 2; elements are
//! integer vectors reduced componentwise. The trivial group is the empty
//! list. [`quotient_presentation`] is the workhorse shared by the cohomology
//! assembly, the Schur-multiplier cokernel, S-class-group quotients and the
//! abelianization of table groups.

use crate::snf::{smith_bounded, Int, Mat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FinAbError {
    #[error("modulus {0} is not allowed (must be >= 2)")]
    BadModulus(i64),
    #[error("element length {got} does not match rank {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("map does not respect source relations (column {0})")]
    NotHomomorphism(usize),
    #[error("group of order {0} too large to materialize as a table")]
    TooLarge(u128),
}

/// A finite abelian group `Z/m1 x ... x Z/mk`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinAb {
    moduli: Vec<i64>,
}

impl FinAb {
    pub fn new(moduli: Vec<i64>) -> Result<Self, FinAbError> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(FinAbError::BadModulus(m));
        }
        Ok(FinAb { moduli })
    }

    pub fn trivial() -> Self {
        FinAb { moduli: vec![] }
    }

    pub fn cyclic(m: i64) -> Self {
        FinAb::new(vec![m]).expect("cyclic modulus")
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.moduli.len()]
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.moduli.len());
        v.iter().zip(&self.moduli).map(|(&x, &m)| x.rem_euclid(m)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y).rem_euclid(m))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.moduli).map(|(&x, &m)| (-x).rem_euclid(m)).collect()
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((k as i128 * x as i128).rem_euclid(m as i128)) as i64)
            .collect()
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().zip(&self.moduli).all(|(&x, &m)| x.rem_euclid(m) == 0)
    }

    /// Mixed-radix index of a reduced element; identity is 0.
    pub fn index_of(&self, v: &[i64]) -> usize {
        let mut idx = 0usize;
        for (&x, &m) in v.iter().zip(&self.moduli) {
            idx = idx * m as usize + x.rem_euclid(m) as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let m = self.moduli[i] as usize;
            v[i] = (idx % m) as i64;
            idx /= m;
        }
        v
    }

    /// All elements in index order. Caller is responsible for size sanity.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order() as usize).map(|i| self.element_at(i))
    }

    /// Order of an element.
    pub fn element_order(&self, v: &[i64]) -> i64 {
        self.moduli
            .iter()
            .zip(v)
            .map(|(&m, &x)| {
                let x = x.rem_euclid(m);
                if x == 0 {
                    1
                } else {
                    m / num_integer::gcd(m, x)
                }
            })
            .fold(1i64, num_integer::lcm)
    }
}

/// A homomorphism between finite abelian groups, given by the images of the
/// source generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinAbHom {
    pub source: FinAb,
    pub target: FinAb,
    /// `images[i]` = image of the i-th source generator, reduced in target.
    pub images: Vec<Vec<i64>>,
}

impl FinAbHom {
    pub fn new(source: FinAb, target: FinAb, images: Vec<Vec<i64>>) -> Result<Self, FinAbError> {
        if images.len() != source.rank() {
            return Err(FinAbError::LengthMismatch { got: images.len(), want: source.rank() });
        }
        let images: Vec<Vec<i64>> = images.iter().map(|v| target.reduce(v)).collect();
        for (i, img) in images.iter().enumerate() {
            // m_i * image_i must vanish in the target
            let scaled = target.scale(source.moduli()[i], img);
            if !target.is_zero(&scaled) {
                return Err(FinAbError::NotHomomorphism(i));
            }
        }
        Ok(FinAbHom { source, target, images })
    }

    pub fn identity(g: &FinAb) -> Self {
        let images = (0..g.rank())
            .map(|i| {
                let mut v = g.zero();
                v[i] = 1;
                v
            })
            .collect();
        FinAbHom { source: g.clone(), target: g.clone(), images }
    }

    pub fn zero(source: &FinAb, target: &FinAb) -> Self {
        FinAbHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.zero(); source.rank()],
        }
    }

    /// The canonical embedding `Z/p^n -> Z/p^{n+1}`, `1 -> p`.
    pub fn cyclic_multiplier_embedding(pn: i64, pn1: i64) -> Result<Self, FinAbError> {
        assert_eq!(pn1 % pn, 0, "target modulus must be a multiple of the source");
        FinAbHom::new(FinAb::cyclic(pn), FinAb::cyclic(pn1), vec![vec![pn1 / pn]])
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = self.target.zero();
        for (x, img) in v.iter().zip(&self.images) {
            out = self.target.add(&out, &self.target.scale(*x, img));
        }
        out
    }
}

/// A finite abelian quotient `Z^k / <diag(moduli), relations>` in invariant
/// factor form, with an explicit coordinate map and lifts.
#[derive(Debug, Clone)]
pub struct QuotientStructure {
    /// Invariant factors > 1, in divisibility order.
    pub factors: Vec<i64>,
    /// Rows of the row transform for the kept factors: coordinate j of an
    /// element `x` in `Z^k` is `coord_rows[j] . x  mod factors[j]`.
    coord_rows: Vec<Vec<Int>>,
    /// Lifts of the factor generators back to `Z^k`.
    lifts: Vec<Vec<Int>>,
    k: usize,
}

impl QuotientStructure {
    pub fn coords(&self, x: &[Int]) -> Vec<i64> {
        assert_eq!(x.len(), self.k);
        self.coord_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, &f)| {
                let s: Int = row.iter().zip(x).map(|(&r, &xi)| r * xi).sum();
                s.rem_euclid(f as Int) as i64
            })
            .collect()
    }

    /// A representative in `Z^k` of the j-th factor generator.
    pub fn lift(&self, j: usize) -> &[Int] {
        &self.lifts[j]
    }

    pub fn group(&self) -> FinAb {
        FinAb::new(self.factors.clone()).expect("invariant factors >= 2")
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&f| f as u128).product()
    }
}

/// Present `(Z/m1 x ... x Z/mk) / <relations>` in invariant factor form.
///
/// `relations` are vectors in `Z^k` taken modulo the moduli. The result maps
/// coordinates both ways, so callers can both classify elements and lift
/// canonical generators.
pub fn quotient_presentation(moduli: &[i64], relations: &[Vec<Int>]) -> QuotientStructure {
    let k = moduli.len();
    if k == 0 {
        return QuotientStructure { factors: vec![], coord_rows: vec![], lifts: vec![], k };
    }
    let mut cols: Vec<Vec<Int>> = Vec::with_capacity(k + relations.len());
    for (i, &m) in moduli.iter().enumerate() {
        let mut c = vec![0 as Int; k];
        c[i] = m as Int;
        cols.push(c);
    }
    for r in relations {
        assert_eq!(r.len(), k);
        cols.push(r.clone());
    }
    // relation matrix: k rows, one column per relation
    let mut mat = Mat::zero(k, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            mat[(i, j)] = v;
        }
    }
    let exponent: Int = moduli.iter().fold(1 as Int, |acc, &m| num_integer::lcm(acc, m as Int));
    let s = smith_bounded(&mat, exponent, [true, true, false, false]);
    let u = s.u.expect("u requested");
    let u_inv = s.u_inv.expect("u_inv requested");
    // Z^k / col(M) = sum Z/d_i via x -> (U x)_i; all d_i > 0 here because the
    // moduli columns make the quotient finite.
    let mut factors = Vec::new();
    let mut coord_rows = Vec::new();
    let mut lifts = Vec::new();
    for i in 0..k {
        let d = s.diag[i];
        assert!(d > 0, "quotient of a finite group must be finite");
        if d > 1 {
            factors.push(d as i64);
            coord_rows.push(u.row(i).to_vec());
            lifts.push((0..k).map(|r| u_inv[(r, i)]).collect());
        }
    }
    QuotientStructure { factors, coord_rows, lifts, k }
}

/// Invariant factors of an abelian group given by an arbitrary associative,
/// commutative multiplication closure on `0..n` with `identity = 0`, together
/// with coordinates for every element.
///
/// Used for abelianizations of table groups and for form class groups, where
/// the composition law is a closure rather than a table.
pub struct AbelianStructure {
    pub factors: Vec<i64>,
    /// Coordinates of each element `0..n` in the invariant factors.
    pub coords: Vec<Vec<i64>>,
    /// For each invariant factor, an element of `0..n` generating it.
    pub generators: Vec<usize>,
}

pub fn abelian_structure(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<AbelianStructure, FinAbError> {
    if n == 1 {
        return Ok(AbelianStructure { factors: vec![], coords: vec![vec![]], generators: vec![] });
    }
    let order_of = |g: usize| -> i64 {
        let mut x = g;
        let mut o = 1i64;
        while x != 0 {
            x = mul(x, g);
            o += 1;
        }
        o
    };
    // greedy generating set by smallest element index
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    let mut span_count = 1usize;
    for g in 1..n {
        if span[g] {
            continue;
        }
        gens.push(g);
        // close the span under the new generator
        let mut frontier: Vec<usize> = (0..n).filter(|&x| span[x]).collect();
        while let Some(x) = frontier.pop() {
            let y = mul(x, g);
            if !span[y] {
                span[y] = true;
                span_count += 1;
                frontier.push(y);
            }
        }
        if span_count == n {
            break;
        }
    }
    let orders: Vec<i64> = gens.iter().map(|&g| order_of(g)).collect();
    let domain: u128 = orders.iter().map(|&o| o as u128).product();
    if domain > (1 << 22) {
        return Err(FinAbError::TooLarge(domain));
    }
    // enumerate exponent vectors; record first-visit coordinates and all
    // relations landing on the identity
    let k = gens.len();
    let mut exp = vec![0i64; k];
    let mut elem = 0usize;
    let mut first_exp: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut relations: Vec<Vec<Int>> = Vec::new();
    for _ in 0..domain {
        if elem == 0 && exp.iter().any(|&e| e != 0) {
            relations.push(exp.iter().map(|&e| e as Int).collect());
        }
        if first_exp[elem].is_none() {
            first_exp[elem] = Some(exp.clone());
        }
        // increment mixed-radix exponent vector, updating the running product
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            exp[i] += 1;
            elem = mul(elem, gens[i]);
            if exp[i] < orders[i] {
                break;
            }
            // wrapped: g^order = identity, so the product is already correct
            exp[i] = 0;
        }
    }
    let moduli: Vec<i64> = orders.clone();
    let q = quotient_presentation(&moduli, &relations);
    let coords: Vec<Vec<i64>> = (0..n)
        .map(|e| {
            let exps = first_exp[e].as_ref().expect("generators span the group");
            let x: Vec<Int> = exps.iter().map(|&v| v as Int).collect();
            q.coords(&x)
        })
        .collect();
    // an element generating each factor: lift the factor generator
    let generators: Vec<usize> = (0..q.factors.len())
        .map(|j| {
            let lift = q.lift(j);
            let mut e = 0usize;
            for (i, &c) in lift.iter().enumerate() {
                let c = c.rem_euclid(orders[i] as Int) as i64;
                for _ in 0..c {
                    e = mul(e, gens[i]);
                }
            }
            e
        })
        .collect();
    Ok(AbelianStructure { factors: q.factors, coords, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let g = FinAb::new(vec![4, 6]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.add(&[3, 5], &[2, 2]), vec![1, 1]);
        assert_eq!(g.neg(&[1, 0]), vec![3, 0]);
        assert_eq!(g.element_order(&[2, 0]), 2);
        assert_eq!(g.element_order(&[1, 1]), 12);
        let idx = g.index_of(&[3, 5]);
        assert_eq!(g.element_at(idx), vec![3, 5]);
    }

    #[test]
    fn rejects_bad_modulus() {
        assert_eq!(FinAb::new(vec![4, 1]), Err(FinAbError::BadModulus(1)));
    }

    #[test]
    fn hom_validation() {
        let z2 = FinAb::cyclic(2);
        let z4 = FinAb::cyclic(4);
        // 1 -> 1 is not a hom Z/2 -> Z/4 (2*1 != 0 mod 4)
        assert!(FinAbHom::new(z2.clone(), z4.clone(), vec![vec![1]]).is_err());
        // 1 -> 2 is
        let h = FinAbHom::cyclic_multiplier_embedding(2, 4).unwrap();
        assert_eq!(h.apply(&[1]), vec![2]);
        let _ = z2;
    }

    #[test]
    fn quotient_of_z4z2_by_diagonal() {
        // (Z/4 x Z/2) / <(2,1)> has order 4; it is cyclic of order 4
        let q = quotient_presentation(&[4, 2], &[vec![2, 1]]);
        assert_eq!(q.factors, vec![4]);
        assert_eq!(q.order(), 4);
        // (2,1) maps to zero
        assert_eq!(q.coords(&[2, 1]), vec![0]);
        // (1,0) generates
        assert_ne!(q.coords(&[1, 0]), vec![0]);
    }

    #[test]
    fn quotient_trivial_cases() {
        let q = quotient_presentation(&[2, 2], &[vec![1, 0], vec![0, 1]]);
        assert!(q.factors.is_empty());
        let q = quotient_presentation(&[6], &[]);
        assert_eq!(q.factors, vec![6]);
    }

    #[test]
    fn abelian_structure_of_product() {
        // Z/6 as a closure
        let s = abelian_structure(6, |a, b| (a + b) % 6).unwrap();
        assert_eq!(s.factors, vec![6]);
        // Klein four as bit xor
        let s = abelian_structure(4, |a, b| a ^ b).unwrap();
        assert_eq!(s.factors, vec![2, 2]);
        // coordinates really are homomorphic
        for a in 0..4usize {
            for b in 0..4usize {
                let g = FinAb::new(s.factors.clone()).unwrap();
                let sum = g.add(&s.coords[a], &s.coords[b]);
                assert_eq!(sum, s.coords[a ^ b]);
            }
        }
    }
}
