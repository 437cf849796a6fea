//! Irregular primes via the Kummer criterion: indices of even Bernoulli
//! numbers divisible by p.
//!
//! Three independent routes exist:
//!
//! - the production path evaluates the power-sum congruence
//!   `S_k(p) = sum_{a<p} a^k ≡ p B_k (mod p²)` for even `2 <= k <= p-3`,
//!   so `p | B_k` iff `S_k(p) ≡ 0 (mod p²)`; the sweep over `k` is
//!   data-parallel over chunks of the base range;
//! - [`bernoulli_mod_p`] computes all `B_k mod p` by the binomial
//!   convolution recurrence (a second modular route);
//! - [`exact_bernoulli`] computes `B_k` as an exact big rational, with the
//!   von Staudt–Clausen denominator as a built-in consistency check.

use super::ArithError;
use crate::par;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const PRIME_BOUND: u64 = 10_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<(), ArithError> {
    if p > PRIME_BOUND {
        return Err(ArithError::PrimeTooLarge(p));
    }
    if p < 3 || !is_prime(p) {
        return Err(ArithError::NotOddPrime(p));
    }
    Ok(())
}

/// Power sums `S_k(p) mod p²` for all even k in `[2, p-3]`, computed by
/// maintaining running powers of every base over a chunk of `1..p`.
fn even_power_sums_chunk(p: u64, a_range: std::ops::Range<u64>) -> Vec<u64> {
    let p2 = (p * p) as u128;
    let ks: usize = if p >= 5 { ((p - 3) / 2) as usize } else { 0 };
    let mut sums = vec![0u64; ks];
    let mut pow: Vec<u128> = a_range.clone().map(|a| (a as u128 * a as u128) % p2).collect();
    let sq: Vec<u128> = pow.clone();
    for sum in sums.iter_mut() {
        let mut acc: u128 = 0;
        for v in pow.iter() {
            acc += *v;
            if acc >= p2 * 4 {
                acc %= p2;
            }
        }
        *sum = (acc % p2) as u64;
        for (v, s) in pow.iter_mut().zip(&sq) {
            *v = *v * *s % p2;
        }
    }
    sums
}

fn irregular_indices_impl(p: u64, parallel: bool) -> Vec<u64> {
    if p < 5 {
        return vec![];
    }
    let nchunks = if parallel { 16 } else { 1 };
    let chunk = (p - 1).div_ceil(nchunks) as usize;
    let ranges: Vec<std::ops::Range<u64>> = (1..p)
        .step_by(chunk.max(1))
        .map(|start| start..(start + chunk as u64).min(p))
        .collect();
    let partials = if parallel {
        par::map_vec(&ranges, |r| even_power_sums_chunk(p, r.clone()))
    } else {
        par::map_vec_seq(&ranges, |r| even_power_sums_chunk(p, r.clone()))
    };
    let p2 = p * p;
    let ks = ((p - 3) / 2) as usize;
    let mut totals = vec![0u64; ks];
    for part in partials {
        for (t, v) in totals.iter_mut().zip(part) {
            *t = (*t + v) % p2;
        }
    }
    // S_k(p) ≡ p B_k (mod p²), so p | B_k  iff  S_k(p) ≡ 0 (mod p²)
    totals
        .iter()
        .enumerate()
        .filter_map(|(i, &s)| (s == 0).then_some(2 * (i as u64 + 1)))
        .collect()
}

/// Even indices `2 <= k <= p-3` with `p | B_k`, via the power-sum
/// congruence; parallel when the `parallel` feature is enabled.
pub fn irregular_indices(p: u64) -> Result<Vec<u64>, ArithError> {
    check_odd_prime(p)?;
    Ok(irregular_indices_impl(p, cfg!(feature = "parallel")))
}

/// Sequential twin of [`irregular_indices`].
pub fn irregular_indices_seq(p: u64) -> Result<Vec<u64>, ArithError> {
    check_odd_prime(p)?;
    Ok(irregular_indices_impl(p, false))
}

/// Forced-parallel twin (for the benchmarks).
#[cfg(feature = "parallel")]
pub fn irregular_indices_par(p: u64) -> Result<Vec<u64>, ArithError> {
    check_odd_prime(p)?;
    Ok(irregular_indices_impl(p, true))
}

/// Kummer criterion: `(irregular?, indices)`.
pub fn is_irregular(p: u64) -> Result<(bool, Vec<u64>), ArithError> {
    let indices = irregular_indices(p)?;
    Ok((!indices.is_empty(), indices))
}

/// All `B_k mod p` for `0 <= k <= p-3`, by the binomial convolution
/// recurrence `B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j` (second modular
/// route, independent of the power-sum path).
pub fn bernoulli_mod_p(p: u64) -> Result<Vec<u64>, ArithError> {
    check_odd_prime(p)?;
    let kmax = (p - 3) as usize;
    let inv = |a: u64| -> u64 {
        // Fermat inverse
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut b = vec![0u64; kmax + 1];
    b[0] = 1;
    // binomial row C(k+1, j) maintained incrementally
    for k in 1..=kmax {
        // C(k+1, j) for j = 0..k
        let mut binom = 1u64; // C(k+1, 0)
        let mut sum = 0u128;
        for (j, bj) in b.iter().enumerate().take(k) {
            sum = (sum + binom as u128 * *bj as u128) % p as u128;
            // C(k+1, j+1) = C(k+1, j) * (k+1-j) / (j+1)
            binom = (binom as u128 * ((k as u64 + 1 - j as u64) % p) as u128 % p as u128) as u64;
            binom = (binom as u128 * inv(j as u64 + 1) as u128 % p as u128) as u64;
        }
        let minus = (p as u128 - sum % p as u128) % p as u128;
        b[k] = (minus * inv(k as u64 + 1) as u128 % p as u128) as u64;
    }
    Ok(b)
}

/// Exact Bernoulli number `B_k` (convention `B_1 = -1/2`), by the same
/// recurrence over big rationals.
pub fn exact_bernoulli(k: usize) -> BigRational {
    let mut b: Vec<BigRational> = Vec::with_capacity(k + 1);
    b.push(BigRational::one());
    for n in 1..=k {
        // sum_{j<n} C(n+1, j) B_j
        let mut binom = BigInt::one();
        let mut sum = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            sum += BigRational::from_integer(binom.clone()) * bj;
            binom = &binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        let np1 = BigRational::from_integer(BigInt::from(n + 1));
        b.push(-sum / np1);
    }
    b.pop().unwrap()
}

/// Denominator predicted by von Staudt–Clausen for even `k >= 2`:
/// the product of all primes `q` with `(q - 1) | k`.
pub fn von_staudt_clausen_denominator(k: u64) -> BigInt {
    debug_assert!(k >= 2 && k % 2 == 0);
    let mut d = BigInt::one();
    for q in 2..=(k + 1) {
        if is_prime(q) && k % (q - 1) == 0 {
            d *= BigInt::from(q);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_small_bernoulli_values() {
        let frac = |n: i64, d: i64| {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        };
        assert_eq!(exact_bernoulli(0), frac(1, 1));
        assert_eq!(exact_bernoulli(1), frac(-1, 2));
        assert_eq!(exact_bernoulli(2), frac(1, 6));
        assert_eq!(exact_bernoulli(4), frac(-1, 30));
        assert_eq!(exact_bernoulli(6), frac(1, 42));
        assert_eq!(exact_bernoulli(12), frac(-691, 2730));
        assert!(exact_bernoulli(7).is_zero());
    }

    #[test]
    fn von_staudt_clausen_matches_exact_denominators() {
        for k in (2..=30u64).step_by(2) {
            let b = exact_bernoulli(k as usize);
            assert_eq!(b.denom(), &von_staudt_clausen_denominator(k), "k = {k}");
        }
    }

    #[test]
    fn small_regular_primes() {
        for p in [3u64, 5, 7, 11, 13] {
            let (irr, idx) = is_irregular(p).unwrap();
            assert!(!irr, "p = {p} gave {idx:?}");
        }
    }

    #[test]
    fn thirty_seven_is_irregular_at_32() {
        let (irr, idx) = is_irregular(37).unwrap();
        assert!(irr);
        assert_eq!(idx, vec![32]);
    }

    #[test]
    fn classical_pairs() {
        assert_eq!(irregular_indices(59).unwrap(), vec![44]);
        assert_eq!(irregular_indices(67).unwrap(), vec![58]);
        assert_eq!(irregular_indices(101).unwrap(), vec![68]);
        assert_eq!(irregular_indices(157).unwrap(), vec![62, 110]);
        assert!(irregular_indices(691).unwrap().contains(&12));
    }

    #[test]
    fn modular_routes_agree() {
        for p in [5u64, 7, 11, 13, 37, 59, 97, 101, 131] {
            let via_power_sums = irregular_indices_seq(p).unwrap();
            let b = bernoulli_mod_p(p).unwrap();
            let via_recurrence: Vec<u64> = (2..=p - 3)
                .step_by(2)
                .filter(|&k| b[k as usize] == 0)
                .collect();
            assert_eq!(via_power_sums, via_recurrence, "p = {p}");
        }
    }

    #[test]
    fn modular_matches_exact_rationals() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let b = bernoulli_mod_p(p).unwrap();
            for k in (2..=p - 3).step_by(2) {
                let exact = exact_bernoulli(k as usize);
                // reduce the exact rational mod p (denominator is a unit)
                let num = exact.numer().clone();
                let den = exact.denom().clone();
                let nm = ((num % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let dm = ((den % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let nm: u64 = nm.try_into().unwrap();
                let dm: u64 = dm.try_into().unwrap();
                assert_ne!(dm, 0, "denominator must be a p-unit");
                let want = nm as u128 * mod_inv(dm, p) as u128 % p as u128;
                assert_eq!(b[k as usize] as u128, want, "p = {p}, k = {k}");
            }
        }
    }

    fn mod_inv(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(is_irregular(2).unwrap_err(), ArithError::NotOddPrime(2));
        assert_eq!(is_irregular(9).unwrap_err(), ArithError::NotOddPrime(9));
        assert_eq!(is_irregular(10_007).unwrap_err(), ArithError::PrimeTooLarge(10_007));
    }

    #[test]
    fn seq_matches_default() {
        for p in [37u64, 101, 157] {
            assert_eq!(irregular_indices(p).unwrap(), irregular_indices_seq(p).unwrap());
        }
    }
}
