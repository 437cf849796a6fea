//! Number-theoretic hypothesis checks: imaginary quadratic class groups via
//! binary quadratic forms, S-class-group quotients, irregular primes via the
//! Kummer criterion, and small cokernel diagrams of finite abelian groups.

mod bernoulli;
mod forms;

pub use bernoulli::{
    bernoulli_mod_p, exact_bernoulli, irregular_indices, irregular_indices_seq, is_irregular,
    is_prime, von_staudt_clausen_denominator,
};
#[cfg(feature = "parallel")]
pub use bernoulli::irregular_indices_par;
pub use forms::{class_group, is_fundamental, kronecker, s_class_group, ClassGroup,
    ClassGroupDump, QuadForm, SClassGroup};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("discriminant {0} is not negative")]
    NotImaginary(i64),
    #[error("discriminant {0} is not fundamental")]
    NotFundamental(i64),
    #[error("discriminant {0} out of supported range")]
    DiscriminantTooLarge(i64),
    #[error("prime {0} is inert in the field")]
    InertPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {0} exceeds the supported bound 10^4")]
    PrimeTooLarge(u64),
    #[error("degree must satisfy p | d with d/p > 1")]
    BadDegree,
    #[error("forms have different discriminants")]
    DiscriminantMismatch,
    #[error("form is not primitive")]
    NotPrimitive,
}

/// The cokernel comparison for `Z -> μ_d` on a class group: with `d = p m`,
/// the pushforward `i*` on H² over the S-integers is surjective exactly when
/// `Pic/m` vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokerReport {
    pub pic: Vec<i64>,
    pub p: u64,
    pub d: u64,
    pub m: u64,
    pub pic_mod_d: Vec<i64>,
    pub pic_mod_m: Vec<i64>,
    pub i_star_surjective: bool,
}

/// Quotients `Pic/d` and `Pic/m` for `d = p m`, `m > 1`, and whether the
/// induced map on H² is surjective (`Pic/m = 0`).
pub fn coker_diagram(pic: &[i64], p: u64, d: u64) -> Result<CokerReport, ArithError> {
    if p == 0 || d % p != 0 || d / p <= 1 {
        return Err(ArithError::BadDegree);
    }
    let m = d / p;
    let modded = |k: u64| -> Vec<i64> {
        pic.iter()
            .map(|&f| num_integer::gcd(f, k as i64))
            .filter(|&g| g > 1)
            .collect()
    };
    let pic_mod_d = modded(d);
    let pic_mod_m = modded(m);
    let i_star_surjective = pic_mod_m.is_empty();
    Ok(CokerReport { pic: pic.to_vec(), p, d, m, pic_mod_d, pic_mod_m, i_star_surjective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coker_trivial_pic() {
        let r = coker_diagram(&[], 2, 4).unwrap();
        assert!(r.i_star_surjective);
        assert!(r.pic_mod_d.is_empty());
    }

    #[test]
    fn coker_z2_not_surjective() {
        let r = coker_diagram(&[2], 2, 4).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.pic_mod_m, vec![2]);
        assert!(!r.i_star_surjective);
    }

    #[test]
    fn coker_z3_surjective_for_p2() {
        let r = coker_diagram(&[3], 2, 4).unwrap();
        assert!(r.pic_mod_m.is_empty());
        assert!(r.i_star_surjective);
    }

    #[test]
    fn coker_rejects_bad_degrees() {
        assert_eq!(coker_diagram(&[2], 2, 2), Err(ArithError::BadDegree));
        assert_eq!(coker_diagram(&[2], 3, 4), Err(ArithError::BadDegree));
    }
}
