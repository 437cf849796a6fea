//! Binary quadratic forms `(a, b, c)` of negative fundamental discriminant,
//! Gauss composition, class groups, and S-class-group quotients.
//!
//! Reduced positive-definite forms biject with ideal classes of the order of
//! discriminant `D = b² - 4ac`; enumeration of reduced forms is therefore an
//! independent oracle for the class number, and the composition structure is
//! required to be consistent with it.

use super::ArithError;
use crate::finab::{abelian_structure, quotient_presentation};
use crate::snf::Int;
use serde::{Deserialize, Serialize};

/// A primitive positive-definite binary quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        i64::try_from(d).expect("discriminant fits")
    }

    pub fn is_primitive(&self) -> bool {
        num_integer::gcd(num_integer::gcd(self.a, self.b), self.c) == 1
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        if self.a <= 0 {
            return false;
        }
        let ab = self.b.abs();
        if ab > self.a || self.a > self.c {
            return false;
        }
        if (ab == self.a || self.a == self.c) && self.b < 0 {
            return false;
        }
        true
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: i64) -> Self {
        if d.rem_euclid(4) == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, (1 - d) / 4)
        }
    }

    /// The inverse class representative `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }

    /// Classical reduction loop for positive-definite forms.
    pub fn reduce(&self) -> QuadForm {
        let d = self.discriminant();
        debug_assert!(d < 0);
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if c < a {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if b.abs() > a {
                // shift b into (-a, a]
                let two_a = 2 * a;
                let mut nb = b.rem_euclid(two_a);
                if nb > a {
                    nb -= two_a;
                }
                let nc = (nb * nb - d as i128) / (4 * a);
                b = nb;
                c = nc;
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                b = -b;
                continue;
            }
            break;
        }
        let f = QuadForm::new(a as i64, b as i64, c as i64);
        debug_assert!(f.is_reduced());
        debug_assert_eq!(f.discriminant(), d);
        f
    }

    /// Gauss composition followed by reduction. Both forms must be primitive
    /// with the same discriminant.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm, ArithError> {
        let d = self.discriminant();
        if d != other.discriminant() {
            return Err(ArithError::DiscriminantMismatch);
        }
        if !self.is_primitive() || !other.is_primitive() {
            return Err(ArithError::NotPrimitive);
        }
        let (a1, b1, c1) = (self.a as i128, self.b as i128, self.c as i128);
        let (a2, b2, c2) = (other.a as i128, other.b as i128, other.c as i128);
        let _ = c1;
        let s = (b1 + b2) / 2;
        // g = u a1 + v a2 + w s
        let (g1, u1, v1) = xgcd128(a1, a2);
        let (g, t, w) = xgcd128(g1, s);
        let (u, v) = (u1 * t, v1 * t);
        debug_assert_eq!(u * a1 + v * a2 + w * s, g);
        let _ = u;
        let a3 = a1 / g * (a2 / g);
        let inner = v * ((b1 - b2) / 2) - w * c2;
        debug_assert_eq!((a2 * inner) % g, 0);
        let b_raw = b2 + 2 * (a2 / g) * inner;
        let two_a3 = 2 * a3;
        let mut b3 = b_raw.rem_euclid(two_a3);
        if b3 > a3 {
            b3 -= two_a3;
        }
        debug_assert_eq!((b3 * b3 - d as i128).rem_euclid(4 * a3), 0);
        let c3 = (b3 * b3 - d as i128) / (4 * a3);
        let f = QuadForm::new(a3 as i64, b3 as i64, c3 as i64).reduce();
        debug_assert!(f.is_primitive());
        Ok(f)
    }
}

fn xgcd128(a: i128, b: i128) -> (i128, i128, i128) {
    let (g, s, t) = crate::snf::xgcd(a, b);
    (g, s, t)
}

/// `d` is a fundamental discriminant: `d ≡ 1 mod 4` squarefree, or
/// `d = 4m` with `m ≡ 2, 3 mod 4` squarefree.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        squarefree(-d)
    } else if r == 0 {
        let m = d / 4;
        let mr = m.rem_euclid(4);
        (mr == 2 || mr == 3) && squarefree(-m)
    } else {
        false
    }
}

fn squarefree(n: i64) -> bool {
    debug_assert!(n > 0);
    let mut n = n;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Kronecker symbol `(d | n)` for positive `n`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    let mut a = d;
    let mut n = n as i64;
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    // factor out 2s of n
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The class group of a negative fundamental discriminant: all reduced
/// forms, composition on their indices, and the abelian structure.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub discriminant: i64,
    /// Sorted reduced forms; index 0 is the principal form.
    pub forms: Vec<QuadForm>,
    /// Invariant factors of the group.
    pub structure: Vec<i64>,
    /// Coordinates of each form class in the invariant factors.
    pub coords: Vec<Vec<i64>>,
}

/// JSON form of a class group computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassGroupDump {
    pub discriminant: i64,
    pub h: usize,
    pub structure: Vec<i64>,
    pub forms: Vec<[i64; 3]>,
}

impl ClassGroup {
    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn form_index(&self, f: &QuadForm) -> Option<usize> {
        let r = f.reduce();
        self.forms.binary_search(&r).ok()
    }

    /// Composition on form indices.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let f = self.forms[i].compose(&self.forms[j]).expect("same discriminant");
        self.form_index(&f).expect("composition of reduced forms is reduced")
    }

    /// Class of a prime `q`: a reduced form `(q, b, *)` when `q` splits or
    /// ramifies, None when `q` is inert.
    pub fn prime_class(&self, q: u64) -> Option<usize> {
        if kronecker(self.discriminant, q) == -1 {
            return None;
        }
        let d = self.discriminant;
        let qq = q as i64;
        let mut b = d.rem_euclid(2);
        while b <= 2 * qq {
            let num = b as i128 * b as i128 - d as i128;
            if num % (4 * qq as i128) == 0 {
                let c = num / (4 * qq as i128);
                let f = QuadForm::new(qq, b, c as i64);
                if f.is_primitive() {
                    return self.form_index(&f.reduce());
                }
            }
            b += 2;
        }
        None
    }

    pub fn to_dump(&self) -> ClassGroupDump {
        ClassGroupDump {
            discriminant: self.discriminant,
            h: self.h(),
            structure: self.structure.clone(),
            forms: self.forms.iter().map(|f| [f.a, f.b, f.c]).collect(),
        }
    }
}

/// Enumerate all reduced primitive forms of a negative fundamental
/// discriminant and assemble the class group.
pub fn class_group(d: i64) -> Result<ClassGroup, ArithError> {
    if d >= 0 {
        return Err(ArithError::NotImaginary(d));
    }
    if d < -(1 << 40) {
        return Err(ArithError::DiscriminantTooLarge(d));
    }
    if !is_fundamental(d) {
        return Err(ArithError::NotFundamental(d));
    }
    let mut forms = Vec::new();
    let bound = (((-d) as f64) / 3.0).sqrt() as i64 + 1;
    for a in 1..=bound {
        let mut b = -a + 1;
        // b ≡ d (mod 2)
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b as i128 * b as i128 - d as i128;
            if num % (4 * a as i128) == 0 {
                let c = num / (4 * a as i128);
                if c >= a as i128 && c <= i64::MAX as i128 {
                    let f = QuadForm::new(a, b, c as i64);
                    if f.is_reduced() && f.is_primitive() {
                        forms.push(f);
                    }
                }
            }
            b += 2;
        }
    }
    forms.sort_unstable();
    // identity must be the principal form; put it first for index 0
    let principal = QuadForm::principal(d);
    let pidx = forms.binary_search(&principal).expect("principal form is reduced");
    forms.swap(0, pidx);
    let head = forms[0];
    let mut tail: Vec<QuadForm> = forms[1..].to_vec();
    tail.sort_unstable();
    let mut forms = vec![head];
    forms.extend(tail);

    // composition closure and abelian structure on indices
    let lookup = |f: &QuadForm, forms: &[QuadForm]| -> usize {
        forms.iter().position(|g| g == f).expect("closed under composition")
    };
    let forms_ref = forms.clone();
    let mul = |i: usize, j: usize| -> usize {
        let f = forms_ref[i].compose(&forms_ref[j]).expect("same discriminant");
        lookup(&f, &forms_ref)
    };
    let st = abelian_structure(forms.len(), mul)
        .map_err(|_| ArithError::DiscriminantTooLarge(d))?;
    Ok(ClassGroup { discriminant: d, forms, structure: st.factors, coords: st.coords })
}

/// An S-class group: the quotient of a class group by the subgroup generated
/// by the classes of the primes in S.
#[derive(Debug, Clone)]
pub struct SClassGroup {
    pub discriminant: i64,
    pub s_primes: Vec<u64>,
    /// Form indices of the removed classes.
    pub removed: Vec<usize>,
    /// Invariant factors of the quotient.
    pub structure: Vec<i64>,
}

impl SClassGroup {
    pub fn order(&self) -> u128 {
        self.structure.iter().map(|&f| f as u128).product()
    }

    /// Invariant factors of `(this group) / p`.
    pub fn quotient_mod(&self, p: u64) -> Vec<i64> {
        self.structure
            .iter()
            .map(|&f| num_integer::gcd(f, p as i64))
            .filter(|&g| g > 1)
            .collect()
    }
}

/// Quotient of the class group by the classes of the given primes.
/// Fails with `InertPrime` if any prime is inert.
pub fn s_class_group(cg: &ClassGroup, s_primes: &[u64]) -> Result<SClassGroup, ArithError> {
    let mut removed = Vec::with_capacity(s_primes.len());
    for &q in s_primes {
        let idx = cg.prime_class(q).ok_or(ArithError::InertPrime(q))?;
        removed.push(idx);
    }
    let rels: Vec<Vec<Int>> = removed
        .iter()
        .map(|&i| cg.coords[i].iter().map(|&v| v as Int).collect())
        .collect();
    let q = quotient_presentation(&cg.structure, &rels);
    Ok(SClassGroup {
        discriminant: cg.discriminant,
        s_primes: s_primes.to_vec(),
        removed,
        structure: q.factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_minus_four() {
        let cg = class_group(-4).unwrap();
        assert_eq!(cg.h(), 1);
        assert_eq!(cg.forms, vec![QuadForm::new(1, 0, 1)]);
        assert!(cg.structure.is_empty());
    }

    #[test]
    fn discriminant_minus_84() {
        let cg = class_group(-84).unwrap();
        assert_eq!(cg.h(), 4);
        let mut forms = cg.forms.clone();
        forms.sort_unstable();
        assert_eq!(
            forms,
            vec![
                QuadForm::new(1, 0, 21),
                QuadForm::new(2, 2, 11),
                QuadForm::new(3, 0, 7),
                QuadForm::new(5, 4, 5),
            ]
        );
        assert_eq!(cg.structure, vec![2, 2]);
    }

    #[test]
    fn discriminant_minus_23_is_cyclic() {
        let cg = class_group(-23).unwrap();
        assert_eq!(cg.h(), 3);
        let mut forms = cg.forms.clone();
        forms.sort_unstable();
        assert_eq!(
            forms,
            vec![QuadForm::new(1, 1, 6), QuadForm::new(2, -1, 3), QuadForm::new(2, 1, 3)]
        );
        assert_eq!(cg.structure, vec![3]);
    }

    #[test]
    fn rejects_bad_discriminants() {
        assert_eq!(class_group(5).unwrap_err(), ArithError::NotImaginary(5));
        assert_eq!(class_group(-12).unwrap_err(), ArithError::NotFundamental(-12));
        assert_eq!(class_group(-25).unwrap_err(), ArithError::NotFundamental(-25));
        // -84 = 4 * -21, -21 ≡ 3 mod 4 squarefree: fundamental
        assert!(is_fundamental(-84));
        assert!(is_fundamental(-23));
        assert!(!is_fundamental(-100));
    }

    #[test]
    fn composition_group_axioms_m84() {
        let cg = class_group(-84).unwrap();
        let n = cg.h();
        // identity
        for i in 0..n {
            assert_eq!(cg.compose(0, i), i);
            assert_eq!(cg.compose(i, 0), i);
        }
        // inverses and commutativity
        for i in 0..n {
            let inv = cg.form_index(&cg.forms[i].inverse()).unwrap();
            assert_eq!(cg.compose(i, inv), 0);
            for j in 0..n {
                assert_eq!(cg.compose(i, j), cg.compose(j, i));
            }
        }
        // every class has order dividing the group order
        for i in 0..n {
            let mut acc = 0usize;
            for _ in 0..n {
                acc = cg.compose(acc, i);
            }
            assert_eq!(acc, 0);
        }
    }

    #[test]
    fn prime_classes() {
        let cg = class_group(-84).unwrap();
        // 2 ramifies; its class is (2, 2, 11) of order 2
        let idx = cg.prime_class(2).unwrap();
        assert_eq!(cg.forms[idx], QuadForm::new(2, 2, 11));
        assert_eq!(cg.compose(idx, idx), 0);
        // 13 is inert: (-84 | 13) = -1
        assert_eq!(kronecker(-84, 13), -1);
        assert!(cg.prime_class(13).is_none());
        // 11 splits: (-84 | 11) = 1
        assert_eq!(kronecker(-84, 11), 1);
        assert!(cg.prime_class(11).is_some());

        // 5 = 1 + 4 splits principally for D = -4
        let cg4 = class_group(-4).unwrap();
        assert_eq!(cg4.prime_class(5), Some(0));
    }

    #[test]
    fn ramified_classes_have_order_two() {
        for d in [-84i64, -20, -24, -40] {
            if !is_fundamental(d) {
                continue;
            }
            let cg = class_group(d).unwrap();
            for q in [2u64, 3, 5, 7] {
                if kronecker(d, q) == 0 {
                    if let Some(i) = cg.prime_class(q) {
                        assert_eq!(cg.compose(i, i), 0, "d={d} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn s_class_group_of_m84() {
        let cg = class_group(-84).unwrap();
        let s = s_class_group(&cg, &[2]).unwrap();
        assert_eq!(s.structure, vec![2]);
        assert_eq!(s.quotient_mod(2), vec![2]);
        // removing a generating set trivializes
        let all = s_class_group(&cg, &[2, 3, 5]).unwrap();
        assert!(all.order() <= 2);
        // empty S keeps everything
        let none = s_class_group(&cg, &[]).unwrap();
        assert_eq!(none.structure, cg.structure);
        // inert prime rejected
        assert_eq!(s_class_group(&cg, &[13]).unwrap_err(), ArithError::InertPrime(13));
    }

    #[test]
    fn order_counts_match_quotient() {
        let cg = class_group(-84).unwrap();
        let s = s_class_group(&cg, &[2]).unwrap();
        let removed_order = 2u128; // class of 2 has order 2
        assert_eq!(s.order() * removed_order, cg.h() as u128);
    }
}
