//! Monomial representations induced from faithful characters of central
//! cyclic subgroups, with exact verification: homomorphism property,
//! faithfulness, scalar center, determinant one, and prime-power dimension.

use crate::cyclotomic::{CycError, CycInt, CycMat};
use crate::finab::abelian_structure;
use crate::group::{FiniteGroup, Subgroup};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepresentError {
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("character exponent {0} is not faithful on a subgroup of order {1}")]
    NotFaithfulCharacter(u64, usize),
    #[error("subgroup is not central")]
    NotCentral,
    #[error("cyclotomic arithmetic failed: {0}")]
    Cyclotomic(#[from] CycError),
}

/// A matrix representation over cyclotomic integers: one matrix per group
/// element.
#[derive(Debug, Clone)]
pub struct Representation {
    pub group_order: usize,
    pub dim: usize,
    pub conductor: u32,
    pub matrices: Vec<CycMat>,
}

/// JSON form: matrices keyed by element index, entries as coefficient
/// vectors in the power basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationDump {
    pub conductor: u32,
    pub dim: usize,
    pub matrices: BTreeMap<String, Vec<Vec<Vec<String>>>>,
}

impl Representation {
    pub fn matrix(&self, g: usize) -> &CycMat {
        &self.matrices[g]
    }

    /// Trace of the matrix of `g`.
    pub fn trace(&self, g: usize) -> CycInt {
        let m = self.matrix(g);
        let mut t = CycInt::zero(self.conductor);
        for i in 0..self.dim {
            t = t.add(m.at(i, i)).expect("conductors match");
        }
        t
    }

    pub fn to_dump(&self) -> RepresentationDump {
        let matrices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let rows = (0..self.dim)
                    .map(|i| {
                        (0..self.dim)
                            .map(|j| {
                                m.at(i, j).coeffs().iter().map(|c| c.to_string()).collect()
                            })
                            .collect()
                    })
                    .collect();
                (g.to_string(), rows)
            })
            .collect();
        RepresentationDump { conductor: self.conductor, dim: self.dim, matrices }
    }
}

/// The monomial representation of `H` induced from the faithful character
/// `z -> ζ_m^k` of a central cyclic subgroup `Z` of order m (`gcd(k, m) = 1`),
/// on the transversal of smallest coset representatives:
/// `ρ(g)[i][j] = χ(t_i^{-1} g t_j)` when that element lies in Z, else 0.
pub fn induce_character(
    group: &FiniteGroup,
    z: &Subgroup,
    k: u64,
) -> Result<Representation, RepresentError> {
    let m = z.order();
    let zgen = z.cyclic_generator(group).ok_or(RepresentError::NotCyclic)?;
    if num_integer::gcd(k, m as u64) != 1 {
        return Err(RepresentError::NotFaithfulCharacter(k, m));
    }
    if !z.is_central(group) {
        return Err(RepresentError::NotCentral);
    }
    let n = group.order();
    let conductor = m as u32;

    // discrete log in Z with respect to the chosen generator
    let mut dlog: BTreeMap<usize, usize> = BTreeMap::new();
    let mut x = 0usize;
    for e in 0..m {
        dlog.insert(x, e);
        x = group.mul(x, zgen);
    }
    let chi = |zel: usize| -> CycInt {
        let e = dlog[&zel] as i64;
        CycInt::zeta_pow(conductor, e * k as i64)
    };

    // transversal: smallest element index per coset of Z
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g);
        for &zel in &z.members {
            coset_of[group.mul(g, zel)] = idx;
        }
    }
    let d = reps.len();

    let mut matrices = Vec::with_capacity(n);
    for g in 0..n {
        let mut entries = vec![CycInt::zero(conductor); d * d];
        for (j, &tj) in reps.iter().enumerate() {
            let gt = group.mul(g, tj);
            let i = coset_of[gt];
            let ti = reps[i];
            let zel = group.mul(group.inv(ti), gt);
            debug_assert!(z.contains(zel));
            entries[i * d + j] = chi(zel);
        }
        matrices.push(CycMat::from_entries(d, conductor, entries)?);
    }
    Ok(Representation { group_order: n, dim: d, conductor, matrices })
}

/// Verification report for a candidate SL representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlReport {
    pub homomorphism: bool,
    pub faithful: bool,
    pub center_scalar: bool,
    pub det_one: bool,
    pub dim_power_of_p: bool,
    /// Elements whose determinant is not 1, with the determinant's power
    /// basis coefficients (diagnostic for the twist attempt).
    pub det_failures: Vec<(usize, Vec<String>)>,
    /// Whether a determinant-correcting character twist was applied.
    pub twisted: bool,
}

impl SlReport {
    pub fn pass(&self) -> bool {
        self.homomorphism
            && self.faithful
            && self.center_scalar
            && self.det_one
            && self.dim_power_of_p
    }
}

/// Check the five certificate conditions exactly.
pub fn verify_sl_faithful(
    group: &FiniteGroup,
    rho: &Representation,
    z: &Subgroup,
    p: u64,
) -> SlReport {
    let n = group.order();
    let d = rho.dim;

    let homomorphism = (0..n).all(|g| {
        (0..n).all(|h| {
            rho.matrix(g)
                .mul(rho.matrix(h))
                .map(|prod| prod == *rho.matrix(group.mul(g, h)))
                .unwrap_or(false)
        })
    }) && rho.matrix(0).is_identity();

    // trivial kernel: only the identity maps to the identity matrix
    let faithful = (1..n).all(|g| !rho.matrix(g).is_identity());

    let center_scalar = z.members.iter().all(|&zel| {
        let m = rho.matrix(zel);
        let s = m.at(0, 0).clone();
        (0..d).all(|i| (0..d).all(|j| {
            if i == j {
                *m.at(i, j) == s
            } else {
                m.at(i, j).is_zero()
            }
        }))
    });

    let mut det_failures = Vec::new();
    for g in 0..n {
        let det = rho.matrix(g).determinant().expect("conductors match");
        if !det.is_one() {
            det_failures
                .push((g, det.coeffs().iter().map(|c| c.to_string()).collect()));
        }
    }
    let det_one = det_failures.is_empty();

    let dim_power_of_p = {
        let mut d = d as u64;
        while d % p == 0 {
            d /= p;
        }
        d == 1
    };

    SlReport {
        homomorphism,
        faithful,
        center_scalar,
        det_one,
        dim_power_of_p,
        det_failures,
        twisted: false,
    }
}

/// Induce from `Z` and verify; when determinants fail, attempt the standard
/// fix of twisting by a linear character ε with `ε^d = det^{-1}`, searching
/// the character group of the abelianization. The twist is best-effort and
/// always reported in the returned `SlReport`.
pub fn build_sl_representation(
    group: &FiniteGroup,
    z: &Subgroup,
    k: u64,
    p: u64,
) -> Result<(Representation, SlReport), RepresentError> {
    let rho = induce_character(group, z, k)?;
    let report = verify_sl_faithful(group, &rho, z, p);
    if report.det_one {
        return Ok((rho, report));
    }

    // determinant character values as roots of unity of the lifted conductor
    let d = rho.dim as i64;
    let derived = group.derived_subgroup();
    let (ab, proj) = group.quotient(&derived).expect("derived subgroup is normal");
    let ab_struct =
        abelian_structure(ab.order(), |x, y| ab.mul(x, y)).expect("abelianization is small");
    let exponent = ab_struct.factors.last().copied().unwrap_or(1);
    let big = num_integer::lcm(rho.conductor as i64, exponent) as u32;

    let dets: Vec<CycInt> = (0..group.order())
        .map(|g| {
            rho.matrix(g)
                .determinant()
                .expect("conductors match")
                .lift_conductor(big)
        })
        .collect();

    // search characters ε: G -> μ_big with ε(g)^d * det(g) = 1 for all g
    let char_space = FinAbCharacters::new(&ab_struct.factors, big as i64);
    for eps_coords in char_space.all() {
        let eps = |g: usize| -> CycInt {
            let coords = &ab_struct.coords[proj.apply(g)];
            let mut e: i64 = 0;
            for (i, (&c, &step)) in coords.iter().zip(&char_space.steps).enumerate() {
                e += c * step * eps_coords[i];
                let _ = i;
            }
            CycInt::zeta_pow(big, e)
        };
        let fixes = (0..group.order()).all(|g| {
            let mut v = CycInt::one(big);
            for _ in 0..d {
                v = v.mul(&eps(g)).expect("conductors match");
            }
            v.mul(&dets[g]).map(|x| x.is_one()).unwrap_or(false)
        });
        if fixes {
            let matrices = (0..group.order())
                .map(|g| {
                    let lifted = CycMat {
                        dim: rho.dim,
                        conductor: big,
                        entries: rho.matrices[g]
                            .entries
                            .iter()
                            .map(|e| e.lift_conductor(big))
                            .collect(),
                    };
                    lifted.scale(&eps(g)).expect("conductors match")
                })
                .collect();
            let twisted = Representation {
                group_order: group.order(),
                dim: rho.dim,
                conductor: big,
                matrices,
            };
            let mut report = verify_sl_faithful(group, &twisted, z, p);
            report.twisted = true;
            return Ok((twisted, report));
        }
    }
    Ok((rho, report))
}

/// Enumeration of character exponent tuples for `Hom(prod Z/f_i, Z/big)`.
struct FinAbCharacters {
    gammas: Vec<i64>,
    steps: Vec<i64>,
}

impl FinAbCharacters {
    fn new(factors: &[i64], big: i64) -> Self {
        let gammas: Vec<i64> = factors.iter().map(|&f| num_integer::gcd(f, big)).collect();
        let steps: Vec<i64> = gammas.iter().map(|&g| big / g).collect();
        FinAbCharacters { gammas, steps }
    }

    fn all(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &g in &self.gammas {
            let mut next = Vec::with_capacity(out.len() * g as usize);
            for prefix in &out {
                for t in 0..g {
                    let mut p = prefix.clone();
                    p.push(t);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, heisenberg, q8};

    #[test]
    fn q8_induced_representation() {
        let g = q8();
        let z = g.find_central_derived_cyclic(2).unwrap();
        let rho = induce_character(&g, &z, 1).unwrap();
        assert_eq!(rho.dim, 4);
        // the central involution maps to -I
        let neg_one = z.members[1];
        let m = rho.matrix(neg_one);
        assert_eq!(
            m,
            &CycMat::identity(4, 2)
                .scale(&CycInt::from_integer(2, -1))
                .unwrap()
        );
        // induced character: trace d*χ on Z, zero off Z
        assert_eq!(rho.trace(0), CycInt::from_integer(2, 4));
        assert_eq!(rho.trace(neg_one), CycInt::from_integer(2, -4));
        for g_el in 1..8 {
            if !z.contains(g_el) {
                assert!(rho.trace(g_el).is_zero(), "trace must vanish off Z");
            }
        }
        let report = verify_sl_faithful(&g, &rho, &z, 2);
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn heisenberg_induced_representation() {
        let g = heisenberg(3);
        let z = g.find_central_derived_cyclic(3).unwrap();
        let rho = induce_character(&g, &z, 1).unwrap();
        assert_eq!(rho.dim, 9);
        let report = verify_sl_faithful(&g, &rho, &z, 3);
        assert!(report.pass(), "{report:?}");
        // center acts by the scalar χ(z)
        let zel = z.members[1];
        let m = rho.matrix(zel);
        assert!(!m.at(0, 0).is_one());
        assert!(m.at(0, 1).is_zero());
    }

    #[test]
    fn character_of_cyclic_group_is_itself() {
        let g = cyclic(6);
        let z = g.full_subgroup();
        let rho = induce_character(&g, &z, 1).unwrap();
        assert_eq!(rho.dim, 1);
        assert_eq!(rho.conductor, 6);
        let report = verify_sl_faithful(&g, &rho, &z, 2);
        assert!(report.homomorphism);
        assert!(report.faithful);
        assert!(report.center_scalar);
        // det = χ itself, not 1, and 1 is not a power of 2 times anything
        assert!(!report.det_one);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = q8();
        let z = g.find_central_derived_cyclic(2).unwrap();
        assert_eq!(induce_character(&g, &z, 2).unwrap_err(),
                   RepresentError::NotFaithfulCharacter(2, 2));
        // <a> in Q8 is cyclic but not central
        let a4 = g.subgroup(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(induce_character(&g, &a4, 1).unwrap_err(), RepresentError::NotCentral);
        // the Klein four subgroup {e, r^2, s, r^2 s} of D4 is not cyclic
        let d = crate::group::dihedral(4);
        let v = d.subgroup(vec![0, 2, 4, 6]).unwrap();
        assert_eq!(induce_character(&d, &v, 1).unwrap_err(), RepresentError::NotCyclic);
    }

    #[test]
    fn faithfulness_detects_repeats() {
        // the regular character of Z/3 collapsed to the trivial one fails
        let g = cyclic(3);
        let rho = Representation {
            group_order: 3,
            dim: 1,
            conductor: 3,
            matrices: vec![CycMat::identity(1, 3); 3],
        };
        let z = g.trivial_subgroup();
        let report = verify_sl_faithful(&g, &rho, &z, 3);
        assert!(report.homomorphism);
        assert!(!report.faithful);
    }

    #[test]
    fn det_twist_for_one_dimensional_character() {
        // Z/4 with its own faithful character: det = χ; ε = χ^{-1} fixes the
        // determinant but destroys faithfulness, which the report shows
        let g = cyclic(4);
        let z = g.full_subgroup();
        let (rho, report) = build_sl_representation(&g, &z, 1, 2).unwrap();
        assert!(report.twisted);
        assert!(report.det_one);
        assert!(!report.faithful);
        assert_eq!(rho.dim, 1);
    }

    #[test]
    fn monomial_determinant_shortcut_agrees() {
        // for a monomial matrix the determinant is the permutation sign
        // times the product of entries; cross-check on the Q8 matrices
        let g = q8();
        let z = g.find_central_derived_cyclic(2).unwrap();
        let rho = induce_character(&g, &z, 1).unwrap();
        for gi in 0..8 {
            let m = rho.matrix(gi);
            // extract the permutation and entry product
            let mut perm = vec![0usize; rho.dim];
            let mut prod = CycInt::one(rho.conductor);
            for j in 0..rho.dim {
                let i = (0..rho.dim).find(|&i| !m.at(i, j).is_zero()).unwrap();
                perm[j] = i;
                prod = prod.mul(m.at(i, j)).unwrap();
            }
            let mut sign = false;
            let mut seen = vec![false; rho.dim];
            for start in 0..rho.dim {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut cur = start;
                while !seen[cur] {
                    seen[cur] = true;
                    cur = perm[cur];
                    len += 1;
                }
                if len % 2 == 0 {
                    sign = !sign;
                }
            }
            let expect = if sign { prod.neg() } else { prod };
            assert_eq!(m.determinant().unwrap(), expect);
        }
    }
}
