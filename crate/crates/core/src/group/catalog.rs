//! Built-in group constructions and the named catalog.
//!
//! The catalog covers the instances the certificate pipelines reference:
//! cyclic groups up to order 32, Klein four, the dihedral and quaternion
//! groups of order 8, generalized quaternion and modular groups of order 16,
//! and the Heisenberg / exponent-p² non-abelian groups of order p³ for
//! p in {2, 3, 5} (for p = 2 these are D4 and Q8).

use super::{FiniteGroup, GroupError};

fn pow_name(letter: char, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}{e}"),
    }
}

fn two_gen_name(i: usize, j: usize) -> String {
    let s = format!("{}{}", pow_name('a', i), pow_name('b', j));
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// Z/n with table `(i, j) -> i + j mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let names = Some((0..n).map(|i| i.to_string()).collect());
    FiniteGroup::from_table(table, names).expect("cyclic table")
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let idx = |x: usize, y: usize| x * nb + y;
    let mut table = vec![vec![0usize; na * nb]; na * nb];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    let names = Some(
        (0..na * nb)
            .map(|i| format!("({},{})", a.name_of(i / nb), b.name_of(i % nb)))
            .collect(),
    );
    FiniteGroup::from_table(table, names).expect("product table")
}

pub fn klein_four() -> FiniteGroup {
    let z2 = cyclic(2);
    direct_product(&z2, &z2)
}

/// The split metacyclic group `<a, b | a^m, b^n, b a b^-1 = a^r>`.
/// Elements are `a^i b^j` with index `i + m*j`. Requires `r^n = 1 mod m`.
pub fn semidirect_cyclic(m: usize, n: usize, r: usize) -> Result<FiniteGroup, GroupError> {
    assert!(m >= 1 && n >= 1);
    assert_eq!(num_integer::gcd(r, m), 1, "conjugation exponent must be a unit");
    // b^j a b^-j = a^(r^j)
    let mut rpow = vec![1usize; n];
    for j in 1..n {
        rpow[j] = rpow[j - 1] * r % m;
    }
    assert_eq!(rpow[n - 1] * r % m, 1 % m, "r^n must be 1 mod m");
    let idx = |i: usize, j: usize| i + m * j;
    let mut table = vec![vec![0usize; m * n]; m * n];
    for i in 0..m {
        for j in 0..n {
            for k in 0..m {
                for l in 0..n {
                    // a^i b^j a^k b^l = a^(i + k r^j) b^(j+l)
                    table[idx(i, j)][idx(k, l)] = idx((i + k * rpow[j]) % m, (j + l) % n);
                }
            }
        }
    }
    let names = Some(
        (0..m * n)
            .map(|e| two_gen_name(e % m, e / m))
            .collect(),
    );
    FiniteGroup::from_table(table, names)
}

/// Dihedral group of order 2n.
pub fn dihedral(n: usize) -> FiniteGroup {
    semidirect_cyclic(n, 2, n - 1).expect("dihedral table")
}

/// Dicyclic group of order 4n: `<a, b | a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1>`.
/// Elements are `a^i b^j` with `i < 2n`, `j < 2`, index `i + 2n*j`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let m = 2 * n;
    let idx = |i: usize, j: usize| i + m * j;
    let mut table = vec![vec![0usize; 4 * n]; 4 * n];
    for i in 0..m {
        for k in 0..m {
            // (a^i)(a^k b^l)
            table[idx(i, 0)][idx(k, 0)] = idx((i + k) % m, 0);
            table[idx(i, 0)][idx(k, 1)] = idx((i + k) % m, 1);
            // (a^i b)(a^k) = a^(i-k) b ; (a^i b)(a^k b) = a^(i-k+n)
            table[idx(i, 1)][idx(k, 0)] = idx((i + m - k) % m, 1);
            table[idx(i, 1)][idx(k, 1)] = idx((i + m - k + n) % m, 0);
        }
    }
    let names = Some((0..4 * n).map(|e| two_gen_name(e % m, e / m)).collect());
    FiniteGroup::from_table(table, names).expect("dicyclic table")
}

/// Quaternion group of order 8.
pub fn q8() -> FiniteGroup {
    dicyclic(2)
}

/// Generalized quaternion group of order 16.
pub fn q16() -> FiniteGroup {
    dicyclic(4)
}

/// Modular (semidihedral-adjacent) group of order 16: `<a, b | a^8, b^2, bab^-1 = a^5>`.
pub fn modular16() -> FiniteGroup {
    semidirect_cyclic(8, 2, 5).expect("modular16 table")
}

/// Heisenberg group of order p³: upper unitriangular 3x3 matrices over Z/p,
/// stored as triples `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')`
/// and index `x p² + y p + z`.
pub fn heisenberg(p: usize) -> FiniteGroup {
    assert!(p >= 2);
    let n = p * p * p;
    let idx = |x: usize, y: usize, z: usize| x * p * p + y * p + z;
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                for x2 in 0..p {
                    for y2 in 0..p {
                        for z2 in 0..p {
                            table[idx(x, y, z)][idx(x2, y2, z2)] =
                                idx((x + x2) % p, (y + y2) % p, (z + z2 + x * y2) % p);
                        }
                    }
                }
            }
        }
    }
    let names = Some(
        (0..n)
            .map(|e| format!("({},{},{})", e / (p * p), (e / p) % p, e % p))
            .collect(),
    );
    FiniteGroup::from_table(table, names).expect("heisenberg table")
}

/// The non-abelian group of order p³ and exponent p² (p odd):
/// `<a, b | a^(p²), b^p, b a b^-1 = a^(1+p)>`.
pub fn modular_p3(p: usize) -> FiniteGroup {
    semidirect_cyclic(p * p, p, 1 + p).expect("modular p^3 table")
}

/// Resolve a catalog group by name (case-insensitive). `Z<n>`/`C<n>` for
/// cyclic up to 32, plus V4/K4, D4, Q8, Q16, M16, He3, M27, He5, M125.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let up = name.trim().to_ascii_uppercase();
    if let Some(num) = up.strip_prefix('Z').or_else(|| up.strip_prefix('C')) {
        if let Ok(n) = num.parse::<usize>() {
            if (1..=32).contains(&n) {
                return Some(cyclic(n));
            }
        }
        return None;
    }
    match up.as_str() {
        "V4" | "K4" | "KLEIN4" => Some(klein_four()),
        "D4" => Some(dihedral(4)),
        "Q8" => Some(q8()),
        "Q16" => Some(q16()),
        "M16" => Some(modular16()),
        "HE3" | "HEIS27" => Some(heisenberg(3)),
        "M27" => Some(modular_p3(3)),
        "HE5" | "HEIS125" => Some(heisenberg(5)),
        "M125" => Some(modular_p3(5)),
        _ => None,
    }
}

/// The whole named catalog, deterministically ordered.
pub fn all_catalog() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> =
        (1..=32).map(|n| (format!("Z{n}"), cyclic(n))).collect();
    out.push(("V4".into(), klein_four()));
    out.push(("D4".into(), dihedral(4)));
    out.push(("Q8".into(), q8()));
    out.push(("Q16".into(), q16()));
    out.push(("M16".into(), modular16()));
    out.push(("He3".into(), heisenberg(3)));
    out.push(("M27".into(), modular_p3(3)));
    out.push(("He5".into(), heisenberg(5)));
    out.push(("M125".into(), modular_p3(5)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(q8().order(), 8);
        assert_eq!(q16().order(), 16);
        assert_eq!(modular16().order(), 16);
        assert_eq!(heisenberg(3).order(), 27);
        assert_eq!(modular_p3(3).order(), 27);
        assert_eq!(heisenberg(5).order(), 125);
        assert_eq!(modular_p3(5).order(), 125);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(klein_four().order(), 4);
    }

    #[test]
    fn q8_structure() {
        let g = q8();
        // one involution (a^2 = -1), six elements of order 4
        let prof = g.order_profile();
        assert_eq!(prof[&1], 1);
        assert_eq!(prof[&2], 1);
        assert_eq!(prof[&4], 6);
        assert!(!g.is_abelian());
        // b^2 = a^2
        assert_eq!(g.mul(4, 4), 2);
    }

    #[test]
    fn q16_and_m16_differ() {
        let q = q16();
        let m = modular16();
        assert_ne!(q.order_profile(), m.order_profile());
        assert_eq!(q.center().order(), 2);
        assert_eq!(m.center().order(), 4);
        assert_eq!(m.derived_subgroup().order(), 2);
        assert_eq!(q.derived_subgroup().order(), 4);
    }

    #[test]
    fn heisenberg_exponent() {
        // exponent p for odd p
        let h = heisenberg(3);
        assert!((0..27).all(|g| h.pow(g, 3) == 0));
        // modular_p3 has elements of order p^2
        let m = modular_p3(3);
        assert!((0..27).any(|g| m.element_order(g) == 9));
    }

    #[test]
    fn p2_cases_are_d4_and_q8() {
        use super::super::isomorphic;
        assert!(isomorphic(&heisenberg(2), &dihedral(4)).is_some());
        assert!(isomorphic(&dicyclic(2), &q8()).is_some());
    }

    #[test]
    fn by_name_resolves() {
        assert_eq!(by_name("z8").unwrap().order(), 8);
        assert_eq!(by_name("Q8").unwrap().order(), 8);
        assert_eq!(by_name("he3").unwrap().order(), 27);
        assert!(by_name("Z33").is_none());
        assert!(by_name("nope").is_none());
        assert_eq!(all_catalog().len(), 41);
    }
}
