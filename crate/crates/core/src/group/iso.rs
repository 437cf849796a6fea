//! Isomorphism testing for table groups: invariant screening followed by
//! generator-image backtracking with incremental partial-map closure.

use super::{FiniteGroup, GroupHom};
use crate::finab::abelian_structure;

/// An isomorphism `a -> b` if one exists. Deterministic: generator images
/// are tried in ascending element order.
pub fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<GroupHom> {
    if a.order() != b.order() {
        return None;
    }
    if a.order_profile() != b.order_profile() {
        return None;
    }
    let center_a = a.center();
    let center_b = b.center();
    if center_a.order() != center_b.order() {
        return None;
    }
    let derived_a = a.derived_subgroup();
    let derived_b = b.derived_subgroup();
    if derived_a.order() != derived_b.order() {
        return None;
    }
    if abelianization_invariants(a, &derived_a) != abelianization_invariants(b, &derived_b) {
        return None;
    }

    let gens = a.generating_set();
    // candidate images must match order, centrality and derived membership
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            let central = center_a.contains(g);
            let in_derived = derived_a.contains(g);
            (0..b.order())
                .filter(|&y| {
                    b.element_order(y) == o
                        && center_b.contains(y) == central
                        && derived_b.contains(y) == in_derived
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }

    let state = State {
        phi: {
            let mut v = vec![None; a.order()];
            v[0] = Some(0);
            v
        },
        used: {
            let mut v = vec![false; b.order()];
            v[0] = true;
            v
        },
        span: vec![0],
    };
    let found = search(a, b, &gens, &candidates, 0, state)?;
    let images: Vec<usize> = found.phi.into_iter().map(|x| x.expect("total map")).collect();
    let hom = GroupHom { source_order: a.order(), target_order: b.order(), images };
    debug_assert!(hom.is_homomorphism(a, b) && hom.is_bijective());
    Some(hom)
}

fn abelianization_invariants(g: &FiniteGroup, derived: &super::Subgroup) -> Vec<i64> {
    let (q, _) = g.quotient(derived).expect("derived subgroup is normal");
    abelian_structure(q.order(), |x, y| q.mul(x, y))
        .expect("abelianization is small")
        .factors
}

#[derive(Clone)]
struct State {
    phi: Vec<Option<usize>>,
    used: Vec<bool>,
    span: Vec<usize>,
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    level: usize,
    state: State,
) -> Option<State> {
    if level == gens.len() {
        return (state.span.len() == a.order()).then_some(state);
    }
    for &img in &candidates[level] {
        if state.used[img] {
            continue;
        }
        if let Some(next) = extend(a, b, &state, gens[level], img, &gens[..=level]) {
            if let Some(done) = search(a, b, gens, candidates, level + 1, next) {
                return Some(done);
            }
        }
    }
    None
}

/// Extend the partial map with `phi(g_new) = img`, closing the span under
/// right multiplication by all assigned generators and checking consistency
/// and injectivity along the way.
fn extend(
    a: &FiniteGroup,
    b: &FiniteGroup,
    state: &State,
    g_new: usize,
    img: usize,
    assigned: &[usize],
) -> Option<State> {
    let mut s = state.clone();
    if s.phi[g_new].is_some() || s.used[img] {
        return None;
    }
    s.phi[g_new] = Some(img);
    s.used[img] = true;
    s.span.push(g_new);

    let mut frontier: Vec<usize> = s.span.clone();
    while let Some(x) = frontier.pop() {
        let fx = s.phi[x].expect("span elements are mapped");
        for &g in assigned {
            let y = a.mul(x, g);
            let fy = b.mul(fx, s.phi[g].expect("generators are mapped"));
            match s.phi[y] {
                None => {
                    if s.used[fy] {
                        return None;
                    }
                    s.phi[y] = Some(fy);
                    s.used[fy] = true;
                    s.span.push(y);
                    frontier.push(y);
                }
                Some(v) => {
                    if v != fy {
                        return None;
                    }
                }
            }
        }
    }
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::super::catalog::*;
    use super::*;

    #[test]
    fn q8_vs_d4_differ() {
        assert!(isomorphic(&q8(), &dihedral(4)).is_none());
    }

    #[test]
    fn self_isomorphism_exists() {
        for g in [q8(), dihedral(4), cyclic(12), heisenberg(3)] {
            let h = isomorphic(&g, &g).unwrap();
            assert!(h.is_homomorphism(&g, &g));
            assert!(h.is_bijective());
        }
    }

    #[test]
    fn product_relabelings() {
        let p1 = direct_product(&cyclic(8), &q8());
        let p2 = direct_product(&q8(), &cyclic(8));
        let h = isomorphic(&p1, &p2).unwrap();
        assert!(h.is_homomorphism(&p1, &p2));
    }

    #[test]
    fn cyclic_vs_klein() {
        assert!(isomorphic(&cyclic(4), &klein_four()).is_none());
    }

    #[test]
    fn symmetry_and_transitivity_shapes() {
        let a = direct_product(&cyclic(2), &cyclic(4));
        let b = direct_product(&cyclic(4), &cyclic(2));
        let ab = isomorphic(&a, &b).unwrap();
        let ba = ab.inverse().unwrap();
        assert!(ba.is_homomorphism(&b, &a));
        let bb = isomorphic(&b, &b).unwrap();
        let comp = bb.compose(&ab);
        assert!(comp.is_homomorphism(&a, &b));
    }
}
