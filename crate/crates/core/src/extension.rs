//! Explicit central extensions `1 -> A -> E -> H -> 1` built from normalized
//! 2-cocycles: pullback along subgroups, pushforward along coefficient maps,
//! splitting tests by section search, classification of total groups up to
//! isomorphism, and the commutator rigidity containment.
//!
//! Equivalence classes of extensions (fixed kernel and quotient) are the
//! classes of H²(H, A); isomorphism types of total groups are coarser, and
//! [`classify_extensions`] reports both layers.

use crate::cohomology::{h2, Cocycle2, CohomologyError, H2Group};
use crate::finab::{FinAb, FinAbHom};
use crate::group::{isomorphic, FiniteGroup, GroupDump, GroupError, GroupHom, Subgroup, MAX_ORDER};
use crate::par;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("total group of order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("cocycle does not match the given group and coefficients")]
    CocycleMismatch(#[from] CohomologyError),
    #[error("group construction failed: {0}")]
    Group(#[from] GroupError),
}

/// A central extension with designated kernel embedding and projection.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    base: FiniteGroup,
    coeffs: FinAb,
    coeff_group: FiniteGroup,
    cocycle: Cocycle2,
    total: FiniteGroup,
    kernel_embed: GroupHom,
    proj: GroupHom,
}

/// JSON form of an extension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionDump {
    pub total: GroupDump,
    /// Total-group indices of the embedded kernel, in coefficient order.
    pub kernel: Vec<usize>,
    /// Projection images per total-group element.
    pub proj: Vec<usize>,
    /// Cohomology class coordinates, when computed by the caller.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<i64>>,
}

impl CentralExtension {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn coeffs(&self) -> &FinAb {
        &self.coeffs
    }

    pub fn coeff_group(&self) -> &FiniteGroup {
        &self.coeff_group
    }

    pub fn cocycle(&self) -> &Cocycle2 {
        &self.cocycle
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn kernel_embed(&self) -> &GroupHom {
        &self.kernel_embed
    }

    pub fn proj(&self) -> &GroupHom {
        &self.proj
    }

    /// Index of the pair `(a, h)` in the total group.
    pub fn pair_index(&self, a_idx: usize, h: usize) -> usize {
        a_idx * self.base.order() + h
    }

    pub fn to_dump(&self, class: Option<Vec<i64>>) -> ExtensionDump {
        ExtensionDump {
            total: self.total.to_dump(),
            kernel: self.kernel_embed.images.clone(),
            proj: self.proj.images.clone(),
            class,
        }
    }
}

/// Materialize the extension of `base` by `coeffs` with multiplication
/// `(a, h) (b, k) = (a + b + f(h, k), hk)` on pairs indexed `a*|H| + h`.
pub fn build_extension(
    base: &FiniteGroup,
    coeffs: &FinAb,
    f: &Cocycle2,
) -> Result<CentralExtension, ExtensionError> {
    if f.group_order() != base.order() || f.coeffs() != coeffs {
        return Err(ExtensionError::CocycleMismatch(CohomologyError::Mismatch));
    }
    let nh = base.order();
    let na = coeffs.order() as usize;
    let total_order = na.checked_mul(nh).expect("order fits");
    if total_order > MAX_ORDER {
        return Err(ExtensionError::TooLarge(total_order));
    }
    let idx = |a: usize, h: usize| a * nh + h;
    let mut table = vec![vec![0usize; total_order]; total_order];
    for a in 0..na {
        let av = coeffs.element_at(a);
        for h in 0..nh {
            for b in 0..na {
                let bv = coeffs.element_at(b);
                let ab = coeffs.add(&av, &bv);
                for k in 0..nh {
                    let sum = coeffs.add(&ab, f.at(h, k));
                    table[idx(a, h)][idx(b, k)] = idx(coeffs.index_of(&sum), base.mul(h, k));
                }
            }
        }
    }
    let names = Some(
        (0..total_order)
            .map(|i| format!("({:?},{})", coeffs.element_at(i / nh), base.name_of(i % nh)))
            .collect(),
    );
    let total = FiniteGroup::from_table(table, names)?;
    let coeff_group = coeffs_as_group(coeffs)?;
    let kernel_embed = GroupHom {
        source_order: na,
        target_order: total_order,
        images: (0..na).map(|a| idx(a, 0)).collect(),
    };
    let proj = GroupHom {
        source_order: total_order,
        target_order: nh,
        images: (0..total_order).map(|i| i % nh).collect(),
    };
    debug_assert!(kernel_embed.is_homomorphism(&coeff_group, &total));
    debug_assert!(proj.is_homomorphism(&total, base));
    Ok(CentralExtension {
        base: base.clone(),
        coeffs: coeffs.clone(),
        coeff_group,
        cocycle: f.clone(),
        total,
        kernel_embed,
        proj,
    })
}

/// The coefficient group as a table group (mixed-radix indexing, identity 0).
pub fn coeffs_as_group(coeffs: &FinAb) -> Result<FiniteGroup, ExtensionError> {
    let n = coeffs.order() as usize;
    if n > MAX_ORDER {
        return Err(ExtensionError::TooLarge(n));
    }
    if n == 1 {
        return Ok(crate::group::cyclic(1));
    }
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        let a = coeffs.element_at(i);
        for j in 0..n {
            let b = coeffs.element_at(j);
            table[i][j] = coeffs.index_of(&coeffs.add(&a, &b));
        }
    }
    let names = Some((0..n).map(|i| format!("{:?}", coeffs.element_at(i))).collect());
    Ok(FiniteGroup::from_table(table, names)?)
}

/// Pull the extension back along a subgroup `K` of the base: the total group
/// is `proj^{-1}(K)` (realized on pairs over K), the kernel is unchanged,
/// and the defining cocycle is the restriction.
pub fn pullback_extension(
    e: &CentralExtension,
    k: &Subgroup,
) -> Result<CentralExtension, ExtensionError> {
    let (kgroup, embedding) = k.as_group(&e.base);
    let restricted = e.cocycle.restrict(k, &embedding);
    build_extension(&kgroup, &e.coeffs, &restricted)
}

/// Push the extension forward along a coefficient homomorphism `phi: A -> B`:
/// the result is the extension of the same base defined by `phi ∘ f`, which
/// realizes `(B x E) / {(-phi(a), i(a))}`.
pub fn pushforward_extension(
    e: &CentralExtension,
    phi: &FinAbHom,
) -> Result<CentralExtension, ExtensionError> {
    let pushed = e.cocycle.push_coefficients(phi);
    build_extension(&e.base, &phi.target, &pushed)
}

#[derive(Clone)]
struct PartialSection {
    /// Section images by base element; usize::MAX = unassigned.
    sec: Vec<usize>,
    span: Vec<usize>,
}

/// Search for a group-theoretic section of `proj`. Lifts a minimal
/// generating set of the base and backtracks over kernel translates, with
/// incremental consistency pruning; candidates are tried in ascending index
/// order, so the first section found is deterministic.
pub fn is_split(e: &CentralExtension) -> Option<GroupHom> {
    let nh = e.base.order();
    let gens = e.base.generating_set();
    if gens.is_empty() {
        return Some(GroupHom { source_order: 1, target_order: e.total.order(), images: vec![0] });
    }
    let na = e.coeffs.order() as usize;
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..na).map(|a| e.pair_index(a, g)).collect())
        .collect();

    fn extend(
        e: &CentralExtension,
        state: &PartialSection,
        g_new: usize,
        img: usize,
        assigned: &[usize],
    ) -> Option<PartialSection> {
        let mut s = state.clone();
        if s.sec[g_new] != usize::MAX {
            return None;
        }
        s.sec[g_new] = img;
        s.span.push(g_new);
        let mut frontier = s.span.clone();
        while let Some(x) = frontier.pop() {
            let sx = s.sec[x];
            for &g in assigned {
                let y = e.base.mul(x, g);
                let sy = e.total.mul(sx, s.sec[g]);
                if e.proj.apply(sy) != y {
                    return None;
                }
                if s.sec[y] == usize::MAX {
                    s.sec[y] = sy;
                    s.span.push(y);
                    frontier.push(y);
                } else if s.sec[y] != sy {
                    return None;
                }
            }
        }
        Some(s)
    }

    fn dfs(
        e: &CentralExtension,
        gens: &[usize],
        candidates: &[Vec<usize>],
        state: PartialSection,
        level: usize,
    ) -> Option<PartialSection> {
        if level == gens.len() {
            return (state.span.len() == e.base.order()).then_some(state);
        }
        for &img in &candidates[level] {
            if let Some(next) = extend(e, &state, gens[level], img, &gens[..=level]) {
                if let Some(done) = dfs(e, gens, candidates, next, level + 1) {
                    return Some(done);
                }
            }
        }
        None
    }

    let mut sec = vec![usize::MAX; nh];
    sec[0] = 0;
    let init = PartialSection { sec, span: vec![0] };
    let found = dfs(e, &gens, &candidates, init, 0)?;
    let hom = GroupHom {
        source_order: nh,
        target_order: e.total.order(),
        images: found.sec,
    };
    debug_assert!(hom.is_homomorphism(&e.base, &e.total));
    Some(hom)
}

/// One isomorphism type among the central extensions of a fixed pair.
#[derive(Debug)]
pub struct ExtensionClass {
    pub representative: CentralExtension,
    /// The cohomology classes realizing this total group.
    pub classes: Vec<Vec<i64>>,
    /// Whether the zero class is among them.
    pub contains_split: bool,
}

/// Build one total group per class of H²(H, A) and partition them by
/// isomorphism of total groups. Types are ordered by their first realizing
/// class (lexicographic), so the output is deterministic.
pub fn classify_extensions(
    base: &FiniteGroup,
    coeffs: &FinAb,
) -> Result<(H2Group, Vec<ExtensionClass>), ExtensionError> {
    classify_impl(base, coeffs, false)
}

/// Sequential twin of [`classify_extensions`] (compared in the benchmarks).
pub fn classify_extensions_seq(
    base: &FiniteGroup,
    coeffs: &FinAb,
) -> Result<(H2Group, Vec<ExtensionClass>), ExtensionError> {
    classify_impl(base, coeffs, true)
}

fn classify_impl(
    base: &FiniteGroup,
    coeffs: &FinAb,
    force_seq: bool,
) -> Result<(H2Group, Vec<ExtensionClass>), ExtensionError> {
    let total_order = coeffs.order() as usize * base.order();
    if total_order > MAX_ORDER {
        return Err(ExtensionError::TooLarge(total_order));
    }
    let h2g = h2(base, coeffs);
    let classes = h2g.all_classes();
    let build = |coords: &Vec<i64>| {
        let rep = h2g.representative(coords).expect("valid class coordinates");
        build_extension(base, coeffs, &rep)
    };
    let built = if force_seq {
        par::map_vec_seq(&classes, build)
    } else {
        par::map_vec(&classes, build)
    };
    let mut types: Vec<ExtensionClass> = Vec::new();
    for (coords, ext) in classes.into_iter().zip(built) {
        let ext = ext?;
        let split = coords.iter().all(|&c| c == 0);
        match types
            .iter_mut()
            .find(|t| isomorphic(t.representative.total(), ext.total()).is_some())
        {
            Some(t) => {
                t.classes.push(coords);
                t.contains_split |= split;
            }
            None => types.push(ExtensionClass {
                representative: ext,
                classes: vec![coords],
                contains_split: split,
            }),
        }
    }
    Ok((h2g, types))
}

/// The commutator rigidity containment for a subgroup `Z` of the base:
/// `proj^{-1}(Z)` must lie in the subgroup of the total group generated by
/// all commutators together with the embedded kernel. Computed in pair
/// space, so it works for totals beyond the materialization cap.
pub fn rigidity_check_cocycle(
    base: &FiniteGroup,
    coeffs: &FinAb,
    f: &Cocycle2,
    z: &Subgroup,
) -> bool {
    let nh = base.order();
    let na = coeffs.order() as usize;
    let idx = |a: usize, h: usize| (a * nh + h) as u32;

    // pair arithmetic
    let mul = |x: u32, y: u32| -> u32 {
        let (a, h) = ((x as usize) / nh, (x as usize) % nh);
        let (b, k) = ((y as usize) / nh, (y as usize) % nh);
        let av = coeffs.element_at(a);
        let bv = coeffs.element_at(b);
        let sum = coeffs.add(&coeffs.add(&av, &bv), f.at(h, k));
        idx(coeffs.index_of(&sum), base.mul(h, k))
    };
    let inv = |x: u32| -> u32 {
        let (a, h) = ((x as usize) / nh, (x as usize) % nh);
        let hi = base.inv(h);
        let av = coeffs.element_at(a);
        let neg = coeffs.neg(&coeffs.add(&av, f.at(h, hi)));
        idx(coeffs.index_of(&neg), hi)
    };

    // generators: commutators (central kernel parts cancel, so lifts with
    // a = 0 suffice) plus the embedded kernel
    let mut gens: Vec<u32> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for h in 0..nh {
        for k in 0..nh {
            let x = idx(0, h);
            let y = idx(0, k);
            let c = mul(mul(inv(x), inv(y)), mul(x, y));
            if seen.insert(c) {
                gens.push(c);
            }
        }
    }
    for a in 0..na {
        let x = idx(a, 0);
        if seen.insert(x) {
            gens.push(x);
        }
    }

    // subgroup closure in pair space
    let mut members = std::collections::HashSet::new();
    members.insert(idx(0, 0));
    let mut frontier: Vec<u32> = vec![idx(0, 0)];
    for &g in &gens {
        if members.insert(g) {
            frontier.push(g);
        }
    }
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = mul(x, g);
            if members.insert(y) {
                frontier.push(y);
            }
        }
    }

    // containment of the full preimage of Z
    z.members.iter().all(|&zel| (0..na).all(|a| members.contains(&idx(a, zel))))
}

/// [`rigidity_check_cocycle`] on a materialized extension.
pub fn rigidity_check(e: &CentralExtension, z: &Subgroup) -> bool {
    rigidity_check_cocycle(&e.base, &e.coeffs, &e.cocycle, z)
}
