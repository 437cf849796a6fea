//! Finite groups as dense multiplication tables, with the structural
//! subgroup and quotient operations everything else is built on.
//!
//! Elements are indices `0..order` with the identity fixed at index 0.
//! Construction validates closure, identity, two-sided inverses and (for
//! orders up to 256) associativity on all triples, so downstream code can
//! treat a [`FiniteGroup`] as trusted.

mod catalog;
mod iso;
mod present;

pub use catalog::{
    all_catalog, by_name, cyclic, dicyclic, dihedral, direct_product, heisenberg, klein_four,
    modular16, modular_p3, q16, q8, semidirect_cyclic,
};
pub use iso::isomorphic;
pub use present::{from_presentation, parse_relator, Presentation, PresentationError};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Groups larger than this are out of scope for table representations.
pub const MAX_ORDER: usize = 512;
/// Exhaustive associativity checking is performed up to this order.
pub const ASSOC_CHECK_ORDER: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("group of order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("table is not square or contains an out-of-range entry")]
    NotClosed,
    #[error("index 0 does not act as a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("member set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not a p-group for p = {0}")]
    NotPGroup(u64),
    #[error("group is abelian; a non-abelian group is required")]
    AbelianInput,
    #[error("no central cyclic subgroup of order {0} inside the derived subgroup")]
    NoneFound(u64),
    #[error("name table has wrong length")]
    BadNames,
}

/// A finite group on `0..order` given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `table[g * order + h] = g * h`.
    table: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

/// JSON form of a group table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDump {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// JSON group input: either an explicit table or a presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Table(GroupDump),
    Presentation { presentation: Presentation },
}

impl FiniteGroup {
    pub fn from_table(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(GroupError::NotClosed);
            }
            for &v in row {
                if v >= n {
                    return Err(GroupError::NotClosed);
                }
                flat.push(v);
            }
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(GroupError::BadNames);
            }
        }
        let g = FiniteGroup { order: n, table: flat, inv: vec![0; n], names };
        g.validate()
    }

    fn validate(mut self) -> Result<Self, GroupError> {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(GroupError::NoIdentity);
            }
        }
        for g in 0..n {
            let mut found = None;
            for h in 0..n {
                if self.mul(g, h) == 0 && self.mul(h, g) == 0 {
                    found = Some(h);
                    break;
                }
            }
            match found {
                Some(h) => self.inv[g] = h,
                None => return Err(GroupError::NoInverse(g)),
            }
        }
        if n <= ASSOC_CHECK_ORDER {
            for g in 0..n {
                for h in 0..n {
                    let gh = self.mul(g, h);
                    for k in 0..n {
                        if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                            return Err(GroupError::NotAssociative(g, h, k));
                        }
                    }
                }
            }
        } else {
            // spot checks only above the exhaustive threshold
            for g in (0..n).step_by(7) {
                for h in (0..n).step_by(11) {
                    let gh = self.mul(g, h);
                    for k in (0..n).step_by(13) {
                        if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                            return Err(GroupError::NotAssociative(g, h, k));
                        }
                    }
                }
            }
        }
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// `[g, h] = g^-1 h^-1 g h`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs();
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut o = 1;
        while x != 0 {
            x = self.mul(x, g);
            o += 1;
        }
        o
    }

    pub fn name_of(&self, g: usize) -> String {
        match &self.names {
            Some(ns) => ns[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        for g in 0..self.order {
            for h in g + 1..self.order {
                if self.mul(g, h) != self.mul(h, g) {
                    return false;
                }
            }
        }
        true
    }

    /// `Some((p, n))` if `|G| = p^n` with `n >= 1`.
    pub fn p_group(&self) -> Option<(u64, u32)> {
        let mut n = self.order as u64;
        if n < 2 {
            return None;
        }
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                break;
            }
            p += 1;
        }
        if n % p != 0 {
            p = n;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        (n == 1).then_some((p, e))
    }

    /// Multiset of element orders, as order -> count.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut prof = BTreeMap::new();
        for g in 0..self.order {
            *prof.entry(self.element_order(g)).or_insert(0) += 1;
        }
        prof
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup { members }
    }

    /// Smallest subgroup containing all commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut seed = Vec::new();
        for g in 0..self.order {
            for h in 0..self.order {
                seed.push(self.commutator(g, h));
            }
        }
        Subgroup { members: self.close_subgroup(&seed) }
    }

    /// Closure of `seed` under multiplication: sorted member list.
    pub fn close_subgroup(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order];
        in_sub[0] = true;
        let mut members = vec![0usize];
        let mut frontier = vec![0usize];
        let push = |x: usize,
                        in_sub: &mut Vec<bool>,
                        members: &mut Vec<usize>,
                        frontier: &mut Vec<usize>| {
            if !in_sub[x] {
                in_sub[x] = true;
                members.push(x);
                frontier.push(x);
            }
        };
        for &s in seed {
            push(s, &mut in_sub, &mut members, &mut frontier);
        }
        let gens: Vec<usize> = members.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                push(self.mul(x, g), &mut in_sub, &mut members, &mut frontier);
                push(self.mul(g, x), &mut in_sub, &mut members, &mut frontier);
            }
        }
        members.sort_unstable();
        members
    }

    /// Validated subgroup from a member list.
    pub fn subgroup(&self, mut members: Vec<usize>) -> Result<Subgroup, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= self.order) {
            return Err(GroupError::BadElement(members[members.len() - 1]));
        }
        if !members.contains(&0) {
            return Err(GroupError::NotSubgroup);
        }
        let in_sub: Vec<bool> = {
            let mut v = vec![false; self.order];
            for &m in &members {
                v[m] = true;
            }
            v
        };
        for &a in &members {
            if !in_sub[self.inv(a)] {
                return Err(GroupError::NotSubgroup);
            }
            for &b in &members {
                if !in_sub[self.mul(a, b)] {
                    return Err(GroupError::NotSubgroup);
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { members: (0..self.order).collect() }
    }

    /// A cyclic subgroup of order `p` inside `center(G) ∩ derived(G)`,
    /// generated by the smallest-index eligible element. Requires a
    /// non-abelian p-group; such a subgroup always exists for those.
    pub fn find_central_derived_cyclic(&self, p: u64) -> Result<Subgroup, GroupError> {
        match self.p_group() {
            Some((q, _)) if q == p => {}
            _ => return Err(GroupError::NotPGroup(p)),
        }
        if self.is_abelian() {
            return Err(GroupError::AbelianInput);
        }
        let center = self.center();
        let derived = self.derived_subgroup();
        let z = (0..self.order)
            .find(|&z| {
                self.element_order(z) == p as usize
                    && center.contains(z)
                    && derived.contains(z)
            })
            .ok_or(GroupError::NoneFound(p))?;
        let members = self.close_subgroup(&[z]);
        Ok(Subgroup { members })
    }

    /// Quotient by a normal subgroup, with the canonical projection.
    /// Coset representatives are the smallest element index per coset, and
    /// cosets are ordered by representative (the identity coset is 0).
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom), GroupError> {
        n.check_in(self)?;
        if !n.is_normal(self) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &m in &n.members {
                coset_of[self.mul(g, m)] = idx;
            }
        }
        let q = reps.len();
        let mut table = vec![vec![0usize; q]; q];
        for (i, &gi) in reps.iter().enumerate() {
            for (j, &gj) in reps.iter().enumerate() {
                table[i][j] = coset_of[self.mul(gi, gj)];
            }
        }
        let names = Some(reps.iter().map(|&r| format!("{}N", self.name_of(r))).collect());
        let quotient = FiniteGroup::from_table(table, names)?;
        let hom = GroupHom { source_order: self.order, target_order: q, images: coset_of };
        Ok((quotient, hom))
    }

    /// Greedy minimal generating set: scan elements in index order, keep
    /// those that enlarge the generated subgroup. Deterministic.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for g in 1..self.order {
            if span.binary_search(&g).is_ok() {
                continue;
            }
            gens.push(g);
            span = self.close_subgroup(&gens);
            if span.len() == self.order {
                break;
            }
        }
        gens
    }

    /// BFS words over `gens`: for each element, a factorization as a product
    /// of generators (by generator position). Identity gets the empty word.
    pub fn element_words(&self, gens: &[usize]) -> Option<Vec<Vec<usize>>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[0] = Some(vec![]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut seen = 1usize;
        while let Some(x) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(i);
                    words[y] = Some(w);
                    seen += 1;
                    queue.push_back(y);
                }
            }
        }
        (seen == self.order).then(|| words.into_iter().map(|w| w.unwrap()).collect())
    }

    pub fn to_dump(&self) -> GroupDump {
        let table = (0..self.order)
            .map(|g| (0..self.order).map(|h| self.mul(g, h)).collect())
            .collect();
        GroupDump { order: self.order, table, names: self.names.clone() }
    }

    pub fn from_dump(dump: GroupDump) -> Result<Self, GroupError> {
        if dump.table.len() != dump.order {
            return Err(GroupError::NotClosed);
        }
        FiniteGroup::from_table(dump.table, dump.names)
    }
}

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    fn check_in(&self, g: &FiniteGroup) -> Result<(), GroupError> {
        if self.members.iter().any(|&m| m >= g.order()) {
            return Err(GroupError::BadElement(*self.members.last().unwrap()));
        }
        Ok(())
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        for x in 0..g.order() {
            for &m in &self.members {
                if !self.contains(g.mul(g.mul(g.inv(x), m), x)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        let center = g.center();
        self.members.iter().all(|&m| center.contains(m))
    }

    /// If cyclic, the smallest-index generator.
    pub fn cyclic_generator(&self, g: &FiniteGroup) -> Option<usize> {
        self.members
            .iter()
            .copied()
            .find(|&m| g.element_order(m) == self.order())
    }

    /// The subgroup as a group in its own right, with the index map back
    /// into the parent (`embedding[i]` = parent index of element `i`).
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let embedding = self.members.clone();
        let pos: std::collections::HashMap<usize, usize> =
            embedding.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let k = embedding.len();
        let mut table = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                table[i][j] = pos[&g.mul(embedding[i], embedding[j])];
            }
        }
        let names = Some(embedding.iter().map(|&m| g.name_of(m)).collect());
        let sub = FiniteGroup::from_table(table, names).expect("subgroup table is a group");
        (sub, embedding)
    }
}

/// A homomorphism between table groups, stored as the image of every source
/// element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub source_order: usize,
    pub target_order: usize,
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let hom = GroupHom {
            source_order: source.order(),
            target_order: target.order(),
            images,
        };
        if hom.images.len() != source.order() {
            return Err(GroupError::NotClosed);
        }
        if !hom.is_homomorphism(source, target) {
            return Err(GroupError::NotClosed);
        }
        Ok(hom)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source_order: g.order(),
            target_order: g.order(),
            images: (0..g.order()).collect(),
        }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        if self.images.len() != source.order()
            || self.source_order != source.order()
            || self.target_order != target.order()
            || self.images.iter().any(|&i| i >= target.order())
            || self.images[0] != 0
        {
            return false;
        }
        for g in 0..source.order() {
            for h in 0..source.order() {
                if self.images[source.mul(g, h)] != target.mul(self.images[g], self.images[h]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source_order).filter(|&g| self.images[g] == 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        for &i in &self.images {
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        for &i in &self.images {
            seen[i] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source_order == self.target_order && self.is_injective()
    }

    /// self after other: `(self ∘ other)(g) = self(other(g))`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(other.target_order, self.source_order);
        GroupHom {
            source_order: other.source_order,
            target_order: self.target_order,
            images: other.images.iter().map(|&g| self.images[g]).collect(),
        }
    }

    /// Inverse of a bijective hom.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0usize; self.target_order];
        for (g, &i) in self.images.iter().enumerate() {
            images[i] = g;
        }
        Some(GroupHom {
            source_order: self.target_order,
            target_order: self.source_order,
            images,
        })
    }
}
