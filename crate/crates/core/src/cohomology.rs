//! Second group cohomology H²(G, A) with trivial action on finite abelian
//! coefficients, with restriction, inflation, coefficient pushforward, and
//! the divisible-coefficient group H²(G, Q/Z) via a Bockstein cokernel.
//!
//! The normalized cocycle condition
//!
//! ```text
//! f(g, h) + f(gh, k) = f(h, k) + f(g, hk)
//! ```
//!
//! only needs to be imposed for `k` in a generating set S: the instance for
//! a product `k's` follows from the instances for `k'` and `s` (expand both
//! sides with the generator instance; everything cancels — the same
//! induction that reduces associativity of a twisted product to its last
//! factor). Fixing a BFS spanning word for every element then determines
//! every unknown `f(g, x)` from the base unknowns `f(·, s)`, `s in S`:
//! unwinding `f(g, ps) = f(g, p) + f(gp, s) - f(p, s)` along the word of `x`
//! gives a short explicit expansion of `f(g, x)` over base columns. The
//! remaining relation instances become sparse rows over just `(n-1)·|S|`
//! base unknowns.
//!
//! Per component Z/m those rows are brought to a row echelon with all
//! arithmetic done mod m (coefficients never grow); rows with unit leads
//! determine their lead unknown from the later ones, and the handful of
//! non-unit rows become a small integer matrix whose Smith normal form
//! yields the kernel Z², the coboundary image B², and the quotient
//! H² = Z²/B² with explicit transforms — so classes can be both computed
//! (`class_of`) and realized by representative cocycles.

use crate::finab::{quotient_presentation, FinAb, FinAbHom, QuotientStructure};
use crate::group::{FiniteGroup, GroupDump, GroupHom, Subgroup};
use crate::snf::{smith_bounded, xgcd, Int, Mat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cocycle values table has wrong shape")]
    BadShape,
    #[error("cocycle is not normalized at ({0}, {1})")]
    NotNormalized(usize, usize),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    NotCocycle(usize, usize, usize),
    #[error("cocycle does not match this H² (group order or coefficients differ)")]
    Mismatch,
    #[error("class coordinate vector has wrong length or range")]
    BadCoords,
}

/// A normalized 2-cocycle on a group with trivial action, stored densely on
/// the full `n x n` grid (identity row and column are zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    group_order: usize,
    coeffs: FinAb,
    /// `values[g * n + h]` is an element of `coeffs`.
    values: Vec<Vec<i64>>,
}

/// JSON form of a cocycle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleDump {
    pub group: GroupDump,
    pub coeffs: Vec<i64>,
    pub values: Vec<Vec<Vec<i64>>>,
}

impl Cocycle2 {
    pub fn new(
        group: &FiniteGroup,
        coeffs: FinAb,
        values: Vec<Vec<i64>>,
    ) -> Result<Self, CohomologyError> {
        let n = group.order();
        if values.len() != n * n || values.iter().any(|v| v.len() != coeffs.rank()) {
            return Err(CohomologyError::BadShape);
        }
        let values: Vec<Vec<i64>> = values.iter().map(|v| coeffs.reduce(v)).collect();
        let f = Cocycle2 { group_order: n, coeffs, values };
        f.validate(group)?;
        Ok(f)
    }

    pub fn zero(group: &FiniteGroup, coeffs: FinAb) -> Self {
        let n = group.order();
        let z = coeffs.zero();
        Cocycle2 { group_order: n, coeffs, values: vec![z; n * n] }
    }

    fn validate(&self, group: &FiniteGroup) -> Result<(), CohomologyError> {
        let n = self.group_order;
        assert_eq!(group.order(), n);
        for g in 0..n {
            if !self.coeffs.is_zero(self.at(g, 0)) {
                return Err(CohomologyError::NotNormalized(g, 0));
            }
            if !self.coeffs.is_zero(self.at(0, g)) {
                return Err(CohomologyError::NotNormalized(0, g));
            }
        }
        for g in 1..n {
            for h in 1..n {
                let gh = group.mul(g, h);
                for k in 1..n {
                    let hk = group.mul(h, k);
                    let lhs = self.coeffs.add(self.at(g, h), self.at(gh, k));
                    let rhs = self.coeffs.add(self.at(h, k), self.at(g, hk));
                    if lhs != rhs {
                        return Err(CohomologyError::NotCocycle(g, h, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn coeffs(&self) -> &FinAb {
        &self.coeffs
    }

    #[inline]
    pub fn at(&self, g: usize, h: usize) -> &[i64] {
        &self.values[g * self.group_order + h]
    }

    /// The coboundary of a normalized 1-cochain `c` (with `c[0] = 0`):
    /// `(δc)(g, h) = c(g) + c(h) - c(gh)`.
    pub fn coboundary(group: &FiniteGroup, coeffs: FinAb, c: &[Vec<i64>]) -> Self {
        let n = group.order();
        assert_eq!(c.len(), n);
        assert!(coeffs.is_zero(&c[0]), "1-cochain must vanish at the identity");
        let mut values = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let sum = coeffs.add(&c[g], &c[h]);
                values.push(coeffs.add(&sum, &coeffs.neg(&c[group.mul(g, h)])));
            }
        }
        Cocycle2 { group_order: n, coeffs, values }
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        assert_eq!(self.group_order, other.group_order);
        assert_eq!(self.coeffs, other.coeffs);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.coeffs.add(a, b))
            .collect();
        Cocycle2 { group_order: self.group_order, coeffs: self.coeffs.clone(), values }
    }

    pub fn scale(&self, k: i64) -> Cocycle2 {
        let values = self.values.iter().map(|v| self.coeffs.scale(k, v)).collect();
        Cocycle2 { group_order: self.group_order, coeffs: self.coeffs.clone(), values }
    }

    /// Restriction to a subgroup, as a cocycle on the subgroup's own table.
    pub fn restrict(&self, sub: &Subgroup, embedding: &[usize]) -> Cocycle2 {
        let k = embedding.len();
        assert_eq!(k, sub.order());
        let mut values = Vec::with_capacity(k * k);
        for &g in embedding {
            for &h in embedding {
                values.push(self.at(g, h).to_vec());
            }
        }
        Cocycle2 { group_order: k, coeffs: self.coeffs.clone(), values }
    }

    /// Pullback along a surjection `proj: G -> Q` of a cocycle on Q.
    pub fn inflate(&self, big: &FiniteGroup, proj: &GroupHom) -> Cocycle2 {
        let n = big.order();
        assert_eq!(proj.source_order, n);
        assert_eq!(proj.target_order, self.group_order);
        let mut values = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                values.push(self.at(proj.apply(g), proj.apply(h)).to_vec());
            }
        }
        Cocycle2 { group_order: n, coeffs: self.coeffs.clone(), values }
    }

    /// Apply a coefficient homomorphism valuewise.
    pub fn push_coefficients(&self, phi: &FinAbHom) -> Cocycle2 {
        assert_eq!(phi.source, self.coeffs);
        let values = self.values.iter().map(|v| phi.apply(v)).collect();
        Cocycle2 {
            group_order: self.group_order,
            coeffs: phi.target.clone(),
            values,
        }
    }

    pub fn to_dump(&self, group: &FiniteGroup) -> CocycleDump {
        let n = self.group_order;
        let values = (0..n)
            .map(|g| (0..n).map(|h| self.at(g, h).to_vec()).collect())
            .collect();
        CocycleDump {
            group: group.to_dump(),
            coeffs: self.coeffs.moduli().to_vec(),
            values,
        }
    }
}

fn modinv(a: i64, m: i64) -> i64 {
    let (g, s, _) = xgcd(a as Int, m as Int);
    debug_assert_eq!(g, 1);
    (s as i64).rem_euclid(m)
}

/// The base-column relation scheme for one group, shared by all coefficient
/// components. Base column `(g-1)*|S| + spos` is the unknown `f(g, gens[spos])`;
/// all other cocycle values expand over these along BFS words.
struct BaseScheme {
    n: usize,
    gens: Vec<usize>,
    base_dim: usize,
    /// For every element of word length >= 2: `(parent, spos)` with
    /// `x = parent * gens[spos]` along its BFS word.
    canon: Vec<Option<(usize, usize)>>,
    /// Elements of word length >= 2, ascending by word length.
    deep_elements: Vec<usize>,
    /// Relation rows over base columns (integer coefficients, small).
    rows: Vec<Vec<(u32, i64)>>,
}

impl BaseScheme {
    fn base_col(&self, g: usize, spos: usize) -> u32 {
        ((g - 1) * self.gens.len() + spos) as u32
    }

    /// Expansion of `f(g, x)` over base columns: walking the BFS word of
    /// `x = s1 s2 ... sk` with prefixes `p_i`,
    /// `f(g, x) = sum_i f(g p_i, s_{i+1}) - sum_{i>=1} f(p_i, s_{i+1})`.
    fn expr(&self, group: &FiniteGroup, words: &[Vec<usize>], g: usize, x: usize) -> Vec<(u32, i64)> {
        let mut terms: Vec<(u32, i64)> = Vec::with_capacity(2 * words[x].len());
        let mut prefix = 0usize;
        for &spos in &words[x] {
            let gp = group.mul(g, prefix);
            if gp != 0 {
                terms.push((self.base_col(gp, spos), 1));
            }
            if prefix != 0 {
                terms.push((self.base_col(prefix, spos), -1));
            }
            prefix = group.mul(prefix, self.gens[spos]);
        }
        terms
    }

    fn build(group: &FiniteGroup) -> BaseScheme {
        let n = group.order();
        let gens = group.generating_set();
        let words = group.element_words(&gens).expect("generators span the group");
        let base_dim = (n - 1) * gens.len();
        let mut canon: Vec<Option<(usize, usize)>> = vec![None; n];
        for x in 1..n {
            if words[x].len() >= 2 {
                let spos = *words[x].last().unwrap();
                let parent = group.mul(x, group.inv(gens[spos]));
                canon[x] = Some((parent, spos));
            }
        }
        let mut deep_elements: Vec<usize> = (1..n).filter(|&x| canon[x].is_some()).collect();
        deep_elements.sort_by_key(|&x| (words[x].len(), x));

        let mut scheme = BaseScheme { n, gens, base_dim, canon, deep_elements, rows: Vec::new() };

        // relation instances A(g, h, s) for every h and generator s, except
        // the canonical pairs (which vanish identically by construction)
        let mut rows = Vec::new();
        for h in 1..n {
            let active: Vec<usize> = (0..scheme.gens.len())
                .filter(|&spos| {
                    let x = group.mul(h, scheme.gens[spos]);
                    scheme.canon[x] != Some((h, spos))
                })
                .collect();
            if active.is_empty() {
                continue;
            }
            for g in 1..n {
                let eh = scheme.expr(group, &words, g, h);
                for &spos in &active {
                    let x = group.mul(h, scheme.gens[spos]);
                    let gh = group.mul(g, h);
                    let mut terms = eh.clone();
                    if gh != 0 {
                        terms.push((scheme.base_col(gh, spos), 1));
                    }
                    terms.push((scheme.base_col(h, spos), -1));
                    if x != 0 {
                        for (c, v) in scheme.expr(group, &words, g, x) {
                            terms.push((c, -v));
                        }
                    }
                    terms.sort_unstable_by_key(|e| e.0);
                    let mut merged: Vec<(u32, i64)> = Vec::with_capacity(terms.len());
                    for (c, v) in terms {
                        match merged.last_mut() {
                            Some(last) if last.0 == c => last.1 += v,
                            _ => merged.push((c, v)),
                        }
                    }
                    merged.retain(|e| e.1 != 0);
                    if !merged.is_empty() {
                        rows.push(merged);
                    }
                }
            }
        }
        scheme.rows = rows;
        scheme
    }

    /// Fill the full `n x n` value table (for one component, mod m) from the
    /// complete base-column assignment, by ascending word length.
    fn reconstruct(&self, group: &FiniteGroup, base_vals: &[i64], m: i64) -> Vec<i64> {
        let n = self.n;
        let mut table = vec![0i64; n * n];
        for g in 1..n {
            for (spos, &s) in self.gens.iter().enumerate() {
                table[g * n + s] = base_vals[self.base_col(g, spos) as usize].rem_euclid(m);
            }
        }
        for &x in &self.deep_elements {
            let (p, spos) = self.canon[x].expect("deep elements have parents");
            let s = self.gens[spos];
            for g in 1..n {
                let gp = group.mul(g, p);
                let a = table[g * n + p];
                let b = if gp == 0 { 0 } else { table[gp * n + s] };
                let c = table[p * n + s];
                table[g * n + x] = (a + b - c).rem_euclid(m);
            }
        }
        table
    }
}

/// One coefficient component Z/m: echelonized relation system over the base
/// columns plus the kernel/quotient transforms.
#[derive(Debug)]
struct Component {
    modulus: i64,
    /// Echelon rows with lead coefficient 1 (mod m), ascending lead column.
    unit_rows: Vec<Vec<(u32, i64)>>,
    /// Base columns not led by a unit row, ascending.
    free_cols: Vec<u32>,
    vc: Mat,
    vc_inv: Mat,
    /// `g_i = gcd(d_i, m)` per free coordinate.
    g_all: Vec<i64>,
    /// Positions with `g_i > 1`: the torsion coordinates of Z².
    kept: Vec<usize>,
    /// H² for this component: kept coordinates modulo the coboundary image.
    quot: QuotientStructure,
}

/// row1*s + row2*t mod m, merged by column.
fn row_combine_mod(
    r1: &[(u32, i64)],
    s: i64,
    r2: &[(u32, i64)],
    t: i64,
    m: i64,
) -> Vec<(u32, i64)> {
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(r1.len() + r2.len());
    let (mut i, mut j) = (0, 0);
    let mm = m as i128;
    while i < r1.len() || j < r2.len() {
        let (c, v) = match (r1.get(i), r2.get(j)) {
            (Some(&(c1, v1)), Some(&(c2, v2))) if c1 == c2 => {
                i += 1;
                j += 1;
                (c1, (s as i128 * v1 as i128 + t as i128 * v2 as i128).rem_euclid(mm))
            }
            (Some(&(c1, v1)), Some(&(c2, _))) if c1 < c2 => {
                i += 1;
                (c1, (s as i128 * v1 as i128).rem_euclid(mm))
            }
            (Some(_), Some(&(c2, v2))) | (None, Some(&(c2, v2))) => {
                j += 1;
                (c2, (t as i128 * v2 as i128).rem_euclid(mm))
            }
            (Some(&(c1, v1)), None) => {
                i += 1;
                (c1, (s as i128 * v1 as i128).rem_euclid(mm))
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((c, v as i64));
        }
    }
    out
}

impl Component {
    fn build(group: &FiniteGroup, scheme: &BaseScheme, m: i64) -> Component {
        // row echelon mod m over base columns
        let mut basis: std::collections::BTreeMap<u32, Vec<(u32, i64)>> =
            std::collections::BTreeMap::new();
        for raw_row in &scheme.rows {
            let mut row: Vec<(u32, i64)> = raw_row
                .iter()
                .filter_map(|&(c, v)| {
                    let v = v.rem_euclid(m);
                    (v != 0).then_some((c, v))
                })
                .collect();
            loop {
                let Some(&(col, val)) = row.first() else { break };
                match basis.get(&col) {
                    None => {
                        basis.insert(col, row);
                        break;
                    }
                    Some(b) => {
                        let (_, bval) = b[0];
                        if val % bval == 0 {
                            row = row_combine_mod(&row, 1, b, -(val / bval), m);
                        } else {
                            let (g, sc, tc) = xgcd(bval as Int, val as Int);
                            let (_, sc, tc) = (g as i64, sc as i64, tc as i64);
                            let new_b = row_combine_mod(b, sc, &row, tc, m);
                            let gi = g as i64;
                            let rem = row_combine_mod(&row, bval / gi, b, -(val / gi), m);
                            basis.insert(col, new_b);
                            row = rem;
                        }
                    }
                }
            }
        }

        // split unit and torsion rows; normalize unit leads to 1
        let mut unit_rows: Vec<Vec<(u32, i64)>> = Vec::new();
        let mut torsion_raw: Vec<Vec<(u32, i64)>> = Vec::new();
        let mut unit_of_col: Vec<Option<usize>> = vec![None; scheme.base_dim];
        for (&col, row) in &basis {
            let lead = row[0].1;
            if num_integer::gcd(lead, m) == 1 {
                let inv = modinv(lead, m);
                let scaled = row_combine_mod(row, inv, &[], 0, m);
                unit_of_col[col as usize] = Some(unit_rows.len());
                unit_rows.push(scaled);
            } else {
                torsion_raw.push(row.clone());
            }
        }
        let free_cols: Vec<u32> = (0..scheme.base_dim as u32)
            .filter(|&c| unit_of_col[c as usize].is_none())
            .collect();
        let mut free_pos = vec![usize::MAX; scheme.base_dim];
        for (i, &c) in free_cols.iter().enumerate() {
            free_pos[c as usize] = i;
        }

        // reduce torsion rows to the free columns
        let torsion: Vec<Vec<i64>> = torsion_raw
            .iter()
            .map(|row| {
                let mut row = row.clone();
                let mut i = 0;
                while i < row.len() {
                    let (c, v) = row[i];
                    match unit_of_col[c as usize] {
                        Some(u) => row = row_combine_mod(&row, 1, &unit_rows[u], -v, m),
                        None => i += 1,
                    }
                }
                let mut dense = vec![0i64; free_cols.len()];
                for (c, v) in row {
                    dense[free_pos[c as usize]] = v;
                }
                dense
            })
            .collect();

        let nf = free_cols.len();
        let mut cmat = Mat::zero(torsion.len(), nf);
        for (i, row) in torsion.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                cmat[(i, j)] = v as Int;
            }
        }
        let s = smith_bounded(&cmat, m as Int, [false, false, true, true]);
        let g_all: Vec<i64> = (0..nf)
            .map(|i| s.diag.get(i).copied().unwrap_or(m as Int) as i64)
            .collect();
        let kept: Vec<usize> = (0..nf).filter(|&i| g_all[i] > 1).collect();
        let mut comp = Component {
            modulus: m,
            unit_rows,
            free_cols,
            vc: s.v.expect("v requested"),
            vc_inv: s.v_inv.expect("v_inv requested"),
            g_all,
            kept,
            quot: quotient_presentation(&[], &[]),
        };

        // coboundary image: one generator per non-identity group element
        let sgens = &scheme.gens;
        let mut rels: Vec<Vec<Int>> = Vec::with_capacity(scheme.n - 1);
        for e in 1..scheme.n {
            let free_vals = comp.project_free(scheme, |g, spos| {
                let s_elem = sgens[spos];
                let mut v = 0i64;
                if g == e {
                    v += 1;
                }
                if s_elem == e {
                    v += 1;
                }
                if group.mul(g, s_elem) == e {
                    v -= 1;
                }
                v.rem_euclid(m)
            });
            let z = comp.torsion_coords(&free_vals).expect("coboundaries are cocycles");
            rels.push(z);
        }
        let g_moduli: Vec<i64> = comp.kept.iter().map(|&i| comp.g_all[i]).collect();
        comp.quot = quotient_presentation(&g_moduli, &rels);
        comp
    }

    /// Project a base-column valuation onto the free coordinates.
    fn project_free(&self, scheme: &BaseScheme, value_at: impl Fn(usize, usize) -> i64) -> Vec<i64> {
        let ns = scheme.gens.len();
        self.free_cols
            .iter()
            .map(|&c| {
                let g = (c as usize) / ns + 1;
                let spos = (c as usize) % ns;
                value_at(g, spos)
            })
            .collect()
    }

    /// Z² torsion coordinates of a free-coordinate vector; None if the
    /// vector does not satisfy the kernel congruences (i.e. no cocycle has
    /// these free coordinates).
    fn torsion_coords(&self, free_vals: &[i64]) -> Option<Vec<Int>> {
        let m = self.modulus;
        let nf = free_vals.len();
        let mut z = Vec::with_capacity(self.kept.len());
        let mm = m as i128;
        for i in 0..nf {
            let mut y: i128 = 0;
            for j in 0..nf {
                y += self.vc_inv[(i, j)].rem_euclid(mm) * free_vals[j] as i128 % mm;
            }
            let y = y.rem_euclid(mm);
            let g = self.g_all[i] as i128;
            let step = mm / g;
            if y % step != 0 {
                return None;
            }
            if self.g_all[i] > 1 {
                z.push(y / step);
            }
        }
        Some(z)
    }

    /// Free-coordinate vector realizing torsion coordinates `x`.
    fn free_vals_for(&self, x: &[Int]) -> Vec<i64> {
        let m = self.modulus;
        let nf = self.g_all.len();
        let mm = m as i128;
        let mut y = vec![0i128; nf];
        for (pos, &i) in self.kept.iter().enumerate() {
            let g = self.g_all[i] as i128;
            y[i] = (x[pos].rem_euclid(g)) * (mm / g);
        }
        (0..nf)
            .map(|r| {
                let mut s: i128 = 0;
                for (j, &yj) in y.iter().enumerate() {
                    if yj != 0 {
                        s += self.vc[(r, j)].rem_euclid(mm) * yj % mm;
                    }
                }
                s.rem_euclid(mm) as i64
            })
            .collect()
    }

    /// Complete base-column assignment from free coordinates, by descending
    /// back substitution through the unit rows.
    fn base_vals(&self, scheme: &BaseScheme, free_vals: &[i64]) -> Vec<i64> {
        let m = self.modulus;
        let mm = m as i128;
        let mut out = vec![0i64; scheme.base_dim];
        for (pos, &c) in self.free_cols.iter().enumerate() {
            out[c as usize] = free_vals[pos].rem_euclid(m);
        }
        for row in self.unit_rows.iter().rev() {
            let (lead, lv) = row[0];
            debug_assert_eq!(lv, 1);
            let mut sum: i128 = 0;
            for &(c, v) in row.iter().skip(1) {
                sum += v as i128 * out[c as usize] as i128 % mm;
            }
            out[lead as usize] = (-sum).rem_euclid(mm) as i64;
        }
        out
    }
}

/// H²(G, A) with trivial action: invariant-factor structure, representative
/// cocycles for a basis, and the class map.
pub struct H2Group {
    group: FiniteGroup,
    coeffs: FinAb,
    factors: Vec<i64>,
    scheme: BaseScheme,
    comps: Vec<Component>,
    comb: QuotientStructure,
    comp_offsets: Vec<usize>,
}

impl std::fmt::Debug for H2Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("H2Group")
            .field("group_order", &self.group.order())
            .field("coeffs", &self.coeffs)
            .field("invariant_factors", &self.factors)
            .finish()
    }
}

/// JSON form of an H² computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct H2Dump {
    pub invariant_factors: Vec<i64>,
    pub basis: Vec<CocycleDump>,
}

/// Compute H²(G, A), componentwise over the coefficient moduli.
pub fn h2(group: &FiniteGroup, coeffs: &FinAb) -> H2Group {
    let scheme = BaseScheme::build(group);
    let comps: Vec<Component> = coeffs
        .moduli()
        .iter()
        .map(|&m| Component::build(group, &scheme, m))
        .collect();

    let mut all_factors: Vec<i64> = Vec::new();
    let mut comp_offsets = Vec::with_capacity(comps.len());
    for comp in &comps {
        comp_offsets.push(all_factors.len());
        all_factors.extend_from_slice(&comp.quot.factors);
    }
    let comb = quotient_presentation(&all_factors, &[]);
    let factors = comb.factors.clone();

    H2Group {
        group: group.clone(),
        coeffs: coeffs.clone(),
        factors,
        scheme,
        comps,
        comb,
        comp_offsets,
    }
}

impl H2Group {
    pub fn group_order(&self) -> usize {
        self.group.order()
    }

    pub fn coeffs(&self) -> &FinAb {
        &self.coeffs
    }

    /// Invariant factors of H² (empty means the trivial group).
    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&f| f as u128).product()
    }

    pub fn zero_class(&self) -> Vec<i64> {
        vec![0; self.factors.len()]
    }

    pub fn structure(&self) -> FinAb {
        FinAb::new(self.factors.clone()).expect("invariant factors")
    }

    /// Class coordinates of a validated cocycle.
    pub fn class_of(&self, f: &Cocycle2) -> Result<Vec<i64>, CohomologyError> {
        if f.group_order != self.group.order() || f.coeffs != self.coeffs {
            return Err(CohomologyError::Mismatch);
        }
        let total: usize = self.comps.iter().map(|c| c.quot.factors.len()).sum();
        let mut concat: Vec<Int> = vec![0; total];
        let gens = &self.scheme.gens;
        for (ci, comp) in self.comps.iter().enumerate() {
            let m = comp.modulus;
            let free_vals =
                comp.project_free(&self.scheme, |g, spos| f.at(g, gens[spos])[ci].rem_euclid(m));
            let z = comp.torsion_coords(&free_vals).ok_or(CohomologyError::Mismatch)?;
            let coords = comp.quot.coords(&z);
            for (j, &v) in coords.iter().enumerate() {
                concat[self.comp_offsets[ci] + j] = v as Int;
            }
        }
        Ok(self.comb.coords(&concat))
    }

    /// A representative cocycle for the given class coordinates.
    pub fn representative(&self, coords: &[i64]) -> Result<Cocycle2, CohomologyError> {
        if coords.len() != self.factors.len() {
            return Err(CohomologyError::BadCoords);
        }
        let total: usize = self.comps.iter().map(|c| c.quot.factors.len()).sum();
        let mut concat = vec![0 as Int; total];
        for (j, &w) in coords.iter().enumerate() {
            let lift = self.comb.lift(j);
            for (i, &l) in lift.iter().enumerate() {
                concat[i] += w as Int * l;
            }
        }
        let n = self.group.order();
        let k = self.coeffs.rank();
        let mut values = vec![vec![0i64; k]; n * n];
        for (ci, comp) in self.comps.iter().enumerate() {
            let nfac = comp.quot.factors.len();
            let off = self.comp_offsets[ci];
            let mut x = vec![0 as Int; comp.kept.len()];
            for j in 0..nfac {
                let w = concat[off + j].rem_euclid(comp.quot.factors[j] as Int);
                let lift = comp.quot.lift(j);
                for (i, &l) in lift.iter().enumerate() {
                    x[i] += w * l;
                }
            }
            let free_vals = comp.free_vals_for(&x);
            let base = comp.base_vals(&self.scheme, &free_vals);
            let table = self.scheme.reconstruct(&self.group, &base, comp.modulus);
            for (cell, &v) in table.iter().enumerate() {
                values[cell][ci] = v;
            }
        }
        Ok(Cocycle2 { group_order: n, coeffs: self.coeffs.clone(), values })
    }

    /// Representatives of the invariant-factor basis classes.
    pub fn basis(&self) -> Vec<Cocycle2> {
        (0..self.factors.len())
            .map(|j| {
                let mut e = self.zero_class();
                e[j] = 1;
                self.representative(&e).expect("basis coordinates are valid")
            })
            .collect()
    }

    /// All class coordinate vectors, in lexicographic order.
    pub fn all_classes(&self) -> Vec<Vec<i64>> {
        assert!(self.order() <= 1 << 20, "class enumeration too large");
        let g = FinAb::new(self.factors.clone()).expect("factors");
        (0..g.order() as usize).map(|i| g.element_at(i)).collect()
    }

    pub fn to_dump(&self, group: &FiniteGroup) -> H2Dump {
        H2Dump {
            invariant_factors: self.factors.clone(),
            basis: self.basis().iter().map(|b| b.to_dump(group)).collect(),
        }
    }
}

/// A homomorphism between H² groups, recorded as the images of the source
/// invariant-factor basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InducedMap {
    pub source_factors: Vec<i64>,
    pub target_factors: Vec<i64>,
    /// `matrix[j]` = target coordinates of the j-th source basis class.
    pub matrix: Vec<Vec<i64>>,
}

impl InducedMap {
    pub fn apply(&self, coords: &[i64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.source_factors.len());
        let mut out = vec![0i64; self.target_factors.len()];
        for (j, &c) in coords.iter().enumerate() {
            for (i, &mij) in self.matrix[j].iter().enumerate() {
                let m = self.target_factors[i];
                out[i] = ((out[i] as i128 + c as i128 * mij as i128).rem_euclid(m as i128)) as i64;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|row| {
            row.iter().zip(&self.target_factors).all(|(&v, &m)| v.rem_euclid(m) == 0)
        })
    }

    pub fn is_surjective(&self) -> bool {
        let img = image_order(&self.target_factors, &self.matrix);
        img == self.target_factors.iter().map(|&f| f as u128).product::<u128>()
    }
}

/// Order of the subgroup of `prod Z/factors` generated by `gens`.
fn image_order(factors: &[i64], gens: &[Vec<i64>]) -> u128 {
    let total: u128 = factors.iter().map(|&f| f as u128).product();
    let rels: Vec<Vec<Int>> = gens.iter().map(|g| g.iter().map(|&v| v as Int).collect()).collect();
    let q = quotient_presentation(factors, &rels);
    total / q.order()
}

/// Restriction `H²(G, A) -> H²(K, A)` to a subgroup, with the target group.
pub fn restriction(h2g: &H2Group, group: &FiniteGroup, sub: &Subgroup) -> (H2Group, InducedMap) {
    let (kgroup, embedding) = sub.as_group(group);
    let target = h2(&kgroup, &h2g.coeffs);
    let matrix = h2g
        .basis()
        .iter()
        .map(|b| {
            let restricted = b.restrict(sub, &embedding);
            target.class_of(&restricted).expect("restriction of a cocycle is a cocycle")
        })
        .collect();
    let map = InducedMap {
        source_factors: h2g.factors.clone(),
        target_factors: target.factors.clone(),
        matrix,
    };
    (target, map)
}

/// Inflation `H²(Q, A) -> H²(G, A)` along a surjection `proj: G -> Q`.
pub fn inflation(
    h2q: &H2Group,
    group: &FiniteGroup,
    proj: &GroupHom,
) -> (H2Group, InducedMap) {
    assert_eq!(proj.target_order, h2q.group_order());
    let target = h2(group, &h2q.coeffs);
    let matrix = h2q
        .basis()
        .iter()
        .map(|b| {
            let inflated = b.inflate(group, proj);
            target.class_of(&inflated).expect("inflation of a cocycle is a cocycle")
        })
        .collect();
    let map = InducedMap {
        source_factors: h2q.factors.clone(),
        target_factors: target.factors.clone(),
        matrix,
    };
    (target, map)
}

/// Coefficient pushforward `H²(G, A) -> H²(G, B)` along `phi: A -> B`.
pub fn pushforward(
    h2g: &H2Group,
    group: &FiniteGroup,
    phi: &FinAbHom,
) -> (H2Group, InducedMap) {
    assert_eq!(phi.source, h2g.coeffs);
    let target = h2(group, &phi.target);
    let matrix = h2g
        .basis()
        .iter()
        .map(|b| {
            let pushed = b.push_coefficients(phi);
            target.class_of(&pushed).expect("pushforward of a cocycle is a cocycle")
        })
        .collect();
    let map = InducedMap {
        source_factors: h2g.factors.clone(),
        target_factors: target.factors.clone(),
        matrix,
    };
    (target, map)
}

/// H²(G, Q/Z) (the dual of the Schur multiplier), computed as the cokernel
/// of the Bockstein `Hom(G, Z/e) -> H²(G, Z/e)` for `e = |G|`, where the
/// Bockstein is the connecting map of `0 -> Z/e -> Z/e² -> Z/e -> 0`.
/// Returns invariant factors.
pub fn h2_divisible(group: &FiniteGroup) -> Vec<i64> {
    let n = group.order();
    if n == 1 {
        return vec![];
    }
    let e = n as i64;
    let coeffs = FinAb::cyclic(e);
    let h2e = h2(group, &coeffs);

    // characters G -> Z/e through the abelianization
    let derived = group.derived_subgroup();
    let (ab, proj) = group.quotient(&derived).expect("derived subgroup is normal");
    let ab_struct = crate::finab::abelian_structure(ab.order(), |x, y| ab.mul(x, y))
        .expect("abelianization is small");

    let mut rels: Vec<Vec<Int>> = Vec::new();
    for (i, &d) in ab_struct.factors.iter().enumerate() {
        let gamma = num_integer::gcd(d, e);
        let step = e / gamma;
        // character values c(g) in [0, e)
        let c: Vec<i64> = (0..n)
            .map(|g| {
                let coord = ab_struct.coords[proj.apply(g)][i];
                (coord as i128 * step as i128).rem_euclid(e as i128) as i64
            })
            .collect();
        // Bockstein carry cocycle: (c(g) + c(h) - c(gh)) / e
        let mut values = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let x = c[g] + c[h] - c[group.mul(g, h)];
                debug_assert_eq!(x.rem_euclid(e), 0);
                values.push(vec![(x.div_euclid(e)).rem_euclid(e)]);
            }
        }
        let beta = Cocycle2::new(group, coeffs.clone(), values)
            .expect("Bockstein image is a cocycle");
        let class = h2e.class_of(&beta).expect("class of Bockstein image");
        rels.push(class.iter().map(|&v| v as Int).collect());
    }
    quotient_presentation(h2e.invariant_factors(), &rels).factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, heisenberg, klein_four, q16, q8};

    fn z(m: i64) -> FinAb {
        FinAb::cyclic(m)
    }

    /// Brute-force count of normalized cocycles G x G -> Z/m. Independent of
    /// the solver: enumerates all normalized tables and filters by the
    /// cocycle identity.
    fn count_cocycles_bruteforce(group: &FiniteGroup, m: i64) -> (usize, usize) {
        let n = group.order();
        let cells = (n - 1) * (n - 1);
        let total = (m as u128).pow(cells as u32);
        assert!(total <= 1 << 22, "brute force too large");
        let mut zcount = 0usize;
        let mut values = vec![vec![0i64]; n * n];
        'outer: for code in 0..total {
            let mut c = code;
            for g in 1..n {
                for h in 1..n {
                    values[g * n + h][0] = (c % m as u128) as i64;
                    c /= m as u128;
                }
            }
            for g in 1..n {
                for h in 1..n {
                    let gh = group.mul(g, h);
                    for k in 1..n {
                        let hk = group.mul(h, k);
                        let lhs = values[g * n + h][0] + values[gh * n + k][0];
                        let rhs = values[h * n + k][0] + values[g * n + hk][0];
                        if (lhs - rhs).rem_euclid(m) != 0 {
                            continue 'outer;
                        }
                    }
                }
            }
            zcount += 1;
        }
        // coboundaries
        let mut bset = std::collections::HashSet::new();
        let cochains = (m as u128).pow((n - 1) as u32);
        for code in 0..cochains {
            let mut c = code;
            let mut cochain = vec![vec![0i64]; n];
            for g in 1..n {
                cochain[g][0] = (c % m as u128) as i64;
                c /= m as u128;
            }
            let cob = Cocycle2::coboundary(group, z(m), &cochain);
            let key: Vec<i64> = (0..n * n).map(|i| cob.values[i][0]).collect();
            bset.insert(key);
        }
        (zcount, bset.len())
    }

    #[test]
    fn matches_bruteforce_on_small_groups() {
        for (grp, m) in [
            (cyclic(2), 2i64),
            (cyclic(2), 4),
            (cyclic(3), 3),
            (cyclic(4), 2),
            (klein_four(), 2),
        ] {
            let (zc, bc) = count_cocycles_bruteforce(&grp, m);
            let h = h2(&grp, &z(m));
            assert_eq!(
                h.order(),
                (zc / bc) as u128,
                "group order {} coeffs Z/{m}",
                grp.order()
            );
        }
    }

    #[test]
    fn h2_of_small_cyclics() {
        assert_eq!(h2(&cyclic(2), &z(2)).invariant_factors(), &[2]);
        assert_eq!(h2(&cyclic(2), &z(4)).invariant_factors(), &[2]);
        assert_eq!(h2(&cyclic(3), &z(3)).invariant_factors(), &[3]);
        assert_eq!(h2(&cyclic(6), &z(4)).invariant_factors(), &[2]);
        assert_eq!(h2(&cyclic(5), &z(3)).invariant_factors(), &[] as &[i64]);
    }

    #[test]
    fn h2_trivial_group_is_zero() {
        assert_eq!(h2(&cyclic(1), &z(8)).invariant_factors(), &[] as &[i64]);
    }

    #[test]
    fn h2_klein_four() {
        // |H²(V4, Z/2)| = |Ext(V4, Z/2)| * |Hom(Z/2, Z/2)| = 4 * 2 = 8
        let g = h2(&klein_four(), &z(2));
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn h2_q8_z8_is_klein() {
        let g = h2(&q8(), &z(8));
        assert_eq!(g.invariant_factors(), &[2, 2]);
    }

    #[test]
    fn basis_classes_roundtrip() {
        for (grp, m) in [(q8(), 8i64), (dihedral(4), 8), (cyclic(8), 4), (klein_four(), 4)] {
            let h = h2(&grp, &z(m));
            for (j, b) in h.basis().iter().enumerate() {
                let mut e = h.zero_class();
                e[j] = 1;
                assert_eq!(h.class_of(b).unwrap(), e);
                // representatives satisfy the cocycle axioms exactly
                assert!(b.clone().validate(&grp).is_ok());
            }
            let zero = Cocycle2::zero(&grp, z(m));
            assert_eq!(h.class_of(&zero).unwrap(), h.zero_class());
        }
    }

    #[test]
    fn class_of_kills_coboundaries() {
        let grp = q8();
        let coeffs = z(8);
        let h = h2(&grp, &coeffs);
        let c: Vec<Vec<i64>> =
            (0..8).map(|g| vec![if g == 0 { 0 } else { (3 * g as i64) % 8 }]).collect();
        let cob = Cocycle2::coboundary(&grp, coeffs.clone(), &c);
        assert_eq!(h.class_of(&cob).unwrap(), h.zero_class());
        let b = &h.basis()[0];
        let shifted = b.add(&cob);
        assert_eq!(h.class_of(&shifted).unwrap(), h.class_of(b).unwrap());
    }

    #[test]
    fn class_of_is_additive() {
        let grp = klein_four();
        let h = h2(&grp, &z(4));
        let basis = h.basis();
        if basis.len() >= 2 {
            let sum = basis[0].add(&basis[1]);
            let mut expect = h.zero_class();
            expect[0] = 1;
            expect[1] = 1;
            assert_eq!(h.class_of(&sum).unwrap(), expect);
        }
    }

    #[test]
    fn h2_annihilated_by_group_order() {
        for grp in [q8(), dihedral(4), heisenberg(3), q16()] {
            let n = grp.order() as i64;
            let h = h2(&grp, &z(n));
            for &f in h.invariant_factors() {
                assert_eq!(n % f, 0, "invariant factor must divide |G|");
            }
        }
    }

    #[test]
    fn cyclic_pushforward_vanishes() {
        // the nonzero class of H²(Z/p, Z/p^n) dies in Z/p^{n+1}
        for (p, n) in [(2i64, 1u32), (2, 2), (3, 1), (3, 2)] {
            let grp = cyclic(p as usize);
            let pn = p.pow(n);
            let h = h2(&grp, &z(pn));
            assert_eq!(h.invariant_factors(), &[p]);
            let phi = FinAbHom::cyclic_multiplier_embedding(pn, pn * p).unwrap();
            let (_, map) = pushforward(&h, &grp, &phi);
            assert!(map.is_zero(), "p = {p}, n = {n}");
        }
    }

    #[test]
    fn identity_pushforward_is_identity() {
        let grp = q8();
        let h = h2(&grp, &z(8));
        let phi = FinAbHom::identity(&z(8));
        let (_, map) = pushforward(&h, &grp, &phi);
        for (j, row) in map.matrix.iter().enumerate() {
            let mut e = vec![0; map.target_factors.len()];
            e[j] = 1;
            assert_eq!(row, &e);
        }
        let phi0 = FinAbHom::zero(&z(8), &z(8));
        let (_, map0) = pushforward(&h, &grp, &phi0);
        assert!(map0.is_zero());
    }

    #[test]
    fn restriction_klein_to_factor_is_surjective() {
        let v4 = klein_four();
        let h = h2(&v4, &z(2));
        // the first Z/2 factor: elements (0,0) and (1,0) = indices 0 and 2
        let sub = v4.subgroup(vec![0, 2]).unwrap();
        let (target, map) = restriction(&h, &v4, &sub);
        assert_eq!(target.invariant_factors(), &[2]);
        assert!(map.is_surjective());
    }

    #[test]
    fn restriction_q8_to_center_is_zero() {
        for m in [2i64, 8] {
            let grp = q8();
            let h = h2(&grp, &z(m));
            let center = grp.center();
            let (_, map) = restriction(&h, &grp, &center);
            assert!(map.is_zero(), "coefficients Z/{m}");
        }
    }

    #[test]
    fn restriction_inflation_composite_vanishes() {
        // inflate along G -> G/Z then restrict to Z: zero for central Z
        for grp in [q8(), dihedral(4), heisenberg(3)] {
            let p = grp.p_group().unwrap().0;
            let zsub = grp.find_central_derived_cyclic(p).unwrap();
            let (q, proj) = grp.quotient(&zsub).unwrap();
            let coeffs = z(grp.order() as i64);
            let hq = h2(&q, &coeffs);
            let (hg, infl) = inflation(&hq, &grp, &proj);
            let (_, restr) = restriction(&hg, &grp, &zsub);
            for j in 0..hq.invariant_factors().len() {
                let mut e = vec![0; hq.invariant_factors().len()];
                e[j] = 1;
                let composed = restr.apply(&infl.apply(&e));
                assert!(composed.iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn inflation_from_quotient_by_order4_subgroup_of_q8() {
        // Q8 / <i> = Z/2; the nonzero class inflates to a class restricting
        // trivially to the kernel
        let grp = q8();
        let i4 = grp.subgroup(grp.close_subgroup(&[1])).unwrap();
        assert_eq!(i4.order(), 4);
        let (q, proj) = grp.quotient(&i4).unwrap();
        assert_eq!(q.order(), 2);
        let coeffs = z(2);
        let hq = h2(&q, &coeffs);
        assert_eq!(hq.invariant_factors(), &[2]);
        let (hg, infl) = inflation(&hq, &grp, &proj);
        let (_, restr) = restriction(&hg, &grp, &i4);
        let image = infl.apply(&[1]);
        let back = restr.apply(&image);
        assert!(back.iter().all(|&v| v == 0));
    }

    #[test]
    fn divisible_coefficients_examples() {
        assert_eq!(h2_divisible(&q8()), &[] as &[i64]);
        assert_eq!(h2_divisible(&q16()), &[] as &[i64]);
        assert_eq!(h2_divisible(&cyclic(12)), &[] as &[i64]);
        assert_eq!(h2_divisible(&cyclic(7)), &[] as &[i64]);
        assert_eq!(h2_divisible(&klein_four()), &[2]);
        assert_eq!(h2_divisible(&dihedral(4)), &[2]);
        assert_eq!(h2_divisible(&heisenberg(3)), &[3, 3]);
    }

    #[test]
    fn multi_component_coefficients() {
        let grp = cyclic(2);
        let a = FinAb::new(vec![2, 4]).unwrap();
        let h = h2(&grp, &a);
        // H²(Z/2, Z/2 x Z/4) = Z/2 x Z/2
        assert_eq!(h.invariant_factors(), &[2, 2]);
        for b in h.basis() {
            assert_eq!(b.coeffs().moduli(), &[2, 4]);
        }
    }

    #[test]
    fn cocycle_validation_rejects_garbage() {
        let grp = cyclic(2);
        let coeffs = z(2);
        let bad = vec![vec![1], vec![0], vec![0], vec![0]];
        assert!(matches!(
            Cocycle2::new(&grp, coeffs.clone(), bad),
            Err(CohomologyError::NotNormalized(..))
        ));
        assert!(matches!(
            Cocycle2::new(&grp, coeffs.clone(), vec![vec![0]; 3]),
            Err(CohomologyError::BadShape)
        ));
        let g3 = cyclic(3);
        let mut vals = vec![vec![0i64]; 9];
        vals[4] = vec![1]; // f(1,1) = 1, rest zero: violates the identity
        assert!(matches!(
            Cocycle2::new(&g3, z(3), vals),
            Err(CohomologyError::NotCocycle(..))
        ));
    }
}
