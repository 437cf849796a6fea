//! Finitely presented groups: relator words and HLT coset enumeration over
//! the trivial subgroup, realizing the presented group as a table.
//!
//! Relator grammar: lowercase letters are generators, uppercase letters their
//! inverses, a token may carry a signed integer exponent, and `[u,v]` is the
//! commutator `u^-1 v^-1 u v`. Examples: `a16`, `b4`, `[a,b]b-2`, `Baba`.

use super::{FiniteGroup, GroupError};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

/// Hard ceiling on live+dead cosets during enumeration.
pub const COSET_LIMIT: usize = 20_000;
/// Largest group order `from_presentation` will realize.
pub const ORDER_BOUND_MAX: usize = super::MAX_ORDER;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator parse error in {relator:?}: {reason}")]
    Parse { relator: String, reason: String },
    #[error("at most 26 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("order bound {0} exceeds the supported maximum {ORDER_BOUND_MAX}")]
    BadBound(usize),
    #[error("coset enumeration overflowed (group larger than the bound, or blow-up)")]
    EnumerationOverflow,
    #[error("enumerated table is not a group: {0}")]
    BadTable(#[from] GroupError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<String>,
}

/// Parse one relator into a word over signed generator letters:
/// `+(i+1)` is generator `i`, `-(i+1)` its inverse.
pub fn parse_relator(s: &str, generators: usize) -> Result<Vec<i32>, PresentationError> {
    let err = |reason: &str| PresentationError::Parse {
        relator: s.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (word, used) = parse_word(&chars, 0, generators, s)?;
    if used != chars.len() {
        return Err(err("trailing input"));
    }
    if word.is_empty() {
        return Err(err("empty relator"));
    }
    Ok(word)
}

fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

fn parse_word(
    chars: &[char],
    mut pos: usize,
    generators: usize,
    src: &str,
) -> Result<(Vec<i32>, usize), PresentationError> {
    let err = |reason: String| PresentationError::Parse { relator: src.to_string(), reason };
    let mut word: Vec<i32> = Vec::new();
    while pos < chars.len() {
        let c = chars[pos];
        let token: Vec<i32> = if c == '[' {
            let (u, next) = parse_word(chars, pos + 1, generators, src)?;
            if chars.get(next) != Some(&',') {
                return Err(err("expected ',' in commutator".into()));
            }
            let (v, next) = parse_word(chars, next + 1, generators, src)?;
            if chars.get(next) != Some(&']') {
                return Err(err("expected ']' in commutator".into()));
            }
            pos = next + 1;
            // [u, v] = u^-1 v^-1 u v
            let mut t = invert(&u);
            t.extend(invert(&v));
            t.extend(u);
            t.extend(v);
            t
        } else if c.is_ascii_lowercase() || c.is_ascii_uppercase() {
            let idx = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            if idx >= generators {
                return Err(err(format!("letter '{c}' exceeds generator count")));
            }
            pos += 1;
            let letter = (idx + 1) as i32;
            vec![if c.is_ascii_lowercase() { letter } else { -letter }]
        } else if c == ',' || c == ']' {
            break;
        } else {
            return Err(err(format!("unexpected character '{c}'")));
        };

        // optional signed exponent
        let mut exp: i64 = 1;
        let mut have_exp = false;
        let mut sign = 1i64;
        if chars.get(pos) == Some(&'-') && chars.get(pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            sign = -1;
            pos += 1;
        }
        let mut digits = 0i64;
        while chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
            digits = digits * 10 + (chars[pos] as u8 - b'0') as i64;
            if digits > 10_000 {
                return Err(err("exponent too large".into()));
            }
            pos += 1;
            have_exp = true;
        }
        if have_exp {
            exp = sign * digits;
        }
        let repeated: Vec<i32> = if exp >= 0 { token } else { invert(&token) };
        for _ in 0..exp.unsigned_abs() {
            word.extend(&repeated);
        }
    }
    Ok((word, pos))
}

/// HLT coset enumeration over the trivial subgroup.
struct CosetTable {
    ncols: usize,
    rows: Vec<Vec<Option<u32>>>,
    parent: Vec<u32>,
    pending: VecDeque<(u32, u32)>,
    live: usize,
}

impl CosetTable {
    fn new(generators: usize) -> Self {
        CosetTable {
            ncols: 2 * generators,
            rows: vec![vec![None; 2 * generators]],
            parent: vec![0],
            pending: VecDeque::new(),
            live: 1,
        }
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let p = self.parent[a as usize];
            self.parent[a as usize] = self.parent[p as usize];
            a = self.parent[a as usize];
        }
        a
    }

    fn alive(&mut self, a: u32) -> bool {
        self.find(a) == a
    }

    fn get(&mut self, a: u32, col: usize) -> Option<u32> {
        let a = self.find(a) as usize;
        match self.rows[a][col] {
            Some(b) => {
                let b = self.find(b);
                self.rows[a][col] = Some(b);
                Some(b)
            }
            None => None,
        }
    }

    fn define(&mut self, a: u32, col: usize) -> Result<u32, PresentationError> {
        if self.rows.len() >= COSET_LIMIT {
            return Err(PresentationError::EnumerationOverflow);
        }
        let a = self.find(a);
        let b = self.rows.len() as u32;
        self.rows.push(vec![None; self.ncols]);
        self.parent.push(b);
        self.live += 1;
        self.rows[a as usize][col] = Some(b);
        self.rows[b as usize][col ^ 1] = Some(a);
        Ok(b)
    }

    /// Record `a . col = b`, fusing and queueing coincidences as needed.
    fn set_edge(&mut self, a: u32, col: usize, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        match self.get(a, col) {
            None => {
                self.rows[a as usize][col] = Some(b);
                match self.get(b, col ^ 1) {
                    None => self.rows[b as usize][col ^ 1] = Some(a),
                    Some(x) if x == a => {}
                    Some(x) => self.pending.push_back((x, a)),
                }
            }
            Some(x) if x == b => {}
            Some(x) => self.pending.push_back((x, b)),
        }
    }

    fn coincide(&mut self, a: u32, b: u32) {
        self.pending.push_back((a, b));
        while let Some((x, y)) = self.pending.pop_front() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (s, t) = if x < y { (x, y) } else { (y, x) };
            self.parent[t as usize] = s;
            self.live -= 1;
            let row = std::mem::take(&mut self.rows[t as usize]);
            for (col, entry) in row.into_iter().enumerate() {
                if let Some(u) = entry {
                    self.set_edge(s, col, u);
                }
            }
            self.rows[t as usize] = vec![None; self.ncols];
        }
    }

    /// Trace relator `w` (as column indices) at `alpha`, defining cosets to
    /// close the cycle.
    fn scan_and_fill(&mut self, alpha: u32, w: &[usize]) -> Result<(), PresentationError> {
        let mut f = self.find(alpha);
        let mut b = f;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j {
                match self.get(f, w[i]) {
                    Some(x) => {
                        f = x;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.get(b, w[j - 1] ^ 1) {
                    Some(x) => {
                        b = x;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.set_edge(f, w[i], b);
                self.coincide(f, f); // flush any queued coincidences
                return Ok(());
            }
            let next = self.define(f, w[i])?;
            f = next;
            i += 1;
        }
    }
}

/// Realize a finitely presented group as a multiplication table.
/// Fails with `EnumerationOverflow` if the coset table exceeds the hard
/// limit or the enumerated order exceeds `order_bound`.
pub fn from_presentation(
    pres: &Presentation,
    order_bound: usize,
) -> Result<FiniteGroup, PresentationError> {
    if pres.generators > 26 {
        return Err(PresentationError::TooManyGenerators(pres.generators));
    }
    if order_bound > ORDER_BOUND_MAX {
        return Err(PresentationError::BadBound(order_bound));
    }
    if pres.generators == 0 {
        return Ok(FiniteGroup::from_table(vec![vec![0]], Some(vec!["e".into()]))?);
    }
    let words: Vec<Vec<usize>> = pres
        .relators
        .iter()
        .map(|r| {
            parse_relator(r, pres.generators).map(|w| {
                w.into_iter()
                    .map(|x| {
                        if x > 0 {
                            2 * (x as usize - 1)
                        } else {
                            2 * ((-x) as usize - 1) + 1
                        }
                    })
                    .collect()
            })
        })
        .collect::<Result<_, _>>()?;

    let mut table = CosetTable::new(pres.generators.max(1));
    let mut alpha: u32 = 0;
    while (alpha as usize) < table.rows.len() {
        if !table.alive(alpha) {
            alpha += 1;
            continue;
        }
        for w in &words {
            table.scan_and_fill(alpha, w)?;
            if !table.alive(alpha) {
                break;
            }
        }
        if table.alive(alpha) {
            for col in 0..table.ncols {
                if table.get(alpha, col).is_none() {
                    table.define(alpha, col)?;
                }
            }
        }
        alpha += 1;
    }

    let order = table.live;
    if order > order_bound {
        return Err(PresentationError::EnumerationOverflow);
    }

    // relabel live cosets; coset 0 (the identity) stays first
    let mut relabel = vec![usize::MAX; table.rows.len()];
    let mut live: Vec<u32> = Vec::with_capacity(order);
    for i in 0..table.rows.len() as u32 {
        if table.find(i) == i {
            relabel[i as usize] = live.len();
            live.push(i);
        }
    }

    // BFS words from the identity give a representative word per element
    let mut words_of: Vec<Option<Vec<usize>>> = vec![None; order];
    words_of[0] = Some(vec![]);
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let xi = relabel[x as usize];
        for col in 0..table.ncols {
            let y = table.get(x, col).expect("table complete");
            let yi = relabel[y as usize];
            if words_of[yi].is_none() {
                let mut w = words_of[xi].clone().unwrap();
                w.push(col);
                words_of[yi] = Some(w);
                queue.push_back(y);
            }
        }
    }

    let apply = |table: &mut CosetTable, start: u32, w: &[usize]| -> u32 {
        let mut x = start;
        for &c in w {
            x = table.get(x, c).expect("table complete");
        }
        x
    };

    let mut mult = vec![vec![0usize; order]; order];
    for (gi, &g) in live.iter().enumerate() {
        for hi in 0..order {
            let w = words_of[hi].clone().unwrap();
            mult[gi][hi] = relabel[apply(&mut table, g, &w) as usize];
        }
    }

    let names: Vec<String> = words_of
        .iter()
        .map(|w| {
            let w = w.as_ref().unwrap();
            if w.is_empty() {
                "e".to_string()
            } else {
                w.iter()
                    .map(|&c| {
                        let letter = (b'a' + (c / 2) as u8) as char;
                        if c % 2 == 0 {
                            letter
                        } else {
                            letter.to_ascii_uppercase()
                        }
                    })
                    .collect()
            }
        })
        .collect();

    Ok(FiniteGroup::from_table(mult, Some(names))?)
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, isomorphic};
    use super::*;

    fn pres(gens: usize, relators: &[&str]) -> Presentation {
        Presentation { generators: gens, relators: relators.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn parse_relators() {
        assert_eq!(parse_relator("a16", 2).unwrap().len(), 16);
        assert_eq!(parse_relator("Baba", 2).unwrap(), vec![-2, 1, 2, 1]);
        // [a,b]b-2 = A B a b B B
        assert_eq!(parse_relator("[a,b]b-2", 2).unwrap(), vec![-1, -2, 1, 2, -2, -2]);
        assert_eq!(parse_relator("a2B2", 2).unwrap(), vec![1, 1, -2, -2]);
        assert!(parse_relator("c", 2).is_err());
        assert!(parse_relator("", 1).is_err());
        assert!(parse_relator("[a,b", 2).is_err());
    }

    #[test]
    fn cyclic_presentation() {
        let g = from_presentation(&pres(1, &["a7"]), 512).unwrap();
        assert_eq!(g.order(), 7);
        assert!(isomorphic(&g, &catalog::cyclic(7)).is_some());
    }

    #[test]
    fn q8_presentation() {
        // a^4 = 1, a^2 = b^2, b^-1 a b = a^-1
        let g = from_presentation(&pres(2, &["a4", "a2B2", "Baba"]), 512).unwrap();
        assert_eq!(g.order(), 8);
        assert!(isomorphic(&g, &catalog::q8()).is_some());
    }

    #[test]
    fn s3_presentation() {
        let g = from_presentation(&pres(2, &["a3", "b2", "abab"]), 512).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn order_64_group() {
        let g = from_presentation(&pres(2, &["a16", "b4", "[a,b]b-2"]), 512).unwrap();
        assert_eq!(g.order(), 64);
    }

    #[test]
    fn klein_presentation() {
        let g = from_presentation(&pres(2, &["a2", "b2", "[a,b]"]), 512).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn overflow_on_free_group() {
        let res = from_presentation(&pres(2, &["a2000"]), 512);
        assert_eq!(res.unwrap_err(), PresentationError::EnumerationOverflow);
    }

    #[test]
    fn overflow_on_bound() {
        // Z/600 enumerates fine but exceeds the requested bound
        let res = from_presentation(&pres(1, &["a600"]), 512);
        assert_eq!(res.unwrap_err(), PresentationError::EnumerationOverflow);
    }
}
