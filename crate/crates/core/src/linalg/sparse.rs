//! Sparse vectors and an incremental echelon form.
//!
//! Pivots are the *highest* nonzero index of each row, so reducing a vector
//! rewrites large indices in terms of smaller ones. Path-algebra bases are
//! indexed in increasing deg-lex order, which makes the normal form of a path
//! a combination of smaller surviving paths.

use std::collections::HashMap;

use super::scalar::{FieldSpec, Scalar};

/// Sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(field: FieldSpec, n: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = field.zeros(n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c·b`
pub fn add_scaled(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + &(c * &b[j].1);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Builds a sparse vector from unsorted, possibly repeated entries.
pub fn collect(mut entries: Vec<(usize, Scalar)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Incrementally built echelon basis keyed by pivot (highest index).
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: HashMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds `v` to the span. Returns the new (normalized) row when `v` was
    /// independent of the current rows.
    pub fn insert(&mut self, v: SparseVec) -> Option<&SparseVec> {
        let mut v = v;
        while let Some((lead, c)) = v.last().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = add_scaled(&v, &(-&c), row),
                None => {
                    let inv = c.inv().expect("nonzero leading coefficient");
                    let row = scale(&v, &inv);
                    self.rows.insert(lead, row);
                    return self.rows.get(&lead);
                }
            }
        }
        None
    }

    /// Normal form: no remaining entry sits at a pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut cursor = usize::MAX;
        loop {
            let next = v
                .iter()
                .rev()
                .find(|(i, _)| *i <= cursor && self.rows.contains_key(i))
                .cloned();
            let Some((i, c)) = next else { break };
            v = add_scaled(&v, &(-&c), &self.rows[&i]);
            if i == 0 {
                break;
            }
            cursor = i - 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Rewrites every row so that it has no entries at other pivots.
    pub fn fully_reduce(&mut self) {
        let mut keys: Vec<usize> = self.rows.keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            let row = self.rows.remove(&k).expect("row present");
            let (lead, rest) = row.split_last().expect("nonempty row");
            let mut rest: SparseVec = rest.to_vec();
            rest = self.reduce(&rest);
            rest.push(lead.clone());
            self.rows.insert(k, rest);
        }
    }

    /// Null space of the row space viewed as a linear system in `n` unknowns.
    pub fn kernel(&mut self, field: FieldSpec, n: usize) -> Vec<SparseVec> {
        self.fully_reduce();
        let minus_one = -&field.one();
        let mut by_free: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (&p, row) in &self.rows {
            for (j, x) in row {
                if *j != p {
                    by_free.entry(*j).or_default().push((p, x * &minus_one));
                }
            }
        }
        (0..n)
            .filter(|f| !self.rows.contains_key(f))
            .map(|f| {
                let mut entries = by_free.remove(&f).unwrap_or_default();
                entries.push((f, field.one()));
                collect(entries)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        collect(entries.iter().map(|&(i, x)| (i, Q.from_i64(x))).collect())
    }

    #[test]
    fn insert_detects_dependence() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(sv(&[(0, 1), (2, 1)])).is_some());
        assert!(e.insert(sv(&[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(sv(&[(0, 1), (1, 1)])).is_some());
        assert!(e.insert(sv(&[(0, 2), (2, 2)])).is_none());
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn reduce_rewrites_to_smaller_indices() {
        let mut e = SparseEchelon::new();
        e.insert(sv(&[(1, 1), (4, -1)]));
        assert_eq!(e.reduce(&sv(&[(4, 3)])), sv(&[(1, 3)]));
    }

    #[test]
    fn kernel_dimension() {
        let mut e = SparseEchelon::new();
        e.insert(sv(&[(0, 1), (1, 2)]));
        e.insert(sv(&[(1, 1), (2, 1)]));
        let k = e.kernel(Q, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in e.rows.values() {
                let dot = v.iter().fold(Q.zero(), |acc, (i, x)| {
                    match row.iter().find(|(j, _)| j == i) {
                        Some((_, y)) => &acc + &(x * y),
                        None => acc,
                    }
                });
                assert!(dot.is_zero());
            }
        }
    }
}
