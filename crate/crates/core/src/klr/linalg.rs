//! Sparse row echelon forms over `ℚ`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

pub type SparseVec = BTreeMap<usize, BigRational>;

/// `v -= c · w`.
fn axpy(v: &mut SparseVec, c: &BigRational, w: &SparseVec) {
    for (k, x) in w {
        let slot = v.entry(*k).or_insert_with(BigRational::zero);
        *slot -= c * x;
        if slot.is_zero() {
            v.remove(k);
        }
    }
}

/// Rows in echelon form keyed by pivot (smallest column), pivots normalized to one.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
    entries: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Stored nonzero entries.
    pub fn entries(&self) -> usize {
        self.entries
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut floor = 0usize;
        loop {
            let Some((&k, x)) = v.range(floor..).next() else {
                return v;
            };
            match self.rows.get(&k) {
                Some(row) => {
                    let c = x.clone();
                    axpy(&mut v, &c, row);
                }
                None => floor = k + 1,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&k, lead)) = v.iter().next() else {
            return false;
        };
        let lead = lead.clone();
        let row: SparseVec = v.into_iter().map(|(c, x)| (c, x / &lead)).collect();
        self.entries += row.len();
        self.rows.insert(k, row);
        true
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(k, x)| (k, BigRational::from_integer(x.into()))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 2), (1, 5), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }
}
