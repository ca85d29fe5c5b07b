//! Graded dimensions of `1_j R(ν) 1_i`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::element::Mono;
use super::engine::Engine;
use super::linalg::{Echelon, SparseVec};
use super::perm;
use crate::cartan::CartanDatum;

/// Degree of `ψ_w 1_i` for the permutation array `arr`.
pub fn crossing_degree(d: &CartanDatum, arr: &[u8], src: &[u8]) -> i64 {
    perm::crossings(arr)
        .into_iter()
        .map(|(p, q)| -d.bform(src[p] as usize, src[q] as usize))
        .sum()
}

/// `Σ_{w : w(src) = dst} q^{deg ψ_w 1_src} Π_r (1 - q^{(α_{i_r}, α_{i_r})})^{-1}`
/// through degree `max_deg`.
pub fn graded_dim_series(d: &CartanDatum, src: &[u8], dst: &[u8], max_deg: i64) -> BTreeMap<i64, u64> {
    let m = src.len();
    let mut out: BTreeMap<i64, u64> = BTreeMap::new();
    let mut dots: BTreeMap<i64, u64> = BTreeMap::from([(0, 1)]);
    for &i in src {
        let step = d.bform(i as usize, i as usize);
        let mut next = BTreeMap::new();
        for (&deg, &c) in &dots {
            let mut e = deg;
            while e <= max_deg + 2 * m as i64 * 64 {
                *next.entry(e).or_insert(0) += c;
                e += step;
            }
        }
        dots = next;
    }
    for arr in perm::all_perms(m) {
        if perm::act(&arr, src) != dst {
            continue;
        }
        let base = crossing_degree(d, &arr, src);
        for (&deg, &c) in &dots {
            if base + deg <= max_deg {
                *out.entry(base + deg).or_insert(0) += c;
            }
        }
    }
    out
}

/// Dot vectors on `m` strands with total degree exactly `deg`.
pub fn dot_vectors(d: &CartanDatum, word: &[u8], deg: i64) -> Vec<Vec<u16>> {
    fn rec(d: &CartanDatum, word: &[u8], k: usize, left: i64, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k == word.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let step = d.bform(word[k] as usize, word[k] as usize);
        let mut a = 0u16;
        while a as i64 * step <= left {
            cur.push(a);
            rec(d, word, k + 1, left - a as i64 * step, cur, out);
            cur.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    if deg >= 0 {
        rec(d, word, 0, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// Graded dimension of `1_dst R 1_src` computed with the engine: the rank,
/// degree by degree, of the span of `x^b ψ_ŵ 1_src` (dots placed above the
/// crossings) rewritten into normal form.
pub fn spanned_graded_dims(engine: &Engine, src: &[u8], dst: &[u8], max_deg: i64) -> BTreeMap<i64, u64> {
    let d = engine.datum();
    let m = src.len();
    let mut spaces: BTreeMap<i64, (Echelon, HashMap<Mono, usize>)> = BTreeMap::new();
    for arr in perm::all_perms(m) {
        if perm::act(&arr, src) != dst {
            continue;
        }
        let w = perm::canonical_word(&arr);
        let base = crossing_degree(d, &arr, src);
        let psi = Mono {
            word: src.to_vec(),
            perm: w,
            dots: vec![0; m],
        };
        let psi_lin = std::iter::once((psi, num_bigint::BigInt::from(1))).collect();
        for deg in 0..=(max_deg - base).max(-1) {
            for b in dot_vectors(d, dst, deg) {
                let lin = engine.left_dots_lin(&b, &psi_lin);
                let (space, cols) = spaces.entry(base + deg).or_default();
                let mut v = SparseVec::new();
                for (mono, c) in lin {
                    let n = cols.len();
                    let col = *cols.entry(mono).or_insert(n);
                    v.insert(col, BigRational::from_integer(c));
                }
                space.insert(v);
            }
        }
    }
    spaces
        .into_iter()
        .filter(|(_, (s, _))| s.rank() > 0)
        .map(|(k, (s, _))| (k, s.rank() as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_examples() {
        let d = CartanDatum::a1();
        let s = graded_dim_series(&d, &[0], &[0], 4);
        assert_eq!(s, BTreeMap::from([(0, 1), (2, 1), (4, 1)]));
        let s = graded_dim_series(&d, &[0, 0], &[0, 0], 0);
        assert_eq!(s.iter().next(), Some((&-2, &1)));
        let d = CartanDatum::a2();
        let s = graded_dim_series(&d, &[0, 1], &[1, 0], 1);
        assert_eq!(s, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn engine_agrees_on_small_cases() {
        let d = CartanDatum::a2();
        let e = Engine::new(&d);
        for (src, dst) in [(vec![0u8, 1, 0], vec![0u8, 0, 1]), (vec![0, 0, 1], vec![0, 0, 1])] {
            assert_eq!(spanned_graded_dims(&e, &src, &dst, 6), graded_dim_series(&d, &src, &dst, 6));
        }
    }
}
