//! Cyclotomic quotients `R^Λ(ν) = R(ν) / J`, where `J` is the two-sided ideal
//! generated by the elements `x_1^{λ_{i_1}} 1_i`.
//!
//! The ideal is graded and splits into blocks `1_j J 1_i`. Since `R(ν)` is
//! spanned by `ψ_u x^b 1_k`, every block of `J` is spanned by the products
//! `ψ_u x_1^{λ_{i_1}} 1_i ψ_v 1_k · x^e`. The build first finds, for every
//! strand `r` and idempotent `i`, the least `N` with `x_r^N 1_i ∈ J`. All
//! monomials carrying a dot exponent `a_r ≥ N` then lie in `J`, which bounds
//! the degrees of the quotient, and the remaining monomials are reduced
//! against the projected ideal one degree at a time.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{Lin, Mono};
use super::engine::Engine;
use super::graded::{crossing_degree, dot_vectors};
use super::linalg::{Echelon, SparseVec};
use super::{perm, KlrError};
use crate::cartan::{CartanDatum, DominantWeight, RootVector};

type Product = (String, Vec<u8>, Vec<u8>, i64, Vec<(Lin, BigRational)>);

pub const CAP_ENV: &str = "KLR_CRYSTAL_CAP_MB";

/// Rough bytes per stored rational entry, used for the memory cap.
const ENTRY_BYTES: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicCaps {
    pub max_dot_exponent: u32,
    pub max_degree: i64,
    pub max_mem_mb: u64,
}

impl Default for CyclotomicCaps {
    fn default() -> Self {
        CyclotomicCaps {
            max_dot_exponent: 24,
            max_degree: 96,
            max_mem_mb: 2048,
        }
    }
}

impl CyclotomicCaps {
    /// Defaults, with the memory cap read from `KLR_CRYSTAL_CAP_MB` if set.
    pub fn from_env() -> Self {
        let mut caps = Self::default();
        if let Some(mb) = std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            caps.max_mem_mb = mb;
        }
        caps
    }
}

/// One block `1_dst R^Λ 1_src` in one degree.
#[derive(Debug, Clone)]
struct Piece {
    cols: Vec<Mono>,
    index: HashMap<Mono, usize>,
    space: Echelon,
}

impl Piece {
    fn basis(&self) -> impl Iterator<Item = &Mono> {
        self.cols.iter().enumerate().filter(|(k, _)| !self.space.is_pivot(*k)).map(|(_, m)| m)
    }
}

type Block = (Vec<u8>, Vec<u8>);

#[derive(Debug, Clone)]
pub struct CyclotomicPresentation {
    pub nu: RootVector,
    pub lambda: DominantWeight,
    pub words: Vec<Vec<u8>>,
    /// `nilpotency[i][r]` is the least `N` with `x_r^N 1_i ∈ J`; all zero when `1_i ∈ J`.
    nilpotency: BTreeMap<Vec<u8>, Vec<u32>>,
    pieces: BTreeMap<(Block, i64), Piece>,
}

struct Builder<'a> {
    engine: &'a Engine,
    lambda: &'a DominantWeight,
    caps: CyclotomicCaps,
    gens: HashMap<Block, Vec<(i64, Lin)>>,
    entries: usize,
}

fn bii(d: &CartanDatum, i: u8) -> i64 {
    d.bform(i as usize, i as usize)
}

fn to_rat(c: &BigInt) -> BigRational {
    BigRational::from_integer(c.clone())
}

impl<'a> Builder<'a> {
    fn datum(&self) -> &CartanDatum {
        self.engine.datum()
    }

    /// Normal forms of `ψ_u x_1^{λ_{i_1}} 1_i ψ_v 1_src` landing in `1_dst`.
    fn generators(&mut self, dst: &[u8], src: &[u8]) -> Vec<(i64, Lin)> {
        let key = (dst.to_vec(), src.to_vec());
        if let Some(g) = self.gens.get(&key) {
            return g.clone();
        }
        let m = src.len();
        let perms = perm::all_perms(m);
        let mut out = Vec::new();
        for v in &perms {
            let mid = perm::act(v, src);
            let lam = self.lambda.get(mid[0] as usize) as u16;
            let mut b = vec![0u16; m];
            b[0] = lam;
            let base = self.engine.normalize_word(src, &perm::canonical_word(v), &vec![0; m]);
            let lifted = self.engine.left_dots_lin(&b, &base);
            let deg_v = crossing_degree(self.datum(), v, src) + lam as i64 * bii(self.datum(), mid[0]);
            for u in &perms {
                if perm::act(u, &mid) != dst {
                    continue;
                }
                let mut g = lifted.clone();
                for &r in perm::canonical_word(u).iter().rev() {
                    g = self.engine.left_psi_lin(r, &g);
                }
                if !g.is_empty() {
                    out.push((deg_v + crossing_degree(self.datum(), u, &mid), g));
                }
            }
        }
        self.gens.insert(key, out.clone());
        out
    }

    fn charge(&mut self, added: usize) -> Result<(), KlrError> {
        self.entries += added;
        let mb = (self.entries * ENTRY_BYTES) as u64 / (1 << 20);
        if mb > self.caps.max_mem_mb {
            return Err(KlrError::CapExceeded(format!(
                "cyclotomic closure needs more than {} MB",
                self.caps.max_mem_mb
            )));
        }
        Ok(())
    }

    /// The degree-`deg` part of `1_dst J 1_src`, with monomials failing `keep`
    /// dropped. `bound` restricts the right dot shifts `e_r < bound[r]`.
    fn ideal_piece(
        &mut self,
        dst: &[u8],
        src: &[u8],
        deg: i64,
        cols: &mut Vec<Mono>,
        index: &mut HashMap<Mono, usize>,
        bound: Option<&[u32]>,
    ) -> Result<Echelon, KlrError> {
        let gens = self.generators(dst, src);
        let mut space = Echelon::new();
        for (dg, g) in &gens {
            if *dg > deg {
                continue;
            }
            for e in dot_vectors(self.datum(), src, deg - dg) {
                if let Some(n) = bound {
                    if e.iter().zip(n).any(|(&a, &b)| a as u32 >= b) {
                        continue;
                    }
                }
                let mut v = SparseVec::new();
                for (mono, c) in g {
                    let mono = mono.with_dots(&e);
                    if let Some(n) = bound {
                        if mono.dots.iter().zip(n).any(|(&a, &b)| a as u32 >= b) {
                            continue;
                        }
                    }
                    let col = match index.get(&mono) {
                        Some(&k) => k,
                        None if bound.is_some() => {
                            return Err(KlrError::Format(format!("monomial outside the candidate set: {mono:?}")));
                        }
                        None => {
                            cols.push(mono.clone());
                            index.insert(mono, cols.len() - 1);
                            cols.len() - 1
                        }
                    };
                    v.insert(col, to_rat(c));
                }
                let before = space.entries();
                if space.insert(v) {
                    self.charge(space.entries() - before)?;
                }
            }
        }
        Ok(space)
    }

    /// Least `N` with `x_r^N 1_i ∈ J` for every strand `r`.
    fn nilpotency(&mut self, word: &[u8]) -> Result<Vec<u32>, KlrError> {
        let m = word.len();
        let mut spaces: BTreeMap<i64, (Echelon, HashMap<Mono, usize>)> = BTreeMap::new();
        let mut member = |this: &mut Self, r: Option<usize>, k: u32| -> Result<bool, KlrError> {
            let mut mono = Mono::idempotent(word.to_vec());
            let mut deg = 0;
            if let Some(r) = r {
                mono.dots[r] = k as u16;
                deg = k as i64 * bii(this.datum(), word[r]);
            }
            if let std::collections::btree_map::Entry::Vacant(e) = spaces.entry(deg) {
                let mut cols = Vec::new();
                let mut index = HashMap::new();
                let space = this.ideal_piece(word, word, deg, &mut cols, &mut index, None)?;
                e.insert((space, index));
            }
            let (space, index) = &spaces[&deg];
            Ok(match index.get(&mono) {
                Some(&col) => space.contains(&SparseVec::from([(col, BigRational::one())])),
                None => false,
            })
        };
        if member(self, None, 0)? {
            return Ok(vec![0; m]);
        }
        let mut out = Vec::with_capacity(m);
        for r in 0..m {
            let mut k = 1u32;
            loop {
                if k > self.caps.max_dot_exponent || k as i64 * bii(self.datum(), word[r]) > self.caps.max_degree {
                    let labels: Vec<&str> = word.iter().map(|&i| self.datum().label(i as usize)).collect();
                    return Err(KlrError::CapExceeded(format!(
                        "x_{} on 1_({}) not nilpotent below exponent {}",
                        r + 1,
                        labels.join(","),
                        k
                    )));
                }
                if member(self, Some(r), k)? {
                    break;
                }
                k += 1;
            }
            out.push(k);
        }
        Ok(out)
    }
}

/// Monomials of `1_dst R 1_src` of degree `deg` with dot exponents below `bound`.
fn candidates(d: &CartanDatum, dst: &[u8], src: &[u8], deg: i64, bound: &[u32]) -> Vec<Mono> {
    let mut out = Vec::new();
    for arr in perm::all_perms(src.len()) {
        if perm::act(&arr, src) != dst {
            continue;
        }
        let w = perm::canonical_word(&arr);
        let base = crossing_degree(d, &arr, src);
        for dots in dot_vectors(d, src, deg - base) {
            if dots.iter().zip(bound).all(|(&a, &b)| (a as u32) < b) {
                out.push(Mono {
                    word: src.to_vec(),
                    perm: w.clone(),
                    dots,
                });
            }
        }
    }
    out.sort();
    out
}

impl CyclotomicPresentation {
    pub fn build(
        engine: &Engine,
        nu: &RootVector,
        lambda: &DominantWeight,
        caps: CyclotomicCaps,
    ) -> Result<Self, KlrError> {
        let d = engine.datum();
        if lambda.rank() != d.rank() || nu.rank() != d.rank() {
            return Err(KlrError::Format("rank mismatch between datum, ν and Λ".into()));
        }
        let words = perm::sequences(&nu.0);
        let mut b = Builder {
            engine,
            lambda,
            caps,
            gens: HashMap::new(),
            entries: 0,
        };
        let mut nilpotency = BTreeMap::new();
        for w in &words {
            let n = b.nilpotency(w)?;
            nilpotency.insert(w.clone(), n);
        }
        let mut pieces = BTreeMap::new();
        let live: Vec<&Vec<u8>> = words.iter().filter(|w| nilpotency[*w].iter().all(|&n| n > 0)).collect();
        for src in &live {
            let bound = &nilpotency[*src];
            let dots_top: i64 = src
                .iter()
                .zip(bound)
                .map(|(&i, &n)| (n as i64 - 1) * bii(d, i))
                .sum();
            for dst in &live {
                let degs: Vec<i64> = perm::all_perms(src.len())
                    .into_iter()
                    .filter(|arr| perm::act(arr, src) == **dst)
                    .map(|arr| crossing_degree(d, &arr, src))
                    .collect();
                let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
                    continue;
                };
                if hi + dots_top > caps.max_degree {
                    return Err(KlrError::CapExceeded(format!("quotient degree {} above cap", hi + dots_top)));
                }
                for deg in lo..=hi + dots_top {
                    let mut cols = candidates(d, dst, src, deg, bound);
                    if cols.is_empty() {
                        continue;
                    }
                    let mut index: HashMap<Mono, usize> =
                        cols.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
                    let space = b.ideal_piece(dst, src, deg, &mut cols, &mut index, Some(bound))?;
                    pieces.insert(((dst.to_vec(), src.to_vec()), deg), Piece { cols, index, space });
                }
            }
        }
        Ok(CyclotomicPresentation {
            nu: nu.clone(),
            lambda: lambda.clone(),
            words,
            nilpotency,
            pieces,
        })
    }

    pub fn dim(&self) -> u64 {
        self.graded_dim().values().sum()
    }

    /// Graded dimension; degrees with zero dimension are omitted.
    pub fn graded_dim(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for ((_, deg), p) in &self.pieces {
            let n = (p.cols.len() - p.space.rank()) as u64;
            if n > 0 {
                *out.entry(*deg).or_insert(0) += n;
            }
        }
        out
    }

    /// `dim 1_dst R^Λ 1_src`.
    pub fn block_dim(&self, dst: &[u8], src: &[u8]) -> u64 {
        self.pieces
            .iter()
            .filter(|(((j, i), _), _)| j == dst && i == src)
            .map(|(_, p)| (p.cols.len() - p.space.rank()) as u64)
            .sum()
    }

    /// Monomials whose images form a basis of `R^Λ(ν)`.
    pub fn basis(&self) -> Vec<Mono> {
        self.pieces.values().flat_map(|p| p.basis().cloned()).collect()
    }

    /// Rank of the projected ideal in each degree.
    pub fn ideal_ranks(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for ((_, deg), p) in &self.pieces {
            *out.entry(*deg).or_insert(0) += p.space.rank();
        }
        out
    }

    /// Least `N` with `x_r^N 1_i = 0` in the quotient, per idempotent.
    pub fn nilpotency_table(&self) -> &BTreeMap<Vec<u8>, Vec<u32>> {
        &self.nilpotency
    }

    /// Least `k` with `x_r^k = 0` in `R^Λ(ν)` (0-based strand `r`).
    pub fn dot_nilpotency(&self, r: usize) -> Result<u32, KlrError> {
        let m = self.nu.height() as usize;
        if r >= m {
            return Err(KlrError::StrandOutOfRange { index: r + 1, strands: m });
        }
        Ok(self.nilpotency.values().map(|n| n[r]).max().unwrap_or(0))
    }

    /// Checks that the computed ideal is stable under left and right
    /// multiplication by every `x_t` and `ψ_r`, and returns the failures.
    pub fn verify_closure(&self, engine: &Engine) -> Vec<String> {
        let d = engine.datum();
        let mut bad = Vec::new();
        for (((dst, src), deg), piece) in &self.pieces {
            let m = src.len();
            for row in piece.space.rows() {
                let terms: Vec<(&Mono, &BigRational)> = row.iter().map(|(k, c)| (&piece.cols[*k], c)).collect();
                let mut products: Vec<Product> = Vec::new();
                for t in 0..m {
                    let prods = terms.iter().map(|(mo, c)| (engine.left_x(t as u8, mo), (*c).clone())).collect();
                    products.push((format!("x{} ·", t + 1), dst.clone(), src.clone(), deg + bii(d, dst[t]), prods));
                    let mut e = vec![0u16; m];
                    e[t] = 1;
                    let prods = terms
                        .iter()
                        .map(|(mo, c)| (Lin::from([(mo.with_dots(&e), BigInt::one())]), (*c).clone()))
                        .collect();
                    products.push((format!("· x{}", t + 1), dst.clone(), src.clone(), deg + bii(d, src[t]), prods));
                }
                for r in 0..m.saturating_sub(1) {
                    let mut ndst = dst.clone();
                    ndst.swap(r, r + 1);
                    let shift = -d.bform(dst[r] as usize, dst[r + 1] as usize);
                    let prods = terms.iter().map(|(mo, c)| (engine.left_psi(r as u8, mo), (*c).clone())).collect();
                    products.push((format!("ψ{} ·", r + 1), ndst, src.clone(), deg + shift, prods));
                    let mut nsrc = src.clone();
                    nsrc.swap(r, r + 1);
                    let shift = -d.bform(src[r] as usize, src[r + 1] as usize);
                    let mut psi = Mono::idempotent(nsrc.clone());
                    psi.perm = vec![r as u8];
                    let prods = terms.iter().map(|(mo, c)| (engine.mono_mul(mo, &psi), (*c).clone())).collect();
                    products.push((format!("· ψ{}", r + 1), dst.clone(), nsrc, deg + shift, prods));
                }
                for (label, ndst, nsrc, ndeg, prods) in products {
                    if let Err(msg) = self.check_in_ideal(&ndst, &nsrc, ndeg, &prods) {
                        bad.push(format!("{label} row of block {dst:?}<-{src:?} degree {deg}: {msg}"));
                    }
                }
            }
        }
        bad
    }

    fn check_in_ideal(&self, dst: &[u8], src: &[u8], deg: i64, prods: &[(Lin, BigRational)]) -> Result<(), String> {
        let zero = vec![0u32; src.len()];
        let bound = self.nilpotency.get(src).unwrap_or(&zero);
        let dead = |w: &[u8]| self.nilpotency.get(w).is_none_or(|n| n.contains(&0));
        if dead(src) || dead(dst) {
            return Ok(());
        }
        let piece = self.pieces.get(&((dst.to_vec(), src.to_vec()), deg));
        let mut v = SparseVec::new();
        for (lin, c) in prods {
            for (mono, k) in lin {
                if mono.dots.iter().zip(bound).any(|(&a, &b)| a as u32 >= b) {
                    continue;
                }
                let Some(p) = piece else {
                    return Err(format!("term {mono:?} outside every computed piece"));
                };
                let Some(&col) = p.index.get(mono) else {
                    return Err(format!("term {mono:?} not a candidate"));
                };
                let e = v.entry(col).or_insert_with(BigRational::zero);
                *e += c * to_rat(k);
            }
        }
        v.retain(|_, x| !x.is_zero());
        match piece {
            None if v.is_empty() => Ok(()),
            None => Err("nonzero product outside every piece".into()),
            Some(p) if p.space.contains(&v) => Ok(()),
            Some(_) => Err("product leaves the ideal".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(d: &CartanDatum, nu: &[u32], lambda: &[u32]) -> CyclotomicPresentation {
        let e = Engine::new(d);
        let p = CyclotomicPresentation::build(
            &e,
            &RootVector(nu.to_vec()),
            &DominantWeight(lambda.to_vec()),
            CyclotomicCaps::default(),
        )
        .unwrap();
        assert!(p.verify_closure(&e).is_empty());
        p
    }

    #[test]
    fn sl2_examples() {
        let d = CartanDatum::a1();
        let p = build(&d, &[1], &[2]);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.graded_dim(), BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(p.dot_nilpotency(0).unwrap(), 2);
        assert_eq!(build(&d, &[2], &[1]).dim(), 0);
        assert_eq!(build(&d, &[2], &[2]).dim(), 4);
        assert_eq!(build(&d, &[1], &[1]).dot_nilpotency(0).unwrap(), 1);
    }

    #[test]
    fn a2_fundamental() {
        let d = CartanDatum::a2();
        let p = build(&d, &[1, 1], &[1, 0]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.block_dim(&[0, 1], &[0, 1]), 1);
        assert_eq!(p.dot_nilpotency(1).unwrap(), 1);
        assert_eq!(build(&d, &[0, 1], &[1, 0]).dim(), 0);
    }

    #[test]
    fn strand_out_of_range() {
        let p = build(&CartanDatum::a1(), &[1], &[2]);
        assert!(p.dot_nilpotency(1).is_err());
    }
}
