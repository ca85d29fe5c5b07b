//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use klr_core::charcalc::Character;
use klr_core::klr::graded::{crossing_degree, dot_vectors};
use klr_core::klr::{perm, KlrElement, Mono};
use klr_core::{CartanDatum, DominantWeight, LaurentPoly, RootVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// Positive roots of a finite-type datum in simple-root coordinates.
pub fn positive_roots(d: &CartanDatum) -> Vec<Vec<i64>> {
    let n = d.rank();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    while let Some(b) = stack.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| b[j] * d.cartan(i, j)).sum();
            let mut c = b.clone();
            c[i] -= pair;
            if c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0) && !seen.contains(&c) {
                stack.push(c);
            }
        }
        assert!(seen.len() < 500, "not of finite type");
    }
    seen.into_iter().collect()
}

fn form(d: &CartanDatum, a: &[i64], b: &[i64]) -> i64 {
    let n = d.rank();
    let mut s = 0;
    for (i, ai) in a.iter().enumerate().take(n) {
        for (j, bj) in b.iter().enumerate().take(n) {
            s += ai * bj * d.bform(i, j);
        }
    }
    s
}

/// Weight multiplicities of the irreducible module `V(Λ)` by Freudenthal's
/// formula, keyed by `ν` where the weight is `Λ - ν`.
pub fn freudenthal(d: &CartanDatum, lambda: &DominantWeight) -> BTreeMap<RootVector, u64> {
    let n = d.rank();
    let roots = positive_roots(d);
    // (Λ, α_j) = λ_j d_j and (ρ, α_j) = d_j.
    let lam_dot = |v: &[i64]| -> i64 { (0..n).map(|j| v[j] * lambda.get(j) as i64 * d.d(j)).sum() };
    let rho_dot = |v: &[i64]| -> i64 { (0..n).map(|j| v[j] * d.d(j)).sum() };
    let max_height: i64 = 4 * roots.iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(1) * (1 + lambda.0.iter().sum::<u32>() as i64);
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    mult.insert(vec![0; n], 1);
    let mut layer = vec![vec![0i64; n]];
    for _ in 1..=max_height {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for v in &layer {
            for i in 0..n {
                let mut w = v.clone();
                w[i] += 1;
                next.insert(w);
            }
        }
        let mut kept = Vec::new();
        for nu in next {
            let denom = 2 * (lam_dot(&nu) + rho_dot(&nu)) - form(d, &nu, &nu);
            let mut num = 0i64;
            for a in &roots {
                let mut k = 1i64;
                loop {
                    let shifted: Vec<i64> = (0..n).map(|t| nu[t] - k * a[t]).collect();
                    if shifted.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted) {
                        // (Λ - ν + kα, α)
                        let ip = lam_dot(a) - form(d, &nu, a) + k * form(d, a, a);
                        num += 2 * m * ip;
                    }
                    k += 1;
                }
            }
            if denom != 0 && num != 0 {
                assert_eq!(num % denom, 0);
                mult.insert(nu.clone(), num / denom);
                kept.push(nu);
            } else if denom == 0 {
                assert_eq!(num, 0);
            }
        }
        if kept.is_empty() {
            break;
        }
        layer = kept;
    }
    mult.into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|(nu, m)| (RootVector(nu.iter().map(|&x| x as u32).collect()), m as u64))
        .collect()
}

/// Positive roots up to height `h` for the affine datum with form
/// `[[2,-2],[-2,2]]`; every root there has multiplicity one.
pub fn affine_a1_roots(h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for k in 0..=h {
        if 2 * k < h {
            out.push(vec![k + 1, k]);
            out.push(vec![k, k + 1]);
        }
        if k >= 1 && 2 * k <= h {
            out.push(vec![k, k]);
        }
    }
    out
}

/// Kostant's partition function: the number of ways to write `nu` as a sum
/// of the given positive roots (repeats allowed, order ignored).
pub fn kostant(roots: &[Vec<i64>], nu: &[i64]) -> u64 {
    fn rec(roots: &[Vec<i64>], k: usize, left: &[i64]) -> u64 {
        if left.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        let mut total = 0;
        let mut cur = left.to_vec();
        while cur.iter().all(|&x| x >= 0) {
            total += rec(roots, k + 1, &cur);
            for (a, b) in cur.iter_mut().zip(&roots[k]) {
                *a -= b;
            }
        }
        total
    }
    rec(roots, 0, nu)
}

/// Quantum shuffle by enumerating position subsets: a pair of letters
/// contributes `-(α_u, α_v)` when the letter of the right factor ends up to
/// the left of the letter of the left factor.
pub fn brute_shuffle(d: &CartanDatum, f: &Character, g: &Character) -> Character {
    let nu = f.nu().add(g.nu());
    let mut out = Character::zero(nu.clone());
    for (u, cu) in f.terms() {
        for (v, cv) in g.terms() {
            let m = u.len() + v.len();
            for mask in 0u32..(1 << m) {
                if mask.count_ones() as usize != u.len() {
                    continue;
                }
                let mut word = Vec::with_capacity(m);
                let (mut iu, mut iv) = (0, 0);
                let mut deg = 0;
                for p in 0..m {
                    if mask & (1 << p) != 0 {
                        word.push(u[iu]);
                        iu += 1;
                    } else {
                        for &x in &u[iu..] {
                            deg -= d.bform(x, v[iv]);
                        }
                        word.push(v[iv]);
                        iv += 1;
                    }
                }
                let coeff = &(cu * cv) * &LaurentPoly::q_pow(deg);
                let term = Character::single(d.rank(), word, coeff);
                out = out.add(&term);
            }
        }
    }
    out
}

/// `dim R^{λΛ}(m·i) = (m!)² · C(λ, m)` for the one-vertex datum.
pub fn nilhecke_cyclotomic_dim(lambda: u64, m: u64) -> u64 {
    if m > lambda {
        return 0;
    }
    let fact: u64 = (1..=m).product();
    let binom: u64 = (0..m).fold(1, |acc, k| acc * (lambda - k) / (k + 1));
    fact * fact * binom
}

/// A random monomial with source `word`, crossings drawn from all of `S_m`
/// and dot exponents at most `max_dot`.
pub fn random_mono<R: Rng>(rng: &mut R, word: &[u8], max_dot: u16) -> Mono {
    let perms = perm::all_perms(word.len());
    let arr = perms.choose(rng).unwrap();
    Mono {
        word: word.to_vec(),
        perm: perm::canonical_word(arr),
        dots: (0..word.len()).map(|_| rng.gen_range(0..=max_dot)).collect(),
    }
}

/// A random homogeneous element with source idempotent `word`: up to three
/// monomials of the same degree with small nonzero integer coefficients.
pub fn random_homogeneous<R: Rng>(rng: &mut R, d: &CartanDatum, word: &[u8], max_dot: u16) -> KlrElement {
    let first = random_mono(rng, word, max_dot);
    let deg = first.degree(d);
    let mut out = KlrElement::zero(first.nu(d.rank()));
    out.add_term(first.clone(), BigRational::from_integer(BigInt::from(rng.gen_range(1..=3))));
    let perms = perm::all_perms(word.len());
    for _ in 0..rng.gen_range(0..=2) {
        let arr = perms.choose(rng).unwrap();
        let base = crossing_degree(d, arr, word);
        let dots = dot_vectors(d, word, deg - base);
        if let Some(dv) = dots.choose(rng) {
            let m = Mono {
                word: word.to_vec(),
                perm: perm::canonical_word(arr),
                dots: dv.clone(),
            };
            if m == first {
                continue;
            }
            out.add_term(m, BigRational::from_integer(BigInt::from(rng.gen_range(-3..=3))));
        }
    }
    out
}

/// The top idempotent of the first term.
pub fn top_of(e: &KlrElement) -> Vec<u8> {
    e.terms.keys().next().map(|m| m.top()).unwrap_or_default()
}

/// All `ν` of rank `n` with `1 ≤ |ν| ≤ max`.
pub fn contents(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out.retain(|v| v.iter().sum::<u32>() > 0);
    out
}

/// `⟨f_i v_Λ, f_j v_Λ⟩` at `q = 1` for the Shapovalov form, where
/// `f_i = f_{i_m} ⋯ f_{i_1}` (so `i_1` acts first). This is `dim 1_j R^Λ(ν) 1_i`.
pub fn shapovalov(d: &CartanDatum, lambda: &DominantWeight, i: &[usize], j: &[usize]) -> i64 {
    let i: Vec<usize> = i.iter().rev().copied().collect();
    let j: Vec<usize> = j.iter().rev().copied().collect();
    shapovalov_outer_first(d, lambda, &i, &j)
}

fn shapovalov_outer_first(d: &CartanDatum, lambda: &DominantWeight, i: &[usize], j: &[usize]) -> i64 {
    if i.is_empty() {
        return i64::from(j.is_empty());
    }
    let k = i[0];
    let mut total = 0;
    for t in 0..j.len() {
        if j[t] != k {
            continue;
        }
        let below: i64 = j[t + 1..].iter().map(|&s| d.cartan(k, s)).sum();
        let coeff = lambda.get(k) as i64 - below;
        if coeff == 0 {
            continue;
        }
        let mut rest = j.to_vec();
        rest.remove(t);
        total += coeff * shapovalov_outer_first(d, lambda, &i[1..], &rest);
    }
    total
}
