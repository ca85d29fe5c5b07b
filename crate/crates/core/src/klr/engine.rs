//! Rewriting into PBW normal form.
//!
//! Every product is computed by left-multiplying generators onto normal
//! forms. Dots at the bottom ride along on the right, so the memo tables
//! are keyed by dot-free monomials `ψ_ŵ 1_i` only.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{lin_add, lin_add_scaled, KlrElement, Lin, Mono};
use super::perm;
use super::KlrError;
use crate::cartan::CartanDatum;

type Key = (u8, Vec<u8>, Vec<u8>);
type Memo<K> = RwLock<HashMap<K, Arc<Lin>>>;

/// A rewriting engine for one Cartan datum, with shared memo tables.
#[derive(Debug)]
pub struct Engine {
    datum: CartanDatum,
    memo_x: Memo<Key>,
    memo_psi: Memo<Key>,
    memo_canon: Memo<(Vec<u8>, Vec<u8>)>,
}

struct Correction {
    sign: i64,
    prefix: Vec<u8>,
    /// Dot monomials of the cubic correction polynomial.
    poly: Vec<Vec<u16>>,
    suffix: Vec<u8>,
}

fn single(m: Mono) -> Lin {
    let mut l = Lin::new();
    l.insert(m, BigInt::one());
    l
}

fn lookup<K: std::hash::Hash + Eq, V: Clone>(table: &RwLock<HashMap<K, V>>, key: &K) -> Option<V> {
    table.read().expect("memo lock poisoned").get(key).cloned()
}

fn store<K: std::hash::Hash + Eq, V>(table: &RwLock<HashMap<K, V>>, key: K, value: V) {
    table.write().expect("memo lock poisoned").entry(key).or_insert(value);
}

impl Engine {
    pub fn new(datum: &CartanDatum) -> Self {
        Engine {
            datum: datum.clone(),
            memo_x: RwLock::default(),
            memo_psi: RwLock::default(),
            memo_canon: RwLock::default(),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    /// Number of cached dot-free products.
    pub fn memo_size(&self) -> usize {
        self.memo_x.read().map(|m| m.len()).unwrap_or(0)
            + self.memo_psi.read().map(|m| m.len()).unwrap_or(0)
            + self.memo_canon.read().map(|m| m.len()).unwrap_or(0)
    }

    fn free(word: &[u8], perm: Vec<u8>) -> Mono {
        Mono {
            word: word.to_vec(),
            perm,
            dots: vec![0; word.len()],
        }
    }

    /// `x_t · m` in normal form.
    pub fn left_x(&self, t: u8, m: &Mono) -> Lin {
        let base = self.left_x_free(t, &m.word, &m.perm);
        let mut out = Lin::new();
        lin_add_scaled(&mut out, &base, &BigInt::one(), &m.dots);
        out
    }

    /// `ψ_r · m` in normal form.
    pub fn left_psi(&self, r: u8, m: &Mono) -> Lin {
        let base = self.left_psi_free(r, &m.word, &m.perm);
        let mut out = Lin::new();
        lin_add_scaled(&mut out, &base, &BigInt::one(), &m.dots);
        out
    }

    pub fn left_x_lin(&self, t: u8, lin: &Lin) -> Lin {
        let mut out = Lin::new();
        for (m, c) in lin {
            let base = self.left_x_free(t, &m.word, &m.perm);
            lin_add_scaled(&mut out, &base, c, &m.dots);
        }
        out
    }

    pub fn left_psi_lin(&self, r: u8, lin: &Lin) -> Lin {
        let mut out = Lin::new();
        for (m, c) in lin {
            let base = self.left_psi_free(r, &m.word, &m.perm);
            lin_add_scaled(&mut out, &base, c, &m.dots);
        }
        out
    }

    /// `x^b · lin`.
    pub fn left_dots_lin(&self, b: &[u16], lin: &Lin) -> Lin {
        let mut cur = lin.clone();
        for (t, &k) in b.iter().enumerate() {
            for _ in 0..k {
                cur = self.left_x_lin(t as u8, &cur);
            }
        }
        cur
    }

    fn left_x_free(&self, t: u8, word: &[u8], perm: &[u8]) -> Arc<Lin> {
        let key = (t, word.to_vec(), perm.to_vec());
        if let Some(v) = lookup(&self.memo_x, &key) {
            return v;
        }
        let result = if perm.is_empty() {
            let mut m = Self::free(word, Vec::new());
            m.dots[t as usize] = 1;
            single(m)
        } else {
            let w1 = perm[0];
            let rest = Self::free(word, perm[1..].to_vec());
            let below = rest.top();
            let st = if t == w1 {
                w1 + 1
            } else if t == w1 + 1 {
                w1
            } else {
                t
            };
            let inner = self.left_x_free(st, word, &perm[1..]);
            let mut out = self.left_psi_lin(w1, &inner);
            if below[w1 as usize] == below[w1 as usize + 1] {
                // x_r ψ_r = ψ_r x_{r+1} + 1,  x_{r+1} ψ_r = ψ_r x_r - 1
                if t == w1 {
                    lin_add(&mut out, rest, BigInt::one());
                } else if t == w1 + 1 {
                    lin_add(&mut out, rest, -BigInt::one());
                }
            }
            out
        };
        let result = Arc::new(result);
        store(&self.memo_x, key, result.clone());
        result
    }

    /// `ψ_r ψ_r 1_k` as dot monomials with coefficient one.
    fn quadratic(&self, k: &[u8], r: usize) -> Vec<Vec<u16>> {
        let (a, b) = (k[r] as usize, k[r + 1] as usize);
        if a == b {
            return Vec::new();
        }
        let m = k.len();
        if self.datum.bform(a, b) == 0 {
            return vec![vec![0; m]];
        }
        let mut p = vec![0u16; m];
        p[r] = self.datum.a(a, b) as u16;
        let mut q = vec![0u16; m];
        q[r + 1] = self.datum.a(b, a) as u16;
        vec![p, q]
    }

    /// `(ψ_r ψ_{r+1} ψ_r - ψ_{r+1} ψ_r ψ_{r+1}) 1_k` as dot monomials.
    fn cubic(&self, k: &[u8], r: usize) -> Vec<Vec<u16>> {
        let (a, b) = (k[r] as usize, k[r + 1] as usize);
        if a != k[r + 2] as usize || a == b || self.datum.bform(a, b) == 0 {
            return Vec::new();
        }
        let big_a = self.datum.a(a, b);
        (0..big_a)
            .map(|t| {
                let mut v = vec![0u16; k.len()];
                v[r] = t as u16;
                v[r + 2] = (big_a - 1 - t) as u16;
                v
            })
            .collect()
    }

    fn left_psi_free(&self, r: u8, word: &[u8], perm_word: &[u8]) -> Arc<Lin> {
        let key = (r, word.to_vec(), perm_word.to_vec());
        if let Some(v) = lookup(&self.memo_psi, &key) {
            return v;
        }
        let m = word.len();
        let arr = perm::perm_of_word(m, perm_word);
        let mut ext = vec![r];
        ext.extend_from_slice(perm_word);
        let result = if !perm::is_left_descent(&arr, r) {
            (*self.canonicalize(word, &ext)).clone()
        } else {
            let u = perm::canonical_word(&perm::left_mul(&arr, r));
            let mut ru = vec![r];
            ru.extend_from_slice(&u);
            // ψ_{r u'} = ψ_ŵ + lower, so ψ_r ψ_ŵ = ψ_r ψ_r ψ_{u'} - ψ_r · lower
            let full = self.canonicalize(word, &ru);
            let mut lower = (*full).clone();
            lin_add(&mut lower, Self::free(word, perm_word.to_vec()), -BigInt::one());
            let mut out = Lin::new();
            let base = Self::free(word, u);
            let k = base.top();
            let base_lin = single(base);
            for b in self.quadratic(&k, r as usize) {
                let term = self.left_dots_lin(&b, &base_lin);
                lin_add_scaled(&mut out, &term, &BigInt::one(), &[]);
            }
            let corr = self.left_psi_lin(r, &lower);
            lin_add_scaled(&mut out, &corr, &-BigInt::one(), &[]);
            out
        };
        let result = Arc::new(result);
        store(&self.memo_psi, key, result.clone());
        result
    }

    /// Normal form of `ψ_{u_1} ⋯ ψ_{u_k} 1_word` for a reduced word `u`.
    pub fn canonicalize(&self, word: &[u8], u: &[u8]) -> Arc<Lin> {
        let key = (word.to_vec(), u.to_vec());
        if let Some(v) = lookup(&self.memo_canon, &key) {
            return v;
        }
        let m = word.len();
        let arr = perm::perm_of_word(m, u);
        debug_assert_eq!(perm::length(&arr), u.len(), "canonicalize needs a reduced word");
        let canon = perm::canonical_word(&arr);
        let result = if canon == u {
            single(Self::free(word, canon))
        } else {
            let d = perm::min_left_descent(&arr).expect("nonidentity permutation");
            let mut cur = u.to_vec();
            let mut corrections = Vec::new();
            self.bring_to_front(word, &mut cur, 0, d, &mut corrections);
            let mut out = Lin::new();
            for c in corrections {
                let term = self.eval_correction(word, &c);
                lin_add_scaled(&mut out, &term, &BigInt::from(c.sign), &[]);
            }
            let tail = self.canonicalize(word, &cur[1..]);
            let head = self.left_psi_lin(d, &tail);
            lin_add_scaled(&mut out, &head, &BigInt::one(), &[]);
            out
        };
        let result = Arc::new(result);
        store(&self.memo_canon, key, result.clone());
        result
    }

    /// Rewrites `cur[start..]`, whose permutation has left descent `d`, into a
    /// word beginning with `d` using commutations and braid moves.
    fn bring_to_front(&self, word: &[u8], cur: &mut Vec<u8>, start: usize, d: u8, out: &mut Vec<Correction>) {
        let e = cur[start];
        if e == d {
            return;
        }
        self.bring_to_front(word, cur, start + 1, d, out);
        if e.abs_diff(d) >= 2 {
            cur.swap(start, start + 1);
            return;
        }
        self.bring_to_front(word, cur, start + 2, e, out);
        // cur[start..start + 3] = (e, d, e)
        let r = e.min(d) as usize;
        let suffix = cur[start + 3..].to_vec();
        let below = Self::free(word, suffix.clone()).top();
        let poly = self.cubic(&below, r);
        if !poly.is_empty() {
            out.push(Correction {
                sign: if e as usize == r { 1 } else { -1 },
                prefix: cur[..start].to_vec(),
                poly,
                suffix,
            });
        }
        cur[start] = d;
        cur[start + 1] = e;
        cur[start + 2] = d;
    }

    fn eval_correction(&self, word: &[u8], c: &Correction) -> Lin {
        let base = self.canonicalize(word, &c.suffix);
        let mut out = Lin::new();
        for b in &c.poly {
            let term = self.left_dots_lin(b, &base);
            lin_add_scaled(&mut out, &term, &BigInt::one(), &[]);
        }
        for &r in c.prefix.iter().rev() {
            out = self.left_psi_lin(r, &out);
        }
        out
    }

    /// `m1 · m2`.
    pub fn mono_mul(&self, m1: &Mono, m2: &Mono) -> Lin {
        if m1.word != m2.top() {
            return Lin::new();
        }
        let mut cur = single(m2.clone());
        cur = self.left_dots_lin(&m1.dots, &cur);
        for &r in m1.perm.iter().rev() {
            cur = self.left_psi_lin(r, &cur);
        }
        cur
    }

    /// Normal form of an arbitrary generator string
    /// `ψ_{g_1} ⋯ ψ_{g_k} x^dots 1_word` (the `g` need not be reduced).
    pub fn normalize_word(&self, word: &[u8], gens: &[u8], dots: &[u16]) -> Lin {
        let mut m = Mono::idempotent(word.to_vec());
        m.dots = dots.to_vec();
        let mut cur = single(m);
        for &r in gens.iter().rev() {
            cur = self.left_psi_lin(r, &cur);
        }
        cur
    }

    pub fn multiply(&self, a: &KlrElement, b: &KlrElement) -> Result<KlrElement, KlrError> {
        if a.nu != b.nu {
            return Err(KlrError::ContentMismatch {
                left: a.nu.clone(),
                right: b.nu.clone(),
            });
        }
        let mut out = KlrElement::zero(a.nu.clone());
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let prod = self.mono_mul(m1, m2);
                let c = c1 * c2;
                for (m, v) in prod {
                    out.add_term(m, &c * BigRational::from_integer(v));
                }
            }
        }
        Ok(out)
    }

    /// The involution `σ`: reflect diagrams left to right, with a sign for
    /// every crossing of equally labelled strands.
    pub fn sigma(&self, a: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(a.nu.clone());
        for (m, c) in &a.terms {
            let n = m.strands();
            let arr = m.perm_array();
            let equal = perm::crossings(&arr)
                .into_iter()
                .filter(|&(p, q)| m.word[p] == m.word[q])
                .count();
            let sign = if equal % 2 == 0 { 1 } else { -1 };
            let word: Vec<u8> = m.word.iter().rev().copied().collect();
            let gens: Vec<u8> = m.perm.iter().map(|&r| (n - 2) as u8 - r).collect();
            let dots: Vec<u16> = m.dots.iter().rev().copied().collect();
            let base = self.canonicalize(&word, &gens);
            let coeff = c * BigRational::from_integer(BigInt::from(sign));
            for (mm, v) in base.iter() {
                out.add_term(mm.with_dots(&dots), &coeff * BigRational::from_integer(v.clone()));
            }
        }
        out
    }

    /// Builds an element from raw terms, normalizing each generator string.
    pub fn element_from_terms(
        &self,
        nu: crate::cartan::RootVector,
        terms: &[crate::klr::element::RawTerm],
    ) -> KlrElement {
        let mut out = KlrElement::zero(nu);
        for (word, gens, dots, c) in terms {
            let w: Vec<u8> = word.iter().map(|&i| i as u8).collect();
            let g: Vec<u8> = gens.iter().map(|&r| r as u8).collect();
            for (m, v) in self.normalize_word(&w, &g, dots) {
                out.add_term(m, c * BigRational::from_integer(v));
            }
        }
        out
    }

    /// The elements `ψ_r 1_i`, `x_t 1_i`, `1_i` for every `i` of content `ν`,
    /// i.e. a generating set of `R(ν)`.
    pub fn generators(&self, words: &[Vec<u8>]) -> Vec<KlrElement> {
        let rank = self.datum.rank();
        let mut out = Vec::new();
        for w in words {
            let m = w.len();
            out.push(KlrElement::from_mono(rank, Mono::idempotent(w.clone())));
            for t in 0..m {
                let mut mono = Mono::idempotent(w.clone());
                mono.dots[t] = 1;
                out.push(KlrElement::from_mono(rank, mono));
            }
            for r in 0..m.saturating_sub(1) {
                let mut mono = Mono::idempotent(w.clone());
                mono.perm = vec![r as u8];
                out.push(KlrElement::from_mono(rank, mono));
            }
        }
        out
    }

    pub fn is_zero_lin(lin: &Lin) -> bool {
        lin.values().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootVector;

    fn el(terms: &[(Mono, i64)], rank: usize) -> KlrElement {
        let nu = terms[0].0.nu(rank);
        let mut e = KlrElement::zero(nu);
        for (m, c) in terms {
            e.add_term(m.clone(), BigRational::from_integer((*c).into()));
        }
        e
    }

    fn mono(word: &[u8], perm: &[u8], dots: &[u16]) -> Mono {
        Mono {
            word: word.to_vec(),
            perm: perm.to_vec(),
            dots: dots.to_vec(),
        }
    }

    #[test]
    fn dot_slides_past_crossing() {
        let d = CartanDatum::a1();
        let e = Engine::new(&d);
        let x1 = KlrElement::x(1, &[0, 0], 0).unwrap();
        let p = KlrElement::psi(1, &[0, 0], 0).unwrap();
        let prod = e.multiply(&x1, &p).unwrap();
        let expected = el(&[(mono(&[0, 0], &[0], &[0, 1]), 1), (mono(&[0, 0], &[], &[0, 0]), 1)], 1);
        assert_eq!(prod, expected);
    }

    #[test]
    fn quadratic_relations() {
        let d = CartanDatum::a1();
        let e = Engine::new(&d);
        let p = KlrElement::psi(1, &[0, 0], 0).unwrap();
        assert!(e.multiply(&p, &p).unwrap().is_zero());

        let d = CartanDatum::a2();
        let e = Engine::new(&d);
        let p12 = KlrElement::psi(2, &[0, 1], 0).unwrap();
        let p21 = KlrElement::psi(2, &[1, 0], 0).unwrap();
        let prod = e.multiply(&p21, &p12).unwrap();
        let expected = el(&[(mono(&[0, 1], &[], &[1, 0]), 1), (mono(&[0, 1], &[], &[0, 1]), 1)], 2);
        assert_eq!(prod, expected);
        assert!(e.multiply(&p12, &p12).unwrap().is_zero());
    }

    #[test]
    fn braid_relation_with_correction() {
        // (ψ1ψ2ψ1 - ψ2ψ1ψ2) 1_{(1,2,1)} = 1 in type A2
        let d = CartanDatum::a2();
        let e = Engine::new(&d);
        let w = [0u8, 1, 0];
        let lhs = e.normalize_word(&w, &[0, 1, 0], &[0, 0, 0]);
        let rhs = e.normalize_word(&w, &[1, 0, 1], &[0, 0, 0]);
        let mut diff = lhs.clone();
        lin_add_scaled(&mut diff, &rhs, &-BigInt::one(), &[]);
        assert_eq!(diff, single(Mono::idempotent(w.to_vec())));
    }

    #[test]
    fn sigma_examples() {
        let d = CartanDatum::a2();
        let e = Engine::new(&d);
        let one = KlrElement::idempotent(2, &[0, 1]).unwrap();
        assert_eq!(e.sigma(&one), KlrElement::idempotent(2, &[1, 0]).unwrap());
        let x = KlrElement::x(2, &[0, 1], 0).unwrap();
        assert_eq!(e.sigma(&x), KlrElement::x(2, &[1, 0], 1).unwrap());
        let d = CartanDatum::a1();
        let e = Engine::new(&d);
        let p = KlrElement::psi(1, &[0, 0], 0).unwrap();
        assert_eq!(e.sigma(&p), p.scale(&-BigRational::one()));
    }

    #[test]
    fn content_mismatch() {
        let e = Engine::new(&CartanDatum::a2());
        let a = KlrElement::idempotent(2, &[0, 1]).unwrap();
        let b = KlrElement::idempotent(2, &[0, 0]).unwrap();
        assert!(matches!(e.multiply(&a, &b), Err(KlrError::ContentMismatch { .. })));
        let _ = RootVector::zero(2);
    }
}

#[cfg(test)]
mod stress {
    use super::*;
    use crate::klr::perm;

    fn monos(words: &[Vec<u8>], maxdot: u16) -> Vec<Mono> {
        let mut out = Vec::new();
        for w in words {
            let m = w.len();
            for arr in perm::all_perms(m) {
                let cw = perm::canonical_word(&arr);
                let total = (maxdot as usize + 1).pow(m as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut dots = vec![0u16; m];
                    for dd in dots.iter_mut() {
                        *dd = (c % (maxdot as usize + 1)) as u16;
                        c /= maxdot as usize + 1;
                    }
                    out.push(Mono { word: w.clone(), perm: cw.clone(), dots });
                }
            }
        }
        out
    }

    #[test]
    fn associativity_exhaustive_small() {
        for d in [CartanDatum::a2(), CartanDatum::b2(), CartanDatum::g2()] {
            let e = Engine::new(&d);
            for nu in [vec![2u32, 1], vec![1, 2], vec![1, 1]] {
                let ws = perm::sequences(&nu);
                let ms = monos(&ws, 1);
                let gens: Vec<Mono> = ms.iter().filter(|m| m.perm.len() <= 1 && m.dots.iter().sum::<u16>() <= 1).cloned().collect();
                for a in &gens {
                    for b in &ms {
                        for c in &gens {
                            let ab = e.mono_mul(a, b);
                            let mut left = Lin::new();
                            for (m, v) in &ab {
                                lin_add_scaled(&mut left, &e.mono_mul(m, c), v, &[]);
                            }
                            let bc = e.mono_mul(b, c);
                            let mut right = Lin::new();
                            for (m, v) in &bc {
                                lin_add_scaled(&mut right, &e.mono_mul(a, m), v, &[]);
                            }
                            assert_eq!(left, right, "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }
}
