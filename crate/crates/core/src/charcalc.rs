//! Characters of graded modules as `ℤ[q, q^{-1}]`-combinations of words,
//! the quantum shuffle product and the restriction operators `e_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cartan::{CartanDatum, CartanError, DominantWeight, RootVector};
use crate::laurent::{LaurentError, LaurentPoly};

/// A word `(i_1, ..., i_m)` of vertex indices.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("divided power not integral: {0}")]
    NotDivisible(#[from] LaurentError),
    #[error("statistics are undefined on the zero character")]
    ZeroCharacter,
    #[error("n = {n} outside the allowed range [{lo}, {hi}]")]
    IndexOutOfRange { n: i64, lo: i64, hi: i64 },
    #[error("word {word:?} does not have content {nu}")]
    ContentMismatch { word: Word, nu: RootVector },
    #[error("vertices must be distinct")]
    SameVertex,
    #[error("vertices are orthogonal and c > 0")]
    Orthogonal,
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("malformed character: {0}")]
    Format(String),
}

pub fn content(rank: usize, word: &[usize]) -> RootVector {
    let mut v = vec![0u32; rank];
    for &i in word {
        v[i] += 1;
    }
    RootVector(v)
}

/// A finitely supported map from words of content `ν` to Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    nu: RootVector,
    terms: BTreeMap<Word, LaurentPoly>,
}

impl Character {
    pub fn zero(nu: RootVector) -> Self {
        Character {
            nu,
            terms: BTreeMap::new(),
        }
    }

    /// The character `1·[]` of content zero.
    pub fn unit(rank: usize) -> Self {
        Self::single(rank, Vec::new(), LaurentPoly::one())
    }

    pub fn single(rank: usize, word: Word, coeff: LaurentPoly) -> Self {
        let mut ch = Self::zero(content(rank, &word));
        ch.add_term(word, &coeff);
        ch
    }

    pub fn from_terms(nu: RootVector, terms: impl IntoIterator<Item = (Word, LaurentPoly)>) -> Result<Self, CharError> {
        let mut ch = Self::zero(nu);
        for (w, c) in terms {
            if content(ch.nu.rank(), &w) != ch.nu {
                return Err(CharError::ContentMismatch { word: w, nu: ch.nu });
            }
            ch.add_term(w, &c);
        }
        Ok(ch)
    }

    fn add_term(&mut self, word: Word, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn nu(&self) -> &RootVector {
        &self.nu
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Character {
        let mut out = Character::zero(self.nu.clone());
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn neg(&self) -> Character {
        self.scale(&LaurentPoly::monomial(0, -1))
    }

    pub fn shift(&self, k: i64) -> Character {
        self.scale(&LaurentPoly::q_pow(k))
    }

    pub fn bar(&self) -> Character {
        Character {
            nu: self.nu.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect(),
        }
    }

    /// Coefficients evaluated at `q = 1`.
    pub fn eval1(&self) -> BTreeMap<Word, BigInt> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval1()))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect()
    }

    /// Twist by `σ`: every word is reversed.
    pub fn reverse_words(&self) -> Character {
        Character {
            nu: self.nu.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
                .collect(),
        }
    }

    fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.values().filter_map(|c| c.min_degree()).min()?;
        let hi = self.terms.values().filter_map(|c| c.max_degree()).max()?;
        Some((lo, hi))
    }

    /// Shift by the unique power of `q` making the degree range symmetric
    /// about zero, when that power is an integer.
    pub fn centered(&self) -> Character {
        match self.degree_range() {
            Some((lo, hi)) if (lo + hi) % 2 == 0 => self.shift(-(lo + hi) / 2),
            _ => self.clone(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.bar() == *self
    }

    pub fn to_json(&self, d: &CartanDatum) -> Value {
        let nu: serde_json::Map<String, Value> = (0..d.rank())
            .filter(|&i| self.nu.get(i) > 0)
            .map(|i| (d.label(i).to_string(), json!(self.nu.get(i))))
            .collect();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                json!({
                    "word": w.iter().map(|&i| d.label(i)).collect::<Vec<_>>(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        json!({ "nu": nu, "terms": terms })
    }

    pub fn from_json(d: &CartanDatum, v: &Value) -> Result<Character, CharError> {
        let bad = |m: &str| CharError::Format(m.to_string());
        let mut nu = vec![0u32; d.rank()];
        if let Some(obj) = v.get("nu") {
            let obj = obj.as_object().ok_or_else(|| bad("\"nu\" must be an object"))?;
            for (k, c) in obj {
                let i = d.index_of(k)?;
                nu[i] = c
                    .as_u64()
                    .and_then(|c| u32::try_from(c).ok())
                    .ok_or_else(|| bad("\"nu\" coefficients must be nonnegative integers"))?;
            }
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let mut parsed = Vec::new();
        for t in terms {
            let word = t
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without \"word\""))?
                .iter()
                .map(|l| {
                    let s = match l {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    d.index_of(&s).map_err(CharError::from)
                })
                .collect::<Result<Word, _>>()?;
            let coeff = LaurentPoly::from_json(t.get("coeff").ok_or_else(|| bad("term without \"coeff\""))?)
                .map_err(CharError::Format)?;
            parsed.push((word, coeff));
        }
        if v.get("nu").is_none() {
            if let Some((w, _)) = parsed.first() {
                nu = content(d.rank(), w).0;
            }
        }
        Character::from_terms(RootVector(nu), parsed)
    }

    pub fn display(&self, d: &CartanDatum) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<&str> = w.iter().map(|&i| d.label(i)).collect();
                format!("({c})·[{}]", word.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
                format!("({c})·[{}]", word.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Whether `a = q^r b` for some integer `r`; returns that `r`.
pub fn equal_up_to_q_power(a: &Character, b: &Character) -> Option<i64> {
    if a.nu != b.nu || a.terms.len() != b.terms.len() {
        return None;
    }
    if a.is_zero() {
        return Some(0);
    }
    let (wa, ca) = a.terms.iter().next()?;
    let cb = b.terms.get(wa)?;
    let r = ca.min_degree()? - cb.min_degree()?;
    (b.shift(r) == *a).then_some(r)
}

/// Quantum shuffle product `f ⧢ g`.
pub fn shuffle(d: &CartanDatum, f: &Character, g: &Character) -> Character {
    let mut out = Character::zero(f.nu.add(&g.nu));
    for (u, cu) in &f.terms {
        for (v, cv) in &g.terms {
            let prod = cu * cv;
            let mut list = Vec::new();
            shuffle_list(d, u, v, &mut list);
            for (w, deg) in list {
                out.add_term(w, &prod.shift(deg));
            }
        }
    }
    out
}

fn shuffle_list(d: &CartanDatum, u: &[usize], v: &[usize], out: &mut Vec<(Word, i64)>) {
    fn rec(d: &CartanDatum, u: &[usize], v: &[usize], prefix: &mut Word, deg: i64, out: &mut Vec<(Word, i64)>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            out.push((w, deg));
            return;
        }
        prefix.push(u[0]);
        rec(d, &u[1..], v, prefix, deg, out);
        prefix.pop();
        let cross: i64 = u.iter().map(|&a| -d.bform(a, v[0])).sum();
        prefix.push(v[0]);
        rec(d, u, &v[1..], prefix, deg + cross, out);
        prefix.pop();
    }
    rec(d, u, v, &mut Vec::new(), 0, out);
}

/// `e_i^r` (or `e_i^{(r)}` when `divided`): keep words ending in `i^r` and strip that suffix.
pub fn e_char(d: &CartanDatum, ch: &Character, i: usize, r: u32, divided: bool) -> Result<Character, CharError> {
    d.check_vertex(i)?;
    if r == 0 {
        return Ok(ch.clone());
    }
    let r_us = r as usize;
    let mut nu = ch.nu.0.clone();
    if nu[i] < r {
        nu[i] = 0;
        return Ok(Character::zero(RootVector(nu)));
    }
    nu[i] -= r;
    let nu = RootVector(nu);
    let fact = LaurentPoly::quantum_factorial(d.d(i), r);
    let mut out = Character::zero(nu);
    for (w, c) in &ch.terms {
        let m = w.len();
        if m >= r_us && w[m - r_us..].iter().all(|&x| x == i) {
            let c = if divided { c.divide_exact(&fact)? } else { c.clone() };
            out.add_term(w[..m - r_us].to_vec(), &c);
        }
    }
    Ok(out)
}

/// Statistics read off a simple module's character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharStats {
    pub eps: Vec<i64>,
    pub eps_vee: Vec<i64>,
    pub wt: Vec<i64>,
    pub jump: Vec<i64>,
    pub phi_lambda: Option<Vec<i64>>,
}

pub fn char_stats(d: &CartanDatum, ch: &Character, lambda: Option<&DominantWeight>) -> Result<CharStats, CharError> {
    if ch.is_zero() {
        return Err(CharError::ZeroCharacter);
    }
    let n = d.rank();
    let mut eps = vec![0i64; n];
    let mut eps_vee = vec![0i64; n];
    for w in ch.terms.keys() {
        if let Some(&last) = w.last() {
            let run = w.iter().rev().take_while(|&&x| x == last).count() as i64;
            eps[last] = eps[last].max(run);
        }
        if let Some(&first) = w.first() {
            let run = w.iter().take_while(|&&x| x == first).count() as i64;
            eps_vee[first] = eps_vee[first].max(run);
        }
    }
    let wt: Vec<i64> = (0..n).map(|i| -d.pairing_root(i, &ch.nu)).collect();
    let jump = (0..n).map(|i| eps[i] + eps_vee[i] + wt[i]).collect();
    let phi_lambda = lambda.map(|l| (0..n).map(|i| l.get(i) as i64 + eps[i] + wt[i]).collect());
    Ok(CharStats {
        eps,
        eps_vee,
        wt,
        jump,
        phi_lambda,
    })
}

/// `ch L(i^m) = [m]_i! · i^m`.
pub fn char_l_im(d: &CartanDatum, i: usize, m: u32) -> Character {
    Character::single(d.rank(), vec![i; m as usize], LaurentPoly::quantum_factorial(d.d(i), m))
}

/// Character of the simple `R(ci + j)`-module with `ε_i = n`.
///
/// For `c ≤ a_ij` this is `[c-n]_i! [n]_i! i^{c-n} j i^n`. For `c > a_ij`
/// it is the shuffle of the `c' = a_ij` character (with `ε_i = n-(c-a)`) and
/// `ch L(i^{c-a})`, shifted to be bar-symmetric.
pub fn char_simple_ci_j(d: &CartanDatum, i: usize, j: usize, c: u32, n: i64) -> Result<Character, CharError> {
    d.check_vertex(i)?;
    d.check_vertex(j)?;
    if i == j {
        return Err(CharError::SameVertex);
    }
    let a = d.a(i, j);
    if a == 0 && c > 0 {
        return Err(CharError::Orthogonal);
    }
    let c = c as i64;
    let lo = (c - a).max(0);
    if n < lo || n > c {
        return Err(CharError::IndexOutOfRange { n, lo, hi: c });
    }
    if c <= a {
        let di = d.d(i);
        let coeff = &LaurentPoly::quantum_factorial(di, (c - n) as u32) * &LaurentPoly::quantum_factorial(di, n as u32);
        let mut w = vec![i; (c - n) as usize];
        w.push(j);
        w.extend(std::iter::repeat_n(i, n as usize));
        return Ok(Character::single(d.rank(), w, coeff));
    }
    let base = char_simple_ci_j(d, i, j, a as u32, n - (c - a))?;
    let tail = char_l_im(d, i, (c - a) as u32);
    Ok(shuffle(d, &base, &tail).centered())
}

/// `Σ_{r=0}^{c} (-1)^r e_i^{(c-r)} e_j e_i^{(r)}` applied to `ch`.
pub fn serre_apply(d: &CartanDatum, ch: &Character, i: usize, j: usize, c: u32) -> Result<Character, CharError> {
    d.check_vertex(i)?;
    d.check_vertex(j)?;
    if i == j {
        return Err(CharError::SameVertex);
    }
    let mut nu = ch.nu.0.clone();
    nu[i] = nu[i].saturating_sub(c);
    nu[j] = nu[j].saturating_sub(1);
    let mut total = Character::zero(RootVector(nu));
    for r in 0..=c {
        let step = e_char(d, ch, i, r, true)?;
        let step = e_char(d, &step, j, 1, false)?;
        let step = e_char(d, &step, i, c - r, true)?;
        let step = if r % 2 == 1 { step.neg() } else { step };
        total = total.add(&step);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(p)
    }

    #[test]
    fn shuffle_of_two_letters_a2() {
        let d = CartanDatum::a2();
        let f = Character::single(2, vec![0], LaurentPoly::one());
        let g = Character::single(2, vec![1], LaurentPoly::one());
        let s = shuffle(&d, &f, &g);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&[0, 1]), LaurentPoly::one());
        assert_eq!(s.coeff(&[1, 0]), lp(&[(1, 1)]));
    }

    #[test]
    fn shuffle_of_equal_letters() {
        let d = CartanDatum::a1();
        let f = Character::single(1, vec![0], LaurentPoly::one());
        let s = shuffle(&d, &f, &f);
        assert_eq!(s.coeff(&[0, 0]), lp(&[(0, 1), (-2, 1)]));
    }

    #[test]
    fn shuffle_unit() {
        let d = CartanDatum::a2();
        let f = char_simple_ci_j(&d, 0, 1, 1, 0).unwrap();
        assert_eq!(shuffle(&d, &f, &Character::unit(2)), f);
        assert_eq!(shuffle(&d, &Character::unit(2), &f), f);
    }

    #[test]
    fn e_char_examples() {
        let d = CartanDatum::a1();
        let two = lp(&[(1, 1), (-1, 1)]);
        let ch = Character::single(1, vec![0, 0], two.clone());
        assert_eq!(e_char(&d, &ch, 0, 1, false).unwrap(), Character::single(1, vec![0], two));
        assert_eq!(e_char(&d, &ch, 0, 2, true).unwrap(), Character::unit(1));
        let d2 = CartanDatum::a2();
        let ch = Character::single(2, vec![0, 1], LaurentPoly::one());
        assert!(e_char(&d2, &ch, 0, 1, false).unwrap().is_zero());
    }

    #[test]
    fn divided_power_failure() {
        let d = CartanDatum::a1();
        let ch = Character::single(1, vec![0, 0], LaurentPoly::one());
        assert!(matches!(e_char(&d, &ch, 0, 2, true), Err(CharError::NotDivisible(_))));
    }

    #[test]
    fn stats_examples() {
        let d = CartanDatum::a1();
        let s = char_stats(&d, &char_l_im(&d, 0, 2), None).unwrap();
        assert_eq!((s.eps[0], s.eps_vee[0], s.wt[0], s.jump[0]), (2, 2, -4, 0));

        let d = CartanDatum::a2();
        let ch = char_simple_ci_j(&d, 0, 1, 1, 0).unwrap();
        assert_eq!(ch, Character::single(2, vec![0, 1], LaurentPoly::one()));
        let s = char_stats(&d, &ch, None).unwrap();
        assert_eq!((s.eps[0], s.eps_vee[0], s.eps[1], s.jump[0]), (0, 1, 1, 0));

        let d = CartanDatum::a1();
        let s = char_stats(&d, &Character::unit(1), Some(&DominantWeight(vec![2]))).unwrap();
        assert_eq!(s.phi_lambda, Some(vec![2]));
        assert_eq!(char_stats(&d, &Character::zero(RootVector(vec![1])), None), Err(CharError::ZeroCharacter));
    }

    #[test]
    fn l_im_characters() {
        assert_eq!(char_l_im(&CartanDatum::a1(), 0, 0), Character::unit(1));
        let b2 = CartanDatum::b2();
        assert_eq!(char_l_im(&b2, 1, 2).coeff(&[1, 1]), lp(&[(2, 1), (-2, 1)]));
    }

    #[test]
    fn simple_beyond_a() {
        let d = CartanDatum::a2();
        let ch = char_simple_ci_j(&d, 0, 1, 2, 1).unwrap();
        let expected = Character::from_terms(
            RootVector(vec![2, 1]),
            [(vec![0, 1, 0], LaurentPoly::one()), (vec![0, 0, 1], lp(&[(1, 1), (-1, 1)]))],
        )
        .unwrap();
        assert!(equal_up_to_q_power(&ch, &expected).is_some());
        assert!(ch.is_bar_symmetric());
        let s = char_stats(&d, &ch, None).unwrap();
        assert_eq!((s.eps[0], s.eps_vee[0]), (1, 2));
        assert!(matches!(char_simple_ci_j(&d, 0, 1, 2, 0), Err(CharError::IndexOutOfRange { .. })));
        assert!(matches!(char_simple_ci_j(&d, 0, 1, 1, 2), Err(CharError::IndexOutOfRange { .. })));
    }

    #[test]
    fn serre_examples() {
        let d = CartanDatum::a2();
        let ch = char_simple_ci_j(&d, 0, 1, 2, 1).unwrap();
        assert!(serre_apply(&d, &ch, 0, 1, 2).unwrap().is_zero());
        let ch = Character::single(2, vec![0, 1], LaurentPoly::one());
        assert_eq!(serre_apply(&d, &ch, 0, 1, 1).unwrap(), Character::unit(2));
        let ch = Character::single(2, vec![1], LaurentPoly::one());
        assert_eq!(serre_apply(&d, &ch, 0, 1, 0).unwrap(), Character::unit(2));
    }

    #[test]
    fn json_roundtrip() {
        let d = CartanDatum::a2();
        let ch = char_simple_ci_j(&d, 0, 1, 2, 1).unwrap();
        let v = ch.to_json(&d);
        assert_eq!(Character::from_json(&d, &v).unwrap(), ch);
    }
}
