//! PBW monomials `ψ_ŵ x^a 1_i` and linear combinations of them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::perm;
use super::KlrError;
use crate::cartan::{CartanDatum, RootVector};
use crate::charcalc::content;

/// `ψ_ŵ x_1^{a_1} ⋯ x_m^{a_m} 1_i` with `ŵ` the canonical reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    /// Bottom idempotent `i`, as vertex indices.
    pub word: Vec<u8>,
    /// Canonical reduced word, 0-based crossing positions.
    pub perm: Vec<u8>,
    /// Dot exponents at the bottom.
    pub dots: Vec<u16>,
}

impl Mono {
    pub fn idempotent(word: Vec<u8>) -> Self {
        let m = word.len();
        Mono {
            word,
            perm: Vec::new(),
            dots: vec![0; m],
        }
    }

    pub fn strands(&self) -> usize {
        self.word.len()
    }

    pub fn perm_array(&self) -> Vec<u8> {
        perm::perm_of_word(self.strands(), &self.perm)
    }

    /// Idempotent at the top of the diagram.
    pub fn top(&self) -> Vec<u8> {
        perm::act(&self.perm_array(), &self.word)
    }

    pub fn with_dots(&self, extra: &[u16]) -> Mono {
        let mut m = self.clone();
        for (a, b) in m.dots.iter_mut().zip(extra) {
            *a += b;
        }
        m
    }

    pub fn dot_free(&self) -> bool {
        self.dots.iter().all(|&a| a == 0)
    }

    /// Dots contribute `(α_i, α_i)`, crossings `-(α_i, α_j)`.
    pub fn degree(&self, d: &CartanDatum) -> i64 {
        let dots: i64 = self
            .dots
            .iter()
            .zip(&self.word)
            .map(|(&a, &i)| a as i64 * d.bform(i as usize, i as usize))
            .sum();
        let cross: i64 = perm::crossings(&self.perm_array())
            .into_iter()
            .map(|(p, q)| -d.bform(self.word[p] as usize, self.word[q] as usize))
            .sum();
        dots + cross
    }

    pub fn nu(&self, rank: usize) -> RootVector {
        let w: Vec<usize> = self.word.iter().map(|&i| i as usize).collect();
        content(rank, &w)
    }
}

/// A linear combination of monomials with integer coefficients.
pub type Lin = BTreeMap<Mono, BigInt>;

/// A raw term: word, 1-based crossing word, dots and coefficient.
pub type RawTerm = (Vec<usize>, Vec<usize>, Vec<u16>, BigRational);

pub fn lin_add(out: &mut Lin, m: Mono, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(m.clone()).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        out.remove(&m);
    }
}

/// `out += c · src · x^shift`.
pub fn lin_add_scaled(out: &mut Lin, src: &Lin, c: &BigInt, shift: &[u16]) {
    for (m, v) in src {
        lin_add(out, m.with_dots(shift), v * c);
    }
}

/// An element of `R(ν)` in PBW normal form with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KlrElement {
    pub nu: RootVector,
    pub terms: BTreeMap<Mono, BigRational>,
}

impl KlrElement {
    pub fn zero(nu: RootVector) -> Self {
        KlrElement {
            nu,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_mono(rank: usize, m: Mono) -> Self {
        let mut e = Self::zero(m.nu(rank));
        e.terms.insert(m, BigRational::one());
        e
    }

    pub fn from_lin(nu: RootVector, lin: &Lin) -> Self {
        let mut e = Self::zero(nu);
        for (m, c) in lin {
            e.add_term(m.clone(), BigRational::from_integer(c.clone()));
        }
        e
    }

    fn check_word(rank: usize, word: &[usize]) -> Result<Vec<u8>, KlrError> {
        if word.iter().any(|&i| i >= rank) {
            return Err(KlrError::BadWord(word.to_vec()));
        }
        Ok(word.iter().map(|&i| i as u8).collect())
    }

    /// `1_i`.
    pub fn idempotent(rank: usize, word: &[usize]) -> Result<Self, KlrError> {
        Ok(Self::from_mono(rank, Mono::idempotent(Self::check_word(rank, word)?)))
    }

    /// `x_t 1_i`, `t` 0-based.
    pub fn x(rank: usize, word: &[usize], t: usize) -> Result<Self, KlrError> {
        let w = Self::check_word(rank, word)?;
        if t >= w.len() {
            return Err(KlrError::StrandOutOfRange {
                index: t,
                strands: w.len(),
            });
        }
        let mut m = Mono::idempotent(w);
        m.dots[t] = 1;
        Ok(Self::from_mono(rank, m))
    }

    /// `ψ_r 1_i`, `r` 0-based.
    pub fn psi(rank: usize, word: &[usize], r: usize) -> Result<Self, KlrError> {
        let w = Self::check_word(rank, word)?;
        if r + 1 >= w.len() {
            return Err(KlrError::StrandOutOfRange {
                index: r,
                strands: w.len(),
            });
        }
        let mut m = Mono::idempotent(w);
        m.perm = vec![r as u8];
        Ok(Self::from_mono(rank, m))
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &KlrElement) -> Result<KlrElement, KlrError> {
        if self.nu != other.nu {
            return Err(KlrError::ContentMismatch {
                left: self.nu.clone(),
                right: other.nu.clone(),
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> KlrElement {
        let mut out = KlrElement::zero(self.nu.clone());
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &KlrElement) -> Result<KlrElement, KlrError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self, d: &CartanDatum) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.degree(d));
        let first = degs.next()?;
        degs.all(|x| x == first).then_some(first)
    }

    pub fn to_json(&self, d: &CartanDatum) -> Value {
        let nu: serde_json::Map<String, Value> = (0..d.rank())
            .filter(|&i| self.nu.get(i) > 0)
            .map(|i| (d.label(i).to_string(), json!(self.nu.get(i))))
            .collect();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "word": m.word.iter().map(|&i| d.label(i as usize)).collect::<Vec<_>>(),
                    "perm": m.perm.iter().map(|&r| r as u64 + 1).collect::<Vec<_>>(),
                    "dots": m.dots,
                    "coeff": c.to_string(),
                })
            })
            .collect();
        json!({"nu": nu, "terms": terms})
    }

    /// Parses raw terms `(word, 1-based crossing word, dots, coefficient)`;
    /// the crossing words need not be reduced or canonical.
    pub fn parse_json_terms(d: &CartanDatum, v: &Value) -> Result<(RootVector, Vec<RawTerm>), KlrError> {
        let bad = |m: &str| KlrError::Format(m.to_string());
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let mut out = Vec::new();
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
                    d.index_of(&s).map_err(KlrError::from)
                })
                .collect::<Result<Vec<usize>, _>>()?;
            let m = word.len();
            let perm = match t.get("perm") {
                None => Vec::new(),
                Some(p) => p
                    .as_array()
                    .ok_or_else(|| bad("\"perm\" must be an array"))?
                    .iter()
                    .map(|r| match r.as_u64() {
                        Some(r) if r >= 1 && (r as usize) < m => Ok(r as usize - 1),
                        _ => Err(bad("crossing indices must lie in 1..m-1")),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let dots = match t.get("dots") {
                None => vec![0; m],
                Some(p) => {
                    let dots = p
                        .as_array()
                        .ok_or_else(|| bad("\"dots\" must be an array"))?
                        .iter()
                        .map(|a| a.as_u64().and_then(|a| u16::try_from(a).ok()).ok_or_else(|| bad("bad dot exponent")))
                        .collect::<Result<Vec<_>, _>>()?;
                    if dots.len() != m {
                        return Err(bad("\"dots\" length must match the word"));
                    }
                    dots
                }
            };
            let coeff = match t.get("coeff") {
                None => BigRational::one(),
                Some(Value::String(s)) => parse_rational(s).ok_or_else(|| bad("bad coefficient"))?,
                Some(Value::Number(n)) => parse_rational(&n.to_string()).ok_or_else(|| bad("bad coefficient"))?,
                Some(_) => return Err(bad("bad coefficient")),
            };
            out.push((word, perm, dots, coeff));
        }
        let nu = match out.first() {
            Some((w, ..)) => content(d.rank(), w),
            None => {
                let mut nu = vec![0u32; d.rank()];
                if let Some(obj) = v.get("nu").and_then(Value::as_object) {
                    for (k, c) in obj {
                        nu[d.index_of(k)?] = c.as_u64().unwrap_or(0) as u32;
                    }
                }
                RootVector(nu)
            }
        };
        for (w, ..) in &out {
            if content(d.rank(), w) != nu {
                return Err(KlrError::BadWord(w.clone()));
            }
        }
        Ok((nu, out))
    }

    pub fn display(&self, d: &CartanDatum) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c}) {}", mono_string(d, m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn mono_string(d: &CartanDatum, m: &Mono) -> String {
    let mut s = String::new();
    for &r in &m.perm {
        s.push_str(&format!("psi{} ", r + 1));
    }
    for (p, &a) in m.dots.iter().enumerate() {
        match a {
            0 => {}
            1 => s.push_str(&format!("x{} ", p + 1)),
            _ => s.push_str(&format!("x{}^{a} ", p + 1)),
        }
    }
    let w: Vec<&str> = m.word.iter().map(|&i| d.label(i as usize)).collect();
    s.push_str(&format!("1({})", w.join(",")));
    s
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        s.parse::<BigInt>().ok().map(BigRational::from_integer)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi{:?} x{:?} 1{:?}", self.perm, self.dots, self.word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let d = CartanDatum::a1();
        let x = KlrElement::x(1, &[0], 0).unwrap();
        assert_eq!(x.degree(&d), Some(2));
        let d = CartanDatum::a2();
        let p = KlrElement::psi(2, &[0, 1], 0).unwrap();
        assert_eq!(p.degree(&d), Some(1));
        assert_eq!(KlrElement::idempotent(2, &[0, 1]).unwrap().degree(&d), Some(0));
    }

    #[test]
    fn top_sequence() {
        let m = Mono {
            word: vec![0, 1],
            perm: vec![0],
            dots: vec![0, 0],
        };
        assert_eq!(m.top(), vec![1, 0]);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/2"), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(BigRational::from_integer((-4).into())));
        assert_eq!(parse_rational("1/0"), None);
    }
}
