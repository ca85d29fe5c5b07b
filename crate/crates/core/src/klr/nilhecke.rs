//! The polynomial representation of the one-vertex algebra `R(m·i)`:
//! `x_r` multiplies, `ψ_r` acts by the divided difference
//! `∂_r f = (f - s_r f) / (x_r - x_{r+1})`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::KlrElement;

/// Polynomial in `x_1, ..., x_m`: exponent vector to coefficient.
pub type Poly = BTreeMap<Vec<u32>, BigRational>;

/// A generator acting on polynomials (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    Psi(usize),
}

fn add(p: &mut Poly, e: Vec<u32>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

pub fn monomial(exps: &[u32]) -> Poly {
    let mut p = Poly::new();
    p.insert(exps.to_vec(), BigRational::one());
    p
}

pub fn mul_x(p: &Poly, r: usize) -> Poly {
    p.iter()
        .map(|(e, c)| {
            let mut e = e.clone();
            e[r] += 1;
            (e, c.clone())
        })
        .collect()
}

/// `∂_r`, using the closed form on `x_r^a x_{r+1}^b`.
pub fn divided_difference(p: &Poly, r: usize) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        let (a, b) = (e[r], e[r + 1]);
        if a > b {
            for k in 0..a - b {
                let mut f = e.clone();
                f[r] = a - 1 - k;
                f[r + 1] = b + k;
                add(&mut out, f, c.clone());
            }
        } else if a < b {
            for k in 0..b - a {
                let mut f = e.clone();
                f[r] = a + k;
                f[r + 1] = b - 1 - k;
                add(&mut out, f, -c.clone());
            }
        }
    }
    out
}

/// Applies `g_1 g_2 ⋯ g_k` to `p` (rightmost generator first).
pub fn apply(p: &Poly, gens: &[Gen]) -> Poly {
    let mut cur = p.clone();
    for g in gens.iter().rev() {
        cur = match *g {
            Gen::X(r) => mul_x(&cur, r),
            Gen::Psi(r) => divided_difference(&cur, r),
        };
    }
    cur
}

/// Action of a one-vertex KLR element on a polynomial.
pub fn act(e: &KlrElement, p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, c) in &e.terms {
        let mut gens: Vec<Gen> = m.perm.iter().map(|&r| Gen::Psi(r as usize)).collect();
        for (t, &a) in m.dots.iter().enumerate() {
            for _ in 0..a {
                gens.push(Gen::X(t));
            }
        }
        for (ex, v) in apply(p, &gens) {
            add(&mut out, ex, v * c);
        }
    }
    out
}

pub fn from_int_pairs(m: usize, terms: &[(&[u32], i64)]) -> Poly {
    let mut p = Poly::new();
    for (e, c) in terms {
        assert_eq!(e.len(), m);
        add(&mut p, e.to_vec(), BigRational::from_integer(BigInt::from(*c)));
    }
    p
}
