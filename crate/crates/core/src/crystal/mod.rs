//! Kashiwara crystals: elementary crystals, the tensor product rule, the
//! string-coordinate model of `B(∞)` and its highest weight subcrystals
//! `B(Λ)`, and executable checks of the crystal axioms.

use std::cmp::max;
use std::fmt;

use thiserror::Error;

use crate::cartan::{CartanDatum, DominantWeight};

pub mod binf;
pub mod output;
pub mod verify;

pub use binf::{BInfCrystal, BLambdaCrystal, CrystalGraph, GraphKind, GraphNode, NodeStats, StringModel};
pub use verify::{check_axioms, verify, Report, Suite, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("truncated tensor model exhausted: {detail}")]
    TruncationExceeded { detail: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("weight length {found} does not match rank {expected}")]
    RankMismatch { expected: usize, found: usize },
}

/// `ℤ ∪ {-∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub fn plus(self, k: i64) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Fin(v) => ExtInt::Fin(v + k),
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::NegInf => None,
            ExtInt::Fin(v) => Some(v),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// A weight `Σ fund_i Λ_i + Σ roots_j α_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub fund: Vec<i64>,
    pub roots: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            fund: vec![0; rank],
            roots: vec![0; rank],
        }
    }

    pub fn of_dominant(lambda: &DominantWeight) -> Self {
        Weight {
            fund: lambda.0.iter().map(|&l| l as i64).collect(),
            roots: vec![0; lambda.rank()],
        }
    }

    /// `<h_i, wt>`.
    pub fn pair(&self, d: &CartanDatum, i: usize) -> i64 {
        self.fund[i] + (0..d.rank()).map(|j| self.roots[j] * d.cartan(i, j)).sum::<i64>()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&other.fund).map(|(a, b)| a + b).collect(),
            roots: self.roots.iter().zip(&other.roots).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_root(&self, i: usize, k: i64) -> Weight {
        let mut w = self.clone();
        w.roots[i] += k;
        w
    }
}

/// The `i`-data `(ε_i, φ_i, <h_i, wt>)` of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorData {
    pub eps: ExtInt,
    pub phi: ExtInt,
    pub wt: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E,
    F,
}

/// The tensor product rule. `f_left_on_tie` is a deliberate defect switch
/// that routes `f̃` to the left factor when `φ(b₁) = ε(b₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TensorRule {
    pub f_left_on_tie: bool,
}

impl TensorRule {
    pub fn standard() -> Self {
        Self::default()
    }

    pub fn corrupted() -> Self {
        TensorRule { f_left_on_tie: true }
    }

    /// `ε`, `φ` and weight of `b₁ ⊗ b₂`.
    pub fn combine(&self, l: FactorData, r: FactorData) -> FactorData {
        FactorData {
            eps: max(l.eps, r.eps.plus(-l.wt)),
            phi: max(l.phi.plus(r.wt), r.phi),
            wt: l.wt + r.wt,
        }
    }

    /// Whether the operator acts on the left factor.
    pub fn acts_left(&self, op: Op, l_phi: ExtInt, r_eps: ExtInt) -> bool {
        match op {
            Op::E => l_phi >= r_eps,
            Op::F if self.f_left_on_tie => l_phi >= r_eps,
            Op::F => l_phi > r_eps,
        }
    }

    /// For `b₁ ⊗ ... ⊗ b_n` (left to right) returns the combined data and
    /// the index of the factor on which `op` acts.
    pub fn locate(&self, factors: &[FactorData], op: Op) -> (FactorData, usize) {
        let n = factors.len();
        assert!(n > 0, "empty tensor product");
        let mut suffix = vec![factors[n - 1]; n];
        for k in (0..n - 1).rev() {
            suffix[k] = self.combine(factors[k], suffix[k + 1]);
        }
        let idx = (0..n - 1)
            .find(|&k| self.acts_left(op, factors[k].phi, suffix[k + 1].eps))
            .unwrap_or(n - 1);
        (suffix[0], idx)
    }
}

/// Elements of `B_i` and `T_Λ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elementary {
    /// `b_i(n)`.
    B { i: usize, n: i64 },
    /// `t_Λ`.
    T(DominantWeight),
}

impl Elementary {
    pub fn weight(&self, rank: usize) -> Weight {
        match self {
            Elementary::B { i, n } => Weight::zero(rank).add_root(*i, *n),
            Elementary::T(l) => Weight::of_dominant(l),
        }
    }

    pub fn data(&self, d: &CartanDatum, i: usize) -> FactorData {
        let wt = self.weight(d.rank()).pair(d, i);
        match self {
            Elementary::B { i: k, n } if *k == i => FactorData {
                eps: ExtInt::Fin(-n),
                phi: ExtInt::Fin(*n),
                wt,
            },
            _ => FactorData {
                eps: ExtInt::NegInf,
                phi: ExtInt::NegInf,
                wt,
            },
        }
    }

    pub fn apply(&self, i: usize, op: Op) -> Option<Elementary> {
        match self {
            Elementary::B { i: k, n } if *k == i => Some(Elementary::B {
                i: *k,
                n: if op == Op::E { n + 1 } else { n - 1 },
            }),
            _ => None,
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elementary::B { i, n } => write!(f, "b{}({n})", i + 1),
            Elementary::T(l) => write!(f, "t{l}"),
        }
    }
}

/// An abstract crystal: enough structure to run the axiom checks.
pub trait Crystal {
    type Node: Clone + Eq + Ord + fmt::Debug;

    fn datum(&self) -> &CartanDatum;
    fn weight(&self, b: &Self::Node) -> Weight;
    fn eps(&self, b: &Self::Node, i: usize) -> ExtInt;
    fn phi(&self, b: &Self::Node, i: usize) -> ExtInt;
    fn e(&self, b: &Self::Node, i: usize) -> Result<Option<Self::Node>, CrystalError>;
    fn f(&self, b: &Self::Node, i: usize) -> Result<Option<Self::Node>, CrystalError>;
}

/// `B¹ ⊗ ... ⊗ Bⁿ` for elementary crystals `B^k`, with a configurable rule.
#[derive(Debug, Clone)]
pub struct TensorCrystal {
    pub datum: CartanDatum,
    pub rule: TensorRule,
}

impl TensorCrystal {
    pub fn new(datum: CartanDatum, rule: TensorRule) -> Self {
        TensorCrystal { datum, rule }
    }

    fn apply(&self, b: &[Elementary], i: usize, op: Op) -> Option<Vec<Elementary>> {
        let data: Vec<FactorData> = b.iter().map(|x| x.data(&self.datum, i)).collect();
        let (_, k) = self.rule.locate(&data, op);
        let mut out = b.to_vec();
        out[k] = b[k].apply(i, op)?;
        Some(out)
    }

    /// All nodes reachable from `seeds` by at most `depth` applications of
    /// `ẽ_i` and `f̃_i`.
    pub fn closure(&self, seeds: &[Vec<Elementary>], depth: usize) -> Vec<Vec<Elementary>> {
        let mut seen: std::collections::BTreeSet<Vec<Elementary>> = seeds.iter().cloned().collect();
        let mut frontier: Vec<Vec<Elementary>> = seeds.to_vec();
        for _ in 0..depth {
            let mut next = Vec::new();
            for b in &frontier {
                for i in 0..self.datum.rank() {
                    for op in [Op::E, Op::F] {
                        if let Some(c) = self.apply(b, i, op) {
                            if seen.insert(c.clone()) {
                                next.push(c);
                            }
                        }
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }
}

impl Crystal for TensorCrystal {
    type Node = Vec<Elementary>;

    fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    fn weight(&self, b: &Self::Node) -> Weight {
        let r = self.datum.rank();
        b.iter().fold(Weight::zero(r), |acc, x| acc.add(&x.weight(r)))
    }

    fn eps(&self, b: &Self::Node, i: usize) -> ExtInt {
        let data: Vec<FactorData> = b.iter().map(|x| x.data(&self.datum, i)).collect();
        self.rule.locate(&data, Op::E).0.eps
    }

    fn phi(&self, b: &Self::Node, i: usize) -> ExtInt {
        let data: Vec<FactorData> = b.iter().map(|x| x.data(&self.datum, i)).collect();
        self.rule.locate(&data, Op::F).0.phi
    }

    fn e(&self, b: &Self::Node, i: usize) -> Result<Option<Self::Node>, CrystalError> {
        Ok(self.apply(b, i, Op::E))
    }

    fn f(&self, b: &Self::Node, i: usize) -> Result<Option<Self::Node>, CrystalError> {
        Ok(self.apply(b, i, Op::F))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: usize, n: i64) -> Elementary {
        Elementary::B { i, n }
    }

    #[test]
    fn elementary_tables() {
        let d = CartanDatum::a2();
        assert_eq!(b(0, -2).apply(0, Op::E), Some(b(0, -1)));
        assert_eq!(b(0, -2).data(&d, 0).phi, ExtInt::Fin(-2));
        assert_eq!(b(0, 0).apply(1, Op::E), None);
        let t = Elementary::T(DominantWeight(vec![1, 0]));
        assert_eq!(t.apply(0, Op::F), None);
        assert_eq!(t.weight(2), Weight::of_dominant(&DominantWeight(vec![1, 0])));
        assert_eq!(t.data(&d, 0).eps, ExtInt::NegInf);
    }

    #[test]
    fn tensor_rule_examples() {
        let d = CartanDatum::a1();
        let c = TensorCrystal::new(d, TensorRule::standard());
        assert_eq!(c.f(&vec![b(0, 0), b(0, 0)], 0).unwrap(), Some(vec![b(0, 0), b(0, -1)]));
        assert_eq!(c.e(&vec![b(0, 0), b(0, -1)], 0).unwrap(), Some(vec![b(0, 0), b(0, 0)]));
        assert_eq!(c.eps(&vec![b(0, -1), b(0, -1)], 0), ExtInt::Fin(3));
    }

    #[test]
    fn ext_int_order() {
        assert!(ExtInt::NegInf < ExtInt::Fin(-1000));
        assert_eq!(ExtInt::NegInf.plus(5), ExtInt::NegInf);
        assert_eq!(ExtInt::Fin(2).to_string(), "2");
    }
}
