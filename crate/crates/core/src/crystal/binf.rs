//! `B(∞)` as the image of iterated embeddings
//! `B(∞) → B(∞) ⊗ B_{j_L} ⊗ ... ⊗ B_{j_1}`, and `B(Λ)` inside it.
//!
//! An element is stored as its string coordinates `(a_1, a_2, ...)`: the
//! element `u_∞ ⊗ ... ⊗ b_{j_2}(-a_2) ⊗ b_{j_1}(-a_1)` with trailing zeros
//! dropped. The reference sequence `J⁰` cycles through the vertices in
//! label order; the sequence `J^i` is `i` followed by `J⁰`, so the first
//! coordinate under `J^i` is `ε_i^∨`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::cartan::{CartanDatum, DominantWeight, RootVector};

use super::{Crystal, CrystalError, ExtInt, FactorData, Op, TensorRule, Weight};

/// Default bound on the number of tensor factors.
pub const DEFAULT_MAX_FACTORS: usize = 1 << 14;

#[derive(Debug, Clone)]
pub struct StringModel {
    pub datum: CartanDatum,
    /// `None` for `J⁰`, `Some(i)` for `J^i`.
    pub first: Option<usize>,
    pub rule: TensorRule,
    pub max_factors: usize,
}

impl StringModel {
    pub fn reference(datum: &CartanDatum) -> Self {
        StringModel {
            datum: datum.clone(),
            first: None,
            rule: TensorRule::standard(),
            max_factors: DEFAULT_MAX_FACTORS,
        }
    }

    pub fn starting_with(datum: &CartanDatum, i: usize) -> Self {
        StringModel {
            first: Some(i),
            ..Self::reference(datum)
        }
    }

    pub fn with_rule(mut self, rule: TensorRule) -> Self {
        self.rule = rule;
        self
    }

    /// Vertex of the `k`-th factor counted from the right (0-based).
    pub fn label(&self, k: usize) -> usize {
        let n = self.datum.rank();
        match self.first {
            None => k % n,
            Some(i) if k == 0 => i,
            Some(_) => (k - 1) % n,
        }
    }

    /// Factor data left to right: `u_∞`, then `F_{L-1}, ..., F_0`.
    fn factors(&self, coords: &[u32], i: usize, len: usize) -> Vec<FactorData> {
        let mut out = Vec::with_capacity(len + 1);
        out.push(FactorData {
            eps: ExtInt::Fin(0),
            phi: ExtInt::Fin(0),
            wt: 0,
        });
        for k in (0..len).rev() {
            let a = coords.get(k).copied().unwrap_or(0) as i64;
            let j = self.label(k);
            let wt = -a * self.datum.cartan(i, j);
            if j == i {
                out.push(FactorData {
                    eps: ExtInt::Fin(a),
                    phi: ExtInt::Fin(-a),
                    wt,
                });
            } else {
                out.push(FactorData {
                    eps: ExtInt::NegInf,
                    phi: ExtInt::NegInf,
                    wt,
                });
            }
        }
        out
    }

    fn base_len(&self, coords: &[u32]) -> usize {
        coords.len() + self.datum.rank() + 1
    }

    /// Combined `(ε_i, φ_i, <h_i, wt>)`.
    pub fn data(&self, coords: &[u32], i: usize) -> FactorData {
        let f = self.factors(coords, i, self.base_len(coords));
        self.rule.locate(&f, Op::E).0
    }

    pub fn eps(&self, coords: &[u32], i: usize) -> i64 {
        self.data(coords, i).eps.finite().unwrap_or(0)
    }

    pub fn nu(&self, coords: &[u32]) -> RootVector {
        let mut v = vec![0u32; self.datum.rank()];
        for (k, &a) in coords.iter().enumerate() {
            v[self.label(k)] += a;
        }
        RootVector(v)
    }

    pub fn weight(&self, coords: &[u32]) -> Weight {
        let n = self.datum.rank();
        Weight {
            fund: vec![0; n],
            roots: self.nu(coords).0.iter().map(|&c| -(c as i64)).collect(),
        }
    }

    /// `ẽ_i` or `f̃_i`; `Ok(None)` is the zero symbol.
    pub fn apply(&self, coords: &[u32], i: usize, op: Op) -> Result<Option<Vec<u32>>, CrystalError> {
        let mut len = self.base_len(coords);
        loop {
            let f = self.factors(coords, i, len);
            let (_, idx) = self.rule.locate(&f, op);
            if idx == 0 {
                if op == Op::E {
                    return Ok(None);
                }
                // f̃ reached u_∞: more factors are needed
                if len >= self.max_factors {
                    return Err(CrystalError::TruncationExceeded {
                        detail: format!("f{} needs more than {} factors", i + 1, self.max_factors),
                    });
                }
                len = (2 * len).min(self.max_factors);
                continue;
            }
            let k = len - idx;
            if self.label(k) != i {
                return Ok(None);
            }
            let mut out = coords.to_vec();
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            match op {
                Op::F => out[k] += 1,
                Op::E if out[k] == 0 => return Ok(None),
                Op::E => out[k] -= 1,
            }
            while out.last() == Some(&0) {
                out.pop();
            }
            return Ok(Some(out));
        }
    }

    /// Replays an `f̃`-path from the highest element.
    pub fn replay(&self, path: &[usize]) -> Result<Vec<u32>, CrystalError> {
        let mut c = Vec::new();
        for &i in path {
            c = self
                .apply(&c, i, Op::F)?
                .ok_or_else(|| CrystalError::TruncationExceeded {
                    detail: "f̃ returned zero inside B(∞)".into(),
                })?;
        }
        Ok(c)
    }

    /// An `f̃`-path reaching `coords`, found by descending with `ẽ`.
    pub fn path_to(&self, coords: &[u32]) -> Result<Vec<usize>, CrystalError> {
        let mut c = coords.to_vec();
        let mut path = Vec::new();
        while !c.is_empty() {
            let Some(i) = (0..self.datum.rank()).find(|&i| self.eps(&c, i) > 0) else {
                return Err(CrystalError::TruncationExceeded {
                    detail: format!("no ẽ applies to {c:?}"),
                });
            };
            c = self.apply(&c, i, Op::E)?.unwrap_or_default();
            path.push(i);
        }
        path.reverse();
        Ok(path)
    }
}

/// `B(∞)` in a string model.
#[derive(Debug, Clone)]
pub struct BInfCrystal {
    pub model: StringModel,
}

impl BInfCrystal {
    pub fn new(datum: &CartanDatum) -> Self {
        BInfCrystal {
            model: StringModel::reference(datum),
        }
    }
}

impl Crystal for BInfCrystal {
    type Node = Vec<u32>;

    fn datum(&self) -> &CartanDatum {
        &self.model.datum
    }

    fn weight(&self, b: &Vec<u32>) -> Weight {
        self.model.weight(b)
    }

    fn eps(&self, b: &Vec<u32>, i: usize) -> ExtInt {
        self.model.data(b, i).eps
    }

    fn phi(&self, b: &Vec<u32>, i: usize) -> ExtInt {
        self.model.data(b, i).phi
    }

    fn e(&self, b: &Vec<u32>, i: usize) -> Result<Option<Vec<u32>>, CrystalError> {
        self.model.apply(b, i, Op::E)
    }

    fn f(&self, b: &Vec<u32>, i: usize) -> Result<Option<Vec<u32>>, CrystalError> {
        self.model.apply(b, i, Op::F)
    }
}

/// `B(Λ)`: the elements of `B(∞)` with `ε_i^∨ ≤ λ_i`, tensored with `t_Λ`.
#[derive(Debug, Clone)]
pub struct BLambdaCrystal {
    pub model: StringModel,
    pub vee: Vec<StringModel>,
    pub lambda: DominantWeight,
}

impl BLambdaCrystal {
    pub fn new(datum: &CartanDatum, lambda: DominantWeight) -> Self {
        BLambdaCrystal {
            model: StringModel::reference(datum),
            vee: (0..datum.rank()).map(|i| StringModel::starting_with(datum, i)).collect(),
            lambda,
        }
    }

    /// `ε_i^∨` for every `i`.
    pub fn eps_vee(&self, b: &[u32]) -> Result<Vec<i64>, CrystalError> {
        let path = self.model.path_to(b)?;
        self.vee
            .iter()
            .map(|m| Ok(m.replay(&path)?.first().copied().unwrap_or(0) as i64))
            .collect()
    }

    pub fn is_member(&self, b: &[u32]) -> Result<bool, CrystalError> {
        Ok(self
            .eps_vee(b)?
            .iter()
            .zip(&self.lambda.0)
            .all(|(&e, &l)| e <= l as i64))
    }

    fn t_data(&self, i: usize) -> FactorData {
        FactorData {
            eps: ExtInt::NegInf,
            phi: ExtInt::NegInf,
            wt: self.lambda.get(i) as i64,
        }
    }

    /// Data of `b ⊗ t_Λ` by the tensor rule.
    pub fn data(&self, b: &[u32], i: usize) -> FactorData {
        self.model.rule.combine(self.model.data(b, i), self.t_data(i))
    }
}

impl Crystal for BLambdaCrystal {
    type Node = Vec<u32>;

    fn datum(&self) -> &CartanDatum {
        &self.model.datum
    }

    fn weight(&self, b: &Vec<u32>) -> Weight {
        Weight::of_dominant(&self.lambda).add(&self.model.weight(b))
    }

    fn eps(&self, b: &Vec<u32>, i: usize) -> ExtInt {
        self.data(b, i).eps
    }

    fn phi(&self, b: &Vec<u32>, i: usize) -> ExtInt {
        self.data(b, i).phi
    }

    fn e(&self, b: &Vec<u32>, i: usize) -> Result<Option<Vec<u32>>, CrystalError> {
        self.model.apply(b, i, Op::E)
    }

    fn f(&self, b: &Vec<u32>, i: usize) -> Result<Option<Vec<u32>>, CrystalError> {
        match self.model.apply(b, i, Op::F)? {
            Some(c) if self.is_member(&c)? => Ok(Some(c)),
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    BInf,
    BLambda(DominantWeight),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    /// Coordinates under `J⁰`.
    pub coords: Vec<u32>,
    /// Coordinates under `J^i`, one vector per vertex.
    pub vee_coords: Vec<Vec<u32>>,
    pub nu: RootVector,
    pub depth: u32,
    /// The `f̃`-path by which the node was first reached.
    pub path: Vec<usize>,
}

impl GraphNode {
    pub fn eps_vee(&self, i: usize) -> i64 {
        self.vee_coords[i].first().copied().unwrap_or(0) as i64
    }
}

/// Per-vertex statistics of a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStats {
    pub eps: i64,
    pub eps_vee: i64,
    pub wt: i64,
    pub jump: i64,
    pub phi: i64,
    pub phi_lambda: Option<i64>,
}

/// A generated piece of `B(∞)` or `B(Λ)`, nodes in breadth-first order.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub datum: CartanDatum,
    pub kind: GraphKind,
    pub nodes: Vec<GraphNode>,
    pub index: HashMap<Vec<u32>, usize>,
    /// `(source, vertex, target)` for `target = f̃_vertex source`.
    pub edges: Vec<(usize, usize, usize)>,
    pub depth_cap: u32,
    /// Whether generation closed up below the depth cap.
    pub complete: bool,
    pub model: StringModel,
    pub vee_models: Vec<StringModel>,
}

impl CrystalGraph {
    /// All of `B(∞)` up to `depth` applications of `f̃`.
    pub fn binf(datum: &CartanDatum, depth: u32) -> Result<Self, CrystalError> {
        Self::generate(datum, GraphKind::BInf, depth, TensorRule::standard())
    }

    /// `B(Λ)`, generated until it closes or the depth cap is reached.
    pub fn blambda(datum: &CartanDatum, lambda: &DominantWeight, depth_cap: u32) -> Result<Self, CrystalError> {
        if lambda.rank() != datum.rank() {
            return Err(CrystalError::RankMismatch {
                expected: datum.rank(),
                found: lambda.rank(),
            });
        }
        Self::generate(datum, GraphKind::BLambda(lambda.clone()), depth_cap, TensorRule::standard())
    }

    pub fn generate(datum: &CartanDatum, kind: GraphKind, depth_cap: u32, rule: TensorRule) -> Result<Self, CrystalError> {
        let n = datum.rank();
        let model = StringModel::reference(datum).with_rule(rule);
        let vee_models: Vec<StringModel> = (0..n)
            .map(|i| StringModel::starting_with(datum, i).with_rule(rule))
            .collect();
        let mut g = CrystalGraph {
            datum: datum.clone(),
            kind,
            nodes: vec![GraphNode {
                coords: Vec::new(),
                vee_coords: vec![Vec::new(); n],
                nu: RootVector::zero(n),
                depth: 0,
                path: Vec::new(),
            }],
            index: HashMap::from([(Vec::new(), 0)]),
            edges: Vec::new(),
            depth_cap,
            complete: true,
            model,
            vee_models,
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(src) = queue.pop_front() {
            let node = g.nodes[src].clone();
            for i in 0..n {
                let coords = g
                    .model
                    .apply(&node.coords, i, Op::F)?
                    .ok_or_else(|| CrystalError::TruncationExceeded {
                        detail: "f̃ returned zero inside B(∞)".into(),
                    })?;
                if let Some(&dst) = g.index.get(&coords) {
                    g.edges.push((src, i, dst));
                    continue;
                }
                let vee_coords = g
                    .vee_models
                    .iter()
                    .map(|m| {
                        m.apply(&node.vee_coords[m.first.unwrap_or(0)], i, Op::F)?
                            .ok_or_else(|| CrystalError::TruncationExceeded {
                                detail: "f̃ returned zero inside B(∞)".into(),
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if let GraphKind::BLambda(l) = &g.kind {
                    let member = (0..n).all(|j| vee_coords[j].first().copied().unwrap_or(0) <= l.get(j));
                    if !member {
                        continue;
                    }
                }
                if node.depth >= depth_cap {
                    g.complete = false;
                    continue;
                }
                let mut path = node.path.clone();
                path.push(i);
                let dst = g.nodes.len();
                g.nodes.push(GraphNode {
                    nu: g.model.nu(&coords),
                    coords: coords.clone(),
                    vee_coords,
                    depth: node.depth + 1,
                    path,
                });
                g.index.insert(coords, dst);
                g.edges.push((src, i, dst));
                queue.push_back(dst);
            }
        }
        if g.kind == GraphKind::BInf {
            g.complete = false;
        }
        Ok(g)
    }

    pub fn lambda(&self) -> Option<&DominantWeight> {
        match &self.kind {
            GraphKind::BInf => None,
            GraphKind::BLambda(l) => Some(l),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn find(&self, coords: &[u32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn stats(&self, idx: usize, i: usize) -> NodeStats {
        let node = &self.nodes[idx];
        let data = self.model.data(&node.coords, i);
        let eps = data.eps.finite().unwrap_or(0);
        let eps_vee = node.eps_vee(i);
        let wt = -self.datum.pairing_root(i, &node.nu);
        NodeStats {
            eps,
            eps_vee,
            wt,
            jump: eps + eps_vee + wt,
            phi: eps + wt,
            phi_lambda: self.lambda().map(|l| l.get(i) as i64 + eps + wt),
        }
    }

    /// Number of nodes per `ν`, where the weight is `-ν` or `Λ - ν`.
    pub fn weight_multiplicities(&self) -> BTreeMap<RootVector, usize> {
        let mut out = BTreeMap::new();
        for node in &self.nodes {
            *out.entry(node.nu.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn multiplicity(&self, nu: &RootVector) -> usize {
        self.nodes.iter().filter(|n| &n.nu == nu).count()
    }

    /// The crystal structure the graph was generated in.
    pub fn binf_crystal(&self) -> BInfCrystal {
        BInfCrystal {
            model: self.model.clone(),
        }
    }

    pub fn blambda_crystal(&self) -> Option<BLambdaCrystal> {
        self.lambda().map(|l| BLambdaCrystal {
            model: self.model.clone(),
            vee: self.vee_models.clone(),
            lambda: l.clone(),
        })
    }
}
