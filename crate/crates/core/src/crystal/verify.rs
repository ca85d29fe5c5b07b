//! Executable checks: crystal axioms, the Kashiwara–Saito conditions,
//! strictness of the embeddings `Ψ_i`, the jump recursion and the
//! behaviour of `ε_i`, `ε_i^∨`, `φ_i^Λ` along edges.

use std::fmt;
use std::str::FromStr;

use super::binf::CrystalGraph;
use super::{Crystal, CrystalError, Elementary, ExtInt, Op, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Crystal axioms (C1)–(C5).
    C,
    /// Kashiwara–Saito conditions (B1)–(B7).
    KS,
    /// `Ψ_i ∘ f̃_j = f̃_j ∘ Ψ_i` and the `ẽ` analogue on every edge.
    PSI,
    /// `jump_i ≥ 0`, its recursion and its definition as a maximum.
    JUMP,
    /// `ε_i^∨` steps, and `ε_i`, `φ_i^Λ` changes along `f̃_j` edges.
    EPSJUMP,
    /// Three computations of `φ_i^Λ` on `B(Λ)`.
    PHI,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::C, Suite::KS, Suite::PSI, Suite::JUMP, Suite::EPSJUMP, Suite::PHI];

    pub fn name(self) -> &'static str {
        match self {
            Suite::C => "C",
            Suite::KS => "KS",
            Suite::PSI => "PSI",
            Suite::JUMP => "JUMP",
            Suite::EPSJUMP => "EPSJUMP",
            Suite::PHI => "PHI",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    /// A witness node, as an `f̃`-path (vertex indices) or a debug rendering.
    pub node: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report {
            suite,
            checks: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, name: &str, node: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                check: name.to_string(),
                node: node(),
                detail: detail(),
            });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} checks={} violations={}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.violations.len()
        )?;
        for v in self.violations.iter().take(10) {
            write!(f, "\n  {} at {}: {}", v.check, v.node, v.detail)?;
        }
        Ok(())
    }
}

fn path_string(path: &[usize]) -> String {
    let p: Vec<String> = path.iter().map(|i| (i + 1).to_string()).collect();
    format!("f[{}]", p.join(","))
}

/// (C1)–(C5) on the given nodes of any crystal.
pub fn check_axioms<C: Crystal>(crystal: &C, nodes: &[C::Node]) -> Report {
    let mut r = Report::new(Suite::C);
    let d = crystal.datum().clone();
    let n = d.rank();
    for b in nodes {
        let wt = crystal.weight(b);
        let label = || format!("{b:?}");
        for i in 0..n {
            let eps = crystal.eps(b, i);
            let phi = crystal.phi(b, i);
            let wi = wt.pair(&d, i);
            r.check(phi == eps.plus(wi), "C1", label, || format!("i={} phi={phi} eps={eps} wt={wi}", i + 1));
            for op in [Op::E, Op::F] {
                let (name, res) = match op {
                    Op::E => ("C2", crystal.e(b, i)),
                    Op::F => ("C3", crystal.f(b, i)),
                };
                let res = match res {
                    Ok(x) => x,
                    Err(e) => {
                        r.check(false, name, label, || e.to_string());
                        continue;
                    }
                };
                if phi == ExtInt::NegInf {
                    r.check(res.is_none(), "C5", label, || format!("i={} operator nonzero with phi=-inf", i + 1));
                }
                let Some(c) = res else { continue };
                let step: i64 = if op == Op::E { 1 } else { -1 };
                let expect_wt: Weight = wt.add_root(i, step);
                r.check(
                    crystal.eps(&c, i) == eps.plus(-step)
                        && crystal.phi(&c, i) == phi.plus(step)
                        && crystal.weight(&c) == expect_wt,
                    name,
                    label,
                    || format!("i={} image {c:?} has wrong eps/phi/wt", i + 1),
                );
                let back = match op {
                    Op::E => crystal.f(&c, i),
                    Op::F => crystal.e(&c, i),
                };
                r.check(back.as_ref() == Ok(&Some(b.clone())), "C4", label, || {
                    format!("i={} {:?} does not return from {c:?}: got {back:?}", i + 1, op)
                });
            }
        }
    }
    r
}

/// Runs one suite on a generated graph.
pub fn verify(g: &CrystalGraph, suite: Suite) -> Result<Report, CrystalError> {
    Ok(match suite {
        Suite::C => verify_c(g),
        Suite::KS => verify_ks(g),
        Suite::PSI => verify_psi(g)?,
        Suite::JUMP => verify_jump(g)?,
        Suite::EPSJUMP => verify_epsjump(g),
        Suite::PHI => verify_phi(g)?,
    })
}

fn verify_c(g: &CrystalGraph) -> Report {
    let nodes: Vec<Vec<u32>> = g.nodes.iter().map(|n| n.coords.clone()).collect();
    let mut r = match g.blambda_crystal() {
        Some(c) => check_axioms(&c, &nodes),
        None => check_axioms(&g.binf_crystal(), &nodes),
    };
    for &(s, i, t) in &g.edges {
        let f = g.model.apply(&g.nodes[s].coords, i, Op::F);
        r.check(
            f.as_ref().ok().and_then(|x| x.as_ref()) == Some(&g.nodes[t].coords),
            "edge",
            || path_string(&g.nodes[s].path),
            || format!("stored f{} edge disagrees with the operator", i + 1),
        );
    }
    r
}

fn verify_ks(g: &CrystalGraph) -> Report {
    let mut r = Report::new(Suite::KS);
    let d = &g.datum;
    let n = d.rank();
    let rule = g.model.rule;
    let zero_nodes: Vec<usize> = (0..g.len()).filter(|&k| g.nodes[k].nu.is_zero()).collect();
    r.check(zero_nodes == vec![0], "B2", || "graph".into(), || format!("weight-zero nodes {zero_nodes:?}"));
    for (k, node) in g.nodes.iter().enumerate() {
        let label = || path_string(&node.path);
        let mut from_path = vec![0u32; n];
        for &i in &node.path {
            from_path[i] += 1;
        }
        r.check(
            from_path == node.nu.0 && g.model.nu(&node.coords) == node.nu && node.depth as usize == node.path.len(),
            "B1",
            label,
            || format!("weight from coordinates {:?} vs path {from_path:?}", g.model.nu(&node.coords)),
        );
        for i in 0..n {
            let data = g.model.data(&node.coords, i);
            r.check(data.eps.finite().is_some(), "B4", label, || format!("eps_{} infinite", i + 1));
            if k == 0 {
                r.check(data.eps == ExtInt::Fin(0), "B3", label, || format!("eps_{} = {}", i + 1, data.eps));
            }
        }
        let mut some_positive = false;
        for i in 0..n {
            let vee = &node.vee_coords[i];
            let c = vee.first().copied().unwrap_or(0);
            some_positive |= c > 0;
            let mut rest: Vec<u32> = vee.iter().skip(1).copied().collect();
            while rest.last() == Some(&0) {
                rest.pop();
            }
            let rest_nu = g.model.nu(&rest);
            r.check(
                node.nu.checked_sub(&rest_nu) == Some(crate::cartan::RootVector::simple(n, i).scaled(c)),
                "B6",
                label,
                || format!("Psi_{} splits weight wrongly", i + 1),
            );
            if g.lambda().is_none() {
                r.check(g.find(&rest).is_some(), "B5", label, || format!("Psi_{} left factor missing", i + 1));
            }
            let factor = Elementary::B { i, n: -(c as i64) };
            for j in 0..n {
                let lhs = g.model.data(&node.coords, j);
                let rhs = rule.combine(g.model.data(&rest, j), factor.data(d, j));
                r.check(lhs == rhs, "B5", label, || {
                    format!("Psi_{} not strict for j={}: {lhs:?} vs {rhs:?}", i + 1, j + 1)
                });
            }
        }
        if k != 0 {
            r.check(some_positive, "B7", label, || "no Psi_i peels a positive power".into());
        }
    }
    r
}

fn verify_psi(g: &CrystalGraph) -> Result<Report, CrystalError> {
    let mut r = Report::new(Suite::PSI);
    for &(s, j, t) in &g.edges {
        let (src, dst) = (&g.nodes[s], &g.nodes[t]);
        let label = || path_string(&src.path);
        let back = g.model.apply(&dst.coords, j, Op::E)?;
        r.check(back.as_ref() == Some(&src.coords), "PSI-ref", label, || format!("e{} does not invert f{}", j + 1, j + 1));
        for (i, m) in g.vee_models.iter().enumerate() {
            let fwd = m.apply(&src.vee_coords[i], j, Op::F)?;
            r.check(fwd.as_ref() == Some(&dst.vee_coords[i]), "PSI-f", label, || {
                format!("Psi_{} f{} mismatch: {fwd:?} vs {:?}", i + 1, j + 1, dst.vee_coords[i])
            });
            let bwd = m.apply(&dst.vee_coords[i], j, Op::E)?;
            r.check(bwd.as_ref() == Some(&src.vee_coords[i]), "PSI-e", label, || {
                format!("Psi_{} e{} mismatch", i + 1, j + 1)
            });
        }
    }
    Ok(r)
}

fn verify_jump(g: &CrystalGraph) -> Result<Report, CrystalError> {
    let mut r = Report::new(Suite::JUMP);
    let n = g.datum.rank();
    for (k, node) in g.nodes.iter().enumerate() {
        let label = || path_string(&node.path);
        for i in 0..n {
            let s = g.stats(k, i);
            r.check(s.jump >= 0, "jump>=0", label, || format!("jump_{} = {}", i + 1, s.jump));
            // jump_i(b) = max{J : ε_i^∨(f̃_i^J b) = ε_i^∨(b)}
            let m = &g.vee_models[i];
            let mut c = node.vee_coords[i].clone();
            let mut last_equal = 0i64;
            for step in 1..=s.jump.max(0) + 1 {
                c = m.apply(&c, i, Op::F)?.unwrap_or_default();
                if c.first().copied().unwrap_or(0) as i64 == s.eps_vee {
                    last_equal = step;
                } else {
                    break;
                }
            }
            r.check(last_equal == s.jump, "jump-def", label, || {
                format!("jump_{} formula {} vs definition {last_equal}", i + 1, s.jump)
            });
        }
    }
    for &(src, i, dst) in &g.edges {
        let a = g.stats(src, i).jump;
        let b = g.stats(dst, i).jump;
        r.check(b == (a - 1).max(0), "jump-rec", || path_string(&g.nodes[src].path), || {
            format!("jump_{} {a} -> {b} along f{}", i + 1, i + 1)
        });
    }
    Ok(r)
}

fn verify_epsjump(g: &CrystalGraph) -> Report {
    let mut r = Report::new(Suite::EPSJUMP);
    let d = &g.datum;
    let n = d.rank();
    for &(src, j, dst) in &g.edges {
        let label = || path_string(&g.nodes[src].path);
        for i in 0..n {
            let a = g.stats(src, i);
            let b = g.stats(dst, i);
            if i == j {
                r.check(b.eps_vee == a.eps_vee || b.eps_vee == a.eps_vee + 1, "eps-vee-i", label, || {
                    format!("eps_vee_{} {} -> {}", i + 1, a.eps_vee, b.eps_vee)
                });
                continue;
            }
            r.check(b.eps_vee == a.eps_vee, "eps-vee-j", label, || {
                format!("eps_vee_{} changed under f{}", i + 1, j + 1)
            });
            let aij = d.a(i, j);
            r.check(b.eps <= a.eps && b.eps >= a.eps - aij, "eps-range", label, || {
                format!("eps_{} {} -> {} under f{} (a={aij})", i + 1, a.eps, b.eps, j + 1)
            });
            if let (Some(pa), Some(pb)) = (a.phi_lambda, b.phi_lambda) {
                r.check(pb - pa == (b.eps - a.eps) + aij, "phi-step", label, || {
                    format!("phi_{} {pa} -> {pb} vs eps {} -> {}", i + 1, a.eps, b.eps)
                });
            }
        }
    }
    r
}

fn verify_phi(g: &CrystalGraph) -> Result<Report, CrystalError> {
    let mut r = Report::new(Suite::PHI);
    let Some(bl) = g.blambda_crystal() else {
        return Ok(r);
    };
    let lambda = bl.lambda.clone();
    let n = g.datum.rank();
    let cap = 4 * (g.depth_cap as i64 + lambda.0.iter().map(|&l| l as i64).sum::<i64>()) + 8;
    for (k, node) in g.nodes.iter().enumerate() {
        let label = || path_string(&node.path);
        for i in 0..n {
            let formula = g.stats(k, i).phi_lambda.unwrap_or(i64::MIN);
            let tensor = bl.data(&node.coords, i).phi.finite().unwrap_or(i64::MIN);
            // walk the i-string inside B(Λ)
            let mut count = 0i64;
            let mut vee = node.vee_coords.clone();
            loop {
                let next: Vec<Vec<u32>> = g
                    .vee_models
                    .iter()
                    .zip(&vee)
                    .map(|(m, c)| m.apply(c, i, Op::F).map(|x| x.unwrap_or_default()))
                    .collect::<Result<_, _>>()?;
                let member = (0..n).all(|j| next[j].first().copied().unwrap_or(0) <= lambda.get(j));
                if !member || count > cap {
                    break;
                }
                count += 1;
                vee = next;
            }
            r.check(formula == tensor && tensor == count, "phi3", label, || {
                format!("phi_{}: formula {formula}, tensor {tensor}, count {count}", i + 1)
            });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanDatum, DominantWeight};
    use crate::crystal::{TensorCrystal, TensorRule};

    #[test]
    fn a2_suites_pass() {
        let d = CartanDatum::a2();
        let g = CrystalGraph::binf(&d, 4).unwrap();
        for s in Suite::ALL {
            let rep = verify(&g, s).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        let g = CrystalGraph::blambda(&d, &DominantWeight(vec![1, 1]), 20).unwrap();
        for s in Suite::ALL {
            let rep = verify(&g, s).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn corrupted_rule_is_caught() {
        let d = CartanDatum::a1();
        let b = |n| Elementary::B { i: 0, n };
        let seeds = vec![vec![b(0), b(0)]];
        let good = TensorCrystal::new(d.clone(), TensorRule::standard());
        assert!(check_axioms(&good, &good.closure(&seeds, 3)).passed());
        let bad = TensorCrystal::new(d, TensorRule::corrupted());
        let rep = check_axioms(&bad, &bad.closure(&seeds, 3));
        assert!(rep.violations.iter().any(|v| v.check == "C4"), "{rep}");
    }
}
