//! DOT, JSON and CSV renderings of crystal graphs.

use std::fmt::Write;

use serde_json::{json, Value};

use super::binf::{CrystalGraph, GraphKind};

fn coords_string(c: &[u32]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn weight_string(g: &CrystalGraph, idx: usize) -> String {
    let nu = &g.nodes[idx].nu;
    let mut parts = Vec::new();
    for i in 0..g.datum.rank() {
        if nu.get(i) > 0 {
            parts.push(format!("{}a{}", nu.get(i), g.datum.label(i)));
        }
    }
    let minus = if parts.is_empty() { "0".to_string() } else { format!("-({})", parts.join("+")) };
    match &g.kind {
        GraphKind::BInf => minus,
        GraphKind::BLambda(l) => {
            let lam: Vec<String> = l.0.iter().map(|x| x.to_string()).collect();
            if parts.is_empty() {
                format!("L[{}]", lam.join(","))
            } else {
                format!("L[{}]{minus}", lam.join(","))
            }
        }
    }
}

/// Deterministic DOT text: nodes in generation order, edges sorted.
pub fn to_dot(g: &CrystalGraph) -> String {
    let mut out = String::new();
    let name = match g.kind {
        GraphKind::BInf => "binf",
        GraphKind::BLambda(_) => "blambda",
    };
    let _ = writeln!(out, "digraph {name} {{");
    for (k, node) in g.nodes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  n{k} [label=\"{}\\n{}\"];",
            coords_string(&node.coords),
            weight_string(g, k)
        );
    }
    let mut edges = g.edges.clone();
    edges.sort();
    for (s, i, t) in edges {
        let _ = writeln!(out, "  n{s} -> n{t} [label=\"{}\"];", g.datum.label(i));
    }
    out.push_str("}\n");
    out
}

/// JSON dump with coordinates, statistics and edges.
pub fn to_json(g: &CrystalGraph) -> Value {
    let d = &g.datum;
    let nodes: Vec<Value> = (0..g.len())
        .map(|k| {
            let node = &g.nodes[k];
            let mut stats = serde_json::Map::new();
            for i in 0..d.rank() {
                let s = g.stats(k, i);
                let mut entry = json!({
                    "eps": s.eps, "eps_vee": s.eps_vee, "wt": s.wt, "phi": s.phi, "jump": s.jump,
                });
                if let Some(p) = s.phi_lambda {
                    entry["phi_lambda"] = json!(p);
                }
                stats.insert(d.label(i).to_string(), entry);
            }
            json!({
                "id": k,
                "ref_coords": node.coords,
                "nu": node.nu.0,
                "depth": node.depth,
                "path": node.path.iter().map(|&i| d.label(i)).collect::<Vec<_>>(),
                "stats": stats,
            })
        })
        .collect();
    let mut edges = g.edges.clone();
    edges.sort();
    let edges: Vec<Value> = edges
        .iter()
        .map(|&(s, i, t)| json!({"from": s, "to": t, "label": d.label(i)}))
        .collect();
    let kind = match &g.kind {
        GraphKind::BInf => json!({"type": "binf"}),
        GraphKind::BLambda(l) => json!({"type": "blambda", "lambda": l.0}),
    };
    json!({
        "labels": d.labels(),
        "kind": kind,
        "depth_cap": g.depth_cap,
        "complete": g.complete,
        "nodes": nodes,
        "edges": edges,
    })
}

/// CSV `weight_coords,count`; `weight_coords` lists the `ν` coefficients
/// (weight `-ν`, or `Λ - ν` for `B(Λ)`) separated by `;`.
pub fn multiplicities_csv(g: &CrystalGraph) -> String {
    let mut out = String::from("weight_coords,count\n");
    for (nu, count) in g.weight_multiplicities() {
        let parts: Vec<String> = nu.0.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{},{count}", parts.join(";"));
    }
    out
}
