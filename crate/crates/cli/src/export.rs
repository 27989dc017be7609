//! JSON and DOT serialisation of the computed objects.

use psgl_core::gf::FieldSpec;
use psgl_core::nmonoid::NMonoid;
use psgl_core::weights::{multiset_dimension, GammaGraph, WeightMultiset};
use psgl_core::{CarrySet, NClass};
use serde_json::{json, Value};

pub fn fieldspec_json(k: &FieldSpec) -> Value {
    json!({"p": k.p(), "f": k.f(), "modulus": k.modulus()})
}

pub fn nclass_json(m: &NMonoid, x: NClass) -> Value {
    json!(x.digits(m.f))
}

pub fn carry_set_json(f: usize, set: CarrySet) -> Value {
    json!(set.to_sorted_vec(f))
}

pub fn jh_json(m: &NMonoid, ms: &WeightMultiset) -> Value {
    let rows: Vec<Value> = ms
        .iter()
        .map(|(w, count)| {
            json!({
                "weight": w.display(m),
                "twist": w.twist().digits(m.f),
                "sym": w.sym_digits(m.f),
                "dim": w.dimension(m.f),
                "multiplicity": count,
            })
        })
        .collect();
    json!({
        "constituents": rows,
        "count": ms.values().sum::<u64>(),
        "total_dim": multiset_dimension(m, ms),
    })
}

pub fn jh_text(m: &NMonoid, ms: &WeightMultiset) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<24} {:>4} {:>5}\n", "weight", "dim", "mult"));
    for (w, count) in ms {
        out.push_str(&format!(
            "{:<24} {:>4} {:>5}\n",
            w.display(m),
            w.dimension(m.f),
            count
        ));
    }
    out.push_str(&format!(
        "total: {} constituents, dimension {}\n",
        ms.values().sum::<u64>(),
        multiset_dimension(m, ms)
    ));
    out
}

pub fn poset_json(m: &NMonoid, graph: &GammaGraph) -> Value {
    let nodes: Vec<Value> = graph
        .vertices
        .iter()
        .enumerate()
        .map(|(v, t)| {
            let w = type_weight_display(m, graph.r, *t);
            json!({
                "set": t.set.to_sorted_vec(m.f),
                "gamma": t.gamma.digits(m.f),
                "weight": w.0,
                "dim": w.1,
                "level_up": graph.level_up[v],
                "level_down": graph.level_down[v],
            })
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = graph.edges.clone();
    edges.sort_unstable();
    json!({
        "r": graph.r.digits(m.f),
        "nodes": nodes,
        "edges": edges,
    })
}

fn type_weight_display(
    m: &NMonoid,
    r: NClass,
    t: psgl_core::weights::RamType,
) -> (String, u64) {
    use psgl_core::weights::{r_minus_2gamma, sigma_j, SerreWeight};
    let base = sigma_j(m, r_minus_2gamma(m, r, t.gamma), t.set);
    let w = SerreWeight::new(m, m.add(t.gamma, base.twist()), base.sym_digits(m.f));
    (w.display(m), w.dimension(m.f))
}

/// Stable DOT rendering: nodes and edges are emitted in sorted order.
pub fn poset_dot(m: &NMonoid, graph: &GammaGraph) -> String {
    let mut out = String::from("digraph submodule_types {\n  rankdir=TB;\n");
    for (v, t) in graph.vertices.iter().enumerate() {
        let (w, dim) = type_weight_display(m, graph.r, *t);
        out.push_str(&format!(
            "  n{v} [label=\"({},{}) : {} dim {}\"];\n",
            t.set.display(m.f),
            t.gamma.display(m.f),
            w,
            dim
        ));
    }
    let mut edges: Vec<(usize, usize)> = graph.edges.clone();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
