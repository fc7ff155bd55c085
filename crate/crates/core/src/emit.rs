//! JSON, CSV and DOT renderings of a Hasse graph.

use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::BasedAlgebra;
use crate::complex::{ComplexJson, EMat, TwoTermComplex};
use crate::homotopy::hom_shift1_dim;
use crate::error::{Error, Result};
use crate::explore::{format_sign_vector, Exploration, HasseGraph, Status};
use crate::mutation::{GVector, Kernel};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub g_matrix: Vec<GVector>,
    pub total_g: GVector,
    pub tau_tilting: bool,
    /// Summands in the order of `g_matrix`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summands: Option<Vec<ComplexJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    /// Position in `from`'s g-matrix of the summand that is replaced.
    pub summand: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    pub status: Status,
    pub node_count: usize,
    pub tau_tilting_count: usize,
    pub edge_count: usize,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

/// Timing is left out so the output depends only on the input.
pub fn graph_json<S: Scalar>(
    k: &Kernel<S>,
    algebra: &str,
    epsilon: Option<&[i8]>,
    ex: &Exploration,
    with_summands: bool,
) -> GraphJson {
    let g = &ex.graph;
    GraphJson {
        algebra: algebra.to_string(),
        epsilon: epsilon.map(format_sign_vector),
        status: ex.report.status,
        node_count: g.len(),
        tau_tilting_count: g.tau_count(),
        edge_count: g.edges.len(),
        nodes: g
            .nodes
            .iter()
            .enumerate()
            .map(|(id, nd)| NodeJson {
                id,
                g_matrix: nd.g_matrix.clone(),
                total_g: nd.total_g(),
                tau_tilting: nd.tau_flag,
                summands: with_summands.then(|| {
                    nd.ids
                        .iter()
                        .map(|&i| {
                            let stored = k.summand(i);
                            canonical_summand(k.algebra, &k.g(i)).unwrap_or_else(|| (*stored).clone()).to_json(k.algebra)
                        })
                        .collect()
                }),
            })
            .collect(),
        edges: g.edges.iter().map(|&(from, to, summand)| EdgeJson { from, to, summand }).collect(),
    }
}

/// A presilting complex with g-vector `g`, chosen without reference to any
/// previously computed one: terms are read off `g`, and the differential is
/// the all-ones element of each block, or failing that a small pseudo-random
/// one seeded by `g`. Presilting complexes are determined by their g-vectors,
/// so any candidate passing the check is the right one.
pub fn canonical_summand<S: Scalar>(a: &BasedAlgebra<S>, g: &[i64]) -> Option<TwoTermComplex<S>> {
    let mut deg0 = Vec::new();
    let mut deg1 = Vec::new();
    for (v, &x) in g.iter().enumerate() {
        let reps = x.unsigned_abs() as usize;
        if x > 0 {
            deg0.extend(std::iter::repeat_n(v, reps));
        } else {
            deg1.extend(std::iter::repeat_n(v, reps));
        }
    }
    let seed = g.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &x| (h ^ x as u64).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..64 {
        let mut diff = EMat::<S>::zero(a, &deg0, &deg1);
        for (r, &y) in deg0.iter().enumerate() {
            for (c, &x) in deg1.iter().enumerate() {
                let entry = (0..a.block_dim(y, x))
                    .map(|_| if attempt == 0 { S::one() } else { S::from_i64(rng.gen_range(-3..=3)) })
                    .collect();
                diff.set(r, c, entry);
            }
        }
        let t = TwoTermComplex::new(a, deg0.clone(), deg1.clone(), diff).ok()?;
        if hom_shift1_dim(a, &t, &t) == 0 {
            return Some(t);
        }
    }
    None
}

/// Reparses the summands of every node and recomputes its g-matrix.
pub fn reparse_g_matrices<S: Scalar>(k: &Kernel<S>, j: &GraphJson) -> Result<Vec<Vec<GVector>>> {
    let a = k.algebra;
    j.nodes
        .iter()
        .map(|nd| {
            let s = nd.summands.as_ref().ok_or_else(|| Error::Invalid("node without summands".into()))?;
            let mut m: Vec<GVector> = s
                .iter()
                .map(|c| TwoTermComplex::from_json(a, c).map(|t| t.g_vector(a.num_vertices())))
                .collect::<Result<_>>()?;
            m.sort_by(|x, y| y.cmp(x));
            Ok(m)
        })
        .collect()
}

/// One line per summand, comma separated; a blank line after each node.
pub fn graph_csv(g: &HasseGraph) -> String {
    let mut out = String::new();
    for nd in &g.nodes {
        for row in &nd.g_matrix {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<Vec<GVector>>> {
    let mut out = Vec::new();
    let mut cur: Vec<GVector> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            continue;
        }
        let row = line
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<GVector, _>>()
            .map_err(|e| Error::Syntax { line: no + 1, col: 1, msg: e.to_string() })?;
        cur.push(row);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn tuple(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

/// Nodes are labelled by their total g-vector; τ-tilting nodes are circles,
/// the others boxes. Edges point along left mutation.
pub fn emit_dot(g: &HasseGraph) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=TB;\n");
    for (i, nd) in g.nodes.iter().enumerate() {
        let shape = if nd.tau_flag { "circle" } else { "box" };
        out.push_str(&format!("  n{i} [label=\"{}\", shape={shape}];\n", tuple(&nd.total_g())));
    }
    for &(s, t, _) in &g.edges {
        out.push_str(&format!("  n{s} -> n{t};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_based_algebra;
    use crate::dsl::parse_presentation;
    use crate::explore::enumerate_2silt;
    use crate::scalar::Rational;

    #[test]
    fn field_graph_has_two_nodes() {
        let a = build_based_algebra::<Rational>(&parse_presentation("vertices: 0\n").unwrap()).unwrap();
        let k = Kernel::new(&a);
        let ex = enumerate_2silt(&k, 10);
        let dot = emit_dot(&ex.graph);
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("label=\"(1)\", shape=circle"));
        assert!(dot.contains("label=\"(-1)\", shape=box"));
        let csv = graph_csv(&ex.graph);
        assert_eq!(csv, "1\n\n-1\n\n");
        assert_eq!(parse_csv(&csv).unwrap(), ex.graph.g_matrices());
    }
}
