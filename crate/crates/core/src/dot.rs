//! Graphviz DOT export.

use crate::graph::{llex_sorted, Graph, MarkedSubgraph};

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

/// Renders a graph; `marks` are drawn as boxes.
pub fn to_dot(g: Option<&Graph>, marks: &[String]) -> String {
    let mut out = String::from("digraph G {\n");
    let mut vertices: Vec<String> = marks.to_vec();
    if let Some(g) = g {
        vertices.extend(g.vertices().iter().cloned());
    }
    for v in llex_sorted(vertices) {
        if marks.contains(&v) {
            out.push_str(&format!("  {} [shape=box];\n", quote(&v)));
        } else {
            out.push_str(&format!("  {};\n", quote(&v)));
        }
    }
    if let Some(g) = g {
        for (s, a, t) in g.triples() {
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                quote(s),
                quote(t),
                quote(a)
            ));
        }
    }
    out.push_str("}\n");
    out
}

pub fn marked_to_dot(m: &MarkedSubgraph) -> String {
    to_dot(m.graph.as_ref(), &m.marks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_edges_and_marks() {
        let g = Graph::from_edges([("p", "a", "q"), ("q", "b", "p\"x")]).unwrap();
        let dot = to_dot(Some(&g), &["q".to_string()]);
        assert_eq!(
            dot,
            "digraph G {\n  \"p\";\n  \"q\" [shape=box];\n  \"p\\\"x\";\n  \"p\" -> \"q\" [label=\"a\"];\n  \"q\" -> \"p\\\"x\" [label=\"b\"];\n}\n"
        );
    }
}
