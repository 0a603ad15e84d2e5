//! Hasse diagram export in Graphviz DOT format.

use crate::poset::FinitePoset;
use crate::subset::Subset;

/// Renders the Hasse diagram (cover relations only) of a poset. Nodes in
/// `highlight` are drawn filled; edges point from smaller to larger.
pub fn hasse_dot(poset: &FinitePoset, title: &str, highlight: Option<&Subset>) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{title}\" {{\n"));
    out.push_str("  rankdir=BT;\n  node [shape=ellipse];\n");
    for i in 0..poset.len() {
        let hl = highlight.map_or(false, |h| h.contains(i));
        if hl {
            out.push_str(&format!(
                "  \"{}\" [style=filled, fillcolor=lightgray];\n",
                poset.name(i)
            ));
        } else {
            out.push_str(&format!("  \"{}\";\n", poset.name(i)));
        }
    }
    for (i, j) in poset.covers() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            poset.name(i),
            poset.name(j)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_covers_only() {
        let c3 = FinitePoset::new(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        let dot = hasse_dot(&c3, "chain3", None);
        assert!(dot.contains("\"0\" -> \"1\""));
        assert!(dot.contains("\"1\" -> \"2\""));
        assert!(!dot.contains("\"0\" -> \"2\""));
    }

    #[test]
    fn highlight_marks_nodes() {
        let c2 = FinitePoset::new(&["0", "1"], &[("0", "1")]).unwrap();
        let h = c2.subset_of_names(&["1"]).unwrap();
        let dot = hasse_dot(&c2, "s", Some(&h));
        assert!(dot.contains("\"1\" [style=filled"));
    }
}
