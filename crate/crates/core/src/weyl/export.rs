use std::fmt::Write;

use serde::Serialize;

use super::{SignAssignment, Square, WeylGroup};
use crate::cartan::CartanMatrixJson;

#[derive(Serialize, Debug, Clone)]
pub struct ElementJson {
    pub index: usize,
    pub word: Vec<usize>,
}

#[derive(Serialize, Debug, Clone)]
pub struct ArrowJson {
    pub source: usize,
    pub target: usize,
    pub sign: i64,
}

#[derive(Serialize, Debug, Clone)]
pub struct WeylJson {
    pub gcm: CartanMatrixJson,
    pub max_length: usize,
    pub complete: bool,
    pub level_sizes: Vec<usize>,
    pub levels: Vec<Vec<ElementJson>>,
    pub arrows: Vec<ArrowJson>,
    pub squares: Vec<[usize; 4]>,
}

pub fn weyl_json(group: &WeylGroup, squares: &[Square], signs: &SignAssignment) -> WeylJson {
    WeylJson {
        gcm: group.gcm().to_json(),
        max_length: group.max_length(),
        complete: group.is_complete(),
        level_sizes: group.level_sizes(),
        levels: group
            .levels()
            .iter()
            .map(|lvl| lvl.iter().map(|&i| ElementJson { index: i, word: group.element(i).word().to_vec() }).collect())
            .collect(),
        arrows: signs
            .arrows()
            .iter()
            .map(|&a| ArrowJson { source: a.source, target: a.target, sign: signs.sign(a) })
            .collect(),
        squares: squares.iter().map(|s| [s.0, s.1, s.2, s.3]).collect(),
    }
}

pub fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
    }
}

/// Arrow graph with sign labels; members of `W^S` are filled when a subset
/// is given.
pub fn weyl_dot(group: &WeylGroup, signs: &SignAssignment, subset: Option<&[usize]>) -> String {
    let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n  node [shape=box];\n");
    for (n, lvl) in group.levels().iter().enumerate() {
        let _ = writeln!(out, "  subgraph level{n} {{ rank=same;");
        for &i in lvl {
            let label = word_label(group.element(i).word());
            let style = match subset {
                Some(s) if group.is_minimal_rep(i, s) => ", style=filled, fillcolor=lightblue",
                _ => "",
            };
            let _ = writeln!(out, "    w{i} [label=\"{label}\"{style}];");
        }
        out.push_str("  }\n");
    }
    for &a in signs.arrows() {
        let sign = if signs.sign(a) > 0 { "+" } else { "-" };
        let _ = writeln!(out, "  w{} -> w{} [label=\"{sign}\"];", a.source, a.target);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::weyl::assign_signs;

    #[test]
    fn dot_has_every_node_and_arrow() {
        let gcm = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let g = WeylGroup::enumerate_up_to(&gcm, 3).unwrap();
        let sq = g.squares().unwrap();
        let s = assign_signs(&g.arrows(), &sq).unwrap();
        let dot = weyl_dot(&g, &s, Some(&[0]));
        assert_eq!(dot.matches("[label=\"").count(), 6 + 8);
        assert_eq!(dot.matches("lightblue").count(), 3);
        let json = weyl_json(&g, &sq, &s);
        assert_eq!(json.arrows.len(), 8);
        assert_eq!(json.level_sizes, vec![1, 2, 2, 1]);
    }
}
