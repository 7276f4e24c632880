//! Graphviz output for finite posets and MG-spaces.
//!
//! Edges are covering pairs drawn upwards. Classes become colored clusters,
//! ∃-points are double circles, and points in a marked set (a generator
//! down-set, say) get a dashed outline and a label naming the set.

use std::fmt::Write;

use thiserror::Error;

use crate::duality::{DualSpace, MGSpace};
use crate::free::FreePresentation;

/// Largest poset accepted.
pub const MAX_DOT_POINTS: usize = 500;

const PALETTE: [&str; 8] =
    ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"];

#[derive(Debug, Error)]
pub enum DotError {
    #[error("{size} points exceed the bound of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("point {index} out of range for {size} points")]
    PointOutOfRange { index: usize, size: usize },
}

/// What gets drawn. Points are `0..labels.len()`.
#[derive(Clone, Debug, Default)]
pub struct Hasse {
    pub labels: Vec<String>,
    /// `(a, b)` with `b` covering `a`.
    pub covers: Vec<(usize, usize)>,
    pub classes: Vec<Vec<usize>>,
    pub exists_points: Vec<usize>,
    /// Named point sets drawn dashed.
    pub marked: Vec<(String, Vec<usize>)>,
}

impl Hasse {
    /// A space in its own order. ∃-points are the minima of each class.
    pub fn of_space(space: &MGSpace) -> Self {
        Hasse {
            labels: (0..space.size()).map(|x| x.to_string()).collect(),
            covers: space.cover_pairs(),
            classes: space.classes().to_vec(),
            exists_points: (0..space.classes().len()).flat_map(|c| space.class_minima(c)).collect(),
            marked: Vec::new(),
        }
    }

    /// The dual of an algebra drawn on its join-irreducibles in the algebra
    /// order, labelled by element index.
    pub fn of_dual(dual: &DualSpace) -> Self {
        let space = &dual.space;
        Hasse {
            labels: dual.primes.iter().map(|p| format!("a{p}")).collect(),
            covers: space.cover_pairs().into_iter().map(|(a, b)| (b, a)).collect(),
            classes: space.classes().to_vec(),
            exists_points: (0..space.classes().len()).flat_map(|c| space.class_minima(c)).collect(),
            marked: Vec::new(),
        }
    }

    /// `Π(n)` in the algebra order with its generator down-sets. Points of
    /// `∃Π(n)` carry their labeled function.
    pub fn of_free(p: &FreePresentation) -> Self {
        let pi = &p.pi;
        let labels = (0..pi.size())
            .map(|x| {
                if pi.is_exists_point(x) {
                    p.exists_pi.nodes[pi.point_node[x]].to_string()
                } else {
                    format!("p{x}")
                }
            })
            .collect();
        let members = |set: u128| (0..pi.size()).filter(|&x| set >> x & 1 == 1).collect::<Vec<_>>();
        Hasse {
            labels,
            covers: pi.prime_cover_pairs(),
            classes: pi.space.classes().to_vec(),
            exists_points: (0..pi.size()).filter(|&x| pi.is_exists_point(x)).collect(),
            marked: p.generators.iter().enumerate().map(|(j, &g)| (format!("g{}", j + 1), members(g))).collect(),
        }
    }

    /// `∃Π(n)` alone: every node is an ∃-point and there are no classes.
    pub fn of_exists_pi(p: &FreePresentation) -> Self {
        let nodes = &p.exists_pi;
        Hasse {
            labels: nodes.nodes.iter().map(|f| f.to_string()).collect(),
            covers: nodes.cover_pairs(),
            classes: Vec::new(),
            exists_points: (0..nodes.len()).collect(),
            marked: Vec::new(),
        }
    }
}

pub fn emit_dot(h: &Hasse) -> Result<String, DotError> {
    let size = h.labels.len();
    if size > MAX_DOT_POINTS {
        return Err(DotError::TooLarge { size, cap: MAX_DOT_POINTS });
    }
    let used = h
        .covers
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .chain(h.classes.iter().flatten().copied())
        .chain(h.exists_points.iter().copied())
        .chain(h.marked.iter().flat_map(|(_, s)| s.iter().copied()));
    for index in used {
        if index >= size {
            return Err(DotError::PointOutOfRange { index, size });
        }
    }
    let mut marks: Vec<Vec<&str>> = vec![Vec::new(); size];
    for (name, set) in &h.marked {
        for &x in set {
            marks[x].push(name);
        }
    }
    let node = |out: &mut String, x: usize, indent: &str| {
        let shape = if h.exists_points.contains(&x) { "doublecircle" } else { "circle" };
        let _ = write!(out, "{indent}n{x} [label=\"{}\", shape={shape}", escape(&h.labels[x]));
        if !marks[x].is_empty() {
            let _ = write!(out, ", style=dashed, xlabel=\"{}\"", marks[x].join(","));
        }
        out.push_str("];\n");
    };

    let mut out = String::from("digraph mg {\n  rankdir=BT;\n  node [fontsize=10];\n  edge [arrowhead=none];\n");
    let mut placed = vec![false; size];
    for (c, class) in h.classes.iter().enumerate() {
        let mut members = class.clone();
        members.sort_unstable();
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    style=filled; color=\"{}\"; label=\"\";", PALETTE[c % PALETTE.len()]);
        for x in members {
            node(&mut out, x, "    ");
            placed[x] = true;
        }
        out.push_str("  }\n");
    }
    for x in 0..size {
        if !placed[x] {
            node(&mut out, x, "  ");
        }
    }
    let mut covers = h.covers.clone();
    covers.sort_unstable();
    covers.dedup();
    for (a, b) in covers {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
