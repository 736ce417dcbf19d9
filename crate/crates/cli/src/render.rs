//! Plain-text Dynkin diagrams with a label on every node.
//!
//! Nodes follow Bourbaki's numbering. Bonds: `---` single, `=>=`/`=<=`
//! double and `#>#`/`#<#` triple, the arrow pointing at the shorter root.
//! A branch node (type D and E) hangs below its neighbour on the chain.

use weylsect::{RootSystem, TypeTag};

fn layout(sys: &RootSystem) -> (Vec<usize>, Option<(usize, usize)>) {
    let n = sys.rank();
    match sys.type_tag() {
        TypeTag::D => ((0..n - 1).collect(), Some((n - 1, n - 3))),
        TypeTag::E => {
            let mut chain = vec![0];
            chain.extend(2..n);
            (chain, Some((1, 3)))
        }
        _ => ((0..n).collect(), None),
    }
}

fn bond(sys: &RootSystem, i: usize, j: usize) -> &'static str {
    let (cij, cji) = (sys.cartan()[i][j], sys.cartan()[j][i]);
    // |c_ij| > 1 exactly when α_i is the shorter root
    let left_short = cij.abs() > 1;
    match (cij * cji, left_short) {
        (1, _) => "---",
        (2, true) => "=<=",
        (2, false) => "=>=",
        (3, true) => "#<#",
        (3, false) => "#>#",
        _ => "   ",
    }
}

/// The diagram with `labels[i]` printed at node `i`.
pub fn dynkin(sys: &RootSystem, labels: &[String]) -> String {
    assert_eq!(labels.len(), sys.rank());
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:^width$}");
    let (chain, branch) = layout(sys);
    let mut line = String::new();
    let mut centers = vec![0usize; sys.rank()];
    for (k, &node) in chain.iter().enumerate() {
        if k > 0 {
            line.push_str(bond(sys, chain[k - 1], node));
        }
        centers[node] = line.chars().count() + width / 2;
        line.push_str(&pad(&labels[node]));
    }
    let mut out = line.trim_end().to_string();
    if let Some((leaf, attach)) = branch {
        let col = centers[attach];
        let label = &labels[leaf];
        let start = col.saturating_sub(label.chars().count().saturating_sub(1) / 2);
        out.push('\n');
        out.push_str(&" ".repeat(col));
        out.push('|');
        out.push('\n');
        out.push_str(&" ".repeat(start));
        out.push_str(label);
    }
    out
}

/// Node numbers `1..=n` in place of labels.
pub fn dynkin_numbered(sys: &RootSystem) -> String {
    let labels: Vec<String> = (1..=sys.rank()).map(|i| i.to_string()).collect();
    dynkin(sys, &labels)
}
