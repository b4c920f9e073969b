//! Graphviz export of the subgroup lattice.

use std::fmt::Write;

use crate::chars::{CharLattice, CharSet};
use crate::transfer::TransferSystem;

/// Hasse diagram of `Sub(G)`, bottom to top. Strict edges of `r` are drawn
/// dashed in red with `class="transfer"`; with `u`, each node also shows
/// `|U|_H|`.
pub fn export_dot(cl: &CharLattice, r: Option<&TransferSystem>, u: Option<&CharSet>) -> String {
    let lat = cl.lattice();
    let mut out = String::new();
    writeln!(out, "digraph subgroups {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for h in 0..lat.len() {
        let mut label = format!("H{h}\\n|H| = {}", lat.order(h));
        if let Some(u) = u {
            let res = cl.res_set(u, h);
            write!(label, "\\n|U_H| = {}", res.len()).unwrap();
        }
        writeln!(out, "  n{h} [label=\"{label}\"];").unwrap();
    }
    for h in 0..lat.len() {
        for k in lat.below(h).ones().filter(|&k| lat.covers(k, h)) {
            writeln!(out, "  n{k} -> n{h};").unwrap();
        }
    }
    if let Some(r) = r {
        for (k, h) in r.edges() {
            writeln!(
                out,
                "  n{k} -> n{h} [class=\"transfer\", color=red, style=dashed, constraint=false];"
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cl(s: &str) -> CharLattice {
        CharLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    fn count(s: &str, pat: &str) -> usize {
        s.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn c4_is_a_chain() {
        let d = export_dot(&cl("C4"), None, None);
        assert_eq!(count(&d, "[label="), 3);
        assert_eq!(count(&d, " -> "), 2);
        assert!(d.contains("n0 -> n1;") && d.contains("n1 -> n2;"));
    }

    #[test]
    fn klein_four_is_a_diamond() {
        let d = export_dot(&cl("C2xC2"), None, None);
        assert_eq!(count(&d, "[label="), 5);
        assert_eq!(count(&d, " -> "), 6);
    }

    #[test]
    fn universe_annotation_and_stability() {
        let c = cl("C4");
        let u = c.set_of(c.top(), [0, 2]);
        let r = TransferSystem::maximal(c.lattice());
        let a = export_dot(&c, Some(&r), Some(&u));
        assert_eq!(a, export_dot(&c, Some(&r), Some(&u)));
        assert_eq!(count(&a, "class=\"transfer\""), 3);
        assert!(a.contains("H1\\n|H| = 2\\n|U_H| = 1"));
    }
}
