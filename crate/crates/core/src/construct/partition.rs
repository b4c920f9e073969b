use serde::{Deserialize, Serialize};

use crate::chars::CharLattice;
use crate::error::{Error, Result};
use crate::group::SubgroupId;

/// Partitions of `X = I_K^H(χ)` by `τ|_L` up to conjugation, for each `L`
/// with `L <= H` and `L ≰ K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub h: SubgroupId,
    pub k: SubgroupId,
    pub chi: u32,
    /// Elements of `X`, ascending.
    pub x: Vec<u32>,
    /// `(L, blocks)`; blocks are sorted lists of elements of `X`.
    pub partitions: Vec<(SubgroupId, Vec<Vec<u32>>)>,
    /// The `L` with `K ∧ L <= ker χ`.
    pub s_chi: Vec<SubgroupId>,
    /// Claims 1 to 6, in order: refinement, equality below members of
    /// `S_χ`, blocks of size at most two, discrete iff outside `S_χ`, the
    /// unique singleton `{1_L^X}` inside `S_χ`, and blocks of different
    /// partitions meeting in at most one element.
    pub claims: [bool; 6],
    pub failures: Vec<String>,
}

impl PartitionReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|&c| c)
    }
}

pub fn partition_structure(cl: &CharLattice, h: SubgroupId, k: SubgroupId, chi: u32) -> Result<PartitionReport> {
    let lat = cl.lattice();
    if lat.order(h) % 2 == 0 {
        return Err(Error::precondition("partition structure needs a group of odd order"));
    }
    if !lat.covers(k, h) {
        return Err(Error::precondition(format!("{k} is not a maximal subgroup of {h}")));
    }
    if chi as usize >= cl.num_chars(k) {
        return Err(Error::invalid(format!("character index {chi} out of range")));
    }
    let x: Vec<u32> = cl.ind_set(&cl.singleton(k, chi), h).iter().collect();
    let ls: Vec<SubgroupId> = lat.below(h).ones().filter(|&l| !lat.leq(l, k)).collect();

    // block label of each element of X under P_L
    let label = |l: SubgroupId| -> Vec<u32> {
        x.iter()
            .map(|&tau| {
                let r = cl.res(h, l, tau);
                r.min(cl.conj(l, r))
            })
            .collect()
    };
    let labels: Vec<Vec<u32>> = ls.iter().map(|&l| label(l)).collect();
    let in_s: Vec<bool> = ls
        .iter()
        .map(|&l| cl.res(k, lat.meet(k, l), chi) == 0)
        .collect();

    let refines = |a: &[u32], b: &[u32]| {
        (0..x.len()).all(|i| (0..x.len()).all(|j| a[i] != a[j] || b[i] == b[j]))
    };
    let block_sizes = |a: &[u32]| {
        let mut sizes: Vec<usize> = Vec::new();
        let mut seen: Vec<u32> = Vec::new();
        for &v in a {
            match seen.iter().position(|&s| s == v) {
                Some(i) => sizes[i] += 1,
                None => {
                    seen.push(v);
                    sizes.push(1);
                }
            }
        }
        (seen, sizes)
    };

    let mut claims = [true; 6];
    let mut failures = Vec::new();
    let mut fail = |c: usize, msg: String, claims: &mut [bool; 6]| {
        if claims[c] {
            failures.push(format!("claim {}: {msg}", c + 1));
        }
        claims[c] = false;
    };

    for (a, &l) in ls.iter().enumerate() {
        let (keys, sizes) = block_sizes(&labels[a]);
        if sizes.iter().any(|&s| s > 2) {
            fail(2, format!("P_{l} has a block with more than two elements"), &mut claims);
        }
        let discrete = sizes.iter().all(|&s| s == 1);
        if discrete == in_s[a] {
            fail(3, format!("P_{l} discrete = {discrete} but L in S_χ = {}", in_s[a]), &mut claims);
        }
        if in_s[a] {
            let singles: Vec<u32> = keys.iter().zip(&sizes).filter(|(_, &s)| s == 1).map(|(&k, _)| k).collect();
            let ok = singles.len() == 1
                && x.iter().zip(&labels[a]).any(|(&tau, &lab)| lab == singles[0] && cl.res(h, l, tau) == 0);
            if !ok {
                fail(4, format!("P_{l} does not have the unique singleton {{1_L^X}}"), &mut claims);
            }
        }
        for (b, &m) in ls.iter().enumerate() {
            if lat.leq(m, l) {
                if !refines(&labels[a], &labels[b]) {
                    fail(0, format!("P_{l} does not refine P_{m}"), &mut claims);
                }
                if in_s[a] && !refines(&labels[b], &labels[a]) {
                    fail(1, format!("P_{l} differs from P_{m} although L is in S_χ"), &mut claims);
                }
            }
            let same = refines(&labels[a], &labels[b]) && refines(&labels[b], &labels[a]);
            if !same {
                for i in 0..x.len() {
                    for j in i + 1..x.len() {
                        if labels[a][i] == labels[a][j] && labels[b][i] == labels[b][j] {
                            fail(5, format!("blocks of P_{l} and P_{m} share two elements"), &mut claims);
                        }
                    }
                }
            }
        }
    }

    let partitions = ls
        .iter()
        .zip(&labels)
        .map(|(&l, lab)| {
            let (keys, _) = block_sizes(lab);
            let mut blocks: Vec<Vec<u32>> = keys
                .iter()
                .map(|&key| x.iter().zip(lab).filter(|(_, &v)| v == key).map(|(&t, _)| t).collect())
                .collect();
            blocks.sort();
            (l, blocks)
        })
        .collect();
    let s_chi = ls.iter().zip(&in_s).filter(|(_, &s)| s).map(|(&l, _)| l).collect();
    Ok(PartitionReport {
        h,
        k,
        chi,
        x,
        partitions,
        s_chi,
        claims,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cl(s: &str) -> CharLattice {
        CharLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn c9_over_c3_with_trivial_character() {
        let c = cl("C9");
        let r = partition_structure(&c, 2, 1, 0).unwrap();
        assert!(r.all_hold(), "{:?}", r.failures);
        // X = characters of C9 trivial on C3: exponents 0, 3, 6
        assert_eq!(r.x.len(), 3);
        assert_eq!(r.s_chi, vec![2]);
        assert_eq!(r.partitions[0].1.len(), 2);
        assert!(r.partitions[0].1.contains(&vec![0]));
    }

    #[test]
    fn lines_of_c3xc3_all_lie_in_s_chi() {
        let c = cl("C3xC3");
        let lat = c.lattice();
        let k = lat.layer(3)[0];
        let r = partition_structure(&c, c.top(), k, 1).unwrap();
        assert!(r.all_hold(), "{:?}", r.failures);
        let lines: Vec<_> = lat.layer(3).into_iter().filter(|&l| l != k).collect();
        for l in &lines {
            assert!(r.s_chi.contains(l));
        }
        // G itself: K ∧ G = K, and χ is nontrivial on K
        assert!(!r.s_chi.contains(&c.top()));
    }

    #[test]
    fn rejects_even_order_and_non_maximal() {
        let c = cl("C4");
        assert!(matches!(partition_structure(&c, 2, 1, 0), Err(Error::Precondition(_))));
        let c = cl("C9");
        assert!(matches!(partition_structure(&c, 2, 0, 0), Err(Error::Precondition(_))));
    }
}
