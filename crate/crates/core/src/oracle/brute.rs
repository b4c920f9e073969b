use rayon::prelude::*;

use crate::chars::{CharLattice, CharSet};
use crate::diagram::tr_of_universe;
use crate::error::{Error, Result};
use crate::group::SubgroupId;
use crate::transfer::TransferSystem;

/// At most `2^22` universes are searched by default.
pub const DEFAULT_ORBIT_BUDGET: usize = 22;

/// Conjugation orbits of the nontrivial characters of `G`, ordered by their
/// least member. Universes are exactly `{1}` plus a union of orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitIndex {
    orbits: Vec<Vec<u32>>,
}

impl OrbitIndex {
    pub fn new(cl: &CharLattice) -> Self {
        let g = cl.top();
        let orbits = (1..cl.num_chars(g) as u32)
            .filter_map(|chi| {
                let c = cl.conj(g, chi);
                match chi.cmp(&c) {
                    std::cmp::Ordering::Less => Some(vec![chi, c]),
                    std::cmp::Ordering::Equal => Some(vec![chi]),
                    std::cmp::Ordering::Greater => None,
                }
            })
            .collect();
        OrbitIndex { orbits }
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.orbits
    }

    /// The universe for a subset of orbits, bit `i` selecting orbit `i`.
    pub fn universe(&self, cl: &CharLattice, mask: u64) -> CharSet {
        let mut u = cl.singleton(cl.top(), 0);
        for (i, o) in self.orbits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &chi in o {
                    u.insert(chi);
                }
            }
        }
        u
    }

    /// Inverse of [`OrbitIndex::universe`]; `None` unless `u` is a universe.
    pub fn mask_of(&self, cl: &CharLattice, u: &CharSet) -> Option<u64> {
        if !cl.is_universe(u) || u.subgroup() != cl.top() {
            return None;
        }
        Some(
            self.orbits
                .iter()
                .enumerate()
                .filter(|(_, o)| u.contains(o[0]))
                .map(|(i, _)| 1u64 << i)
                .sum(),
        )
    }
}

/// `Tr(U)` on universes encoded as 64-bit character masks.
pub struct FastTr {
    n: usize,
    /// `res[h][χ]`: index of `χ|_H`.
    res: Vec<Vec<u8>>,
    /// Strict pairs `(K, H)` with `fibers[ξ]` the mask of `ψ ∈ Ĥ` over `ξ ∈ K̂`.
    pairs: Vec<(SubgroupId, SubgroupId, Vec<u64>)>,
    orbit_masks: Vec<u64>,
}

impl FastTr {
    /// Needs `|Ĝ| <= 64`.
    pub fn new(cl: &CharLattice, orbits: &OrbitIndex) -> Result<Self> {
        let lat = cl.lattice();
        let g = cl.top();
        if cl.num_chars(g) > 64 {
            return Err(Error::Budget(format!("{} characters exceed the 64-bit encoding", cl.num_chars(g))));
        }
        let n = cl.len();
        let res = (0..n)
            .map(|h| (0..cl.num_chars(g) as u32).map(|chi| cl.res(g, h, chi) as u8).collect())
            .collect();
        let mut pairs = Vec::new();
        for h in 0..n {
            for k in lat.below(h).ones().filter(|&k| k != h) {
                let mut fibers = vec![0u64; cl.num_chars(k)];
                for psi in 0..cl.num_chars(h) as u32 {
                    fibers[cl.res(h, k, psi) as usize] |= 1 << psi;
                }
                pairs.push((k, h, fibers));
            }
        }
        let orbit_masks = orbits
            .orbits()
            .iter()
            .map(|o| o.iter().fold(0u64, |m, &chi| m | 1 << chi))
            .collect();
        Ok(FastTr {
            n,
            res,
            pairs,
            orbit_masks,
        })
    }

    /// Character mask of the universe for an orbit mask.
    pub fn universe_mask(&self, orbit_mask: u64) -> u64 {
        let mut u = 1u64;
        let mut m = orbit_mask;
        while m != 0 {
            u |= self.orbit_masks[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        u
    }

    fn restrictions(&self, u: u64) -> Vec<u64> {
        self.res
            .iter()
            .map(|r| {
                let mut out = 0u64;
                let mut m = u;
                while m != 0 {
                    out |= 1 << r[m.trailing_zeros() as usize];
                    m &= m - 1;
                }
                out
            })
            .collect()
    }

    fn edge(fibers: &[u64], rk: u64, rh: u64) -> bool {
        let mut ind = 0u64;
        let mut m = rk;
        while m != 0 {
            ind |= fibers[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        ind & !rh == 0
    }

    /// `Tr(U)` for a character mask `u`.
    pub fn relation(&self, u: u64) -> TransferSystem {
        let r = self.restrictions(u);
        let edges = self
            .pairs
            .iter()
            .filter(|(k, h, f)| Self::edge(f, r[*k], r[*h]))
            .map(|&(k, h, _)| (k, h));
        let mut ts = TransferSystem::identity(self.n);
        for (k, h) in edges {
            ts.insert(k, h);
        }
        ts
    }

    /// `Tr(U) = R`, stopping at the first disagreement.
    pub fn matches(&self, u: u64, target: &TransferSystem) -> bool {
        let r = self.restrictions(u);
        self.pairs
            .iter()
            .all(|(k, h, f)| Self::edge(f, r[*k], r[*h]) == target.contains(*k, *h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteOutcome {
    /// The least universe, in orbit-mask order, with `Tr(U) = R`.
    Witness(CharSet),
    Unrealizable,
    BudgetExceeded { orbits: usize, budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteReport {
    pub outcome: BruteOutcome,
    pub orbits: usize,
    /// Size of the search space.
    pub universes: u64,
}

/// Searches every universe for one with `Tr(U) = R`. Workers split the
/// orbit masks; the least matching mask wins, so the result does not depend
/// on the thread count.
pub fn brute_force_realizable(cl: &CharLattice, r: &TransferSystem, budget: usize) -> Result<BruteReport> {
    if r.len() != cl.len() {
        return Err(Error::invalid("transfer system does not match the lattice"));
    }
    let orbits = OrbitIndex::new(cl);
    let m = orbits.len();
    if m > budget || m > 40 {
        return Ok(BruteReport {
            outcome: BruteOutcome::BudgetExceeded { orbits: m, budget },
            orbits: m,
            universes: 0,
        });
    }
    let fast = FastTr::new(cl, &orbits)?;
    let total = 1u64 << m;
    let hit = (0..total)
        .into_par_iter()
        .find_first(|&mask| fast.matches(fast.universe_mask(mask), r));
    let outcome = match hit {
        Some(mask) => {
            let u = orbits.universe(cl, mask);
            // cross-check against the set-based computation
            if tr_of_universe(cl, &u)? != *r {
                return Err(Error::Verification("fast and direct Tr(U) disagree".into()));
            }
            BruteOutcome::Witness(u)
        }
        None => BruteOutcome::Unrealizable,
    };
    Ok(BruteReport {
        outcome,
        orbits: m,
        universes: total,
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
    fn c4_has_two_orbits() {
        let c = cl("C4");
        let o = OrbitIndex::new(&c);
        assert_eq!(o.orbits(), &[vec![1, 3], vec![2]]);
        for mask in 0..4 {
            let u = o.universe(&c, mask);
            assert!(c.is_universe(&u));
            assert_eq!(o.mask_of(&c, &u), Some(mask));
        }
    }

    #[test]
    fn fast_tr_agrees_with_direct_computation() {
        for g in ["C12", "C2xC4", "C3xC3", "C2xC2xC2", "C35"] {
            let c = cl(g);
            let o = OrbitIndex::new(&c);
            let fast = FastTr::new(&c, &o).unwrap();
            for mask in 0..(1u64 << o.len()).min(512) {
                let u = o.universe(&c, mask);
                let direct = tr_of_universe(&c, &u).unwrap();
                assert!(fast.relation(fast.universe_mask(mask)) == direct, "{g} {mask}");
                assert!(fast.matches(fast.universe_mask(mask), &direct));
            }
        }
    }

    #[test]
    fn maximal_system_is_realized_by_everything() {
        let c = cl("C6");
        let r = TransferSystem::maximal(c.lattice());
        let rep = brute_force_realizable(&c, &r, DEFAULT_ORBIT_BUDGET).unwrap();
        // only the full universe realizes the maximal system here
        match rep.outcome {
            BruteOutcome::Witness(u) => assert!(u.is_full()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_is_typed() {
        let c = cl("C35");
        let r = TransferSystem::maximal(c.lattice());
        let rep = brute_force_realizable(&c, &r, 4).unwrap();
        assert_eq!(rep.outcome, BruteOutcome::BudgetExceeded { orbits: 17, budget: 4 });
    }
}
