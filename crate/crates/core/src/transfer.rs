//! Transfer systems on the subgroup lattice, saturation, generated closures
//! and interior operators.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{SubgroupId, SubgroupLattice};

/// A relation on subgroup ids, `contains(k, h)` meaning `k -> h`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransferSystem {
    n: usize,
    rel: FixedBitSet,
}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransferSystem")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// First violated axiom of a candidate relation, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `k -> h` but `k` is not a subgroup of `h`.
    Refinement { k: SubgroupId, h: SubgroupId },
    Reflexive { h: SubgroupId },
    /// `k -> l -> h` without `k -> h`.
    Transitive { k: SubgroupId, l: SubgroupId, h: SubgroupId },
    /// `k -> h` and `l <= h` without `k ∧ l -> l`.
    Pullback { k: SubgroupId, h: SubgroupId, l: SubgroupId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Refinement { k, h } => write!(f, "edge {k} -> {h} does not refine inclusion"),
            Violation::Reflexive { h } => write!(f, "missing reflexive edge {h} -> {h}"),
            Violation::Transitive { k, l, h } => {
                write!(f, "{k} -> {l} -> {h} but not {k} -> {h}")
            }
            Violation::Pullback { k, h, l } => {
                write!(f, "{k} -> {h} and {l} <= {h} but the pullback to {l} is missing")
            }
        }
    }
}

impl TransferSystem {
    /// Reflexive edges only.
    pub fn identity(n: usize) -> Self {
        let mut ts = TransferSystem::empty_relation(n);
        for h in 0..n {
            ts.insert(h, h);
        }
        ts
    }

    /// The full inclusion relation.
    pub fn maximal(lat: &SubgroupLattice) -> Self {
        let n = lat.len();
        let mut ts = TransferSystem::empty_relation(n);
        for h in 0..n {
            for k in lat.below(h).ones() {
                ts.insert(k, h);
            }
        }
        ts
    }

    /// A raw relation with no edges at all; not a transfer system until
    /// reflexive edges are added.
    pub fn empty_relation(n: usize) -> Self {
        TransferSystem {
            n,
            rel: FixedBitSet::with_capacity(n * n),
        }
    }

    /// Raw relation from pairs, no closure and no validation.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (SubgroupId, SubgroupId)>) -> Self {
        let mut ts = TransferSystem::empty_relation(n);
        for (k, h) in pairs {
            ts.insert(k, h);
        }
        ts
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn contains(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.rel.contains(k * self.n + h)
    }

    pub fn insert(&mut self, k: SubgroupId, h: SubgroupId) {
        self.rel.insert(k * self.n + h);
    }

    /// Strict edges `(k, h)`, `k != h`, sorted.
    pub fn edges(&self) -> Vec<(SubgroupId, SubgroupId)> {
        self.pairs().filter(|(k, h)| k != h).collect()
    }

    /// All pairs including reflexive ones, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = (SubgroupId, SubgroupId)> + '_ {
        self.rel.ones().map(move |i| (i / self.n, i % self.n))
    }

    pub fn num_edges(&self) -> usize {
        self.rel.count_ones(..) - (0..self.n).filter(|&h| self.contains(h, h)).count()
    }

    pub fn is_subset(&self, other: &TransferSystem) -> bool {
        self.rel.is_subset(&other.rel)
    }

    pub fn validate(&self, lat: &SubgroupLattice) -> std::result::Result<(), Violation> {
        assert_eq!(self.n, lat.len(), "relation size does not match the lattice");
        let n = self.n;
        for (k, h) in self.pairs() {
            if !lat.leq(k, h) {
                return Err(Violation::Refinement { k, h });
            }
        }
        if let Some(h) = (0..n).find(|&h| !self.contains(h, h)) {
            return Err(Violation::Reflexive { h });
        }
        for (k, l) in self.pairs() {
            for h in 0..n {
                if self.contains(l, h) && !self.contains(k, h) {
                    return Err(Violation::Transitive { k, l, h });
                }
            }
        }
        for (k, h) in self.pairs() {
            for l in lat.below(h).ones() {
                if !self.contains(lat.meet(k, l), l) {
                    return Err(Violation::Pullback { k, h, l });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, lat: &SubgroupLattice) -> bool {
        self.validate(lat).is_ok()
    }

    /// `k -> h` and `k <= l <= h` imply `l -> h`.
    pub fn is_saturated(&self, lat: &SubgroupLattice) -> bool {
        self.pairs().all(|(k, h)| {
            lat.below(h)
                .ones()
                .filter(|&l| lat.leq(k, l))
                .all(|l| self.contains(l, h))
        })
    }

    /// Least transfer system containing `edges`.
    pub fn generate(lat: &SubgroupLattice, edges: &[(SubgroupId, SubgroupId)]) -> Result<Self> {
        check_edges(lat, edges)?;
        Ok(close(lat, &TransferSystem::identity(lat.len()), edges, false))
    }

    /// Least saturated transfer system containing `edges`.
    pub fn generate_saturated(lat: &SubgroupLattice, edges: &[(SubgroupId, SubgroupId)]) -> Result<Self> {
        check_edges(lat, edges)?;
        Ok(close(lat, &TransferSystem::identity(lat.len()), edges, true))
    }

    /// Subgroups with no strict incoming edge.
    pub fn cofibrant(&self) -> Vec<SubgroupId> {
        (0..self.n)
            .filter(|&h| (0..self.n).all(|k| k == h || !self.contains(k, h)))
            .collect()
    }

    /// Subgroups `h` with `h -> G`.
    pub fn fibrant(&self, lat: &SubgroupLattice) -> Vec<SubgroupId> {
        let top = lat.top();
        (0..self.n).filter(|&h| self.contains(h, top)).collect()
    }

    pub fn to_json(&self, lat: &SubgroupLattice) -> TransferSystemJson {
        TransferSystemJson {
            group: lat.spec().to_string(),
            edges: self.edges().into_iter().map(|(k, h)| [k, h]).collect(),
        }
    }

    /// Reads strict edges and closes them into a transfer system. The result
    /// must contain exactly the listed strict edges, so a non-closed edge
    /// list is rejected rather than silently extended.
    pub fn from_json(lat: &SubgroupLattice, j: &TransferSystemJson) -> Result<Self> {
        if j.group != lat.spec().to_string() {
            return Err(Error::invalid(format!(
                "transfer system is for group {} but the lattice is {}",
                j.group,
                lat.spec()
            )));
        }
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|&[k, h]| (k, h)).collect();
        check_edges(lat, &edges)?;
        let mut ts = TransferSystem::identity(lat.len());
        for &(k, h) in &edges {
            ts.insert(k, h);
        }
        ts.validate(lat)
            .map_err(|v| Error::invalid(format!("not a transfer system: {v}")))?;
        Ok(ts)
    }
}

fn check_edges(lat: &SubgroupLattice, edges: &[(SubgroupId, SubgroupId)]) -> Result<()> {
    for &(k, h) in edges {
        if k >= lat.len() || h >= lat.len() {
            return Err(Error::invalid(format!("edge {k} -> {h} names an unknown subgroup")));
        }
        if !lat.leq(k, h) {
            return Err(Error::NotContained { k, h });
        }
    }
    Ok(())
}

/// Worklist closure of `base ∪ extra` under transitivity and pullback, and
/// optionally saturation. `base` must already be closed.
fn close(
    lat: &SubgroupLattice,
    base: &TransferSystem,
    extra: &[(SubgroupId, SubgroupId)],
    saturate: bool,
) -> TransferSystem {
    let mut ts = base.clone();
    let mut work: Vec<(usize, usize)> = Vec::new();
    let push = |ts: &mut TransferSystem, work: &mut Vec<(usize, usize)>, k: usize, h: usize| {
        if !ts.contains(k, h) {
            ts.insert(k, h);
            work.push((k, h));
        }
    };
    for &(k, h) in extra {
        push(&mut ts, &mut work, k, h);
    }
    let n = ts.n;
    while let Some((k, h)) = work.pop() {
        for l in lat.below(h).ones() {
            push(&mut ts, &mut work, lat.meet(k, l), l);
            if saturate && lat.leq(k, l) {
                push(&mut ts, &mut work, l, h);
            }
        }
        for x in 0..n {
            if ts.contains(x, k) {
                push(&mut ts, &mut work, x, h);
            }
            if ts.contains(h, x) {
                push(&mut ts, &mut work, k, x);
            }
        }
    }
    ts
}

/// Compares `R ⊆ R'` directly and through cofibrant subgroups: for
/// saturated `R'`, containment holds iff every `R'`-cofibrant subgroup is
/// `R`-cofibrant. Returns `(direct, via_cofibrant)`.
pub fn leq_of_transfer_systems(
    lat: &SubgroupLattice,
    r: &TransferSystem,
    r2: &TransferSystem,
) -> Result<(bool, bool)> {
    if !r2.is_saturated(lat) {
        return Err(Error::precondition("the larger transfer system must be saturated"));
    }
    let direct = r.is_subset(r2);
    let cof = r.cofibrant();
    let via = r2.cofibrant().iter().all(|h| cof.contains(h));
    Ok((direct, via))
}

/// Depth-first enumeration of all transfer systems. Strict pairs are visited
/// in `(k, h)` order; each pair is first excluded, then included with
/// closure, pruning branches whose closure hits an excluded pair.
pub struct TransferSystems<'a> {
    lat: &'a SubgroupLattice,
    pairs: Vec<(usize, usize)>,
    stack: Vec<Frame>,
}

struct Frame {
    ts: TransferSystem,
    excluded: FixedBitSet,
    next: usize,
}

/// Budget for enumeration of transfer systems, as a maximum lattice size.
pub const DEFAULT_TS_BUDGET: usize = 12;

pub fn enumerate_transfer_systems(lat: &SubgroupLattice, max_subgroups: usize) -> Result<TransferSystems<'_>> {
    if lat.len() > max_subgroups {
        return Err(Error::Budget(format!(
            "{} subgroups exceed the enumeration budget of {max_subgroups}",
            lat.len()
        )));
    }
    Ok(TransferSystems::new(lat))
}

impl<'a> TransferSystems<'a> {
    fn new(lat: &'a SubgroupLattice) -> Self {
        let n = lat.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|k| lat.above(k).ones().filter(move |&h| h != k).map(move |h| (k, h)))
            .collect();
        let root = Frame {
            ts: TransferSystem::identity(n),
            excluded: FixedBitSet::with_capacity(n * n),
            next: 0,
        };
        TransferSystems {
            lat,
            pairs,
            stack: vec![root],
        }
    }
}

impl Iterator for TransferSystems<'_> {
    type Item = TransferSystem;

    fn next(&mut self) -> Option<TransferSystem> {
        while let Some(mut frame) = self.stack.pop() {
            while frame.next < self.pairs.len() && {
                let (k, h) = self.pairs[frame.next];
                frame.ts.contains(k, h)
            } {
                frame.next += 1;
            }
            if frame.next == self.pairs.len() {
                return Some(frame.ts);
            }
            let (k, h) = self.pairs[frame.next];
            let n = frame.ts.n;
            let grown = close(self.lat, &frame.ts, &[(k, h)], false);
            let feasible = grown.rel.is_disjoint(&frame.excluded);
            let next = frame.next + 1;
            // pushed in reverse so the exclude branch is explored first
            if feasible {
                self.stack.push(Frame {
                    ts: grown,
                    excluded: frame.excluded.clone(),
                    next,
                });
            }
            frame.excluded.insert(k * n + h);
            frame.next = next;
            self.stack.push(frame);
        }
        None
    }
}

/// A monotone, decreasing, idempotent endomap of the subgroup lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InteriorOperator {
    pub f: Vec<SubgroupId>,
}

impl InteriorOperator {
    pub fn identity(n: usize) -> Self {
        InteriorOperator { f: (0..n).collect() }
    }

    pub fn apply(&self, h: SubgroupId) -> SubgroupId {
        self.f[h]
    }

    pub fn check(&self, lat: &SubgroupLattice) -> Result<()> {
        let n = lat.len();
        if self.f.len() != n || self.f.iter().any(|&x| x >= n) {
            return Err(Error::invalid("interior operator has the wrong size"));
        }
        for h in 0..n {
            let fh = self.f[h];
            if !lat.leq(fh, h) {
                return Err(Error::invalid(format!("f({h}) = {fh} is not below {h}")));
            }
            if self.f[fh] != fh {
                return Err(Error::invalid(format!("f is not idempotent at {h}")));
            }
            for k in lat.below(h).ones() {
                if !lat.leq(self.f[k], fh) {
                    return Err(Error::invalid(format!("f is not monotone on {k} <= {h}")));
                }
            }
        }
        Ok(())
    }

    /// `f_S(H) = ⋁ {K ∈ S : K <= H}`.
    pub fn from_set(lat: &SubgroupLattice, s: &[SubgroupId]) -> Self {
        let f = (0..lat.len())
            .map(|h| {
                s.iter()
                    .filter(|&&k| lat.leq(k, h))
                    .fold(lat.bottom(), |acc, &k| lat.join(acc, k))
            })
            .collect();
        InteriorOperator { f }
    }

    /// Fixed points, which are also the image.
    pub fn fixed_points(&self) -> Vec<SubgroupId> {
        (0..self.f.len()).filter(|&h| self.f[h] == h).collect()
    }

    /// `K -> H` iff `f(H) <= K <= H`.
    pub fn to_saturated(&self, lat: &SubgroupLattice) -> Result<TransferSystem> {
        self.check(lat)?;
        let n = lat.len();
        let mut ts = TransferSystem::empty_relation(n);
        for h in 0..n {
            for k in lat.below(h).ones() {
                if lat.leq(self.f[h], k) {
                    ts.insert(k, h);
                }
            }
        }
        Ok(ts)
    }

    /// `f(H)` is the least source of an edge into `H`.
    pub fn from_saturated(lat: &SubgroupLattice, r: &TransferSystem) -> Result<Self> {
        if !r.is_valid(lat) || !r.is_saturated(lat) {
            return Err(Error::precondition("expected a saturated transfer system"));
        }
        let f = (0..lat.len())
            .map(|h| {
                let sources: Vec<usize> = lat.below(h).ones().filter(|&k| r.contains(k, h)).collect();
                let m = sources.iter().fold(h, |acc, &k| lat.meet(acc, k));
                debug_assert!(r.contains(m, h));
                m
            })
            .collect();
        Ok(InteriorOperator { f })
    }
}

/// All interior operators, determined by their join-closed fixed-point sets.
/// Subgroups are visited in canonical order; `H` is forced into the set
/// when the join of the chosen subgroups below it is `H` itself.
pub fn enumerate_interior_operators(lat: &SubgroupLattice) -> Vec<InteriorOperator> {
    let n = lat.len();
    let mut out = Vec::new();
    let mut chosen = FixedBitSet::with_capacity(n);
    fn rec(lat: &SubgroupLattice, h: usize, chosen: &mut FixedBitSet, out: &mut Vec<InteriorOperator>) {
        let n = lat.len();
        if h == n {
            let s: Vec<usize> = chosen.ones().collect();
            out.push(InteriorOperator::from_set(lat, &s));
            return;
        }
        let j = lat
            .below(h)
            .ones()
            .filter(|&k| k != h && chosen.contains(k))
            .fold(lat.bottom(), |acc, k| lat.join(acc, k));
        if j == h {
            chosen.insert(h);
            rec(lat, h + 1, chosen, out);
            chosen.set(h, false);
        } else {
            rec(lat, h + 1, chosen, out);
            chosen.insert(h);
            rec(lat, h + 1, chosen, out);
            chosen.set(h, false);
        }
    }
    rec(lat, 0, &mut chosen, &mut out);
    out
}

pub fn enumerate_saturated(lat: &SubgroupLattice) -> Vec<TransferSystem> {
    enumerate_interior_operators(lat)
        .iter()
        .map(|f| f.to_saturated(lat).expect("enumerated operators are interior"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferSystemJson {
    pub group: String,
    pub edges: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn lat(s: &str) -> SubgroupLattice {
        SubgroupLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    /// Filter over every subset of strict pairs.
    fn brute_force_count(l: &SubgroupLattice) -> usize {
        let n = l.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|k| (0..n).filter(move |&h| h != k).map(move |h| (k, h)))
            .filter(|&(k, h)| l.leq(k, h))
            .collect();
        (0u64..1 << pairs.len())
            .filter(|mask| {
                let mut ts = TransferSystem::identity(n);
                for (i, &(k, h)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        ts.insert(k, h);
                    }
                }
                ts.is_valid(l)
            })
            .count()
    }

    #[test]
    fn validation_examples() {
        let l = lat("C4");
        assert!(TransferSystem::identity(3).is_valid(&l));
        assert!(TransferSystem::maximal(&l).is_valid(&l));
        let mut r = TransferSystem::identity(3);
        r.insert(0, 2);
        assert_eq!(r.validate(&l), Err(Violation::Pullback { k: 0, h: 2, l: 1 }));
        let mut r = TransferSystem::identity(3);
        r.insert(2, 1);
        assert_eq!(r.validate(&l), Err(Violation::Refinement { k: 2, h: 1 }));
        let r = TransferSystem::empty_relation(3);
        assert_eq!(r.validate(&l), Err(Violation::Reflexive { h: 0 }));
        let r = TransferSystem::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert_eq!(r.validate(&l), Err(Violation::Transitive { k: 0, l: 1, h: 2 }));
    }

    #[test]
    fn saturation_examples() {
        let l = lat("C4");
        assert!(TransferSystem::maximal(&l).is_saturated(&l));
        assert!(TransferSystem::identity(3).is_saturated(&l));
        let full = TransferSystem::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]);
        assert!(full.is_saturated(&l));
        let partial = TransferSystem::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]);
        assert!(partial.is_valid(&l));
        assert!(!partial.is_saturated(&l));
    }

    #[test]
    fn generated_closures() {
        let l = lat("C4");
        assert_eq!(TransferSystem::generate(&l, &[]).unwrap(), TransferSystem::identity(3));
        let r = TransferSystem::generate(&l, &[(0, 2)]).unwrap();
        assert_eq!(r.edges(), vec![(0, 1), (0, 2)]);
        let r = TransferSystem::generate_saturated(&l, &[(0, 2)]).unwrap();
        assert_eq!(r, TransferSystem::maximal(&l));
        assert!(TransferSystem::generate(&l, &[(2, 0)]).is_err());

        let l = lat("C2xC2xC2");
        let covers: Vec<(usize, usize)> = (0..l.len())
            .flat_map(|h| (0..l.len()).map(move |k| (k, h)))
            .filter(|&(k, h)| l.covers(k, h))
            .collect();
        assert_eq!(TransferSystem::generate(&l, &covers).unwrap(), TransferSystem::maximal(&l));
    }

    #[test]
    fn cofibrant_and_fibrant() {
        let l = lat("C2xC2");
        let id = TransferSystem::identity(l.len());
        assert_eq!(id.cofibrant(), (0..l.len()).collect::<Vec<_>>());
        assert_eq!(id.fibrant(&l), vec![l.top()]);
        let max = TransferSystem::maximal(&l);
        assert_eq!(max.cofibrant(), vec![0]);
        assert_eq!(max.fibrant(&l), (0..l.len()).collect::<Vec<_>>());
    }

    #[test]
    fn cofibrant_comparison_on_c9() {
        let l = lat("C9");
        let r = TransferSystem::generate(&l, &[(0, 1)]).unwrap();
        let max = TransferSystem::maximal(&l);
        assert_eq!(leq_of_transfer_systems(&l, &r, &max).unwrap(), (true, true));
        assert_eq!(leq_of_transfer_systems(&l, &r, &r).unwrap(), (true, true));
        let nonsat = TransferSystem::generate(&l, &[(0, 2)]).unwrap();
        assert!(!nonsat.is_saturated(&l));
        assert!(leq_of_transfer_systems(&l, &r, &nonsat).is_err());
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        for g in ["C2", "C4", "C8", "C2xC2", "C6", "C12"] {
            let l = lat(g);
            let found: Vec<TransferSystem> = enumerate_transfer_systems(&l, 12).unwrap().collect();
            let unique: std::collections::HashSet<_> = found.iter().cloned().collect();
            assert_eq!(unique.len(), found.len(), "{g}: duplicates");
            assert!(found.iter().all(|r| r.is_valid(&l)));
            assert_eq!(found.len(), brute_force_count(&l), "{g}");
        }
    }

    #[test]
    fn cyclic_prime_power_counts_are_catalan() {
        assert_eq!(enumerate_transfer_systems(&lat("C5"), 12).unwrap().count(), 2);
        assert_eq!(enumerate_transfer_systems(&lat("C25"), 12).unwrap().count(), 5);
        assert_eq!(enumerate_transfer_systems(&lat("C125"), 12).unwrap().count(), 14);
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(
            enumerate_transfer_systems(&lat("C2xC2xC2"), 12),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn interior_operator_round_trip() {
        for g in ["C4", "C6", "C8", "C12", "C2xC2", "C3xC3", "C2xC2xC2"] {
            let l = lat(g);
            let ops = enumerate_interior_operators(&l);
            for f in &ops {
                f.check(&l).unwrap();
                let r = f.to_saturated(&l).unwrap();
                assert!(r.is_valid(&l) && r.is_saturated(&l), "{g}");
                assert_eq!(&InteriorOperator::from_saturated(&l, &r).unwrap(), f);
            }
            if l.len() <= 12 {
                let direct = enumerate_transfer_systems(&l, 12)
                    .unwrap()
                    .filter(|r| r.is_saturated(&l))
                    .count();
                assert_eq!(ops.len(), direct, "{g}");
            }
        }
    }

    #[test]
    fn interior_operator_extremes() {
        let l = lat("C2xC2");
        let id = InteriorOperator::identity(l.len());
        assert_eq!(id.to_saturated(&l).unwrap(), TransferSystem::identity(l.len()));
        let bottom = InteriorOperator::from_set(&l, &[]);
        assert!(bottom.f.iter().all(|&x| x == 0));
        assert_eq!(bottom.to_saturated(&l).unwrap(), TransferSystem::maximal(&l));
        let top_only = InteriorOperator::from_set(&l, &[l.top()]);
        assert_eq!(top_only.f, vec![0, 0, 0, 0, l.top()]);
        let two_lines = InteriorOperator::from_set(&l, &[1, 2]);
        assert_eq!(two_lines.f, vec![0, 1, 2, 0, l.top()]);
        assert!(InteriorOperator { f: vec![0, 0, 0, 0, 0] }.check(&l).is_ok());
        assert!(InteriorOperator { f: vec![0, 2, 2, 3, 4] }.check(&l).is_err());
    }

    #[test]
    fn negative_example_operator() {
        // plane H in (C_2)^3: f(W) = 0 if W <= H else W
        let l = lat("C2xC2xC2");
        let h = l.layer(4)[0];
        let r = TransferSystem::generate_saturated(&l, &[(0, h)]).unwrap();
        let f = InteriorOperator::from_saturated(&l, &r).unwrap();
        for w in 0..l.len() {
            let expected = if l.leq(w, h) { 0 } else { w };
            assert_eq!(f.apply(w), expected);
        }
        assert_eq!(f.to_saturated(&l).unwrap(), r);
    }

    #[test]
    fn json_round_trip() {
        let l = lat("C2xC2");
        let r = TransferSystem::generate(&l, &[(0, 1), (0, 4)]).unwrap();
        let j = r.to_json(&l);
        let text = serde_json::to_string(&j).unwrap();
        let back: TransferSystemJson = serde_json::from_str(&text).unwrap();
        assert_eq!(TransferSystem::from_json(&l, &back).unwrap(), r);
        let bad = TransferSystemJson { group: "C2xC2".into(), edges: vec![[0, 4]] };
        assert!(TransferSystem::from_json(&l, &bad).is_err());
    }
}
