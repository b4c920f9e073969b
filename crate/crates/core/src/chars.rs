//! Character groups of all subgroups, represented uniformly as quotients of
//! the dual group `Ĝ ≅ Z_{d_1} x ... x Z_{d_k}`.
//!
//! A character of `H` is a coset `a + Ann(H)` where
//! `Ann(H) = {a : Σ a_i h_i / d_i ∈ Z for all h ∈ H}`. Its canonical
//! representative is the lexicographically least member of the coset, and
//! characters of `H` are indexed in lex order of those representatives, so
//! index 0 is always the trivial character. Restriction along `K ≤ H` is the
//! induced quotient map; it never needs a basis of either character group.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupSpec, SubgroupId, SubgroupLattice};

#[derive(Clone, Debug)]
struct CharTable {
    /// dual element index -> character index of this subgroup
    of_dual: Vec<u32>,
    /// character index -> canonical (lex-least) dual representative
    reps: Vec<u32>,
    conj: Vec<u32>,
}

/// A single character: `index` in the canonical enumeration of `Ĥ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharRef {
    pub subgroup: SubgroupId,
    pub index: u32,
}

/// A subset of `Ĥ` as a bitset over the canonical enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharSet {
    subgroup: SubgroupId,
    bits: FixedBitSet,
}

impl CharSet {
    pub fn empty(subgroup: SubgroupId, len: usize) -> Self {
        CharSet {
            subgroup,
            bits: FixedBitSet::with_capacity(len),
        }
    }

    pub fn subgroup(&self) -> SubgroupId {
        self.subgroup
    }

    /// `|Ĥ|`, the size of the ambient character group.
    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, index: u32) -> bool {
        self.bits.contains(index as usize)
    }

    pub fn insert(&mut self, index: u32) {
        self.bits.insert(index as usize);
    }

    pub fn remove(&mut self, index: u32) {
        self.bits.set(index as usize, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn first(&self) -> Option<u32> {
        self.bits.minimum().map(|i| i as u32)
    }

    fn check_same(&self, other: &CharSet) {
        assert_eq!(
            self.subgroup, other.subgroup,
            "character sets live over different subgroups"
        );
    }

    pub fn union_with(&mut self, other: &CharSet) {
        self.check_same(other);
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &CharSet) {
        self.check_same(other);
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &CharSet) {
        self.check_same(other);
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &CharSet) -> CharSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &CharSet) -> CharSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &CharSet) -> CharSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn is_subset(&self, other: &CharSet) -> bool {
        self.check_same(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &CharSet) -> bool {
        self.check_same(other);
        self.bits.is_disjoint(&other.bits)
    }
}

/// The subgroup lattice together with the character tables of every
/// subgroup. Immutable after construction.
#[derive(Clone, Debug)]
pub struct CharLattice {
    lattice: SubgroupLattice,
    tables: Vec<CharTable>,
    exponent: u64,
    /// `e / d_i`, so the pairing is `Σ a_i x_i w_i mod e`.
    weights: Vec<u64>,
}

impl CharLattice {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        Ok(Self::new(SubgroupLattice::build(spec)?))
    }

    pub fn new(lattice: SubgroupLattice) -> Self {
        let spec = lattice.spec().clone();
        let exponent = spec.exponent();
        let weights: Vec<u64> = spec.orders().iter().map(|&d| exponent / d).collect();
        let size = lattice.group_order();
        let mut cl = CharLattice {
            lattice,
            tables: Vec::new(),
            exponent,
            weights,
        };
        let tables = cl
            .lattice
            .subgroups()
            .iter()
            .map(|sub| {
                // The map a -> (<a, g>)_g over generators g is a homomorphism
                // with kernel Ann(H); its fibres are the characters of H.
                let mut seen: HashMap<Vec<u64>, u32> = HashMap::new();
                let mut of_dual = Vec::with_capacity(size);
                let mut reps = Vec::new();
                for a in 0..size {
                    let sig: Vec<u64> = sub
                        .generators
                        .iter()
                        .map(|&g| cl.pairing(a, g as usize))
                        .collect();
                    let next = seen.len() as u32;
                    let idx = *seen.entry(sig).or_insert_with(|| {
                        reps.push(a as u32);
                        next
                    });
                    of_dual.push(idx);
                }
                debug_assert_eq!(reps.len() as u64, sub.order);
                let conj = reps
                    .iter()
                    .map(|&a| of_dual[cl.lattice.neg(a as usize)])
                    .collect();
                CharTable { of_dual, reps, conj }
            })
            .collect();
        cl.tables = tables;
        cl
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn spec(&self) -> &GroupSpec {
        self.lattice.spec()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn top(&self) -> SubgroupId {
        self.lattice.top()
    }

    pub fn leq(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.lattice.leq(k, h)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `<a, x> = Σ a_i x_i / d_i mod 1`, returned as a numerator over the
    /// group exponent.
    pub fn pairing(&self, a: usize, x: usize) -> u64 {
        let (ac, xc) = (self.lattice.element(a), self.lattice.element(x));
        ac.iter()
            .zip(xc)
            .zip(&self.weights)
            .map(|((&a, &x), &w)| a * x % self.exponent * w % self.exponent)
            .sum::<u64>()
            % self.exponent
    }

    /// `|Ĥ| = |H|`.
    pub fn num_chars(&self, h: SubgroupId) -> usize {
        self.tables[h].reps.len()
    }

    pub fn characters(&self, h: SubgroupId) -> Vec<CharRef> {
        (0..self.num_chars(h) as u32)
            .map(|index| CharRef { subgroup: h, index })
            .collect()
    }

    /// Dual-element index of the canonical representative.
    pub fn rep(&self, h: SubgroupId, index: u32) -> usize {
        self.tables[h].reps[index as usize] as usize
    }

    pub fn rep_coords(&self, h: SubgroupId, index: u32) -> &[u64] {
        self.lattice.element(self.rep(h, index))
    }

    /// Character of `h` whose coset contains the dual element `a`.
    pub fn char_of(&self, h: SubgroupId, a: usize) -> u32 {
        self.tables[h].of_dual[a]
    }

    /// Character of `h` with the given representative coordinates.
    pub fn char_from_coords(&self, h: SubgroupId, coords: &[u64]) -> Result<u32> {
        let a = self
            .lattice
            .element_index(coords)
            .ok_or_else(|| Error::invalid(format!("{coords:?} is not an element of the dual group")))?;
        Ok(self.char_of(h, a))
    }

    /// Unchecked restriction of character `index` of `h` to `k ≤ h`.
    #[inline]
    pub fn res(&self, h: SubgroupId, k: SubgroupId, index: u32) -> u32 {
        self.tables[k].of_dual[self.tables[h].reps[index as usize] as usize]
    }

    /// Unchecked complex conjugation.
    #[inline]
    pub fn conj(&self, h: SubgroupId, index: u32) -> u32 {
        self.tables[h].conj[index as usize]
    }

    fn check_leq(&self, k: SubgroupId, h: SubgroupId) -> Result<()> {
        if self.lattice.leq(k, h) {
            Ok(())
        } else {
            Err(Error::NotContained { k, h })
        }
    }

    pub fn trivial(&self, h: SubgroupId) -> CharRef {
        CharRef { subgroup: h, index: 0 }
    }

    pub fn restrict(&self, chi: CharRef, k: SubgroupId) -> Result<CharRef> {
        self.check_leq(k, chi.subgroup)?;
        Ok(CharRef {
            subgroup: k,
            index: self.res(chi.subgroup, k, chi.index),
        })
    }

    pub fn conjugate(&self, chi: CharRef) -> CharRef {
        CharRef {
            subgroup: chi.subgroup,
            index: self.conj(chi.subgroup, chi.index),
        }
    }

    pub fn empty(&self, h: SubgroupId) -> CharSet {
        CharSet::empty(h, self.num_chars(h))
    }

    pub fn full(&self, h: SubgroupId) -> CharSet {
        let mut s = self.empty(h);
        s.bits.insert_range(..);
        s
    }

    pub fn singleton(&self, h: SubgroupId, index: u32) -> CharSet {
        let mut s = self.empty(h);
        s.insert(index);
        s
    }

    pub fn set_of(&self, h: SubgroupId, indices: impl IntoIterator<Item = u32>) -> CharSet {
        let mut s = self.empty(h);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Set of characters of `h` given by representative coordinates.
    pub fn set_from_coords(&self, h: SubgroupId, reps: &[Vec<u64>]) -> Result<CharSet> {
        let mut s = self.empty(h);
        for r in reps {
            s.insert(self.char_from_coords(h, r)?);
        }
        Ok(s)
    }

    /// `R_K^H(S)`: the union of single-character restrictions.
    pub fn restrict_set(&self, s: &CharSet, k: SubgroupId) -> Result<CharSet> {
        self.check_leq(k, s.subgroup)?;
        Ok(self.res_set(s, k))
    }

    pub(crate) fn res_set(&self, s: &CharSet, k: SubgroupId) -> CharSet {
        let mut out = self.empty(k);
        for chi in s.iter() {
            out.insert(self.res(s.subgroup, k, chi));
        }
        out
    }

    /// `I_K^H(S)`: the preimage of `S` under restriction `Ĥ -> K̂`.
    pub fn induce_set(&self, s: &CharSet, h: SubgroupId) -> Result<CharSet> {
        self.check_leq(s.subgroup, h)?;
        Ok(self.ind_set(s, h))
    }

    pub(crate) fn ind_set(&self, s: &CharSet, h: SubgroupId) -> CharSet {
        let k = s.subgroup;
        let mut out = self.empty(h);
        if s.is_empty() {
            return out;
        }
        for tau in 0..self.num_chars(h) as u32 {
            if s.contains(self.res(h, k, tau)) {
                out.insert(tau);
            }
        }
        out
    }

    pub fn conjugate_set(&self, s: &CharSet) -> CharSet {
        let mut out = self.empty(s.subgroup);
        for chi in s.iter() {
            out.insert(self.conj(s.subgroup, chi));
        }
        out
    }

    /// `S ∪ conj(S)`.
    pub fn conj_close(&self, s: &CharSet) -> CharSet {
        let mut out = self.conjugate_set(s);
        out.union_with(s);
        out
    }

    pub fn is_conj_invariant(&self, s: &CharSet) -> bool {
        s.iter().all(|chi| s.contains(self.conj(s.subgroup, chi)))
    }

    /// Contains the trivial character and is conjugation-closed.
    pub fn is_universe(&self, s: &CharSet) -> bool {
        s.contains(0) && self.is_conj_invariant(s)
    }

    pub fn charset_to_json(&self, s: &CharSet) -> CharSetJson {
        let mut chars: Vec<Vec<u64>> = s
            .iter()
            .map(|i| self.rep_coords(s.subgroup, i).to_vec())
            .collect();
        chars.sort();
        CharSetJson {
            group: self.spec().to_string(),
            subgroup: s.subgroup,
            chars,
        }
    }

    pub fn charset_from_json(&self, j: &CharSetJson) -> Result<CharSet> {
        if j.group != self.spec().to_string() {
            return Err(Error::invalid(format!(
                "character set is for group {} but the lattice is {}",
                j.group,
                self.spec()
            )));
        }
        if j.subgroup >= self.len() {
            return Err(Error::invalid(format!("no subgroup with id {}", j.subgroup)));
        }
        self.set_from_coords(j.subgroup, &j.chars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSetJson {
    pub group: String,
    pub subgroup: usize,
    pub chars: Vec<Vec<u64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(s: &str) -> CharLattice {
        CharLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn characters_of_cyclic_four() {
        let c = cl("C4");
        assert_eq!(c.num_chars(0), 1);
        let top = c.top();
        let reps: Vec<u64> = (0..4).map(|i| c.rep_coords(top, i)[0]).collect();
        assert_eq!(reps, vec![0, 1, 2, 3]);
        // H = {0,2}: Ann(H) = {0,2}, so two characters with reps 0 and 1.
        let h = 1;
        assert_eq!(c.lattice().subgroup(h).elements, vec![0, 2]);
        assert_eq!(c.num_chars(h), 2);
        let ann: Vec<usize> = (0..4).filter(|&a| c.char_of(h, a) == 0).collect();
        assert_eq!(ann, vec![0, 2]);
    }

    #[test]
    fn restriction_examples() {
        let c = cl("C4");
        let top = c.top();
        let chi = CharRef { subgroup: top, index: 1 };
        let r = c.restrict(chi, 1).unwrap();
        // pairing of rep 1 at the element 2 is 2/4 = 1/2: nontrivial on C_2
        assert_eq!(c.pairing(1, 2), 2);
        assert_eq!(r.index, 1);
        assert_eq!(c.restrict(c.trivial(top), 0).unwrap().index, 0);
        assert_eq!(c.restrict(chi, top).unwrap(), chi);
        assert!(c.restrict(c.trivial(1), top).is_err());
    }

    #[test]
    fn set_maps_examples() {
        let c = cl("C4");
        let top = c.top();
        assert!(c.restrict_set(&c.empty(top), 1).unwrap().is_empty());
        assert!(c.restrict_set(&c.full(top), 1).unwrap().is_full());
        let s = c.induce_set(&c.singleton(1, 0), top).unwrap();
        let reps: Vec<u64> = s.iter().map(|i| c.rep_coords(top, i)[0]).collect();
        assert_eq!(reps, vec![0, 2]);
        assert!(c.induce_set(&c.empty(1), top).unwrap().is_empty());
        assert!(c.induce_set(&c.singleton(top, 0), 1).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let c = cl("C5");
        let top = c.top();
        assert_eq!(c.conj(top, 0), 0);
        let two = c.char_from_coords(top, &[2]).unwrap();
        assert_eq!(c.rep_coords(top, c.conj(top, two)), &[3]);
        let c2 = cl("C2xC2");
        for i in 0..4 {
            assert_eq!(c2.conj(c2.top(), i), i);
        }
    }

    #[test]
    fn universe_predicate() {
        let c = cl("C5");
        let top = c.top();
        assert!(c.is_universe(&c.full(top)));
        assert!(!c.is_universe(&c.empty(top)));
        let s = c.set_from_coords(top, &[vec![0], vec![1]]).unwrap();
        assert!(!c.is_universe(&s));
        let s = c.set_from_coords(top, &[vec![0], vec![1], vec![4]]).unwrap();
        assert!(c.is_universe(&s));
    }

    #[test]
    fn json_round_trip() {
        let c = cl("C3xC3");
        let s = c.set_of(2, [0, 2]);
        let j = c.charset_to_json(&s);
        let text = serde_json::to_string(&j).unwrap();
        let back: CharSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(c.charset_from_json(&back).unwrap(), s);
    }
}
