//! Diagrams: one character set per subgroup. Stabilizations and the
//! transfer relation `Tr` of a diagram or a universe.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chars::{CharLattice, CharSet};
use crate::error::{Error, Result};
use crate::group::SubgroupId;
use crate::inductor::Inductor;
use crate::transfer::TransferSystem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    values: Vec<CharSet>,
}

impl Diagram {
    pub fn empty(cl: &CharLattice) -> Self {
        Diagram {
            values: (0..cl.len()).map(|h| cl.empty(h)).collect(),
        }
    }

    pub fn full(cl: &CharLattice) -> Self {
        Diagram {
            values: (0..cl.len()).map(|h| cl.full(h)).collect(),
        }
    }

    /// `{1_H}` everywhere.
    pub fn trivial(cl: &CharLattice) -> Self {
        Diagram {
            values: (0..cl.len()).map(|h| cl.singleton(h, 0)).collect(),
        }
    }

    /// `D_U(H) = R_H^G(U)`.
    pub fn from_universe(cl: &CharLattice, u: &CharSet) -> Self {
        assert_eq!(u.subgroup(), cl.top(), "a universe lives at the top subgroup");
        Diagram {
            values: (0..cl.len()).map(|h| cl.res_set(u, h)).collect(),
        }
    }

    pub fn from_values(cl: &CharLattice, values: Vec<CharSet>) -> Result<Self> {
        if values.len() != cl.len() {
            return Err(Error::invalid("diagram needs one value per subgroup"));
        }
        for (h, v) in values.iter().enumerate() {
            if v.subgroup() != h || v.universe_len() != cl.num_chars(h) {
                return Err(Error::invalid(format!("value {h} is not a character set of subgroup {h}")));
            }
        }
        Ok(Diagram { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.iter().all(CharSet::is_empty)
    }

    pub fn get(&self, h: SubgroupId) -> &CharSet {
        &self.values[h]
    }

    pub fn get_mut(&mut self, h: SubgroupId) -> &mut CharSet {
        &mut self.values[h]
    }

    pub fn set(&mut self, h: SubgroupId, value: CharSet) {
        assert_eq!(value.subgroup(), h);
        self.values[h] = value;
    }

    pub fn values(&self) -> &[CharSet] {
        &self.values
    }

    /// Total number of characters over all levels.
    pub fn weight(&self) -> usize {
        self.values.iter().map(CharSet::len).sum()
    }

    pub fn union(&self, other: &Diagram) -> Diagram {
        Diagram {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.union(b)).collect(),
        }
    }

    pub fn intersection(&self, other: &Diagram) -> Diagram {
        Diagram {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.intersection(b))
                .collect(),
        }
    }

    pub fn difference(&self, other: &Diagram) -> Diagram {
        Diagram {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.difference(b))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Diagram) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a.is_subset(b))
    }

    /// Adds `1_H` at every level.
    pub fn with_units(&self) -> Diagram {
        let mut d = self.clone();
        for v in &mut d.values {
            v.insert(0);
        }
        d
    }

    /// `R_K^H(D(H)) ⊆ D(K)` for all `K <= H`.
    pub fn is_r_stable(&self, cl: &CharLattice) -> bool {
        self.first_r_instability(cl, cl.top()).is_none()
    }

    /// First `(K, H)` below `scope` where restriction leaves `D(K)`.
    pub fn first_r_instability(&self, cl: &CharLattice, scope: SubgroupId) -> Option<(SubgroupId, SubgroupId)> {
        let lat = cl.lattice();
        for h in lat.below(scope).ones() {
            for k in lat.below(h).ones() {
                let d = &self.values[k];
                if self.values[h].iter().any(|chi| !d.contains(cl.res(h, k, chi))) {
                    return Some((k, h));
                }
            }
        }
        None
    }

    pub fn is_gal_invariant(&self, cl: &CharLattice) -> bool {
        self.values.iter().all(|v| cl.is_conj_invariant(v))
    }

    /// Every value is a universe of its level.
    pub fn is_universal(&self, cl: &CharLattice) -> bool {
        self.values.iter().all(|v| cl.is_universe(v))
    }

    pub fn conj_close(&self, cl: &CharLattice) -> Diagram {
        Diagram {
            values: self.values.iter().map(|v| cl.conj_close(v)).collect(),
        }
    }

    /// `⟨D⟩_R(H) = ⋃_{K >= H} R_H^K(D(K))`.
    pub fn r_stabilize(&self, cl: &CharLattice) -> Diagram {
        let lat = cl.lattice();
        let values = (0..cl.len())
            .map(|h| {
                let mut acc = cl.empty(h);
                for k in lat.above(h).ones() {
                    for chi in self.values[k].iter() {
                        acc.insert(cl.res(k, h, chi));
                    }
                }
                acc
            })
            .collect();
        Diagram { values }
    }

    /// `⟨D⟩_J^R(H) = ⋃_{K -> H ∈ R} J_K^H(D(K))`. The inductor must be
    /// defined on the whole lattice.
    pub fn jr_stabilize(&self, cl: &CharLattice, j: &Inductor, r: &TransferSystem) -> Result<Diagram> {
        if j.scope() != cl.top() {
            return Err(Error::precondition("stabilization needs an inductor defined on all of G"));
        }
        if r.len() != cl.len() {
            return Err(Error::invalid("transfer system does not match the lattice"));
        }
        let values = (0..cl.len())
            .map(|h| {
                let mut acc = self.values[h].clone();
                for k in cl.lattice().below(h).ones() {
                    if k != h && r.contains(k, h) && !self.values[k].is_empty() {
                        acc.union_with(&j.apply_set(cl, k, h, &self.values[k]));
                    }
                }
                acc
            })
            .collect();
        Ok(Diagram { values })
    }

    /// `⟨D⟩_J`, stabilization along the maximal transfer system.
    pub fn j_stabilize(&self, cl: &CharLattice, j: &Inductor) -> Result<Diagram> {
        self.jr_stabilize(cl, j, &TransferSystem::maximal(cl.lattice()))
    }

    pub fn to_json(&self, cl: &CharLattice) -> DiagramJson {
        DiagramJson {
            group: cl.spec().to_string(),
            values: self
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_empty())
                .map(|(h, v)| (h, cl.charset_to_json(v).chars))
                .collect(),
        }
    }

    pub fn from_json(cl: &CharLattice, j: &DiagramJson) -> Result<Self> {
        if j.group != cl.spec().to_string() {
            return Err(Error::invalid(format!(
                "diagram is for group {} but the lattice is {}",
                j.group,
                cl.spec()
            )));
        }
        let mut d = Diagram::empty(cl);
        for (&h, reps) in &j.values {
            if h >= cl.len() {
                return Err(Error::invalid(format!("no subgroup with id {h}")));
            }
            d.values[h] = cl.set_from_coords(h, reps)?;
        }
        Ok(d)
    }
}

/// `{"group": ..., "values": {"<id>": [[a_1..a_k], ...]}}`; empty levels are
/// omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub group: String,
    pub values: BTreeMap<usize, Vec<Vec<u64>>>,
}

/// `I_K^H(S) ⊆ T` for `S ⊆ K̂`, `T ⊆ Ĥ`, without materializing the preimage.
pub(crate) fn induced_within(cl: &CharLattice, s: &CharSet, t: &CharSet) -> bool {
    let (k, h) = (s.subgroup(), t.subgroup());
    if s.is_empty() {
        return true;
    }
    (0..cl.num_chars(h) as u32).all(|tau| t.contains(tau) || !s.contains(cl.res(h, k, tau)))
}

/// `{K <= H : I_K^H(D(K)) ⊆ D(H)}`. The result is a relation that need not
/// be a transfer system for arbitrary `D`.
pub fn tr_of_diagram(cl: &CharLattice, d: &Diagram) -> TransferSystem {
    let lat = cl.lattice();
    let n = cl.len();
    let mut ts = TransferSystem::empty_relation(n);
    for h in 0..n {
        for k in lat.below(h).ones() {
            if induced_within(cl, d.get(k), d.get(h)) {
                ts.insert(k, h);
            }
        }
    }
    ts
}

/// `Tr(U) = {K <= H : I_K^H R_K^G(U) ⊆ R_H^G(U)}`, validated.
pub fn tr_of_universe(cl: &CharLattice, u: &CharSet) -> Result<TransferSystem> {
    let ts = tr_of_diagram(cl, &Diagram::from_universe(cl, u));
    ts.validate(cl.lattice())
        .map_err(|v| Error::Verification(format!("Tr(U) is not a transfer system: {v}")))?;
    Ok(ts)
}
