//! Tight pairs `(D, J)`: verification with witnesses, tensor localization
//! over coprime parts, and the alternating stabilization that realizes a
//! saturated transfer system as `Tr(U)`.

use serde::{Deserialize, Serialize};

use crate::chars::{CharLattice, CharSet};
use crate::diagram::{tr_of_universe, Diagram, DiagramJson};
use crate::error::{Error, Result};
use crate::group::SubgroupId;
use crate::inductor::{check_subinductor_axioms, AxiomCheck, AxiomReport, Inductor, InductorJson};
use crate::transfer::TransferSystem;

/// `χ ∈ I_K^H(D(K)) \ (D(H) ∪ Res_J(H))` for a strict pair `K < H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Escape {
    pub k: SubgroupId,
    pub h: SubgroupId,
    pub witness: Option<Vec<u64>>,
}

/// `χ ∈ D(H) \ Res_J(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub h: SubgroupId,
    pub witness: Option<Vec<u64>>,
}

/// Outcome of checking the tight-pair conditions below the inductor's scope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub scope: SubgroupId,
    pub r_stable: bool,
    pub gal_invariant: bool,
    pub axioms: AxiomReport,
    pub escapes: Vec<Escape>,
    pub anchors: Vec<Anchor>,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_tight_pair(cl: &CharLattice, d: &Diagram, j: &Inductor, opts: &AxiomCheck) -> Certificate {
    let lat = cl.lattice();
    let scope = j.scope();
    let mut failures = Vec::new();

    let instability = d.first_r_instability(cl, scope);
    if let Some((k, h)) = instability {
        failures.push(format!("D is not R-stable: R_{k}^{h} D({h}) ⊄ D({k})"));
    }
    let axioms = check_subinductor_axioms(cl, j, opts);
    if !axioms.passed() {
        failures.push(format!("J fails sub-inductor axioms {:?}", axioms.failed_axioms()));
    }
    let subs: Vec<usize> = lat.below(scope).ones().collect();
    let bad_conj: Vec<usize> = subs.iter().copied().filter(|&h| !cl.is_conj_invariant(d.get(h))).collect();
    if let Some(h) = bad_conj.first() {
        failures.push(format!("D({h}) is not conjugation-invariant"));
    }

    let residues: Vec<(usize, CharSet)> = subs.iter().map(|&h| (h, j.residue(cl, h))).collect();
    let residue = |h: usize| &residues.iter().find(|(x, _)| *x == h).unwrap().1;
    let witness = |h: usize, s: &CharSet| s.first().map(|chi| cl.rep_coords(h, chi).to_vec());

    let mut escapes = Vec::new();
    for &h in &subs {
        let mut blocked = d.get(h).union(residue(h));
        blocked.intersect_with(&cl.full(h));
        for k in lat.below(h).ones().filter(|&k| k != h) {
            let mut free = cl.ind_set(d.get(k), h);
            free.difference_with(&blocked);
            let w = witness(h, &free);
            if w.is_none() {
                failures.push(format!("I_{k}^{h} D({k}) ⊆ D({h}) ∪ Res_J({h})"));
            }
            escapes.push(Escape { k, h, witness: w });
        }
    }
    let mut anchors = Vec::new();
    for &h in &subs {
        let free = d.get(h).difference(residue(h));
        let w = witness(h, &free);
        if w.is_none() {
            failures.push(format!("D({h}) ⊆ Res_J({h})"));
        }
        anchors.push(Anchor { h, witness: w });
    }
    Certificate {
        scope,
        r_stable: instability.is_none(),
        gal_invariant: bad_conj.is_empty(),
        axioms,
        escapes,
        anchors,
        failures,
    }
}

/// A diagram and sub-inductor that passed [`verify_tight_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightPair {
    diagram: Diagram,
    inductor: Inductor,
    certificate: Certificate,
}

impl TightPair {
    /// Verifies and wraps; a failed check becomes [`Error::Verification`].
    pub fn verified(cl: &CharLattice, diagram: Diagram, inductor: Inductor, opts: &AxiomCheck) -> Result<Self> {
        let certificate = verify_tight_pair(cl, &diagram, &inductor, opts);
        if !certificate.passed() {
            return Err(Error::Verification(certificate.failures.join("; ")));
        }
        Ok(TightPair {
            diagram,
            inductor,
            certificate,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn inductor(&self) -> &Inductor {
        &self.inductor
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn scope(&self) -> SubgroupId {
        self.inductor.scope()
    }

    pub fn to_json(&self, cl: &CharLattice) -> TightPairJson {
        TightPairJson {
            group: cl.spec().to_string(),
            scope: self.scope(),
            diagram: self.diagram.to_json(cl),
            inductor: self.inductor.to_json(cl),
            certificate: self.certificate.clone(),
        }
    }

    /// Rebuilds and re-verifies; the stored certificate is not trusted.
    pub fn from_json(cl: &CharLattice, j: &TightPairJson) -> Result<Self> {
        if j.group != cl.spec().to_string() {
            return Err(Error::invalid(format!(
                "tight pair is for group {} but the lattice is {}",
                j.group,
                cl.spec()
            )));
        }
        let inductor = Inductor::from_json(cl, &j.inductor)?;
        if inductor.scope() != j.scope {
            return Err(Error::invalid("bundle scope disagrees with its inductor"));
        }
        TightPair::verified(cl, Diagram::from_json(cl, &j.diagram)?, inductor, &AxiomCheck::default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightPairJson {
    pub group: String,
    pub scope: SubgroupId,
    pub diagram: DiagramJson,
    pub inductor: InductorJson,
    pub certificate: Certificate,
}

/// `(D ⊗ D')(H) = I_{H∧P}^H D(H∧P) ∩ I_{H∧Q}^H D'(H∧Q)` for `H <= P ∨ Q`.
pub fn tensor_diagram(cl: &CharLattice, d: &Diagram, p: SubgroupId, d2: &Diagram, q: SubgroupId) -> Diagram {
    let lat = cl.lattice();
    let scope = lat.join(p, q);
    let mut out = Diagram::empty(cl);
    for h in lat.below(scope).ones() {
        let (hp, hq) = (lat.meet(h, p), lat.meet(h, q));
        let mut v = cl.ind_set(d.get(hp), h);
        v.intersect_with(&cl.ind_set(d2.get(hq), h));
        out.set(h, v);
    }
    out
}

/// Tensor product of tight pairs on subgroups of coprime order.
pub fn localize_tight_pairs(cl: &CharLattice, a: &TightPair, b: &TightPair, opts: &AxiomCheck) -> Result<TightPair> {
    let (p, q) = (a.scope(), b.scope());
    let j = Inductor::tensor(cl, a.inductor.clone(), b.inductor.clone())?;
    let d = tensor_diagram(cl, &a.diagram, p, &b.diagram, q);
    TightPair::verified(cl, d, j, opts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub universe: CharSet,
    /// Rounds of (induction along R, then J) that changed the diagram.
    pub rounds: usize,
}

/// Builds a universe `U` with `Tr(U) = R` from a tight pair on all of `G`.
///
/// Starting from `D` with `1_H` added everywhere, alternates
/// `⟨-⟩_I^R` and `⟨-⟩_J` until neither changes anything, then takes the
/// value at `G`. Every round must strictly grow the diagram, and the result
/// is checked before it is returned.
pub fn realize(cl: &CharLattice, r: &TransferSystem, tp: &TightPair) -> Result<Realization> {
    let lat = cl.lattice();
    r.validate(lat)
        .map_err(|v| Error::precondition(format!("not a transfer system: {v}")))?;
    if !r.is_saturated(lat) {
        return Err(Error::precondition("realization needs a saturated transfer system"));
    }
    if tp.scope() != cl.top() {
        return Err(Error::precondition("the tight pair must be defined on all of G"));
    }
    let induction = Inductor::standard(cl, cl.top());
    let max = TransferSystem::maximal(lat);
    let cap: usize = (0..cl.len()).map(|h| cl.num_chars(h)).sum::<usize>() + 1;

    let mut d = tp.diagram.with_units();
    let mut rounds = 0;
    loop {
        let next = d
            .jr_stabilize(cl, &induction, r)?
            .jr_stabilize(cl, &tp.inductor, &max)?;
        if next == d {
            break;
        }
        if !d.is_subset(&next) || next.weight() <= d.weight() {
            return Err(Error::Verification("stabilization round did not grow the diagram".into()));
        }
        d = next;
        rounds += 1;
        if rounds > cap {
            return Err(Error::Verification("stabilization did not terminate".into()));
        }
    }

    let u = d.get(cl.top()).clone();
    if !cl.is_universe(&u) {
        return Err(Error::Verification("the limit at G is not a universe".into()));
    }
    let tr = tr_of_universe(cl, &u)?;
    if tr != *r {
        let extra = tr.pairs().find(|&(k, h)| !r.contains(k, h));
        let missing = r.pairs().find(|&(k, h)| !tr.contains(k, h));
        return Err(Error::Verification(format!(
            "Tr(U) differs from R: extra edge {extra:?}, missing edge {missing:?}"
        )));
    }
    Ok(Realization { universe: u, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cl(s: &str) -> CharLattice {
        CharLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn empty_diagram_with_induction_fails_anchor_condition() {
        let c = cl("C5");
        let cert = verify_tight_pair(&c, &Diagram::empty(&c), &Inductor::standard(&c, c.top()), &AxiomCheck::default());
        assert!(!cert.passed());
        assert!(cert.anchors.iter().any(|a| a.witness.is_none()));
        assert!(cert.axioms.passed());
    }

    #[test]
    fn realize_rejects_unsaturated_systems() {
        let c = cl("C25");
        let j = Inductor::chain(&c, c.top()).unwrap();
        let mut d = Diagram::trivial(&c);
        d.set(1, c.set_of(1, [0, 1, 4]));
        // the pair need not be tight for the precondition check to fire
        let tp = TightPair {
            certificate: verify_tight_pair(&c, &d, &j, &AxiomCheck::default()),
            diagram: d,
            inductor: j,
        };
        let r = TransferSystem::generate(c.lattice(), &[(0, 2)]).unwrap();
        assert!(!r.is_saturated(c.lattice()));
        assert!(matches!(realize(&c, &r, &tp), Err(Error::Precondition(_))));
    }
}
