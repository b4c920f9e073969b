use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::brute::{brute_force_realizable, BruteOutcome, DEFAULT_ORBIT_BUDGET};
use crate::chars::CharLattice;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, SubgroupId};
use crate::transfer::TransferSystem;

/// The saturated system on `(C_p)^3` generated by `0 -> H` for the first
/// plane `H`, with the plane.
pub fn negative_transfer_system(cl: &CharLattice) -> Result<(SubgroupId, TransferSystem)> {
    let lat = cl.lattice();
    let parts = cl.spec().primary_parts();
    let p = match parts.as_slice() {
        [part] if part.rank() == 3 && part.order() == part.prime.pow(3) => part.prime,
        _ => return Err(Error::precondition("the construction lives on (C_p)^3")),
    };
    let plane = lat.layer(p * p)[0];
    let r = TransferSystem::generate_saturated(lat, &[(lat.bottom(), plane)])?;
    Ok((plane, r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeReport {
    pub p: u64,
    pub group: String,
    pub plane: SubgroupId,
    pub edges: Vec<(SubgroupId, SubgroupId)>,
    /// `W' -> W` iff `W' = W` or `W <= H`, checked against the generated system.
    pub matches_explicit_form: bool,
    pub saturated: bool,
    pub universes_searched: u64,
    pub unrealizable: bool,
    /// The identity system is realized by the trivial universe `{1}`.
    pub identity_witness_is_trivial: bool,
    pub elapsed_ms: u128,
}

impl NegativeReport {
    pub fn passed(&self) -> bool {
        self.matches_explicit_form && self.saturated && self.unrealizable && self.identity_witness_is_trivial
    }
}

pub fn verify_negative_rank3(p: u64) -> Result<NegativeReport> {
    if p != 2 && p != 3 {
        return Err(Error::precondition("exhaustive search is limited to p = 2 or 3"));
    }
    let start = Instant::now();
    let cl = CharLattice::build(&GroupSpec::new(vec![p, p, p])?)?;
    let lat = cl.lattice();
    let (plane, r) = negative_transfer_system(&cl)?;
    let matches_explicit_form = (0..cl.len()).all(|k| {
        (0..cl.len()).all(|w| {
            let expected = lat.leq(k, w) && (k == w || lat.leq(w, plane));
            r.contains(k, w) == expected
        })
    });
    let search = brute_force_realizable(&cl, &r, DEFAULT_ORBIT_BUDGET)?;
    let unrealizable = search.outcome == BruteOutcome::Unrealizable;
    let identity = brute_force_realizable(&cl, &TransferSystem::identity(cl.len()), DEFAULT_ORBIT_BUDGET)?;
    let identity_witness_is_trivial = matches!(
        identity.outcome,
        BruteOutcome::Witness(ref u) if u.len() == 1 && u.contains(0)
    );
    Ok(NegativeReport {
        p,
        group: cl.spec().to_string(),
        plane,
        edges: r.edges(),
        matches_explicit_form,
        saturated: r.is_saturated(lat),
        universes_searched: search.universes,
        unrealizable,
        identity_witness_is_trivial,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
