//! Constructions of tight pairs: deterministic for cyclic `p`-groups,
//! randomized for rank-two `p`-groups, and tensor products over the
//! primary decomposition.

mod bounds;
mod cyclic;
mod partition;
mod rank_two;

pub use bounds::{rank_two_bounds, RankTwoBounds, Tower};
pub use cyclic::{cyclic_tight_pair, cyclic_tight_pair_in};
pub use partition::{partition_structure, PartitionReport};
pub use rank_two::{
    check_inductive_props, cluster_profile, clusteredness, rank_two_tight_pair, sample_dt, staged_tight_pair,
    stage_constants,
    RankTwoOptions, RankTwoReport, RankTwoRun, StageConstants, StageReport,
};

use crate::chars::CharLattice;
use crate::error::{Error, Result};
use crate::inductor::AxiomCheck;
use crate::tight::{localize_tight_pairs, TightPair};

/// A tight pair on all of `G`: the cyclic or rank-two construction on each
/// Sylow subgroup, tensored together.
pub fn tight_pair_auto(cl: &CharLattice, opts: &RankTwoOptions) -> Result<TightPair> {
    let lat = cl.lattice();
    let mut acc: Option<TightPair> = None;
    for part in cl.spec().primary_parts() {
        let scope = lat.primary_subgroup(part.prime);
        let tp = match part.rank() {
            1 => cyclic_tight_pair_in(cl, scope)?,
            2 => {
                let run = rank_two_tight_pair(cl, scope, opts)?;
                match run.pair {
                    Some(tp) => tp,
                    None => {
                        return Err(Error::Exhausted(format!(
                            "rank-two construction for p = {} failed at stage {}",
                            part.prime,
                            run.report.failed_stage.unwrap_or(0)
                        )))
                    }
                }
            }
            r => {
                return Err(Error::precondition(format!(
                    "no tight-pair construction for a {}-part of rank {r}",
                    part.prime
                )))
            }
        };
        acc = Some(match acc {
            None => tp,
            Some(prev) => localize_tight_pairs(cl, &prev, &tp, &AxiomCheck::default())?,
        });
    }
    acc.ok_or_else(|| Error::precondition("the trivial group has no tight pair construction"))
}
