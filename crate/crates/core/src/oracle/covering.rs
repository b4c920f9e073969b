use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::negative::negative_transfer_system;
use crate::chars::CharLattice;
use crate::error::{Error, Result};
use crate::group::{is_prime, GroupSpec, SubgroupId};

/// Covering data on `V = (C_p)^3` for a plane `H` and characters
/// `ξ_L ∈ L̂` on the `p^2` lines `L` outside `H`, with
/// `X_L = π_L^{-1}(ξ_L)` and `c(τ) = #{L : τ ∈ X_L}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringStats {
    pub p: u64,
    pub plane: SubgroupId,
    pub lines: Vec<SubgroupId>,
    pub choices: Vec<u32>,
    /// `c(τ)` for every `τ ∈ V̂`.
    pub covering: Vec<u32>,
    /// `Σ c(τ)` over each fiber `π_H^{-1}(χ)`.
    pub fiber_sums: Vec<u64>,
    /// `V(χ) = -p^2 + (1/p) Σ c(τ)^2`, as `"num/den"`.
    pub variances: Vec<String>,
    pub mean_variance: String,
    /// Characters `χ ∈ Ĥ` whose whole fiber has positive covering index.
    pub covered_fibers: Vec<u32>,
    pub fiber_sums_ok: bool,
    pub mean_ok: bool,
    pub intersections_ok: bool,
    /// Every fiber with `V(χ) <= p - 1` is fully covered.
    pub low_variance_covered: bool,
}

impl CoveringStats {
    pub fn identities_hold(&self) -> bool {
        self.fiber_sums_ok && self.mean_ok && self.intersections_ok && self.low_variance_covered
    }
}

/// Uniform choices `ξ_L`, one per line outside the plane.
pub fn random_choices(p: u64, rng: &mut impl Rng) -> Vec<u32> {
    (0..p * p).map(|_| rng.gen_range(0..p as u32)).collect()
}

pub fn covering_stats(p: u64, choices: &[u32]) -> Result<CoveringStats> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    let cl = CharLattice::build(&GroupSpec::new(vec![p, p, p])?)?;
    let lat = cl.lattice();
    let (plane, _) = negative_transfer_system(&cl)?;
    let g = cl.top();
    let lines: Vec<SubgroupId> = lat.layer(p).into_iter().filter(|&l| !lat.leq(l, plane)).collect();
    if choices.len() != lines.len() || choices.iter().any(|&x| x as u64 >= p) {
        return Err(Error::invalid(format!(
            "expected {} choices in 0..{p}, got {:?}",
            lines.len(),
            choices
        )));
    }
    let nv = cl.num_chars(g);
    let x_sets: Vec<Vec<bool>> = lines
        .iter()
        .zip(choices)
        .map(|(&l, &xi)| (0..nv as u32).map(|tau| cl.res(g, l, tau) == xi).collect())
        .collect();
    let covering: Vec<u32> = (0..nv)
        .map(|tau| x_sets.iter().filter(|x| x[tau]).count() as u32)
        .collect();

    let nh = cl.num_chars(plane);
    let mut fiber_sums = vec![0u64; nh];
    let mut squares = vec![0i64; nh];
    let mut uncovered = vec![false; nh];
    for tau in 0..nv {
        let chi = cl.res(g, plane, tau as u32) as usize;
        let c = covering[tau] as i64;
        fiber_sums[chi] += c as u64;
        squares[chi] += c * c;
        uncovered[chi] |= c == 0;
    }
    let pi = p as i64;
    let variances: Vec<Ratio<i64>> = squares
        .iter()
        .map(|&s| Ratio::from_integer(-pi * pi) + Ratio::new(s, pi))
        .collect();
    let mean = variances.iter().fold(Ratio::from_integer(0), |a, v| a + v) / Ratio::from_integer(nh as i64);

    let mut intersections_ok = true;
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            let both = (0..nv).filter(|&t| x_sets[a][t] && x_sets[b][t]).count() as u64;
            intersections_ok &= both == p;
        }
    }
    let bound = Ratio::from_integer(pi - 1);
    let low_variance_covered = (0..nh).all(|chi| variances[chi] > bound || !uncovered[chi]);

    Ok(CoveringStats {
        p,
        plane,
        lines: lines.clone(),
        choices: choices.to_vec(),
        fiber_sums_ok: fiber_sums.iter().all(|&s| s == p * p),
        mean_ok: mean == bound,
        covering,
        fiber_sums,
        variances: variances.iter().map(|v| v.to_string()).collect(),
        mean_variance: mean.to_string(),
        covered_fibers: (0..nh as u32).filter(|&c| !uncovered[c as usize]).collect(),
        intersections_ok,
        low_variance_covered,
    })
}
