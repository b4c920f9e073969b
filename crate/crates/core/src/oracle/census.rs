use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::brute::{FastTr, OrbitIndex};
use crate::chars::CharLattice;
use crate::error::{Error, Result};
use crate::transfer::{enumerate_saturated, enumerate_transfer_systems, DEFAULT_TS_BUDGET};

/// `binom(n, i)_p = Π_{j<i} (p^{n-j} - 1) / (p^{i-j} - 1)`, the number of
/// subgroups of order `p^i` in `(C_p)^n`.
pub fn p_binomial(n: u32, i: u32, p: u64) -> Result<BigUint> {
    if i > n {
        return Err(Error::precondition(format!("p-binomial needs i <= n, got i = {i}, n = {n}")));
    }
    let p = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..i {
        num *= p.pow(n - j) - 1u32;
        den *= p.pow(i - j) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

#[derive(Clone, Copy, Debug)]
pub struct CensusBudget {
    /// Largest lattice on which all transfer systems are enumerated.
    pub ts_subgroups: usize,
    /// Largest number of conjugation orbits searched.
    pub orbits: usize,
}

impl Default for CensusBudget {
    fn default() -> Self {
        CensusBudget {
            ts_subgroups: DEFAULT_TS_BUDGET,
            orbits: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub group: String,
    pub subgroups: usize,
    /// Empty when the lattice exceeds the enumeration budget.
    pub transfer_systems: Option<u64>,
    pub saturated: u64,
    pub orbits: usize,
    pub universes: u64,
    pub realized_saturated: u64,
    pub unrealized_saturated: u64,
    /// Distinct `Tr(U)` over all universes.
    pub distinct_tr: u64,
}

/// Counts for `G`. Realized systems are collected as the image of `Tr` over
/// all universes; every image is checked to be a transfer system.
pub fn census(cl: &CharLattice, budget: &CensusBudget) -> Result<CensusRow> {
    let lat = cl.lattice();
    let orbits = OrbitIndex::new(cl);
    if orbits.len() > budget.orbits {
        return Err(Error::Budget(format!(
            "{} orbits exceed the census budget of {}",
            orbits.len(),
            budget.orbits
        )));
    }
    let transfer_systems = if lat.len() <= budget.ts_subgroups {
        Some(enumerate_transfer_systems(lat, budget.ts_subgroups)?.count() as u64)
    } else {
        None
    };
    let saturated = enumerate_saturated(lat);

    let fast = FastTr::new(cl, &orbits)?;
    let universes = 1u64 << orbits.len();
    let mut image = HashSet::new();
    for mask in 0..universes {
        let tr = fast.relation(fast.universe_mask(mask));
        if let Err(v) = tr.validate(lat) {
            return Err(Error::Verification(format!("Tr of orbit mask {mask} is not a transfer system: {v}")));
        }
        image.insert(tr);
    }
    let realized = saturated.iter().filter(|r| image.contains(*r)).count() as u64;

    // direct count of conjugation-closed sets containing 1
    let nchars = cl.num_chars(cl.top());
    if nchars <= 24 {
        let g = cl.top();
        let direct = (0u64..1 << (nchars - 1))
            .filter(|&m| {
                (1..nchars as u32).all(|chi| {
                    let bit = |x: u32| m >> (x - 1) & 1;
                    bit(chi) == bit(cl.conj(g, chi))
                })
            })
            .count() as u64;
        if direct != universes {
            return Err(Error::Verification(format!(
                "{direct} conjugation-closed sets but 2^{} universes",
                orbits.len()
            )));
        }
    }

    Ok(CensusRow {
        group: cl.spec().to_string(),
        subgroups: lat.len(),
        transfer_systems,
        saturated: saturated.len() as u64,
        orbits: orbits.len(),
        universes,
        realized_saturated: realized,
        unrealized_saturated: saturated.len() as u64 - realized,
        distinct_tr: image.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupSpec, SubgroupLattice};

    #[test]
    fn small_p_binomials() {
        assert_eq!(p_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(p_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(p_binomial(7, 0, 5).unwrap(), BigUint::one());
        assert!(p_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn p_binomial_counts_layers() {
        for (p, n) in [(2u64, 3u32), (2, 4), (3, 3)] {
            let lat = SubgroupLattice::build(&GroupSpec::new(vec![p; n as usize]).unwrap()).unwrap();
            for i in 0..=n {
                let count = lat.layer(p.pow(i)).len();
                assert_eq!(p_binomial(n, i, p).unwrap(), BigUint::from(count), "p={p} n={n} i={i}");
            }
        }
    }

    #[test]
    fn c4_census() {
        let cl = CharLattice::build(&GroupSpec::parse("C4").unwrap()).unwrap();
        let row = census(&cl, &CensusBudget::default()).unwrap();
        assert_eq!(row.orbits, 2);
        assert_eq!(row.universes, 4);
        assert_eq!(row.transfer_systems, Some(5));
    }
}
