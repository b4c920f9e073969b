use crate::chars::CharLattice;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::group::{factorize, is_prime, GroupSpec, SubgroupId};
use crate::inductor::{AxiomCheck, Inductor};
use crate::tight::TightPair;

/// The tight pair on `C_{p^n}` built from canonical sections.
pub fn cyclic_tight_pair(p: u64, n: u32) -> Result<(CharLattice, TightPair)> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    if p < 5 {
        return Err(Error::precondition(format!("the cyclic construction needs p >= 5, got {p}")));
    }
    if n == 0 {
        return Err(Error::precondition("the cyclic construction needs n >= 1"));
    }
    let order = p
        .checked_pow(n)
        .ok_or_else(|| Error::Budget(format!("{p}^{n} does not fit in 64 bits")))?;
    let cl = CharLattice::build(&GroupSpec::new(vec![order])?)?;
    let tp = cyclic_tight_pair_in(&cl, cl.top())?;
    Ok((cl, tp))
}

/// Same construction on a cyclic `p`-subgroup `scope`; values outside the
/// scope are empty.
///
/// `J` is the chain inductor with canonical sections. `D(1) = {1}` and
/// `D(H_i) = {1, τ_i, conj τ_i}`, where `τ_i` is the least character in
/// `I_{H_{i-1}}^{H_i}(1) \ Res_J(H_i)`.
pub fn cyclic_tight_pair_in(cl: &CharLattice, scope: SubgroupId) -> Result<TightPair> {
    let lat = cl.lattice();
    match factorize(lat.order(scope)).as_slice() {
        [(p, _)] if *p >= 5 => {}
        [(p, _)] => {
            return Err(Error::precondition(format!("the cyclic construction needs p >= 5, got {p}")))
        }
        _ => return Err(Error::precondition("the cyclic construction needs a nontrivial p-group")),
    }
    let j = Inductor::chain(cl, scope)?;
    let chain: Vec<SubgroupId> = lat.below(scope).ones().collect();
    let mut d = Diagram::empty(cl);
    d.set(chain[0], cl.singleton(chain[0], 0));
    for w in chain.windows(2) {
        let (k, h) = (w[0], w[1]);
        let mut pool = cl.ind_set(&cl.singleton(k, 0), h);
        pool.difference_with(&j.residue(cl, h));
        let tau = pool
            .first()
            .ok_or_else(|| Error::Verification(format!("no character escapes Res_J at subgroup {h}")))?;
        d.set(h, cl.set_of(h, [0, tau, cl.conj(h, tau)]));
    }
    TightPair::verified(cl, d, j, &AxiomCheck::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_pair_has_three_characters_at_top() {
        let (cl, tp) = cyclic_tight_pair(5, 1).unwrap();
        let top = tp.diagram().get(cl.top());
        assert_eq!(top.len(), 3);
        assert!(top.contains(0));
        let res = tp.inductor().residue(&cl, cl.top());
        // the cover J(1) = {1} leaves four escaping characters; the least is 1
        assert_eq!(res.iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(top.iter().collect::<Vec<_>>(), vec![0, 1, 4]);
    }

    #[test]
    fn c25_and_c49_verify() {
        for (p, n) in [(5, 2), (7, 2), (5, 3)] {
            let (_, tp) = cyclic_tight_pair(p, n).unwrap();
            assert!(tp.certificate().passed());
        }
    }

    #[test]
    fn small_primes_are_rejected() {
        assert!(matches!(cyclic_tight_pair(3, 1), Err(Error::Precondition(_))));
        assert!(matches!(cyclic_tight_pair(2, 3), Err(Error::Precondition(_))));
        assert!(matches!(cyclic_tight_pair(5, 0), Err(Error::Precondition(_))));
        assert!(matches!(cyclic_tight_pair(25, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn scoped_pair_on_sylow_subgroup() {
        let cl = CharLattice::build(&GroupSpec::parse("C35").unwrap()).unwrap();
        let p5 = cl.lattice().primary_subgroup(5);
        let tp = cyclic_tight_pair_in(&cl, p5).unwrap();
        assert_eq!(tp.scope(), p5);
        assert!(tp.diagram().get(cl.top()).is_empty());
    }
}
