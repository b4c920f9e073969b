use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bounds::{rank_two_bounds, RankTwoBounds};
use super::cyclic::cyclic_tight_pair_in;
use crate::chars::CharLattice;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::group::{factorize, SubgroupId};
use crate::inductor::{AxiomCheck, Inductor};
use crate::tight::{TightPair, TightPairJson};

fn prime_of(cl: &CharLattice, scope: SubgroupId) -> Result<(u64, u32)> {
    match factorize(cl.lattice().order(scope)).as_slice() {
        [(p, e)] => Ok((*p, *e)),
        _ => Err(Error::precondition(format!("subgroup {scope} is not a nontrivial p-group"))),
    }
}

/// `min |J[D]_K^H(χ)|` over every rank-`i` triple below `scope`, for
/// `i = 1..=n`. Entry `i - 1` is `u64::MAX` when there is no such triple.
pub fn cluster_profile(cl: &CharLattice, scope: SubgroupId, d: &Diagram) -> Result<Vec<u64>> {
    let (_, n) = prime_of(cl, scope)?;
    let lat = cl.lattice();
    let j = Inductor::complement(cl, scope, d)?;
    let mut mins = vec![u64::MAX; n as usize];
    for h in lat.below(scope).ones() {
        for k in lat.below(h).ones().filter(|&k| k != h) {
            let rk = lat.rank_of_pair(k, h)? as usize;
            let m = j.fiber_sizes(cl, k, h).into_iter().min().unwrap_or(0) as u64;
            mins[rk - 1] = mins[rk - 1].min(m);
        }
    }
    Ok(mins)
}

/// The largest `C` with `D` `C`-clustered below `scope`: the least fiber
/// size of `J[D]` over rank-one triples.
pub fn clusteredness(cl: &CharLattice, scope: SubgroupId, d: &Diagram) -> Result<u64> {
    prime_of(cl, scope)?;
    let lat = cl.lattice();
    let j = Inductor::complement(cl, scope, d)?;
    let mut best = u64::MAX;
    for h in lat.below(scope).ones() {
        for k in lat.below(h).ones().filter(|&k| lat.covers(k, h)) {
            let m = j.fiber_sizes(cl, k, h).into_iter().min().unwrap_or(0) as u64;
            best = best.min(m);
        }
    }
    Ok(best)
}

/// `D^T`: for each `H ∈ T`, adds a uniform `τ ∈ J[D]_1^H(1) \ {1_H}` and
/// its conjugate. `T` is visited in ascending id order.
pub fn sample_dt(
    cl: &CharLattice,
    scope: SubgroupId,
    d: &Diagram,
    t: &[SubgroupId],
    rng: &mut impl Rng,
) -> Result<Diagram> {
    let c = clusteredness(cl, scope, d)?;
    if c < 2 {
        return Err(Error::precondition(format!("sampling needs a 2-clustered diagram, got {c}")));
    }
    sample_layer(cl, scope, d, t, rng)
}

/// The pool `J[D]_1^H(1) \ {1_H}` that [`sample_dt`] draws from.
fn pool(cl: &CharLattice, j: &Inductor, h: SubgroupId) -> Vec<u32> {
    let mut pool = j.apply(cl, cl.lattice().bottom(), h, 0);
    pool.remove(0);
    pool.iter().collect()
}

/// [`sample_dt`] without the clusteredness check; only needs nonempty pools.
fn sample_layer(
    cl: &CharLattice,
    scope: SubgroupId,
    d: &Diagram,
    t: &[SubgroupId],
    rng: &mut impl Rng,
) -> Result<Diagram> {
    let lat = cl.lattice();
    let j = Inductor::complement(cl, scope, d)?;
    let mut t = t.to_vec();
    t.sort_unstable();
    t.dedup();
    let mut out = d.clone();
    for &h in &t {
        if h == lat.bottom() || !lat.leq(h, scope) {
            return Err(Error::precondition(format!("subgroup {h} is trivial or outside the scope")));
        }
        let pool = pool(cl, &j, h);
        if pool.is_empty() {
            return Err(Error::precondition(format!("nothing to sample at subgroup {h}")));
        }
        let tau = pool[rng.gen_range(0..pool.len())];
        let v = out.get_mut(h);
        v.insert(tau);
        v.insert(cl.conj(h, tau));
    }
    Ok(out)
}

/// Violations of the three properties of `D^T` relative to `D`.
pub fn check_inductive_props(
    cl: &CharLattice,
    scope: SubgroupId,
    d: &Diagram,
    dt: &Diagram,
    t: &[SubgroupId],
) -> Vec<String> {
    let lat = cl.lattice();
    let mut out = Vec::new();
    for h in lat.below(scope).ones() {
        if !cl.is_conj_invariant(dt.get(h)) || dt.get(h).contains(0) {
            out.push(format!("(1) D^T({h}) is not conjugation-invariant or contains 1"));
        }
    }
    for &h in t {
        if dt.get(h).is_subset(d.get(h)) {
            out.push(format!("(2) D^T({h}) adds nothing"));
        }
    }
    for h in lat.below(scope).ones() {
        let new = dt.get(h).difference(d.get(h));
        for k in lat.below(h).ones().filter(|&k| k != lat.bottom()) {
            if new.iter().any(|tau| d.get(k).contains(cl.res(h, k, tau))) {
                out.push(format!("(3) R_{k}^{h}(D^T({h}) \\ D({h})) meets D({k})"));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct RankTwoOptions {
    pub seed: u64,
    /// Samples allowed per stage.
    pub retries: usize,
    /// Stage `i + 1` must reach `floor(θ C_i)` where `C_i` was achieved.
    pub theta: f64,
    pub axioms: AxiomCheck,
}

impl Default for RankTwoOptions {
    fn default() -> Self {
        RankTwoOptions {
            seed: 0,
            retries: 64,
            theta: 0.0,
            axioms: AxiomCheck::default(),
        }
    }
}

/// `α = Σ_{H ∈ T} 1/|H|`, `β = p/C`, `γ = (β^{-n} - 1/p)^{-1}`,
/// `ρ = exp(-15(α+1)βγ)` and the next target `C' = ρC/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageConstants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rho: f64,
    pub next_c: f64,
}

pub fn stage_constants(p: u64, n: u32, c: f64, layer_orders: &[u64]) -> StageConstants {
    let p = p as f64;
    let alpha: f64 = layer_orders.iter().map(|&o| 1.0 / o as f64).sum();
    let beta = p / c;
    let gamma = 1.0 / (beta.powi(-(n as i32)) - 1.0 / p);
    let rho = (-15.0 * (alpha + 1.0) * beta * gamma).exp();
    StageConstants {
        alpha,
        beta,
        gamma,
        rho,
        next_c: rho / 2.0 * c,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: usize,
    pub layer: Vec<SubgroupId>,
    pub threshold: u64,
    pub attempts: usize,
    pub best: u64,
    /// Samples rejected because some pool of the next layer was empty.
    pub empty_pools: usize,
    pub accepted: bool,
    /// Reference constants along the theoretical schedule.
    pub constants: StageConstants,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankTwoReport {
    pub group: String,
    pub scope: SubgroupId,
    pub p: u64,
    pub n: u32,
    pub seed: u64,
    pub retries: usize,
    pub theta: f64,
    /// Handled by the cyclic construction instead.
    pub delegated: bool,
    /// Achieved `C_0, C_1, ...` for the accepted diagrams.
    pub clusteredness: Vec<u64>,
    pub stages: Vec<StageReport>,
    pub failed_stage: Option<usize>,
    pub bounds: Option<RankTwoBounds>,
    pub pair: Option<TightPairJson>,
}

#[derive(Clone, Debug)]
pub struct RankTwoRun {
    pub report: RankTwoReport,
    pub pair: Option<TightPair>,
}

fn weak_scheme_violation(cl: &CharLattice, scope: SubgroupId, a: &Diagram, t: &Diagram) -> Option<String> {
    let lat = cl.lattice();
    for h in lat.below(scope).ones().filter(|&h| h != lat.bottom()) {
        let (ah, th) = (a.get(h), t.get(h));
        if ah.is_empty() || th.is_empty() {
            return Some(format!("A({h}) or T({h}) is empty"));
        }
        if !cl.is_conj_invariant(ah) || !cl.is_conj_invariant(th) || !ah.is_disjoint(th) {
            return Some(format!("A({h}), T({h}) not conjugation-invariant and disjoint"));
        }
        for k in lat.below(h).ones().filter(|&k| k != h && k != lat.bottom()) {
            if ah.union(th).iter().any(|tau| t.get(k).contains(cl.res(h, k, tau))) {
                return Some(format!("R_{k}^{h}(A ∪ T)({h}) meets T({k})"));
            }
        }
    }
    None
}

/// The staged randomized construction on a rank-two `p`-subgroup `scope`;
/// cyclic subgroups go to [`cyclic_tight_pair_in`]. Running out of samples
/// is reported, not raised.
pub fn rank_two_tight_pair(cl: &CharLattice, scope: SubgroupId, opts: &RankTwoOptions) -> Result<RankTwoRun> {
    let (p, _) = prime_of(cl, scope)?;
    if p == 2 {
        return Err(Error::precondition("the rank-two construction needs an odd prime"));
    }
    match cl.lattice().p_rank(scope, p) {
        1 => {
            let tp = cyclic_tight_pair_in(cl, scope)?;
            let mut report = empty_report(cl, scope, opts)?;
            report.delegated = true;
            report.pair = Some(tp.to_json(cl));
            Ok(RankTwoRun { report, pair: Some(tp) })
        }
        2 => staged_tight_pair(cl, scope, opts),
        r => Err(Error::precondition(format!("subgroup {scope} has rank {r}, not two"))),
    }
}

fn empty_report(cl: &CharLattice, scope: SubgroupId, opts: &RankTwoOptions) -> Result<RankTwoReport> {
    let (p, n) = prime_of(cl, scope)?;
    Ok(RankTwoReport {
        group: cl.spec().to_string(),
        scope,
        p,
        n,
        seed: opts.seed,
        retries: opts.retries,
        theta: opts.theta,
        delegated: false,
        clusteredness: Vec::new(),
        stages: Vec::new(),
        failed_stage: None,
        bounds: Some(rank_two_bounds(n)?),
        pair: None,
    })
}

/// The staged pipeline on any `p`-subgroup with `p` odd.
///
/// Stage `i + 1` samples `D_i^{T_{i+1}}`, where `T_i` is the layer of order
/// `p^i` and `T_{n+1}` is every nontrivial subgroup, until the sample has
/// clusteredness at least `max(1, floor(θ C_i))` and, before the last
/// stage, every subgroup of the next layer has a nonempty pool. The result
/// is `D = ⟨A ∪ T⟩_R \ T` and `J = J[A ∪ T]` with `A = D_{n+1} \ D_n` and
/// `T = D_n`, returned only if it verifies.
pub fn staged_tight_pair(cl: &CharLattice, scope: SubgroupId, opts: &RankTwoOptions) -> Result<RankTwoRun> {
    let lat = cl.lattice();
    let (p, n) = prime_of(cl, scope)?;
    if p == 2 {
        return Err(Error::precondition("the staged construction needs an odd prime"));
    }
    let mut report = empty_report(cl, scope, opts)?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let below: Vec<SubgroupId> = lat.below(scope).ones().collect();
    let layer = |i: u32| -> Vec<SubgroupId> {
        if i <= n {
            below.iter().copied().filter(|&h| lat.order(h) == p.pow(i)).collect()
        } else {
            below.iter().copied().filter(|&h| h != lat.bottom()).collect()
        }
    };

    let mut diagrams = vec![Diagram::empty(cl)];
    let c0 = clusteredness(cl, scope, &diagrams[0])?;
    report.clusteredness.push(c0);
    let mut schedule_c = p as f64;
    for i in 0..=n {
        let t = layer(i + 1);
        let orders: Vec<u64> = t.iter().map(|&h| lat.order(h)).collect();
        let constants = stage_constants(p, n, schedule_c, &orders);
        schedule_c = constants.next_c;
        let prev_c = *report.clusteredness.last().unwrap();
        let threshold = ((opts.theta * prev_c as f64).floor() as u64).max(1);
        let next_layer = if i < n { layer(i + 2) } else { Vec::new() };

        let d = diagrams.last().unwrap();
        let mut stage = StageReport {
            stage: i as usize + 1,
            layer: t.clone(),
            threshold,
            attempts: 0,
            best: 0,
            empty_pools: 0,
            accepted: false,
            constants,
        };
        let mut accepted = None;
        while stage.attempts < opts.retries {
            stage.attempts += 1;
            let dt = sample_layer(cl, scope, d, &t, &mut rng)?;
            let bad = check_inductive_props(cl, scope, d, &dt, &t);
            if !bad.is_empty() {
                return Err(Error::Verification(format!("sampled diagram breaks {}", bad.join("; "))));
            }
            let c = clusteredness(cl, scope, &dt)?;
            stage.best = stage.best.max(c);
            if c < threshold {
                continue;
            }
            let j = Inductor::complement(cl, scope, &dt)?;
            if next_layer.iter().any(|&h| pool(cl, &j, h).is_empty()) {
                stage.empty_pools += 1;
                continue;
            }
            accepted = Some((dt, c));
            break;
        }
        stage.accepted = accepted.is_some();
        report.stages.push(stage);
        match accepted {
            Some((dt, c)) => {
                diagrams.push(dt);
                report.clusteredness.push(c);
            }
            None => {
                report.failed_stage = Some(i as usize + 1);
                return Ok(RankTwoRun { report, pair: None });
            }
        }
    }

    let last = &diagrams[n as usize + 1];
    let t = &diagrams[n as usize];
    let a = last.difference(t);
    if let Some(v) = weak_scheme_violation(cl, scope, &a, t) {
        return Err(Error::Verification(format!("(A, T) is not a weak generating scheme: {v}")));
    }
    let at = a.union(t);
    let j = Inductor::complement(cl, scope, &at)?;
    if let Some((k, h, chi)) = j.empty_fiber(cl) {
        return Err(Error::Verification(format!("J[A ∪ T]_{k}^{h}({chi}) is empty")));
    }
    let mut d = at.r_stabilize(cl).difference(t);
    for h in (0..cl.len()).filter(|&h| !lat.leq(h, scope)) {
        d.set(h, cl.empty(h));
    }
    let tp = TightPair::verified(cl, d, j, &opts.axioms)?;
    report.pair = Some(tp.to_json(cl));
    Ok(RankTwoRun { report, pair: Some(tp) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cl(s: &str) -> CharLattice {
        CharLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn empty_diagram_is_p_clustered() {
        for (s, p) in [("C5xC5", 5), ("C3xC9", 3), ("C25", 5)] {
            let c = cl(s);
            assert_eq!(clusteredness(&c, c.top(), &Diagram::empty(&c)).unwrap(), p);
        }
    }

    #[test]
    fn blocking_a_full_fiber_gives_zero() {
        // on C5 the trivial character always survives
        let c = cl("C5");
        let mut d = Diagram::empty(&c);
        d.set(1, c.set_of(1, 1..5));
        assert_eq!(clusteredness(&c, c.top(), &d).unwrap(), 1);
        // on C25, block every a with a = ±1 mod 5: the fiber over 1 ∈ Ĉ5 is empty
        let c = cl("C25");
        let mut d = Diagram::empty(&c);
        d.set(2, c.set_of(2, (0..25).filter(|a| a % 5 == 1 || a % 5 == 4)));
        assert_eq!(clusteredness(&c, c.top(), &d).unwrap(), 0);
    }

    #[test]
    fn sampling_on_c25_picks_a_conjugate_pair_in_c5() {
        let c = cl("C25");
        let d = Diagram::empty(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let dt = sample_dt(&c, c.top(), &d, &[1], &mut rng).unwrap();
        let v: Vec<u32> = dt.get(1).iter().collect();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0] + v[1], 5);
        assert!(dt.get(2).is_empty());
        assert!(check_inductive_props(&c, c.top(), &d, &dt, &[1]).is_empty());
        assert_eq!(sample_dt(&c, c.top(), &d, &[], &mut rng).unwrap(), d);
    }

    #[test]
    fn same_seed_same_run() {
        let c = cl("C5xC5");
        let opts = RankTwoOptions {
            seed: 11,
            retries: 8,
            ..Default::default()
        };
        let a = rank_two_tight_pair(&c, c.top(), &opts).unwrap();
        let b = rank_two_tight_pair(&c, c.top(), &opts).unwrap();
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn delegation_and_preconditions() {
        let c = cl("C25");
        let run = rank_two_tight_pair(&c, c.top(), &RankTwoOptions::default()).unwrap();
        assert!(run.report.delegated && run.pair.is_some());
        let c = cl("C2xC2");
        assert!(matches!(
            rank_two_tight_pair(&c, c.top(), &RankTwoOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn staged_pipeline_succeeds_on_cyclic_groups() {
        for g in ["C25", "C125", "C49"] {
            let c = cl(g);
            let mut wins = 0;
            for seed in 0..10 {
                let opts = RankTwoOptions { seed, retries: 16, ..Default::default() };
                let run = staged_tight_pair(&c, c.top(), &opts).unwrap();
                if let Some(tp) = run.pair {
                    assert!(tp.certificate().passed());
                    wins += 1;
                }
            }
            assert!(wins > 0, "{g}");
        }
    }
}
