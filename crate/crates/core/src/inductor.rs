//! Sub-inductors: families `J_K^H : P(K̂) -> P(Ĥ)` refining induction.
//!
//! Every inductor carries a scope subgroup `B` and is defined for
//! `K <= H <= B`. Whole-group inductors have `B = G`; scoped ones are the
//! factors of tensor products over coprime primary parts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chars::{CharLattice, CharSet};
use crate::diagram::{Diagram, DiagramJson};
use crate::error::{Error, Result};
use crate::group::SubgroupId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inductor {
    scope: SubgroupId,
    kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Standard,
    Chain(ChainData),
    Complement(ComplementData),
    Tensor(Box<Inductor>, Box<Inductor>),
}

/// Cover maps `χ ↦ {s(χ), conj s(conj χ)}` along `1 = H_0 < ... < H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ChainData {
    chain: Vec<SubgroupId>,
    position: Vec<Option<usize>>,
    sections: Vec<Vec<u32>>,
    cover: Vec<Vec<[u32; 2]>>,
}

/// `J[D]_K^H(U) = I_K^H(U) ∩ clean(K, H)`, where `clean(K, H)` holds the
/// `τ` with `τ|_M ∉ D(M)` for every `M <= H` with `M ≰ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ComplementData {
    diagram: Diagram,
    clean: Vec<Option<CharSet>>,
}

impl Inductor {
    /// Plain induction `I`.
    pub fn standard(cl: &CharLattice, scope: SubgroupId) -> Self {
        assert!(scope < cl.len());
        Inductor {
            scope,
            kind: Kind::Standard,
        }
    }

    /// Chain inductor of a cyclic `p`-subgroup with the canonical section
    /// `s(χ)` = the character of `H_{i+1}` with the same representative.
    pub fn chain(cl: &CharLattice, scope: SubgroupId) -> Result<Self> {
        let chain = chain_below(cl, scope)?;
        let sections = chain
            .windows(2)
            .map(|w| {
                (0..cl.num_chars(w[0]) as u32)
                    .map(|chi| cl.char_of(w[1], cl.rep(w[0], chi)))
                    .collect()
            })
            .collect();
        Self::chain_with_sections(cl, scope, sections)
    }

    /// Chain inductor with explicit sections, `sections[i][χ] ∈ Ĥ_{i+1}`.
    pub fn chain_with_sections(cl: &CharLattice, scope: SubgroupId, sections: Vec<Vec<u32>>) -> Result<Self> {
        let chain = chain_below(cl, scope)?;
        if sections.len() + 1 != chain.len() {
            return Err(Error::invalid("one section per cover of the chain is required"));
        }
        let mut cover = Vec::with_capacity(sections.len());
        for (i, s) in sections.iter().enumerate() {
            let (lo, hi) = (chain[i], chain[i + 1]);
            if s.len() != cl.num_chars(lo) || s.iter().any(|&x| x as usize >= cl.num_chars(hi)) {
                return Err(Error::invalid(format!("section {i} has the wrong shape")));
            }
            if s[0] != 0 {
                return Err(Error::invalid(format!("section {i} does not fix the trivial character")));
            }
            for (chi, &t) in s.iter().enumerate() {
                if cl.res(hi, lo, t) != chi as u32 {
                    return Err(Error::invalid(format!("section {i} is not a section of restriction")));
                }
            }
            cover.push(
                (0..s.len() as u32)
                    .map(|chi| [s[chi as usize], cl.conj(hi, s[cl.conj(lo, chi) as usize])])
                    .collect(),
            );
        }
        let mut position = vec![None; cl.len()];
        for (i, &h) in chain.iter().enumerate() {
            position[h] = Some(i);
        }
        Ok(Inductor {
            scope,
            kind: Kind::Chain(ChainData {
                chain,
                position,
                sections,
                cover,
            }),
        })
    }

    /// `J[D]`. Requires `D` conjugation-invariant with `1_H ∉ D(H)`; the
    /// cover axiom is not implied and must be checked separately.
    pub fn complement(cl: &CharLattice, scope: SubgroupId, d: &Diagram) -> Result<Self> {
        if !d.is_gal_invariant(cl) {
            return Err(Error::precondition("J[D] needs a conjugation-invariant diagram"));
        }
        if let Some(h) = (0..cl.len()).find(|&h| d.get(h).contains(0)) {
            return Err(Error::precondition(format!("J[D] needs 1_H outside D(H), violated at {h}")));
        }
        let lat = cl.lattice();
        let n = cl.len();
        let mut clean = vec![None; n * n];
        for h in lat.below(scope).ones() {
            // the levels M <= H at which each character of H meets D
            let hits: Vec<Vec<usize>> = (0..cl.num_chars(h) as u32)
                .map(|tau| {
                    lat.below(h)
                        .ones()
                        .filter(|&m| d.get(m).contains(cl.res(h, m, tau)))
                        .collect()
                })
                .collect();
            for k in lat.below(h).ones() {
                let mut set = cl.empty(h);
                for (tau, ms) in hits.iter().enumerate() {
                    if ms.iter().all(|&m| lat.leq(m, k)) {
                        set.insert(tau as u32);
                    }
                }
                clean[k * n + h] = Some(set);
            }
        }
        Ok(Inductor {
            scope,
            kind: Kind::Complement(ComplementData {
                diagram: d.clone(),
                clean,
            }),
        })
    }

    /// `J ⊗ J'` for inductors on subgroups of coprime order. The scope is
    /// the join of the two scopes.
    pub fn tensor(cl: &CharLattice, a: Inductor, b: Inductor) -> Result<Self> {
        let lat = cl.lattice();
        let (p, q) = (a.scope, b.scope);
        if crate::group::gcd(lat.order(p), lat.order(q)) != 1 {
            return Err(Error::precondition("tensor factors must have coprime orders"));
        }
        Ok(Inductor {
            scope: lat.join(p, q),
            kind: Kind::Tensor(Box::new(a), Box::new(b)),
        })
    }

    pub fn scope(&self) -> SubgroupId {
        self.scope
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Standard => "standard",
            Kind::Chain(_) => "chain",
            Kind::Complement(_) => "complement",
            Kind::Tensor(..) => "tensor",
        }
    }

    /// Tensor factors, if any.
    pub fn factors(&self) -> Option<(&Inductor, &Inductor)> {
        match &self.kind {
            Kind::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Diagram of a complement inductor.
    pub fn complement_diagram(&self) -> Option<&Diagram> {
        match &self.kind {
            Kind::Complement(c) => Some(&c.diagram),
            _ => None,
        }
    }

    /// `J_K^H(χ)`. Panics unless `K <= H <= scope`.
    pub fn apply(&self, cl: &CharLattice, k: SubgroupId, h: SubgroupId, chi: u32) -> CharSet {
        self.assert_pair(cl, k, h);
        match &self.kind {
            Kind::Standard => cl.ind_set(&cl.singleton(k, chi), h),
            Kind::Chain(c) => {
                let (i, j) = (c.position[k].unwrap(), c.position[h].unwrap());
                let mut cur = cl.singleton(k, chi);
                for level in i..j {
                    let mut next = cl.empty(c.chain[level + 1]);
                    for x in cur.iter() {
                        for &y in &c.cover[level][x as usize] {
                            next.insert(y);
                        }
                    }
                    cur = next;
                }
                cur
            }
            Kind::Complement(c) => {
                let mut out = cl.ind_set(&cl.singleton(k, chi), h);
                out.intersect_with(c.clean(cl.len(), k, h));
                out
            }
            Kind::Tensor(a, b) => {
                let lat = cl.lattice();
                let side = |f: &Inductor| {
                    let (kf, hf) = (lat.meet(k, f.scope), lat.meet(h, f.scope));
                    cl.ind_set(&f.apply(cl, kf, hf, cl.res(k, kf, chi)), h)
                };
                let mut out = side(a);
                out.intersect_with(&side(b));
                out
            }
        }
    }

    /// `J_K^H(U)`, extended by unions. Panics unless `K <= H <= scope`.
    pub fn apply_set(&self, cl: &CharLattice, k: SubgroupId, h: SubgroupId, u: &CharSet) -> CharSet {
        self.assert_pair(cl, k, h);
        assert_eq!(u.subgroup(), k);
        match &self.kind {
            Kind::Standard => cl.ind_set(u, h),
            Kind::Complement(c) => {
                let mut out = cl.ind_set(u, h);
                out.intersect_with(c.clean(cl.len(), k, h));
                out
            }
            _ => {
                let mut out = cl.empty(h);
                for chi in u.iter() {
                    out.union_with(&self.apply(cl, k, h, chi));
                }
                out
            }
        }
    }

    /// `|J_K^H(χ)|` for every `χ ∈ K̂`.
    pub fn fiber_sizes(&self, cl: &CharLattice, k: SubgroupId, h: SubgroupId) -> Vec<usize> {
        self.assert_pair(cl, k, h);
        match &self.kind {
            Kind::Complement(c) => {
                let mut count = vec![0; cl.num_chars(k)];
                for tau in c.clean(cl.len(), k, h).iter() {
                    count[cl.res(h, k, tau) as usize] += 1;
                }
                count
            }
            _ => (0..cl.num_chars(k) as u32).map(|chi| self.apply(cl, k, h, chi).len()).collect(),
        }
    }

    /// Checked variant of [`Inductor::apply_set`].
    pub fn try_apply_set(&self, cl: &CharLattice, k: SubgroupId, h: SubgroupId, u: &CharSet) -> Result<CharSet> {
        if !cl.leq(k, h) {
            return Err(Error::NotContained { k, h });
        }
        if !cl.leq(h, self.scope) {
            return Err(Error::NotContained { k: h, h: self.scope });
        }
        if u.subgroup() != k {
            return Err(Error::invalid("input set does not live at the source subgroup"));
        }
        Ok(self.apply_set(cl, k, h, u))
    }

    fn assert_pair(&self, cl: &CharLattice, k: SubgroupId, h: SubgroupId) {
        assert!(
            cl.leq(k, h) && cl.leq(h, self.scope),
            "inductor evaluated outside K <= H <= scope (K={k}, H={h}, scope={})",
            self.scope
        );
    }

    /// `Res_J(H) = ⋃_{K < H} J_K^H(K̂)`.
    pub fn residue(&self, cl: &CharLattice, h: SubgroupId) -> CharSet {
        let mut out = cl.empty(h);
        for k in cl.lattice().below(h).ones() {
            if k != h {
                out.union_with(&self.apply_set(cl, k, h, &cl.full(k)));
            }
        }
        out
    }

    /// First `(K, H, χ)` with `J_K^H(χ) = ∅`, if any.
    pub fn empty_fiber(&self, cl: &CharLattice) -> Option<(SubgroupId, SubgroupId, u32)> {
        let lat = cl.lattice();
        for h in lat.below(self.scope).ones() {
            for k in lat.below(h).ones() {
                if let Kind::Complement(c) = &self.kind {
                    // J(χ) is empty iff no clean character restricts to χ
                    let mut hit = cl.empty(k);
                    for tau in c.clean(cl.len(), k, h).iter() {
                        hit.insert(cl.res(h, k, tau));
                    }
                    if let Some(chi) = (0..cl.num_chars(k) as u32).find(|&x| !hit.contains(x)) {
                        return Some((k, h, chi));
                    }
                    continue;
                }
                for chi in 0..cl.num_chars(k) as u32 {
                    if self.apply(cl, k, h, chi).is_empty() {
                        return Some((k, h, chi));
                    }
                }
            }
        }
        None
    }

    /// `J_K^H(χ) ≠ ∅` everywhere, which together with the other axioms
    /// gives the cover axiom.
    pub fn cover_nonempty(&self, cl: &CharLattice) -> bool {
        self.empty_fiber(cl).is_none()
    }

    pub fn to_json(&self, cl: &CharLattice) -> InductorJson {
        let scope = self.scope;
        match &self.kind {
            Kind::Standard => InductorJson::Standard { scope },
            Kind::Chain(c) => InductorJson::Chain {
                scope,
                chain: c.chain.clone(),
                sections: c
                    .sections
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.iter()
                            .enumerate()
                            .map(|(chi, &t)| SectionEntry {
                                from: cl.rep_coords(c.chain[i], chi as u32).to_vec(),
                                to: cl.rep_coords(c.chain[i + 1], t).to_vec(),
                            })
                            .collect()
                    })
                    .collect(),
            },
            Kind::Complement(c) => InductorJson::Complement {
                scope,
                diagram: c.diagram.to_json(cl),
            },
            Kind::Tensor(a, b) => InductorJson::Tensor {
                scope,
                left: Box::new(a.to_json(cl)),
                right: Box::new(b.to_json(cl)),
            },
        }
    }

    pub fn from_json(cl: &CharLattice, j: &InductorJson) -> Result<Self> {
        let check_scope = |s: usize| {
            if s < cl.len() {
                Ok(s)
            } else {
                Err(Error::invalid(format!("no subgroup with id {s}")))
            }
        };
        let ind = match j {
            InductorJson::Standard { scope } => Inductor::standard(cl, check_scope(*scope)?),
            InductorJson::Chain { scope, chain, sections } => {
                let scope = check_scope(*scope)?;
                if chain_below(cl, scope)? != *chain {
                    return Err(Error::invalid("chain does not match the subgroups of the scope"));
                }
                let mut tables = Vec::with_capacity(sections.len());
                for (i, level) in sections.iter().enumerate() {
                    let (lo, hi) = match (chain.get(i), chain.get(i + 1)) {
                        (Some(&lo), Some(&hi)) => (lo, hi),
                        _ => return Err(Error::invalid("more sections than covers")),
                    };
                    let mut table = vec![u32::MAX; cl.num_chars(lo)];
                    for e in level {
                        let from = cl.char_from_coords(lo, &e.from)? as usize;
                        table[from] = cl.char_from_coords(hi, &e.to)?;
                    }
                    if table.contains(&u32::MAX) {
                        return Err(Error::invalid(format!("section {i} is not total")));
                    }
                    tables.push(table);
                }
                Inductor::chain_with_sections(cl, scope, tables)?
            }
            InductorJson::Complement { scope, diagram } => {
                Inductor::complement(cl, check_scope(*scope)?, &Diagram::from_json(cl, diagram)?)?
            }
            InductorJson::Tensor { scope, left, right } => {
                let t = Inductor::tensor(cl, Inductor::from_json(cl, left)?, Inductor::from_json(cl, right)?)?;
                if t.scope != *scope {
                    return Err(Error::invalid("tensor scope is not the join of its factors"));
                }
                t
            }
        };
        Ok(ind)
    }
}

impl ComplementData {
    fn clean(&self, n: usize, k: SubgroupId, h: SubgroupId) -> &CharSet {
        self.clean[k * n + h].as_ref().expect("pair inside the scope")
    }
}

/// The subgroups of a cyclic `p`-group `scope`, ascending.
fn chain_below(cl: &CharLattice, scope: SubgroupId) -> Result<Vec<SubgroupId>> {
    let lat = cl.lattice();
    let chain: Vec<usize> = lat.below(scope).ones().collect();
    let total = chain.windows(2).all(|w| lat.leq(w[0], w[1]));
    let prime_power = crate::group::factorize(lat.order(scope)).len() <= 1;
    if !total || !prime_power {
        return Err(Error::precondition(format!(
            "subgroup {scope} is not a cyclic group of prime-power order"
        )));
    }
    Ok(chain)
}

/// `I_{H∧P}^H Res_J(H∧P) ∪ I_{H∧Q}^H Res_J'(H∧Q)`, the predicted residue of
/// a tensor product at `H`.
pub fn tensor_residue_formula(cl: &CharLattice, a: &Inductor, b: &Inductor, h: SubgroupId) -> CharSet {
    let lat = cl.lattice();
    let (hp, hq) = (lat.meet(h, a.scope()), lat.meet(h, b.scope()));
    let mut out = cl.ind_set(&a.residue(cl, hp), h);
    out.union_with(&cl.ind_set(&b.residue(cl, hq), h));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionEntry {
    pub from: Vec<u64>,
    pub to: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InductorJson {
    Standard {
        scope: usize,
    },
    Chain {
        scope: usize,
        chain: Vec<usize>,
        sections: Vec<Vec<SectionEntry>>,
    },
    Complement {
        scope: usize,
        diagram: DiagramJson,
    },
    Tensor {
        scope: usize,
        left: Box<InductorJson>,
        right: Box<InductorJson>,
    },
}

/// How thoroughly to check the axioms.
#[derive(Clone, Copy, Debug)]
pub struct AxiomCheck {
    /// Random subsets tested per source level, on top of all singletons.
    pub random_sets: usize,
    /// `Some(m)`: only `m` random pairs or triples per axiom and level.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl Default for AxiomCheck {
    fn default() -> Self {
        AxiomCheck {
            random_sets: 2,
            sample: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    /// 1 join and equivariance, 2 transitivity, 3 cover, 4 restriction, 5 unit.
    pub axiom: u8,
    pub k: SubgroupId,
    pub h: SubgroupId,
    pub l: Option<SubgroupId>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// Number of individual set comparisons performed.
    pub checks: u64,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_axioms(&self) -> Vec<u8> {
        let mut a: Vec<u8> = self.failures.iter().map(|f| f.axiom).collect();
        a.sort_unstable();
        a.dedup();
        a
    }
}

const MAX_FAILURES: usize = 64;

/// Checks the five sub-inductor axioms for all levels below the scope, on
/// singletons and random sets. Work is split by the top subgroup `H` and
/// merged in id order, so the report does not depend on the thread count.
pub fn check_subinductor_axioms(cl: &CharLattice, j: &Inductor, opts: &AxiomCheck) -> AxiomReport {
    let hs: Vec<usize> = cl.lattice().below(j.scope()).ones().collect();
    let parts: Vec<AxiomReport> = hs.par_iter().map(|&h| check_at(cl, j, h, opts)).collect();
    let mut report = AxiomReport::default();
    for p in parts {
        report.checks += p.checks;
        report.failures.extend(p.failures);
    }
    report.failures.truncate(MAX_FAILURES);
    report
}

fn random_subset(rng: &mut ChaCha8Rng, cl: &CharLattice, k: SubgroupId) -> CharSet {
    let mut s = cl.empty(k);
    for chi in 0..cl.num_chars(k) as u32 {
        if rng.gen_bool(0.5) {
            s.insert(chi);
        }
    }
    s
}

fn check_at(cl: &CharLattice, j: &Inductor, h: SubgroupId, opts: &AxiomCheck) -> AxiomReport {
    let lat = cl.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (h as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rep = AxiomReport::default();
    let fail = |rep: &mut AxiomReport, axiom, k, l, detail: String| {
        if rep.failures.len() < MAX_FAILURES {
            rep.failures.push(AxiomFailure { axiom, k, h, l, detail });
        }
    };
    let below: Vec<usize> = lat.below(h).ones().collect();
    let pick = |rng: &mut ChaCha8Rng, items: Vec<usize>| -> Vec<usize> {
        match opts.sample {
            Some(m) if items.len() > m => (0..m).map(|_| items[rng.gen_range(0..items.len())]).collect(),
            _ => items,
        }
    };
    let inputs = |rng: &mut ChaCha8Rng, k: usize| -> Vec<CharSet> {
        let mut v: Vec<CharSet> = (0..cl.num_chars(k) as u32).map(|c| cl.singleton(k, c)).collect();
        for _ in 0..opts.random_sets {
            v.push(random_subset(rng, cl, k));
        }
        v
    };

    let ks = pick(&mut rng, below.clone());
    for &k in &ks {
        let ins = inputs(&mut rng, k);
        // 1: join homomorphism and equivariance
        rep.checks += 1;
        if !j.apply_set(cl, k, h, &cl.empty(k)).is_empty() {
            fail(&mut rep, 1, k, None, "image of the empty set is nonempty".into());
        }
        for chi in 0..cl.num_chars(k) as u32 {
            rep.checks += 1;
            let lhs = j.apply(cl, k, h, cl.conj(k, chi));
            let rhs = cl.conjugate_set(&j.apply(cl, k, h, chi));
            if lhs != rhs {
                fail(&mut rep, 1, k, None, format!("J(conj χ) != conj J(χ) for χ = {chi}"));
            }
        }
        for u in &ins[cl.num_chars(k)..] {
            rep.checks += 2;
            let direct = j.apply_set(cl, k, h, u);
            let mut joined = cl.empty(h);
            for chi in u.iter() {
                joined.union_with(&j.apply(cl, k, h, chi));
            }
            if direct != joined {
                fail(&mut rep, 1, k, None, "image of a set is not the union of singleton images".into());
            }
            if j.apply_set(cl, k, h, &cl.conjugate_set(u)) != cl.conjugate_set(&direct) {
                fail(&mut rep, 1, k, None, "image of a set is not equivariant".into());
            }
        }
        // 3: cover
        for u in &ins {
            rep.checks += 1;
            if cl.res_set(&j.apply_set(cl, k, h, u), k) != *u {
                fail(&mut rep, 3, k, None, "R J(U) != U".into());
            }
        }
        // 5: unit
        rep.checks += 1;
        if !j.apply(cl, k, h, 0).contains(0) {
            fail(&mut rep, 5, k, None, "1_H ∉ J(1_K)".into());
        }
        // 2: transitivity through every intermediate L
        let ls: Vec<usize> = lat.above(k).ones().filter(|&l| lat.leq(l, h)).collect();
        for l in pick(&mut rng, ls) {
            for u in &ins {
                rep.checks += 1;
                let two = j.apply_set(cl, l, h, &j.apply_set(cl, k, l, u));
                if two != j.apply_set(cl, k, h, u) {
                    fail(&mut rep, 2, k, Some(l), "J_L^H J_K^L != J_K^H".into());
                }
            }
        }
    }
    // 4: restriction, R_K^H J_L^H(U) ⊆ J_{K∧L}^K R_{K∧L}^L(U) for K, L <= H
    let pairs: Vec<usize> = below
        .iter()
        .flat_map(|&k| below.iter().map(move |&l| k * cl.len() + l))
        .collect();
    for kl in pick(&mut rng, pairs) {
        let (k, l) = (kl / cl.len(), kl % cl.len());
        let m = lat.meet(k, l);
        for u in inputs(&mut rng, l) {
            rep.checks += 1;
            let lhs = cl.res_set(&j.apply_set(cl, l, h, &u), k);
            let rhs = j.apply_set(cl, m, k, &cl.res_set(&u, m));
            if !lhs.is_subset(&rhs) {
                fail(&mut rep, 4, k, Some(l), "R_K^H J_L^H(U) ⊄ J_{K∧L}^K R_{K∧L}^L(U)".into());
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cl(s: &str) -> CharLattice {
        CharLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn standard_inductor_is_induction() {
        let c = cl("C12");
        let i = Inductor::standard(&c, c.top());
        for h in 0..c.len() {
            for k in c.lattice().below(h).ones() {
                assert_eq!(i.apply(&c, k, h, 0), c.ind_set(&c.singleton(k, 0), h));
            }
        }
        assert!(check_subinductor_axioms(&c, &i, &AxiomCheck::default()).passed());
        assert!(i.residue(&c, 0).is_empty());
        for h in 1..c.len() {
            assert!(i.residue(&c, h).is_full());
        }
    }

    #[test]
    fn canonical_chain_on_c25() {
        let c = cl("C25");
        let j = Inductor::chain(&c, c.top()).unwrap();
        let report = check_subinductor_axioms(&c, &j, &AxiomCheck::default());
        assert!(report.passed(), "{:?}", report.failures);
        // fibres over one cover have at most two elements
        for chi in 0..5 {
            let img = j.apply(&c, 1, 2, chi);
            assert!(!img.is_empty() && img.len() <= 2);
        }
        assert!(Inductor::chain(&cl("C2xC2"), 4).is_err());
        assert!(Inductor::chain(&cl("C6"), 3).is_err());
    }

    #[test]
    fn chain_without_conjugate_breaks_equivariance() {
        let c = cl("C25");
        let mut j = Inductor::chain(&c, c.top()).unwrap();
        if let Kind::Chain(data) = &mut j.kind {
            for (level, s) in data.cover.iter_mut().zip(&data.sections) {
                for (chi, pair) in level.iter_mut().enumerate() {
                    *pair = [s[chi], s[chi]];
                }
            }
        }
        let report = check_subinductor_axioms(&c, &j, &AxiomCheck::default());
        assert!(report.failed_axioms().contains(&1));
    }

    #[test]
    fn complement_of_empty_diagram_is_standard() {
        let c = cl("C3xC3");
        let j = Inductor::complement(&c, c.top(), &Diagram::empty(&c)).unwrap();
        let i = Inductor::standard(&c, c.top());
        for h in 0..c.len() {
            for k in c.lattice().below(h).ones() {
                for chi in 0..c.num_chars(k) as u32 {
                    assert_eq!(j.apply(&c, k, h, chi), i.apply(&c, k, h, chi));
                }
            }
        }
    }

    #[test]
    fn complement_on_c4() {
        let c = cl("C4");
        let mut d = Diagram::empty(&c);
        d.get_mut(1).insert(1);
        let j = Inductor::complement(&c, c.top(), &d).unwrap();
        let img = j.apply(&c, 0, 2, 0);
        let reps: Vec<u64> = img.iter().map(|t| c.rep_coords(2, t)[0]).collect();
        assert_eq!(reps, vec![0, 2]);
        assert!(j.cover_nonempty(&c));
        // D(C_4) = the odd characters is a full fibre over the nontrivial
        // character of C_2
        let mut blocked = Diagram::empty(&c);
        blocked.set(2, c.set_of(2, [1, 3]));
        let j = Inductor::complement(&c, c.top(), &blocked).unwrap();
        assert_eq!(j.empty_fiber(&c), Some((1, 2, 1)));
        assert!(!j.cover_nonempty(&c));
        assert!(Inductor::standard(&c, c.top()).cover_nonempty(&c));
        let mut bad = Diagram::empty(&c);
        bad.get_mut(1).insert(0);
        assert!(Inductor::complement(&c, c.top(), &bad).is_err());
    }

    #[test]
    fn tensor_of_standard_inductors() {
        let c = cl("C4xC9");
        let lat = c.lattice();
        let p = lat.primary_subgroup(2);
        let q = lat.primary_subgroup(3);
        let t = Inductor::tensor(&c, Inductor::standard(&c, p), Inductor::standard(&c, q)).unwrap();
        assert_eq!(t.scope(), c.top());
        assert!(check_subinductor_axioms(&c, &t, &AxiomCheck::default()).passed());
        let i = Inductor::standard(&c, c.top());
        for h in 0..c.len() {
            let (a, b) = t.factors().unwrap();
            assert_eq!(t.residue(&c, h), tensor_residue_formula(&c, a, b, h));
            assert_eq!(t.residue(&c, h), i.residue(&c, h));
        }
        assert!(Inductor::tensor(&c, Inductor::standard(&c, p), Inductor::standard(&c, c.top())).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = cl("C25xC7");
        let lat = c.lattice();
        let a = Inductor::chain(&c, lat.primary_subgroup(5)).unwrap();
        let b = Inductor::chain(&c, lat.primary_subgroup(7)).unwrap();
        let t = Inductor::tensor(&c, a, b).unwrap();
        let text = serde_json::to_string(&t.to_json(&c)).unwrap();
        let back: InductorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Inductor::from_json(&c, &back).unwrap(), t);
    }
}
