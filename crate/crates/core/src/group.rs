//! Finite Abelian groups given in factored form `C_{d_1} x ... x C_{d_k}`,
//! and their full subgroup lattices.
//!
//! Elements are residue tuples. Internally an element is addressed by its
//! mixed-radix index with the first coordinate most significant, so index
//! order coincides with lexicographic order on tuples.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type SubgroupId = usize;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `log_p(n)` when `n` is a power of the prime `p`.
pub fn log_prime_power(n: u64, p: u64) -> Option<u32> {
    let mut n = n;
    let mut e = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// The `p`-primary part of a group spec: which factors carry a power of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryPart {
    pub prime: u64,
    /// `(factor index, p^v)` for every factor whose order is divisible by `p`.
    pub factors: Vec<(usize, u64)>,
}

impl PrimaryPart {
    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&(_, q)| q).product()
    }

    /// `n = log_p |P|`.
    pub fn log_order(&self) -> u32 {
        log_prime_power(self.order(), self.prime).expect("prime power")
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// `C_{d_1} x ... x C_{d_k}`, every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u64>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::GroupSyntax {
                spec: String::new(),
                reason: "at least one cyclic factor is required".into(),
            });
        }
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::GroupSyntax {
                spec: Self::render(&orders),
                reason: format!("cyclic factor order {d} is below 2"),
            });
        }
        Ok(GroupSpec { orders })
    }

    /// Parses `C<int>(xC<int>)*`.
    pub fn parse(spec: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::GroupSyntax {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let s = spec.trim();
        if s.is_empty() {
            return Err(syntax("empty spec"));
        }
        let mut orders = Vec::new();
        for part in s.split('x') {
            let digits = part
                .strip_prefix('C')
                .ok_or_else(|| syntax("each factor must look like C<int>"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax("factor order must be a decimal integer"));
            }
            let d: u64 = digits
                .parse()
                .map_err(|_| syntax("factor order out of range"))?;
            orders.push(d);
        }
        GroupSpec::new(orders).map_err(|e| match e {
            Error::GroupSyntax { reason, .. } => syntax(&reason),
            other => other,
        })
    }

    fn render(orders: &[u64]) -> String {
        orders
            .iter()
            .map(|d| format!("C{d}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn num_factors(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1, |acc, &d| acc / gcd(acc, d) * d)
    }

    /// One entry per prime dividing `|G|`, primes ascending.
    pub fn primary_parts(&self) -> Vec<PrimaryPart> {
        let primes: Vec<u64> = factorize(self.order()).into_iter().map(|(p, _)| p).collect();
        primes
            .into_iter()
            .map(|p| {
                let factors = self
                    .orders
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &d)| {
                        let mut q = 1;
                        let mut d = d;
                        while d % p == 0 {
                            d /= p;
                            q *= p;
                        }
                        (q > 1).then_some((i, q))
                    })
                    .collect();
                PrimaryPart { prime: p, factors }
            })
            .collect()
    }

    /// `G x G'`, factors concatenated.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        GroupSpec { orders }
    }

    pub fn is_p_group(&self) -> bool {
        self.primary_parts().len() == 1
    }

    /// One representative per isomorphism class of Abelian groups of order
    /// `n >= 2`, as products of cyclic groups of prime-power order.
    pub fn abelian_of_order(n: u64) -> Vec<GroupSpec> {
        fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
            if e == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=e.min(max)).rev() {
                for mut rest in partitions(e - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        if n < 2 {
            return Vec::new();
        }
        let mut specs: Vec<Vec<u64>> = vec![vec![]];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for s in &specs {
                for part in partitions(e, e) {
                    let mut orders = s.clone();
                    orders.extend(part.iter().map(|&k| p.pow(k)));
                    next.push(orders);
                }
            }
            specs = next;
        }
        specs.into_iter().map(|orders| GroupSpec { orders }).collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Self::render(&self.orders))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

/// Size limits for lattice construction.
#[derive(Clone, Copy, Debug)]
pub struct LatticeBudget {
    pub max_elements: u64,
    pub max_subgroups: usize,
}

impl Default for LatticeBudget {
    fn default() -> Self {
        LatticeBudget {
            max_elements: 10_000,
            max_subgroups: 5_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub id: SubgroupId,
    pub order: u64,
    /// Sorted element indices.
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
}

/// All subgroups of `G` in canonical order (by order, then by the
/// lexicographic sorted element list), with order, meet and join tables.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    spec: GroupSpec,
    size: usize,
    coords: Vec<u64>,
    strides: Vec<u64>,
    subgroups: Vec<Subgroup>,
    members: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
    by_elements: HashMap<Vec<u32>, SubgroupId>,
}

struct ElementArith<'a> {
    orders: &'a [u64],
    strides: Vec<u64>,
}

impl<'a> ElementArith<'a> {
    fn new(orders: &'a [u64]) -> Self {
        let mut strides = vec![1u64; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        ElementArith { orders, strides }
    }

    fn coord(&self, x: u64, i: usize) -> u64 {
        (x / self.strides[i]) % self.orders[i]
    }

    fn add(&self, x: u64, y: u64) -> u64 {
        (0..self.orders.len())
            .map(|i| ((self.coord(x, i) + self.coord(y, i)) % self.orders[i]) * self.strides[i])
            .sum()
    }
}

/// Subgroups of the group generated by `pool`, enumerated by closing every
/// found subgroup under one more element and deduplicating by element set.
fn subgroups_by_closure(arith: &ElementArith<'_>, size: usize, pool: &[u64], budget: usize) -> Result<Vec<Vec<u32>>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    let trivial = vec![0u32];
    seen.insert(trivial.clone());
    queue.push_back(trivial);
    let mut out = Vec::new();
    let mut member = FixedBitSet::with_capacity(size);
    while let Some(sub) = queue.pop_front() {
        member.clear();
        for &x in &sub {
            member.insert(x as usize);
        }
        for &g in pool {
            if member.contains(g as usize) {
                continue;
            }
            let grown = close_with(arith, size, &sub, &member, g);
            if seen.insert(grown.clone()) {
                if seen.len() > budget {
                    return Err(Error::Budget(format!(
                        "more than {budget} subgroups in a primary part"
                    )));
                }
                queue.push_back(grown);
            }
        }
        out.push(sub);
    }
    Ok(out)
}

/// Elements of `<S, g>` for a subgroup `S` (given both as list and bitset).
fn close_with(arith: &ElementArith<'_>, size: usize, sub: &[u32], member: &FixedBitSet, g: u64) -> Vec<u32> {
    let mut all = FixedBitSet::with_capacity(size);
    for &x in sub {
        all.insert(x as usize);
    }
    let mut shift = g;
    while !member.contains(shift as usize) {
        for &x in sub {
            all.insert(arith.add(x as u64, shift) as usize);
        }
        shift = arith.add(shift, g);
    }
    all.ones().map(|x| x as u32).collect()
}

fn sumset(arith: &ElementArith<'_>, size: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut all = FixedBitSet::with_capacity(size);
    for &x in a {
        for &y in b {
            all.insert(arith.add(x as u64, y as u64) as usize);
        }
    }
    all.ones().map(|x| x as u32).collect()
}

impl SubgroupLattice {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        Self::build_with_budget(spec, LatticeBudget::default())
    }

    pub fn build_with_budget(spec: &GroupSpec, budget: LatticeBudget) -> Result<Self> {
        let order = spec.order();
        if order > budget.max_elements {
            return Err(Error::Budget(format!(
                "|G| = {order} exceeds the element budget {}",
                budget.max_elements
            )));
        }
        let size = order as usize;
        let arith = ElementArith::new(spec.orders());

        // Subgroups of each primary part, then products across coprime parts.
        let mut per_prime: Vec<Vec<Vec<u32>>> = Vec::new();
        for part in spec.primary_parts() {
            let pool: Vec<u64> = (0..order)
                .filter(|&x| {
                    (0..spec.num_factors()).all(|i| {
                        let d = spec.orders()[i];
                        let q = part
                            .factors
                            .iter()
                            .find(|&&(j, _)| j == i)
                            .map_or(1, |&(_, q)| q);
                        arith.coord(x, i) % (d / q) == 0
                    })
                })
                .collect();
            per_prime.push(subgroups_by_closure(&arith, size, &pool, budget.max_subgroups)?);
        }
        let total: usize = per_prime.iter().map(Vec::len).product();
        if total > budget.max_subgroups {
            return Err(Error::Budget(format!(
                "{total} subgroups exceed the subgroup budget {}",
                budget.max_subgroups
            )));
        }
        let mut sets: Vec<Vec<u32>> = vec![vec![0]];
        for part in &per_prime {
            let mut next = Vec::with_capacity(sets.len() * part.len());
            for a in &sets {
                for b in part {
                    next.push(sumset(&arith, size, a, b));
                }
            }
            sets = next;
        }
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let n = sets.len();
        let mut members = Vec::with_capacity(n);
        let mut subgroups = Vec::with_capacity(n);
        let mut by_elements = HashMap::with_capacity(n);
        for (id, elements) in sets.into_iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(size);
            for &x in &elements {
                bits.insert(x as usize);
            }
            let generators = greedy_generators(&arith, size, &elements);
            by_elements.insert(elements.clone(), id);
            subgroups.push(Subgroup {
                id,
                order: elements.len() as u64,
                elements,
                generators,
            });
            members.push(bits);
        }

        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for k in 0..n {
            for h in k..n {
                let kk = &subgroups[k];
                if subgroups[h].order % kk.order == 0
                    && kk.elements.iter().all(|&x| members[h].contains(x as usize))
                {
                    below[h].insert(k);
                    above[k].insert(h);
                }
            }
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut lower = below[a].clone();
                lower.intersect_with(&below[b]);
                let m = lower.maximum().expect("trivial subgroup is a lower bound") as u32;
                let mut upper = above[a].clone();
                upper.intersect_with(&above[b]);
                let j = upper.minimum().expect("G is an upper bound") as u32;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }

        let coords = (0..order)
            .flat_map(|x| (0..spec.num_factors()).map(move |i| (x, i)))
            .map(|(x, i)| arith.coord(x, i))
            .collect();
        Ok(SubgroupLattice {
            spec: spec.clone(),
            size,
            coords,
            strides: arith.strides.clone(),
            subgroups,
            members,
            below,
            above,
            meet,
            join,
            by_elements,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// `|G|`.
    pub fn group_order(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn order(&self, id: SubgroupId) -> u64 {
        self.subgroups[id].order
    }

    pub fn bottom(&self) -> SubgroupId {
        0
    }

    pub fn top(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    pub fn leq(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.below[h].contains(k)
    }

    /// Ids of all subgroups of `h`, ascending.
    pub fn below(&self, h: SubgroupId) -> &FixedBitSet {
        &self.below[h]
    }

    /// Ids of all subgroups containing `k`, ascending.
    pub fn above(&self, k: SubgroupId) -> &FixedBitSet {
        &self.above[k]
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.join[a * self.len() + b] as usize
    }

    /// `k` is a maximal proper subgroup of `h`.
    pub fn covers(&self, k: SubgroupId, h: SubgroupId) -> bool {
        k != h
            && self.leq(k, h)
            && self.below[h]
                .ones()
                .all(|m| m == k || m == h || !(self.leq(k, m)))
    }

    pub fn contains_element(&self, h: SubgroupId, x: usize) -> bool {
        self.members[h].contains(x)
    }

    pub fn find(&self, elements: &[u32]) -> Option<SubgroupId> {
        self.by_elements.get(elements).copied()
    }

    pub fn element(&self, x: usize) -> &[u64] {
        let k = self.spec.num_factors();
        &self.coords[x * k..(x + 1) * k]
    }

    pub fn element_index(&self, coords: &[u64]) -> Option<usize> {
        if coords.len() != self.spec.num_factors()
            || coords.iter().zip(self.spec.orders()).any(|(&c, &d)| c >= d)
        {
            return None;
        }
        Some(coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum::<u64>() as usize)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.element(x), self.element(y));
        a.iter()
            .zip(b)
            .zip(self.spec.orders())
            .zip(&self.strides)
            .map(|(((&a, &b), &d), &s)| ((a + b) % d) * s)
            .sum::<u64>() as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        self.element(x)
            .iter()
            .zip(self.spec.orders())
            .zip(&self.strides)
            .map(|((&a, &d), &s)| ((d - a) % d) * s)
            .sum::<u64>() as usize
    }

    /// `log_p [H:K]` for `K <= H` inside a `p`-group part.
    pub fn rank_of_pair(&self, k: SubgroupId, h: SubgroupId) -> Result<u32> {
        if !self.leq(k, h) {
            return Err(Error::NotContained { k, h });
        }
        let index = self.order(h) / self.order(k);
        if index == 1 {
            return Ok(0);
        }
        match factorize(index).as_slice() {
            [(_, e)] => Ok(*e),
            _ => Err(Error::invalid(format!(
                "index [{h}:{k}] = {index} is not a prime power"
            ))),
        }
    }

    /// Subgroups of order exactly `order`.
    pub fn layer(&self, order: u64) -> Vec<SubgroupId> {
        self.subgroups
            .iter()
            .filter(|s| s.order == order)
            .map(|s| s.id)
            .collect()
    }

    /// The Sylow `p`-subgroup.
    pub fn primary_subgroup(&self, p: u64) -> SubgroupId {
        let mut q = 1;
        let mut g = self.size as u64;
        while g % p == 0 {
            g /= p;
            q *= p;
        }
        // unique subgroup of that order
        self.layer(q)[0]
    }

    /// Number of subgroups of order `p` in `h`; for a `p`-group this is
    /// `(p^r - 1) / (p - 1)` where `r` is the rank.
    pub fn p_rank(&self, h: SubgroupId, p: u64) -> u32 {
        let lines = self.below[h].ones().filter(|&m| self.order(m) == p).count() as u64;
        let mut r = 0;
        let mut count = 0;
        let mut pow = 1;
        while count < lines {
            count += pow;
            pow *= p;
            r += 1;
        }
        r
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            group: self.spec.to_string(),
            subgroups: self
                .subgroups
                .iter()
                .map(|s| SubgroupJson {
                    id: s.id,
                    order: s.order,
                    elements: s.elements.iter().map(|&x| self.element(x as usize).to_vec()).collect(),
                })
                .collect(),
            leq: (0..self.len())
                .flat_map(|k| self.above[k].ones().map(move |h| [k, h]))
                .collect(),
        }
    }
}

fn greedy_generators(arith: &ElementArith<'_>, size: usize, elements: &[u32]) -> Vec<u32> {
    let mut span = vec![0u32];
    let mut member = FixedBitSet::with_capacity(size);
    member.insert(0);
    let mut gens = Vec::new();
    for &g in elements {
        if member.contains(g as usize) {
            continue;
        }
        span = close_with(arith, size, &span, &member, g as u64);
        member.clear();
        for &x in &span {
            member.insert(x as usize);
        }
        gens.push(g);
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub id: usize,
    pub order: u64,
    pub elements: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub group: String,
    pub subgroups: Vec<SubgroupJson>,
    pub leq: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_group_counts() {
        // partition counts multiply over primes
        let counts: Vec<usize> = [2, 8, 16, 32, 36, 72, 81].iter().map(|&n| GroupSpec::abelian_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 5, 7, 4, 6, 5]);
        for g in GroupSpec::abelian_of_order(72) {
            assert_eq!(g.order(), 72);
        }
    }

    fn lattice(s: &str) -> SubgroupLattice {
        SubgroupLattice::build(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parses_specs() {
        let g = GroupSpec::parse("C5").unwrap();
        assert_eq!(g.orders(), &[5]);
        assert_eq!(g.order(), 5);

        let g = GroupSpec::parse("C4xC2").unwrap();
        assert_eq!(g.order(), 8);
        let parts = g.primary_parts();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].prime, 2);

        let g = GroupSpec::parse("C25xC49").unwrap();
        let parts = g.primary_parts();
        assert_eq!(parts[0], PrimaryPart { prime: 5, factors: vec![(0, 25)] });
        assert_eq!(parts[1], PrimaryPart { prime: 7, factors: vec![(1, 49)] });
        assert_eq!(g.to_string(), "C25xC49");
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["", "C", "C1", "C0", "5", "C4*C2", "C4xc2", "C4x", "xC4", "C-3", "C4 x C2"] {
            assert!(GroupSpec::parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn primary_parts_split_mixed_factors() {
        let g = GroupSpec::parse("C12xC18").unwrap();
        let parts = g.primary_parts();
        assert_eq!(parts[0], PrimaryPart { prime: 2, factors: vec![(0, 4), (1, 2)] });
        assert_eq!(parts[1], PrimaryPart { prime: 3, factors: vec![(0, 3), (1, 9)] });
        assert_eq!(g.exponent(), 36);
    }

    #[test]
    fn small_lattices() {
        let l = lattice("C7");
        assert_eq!(l.len(), 2);
        assert!(l.leq(0, 1));

        let l = lattice("C3xC3");
        assert_eq!(l.len(), 3 + 3);
        assert_eq!(lattice("C2xC2xC2").len(), 16);
        assert_eq!(lattice("C4").len(), 3);
    }

    #[test]
    fn canonical_order_is_by_order_then_elements() {
        let l = lattice("C2xC2");
        let orders: Vec<u64> = l.subgroups().iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4]);
        // lines ordered by their element lists: {00,01} < {00,10} < {00,11}
        assert_eq!(l.subgroup(1).elements, vec![0, 1]);
        assert_eq!(l.subgroup(2).elements, vec![0, 2]);
        assert_eq!(l.subgroup(3).elements, vec![0, 3]);
    }

    #[test]
    fn rank_of_pair_examples() {
        let l = lattice("C25");
        assert_eq!(l.rank_of_pair(1, 1).unwrap(), 0);
        assert_eq!(l.rank_of_pair(0, 2).unwrap(), 2);
        let l = lattice("C3xC3");
        assert_eq!(l.rank_of_pair(1, l.top()).unwrap(), 1);
        assert!(matches!(l.rank_of_pair(l.top(), 1), Err(Error::NotContained { .. })));
        let l = lattice("C6");
        assert!(l.rank_of_pair(0, l.top()).is_err());
    }

    #[test]
    fn element_budget() {
        let spec = GroupSpec::parse("C101xC101").unwrap();
        assert!(matches!(SubgroupLattice::build(&spec), Err(Error::Budget(_))));
    }

    #[test]
    fn json_dump_lists_order_pairs() {
        let l = lattice("C4");
        let j = l.to_json();
        assert_eq!(j.group, "C4");
        assert_eq!(j.subgroups[1].elements, vec![vec![0], vec![2]]);
        assert_eq!(j.leq, vec![[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [2, 2]]);
    }
}
