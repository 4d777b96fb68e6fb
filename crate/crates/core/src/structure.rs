//! π-parts, π-cores, π-separability, Hall π-subgroups and small-group names.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::arith::{is_prime, prime_divisors};
use crate::bsgs::Bsgs;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// A finite set of primes π.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<PrimeSet> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Input(format!("{bad} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> PrimeSet {
        PrimeSet::default()
    }

    /// All primes dividing `n`.
    pub fn dividing(n: u64) -> PrimeSet {
        PrimeSet { primes: prime_divisors(n) }
    }

    /// Parses a comma-separated list such as `2,3`.
    pub fn parse(text: &str) -> Result<PrimeSet> {
        let text = text.trim();
        if text.is_empty() || text == "none" {
            return Ok(PrimeSet::empty());
        }
        let nums = text
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Input(format!("bad prime \"{s}\""))))
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(nums)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Whether every prime divisor of `n` lies in π.
    pub fn is_pi_number(&self, n: u64) -> bool {
        self.pi_part(n) == n
    }

    /// Whether no prime divisor of `n` lies in π.
    pub fn is_pi_prime_number(&self, n: u64) -> bool {
        self.pi_part(n) == 1
    }

    /// Largest divisor of `n` built from primes in π.
    pub fn pi_part(&self, mut n: u64) -> u64 {
        let mut part = 1;
        for &p in &self.primes {
            while n.is_multiple_of(p) {
                n /= p;
                part *= p;
            }
        }
        part
    }

    pub fn pi_prime_part(&self, n: u64) -> u64 {
        n / self.pi_part(n)
    }

    /// Whether π contains every prime in `other`.
    pub fn covers(&self, other: &PrimeSet) -> bool {
        other.primes.iter().all(|&p| self.contains(p))
    }

    /// Every subset, ordered lexicographically by sorted prime tuple.
    pub fn subsets(&self) -> Vec<PrimeSet> {
        let n = self.primes.len();
        let mut out: Vec<PrimeSet> = (0..1u32 << n)
            .map(|mask| PrimeSet {
                primes: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.primes[i]).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.primes.cmp(&b.primes));
        out
    }

    pub fn with(&self, p: u64) -> PrimeSet {
        let mut primes = self.primes.clone();
        primes.push(p);
        PrimeSet::new(primes).expect("primes stay prime")
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primes.is_empty() {
            return f.write_str("none");
        }
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `n_π` for a single integer.
pub fn pi_part(n: u64, pi: &PrimeSet) -> u64 {
    pi.pi_part(n)
}

/// Largest normal subgroup whose order satisfies `keep`, built from every
/// class whose normal closure qualifies.
fn core_by(g: &Group, keep: impl Fn(u64) -> bool) -> Group {
    let mut chosen = Vec::new();
    for (i, class) in g.classes().iter().enumerate().skip(1) {
        if !keep(class.element_order) {
            continue;
        }
        let closure = g.subgroup_from_classes([i]);
        if keep(closure.order()) {
            chosen.push(i);
        }
    }
    g.subgroup_from_classes(chosen)
}

/// `O_π(G)`.
pub fn pi_core(g: &Group, pi: &PrimeSet) -> Group {
    core_by(g, |n| pi.is_pi_number(n))
}

/// `O_π'(G)`.
pub fn pi_prime_core(g: &Group, pi: &PrimeSet) -> Group {
    core_by(g, |n| pi.is_pi_prime_number(n))
}

/// Alternately factors out `O_π'` and `O_π`; separable iff this reaches the trivial group.
pub fn is_pi_separable(g: &Group, pi: &PrimeSet) -> bool {
    let mut h = g.clone();
    loop {
        if h.is_trivial() {
            return true;
        }
        let n = pi_prime_core(&h, pi);
        if !n.is_trivial() {
            h = h.quotient(&n).expect("cores are normal").group;
            continue;
        }
        let n = pi_core(&h, pi);
        if n.is_trivial() {
            return false;
        }
        h = h.quotient(&n).expect("cores are normal").group;
    }
}

/// A Hall π-subgroup, found by growing π-subgroups one π-element at a time.
///
/// In a π-separable group every π-subgroup lies in a Hall π-subgroup, so
/// the search only backtracks past elements that would leave π-land.
pub fn hall_pi_subgroup(g: &Group, pi: &PrimeSet) -> Result<Group> {
    if !is_pi_separable(g, pi) {
        return Err(Error::NotSeparable(pi.to_string()));
    }
    let target = pi.pi_part(g.order());
    if target == 1 {
        return Ok(Group::trivial(g.degree()));
    }
    if target == g.order() {
        return Ok(g.clone());
    }
    let candidates: Vec<&Permutation> = g
        .elements()
        .iter()
        .filter(|x| !x.is_identity() && pi.is_pi_number(x.order()))
        .collect();
    let mut visited = HashSet::new();
    let found = hall_search(g.degree(), &[], &candidates, target, pi, &mut visited)
        .ok_or_else(|| Error::internal("no Hall subgroup found in a separable group"))?;
    Ok(Group::generated_by(g.degree(), found.iter()))
}

fn hall_search(
    degree: usize,
    gens: &[Permutation],
    candidates: &[&Permutation],
    target: u64,
    pi: &PrimeSet,
    visited: &mut HashSet<Vec<Permutation>>,
) -> Option<Vec<Permutation>> {
    let current = Bsgs::new(degree, gens);
    if current.order() == target {
        return Some(gens.to_vec());
    }
    for x in candidates {
        if current.contains(x) {
            continue;
        }
        let mut next = gens.to_vec();
        next.push((*x).clone());
        let bsgs = Bsgs::new(degree, &next);
        let order = bsgs.order();
        if !pi.is_pi_number(order) || !target.is_multiple_of(order) {
            continue;
        }
        let mut key = bsgs.elements();
        key.sort();
        if !visited.insert(key) {
            continue;
        }
        if let Some(found) = hall_search(degree, &next, candidates, target, pi, visited) {
            return Some(found);
        }
    }
    None
}

/// Isomorphism label, exact for orders up to 15.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLabel {
    pub order: u64,
    pub name: String,
    pub abelian: bool,
    /// Element order to number of elements of that order.
    pub fingerprint: BTreeMap<u64, u64>,
}

pub fn identify_group(g: &Group) -> GroupLabel {
    let mut fingerprint = BTreeMap::new();
    for c in g.classes() {
        *fingerprint.entry(c.element_order).or_insert(0) += c.size as u64;
    }
    let order = g.order();
    let abelian = g.is_abelian();
    let count = |k: u64| fingerprint.get(&k).copied().unwrap_or(0);
    let name = if order > 15 {
        format!("order{order}-unidentified")
    } else if abelian {
        if count(order) > 0 || order == 1 {
            format!("C{order}")
        } else {
            match order {
                4 => "C2^2".into(),
                8 if count(4) > 0 => "C4xC2".into(),
                8 => "C2^3".into(),
                9 => "C3^2".into(),
                12 => "C6xC2".into(),
                _ => format!("order{order}-unidentified"),
            }
        }
    } else {
        match order {
            6 => "S3".into(),
            8 if count(2) == 5 => "D8".into(),
            8 => "Q8".into(),
            10 => "D10".into(),
            12 if count(6) == 0 => "A4".into(),
            12 if count(2) == 7 => "D12".into(),
            12 => "C3:C4".into(),
            14 => "D14".into(),
            _ => format!("order{order}-unidentified"),
        }
    };
    GroupLabel { order, name, abelian, fingerprint }
}
