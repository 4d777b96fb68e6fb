//! p-blocks from central characters and π-blocks as their join.
//!
//! Central characters are reduced through the ring map `Z[ζ_e] → F_{p^m}`
//! that sends `ζ_e` to a root `y` of a fixed irreducible factor `f` of
//! `Φ_{e'}` mod p, where `e = p^a e'` with `p ∤ e'`. Since
//! `Φ_e ≡ Φ_{e'}^{φ(p^a)} (mod p)`, `Φ_e(y) = 0` and the map is well defined;
//! its kernel is a maximal ideal over p.

use std::collections::BTreeMap;

use crate::arith::{is_prime, multiplicative_order};
use crate::char_table::{restrict, CharacterTable};
use crate::cyclo::{cyclotomic_polynomial, Cyclo};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::structure::PrimeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBlock {
    pub prime: u64,
    /// Character indices, ascending.
    pub members: Vec<usize>,
    pub defect_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiBlock {
    pub pi: PrimeSet,
    /// Character indices, ascending.
    pub members: Vec<usize>,
}

impl PiBlock {
    /// `k(B)`.
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, chi: usize) -> bool {
        self.members.binary_search(&chi).is_ok()
    }
}

/// `ω_χ(K) = |K| χ(g_K) / χ(1)` for every class `K`.
pub fn central_character(table: &CharacterTable, chi: usize) -> Result<Vec<Cyclo>> {
    let d = table.degree(chi) as i64;
    table
        .row(chi)
        .iter()
        .zip(table.class_sizes())
        .map(|(v, &size)| {
            v.scale(size as i64)
                .div_exact(d)
                .ok_or_else(|| Error::internal("central character value is not integral"))
        })
        .collect()
}

/// Reduction `Z[ζ_e] → F_p[y]/(f)`; elements are coefficient vectors of length `deg f`.
struct Reduction {
    p: u64,
    /// `y^k` for `k < φ(e)`.
    powers: Vec<Vec<u64>>,
}

impl Reduction {
    fn new(e: u32, p: u64) -> Reduction {
        let mut e_prime = e as u64;
        while e_prime.is_multiple_of(p) {
            e_prime /= p;
        }
        let f = least_factor(e_prime as u32, p);
        let m = f.len() - 1;
        let dim = cyclotomic_polynomial(e).len() - 1;
        let mut powers = Vec::with_capacity(dim);
        let mut cur = vec![0u64; m];
        cur[0] = 1 % p;
        for _ in 0..dim {
            powers.push(cur.clone());
            cur = times_y(&cur, &f, p);
        }
        Reduction { p, powers }
    }

    fn apply(&self, v: &Cyclo) -> Vec<u64> {
        let p = self.p;
        let m = self.powers[0].len();
        let mut out = vec![0u64; m];
        for (c, pw) in v.coeffs().iter().zip(&self.powers) {
            let c = c.rem_euclid(p as i64) as u64;
            if c == 0 {
                continue;
            }
            for (o, &w) in out.iter_mut().zip(pw) {
                *o = (*o + c * w) % p;
            }
        }
        out
    }
}

/// Multiplies by `y` in `F_p[y]/(f)`, `f` monic, lowest degree first.
fn times_y(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = a.len();
    let top = a[m - 1];
    let mut out = vec![0u64; m];
    out[1..].copy_from_slice(&a[..m - 1]);
    for (o, &fc) in out.iter_mut().zip(f) {
        *o = (*o + (p - top) * fc) % p;
    }
    out
}

/// Lexicographically least monic factor of degree `ord_n(p)` of `Φ_n` over
/// `F_p`, enumerating coefficient tuples `(c_0, …, c_{m-1})` with `c_0`
/// most significant. Any such divisor is irreducible because `Φ_n` is
/// squarefree mod p and all its irreducible factors have degree `ord_n(p)`.
fn least_factor(n: u32, p: u64) -> Vec<u64> {
    let m = if n == 1 { 1 } else { multiplicative_order(p % n as u64, n as u64) as usize };
    let phi: Vec<u64> = cyclotomic_polynomial(n).iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
    let total = (p as u128).pow(m as u32);
    for t in 0..total {
        let mut g = vec![0u64; m + 1];
        let mut rest = t;
        for i in (0..m).rev() {
            g[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        g[m] = 1;
        if divides(&g, &phi, p) {
            return g;
        }
    }
    unreachable!("Φ_n always has a monic factor of degree ord_n(p)")
}

fn divides(f: &[u64], g: &[u64], p: u64) -> bool {
    let df = f.len() - 1;
    let mut rem = g.to_vec();
    while rem.len() > df {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - df;
        if lead != 0 {
            for (i, &c) in f.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - lead) * c % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// The p-blocks of `G`, ordered by least member (so the principal block is first).
pub fn p_blocks(table: &CharacterTable, p: u64) -> Result<Vec<PBlock>> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let n = table.order();
    let g_p = PrimeSet::new([p])?.pi_part(n);
    let defect = |members: &[usize]| {
        members.iter().map(|&chi| g_p / PrimeSet::new([p]).unwrap().pi_part(table.degree(chi))).max().unwrap()
    };
    if !n.is_multiple_of(p) {
        return Ok((0..table.len()).map(|chi| PBlock { prime: p, members: vec![chi], defect_order: 1 }).collect());
    }
    let red = Reduction::new(table.exponent(), p);
    let mut groups: BTreeMap<Vec<Vec<u64>>, Vec<usize>> = BTreeMap::new();
    for chi in 0..table.len() {
        let key: Vec<Vec<u64>> = central_character(table, chi)?.iter().map(|v| red.apply(v)).collect();
        groups.entry(key).or_default().push(chi);
    }
    let mut blocks: Vec<PBlock> = groups
        .into_values()
        .map(|members| PBlock { prime: p, defect_order: defect(&members), members })
        .collect();
    blocks.sort_by_key(|b| b.members[0]);
    Ok(blocks)
}

/// The π-blocks: connected components of "shares a p-block for some p ∈ π".
pub fn pi_blocks(table: &CharacterTable, pi: &PrimeSet) -> Result<Vec<PiBlock>> {
    let r = table.len();
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for &p in pi.primes() {
        for block in p_blocks(table, p)? {
            for &m in &block.members[1..] {
                let a = find(&mut parent, block.members[0]);
                let b = find(&mut parent, m);
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for chi in 0..r {
        let root = find(&mut parent, chi);
        comps.entry(root).or_default().push(chi);
    }
    let mut blocks: Vec<PiBlock> = comps.into_values().map(|members| PiBlock { pi: pi.clone(), members }).collect();
    blocks.sort_by_key(|b| b.members[0]);
    Ok(blocks)
}

/// Characters of `G` lying over the character `λ` (a row of `nt`) of `N ⊴ G`.
pub fn characters_over(
    g: &Group,
    gt: &CharacterTable,
    n: &Group,
    nt: &CharacterTable,
    lambda: usize,
) -> Result<Vec<usize>> {
    crate::char_table::irr_over(g, gt, n, nt, &nt.character(lambda))
}

/// The π-blocks of `G` containing a character over `λ ∈ Irr(N)`.
pub fn blocks_over(
    g: &Group,
    gt: &CharacterTable,
    n: &Group,
    nt: &CharacterTable,
    pi: &PrimeSet,
    lambda: usize,
) -> Result<Vec<PiBlock>> {
    let over = characters_over(g, gt, n, nt, lambda)?;
    Ok(pi_blocks(gt, pi)?
        .into_iter()
        .filter(|b| b.members.iter().any(|chi| over.binary_search(chi).is_ok()))
        .collect())
}

/// Restriction multiplicities `[χ_N, ψ]`, indexed `[χ][ψ]`.
pub fn restriction_matrix(g: &Group, gt: &CharacterTable, n: &Group, nt: &CharacterTable) -> Result<Vec<Vec<i64>>> {
    let fusion = n.class_fusion(g)?;
    (0..gt.len()).map(|chi| nt.decompose(&restrict(&gt.character(chi), &fusion))).collect()
}

/// Whether the block `big` of `G` covers the block `small` of `N ⊴ G`.
pub fn covers(
    g: &Group,
    gt: &CharacterTable,
    big: &PiBlock,
    n: &Group,
    nt: &CharacterTable,
    small: &PiBlock,
) -> Result<bool> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let fusion = n.class_fusion(g)?;
    for &chi in &big.members {
        let res = restrict(&gt.character(chi), &fusion);
        for &psi in &small.members {
            if nt.multiplicity(&res, &nt.character(psi))? != 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
