//! Defect groups of π-blocks of π-separable groups.
//!
//! With `N = O_π'(G)` and `λ ∈ Irr(N)` under `B`: if `λ` is G-invariant the
//! defect group is a Hall π-subgroup of `G`; otherwise it is a defect group
//! of the Fong–Reynolds correspondent of `B` in the inertia group `G_λ`.

use std::sync::Arc;

use crate::blocks::{blocks_over, pi_blocks, restriction_matrix, PiBlock};
use crate::cache::{group_data, GroupData};
use crate::char_table::{induce, CharacterTable};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::structure::{hall_pi_subgroup, identify_group, is_pi_separable, pi_prime_core, GroupLabel, PrimeSet};

#[derive(Clone, Debug)]
pub struct DefectDatum {
    pub order: u64,
    pub group: Group,
    pub label: GroupLabel,
}

impl DefectDatum {
    fn new(group: Group) -> DefectDatum {
        DefectDatum { order: group.order(), label: identify_group(&group), group }
    }
}

/// `max_{χ ∈ B} |G|_π / χ(1)_π`, checking that `|D| χ(1)_π / |G|_π` is
/// integral for every member.
pub fn defect_order(table: &CharacterTable, block: &PiBlock) -> Result<u64> {
    let pi = &block.pi;
    let g_pi = pi.pi_part(table.order());
    let order = block
        .members
        .iter()
        .map(|&chi| g_pi / pi.pi_part(table.degree(chi)))
        .max()
        .ok_or_else(|| Error::Input("empty block".into()))?;
    for &chi in &block.members {
        if !(order * pi.pi_part(table.degree(chi))).is_multiple_of(g_pi) {
            return Err(Error::internal(format!("defect order {order} fails integrality for character {chi}")));
        }
    }
    Ok(order)
}

/// Stabilizer of `λ` (a row of `nt`) under conjugation by `G`.
pub fn inertia_group(g: &Group, n: &Group, nt: &CharacterTable, lambda: usize) -> Result<Group> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let row = nt.row(lambda);
    let reps: Vec<_> = n.classes().iter().map(|c| &c.representative).collect();
    let stab: Vec<_> = g
        .elements()
        .iter()
        .filter(|x| {
            reps.iter().enumerate().all(|(c, rep)| {
                let moved = n.class_of(&rep.conjugate_by(x)).expect("N is normal");
                row[moved] == row[c]
            })
        })
        .collect();
    Ok(Group::generated_by(g.degree(), stab))
}

/// Characters of `N ⊴ G` lying under some member of `block`.
pub fn constituents_under(g: &Group, gt: &CharacterTable, n: &Group, nt: &CharacterTable, block: &PiBlock) -> Result<Vec<usize>> {
    let mult = restriction_matrix(g, gt, n, nt)?;
    Ok((0..nt.len()).filter(|&psi| block.members.iter().any(|&chi| mult[chi][psi] != 0)).collect())
}

/// The Fong–Reynolds correspondent of `block` in `T = G_λ`.
#[derive(Clone, Debug)]
pub struct Correspondent {
    pub inertia: Arc<GroupData>,
    pub block: PiBlock,
}

/// The π-block `b` of `G_λ` over `λ` whose induced members are exactly `block`.
///
/// `λ` is a row of the table of `n`; `G_λ` must be a proper subgroup.
pub fn fong_reynolds(g: &Group, pi: &PrimeSet, n: &Group, lambda: usize, block: &PiBlock) -> Result<Correspondent> {
    let gd = group_data(g)?;
    let nd = group_data(n)?;
    let t = inertia_group(g, n, &nd.table, lambda)?;
    if t.same_as(g) {
        return Err(Error::Input("λ is G-invariant; there is no proper correspondent".into()));
    }
    let td = group_data(&t)?;
    let fusion = t.class_fusion(g)?;
    for b in blocks_over(&t, &td.table, n, &nd.table, pi, lambda)? {
        let mut induced = Vec::with_capacity(b.k());
        for &psi in &b.members {
            match gd.table.find(&induce(&td.table.character(psi), &t, g, &fusion)?) {
                Some(chi) => induced.push(chi),
                None => break,
            }
        }
        induced.sort_unstable();
        if induced == block.members {
            return Ok(Correspondent { inertia: td, block: b });
        }
    }
    Err(Error::internal("no π-block of the inertia group induces onto the block"))
}

/// A defect group of `block` through the canonical `λ` (least index under it).
/// Its order must agree with [`defect_order`].
pub fn defect_group(g: &Group, block: &PiBlock) -> Result<DefectDatum> {
    let datum = defect_group_with_lambda(g, block, None)?;
    let expected = defect_order(&group_data(g)?.table, block)?;
    if datum.order != expected {
        return Err(Error::internal(format!(
            "defect group has order {} but the degree formula gives {expected}",
            datum.order
        )));
    }
    Ok(datum)
}

/// As [`defect_group`], starting from the given character of `O_π'(G)`
/// (by index in its table) and without the order check.
pub fn defect_group_with_lambda(g: &Group, block: &PiBlock, lambda: Option<usize>) -> Result<DefectDatum> {
    if !is_pi_separable(g, &block.pi) {
        return Err(Error::NotSeparable(block.pi.to_string()));
    }
    Ok(DefectDatum::new(defect_subgroup(g, block, lambda)?))
}

fn defect_subgroup(g: &Group, block: &PiBlock, lambda: Option<usize>) -> Result<Group> {
    let pi = &block.pi;
    let gd = group_data(g)?;
    let n = pi_prime_core(g, pi);
    let nd = group_data(&n)?;
    let under = constituents_under(g, &gd.table, &n, &nd.table, block)?;
    let lambda = match lambda {
        None => *under.first().ok_or_else(|| Error::internal("block lies over no character of O_π'"))?,
        Some(l) if under.contains(&l) => l,
        Some(l) => return Err(Error::Input(format!("character {l} of O_π'(G) does not lie under the block"))),
    };
    let t = inertia_group(g, &n, &nd.table, lambda)?;
    if t.same_as(g) {
        return hall_pi_subgroup(g, pi);
    }
    let corr = fong_reynolds(g, pi, &n, lambda, block)?;
    defect_subgroup(&corr.inertia.group, &corr.block, None)
}

/// Every π-block of `G` with its defect datum.
pub fn blocks_with_defects(g: &Group, pi: &PrimeSet) -> Result<Vec<(PiBlock, DefectDatum)>> {
    let gd = group_data(g)?;
    pi_blocks(&gd.table, pi)?
        .into_iter()
        .map(|b| {
            let d = defect_group(g, &b)?;
            Ok((b, d))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect()).unwrap()
    }

    fn pi(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    fn block(p: &[u64], members: &[usize]) -> PiBlock {
        PiBlock { pi: pi(p), members: members.to_vec() }
    }

    #[test]
    fn degree_formula() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let t = CharacterTable::compute(&s3).unwrap();
        assert_eq!(defect_order(&t, &block(&[2, 3], &[0, 1, 2])).unwrap(), 6);
        assert_eq!(defect_order(&t, &block(&[2], &[2])).unwrap(), 1);
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let t4 = CharacterTable::compute(&s4).unwrap();
        let principal = pi_blocks(&t4, &pi(&[3])).unwrap().remove(0);
        assert_eq!(t4.degrees().iter().enumerate().filter(|(i, _)| principal.contains(*i)).map(|(_, d)| *d).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!(defect_order(&t4, &principal).unwrap(), 3);
    }

    #[test]
    fn inertia() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let a3 = group(3, &["(1 2 3)"]);
        let ta = CharacterTable::compute(&a3).unwrap();
        assert_eq!(inertia_group(&s3, &a3, &ta, 1).unwrap().order(), 3);
        assert_eq!(inertia_group(&s3, &a3, &ta, 0).unwrap().order(), 6);
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        let c3 = c6.subgroup(vec![Permutation::parse_cycles(6, "(1 3 5)(2 4 6)").unwrap()]).unwrap();
        let t3 = CharacterTable::compute(&c3).unwrap();
        assert!((0..3).all(|l| inertia_group(&c6, &c3, &t3, l).unwrap().order() == 6));
    }

    #[test]
    fn correspondent_in_s3() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let a3 = group(3, &["(1 2 3)"]);
        let corr = fong_reynolds(&s3, &pi(&[2]), &a3, 1, &block(&[2], &[2])).unwrap();
        assert_eq!(corr.inertia.group.order(), 3);
        assert_eq!(corr.block.k(), 1);
        assert!(fong_reynolds(&s3, &pi(&[2]), &a3, 0, &block(&[2], &[0, 1])).is_err());
    }

    #[test]
    fn s3_defect_groups() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let d = defect_group(&s3, &block(&[2, 3], &[0, 1, 2])).unwrap();
        assert_eq!((d.order, d.label.name.as_str()), (6, "S3"));
        let d = defect_group(&s3, &block(&[2], &[2])).unwrap();
        assert_eq!(d.order, 1);
        let d = defect_group(&s3, &block(&[3], &[0, 1, 2])).unwrap();
        assert_eq!((d.order, d.label.name.as_str()), (3, "C3"));
        let d = defect_group(&s3, &block(&[2], &[0, 1])).unwrap();
        assert_eq!((d.order, d.label.name.as_str()), (2, "C2"));
    }

    #[test]
    fn non_separable_refused() {
        let a5 = group(5, &["(1 2 3)", "(1 2 3 4 5)"]);
        let b = block(&[2, 3], &[0]);
        assert!(matches!(defect_group(&a5, &b), Err(Error::NotSeparable(_))));
    }
}
