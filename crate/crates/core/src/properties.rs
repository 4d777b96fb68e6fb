//! Checks of the structural facts about π-blocks, run for one `(G, π)`.
//!
//! Failures are recorded in the report rather than returned as errors;
//! a computation that errors out is recorded as a failure of the check
//! that needed it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::blocks::{p_blocks, pi_blocks, restriction_matrix, PiBlock};
use crate::cache::group_data;
use crate::char_table::CharacterTable;
use crate::cyclo::Cyclo;
use crate::defect::{constituents_under, defect_group, defect_group_with_lambda, defect_order, fong_reynolds, inertia_group, DefectDatum};
use crate::error::Result;
use crate::group::Group;
use crate::landau::{check_theorem_b, gamma_traces, BoundOracle, Verdict};
use crate::structure::{is_pi_separable, pi_core, pi_prime_core, PrimeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Recorded but not a pass/fail criterion.
    Info,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub category: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

impl PropertyReport {
    fn record(&mut self, category: &'static str, passed: bool, detail: impl Into<String>) {
        let outcome = if passed { Outcome::Pass } else { Outcome::Fail };
        self.checks.push(Check { category, outcome, detail: detail.into() });
    }

    fn info(&mut self, category: &'static str, detail: impl Into<String>) {
        self.checks.push(Check { category, outcome: Outcome::Info, detail: detail.into() });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn tally(&self) -> BTreeMap<&'static str, Tally> {
        let mut out: BTreeMap<&'static str, Tally> = BTreeMap::new();
        for c in &self.checks {
            let t = out.entry(c.category).or_default();
            match c.outcome {
                Outcome::Pass => t.pass += 1,
                Outcome::Fail => t.fail += 1,
                Outcome::Info => t.info += 1,
            }
        }
        out
    }

    pub fn merge(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Info => "info",
        };
        write!(f, "{} {} {}", self.category, tag, self.detail)
    }
}

/// Normal closures of single classes, together with `G`, without repeats.
pub fn normal_subgroups(g: &Group) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    let candidates = (0..g.num_classes()).map(|c| g.subgroup_from_classes([c])).chain([g.clone()]);
    for n in candidates {
        if !out.iter().any(|m| m.same_as(&n)) {
            out.push(n);
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    out
}

/// Orthogonality, degree and Galois-stability checks on the table of `g`.
pub fn verify_table(g: &Group) -> PropertyReport {
    let mut report = PropertyReport::default();
    if let Err(e) = table_checks(g, &mut report) {
        report.record("table", false, format!("error: {e}"));
    }
    report
}

fn table_checks(g: &Group, report: &mut PropertyReport) -> Result<()> {
    let t = &group_data(g)?.table;
    let r = t.len();
    let e = t.exponent();
    let mut rows_ok = true;
    for a in 0..r {
        for b in a..r {
            let ip = t.inner_product(&t.character(a), &t.character(b))?;
            rows_ok &= ip == Cyclo::from_int(e, (a == b) as i64);
        }
    }
    report.record("table", rows_ok, "row orthogonality");

    let mut cols_ok = true;
    for c in 0..t.num_classes() {
        for d in c..t.num_classes() {
            let mut acc = Cyclo::zero(e);
            for row in t.rows() {
                acc = &acc + &(&row[c] * &row[d].conj());
            }
            let expected = if c == d { g.centralizer_order(c) as i64 } else { 0 };
            cols_ok &= acc == Cyclo::from_int(e, expected);
        }
    }
    report.record("table", cols_ok, "column orthogonality");

    let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
    report.record("table", sum == g.order(), format!("sum of squared degrees {sum}"));
    report.record("table", t.degrees().iter().all(|d| g.order().is_multiple_of(*d)), "degrees divide the order");

    let galois_ok = (1..e as u64)
        .filter(|&k| crate::arith::gcd(k, e as u64) == 1)
        .all(|k| (0..r).all(|chi| {
            let image = crate::char_table::ClassFunction(t.row(chi).iter().map(|v| v.galois(k)).collect());
            t.find(&image).is_some()
        }));
    report.record("table", galois_ok, "Galois stability");
    Ok(())
}

/// Runs every block property for `(G, π)`; `G` must be π-separable.
pub fn verify_block_properties(g: &Group, pi: &PrimeSet) -> PropertyReport {
    let mut report = PropertyReport::default();
    if !is_pi_separable(g, pi) {
        report.record("separability", false, format!("group is not {pi}-separable"));
        return report;
    }
    if let Err(e) = block_checks(g, pi, &mut report) {
        report.record("internal", false, format!("error: {e}"));
    }
    report
}

struct Ctx<'a> {
    g: &'a Group,
    t: &'a CharacterTable,
    pi: &'a PrimeSet,
    blocks: Vec<PiBlock>,
    defects: Vec<Option<DefectDatum>>,
    o_pi: Group,
}

fn block_checks(g: &Group, pi: &PrimeSet, report: &mut PropertyReport) -> Result<()> {
    let gd = group_data(g)?;
    let t = &gd.table;
    let blocks = pi_blocks(t, pi)?;
    check_partition(t, pi, &blocks, report)?;

    let mut defects = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        let formula = defect_order(t, b)?;
        match defect_group(g, b) {
            Ok(d) => {
                report.record("defect_agreement", d.order == formula, format!("block {i}: |D|={} formula={formula}", d.order));
                defects.push(Some(d));
            }
            Err(e) => {
                report.record("defect_agreement", false, format!("block {i}: {e}"));
                defects.push(None);
            }
        }
    }
    let ctx = Ctx { g, t, pi, blocks, defects, o_pi: pi_core(g, pi) };

    facts_i_ii(&ctx, report);
    facts_iii(&ctx, report);
    let normals = normal_subgroups(g);
    covering_checks(&ctx, &normals, report)?;
    facts_v(&ctx, report)?;
    lemchar(&ctx, report)?;
    let pi_normals: Vec<&Group> = normals.iter().filter(|n| pi.is_pi_number(n.order())).collect();
    lemquot(&ctx, &pi_normals, report)?;
    lemnormal(&ctx, &pi_normals, report);
    remark_p_blocks(&ctx, report)?;
    fong_reynolds_checks(&ctx, report)?;
    theorem_checks(&ctx, report);
    Ok(())
}

fn check_partition(t: &CharacterTable, pi: &PrimeSet, blocks: &[PiBlock], report: &mut PropertyReport) -> Result<()> {
    let total: usize = blocks.iter().map(PiBlock::k).sum();
    report.record("partition", total == t.len(), format!("sum of k(B) {total} of {}", t.len()));
    let partitions = pi.primes().iter().map(|&p| p_blocks(t, p)).collect::<Result<Vec<_>>>()?;
    for (i, b) in blocks.iter().enumerate() {
        let unions = partitions.iter().all(|pb| {
            pb.iter().all(|x| x.members.iter().all(|m| b.contains(*m)) || x.members.iter().all(|m| !b.contains(*m)))
        });
        // the closure of one member under all p-blocks must be the whole block
        let mut closure = vec![b.members[0]];
        loop {
            let before = closure.len();
            for pb in &partitions {
                for x in pb {
                    if x.members.iter().any(|m| closure.contains(m)) {
                        for m in &x.members {
                            if !closure.contains(m) {
                                closure.push(*m);
                            }
                        }
                    }
                }
            }
            if closure.len() == before {
                break;
            }
        }
        closure.sort_unstable();
        let minimal = closure == b.members;
        report.record("partition", unions && minimal, format!("block {i}: union={unions} minimal={minimal}"));
    }
    Ok(())
}

fn facts_i_ii(ctx: &Ctx, report: &mut PropertyReport) {
    let g_pi = ctx.pi.pi_part(ctx.g.order());
    for (i, (b, d)) in ctx.blocks.iter().zip(&ctx.defects).enumerate() {
        let Some(d) = d else { continue };
        // O_π(G) is normal, so containment in one conjugate of D means containment in all
        let contained = d.group.contains_subgroup(&ctx.o_pi);
        report.record("facts_i", contained, format!("block {i}: |O_pi|={} |D|={}", ctx.o_pi.order(), d.order));
        let ratios: Vec<Option<u64>> = b
            .members
            .iter()
            .map(|&chi| {
                let num = d.order * ctx.pi.pi_part(ctx.t.degree(chi));
                num.is_multiple_of(g_pi).then_some(num / g_pi)
            })
            .collect();
        let integral = ratios.iter().all(|r| matches!(r, Some(x) if *x >= 1));
        let attained = ratios.contains(&Some(1));
        report.record("facts_ii", integral && attained, format!("block {i}: integral={integral} attained={attained}"));
    }
}

fn facts_iii(ctx: &Ctx, report: &mut PropertyReport) {
    let classes = ctx.g.classes();
    let pi_classes: Vec<usize> = (0..classes.len()).filter(|&c| ctx.pi.is_pi_number(classes[c].element_order)).collect();
    let e = ctx.t.exponent();
    for (i, b) in ctx.blocks.iter().enumerate() {
        let mut ok = true;
        for &x in &pi_classes {
            for &y in &pi_classes {
                if x == y {
                    continue;
                }
                let mut acc = Cyclo::zero(e);
                for &chi in &b.members {
                    let row = ctx.t.row(chi);
                    acc = &acc + &(&row[x] * &row[y].conj());
                }
                ok &= acc.is_zero();
            }
        }
        report.record("facts_iii", ok, format!("block {i}: {} pi-classes", pi_classes.len()));
    }
}

/// facts (iv) and the covered-block bound, over every normal subgroup in the list.
fn covering_checks(ctx: &Ctx, normals: &[Group], report: &mut PropertyReport) -> Result<()> {
    for n in normals {
        let nd = group_data(n)?;
        let small = pi_blocks(&nd.table, ctx.pi)?;
        let mult = restriction_matrix(ctx.g, ctx.t, n, &nd.table)?;
        let index = (ctx.g.order() / n.order()) as usize;
        for (i, big) in ctx.blocks.iter().enumerate() {
            for (j, b) in small.iter().enumerate() {
                let covers = big.members.iter().any(|&chi| b.members.iter().any(|&psi| mult[chi][psi] != 0));
                if !covers {
                    continue;
                }
                let partners = b.members.iter().all(|&psi| big.members.iter().any(|&chi| mult[chi][psi] != 0));
                report.record("facts_iv", partners, format!("|N|={} block {i} covers {j}", n.order()));
                let bound = b.k() <= index * big.k();
                report.record(
                    "lemsub",
                    bound,
                    format!("|N|={} block {i} covers {j}: k(b)={} |G:N|k(B)={}", n.order(), b.k(), index * big.k()),
                );
            }
        }
    }
    Ok(())
}

fn facts_v(ctx: &Ctx, report: &mut PropertyReport) -> Result<()> {
    let n = pi_prime_core(ctx.g, ctx.pi);
    let nd = group_data(&n)?;
    let mult = restriction_matrix(ctx.g, ctx.t, &n, &nd.table)?;
    for lambda in 0..nd.table.len() {
        if !inertia_group(ctx.g, &n, &nd.table, lambda)?.same_as(ctx.g) {
            continue;
        }
        let over: Vec<usize> = (0..ctx.t.len()).filter(|&chi| mult[chi][lambda] != 0).collect();
        let lying: Vec<&PiBlock> =
            ctx.blocks.iter().filter(|b| b.members.iter().any(|chi| over.contains(chi))).collect();
        let ok = lying.len() == 1 && lying[0].members == over;
        report.record("facts_v", ok, format!("invariant lambda {lambda}: {} blocks over it", lying.len()));
    }
    Ok(())
}

fn lemchar(ctx: &Ctx, report: &mut PropertyReport) -> Result<()> {
    let g_pi = ctx.pi.pi_part(ctx.g.order());
    let core_classes = ctx.g.classes().iter().enumerate().filter(|(_, c)| ctx.o_pi.contains(&c.representative)).map(|(i, _)| i);
    let core_classes: Vec<usize> = core_classes.collect();
    for (i, (b, d)) in ctx.blocks.iter().zip(&ctx.defects).enumerate() {
        let Some(d) = d else { continue };
        let found = b.members.iter().any(|&chi| {
            let kernel = ctx.t.kernel_classes(chi);
            core_classes.iter().all(|c| kernel.contains(c)) && d.order * ctx.pi.pi_part(ctx.t.degree(chi)) == g_pi
        });
        report.record("lemchar", found, format!("block {i}"));
    }
    Ok(())
}

fn lemquot(ctx: &Ctx, pi_normals: &[&Group], report: &mut PropertyReport) -> Result<()> {
    let mut subjects: Vec<&Group> = pi_normals.to_vec();
    if !subjects.iter().any(|n| n.same_as(&ctx.o_pi)) {
        subjects.push(&ctx.o_pi);
    }
    for n in subjects {
        let q = ctx.g.quotient(n)?;
        let qd = group_data(&q.group)?;
        let class_map = q.class_map(ctx.g);
        // inflation of each quotient character to G
        let inflated: Vec<Option<usize>> = (0..qd.table.len())
            .map(|chi| {
                let values = class_map.iter().map(|&c| qd.table.row(chi)[c].clone()).collect();
                ctx.t.find(&crate::char_table::ClassFunction(values))
            })
            .collect();
        let q_blocks = pi_blocks(&qd.table, ctx.pi)?;
        for (i, (b, d)) in ctx.blocks.iter().zip(&ctx.defects).enumerate() {
            let Some(d) = d else { continue };
            let mut found = false;
            for qb in &q_blocks {
                let inside = qb.members.iter().all(|&chi| inflated[chi].is_some_and(|x| b.contains(x)));
                if inside && defect_order(&qd.table, qb)? * n.order() == d.order {
                    found = true;
                    break;
                }
            }
            report.record("lemquot", found, format!("|N|={} block {i}: |D|={}", n.order(), d.order));
        }
    }
    Ok(())
}

fn lemnormal(ctx: &Ctx, pi_normals: &[&Group], report: &mut PropertyReport) {
    let mut subjects: Vec<&Group> = pi_normals.to_vec();
    if !subjects.iter().any(|n| n.same_as(&ctx.o_pi)) {
        subjects.push(&ctx.o_pi);
    }
    for n in subjects {
        let inside = ctx.g.classes().iter().filter(|c| n.contains(&c.representative)).count();
        for (i, b) in ctx.blocks.iter().enumerate() {
            report.record("lemnormal", inside <= b.k(), format!("|N|={} block {i}: classes={inside} k={}", n.order(), b.k()));
        }
    }
}

fn remark_p_blocks(ctx: &Ctx, report: &mut PropertyReport) -> Result<()> {
    for &p in ctx.pi.primes() {
        let pb = p_blocks(ctx.t, p)?;
        let p_set = PrimeSet::new([p])?;
        for (i, (b, d)) in ctx.blocks.iter().zip(&ctx.defects).enumerate() {
            let Some(d) = d else { continue };
            let target = p_set.pi_part(d.order);
            let found = pb.iter().any(|x| x.members.iter().all(|m| b.contains(*m)) && x.defect_order == target);
            report.record("remark_p_blocks", found, format!("p={p} block {i}: |D|_p={target}"));
        }
    }
    Ok(())
}

fn fong_reynolds_checks(ctx: &Ctx, report: &mut PropertyReport) -> Result<()> {
    let n = pi_prime_core(ctx.g, ctx.pi);
    let nd = group_data(&n)?;
    for (i, b) in ctx.blocks.iter().enumerate() {
        let under = constituents_under(ctx.g, ctx.t, &n, &nd.table, b)?;
        let canonical = &ctx.defects[i];
        for &lambda in &under {
            if let Some(canon) = canonical {
                let ok = match defect_group_with_lambda(ctx.g, b, Some(lambda)) {
                    Ok(d) => d.order == canon.order && d.label.name == canon.label.name,
                    Err(_) => false,
                };
                report.record("lambda_independence", ok, format!("block {i} lambda {lambda}"));
            }
            let t = inertia_group(ctx.g, &n, &nd.table, lambda)?;
            if t.same_as(ctx.g) {
                continue;
            }
            match fong_reynolds(ctx.g, ctx.pi, &n, lambda, b) {
                Ok(corr) => {
                    let k_ok = corr.block.k() == b.k();
                    let d_small = defect_order(&corr.inertia.table, &corr.block)?;
                    let d_big = defect_order(ctx.t, b)?;
                    report.record(
                        "fong_reynolds",
                        k_ok && d_small == d_big,
                        format!("block {i} lambda {lambda}: k {}={} defect {d_small}={d_big}", corr.block.k(), b.k()),
                    );
                }
                Err(e) => report.record("fong_reynolds", false, format!("block {i} lambda {lambda}: {e}")),
            }
        }
    }
    Ok(())
}

fn theorem_checks(ctx: &Ctx, report: &mut PropertyReport) {
    let covers_all = ctx.pi.is_pi_number(ctx.g.order());
    if covers_all {
        let ok = ctx.blocks.len() == 1
            && ctx.blocks[0].k() == ctx.g.num_classes()
            && ctx.defects[0].as_ref().is_some_and(|d| d.order == ctx.g.order());
        report.record("landau_case", ok, format!("{} blocks", ctx.blocks.len()));
    }
    let max_k = ctx.blocks.iter().map(PiBlock::k).max().unwrap_or(1) as u64;
    let gammas = gamma_traces(max_k, &mut BoundOracle::identity(), &mut BoundOracle::identity(), 64).ok();
    for (i, (b, d)) in ctx.blocks.iter().zip(&ctx.defects).enumerate() {
        let Some(d) = d else { continue };
        let check = check_theorem_b(b.k(), d);
        report.record(
            "theorem_b",
            check.verdict != Verdict::Fail,
            format!("block={i} k={} defect_order={} defect_iso={} thmB={}", b.k(), d.order, check.label, check.verdict),
        );
        if let Some(gs) = &gammas {
            let bound = &gs[b.k() - 1].value;
            let holds = bound.lower() >= &BigUint::from(d.order);
            report.info("theorem_a_bound", format!("block {i}: |D|={} gamma({})={bound} holds={holds}", d.order, b.k()));
        }
    }
}
