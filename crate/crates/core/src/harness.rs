//! Group files, corpus loading, and the text reports behind the CLI.
//!
//! A group file is line oriented:
//!
//! ```text
//! # comment
//! name S3
//! degree 3
//! gen (1 2)
//! gen (1 2 3)
//! order 6
//! ```
//!
//! Reports are lines of space-separated `key=value` tokens.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::arith::is_prime;
use crate::blocks::pi_blocks;
use crate::cache::group_data;
use crate::defect::defect_group;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::landau::check_theorem_b;
use crate::perm::Permutation;
use crate::properties::{verify_block_properties, verify_table, PropertyReport, Tally};
use crate::structure::{is_pi_separable, PrimeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expected_order: Option<u64>,
}

impl CorpusEntry {
    /// Builds the group, checking the declared order if there is one.
    pub fn build(&self) -> Result<Group> {
        let g = Group::new(self.degree, self.generators.clone())?;
        match self.expected_order {
            Some(o) if o != g.order() => {
                Err(Error::Input(format!("{}: declared order {o} but generators give {}", self.name, g.order())))
            }
            _ => Ok(g),
        }
    }
}

pub fn parse_group_file(text: &str) -> Result<CorpusEntry> {
    let mut name = None;
    let mut degree: Option<usize> = None;
    let mut order = None;
    let mut gens: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let err = |message: String| Error::Parse { line: line_no, message };
        let number = |s: &str| s.parse::<u64>().map_err(|_| err(format!("expected a number, found \"{s}\"")));
        match key {
            "name" if name.is_some() => return Err(err("duplicate name".into())),
            "name" if rest.is_empty() || rest.contains(char::is_whitespace) => {
                return Err(err("name must be a single token".into()))
            }
            "name" => name = Some(rest.to_string()),
            "degree" if degree.is_some() => return Err(err("duplicate degree".into())),
            "degree" => {
                let d = number(rest)?;
                if d == 0 {
                    return Err(err("degree must be positive".into()));
                }
                degree = Some(d as usize);
            }
            "order" => order = Some(number(rest)?),
            "gen" => gens.push((line_no, rest)),
            other => return Err(err(format!("unknown keyword \"{other}\""))),
        }
    }
    let name = name.ok_or_else(|| Error::Input("missing name line".into()))?;
    let degree = degree.ok_or_else(|| Error::Input("missing degree line".into()))?;
    let generators = gens
        .into_iter()
        .map(|(line, text)| {
            Permutation::parse_cycles(degree, text).map_err(|e| Error::Parse { line, message: strip_prefix(&e) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusEntry { name, degree, generators, expected_order: order })
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Input(m) => m.clone(),
        other => other.to_string(),
    }
}

/// Reads, parses and builds one group file; errors name the file.
pub fn load_group_file(path: &Path) -> Result<(CorpusEntry, Group)> {
    let named = |e: Error| Error::Input(format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let entry = parse_group_file(&text).map_err(named)?;
    let group = entry.build().map_err(named)?;
    Ok((entry, group))
}

/// Every `*.grp` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(PathBuf, CorpusEntry, Group)>> {
    let listing = fs::read_dir(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for item in listing {
        let path = item.map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?.path();
        if path.extension().is_some_and(|x| x == "grp") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let (entry, group) = load_group_file(&p)?;
            Ok((p, entry, group))
        })
        .collect()
}

/// π as given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiSpec {
    /// Every prime divisor of `|G|`.
    All,
    Primes(PrimeSet),
}

impl PiSpec {
    pub fn parse(text: &str) -> Result<PiSpec> {
        if text.trim() == "all" {
            Ok(PiSpec::All)
        } else {
            PrimeSet::parse(text).map(PiSpec::Primes)
        }
    }

    pub fn resolve(&self, order: u64) -> PrimeSet {
        match self {
            PiSpec::All => PrimeSet::dividing(order),
            PiSpec::Primes(p) => p.clone(),
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Header line, then one line per π-block.
pub fn analyze(entry: &CorpusEntry, g: &Group, pi: &PrimeSet) -> Result<String> {
    let gd = group_data(g)?;
    let t = &gd.table;
    let separable = is_pi_separable(g, pi);
    let blocks = pi_blocks(t, pi)?;
    let mut out = String::new();
    writeln!(
        out,
        "group={} order={} classes={} pi={pi} separable={separable} blocks={}",
        entry.name,
        g.order(),
        g.num_classes(),
        blocks.len()
    )
    .unwrap();
    for (i, b) in blocks.iter().enumerate() {
        write!(
            out,
            "block={i} chars={} degrees={} k={}",
            join(&b.members),
            join(b.members.iter().map(|&c| t.degree(c))),
            b.k()
        )
        .unwrap();
        if separable {
            let d = defect_group(g, b)?;
            let verdict = check_theorem_b(b.k(), &d).verdict;
            write!(out, " defect_order={} defect_iso={} thmB={verdict}", d.order, d.label.name).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Metadata lines starting with `#`, then `degree (c0,c1,…) …` per character.
pub fn table_dump(entry: &CorpusEntry, g: &Group) -> Result<String> {
    let gd = group_data(g)?;
    let t = &gd.table;
    let mut out = String::new();
    writeln!(out, "# group={} order={} exponent={} classes={}", entry.name, g.order(), t.exponent(), t.num_classes()).unwrap();
    writeln!(out, "# class_sizes={}", join(t.class_sizes())).unwrap();
    writeln!(out, "# element_orders={}", join(t.element_orders())).unwrap();
    writeln!(out, "# representatives={}", join(g.classes().iter().map(|c| c.representative.to_string()))).unwrap();
    for chi in 0..t.len() {
        let values: Vec<String> = t.row(chi).iter().map(|v| format!("({})", join(v.coeffs()))).collect();
        writeln!(out, "{} {}", t.degree(chi), values.join(" ")).unwrap();
    }
    Ok(out)
}

/// Every subset of `primes(|G|) ∪ {q}`, `q` the least prime not dividing `|G|`.
pub fn verify_pi_sets(order: u64) -> Vec<PrimeSet> {
    let base = PrimeSet::dividing(order);
    let extra = (2..).find(|&q| is_prime(q) && !order.is_multiple_of(q)).unwrap();
    base.with(extra).subsets()
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub report: String,
    pub groups: usize,
    pub checks: usize,
    pub failures: usize,
}

struct EntryResult {
    text: String,
    report: PropertyReport,
}

fn verify_entry(entry: &CorpusEntry, g: &Group) -> EntryResult {
    let mut text = String::new();
    let mut total = PropertyReport::default();
    let table = verify_table(g);
    writeln!(text, "group={} order={} table={}", entry.name, g.order(), if table.passed() { "pass" } else { "fail" }).unwrap();
    for f in table.failures() {
        writeln!(text, "failure group={} {f}", entry.name).unwrap();
    }
    total.merge(table);
    for pi in verify_pi_sets(g.order()) {
        if !is_pi_separable(g, &pi) {
            writeln!(text, "group={} pi={pi} separable=false", entry.name).unwrap();
            continue;
        }
        let report = verify_block_properties(g, &pi);
        let fails = report.failures().count();
        writeln!(
            text,
            "group={} pi={pi} separable=true checks={} failures={fails}",
            entry.name,
            report.checks.len()
        )
        .unwrap();
        for c in report.checks.iter().filter(|c| c.category == "theorem_b") {
            writeln!(text, "group={} pi={pi} {}", entry.name, c.detail).unwrap();
        }
        for f in report.failures() {
            writeln!(text, "failure group={} pi={pi} {f}", entry.name).unwrap();
        }
        total.merge(report);
    }
    EntryResult { text, report: total }
}

/// Runs the table and block checks on every corpus group of order at most `max_order`.
pub fn verify(dir: &Path, max_order: u64) -> Result<VerifyOutcome> {
    if max_order == 0 {
        return Err(Error::Input("max order must be at least 1".into()));
    }
    let corpus = load_corpus(dir)?;
    let selected: Vec<&(PathBuf, CorpusEntry, Group)> = corpus.iter().filter(|(_, _, g)| g.order() <= max_order).collect();
    let results: Vec<EntryResult> = selected.par_iter().map(|(_, e, g)| verify_entry(e, g)).collect();

    let mut report = String::new();
    if corpus.is_empty() {
        writeln!(report, "warning: no group files in {}", dir.display()).unwrap();
    }
    let mut tally: BTreeMap<&'static str, Tally> = BTreeMap::new();
    let (mut checks, mut failures) = (0, 0);
    for r in &results {
        report.push_str(&r.text);
        for (cat, t) in r.report.tally() {
            let entry = tally.entry(cat).or_default();
            entry.pass += t.pass;
            entry.fail += t.fail;
            entry.info += t.info;
            checks += t.pass + t.fail;
            failures += t.fail;
        }
    }
    for (cat, t) in &tally {
        writeln!(report, "summary category={cat} pass={} fail={} info={}", t.pass, t.fail, t.info).unwrap();
    }
    writeln!(report, "summary groups={} checks={checks} failures={failures}", results.len()).unwrap();
    Ok(VerifyOutcome { report, groups: results.len(), checks, failures })
}
