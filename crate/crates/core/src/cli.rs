//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the exit code with everything to print; the
//! binary only forwards it.
//!
//! Exit codes: 0 when the input passes, 1 when a property check fails (the
//! report carries the counterexample), 2 on usage, parse or input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::actions::{
    eta_iso, functor_f, non_fullness_witness_for, GroupAction, NonFullnessReport,
};
use crate::congruence::is_direct_product_pair;
use crate::enumeration::{
    census, enumerate_groups, enumerate_right_groups, enumerate_right_groups_raw,
    enumerate_semigroups, random_associative_tables, CensusRow, ProbePool,
};
use crate::error::{Error, Result};
use crate::group::{group_homomorphisms, FiniteGroup};
use crate::morphisms::{enumerate_hom_structured, HomSearch, Morphism, DEFAULT_BUDGET};
use crate::pretorsion::{
    canonical_preexact_sequence, is_trivial_morphism, no_prekernel_certificate, prekernel,
    verify_prekernel, verify_pretorsion_axioms, AxiomCheck, NoPrekernelCertificate,
};
use crate::rightgroup::{check_right_group, RightGroup, UniversalCheck};
use crate::semigroup::{ElementId, FiniteSemigroup};

/// Orders at or below this always get the brute-force cross-check.
pub const ORACLE_MANDATORY_ORDER: usize = 5;

#[derive(Parser, Debug)]
#[command(
    name = "rightgroups",
    version,
    about = "Finite right groups: checks, decompositions, morphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest right group order in the universal-property probe pool.
    #[arg(long, global = true, default_value_t = 4)]
    pub probe_order: usize,
    /// Largest number of candidate maps a brute-force search may scan.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run brute-force cross-checks even above the mandatory order.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a table is a right group, condition by condition.
    Check { table: PathBuf },
    /// Split a right group as group x right zero semigroup.
    Decompose { table: PathBuf },
    /// Count (or list) morphisms between two tables.
    Hom {
        dom: PathBuf,
        cod: PathBuf,
        /// Print counts only (the default).
        #[arg(long, conflicts_with = "list")]
        count: bool,
        /// Print every morphism in the one-line format.
        #[arg(long)]
        list: bool,
    },
    /// Prekernel of a morphism between right groups, or of every morphism
    /// when no morphism file is given.
    Prekernel {
        dom: PathBuf,
        cod: PathBuf,
        morphism: Option<PathBuf>,
    },
    /// The canonical sequence E -> S -> S/~ and its universal properties.
    Sequence { table: PathBuf },
    /// The right group built from a group action.
    Action {
        action: PathBuf,
        /// Write the resulting Cayley table here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Enumerate a class of structures of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        class: StructureClass,
        /// Search raw Cayley tables.
        #[arg(long, conflicts_with = "structured")]
        raw: bool,
        /// Build from smaller parts (default where available).
        #[arg(long)]
        structured: bool,
        /// Directory to write one table file per member.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Right groups of each order up to a bound.
    Census {
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Pretorsion axioms on a pool of right groups, plus a random sweep of
    /// the right-group conditions.
    Verify {
        /// Largest right group order in the pool.
        #[arg(long, default_value_t = 4)]
        pool_order: usize,
        /// Random associative tables of orders 5 and 6 to sweep.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureClass {
    Semigroup,
    Group,
    #[value(name = "rightgroup")]
    #[serde(rename = "rightgroup")]
    RightGroup,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionLine {
    pub name: String,
    pub holds: bool,
    pub witness: Vec<ElementId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub order: usize,
    pub right_group: bool,
    pub conditions_agree: bool,
    pub idempotents: Vec<ElementId>,
    pub group_label: Option<String>,
    pub group_order: Option<usize>,
    pub conditions: Vec<ConditionLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub order: usize,
    pub idempotent_count: usize,
    pub e0: ElementId,
    pub group_label: String,
    /// Ambient ids of `Se₀`, indexed by local id.
    pub group_elements: Vec<ElementId>,
    pub group_table: Vec<Vec<ElementId>>,
    pub idempotents: Vec<ElementId>,
    pub sim_blocks: Vec<Vec<ElementId>>,
    pub equiv_blocks: Vec<Vec<ElementId>>,
    /// `(local group id, idempotent index)` per element.
    pub phi: Vec<(ElementId, usize)>,
    pub direct_product_pair: bool,
    pub sim_independent_of_base: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub dom_order: usize,
    pub cod_order: usize,
    pub structured: Option<usize>,
    pub oracle: Option<usize>,
    /// `(|E'|, |E|, |Hom(G, G')|)` when both sides are right groups.
    pub formula: Option<(usize, usize, usize)>,
    pub agree: bool,
    pub morphisms: Option<Vec<Vec<ElementId>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrekernelEntry {
    pub map: Vec<ElementId>,
    pub trivial: bool,
    pub idempotent_images: Vec<ElementId>,
    pub kernel: Option<Vec<ElementId>>,
    pub certificate: Option<NoPrekernelCertificate>,
    pub check: Option<UniversalCheck>,
}

impl PrekernelEntry {
    fn passed(&self) -> bool {
        let distinct = {
            let mut v = self.idempotent_images.clone();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let exists = self.kernel.is_some();
        exists == (distinct == 1) && self.check.as_ref().is_none_or(|c| c.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrekernelReport {
    pub dom_order: usize,
    pub cod_order: usize,
    pub probe_order: usize,
    pub probe_count: usize,
    pub entries: Vec<PrekernelEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub order: usize,
    pub inclusion: Vec<ElementId>,
    pub projection: Vec<ElementId>,
    pub quotient_label: String,
    pub probe_order: usize,
    pub prekernel_check: UniversalCheck,
    pub precokernel_check: UniversalCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub group_order: usize,
    pub set_size: usize,
    pub point: Option<usize>,
    pub trivial: bool,
    pub table: Vec<Vec<ElementId>>,
    pub right_group: bool,
    pub idempotents: Vec<ElementId>,
    pub eta_verified: bool,
    pub non_fullness: Option<NonFullnessReport>,
    pub emitted: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub class: StructureClass,
    pub order: usize,
    pub raw: bool,
    pub count: usize,
    pub labels: Vec<String>,
    pub files: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub samples: usize,
    pub right_groups: usize,
    /// Tables whose conditions disagree, in Cayley text format.
    pub disagreements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pool_order: usize,
    pub pool_size: usize,
    pub probe_order: usize,
    pub probe_count: usize,
    pub checks: Vec<AxiomCheck>,
    pub sweep: SweepReport,
}

/// Everything a subcommand can report. The text form is rendered from this
/// value, and `--json` serializes the same value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Check(CheckReport),
    Decompose(DecomposeReport),
    Hom(HomReport),
    Prekernel(PrekernelReport),
    Sequence(SequenceReport),
    Action(ActionReport),
    Enumerate(EnumerateReport),
    Census(CensusReport),
    Verify(VerifyReport),
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ids(v: &[ElementId]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn blocks(bs: &[Vec<ElementId>]) -> String {
    bs.iter()
        .map(|b| format!("{{{}}}", ids(b)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn table_lines(out: &mut String, rows: &[Vec<ElementId>]) {
    for r in rows {
        let _ = writeln!(out, "  {}", ids(r));
    }
}

fn universal_line(out: &mut String, name: &str, c: &UniversalCheck) {
    let _ = writeln!(
        out,
        "{name}: {} ({} probes, {} maps)",
        if c.holds { "pass" } else { "FAIL" },
        c.probes_checked,
        c.pairs_checked
    );
    if let Some(why) = &c.counterexample {
        let _ = writeln!(out, "  counterexample: {why}");
    }
}

impl Report {
    /// 0 when everything checked out, 1 when a property check failed.
    pub fn exit_code(&self) -> i32 {
        let ok = match self {
            Report::Check(r) => r.right_group && r.conditions_agree,
            Report::Decompose(r) => r.direct_product_pair && r.sim_independent_of_base,
            Report::Hom(r) => r.agree,
            Report::Prekernel(r) => r.entries.iter().all(PrekernelEntry::passed),
            Report::Sequence(r) => r.prekernel_check.holds && r.precokernel_check.holds,
            Report::Action(r) => {
                r.right_group
                    && r.eta_verified
                    && r.non_fullness
                        .as_ref()
                        .is_none_or(|n| n.witnesses_non_fullness())
            }
            Report::Enumerate(_) | Report::Census(_) => true,
            Report::Verify(r) => {
                r.checks.iter().all(|c| c.passed) && r.sweep.disagreements.is_empty()
            }
        };
        if ok {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        match self {
            Report::Check(r) => {
                match (&r.group_label, r.group_order) {
                    (Some(label), Some(order)) => {
                        let _ = writeln!(
                            o,
                            "right group: yes; |E|={}; group part: {label}-isomorphic (order {order})",
                            r.idempotents.len()
                        );
                    }
                    _ => {
                        let _ = writeln!(o, "right group: no");
                    }
                }
                let _ = writeln!(o, "order: {}", r.order);
                let _ = writeln!(o, "idempotents: {}", ids(&r.idempotents));
                let _ = writeln!(o, "conditions agree: {}", yes_no(r.conditions_agree));
                for c in &r.conditions {
                    let _ = writeln!(
                        o,
                        "  ({}) {}: {} [witness: {}]",
                        c.name,
                        yes_no(c.holds),
                        c.detail,
                        ids(&c.witness)
                    );
                }
            }
            Report::Decompose(r) => {
                let _ = writeln!(o, "order: {}", r.order);
                let _ = writeln!(o, "|E|: {}", r.idempotent_count);
                let _ = writeln!(o, "e0: {}", r.e0);
                let _ = writeln!(o, "idempotents: {}", ids(&r.idempotents));
                let _ = writeln!(
                    o,
                    "group part: {} on {}",
                    r.group_label,
                    ids(&r.group_elements)
                );
                let _ = writeln!(o, "group table:");
                table_lines(&mut o, &r.group_table);
                let _ = writeln!(o, "sim blocks: {}", blocks(&r.sim_blocks));
                let _ = writeln!(o, "equiv blocks: {}", blocks(&r.equiv_blocks));
                let pairs: Vec<String> = r.phi.iter().map(|(g, e)| format!("({g},{e})")).collect();
                let _ = writeln!(o, "phi: {}", pairs.join(" "));
                let _ = writeln!(o, "direct product pair: {}", yes_no(r.direct_product_pair));
                let _ = writeln!(
                    o,
                    "sim independent of base: {}",
                    yes_no(r.sim_independent_of_base)
                );
            }
            Report::Hom(r) => {
                let _ = writeln!(o, "orders: {} -> {}", r.dom_order, r.cod_order);
                let opt = |v: Option<usize>| v.map_or("-".to_string(), |c| c.to_string());
                let _ = writeln!(o, "structured count: {}", opt(r.structured));
                let _ = writeln!(o, "oracle count: {}", opt(r.oracle));
                if let Some((ec, e, h)) = r.formula {
                    let _ = writeln!(o, "formula: {ec}^{e} * {h}");
                }
                let _ = writeln!(o, "agree: {}", yes_no(r.agree));
                if let Some(ms) = &r.morphisms {
                    for m in ms {
                        let _ = writeln!(o, "{} {} {}", r.dom_order, r.cod_order, ids(m));
                    }
                }
            }
            Report::Prekernel(r) => {
                let _ = writeln!(o, "orders: {} -> {}", r.dom_order, r.cod_order);
                let _ = writeln!(
                    o,
                    "probe pool: right groups of order <= {} ({} probes)",
                    r.probe_order, r.probe_count
                );
                for e in &r.entries {
                    let _ = writeln!(o, "morphism: {}", ids(&e.map));
                    let _ = writeln!(o, "  trivial: {}", yes_no(e.trivial));
                    let _ = writeln!(o, "  images of idempotents: {}", ids(&e.idempotent_images));
                    match (&e.kernel, &e.certificate) {
                        (Some(k), _) => {
                            let _ = writeln!(o, "  prekernel: {}", ids(k));
                        }
                        (None, Some(c)) => {
                            let _ = writeln!(
                                o,
                                "  prekernel: none (f({})={} != f({})={})",
                                c.e1, c.f_e1, c.e2, c.f_e2
                            );
                        }
                        (None, None) => {
                            let _ = writeln!(o, "  prekernel: none");
                        }
                    }
                    if let Some(c) = &e.check {
                        let mut line = String::new();
                        universal_line(&mut line, "universal property", c);
                        for l in line.lines() {
                            let _ = writeln!(o, "  {l}");
                        }
                    }
                }
            }
            Report::Sequence(r) => {
                let _ = writeln!(o, "order: {}", r.order);
                let _ = writeln!(o, "inclusion: {}", ids(&r.inclusion));
                let _ = writeln!(o, "projection: {}", ids(&r.projection));
                let _ = writeln!(o, "quotient: {}", r.quotient_label);
                let _ = writeln!(o, "probe pool: right groups of order <= {}", r.probe_order);
                universal_line(&mut o, "prekernel", &r.prekernel_check);
                universal_line(&mut o, "precokernel", &r.precokernel_check);
            }
            Report::Action(r) => {
                let _ = writeln!(o, "group order: {}", r.group_order);
                let _ = writeln!(o, "set size: {}", r.set_size);
                let _ = writeln!(
                    o,
                    "point: {}",
                    r.point.map_or("-".to_string(), |p| p.to_string())
                );
                let _ = writeln!(o, "trivial: {}", yes_no(r.trivial));
                let _ = writeln!(o, "table:");
                table_lines(&mut o, &r.table);
                let _ = writeln!(o, "right group: {}", yes_no(r.right_group));
                let _ = writeln!(o, "idempotents: {}", ids(&r.idempotents));
                let _ = writeln!(o, "eta verified: {}", yes_no(r.eta_verified));
                if let Some(n) = &r.non_fullness {
                    let _ = writeln!(
                        o,
                        "non-fullness: images isomorphic {}, {} candidates, {} compatible, {} action isos",
                        yes_no(n.images_isomorphic),
                        n.candidates_checked,
                        n.compatible_from_action,
                        n.action_isos_found
                    );
                }
                if let Some(path) = &r.emitted {
                    let _ = writeln!(o, "wrote: {path}");
                }
            }
            Report::Enumerate(r) => {
                let class = match r.class {
                    StructureClass::Semigroup => "semigroup",
                    StructureClass::Group => "group",
                    StructureClass::RightGroup => "rightgroup",
                };
                let mode = if r.raw { "raw" } else { "structured" };
                let _ = writeln!(o, "{class} order {} ({mode}): {}", r.order, r.count);
                for l in &r.labels {
                    let _ = writeln!(o, "  {l}");
                }
                for f in &r.files {
                    let _ = writeln!(o, "wrote: {f}");
                }
            }
            Report::Census(r) => {
                let _ = writeln!(o, "{:>5} {:>5} {:>10}  classes", "n", "raw", "structured");
                for row in &r.rows {
                    let raw = row.count_raw.map_or("-".to_string(), |c| c.to_string());
                    let classes: Vec<String> = row
                        .classes
                        .iter()
                        .map(|c| format!("R{}x{}", c.idempotents, c.group))
                        .collect();
                    let _ = writeln!(
                        o,
                        "{:>5} {:>5} {:>10}  {}",
                        row.order,
                        raw,
                        row.count_structured,
                        classes.join(" ")
                    );
                }
            }
            Report::Verify(r) => {
                let _ = writeln!(
                    o,
                    "pool: {} right groups of order <= {}; probes: {} of order <= {}",
                    r.pool_size, r.pool_order, r.probe_count, r.probe_order
                );
                let width = r.checks.iter().map(|c| c.subject.len()).max().unwrap_or(0);
                for c in &r.checks {
                    let _ = writeln!(
                        o,
                        "axiom {}  {:<width$}  {}  {}",
                        c.axiom,
                        c.subject,
                        if c.passed { "pass" } else { "FAIL" },
                        c.detail
                    );
                }
                let s = &r.sweep;
                let _ = writeln!(
                    o,
                    "condition sweep: seed {}, {} tables, {} right groups, {} disagreements",
                    s.seed,
                    s.samples,
                    s.right_groups,
                    s.disagreements.len()
                );
                for d in &s.disagreements {
                    let _ = writeln!(o, "  counterexample:");
                    for l in d.lines() {
                        let _ = writeln!(o, "    {l}");
                    }
                }
            }
        }
        o
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<FiniteSemigroup> {
    FiniteSemigroup::parse(&read_file(path)?)
}

fn load_right_group(path: &Path) -> Result<RightGroup> {
    let s = load_table(path)?;
    RightGroup::new(&s).map_err(|e| match e {
        Error::NotARightGroup => Error::NotApplicable(format!(
            "{} is not a right group (see the check subcommand)",
            path.display()
        )),
        other => other,
    })
}

fn rows(s: &FiniteSemigroup) -> Vec<Vec<ElementId>> {
    s.elements().map(|a| s.table().row(a).to_vec()).collect()
}

fn probes(global: &GlobalArgs) -> Result<Vec<FiniteSemigroup>> {
    ProbePool {
        semigroup_order: 0,
        right_group_order: global.probe_order,
    }
    .semigroups()
}

fn check_report(s: &FiniteSemigroup) -> Result<CheckReport> {
    let cr = check_right_group(s)?;
    let conditions = cr
        .conditions()
        .iter()
        .map(|(name, c)| ConditionLine {
            name: name.to_string(),
            holds: c.holds,
            witness: c.witness.clone(),
            detail: c.detail.clone(),
        })
        .collect();
    let right_group = cr.is_right_group();
    let group = if right_group {
        let (g, _) = RightGroup::new(s)?.quotient_group();
        Some(g)
    } else {
        None
    };
    Ok(CheckReport {
        order: s.order(),
        right_group,
        conditions_agree: cr.all_agree(),
        idempotents: s.idempotents(),
        group_label: group.as_ref().map(FiniteGroup::label),
        group_order: group.as_ref().map(FiniteGroup::order),
        conditions,
    })
}

fn decompose_report(rg: &RightGroup) -> Result<DecomposeReport> {
    let d = rg.decompose();
    let mut sim_independent = true;
    for &e in rg.idempotents() {
        sim_independent &= rg.sim_at(e)?.partition() == d.sim.partition();
    }
    Ok(DecomposeReport {
        order: rg.order(),
        idempotent_count: rg.idempotents().len(),
        e0: d.e0,
        group_label: d.group_part.group.label(),
        group_elements: d.group_part.sub.embed.clone(),
        group_table: rows(d.group_part.semigroup()),
        idempotents: d.rzs_part.clone(),
        sim_blocks: d.sim.partition().blocks(),
        equiv_blocks: d.equiv.partition().blocks(),
        phi: d.phi.clone(),
        direct_product_pair: is_direct_product_pair(&d.sim, &d.equiv)?,
        sim_independent_of_base: sim_independent,
    })
}

fn hom_report(
    dom: &FiniteSemigroup,
    cod: &FiniteSemigroup,
    list: bool,
    global: &GlobalArgs,
) -> Result<HomReport> {
    let pair = match (RightGroup::new(dom), RightGroup::new(cod)) {
        (Ok(a), Ok(b)) => Some((a, b)),
        _ => None,
    };
    let structured = pair.as_ref().map(|(a, b)| enumerate_hom_structured(a, b));
    let run_oracle = structured.is_none()
        || global.oracle
        || dom.order().max(cod.order()) <= ORACLE_MANDATORY_ORDER;
    let oracle = if run_oracle {
        Some(HomSearch::new(dom, cod).budget(global.budget).run()?)
    } else {
        None
    };
    let formula = pair.as_ref().map(|(a, b)| {
        let (g, _) = a.quotient_group();
        let (h, _) = b.quotient_group();
        (
            b.idempotents().len(),
            a.idempotents().len(),
            group_homomorphisms(&g, &h).len(),
        )
    });
    let maps = |ms: &[Morphism]| -> Vec<Vec<ElementId>> {
        let mut v: Vec<Vec<ElementId>> = ms.iter().map(|m| m.map().to_vec()).collect();
        v.sort();
        v
    };
    let agree = {
        let counts_ok = match (&structured, formula) {
            (Some(s), Some((ec, e, h))) => s.len() == ec.pow(e as u32) * h,
            _ => true,
        };
        let sets_ok = match (&structured, &oracle) {
            (Some(s), Some(o)) => maps(s) == maps(o),
            _ => true,
        };
        counts_ok && sets_ok
    };
    let listed = if list {
        structured.as_ref().or(oracle.as_ref()).map(|ms| maps(ms))
    } else {
        None
    };
    Ok(HomReport {
        dom_order: dom.order(),
        cod_order: cod.order(),
        structured: structured.as_ref().map(Vec::len),
        oracle: oracle.as_ref().map(Vec::len),
        formula,
        agree,
        morphisms: listed,
    })
}

fn prekernel_entry(f: &Morphism, probes: &[FiniteSemigroup]) -> Result<PrekernelEntry> {
    let idempotent_images = f.dom().idempotents().iter().map(|&e| f.apply(e)).collect();
    let (kernel, check) = match prekernel(f) {
        Ok(pk) => {
            let check = verify_prekernel(f, &pk.inclusion, probes)?;
            (Some(pk.inclusion.map().to_vec()), Some(check))
        }
        Err(Error::NoPrekernel { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(PrekernelEntry {
        map: f.map().to_vec(),
        trivial: is_trivial_morphism(f).is_some(),
        idempotent_images,
        kernel,
        certificate: no_prekernel_certificate(f),
        check,
    })
}

fn sweep(seed: u64, samples: usize) -> Result<SweepReport> {
    let mut right_groups = 0;
    let mut disagreements = Vec::new();
    for s in random_associative_tables(&[5, 6], samples, seed) {
        let cr = check_right_group(&s)?;
        if !cr.all_agree() {
            disagreements.push(s.to_text());
        } else if cr.is_right_group() {
            right_groups += 1;
        }
    }
    Ok(SweepReport {
        seed,
        samples,
        right_groups,
        disagreements,
    })
}

fn enumerate_report(
    class: StructureClass,
    order: usize,
    raw_flag: bool,
    structured_flag: bool,
    emit: Option<&Path>,
) -> Result<EnumerateReport> {
    let raw = match class {
        StructureClass::Semigroup if structured_flag => {
            return Err(Error::NotApplicable(
                "semigroups are only enumerated raw".into(),
            ))
        }
        StructureClass::Semigroup => true,
        _ => raw_flag,
    };
    let (tables, labels): (Vec<FiniteSemigroup>, Vec<String>) = match class {
        StructureClass::Semigroup => {
            let ss = enumerate_semigroups(order)?;
            let labels = ss
                .iter()
                .map(|s| format!("{} idempotents", s.idempotents().len()))
                .collect();
            (ss, labels)
        }
        StructureClass::Group if raw => {
            let gs: Vec<FiniteGroup> = enumerate_semigroups(order)?
                .iter()
                .filter_map(|s| FiniteGroup::from_semigroup(s).ok())
                .collect();
            (
                gs.iter().map(|g| g.semigroup().clone()).collect(),
                gs.iter().map(FiniteGroup::label).collect(),
            )
        }
        StructureClass::Group => {
            let gs = enumerate_groups(order)?;
            (
                gs.iter().map(|g| g.semigroup().clone()).collect(),
                gs.iter().map(FiniteGroup::label).collect(),
            )
        }
        StructureClass::RightGroup => {
            let rgs = if raw {
                enumerate_right_groups_raw(order)?
            } else {
                enumerate_right_groups(order)?
            };
            let labels = rgs
                .iter()
                .map(|rg| {
                    format!(
                        "R{}x{}",
                        rg.idempotents().len(),
                        rg.quotient_group().0.label()
                    )
                })
                .collect();
            (
                rgs.iter().map(|rg| rg.semigroup().clone()).collect(),
                labels,
            )
        }
    };
    let mut files = Vec::new();
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir)?;
        let prefix = match class {
            StructureClass::Semigroup => "semigroup",
            StructureClass::Group => "group",
            StructureClass::RightGroup => "rightgroup",
        };
        for (i, (t, label)) in tables.iter().zip(&labels).enumerate() {
            let path = dir.join(format!("{prefix}-{order}-{i:03}.txt"));
            std::fs::write(&path, format!("# {label}\n{}", t.to_text()))?;
            files.push(path.display().to_string());
        }
    }
    Ok(EnumerateReport {
        class,
        order,
        raw,
        count: tables.len(),
        labels,
        files,
    })
}

fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Check { table } => Report::Check(check_report(&load_table(table)?)?),
        Command::Decompose { table } => {
            Report::Decompose(decompose_report(&load_right_group(table)?)?)
        }
        Command::Hom { dom, cod, list, .. } => {
            Report::Hom(hom_report(&load_table(dom)?, &load_table(cod)?, *list, g)?)
        }
        Command::Prekernel { dom, cod, morphism } => {
            let a = load_right_group(dom)?;
            let b = load_right_group(cod)?;
            let probes = probes(g)?;
            let morphisms = match morphism {
                Some(path) => vec![Morphism::parse_line(
                    &read_file(path)?,
                    a.semigroup(),
                    b.semigroup(),
                )?],
                None => HomSearch::new(a.semigroup(), b.semigroup())
                    .budget(g.budget)
                    .run()?,
            };
            let entries = morphisms
                .iter()
                .map(|f| prekernel_entry(f, &probes))
                .collect::<Result<Vec<_>>>()?;
            Report::Prekernel(PrekernelReport {
                dom_order: a.order(),
                cod_order: b.order(),
                probe_order: g.probe_order,
                probe_count: probes.len(),
                entries,
            })
        }
        Command::Sequence { table } => {
            let rg = load_right_group(table)?;
            let seq = canonical_preexact_sequence(&rg, &probes(g)?)?;
            Report::Sequence(SequenceReport {
                order: rg.order(),
                inclusion: seq.inclusion.map().to_vec(),
                projection: seq.projection.map().to_vec(),
                quotient_label: rg.quotient_group().0.label(),
                probe_order: g.probe_order,
                prekernel_check: seq.prekernel_check,
                precokernel_check: seq.precokernel_check,
            })
        }
        Command::Action { action, emit } => {
            let act = GroupAction::parse(&read_file(action)?)?;
            let rg = functor_f(&act);
            let right_group = check_right_group(rg.semigroup())?.is_right_group();
            let eta = eta_iso(&act);
            let eta_verified = eta.is_bijective() && eta.cod().same_as(rg.semigroup());
            let non_fullness = if act.is_trivial() {
                None
            } else {
                Some(non_fullness_witness_for(&act)?)
            };
            let emitted = match emit {
                Some(path) => {
                    std::fs::write(path, rg.semigroup().to_text())?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            Report::Action(ActionReport {
                group_order: act.group().order(),
                set_size: act.set_size(),
                point: act.point(),
                trivial: act.is_trivial(),
                table: rows(rg.semigroup()),
                right_group,
                idempotents: rg.idempotents().to_vec(),
                eta_verified,
                non_fullness,
                emitted,
            })
        }
        Command::Enumerate {
            order,
            class,
            raw,
            structured,
            emit,
        } => Report::Enumerate(enumerate_report(
            *class,
            *order,
            *raw,
            *structured,
            emit.as_deref(),
        )?),
        Command::Census { max } => Report::Census(CensusReport {
            rows: census(*max)?,
        }),
        Command::Verify {
            pool_order,
            samples,
        } => {
            let pool = ProbePool {
                semigroup_order: 0,
                right_group_order: *pool_order,
            }
            .right_groups()?;
            let probes = probes(g)?;
            let report = verify_pretorsion_axioms(&pool, &probes)?;
            Report::Verify(VerifyReport {
                pool_order: *pool_order,
                pool_size: report.pool_size,
                probe_order: g.probe_order,
                probe_count: report.probe_count,
                checks: report.checks,
                sweep: sweep(g.seed, *samples)?,
            })
        }
    })
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: if cli.global.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: if cli.global.json {
                serde_json::json!({ "error": e.to_string() }).to_string() + "\n"
            } else {
                String::new()
            },
            stderr: format!("error: {e}\n"),
        },
    }
}
