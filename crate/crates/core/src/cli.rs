//! Command-line front end. [`run`] returns the process exit code:
//! 0 clean, 1 violation found, 2 input error, 3 resource limit under
//! `--strict-limits`.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::char_subgroups::{
    components_and_layer, fitting, frattini, generalized_fitting, nilpotent_residual, p_core,
    u_hypercenter,
};
use crate::corpus::{builtin, builtin_corpus, load_group_file};
use crate::error::Error;
use crate::fusion::fusion_system;
use crate::group::{prime_divisors, Group, DEFAULT_MAX_ORDER};
use crate::lattice::{sylow_subgroups, SubgroupLattice, DEFAULT_MAX_SUBGROUPS};
use crate::props::{is_nilpotent, is_p_nilpotent, is_solvable, is_supersolvable};
use crate::supplements::{supplementation_profile, Property};
use crate::theorems::{check_group, sweep, SweepConfig, TheoremId, TheoremReport, Verdict};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fusionlab",
    version,
    about = "Finite groups, fusion systems and supplementation audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Limits {
    /// Largest group order accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Largest subgroup lattice built.
    #[arg(long, default_value_t = DEFAULT_MAX_SUBGROUPS)]
    max_subgroups: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural report for one group.
    Analyze {
        /// `builtin:NAME` or a group file.
        group: String,
        /// List every subgroup.
        #[arg(long)]
        lattice: bool,
        /// Frattini, Fitting, layer, hypercenters and residuals.
        #[arg(long)]
        char_subgroups: bool,
        /// Supplementation properties of every subgroup.
        #[arg(long)]
        supplements: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Fusion system of a group on a Sylow subgroup.
    Fusion {
        group: String,
        #[arg(short = 'p', long = "prime")]
        prime: usize,
        /// List E*_F: the essential subgroups together with S.
        #[arg(long)]
        essential: bool,
        /// List the strongly F-closed subgroups.
        #[arg(long)]
        strongly_closed: bool,
        /// Decide supersolvability and print a witness chain.
        #[arg(long)]
        supersolvable: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run one theorem check on one group.
    Check {
        theorem: String,
        group: String,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Scope Theorem 3.2's order-4 clause to the whole group.
        #[arg(long)]
        thm_3_2_strict: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Audit every theorem over a corpus.
    Sweep {
        /// `builtin` or a directory of group files.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the markdown report here instead of standard output.
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// Worker threads (default: FUSIONLAB_JOBS, else all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Exit with status 3 when any resource limit was hit.
        #[arg(long)]
        strict_limits: bool,
        #[arg(long)]
        thm_3_2_strict: bool,
        /// Record per-group wall-clock time in the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: Limits,
    },
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_CLEAN
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Limit(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_LIMIT
        }
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "error: writing output: {e}");
            EXIT_INPUT
        }
    }
}

enum Failure {
    Input(String),
    Limit(String),
    Output(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ResourceLimit { .. } => Failure::Limit(e.to_string()),
            Error::Io {
                ref path,
                ref source,
            } if source.kind() == io::ErrorKind::NotFound => {
                Failure::Input(format!("file not found: {path}"))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Output(e)
    }
}

fn resolve_group(input: &str, max_order: usize) -> Result<Group, Failure> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let g = builtin(name)?;
        if g.order() > max_order {
            return Err(Error::ResourceLimit {
                group: name.to_string(),
                what: "group order",
                limit: max_order,
            }
            .into());
        }
        return Ok(g);
    }
    Ok(load_group_file(Path::new(input), max_order)?)
}

fn load_corpus(input: &str, max_order: usize) -> Result<Vec<Group>, Failure> {
    if input == "builtin" {
        return Ok(builtin_corpus()?);
    }
    let dir = Path::new(input);
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: input.to_string(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    let mut groups = Vec::with_capacity(paths.len());
    for p in paths {
        match load_group_file(&p, max_order) {
            Ok(g) => groups.push(g),
            Err(e) => return Err(Failure::Input(format!("{}: {e}", p.display()))),
        }
    }
    Ok(groups)
}

fn jobs_from_env() -> usize {
    std::env::var("FUSIONLAB_JOBS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Analyze {
            group,
            lattice,
            char_subgroups,
            supplements,
            limits,
        } => {
            let g = resolve_group(&group, limits.max_order)?;
            let lat = SubgroupLattice::build(&g, limits.max_subgroups)?;
            analyze(&lat, lattice, char_subgroups, supplements, out)?;
            Ok(EXIT_CLEAN)
        }
        Command::Fusion {
            group,
            prime,
            essential,
            strongly_closed,
            supersolvable,
            limits,
        } => {
            let g = resolve_group(&group, limits.max_order)?;
            let lat = SubgroupLattice::build(&g, limits.max_subgroups)?;
            fusion_report(&lat, prime, essential, strongly_closed, supersolvable, out)?;
            Ok(EXIT_CLEAN)
        }
        Command::Check {
            theorem,
            group,
            json,
            thm_3_2_strict,
            limits,
        } => {
            let id: TheoremId = theorem.parse()?;
            let g = resolve_group(&group, limits.max_order)?;
            let cfg = SweepConfig {
                max_order: limits.max_order,
                max_subgroups: limits.max_subgroups,
                thm_3_2_strict,
                ..SweepConfig::default()
            };
            let report = check_group(id, &g, &cfg)?;
            if json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                writeln!(out, "{text}")?;
            } else {
                write_report(&report, out)?;
            }
            Ok(if report.is_clean() {
                EXIT_CLEAN
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Sweep {
            corpus,
            json,
            markdown,
            jobs,
            strict_limits,
            thm_3_2_strict,
            timings,
            limits,
        } => {
            let groups = load_corpus(&corpus, limits.max_order)?;
            let cfg = SweepConfig {
                max_order: limits.max_order,
                max_subgroups: limits.max_subgroups,
                thm_3_2_strict,
                jobs: jobs.unwrap_or_else(jobs_from_env),
                record_timings: timings,
                ..SweepConfig::default()
            };
            let report = sweep(&groups, &cfg)?;
            if let Some(path) = json {
                std::fs::write(&path, report.to_json()).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            let md = report.to_markdown();
            match markdown {
                Some(path) => std::fs::write(&path, md).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => write!(out, "{md}")?,
            }
            Ok(if report.verdict == Verdict::Fail {
                EXIT_VIOLATION
            } else if strict_limits && report.hit_resource_limit() {
                EXIT_LIMIT
            } else {
                EXIT_CLEAN
            })
        }
    }
}

fn analyze(
    lat: &SubgroupLattice,
    show_lattice: bool,
    show_char: bool,
    show_supplements: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    let g = lat.group();
    let v = lat.whole();
    writeln!(out, "group {} of order {}", g.id(), g.order())?;
    writeln!(
        out,
        "  subgroups: {} in {} conjugacy classes",
        lat.len(),
        lat.conjugacy_classes().len()
    )?;
    writeln!(out, "  abelian: {}", yes(g.is_abelian()))?;
    writeln!(out, "  nilpotent: {}", yes(is_nilpotent(v)))?;
    writeln!(out, "  supersolvable: {}", yes(is_supersolvable(v)))?;
    writeln!(out, "  solvable: {}", yes(is_solvable(v)))?;
    for p in prime_divisors(g.order()) {
        writeln!(
            out,
            "  p = {p}: {} Sylow subgroup(s), {}-nilpotent: {}",
            sylow_subgroups(v, p).len(),
            p,
            yes(is_p_nilpotent(v, p))
        )?;
    }
    if show_lattice {
        writeln!(out, "\nsubgroups (canonical order):")?;
        for id in lat.ids() {
            let gens: Vec<&str> = lat.generators_of(id).iter().map(|&x| g.label(x)).collect();
            writeln!(
                out,
                "  {id:>5}  order {:>4}  {}  <{}>",
                lat.order_of(id),
                if lat.is_normal(id) {
                    "normal"
                } else {
                    "      "
                },
                gens.join(", ")
            )?;
        }
    }
    if show_char {
        writeln!(out, "\ncharacteristic subgroups:")?;
        let (components, e) = components_and_layer(v);
        let rows = [
            ("Z(G)", v.center()),
            ("G'", v.derived_subgroup()),
            ("Phi(G)", frattini(v)),
            ("F(G)", fitting(v)),
            ("E(G)", e),
            ("F*(G)", generalized_fitting(v)),
            ("Z_U(G)", u_hypercenter(v)),
            ("G^N", nilpotent_residual(v)),
        ];
        for (name, id) in rows {
            writeln!(out, "  {name:<7} {}", lat.describe(id))?;
        }
        for p in prime_divisors(g.order()) {
            writeln!(out, "  O_{p:<5} {}", lat.describe(p_core(v, p)))?;
        }
        writeln!(out, "  components: {}", components.len())?;
    }
    if show_supplements {
        writeln!(out, "\nsupplementation (1 = holds):")?;
        let header: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
        writeln!(out, "  {:>5}  {:>5}  {}", "H", "order", header.join(" "))?;
        for id in lat.ids() {
            let prof = supplementation_profile(v, id);
            let cells: Vec<String> = Property::ALL
                .iter()
                .map(|&p| {
                    let mark = if prof.holds(p) { "1" } else { "0" };
                    format!("{mark:>width$}", width = p.name().len())
                })
                .collect();
            writeln!(
                out,
                "  {id:>5}  {:>5}  {}",
                lat.order_of(id),
                cells.join(" ")
            )?;
        }
    }
    Ok(())
}

fn fusion_report(
    lat: &SubgroupLattice,
    p: usize,
    essential: bool,
    strongly_closed: bool,
    supersolvable: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let f = fusion_system(lat.whole(), p)?;
    writeln!(
        out,
        "fusion system of {} at p = {p} over S = {}",
        lat.group().id(),
        lat.describe(f.sylow())
    )?;
    writeln!(out, "  objects: {}", f.objects().len())?;
    if essential {
        writeln!(out, "essential subgroups together with S:")?;
        for q in f.essential_star()? {
            writeln!(
                out,
                "  {}  |Out_F| = {}",
                lat.describe(q),
                f.out_f(q)?.order()
            )?;
        }
    }
    if strongly_closed {
        writeln!(out, "strongly closed subgroups:")?;
        for q in f.strongly_closed_subgroups() {
            writeln!(out, "  {}", lat.describe(q))?;
        }
    }
    if supersolvable {
        match f.supersolvable_chain() {
            Some(chain) => {
                writeln!(out, "supersolvable: yes")?;
                for q in chain {
                    writeln!(out, "  {}", lat.describe(q))?;
                }
            }
            None => writeln!(out, "supersolvable: no")?,
        }
    }
    Ok(())
}

fn write_report(r: &TheoremReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{} on {} (order {})", r.theorem_id, r.group, r.order)?;
    writeln!(out, "  instantiations: {}", r.instantiations)?;
    writeln!(out, "  hypothesis hits: {}", r.hypothesis_hits)?;
    writeln!(out, "  violations: {}", r.violations.len())?;
    for n in &r.notes {
        writeln!(out, "  note: {n}")?;
    }
    for s in &r.skipped {
        writeln!(out, "  skipped: {s}")?;
    }
    for i in &r.instances {
        let params: Vec<String> = i
            .parameters
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        writeln!(
            out,
            "  instance [{}]: hypothesis {}, conclusion {}",
            params.join("; "),
            i.hypothesis,
            i.conclusion
        )?;
        if let Some(n) = &i.note {
            writeln!(out, "    {n}")?;
        }
    }
    for v in &r.violations {
        writeln!(out, "  VIOLATION: {}", v.detail)?;
        for (k, val) in &v.parameters {
            writeln!(out, "    {k} = {val}")?;
        }
        for w in &v.witnesses {
            writeln!(out, "    witness: {w}")?;
        }
    }
    Ok(())
}
