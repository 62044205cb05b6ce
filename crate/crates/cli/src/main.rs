//! Command-line front end: inspect lattice files, compute involution
//! invariants, analyze commuting involution pairs, enumerate invariant
//! profiles, and work with the built-in catalog of triples.
//!
//! Exit codes: 0 on success, 1 on input errors (unreadable files, parse
//! failures, invalid involutions or triples), 2 when the mathematics itself
//! is inconsistent (an identity that must hold fails to).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use enriq::catalog::{self, CatalogEntry};
use enriq::enriques::{analyze, AnalysisReport, Outcome};
use enriq::formats::{
    document_for_entry, parse_document, render_document, render_document_json, Document,
};
use enriq::invol::{fixed_set_topology, Involution};
use enriq::lattice::Lattice;
use enriq::profiles::{bound_report, default_profiles, BoundReport, Profile, PROFILE_NOTE};
use enriq::Error;

#[derive(Parser)]
#[command(
    name = "enriq",
    version,
    about = "Exact lattice arithmetic for involutions of the K3 lattice"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect lattices.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Inspect involutions.
    Involution {
        #[command(subcommand)]
        cmd: InvolutionCmd,
    },
    /// Analyze commuting involution pairs on the K3 lattice.
    Enriques {
        #[command(subcommand)]
        cmd: EnriquesCmd,
    },
    /// Enumerate invariant profiles and report the component-count bounds.
    Enumerate {
        /// Print only the maximal total component count.
        #[arg(long = "max-s", conflicts_with = "max_snor")]
        max_s: bool,
        /// Print only the maximal non-orientable component count.
        #[arg(long = "max-snor")]
        max_snor: bool,
    },
    /// Work with the built-in triples.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Print rank, determinant, signature, and discriminant data.
    Info {
        file: PathBuf,
        /// Lattice name inside the file; defaults to the first one.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum InvolutionCmd {
    /// Print the invariants of an involution from a file.
    Invariants {
        file: PathBuf,
        /// Involution name inside the file; defaults to the first one.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum EnriquesCmd {
    /// Run the full analysis on a triple file.
    Analyze {
        file: PathBuf,
        /// Triple name inside the file; defaults to the only triple.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the built-in triples.
    List,
    /// Write a built-in triple to a fixture file in the given directory.
    Emit { name: String, dir: PathBuf },
}

enum Failure {
    Input(String),
    Math(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Math(e) => {
                if e.is_inconsistency() {
                    2
                } else {
                    1
                }
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(msg) => write!(f, "{msg}"),
            Failure::Math(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Lattice {
            cmd: LatticeCmd::Info { file, name },
        } => {
            let doc = load_document(file)?;
            let lat = match name {
                Some(n) => doc.lattice(n)?,
                None => doc.first_lattice()?,
            };
            print!("{}", lattice_info(lat, cli.format)?);
            Ok(())
        }
        Command::Involution {
            cmd: InvolutionCmd::Invariants { file, name },
        } => {
            let doc = load_document(file)?;
            let block_name = match name {
                Some(n) => n.clone(),
                None => doc
                    .involutions
                    .first()
                    .ok_or_else(|| Error::Parse("document contains no involution".into()))?
                    .name
                    .clone(),
            };
            let inv = doc.involution(&block_name)?;
            print!("{}", involution_info(&block_name, &inv, cli.format)?);
            Ok(())
        }
        Command::Enriques {
            cmd: EnriquesCmd::Analyze { file, name },
        } => {
            let doc = load_document(file)?;
            let (tau, sigma) = doc.triple(name.as_deref())?;
            let report = analyze(&tau, &sigma)?;
            match cli.format {
                Format::Text => print!("{}", report_text(&report)),
                Format::Json => println!("{}", to_json(&report)?),
            }
            Ok(())
        }
        Command::Enumerate { max_s, max_snor } => {
            let profiles = default_profiles();
            let bounds = bound_report(&profiles)?;
            if *max_s {
                println!("{}", bounds.max_components);
            } else if *max_snor {
                println!("{}", bounds.max_non_orientable);
            } else {
                match cli.format {
                    Format::Text => print!("{}", enumeration_text(&profiles, &bounds)),
                    Format::Json => {
                        let value = serde_json::json!({
                            "note": PROFILE_NOTE,
                            "profiles": profiles,
                            "bounds": bounds,
                        });
                        println!("{}", pretty(&value)?);
                    }
                }
            }
            Ok(())
        }
        Command::Catalog { cmd } => match cmd {
            CatalogCmd::List => {
                let entries = catalog::standard_triples();
                match cli.format {
                    Format::Text => print!("{}", catalog_text(&entries)),
                    Format::Json => {
                        let rows: Vec<serde_json::Value> = entries
                            .iter()
                            .map(|e| {
                                serde_json::json!({
                                    "name": e.name,
                                    "summary": e.summary,
                                    "theta": e.expected_theta,
                                    "geometric": e.geometric,
                                    "warning": e.warning,
                                })
                            })
                            .collect();
                        println!("{}", pretty(&rows)?);
                    }
                }
                Ok(())
            }
            CatalogCmd::Emit { name, dir } => {
                let entry = catalog::standard_triples()
                    .into_iter()
                    .find(|e| e.name == name.as_str())
                    .ok_or_else(|| Failure::Input(format!("unknown catalog entry '{name}'")))?;
                let path = emit_entry(&entry, dir, cli.format)?;
                println!("{}", path.display());
                Ok(())
            }
        },
    }
}

fn load_document(path: &PathBuf) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_document(&text)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    pretty(value)
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Input(format!("cannot serialize output: {e}")))
}

fn emit_entry(entry: &CatalogEntry, dir: &PathBuf, format: Format) -> Result<PathBuf, Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
    let doc = document_for_entry(entry);
    let (file_name, contents) = match format {
        Format::Text => (format!("{}.triple", entry.name), render_document(&doc)),
        Format::Json => (format!("{}.json", entry.name), render_document_json(&doc)?),
    };
    let path = dir.join(file_name);
    std::fs::write(&path, contents)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn lattice_info(lat: &Lattice, format: Format) -> Result<String, Failure> {
    let (pos, neg, zero) = lat.signature()?;
    let disc = lat.discriminant_form()?;
    match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "lattice: {}", lat.name());
            let _ = writeln!(s, "rank: {}", lat.rank());
            let _ = writeln!(s, "det: {}", lat.det());
            let _ = writeln!(s, "signature: ({pos}, {neg}, {zero})");
            let _ = writeln!(s, "even: {}", yes_no(lat.is_even()));
            let _ = writeln!(s, "unimodular: {}", yes_no(lat.is_unimodular()));
            if disc.is_trivial() {
                let _ = writeln!(s, "discriminant group: trivial");
            } else {
                let factors: Vec<String> = disc
                    .divisors()
                    .iter()
                    .map(|d| format!("Z/{d}"))
                    .collect();
                let _ = writeln!(s, "discriminant group: {}", factors.join(" x "));
                if lat.is_even() {
                    let qs: Vec<String> = disc
                        .gens()
                        .iter()
                        .map(|g| disc.q(g).map(|v| v.to_string()))
                        .collect::<Result<_, _>>()?;
                    let _ = writeln!(s, "discriminant q on generators: {}", qs.join(" "));
                }
            }
            Ok(s)
        }
        Format::Json => {
            let divisors: Vec<String> = disc.divisors().iter().map(|d| d.to_string()).collect();
            let q_values: Option<Vec<String>> = if lat.is_even() {
                Some(
                    disc.gens()
                        .iter()
                        .map(|g| disc.q(g).map(|v| v.to_string()))
                        .collect::<Result<_, _>>()?,
                )
            } else {
                None
            };
            let value = serde_json::json!({
                "name": lat.name(),
                "rank": lat.rank(),
                "det": lat.det().to_string(),
                "signature": [pos, neg, zero],
                "even": lat.is_even(),
                "unimodular": lat.is_unimodular(),
                "discriminant_divisors": divisors,
                "discriminant_q": q_values,
            });
            Ok(format!("{}\n", pretty(&value)?))
        }
    }
}

fn k3_shaped(lat: &Lattice) -> bool {
    lat.rank() == 22
        && lat.is_even()
        && lat.is_unimodular()
        && lat.signature().map(|s| s == (3, 19, 0)).unwrap_or(false)
}

fn involution_info(name: &str, inv: &Involution, format: Format) -> Result<String, Failure> {
    let invariants = inv.invariants()?;
    let fixed_rank = inv.fixed_sublattice().rank();
    let anti_rank = inv.anti_sublattice().rank();
    let topology = if k3_shaped(inv.lattice()) {
        fixed_set_topology(&invariants).ok()
    } else {
        None
    };
    match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "involution: {name}");
            let _ = writeln!(s, "lattice: {}", inv.lattice().name());
            let _ = writeln!(s, "invariants (r, a, delta): {invariants}");
            let _ = writeln!(s, "fixed lattice rank: {fixed_rank}");
            let _ = writeln!(s, "anti lattice rank: {anti_rank}");
            if let Some(topo) = topology {
                let _ = writeln!(
                    s,
                    "fixed point set of the conjugate real structure: {topo} (components: {})",
                    topo.component_count()
                );
            }
            Ok(s)
        }
        Format::Json => {
            let value = serde_json::json!({
                "involution": name,
                "lattice": inv.lattice().name(),
                "invariants": invariants,
                "fixed_rank": fixed_rank,
                "anti_rank": anti_rank,
                "fixed_set": topology,
                "fixed_set_components": topology.as_ref().map(|t| t.component_count()),
            });
            Ok(format!("{}\n", pretty(&value)?))
        }
    }
}

fn outcome_text(o: &Outcome) -> String {
    let epsilon = o
        .epsilon
        .map(|e| e.to_string())
        .unwrap_or_else(|| "open".into());
    let brauer = match (o.brauer_min, o.brauer_max) {
        (Some(lo), Some(hi)) if lo == hi => lo.to_string(),
        (Some(lo), Some(hi)) => format!("{lo}..{hi}"),
        _ => "none".into(),
    };
    format!(
        "beta={} b={} s_nor={} s_or={} components={} epsilon={epsilon} Br={brauer}",
        o.beta, o.b, o.s_nor, o.s_or, o.components
    )
}

fn report_text(rep: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "lattice: {}", rep.lattice);
    let _ = writeln!(s, "tau: {}", rep.tau);
    let _ = writeln!(s, "sigma: {}", rep.sigma);
    let _ = writeln!(s, "tau.sigma: {}", rep.tau_sigma);
    let _ = writeln!(s, "theta: {}", rep.theta);
    let _ = writeln!(s, "theta in table: {}", yes_no(rep.theta_in_table));
    let _ = writeln!(s, "sigma hyperbolic: {}", yes_no(rep.sigma_hyperbolic));
    let _ = writeln!(
        s,
        "tau.sigma hyperbolic: {}",
        yes_no(rep.tau_sigma_hyperbolic)
    );
    let _ = writeln!(s, "geometric: {}", yes_no(rep.geometric));
    let _ = writeln!(
        s,
        "eigenlattice ranks (++, +-, -+, --): {} {} {} {}",
        rep.rank_fix_fix, rep.rank_fix_anti, rep.rank_anti_fix, rep.rank_anti_anti
    );
    let _ = writeln!(s, "h+: {}", rep.h_plus);
    let _ = writeln!(s, "h-: {}", rep.h_minus);
    let _ = writeln!(s, "c: {}", rep.c);
    let _ = writeln!(s, "gamma: {}", rep.gamma);
    let _ = writeln!(s, "alpha: {}", rep.alpha);
    let _ = writeln!(s, "delta_pm: {}", rep.delta_pm);
    let _ = writeln!(s, "f class nonzero: {}", yes_no(rep.f_nonzero));
    let _ = writeln!(
        s,
        "fixed dim of the Anti(tau) image: {}",
        rep.anti_image_fixed_dim
    );
    let _ = writeln!(
        s,
        "fixed dim of the Fix(tau) image: {}",
        rep.inv_image_fixed_dim
    );
    let _ = writeln!(s, "fixed dim of the mod-2 quotient: {}", rep.quotient_fixed_dim);
    let _ = writeln!(s, "fixed dim of the Picard group: {}", rep.picard_fixed_dim);
    match rep.beta {
        Some(b) => {
            let _ = writeln!(s, "beta: {b}");
        }
        None => {
            let _ = writeln!(s, "beta: open");
        }
    }
    let bs: Vec<String> = rep.b_candidates.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(s, "b candidates: {}", bs.join(" "));
    match &rep.topology {
        Some(topo) => {
            let _ = writeln!(
                s,
                "sigma fixed set: {} (components: {})",
                topo.sigma_fixed_set,
                topo.sigma_fixed_set.component_count()
            );
            let _ = writeln!(
                s,
                "tau.sigma fixed set: {} (components: {})",
                topo.tau_sigma_fixed_set,
                topo.tau_sigma_fixed_set.component_count()
            );
            let _ = writeln!(
                s,
                "component sum: {} ({} loci nonempty)",
                topo.component_sum, topo.positive_count
            );
            if topo.empty_real_locus {
                let _ = writeln!(s, "real locus: empty");
            }
            let _ = writeln!(s, "outcomes:");
            for o in &topo.outcomes {
                let _ = writeln!(s, "  {}", outcome_text(o));
            }
        }
        None => {
            let _ = writeln!(
                s,
                "real locus: not derived (needs both fixed lattices hyperbolic)"
            );
        }
    }
    let _ = writeln!(s, "identities verified: {}", rep.identities_verified);
    s
}

fn tuple_text(t: (usize, usize, u8)) -> String {
    format!("({},{},{})", t.0, t.1, t.2)
}

fn enumeration_text(profiles: &[Profile], bounds: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {PROFILE_NOTE}");
    let _ = writeln!(
        s,
        "{:<10} {:<10} {:<10} {:>2} {:>2} {:>2} {:>5} {:>5} {:>8} {:>4} {:>5} {:>2}  outcomes",
        "theta", "sigma", "tau.sigma", "h+", "h-", "c", "gamma", "alpha", "delta_pm", "s(s)",
        "s(ts)", "b0"
    );
    for p in profiles {
        let outcomes: Vec<String> = p.outcomes.iter().map(outcome_text).collect();
        let _ = writeln!(
            s,
            "{:<10} {:<10} {:<10} {:>2} {:>2} {:>2} {:>5} {:>5} {:>8} {:>4} {:>5} {:>2}  {}",
            tuple_text(p.theta),
            tuple_text(p.sigma),
            tuple_text(p.tau_sigma),
            p.h_plus,
            p.h_minus,
            p.c,
            p.gamma,
            p.alpha,
            p.delta_pm,
            p.s_sigma,
            p.s_tau_sigma,
            p.b0,
            outcomes.join(" | ")
        );
    }
    let _ = writeln!(s, "profiles: {}", bounds.profile_count);
    let _ = writeln!(s, "outcomes: {}", bounds.outcome_count);
    let w = &bounds.max_component_witness;
    let _ = writeln!(
        s,
        "max components: {} (theta={}, sigma={}, tau.sigma={})",
        bounds.max_components,
        tuple_text(w.theta),
        tuple_text(w.sigma),
        tuple_text(w.tau_sigma)
    );
    let w = &bounds.max_non_orientable_witness;
    let _ = writeln!(
        s,
        "max non-orientable components: {} (theta={}, sigma={}, tau.sigma={})",
        bounds.max_non_orientable,
        tuple_text(w.theta),
        tuple_text(w.sigma),
        tuple_text(w.tau_sigma)
    );
    s
}

fn catalog_text(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    let name_width = entries.iter().map(|e| e.name.len()).max().unwrap_or(4);
    for e in entries {
        let status = if e.warning.is_some() {
            "rejected"
        } else if e.geometric {
            "geometric"
        } else {
            "algebraic"
        };
        let _ = writeln!(
            s,
            "{:<name_width$}  theta={:<9} {:<9}  {}",
            e.name,
            tuple_text(e.expected_theta),
            status,
            e.summary
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_distinguish_input_errors_from_inconsistencies() {
        assert_eq!(Failure::Input("bad file".into()).code(), 1);
        assert_eq!(Failure::Math(Error::Parse("truncated".into())).code(), 1);
        assert_eq!(
            Failure::Math(Error::InvalidTriple("do not commute".into())).code(),
            1
        );
        assert_eq!(
            Failure::Math(Error::Inconsistency("sides disagree".into())).code(),
            2
        );
    }
}
