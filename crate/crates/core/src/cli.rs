//! Command-line front end. [`run`] returns the exit code and the text to
//! print so it can be tested without spawning a process.
//!
//! Exit codes: 0 computed or valid, 1 structure invalid, 2 result undefined,
//! 3 usage, IO or JSON error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::arith::{format_vector, LinearSolution};
use crate::exec::Exec;
use crate::fincat::{self, equivalence_witness, validate_category, FinCat, SearchBudget};
use crate::format::{self, FormatError};
use crate::higher::{self, bicat_adjacency, chi_n, internal_equiv_classes, validate_bicat, FinBicat};
use crate::magnitude::{self, adjacency, coweighting_solutions, weighting_solutions, EulerResult};
use crate::simplicial::{self, chi_sset, filler_report, validate_sset, SSetChi, TruncatedSSet};
use crate::DEFAULT_BUDGET;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNDEFINED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "eulerkit", version, about = "Exact Euler characteristics of finite categories, bicategories and nerves")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Run without data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct ChiOpts {
    file: PathBuf,
    /// Print the adjacency matrix.
    #[arg(long)]
    matrix: bool,
    /// Print a weighting and a coweighting.
    #[arg(long)]
    witness: bool,
}

#[derive(Args, Debug)]
struct Solve {
    file: PathBuf,
    /// Also print a nullspace basis.
    #[arg(long)]
    witness: bool,
}

#[derive(Args, Debug)]
struct Unary {
    file: PathBuf,
    #[arg(short = 'o', value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Binary {
    left: PathBuf,
    right: PathBuf,
    #[arg(short = 'o', value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check a category file.
    Validate { file: PathBuf },
    /// Euler characteristic of a category.
    Chi(ChiOpts),
    /// All weightings: a particular solution and the nullspace dimension.
    Weighting(Solve),
    /// All coweightings.
    Coweighting(Solve),
    /// Opposite category.
    Opposite(Unary),
    /// Skeleton: one object per isomorphism class.
    Skeleton(Unary),
    /// Product of two categories.
    Product(Binary),
    /// Disjoint union of two categories.
    Coproduct(Binary),
    /// Decide equivalence of two categories.
    Equivalent {
        left: PathBuf,
        right: PathBuf,
        /// Print the object map of the forward functor.
        #[arg(long)]
        witness: bool,
    },
    /// Euler characteristic of a bicategory.
    ChiBicat(ChiOpts),
    /// Euler characteristic of a hom-data tower.
    ChiN { file: PathBuf },
    /// Internal equivalence classes of 0-cells of a bicategory.
    InternalClasses { file: PathBuf },
    /// Nerve of a category as a truncated simplicial set.
    Nerve {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(short = 'o', value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check the simplicial identities.
    ValidateSset { file: PathBuf },
    /// Inner horn filler report; fails unless every horn has a filler.
    Horncheck {
        file: PathBuf,
        /// Require exactly one filler per horn.
        #[arg(long)]
        unique: bool,
    },
    /// Euler characteristic of a simplicial set where one is determined.
    ChiSset { file: PathBuf },
}

enum Fail {
    Error(String),
    Invalid(Vec<String>),
    Undefined(String),
}

type Outcome = Result<String, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Error(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(out: &Option<PathBuf>, text: String) -> Outcome {
    match out {
        Some(p) => {
            fs::write(p, text + "\n").map_err(|e| Fail::Error(format!("cannot write {}: {e}", p.display())))?;
            Ok(format!("wrote {}", p.display()))
        }
        None => Ok(text),
    }
}

fn parse_fail(path: &Path, e: FormatError) -> Fail {
    if e.is_structural() {
        Fail::Invalid(vec![e.to_string()])
    } else {
        Fail::Error(format!("{}: {e}", path.display()))
    }
}

fn load_category(path: &Path) -> Result<FinCat, Fail> {
    let raw = format::category_from_json(&read(path)?).map_err(|e| parse_fail(path, e))?;
    validate_category(&raw).map_err(|vs| Fail::Invalid(vs.iter().map(ToString::to_string).collect()))
}

fn load_bicat(path: &Path) -> Result<FinBicat, Fail> {
    let raw = format::bicat_from_json(&read(path)?).map_err(|e| parse_fail(path, e))?;
    validate_bicat(&raw).map_err(|vs| Fail::Invalid(vs.iter().map(ToString::to_string).collect()))
}

fn load_sset(path: &Path) -> Result<TruncatedSSet, Fail> {
    let raw = format::sset_from_json(&read(path)?).map_err(|e| parse_fail(path, e))?;
    validate_sset(&raw).map_err(|vs| Fail::Invalid(vs.iter().map(ToString::to_string).collect()))
}

fn budget() -> Result<SearchBudget, Fail> {
    match std::env::var("EULERKIT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(SearchBudget::new)
            .map_err(|_| Fail::Error(format!("EULERKIT_BUDGET must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(SearchBudget::new(DEFAULT_BUDGET)),
    }
}

fn report_chi(r: &EulerResult, witness: bool, mut lines: Vec<String>) -> Outcome {
    if witness {
        if let Some(w) = &r.witness_weighting {
            lines.push(format!("weighting = {}", format_vector(&w.values)));
        }
        if let Some(w) = &r.witness_coweighting {
            lines.push(format!("coweighting = {}", format_vector(&w.values)));
        }
    }
    match &r.value {
        Some(v) => {
            lines.insert(0, format!("chi = {v}"));
            Ok(lines.join("\n"))
        }
        None => {
            let missing = match (&r.witness_weighting, &r.witness_coweighting) {
                (None, None) => "no weighting and no coweighting",
                (None, _) => "no weighting",
                _ => "no coweighting",
            };
            lines.insert(0, format!("chi undefined: {missing}"));
            Err(Fail::Undefined(lines.join("\n")))
        }
    }
}

fn report_solution(side: &str, s: &LinearSolution, witness: bool) -> Outcome {
    match &s.particular {
        None => Err(Fail::Undefined(format!("no {side}"))),
        Some(p) => {
            let mut out = format!("particular = {}; nullspace dim = {}", format_vector(p), s.nullspace_basis.len());
            if witness {
                for b in &s.nullspace_basis {
                    out.push_str(&format!("\nbasis = {}", format_vector(b)));
                }
            }
            Ok(out)
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.verb {
        Verb::Validate { file } => {
            let c = load_category(&file)?;
            Ok(format!("valid: {} objects, {} morphisms", c.object_count(), c.morphism_count()))
        }
        Verb::Chi(o) => {
            let c = load_category(&o.file)?;
            let m = adjacency(&c).matrix;
            let lines = if o.matrix { vec![format!("matrix = {}", m.to_compact_string())] } else { vec![] };
            report_chi(&magnitude::matrix_euler_char(&m), o.witness, lines)
        }
        Verb::Weighting(s) => {
            let c = load_category(&s.file)?;
            report_solution("weighting", &weighting_solutions(&adjacency(&c).matrix), s.witness)
        }
        Verb::Coweighting(s) => {
            let c = load_category(&s.file)?;
            report_solution("coweighting", &coweighting_solutions(&adjacency(&c).matrix), s.witness)
        }
        Verb::Opposite(u) => {
            let c = load_category(&u.file)?;
            write_or_print(&u.out, format::category_to_json(&fincat::opposite(&c)))
        }
        Verb::Skeleton(u) => {
            let c = load_category(&u.file)?;
            write_or_print(&u.out, format::category_to_json(&fincat::skeleton(&c)))
        }
        Verb::Product(b) => {
            let (c, d) = (load_category(&b.left)?, load_category(&b.right)?);
            write_or_print(&b.out, format::category_to_json(&fincat::product(&c, &d)))
        }
        Verb::Coproduct(b) => {
            let (c, d) = (load_category(&b.left)?, load_category(&b.right)?);
            write_or_print(&b.out, format::category_to_json(&fincat::coproduct(&c, &d)))
        }
        Verb::Equivalent { left, right, witness } => {
            let (c, d) = (load_category(&left)?, load_category(&right)?);
            let mut budget = budget()?;
            match equivalence_witness(&c, &d, &mut budget) {
                Err(e) => Err(Fail::Undefined(format!("equivalent undecided: {e}"))),
                Ok(None) => Ok("equivalent = false".into()),
                Ok(Some(eq)) => {
                    let mut out = "equivalent = true".to_string();
                    if witness {
                        let map: Vec<String> = eq
                            .forward
                            .object_map
                            .iter()
                            .enumerate()
                            .map(|(x, &y)| format!("{} -> {}", c.objects()[x], d.objects()[y]))
                            .collect();
                        out.push_str(&format!("\nobjects: {}", map.join(", ")));
                    }
                    Ok(out)
                }
            }
        }
        Verb::ChiBicat(o) => {
            let b = load_bicat(&o.file)?;
            let m = bicat_adjacency(&b, exec).map_err(|e| Fail::Undefined(e.to_string()))?;
            let lines = if o.matrix { vec![format!("matrix = {}", m.to_compact_string())] } else { vec![] };
            report_chi(&magnitude::matrix_euler_char(&m), o.witness, lines)
        }
        Verb::ChiN { file } => {
            let d = format::datum_from_json(&read(&file)?).map_err(|e| parse_fail(&file, e))?;
            match chi_n(&d, exec) {
                Ok(r) => report_chi(&r, false, vec![]),
                Err(e @ higher::HigherError::HomEcUndefined { .. }) => {
                    Err(Fail::Undefined(format!("{e} (path {})", e.path_string())))
                }
            }
        }
        Verb::InternalClasses { file } => {
            let b = load_bicat(&file)?;
            let mut budget = budget()?;
            let p = internal_equiv_classes(&b, &mut budget)
                .map_err(|e| Fail::Undefined(format!("internal classes undecided: {e}")))?;
            let lines: Vec<String> = (0..p.class_count())
                .map(|k| {
                    let names: Vec<&str> = p.members(k).iter().map(|&x| b.zero_cells()[x].as_str()).collect();
                    format!("class {k}: {}", names.join(", "))
                })
                .collect();
            Ok(lines.join("\n"))
        }
        Verb::Nerve { file, dim, out } => {
            let c = load_category(&file)?;
            write_or_print(&out, format::sset_to_json(&simplicial::nerve(&c, dim)))
        }
        Verb::ValidateSset { file } => {
            let x = load_sset(&file)?;
            let counts: Vec<String> = x.counts().iter().map(ToString::to_string).collect();
            Ok(format!("valid: dim {}, simplex counts [{}]", x.dim(), counts.join(", ")))
        }
        Verb::Horncheck { file, unique } => {
            let x = load_sset(&file)?;
            let r = filler_report(&x, exec);
            let ok = if unique { r.is_nerve_shaped() } else { r.is_quasi_category() };
            if ok {
                Ok(r.to_string())
            } else {
                Err(Fail::Invalid(vec![r.to_string()]))
            }
        }
        Verb::ChiSset { file } => {
            let x = load_sset(&file)?;
            match chi_sset(&x, exec) {
                SSetChi::Computed(r) => report_chi(&r, false, vec![]),
                SSetChi::Undefined(why) => Err(Fail::Undefined(format!("chi undefined: {why}"))),
            }
        }
    }
}

/// Parses `argv` (including the program name) and runs one verb.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            return (code, e.render().to_string().trim_end().to_string());
        }
    };
    match dispatch(cli) {
        Ok(s) => (EXIT_OK, s),
        Err(Fail::Invalid(lines)) => {
            let mut out = vec!["invalid:".to_string()];
            out.extend(lines.into_iter().map(|l| format!("  {l}")));
            (EXIT_INVALID, out.join("\n"))
        }
        Err(Fail::Undefined(s)) => (EXIT_UNDEFINED, s),
        Err(Fail::Error(s)) => (EXIT_ERROR, format!("error: {s}")),
    }
}
