//! Command-line driver for `dtseries`.

pub mod cache;
pub mod error;
pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use dtseries::formulas::{
    cheah_series, dt_invariant_nm1, goettsche_euler_direct, hilb_kernel, im1_euler_direct, incidence_euler_direct,
    moduli_im1_dimension, moduli_im1_series,
};
use dtseries::geometry::{e_polynomial, euler_number, fibration_e_polynomial, registry_lookup, GeometryError};
use dtseries::local_hom::{hom_dimension, verify_tangent_jump, MonomialIdeal};
use dtseries::oracles::{colored_partitions_count, nested_colored_count};
use dtseries::{FibrationSpec, HodgeDiamond, TruncatedSeries};

use crate::cache::{Lookup, SeriesCache};
use crate::error::CliError;
use crate::format::{to_csv, to_text, Coefficients, OutputFormat, SeriesDocument, SeriesKind};

/// Largest local-hom truncation degree accepted.
pub const MAX_DMAX: u32 = 12;

#[derive(Debug, Parser)]
#[command(name = "dtseries", version, about = "Hodge and Euler series of ideal-sheaf moduli on curve-fibered 3-folds")]
pub struct Cli {
    /// Worker threads for series expansion; output is identical for any value.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a generating series q^0..q^qmax.
    Series(SeriesArgs),
    /// Tabulate the Donaldson-Thomas invariants N_{m,1} of S x E.
    Dt(DtArgs),
    /// Run a brute-force partition count.
    Oracle(OracleArgs),
    /// Tangent-space dimensions of monomial local models.
    Localhom(LocalHomArgs),
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    pub kind: SeriesKind,
    /// Registry name (p2, p1xp1, k3, abelian, ...) or a diamond JSON file.
    #[arg(long)]
    pub surface: String,
    /// Genus of the fibers (im1 only).
    #[arg(long, default_value_t = 0)]
    pub genus: u64,
    #[arg(long = "qmax", default_value_t = 10)]
    pub q_max: usize,
    /// Upper bound accepted for --qmax.
    #[arg(long = "qmax-cap", default_value_t = 50)]
    pub q_max_cap: usize,
    /// Specialize to s = t = 1.
    #[arg(long)]
    pub euler: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Directory for cached series.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DtArgs {
    /// A registry surface with K_S = 0 (k3 or abelian).
    #[arg(long)]
    pub surface: String,
    #[arg(long = "mmax", default_value_t = 10)]
    pub m_max: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Tuples of partitions (fixed points of S^[m]).
    Colored,
    /// Nested pairs (fixed points of S_{m,m+1}).
    Nested,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub kind: OracleKind,
    /// Number of colors, i.e. the Euler number of the surface.
    #[arg(long)]
    pub chi: usize,
    #[arg(long)]
    pub m: u32,
    /// Compare against the product-formula coefficient.
    #[arg(long)]
    pub check: bool,
    #[arg(long = "chi-cap", default_value_t = 4)]
    pub chi_cap: usize,
    #[arg(long = "m-cap", default_value_t = 8)]
    pub m_cap: u32,
}

#[derive(Debug, Args)]
pub struct LocalHomArgs {
    /// `embedded-point` for the curve with a doubled embedded point versus the
    /// bare curve, or a JSON file listing exponent triples.
    pub case: String,
    #[arg(long = "dmax", default_value_t = 8)]
    pub d_max: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

/// Parses the argument list; help and version requests come back as `Ok(None)`
/// after printing.
pub fn parse_args<I, T>(args: I) -> Result<Option<Cli>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(Some(cli)),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                print!("{e}");
                Ok(None)
            }
            _ => Err(CliError::Usage(e.to_string())),
        },
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", cli.threads)))?;
    let mut buffer: Vec<u8> = Vec::new();
    let result = pool.install(|| match &cli.command {
        Command::Series(args) => cmd_series(args, &mut buffer),
        Command::Dt(args) => cmd_dt(args, &mut buffer),
        Command::Oracle(args) => cmd_oracle(args, &mut buffer),
        Command::Localhom(args) => cmd_localhom(args, &mut buffer),
    });
    out.write_all(&buffer)?;
    result
}

/// A surface from the registry or from a diamond JSON file.
pub struct ResolvedSurface {
    pub label: String,
    pub diamond: HodgeDiamond,
    pub trivial_canonical: bool,
}

pub fn resolve_surface(spec: &str) -> Result<ResolvedSurface, CliError> {
    match registry_lookup(spec) {
        Ok(entry) => {
            entry.diamond.ensure_surface()?;
            Ok(ResolvedSurface {
                label: entry.name,
                diamond: entry.diamond,
                trivial_canonical: entry.trivial_canonical,
            })
        }
        Err(GeometryError::UnknownName(_)) if Path::new(spec).is_file() => {
            let text = std::fs::read_to_string(spec)?;
            let diamond = HodgeDiamond::from_json(&text)?;
            diamond.ensure_surface()?;
            Ok(ResolvedSurface {
                label: spec.to_string(),
                diamond,
                trivial_canonical: false,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn fibration_over(surface: &ResolvedSurface, genus: u64) -> Result<FibrationSpec, CliError> {
    let entry = dtseries::geometry::RegistryEntry {
        name: surface.label.clone(),
        diamond: surface.diamond.clone(),
        trivial_canonical: surface.trivial_canonical,
    };
    Ok(FibrationSpec::over_registry(&entry, genus)?)
}

fn compute_series(kind: SeriesKind, surface: &ResolvedSurface, genus: u64, q_max: usize) -> Result<TruncatedSeries, CliError> {
    Ok(match kind {
        SeriesKind::Hilb => hilb_kernel(&surface.diamond, q_max)?,
        SeriesKind::Incidence => cheah_series(&surface.diamond, q_max)?,
        SeriesKind::Im1 => moduli_im1_series(&fibration_over(surface, genus)?, q_max)?,
    })
}

/// Euler series of the same kind computed with plain integers.
fn direct_euler(kind: SeriesKind, surface: &ResolvedSurface, genus: u64, q_max: usize) -> Result<Vec<BigInt>, CliError> {
    let chi_s = euler_number(&surface.diamond);
    Ok(match kind {
        SeriesKind::Hilb => goettsche_euler_direct(&chi_s, q_max),
        SeriesKind::Incidence => incidence_euler_direct(&chi_s, &chi_s, q_max),
        SeriesKind::Im1 => im1_euler_direct(&fibration_over(surface, genus)?, q_max),
    })
}

fn cross_check_series(kind: SeriesKind, surface: &ResolvedSurface, genus: u64, series: &TruncatedSeries) -> Result<(), CliError> {
    if !series.is_st_symmetric() {
        return Err(CliError::CrossCheck("a coefficient is not symmetric under s <-> t".into()));
    }
    let direct = direct_euler(kind, surface, genus, series.q_max())?;
    let specialized = series.eval_one();
    if let Some(q) = (0..=series.q_max()).find(|&q| direct[q] != specialized[q]) {
        return Err(CliError::CrossCheck(format!(
            "q^{q}: s = t = 1 gives {} but the integer product gives {}",
            specialized[q], direct[q]
        )));
    }
    let anchor = match kind {
        SeriesKind::Hilb => None,
        SeriesKind::Incidence => Some(e_polynomial(&surface.diamond)),
        SeriesKind::Im1 => Some(fibration_e_polynomial(&fibration_over(surface, genus)?)),
    };
    if let (Some(anchor), Some(first)) = (anchor, series.coeffs().get(1)) {
        if *first != anchor {
            return Err(CliError::CrossCheck(format!("q^1 is {first}, expected {anchor}")));
        }
    }
    Ok(())
}

pub fn cmd_series(args: &SeriesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.q_max > args.q_max_cap {
        return Err(CliError::Validation(format!(
            "--qmax {} exceeds the cap {} (raise it with --qmax-cap)",
            args.q_max, args.q_max_cap
        )));
    }
    let surface = resolve_surface(&args.surface)?;
    let genus = (args.kind == SeriesKind::Im1).then_some(args.genus);

    let cached = match &args.cache {
        Some(dir) => {
            let cache = SeriesCache::new(dir)?;
            let path = cache.path_for(args.kind, &surface.diamond, genus, args.q_max);
            Some((cache, path))
        }
        None => None,
    };
    let mut series = None;
    if let Some((cache, path)) = &cached {
        match cache.load(path) {
            Lookup::Hit(doc) => {
                if let Coefficients::Hodge(s) = doc.coefficients()? {
                    series = Some(s);
                }
            }
            Lookup::Corrupt(reason) => eprintln!("warning: ignoring cache entry: {reason}"),
            Lookup::Miss => {}
        }
    }
    let series = match series {
        Some(s) => s,
        None => {
            let s = compute_series(args.kind, &surface, args.genus, args.q_max)?;
            if let Some((cache, path)) = &cached {
                let doc = SeriesDocument::new(args.kind, &surface.label, genus, &Coefficients::Hodge(s.clone()));
                cache.store(path, &doc)?;
            }
            s
        }
    };
    cross_check_series(args.kind, &surface, args.genus, &series)?;

    let coefficients = if args.euler {
        Coefficients::Euler(series.eval_one())
    } else {
        Coefficients::Hodge(series)
    };
    let text = match args.format {
        OutputFormat::Json => SeriesDocument::new(args.kind, &surface.label, genus, &coefficients).to_json() + "\n",
        OutputFormat::Csv => to_csv(args.kind, &coefficients),
        OutputFormat::Text => to_text(args.kind, &surface.label, genus, &coefficients),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct DtRow {
    m: usize,
    dimension: usize,
    euler: String,
    invariant: String,
}

pub fn cmd_dt(args: &DtArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let surface = resolve_surface(&args.surface)?;
    if !surface.trivial_canonical {
        return Err(CliError::Validation(format!(
            "{} does not satisfy K_S = 0; N_{{m,1}} is tabulated only for k3 and abelian",
            surface.label
        )));
    }
    let x = fibration_over(&surface, 1)?;
    let series = moduli_im1_series(&x, args.m_max + 1)?.eval_one();
    let direct = im1_euler_direct(&x, args.m_max + 1);
    let mut rows = Vec::with_capacity(args.m_max + 1);
    for m in 0..=args.m_max {
        let chi = &series[m + 1];
        if *chi != direct[m + 1] {
            return Err(CliError::CrossCheck(format!(
                "chi(I_{{{m},1}}): series gives {chi}, integer product gives {}",
                direct[m + 1]
            )));
        }
        let invariant = dt_invariant_nm1(&x, m)?;
        rows.push(DtRow {
            m,
            dimension: moduli_im1_dimension(m),
            euler: chi.to_string(),
            invariant: invariant.to_string(),
        });
    }
    let text = match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "surface": surface.label,
            "fiber_genus": 1,
            "rows": rows,
        }))
        .expect("dt table serializes")
            + "\n",
        OutputFormat::Csv => {
            let mut s = String::from("m,dimension,euler,invariant\n");
            for r in &rows {
                s += &format!("{},{},{},{}\n", r.m, r.dimension, r.euler, r.invariant);
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!("# N_{{m,1}} for X = {} x E\nm\tdim\tchi\tN\n", surface.label);
            for r in &rows {
                s += &format!("{}\t{}\t{}\t{}\n", r.m, r.dimension, r.euler, r.invariant);
            }
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.chi == 0 || args.chi > args.chi_cap {
        return Err(CliError::Validation(format!(
            "--chi must lie in 1..={} (raise the cap with --chi-cap)",
            args.chi_cap
        )));
    }
    if args.m > args.m_cap {
        return Err(CliError::Validation(format!(
            "--m {} exceeds the cap {} (raise it with --m-cap)",
            args.m, args.m_cap
        )));
    }
    let count = match args.kind {
        OracleKind::Colored => colored_partitions_count(args.chi, args.m),
        OracleKind::Nested => nested_colored_count(args.chi, args.m),
    };
    writeln!(out, "{count}")?;
    if args.check {
        let surface = HodgeDiamond::formal_surface_with_euler(args.chi as i64);
        let m = args.m as usize;
        let expected = match args.kind {
            OracleKind::Colored => hilb_kernel(&surface, m)?.coeffs()[m].eval_one(),
            OracleKind::Nested => cheah_series(&surface, m + 1)?.coeffs()[m + 1].eval_one(),
        };
        let pass = expected == BigInt::from(count);
        writeln!(out, "series coefficient: {expected}")?;
        writeln!(out, "{}", if pass { "pass" } else { "FAIL" })?;
        if !pass {
            return Err(CliError::CrossCheck(format!(
                "enumeration gives {count}, product formula gives {expected}"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct CustomHomRow {
    d: u32,
    dimension: usize,
    rank: usize,
    unknowns: usize,
}

pub fn cmd_localhom(args: &LocalHomArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.d_max > MAX_DMAX {
        return Err(CliError::Validation(format!("--dmax {} exceeds the cap {MAX_DMAX}", args.d_max)));
    }
    let degrees: Vec<u32> = (0..=args.d_max).collect();
    if matches!(args.case.as_str(), "embedded-point" | "prop32") {
        let report = verify_tangent_jump(&degrees)?;
        let text = match args.format {
            OutputFormat::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
            OutputFormat::Csv => {
                let mut s = String::from("d,curve_dim,point_dim,local_difference,reindexed_jump,pass\n");
                for r in &report.rows {
                    s += &format!(
                        "{},{},{},{},{},{}\n",
                        r.d, r.curve_dim, r.point_dim, r.local_difference, r.reindexed_jump, r.pass
                    );
                }
                s
            }
            OutputFormat::Text => {
                let mut s = String::from("D\tcurve(2D+2)\tpoint(10+2D)\tdiff\tjump\tstatus\n");
                for r in &report.rows {
                    s += &format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\n",
                        r.d,
                        r.curve_dim,
                        r.point_dim,
                        r.local_difference,
                        r.reindexed_jump,
                        if r.pass { "pass" } else { "FAIL" }
                    );
                }
                s += &format!(
                    "same-truncation difference 8 plus series index offset 2 gives jump {}: {}\n",
                    report.global_jump,
                    if report.pass { "pass" } else { "FAIL" }
                );
                s
            }
        };
        out.write_all(text.as_bytes())?;
        if !report.pass {
            return Err(CliError::CrossCheck("tangent dimensions do not follow 2D+2 / 10+2D".into()));
        }
        return Ok(());
    }

    let path = Path::new(&args.case);
    if !path.is_file() {
        return Err(CliError::Validation(format!(
            "`{}` is neither `embedded-point` nor a readable ideal file",
            args.case
        )));
    }
    let ideal = MonomialIdeal::from_json(&std::fs::read_to_string(path)?)?;
    let mut rows = Vec::with_capacity(degrees.len());
    for &d in &degrees {
        let sol = hom_dimension(&ideal, d)?;
        if sol.rank + sol.dimension != sol.unknowns {
            return Err(CliError::CrossCheck(format!("D = {d}: rank + nullity != unknowns")));
        }
        rows.push(CustomHomRow {
            d,
            dimension: sol.dimension,
            rank: sol.rank,
            unknowns: sol.unknowns,
        });
    }
    let text = match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "ideal": ideal.gens(),
            "rows": rows,
            "pass": true,
        }))
        .expect("report serializes")
            + "\n",
        OutputFormat::Csv => {
            let mut s = String::from("d,dimension,rank,unknowns\n");
            for r in &rows {
                s += &format!("{},{},{},{}\n", r.d, r.dimension, r.rank, r.unknowns);
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!("# Hom(I, O/I) for I = {}\nD\tdim\trank\tunknowns\n", ideal.to_json());
            for r in &rows {
                s += &format!("{}\t{}\t{}\t{}\n", r.d, r.dimension, r.rank, r.unknowns);
            }
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}
