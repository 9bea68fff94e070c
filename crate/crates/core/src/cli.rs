//! Command-line front end. The `toricap` binary is a thin wrapper around
//! [`run`], which also makes the CLI testable in-process.

use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::capacities::{capacity_report, verify_xa, CapacityReport, Interval, XaCheck};
use crate::domain::ToricDomain;
use crate::ech::{cube_bound, finite_d_bound, CombOrbitSet};
use crate::geometry::{is_concave, is_monotone};
use crate::io::{parse_domain, report_csv_row, report_json, serialize_domain, xa_csv, CSV_HEADER};
use crate::lagrangian::{a_min_brute, a_min_closed};
use crate::rational::{format_decimal, parse_rational, Rational};
use crate::search::{obstruction_search, SearchLimits};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "toricap", version, about = "Exact capacity bounds for toric domains")]
struct Cli {
    /// Also print N-digit decimal approximations (marked with ≈) in tables.
    #[arg(long, global = true, value_name = "N")]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize a domain file and its validity predicates.
    Info { file: PathBuf },
    /// Capacity report for a domain file.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Check the Ω_a family against c_P = min(1-2a, 1/2), c_L = c^N = 1/2.
    Xa {
        /// One value or a comma-separated list.
        #[arg(long, value_name = "P/Q[,P/Q...]")]
        a: Option<String>,
        /// Inclusive rational range.
        #[arg(long, value_name = "LO..HI:STEP")]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Closed-form cube bound and the finite-d bounds converging to it.
    Bound {
        file: PathBuf,
        /// Values of d (repeatable); defaults to 3, 9, 30, 90, 300.
        #[arg(long)]
        d: Vec<u64>,
    },
    /// Bounded search for the orbit-set factorizations an embedding forces.
    Obstruct {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_name = "ORBIT-EXPR")]
        alpha: String,
        #[arg(long)]
        vmax: i64,
        #[arg(long)]
        lmax: usize,
        /// Exclude the elliptic axis orbits e(1,0), e(0,1) from α.
        #[arg(long)]
        no_axis_orbits: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Minimal positive area of the fiber torus over a rational point.
    Amin {
        #[arg(long, value_name = "P/Q,P/Q,...")]
        x: String,
        /// Cross-check against exhaustive search over [-K, K]^n.
        #[arg(long, value_name = "K")]
        brute: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

/// Failure of a CLI invocation, carrying its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code(), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: format!("i/o error: {e}") }
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit
/// status: 0 success, 1 computation refused, 2 input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(err, "error: {first}");
            return 2;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message.replace('\n', " "));
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let fmt = Fmt { decimal: cli.decimal };
    match &cli.command {
        Command::Info { file } => info(&load(file)?, out),
        Command::Report { file, format } => report(&load(file)?, *format, fmt, out),
        Command::Xa { a, sweep, format } => xa(a.as_deref(), sweep.as_deref(), *format, fmt, out),
        Command::Bound { file, d } => bound(&load(file)?, d, fmt, out),
        Command::Obstruct { source, target, alpha, vmax, lmax, no_axis_orbits, format } => {
            let limits = SearchLimits { vmax: *vmax, lmax: *lmax, axis_orbits: !no_axis_orbits };
            obstruct(&load(source)?, &load(target)?, alpha, limits, *format, out)
        }
        Command::Amin { x, brute } => amin(x, *brute, out),
    }
}

fn load(path: &Path) -> Result<ToricDomain, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: 2, message: format!("cannot read {}: {e}", path.display()) })?;
    Ok(parse_domain(&text)?)
}

#[derive(Clone, Copy)]
struct Fmt {
    decimal: Option<usize>,
}

impl Fmt {
    fn r(&self, r: &Rational) -> String {
        match self.decimal {
            Some(n) => format!("{r} (≈{})", format_decimal(r, n)),
            None => r.to_string(),
        }
    }

    fn interval(&self, i: &Interval) -> String {
        if i.exact {
            self.r(&i.lower)
        } else {
            format!("[{}, {}]", self.r(&i.lower), self.r(&i.upper))
        }
    }
}

fn info(d: &ToricDomain, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "kind: {}", d.kind_name())?;
    writeln!(out, "n: {}", d.dimension())?;
    match d {
        ToricDomain::Polygon(p) => {
            writeln!(out, "vertices: {}", p.vertices().len())?;
            writeln!(out, "weakly convex: true")?;
        }
        ToricDomain::Rectilinear(r) => writeln!(out, "rectangles: {}", r.rects().len())?,
        ToricDomain::Standard(_) => {}
    }
    writeln!(out, "bounded: {}", d.is_bounded())?;
    writeln!(out, "monotone: {}", is_monotone(d))?;
    if let ToricDomain::Rectilinear(_) = d {
        writeln!(out, "concave: {}", is_concave(d))?;
    }
    writeln!(out, "canonical: {}", serialize_domain(d))?;
    Ok(())
}

fn report(d: &ToricDomain, format: Format, fmt: Fmt, out: &mut dyn Write) -> Result<(), Failure> {
    let r = capacity_report(d)?;
    match format {
        Format::Json => writeln!(out, "{}", report_json(&r))?,
        Format::Csv => writeln!(out, "{CSV_HEADER}\n{}", report_csv_row(None, &r))?,
        Format::Table => report_table(&r, fmt, out)?,
    }
    Ok(())
}

fn report_table(r: &CapacityReport, fmt: Fmt, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "delta     {}", fmt.r(&r.delta))?;
    writeln!(out, "eta       {}", fmt.r(&r.eta))?;
    let cl = match &r.c_l.value {
        Some(v) => fmt.r(v),
        None => format!("[{}, {}]", fmt.r(&r.c_l.lower), fmt.r(&r.c_l.upper)),
    };
    write!(out, "c_L       {cl}  ({:?}", r.c_l.rule)?;
    if let Some(w) = &r.c_l.witness {
        let pts: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        write!(out, " at ({})", pts.join(", "))?;
    }
    writeln!(out, ")")?;
    writeln!(out, "c_P       {}", fmt.interval(&r.c_p))?;
    writeln!(out, "c^N       {}", fmt.interval(&r.c_n))?;
    let upper = r.ball.upper.as_ref().map_or("unbounded".to_string(), |u| fmt.r(u));
    writeln!(out, "c_B, c^Z  in [{}, {}]", fmt.r(&r.ball.lower), upper)?;
    writeln!(out, "monotone  {}", r.monotone)?;
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    Ok(())
}

fn parse_sweep(spec: &str) -> Result<Vec<Rational>, Error> {
    let bad = || Error::Syntax(format!("invalid sweep {spec:?}; expected LO..HI:STEP"));
    let (range, step) = spec.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let (lo, hi, step) = (parse_rational(lo)?, parse_rational(hi)?, parse_rational(step)?);
    if step <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("sweep step must be positive".into()));
    }
    let mut values = Vec::new();
    let mut a = lo;
    while a <= hi {
        values.push(a.clone());
        a += &step;
        if values.len() > 100_000 {
            return Err(Error::InvalidArgument("sweep has more than 100000 values".into()));
        }
    }
    Ok(values)
}

fn xa(a: Option<&str>, sweep: Option<&str>, format: Format, fmt: Fmt, out: &mut dyn Write) -> Result<(), Failure> {
    let mut values = Vec::new();
    if let Some(list) = a {
        for part in list.split(',') {
            values.push(parse_rational(part)?);
        }
    }
    if let Some(s) = sweep {
        values.extend(parse_sweep(s)?);
    }
    if values.is_empty() {
        return Err(Error::InvalidArgument("xa needs --a or --sweep".into()).into());
    }
    values.sort();
    values.dedup();
    let rows = values.iter().map(verify_xa).collect::<Result<Vec<XaCheck>, Error>>()?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable"))?,
        Format::Csv => write!(out, "{}", xa_csv(&rows))?,
        Format::Table => {
            let table: Vec<[String; 6]> = rows
                .iter()
                .map(|row| {
                    let cl = row.got.c_l.value.as_ref().map_or("?".into(), |v| fmt.r(v));
                    [
                        fmt.r(&row.a),
                        fmt.interval(&row.got.c_p),
                        cl,
                        fmt.interval(&row.got.c_n),
                        fmt.r(&row.expected_c_p),
                        if row.pass { "pass" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            let header = ["a", "c_P", "c_L", "c_N", "min(1-2a,1/2)", "result"].map(String::from);
            write_table(&header, &table, out)?;
        }
    }
    Ok(())
}

fn write_table<const N: usize>(header: &[String; N], rows: &[[String; N]], out: &mut dyn Write) -> std::io::Result<()> {
    let mut widths = header.each_ref().map(|h| h.chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    for row in std::iter::once(header).chain(rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end())?;
    }
    Ok(())
}

fn bound(d: &ToricDomain, ds: &[u64], fmt: Fmt, out: &mut dyn Write) -> Result<(), Failure> {
    let ToricDomain::Polygon(p) = d else {
        return Err(Error::Inapplicable("the cube bound needs a weakly convex polygon domain".into()).into());
    };
    let b = cube_bound(p)?;
    writeln!(out, "bound = {}", fmt.r(&b))?;
    let report = capacity_report(d)?;
    if let Some(cp) = report.c_p.value() {
        if *cp == b {
            writeln!(out, "note: tight; c_P = {}", fmt.r(cp))?;
        } else {
            writeln!(out, "note: not tight; c_P = {}", fmt.r(cp))?;
        }
    }
    let ds: Vec<u64> = if ds.is_empty() { vec![3, 9, 30, 90, 300] } else { ds.to_vec() };
    let rows = ds
        .iter()
        .map(|&n| Ok([n.to_string(), fmt.r(&finite_d_bound(p, n)?)]))
        .collect::<Result<Vec<_>, Error>>()?;
    write_table(&["d".to_string(), "finite_d_bound".to_string()], &rows, out)?;
    Ok(())
}

fn obstruct(
    source: &ToricDomain,
    target: &ToricDomain,
    alpha: &str,
    limits: SearchLimits,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let (ToricDomain::Polygon(s), ToricDomain::Polygon(t)) = (source, target) else {
        return Err(Error::Inapplicable("obstruction search needs weakly convex polygon domains".into()).into());
    };
    let alpha: CombOrbitSet = alpha.parse()?;
    let r = obstruction_search(s, t, &alpha, limits)?;
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializable"))?;
        return Ok(());
    }
    writeln!(out, "alpha' = {alpha}")?;
    writeln!(out, "status: {:?}", r.status)?;
    if let Some(w) = &r.witness {
        writeln!(out, "alpha = {}", w.alpha)?;
        for (a, b) in w.alpha_factors.iter().zip(&w.alpha_prime_factors) {
            writeln!(out, "  {a}  <=  {b}")?;
        }
    }
    if let Some(a) = &r.obstructed_a {
        writeln!(out, "obstructed cube side: {a}")?;
    }
    let b = &r.bounds_used;
    writeln!(
        out,
        "bounds: vmax={} lmax={} axis_orbits={} vmax_truncated={} lmax_exhaustive={}",
        b.vmax, b.lmax, b.axis_orbits, b.vmax_truncated, b.lmax_exhaustive
    )?;
    writeln!(
        out,
        "work: admissible_factors={} factorizations={} candidate_sets={}",
        b.admissible_factors, b.factorizations_examined, b.candidate_sets_examined
    )?;
    Ok(())
}

fn amin(x: &str, brute: Option<i64>, out: &mut dyn Write) -> Result<(), Failure> {
    let point = x.split(',').map(parse_rational).collect::<Result<Vec<_>, Error>>()?;
    let closed = a_min_closed(&point)?;
    writeln!(out, "closed={closed}")?;
    if let Some(k) = brute {
        let (b, arg) = a_min_brute(&point, k)?;
        let ks: Vec<String> = arg.iter().map(|k| k.to_string()).collect();
        writeln!(out, "brute={b} at k=({})", ks.join(","))?;
        writeln!(out, "{}", if b == closed { "agree" } else { "DISAGREE" })?;
    }
    Ok(())
}
