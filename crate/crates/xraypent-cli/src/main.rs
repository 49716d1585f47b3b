//! Command-line surface over the xraypent library: system verification,
//! elimination, curve tracing, back-solving, and polygon tomography.
//!
//! Exit codes: 0 on success, 1 when a verification claim fails, 2 on usage
//! or input errors. Identical arguments and cache state produce
//! byte-identical output on the data stream; progress goes to stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use xraypent::poly::{Poly, Var};
use xraypent::solver::{back_solve, trace_curve, CurvePoint, SAMPLE_RESIDUAL_BOUND};
use xraypent::system::{
    self, compare_at_points, compare_with_reference, AmbientStage, EquationLabel, RelationKind,
    SAMPLE_CONSISTENCY_TOLERANCE,
};
use xraypent::tomo::{chord_functions_equal, find_ambiguous_triangles, ConvexPolygon, Rat};

#[derive(Parser)]
#[command(
    name = "xraypent",
    about = "Equal-chord pentagon analysis: exact elimination, curve tracing, and Steiner symmetrals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-derive both elimination stages and check them against the bundled
    /// reference eliminants; exits 1 if any claim fails or stays unresolved.
    VerifySystem(VerifySystemArgs),
    /// Print the recomputed eliminants of one stage in polynomial text form.
    Eliminate(EliminateArgs),
    /// Compute (or load from cache) the final curve polynomial and report
    /// its x^42*y^34 coefficient and leading terms.
    Resultant(ResultantArgs),
    /// Trace the zero curve of the final polynomial over a rectangle; emits
    /// CSV points and optionally an SVG plot.
    Trace(TraceArgs),
    /// Back-solve full parameter tuples over one (x, y) point.
    Solve(SolveArgs),
    /// Steiner symmetral of a polygon file in a rational direction.
    Symmetral(SymmetralArgs),
    /// Compare the chord functions of two polygon files in given directions.
    Compare(CompareArgs),
    /// Search for two non-congruent triangles with equal chord functions in
    /// both axis directions and verify the pair exactly.
    TriangleDemo(TriangleDemoArgs),
}

#[derive(Args)]
struct VerifySystemArgs {
    /// Number of sampled solutions per stage.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Seed for the deterministic samplers.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct EliminateArgs {
    /// Which stage to emit: "zw" (images of B1B5, D1D5, E2A2, E3A3 after
    /// removing w and z) or "v" (images of Q2, Q3 after removing v).
    #[arg(long)]
    stage: String,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ResultantArgs {
    /// Write the full polynomial to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit 1 unless the x^42*y^34 coefficient magnitude is exactly 16^7.
    #[arg(long)]
    check_leading: bool,
    /// Cache directory (else XRAYPENT_CACHE, else the platform default).
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    /// Cells per side of the scan grid.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Rectangle to scan: x0,x1,y0,y1.
    #[arg(long, default_value = "0,1,0,1")]
    domain: String,
    /// Write CSV points here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot of the points.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Cache directory (else XRAYPENT_CACHE, else the platform default).
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// x coordinate (rational like 2/5, or decimal).
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// y coordinate (rational like 1/3, or decimal).
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    /// Scaled-residual filter for candidate roots.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct SymmetralArgs {
    /// Polygon file: one "P/Q P/Q" vertex per line, '#' comments.
    #[arg(long)]
    polygon: PathBuf,
    /// Direction as DX,DY (rationals or integers).
    #[arg(long)]
    dir: String,
    /// Write the symmetral polygon here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// First polygon file.
    #[arg(long)]
    a: PathBuf,
    /// Second polygon file.
    #[arg(long)]
    b: PathBuf,
    /// Semicolon-separated directions: "DX1,DY1;DX2,DY2;...".
    #[arg(long)]
    dirs: String,
}

#[derive(Args)]
struct TriangleDemoArgs {
    /// Seed for the deterministic search.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// An input or environment problem: message plus exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (`xraypent trace | head`)
    // instead of panicking on the broken pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifySystem(args) => cmd_verify_system(&args),
        Command::Eliminate(args) => cmd_eliminate(&args),
        Command::Resultant(args) => cmd_resultant(&args),
        Command::Trace(args) => cmd_trace(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Symmetral(args) => cmd_symmetral(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::TriangleDemo(args) => cmd_triangle_demo(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// verify-system

fn cmd_verify_system(args: &VerifySystemArgs) -> Result<u8, UsageError> {
    let mut failures = 0usize;

    println!("stage 1: eliminate w (= x - u, from C1C5) and z (from E4A4)");
    let images = system::eliminate_zw();
    let image_labels = [
        EquationLabel::B1B5,
        EquationLabel::D1D5,
        EquationLabel::E2A2,
        EquationLabel::E3A3,
    ];
    for (label, poly) in image_labels.iter().zip(images.iter()) {
        println!(
            "  E[{label}]: {} terms, degree {} in u, {} in x, {} in y",
            poly.num_terms(),
            poly.degree_in(Var::U).unwrap_or(0),
            poly.degree_in(Var::X).unwrap_or(0),
            poly.degree_in(Var::Y).unwrap_or(0),
        );
    }

    eprintln!(
        "sampling the full six-equation system ({} requested, seed {}) ...",
        args.samples, args.seed
    );
    let full_points = AmbientStage::FullSystem.sample_points(args.samples, args.seed);
    match &full_points {
        Ok(pts) => eprintln!("  found {} admissible solutions", pts.len()),
        Err(e) => eprintln!("  {e}"),
    }

    println!(
        "stage 1: vanishing at sampled solutions of the full system \
         (scaled residual at most {SAMPLE_CONSISTENCY_TOLERANCE:.0e}):"
    );
    let stage1 = system::stage1_reference();
    match &full_points {
        Ok(pts) => {
            let named: Vec<(String, &Poly)> = image_labels
                .iter()
                .zip(images.iter())
                .map(|(l, p)| (format!("E[{l}]"), p))
                .chain(stage1.iter().map(|eq| (eq.label.to_string(), &eq.poly)))
                .collect();
            for (name, poly) in named {
                let worst = pts
                    .iter()
                    .map(|pt| xraypent::solver::scaled_residual(poly, pt))
                    .fold(0.0f64, f64::max);
                let ok = worst <= SAMPLE_CONSISTENCY_TOLERANCE;
                if !ok {
                    failures += 1;
                }
                println!(
                    "  {name}: max residual {worst:.3e} over {} samples ... {}",
                    pts.len(),
                    if ok { "ok" } else { "FAILED" }
                );
            }
        }
        Err(e) => {
            failures += 1;
            println!("  UNRESOLVED: {e}");
        }
    }

    println!("stage 1: relation of the bundled eliminants to the recomputed ones:");
    let shared: Vec<[f64; 6]> = full_points.unwrap_or_default();
    for eq in stage1.iter() {
        for (label, poly) in image_labels.iter().zip(images.iter()) {
            let line = match compare_at_points(poly, &eq.poly, &shared) {
                Ok(report) => report.to_string(),
                Err(_) => "UNRESOLVED (no symbolic relation, no samples)".to_string(),
            };
            println!("  {} vs E[{label}]: {line}", eq.label);
        }
    }

    println!("stage 2: eliminate v through Q1 (linear); for the quadratics Q2, Q3");
    println!("         the denominator-free substitution equals the v-resultant exactly");
    let second = system::eliminate_v();
    let stage2 = system::stage2_reference();
    for ((computed, source), claimed) in second
        .iter()
        .zip([EquationLabel::Q2, EquationLabel::Q3])
        .zip(stage2.iter())
    {
        match compare_with_reference(
            computed,
            &claimed.poly,
            args.samples,
            args.seed,
            AmbientStage::Derived,
        ) {
            Ok(report) => {
                let ok = report.kind <= RelationKind::SampleConsistent;
                if !ok {
                    failures += 1;
                }
                println!(
                    "  S[{source}] vs {}: {report} ... {}",
                    claimed.label,
                    if ok { "ok" } else { "FAILED" }
                );
            }
            Err(e) => {
                failures += 1;
                println!("  S[{source}] vs {}: UNRESOLVED ({e})", claimed.label);
            }
        }
    }

    if failures == 0 {
        println!("verdict: all claims verified");
        Ok(0)
    } else {
        println!("verdict: {failures} claim check(s) failed or unresolved");
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// eliminate

fn cmd_eliminate(args: &EliminateArgs) -> Result<u8, UsageError> {
    let polys: Vec<Poly> = match args.stage.as_str() {
        "zw" => system::eliminate_zw().to_vec(),
        "v" => system::eliminate_v().to_vec(),
        other => {
            return Err(UsageError(format!(
                "unknown stage {other:?}: expected \"zw\" or \"v\""
            )))
        }
    };
    let mut text = String::new();
    for p in &polys {
        writeln!(text, "{p}").expect("string writes cannot fail");
    }
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// resultant

fn resolve_cache(flag: Option<&Path>) -> Result<PathBuf, UsageError> {
    xraypent::cache::resolve_dir(flag).ok_or_else(|| {
        UsageError("no cache directory could be resolved; pass --cache DIR".to_string())
    })
}

fn cmd_resultant(args: &ResultantArgs) -> Result<u8, UsageError> {
    let dir = resolve_cache(args.cache.as_deref())?;
    eprintln!("computing or loading the final resultant (cache: {}) ...", dir.display());
    let curve = system::final_resultant(&dir)?;
    println!(
        "final resultant: {} terms, degree {} in x, {} in y, content normalized",
        curve.num_terms(),
        curve.degree_in(Var::X).unwrap_or(0),
        curve.degree_in(Var::Y).unwrap_or(0),
    );
    let report = system::check_first_term(&curve)?;
    println!("coefficient of x^42*y^34: {}", report.coefficient);
    println!(
        "reference magnitude 16^7 = {}: {}",
        system::reference_leading_magnitude(),
        if report.matches_reference { "MATCH" } else { "MISMATCH" }
    );
    let term = |(m, c): &(xraypent::poly::Mono, BigInt)| {
        if m.total_degree() == 0 {
            format!("{c}")
        } else if c.abs() == BigInt::from(1) {
            format!("{}{m}", if c.is_negative() { "-" } else { "" })
        } else {
            format!("{c}*{m}")
        }
    };
    println!("leading term, lex x > y:   {}", term(&report.lead_lex_xy));
    println!("leading term, lex y > x:   {}", term(&report.lead_lex_yx));
    println!("leading term, grlex x > y: {}", term(&report.lead_grlex_xy));
    if let Some(out) = &args.out {
        std::fs::write(out, format!("{curve}\n"))?;
        eprintln!("wrote polynomial to {}", out.display());
    }
    if args.check_leading {
        println!(
            "leading-term check: {}",
            if report.matches_reference { "PASS" } else { "FAIL" }
        );
        if !report.matches_reference {
            return Ok(1);
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// trace

fn parse_domain(text: &str) -> Result<[f64; 4], UsageError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(UsageError(format!(
            "domain must be x0,x1,y0,y1 (got {text:?})"
        )));
    }
    let mut out = [0.0f64; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| UsageError(format!("bad domain component {part:?}: {e}")))?;
    }
    if !(out[1] > out[0] && out[3] > out[2]) {
        return Err(UsageError(format!("domain {text:?} is empty")));
    }
    Ok(out)
}

fn csv_text(points: &[CurvePoint]) -> String {
    let mut text = String::from("x,y,residual\n");
    for p in points {
        writeln!(text, "{:.16e},{:.16e},{:.16e}", p.x, p.y, p.residual)
            .expect("string writes cannot fail");
    }
    text
}

fn svg_text(points: &[CurvePoint], domain: [f64; 4]) -> String {
    let [x0, x1, y0, y1] = domain;
    let (w, h) = (x1 - x0, y1 - y0);
    // Flip the y axis inside a group so the viewBox still matches the
    // mathematical domain.
    let r = (w.min(h)) / 512.0;
    let mut text = String::new();
    writeln!(
        text,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0:.6} {y0:.6} {w:.6} {h:.6}\">"
    )
    .expect("string writes cannot fail");
    writeln!(
        text,
        "  <g transform=\"translate(0,{:.6}) scale(1,-1)\">",
        y0 + y1
    )
    .expect("string writes cannot fail");
    for p in points {
        writeln!(
            text,
            "    <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{r:.6}\"/>",
            p.x, p.y
        )
        .expect("string writes cannot fail");
    }
    text.push_str("  </g>\n</svg>\n");
    text
}

fn cmd_trace(args: &TraceArgs) -> Result<u8, UsageError> {
    if args.grid == 0 {
        return Err(UsageError("grid must be at least 1".to_string()));
    }
    let domain = parse_domain(&args.domain)?;
    let dir = resolve_cache(args.cache.as_deref())?;
    eprintln!("computing or loading the final resultant (cache: {}) ...", dir.display());
    let curve = system::final_resultant(&dir)?;
    eprintln!("tracing on {0}x{0} cells over {domain:?} ...", args.grid);
    let points = trace_curve(&curve, args.grid, domain);
    eprintln!("  {} points", points.len());
    emit(args.out.as_deref(), &csv_text(&points))?;
    if let Some(svg) = &args.svg {
        std::fs::write(svg, svg_text(&points, domain))?;
        eprintln!("wrote SVG to {}", svg.display());
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// solve

/// Parses "p/q", an integer, or a decimal like "0.125" into a float.
fn parse_coordinate(text: &str) -> Result<f64, UsageError> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: f64 = num
            .trim()
            .parse::<i64>()
            .map_err(|e| UsageError(format!("bad rational numerator {num:?}: {e}")))?
            as f64;
        let d: f64 = den
            .trim()
            .parse::<i64>()
            .map_err(|e| UsageError(format!("bad rational denominator {den:?}: {e}")))?
            as f64;
        if d == 0.0 {
            return Err(UsageError(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    t.parse::<f64>()
        .map_err(|e| UsageError(format!("bad coordinate {text:?}: {e}")))
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, UsageError> {
    let x = parse_coordinate(&args.x)?;
    let y = parse_coordinate(&args.y)?;
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(UsageError(format!("tolerance {} is not positive", args.tol)));
    }
    println!("back-solving at x = {x:.16e}, y = {y:.16e} (filter tolerance {:.1e})", args.tol);
    let outcome = back_solve(x, y, args.tol);
    println!(
        "candidate u-roots: {} lifted, {} skipped, {} filtered by the first resultant",
        outcome.tuples.len(),
        outcome.skipped.len(),
        outcome.filtered_roots
    );
    for (i, (tuple, report)) in outcome.tuples.iter().enumerate() {
        println!("tuple {i}:");
        println!(
            "  u = {:.16e}\n  v = {:.16e}\n  w = {:.16e}\n  x = {:.16e}\n  y = {:.16e}\n  z = {:.16e}",
            tuple.u, tuple.v, tuple.w, tuple.x, tuple.y, tuple.z
        );
        println!(
            "  max equation residual {:.3e} (accept at {:.1e}), min side margin {:.3e}, {}",
            report.max_residual(),
            SAMPLE_RESIDUAL_BOUND,
            report.min_side_margin(),
            if report.all_in_range() {
                "all coordinates in (0,1)"
            } else {
                "coordinates outside (0,1)"
            }
        );
    }
    for (i, reason) in outcome.skipped.iter().enumerate() {
        println!("skipped {i}: {reason}");
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// polygon files and directions

fn parse_rat(text: &str) -> Result<Rat, UsageError> {
    let t = text.trim();
    let parse_int = |s: &str| -> Result<BigInt, UsageError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|e| UsageError(format!("bad integer {s:?}: {e}")))
    };
    if let Some((num, den)) = t.split_once('/') {
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(UsageError(format!("zero denominator in {text:?}")));
        }
        return Ok(Rat::new(parse_int(num)?, d));
    }
    Ok(Rat::from_integer(parse_int(t)?))
}

fn parse_direction(text: &str) -> Result<[Rat; 2], UsageError> {
    let (dx, dy) = text
        .split_once(',')
        .ok_or_else(|| UsageError(format!("direction must be DX,DY (got {text:?})")))?;
    Ok([parse_rat(dx)?, parse_rat(dy)?])
}

fn read_polygon(path: &Path) -> Result<ConvexPolygon, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut vertices: Vec<[Rat; 2]> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (sx, sy) = (parts.next(), parts.next());
        let (Some(sx), Some(sy), None) = (sx, sy, parts.next()) else {
            return Err(UsageError(format!(
                "{}:{}: expected two rationals per vertex line",
                path.display(),
                lineno + 1
            )));
        };
        vertices.push([parse_rat(sx)?, parse_rat(sy)?]);
    }
    ConvexPolygon::new(vertices)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn polygon_text(p: &ConvexPolygon) -> String {
    let mut text = String::new();
    for v in p.vertices() {
        writeln!(text, "{} {}", v[0], v[1]).expect("string writes cannot fail");
    }
    text
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_symmetral(args: &SymmetralArgs) -> Result<u8, UsageError> {
    let polygon = read_polygon(&args.polygon)?;
    let dir = parse_direction(&args.dir)?;
    let sym = polygon.steiner_symmetral(&dir)?;
    emit(args.out.as_deref(), &polygon_text(&sym))?;
    Ok(0)
}

fn cmd_compare(args: &CompareArgs) -> Result<u8, UsageError> {
    let a = read_polygon(&args.a)?;
    let b = read_polygon(&args.b)?;
    let mut all_equal = true;
    for part in args.dirs.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let dir = parse_direction(part)?;
        let equal = chord_functions_equal(&a, &b, &dir)?;
        all_equal &= equal;
        println!(
            "direction ({}, {}): {}",
            dir[0],
            dir[1],
            if equal { "EQUAL" } else { "DIFFERENT" }
        );
    }
    println!(
        "{}",
        if all_equal {
            "chord functions agree in every direction checked"
        } else {
            "chord functions differ in at least one direction"
        }
    );
    Ok(0)
}

fn cmd_triangle_demo(args: &TriangleDemoArgs) -> Result<u8, UsageError> {
    let pair = match find_ambiguous_triangles(args.seed) {
        Ok(pair) => pair,
        Err(e) => {
            println!("search failed: {e}");
            return Ok(1);
        }
    };
    println!("parameters: b = {}, c = {}", pair.b, pair.c);
    println!("first triangle:");
    print!("{}", indent(&polygon_text(&pair.first)));
    println!("second triangle:");
    print!("{}", indent(&polygon_text(&pair.second)));

    let mut verified = true;
    for dir in &pair.directions {
        let equal = chord_functions_equal(&pair.first, &pair.second, dir)?;
        verified &= equal;
        println!(
            "chord functions in ({}, {}): {}",
            dir[0],
            dir[1],
            if equal { "EQUAL" } else { "DIFFERENT" }
        );
    }
    let congruent = pair.first.squared_side_lengths() == pair.second.squared_side_lengths();
    println!(
        "congruent: {} (sorted squared side lengths {})",
        if congruent { "yes" } else { "no" },
        if congruent { "agree" } else { "differ" }
    );
    println!(
        "areas: {} and {} ({})",
        pair.first.area(),
        pair.second.area(),
        if pair.first.area() == pair.second.area() { "equal" } else { "DIFFERENT" }
    );
    verified &= !congruent;
    if verified {
        println!("verified: two non-congruent triangles, same X-rays in both directions");
        Ok(0)
    } else {
        println!("verification FAILED");
        Ok(1)
    }
}

fn indent(text: &str) -> String {
    text.lines().fold(String::new(), |mut acc, l| {
        writeln!(acc, "  {l}").expect("string writes cannot fail");
        acc
    })
}
