//! End-to-end tests of the `xraypent` binary: exit codes, output formats,
//! and byte-level determinism of repeated runs.

use std::path::Path;
use std::process::{Command, Output};

use xraypent::poly::Poly;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xraypent"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_square(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("square.poly");
    std::fs::write(&path, "# unit square\n0 0\n1 0\n\n1 1\n0 1 # last vertex\n").unwrap();
    path
}

fn write_triangle(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("triangle.poly");
    std::fs::write(&path, "0 0\n1 0\n1/2 1\n").unwrap();
    path
}

#[test]
fn help_available_everywhere() {
    let top = run(&["--help"]);
    assert_eq!(code(&top), 0);
    let text = stdout_text(&top);
    for sub in [
        "verify-system",
        "eliminate",
        "resultant",
        "trace",
        "solve",
        "symmetral",
        "compare",
        "triangle-demo",
    ] {
        assert!(text.contains(sub), "top-level help lists {sub}");
        let out = run(&[sub, "--help"]);
        assert_eq!(code(&out), 0, "{sub} --help exits 0");
        assert!(!stdout_text(&out).is_empty(), "{sub} --help prints usage");
    }
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn eliminate_zw_emits_four_parseable_polynomials() {
    let out = run(&["eliminate", "--stage", "zw"]);
    assert_eq!(code(&out), 0);
    let text = stdout_text(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "u*v - v*x - 2*x*y - u + x");
    for line in &lines {
        Poly::parse(line).expect("every emitted line parses back");
    }
}

#[test]
fn eliminate_v_emits_both_images() {
    let out = run(&["eliminate", "--stage", "v"]);
    assert_eq!(code(&out), 0);
    let text = stdout_text(&out);
    let polys: Vec<Poly> = text.lines().map(|l| Poly::parse(l).unwrap()).collect();
    let counts: Vec<usize> = polys.iter().map(Poly::num_terms).collect();
    assert_eq!(counts, [67, 55]);
}

#[test]
fn eliminate_out_file_matches_stdout() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("images.txt");
    let to_file = bin()
        .args(["eliminate", "--stage", "zw", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty(), "data goes to the file, not stdout");
    let direct = run(&["eliminate", "--stage", "zw"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn eliminate_rejects_unknown_stage() {
    let out = run(&["eliminate", "--stage", "uvw"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("unknown stage"));
}

#[test]
fn resultant_reports_coefficient_and_caches() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().to_str().unwrap().to_string();
    let first = run(&["resultant", "--cache", &cache]);
    assert_eq!(code(&first), 0, "without --check-leading the report is informational");
    let text = stdout_text(&first);
    assert!(text.contains("821 terms"));
    assert!(text.contains("coefficient of x^42*y^34: 9188676188160"));
    assert!(text.contains("MISMATCH"));
    assert!(tmp.path().join("final_resultant.poly").exists());
    assert!(tmp.path().join("final_resultant.digest").exists());

    let second = run(&["resultant", "--cache", &cache]);
    assert_eq!(first.stdout, second.stdout, "cached rerun is byte-identical");

    let checked = run(&["resultant", "--cache", &cache, "--check-leading"]);
    assert_eq!(code(&checked), 1, "--check-leading gates the exit code");
    assert!(stdout_text(&checked).contains("leading-term check: FAIL"));
}

#[test]
fn resultant_honors_cache_env_var() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["resultant"])
        .env("XRAYPENT_CACHE", tmp.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(tmp.path().join("final_resultant.poly").exists());
}

#[test]
fn resultant_out_writes_full_polynomial() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().to_str().unwrap().to_string();
    let path = tmp.path().join("curve.txt");
    let out = bin()
        .args(["resultant", "--cache", &cache, "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let poly = Poly::parse(text.trim()).unwrap();
    assert_eq!(poly.num_terms(), 821);
}

#[test]
fn trace_emits_csv_and_svg_deterministically() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().to_str().unwrap().to_string();
    let csv = tmp.path().join("points.csv");
    let svg = tmp.path().join("curve.svg");
    let args_for = |csv: &Path, svg: &Path| {
        vec![
            "trace".to_string(),
            "--grid".to_string(),
            "24".to_string(),
            "--cache".to_string(),
            cache.clone(),
            "--out".to_string(),
            csv.to_str().unwrap().to_string(),
            "--svg".to_string(),
            svg.to_str().unwrap().to_string(),
        ]
    };
    let out = bin().args(args_for(&csv, &svg)).output().unwrap();
    assert_eq!(code(&out), 0);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,residual"));
    let first = lines.next().expect("curve is nonempty at grid 24");
    for field in first.split(',') {
        // 17 significant binary64 digits: d.16 digits, then an exponent.
        let (mantissa, _exp) = field.split_once('e').expect("scientific notation");
        let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
        assert_eq!(digits.len(), 17, "17 significant digits in {field:?}");
    }

    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    assert!(svg_text.contains("viewBox=\"0.000000 0.000000 1.000000 1.000000\""));
    assert!(svg_text.contains("<circle"));

    let csv2 = tmp.path().join("points2.csv");
    let svg2 = tmp.path().join("curve2.svg");
    let rerun = bin().args(args_for(&csv2, &svg2)).output().unwrap();
    assert_eq!(code(&rerun), 0);
    assert_eq!(
        std::fs::read(&csv).unwrap(),
        std::fs::read(&csv2).unwrap(),
        "identical arguments and cache give identical CSV bytes"
    );
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(&svg2).unwrap());
}

#[test]
fn trace_writes_csv_to_stdout_by_default() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().to_str().unwrap().to_string();
    let out = run(&["trace", "--grid", "8", "--cache", &cache]);
    assert_eq!(code(&out), 0);
    assert!(stdout_text(&out).starts_with("x,y,residual\n"));
}

#[test]
fn trace_rejects_bad_grid_and_domain() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().to_str().unwrap().to_string();
    for args in [
        vec!["trace", "--grid", "0", "--cache", cache.as_str()],
        vec!["trace", "--domain", "0,1,0", "--cache", cache.as_str()],
        vec!["trace", "--domain", "1,0,0,1", "--cache", cache.as_str()],
        vec!["trace", "--domain", "0,x,0,1", "--cache", cache.as_str()],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "args {args:?} are a usage error");
    }
}

#[test]
fn solve_accepts_rationals_and_decimals() {
    let out = run(&["solve", "--x", "1/2", "--y", "0.01"]);
    assert_eq!(code(&out), 0);
    let text = stdout_text(&out);
    assert!(text.contains("candidate u-roots:"));
    assert!(text.contains("back-solving at x = 5.0000000000000000e-1"));
}

#[test]
fn solve_rejects_bad_input_with_exit_2() {
    let out = run(&["solve", "--x", "2/5", "--y", "not-a-number"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("bad coordinate"));
    assert_eq!(code(&run(&["solve", "--x", "1/0", "--y", "0"])), 2);
    assert_eq!(code(&run(&["solve", "--x", "1/2", "--y", "0", "--tol", "-1"])), 2);
}

#[test]
fn symmetral_of_square_matches_golden() {
    let tmp = tempfile::tempdir().unwrap();
    let square = write_square(tmp.path());
    let out = bin()
        .arg("symmetral")
        .arg("--polygon")
        .arg(&square)
        .args(["--dir", "1,0"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_text(&out), "-1/2 0\n1/2 0\n1/2 1\n-1/2 1\n");

    let dest = tmp.path().join("sym.poly");
    let to_file = bin()
        .arg("symmetral")
        .arg("--polygon")
        .arg(&square)
        .args(["--dir", "1,0", "--out"])
        .arg(&dest)
        .output()
        .unwrap();
    assert_eq!(code(&to_file), 0);
    assert_eq!(std::fs::read(&dest).unwrap(), out.stdout);
}

#[test]
fn symmetral_rejects_bad_inputs() {
    let tmp = tempfile::tempdir().unwrap();
    let square = write_square(tmp.path());

    let missing = bin()
        .args(["symmetral", "--polygon", "/nonexistent/file", "--dir", "1,0"])
        .output()
        .unwrap();
    assert_eq!(code(&missing), 2);
    assert!(stderr_text(&missing).contains("cannot read"));

    let flat = tmp.path().join("flat.poly");
    std::fs::write(&flat, "0 0\n1 0\n2 0\n").unwrap();
    let collinear = bin()
        .arg("symmetral")
        .arg("--polygon")
        .arg(&flat)
        .args(["--dir", "1,0"])
        .output()
        .unwrap();
    assert_eq!(code(&collinear), 2);

    let bad_dir = bin()
        .arg("symmetral")
        .arg("--polygon")
        .arg(&square)
        .args(["--dir", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&bad_dir), 2);

    let zero_dir = bin()
        .arg("symmetral")
        .arg("--polygon")
        .arg(&square)
        .args(["--dir", "0,0"])
        .output()
        .unwrap();
    assert_eq!(code(&zero_dir), 2);
}

#[test]
fn compare_reports_per_direction_verdicts() {
    let tmp = tempfile::tempdir().unwrap();
    let square = write_square(tmp.path());
    let triangle = write_triangle(tmp.path());

    let same = bin()
        .arg("compare")
        .arg("--a")
        .arg(&square)
        .arg("--b")
        .arg(&square)
        .args(["--dirs", "1,0;0,1;1,2"])
        .output()
        .unwrap();
    assert_eq!(code(&same), 0);
    let text = stdout_text(&same);
    assert_eq!(text.matches(": EQUAL").count(), 3);
    assert!(text.contains("agree in every direction checked"));

    let different = bin()
        .arg("compare")
        .arg("--a")
        .arg(&square)
        .arg("--b")
        .arg(&triangle)
        .args(["--dirs", "1,0; 0,1"])
        .output()
        .unwrap();
    assert_eq!(code(&different), 0);
    let text = stdout_text(&different);
    assert!(text.contains("direction (1, 0): DIFFERENT"));
    assert!(text.contains("differ in at least one direction"));
}

#[test]
fn triangle_demo_verifies_and_is_deterministic() {
    let first = run(&["triangle-demo", "--seed", "7"]);
    assert_eq!(code(&first), 0);
    let text = stdout_text(&first);
    assert!(text.contains("parameters: b = 31/47, c = 5/26"));
    assert!(text.contains("chord functions in (1, 0): EQUAL"));
    assert!(text.contains("chord functions in (0, 1): EQUAL"));
    assert!(text.contains("congruent: no"));
    assert!(text.contains("verified: two non-congruent triangles"));
    let second = run(&["triangle-demo", "--seed", "7"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_system_reports_claims_and_exits_1() {
    let first = run(&["verify-system", "--samples", "1", "--seed", "1"]);
    assert_eq!(code(&first), 1, "unresolved stage-1 sampling fails the verdict");
    let text = stdout_text(&first);
    assert!(text.contains("E[B1B5]: 5 terms"));
    assert!(text.contains("UNRESOLVED"));
    assert!(text.contains("S[Q3] vs R2: DIVIDES_COMPUTED (computed = (y) * claimed) ... ok"));
    assert!(text.contains("verdict:"));

    let second = run(&["verify-system", "--samples", "1", "--seed", "1"]);
    assert_eq!(first.stdout, second.stdout, "stdout is deterministic");
}
