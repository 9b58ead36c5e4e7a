mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use orbitcode::cli::formats::format_word_file;
use orbitcode::cli::run;
use orbitcode::{Code, CodeSpec, Decoder, PolyF, RhoCheck, Word};

use common::{all_vectors, field};

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("orbitcode-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orbitcode").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn make_spec(dir: &Scratch, name: &str, args: &[&str]) -> String {
    let mut full = vec!["make-spec"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    assert_eq!(code, 0, "{err}");
    dir.write(name, &out)
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

#[test]
fn orbits_listing() {
    let (code, out, _) = cli(&["orbits", "-p", "3", "-k", "1", "-m", "2"]);
    assert_eq!(code, 0);
    let reps: Vec<&str> = out
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(reps, ["0", "1", "2", "4", "5"]);
}

#[test]
fn params_rejects_composite_p() {
    let (code, _, err) = cli(&["params", "-p", "4", "-m", "3"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, _, _) = cli(&["params", "-p", "2", "-m", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn params_report() {
    let (code, out, _) = cli(&["params", "-p", "2", "-k", "2", "-m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "q"), "4");
    assert_eq!(value(&out, "orbits"), value(&out, "orbits_closed_form"));
}

#[test]
fn matrix_dump_both_methods() {
    let dir = Scratch::new("matrix");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "3"]);
    let (code, direct, _) = cli(&["matrix", "--spec", &spec]);
    assert_eq!(code, 0);
    assert_eq!(direct, "1 2 2 1 2\n1 2 0 2 1\n1 0 1 1 0\n");
    let (_, lfsr, _) = cli(&["matrix", "--spec", &spec, "--method", "lfsr"]);
    assert_eq!(lfsr, direct);
}

#[test]
fn encode_zero_message() {
    let dir = Scratch::new("enc0");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    let msg = dir.write("m.txt", "# orbitcode v1\n0 0\n");
    let (code, out, _) = cli(&["encode", "--spec", &spec, "--message", &msg]);
    assert_eq!(code, 0);
    assert_eq!(out, "# orbitcode v1\n0 0 0 0 0\n");
}

#[test]
fn encode_decode_round_trip_through_files() {
    let dir = Scratch::new("rt");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    for msg in all_vectors(3, 2) {
        let text: Vec<String> = msg.iter().map(u64::to_string).collect();
        let m = dir.write("m.txt", &format!("# orbitcode v1\n{}\n", text.join(" ")));
        let (code, word, _) = cli(&["encode", "--spec", &spec, "--message", &m]);
        assert_eq!(code, 0);
        let w = dir.write("w.txt", &word);
        let (code, report, _) = cli(&["decode", "--spec", &spec, "--word", &w]);
        assert_eq!(code, 0);
        assert_eq!(value(&report, "status"), "ok");
        assert_eq!(value(&report, "corrected"), word.lines().nth(1).unwrap());
    }
}

#[test]
fn decode_planted_unit_error() {
    let dir = Scratch::new("dec");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    let msg = dir.write("m.txt", "# orbitcode v1\n2 1\n");
    let (_, word, _) = cli(&["encode", "--spec", &spec, "--message", &msg]);
    let clean: Vec<u32> = word
        .lines()
        .nth(1)
        .unwrap()
        .split(' ')
        .map(|s| s.parse().unwrap())
        .collect();
    let f = field(3, 1, 2);
    let mut noisy = Word::from_symbols(&f, &clean).unwrap();
    // orbit {4} is coordinate 3
    noisy.0[3] = f.add(noisy.0[3], f.subfield_element(1).unwrap());
    let w = dir.write("r.txt", &format_word_file(&f, &noisy));
    let (code, report, _) = cli(&["decode", "--spec", &spec, "--word", &w]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "status"), "corrected");
    assert_eq!(value(&report, "support"), "4");
    assert_eq!(value(&report, "values"), "1");
    assert_eq!(value(&report, "corrected"), word.lines().nth(1).unwrap());
}

#[test]
fn decode_wrong_length_is_parse_error() {
    let dir = Scratch::new("len");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    let w = dir.write("r.txt", "# orbitcode v1\n1 1 1 0\n");
    let (code, _, err) = cli(&["decode", "--spec", &spec, "--word", &w]);
    assert_eq!(code, 1);
    assert!(err.contains("length"));
    let w = dir.write("r.txt", "# orbitcode v1\n1 1 3 0 0\n");
    assert_eq!(cli(&["decode", "--spec", &spec, "--word", &w]).0, 1);
}

#[test]
fn decode_uncorrectable_has_distinct_exit() {
    let f = field(3, 1, 2);
    let decoder = Decoder::new(
        Code::new(CodeSpec::new(f.clone(), 4, PolyF::one(), RhoCheck::Enforce).unwrap()).unwrap(),
    );
    let bad = all_vectors(3, 5)
        .map(|v| Word::from_symbols(&f, &v.iter().map(|&s| s as u32).collect::<Vec<_>>()).unwrap())
        .find(|w| decoder.decode(w).is_err())
        .expect("some word lies outside every radius ball");
    let dir = Scratch::new("unc");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    let w = dir.write("r.txt", &format_word_file(&f, &bad));
    let (code, report, _) = cli(&["decode", "--spec", &spec, "--word", &w]);
    assert_eq!(code, 2);
    assert_eq!(value(&report, "status"), "uncorrectable");
    value(&report, "stage");
}

#[test]
fn simulate_zero_trials() {
    let dir = Scratch::new("sim0");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    let (code, out, _) = cli(&[
        "simulate", "--spec", &spec, "--trials", "0", "--degree", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "trials"), "0");
    assert_eq!(value(&out, "successes"), "0");
    assert!(!out.contains("trial="));
}

#[test]
fn simulate_guaranteed_mode() {
    let dir = Scratch::new("simg");
    let spec = make_spec(&dir, "s.txt", &["-p", "2", "-m", "5", "-t", "6"]);
    let args = [
        "simulate", "--spec", &spec, "--trials", "200", "--degree", "3", "--seed", "11",
    ];
    let (code, out, _) = cli(&args);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "successes"), "200");
    assert_eq!(value(&out, "miscorrections"), "0");
    assert_eq!(cli(&args).1, out);
    let (code, _, _) = cli(&["simulate", "--spec", &spec, "--degree", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn simulate_stress_mode_counts_failures() {
    let dir = Scratch::new("sims");
    let spec = make_spec(&dir, "s.txt", &["-p", "3", "-m", "2", "-t", "4"]);
    let (code, out, _) = cli(&[
        "simulate", "--spec", &spec, "--trials", "300", "--degree", "4", "--seed", "5", "--stress",
    ]);
    assert_eq!(code, 0);
    let count = |k| value(&out, k).parse::<u64>().unwrap();
    assert_eq!(
        count("successes") + count("failures") + count("miscorrections"),
        300
    );
    assert!(count("failures") > 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("trial=")).count(), 300);
}

#[test]
fn search_g_report() {
    let (code, out, _) = cli(&["search-g", "-p", "3", "-k", "1", "-m", "2", "-t", "3"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "D"), "2");
    assert_eq!(value(&out, "winner"), "1,2,0,1");
    assert!(
        value(&out, "audit_min_degree_weight")
            .parse::<usize>()
            .unwrap()
            > 2
    );
    let (_, all, _) = cli(&[
        "search-g", "-p", "3", "-m", "2", "-t", "3", "--all", "--jobs", "3",
    ]);
    assert_eq!(all.lines().filter(|l| l.starts_with("g=")).count(), 8);
}

#[test]
fn search_g_rejects_t_sharing_factor_with_m() {
    assert_eq!(cli(&["search-g", "-p", "3", "-m", "2", "-t", "2"]).0, 1);
    assert_eq!(cli(&["search-g", "-p", "2", "-m", "3", "-t", "3"]).0, 1);
}

#[test]
fn audit_report() {
    let dir = Scratch::new("audit");
    let spec = make_spec(&dir, "s.txt", &["-p", "2", "-m", "3", "-t", "2"]);
    let (code, out, _) = cli(&["audit", "--spec", &spec]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "rank"), "2");
    assert_eq!(value(&out, "dimension"), "1");
    assert_eq!(value(&out, "min_hamming_weight"), "2");
    assert_eq!(value(&out, "hamming_floor"), "1");
    assert_eq!(value(&out, "hamming_bound_holds"), "true");
}

#[test]
fn fieldpoly_override() {
    let dir = Scratch::new("fp");
    // x^2 + 2x + 2 is the other primitive quadratic over GF(3)
    let spec = make_spec(
        &dir,
        "s.txt",
        &["-p", "3", "-m", "2", "-t", "3", "--fieldpoly", "2,2,1"],
    );
    let text = std::fs::read_to_string(&spec).unwrap();
    assert_eq!(value(&text, "fieldpoly"), "2,2,1");
    assert_eq!(value(&text, "fieldpoly_override"), "true");
    assert_eq!(cli(&["matrix", "--spec", &spec]).0, 0);
    let tampered = dir.write("t.txt", &text.replace("fieldpoly_override=true\n", ""));
    assert_eq!(cli(&["matrix", "--spec", &tampered]).0, 1);
}

#[test]
fn rho_with_unit_root_needs_flag() {
    // 1 + x vanishes at β^4 = −1 in GF(9)
    let args = ["make-spec", "-p", "3", "-m", "2", "-t", "3", "--rho", "1,1"];
    assert_eq!(cli(&args).0, 1);
    let mut relaxed = args.to_vec();
    relaxed.push("--no-rho-check");
    let (code, out, _) = cli(&relaxed);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "rho_check"), "skip");
}

fn bin(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcode"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

#[test]
fn binary_exit_statuses() {
    let dir = Scratch::new("bin");
    assert_eq!(
        bin(&["orbits", "-p", "2", "-m", "3"], &dir.0).status.code(),
        Some(0)
    );
    assert_eq!(
        bin(&["params", "-p", "4", "-m", "3"], &dir.0).status.code(),
        Some(1)
    );
    assert_eq!(bin(&["frobnicate"], &dir.0).status.code(), Some(1));
    assert_eq!(
        bin(&["matrix", "--spec", "missing.txt"], &dir.0)
            .status
            .code(),
        Some(1)
    );
    let out = bin(&["make-spec", "-p", "2", "-m", "5", "-t", "4"], &dir.0);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("# orbitcode v1\n"));
}
