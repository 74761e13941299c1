//! End-to-end tests of the binary: output bytes, formats, and the
//! 0/1/2/3 exit-code contract.

use std::process::{Command, Output};

use wavenum_core::conumber::ScheduleOutcome;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wavenum"));
    // shield the contract assertions from ambient configuration
    cmd.env_remove("WAVENUM_PHASE_BUDGET");
    cmd.env_remove("WAVENUM_INJECT_MISMATCH");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn six_term_product_renders_exactly() {
    let out = run(&["render", "--conumber-product", "2,3", "--terms", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1/6 0 0 0 5/6 0\n");
}

#[test]
fn wave_one_renders_ones() {
    let out = run(&["render", "--wave", "1", "--terms", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1 1 1\n");
}

#[test]
fn eq16_renders_thirty_six_unreduced_terms() {
    let out = run(&["render", "--eq16"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let terms: Vec<&str> = text.trim_end().split(' ').collect();
    assert_eq!(terms.len(), 36);
    for (i, term) in terms.iter().enumerate() {
        let k = (i + 1) as u64;
        if k % 6 == 1 || k % 6 == 5 {
            assert_eq!(*term, format!("{k}/6"), "phase {k}");
        } else {
            assert_eq!(*term, "0", "phase {k}");
        }
    }
    assert!(stderr(&out).contains("frequency k/6"));
}

#[test]
fn render_requires_exactly_one_subject() {
    assert_eq!(code(&run(&["render"])), 1);
    assert_eq!(code(&run(&["render", "--wave", "2", "--conumber", "3"])), 1);
}

#[test]
fn render_rejects_oversized_product_period() {
    // nine-prime period 223092870 exceeds the materialization cap
    let out = run(&["render", "--conumber-product", "2,3,5,7,11,13,17,19,23"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("materialization cap"));
    // an explicit small term count keeps the same product renderable
    let out = run(&[
        "render",
        "--conumber-product",
        "2,3,5,7,11,13,17,19,23",
        "--terms",
        "4",
        "--unreduced",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1/223092870 0 0 0\n");
}

#[test]
fn primes_limit_three_prints_two_and_three() {
    let out = run(&["primes", "--limit", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("primes (2): 2 3\n"));
}

#[test]
fn primes_three_conservative_windows_and_final_list() {
    let out = run(&["primes", "--iterations", "3", "--mode", "conservative"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("window [3, 9)"));
    assert!(text.contains("window [5, 25)"));
    assert!(text.contains("window [7, 49)"));
    assert!(text.ends_with("primes (15): 2 3 5 7 11 13 17 19 23 29 31 37 41 43 47\n"));
}

#[test]
fn primes_scope_flags_are_exclusive() {
    assert_eq!(code(&run(&["primes"])), 1);
    assert_eq!(
        code(&run(&["primes", "--limit", "10", "--iterations", "2"])),
        1
    );
}

#[test]
fn primes_maximal_json_round_trips_schedule() {
    let out = run(&[
        "primes",
        "--iterations",
        "2",
        "--mode",
        "maximal",
        "--format",
        "json",
        "--jobs",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["meta"]["command"], "primes");

    let schedule = doc["data"]["schedule"].clone();
    let outcome: ScheduleOutcome =
        serde_json::from_value(schedule.clone()).expect("schedule deserializes");
    assert_eq!(outcome.entries.len(), 2);
    assert_eq!(
        (
            outcome.entries[0].iteration,
            outcome.entries[0].largest_prime
        ),
        (1, 7)
    );
    assert_eq!(
        (
            outcome.entries[1].iteration,
            outcome.entries[1].largest_prime
        ),
        (2, 47)
    );
    // parse(emit(x)) = x
    assert_eq!(
        serde_json::to_value(&outcome).expect("re-serializes"),
        schedule
    );

    let primes: Vec<u64> =
        serde_json::from_value(doc["data"]["primes"].clone()).expect("prime list");
    assert_eq!(primes.last(), Some(&47));
    assert_eq!(primes.len(), 15);
}

#[test]
fn schedule_budget_stop_exits_three_with_partial_output() {
    let out = bin()
        .env("WAVENUM_PHASE_BUDGET", "10000")
        .args(["schedule", "--iterations", "4", "--mode", "maximal"])
        .output()
        .expect("binary spawns");
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("iterations 3 of 4"));
    assert!(text.contains("largest prime 2207"));
    assert!(stderr(&out).contains("phase budget 10000 exhausted"));
}

#[test]
fn phase_budget_env_is_validated() {
    for bad in ["50", "abc", "-3"] {
        let out = bin()
            .env("WAVENUM_PHASE_BUDGET", bad)
            .args(["primes", "--limit", "10"])
            .output()
            .expect("binary spawns");
        assert_eq!(code(&out), 1, "budget {bad:?}");
    }
}

#[test]
fn injected_mismatch_exits_two() {
    let out = bin()
        .env("WAVENUM_INJECT_MISMATCH", "2")
        .args(["verify", "--n-max", "3"])
        .output()
        .expect("binary spawns");
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("FAIL window agreement: N=2"));
    assert!(text.contains("missing [23]"));
    assert!(stderr(&out).contains("1 verification check(s) failed"));
}

#[test]
fn out_flag_redirects_stdout_bytes_to_file() {
    let path = std::env::temp_dir().join(format!("wavenum-out-{}.txt", std::process::id()));
    let to_stdout = run(&["verify", "--n-max", "2", "--jobs", "2"]);
    assert_eq!(code(&to_stdout), 0);
    let to_file = run(&[
        "verify",
        "--n-max",
        "2",
        "--jobs",
        "2",
        "--out",
        path.to_str().expect("temp path is UTF-8"),
    ]);
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).expect("output file written");
    std::fs::remove_file(&path).ok();
    assert_eq!(written, to_stdout.stdout);
}

#[test]
fn verify_runs_are_byte_identical() {
    let first = run(&["verify", "--n-max", "2", "--theorem9", "--jobs", "3"]);
    let second = run(&["verify", "--n-max", "2", "--theorem9", "--jobs", "3"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn table1_csv_matches_embedded_fixture() {
    let out = run(&["table1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), wavenum_core::modular::table1_fixture_csv());
}

#[test]
fn table1_check_passes() {
    let out = run(&["table1", "--check"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("check passed"));
}

#[test]
fn table1_validates_prime_input() {
    let composite = run(&["table1", "--primes", "2,4"]);
    assert_eq!(code(&composite), 1);
    let oversized = run(&["table1", "--primes", "2,3,5,7,11,13,17,19,23"]);
    assert_eq!(code(&oversized), 3);
    let conflicting = run(&["table1", "--check", "--primes", "2,3"]);
    assert_eq!(code(&conflicting), 1);
}

#[test]
fn verify_reconstruction_pattern_via_json() {
    let out = run(&[
        "verify",
        "--theorem9",
        "--n-max",
        "4",
        "--format",
        "json",
        "--jobs",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let details: Vec<String> = doc["data"]["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .filter(|c| c["check"] == "residue reconstruction")
        .map(|c| c["detail"].as_str().expect("detail string").to_string())
        .collect();
    assert_eq!(details.len(), 4);
    assert!(details[0].contains("N=1") && details[0].contains("agreement true"));
    assert!(details[1].contains("N=2") && details[1].contains("agreement false"));
    assert!(details[1].contains("witness k=5 -> 1/6"));
    assert!(details[2].contains("N=3") && details[2].contains("agreement true"));
    assert!(details[3].contains("N=4") && details[3].contains("agreement false"));
    assert!(details[3].contains("witness k=11 -> 197/210"));
    assert_eq!(doc["data"]["summary"]["failed"], 0);
}

#[test]
fn bench_csv_row_has_exact_arithmetic() {
    let out = run(&[
        "bench",
        "--limit",
        "1000",
        "--wheel-primes",
        "2,3",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let body = stdout(&out);
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let record = reader
        .records()
        .next()
        .expect("one data row")
        .expect("row parses");
    assert_eq!(&record[0], "1000"); // limit
    assert_eq!(&record[1], "2,3"); // wheel_primes
    assert_eq!(&record[2], "6"); // period
    assert_eq!(&record[3], "1/3"); // density
    assert_eq!(&record[4], "333"); // candidates examined in [1, 1000]
    assert_eq!(&record[5], "2"); // survivors per period = phi(6)
    assert_eq!(&record[6], "168"); // wheel primes found
    assert_eq!(&record[7], "168"); // baseline primes
}

#[test]
fn bench_limit_above_budget_exits_three() {
    let out = bin()
        .env("WAVENUM_PHASE_BUDGET", "100000")
        .args(["bench", "--limit", "200000"])
        .output()
        .expect("binary spawns");
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("exceeds the phase budget"));
}

#[test]
fn usage_surface_behaves() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["render", "--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["no-such-command"])), 1);
    assert_eq!(code(&run(&["primes", "--limit", "2"])), 1); // below the first window
    assert_eq!(code(&run(&["verify", "--n-max", "0"])), 1);
    assert_eq!(code(&run(&["verify", "--jobs", "0", "--n-max", "1"])), 1);
    assert_eq!(code(&run(&["bench", "--limit", "10"])), 1); // pre: limit >= 1000
}
