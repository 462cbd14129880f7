//! End-to-end tests for the `qschub` binary: exit codes, output text,
//! JSON shape, and byte-for-byte determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qschub"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn assert_exit(out: &Output, code: i32, what: &str) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "{what}: expected exit {code}, got {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        stdout_of(out),
        String::from_utf8_lossy(&out.stderr),
    );
}

// ---------------------------------------------------------------------------
// The three contract examples.
// ---------------------------------------------------------------------------

#[test]
fn presentation_g2_p2_verifies_and_prints_the_relation() {
    let out = run(&["presentation", "G2/P2", "--verify"]);
    assert_exit(&out, 0, "presentation G2/P2 --verify");
    let text = stdout_of(&out);
    assert!(text.contains("PASS"), "missing PASS: {text}");
    assert!(
        text.contains("h^6 - 18*h^3*q - 27*q^2"),
        "missing minimal relation: {text}"
    );
}

#[test]
fn degree_e6_p2_pair_s_s_is_37752() {
    let out = run(&["degree", "E6/P2", "--pair", "s", "s"]);
    assert_exit(&out, 0, "degree E6/P2 --pair s s");
    assert_eq!(stdout_of(&out).trim(), "37752");
}

#[test]
fn semisimple_f4_p4_at_q_1_reports_not_semisimple_with_exit_0() {
    let out = run(&["semisimple", "F4/P4", "--q", "1"]);
    assert_exit(&out, 0, "semisimple F4/P4 --q 1");
    let text = stdout_of(&out);
    assert!(text.contains("NOT SEMISIMPLE"), "got: {text}");
}

// ---------------------------------------------------------------------------
// Exit-code contract: 0 success, 2 usage, falsification reserved for 3.
// ---------------------------------------------------------------------------

#[test]
fn semisimple_verdicts_carry_exit_0_either_way() {
    let yes = run(&["semisimple", "G2/P2", "--q", "1"]);
    assert_exit(&yes, 0, "semisimple G2/P2 --q 1");
    let text = stdout_of(&yes);
    assert!(text.contains("SEMISIMPLE") && !text.contains("NOT"), "got: {text}");

    let no = run(&["semisimple", "F4/P4", "--q", "-1"]);
    assert_exit(&no, 0, "semisimple F4/P4 --q -1");
}

#[test]
fn unknown_verb_exits_2() {
    assert_exit(&run(&["frobnicate"]), 2, "unknown verb");
}

#[test]
fn unknown_space_exits_2() {
    assert_exit(&run(&["classes", "E9/P1"]), 2, "rank out of range");
    assert_exit(&run(&["classes", "X4/P1"]), 2, "unknown series letter");
    assert_exit(&run(&["classes", "G2/P7"]), 2, "node out of range");
    assert_exit(&run(&["classes", "A3/P2"]), 2, "node without an adjoint marking");
}

#[test]
fn bad_class_labels_exit_2() {
    // Letter index past the rank.
    assert_exit(&run(&["chevalley", "G2/P2", "--class", "s9"]), 2, "letter > rank");
    // Not a minimal coset representative (s1 lies in the parabolic of G2/P2).
    assert_exit(&run(&["chevalley", "G2/P2", "--class", "s1"]), 2, "non-minimal word");
    // Root label of the wrong length.
    assert_exit(&run(&["chevalley", "G2/P2", "--class", "[1,2,3]"]), 2, "bad root label");
    // Named generator that the catalog does not define for this space.
    assert_exit(&run(&["degree", "G2/P2", "--pair", "s", "t"]), 2, "unknown generator name");
}

#[test]
fn missing_required_argument_exits_2() {
    assert_exit(&run(&["degree", "G2/P2"]), 2, "degree needs --class or --pair");
    assert_exit(&run(&["census"]), 2, "census needs --all");
}

#[test]
fn thread_cap_env_is_validated() {
    let bad = bin()
        .args(["roots", "A2"])
        .env("QSCHUB_THREADS", "abc")
        .output()
        .expect("binary runs");
    assert_exit(&bad, 2, "QSCHUB_THREADS=abc");

    let zero = bin()
        .args(["roots", "A2"])
        .env("QSCHUB_THREADS", "0")
        .output()
        .expect("binary runs");
    assert_exit(&zero, 2, "QSCHUB_THREADS=0");

    let ok = bin()
        .args(["roots", "A2"])
        .env("QSCHUB_THREADS", "4")
        .output()
        .expect("binary runs");
    assert_exit(&ok, 0, "QSCHUB_THREADS=4");
}

// ---------------------------------------------------------------------------
// Determinism: identical invocations produce identical bytes, and --seed
// is accepted without changing anything.
// ---------------------------------------------------------------------------

#[test]
fn census_output_is_byte_deterministic_and_seed_is_inert() {
    let a = run(&["census", "--all"]);
    let b = run(&["census", "--all"]);
    let c = run(&["census", "--all", "--seed", "7"]);
    assert_exit(&a, 0, "census --all");
    assert_eq!(a.stdout, b.stdout, "two census runs differ");
    assert_eq!(a.stdout, c.stdout, "--seed changed census output");

    let header = stdout_of(&a);
    assert!(
        header.starts_with("space,flavor,varpi,dim,c1,classes,dmax"),
        "unexpected CSV header: {}",
        header.lines().next().unwrap_or("")
    );
}

#[test]
fn hasse_json_is_byte_deterministic() {
    let args = ["hasse", "F4/P1", "--window", "0..4", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_exit(&a, 0, "hasse F4/P1 --json");
    assert_eq!(a.stdout, b.stdout, "two hasse runs differ");
}

// ---------------------------------------------------------------------------
// JSON mode: every verb emits one parseable document with the right tag.
// ---------------------------------------------------------------------------

#[test]
fn every_verb_emits_tagged_json() {
    let cases: &[(&[&str], &str)] = &[
        (&["roots", "G2", "--json"], "roots"),
        (&["classes", "G2/P2", "--json"], "classes"),
        (&["hasse", "G2/P2", "--window", "0..2", "--json"], "hasse"),
        (&["chevalley", "G2/P2", "--class", "h", "--json"], "chevalley"),
        (&["degree", "G2/P2", "--class", "point", "--json"], "degree"),
        (&["presentation", "G2/P2", "--json"], "presentation"),
        (&["semisimple", "G2/P2", "--q", "1", "--json"], "semisimple"),
        (&["dmax", "F4", "--node", "1", "--json"], "dmax"),
        (&["chains", "G2/P2", "--degrees", "2", "--json"], "chains"),
        (
            &["gw1", "G2/P2", "--u", "h", "--v", "point", "--w", "point", "--json"],
            "gw1",
        ),
        (&["census", "--all", "--json"], "census"),
    ];
    for (args, verb) in cases {
        let out = run(args);
        assert_exit(&out, 0, &args.join(" "));
        let doc = json_of(&out);
        assert_eq!(doc["verb"], *verb, "wrong tag for {}", args.join(" "));
    }
}

#[test]
fn classes_json_reports_the_quadric_invariants() {
    // G2/P1 is the five-dimensional quadric: dim 5, index 5, six classes.
    let out = run(&["classes", "G2/P1", "--json"]);
    assert_exit(&out, 0, "classes G2/P1 --json");
    let doc = json_of(&out);
    assert_eq!(doc["dim"], 5);
    assert_eq!(doc["c1"], 5);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 6);
    assert_eq!(doc["flavor"], "coadjoint");
}

#[test]
fn roots_json_reports_the_g2_root_system() {
    let out = run(&["roots", "G2", "--json"]);
    let doc = json_of(&out);
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(doc["highest_root"], serde_json::json!([3, 2]));
    assert_eq!(doc["highest_short_root"], serde_json::json!([2, 1]));
}

#[test]
fn chevalley_json_multiplies_by_the_hyperplane_class() {
    // On G2/P2 the square of the hyperplane class is 3 * sigma_2.
    let out = run(&["chevalley", "G2/P2", "--class", "h", "--json"]);
    let doc = json_of(&out);
    let terms = doc["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "3");
    assert_eq!(terms[0]["q"], 0);
    assert_eq!(terms[0]["word"], serde_json::json!([1, 2]));
}

#[test]
fn dmax_json_reports_the_two_step_bound_for_f4() {
    let out = run(&["dmax", "F4", "--node", "1", "--json"]);
    let doc = json_of(&out);
    assert_eq!(doc["dmax"], 2);
    assert_eq!(doc["steps"].as_array().unwrap().len(), 1);
    assert_eq!(doc["steps"][0]["degree"], 2);
}

#[test]
fn bigraded_incidence_space_reports_a_c1_pair() {
    let out = run(&["classes", "A3/P1", "--json"]);
    let doc = json_of(&out);
    assert_eq!(doc["c1"], serde_json::json!([3, 3]));
    assert_eq!(doc["dim"], 5);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 12);
}

// ---------------------------------------------------------------------------
// Degree-one invariants and degree-two chain structure.
// ---------------------------------------------------------------------------

#[test]
fn gw1_separates_the_two_e6_examples() {
    let zero = run(&[
        "gw1", "E6/P2", "--u", "s2 s4 s5 s3 s4 s2", "--v", "s1 s5 s3 s4 s2", "--w", "point",
    ]);
    assert_exit(&zero, 0, "gw1 vanishing example");
    assert_eq!(stdout_of(&zero).trim(), "0");

    let one = run(&[
        "gw1", "E6/P2", "--u", "s1 s4 s5 s3 s4 s2", "--v", "s1 s5 s3 s4 s2", "--w", "point",
    ]);
    assert_exit(&one, 0, "gw1 nonvanishing example");
    assert_eq!(stdout_of(&one).trim(), "1");
}

#[test]
fn g2_p2_has_one_degree_two_chain_and_no_split_chain_to_the_lowest_root() {
    let two = run(&["chains", "G2/P2", "--degrees", "2", "--json"]);
    let doc = json_of(&two);
    assert_eq!(doc["chains"].as_array().unwrap().len(), 1);
    assert_eq!(doc["chains"][0]["endpoint"], serde_json::json!([0, -1]));

    let split = run(&[
        "chains", "G2/P2", "--degrees", "1,1", "--endpoint", "lowest", "--json",
    ]);
    let doc = json_of(&split);
    assert_eq!(doc["chains"].as_array().unwrap().len(), 0);
}

// ---------------------------------------------------------------------------
// DOT export.
// ---------------------------------------------------------------------------

#[test]
fn hasse_dot_writes_a_digraph_file() {
    let path = std::env::temp_dir().join("qschub-cli-test-hasse.dot");
    let path_str = path.to_str().unwrap();
    let out = run(&["hasse", "G2/P2", "--window", "0..2", "--dot", path_str]);
    assert_exit(&out, 0, "hasse --dot");
    let dot = std::fs::read_to_string(&path).expect("dot file written");
    assert!(dot.starts_with("digraph"), "not DOT source: {dot}");
    let _ = std::fs::remove_file(&path);
}
