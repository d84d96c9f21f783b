//! Acceptance criterion 10: identical flags and seed produce byte-identical
//! output, including sampled modes.

use std::process::Command;

fn capture(args: &[&str]) -> (Vec<u8>, Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_coopnet"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.stderr, out.status.code())
}

#[test]
fn criterion_10_byte_identical_output() {
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "analyze", "--n", "7", "--tau", "2", "--a", "2/3", "--b", "7/2", "--c", "5/4",
        ],
        vec![
            "analyze", "--n", "7", "--tau", "2", "--a", "1", "--b", "3", "--c", "2", "--format",
            "csv",
        ],
        vec![
            "graph",
            "--topology",
            "barabasi_albert",
            "--n",
            "120",
            "--ba-m",
            "3",
            "--delay",
            "2",
            "--seed",
            "42",
            "--stats",
        ],
        vec![
            "graph",
            "--topology",
            "barabasi_albert",
            "--n",
            "80",
            "--ba-m",
            "2",
            "--delay",
            "1",
            "--seed",
            "5",
            "--seeds",
            "4",
        ],
        vec!["graph", "--topology", "cycle", "--n", "9", "--delay", "3"],
        vec![
            "simulate",
            "--topology",
            "barabasi_albert",
            "--n",
            "15",
            "--ba-m",
            "2",
            "--graph-seed",
            "9",
            "--delay",
            "1",
            "--a",
            "1",
            "--b",
            "3",
            "--c",
            "2",
            "--deviator",
            "omniscient:4",
            "--perms",
            "sample:50",
            "--seed",
            "42",
        ],
        vec![
            "simulate",
            "--topology",
            "star",
            "--n",
            "5",
            "--delay",
            "2",
            "--a",
            "1",
            "--b",
            "3",
            "--c",
            "2",
            "--deviator",
            "go:3",
        ],
        vec![
            "sweep", "--n", "2..12", "--tau", "full", "--a", "1", "--b", "3", "--c", "2",
        ],
        vec![
            "sweep",
            "--n",
            "50",
            "--alpha",
            "0.1,0.3,0.7",
            "--a",
            "1",
            "--b",
            "3",
            "--c",
            "2",
            "--format",
            "json",
        ],
        vec![
            "verify", "--suite", "vt", "--n", "4", "--delta", "2", "--format", "json",
        ],
        vec![
            "verify", "--suite", "boundary", "--n", "3", "--tau", "1", "--a", "1", "--c", "2",
        ],
        vec![
            "verify",
            "--suite",
            "vt",
            "--n",
            "3",
            "--delta",
            "1",
            "--random-triples",
            "4",
            "--seed",
            "123",
        ],
    ];

    let mut mismatches = Vec::new();
    for args in &commands {
        let first = capture(args);
        let second = capture(args);
        if first != second {
            mismatches.push(args.join(" "));
        }
        if first.2 != Some(0) {
            mismatches.push(format!("exit {:?}: {}", first.2, args.join(" ")));
        }
    }
    let ok = mismatches.is_empty();
    println!(
        "criterion 10 {}: {} command invocations repeated with identical flags and seeds \
         produced byte-identical stdout/stderr (mismatches: {mismatches:?})",
        if ok { "PASS" } else { "FAIL" },
        commands.len()
    );
    assert!(ok, "criterion 10 failed: {mismatches:?}");
}
