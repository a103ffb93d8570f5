mod common;

#[test]
fn golden_files_are_reproduced_byte_for_byte() {
    let (count, failures) = common::check_goldens();
    assert!(count >= 16, "every subcommand needs a golden case");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_subcommand_has_a_golden_case() {
    let commands = [
        "spectrum",
        "mes",
        "tensor",
        "model",
        "model-action",
        "represent",
        "disintegrate",
        "relprod",
        "condexp",
        "integrate",
        "lpnorm",
        "riesz",
        "kolmo",
        "invariant",
        "ergodic",
        "check",
    ];
    let cases = common::cases();
    for command in commands {
        assert!(
            cases.iter().any(|c| c.exit == 0 && c.args.first().map(String::as_str) == Some(command)),
            "no passing golden case for `{command}`"
        );
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("maw-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("spectrum.json");
    let args: Vec<String> = ["spectrum", "algebra3.json", "--out", target.to_str().unwrap()]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let run = common::run(&args);
    assert_eq!(run.exit, 0);
    assert!(run.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "{\"points\":[\"a\",\"b\",\"c\"]}\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn summaries_follow_maw_color() {
    let run_with = |color: &str| {
        std::process::Command::new(env!("CARGO_BIN_EXE_maw"))
            .args(["disintegrate", "pi.json"])
            .current_dir(common::golden_dir().join("inputs"))
            .env("MAW_COLOR", color)
            .output()
            .unwrap()
    };
    let (on, off) = (run_with("1"), run_with("0"));
    assert_eq!(on.stdout, off.stdout);
    assert!(off.stderr.is_empty());
    assert_eq!(String::from_utf8(on.stderr).unwrap(), "2 fibers, verified: true\n");
}

#[test]
fn jobs_does_not_change_check_output() {
    let args = |jobs: &str| -> Vec<String> {
        ["check", "--suite", "kolmo", "--seed", "7", "--jobs", jobs]
            .iter()
            .map(|s| s.to_string())
            .collect()
    };
    let (one, four) = (common::run(&args("1")), common::run(&args("4")));
    assert_eq!(one.exit, 0, "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
}
