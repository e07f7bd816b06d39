use schubert_mitosis::cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use schubert_mitosis::PipeDream;

fn mitosis(args: &[&str]) -> schubert_mitosis::cli::Outcome {
    run(std::iter::once("mitosis").chain(args.iter().copied()))
}

#[test]
fn schubert_command() {
    assert_eq!(
        mitosis(&["schubert", "321", "--method", "divdiff"]).stdout,
        "x1^2*x2\n"
    );
    assert_eq!(
        mitosis(&["schubert", "123", "--method", "mitosis"]).stdout,
        "1\n"
    );
    let all = mitosis(&["schubert", "2143", "--all-methods"]);
    assert_eq!(all.code, EXIT_OK);
    let lines: Vec<&str> = all.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    let polys: Vec<&str> = lines[..3]
        .iter()
        .map(|l| l.split_once(": ").unwrap().1)
        .collect();
    assert!(polys.iter().all(|p| *p == "x1^2 + x1*x2 + x1*x3"));
    assert_eq!(lines[3], "equal: true");
    let json = mitosis(&["schubert", "132", "--format", "json"]).stdout;
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    let word = mitosis(&["schubert", "132", "--method", "divdiff", "--word", "2,1"]);
    assert_eq!(word.stdout, "x1 + x2\n");
}

#[test]
fn pipedreams_command() {
    let out = mitosis(&["pipedreams", "132"]);
    assert_eq!(out.stdout.matches('#').count(), 2);
    assert_eq!(
        out.stdout,
        mitosis(&["pipedreams", "132", "--oracle"]).stdout
    );
    let staircase = mitosis(&["pipedreams", "321"]).stdout;
    assert!(staircase.contains("1 reduced pipe dream\n"));
    assert!(staircase.ends_with("++.\n+..\n...\n"));
    let sample_dream = "1,2;1,4;1,5;2,2;2,6;3,1;3,2;3,3;3,4;4,3;5,1;6,1;6,2;7,1";
    assert_eq!(
        mitosis(&["pipedreams", "13865742", "--contains", sample_dream]).stdout,
        "true\n"
    );
    assert_eq!(
        mitosis(&["pipedreams", "132", "--contains", "1,1"]).stdout,
        "false\n"
    );
}

#[test]
fn pipedreams_json_round_trips() {
    let out = mitosis(&["pipedreams", "1432", "--format", "json"]).stdout;
    let dreams: Vec<PipeDream> = serde_json::from_str(&out).unwrap();
    assert_eq!(dreams.len(), 5);
    assert_eq!(serde_json::to_string(&dreams).unwrap() + "\n", out);
}

#[test]
fn mitosis_command() {
    let sample_dream = r#"{"n":8,"crosses":[[1,2],[1,4],[1,5],[2,2],[2,6],[3,1],[3,2],[3,3],[3,4],[4,3],[5,1],[6,1],[6,2],[7,1]]}"#;
    let out = mitosis(&["mitosis", sample_dream, "3"]);
    assert!(out.stdout.starts_with("mitosis_3: 3 offspring\n"));
    let json = mitosis(&["mitosis", sample_dream, "3", "--format", "json"]).stdout;
    let children: Vec<PipeDream> = serde_json::from_str(&json).unwrap();
    let third = serde_json::to_string(&children[2]).unwrap();
    assert!(mitosis(&["mitosis", &third, "4"])
        .stdout
        .starts_with("mitosis_4: 2 offspring"));
    let first = serde_json::to_string(&children[0]).unwrap();
    assert_eq!(
        mitosis(&["mitosis", &first, "4"]).stdout,
        "no offspring (apoptosis)\n"
    );
    assert_eq!(
        mitosis(&["mitosis", "321", "2"]).stdout.lines().next(),
        Some("mitosis_2: 1 offspring")
    );
    assert_eq!(mitosis(&["mitosis", sample_dream, "8"]).code, EXIT_USAGE);
    assert_eq!(mitosis(&["mitosis", "{bad", "1"]).code, EXIT_USAGE);
}

#[test]
fn poset_command() {
    let dot = mitosis(&["poset", "3", "--dot"]).stdout;
    assert_eq!(
        dot.matches(" [label=\"").count() - dot.matches("-> ").count(),
        7
    );
    assert_eq!(dot.matches("-> ").count(), 7);
    let tree = mitosis(&["poset", "3", "--tree", "2,1,2"]).stdout;
    assert_eq!(tree.matches("style=dashed").count(), 1);
    assert!(tree.contains("t2_0 [label=\"132 #1"));
    let single = mitosis(&["poset", "1", "--dot"]).stdout;
    assert_eq!(single.matches("label=\"1 #1").count(), 1);
    assert_eq!(mitosis(&["poset", "6"]).code, EXIT_USAGE);
    assert_eq!(
        mitosis(&["poset", "6", "--poset-bound", "6", "--json"]).code,
        EXIT_OK
    );
    assert_eq!(mitosis(&["poset", "3", "--tree", "1,1"]).code, EXIT_USAGE);
    let json: serde_json::Value =
        serde_json::from_str(&mitosis(&["poset", "3", "--json"]).stdout).unwrap();
    assert_eq!(json["fibers"][3]["perm"], "132");
}

#[test]
fn verify_command() {
    for n in ["2", "3"] {
        let out = mitosis(&["verify", n]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        assert!(out.stdout.ends_with("all hard checks passed\n"));
    }
    let out = mitosis(&["verify", "5", "--experiments", "--threads", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.matches("[PASS]").count(), 10);
    let failed = mitosis(&["verify", "4", "--oracle-bound", "3"]);
    assert_eq!(failed.code, EXIT_VERIFY_FAILED);
}

#[test]
fn usage_errors_and_determinism() {
    assert_eq!(mitosis(&["schubert", "1224"]).code, EXIT_USAGE);
    assert_eq!(
        mitosis(&["schubert", "321", "--format", "dot"]).code,
        EXIT_USAGE
    );
    assert_eq!(mitosis(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(mitosis(&["--help"]).code, EXIT_OK);
    let a = mitosis(&["poset", "4", "--dot", "--threads", "3"]);
    let b = mitosis(&["poset", "4", "--dot", "--threads", "1"]);
    assert_eq!(a, b);
}
