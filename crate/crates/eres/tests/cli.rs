use std::io::Write;
use std::process::{Command, Output};

fn eres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eres")).args(args).env_remove("ERES_CAP_INSTANCES").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_domain(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("eres-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn query_verdicts_set_the_exit_code() {
    let o = eres(&["query", "dv.e", "sceptical([holds(protected,6)])"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("succeeds", Some(0)));
    let o = eres(&["query", "dv.e", "sceptical([holds(protected,2)])"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("fails", Some(1)));
    let o = eres(&["--mode", "oracle", "query", "dv.e", "sceptical([holds(protected,6)])"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn explanations_are_listed() {
    let o = eres(&["query", "dp5.e", "credulous([holds(picture,3)],X)"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(
        lines,
        [
            "succeeds",
            "X = [rule(gen,picture,3,2),rule(ass,loaded,2)]",
            "X = [rule(gen,picture,3,2),rule(ass,digital,2)]"
        ]
    );
    let o = eres(&["--mode", "oracle", "query", "dp5.e", "credulous([holds(picture,3)],X)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_and_models() {
    let o = eres(&["check", "dc_jumpstart.e"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("inconsistent", Some(1)));
    let o = eres(&["check", "dc.e"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("consistent", Some(0)));
    let o = eres(&["models", "dv.e", "--horizon", "6"]);
    assert_eq!((stdout(&o).lines().count(), o.status.code()), (4, Some(0)));
    let o = eres(&["--format", "json", "models", "dc_jumpstart.e", "--horizon", "12"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((v["count"].as_u64(), o.status.code()), (Some(0), Some(1)));
}

#[test]
fn json_query_record() {
    let o = eres(&["--format", "json", "--timings", "query", "dv.e", "credulous([neg(holds(protected,2))])"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["outcome"], "succeeds");
    assert_eq!(v["backend"], "argumentation");
    assert!(v["elapsed_us"].is_u64());
}

#[test]
fn translate_prints_clauses() {
    let o = eres(&["translate", "dv.e"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("initiation(protected,T):-\n  happens(injectA,T), holds(typeO,T), true.\n"), "{text}");
}

#[test]
fn errors_exit_with_two_or_three() {
    let bad = temp_domain("bad.e", "fluent F.\nF holds-at x.\n");
    let o = eres(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:12"));

    let o = eres(&["query", "dv.e", "sceptical([holds(nosuch,1)])"]);
    assert_eq!(o.status.code(), Some(2));
    let o = eres(&["query", "missing-file.e", "sceptical([holds(f,1)])"]);
    assert_eq!(o.status.code(), Some(2));
    let o = eres(&["--horizon", "3", "--mode", "oracle", "query", "dv.e", "sceptical([holds(protected,6)])"]);
    assert_eq!(o.status.code(), Some(2));

    let wide = temp_domain("wide.e", "fluent At(X).\naction Go(X).\nconst a, b, c.\nGo(X) initiates At(X).\n");
    let o = eres(&["--cap-instances", "2", "check", wide.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let _ = std::fs::remove_file(bad);
    let _ = std::fs::remove_file(wide);
}

#[test]
fn corpus_passes_in_both_modes() {
    for mode in ["argumentation", "oracle"] {
        let o = eres(&["--mode", mode, "corpus"]);
        assert_eq!(o.status.code(), Some(0), "{mode}");
        let last = stdout(&o).lines().last().unwrap_or_default().to_string();
        assert!(last.ends_with("goldens passed") && !stdout(&o).contains("FAIL"), "{mode}: {last}");
    }
}
