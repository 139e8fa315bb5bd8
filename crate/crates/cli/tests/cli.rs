use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowgcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn pair_on_fig1() {
    let o = run(&["pair", &fixture("fig1.net"), "y", "z", "--set", "x"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("phi_X=2 lambda_X=2 delta_X=2"), "{out}");
}

#[test]
fn pair_on_fig5_exact_with_witness() {
    let o = run(&["pair", &fixture("fig5.net"), "y", "z", "--set", "x1,x2", "--exact", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("phi_X=1 lambda_X=2"), "{out}");
    assert!(out.contains("witness=(y-u1-x1-z,y-u2-x2-v1-z,y-v2-z)"), "{out}");
}

#[test]
fn pair_dump_flow_parses_back() {
    let o = run(&["pair", &fixture("fig2.net"), "y", "z", "--dump-flow"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let flow_text: String = out.lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert!(flow_text.starts_with("flow y z 2\n"), "{out}");
    let net = flowgcm::Network::parse(&std::fs::read_to_string(fixture("fig2.net")).unwrap()).unwrap();
    let f = flowgcm::Flow::parse(&net, &flow_text).unwrap();
    assert_eq!(flowgcm::flow::validate_flow(&net, &f), Ok(()));
}

#[test]
fn input_errors_exit_2() {
    let o = run(&["pair", &fixture("fig1.net"), "y", "y", "--set", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("source and sink are both `y`"));

    let o = run(&["pair", &fixture("fig1.net"), "y", "z", "--set", "q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown vertex `q`"));

    let o = run(&["pair", "/nonexistent/net", "y", "z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/net"));

    let o = run(&["pair", &fixture("fig1.net"), "y", "z", "--max-capacity", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["pair", &fixture("fig5.net"), "y", "z", "--set", "x1,x2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn centrality_fig6_and_defaults() {
    let o = run(&["centrality", &fixture("fig6.net"), "--set", "x1,x2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("vitality_num=10 vitality_den=1 betweenness_num=10 betweenness_den=1"),
        "{out}"
    );

    let o = run(&["centrality", &fixture("fig1.net")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    for line in out.lines() {
        let field = |k: &str| {
            line.split(' ')
                .find_map(|kv| kv.strip_prefix(&format!("{k}=")))
                .unwrap()
                .to_string()
        };
        assert_eq!(field("vitality_num"), field("betweenness_num"));
        assert_eq!(field("vitality_den"), field("betweenness_den"));
    }
}

#[test]
fn centrality_output_is_independent_of_jobs() {
    let base = ["centrality", &fixture("fig5.net"), "--set", "x1,x2", "--set", "v1", "--explain", "--exact"];
    let one = run(&base);
    let mut wide = base.to_vec();
    wide.extend(["--jobs", "4"]);
    let four = run(&wide);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn tsv_has_header() {
    let o = run(&["--format", "tsv", "centrality", &fixture("fig1.net"), "--set", "x"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("set\tvitality_num\tvitality_den\tbetweenness_num\tbetweenness_den\tvitality_dec\tbetweenness_dec")
    );
    assert!(lines.next().unwrap().starts_with("{x}\t"));
}

#[test]
fn examples_pass_and_are_deterministic() {
    let a = run(&["examples"]);
    let b = run(&["examples"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("24 checks, 0 failed\n"));
}

#[test]
fn selftest_small_batch() {
    let o = run(&["selftest", "--instances", "40", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("generator=ChaCha8"));
    assert!(out.contains("Singleton checks="));
    assert!(!out.contains("violations=1"));
}
