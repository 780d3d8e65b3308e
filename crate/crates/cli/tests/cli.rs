mod common;

use common::{first_line, logsym, logsym_stdin, session};

const SUBCOMMANDS: [&str; 22] = [
    "check-divisor",
    "check-saito",
    "check-logsymplectic",
    "hamiltonian",
    "bracket",
    "singbracket",
    "jacobi",
    "identities",
    "symbol",
    "decompose",
    "dirac-test",
    "curvature",
    "gauge",
    "flat",
    "residues",
    "normalize-residues",
    "periods",
    "integrality",
    "class",
    "primitive",
    "prequantize",
    "weights",
];

/// One invocation per subcommand: (arguments after the session, session, exit code, first line).
fn table() -> Vec<(&'static str, Vec<&'static str>, i32, &'static str)> {
    vec![
        ("saito3.lsx", vec!["check-divisor", "--fields", "d1,d2,d3"], 0, "reduced: h = "),
        ("saito3.lsx", vec!["check-saito", "--fields", "d1,d2,d3"], 0, "free: det = "),
        ("torus.lsx", vec!["check-logsymplectic"], 0, "log symplectic: det = 1"),
        ("torus.lsx", vec!["hamiltonian", "--f", "x*y", "--tilde"], 0, "delta_f = x^2*y*@x - x*y^2*@y"),
        ("torus.lsx", vec!["bracket", "--f", "x", "--g", "y"], 0, "{f, g} = -x*y"),
        ("torus.lsx", vec!["singbracket", "--f", "x", "--g", "y"], 0, "{f, g}_sing = -1"),
        ("torus.lsx", vec!["jacobi", "--f", "x", "--g", "y", "--h", "x*y"], 0, "holds: jacobiator = 0"),
        ("torus.lsx", vec!["identities", "--u", "x", "--v", "y", "--a", "x + y + 1", "--b", "x^2*y"], 1, "defects in ii"),
        ("exact.lsx", vec!["symbol", "--field", "x*@x", "--mult", "y", "--expect", "x*@x"], 0, "symbol = x*@x"),
        ("exact.lsx", vec!["decompose", "--conn", "s", "--field", "y*@y", "--mult", "x"], 0, "phi = nabla_(y*@y) + (1 - T)*x"),
        ("exact.lsx", vec!["dirac-test", "--conn", "s", "--f", "x", "--g", "y"], 0, "holds"),
        ("exact.lsx", vec!["curvature", "--conn", "s"], 0, "K = T*d(x)^dlog(y)"),
        ("exact.lsx", vec!["gauge", "--conn", "s", "--tau", "d(x*y)"], 0, "sigma' = "),
        ("exact.lsx", vec!["flat", "--conn", "s"], 1, "not flat: K = T*d(x)^dlog(y)"),
        ("exact.lsx", vec!["residues", "--eta", "s"], 1, "nonconstant residues"),
        ("exact.lsx", vec!["normalize-residues", "--conn", "(5/2)*dlog(y)"], 0, "normalized: sigma = 1/2*dlog(y)"),
        ("torus.lsx", vec!["periods"], 0, "1 periods"),
        ("torus.lsx", vec!["integrality"], 1, "non-integral: period T^2 over T_{x,y}"),
        ("torus.lsx", vec!["class"], 0, "class = dlog(x)^dlog(y)"),
        ("exact.lsx", vec!["primitive"], 0, "primitive = x*dlog(y)"),
        ("torus.lsx", vec!["prequantize", "--form", "w"], 1, "non-integral: period T^2 over T_{x,y}"),
        ("saito3.lsx", vec!["weights"], 1, "none: not weighted homogeneous"),
    ]
}

fn run_row(file: &str, args: &[&str], format: &str) -> common::Run {
    let path = session(file);
    let mut full = vec![args[0], "--session", path.as_str(), "--format", format];
    full.extend_from_slice(&args[1..]);
    logsym(&full)
}

#[test]
fn coverage_table_reaches_every_subcommand() {
    let rows = table();
    let covered: Vec<&str> = rows.iter().map(|r| r.1[0]).collect();
    assert_eq!(covered, SUBCOMMANDS.to_vec());
    let help = logsym(&["--help"]).stdout;
    for sub in SUBCOMMANDS {
        assert!(help.contains(sub), "help does not list {sub}");
    }
    for (file, args, code, head) in rows {
        let out = run_row(file, &args, "text");
        assert_eq!(out.code, code, "{args:?}: {}{}", out.stdout, out.stderr);
        assert!(first_line(&out.stdout).starts_with(head), "{args:?}: {}", out.stdout);
    }
}

#[test]
fn spec_examples() {
    let out = logsym(&["check-saito", "--session", &session("saito3.lsx"), "--fields", "d1,d2,d3"]);
    assert_eq!(out.code, 0);
    let line = first_line(&out.stdout);
    assert!(line.starts_with("free: det = ") && line.ends_with(" = 1*h"), "{line}");

    let out = logsym(&["prequantize", "--session", &session("torus.lsx"), "--form", "w"]);
    assert_eq!((out.code, first_line(&out.stdout)), (1, "non-integral: period T^2 over T_{x,y}"));

    let out = logsym(&["dirac-test", "--session", &session("exact.lsx"), "--conn", "s", "--f", "x", "--g", "y"]);
    assert_eq!((out.code, first_line(&out.stdout)), (0, "holds"));
}

#[test]
fn json_agrees_with_text() {
    for (file, args, code, _) in table() {
        let text = run_row(file, &args, "text");
        let json = run_row(file, &args, "json");
        assert_eq!(json.code, code);
        let v: serde_json::Value = serde_json::from_str(&json.stdout).expect("valid json");
        assert_eq!(v["schema"], "logsym/1");
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["passed"], code == 0);
        assert_eq!(v["verdict"].as_str().unwrap(), first_line(&text.stdout));
        let details = v["details"].as_array().unwrap();
        assert_eq!(details.len(), text.stdout.lines().count() - 1);
    }
}

#[test]
fn output_is_deterministic() {
    for (file, args, _, _) in table() {
        for format in ["text", "json"] {
            let a = run_row(file, &args, format);
            let b = run_row(file, &args, format);
            assert_eq!(a.stdout.as_bytes(), b.stdout.as_bytes());
        }
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let torus = session("torus.lsx");
    let cases: Vec<Vec<&str>> = vec![
        vec!["bracket", "--session", &torus, "--f", "nope", "--g", "y"],
        vec!["bracket", "--session", &torus, "--f", "x*(", "--g", "y"],
        vec!["bracket", "--session", "/nonexistent/session.lsx", "--f", "x", "--g", "y"],
        vec!["bracket", "--session", &torus, "--f", "@x", "--g", "y"],
        vec!["no-such-command"],
        vec!["bracket", "--session", &torus],
    ];
    for args in cases {
        let out = logsym(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = logsym(&["bracket", "--session", &torus, "--f", "nope", "--g", "y", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("nope"));
}

#[test]
fn session_from_stdin() {
    let text = std::fs::read_to_string(session("torus.lsx")).unwrap();
    let out = logsym_stdin(&["bracket", "--session", "-", "--f", "x", "--g", "y"], Some(&text));
    assert_eq!((out.code, first_line(&out.stdout)), (0, "{f, g} = -x*y"));
    let out = logsym_stdin(&["bracket", "--session", "-", "--f", "x", "--g", "y"], Some("vars x\nvars y\n"));
    assert_eq!(out.code, 2);
}
