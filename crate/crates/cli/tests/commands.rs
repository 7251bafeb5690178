use std::process::{Command, Output};

fn gspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = gspace(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn census_of_z3() {
    let v = json(&[
        "enumerate",
        "--groupoid",
        "cyclic:3",
        "--class",
        "all",
        "--count-only",
    ]);
    assert_eq!(v["result"]["count"], 18);
    assert_eq!(v["groupoid"]["name"], "cyclic:3");
    assert_eq!(v["groupoid"]["fingerprint"].as_str().unwrap().len(), 64);
    let v = json(&[
        "enumerate",
        "--groupoid",
        "cyclic:4",
        "--class",
        "all",
        "--count-only",
    ]);
    assert_eq!(v["result"]["count"], 166);
}

#[test]
fn listing_matches_count() {
    let v = json(&[
        "enumerate",
        "--groupoid",
        "cyclic:4",
        "--class",
        "maxlinked:2",
    ]);
    let elements = v["result"]["elements"].as_array().unwrap();
    assert_eq!(
        elements.len(),
        v["result"]["count"].as_u64().unwrap() as usize
    );
    assert_eq!(elements.len(), 12);
}

#[test]
fn no_sections_in_superextension_of_z5() {
    let v = json(&[
        "sections",
        "--groupoid",
        "cyclic:5",
        "--within",
        "maxlinked:2",
    ]);
    assert_eq!(v["result"]["count"], 0);
    assert_eq!(v["result"]["orbits"], 17);
}

#[test]
fn sections_of_z2() {
    let v = json(&["sections", "--groupoid", "cyclic:2"]);
    assert_eq!(v["result"]["count"], 1);
    let s = &v["result"]["sections"][0];
    assert_eq!(s["isomorphic_to_quotient"], true);
    assert_eq!(s["evaluation_onto"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(
        gspace(&["sections", "--budget", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(
        gspace(&["enumerate", "--groupoid", "cyclic:0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gspace(&["enumerate", "--groupoid", "nonsense:3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gspace(&["enumerate", "--class", "linked:x"]).status.code(),
        Some(2)
    );
    assert_eq!(gspace(&["classify", "<[0,7]>"]).status.code(), Some(2));
    assert_eq!(
        gspace(&["enumerate", "--format", "dot"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gspace(&["enumerate", "--groupoid", "cyclic:7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gspace(&["analyze", "--elements", "<[0]>;<[0],[1]>"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn literal_round_trip() {
    let listed = json(&["enumerate", "--groupoid", "cyclic:3"]);
    for literal in listed["result"]["elements"].as_array().unwrap() {
        let literal = literal.as_str().unwrap();
        let v = json(&["classify", literal]);
        assert_eq!(v["result"]["hyperspace"], literal);
    }
}

#[test]
fn csv_and_dot_tables() {
    let out = gspace(&["table", "--class", "filters", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "∘,0,1,2,3,4,5,6");
    assert_eq!(rows.len(), 8);
    assert!(rows[1..].iter().all(|r| r.split(',').count() == 8));

    let out = gspace(&["table", "--elements", "<[0]>;<[1]>", "--format", "dot"]);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph multiplication {"));
    // {1} is not closed: 1+1 = 2 escapes
    assert_eq!(dot.matches("->").count(), 3);
}

#[test]
fn product_of_terms() {
    let v = json(&["product", "0∨1", "0∧2"]);
    let w = json(&["product", "<[0],[1]>", "<[0,2]>"]);
    assert_eq!(v["result"]["product"], w["result"]["product"]);
}

#[test]
fn thread_count_does_not_change_output() {
    let a = json(&["analyze", "--class", "all", "--parallel", "1"]);
    let b = json(&["analyze", "--class", "all", "--parallel", "3"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["elements"], 18);
}

#[test]
fn verification_suite_flags_two_claims() {
    let out = gspace(&["verify-paper", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "fail");
    let failed: Vec<&str> = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        failed,
        [
            "G(Z3) has 9 transversal semigroups",
            "Cayley table of the seven listed elements"
        ]
    );
}
