use std::process::Command;

use qskein::report::Report;

fn qskein(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qskein")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn trefoil_points_report() {
    let args = ["classical-points", "--braid", "s1 s1 s1", "--strands", "2", "--prime", "3", "--format", "json"];
    let (code, text, _) = qskein(&args);
    assert_eq!(code, 0);
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.classical_points.len(), 1);
    let pc = &r.classical_points[0];
    assert!(pc.matches);
    assert_eq!(pc.count, pc.oracle_count);
    assert!(text.contains("\"match\": true"));
    // byte-identical re-render and rerun
    assert_eq!(r.to_json(), text);
    assert_eq!(qskein(&args).1, text);
}

#[test]
fn unknot_quotient_report() {
    let (code, text, _) = qskein(&["quotient", "--braid", "", "--strands", "1", "--degree", "2", "--slack", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.graded_dims.len(), 3);
    assert_eq!(r.stabilized, vec![true; 3]);
    assert_eq!(r.working_degree, 4);
    assert_eq!(r.flags.variant.to_string(), "paper-mu-top");
    assert_eq!(r.engine_version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn table_output_and_file_output() {
    let (code, text, _) = qskein(&["coinvariants", "--degree", "1"]);
    assert_eq!(code, 0);
    assert!(text.contains("coinvariants of degree <= d: [1, 2]"), "{text}");
    let path = std::env::temp_dir().join(format!("qskein-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, stdout, _) = qskein(&["coinvariants", "--degree", "1", "--format", "json", "--output", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.coinvariant_dims, r.braided_coinvariant_dims);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exit_codes() {
    let (code, _, err) = qskein(&["quotient", "--braid", "s3", "--strands", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("generator index 3 exceeds strands-1=1"), "{err}");
    assert_eq!(qskein(&["classical-points", "--prime", "9"]).0, 1);
    assert_eq!(qskein(&["classical-points", "--strands", "4", "--prime", "3"]).0, 3);
    assert_eq!(qskein(&["quotient", "--variant", "other"]).0, 1);
    assert_eq!(qskein(&["--help"]).0, 0);
    assert_eq!(qskein(&["axioms", "--degree", "0", "--r-convention", "row-major"]).0, 2);
}

#[test]
fn flags_are_echoed() {
    let (code, text, _) =
        qskein(&["quotient", "--braid", "s1", "--strands", "2", "--degree", "1", "--mirror", "--variant", "mvdv", "--format", "json"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&text).unwrap();
    assert!(r.flags.mirror);
    assert_eq!(r.flags.variant.to_string(), "mvdv");
    assert!(text.contains("\"r-convention\": \"swapped-rows\""));
}
