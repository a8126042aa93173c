use std::process::Command;

use gradal::ast::{Command as Cmd, Item};
use gradal::{parse_session, run, Settings, Status};
use proptest::prelude::*;

const ACCEPTANCE: &str = include_str!("data/acceptance.grd");

fn settings() -> Settings {
    Settings { eps: None, deg_bound: 4 }
}

#[test]
fn acceptance_script_shape() {
    let s = parse_session(ACCEPTANCE).unwrap();
    assert_eq!(s.declarations().count(), 9);
    assert_eq!(s.commands().count(), 4);
}

#[test]
fn empty_session_gives_empty_report() {
    let s = parse_session("# nothing\n").unwrap();
    let r = run(&s, "", &settings());
    assert!(r.records.is_empty());
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.schema, 1);
}

#[test]
fn single_reduce_gives_one_record() {
    let src = "field K = qp(2);\ntate R = K{T/1};\npresent A = R / (T^2 - 2);\nreduce A;\n";
    let r = run(&parse_session(src).unwrap(), src, &settings());
    assert_eq!(r.records.len(), 1);
    assert_eq!(r.records[0].status, Status::Done);
    assert_eq!(r.records[0].result["reduction"], "(T^2)");
    assert_eq!(r.records[0].result["distinguished"], false);
}

#[test]
fn failing_check_leaves_others_alone() {
    let src = "field K = qp(3);\ntate R = K{T/1};\npresent A = R / (T^2 - T);\npresent B = R / (T^2 - 3);\n\
               check distinguished A;\ncheck distinguished B;\nbasis K radius 1 bound 1;\n";
    let r = run(&parse_session(src).unwrap(), src, &settings());
    let st: Vec<Status> = r.records.iter().map(|x| x.status).collect();
    assert_eq!(st, vec![Status::Pass, Status::Fail, Status::Done]);
    assert!(r.records[1].summary.contains("T^2"));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn runtime_errors_are_per_command() {
    let src = "field K = qp(3);\ntate R = K{T/1};\npresent A = R / (T^2 - T);\nmodel A;\nreduce A;\n";
    let r = run(&parse_session(src).unwrap(), src, &settings());
    assert_eq!(r.records[0].status, Status::Error);
    assert_eq!(r.records[1].status, Status::Done);
    assert_eq!(r.exit_code(), 2);
}

#[test]
fn reports_are_byte_identical() {
    let s = parse_session(ACCEPTANCE).unwrap();
    let a = run(&s, ACCEPTANCE, &settings()).to_json();
    let b = run(&s, ACCEPTANCE, &settings()).to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"input_sha256\""));
}

#[test]
fn binary_exit_codes_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("s.grd");
    let out = dir.path().join("r.json");
    std::fs::write(&session, ACCEPTANCE).unwrap();
    let st = Command::new(env!("CARGO_BIN_EXE_gradal")).arg("run").arg(&session).arg("--json").arg(&out).status().unwrap();
    // The script contains a presentation that is expected to fail.
    assert_eq!(st.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 4);

    std::fs::write(&session, "field K = qp(2);\ntate R = K{T/1};\npresent A = R / (T^2 - T);\ncheck distinguished A;\n").unwrap();
    let st = Command::new(env!("CARGO_BIN_EXE_gradal")).arg("run").arg(&session).status().unwrap();
    assert_eq!(st.code(), Some(0));

    std::fs::write(&session, "tate R = K{T/1};\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gradal")).arg("run").arg(&session).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":1:10: unresolved name K"));
}

#[test]
fn sympathique_over_must_match() {
    let src = "field K = qp(2);\ntate R = K{S/1};\npresent A = R / ();\npresent A2 = R / ();\npresent B = A{T/1} / (T^2 - T);\n\
               check sympathique B over A2;\n";
    let r = run(&parse_session(src).unwrap(), src, &settings());
    assert_eq!(r.records[0].status, Status::Error);
}

fn poly() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("T".to_string()), Just("S".to_string()), (0u32..20).prop_map(|n| n.to_string())];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}+{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} -  {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 1u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

fn session() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(poly(), 0..3),
        prop::collection::vec(poly(), 0..3),
        1u64..5,
        -3i64..4,
        prop::bool::ANY,
        prop::collection::vec(0i64..3, 0..3),
    )
        .prop_map(|(rels, relrel, num, e, over, pts)| {
            let mut s = format!("group G = < 2 ,3/{num} >;\nfield K = trivial(Q, G);\ntate R = K{{S/2^({e}/2)}};\n");
            s += &format!("present A = R/({});\n", rels.join(" , "));
            s += &format!("present B = A{{T/1}} / ({});\n", relrel.join(","));
            let fibers: Vec<String> = pts.iter().map(|c| format!("(S={c})")).collect();
            s += &format!("check sympathique B{} with fibers [{}];\n", if over { " over A" } else { "" }, fibers.join(","));
            s += "reduce A; basis K radius 3^(1/2) bound 2;\n";
            s
        })
}

proptest! {
    #[test]
    fn parse_print_parse_is_idempotent(src in session()) {
        let s1 = parse_session(&src).unwrap();
        let printed = s1.to_string();
        let s2 = parse_session(&printed).unwrap();
        prop_assert_eq!(&s1, &s2);
        prop_assert_eq!(printed, s2.to_string());
        let last_is_basis = matches!(s2.items.last(), Some(Item::Command(Cmd::Basis { .. })));
        prop_assert!(last_is_basis);
    }
}
