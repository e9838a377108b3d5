use std::process::{Command, Output};

use mobius_metric::certificate::{Certificate, Claim, Status};
use mobius_metric::metric::Vertex;
use mobius_metric::{MobiusPlane, PlaneDocument, PlaneModel};

fn mobius(args: &[&str]) -> Output {
    mobius_env(args, None)
}

fn mobius_env(args: &[&str], budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mobius"));
    cmd.args(args).env_remove("MOBIUS_BUDGET_SECS");
    if let Some(b) = budget {
        cmd.env("MOBIUS_BUDGET_SECS", b);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn certificate(out: &Output) -> Certificate {
    serde_json::from_slice(&out.stdout).expect("certificate JSON")
}

#[test]
fn build_emits_reloadable_plane() {
    let out = mobius(&["build", "--q", "3"]);
    assert_eq!(code(&out), 0);
    let doc: PlaneDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((doc.points.len(), doc.circles.len()), (10, 30));
    let plane = MobiusPlane::from_document(&doc).unwrap();
    assert!(plane.verify_axioms().all_passed());
}

#[test]
fn build_rejects_non_prime_power() {
    let out = mobius(&["build", "--q", "6"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime power"));
}

#[test]
fn build_subset_model() {
    let out = mobius(&["build", "--q", "2", "--model", "order2-subsets"]);
    assert_eq!(code(&out), 0);
    let doc: PlaneDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.model, PlaneModel::Order2Subsets);
    assert_eq!(doc.circles.len(), 10);
    assert_eq!(
        code(&mobius(&["build", "--q", "3", "--model", "order2-subsets"])),
        1
    );
}

#[test]
fn solve_certificate_reverifies_from_plane_json() {
    let dir = tempfile::tempdir().unwrap();
    let plane_path = dir.path().join("plane.json");
    let cert_path = dir.path().join("cert.json");
    assert_eq!(
        code(&mobius(&[
            "build",
            "--q",
            "3",
            "-o",
            plane_path.to_str().unwrap()
        ])),
        0
    );
    let out = mobius(&[
        "solve",
        "resolve",
        "--q",
        "3",
        "-o",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: PlaneDocument =
        serde_json::from_str(&std::fs::read_to_string(&plane_path).unwrap()).unwrap();
    let cert: Certificate =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(
        (cert.status, cert.upper, cert.lower),
        (Status::Optimal, 8, 8)
    );
    assert_eq!(cert.claim, Claim::Resolving);
    assert_eq!(cert.instance, "resolve-all");
    assert_eq!(
        cert.reduction_polynomials,
        MobiusPlane::miquelian(3).unwrap().field_info()
    );
    cert.verify(&MobiusPlane::from_document(&doc).unwrap())
        .unwrap();
}

#[test]
fn solve_m2_and_split_m4() {
    let out = mobius(&["solve", "resolve", "--q", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(certificate(&out).upper, 4);

    let out = mobius(&["solve", "split", "--q", "4"]);
    assert_eq!(code(&out), 0);
    let cert = certificate(&out);
    assert_eq!((cert.upper, cert.parts.len()), (15, 2));
    let points = cert.witness.iter().filter(|v| v.is_point()).count();
    assert_eq!(points, 9);
    cert.verify(&MobiusPlane::miquelian(4).unwrap()).unwrap();
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = mobius(&["solve", "resolve", "--q", "4", "--nodes", "50"]);
    assert_eq!(code(&out), 2);
    let cert = certificate(&out);
    assert_eq!(cert.status, Status::Bounded);
    assert!(cert.lower <= 11 && 11 <= cert.upper);
    cert.verify(&MobiusPlane::miquelian(4).unwrap()).unwrap();
}

#[test]
fn budget_from_environment() {
    let out = mobius_env(&["solve", "resolve", "--q", "5"], Some("0.2"));
    assert_eq!(code(&out), 2);
    assert!(certificate(&out).elapsed < 5.0);
    let out = mobius_env(&["solve", "resolve", "--q", "2"], Some("soon"));
    assert_eq!(code(&out), 1);
    // an explicit flag wins over the variable
    let out = mobius_env(
        &["solve", "resolve", "--q", "2", "--budget", "5s"],
        Some("soon"),
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn constructions() {
    let out = mobius(&["construct", "s1", "--q", "7"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cert: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert_eq!((cert.upper, cert.status), (12, Status::Constructed));
    assert!(cert.witness.iter().all(|w| matches!(w, Vertex::Circle(_))));

    assert_eq!(code(&mobius(&["construct", "s1", "--q", "2"])), 1);

    let out = mobius(&["construct", "blocking-greedy", "--q", "9"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let size = v["certificate"]["upper"].as_u64().unwrap();
    assert!((18..=45).contains(&size));

    let out = mobius(&["construct", "s1s2", "--q", "5", "--format", "human"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
}

#[test]
fn report_table() {
    let out = mobius(&["report", "--q", "2..3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[0][3], rows[0][4]), ("2", "4", "7"));
    assert_eq!((rows[0][5], rows[0][6]), ("4", "3"));
    assert_eq!((rows[1][0], rows[1][3], rows[1][4]), ("3", "8", "11"));

    let out = mobius(&["report", "--q", "5..2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&mobius(&["frobnicate"])), 1);
    assert_eq!(code(&mobius(&["solve", "resolve"])), 1);
    assert_eq!(code(&mobius(&["report", "--q", "x..3"])), 1);
    assert_eq!(code(&mobius(&["--help"])), 0);
}
