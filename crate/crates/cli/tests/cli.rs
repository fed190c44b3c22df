//! End-to-end tests over the compiled binary: output shapes, the exit-code
//! contract, and byte-level determinism.

use std::process::{Command, Output};

fn dirichlet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirichlet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn chars_row_counts() {
    let out = dirichlet(&["chars", "--k", "5", "--format", "json"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["class"], "principal");

    let out = dirichlet(&["chars", "--k", "3"]);
    assert_eq!(stdout(&out).lines().count(), 2);

    let out = dirichlet(&["chars", "--k", "8", "--format", "json"]);
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["class"] != "complex"));

    let out = dirichlet(&["chars", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lvalue_quadratic_mod_5() {
    let out = dirichlet(&["lvalue", "chi[k=5;c=2]", "--s", "1", "--method", "integral"]);
    assert!(out.status.success());
    let row: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let re = row["value"][0].as_f64().unwrap();
    assert!((re - 0.4304089).abs() < 1e-6);
    assert_eq!(row["method"], "integral");
}

#[test]
fn lvalue_divergent_principal_is_a_domain_error() {
    let out = dirichlet(&["lvalue", "chi[k=3;c=0]", "--s", "1", "--method", "series"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("diverges"));
}

#[test]
fn lvalue_all_emits_series_and_product_at_2() {
    let out = dirichlet(&["lvalue", "chi[k=5;c=1]", "--s", "2", "--method", "all"]);
    assert!(out.status.success());
    let methods: Vec<String> = stdout(&out)
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["method"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(methods, ["series", "euler-product"]);
}

#[test]
fn lvalue_bad_label_is_usage_error() {
    let out = dirichlet(&["lvalue", "chi[k=5;z=2]", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lvalue_integral_away_from_one_is_a_domain_error() {
    let out = dirichlet(&["lvalue", "chi[k=5;c=2]", "--s", "2", "--method", "integral"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_small_is_byte_exact() {
    let out = dirichlet(&["census", "--N", "10", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "N,10\nk,3\nexcluded,1\nratio_spread,2\nm,count\n1,1\n2,2\n"
    );
}

#[test]
fn census_mod_4_counts() {
    let out = dirichlet(&["census", "--N", "100000", "--k", "4"]);
    let text = stdout(&out);
    assert!(text.contains("1,4783\n"));
    assert!(text.contains("3,4808\n"));
}

#[test]
fn census_writes_file_and_rejects_small_n() {
    let path = std::env::temp_dir().join("dirichlet_census_test.csv");
    let out = dirichlet(&[
        "census",
        "--N",
        "50",
        "--k",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("N,50\nk,5\n"));
    std::fs::remove_file(&path).ok();

    let out = dirichlet(&["census", "--N", "2", "--k", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_pole_passes_and_fails_by_tolerance() {
    let out = dirichlet(&["verify", "pole", "--k", "5"]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let case: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(case["pass"], true);
    }

    // an absurd tolerance turns every case into a failure: exit 1
    let out = dirichlet(&["verify", "pole", "--k", "5", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verification failed"));
}

#[test]
fn identity_command_passes() {
    let out = dirichlet(&[
        "identity", "--k", "5", "--m", "2", "--rho", "0.5", "--N", "50000", "--Q", "50000",
    ]);
    assert!(out.status.success());
    let check: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(check["discrepancy"].as_f64().unwrap() <= check["bound"].as_f64().unwrap());
}

#[test]
fn quad_reports_pell_for_1_mod_4() {
    let out = dirichlet(&["quad", "--k", "17"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["pell"]["h"], 8);
    assert_eq!(report["pell"]["k_int"], 2);

    let out = dirichlet(&["quad", "--k", "15"]);
    assert_eq!(out.status.code(), Some(2)); // not prime
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["pole", "--k", "24"];
    let a = dirichlet(&args);
    let b = dirichlet(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = ["lvalue", "chi[k=7;c=3]", "--s", "1", "--method", "all"];
    let a = dirichlet(&args);
    let b = dirichlet(&args);
    assert_eq!(a.stdout, b.stdout);
}
