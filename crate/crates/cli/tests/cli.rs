use std::process::{Command, Output};

use serde_json::Value;

fn prinspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prinspace")).args(args).env_remove("PRINSPACE_WORKERS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn no_arguments_prints_usage() {
    let o = prinspace(&[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&prinspace(&["verify-main", "--bogus"])), 2);
    assert_eq!(code(&prinspace(&["verify-main", "--m", "0..2"])), 2);
    assert_eq!(code(&prinspace(&["verify-main", "--p", "5..2"])), 2);
    assert_eq!(code(&prinspace(&["char", "--m", "1"])), 2);
    assert_eq!(code(&prinspace(&["char", "--A", "--L"])), 2);
    assert_eq!(code(&prinspace(&["char", "--finite"])), 2);
    assert_eq!(code(&prinspace(&["jack", "--lambda", "2,x"])), 2);
    assert_eq!(code(&prinspace(&["fusion-scan", "--family", "weighted:1,1,0"])), 2);
    assert_eq!(code(&prinspace(&["odd-scan", "--json", "--csv"])), 2);
}

#[test]
fn invalid_worker_cap_exits_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_prinspace"))
        .args(["odd-scan"])
        .env("PRINSPACE_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_prinspace"))
        .args(["odd-scan", "--json"])
        .env("PRINSPACE_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_main_passes() {
    let o = prinspace(&["verify-main", "--m", "1..2", "--p", "2..5", "--k", "1..2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["report_version"], 1);
    assert_eq!(v["ok"], true);
    assert_eq!(v["summary"]["passed"], 15);
    assert_eq!(v["summary"]["skipped"], 1);
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["verify-jack-basis", "--reconstruct", "--json"][..],
        &["presentation", "--m", "1..2", "--seed", "11", "--json"],
        &["fusion-scan", "--m", "1..2", "--n", "1..3", "--random-families", "2", "--seed", "5", "--json"],
    ] {
        let a = prinspace(args);
        let b = prinspace(args);
        assert_eq!(code(&a), code(&b));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(json(&a)["report_version"], 1);
    }
}

#[test]
fn seed_changes_random_families() {
    let fams = |seed: &str| {
        let o = prinspace(&["fusion-scan", "--m", "1", "--n", "2", "--kmax", "2", "--random-families", "3", "--seed", seed, "--json"]);
        json(&o)["parameters"]["families"].clone()
    };
    assert_eq!(fams("1"), fams("1"));
    assert_ne!(fams("1"), fams("2"));
}

#[test]
fn character_of_a_as_json() {
    let o = prinspace(&["char", "--A", "--m", "1", "--kmax", "3", "--qmax", "10", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let series = v["checks"][0]["values"]["series"].as_array().unwrap();
    // m = 1: z^k q^{k(k-1)} / (q)_k, so z^2 q^{2+j} counts partitions of j into at most 2 parts
    let coeff = |z: i64, q: &str| {
        series
            .iter()
            .find(|t| t["z_charge_units"] == z && t["q_exponent"] == q)
            .map_or(0, |t| t["coeff"].as_i64().unwrap())
    };
    assert_eq!(coeff(0, "0/1"), 1);
    assert_eq!(coeff(2, "2/1"), 1);
    assert_eq!(coeff(2, "4/1"), 2);
    assert_eq!(coeff(2, "6/1"), 3);
    assert_eq!(coeff(2, "1/1"), 0);
    assert_eq!(coeff(3, "6/1"), 1);
}

#[test]
fn csv_output() {
    let o = prinspace(&["char", "--finite", "--m", "1", "--p", "2", "--csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("series,m,index,z_charge_units,q_exponent,coeff"));
    // dim V_(1)(2) = 4
    let total: i64 = lines.map(|l| l.rsplit(',').next().unwrap().parse::<i64>().unwrap()).sum();
    assert_eq!(total, 4);

    let o = prinspace(&["odd-scan", "--n", "1..2", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("campaign,name,cell,status,summary\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn config_file_supplies_flags() {
    let dir = std::env::temp_dir().join(format!("prinspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.conf");
    std::fs::write(&path, "# small grid\nm = 2\np = 3..4\nk = 1\njson = true\n").unwrap();
    let p = path.to_str().unwrap();

    let o = prinspace(&["verify-main", "--config", p]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["parameters"]["m"], "2");
    assert_eq!(v["parameters"]["p"], "3..4");
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);

    let o = prinspace(&["--config", p, "verify-main", "--p", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["parameters"]["p"], "5");

    std::fs::write(&path, "no equals sign\n").unwrap();
    assert_eq!(code(&prinspace(&["verify-main", "--config", p])), 2);
    assert_eq!(code(&prinspace(&["verify-main", "--config", "/nonexistent/prinspace.conf"])), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_only_campaigns_never_fail() {
    let o = prinspace(&["fusion-scan", "--m", "2", "--n", "4", "--kmax", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "report"));
    let inverse = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "reversed-ideal").unwrap();
    assert!(inverse["summary"].as_str().unwrap().contains("differs at k = [2]"));
    assert_eq!(code(&prinspace(&["odd-scan"])), 0);
}

#[test]
fn jack_reports_expansion_and_norm() {
    let o = prinspace(&["jack", "--lambda", "2", "--alpha", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let vals = &v["checks"][0]["values"];
    assert_eq!(vals["expansion"]["(2)"], "1/1");
    assert_eq!(vals["expansion"]["(1,1)"], "1/1");
    assert_eq!(vals["norm_sq"], "1/1");
    let o = prinspace(&["jack", "--n", "4", "--alpha", "2,1/3"]);
    assert_eq!(code(&o), 0);
}
