use std::fs;
use std::path::Path;

use netgap::cert::{check_certificate, Certificate};
use netgap::cli::run_with;
use netgap::lincode::{verify_solution, CodeJson, NetworkCode};
use netgap::network::{butterfly, Network};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn netgap(dir: &Path, args: &[&str]) -> Out {
    let mut argv = vec!["netgap".to_string(), "--cert-dir".into(), dir.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path_str(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

/// Every certificate file under `dir` passes `check-cert`, both in process
/// and through the command, and survives a JSON round trip.
fn check_all_certs(dir: &Path) -> usize {
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap().to_string_lossy().to_string();
        if !name.ends_with(".json") || name.split('.').count() < 3 {
            continue;
        }
        let text = fs::read_to_string(&p).unwrap();
        let cert = Certificate::from_json_str(&text).unwrap();
        assert!(check_certificate(&cert).unwrap().ok, "{name}");
        let again = Certificate::from_json_str(&cert.to_json_string().unwrap()).unwrap();
        assert_eq!(again, cert);
        let r = netgap(dir, &["check-cert", p.to_str().unwrap()]);
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        n += 1;
    }
    n
}

#[test]
fn butterfly_build_solve_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let net = path_str(d, "bf.json");
    let code = path_str(d, "xor.json");
    assert_eq!(netgap(d, &["build", "butterfly", "-o", &net]).code, 0);
    let parsed = Network::from_json_str(&fs::read_to_string(&net).unwrap()).unwrap();
    assert_eq!(parsed, butterfly());
    assert_eq!(Network::from_json_str(&parsed.to_json_string()).unwrap(), parsed);
    let r = netgap(d, &["solve", "--network", &net, "--q", "2", "-o", &code]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = netgap(d, &["verify", "--network", &net, "--code", &code]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("accept"));
    let cj: CodeJson = serde_json::from_str(&fs::read_to_string(&code).unwrap()).unwrap();
    let c = NetworkCode::from_json(&cj).unwrap();
    assert!(verify_solution(&parsed, &c).unwrap().accepted());
    assert_eq!(NetworkCode::from_json(&c.to_json()).unwrap(), c);
}

#[test]
fn corrupted_code_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let net = path_str(d, "bf.json");
    let code = path_str(d, "code.json");
    netgap(d, &["build", "butterfly", "-o", &net]);
    netgap(d, &["solve", "--network", &net, "--q", "2", "-o", &code]);
    let mut cj: serde_json::Value = serde_json::from_str(&fs::read_to_string(&code).unwrap()).unwrap();
    for (_, g) in cj["edges"].as_object_mut().unwrap() {
        *g = serde_json::json!([[0, 0]]);
    }
    fs::write(&code, cj.to_string()).unwrap();
    assert_eq!(netgap(d, &["verify", "--network", &net, "--code", &code]).code, 1);
}

#[test]
fn emitted_certificates_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let commands: &[&[&str]] = &[
        &["chi", "--qkneser", "2", "4", "2"],
        &["chi", "--hyper", "2", "1", "3", "--direct"],
        &["coloring", "--qkneser", "2", "5", "2"],
        &["hom", "--from", "qkneser:2:4:2", "--to", "complete:6"],
        &["ic", "search", "2", "2", "2", "2"],
        &["gap", "--kneser", "2", "2", "2"],
        &["gap", "--comb", "2", "5", "2"],
        &["gap", "--butterfly"],
    ];
    for args in commands {
        let r = netgap(d, args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    }
    assert!(check_all_certs(d) >= 8);
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(netgap(d, &["coloring", "--qkneser", "2", "4", "2"]).code, 0);
    let file = fs::read_dir(d).unwrap().map(|e| e.unwrap().path()).find(|p| p.to_string_lossy().contains("coloring")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    for c in v["colors"].as_array_mut().unwrap() {
        *c = serde_json::json!(0);
    }
    fs::write(&file, v.to_string()).unwrap();
    assert_eq!(netgap(d, &["check-cert", file.to_str().unwrap()]).code, 1);
}

#[test]
fn json_reports_parse() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let r = netgap(d, &["--json", "psi", "6"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["psi"], 7);
    let r = netgap(d, &["--json", "gap", "--kneser", "2", "2", "2"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["gap"]["status"], "exact");
    assert_eq!(v["gap"]["value"], 1);
    assert_eq!(v["qs"]["value"]["value"], 5);
    assert_eq!(v["qv"]["value"]["value"], 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(netgap(d, &["psi", "10"]).stdout.trim(), "11");
    assert_eq!(netgap(d, &["hom", "--from", "qkneser:2:4:2", "--to", "complete:4"]).code, 1);
    assert_eq!(netgap(d, &["mds", "check", "2", "4", "2", "2"]).code, 1);
    assert_eq!(netgap(d, &["mds", "check", "2", "4", "2", "3"]).code, 0);
    assert_eq!(netgap(d, &["--budget", "1", "chi", "--qkneser", "2", "4", "2"]).code, 3);
    assert_eq!(netgap(d, &["bogus"]).code, 2);
    assert_eq!(netgap(d, &["mds", "rs", "2", "4", "2"]).code, 2);
    assert_eq!(netgap(d, &["verify", "--network", "/nonexistent.json", "--code", "/nonexistent.json"]).code, 2);
}

#[test]
fn gap_table_is_csv() {
    let dir = tempfile::tempdir().unwrap();
    let r = netgap(dir.path(), &["gap-table", "--q", "2", "--t", "1,2"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next().unwrap(), "network,q_v,q_s,gap,methods,runtime");
    // the quoted network name may contain commas
    let rows: Vec<Vec<&str>> = lines.map(|l| l.rsplitn(6, ',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][5], "\"K_{2,2;2}\"");
    assert_eq!(&rows[1][2..5], &["1", "5", "4"]);
}
