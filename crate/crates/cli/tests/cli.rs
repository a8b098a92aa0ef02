use std::process::{Command, Output};

use serde_json::Value;

fn catalog(file: &str) -> String {
    format!("{}/../core/catalog/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segrekit"))
        .args(args)
        .env_remove("SEGREKIT_MAX_DEGREE")
        .env_remove("SEGREKIT_MAX_BASIS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn segre_at_a_sphere_point() {
    let out = run(&["segre", &catalog("sphere_C2.crm"), "1,0"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["status"], "ok");
    assert_eq!(strs(&r["results"]["segre_variety"]["generators"]), ["z1 - 1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("z1 - 1 = 0"));
}

#[test]
fn symbolic_segre_family() {
    let out = run(&["segre", &catalog("sphere_C2.crm"), "--symbolic"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(strs(&r["results"]["segre_variety"]["generators"]), ["z1*~w1 + z2*~w2 - 1"]);
    assert_eq!(r["results"]["segre_variety"]["point"], Value::Null);
}

#[test]
fn parse_error_exits_2() {
    let dir = std::env::temp_dir().join(format!("segrekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.crm");
    std::fs::write(&bad, "vars z1\nrho: z1 +\n").unwrap();
    let out = run(&["segre", bad.to_str().unwrap(), "1"]);
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert_eq!(r["status"], "input-error");
    assert!(r["error"].as_str().unwrap().contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_file_and_bad_point_exit_2() {
    assert_eq!(code(&run(&["segre", "/nonexistent/m.crm", "1,0"])), 2);
    assert_eq!(code(&run(&["segre", &catalog("sphere_C2.crm"), "1,q+"])), 2);
    assert_eq!(code(&run(&["essfin", &catalog("sphere_C2.crm"), "2,0"])), 2);
    assert_eq!(code(&run(&["segre"])), 2);
}

#[test]
fn essential_finiteness_degrees() {
    let r = report(&run(&["essfin", &catalog("sphere_C2.crm"), "3/5,4/5"]));
    assert_eq!(r["results"]["essential_finiteness"]["degree"], 1);
    let r = report(&run(&["essfin", &catalog("power_r2_n2.crm"), "1,0"]));
    assert_eq!(r["results"]["essential_finiteness"]["finite"], true);
    assert_eq!(r["results"]["essential_finiteness"]["degree"], 4);
    let out = run(&["essfin", &catalog("tube_C2.crm"), "0,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["essential_finiteness"]["finite"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not essentially finite"));
}

#[test]
fn minimality_and_inconclusive_exit_3() {
    let r = report(&run(&["minimal", &catalog("sphere_C2.crm"), "1,0"]));
    assert_eq!(r["results"]["minimality"]["minimal"], true);
    assert_eq!(r["results"]["minimality"]["j0"], 2);
    let r = report(&run(&["minimal", &catalog("hyperquadric_k1_n3.crm"), "0,1,0"]));
    assert_eq!(r["results"]["minimality"]["j0"], 2);
    let r = report(&run(&["minimal", &catalog("tube_C2.crm"), "0,0"]));
    assert_eq!(r["results"]["minimality"]["minimal"], false);
    assert_eq!(r["results"]["minimality"]["stabilized"], true);
    let out = run(&["minimal", &catalog("sphere_C2.crm"), "1,0", "--jmax", "1"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out)["status"], "inconclusive");
}

#[test]
fn levi_signatures_flip_with_the_conormal() {
    let sig = |m: &str, p: &str, c: &str| {
        let r = report(&run(&["levi", &catalog(m), p, c]));
        let s = &r["results"]["levi"]["signature"];
        (s["positives"].as_u64().unwrap(), s["negatives"].as_u64().unwrap(), s["zeros"].as_u64().unwrap())
    };
    assert_eq!(sig("sphere_C2.crm", "1,0", "1"), (1, 0, 0));
    assert_eq!(sig("sphere_C2.crm", "1,0", "-1"), (0, 1, 0));
    let r = report(&run(&["levi", &catalog("hyperquadric_k1_n3.crm"), "0,1,0", "-1"]));
    assert_eq!(r["results"]["levi"]["mixed"], true);
}

#[test]
fn identity_correspondence_has_degree_1() {
    let s = catalog("sphere_C2.crm");
    let out = run(&["correspond", &s, &s, &catalog("identity_2.map"), "--fiber", "3/5,4/5*i"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["correspondence"]["forward_degree"], 1);
    assert_eq!(r["results"]["fibers"][0]["fiber"]["degree"], 1);
    assert_eq!(r["results"]["invariance"]["failed"], 0);
    assert_eq!(r["results"]["invariance"]["ideal_containments"], 5);
}

#[test]
fn power_correspondence_is_4_to_1() {
    let out = run(&[
        "correspond",
        &catalog("power_r2_n2.crm"),
        &catalog("sphere_C2.crm"),
        &catalog("square.map"),
        "--fiber",
        "1,0",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let c = &r["results"]["correspondence"];
    assert_eq!(c["forward_degree"], 1);
    assert_eq!(c["reverse_degree"], 4);
    assert_eq!(c["valency"], "4:1");
    assert_eq!(r["results"]["fibers"][0]["split"]["splits"], true);
    assert!(!strs(&r["excluded"]).is_empty());
}

#[test]
fn excluded_point_warns() {
    let out = run(&[
        "correspond",
        &catalog("power_r2_n2.crm"),
        &catalog("sphere_C2.crm"),
        &catalog("square.map"),
        "--fiber",
        "0,1",
    ]);
    let r = report(&out);
    assert_eq!(r["results"]["fibers"][0]["fiber"]["on_excluded_locus"], true);
    assert!(strs(&r["warnings"]).iter().any(|w| w.contains("excluded locus")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn off_manifold_fiber_skips_splitting() {
    let s = catalog("sphere_C2.crm");
    let r = report(&run(&["correspond", &s, &s, &catalog("rotation.map"), "--fiber", "2,0"]));
    assert_eq!(r["results"]["fibers"][0]["fiber"]["degree"], 1);
    assert_eq!(r["results"]["fibers"][0]["split"], Value::Null);
    assert!(strs(&r["warnings"]).iter().any(|w| w.contains("not on the source manifold")));
}

#[test]
fn non_invariant_map_is_a_mismatch() {
    let dir = std::env::temp_dir().join(format!("segrekit-cli-map-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let map = dir.join("stretch.map");
    std::fs::write(&map, "vars z1 z2\nf: 2*z1\nf: z2\n").unwrap();
    let s = catalog("sphere_C2.crm");
    let out = run(&["correspond", &s, &s, map.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["status"], "mismatch");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn suite_single_entry_and_all() {
    let out = run(&["suite", "sphere_C2"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["suite"][0]["entry"], "sphere_C2");
    assert_eq!(r["results"]["suite"][0]["mismatches"], 0);

    let out = run(&["suite", "--all"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let reports = r["results"]["suite"].as_array().unwrap();
    assert!(reports.len() >= 5);
    assert!(reports.iter().all(|x| x["mismatches"] == 0));
}

#[test]
fn unknown_suite_name_exits_2() {
    let out = run(&["suite", "no_such_entry"]);
    assert_eq!(code(&out), 2);
    assert!(report(&out)["error"].as_str().unwrap().contains("no_such_entry"));
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "correspond",
        &catalog("power_r2_n2.crm"),
        &catalog("sphere_C2.crm"),
        &catalog("square.map"),
        "--fiber",
        "1,0",
        "--seed",
        "7",
    ]
    .map(String::from);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(run(&args).stdout, run(&args).stdout);
    assert_eq!(run(&["suite", "power_r2_s1_n2"]).stdout, run(&["suite", "power_r2_s1_n2"]).stdout);
    let a = report(&run(&["suite", "sphere_C2", "--seed", "1"]));
    let b = report(&run(&["suite", "sphere_C2", "--seed", "2"]));
    assert_ne!(a["inputs"]["digest"], b["inputs"]["digest"]);
    assert_eq!(a["seed"], 1);
}

#[test]
fn resource_caps_from_flags_and_environment() {
    let r = report(&run(&["segre", &catalog("sphere_C2.crm"), "1,0", "--max-degree", "9"]));
    assert_eq!(r["limits"]["max_degree"], 9);
    let out = Command::new(env!("CARGO_BIN_EXE_segrekit"))
        .args(["essfin", &catalog("power_r2_n2.crm"), "1,0"])
        .env("SEGREKIT_MAX_BASIS", "1")
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!(r["limits"]["max_basis"], 1);
    assert_eq!(code(&out), 3);
}

#[test]
fn timings_only_on_request() {
    let args = ["segre", &catalog("sphere_C2.crm"), "1,0"].map(String::from);
    let plain = report(&run(&args.iter().map(String::as_str).collect::<Vec<_>>()));
    assert!(plain.get("timings").is_none());
    let mut with: Vec<&str> = args.iter().map(String::as_str).collect();
    with.push("--timings");
    assert!(report(&run(&with))["timings"]["total_ms"].is_u64());
}
