use std::path::Path;
use std::process::{Command, Output};

fn synthnet(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_synthnet"));
    cmd.args(args);
    cmd.env_remove("SYNTHNET_OUT");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn synthnet")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn profile_of_empty_file_reports_zero_nodes() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("empty.txt");
    std::fs::write(&input, "# nothing here\n").unwrap();
    let out_dir = tmp.path().join("prof");
    let out = synthnet(
        &[
            "profile",
            "--input",
            input.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_ok(&out);
    let profile: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("empty.profile.json")).unwrap())
            .unwrap();
    assert_eq!(profile["nodes"], 0);
    assert_eq!(profile["edges"], 0);
    assert!(out_dir.join("manifest.json").exists());
}

fn write_triangle(path: &Path) {
    std::fs::write(path, "0\t1\n1\t2\n2\t0\n").unwrap();
}

#[test]
fn generate_from_triangle_profile_reproduces_a_triangle() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("k3.txt");
    write_triangle(&input);
    let prof_dir = tmp.path().join("prof");
    assert_ok(&synthnet(
        &[
            "profile",
            "--input",
            input.to_str().unwrap(),
            "--out",
            prof_dir.to_str().unwrap(),
        ],
        &[],
    ));
    let gen_dir = tmp.path().join("gen");
    assert_ok(&synthnet(
        &[
            "generate",
            "--input",
            prof_dir.join("k3.profile.json").to_str().unwrap(),
            "--algorithm",
            "synth",
            "--seed",
            "11",
            "--out",
            gen_dir.to_str().unwrap(),
        ],
        &[],
    ));
    let edges = std::fs::read_to_string(gen_dir.join("synth-seed11.edges.txt")).unwrap();
    let pairs: Vec<&str> = edges.lines().filter(|l| !l.starts_with('#')).collect();
    // Three degree-2 nodes with budget for one triangle: the output must be K3.
    assert_eq!(pairs, ["0\t1", "0\t2", "1\t2"]);
    let outcome: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(gen_dir.join("synth-seed11.outcome.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(outcome["triangles_closed"], 1);
    assert_eq!(outcome["edges"], 3);
}

#[test]
fn identical_invocations_produce_byte_identical_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("k3.txt");
    write_triangle(&input);
    let prof_dir = tmp.path().join("prof");
    assert_ok(&synthnet(
        &[
            "profile",
            "--input",
            input.to_str().unwrap(),
            "--out",
            prof_dir.to_str().unwrap(),
        ],
        &[],
    ));
    let profile = prof_dir.join("k3.profile.json");
    let mut bytes = Vec::new();
    for run in ["a", "b"] {
        let dir = tmp.path().join(run);
        assert_ok(&synthnet(
            &[
                "generate",
                "--input",
                profile.to_str().unwrap(),
                "--algorithm",
                "sage",
                "--seed",
                "5",
                "--seeds",
                "3",
                "--out",
                dir.to_str().unwrap(),
            ],
            &[],
        ));
        let mut all = Vec::new();
        let mut names: Vec<_> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        for name in &names {
            all.extend_from_slice(name.to_string_lossy().as_bytes());
            all.extend_from_slice(&std::fs::read(dir.join(name)).unwrap());
        }
        bytes.push(all);
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn siege_without_bridge_count_fails_with_nonzero_exit() {
    let tmp = tempfile::tempdir().unwrap();
    // A hand-written profile with eb_count removed.
    let profile = tmp.path().join("noeb.profile.json");
    std::fs::write(
        &profile,
        r#"{
            "schema_version": 1,
            "name": "noeb",
            "nodes": 3,
            "edges": 3,
            "cg_real": 1.0,
            "avg_cc_real": 1.0,
            "eb_count": null,
            "triangle_total": 1,
            "degree_sequence": [2, 2, 2]
        }"#,
    )
    .unwrap();
    let out = synthnet(
        &[
            "generate",
            "--input",
            profile.to_str().unwrap(),
            "--algorithm",
            "siege",
            "--out",
            tmp.path().join("gen").to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error"), "stderr was: {stderr}");
}

#[test]
fn out_root_env_var_is_honored() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("k3.txt");
    write_triangle(&input);
    let root = tmp.path().join("artifacts");
    let out = synthnet(
        &["profile", "--input", input.to_str().unwrap()],
        &[("SYNTHNET_OUT", root.to_str().unwrap())],
    );
    assert_ok(&out);
    assert!(root.join("profile").join("k3.profile.json").exists());
}

#[test]
fn compare_of_identical_reports_has_zero_divergence() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("k3.txt");
    write_triangle(&input);
    let m_dir = tmp.path().join("measure");
    assert_ok(&synthnet(
        &[
            "measure",
            "--input",
            input.to_str().unwrap(),
            "--sources",
            "all",
            "--out",
            m_dir.to_str().unwrap(),
        ],
        &[],
    ));
    let report = m_dir.join("k3.report.json");
    let cmp_dir = tmp.path().join("cmp");
    assert_ok(&synthnet(
        &[
            "compare",
            "--real",
            report.to_str().unwrap(),
            "--synth",
            report.to_str().unwrap(),
            "--out",
            cmp_dir.to_str().unwrap(),
        ],
        &[],
    ));
    let summary = std::fs::read_to_string(cmp_dir.join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    let header = lines.next().unwrap();
    let divergence_from = header.split(',').position(|c| c == "degree_divergence").unwrap();
    for line in lines {
        for cell in line.split(',').skip(divergence_from) {
            assert_eq!(cell.parse::<f64>().unwrap(), 0.0, "line: {line}");
        }
    }
}
