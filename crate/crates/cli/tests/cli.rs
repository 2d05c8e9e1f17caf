use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn gluing(args: &[&str], project: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gluing"))
        .args(args)
        .arg(project)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str], name: &str) -> (i32, String, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let o = gluing(args, &fixture(name), dir.path());
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), dir)
}

#[test]
fn glue_hexagon_has_six_chambers() {
    let (code, out, dir) = run(&["glue"], "hexagon.json");
    assert_eq!(code, 0);
    assert!(out.contains("chambers: 6"), "{out}");
    assert!(dir.path().join("glue.json").exists());
}

#[test]
fn check_npc_verdicts() {
    let (code, out, dir) = run(&["check-npc"], "hexagon.json");
    assert_eq!(code, 0);
    assert!(out.contains("DEVELOPABLE"));
    let json = fs::read_to_string(dir.path().join("check-npc.json")).unwrap();
    assert!(json.contains("\"DEVELOPABLE\""));

    let (code, out, _) = run(&["check-npc"], "planted_link.json");
    assert_eq!(code, 1);
    assert!(out.contains("UNKNOWN") && out.contains("[a, b, c]"), "{out}");
}

#[test]
fn abelianize_d3_presentation() {
    let (code, out, dir) = run(&["abelianize"], "d3_presentation.json");
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(dir.path().join("abelianize.txt")).unwrap(), "Z/2\n");
    assert!(out.contains("Z/2"));
}

#[test]
fn cocycle_violation_exits_one() {
    let (code, out, _) = run(&["cog-validate"], "cocycle_violation.json");
    assert_eq!(code, 1);
    assert!(out.contains("pair (e0, e1)"), "{out}");
}

#[test]
fn twists_of_the_double() {
    let (code, out, dir) = run(&["twists"], "double.json");
    assert_eq!(code, 0);
    assert!(out.starts_with("1 → T(M) → Out(π₁(M)) → A(M) → 1"));
    assert!(out.contains("rank 2"));
    assert!(dir.path().join("twists.json").exists() && dir.path().join("twists.txt").exists());
}

#[test]
fn develop_fan() {
    let (code, out, _) = run(&["develop"], "fan.json");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("injective: true"));
}

#[test]
fn every_command_is_deterministic() {
    let cases = [
        ("nerve", "hexagon.json"),
        ("ball", "hexagon.json"),
        ("glue", "hexagon.json"),
        ("sigma", "hexagon.json"),
        ("chambers", "hexagon.json"),
        ("euler", "hexagon.json"),
        ("quotient", "hexagon.json"),
        ("cog-validate", "hexagon.json"),
        ("pi1", "double.json"),
        ("abelianize", "double.json"),
        ("check-npc", "hexagon.json"),
        ("twists", "hexagon_twists.json"),
        ("develop", "fan.json"),
    ];
    for (cmd, name) in cases {
        let (c1, o1, d1) = run(&[cmd], name);
        let (c2, o2, d2) = run(&[cmd], name);
        assert_eq!(c1, 0, "{cmd} on {name}: {o1}");
        assert_eq!((c1, &o1), (c2, &o2));
        let mut files: Vec<_> = fs::read_dir(d1.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        files.sort();
        assert!(!files.is_empty(), "{cmd} wrote nothing");
        for f in files {
            assert!(f.to_string_lossy().starts_with(cmd), "{cmd} wrote {f:?}");
            let a = fs::read(d1.path().join(&f)).unwrap();
            let b = fs::read(d2.path().join(&f)).unwrap();
            assert_eq!(a, b, "{cmd}: {f:?} differs between runs");
        }
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(gluing(&["glue"], &missing, dir.path()).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"version": 1, "coxeter": {"generators": ["s", "t"], "matrix": [[1, 1], [1, 1]]}}"#).unwrap();
    let o = gluing(&["nerve"], &bad, dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/coxeter/matrix/0/1"));

    // A section the command needs is absent.
    let (code, _, _) = run(&["develop"], "hexagon.json");
    assert_eq!(code, 2);
    let (code, _, _) = run(&["quotient"], "double.json");
    assert_eq!(code, 2);
}

#[test]
fn overrides_apply() {
    let (code, out, _) = run(&["ball", "--radius", "1"], "affine_a2.json");
    assert_eq!(code, 0);
    assert!(out.contains("ball: 4 elements"), "{out}");
}
