//! Command-line behaviour through `cli::run`: golden outputs, exit codes and
//! the one-line error format.

use std::path::{Path, PathBuf};

use peepkit::cli::run;
use peepkit::fingerprint::Fingerprint;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn peepkit(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("peepkit").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

/// Compares against `golden/cli/<name>`; `PEEPKIT_BLESS=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("golden/cli")
        .join(name);
    if std::env::var_os("PEEPKIT_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, want, "output differs from {}", path.display());
}

fn tmp_path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn stats_text_and_json() {
    let r = peepkit(&["stats", "MobileNet-V1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_golden("stats_mobilenet_v1.txt", &r.out);

    let r = peepkit(&["stats", "zoo/mobilenet_v1.json", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    // 3·32·9 + Σ(9M + M·N) over the separable blocks + 1024·1000 + 1000.
    assert_eq!(v["params"].as_u64(), Some(4_210_088));
}

#[test]
fn secure_single_and_sweep() {
    let r = peepkit(&["secure", "MobileNet-V1", "--G", "4"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("ΔMc 9.2%  ΔP 3.2%"), "{}", r.out);

    let r = peepkit(&["secure", "MobileNet-V1", "--sweep"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_golden("secure_sweep_mobilenet_v1.txt", &r.out);
}

#[test]
fn secure_writes_a_loadable_architecture() {
    let dir = TempDir::new().unwrap();
    let path = tmp_path(&dir, "secured.json");
    let r = peepkit(&[
        "secure",
        "MobileNet-V1",
        "--G",
        "8",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let secured = peepkit::zoo::load_architecture(&path).unwrap();
    assert_eq!(secured.name(), "MobileNet-V1-secure-G8");
    let again = peepkit(&["stats", path.to_str().unwrap()]);
    assert_eq!(again.code, 0, "{}", again.err);
}

#[test]
fn synth_then_classify_round_trips() {
    let dir = TempDir::new().unwrap();
    let fp_path = tmp_path(&dir, "fp.json");
    let report_path = tmp_path(&dir, "report.json");
    let r = peepkit(&[
        "synth",
        "ShuffleNet-V2",
        "--hw",
        "p4000",
        "--seed",
        "3",
        "-o",
        fp_path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let fp = Fingerprint::load(&fp_path).unwrap();
    assert_eq!(fp.series.batch_sizes, vec![1, 4, 8, 14, 28]);

    let r = peepkit(&[
        "classify",
        fp_path.to_str().unwrap(),
        "--hw",
        "p4000",
        "-o",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("candidates: ShuffleNet-V2"), "{}", r.out);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["group"], "ShuffleNet");
    assert_eq!(report["candidates"], serde_json::json!(["ShuffleNet-V2"]));
}

#[test]
fn synth_honours_batch_list() {
    let r = peepkit(&["synth", "MobileNet-V1", "--hw", "p100", "--batch", "1,4"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let fp = Fingerprint::from_json(&r.out).unwrap();
    assert_eq!(fp.series.batch_sizes, vec![1, 4]);
}

#[test]
fn ingest_builds_a_fingerprint() {
    let dir = TempDir::new().unwrap();
    let profile = tmp_path(&dir, "profile.csv");
    std::fs::write(
        &profile,
        "Type,Time(%),Time,Calls,Name\n,%,ms,,\nGPU activities,40.0,1.0,2,gemv2T_kernel\nGPU activities,20.0,1.0,2,gemv2N_kernel\nGPU activities,1.5,1.0,2,gemmk1_kernel\n",
    )
    .unwrap();
    let series = tmp_path(&dir, "series.csv");
    std::fs::write(
        &series,
        "batch_size,FPt_ms,BPt_ms\n1,10,15\n4,40,61\n8,80,121\n",
    )
    .unwrap();
    let r = peepkit(&[
        "ingest",
        profile.to_str().unwrap(),
        "--series",
        series.to_str().unwrap(),
        "--hw",
        "p100",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let fp = Fingerprint::from_json(&r.out).unwrap();
    let mix = fp.kernel_mix.unwrap();
    assert_eq!(
        (mix.gemv2t_pct, mix.gemv2n_pct, mix.gemmk1_pct),
        (40.0, 20.0, 1.5)
    );
    assert_eq!(fp.series.batch_sizes, vec![1, 4, 8]);
    assert_eq!(fp.hardware.as_deref(), Some("p100"));
}

#[test]
fn confuse_reports_defended() {
    let r = peepkit(&["confuse", "MobileNet-V1", "--G", "4", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["defended"], serde_json::Value::Bool(true));
}

fn assert_error_line(r: &Run, kind: &str, code: i32) {
    assert_eq!(r.code, code, "stdout: {} stderr: {}", r.out, r.err);
    assert_eq!(r.err.lines().count(), 1, "{}", r.err);
    let prefix = format!("peepkit: error kind={kind} exit={code}: ");
    assert!(r.err.starts_with(&prefix), "{}", r.err);
}

#[test]
fn exit_codes_and_error_lines() {
    assert_error_line(&peepkit(&["frobnicate"]), "usage", 1);
    assert_error_line(&peepkit(&["secure", "MobileNet-V1"]), "usage", 1);
    assert_error_line(&peepkit(&["stats", "no-such-model"]), "validation", 2);
    assert_error_line(
        &peepkit(&["secure", "AlexNet", "--G", "4"]),
        "validation",
        2,
    );
    assert_error_line(
        &peepkit(&["secure", "MobileNet-V1", "--G", "0"]),
        "validation",
        2,
    );
    assert_error_line(
        &peepkit(&["synth", "MobileNet-V1", "--hw", "v100"]),
        "validation",
        2,
    );

    let dir = TempDir::new().unwrap();
    let empty = tmp_path(&dir, "empty.json");
    std::fs::write(&empty, "{}").unwrap();
    assert_error_line(
        &peepkit(&["classify", empty.to_str().unwrap()]),
        "insufficient-evidence",
        3,
    );

    let series_only = tmp_path(&dir, "series_only.json");
    std::fs::write(
        &series_only,
        r#"{"series":{"batch_sizes":[1,4,8],"FPt_ms":[1,4,8],"BPt_ms":[1,4,8]}}"#,
    )
    .unwrap();
    assert_error_line(
        &peepkit(&["classify", series_only.to_str().unwrap()]),
        "insufficient-evidence",
        3,
    );

    let bad = tmp_path(&dir, "bad.json");
    std::fs::write(
        &bad,
        r#"{"kernel_mix":{"gemv2t_pct":80,"gemv2n_pct":30,"gemmk1_pct":0}}"#,
    )
    .unwrap();
    assert_error_line(
        &peepkit(&["classify", bad.to_str().unwrap()]),
        "validation",
        2,
    );
}

#[test]
fn help_goes_to_stdout() {
    let r = peepkit(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("classify"));
    assert!(r.err.is_empty());
}
