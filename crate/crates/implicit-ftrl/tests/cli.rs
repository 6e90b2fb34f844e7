//! End-to-end checks of the `ftrl-bench` binary: flags, exit codes, CSV.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftrl-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_demo_data(path: &Path) {
    let mut text = String::new();
    for i in 0..20 {
        let label = if i % 2 == 0 { "+1" } else { "-1" };
        let a = 0.2 + 0.03 * i as f64;
        let b = if i % 2 == 0 { 0.5 } else { -0.5 };
        text.push_str(&format!("{label} 1:{a:.3} 2:{b:.2}\n"));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn happy_path_writes_sorted_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("demo.libsvm");
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    write_demo_data(&data);

    for out in [&out_a, &out_b] {
        let result = bench(&[
            "--data",
            data.to_str().unwrap(),
            "--loss",
            "hinge",
            "--strategies",
            "linear,aprox-hprime",
            "--betas",
            "0.5,2.0,1.0",
            "--reps",
            "3",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(result.status.code(), Some(0), "{result:?}");
    }

    let text = fs::read_to_string(&out_a).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "strategy,beta,mean_avg_loss,ci95,reps");
    assert_eq!(lines.len(), 1 + 2 * 3);
    // strategy lexical, beta ascending
    assert!(lines[1].starts_with("aprox-hprime,5.00000e-1"));
    assert!(lines[2].starts_with("aprox-hprime,1.00000e0"));
    assert!(lines[3].starts_with("aprox-hprime,2.00000e0"));
    assert!(lines[4].starts_with("linear,5.00000e-1"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",3")));

    assert_eq!(text, fs::read_to_string(&out_b).unwrap());
}

#[test]
fn reads_data_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stdin.csv");
    let mut child = Command::new(env!("CARGO_BIN_EXE_ftrl-bench"))
        .args([
            "--data", "-", "--loss", "hinge", "--strategies", "linear", "--betas", "1.0",
            "--reps", "2", "--out",
        ])
        .arg(&out)
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"+1 1:1\n-1 1:-0.5 2:0.5\n")
        .unwrap();
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 2);
}

#[test]
fn missing_data_file_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let result = bench(&[
        "--data",
        dir.path().join("nope.libsvm").to_str().unwrap(),
        "--loss",
        "hinge",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn malformed_data_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("bad.libsvm");
    fs::write(&data, "+1 3:abc\n").unwrap();
    let out = dir.path().join("x.csv");
    let result = bench(&[
        "--data",
        data.to_str().unwrap(),
        "--loss",
        "hinge",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("line 1"), "stderr: {stderr}");
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("demo.libsvm");
    write_demo_data(&data);
    let out = dir.path().join("x.csv");
    let base = [
        "--data",
        data.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];

    // unknown strategy
    let mut args = base.to_vec();
    args.extend(["--loss", "hinge", "--strategies", "magic"]);
    assert_eq!(bench(&args).status.code(), Some(2));

    // unknown loss
    let mut args = base.to_vec();
    args.extend(["--loss", "l0"]);
    assert_eq!(bench(&args).status.code(), Some(2));

    // squared loss without a gradient bound
    let mut args = base.to_vec();
    args.extend(["--loss", "squared"]);
    assert_eq!(bench(&args).status.code(), Some(2));

    // malformed beta list
    let mut args = base.to_vec();
    args.extend(["--loss", "hinge", "--betas", "1.0,zap"]);
    assert_eq!(bench(&args).status.code(), Some(2));

    // zero repetitions
    let mut args = base.to_vec();
    args.extend(["--loss", "hinge", "--reps", "0"]);
    assert_eq!(bench(&args).status.code(), Some(2));

    // clap usage errors also exit 2
    let result = bench(&["--loss", "hinge"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn squared_loss_runs_with_explicit_bound() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("reg.libsvm");
    let mut text = String::new();
    for i in 0..12 {
        text.push_str(&format!("{} 1:{:.2}\n", (i % 5) as f64 / 5.0, 0.1 * i as f64));
    }
    fs::write(&data, text).unwrap();
    let out = dir.path().join("r.csv");
    let result = bench(&[
        "--data",
        data.to_str().unwrap(),
        "--loss",
        "squared",
        "--strategies",
        "proximal-h,implicit-omd",
        "--betas",
        "1.0",
        "--reps",
        "2",
        "--G",
        "4.0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
}
