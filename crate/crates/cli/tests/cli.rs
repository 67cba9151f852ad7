use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use strtherm::corpus::{self, Kind};
use strtherm::{analyze_files, AnalyzeOptions};
use strtherm_core::{analyze_self, BitOrder, BitString};

fn strtherm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strtherm"))
        .args(args)
        .output()
        .expect("spawn strtherm")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn crafted_four_bit_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("0101.bin");
    // 0x50 = 0101_0000; keep the first four bits.
    fs::write(&path, [0x50]).unwrap();
    let r = json(&strtherm(&["analyze", s(&path), "--bits", "4", "--include-zero-shift"]));
    assert_eq!(r["m"], 4);
    assert_eq!(r["n"], 4);
    assert_eq!(r["u_bar"], 0.5);
    assert_eq!(r["t"], 0.25);
    assert_eq!(r["zero_shift"], "included");
}

#[test]
fn all_zero_input_is_degenerate_with_success() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.bin");
    corpus::write(Kind::AllZero, 64, 0, &path).unwrap();
    let curves = dir.path().join("curves.csv");
    let out = strtherm(&["analyze", s(&path), "--emit-curves", s(&curves)]);
    let r = json(&out);
    assert_eq!(r["degenerate"], true);
    assert_eq!(r["t"], 0.0);
    assert!(r["z"].is_null() && r["fit_quality"].is_null());
    assert_eq!(fs::read_to_string(&curves).unwrap(), "C,N_normal,N_binomial\n");
}

#[test]
fn io_and_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.bin");
    assert_eq!(strtherm(&["analyze", s(&missing)]).status.code(), Some(2));

    let empty = dir.path().join("empty.bin");
    fs::write(&empty, []).unwrap();
    let out = strtherm(&["analyze", s(&empty)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));

    let small = dir.path().join("small.bin");
    fs::write(&small, [1, 2]).unwrap();
    assert_eq!(strtherm(&["analyze", s(&small), "--ensemble", "16"]).status.code(), Some(2));
    assert_eq!(strtherm(&["analyze", s(&small), "--bits", "17"]).status.code(), Some(2));
    assert_eq!(strtherm(&["analyze", s(&small), "--format", "xml"]).status.code(), Some(2));

    let out = dir.path().join("no-such-dir").join("x.bin");
    let gen = strtherm(&["gen", "--kind", "random", "--bytes", "8", "--out", s(&out)]);
    assert_eq!(gen.status.code(), Some(2));
    let gen = strtherm(&["gen", "--kind", "random", "--bytes", "0", "--out", s(&out)]);
    assert_eq!(gen.status.code(), Some(2));
}

#[test]
fn report_equals_library_composition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.bin");
    let data = corpus::generate(Kind::Random, 2048, 77).unwrap();
    fs::write(&path, &data).unwrap();

    let r = json(&strtherm(&["analyze", s(&path), "--bit-order", "lsb"]));
    let bits = BitString::from_bytes(&data, BitOrder::LsbFirst).unwrap();
    let lib = analyze_self(&bits, None).unwrap().report;
    assert_eq!(r["bit_order"], "lsb");
    assert_eq!(r["report_version"], 1);
    let close = |field: &str, want: Option<f64>| {
        let got = r[field].as_f64();
        assert_eq!(got.is_some(), want.is_some(), "{field}");
        if let (Some(g), Some(w)) = (got, want) {
            assert!((g - w).abs() <= 1e-14 * w.abs(), "{field}: {g} vs {w}");
        }
    };
    close("u_bar", Some(lib.u_bar));
    close("s_thermo", Some(lib.s_thermo));
    close("s_micro_per_bit", Some(lib.s_micro_per_bit));
    close("z", lib.z);
    close("p", lib.p);
    close("fit_quality", lib.fit_quality);
    for field in [
        "t", "u_bar", "u_bar_eq", "s_thermo", "s_thermo_eq", "s_micro_per_bit",
        "s_micro_eq_per_bit", "z", "s_nats", "f", "p", "v", "degenerate", "fit_quality",
    ] {
        assert!(r.get(field).is_some(), "missing {field}");
    }
}

#[test]
fn random_file_near_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.bin");
    assert!(strtherm(&["gen", "--kind", "random", "--bytes", "16384", "--seed", "99", "--out", s(&path)])
        .status
        .success());
    let r = json(&strtherm(&["analyze", s(&path)]));
    let u = r["u_bar"].as_f64().unwrap();
    assert!((u - 0.125).abs() / 0.125 < 0.02, "{u}");
    assert_eq!(r["mean_identity"], true);
    assert_eq!(r["c_bar_empirical"], false);
}

#[test]
fn partial_ensemble_marks_mean_empirical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.bin");
    corpus::write(Kind::Random, 256, 1, &path).unwrap();
    let r = json(&strtherm(&["analyze", s(&path), "--ensemble", "300"]));
    assert_eq!(r["n"], 300);
    assert_eq!(r["c_bar_empirical"], true);
    assert!(r["mean_identity"].is_null());
}

#[test]
fn periodic_corpus_is_far_from_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let random = dir.path().join("random.bin");
    let periodic = dir.path().join("periodic.bin");
    corpus::write(Kind::Random, 16384, 0, &random).unwrap();
    corpus::write(Kind::Periodic, 16384, 0, &periodic).unwrap();
    let opts = AnalyzeOptions::default();
    let fq = |p: &Path| analyze_files(p, None, &opts).unwrap().report.thermo.fit_quality.unwrap();
    let (base, structured) = (fq(&random), fq(&periodic));
    assert!(base < 0.1, "{base}");
    assert!(structured >= 10.0 * base, "{structured} vs {base}");
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    for p in [&a, &b] {
        let out = strtherm(&["gen", "--kind", "random", "--bytes", "16384", "--seed", "5", "--out", s(p)]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let z = dir.path().join("z.bin");
    assert!(strtherm(&["gen", "--kind", "all-zero", "--bytes", "16", "--out", s(&z)]).status.success());
    assert_eq!(fs::read(&z).unwrap(), vec![0u8; 16]);
}

#[test]
fn histogram_and_curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.bin");
    corpus::write(Kind::Random, 1024, 3, &path).unwrap();
    let hist_csv = dir.path().join("h.csv");
    let hist_json = dir.path().join("h.json");
    let curves = dir.path().join("c.csv");
    let r = json(&strtherm(&[
        "analyze", s(&path), "--emit-histogram", s(&hist_csv), "--emit-curves", s(&curves),
    ]));
    json(&strtherm(&["analyze", s(&path), "--emit-histogram", s(&hist_json)]));

    let text = fs::read_to_string(&hist_csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("C,N_count"));
    let total: u64 = lines
        .map(|l| {
            let (c, n) = l.split_once(',').unwrap();
            assert_eq!(c.parse::<u64>().unwrap() % 2, 0);
            n.parse::<u64>().unwrap()
        })
        .sum();
    assert_eq!(total, r["n"].as_u64().unwrap());

    let entries: Vec<Value> = serde_json::from_str(&fs::read_to_string(&hist_json).unwrap()).unwrap();
    let total_json: u64 = entries.iter().map(|e| e["n"].as_u64().unwrap()).sum();
    assert_eq!(total_json, total);
    assert!(entries.iter().all(|e| e["c"].is_u64()));

    let text = fs::read_to_string(&curves).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("C,N_normal,N_binomial"));
    let rows: Vec<(f64, f64, f64)> = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect();
    let c_bar = r["c_bar"].as_f64().unwrap();
    let sigma = r["sigma2"].as_f64().unwrap().sqrt();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|&(c, _, _)| c % 2.0 == 0.0 && (c - c_bar).abs() <= 5.0 * sigma));
    let peak = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    assert!(rows.iter().all(|&(_, n, b)| (n - b).abs() / peak < 0.05));
}

#[test]
fn pair_mode() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    corpus::write(Kind::Random, 48, 1, &a).unwrap();
    corpus::write(Kind::Random, 64, 2, &b).unwrap();
    let r = json(&strtherm(&["analyze", s(&a), "--pair", s(&b)]));
    assert_eq!(r["mode"], "pair");
    assert_eq!(r["m"], 192 * 8);
    assert_eq!(r["n"], 192 * 8);
    assert!(r["zero_shift"].is_null());
    assert_eq!(r["pair_input"], s(&b));
}

#[test]
fn human_and_csv_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.bin");
    corpus::write(Kind::Random, 512, 3, &path).unwrap();
    let out = strtherm(&["analyze", s(&path), "--format", "human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for unit in ["bits/particle", "bits/bit", "nats"] {
        assert!(text.contains(unit), "missing {unit}");
    }
    let out = strtherm(&["analyze", s(&path), "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("input,mode,m,n,"));
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_strtherm"))
        .args(["analyze", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    {
        use std::io::Write;
        child.stdin.take().unwrap().write_all(&[0x12, 0x34, 0x56, 0x78]).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    let r = json(&out);
    assert_eq!(r["m"], 32);
}

#[test]
fn batch_summary() {
    let dir = tempfile::tempdir().unwrap();
    corpus::write(Kind::Random, 4096, 1, &dir.path().join("random.bin")).unwrap();
    corpus::write(Kind::Periodic, 4096, 0, &dir.path().join("periodic.bin")).unwrap();
    let manifest = dir.path().join("manifest.txt");
    fs::write(&manifest, "# corpus\nrandom.bin\nmissing.bin\nperiodic.bin\n").unwrap();

    let out = strtherm(&["batch", s(&manifest)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("input,u_bar,u_bar_eq,s_thermo,s_thermo_eq,s_micro_per_bit,s_micro_eq_per_bit,fit_quality"));
    assert!(lines[1].contains("random.bin"));
    assert!(lines[2].contains("missing.bin") && lines[2].contains("reading"));
    assert!(lines[3].contains("periodic.bin"));

    let out = strtherm(&["batch", s(&manifest), "--format", "human"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("bits/bit"));

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let out = strtherm(&["batch", s(&empty)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);

    assert_eq!(strtherm(&["batch", s(&dir.path().join("nope.txt"))]).status.code(), Some(2));
}

#[test]
fn compressed_copy_of_random_stays_in_equilibrium() {
    use flate2::{write::GzEncoder, Compression};
    use std::io::Write;

    let dir = tempfile::tempdir().unwrap();
    let data = corpus::generate(Kind::Random, 16384, 8).unwrap();
    let mut gz = GzEncoder::new(Vec::new(), Compression::best());
    gz.write_all(&data).unwrap();
    fs::write(dir.path().join("r.bin"), &data).unwrap();
    fs::write(dir.path().join("r.bin.gz"), gz.finish().unwrap()).unwrap();
    let manifest = dir.path().join("m.txt");
    fs::write(&manifest, "r.bin\nr.bin.gz\n").unwrap();

    let out = strtherm(&["batch", s(&manifest), "--format", "json"]);
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    for row in &rows {
        let ratio = row["u_bar"].as_f64().unwrap() / row["u_bar_eq"].as_f64().unwrap();
        assert!((ratio - 1.0).abs() < 0.05, "{row}");
    }
}
