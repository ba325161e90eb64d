use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fsr::pnm::{read_pbm, read_pgm, write_pbm};
use fsr::GrayImage;
use tempfile::TempDir;

fn fsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsr")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = fsr(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A 48x48 zoneplate subsampled at 30% in `dir`.
fn sampled(dir: &TempDir) -> (PathBuf, PathBuf, PathBuf) {
    let (z, sub, mask) = (path(dir, "z.pgm"), path(dir, "sub.pgm"), path(dir, "m.pbm"));
    ok(&["zoneplate", "--size", "48", "--out", s(&z)]);
    ok(&["sample", "--in", s(&z), "--density", "0.3", "--seed", "5", "--out-img", s(&sub), "--out-mask", s(&mask)]);
    (z, sub, mask)
}

#[test]
fn zoneplate_and_sample() {
    let dir = TempDir::new().unwrap();
    let (z, sub, mask) = sampled(&dir);
    let image: GrayImage = read_pgm(&z).unwrap();
    assert_eq!((image.width(), image.height()), (48, 48));
    assert_eq!(image.get(24, 24), 255.0);
    let m = read_pbm(&mask).unwrap();
    assert_eq!(m.count(), (0.3f64 * 48.0 * 48.0).round() as usize);
    let sub: GrayImage = read_pgm(&sub).unwrap();
    for y in 0..48 {
        for x in 0..48 {
            assert_eq!(sub.get(x, y), if m.get(x, y) { image.get(x, y) } else { 0.0 });
        }
    }
}

#[test]
fn reconstruct_prints_defaults_and_keeps_samples() {
    let dir = TempDir::new().unwrap();
    let (_, sub, mask) = sampled(&dir);
    let (a, b) = (path(&dir, "a.pgm"), path(&dir, "b.pgm"));
    let printed = ok(&["reconstruct", "--in", s(&sub), "--mask", s(&mask), "--out", s(&a)]);
    for line in [
        "block size        4x4",
        "border width      14",
        "transform size    32x32",
        "iterations        100",
        "rho (decay)       0.7",
        "gamma             0.5",
        "delta (reuse)     0.5",
        "freq. weighting   on",
        "order             density",
    ] {
        assert!(printed.contains(line), "missing '{line}' in:\n{printed}");
    }
    ok(&["reconstruct", "--in", s(&sub), "--mask", s(&mask), "--out", s(&b)]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (rec, known): (GrayImage, GrayImage) = (read_pgm(&a).unwrap(), read_pgm(&sub).unwrap());
    let m = read_pbm(&mask).unwrap();
    for (i, &bit) in m.bits().iter().enumerate() {
        if bit {
            assert_eq!(rec.samples()[i], known.samples()[i]);
        }
    }
}

#[test]
fn flags_override_config_file() {
    let dir = TempDir::new().unwrap();
    let (_, sub, mask) = sampled(&dir);
    let cfg = path(&dir, "model.cfg");
    std::fs::write(&cfg, "# ablation\niters = 12\norder = line-scan\nfreq-weight = off\n").unwrap();
    let out = path(&dir, "r.pgm");
    let printed = ok(&["reconstruct", "--in", s(&sub), "--mask", s(&mask), "--out", s(&out), "--config", s(&cfg), "--iters", "30"]);
    assert!(printed.contains("iterations        30"));
    assert!(printed.contains("order             line-scan"));
    assert!(printed.contains("freq. weighting   off"));
}

#[test]
fn invalid_gamma_cites_range() {
    let dir = TempDir::new().unwrap();
    let (_, sub, mask) = sampled(&dir);
    let out = fsr(&["reconstruct", "--in", s(&sub), "--mask", s(&mask), "--out", s(&path(&dir, "r.pgm")), "--gamma", "2.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 2)"));
}

#[test]
fn oversized_area_is_rejected() {
    let dir = TempDir::new().unwrap();
    let (_, sub, mask) = sampled(&dir);
    let out = fsr(&["reconstruct", "--in", s(&sub), "--mask", s(&mask), "--out", s(&path(&dir, "r.pgm")), "--border", "15"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds transform size"));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(fsr(&["zoneplate", "--size", "8", "--bogus"]).status.code(), Some(1));
    assert_eq!(fsr(&["frobnicate"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let missing = fsr(&["metrics", "--ref", s(&path(&dir, "none.pgm")), "--test", s(&path(&dir, "none.pgm"))]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("none.pgm"));
    let junk = path(&dir, "junk.pgm");
    std::fs::write(&junk, b"P5 2 2 65535\n\0\0\0\0\0\0\0\0").unwrap();
    let bad = fsr(&["metrics", "--ref", s(&junk), "--test", s(&junk)]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unsupported maxval"));
}

#[test]
fn baselines_and_metrics() {
    let dir = TempDir::new().unwrap();
    let (z, sub, mask) = sampled(&dir);
    for method in ["nearest", "linear", "bandlimited"] {
        let out = path(&dir, &format!("{method}.pgm"));
        ok(&["baseline", "--method", method, "--in", s(&sub), "--mask", s(&mask), "--out", s(&out), "--iters", "20"]);
        let csv = ok(&["metrics", "--ref", s(&z), "--test", s(&out), "--out", "csv"]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "psnr_db,ssim");
        let fields: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
        assert!(fields[0] > 0.0 && fields[1] <= 1.0, "{method}: {csv}");
    }
    assert_eq!(ok(&["metrics", "--ref", s(&z), "--test", s(&z)]), "psnr_db,ssim\ninf,1.000000\n");
}

#[test]
fn spectrum_of_regular_mask() {
    let dir = TempDir::new().unwrap();
    let (mask, out) = (path(&dir, "m.pbm"), path(&dir, "q.pgm"));
    write_pbm(&mask, &fsr::regular_mask(32, 32, 2).unwrap()).unwrap();
    ok(&["spectrum", "--mask", s(&mask), "--out", s(&out)]);
    let q: GrayImage = read_pgm(&out).unwrap();
    let bright: Vec<(usize, usize)> =
        (0..32).flat_map(|y| (0..32).map(move |x| (x, y))).filter(|&(x, y)| q.get(x, y) > 0.0).collect();
    // Peaks at DC and the three half-rate aliases, shifted to the centre.
    assert_eq!(bright, vec![(0, 0), (16, 0), (0, 16), (16, 16)]);
    assert!(bright.iter().all(|&(x, y)| q.get(x, y) == 255.0));
}

#[test]
fn sweep_report_is_sorted_and_stable() {
    let dir = TempDir::new().unwrap();
    let z = path(&dir, "z.pgm");
    ok(&["zoneplate", "--size", "40", "--out", s(&z)]);
    let report = |name: &str| {
        let out = path(&dir, name);
        ok(&[
            "sweep", "--in", s(&z), "--densities", "0.5,0.2", "--seed", "3", "--methods", "linear,fsr,nearest",
            "--iters", "20", "--out", s(&out),
        ]);
        std::fs::read_to_string(out).unwrap()
    };
    let (a, b) = (report("a.csv"), report("b.csv"));
    assert!(!a.contains('\r'));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "density,method,psnr_db,ssim,seconds");
    let keys: Vec<String> = lines[1..].iter().map(|l| l.split(',').take(2).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(keys, ["0.2,fsr", "0.2,linear", "0.2,nearest", "0.5,fsr", "0.5,linear", "0.5,nearest"]);
    // Everything but the wall-clock column is reproducible.
    let strip = |t: &str| t.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
}
