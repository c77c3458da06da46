use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hsign_cli::Fixture;
use hsign_core::forms::build_eigen_system;
use hsign_core::oracle::delta_series;
use hsign_core::Rational;

fn hsign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsign")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hsign-e2e-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_oracle(form: &str, primes: &str, name: &str) -> PathBuf {
    let path = scratch(name);
    let out = hsign(&["oracle", "--form", form, "--primes", primes, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn zeta_column() {
    let out = hsign(&["zeta", "--disc", "5", "--max-norm", "10"]);
    assert!(out.status.success());
    let a: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(a, ["1", "0", "0", "1", "1", "0", "0", "0", "1", "0"]);
}

#[test]
fn oracle_round_trip_reconstructs_series() {
    let path = write_oracle("delta", "100", "delta100.tsv");
    let validate = hsign(&["validate", path.to_str().unwrap()]);
    assert!(validate.status.success());
    assert!(stdout(&validate).lines().skip(1).all(|l| l.ends_with(",true")));

    let fixture = Fixture::load(&path, false).unwrap();
    let sys = build_eigen_system(&fixture.table, 100).unwrap();
    let series = delta_series(100);
    for m in fixture.table.field().ideals_up_to(100) {
        let expected = Rational::from_integer(series.coeff(m.norm() as usize).unwrap().clone());
        assert_eq!(sys.coeff(&m).unwrap(), expected);
    }
}

#[test]
fn reports_are_byte_identical() {
    let f = write_oracle("delta", "200", "det_f.tsv");
    let g = write_oracle("weight16", "200", "det_g.tsv");
    let args = [
        "rankin",
        f.to_str().unwrap(),
        g.to_str().unwrap(),
        "--s",
        "20",
        "--terms",
        "200",
        "--completed",
    ];
    let a = hsign(&args);
    let b = hsign(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("paths_agree,true"), "{text}");

    let s1 = hsign(&["signs", f.to_str().unwrap(), g.to_str().unwrap(), "--max-norm", "200", "--format", "tsv"]);
    let s2 = hsign(&["signs", f.to_str().unwrap(), g.to_str().unwrap(), "--max-norm", "200", "--format", "tsv"]);
    assert_eq!(s1.stdout, s2.stdout);
    assert!(stdout(&s1).starts_with("norm\tideal\tc_f\tc_g\tproduct\tsign\n"));
}

#[test]
fn hypothesis_violations_exit_nonzero() {
    let f = write_oracle("delta", "30", "hyp_f.tsv");
    let same = hsign(&["signs", f.to_str().unwrap(), f.to_str().unwrap(), "--max-norm", "10"]);
    assert_eq!(same.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&same.stderr).contains("different weights"));

    let pole = hsign(&["rankin", f.to_str().unwrap(), f.to_str().unwrap(), "--s", "20", "--terms", "5", "--completed"]);
    assert_eq!(pole.status.code(), Some(3));
}

fn perturb(path: &Path, prime: &str, value: &str) -> PathBuf {
    let text = std::fs::read_to_string(path).unwrap();
    let changed: Vec<String> = text
        .lines()
        .map(|l| {
            let cells: Vec<&str> = l.split('\t').collect();
            if cells.len() == 4 && cells[0] == prime {
                format!("{}\t{}\t{}\t{}", cells[0], cells[1], cells[2], value)
            } else {
                l.to_string()
            }
        })
        .collect();
    let out = path.with_extension("perturbed.tsv");
    std::fs::write(&out, changed.join("\n") + "\n").unwrap();
    out
}

#[test]
fn validation_names_the_bad_prime() {
    let f = write_oracle("delta", "30", "val_f.tsv");
    let bad = perturb(&f, "7", "1000000");
    let out = hsign(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 7"));
    // other commands refuse the fixture unless told otherwise
    let kill = hsign(&["kill", bad.to_str().unwrap(), "--q", "2", "--max-norm", "10"]);
    assert_eq!(kill.status.code(), Some(3));
    let kill = hsign(&["kill", bad.to_str().unwrap(), "--q", "2", "--max-norm", "10", "--allow-unchecked"]);
    assert!(kill.status.success());
}

#[test]
fn density_on_synthetic_quadratic_fixtures() {
    let f = scratch("dens_f.tsv");
    let g = scratch("dens_g.tsv");
    for (path, weights, seed) in [(&f, "2,2", "3"), (&g, "4,4", "4")] {
        let out = hsign(&[
            "oracle", "--form", "synthetic", "--disc", "5", "--weights", weights, "--seed", seed, "--primes", "50",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let out = hsign(&["density", f.to_str().unwrap(), g.to_str().unwrap(), "--prime", "11.1", "--x", "1000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("prime,beta_f,beta_g"));
    let ramified = hsign(&["density", f.to_str().unwrap(), g.to_str().unwrap(), "--prime", "5"]);
    assert_eq!(ramified.status.code(), Some(3));
}
