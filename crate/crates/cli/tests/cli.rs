use std::path::{Path, PathBuf};
use std::process::Command;

use fqx_cli::config::{validate_config, Kind, Overrides, Params, Severity};
use fqx_cli::execute;
use fqx_core::analytics::Domain;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(configs().join(name)).unwrap()
}

fn fqx(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fqx"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_to(text: &str, path: &Path, extra: &[(&str, &str)]) -> String {
    let mut o = Overrides::default();
    o.push(&format!("output.path=\"{}\"", path.display()))
        .unwrap();
    for (k, v) in extra {
        o.push(&format!("{k}={v}")).unwrap();
    }
    let c = validate_config(text, &o).unwrap();
    execute(&c).unwrap();
    std::fs::read_to_string(path).unwrap()
}

/// Data rows of a CSV artifact, without comments and header.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

// F_2[x] as bitmasks

fn f2_mod(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn f2_div(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    let mut q = 0;
    while a != 0 && 63 - a.leading_zeros() >= db {
        let s = 63 - a.leading_zeros() - db;
        q |= 1 << s;
        a ^= b << s;
    }
    q
}

fn f2_moebius(mut g: u64) -> i32 {
    if g == 0 {
        return 0;
    }
    let mut sign = 1;
    let mut d = 2u64;
    while g > 1 && (63 - d.leading_zeros()) * 2 <= 63 - g.leading_zeros() {
        if f2_mod(g, d) == 0 {
            g = f2_div(g, d);
            if f2_mod(g, d) == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if g > 1 {
        sign = -sign;
    }
    sign
}

fn necklace(q: u64, d: u64) -> u64 {
    fn mu(n: u64) -> i64 {
        let (mut n, mut r, mut p) = (n, 1, 2);
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if n > 1 {
            -r
        } else {
            r
        }
    }
    let s: i64 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mu(d / e) * (q as i64).pow(e as u32))
        .sum();
    (s / d as i64) as u64
}

#[test]
fn shipped_configs_validate() {
    let mut n = 0;
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if let Err(d) = validate_config(&text, &Overrides::default()) {
            panic!("{}: {:?}", path.display(), d);
        }
        n += 1;
    }
    assert!(n >= Kind::ALL.len());
}

#[test]
fn minimal_config_gets_defaults() {
    let text = "kind = \"decay-table\"\n[field]\np = 3\n[n]\nmin = 1\nmax = 4\n\
                [function]\nname = \"moebius\"\n[phase]\nbetas = [[1, 2, 0, 1]]\n";
    let c = validate_config(text, &Overrides::default()).unwrap();
    assert_eq!(c.field.r, 1);
    assert_eq!(c.budget.evaluations, 100_000_000);
    assert_eq!(c.output.path, "-");
    let phase = c.phase.as_ref().unwrap();
    assert_eq!((phase.degree, phase.coeff), (1, 1));
    assert_eq!(
        c.params,
        Params::Decay(fqx_cli::config::DecayParams {
            domain: Domain::All
        })
    );
    // the normalized form validates to the same config
    let again = validate_config(&c.to_toml(), &Overrides::default()).unwrap();
    assert_eq!(again, c);
}

#[test]
fn unknown_key_is_one_error() {
    let text = read("tk-check.toml").replacen("[field]", "[fieldd]", 1);
    let d = validate_config(&text, &Overrides::default()).unwrap_err();
    assert_eq!(d.len(), 1, "{d:?}");
    assert!(d[0].message.contains("`fieldd`"));
    assert_eq!(d[0].path, "fieldd");

    let text = format!("fieldd = 3\n{}", read("tk-check.toml"));
    let d = validate_config(&text, &Overrides::default()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].line, Some(1));
}

#[test]
fn all_violations_reported_together() {
    let text = "kind = \"decay-table\"\nbogus = 1\n[field]\np = 4\n[n]\nmin = 5\nmax = 2\n\
                [function]\nname = \"random\"\ncolor = 1\n[phase]\ndegree = 1\n";
    let d = validate_config(text, &Overrides::default()).unwrap_err();
    let paths: Vec<&str> = d.iter().map(|d| d.path.as_str()).collect();
    for p in ["bogus", "field", "n", "function.color"] {
        assert!(paths.contains(&p), "{p} missing from {paths:?}");
    }
    assert!(d.iter().all(|d| d.severity == Severity::Invalid));
    let line = |p: &str| d.iter().find(|d| d.path == p).unwrap().line;
    assert_eq!(line("bogus"), Some(2));
    assert_eq!(line("function.color"), Some(10));
}

#[test]
fn random_function_needs_seed() {
    let text = read("decay-random.toml").replace("seed = 1\n", "");
    let d = validate_config(&text, &Overrides::default()).unwrap_err();
    assert!(d
        .iter()
        .any(|d| d.path == "function.name" && d.message.contains("seed")));
    let mut o = Overrides::default();
    o.push("seed=9").unwrap();
    assert_eq!(validate_config(&text, &o).unwrap().seed, Some(9));
}

#[test]
fn over_budget_range_cites_cost() {
    let text = read("decay-random.toml");
    let mut o = Overrides::default();
    o.push("n.max=20").unwrap();
    o.push("budget.evaluations=5000").unwrap();
    let d = validate_config(&text, &o).unwrap_err();
    assert_eq!(d.len(), 1, "{d:?}");
    assert_eq!(d[0].severity, Severity::Budget);
    // 2^13 = 8192 is the first cost above 5000
    assert!(d[0].message.contains("n = 13"), "{}", d[0].message);
    assert!(d[0].message.contains("8192"), "{}", d[0].message);
    assert_eq!(d[0].line, None);
}

#[test]
fn decay_table_matches_brute_force() {
    let dir = tempfile::tempdir().unwrap();
    let text = read("decay-table.toml");
    let csv = run_to(&text, &dir.path().join("out.csv"), &[]);
    assert!(csv.starts_with("# fqx decay-table v1\n"));
    let beta = [1u64, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0];
    let rows = rows(&csv);
    assert_eq!(rows.len(), 9);
    for (row, n) in rows.iter().zip(4..=12u32) {
        assert_eq!(row[0], n.to_string());
        // (beta g)_{-1} = sum_i beta_{-(i+1)} g_i
        let sum: i64 = (0..1u64 << n)
            .map(|g| {
                let t = (0..n as usize)
                    .filter(|&i| g >> i & 1 == 1)
                    .map(|i| beta[i])
                    .sum::<u64>()
                    % 2;
                let s = if t == 0 { 1 } else { -1 };
                f2_moebius(g) as i64 * s
            })
            .sum();
        let want = sum as f64 / (1u64 << n) as f64;
        let got: f64 = row[2].parse().unwrap();
        assert!((got - want).abs() <= 1e-12, "n = {n}: {got} vs {want}");
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn distance_growth_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = run_to(
        &read("distance-growth.toml"),
        &dir.path().join("d.csv"),
        &[],
    );
    let rows = rows(&csv);
    assert_eq!(rows.len(), 20);
    let mut acc = 0.0;
    let mut last = 0.0;
    for (row, n) in rows.iter().zip(1..=20u64) {
        // 1 - Re mu(p) = 2 on every irreducible
        acc += 2.0 * necklace(2, n) as f64 / 2f64.powi(n as i32);
        let got: f64 = row[1].parse().unwrap();
        assert!((got - acc.sqrt()).abs() <= 1e-12, "N = {n}");
        assert!(got > last);
        last = got;
    }
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (name, fmt, max) in [
        ("decay-random.toml", "\"csv\"", "9"),
        ("decay-random.toml", "\"json\"", "9"),
        ("bias-rank-demo.toml", "\"csv\"", "3"),
        ("zero-count-check.toml", "\"json\"", "4"),
    ] {
        let text = read(name);
        let extra = [("output.format", fmt), ("n.max", max)];
        let a = run_to(&text, &dir.path().join("a"), &extra);
        let b = run_to(&text, &dir.path().join("a"), &extra);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn split_ranges_concatenate() {
    let dir = tempfile::tempdir().unwrap();
    let text = read("decay-random.toml");
    let whole = rows(&run_to(
        &text,
        &dir.path().join("w"),
        &[("n.min", "6"), ("n.max", "11")],
    ));
    let mut parts = rows(&run_to(
        &text,
        &dir.path().join("a"),
        &[("n.min", "6"), ("n.max", "8")],
    ));
    parts.extend(rows(&run_to(
        &text,
        &dir.path().join("b"),
        &[("n.min", "9"), ("n.max", "11")],
    )));
    assert_eq!(whole, parts);
}

#[test]
fn json_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_to(
        &read("tk-check.toml"),
        &dir.path().join("t.json"),
        &[("output.format", "\"json\"")],
    );
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["format"], "fqx tk-check v1");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 7);
    assert_eq!(doc["config"]["params"]["h"], 5);
    for r in doc["rows"].as_array().unwrap() {
        assert!(r["ratio"].as_f64().unwrap() <= 5.0);
    }
}

#[test]
fn exit_codes() {
    let cfg = configs();
    let p = |n: &str| cfg.join(n).display().to_string();

    let (code, out, _) = fqx(&["run", &p("tk-check.toml"), "--n-max", "9"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out).len(), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, read("tk-check.toml").replace("w = 1", "w = 1\nv = 2")).unwrap();
    let (code, _, err) = fqx(&["run", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(
        err.contains("bad.toml:12: params.v: unknown key `v`"),
        "{err}"
    );

    let (code, _, err) = fqx(&["run", &p("decay-table.toml"), "--budget", "100"]);
    assert_eq!(code, 2);
    assert!(err.contains("n = 7"), "{err}");

    let missing = dir.path().join("no/such/dir/out.csv");
    let (code, _, _) = fqx(&["run", &p("tk-check.toml"), "-o", missing.to_str().unwrap()]);
    assert_eq!(code, 3);

    let (code, _, _) = fqx(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn kind_subcommands() {
    let cfg = configs().join("tk-check.toml").display().to_string();
    let (code, a, _) = fqx(&["tk-check", &cfg, "--n-max", "9"]);
    assert_eq!(code, 0);
    let (_, b, _) = fqx(&["run", &cfg, "--set", "n.max=9"]);
    assert_eq!(a, b);

    let (code, _, err) = fqx(&["decay-table", &cfg]);
    assert_eq!(code, 1);
    assert!(err.contains("subcommand"), "{err}");

    // everything from flags
    let (code, out, _) = fqx(&[
        "tk-check",
        "--set",
        "field.p=3",
        "--n-min",
        "3",
        "--n-max",
        "4",
        "--set",
        "params.w=1",
        "--set",
        "params.h=3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out).len(), 2);

    let (code, out, _) = fqx(&["--list-builtins"]);
    assert_eq!(code, 0);
    assert!(out.contains("moebius") && out.contains("zero-count-check"));
}

#[test]
fn validate_prints_normalized_config() {
    let cfg = configs().join("bias-rank-demo.toml").display().to_string();
    let (code, out, _) = fqx(&["validate", &cfg]);
    assert_eq!(code, 0);
    let c = validate_config(&out, &Overrides::default()).unwrap();
    assert_eq!(c.seed, Some(7));
    assert!(out.contains("[budget]"));
}
