use serde_json::Value;
use verlinde::cli::{run, Outcome};

fn cli(args: &str) -> Outcome {
    run(std::iter::once("verlinde").chain(args.split_whitespace()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn weights_listing() {
    let v = json(&cli("weights --group A1 --level 2"));
    let rows = v["weights"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["weight"], "0");
    // t_0 = exp(ρ/4) for SU(2) at level 2: phase of ϖ₁ is 1/8.
    assert_eq!(rows[0]["phases"][0], "1/8");
    assert_eq!(rows[0]["phases_float"][0], 0.125);
    assert_eq!(v["datum"]["gram"][0][0], "1/2");
    assert_eq!(v["datum"]["dual_coxeter"], 2);

    assert_eq!(json(&cli("weights --group A1 --level 0"))["weights"].as_array().unwrap().len(), 1);
    assert_eq!(cli("weights --group Z9 --level 1").code, 2);
    assert_eq!(cli("weights --group A2").code, 2);
}

#[test]
fn weights_csv_and_text() {
    let out = cli("weights --group A2 --level 1 --format csv");
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "weight,phases,phases_float");
    assert_eq!(lines.len(), 4);
    let out = cli("weights --group G2 --level 1 --format text");
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("G2 level 1: 2 weights"));
}

#[test]
fn fusion_exports() {
    let out = cli("fusion --group A1 --level 1 --format csv");
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "mu,nu,lambda,N");
    assert_eq!(lines.len(), 9);
    assert!(lines[1..].iter().all(|l| l.ends_with(",0") || l.ends_with(",1")));

    let v = json(&cli("fusion --group A1 --level 0"));
    let rows = v["coefficients"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["N"], 1);
    assert_eq!(v["routes_agree"], true);

    let out = cli("fusion --group A2 --level 1 --format csv");
    assert!(out.stdout.lines().any(|l| l == "1-0,1-0,1-0,1"));
}

#[test]
fn verlinde_command() {
    let v = json(&cli("verlinde --group A1 --level 1 --genus 2"));
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["routes_agree"], true);
    let out = cli("verlinde --group A1 --level 1 --genus 2 --format text");
    assert_eq!(out.stdout, "4\n");

    // Genus zero with three boundary circles: N_{(1),(1),(2)} = 1 for SU(2) at level 2.
    let v = json(&cli("verlinde --group A1 --level 2 --boundary 1 --boundary 1 --boundary 2"));
    assert_eq!(v["dimension"], 1);
    let v = json(&cli("verlinde --group A1 --level 2 --boundary 1 --boundary 1 --boundary 1"));
    assert_eq!(v["dimension"], 0);

    assert_eq!(cli("verlinde --group A1 --level 1 --boundary 3").code, 2);
    assert_eq!(cli("verlinde --group A2 --level 1 --boundary 1").code, 2);
}

#[test]
fn quantize_examples() {
    let v = json(&cli("quantize sphere --n 2 --level 2"));
    assert_eq!(v["coefficients"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["example"], "sphere");

    let v = json(&cli("quantize conj --group A2 --level 2 --weight 1,0"));
    let weights: Vec<&str> = v["weights"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    let coefficients = v["coefficients"].as_array().unwrap();
    for (w, c) in weights.iter().zip(coefficients) {
        assert_eq!(c, if *w == "1,0" { 1 } else { 0 });
    }

    let v = json(&cli("quantize double --group A1 --level 1"));
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["coefficients"], serde_json::json!([2, 0]));

    assert_eq!(cli("quantize sphere --n 3 --level 1 --group B2").code, 2);
    assert_eq!(cli("quantize sphere --n 1 --level 1").code, 2);
    assert_eq!(cli("quantize conj --group A2 --level 2 --weight 2,1").code, 2);
}

#[test]
fn check_passes_and_detects_corruption() {
    for args in ["check --group A1 --level 5", "check --group A2 --level 3"] {
        let v = json(&cli(args));
        assert_eq!(v["all_pass"], true);
        for inv in v["invariants"].as_array().unwrap() {
            assert!(inv["residual"].as_f64().unwrap() <= inv["threshold"].as_f64().unwrap());
        }
    }
    let out = cli("check --group A1 --level 5 --corrupt-cache --format text");
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("FAIL orthogonality"));
}

#[test]
fn flags_are_validated() {
    assert_eq!(cli("check --group A1 --level 1 --tolerance 0.01").code, 2);
    assert_eq!(cli("check --group A1 --level 1 --tolerance 0").code, 2);
    assert_eq!(cli("check --group A1 --level 1 --threads 0").code, 2);
    assert_eq!(cli("frobnicate").code, 2);
    assert_eq!(cli("--help").code, 0);
}

#[test]
fn resource_caps_exit_with_four() {
    let out = cli("fusion --group A2 --level 2 --max-norm 0");
    assert_eq!(out.code, 4, "{}", out.stderr);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("verlinde-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = cli(&format!("fusion --group A1 --level 2 --format csv --out {}", path.display()));
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 28);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in ["fusion --group B2 --level 2", "weights --group G2 --level 3", "quantize double --group A2 --level 2"] {
        assert_eq!(cli(args), cli(args));
    }
}
