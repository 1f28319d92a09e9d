//! Acceptance suite. Runs with its own harness and prints one PASS/FAIL line
//! per criterion; the process fails if any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use verlinde::characters::Caps;
use verlinde::fusion::{fusion_ideal_check_a, FusionContext, FusionElement};
use verlinde::lie::level_k_weights;
use verlinde::quantize::{quantize_conjugacy_class, quantize_double, quantize_sphere_su, verlinde_routes, VerlindeProblem};
use verlinde::weyl::{affine_reduce, face_data, AffineReduction};
use verlinde::{Group, Weight};

const ORTHOGONALITY_TOL: f64 = 1e-6;
const IDEAL_TOL: f64 = 1e-8;
const DOUBLE_TOL: f64 = 1e-6;
const SPHERE_RAW_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;

fn group(label: &str) -> Group {
    Group::from_label(label).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn orthogonality() -> Outcome {
    let cases = [("A1", 12), ("A2", 6), ("C2", 4), ("G2", 3)];
    let mut worst: f64 = 0.0;
    for (label, kmax) in cases {
        let g = group(label);
        for k in 0..=kmax {
            let ctx = FusionContext::new(&g, k).map_err(|e| e.to_string())?;
            let r = ctx.verify_orthogonality();
            ensure(r < ORTHOGONALITY_TOL, || format!("{label} k={k}: residual {r:e}"))?;
            worst = worst.max(r);
        }
    }
    // The cached SU(2) table against sin((a+1)x)/sin x.
    let g = group("A1");
    for k in 0..=12u32 {
        let ctx = FusionContext::new(&g, k).unwrap();
        for a in 0..=k as usize {
            for l in 0..=k as usize {
                let x = PI * (l + 1) as f64 / (k + 2) as f64;
                let oracle = ((a + 1) as f64 * x).sin() / x.sin();
                let v = ctx.character(a, l);
                ensure((v.re - oracle).abs() < 1e-9 && v.im.abs() < 1e-9, || {
                    format!("SU(2) k={k}: χ_{a}(t_{l}) = {v} but closed form gives {oracle}")
                })?;
            }
        }
    }
    Ok(format!("max residual {worst:.2e} < {ORTHOGONALITY_TOL:e}"))
}

fn su2_fusion() -> Outcome {
    let g = group("A1");
    let mut checked = 0;
    for k in 0..=8u32 {
        let ctx = FusionContext::new(&g, k).unwrap();
        for a in 0..=k as i64 {
            for b in 0..=k as i64 {
                let product = ctx.fusion_coefficients(&Weight(vec![a]), &Weight(vec![b])).map_err(|e| e.to_string())?;
                for c in 0..=k as i64 {
                    let rule = (a - b).abs() <= c && c <= (a + b).min(2 * k as i64 - a - b) && (a + b + c) % 2 == 0;
                    let got = product.coefficient(&Weight(vec![c]));
                    ensure(got == rule as i64, || format!("k={k}: N_({a})({b})^({c}) = {got}, rule gives {}", rule as i64))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} coefficients exact"))
}

fn two_route_fusion() -> Outcome {
    let cases = [("A1", 6), ("A2", 4), ("C2", 3)];
    let mut pairs = 0;
    for (label, kmax) in cases {
        let g = group(label);
        for k in 0..=kmax {
            let ctx = FusionContext::new(&g, k).unwrap();
            for mu in ctx.weights() {
                for nu in ctx.weights() {
                    let a = ctx.fusion_coefficients(mu, nu).map_err(|e| e.to_string())?;
                    let b = ctx.fusion_coefficients_kac_walton(mu, nu, &Caps::default()).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("{label} k={k} ({mu})·({nu}): {a} vs {b}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs identical"))
}

fn fusion_ideal() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        let g = Group::special_unitary(n).unwrap();
        for k in 0..=4 {
            let r = fusion_ideal_check_a(&g, k).map_err(|e| e.to_string())?;
            ensure(r < IDEAL_TOL, || format!("SU({n}) k={k}: {r:e}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("max |χ| {worst:.2e} < {IDEAL_TOL:e}"))
}

fn conjugacy_classes() -> Outcome {
    let cases = [("A1", 6), ("A2", 4)];
    let mut total = 0;
    let mut boundary = 0;
    for (label, kmax) in cases {
        let g = group(label);
        for k in 0..=kmax {
            let ctx = FusionContext::new(&g, k).unwrap();
            for mu in ctx.weights() {
                let face = face_data(&g.datum, &g.weyl, mu, k).map_err(|e| e.to_string())?;
                if face.stabilizer.len() > 1 {
                    boundary += 1;
                }
                let q = quantize_conjugacy_class(&ctx, mu).map_err(|e| e.to_string())?;
                let expected = FusionElement::from_terms(&g.datum, k, [(mu.clone(), 1)]).unwrap();
                ensure(q == expected, || format!("{label} k={k} ({mu}): {q}"))?;
                total += 1;
            }
        }
    }
    ensure(boundary >= 2, || format!("only {boundary} boundary faces exercised"))?;
    Ok(format!("{total} classes exact, {boundary} with |W_σ| > 1"))
}

fn double() -> Outcome {
    let cases = [("A1", 8), ("A2", 4)];
    let mut worst: f64 = 0.0;
    for (label, kmax) in cases {
        let g = group(label);
        for k in 0..=kmax {
            let ctx = FusionContext::new(&g, k).unwrap();
            let table = ctx.fusion_table().map_err(|e| e.to_string())?;
            let d = quantize_double(&ctx, &table).map_err(|e| e.to_string())?;
            ensure(d.max_discrepancy < DOUBLE_TOL, || format!("{label} k={k}: {:e}", d.max_discrepancy))?;
            worst = worst.max(d.max_discrepancy);
            // Σ_μ τ_μ τ_μ* assembled here from the structure constants.
            let mut expected = vec![0u64; ctx.len()];
            for m in 0..ctx.len() {
                for (kappa, slot) in expected.iter_mut().enumerate() {
                    *slot += table.product_coefficient(m, ctx.dual_index(m), kappa);
                }
            }
            for (kappa, w) in ctx.weights().iter().enumerate() {
                ensure(d.fused.coefficient(w) == expected[kappa] as i64, || format!("{label} k={k}: fused double {}", d.fused))?;
                ensure(d.fused_from_localization.coefficient(w) == expected[kappa] as i64, || {
                    format!("{label} k={k}: localized double {}", d.fused_from_localization)
                })?;
            }
            ensure(d.routes_agree, || format!("{label} k={k}: routes disagree"))?;
        }
    }
    Ok(format!("max diagonal discrepancy {worst:.2e} < {DOUBLE_TOL:e}"))
}

fn verlinde_dimensions() -> Outcome {
    let cases = [("A1", 4), ("A2", 3)];
    let mut problems = 0;
    for (label, kmax) in cases {
        let g = group(label);
        for k in 0..=kmax {
            let ctx = FusionContext::new(&g, k).unwrap();
            let table = ctx.fusion_table().unwrap();
            let w = ctx.weights();
            let n = w.len();
            let mut boundaries: Vec<Vec<usize>> = vec![vec![]];
            for a in 0..n {
                boundaries.push(vec![a]);
                for b in a..n {
                    boundaries.push(vec![a, b]);
                    for c in b..n {
                        boundaries.push(vec![a, b, c]);
                    }
                }
            }
            for genus in 0..=3 {
                for idx in &boundaries {
                    let p = VerlindeProblem { genus, boundary: idx.iter().map(|&i| w[i].clone()).collect() };
                    let d = verlinde_routes(&ctx, &table, &p).map_err(|e| e.to_string())?;
                    ensure(d.fusion_algebra == d.closed_form, || {
                        format!("{label} k={k} {p:?}: {} vs {}", d.fusion_algebra, d.closed_form)
                    })?;
                    if genus == 0 && idx.len() == 3 {
                        let entry = table.get(idx[0], idx[1], idx[2]) as i64;
                        ensure(d.fusion_algebra == entry, || format!("{label} k={k} {p:?}: {} vs N = {entry}", d.fusion_algebra))?;
                    }
                    problems += 1;
                }
            }
        }
    }
    let g = group("A1");
    let ctx = FusionContext::new(&g, 1).unwrap();
    let table = ctx.fusion_table().unwrap();
    for h in 0..=5u32 {
        let d = verlinde_routes(&ctx, &table, &VerlindeProblem { genus: h, boundary: vec![] }).unwrap();
        ensure(d.fusion_algebra == 1 << h && d.closed_form == 1 << h, || format!("A1 k=1 genus {h}: {d:?}"))?;
    }
    Ok(format!("{problems} problems, routes equal; SU(2) level 1 gives 2^h for h ≤ 5"))
}

fn sphere() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut degenerate = 0;
    for n in 2..=4 {
        let g = Group::special_unitary(n).unwrap();
        for k in 0..=4u32 {
            let s = quantize_sphere_su(n, k).map_err(|e| e.to_string())?;
            let expected = FusionElement::from_terms(
                &g.datum,
                k,
                (0..=k as i64).map(|i| (Weight::fundamental(n - 1, 0).scale(i), 1)),
            )
            .unwrap();
            ensure(s.element == expected, || format!("SU({n}) k={k}: {}", s.element))?;
            ensure(s.raw_max_residual < SPHERE_RAW_TOL, || format!("SU({n}) k={k}: raw {:e}", s.raw_max_residual))?;
            worst = worst.max(s.raw_max_residual);
            degenerate += s.degenerate_points;
        }
    }
    Ok(format!("exact; raw cross-check {worst:.2e} < {SPHERE_RAW_TOL:e}, {degenerate} degenerate points skipped"))
}

/// Searches the orbit of `ν = μ+ρ` under `W ⋉ K·Q∨` for a point strictly
/// inside the alcove `{labels > 0, level < K}`.
fn orbit_oracle(g: &Group, mu: &Weight, k: u32, bound: i64) -> Result<AffineReduction, String> {
    let datum = &g.datum;
    let r = datum.rank;
    let shift = k as i64 + datum.dual_coxeter;
    let nu = mu + &datum.rho;
    let coroots = datum.coroot_gram();
    let mut found: Vec<(Weight, i64)> = Vec::new();
    let mut n = vec![-bound; r];
    'outer: loop {
        for w in g.weyl.iter() {
            let mut image = w.apply(&nu);
            for (i, ni) in n.iter().enumerate() {
                for j in 0..r {
                    image.0[j] += shift * ni * coroots[i][j];
                }
            }
            if image.labels().iter().all(|&x| x > 0) && datum.level_of(&image) < shift {
                found.push((&image - &datum.rho, w.sign()));
            }
        }
        for i in 0..r {
            if n[i] < bound {
                n[i] += 1;
                continue 'outer;
            }
            n[i] = -bound;
        }
        break;
    }
    match found.as_slice() {
        [] => Ok(AffineReduction::Wall),
        [(weight, sign)] => Ok(AffineReduction::Alcove { weight: weight.clone(), sign: *sign }),
        _ => Err(format!("({mu}) at level {k}: {} alcove points in one orbit", found.len())),
    }
}

fn affine_reduction() -> Outcome {
    let mut checked = 0;
    let mut walls = 0;
    for (label, kmax) in [("A1", 4u32), ("A2", 3)] {
        let g = group(label);
        let datum = &g.datum;
        for k in 0..=kmax {
            let shift = k as i64 + datum.dual_coxeter;
            let rho_level = datum.level_of(&datum.rho);
            // Every dominant μ with ⟨μ+ρ, θ∨⟩ ≤ 3K, i.e. level(μ) ≤ 3K − level(ρ).
            let box_level = (3 * shift - rho_level) as u32;
            for mu in level_k_weights(datum, box_level) {
                let expected = orbit_oracle(&g, &mu, k, 4)?;
                let got = affine_reduce(datum, &mu, k);
                ensure(got == expected, || format!("{label} k={k} ({mu}): {got:?} vs oracle {expected:?}"))?;
                walls += matches!(got, AffineReduction::Wall) as usize;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} weights agree with the orbit oracle ({walls} on walls)"))
}

fn determinism() -> Outcome {
    for args in ["check --group A1 --level 5", "check --group A2 --level 3", "check --group G2 --level 2"] {
        let mut reports = Vec::new();
        for threads in ["1", "4", "1", "4"] {
            for format in ["text", "json"] {
                let line = format!("verlinde {args} --threads {threads} --format {format}");
                let out = verlinde::cli::run(line.split_whitespace());
                ensure(out.code == 0, || format!("`{line}` exited {}", out.code))?;
                reports.push((format, out.stdout));
            }
        }
        for pair in reports.chunks(2).skip(1) {
            ensure(pair[0].1 == reports[0].1 && pair[1].1 == reports[1].1, || format!("`{args}` differs across runs"))?;
        }
    }
    Ok("reports byte-identical for 1 and 4 threads".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("orthogonality relations", orthogonality),
        ("SU(2) fusion rule", su2_fusion),
        ("two-route fusion equality", two_route_fusion),
        ("fusion ideal generators vanish", fusion_ideal),
        ("conjugacy classes quantize to τ_μ", conjugacy_classes),
        ("double and fused double", double),
        ("Verlinde dimensions", verlinde_dimensions),
        ("sphere S^2n", sphere),
        ("affine reduction vs orbit oracle", affine_reduction),
        ("check determinism across threads", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
