// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! if any criterion fails.
//!
//! Figure hashes are compared against `tests/snapshots/figures.sha256`; run
//! with `UPDATE_SNAPSHOTS=1` to rewrite that file.

mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use alphabezier::approx::fit_least_squares;
use alphabezier::curve::uniform_params;
use alphabezier::{presets, Alpha, BasisSpec, BezierCurve, HomographyMap, ReparamKind};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_interval(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = rng.gen_range(-10.0..10.0);
    (a, a + rng.gen_range(0.01..20.0))
}

fn partition_of_unity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(0..=10);
        let alpha = ALPHA_POOL[rng.gen_range(0..ALPHA_POOL.len())];
        let (a, b) = random_interval(&mut rng);
        let x = rng.gen_range(a..=b);
        let sum: f64 = spec(n, a, b, alpha).eval(x).unwrap().iter().sum();
        worst = worst.max((sum - 1.0).abs());
    }
    ensure(worst <= 1e-12, format!("1000 draws, max |sum - 1| = {worst:e}"))
}

fn symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(0..=10);
        let alpha = ALPHA_POOL[rng.gen_range(0..ALPHA_POOL.len())];
        let (a, b) = random_interval(&mut rng);
        let x = rng.gen_range(a..=b);
        let dual = if alpha.is_infinite() { alpha } else { 1.0 - alpha };
        let lhs = spec(n, a, b, alpha).eval((a + b - x).clamp(a, b)).unwrap();
        let rhs = spec(n, a, b, dual).eval(x).unwrap();
        for i in 0..=n {
            worst = worst.max((lhs[i] - rhs[n - i]).abs());
        }
    }
    ensure(worst <= 1e-12, format!("500 draws, max deviation = {worst:e}"))
}

fn preset_curves() -> Vec<(String, BezierCurve)> {
    let mut out = Vec::new();
    for (name, poly) in presets::all() {
        for alpha in FIGURE_ALPHAS {
            let map = HomographyMap::unit(alpha).unwrap();
            out.push((
                format!("pi_{name}, alpha {}", Alpha::from(alpha)),
                BezierCurve::with_map(poly.clone(), map).unwrap(),
            ));
        }
    }
    out
}

fn decasteljau_matches_direct() -> Outcome {
    let mut worst = (0.0f64, String::new());
    for (label, curve) in preset_curves() {
        let diam = curve.polygon().diameter();
        for x in uniform_params(0.0, 1.0, 100) {
            let (apex, _) = curve.eval_decasteljau(x).unwrap();
            let rel = apex.distance(&curve.eval(x).unwrap()) / diam;
            if rel > worst.0 {
                worst = (rel, label.clone());
            }
        }
    }
    ensure(
        worst.0 <= 1e-12,
        format!("36 curves x 100 params, max deviation / diameter = {:e} ({})", worst.0, worst.1),
    )
}

fn degree_elevation() -> Outcome {
    let mut worst = 0.0f64;
    let mut endpoints_exact = true;
    for (_, curve) in preset_curves() {
        let raised = curve.elevate_degree().unwrap();
        let diam = curve.polygon().diameter();
        for x in uniform_params(0.0, 1.0, 100) {
            let d = raised.eval(x).unwrap().distance(&curve.eval(x).unwrap());
            worst = worst.max(d / diam);
        }
        endpoints_exact &= raised.polygon().first() == curve.polygon().first()
            && raised.polygon().last() == curve.polygon().last()
            && raised.eval(0.0).unwrap() == curve.eval(0.0).unwrap()
            && raised.eval(1.0).unwrap() == curve.eval(1.0).unwrap();
    }
    ensure(
        worst <= 1e-12 && endpoints_exact,
        format!("max deviation / diameter = {worst:e}, endpoints exact = {endpoints_exact}"),
    )
}

fn subdivision() -> Outcome {
    let mut tableau_worst = 0.0f64;
    let mut child_worst = 0.0f64;
    for (_, curve) in preset_curves() {
        let diam = curve.polygon().diameter();
        let d = curve.polygon().points();
        let n = curve.degree();
        for c in [0.1, 0.37, 0.5, 0.81] {
            let tab = curve.tableau(c).unwrap();
            for j in 0..=n {
                let b = curve.spec().with_degree(j).unwrap().eval(c).unwrap();
                for (k, entry) in tab.level(j).iter().enumerate() {
                    let mut sum = d[k] * 0.0;
                    for (i, bi) in b.iter().enumerate() {
                        sum = sum + d[i + k] * *bi;
                    }
                    tableau_worst = tableau_worst.max(entry.distance(&sum) / diam);
                }
            }
            let split = curve.subdivide(c).unwrap();
            let u = curve.map().reparam(c, ReparamKind::LeftU).unwrap();
            let v = curve.map().reparam(c, ReparamKind::RightV).unwrap();
            for t in uniform_params(0.0, 1.0, 50) {
                let dl = split.left.eval(t).unwrap().distance(&curve.eval(u.eval(t).unwrap()).unwrap());
                let dr = split.right.eval(t).unwrap().distance(&curve.eval(v.eval(t).unwrap()).unwrap());
                child_worst = child_worst.max(dl.max(dr) / diam);
            }
        }
    }
    let (w, cw) = HomographyMap::unit(2.0).unwrap().eval_pair(0.5).unwrap();
    let weights_ok = w == 2.0 / 3.0 && cw == 1.0 / 3.0;
    ensure(
        tableau_worst <= 1e-12 && child_worst <= 1e-10 && weights_ok,
        format!(
            "tableau identity {tableau_worst:e}, children vs parent {child_worst:e}, \
             midpoint weights ({w}, {cw})"
        ),
    )
}

/// Maximizer of `B_i`: golden section, refined by bisection on a central
/// difference of `B_i` when the maximum is interior.
fn locate_max(spec: &BasisSpec, i: usize) -> f64 {
    let map = spec.map();
    let (a, b) = (map.a(), map.b());
    let bi = |x: f64| spec.eval(x.clamp(a, b)).unwrap()[i];
    let g = golden_max(bi, a, b, 1e-10 * (b - a));
    let n = spec.degree();
    if i == 0 || i == n {
        return g;
    }
    let h = 1e-6 * (b - a);
    let slope = |x: f64| central_diff1(bi, x, h);
    let r = 1e-4 * (b - a);
    bisect(slope, (g - r).max(a + h), (g + r).min(b - h), 1e-13 * (b - a))
}

fn maxima() -> Outcome {
    let mut arg_worst = 0.0f64;
    let mut val_worst = 0.0f64;
    let mut identical = true;
    for (a, b) in [(0.0, 1.0), (-2.0, 3.0)] {
        for n in 1..=8usize {
            let mut reference: Option<Vec<f64>> = None;
            for alpha in [-1.0, 2.0, 5.0] {
                let s = spec(n, a, b, alpha);
                let maxima = s.maxima();
                for m in &maxima {
                    let i = m.i;
                    let (nf, fi) = (n as f64, i as f64);
                    let x_expected = a + fi * (alpha - 1.0) * (b - a) / (nf * alpha - fi);
                    let x_found = locate_max(&s, i);
                    arg_worst = arg_worst
                        .max((x_found - x_expected).abs() / (b - a))
                        .max((m.x_star - x_expected).abs() / (b - a));
                    let m_expected = binomial_exact(n as u64, i as u64)
                        * fi.powi(i as i32)
                        * (nf - fi).powi((n - i) as i32)
                        / nf.powi(n as i32);
                    let at_peak = s.eval(x_expected).unwrap()[i];
                    val_worst = val_worst
                        .max((m.m_star - m_expected).abs())
                        .max((at_peak - m_expected).abs());
                }
                let stars: Vec<f64> = maxima.iter().map(|m| m.m_star).collect();
                match &reference {
                    None => reference = Some(stars),
                    Some(r) => identical &= *r == stars,
                }
            }
        }
    }
    ensure(
        arg_worst <= 1e-8 && val_worst <= 1e-10 && identical,
        format!(
            "argmax error / (b - a) = {arg_worst:e}, value error = {val_worst:e}, \
             identical across alpha = {identical}"
        ),
    )
}

fn derivatives() -> Outcome {
    let mut d1_worst = 0.0f64;
    let mut d2_worst = 0.0f64;
    let mut end_worst = 0.0f64;
    for (a, b) in [(0.0, 1.0), (-1.0, 2.5)] {
        for n in 1..=8usize {
            for alpha in ALPHA_POOL {
                let s = spec(n, a, b, alpha);
                let h = b - a;
                let xs = uniform_params(a, b, 102);
                for &x in &xs[1..101] {
                    let d1 = s.eval_deriv(x, 1).unwrap();
                    let d2 = s.eval_deriv(x, 2).unwrap();
                    let s1 = d1.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                    let s2 = d2.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                    for i in 0..=n {
                        let bi = |t: f64| s.eval(t).unwrap()[i];
                        let fd1 = central_diff1(bi, x, 1e-6 * h);
                        let fd2 = central_diff2(bi, x, 1e-4 * h);
                        d1_worst = d1_worst.max((fd1 - d1[i]).abs() / s1);
                        d2_worst = d2_worst.max((fd2 - d2[i]).abs() / s2);
                    }
                }
                let nf = n as f64;
                let (start, end) = if alpha.is_infinite() {
                    (nf / h, nf / h)
                } else {
                    (nf * alpha / ((alpha - 1.0) * h), nf * (alpha - 1.0) / (alpha * h))
                };
                let closed = s.endpoint_derivatives().unwrap();
                let at_a = s.eval_deriv(a, 1).unwrap();
                let at_b = s.eval_deriv(b, 1).unwrap();
                let mut expect_a = vec![0.0; n + 1];
                let mut expect_b = vec![0.0; n + 1];
                expect_a[0] -= start;
                expect_a[1] += start;
                expect_b[n - 1] -= end;
                expect_b[n] += end;
                let scale = start.abs().max(end.abs());
                for (got, want) in [
                    (closed.at_a.0, expect_a[0]),
                    (closed.at_a.1, expect_a[1]),
                    (closed.at_b.0, expect_b[n - 1]),
                    (closed.at_b.1, expect_b[n]),
                ] {
                    end_worst = end_worst.max((got - want).abs() / scale);
                }
                for i in 0..=n {
                    end_worst = end_worst
                        .max((at_a[i] - expect_a[i]).abs() / scale)
                        .max((at_b[i] - expect_b[i]).abs() / scale);
                }
            }
        }
    }
    ensure(
        d1_worst <= 1e-6 && d2_worst <= 1e-4 && end_worst <= 1e-13,
        format!(
            "first derivative rel error {d1_worst:e}, second {d2_worst:e}, \
             endpoint closed forms {end_worst:e}"
        ),
    )
}

fn alpha_invariance() -> Outcome {
    let poly = presets::preset("c").unwrap();
    let diam = poly.diameter();
    let left = BezierCurve::with_map(poly.clone(), HomographyMap::new(0.0, 1.0, -1.0).unwrap()).unwrap();
    let other = BasisSpec::new(3, HomographyMap::new(2.0, 7.0, 5.0).unwrap()).unwrap();
    let right = BezierCurve::new(poly, other).unwrap();
    let report = left.alpha_correspondence(&other, 1001).unwrap();
    let mut curv_worst = 0.0f64;
    for x in uniform_params(0.0, 1.0, 50) {
        let y = left.corresponding_parameter(x, other.map()).unwrap();
        let (k1, k2) = (left.curvature(x).unwrap(), right.curvature(y).unwrap());
        curv_worst = curv_worst.max((k1 - k2).abs() / k1.abs().max(k2.abs()).max(f64::MIN_POSITIVE));
    }
    let rel = report.max_deviation / diam;
    ensure(
        rel <= 1e-10 && curv_worst <= 1e-8,
        format!("point deviation / diameter = {rel:e}, curvature rel error = {curv_worst:e}"),
    )
}

fn classical_limit() -> Outcome {
    let mut worst = 0.0f64;
    for n in 0..=6usize {
        let big = unit_spec(n, 1e8);
        let inf = unit_spec(n, f64::INFINITY);
        for x in uniform_params(0.0, 1.0, 1001) {
            let (p, q) = (big.eval(x).unwrap(), inf.eval(x).unwrap());
            for i in 0..=n {
                worst = worst.max((p[i] - q[i]).abs());
            }
        }
    }
    ensure(worst <= 1e-6, format!("max |B(alpha = 1e8) - B(inf)| = {worst:e}"))
}

fn snapshot_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/snapshots/figures.sha256")
}

fn render_figures(dir: &Path) -> Result<BTreeMap<String, String>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_alphabezier"))
        .args(["--command", "figures", "--depth", "4", "--out"])
        .arg(dir)
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("figures command exited with {status}"));
    }
    let mut hashes = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        hashes.insert(name, format!("{:x}", Sha256::digest(&bytes)));
    }
    Ok(hashes)
}

fn figure_reproduction() -> Outcome {
    let first_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let second_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = render_figures(first_dir.path())?;
    let second = render_figures(second_dir.path())?;
    let mut required: Vec<String> = (1..=5).map(|n| format!("basis_n{n}.svg")).collect();
    required.extend(["m1", "2", "5", "inf"].map(|t| format!("subdivision_g_alpha_{t}.svg")));
    let missing: Vec<&String> = required.iter().filter(|r| !first.contains_key(*r)).collect();
    if !missing.is_empty() {
        return Err(format!("missing figures {missing:?}"));
    }
    if first != second {
        return Err("two runs produced different bytes".into());
    }
    let listing: String = first.iter().map(|(k, v)| format!("{v}  {k}\n")).collect();
    let path = snapshot_path();
    let update = std::env::var_os("UPDATE_SNAPSHOTS").is_some();
    let snapshot = if update { None } else { std::fs::read_to_string(&path).ok() };
    match snapshot {
        Some(expected) if expected != listing => {
            Err(format!("{} figures deterministic but hashes differ from {}", first.len(), path.display()))
        }
        Some(_) => Ok(format!("{} figures byte-identical across runs and match snapshot", first.len())),
        None => {
            std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
            std::fs::write(&path, listing).map_err(|e| e.to_string())?;
            Ok(format!("{} figures byte-identical across runs; snapshot written", first.len()))
        }
    }
}

fn conic_not_exact() -> Outcome {
    let f = |t: f64| t / (1.0 + t * t);
    let mut best = f64::INFINITY;
    for alpha in FIGURE_ALPHAS {
        for n in 3..=12 {
            let fit = fit_least_squares(f, &unit_spec(n, alpha), 201).map_err(|e| e.to_string())?;
            best = best.min(fit.max_error);
        }
    }
    ensure(best > 1e-12, format!("smallest max error over n = 3..=12 and 4 indices = {best:e}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("partition of unity", partition_of_unity),
        ("symmetry", symmetry),
        ("de Casteljau matches direct evaluation", decasteljau_matches_direct),
        ("degree elevation", degree_elevation),
        ("subdivision", subdivision),
        ("maxima", maxima),
        ("derivatives", derivatives),
        ("index invariance of the curve", alpha_invariance),
        ("classical limit", classical_limit),
        ("figure reproduction", figure_reproduction),
        ("conic is not reproduced exactly", conic_not_exact),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (tag, detail) = match std::panic::catch_unwind(check) {
            Ok(Ok(d)) => ("PASS", d),
            Ok(Err(d)) => ("FAIL", d),
            Err(_) => ("FAIL", "panicked".to_string()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name}: {detail}", k + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
