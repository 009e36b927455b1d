//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fail.

use std::f64::consts::{FRAC_PI_4, PI};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use logaesthetic::export::{read_csv, write_csv};
use logaesthetic::isoptic::{
    isoptic_domain, isoptic_point, t_theta, t_theta_harmonic, verify_isoptic_point, IsopticConfig,
};
use logaesthetic::lcg::{
    autoevolute_check, evolute_target, isoptic_lcg_point, isoptic_slope, lcg_isoptic_alpha1_closed,
    lcg_point_lac, slope_estimate, Branch,
};
use logaesthetic::{CurveParams, PlanePoint, QuadratureConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const DELTA_2PI3: f64 = 2.0 * PI / 3.0;

type Outcome = Result<String, String>;

fn lac(alpha: f64, lambda: f64) -> CurveParams {
    CurveParams::new(alpha, lambda).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn slope_table(alpha: f64, thetas: &[f64]) -> Vec<f64> {
    let iso = IsopticConfig::new(DELTA_2PI3).unwrap();
    thetas
        .iter()
        .map(|&t| isoptic_slope(&lac(alpha, 1.0), t, iso, PI, &cfg()).unwrap().value)
        .collect()
}

fn compare_table(thetas: &[f64], got: &[f64], want: &[f64], tols: &[f64]) -> (bool, String) {
    let mut ok = true;
    let mut rows = Vec::new();
    for i in 0..thetas.len() {
        let good = (got[i] - want[i]).abs() <= tols[i];
        ok &= good;
        rows.push(format!(
            "theta={:.6} got={:.8} want={} {}",
            thetas[i],
            got[i],
            want[i],
            if good { "ok" } else { "MISS" }
        ));
    }
    (ok, rows.join("; "))
}

fn criterion_1() -> Outcome {
    let thetas = [-1.0, 0.0, PI, 3.0 * PI, 10.0 * PI, 100.0 * PI];
    let want = [1.86204, 1.96486, 1.99523, 1.99899, 1.99987, 1.99999845];
    let tols = [5e-3, 5e-4, 5e-4, 5e-4, 5e-4, 5e-4];
    let got = slope_table(2.0, &thetas);
    let (close, detail) = compare_table(&thetas, &got, &want, &tols);
    let increasing = got.windows(2).all(|w| w[1] > w[0]) && got.iter().all(|&v| v < 2.0);
    if close && increasing {
        Ok(detail)
    } else {
        Err(format!("{detail}; increasing toward 2: {increasing}"))
    }
}

fn criterion_2() -> Outcome {
    let thetas = [0.5 - DELTA_2PI3, -PI, -2.0 * PI, -5.0 * PI, -10.0 * PI, -100.0 * PI];
    let want = [-2.23102, -1.27031, -1.0705, -1.01251, -1.00329, -1.00003];
    let got = slope_table(-1.0, &thetas);
    let (close, detail) = compare_table(&thetas, &got, &want, &[5e-3; 6]);
    // θ decreases along the list, so α̂ must increase along it.
    let increasing = got.windows(2).all(|w| w[1] > w[0]) && got.iter().all(|&v| v < -1.0);
    if close && increasing {
        Ok(detail)
    } else {
        Err(format!("{detail}; increasing toward -1: {increasing}"))
    }
}

fn criterion_3() -> Outcome {
    let mut worst_slope = 0.0f64;
    let mut worst_closed = 0.0f64;
    for lambda in [0.5, 1.0] {
        for delta in [FRAC_PI_4, DELTA_2PI3] {
            let params = lac(1.0, lambda);
            let iso = IsopticConfig::new(delta).unwrap();
            for theta in [-2.0, 0.0, 2.0] {
                let s = isoptic_slope(&params, theta, iso, PI, &cfg()).unwrap();
                worst_slope = worst_slope.max((s.value - 1.0).abs());
                let closed = lcg_isoptic_alpha1_closed(lambda, delta, theta).unwrap();
                let piped = isoptic_lcg_point(&params, theta, iso, &cfg()).unwrap();
                worst_closed = worst_closed.max((closed.x - piped.x).abs()).max((closed.y - piped.y).abs());
            }
        }
    }
    let detail = format!("max |slope-1|={worst_slope:.2e}, max closed-form gap={worst_closed:.2e}");
    if worst_slope < 1e-6 && worst_closed < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_theta(rng: &mut StdRng, params: &CurveParams, iso: IsopticConfig) -> f64 {
    let d = isoptic_domain(params, iso).unwrap();
    let gap = rng.random_range(0.05..6.0);
    match (d.lower, d.upper) {
        (Some(l), _) => l + gap,
        (None, Some(u)) => u - gap,
        (None, None) => rng.random_range(-6.0..6.0),
    }
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_241_015);
    let mut worst_dist = 0.0f64;
    let mut worst_angle = 0.0f64;
    let mut worst_forms = 0.0f64;
    let mut failures = Vec::new();
    for k in 0..200 {
        let alpha = match rng.random_range(0..10) {
            0 => f64::INFINITY,
            1 => f64::NEG_INFINITY,
            _ => rng.random_range(-3.0..3.0),
        };
        let lambda = rng.random_range(0.5..2.0);
        let params = lac(alpha, lambda);
        let delta = rng.random_range(0.1..PI - 0.1);
        let iso = IsopticConfig::new(delta).unwrap();
        let theta = random_theta(&mut rng, &params, iso);
        let p = isoptic_point(&params, theta, iso, &cfg()).unwrap();
        let rep = verify_isoptic_point(&params, theta, iso, p, &cfg()).unwrap();
        let scale = 1.0 + p.norm();
        worst_dist = worst_dist.max(rep.dist1 / scale).max(rep.dist2 / scale);
        worst_angle = worst_angle.max(rep.angle_error);
        let a = t_theta(&params, theta, iso, &cfg()).unwrap();
        let b = t_theta_harmonic(&params, theta, iso, &cfg()).unwrap();
        // Relative to the size of t: one ulp of a value near 1e6 already exceeds 1e-10.
        let gap = (a - b).abs() / (1.0 + a.abs());
        worst_forms = worst_forms.max(gap);
        if !rep.passes(p) || gap >= 1e-10 {
            failures.push(format!("#{k} alpha={alpha} lambda={lambda} delta={delta} theta={theta}"));
        }
    }
    let detail = format!(
        "200 samples, max scaled distance={worst_dist:.2e}, max angle error={worst_angle:.2e}, max |t - t_harmonic|/(1+|t|)={worst_forms:.2e}"
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; failing: {}", failures.join(", ")))
    }
}

fn criterion_5() -> Outcome {
    let cases = [
        (1.0, -3.0 * PI, 3.0 * PI),
        (2.0, -1.0 + 1e-3, 3.0 * PI),
        (-1.0, -3.0 * PI, 0.5 - 1e-3),
        (f64::INFINITY, -3.0 * PI, 3.0 * PI),
        (f64::NEG_INFINITY, -3.0 * PI, 3.0 * PI),
    ];
    let mut worst = 0.0f64;
    for (alpha, lo, hi) in cases {
        let params = lac(alpha, 1.0);
        for k in 0..50 {
            let theta = lo + (hi - lo) * k as f64 / 49.0;
            let quad = params.point_of_theta(theta, &cfg()).unwrap();
            let exact = params.closed_form_point(theta).unwrap().unwrap();
            worst = worst.max((quad - exact).norm());
        }
    }
    let centre = PlanePoint::new(0.0, 1.0);
    let mut worst_circle = 0.0f64;
    for delta in [0.3, FRAC_PI_4, 1.5, DELTA_2PI3, 3.0] {
        let iso = IsopticConfig::new(delta).unwrap();
        let radius = 1.0 / (delta / 2.0).cos();
        for k in 0..20 {
            let theta = -PI + 0.37 * k as f64;
            let p = isoptic_point(&CurveParams::circle(), theta, iso, &cfg()).unwrap();
            worst_circle = worst_circle.max((p.distance(centre) - radius).abs());
        }
    }
    let detail = format!("max closed-form gap={worst:.2e}, max circle isoptic radius error={worst_circle:.2e}");
    if worst < 1e-9 && worst_circle < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let alpha: f64 = rng.random_range(-3.0..3.0);
        let lambda: f64 = rng.random_range(0.1..3.0);
        let params = lac(alpha, lambda);
        let d = params.arc_bounds();
        let gap = rng.random_range(0.01..5.0);
        let s = match (d.lower, d.upper) {
            (Some(l), _) => l + gap,
            (None, Some(u)) => u - gap,
            (None, None) => rng.random_range(-5.0..5.0),
        };
        let rho = params.rho_of_s(s).unwrap();
        let drho = params.drho_ds(s).unwrap();
        let residual = (rho / drho).ln() - alpha * rho.ln() + lambda.ln();
        worst = worst.max(residual.abs());
    }
    let detail = format!("500 triples, max residual={worst:.2e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for alpha in [-2.0, -1.0, 0.0, 0.5, 1.5, 2.0, 3.0] {
        let params = lac(alpha, 1.0);
        let branch = Branch::for_alpha(alpha);
        for _ in 0..20 {
            let phi = rng.random_range(0.5..3.0);
            let gap = rng.random_range(0.05..5.0);
            let theta = match alpha < 1.0 {
                true => params.theta_bounds().upper.unwrap() - gap,
                false => params.theta_bounds().lower.unwrap() + gap,
            };
            let s = slope_estimate(|t| lcg_point_lac(&params, t), theta, phi, branch).unwrap();
            worst = worst.max((s.value - alpha).abs());
        }
    }
    let detail = format!("max |slope - alpha|={worst:.2e}");
    if worst < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_8() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for (alpha, thetas) in [(0.0, [-3.0, -1.0, 0.5]), (1.0, [-1.0, 0.0, 1.0]), (3.0, [-0.2, 0.5, 2.0])] {
        let params = lac(alpha, 1.0);
        let target = evolute_target(&params).unwrap();
        for s in autoevolute_check(&params, &thetas, PI).unwrap() {
            ok &= (s.value - target).abs() < 1e-3;
            rows.push(format!("alpha={alpha} theta={} slope={:.6} target={target}", s.theta, s.value));
        }
    }
    let detail = rows.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run_cli(args: &[&str], out: &std::path::Path) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_logaesthetic"))
        .args(args)
        .arg("--output")
        .arg(out)
        .status()
        .unwrap();
    assert!(status.success(), "{args:?} exited with {status}");
    std::fs::read(out).unwrap()
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let invocations: [&[&str]; 5] = [
        &["sample", "--alpha", "-1", "--n", "300", "--format", "svg"],
        &["isoptic", "--alpha", "2", "--delta", "1.0472", "--n", "200"],
        &["lcg", "--alpha", "2", "--target", "isoptic", "--n", "100"],
        &["check", "autoisoptic", "--alpha", "2", "--delta", "2.0944"],
        &["check", "autoevolute", "--alpha", "3"],
    ];
    for (k, args) in invocations.iter().enumerate() {
        let a = run_cli(args, &dir.path().join(format!("a{k}")));
        let b = run_cli(args, &dir.path().join(format!("b{k}")));
        if a != b {
            return Err(format!("{args:?} produced different bytes on repeat"));
        }
    }

    let csv = run_cli(&["isoptic", "--alpha", "-1", "--n", "250"], &dir.path().join("iso.csv"));
    let poly = read_csv(csv.as_slice(), "isoptic").unwrap();
    let mut again = Vec::new();
    write_csv(&poly, &mut again).unwrap();
    if again != csv {
        return Err("CSV re-serialisation differs".into());
    }
    let reread = read_csv(again.as_slice(), "isoptic").unwrap();
    if reread != poly {
        return Err("CSV round trip changed values".into());
    }
    Ok("5 commands byte-identical on repeat; CSV round trip exact".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("slope table of the circle involute isoptic", criterion_1),
        ("slope table of the clothoid isoptic", criterion_2),
        ("logarithmic spiral is autoisoptic", criterion_3),
        ("isoptic points satisfy the tangent-line definition", criterion_4),
        ("quadrature matches closed forms", criterion_5),
        ("fundamental equation residual", criterion_6),
        ("base LCG is a line of slope alpha", criterion_7),
        ("evolute LCG slope is -1/(alpha-2)", criterion_8),
        ("determinism and CSV interchange", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}  [{detail}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  [{detail}]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
