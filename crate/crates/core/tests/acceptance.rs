//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured quantities. Criteria that are known not to hold as stated are
//! listed in `KNOWN_UNATTAINABLE` with the reason; they are still evaluated
//! and reported as `FAIL`, but do not make the run exit non-zero. Any other
//! failure does.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::f64::consts::PI;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use mgk::boundary_trace::{
    curve_trace_derivatives, r0_grid, trace_second_derivative, trace_second_derivative_opposite, varsigma_trace_data,
};
use mgk::cusp_invariants::{cusp_modulus, heegaard_genus, homology_rank, return_path_length, CuspShape};
use mgk::deformation::{
    dehn_coefficients, jacobian, nullspace, residuals, solve_coefficients, solve_complete, solve_filling,
    subspace_distance, tangent_basis, uv, varsigma_curve, varsigma_derivatives, AngleVector, CuspTarget, FillingSpec,
    GKSignature, SolveOptions,
};
use mgk::slopes::{
    classify_slopes, d6_act, enumerate_equivalent_sets, similarity_count_bound, slope_sets_equivalent, D6Element,
    Slope, SlopeSet,
};
use mgk::symmetry::{phi_r, phi_s};
use mgk::xk::{abc, abc_defect, commensurable, tau_13, theta_r, theta_r2, Commensurability, XkSignature};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

/// Criteria whose statement is contradicted by exact computation.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    8,
    "for two slopes in different rotation orbits the equivalence class has k!/(k−h)!·3^h = 54 members; \
     (k!·3^h)/(h!(k−h)!) = 27 is a lower bound, attained exactly when the slopes share a rotation orbit",
)];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sig(g: usize, k: usize) -> GKSignature {
    GKSignature::new(g, k).unwrap()
}

fn fill(s: GKSignature, spec: &str) -> Result<AngleVector, String> {
    solve_filling(s, &FillingSpec::parse(spec).unwrap(), &SolveOptions::default()).map_err(|e| format!("{spec}: {e}"))
}

fn c1_complete_solution() -> Outcome {
    let mut worst = 0.0f64;
    for (g, k) in [(2, 1), (3, 1), (3, 2), (4, 3), (5, 3)] {
        let s = sig(g, k);
        let sol = solve_complete(s).map_err(|e| e.to_string())?;
        let (a, b) = (sol.alpha_bar.value(), sol.beta_bar.value());
        let res = residuals(s, &sol.x0).unwrap().max_norm();
        let identity = (b.cos() - (2.0 * a.cos().powi(2) + 1.0) / 3.0).abs();
        ensure(res < 1e-12, || format!("{s}: residual {res:.2e}"))?;
        ensure(identity < 1e-12, || format!("{s}: cos β̄ identity off by {identity:.2e}"))?;
        ensure(a < b && b < 2.0 * a && 2.0 * a < PI / 3.0, || format!("{s}: ᾱ={a}, β̄={b}"))?;
        worst = worst.max(res).max(identity);
    }
    Ok(format!("5 signatures, worst residual/identity error {worst:.1e}, ᾱ < β̄ < 2ᾱ < π/3"))
}

fn c2_tangent_dimension() -> Outcome {
    let mut details = Vec::new();
    for k in 1..=3 {
        let s = sig(k + 1, k);
        let x0 = solve_complete(s).unwrap().x0;
        let ns = nullspace(&jacobian(s, &x0).unwrap(), 1e-10);
        ensure(ns.nullity() == 2 * k, || format!("{s}: nullity {} ≠ {}", ns.nullity(), 2 * k))?;
        ensure(ns.gap >= 1e6, || format!("{s}: gap {:.2e}", ns.gap))?;
        let d = subspace_distance(&ns.basis, &tangent_basis(s).unwrap().matrix());
        ensure(d < 1e-8, || format!("{s}: subspace distance {d:.2e}"))?;
        let gap = if ns.gap.is_finite() { format!("{:.1e}", ns.gap) } else { "∞".into() };
        details.push(format!("k={k}: nullity {}, gap {gap}, dist {d:.1e}", ns.nullity()));
    }
    Ok(details.join("; "))
}

fn c3_filling_round_trip() -> Outcome {
    let s = sig(2, 1);
    let mut worst = (0.0f64, 0.0f64);
    for (p, q) in [(3, 1), (5, 1), (7, 2), (19, 11), (16, -1)] {
        let x = fill(s, &format!("{p}/{q}"))?;
        let res = residuals(s, &x).unwrap().max_norm();
        let (pc, qc) = dehn_coefficients(&x, 1).unwrap().finite().ok_or("cusp reported complete")?;
        // Coefficients are defined up to a common sign.
        let err =
            ((pc - p as f64).abs().max((qc - q as f64).abs())).min((pc + p as f64).abs().max((qc + q as f64).abs()));
        ensure(res < 1e-10, || format!("{p}/{q}: residual {res:.2e}"))?;
        ensure(err < 1e-9, || format!("{p}/{q}: recovered ({pc}, {qc})"))?;
        worst = (worst.0.max(res), worst.1.max(err));
    }
    Ok(format!("5 slopes, worst residual {:.1e}, worst coefficient error {:.1e}", worst.0, worst.1))
}

fn c4_cusp_ratio_limit() -> Outcome {
    let s = sig(2, 1);
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut errors = Vec::new();
    for n in [10.0, 20.0, 40.0, 80.0] {
        let x = solve_coefficients(s, &[CuspTarget::Coefficients { p: n, q: 0.0 }], &SolveOptions::default())
            .map_err(|e| format!("({n}, 0): {e}"))?;
        let (u, v) = uv(&x, 1).unwrap();
        errors.push((v / u - omega).norm());
    }
    ensure(errors.windows(2).all(|w| w[1] < w[0]), || format!("errors not decreasing: {errors:?}"))?;
    let last = *errors.last().unwrap();
    ensure(last < 1e-2, || format!("final error {last:.3e}"))?;
    let shown: Vec<String> = errors.iter().map(|e| format!("{e:.2e}")).collect();
    Ok(format!("|v/u − ω| for n = 10, 20, 40, 80: {}", shown.join(", ")))
}

fn c5_isolation() -> Outcome {
    let s = sig(3, 2);
    let hex = CuspShape::hexagonal();
    let mut worst = 0.0f64;
    for slope in ["3/1", "5/1", "8/3", "7/-2"] {
        let x = fill(s, &format!("inf,{slope}"))?;
        let shape = cusp_modulus(&x, 1).map_err(|e| format!("{slope}: {e}"))?;
        let d = shape.distance(&hex);
        let c = x.coords();
        let pattern = [(c[0] - c[1]).abs(), (c[1] - c[2]).abs(), (c[6] - c[7]).abs(), (c[7] - c[8]).abs()]
            .into_iter()
            .chain([3, 4, 5, 9, 10, 11].map(|m| (c[m] - PI / 3.0).abs()))
            .fold(0.0f64, f64::max);
        ensure(d < 1e-9, || format!("{slope}: modulus {} off by {d:.2e}", shape.tau))?;
        ensure(pattern < 1e-9, || format!("{slope}: first block deviates by {pattern:.2e}"))?;
        worst = worst.max(d).max(pattern);
    }
    Ok(format!("4 fillings of cusp 2, cusp 1 hexagonal and symmetric to {worst:.1e}"))
}

fn c6_symmetry_equivariance() -> Outcome {
    let s = sig(3, 2);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 20 {
        let mut target = || loop {
            let (p, q): (f64, f64) = (rng.random_range(-60.0..60.0), rng.random_range(-60.0..60.0));
            if p * p + q * q - p * q >= 900.0 {
                return CuspTarget::Coefficients { p, q };
            }
        };
        let targets = [target(), target()];
        let x = solve_coefficients(s, &targets, &SolveOptions::default()).map_err(|e| format!("{targets:?}: {e}"))?;
        for i in 1..=2 {
            let (u, v) = uv(&x, i).unwrap();
            let (ur, vr) = uv(&phi_r(&x, i), i).unwrap();
            let (us, vs) = uv(&phi_s(&x, i), i).unwrap();
            let (p, q) = dehn_coefficients(&x, i).unwrap().finite().unwrap();
            let (pr, qr) = dehn_coefficients(&phi_r(&x, i), i).unwrap().finite().unwrap();
            let (ps, qs) = dehn_coefficients(&phi_s(&x, i), i).unwrap().finite().unwrap();
            let errs = [
                (ur + v).norm(),
                (vr - u - v).norm(),
                (us + u.conj()).norm(),
                (vs - u.conj() - v.conj()).norm(),
                (pr - (p - q)).abs(),
                (qr - p).abs(),
                (ps - (p - q)).abs(),
                (qs + q).abs(),
            ];
            let e = errs.into_iter().fold(0.0f64, f64::max);
            ensure(e < 1e-10, || format!("point {count}, cusp {i}: error {e:.2e}"))?;
            worst = worst.max(e);
        }
        count += 1;
    }
    Ok(format!("20 random points on (3, 2), both cusps, φ(r) and φ(s): worst error {worst:.1e}"))
}

/// Independent brute-force slope orbits: canonical representatives and the
/// generators written out as integer maps.
fn oracle_orbits(max_len_sq: i64) -> BTreeSet<Vec<(i64, i64)>> {
    let canon = |(p, q): (i64, i64)| if p < 0 || (p == 0 && q < 0) { (-p, -q) } else { (p, q) };
    let gcd = |mut a: i64, mut b: i64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    };
    let mut seen = HashSet::new();
    let mut orbits = BTreeSet::new();
    for p in -30..=30i64 {
        for q in -30..=30i64 {
            if gcd(p, q) != 1 || p * p + q * q - p * q > max_len_sq || seen.contains(&canon((p, q))) {
                continue;
            }
            let mut orbit = BTreeSet::from([canon((p, q))]);
            let mut queue = VecDeque::from([canon((p, q))]);
            while let Some((a, b)) = queue.pop_front() {
                for next in [(a - b, a), (a - b, -b)].map(canon) {
                    if orbit.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            seen.extend(orbit.iter().copied());
            orbits.insert(orbit.into_iter().collect());
        }
    }
    orbits
}

fn c7_slope_classification() -> Outcome {
    let oracle = oracle_orbits(400);
    let ours: BTreeSet<Vec<(i64, i64)>> = classify_slopes(400)
        .iter()
        .map(|o| {
            let mut v: Vec<(i64, i64)> = o.slopes.iter().map(|s| (s.p(), s.q())).collect();
            v.sort();
            v
        })
        .collect();
    ensure(ours == oracle, || format!("{} orbits vs {} from brute force", ours.len(), oracle.len()))?;
    for orbit in &oracle {
        let (p, q) = orbit[0];
        let l2 = p * p + q * q - p * q;
        let expected = if l2 == 1 || l2 == 3 { 3 } else { 6 };
        ensure(orbit.len() == expected, || format!("orbit of {p}/{q} (L² = {l2}) has {} slopes", orbit.len()))?;
    }
    let a = SlopeSet::parse(1, "19/11@1").unwrap();
    let b = SlopeSet::parse(1, "16/-1@1").unwrap();
    let same_length = Slope::new(19, 11).unwrap().length_sq() == Slope::new(16, -1).unwrap().length_sq();
    ensure(same_length, || "19/11 and 16/-1 should both have L² = 273".into())?;
    ensure(slope_sets_equivalent(&a, &b, false).unwrap().is_none(), || "19/11 ~ 16/-1".into())?;
    ensure(!oracle.iter().any(|o| o.contains(&(19, 11)) && o.contains(&(16, -1))), || "oracle: same orbit".into())?;
    Ok(format!("{} orbits with L² ≤ 400 match brute force; 19/11 ≁ 16/-1 (both L² = 273)", oracle.len()))
}

fn c8_similarity_count() -> Outcome {
    let bound = similarity_count_bound(3, 2) as usize;
    let count_and_certify = |text: &str| -> Result<usize, String> {
        let a = SlopeSet::parse(3, text).unwrap();
        let sets = enumerate_equivalent_sets(&a).unwrap();
        for b in &sets {
            ensure(slope_sets_equivalent(&a, b, true).unwrap().is_some(), || format!("{b} not certified"))?;
        }
        Ok(sets.len())
    };
    let (s1, s2) = (Slope::new(3, 1).unwrap(), Slope::new(5, 1).unwrap());
    let one = |s: Slope| SlopeSet::new(vec![Some(s)]);
    ensure(slope_sets_equivalent(&one(s1), &one(s2), false).unwrap().is_none(), || "3/1 ~ 5/1".into())?;
    let inequivalent = count_and_certify("3/1@1,5/1@2")?;
    let same_orbit = format!("3/1@1,{}@2", d6_act(D6Element::R, s1));
    let same = count_and_certify(&same_orbit)?;
    let detail = format!(
        "inequivalent 3/1@1,5/1@2 → {inequivalent} sets (all certified); same-orbit {same_orbit} → {same}; bound {bound}"
    );
    if inequivalent == bound {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c9_curve_second_derivative() -> Outcome {
    let mut worst = 0.0f64;
    for (g, k) in [(2, 1), (3, 2)] {
        let s = sig(g, k);
        let h = 1e-3;
        let x0 = varsigma_curve(s, 0.0).unwrap();
        let xp = varsigma_curve(s, h).map_err(|e| e.to_string())?;
        let xm = varsigma_curve(s, -h).map_err(|e| e.to_string())?;
        let (_, second) = varsigma_derivatives(s).unwrap();
        for (m, &expected) in second.iter().enumerate().take(s.dim()) {
            let fd = (xp.coords()[m] - 2.0 * x0.coords()[m] + xm.coords()[m]) / (h * h);
            let err = (fd - expected).abs();
            ensure(err < 1e-4, || format!("{s}: coordinate {} has ẍ = {fd} vs {expected}", m + 1))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("(2, 1) and (3, 2): finite-difference ẍ matches the closed form to {worst:.1e}"))
}

fn c10_non_isolation_witness() -> Outcome {
    let (mut max_first, mut min_second, mut max_closed) = (0.0f64, f64::INFINITY, 0.0f64);
    let mut points = 0;
    for (g, k) in [(2, 1), (3, 2)] {
        let s = sig(g, k);
        for delta in [0u8, 1] {
            for r0 in r0_grid(s, delta, 20, 0.1).unwrap() {
                let inp = varsigma_trace_data(s, delta, r0).unwrap();
                let second = trace_second_derivative(&inp);
                let (first, _) = curve_trace_derivatives(s, delta, r0, 1e-2).map_err(|e| e.to_string())?;
                ensure(first.abs() < 1e-8, || format!("{s} δ={delta} r0={r0}: tr' = {first:.2e}"))?;
                ensure(second.abs() > 1e-6, || format!("{s} δ={delta} r0={r0}: tr'' = {second:.2e}"))?;
                if delta == 0 {
                    let closed = (second - trace_second_derivative_opposite(&inp)).abs();
                    ensure(closed < 1e-10, || format!("{s} r0={r0}: closed form off by {closed:.2e}"))?;
                    max_closed = max_closed.max(closed);
                }
                max_first = max_first.max(first.abs());
                min_second = min_second.min(second.abs());
                points += 1;
            }
        }
    }
    Ok(format!(
        "{points} (signature, δ, r0) points: max |tr'| {max_first:.1e}, min |tr''| {min_second:.3}, δ=0 closed form to {max_closed:.1e}"
    ))
}

fn c11_commensurability() -> Outcome {
    let xs = XkSignature::new(3).unwrap();
    let s = xs.gk();
    let y = fill(s, "1/10,inf,inf")?;
    let (p, q) = dehn_coefficients(&y, 1).unwrap().finite().unwrap();
    let rotated = [y.clone(), theta_r(&y, xs).unwrap(), theta_r2(&y, xs).unwrap()];
    let triples: Vec<_> = rotated.iter().map(|x| abc(x, xs).unwrap()).collect();
    let mut min_sep = f64::INFINITY;
    for i in 0..3 {
        for j in i + 1..3 {
            let d = triples[i].distance(&triples[j]);
            min_sep = min_sep.min(d);
            ensure(d > 1e-6, || format!("triples {i} and {j} separated by {d:.2e}"))?;
            let verdict = commensurable(&rotated[i], &rotated[j], xs, 1e-8).unwrap();
            ensure(verdict == Commensurability::NotCommensurable, || format!("{i} vs {j}: {verdict}"))?;
        }
    }
    let y3 = fill(s, "inf,inf,1/10")?;
    let paired = abc(&y3, xs).unwrap().distance(&triples[0]);
    ensure(paired < 1e-9, || format!("cusp-3 filling differs in (a, b, c) by {paired:.2e}"))?;
    let swapped = tau_13(&y, xs).unwrap().distance(&y3);
    ensure(swapped < 1e-9, || format!("τ₁₃(y) differs from the cusp-3 filling by {swapped:.2e}"))?;
    let verdict = commensurable(&y, &y3, xs, 1e-8).unwrap();
    ensure(verdict == Commensurability::Commensurable, || format!("paired fillings: {verdict}"))?;
    let defect = rotated.iter().chain([&y3]).map(|x| abc_defect(x, xs).unwrap().abs()).fold(0.0f64, f64::max);
    ensure(defect < 1e-10, || format!("a + b + c + 6β − 2π = {defect:.2e}"))?;
    let t = triples[0];
    Ok(format!(
        "X_3 filled 1/10 on cusp 1 (d = ({p:.3}, {q:.3})): (a, b, c) = ({:.6}, {:.6}, {:.6}); min separation {min_sep:.2e}; \
         cusp-3 pair Δ = {paired:.1e}; max angle-sum defect {defect:.1e}",
        t.a, t.b, t.c
    ))
}

fn c12_scalar_invariants() -> Outcome {
    let mut cases: Vec<(GKSignature, String, usize)> = Vec::new();
    for slope in ["3/1", "5/1", "7/2", "19/11", "16/-1"] {
        cases.push((sig(2, 1), slope.into(), 1));
    }
    for slope in ["3/1", "5/1", "8/3", "7/-2"] {
        cases.push((sig(3, 2), format!("inf,{slope}"), 1));
    }
    cases.push((sig(3, 2), "5/1,7/2".into(), 2));
    for (g, k) in [(2, 1), (3, 1), (3, 2), (4, 3), (5, 3)] {
        cases.push((sig(g, k), vec!["inf"; k].join(","), 0));
    }
    for (s, spec, h) in &cases {
        let parsed = FillingSpec::parse(spec).unwrap();
        ensure(parsed.filled_count() == *h, || format!("{spec}: h"))?;
        let rank = homology_rank(*s, *h).unwrap();
        ensure(rank == s.g() + s.k() - h, || format!("{s} {spec}: rank {rank}"))?;
        ensure(heegaard_genus(*s) == s.g() + 1, || format!("{s}: genus"))?;
    }
    let s = sig(2, 1);
    let mut worst = 0.0f64;
    for (p, q) in [(3, 1), (5, 1), (7, 2), (19, 11), (16, -1)] {
        let base = Slope::new(p, q).unwrap();
        let orbit: BTreeSet<Slope> = D6Element::all().map(|e| d6_act(e, base)).collect();
        let lengths = orbit
            .iter()
            .map(|t| Ok(return_path_length(&fill(s, &t.to_string())?).unwrap()))
            .collect::<Result<Vec<f64>, String>>()?;
        let spread = lengths.iter().fold(f64::NEG_INFINITY, |m, &l| m.max(l))
            - lengths.iter().fold(f64::INFINITY, |m, &l| m.min(l));
        ensure(spread < 1e-10, || format!("orbit of {base}: return paths spread {spread:.2e}"))?;
        worst = worst.max(spread);
    }
    Ok(format!(
        "{} specs give rank g+k−h and genus g+1; return path constant on each D6 orbit of the listed slopes to {worst:.1e}",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "complete-solution certification", c1_complete_solution),
        (2, "dimension of the deformation space", c2_tangent_dimension),
        (3, "filling round trip", c3_filling_round_trip),
        (4, "cusp-ratio limit", c4_cusp_ratio_limit),
        (5, "isolation", c5_isolation),
        (6, "symmetry equivariance", c6_symmetry_equivariance),
        (7, "slope classification oracle", c7_slope_classification),
        (8, "similarity count", c8_similarity_count),
        (9, "curve second derivative", c9_curve_second_derivative),
        (10, "non-isolation witness", c10_non_isolation_witness),
        (11, "commensurability trichotomy", c11_commensurability),
        (12, "scalar invariants", c12_scalar_invariants),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => {
                passed += 1;
                println!("criterion {n:>2} PASS  {name} ({secs:.1}s): {detail}");
            }
            Err(detail) => {
                println!("criterion {n:>2} FAIL  {name} ({secs:.1}s): {detail}");
                match KNOWN_UNATTAINABLE.iter().find(|(m, _)| *m == n) {
                    Some((_, why)) => println!("             known: {why}"),
                    None => unexpected.push(n),
                }
            }
        }
    }
    println!("acceptance: {passed}/12 passed");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
