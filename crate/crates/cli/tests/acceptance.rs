//! Acceptance criteria AC01–AC11, one PASS/FAIL line each.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use similattice::algebra::{
    circle_inversion, compose_chain, euler_phi, metallic_power, recurrence_sequence, CircleSpec, MetallicMean,
    MobiusMap,
};
use similattice::conformal::{
    circle_image_check, inverse_stereographic, map_set, special_points_of_inverted_square, stereographic, MapSpec,
};
use similattice::io::{PointSetDocument, TilingDocument};
use similattice::quasilattice::{
    generate_periodic, generate_periodic_polygon, generate_quasilattice, point_group_order, verify_self_similarity,
    LatticeKind,
};
use similattice::symmetry::{distance3, fixed_point_check, parse_symbol, random_words, Similarity3D};

const SEED: u64 = 20240607;

/// Outcome of one criterion: pass flag and a short measurement.
type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn rel_err(w: Complex64, w2: Complex64) -> f64 {
    (w - w2).norm() / w.norm().max(1.0)
}

fn random_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn ac01_power_tables() -> Outcome {
    // c·mean + e for powers 1..6
    let tables = [
        (MetallicMean::Tau, [(1, 0), (1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]),
        (MetallicMean::Rho, [(1, 0), (2, 1), (5, 2), (12, 5), (29, 12), (70, 29)]),
        (
            MetallicMean::Eta,
            [(1, 0), (2, 2), (6, 4), (16, 12), (44, 32), (120, 88)],
        ),
    ];
    let mut mismatches = 0;
    for (mean, table) in tables {
        for (n, expected) in (1..=6).zip(table) {
            let got = metallic_power(mean, n).unwrap().in_mean_basis(mean).unwrap();
            if got != expected {
                mismatches += 1;
            }
        }
    }
    (mismatches == 0, format!("{} of 18 entries differ", mismatches))
}

fn ac02_sequences() -> Outcome {
    let expected: [(MetallicMean, &[i64]); 3] = [
        (MetallicMean::Tau, &[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]),
        (MetallicMean::Rho, &[0, 1, 2, 5, 12, 29, 70, 169, 408, 985]),
        (MetallicMean::Eta, &[0, 1, 2, 6, 16, 44, 120, 328, 896, 2448]),
    ];
    let ok = expected
        .iter()
        .all(|(m, seq)| recurrence_sequence(*m, seq.len()).unwrap() == *seq);
    (ok, "Fibonacci, Pell, bronze prefixes".into())
}

fn ac03_self_similarity() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [5, 8, 10, 12] {
        let set = generate_quasilattice(n, 1, 2.0, 1e-9).unwrap();
        let r = verify_self_similarity(&set).unwrap();
        ok &= r.all_contained() && r.checked > 0;
        parts.push(format!("n={n} {}/{} k={:.6}", r.contained, r.checked, r.coefficient));
    }
    let square = generate_periodic(LatticeKind::Square, 4.0).unwrap();
    let r = verify_self_similarity(&square).unwrap();
    ok &= r.all_contained() && r.coefficient == 2.0;
    parts.push(format!("square {}/{} k={}", r.contained, r.checked, r.coefficient));
    (ok, parts.join("; "))
}

fn ac04_rotation_halving() -> Outcome {
    let cases = [
        ("square", generate_periodic(LatticeKind::Square, 4.0).unwrap(), 4, 2),
        (
            "hexagonal",
            generate_periodic(LatticeKind::Hexagonal, 4.0).unwrap(),
            6,
            3,
        ),
        ("D14", generate_quasilattice(14, 1, 2.0, 1e-9).unwrap(), 14, 7),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, set, before, after) in cases {
        let image = map_set(&MapSpec::Square, &set);
        let b = set.point_group_order();
        let a = point_group_order(image.points.plane().unwrap(), 1e-9);
        ok &= b == before && a == after;
        parts.push(format!("{name} {b}->{a}"));
    }
    (ok, parts.join(", "))
}

fn ac05_mobius() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut recomposition = 0.0f64;
    let mut maps = 0;
    while maps < 100 {
        let [a, b, c, d] = [0; 4].map(|_| random_complex(&mut rng, 2.0));
        if c.norm() < 0.1 || (a * d - b * c).norm() < 0.1 {
            continue;
        }
        maps += 1;
        let m = MobiusMap::new(a, b, c, d, false).unwrap();
        let chain = compose_chain(&m.decompose().unwrap());
        for _ in 0..100 {
            let z = random_complex(&mut rng, 3.0);
            if let (Some(w), Some(w2)) = (m.apply_finite(z), chain.apply_finite(z)) {
                recomposition = recomposition.max(rel_err(w, w2));
            }
        }
    }
    let mut involution = 0.0f64;
    for _ in 0..100 {
        let circle = CircleSpec::centered(rng.gen_range(-3.0..3.0), rng.gen_range(0.5..3.0)).unwrap();
        let inv = circle_inversion(&circle).unwrap();
        for _ in 0..100 {
            let z = random_complex(&mut rng, 3.0);
            if let Some(w) = inv.apply_finite(z).and_then(|w| inv.apply_finite(w)) {
                involution = involution.max(rel_err(z, w));
            }
        }
    }
    let fit = circle_image_check(&MapSpec::Reciprocal, &CircleSpec::centered(3.0, 1.0).unwrap(), 64)
        .unwrap()
        .residual;
    (
        recomposition < 1e-12 && involution < 1e-12 && fit < 1e-9,
        format!("recomposition {recomposition:.2e} < 1e-12, involution {involution:.2e} < 1e-12, fit {fit:.2e} < 1e-9"),
    )
}

fn ac06_stereographic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let (mut norm, mut round_trip) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let z = random_complex(&mut rng, 10.0);
        let p = stereographic(z);
        norm = norm.max((p.norm() - 1.0).abs());
        round_trip = round_trip.max(rel_err(z, inverse_stereographic(p).finite().unwrap()));
    }
    let mut coplanar = 0.0f64;
    for _ in 0..50 {
        let circle = CircleSpec::centered(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..3.0)).unwrap();
        coplanar = coplanar.max(
            circle_image_check(&MapSpec::Stereographic, &circle, 64)
                .unwrap()
                .residual,
        );
    }
    (
        norm < 1e-12 && round_trip < 1e-12 && coplanar < 1e-9,
        format!("norm {norm:.2e} < 1e-12, round trip {round_trip:.2e} < 1e-12, coplanarity {coplanar:.2e} < 1e-9"),
    )
}

fn ac07_fixed_point() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut worst = 0.0f64;
    for symbol in ["10L(φ=−π/5)", "5L(φ=−2π/5)", "10mL(φ=π/5)"] {
        let g = parse_symbol(symbol).unwrap();
        let words = random_words(&g, &mut rng, 100, 8);
        worst = worst.max(fixed_point_check(&g, &words));
    }
    (worst < 1e-12, format!("max displacement of O {worst:.2e} < 1e-12"))
}

fn ac08_space() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let center = [0.5, -1.0, 2.0];
    let axis = {
        let v = [0.3f64, -0.4, 0.866];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        v.map(|x| x / n)
    };
    let (k, phi) = (MetallicMean::Tau.value(), -std::f64::consts::PI / 5.0);
    let m = Similarity3D::homothetic_reflection(k, axis, center).unwrap();
    let k2 = Similarity3D::homothety(k * k, center).unwrap();
    let lbar = Similarity3D::spiral_reflection(k, axis, phi, center).unwrap();
    let l2 = Similarity3D::spiral(k * k, axis, 2.0 * phi, center).unwrap();
    let (mut em, mut el) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let p = [0; 3].map(|_| rng.gen_range(-3.0..3.0));
        em = em.max(distance3(m.apply(m.apply(p)), k2.apply(p)));
        el = el.max(distance3(lbar.apply(lbar.apply(p)), l2.apply(p)));
    }
    let (sm, sl) = (m.squared(), lbar.squared());
    let params = sm.k() == k * k
        && sm.phi() == 0.0
        && !sm.reflects()
        && sl.k() == k * k
        && (sl.phi() - 2.0 * phi).abs() < 1e-15
        && !sl.reflects();
    (
        em < 1e-12 && el < 1e-12 && params,
        format!("M²−K² {em:.2e}, L̄²−L² {el:.2e} < 1e-12, parameters exact: {params}"),
    )
}

fn ac09_special_points() -> Outcome {
    let set = generate_periodic_polygon(LatticeKind::Square, 4).unwrap();
    let sp = special_points_of_inverted_square(&set).unwrap();
    (sp.count == 4, format!("{} special points, expected 4", sp.count))
}

fn ac10_totients() -> Outcome {
    let got = [euler_phi(14), euler_phi(16), euler_phi(18)];
    (got == [6, 8, 6], format!("φ(14), φ(16), φ(18) = {got:?}"))
}

fn run_cli(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = similattice_cli::run_with(args.iter().copied(), &mut out, &mut err);
    if code != 0 {
        eprintln!("{}", String::from_utf8_lossy(&err));
    }
    code
}

fn pipeline(dir: &Path) -> Vec<Vec<u8>> {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let steps: [&[&str]; 5] = [
        &[
            "similattice",
            "generate",
            "--kind",
            "quasilattice",
            "--n",
            "10",
            "--radius",
            "3",
            "-o",
            &p("q.json"),
        ],
        &[
            "similattice",
            "transform",
            "--map",
            "inversion",
            "-i",
            &p("q.json"),
            "-o",
            &p("inv.json"),
        ],
        &[
            "similattice",
            "--seed",
            "7",
            "orbit",
            "--symbol",
            "10L(φ=−π/5)",
            "--count",
            "3",
            "-o",
            &p("orbit.json"),
        ],
        &[
            "similattice",
            "tile",
            "-i",
            &p("q.json"),
            "--scheme",
            "two_checker",
            "-o",
            &p("t.json"),
        ],
        &["similattice", "render", "--tiling", &p("t.json"), "-o", &p("t.svg")],
    ];
    for step in steps {
        assert_eq!(run_cli(step), 0, "{step:?}");
    }
    ["q.json", "inv.json", "orbit.json", "t.json", "t.svg"]
        .iter()
        .map(|f| fs::read(dir.join(f)).unwrap())
        .collect()
}

fn ac11_determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = pipeline(a.path());
    let identical = first == pipeline(b.path());

    let points_text = String::from_utf8(first[0].clone()).unwrap();
    let doc = PointSetDocument::from_json(&points_text).unwrap();
    let rewritten = a.path().join("q2.json");
    doc.write(&rewritten).unwrap();
    let points_rt = PointSetDocument::read(&rewritten).unwrap() == doc && fs::read(&rewritten).unwrap() == first[0];

    let tiling = TilingDocument::from_json(std::str::from_utf8(&first[3]).unwrap()).unwrap();
    let tiling_rt =
        TilingDocument::from_json(&tiling.to_json()).unwrap() == tiling && tiling.to_json().as_bytes() == first[3];

    let svg = std::str::from_utf8(&first[4]).unwrap();
    let circles = svg.matches("<circle").count();
    let lines = svg.matches("<line").count();
    let counts = circles == tiling.vertices.len() && lines == tiling.edges.len();
    (
        identical && points_rt && tiling_rt && counts,
        format!(
            "reruns identical: {identical}, point JSON round trip: {points_rt}, tiling JSON round trip: {tiling_rt}, \
             SVG {circles} circles / {} points, {lines} lines / {} edges",
            tiling.vertices.len(),
            tiling.edges.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC01 power tables", ac01_power_tables),
        ("AC02 recurrence sequences", ac02_sequences),
        ("AC03 self-similarity", ac03_self_similarity),
        ("AC04 rotation-order halving", ac04_rotation_halving),
        ("AC05 Möbius algebra", ac05_mobius),
        ("AC06 stereographic projection", ac06_stereographic),
        ("AC07 fixed point", ac07_fixed_point),
        ("AC08 3D identities", ac08_space),
        ("AC09 special points", ac09_special_points),
        ("AC10 Euler totients", ac10_totients),
        ("AC11 determinism and round trip", ac11_determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let (pass, detail) = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(outcome) => outcome,
            Err(_) => (false, "panicked".to_string()),
        };
        if !pass {
            failures += 1;
        }
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
