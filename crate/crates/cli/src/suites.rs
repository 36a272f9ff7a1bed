//! Named check suites behind `verify`.

use std::io::Write;

use clap::ValueEnum;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use similattice::algebra::{
    check_generator_relations, circle_inversion, compose_chain, euler_phi, metallic_power, modular_reflections,
    recurrence_sequence, CircleSpec, MetallicMean, MobiusMap,
};
use similattice::conformal::{
    circle_image_check, inverse_stereographic, special_points_of_inverted_polygon, stereographic, MapSpec,
};
use similattice::io::PointSetDocument;
use similattice::quasilattice::{generate_periodic_polygon, point_group_order, verify_self_similarity, LatticeKind};
use similattice::symmetry::{distance3, fixed_point_check, parse_symbol, random_words, Similarity3D, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    SelfSimilarity,
    RotationOrder,
    PowerTables,
    Sequences,
    Mobius,
    Stereographic,
    FixedPoint,
    Space,
    SpecialPoints,
    Totients,
    Relations,
    /// Every suite that needs no input file.
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: impl ToString, bound: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            value: value.to_string(),
            bound: bound.into(),
            pass,
        }
    }

    fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, format!("{value:.3e}"), format!("< {bound:.0e}"), value < bound)
    }
}

#[derive(Debug)]
pub enum SuiteError {
    Usage(String),
    Failed(String),
}

fn failed(e: impl std::fmt::Display) -> SuiteError {
    SuiteError::Failed(e.to_string())
}

pub fn print_table(checks: &[Check], out: &mut dyn Write) -> std::io::Result<()> {
    let w = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(5).max(5);
    let v = checks.iter().map(|c| c.value.chars().count()).max().unwrap_or(5).max(5);
    let b = checks.iter().map(|c| c.bound.chars().count()).max().unwrap_or(5).max(5);
    writeln!(out, "{:<w$}  {:<v$}  {:<b$}  result", "check", "value", "bound")?;
    for c in checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{:<w$}  {:<v$}  {:<b$}  {verdict}", c.name, c.value, c.bound)?;
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    writeln!(out, "{passed}/{} passed", checks.len())
}

pub fn run_suite(
    suite: Suite,
    input: Option<&PointSetDocument>,
    expect: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Check>, SuiteError> {
    let need_input = || input.ok_or_else(|| SuiteError::Usage("this suite needs --input".into()));
    match suite {
        Suite::SelfSimilarity => self_similarity(need_input()?),
        Suite::RotationOrder => Ok(rotation_order(need_input()?, expect)),
        Suite::PowerTables => power_tables(),
        Suite::Sequences => sequences(),
        Suite::Mobius => mobius(rng),
        Suite::Stereographic => Ok(stereographic_suite(rng)),
        Suite::FixedPoint => fixed_point(rng),
        Suite::Space => space(rng),
        Suite::SpecialPoints => special_points(input, expect),
        Suite::Totients => Ok(totients()),
        Suite::Relations => relations(),
        Suite::All => {
            let mut all = Vec::new();
            all.extend(power_tables()?);
            all.extend(sequences()?);
            all.extend(mobius(rng)?);
            all.extend(stereographic_suite(rng));
            all.extend(fixed_point(rng)?);
            all.extend(space(rng)?);
            all.extend(special_points(None, None)?);
            all.extend(totients());
            all.extend(relations()?);
            Ok(all)
        }
    }
}

fn self_similarity(doc: &PointSetDocument) -> Result<Vec<Check>, SuiteError> {
    let set = doc.to_crystal_set().map_err(failed)?;
    let r = verify_self_similarity(&set).map_err(failed)?;
    Ok(vec![
        Check::new(
            format!("inflation by k = {:.6}", r.coefficient),
            format!("contained {} / checked {}", r.contained, r.checked),
            "contained = checked",
            r.all_contained(),
        ),
        Check::below("exact vs scaled embedding", r.max_scale_error, 1e-9),
    ])
}

fn rotation_order(doc: &PointSetDocument, expect: Option<usize>) -> Vec<Check> {
    let m = point_group_order(&doc.plane_points(), doc.tolerance);
    let bound = expect.map_or_else(|| "-".to_string(), |e| format!("= {e}"));
    vec![Check::new("rotation order", m, bound, expect.is_none_or(|e| e == m))]
}

const POWERS: [(MetallicMean, [(i64, i64); 6]); 3] = [
    (MetallicMean::Tau, [(1, 0), (1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]),
    (MetallicMean::Rho, [(1, 0), (2, 1), (5, 2), (12, 5), (29, 12), (70, 29)]),
    (
        MetallicMean::Eta,
        [(1, 0), (2, 2), (6, 4), (16, 12), (44, 32), (120, 88)],
    ),
];

fn power_tables() -> Result<Vec<Check>, SuiteError> {
    let mut checks = Vec::new();
    for (mean, table) in POWERS {
        let mut got = Vec::new();
        for n in 1..=6 {
            got.push(
                metallic_power(mean, n)
                    .and_then(|p| p.in_mean_basis(mean))
                    .map_err(failed)?,
            );
        }
        let s = mean.symbol();
        let shown = got
            .iter()
            .map(|(c, e)| format!("{c}{s}+{e}"))
            .collect::<Vec<_>>()
            .join(", ");
        checks.push(Check::new(format!("{s}^1..{s}^6"), shown, "exact", got == table));
    }
    Ok(checks)
}

const SEQUENCES: [(MetallicMean, &str, &[i64]); 3] = [
    (MetallicMean::Tau, "Fibonacci", &[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]),
    (MetallicMean::Rho, "Pell", &[0, 1, 2, 5, 12, 29, 70, 169, 408, 985]),
    (MetallicMean::Eta, "bronze", &[0, 1, 2, 6, 16, 44, 120, 328, 896, 2448]),
];

fn sequences() -> Result<Vec<Check>, SuiteError> {
    SEQUENCES
        .iter()
        .map(|&(mean, name, expected)| {
            let got = recurrence_sequence(mean, expected.len()).map_err(failed)?;
            Ok(Check::new(
                name,
                format!("{:?}", got.last().unwrap_or(&0)),
                "exact",
                got == expected,
            ))
        })
        .collect()
}

fn random_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Random conformal map with |c| ≥ 0.1 and |ad − bc| ≥ 0.1.
pub fn random_mobius(rng: &mut ChaCha8Rng) -> MobiusMap {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| random_complex(rng, 2.0));
        if c.norm() >= 0.1 && (a * d - b * c).norm() >= 0.1 {
            return MobiusMap::new(a, b, c, d, false).expect("nonzero determinant");
        }
    }
}

/// |w − w'| / max(1, |w|).
fn rel_err(w: Complex64, w2: Complex64) -> f64 {
    (w - w2).norm() / w.norm().max(1.0)
}

fn mobius(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, SuiteError> {
    let mut decomposition = 0.0f64;
    for _ in 0..100 {
        let m = random_mobius(rng);
        let chain = compose_chain(&m.decompose().map_err(failed)?);
        for _ in 0..100 {
            let z = random_complex(rng, 3.0);
            if let (Some(w), Some(w2)) = (m.apply_finite(z), chain.apply_finite(z)) {
                decomposition = decomposition.max(rel_err(w, w2));
            }
        }
    }
    let mut involution = 0.0f64;
    for _ in 0..100 {
        let circle = CircleSpec::centered(rng.gen_range(-3.0..3.0), rng.gen_range(0.5..3.0)).map_err(failed)?;
        let inv = circle_inversion(&circle).map_err(failed)?;
        for _ in 0..100 {
            let z = random_complex(rng, 3.0);
            if let Some(w) = inv.apply_finite(z).and_then(|w| inv.apply_finite(w)) {
                involution = involution.max(rel_err(z, w));
            }
        }
    }
    let mut fit = circle_image_check(
        &MapSpec::Reciprocal,
        &CircleSpec::centered(3.0, 1.0).map_err(failed)?,
        64,
    )
    .map_err(failed)?
    .residual;
    for _ in 0..20 {
        let map = random_mobius(rng);
        let circle = CircleSpec::centered(rng.gen_range(-3.0..3.0), rng.gen_range(0.5..3.0)).map_err(failed)?;
        let pole = map.pole().expect("c != 0");
        let distance = ((pole - circle.center().expect("circle")).norm() - circle.radius().expect("circle")).abs();
        if distance < 0.1 {
            continue;
        }
        let r = circle_image_check(&MapSpec::Mobius { map }, &circle, 64).map_err(failed)?;
        fit = fit.max(r.residual);
    }
    Ok(vec![
        Check::below("four-factor recomposition", decomposition, 1e-12),
        Check::below("double circle inversion", involution, 1e-12),
        Check::below("circle image fit residual", fit, 1e-9),
    ])
}

fn stereographic_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut norm = 0.0f64;
    let mut round_trip = 0.0f64;
    for _ in 0..1000 {
        let z = random_complex(rng, 10.0);
        let p = stereographic(z);
        norm = norm.max((p.norm() - 1.0).abs());
        let back = inverse_stereographic(p)
            .finite()
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        round_trip = round_trip.max(rel_err(z, back));
    }
    let mut coplanar = 0.0f64;
    for _ in 0..50 {
        let circle = CircleSpec::centered(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..3.0)).expect("valid circle");
        let r = circle_image_check(&MapSpec::Stereographic, &circle, 64).expect("enough samples");
        coplanar = coplanar.max(r.residual);
    }
    vec![
        Check::below("unit norm", norm, 1e-12),
        Check::below("inverse round trip", round_trip, 1e-12),
        Check::below("circle image coplanarity", coplanar, 1e-9),
    ]
}

pub const FIXED_POINT_SYMBOLS: [&str; 3] = ["10L(φ=−π/5)", "5L(φ=−2π/5)", "10mL(φ=π/5)"];

fn fixed_point(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, SuiteError> {
    FIXED_POINT_SYMBOLS
        .iter()
        .map(|s| {
            let g = parse_symbol(s).map_err(failed)?;
            let words = random_words(&g, rng, 100, 8);
            Ok(Check::below(
                format!("{s} fixes O"),
                fixed_point_check(&g, &words),
                1e-12,
            ))
        })
        .collect()
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v: Vec3 = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

fn space(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, SuiteError> {
    let center = [0.5, -1.0, 2.0];
    let axis = random_unit(rng);
    let k = rng.gen_range(0.5..2.5);
    let phi = rng.gen_range(-3.0..3.0);
    let m = Similarity3D::homothetic_reflection(k, axis, center).map_err(failed)?;
    let k2 = Similarity3D::homothety(k * k, center).map_err(failed)?;
    let lbar = Similarity3D::spiral_reflection(k, axis, phi, center).map_err(failed)?;
    let l2 = Similarity3D::spiral(k * k, axis, 2.0 * phi, center).map_err(failed)?;
    let (mut em, mut el) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let p: Vec3 = [0; 3].map(|_| rng.gen_range(-3.0..3.0));
        em = em.max(distance3(m.apply(m.apply(p)), k2.apply(p)));
        el = el.max(distance3(lbar.apply(lbar.apply(p)), l2.apply(p)));
    }
    let sq = lbar.squared();
    let params = sq.k() == k * k && (sq.phi() - l2.phi()).abs() < 1e-15 && !sq.reflects();
    Ok(vec![
        Check::below("M² = K² pointwise", em, 1e-12),
        Check::below("L̄² = L² pointwise", el, 1e-12),
        Check::new(
            "L̄² parameters (k², 2φ)",
            format!("k = {:.6}, φ = {:.6}", sq.k(), sq.phi()),
            "exact",
            params,
        ),
    ])
}

fn special_points(input: Option<&PointSetDocument>, expect: Option<usize>) -> Result<Vec<Check>, SuiteError> {
    let (points, tol) = match input {
        Some(doc) => (doc.plane_points(), doc.tolerance),
        None => {
            let set = generate_periodic_polygon(LatticeKind::Square, 4).map_err(failed)?;
            (set.embedded().to_vec(), set.tolerance())
        }
    };
    let sp = special_points_of_inverted_polygon(&points, tol).map_err(failed)?;
    let expected = expect.unwrap_or(sp.rows);
    Ok(vec![Check::new(
        "special points of the inverted set",
        sp.count,
        format!("= {expected}"),
        sp.count == expected,
    )])
}

fn totients() -> Vec<Check> {
    [(14, 6), (16, 8), (18, 6)]
        .iter()
        .map(|&(n, e)| {
            let v = euler_phi(n);
            Check::new(format!("φ({n})"), v, format!("= {e}"), v == e)
        })
        .collect()
}

fn relations() -> Result<Vec<Check>, SuiteError> {
    let gens = modular_reflections();
    let reports =
        check_generator_relations(&gens, &["R1^2", "R2^2", "R3^2", "(R1R2)^3", "(R1R3)^2"]).map_err(failed)?;
    Ok(reports
        .into_iter()
        .map(|r| Check::new(format!("{} = ±E", r.word), format!("{:?}", r.product), "±E", r.holds))
        .collect())
}
