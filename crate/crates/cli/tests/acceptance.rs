//! Acceptance sweep: every criterion the deliverable must meet, one test per
//! criterion, each ending in a single PASS line (or an assertion that names
//! the failed criterion). Run with `--nocapture` to see the PASS lines.

use std::fs;
use std::path::Path;

use conemorse_cli::{morse_pipeline, parse_scenario, MorsePipelineOutput, Scenario};
use conemorse_core::cone::ConeSurface;
use conemorse_core::geodesic::{enumerate_all, enumerate_classical, GeodesicKind};
use conemorse_core::morse::{epsilon_independent, lemma_pl_check};
use conemorse_core::oracle::{
    exhaustive_relative_betti, grid_shortest_per_sheet, random_generic_scenario, seeded_complex,
    GridSpec,
};
use conemorse_core::path::{
    classify_limit, flow_to_critical, sample_paths, DiscretePath, LimitClass, SampleStrategy,
};
use conemorse_core::series::FormalSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scenario(name: &str) -> Scenario {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name);
    parse_scenario(&fs::read_to_string(path).expect("scenario file")).expect("scenario parses")
}

fn run_morse(name: &str) -> MorsePipelineOutput {
    morse_pipeline(&scenario(name)).expect("pipeline runs")
}

#[test]
fn criterion_1_plane_indices() {
    let out = run_morse("plane.scn");
    let straight = out
        .report
        .levels
        .iter()
        .find(|l| (l.energy - 2.0).abs() < 1e-9)
        .expect("FAIL criterion-1: no level at energy 2");
    assert_eq!(
        straight.index,
        FormalSeries::one(),
        "FAIL criterion-1: straight-line index is not 1"
    );
    let broken = out
        .report
        .levels
        .iter()
        .find(|l| (l.energy - 4.0).abs() < 1e-9)
        .expect("FAIL criterion-1: no level at energy 4");
    assert_eq!(
        broken.index,
        FormalSeries::zero(),
        "FAIL criterion-1: broken-path index is not 0"
    );
    let broken_row = out
        .report
        .geodesics
        .iter()
        .find(|g| (g.energy - 4.0).abs() < 1e-9)
        .expect("FAIL criterion-1: broken geodesic missing from report");
    assert_eq!(
        broken_row.multiplicity,
        Some(0),
        "FAIL criterion-1: broken-path multiplicity is not 0"
    );
    assert_eq!(
        out.report.quotient,
        Some(FormalSeries::zero()),
        "FAIL criterion-1: quotient is not 0"
    );
    println!("PASS criterion-1: plane indices i(straight)=1, i(broken)=0, mult=0, Q=0");
}

#[test]
fn criterion_2_cone_enumeration_and_merges() {
    let scn = scenario("cone.scn");
    assert!(
        scn.samples >= 200,
        "FAIL criterion-2: scenario uses fewer than 200 samples"
    );
    let out = morse_pipeline(&scn).expect("pipeline runs");
    let mut classical: Vec<(i64, f64)> = Vec::new();
    let mut broken_energy = None;
    for g in &out.enumeration {
        match g.kind {
            GeodesicKind::Classical { sheet } => classical.push((sheet, g.energy)),
            GeodesicKind::Broken => broken_energy = Some(g.energy),
        }
    }
    assert_eq!(
        classical.len(),
        4,
        "FAIL criterion-2: expected 4 classical geodesics"
    );
    let closed = |delta: f64| 2.0 - 2.0 * delta.cos();
    let alpha = std::f64::consts::FRAC_PI_2;
    let delta0 = std::f64::consts::PI / 5.0;
    for (sheet, energy) in &classical {
        let want = closed(delta0 + *sheet as f64 * alpha);
        assert!(
            (energy - want).abs() <= 1e-9,
            "FAIL criterion-2: sheet {sheet} energy {energy} differs from closed form {want}"
        );
    }
    assert_eq!(
        broken_energy,
        Some(4.0),
        "FAIL criterion-2: broken energy is not exactly 4"
    );
    let deaths = out.pairs.positive_deaths_in(4.0 - 0.2, 4.0 + 0.2);
    assert_eq!(
        deaths, 3,
        "FAIL criterion-2: expected exactly 3 merge deaths in 4 ± 0.2"
    );
    let broken_row = out
        .report
        .geodesics
        .iter()
        .find(|g| (g.energy - 4.0).abs() < 1e-9)
        .expect("FAIL criterion-2: broken geodesic missing from report");
    let mult = broken_row.multiplicity;
    assert_eq!(
        mult,
        Some(3),
        "FAIL criterion-2: broken-path multiplicity is not 3"
    );
    assert!(
        mult.unwrap() as usize >= classical.len() - 1,
        "FAIL criterion-2: multiplicity below n-1"
    );
    println!(
        "PASS criterion-2: cone enumeration (4 classical within 1e-9, broken exactly 4), \
         3 merge deaths in 4 ± 0.2, mult 3 >= n-1"
    );
}

#[test]
fn criterion_3_morse_relation_on_both_scenarios() {
    for name in ["plane.scn", "cone.scn"] {
        let out = run_morse(name);
        assert!(
            out.report.holds(),
            "FAIL criterion-3: relation violated on {name}: {:?}",
            out.report.violations
        );
        let q = out
            .report
            .quotient
            .as_ref()
            .unwrap_or_else(|| panic!("FAIL criterion-3: no nonnegative quotient on {name}"));
        let diff = out
            .report
            .total_index
            .sub_checked(&out.report.space_series)
            .unwrap_or_else(|_| panic!("FAIL criterion-3: total below space on {name}"));
        let recomputed = diff
            .divide_one_plus_lambda()
            .unwrap_or_else(|_| panic!("FAIL criterion-3: division leaves a remainder on {name}"));
        assert_eq!(
            &recomputed, q,
            "FAIL criterion-3: quotient does not match (total - space) / (1+λ) on {name}"
        );
    }
    println!("PASS criterion-3: Morse relation holds with nonnegative Q on plane and cone");
}

#[test]
fn criterion_4_epsilon_independence() {
    for name in ["plane.scn", "cone.scn"] {
        let out = run_morse(name);
        let levels: Vec<f64> = out.report.levels.iter().map(|l| l.energy).collect();
        for level in &levels {
            let same = epsilon_independent(&out.complex, &levels, *level, 0.2, 0.1)
                .expect("strips are clean");
            assert!(
                same,
                "FAIL criterion-4: index at level {level} of {name} depends on ε"
            );
        }
    }
    println!("PASS criterion-4: indices agree for ε ∈ {{0.2, 0.1}} at every level, both scenarios");
}

#[test]
fn criterion_5_subadditivity_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(905);
    for case in 0..100 {
        let complex = seeded_complex(&mut rng, 12);
        let mut cuts = [
            rng.random_range(-0.1..2.1),
            rng.random_range(-0.1..2.1),
            rng.random_range(-0.1..2.1),
        ];
        cuts.sort_by(f64::total_cmp);
        let [a, b, c] = cuts;
        assert!(
            lemma_pl_check(&complex, a, b, c).expect("ordered levels"),
            "FAIL criterion-5: subadditivity fails on case {case} at cuts {cuts:?}"
        );
        for (upper, lower) in [(c, b), (b, a), (c, a)] {
            let series = complex.poincare_pair(upper, lower).expect("valid pair");
            let exact = exhaustive_relative_betti(&complex, upper, lower).expect("small pair");
            assert_eq!(
                [series.coeff(0) as usize, series.coeff(1) as usize],
                exact,
                "FAIL criterion-5: rank mismatch vs exhaustive reduction on case {case}"
            );
        }
    }
    println!("PASS criterion-5: subadditivity and exhaustive rank agreement on 100 random complexes");
}

#[test]
fn criterion_6_grid_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(906);
    let spec = GridSpec::isotropic(1e-3).expect("valid step");
    for case in 0..20 {
        let gen = random_generic_scenario(&mut rng);
        let classical = enumerate_classical(gen.surface, gen.p, gen.q).expect("enumeration");
        let sheets = grid_shortest_per_sheet(gen.surface, gen.p, gen.q, spec).expect("grid");
        let broken_len = gen.p.r() + gen.q.r();
        let matched = sheets
            .iter()
            .filter(|s| s.length < broken_len * (1.0 - 0.02))
            .count();
        assert_eq!(
            matched,
            classical.len(),
            "FAIL criterion-6: case {case} grid count {matched} vs enumerated {}",
            classical.len()
        );
        for g in &classical {
            let GeodesicKind::Classical { sheet } = g.kind else {
                unreachable!()
            };
            let grid = sheets
                .iter()
                .find(|s| s.sheet == sheet)
                .unwrap_or_else(|| panic!("FAIL criterion-6: case {case} missing sheet {sheet}"));
            let rel = (grid.length - g.length) / g.length;
            assert!(
                (-1e-9..0.01).contains(&rel),
                "FAIL criterion-6: case {case} sheet {sheet} length off by {rel}"
            );
        }
    }
    println!("PASS criterion-6: grid oracle matches count exactly and lengths within 1% on 20 scenarios");
}

#[test]
fn criterion_7_flow_soundness() {
    let plane = scenario("plane.scn");
    let cone = scenario("cone.scn");
    let mut converged = 0usize;
    let mut classified = 0usize;
    for scn in [&plane, &cone] {
        let (p, q) = scn.endpoints();
        let surface = ConeSurface::new(scn.alpha).expect("valid angle");
        let geos = enumerate_all(surface, p, q).expect("enumeration");
        let starts = sample_paths(
            surface,
            p,
            q,
            64,
            500,
            SampleStrategy::Perturbed { amplitude: 0.4 },
            scn.seed,
        )
        .expect("sampling");
        for start in &starts {
            let flow = flow_to_critical(start, 1e-10, scn.max_sweeps).expect("flow runs");
            for w in flow.energy_trace.windows(2) {
                assert!(
                    w[1] <= w[0],
                    "FAIL criterion-7: energy rose from {} to {}",
                    w[0],
                    w[1]
                );
            }
            if flow.converged {
                converged += 1;
                if !matches!(
                    classify_limit(&flow.path, &geos, 1e-6),
                    LimitClass::Unresolved
                ) {
                    classified += 1;
                }
            }
        }
    }
    assert!(converged > 0, "FAIL criterion-7: nothing converged");
    let rate = classified as f64 / converged as f64;
    assert!(
        rate >= 0.99,
        "FAIL criterion-7: only {classified}/{converged} converged limits classified"
    );
    println!(
        "PASS criterion-7: 1000 flows monotone, {classified}/{converged} converged limits classified"
    );
}

#[test]
fn criterion_8_minimizer_reached_from_chord_start() {
    for name in ["plane.scn", "cone.scn"] {
        let scn = scenario(name);
        let (p, q) = scn.endpoints();
        let surface = ConeSurface::new(scn.alpha).expect("valid angle");
        let geos = enumerate_all(surface, p, q).expect("enumeration");
        let min_energy = geos
            .iter()
            .map(|g| g.energy)
            .fold(f64::INFINITY, f64::min);
        let direct_sheet = enumerate_classical(surface, p, q)
            .expect("enumeration")
            .iter()
            .filter_map(|g| match g.kind {
                GeodesicKind::Classical { sheet } => {
                    Some((g.development_angle.unwrap_or(f64::INFINITY).abs(), sheet))
                }
                GeodesicKind::Broken => None,
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("at least one chord sheet")
            .1;
        let start = DiscretePath::chord_interpolation(surface, p, q, direct_sheet, 64)
            .expect("chord start");
        let flow = flow_to_critical(&start, 1e-10, scn.max_sweeps).expect("flow runs");
        assert!(flow.converged, "FAIL criterion-8: flow did not converge");
        let energy = flow.path.discrete_energy();
        let rel = (energy - min_energy).abs() / min_energy;
        assert!(
            rel <= 1e-6,
            "FAIL criterion-8: {name} reached {energy}, minimum is {min_energy} (rel {rel})"
        );
    }
    println!("PASS criterion-8: chord-start flows reach the minimal energy within 1e-6 relative");
}
