//! End-to-end acceptance suite. Each test prints exactly one
//! "criterion N: PASS/FAIL" line; run with --nocapture to see them all.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use num_traits::One;

use vk::constructions::{
    commutator_word, k0, magnus_expansion, suspend_embedding, telescope, telescope_embedding,
    vk_flores_complex, CommutatorKind, MarkedComplex,
};
use vk::expander::{
    edge_expansion_exact, graph_distortion, random_regular_graph, scaling_experiment,
    spectral_gap, EmbeddedGraph, MetricGraph,
};
use vk::geometry::{
    gauss_linking_pl, generic_linear_map, linking_number, normalize_to_unit_ball, rat, rat_to_f64,
    simplex_volume, thickness, PLEmbedding, Rat,
};
use vk::obstruction::{
    class_invariance_check, embeddability_verdict, rc_lower_bound_from_linking, Verdict,
};
use vk::{DeletedProduct, SimplicialComplex};

fn verdict_seeds() -> Vec<u64> {
    (0..16u64).collect()
}

fn golden_complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("flores-{n}"), vk_flores_complex(n)));
    }
    for n in 1..=3 {
        out.push((format!("k0-{n}"), k0(n).complex));
    }
    out
}

/// Telescope embeddings are the expensive shared fixture; build each level
/// once across all criteria.
fn telescope_level(l: usize) -> &'static (MarkedComplex, PLEmbedding) {
    static LEVELS: OnceLock<Vec<OnceLock<(MarkedComplex, PLEmbedding)>>> = OnceLock::new();
    let levels = LEVELS.get_or_init(|| (0..=6).map(|_| OnceLock::new()).collect());
    levels[l].get_or_init(|| {
        let e = telescope_embedding(l, &rat(1, 2)).expect("telescope embedding");
        (telescope(l), e)
    })
}

fn check(criterion: usize, body: impl FnOnce() -> Result<String, String>) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    match outcome {
        Ok(Ok(detail)) => println!("criterion {criterion}: PASS - {detail}"),
        Ok(Err(detail)) => {
            println!("criterion {criterion}: FAIL - {detail}");
            panic!("criterion {criterion} failed: {detail}");
        }
        Err(cause) => {
            let msg = cause
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| cause.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            println!("criterion {criterion}: FAIL - {msg}");
            panic!("criterion {criterion} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_obstruction_soundness() {
    check(1, || {
        let start = Instant::now();
        let seeds = verdict_seeds();
        for n in 1..=3usize {
            let cert = embeddability_verdict(&vk_flores_complex(n), &seeds)
                .map_err(|e| format!("flores n={n}: {e}"))?;
            if cert.verdict != Verdict::NonEmbeddable {
                return Err(format!("flores n={n}: verdict {:?}", cert.verdict));
            }
        }
        for n in 1..=3usize {
            let cert = embeddability_verdict(&k0(n).complex, &seeds)
                .map_err(|e| format!("k0 n={n}: {e}"))?;
            if !cert.solvable_mod2 || cert.integer_solution.is_none() {
                return Err(format!(
                    "k0 n={n}: obstruction did not vanish (mod2 {}, integral {})",
                    cert.solvable_mod2,
                    cert.integer_solution.is_some()
                ));
            }
        }
        let secs = start.elapsed().as_secs_f64();
        if secs >= 60.0 {
            return Err(format!("runtime {secs:.1}s exceeds 60s"));
        }
        Ok(format!(
            "flores 1..3 non-embeddable, k0 1..3 vanishing, {secs:.1}s"
        ))
    });
}

#[test]
fn criterion_02_class_invariance() {
    check(2, || {
        let mut runs = 0;
        for (name, k) in golden_complexes() {
            for i in 0..5u64 {
                let ok = class_invariance_check(&k, 1000 + i, 2000 + 7 * i)
                    .map_err(|e| format!("{name} pair {i}: {e}"))?;
                if !ok {
                    return Err(format!("{name} pair {i}: difference not a coboundary"));
                }
                runs += 1;
            }
        }
        Ok(format!("{runs}/{runs} seed pairs integrally cohomologous"))
    });
}

#[test]
fn criterion_03_exponential_linking() {
    check(3, || {
        for l in 0..=6usize {
            let (t, e) = telescope_level(l);
            let lk = linking_number(&t.sphere1.realize(e), &t.sphere2.realize(e), 4, 2)
                .map_err(|err| format!("l={l}: {err}"))?;
            if lk.abs() != 1i64 << l {
                return Err(format!("l={l}: cone linking {lk}, want +/-{}", 1i64 << l));
            }
        }
        // Gauss quadrature at resolution 48 per cell
        for l in 0..=3usize {
            let (t, e) = telescope_level(l);
            let est = gauss_linking_pl(&t.sphere1.realize(e), &t.sphere2.realize(e), 48)
                .map_err(|err| format!("l={l}: {err}"))?;
            let diff = (est.value - (1i64 << l) as f64).abs();
            if diff > 0.05 {
                return Err(format!("l={l}: gauss {:.4}, off by {diff:.4}", est.value));
            }
        }
        Ok("|Lk| = 2^l exactly for l=0..6; Gauss within 0.05 for l<=3 at resolution 48".into())
    });
}

#[test]
fn criterion_04_thickness_bound() {
    check(4, || {
        for l in 1..=5usize {
            let (_, e) = telescope_level(l);
            let n = normalize_to_unit_ball(e).map_err(|err| format!("l={l}: {err}"))?;
            let report = thickness(&n, true).map_err(|err| format!("l={l}: {err}"))?;
            let d2 = report
                .min_distance_sq
                .clone()
                .ok_or_else(|| format!("l={l}: no vertex-disjoint pair"))?;
            // T <= 2^(-l/9) / sqrt(2)  <=>  (T^2)^9 <= 2^(-2l-9), exactly
            let mut lhs = Rat::one();
            for _ in 0..9 {
                lhs *= &d2;
            }
            let rhs = Rat::new(1.into(), num_bigint::BigInt::one() << (2 * l + 9));
            if lhs > rhs {
                return Err(format!("l={l}: thickness {:.3e} above bound", report.distance()));
            }
        }
        Ok("T <= 2^(-l/9)/sqrt(2) for l=1..5, exact rational comparison".into())
    });
}

#[test]
fn criterion_05_rc_lower_bound() {
    check(5, || {
        for l in 0..=6usize {
            let (t, e) = telescope_level(l);
            let lk = linking_number(&t.sphere1.realize(e), &t.sphere2.realize(e), 4, 2)
                .map_err(|err| format!("l={l}: {err}"))?;
            let got = rc_lower_bound_from_linking(lk.unsigned_abs());
            let want = (2f64.powf(l as f64 / 2.0)).ceil() as u64;
            if got != want {
                return Err(format!("l={l}: rc bound {got}, want ceil(2^(l/2)) = {want}"));
            }
        }
        let seeds = verdict_seeds();
        for n in 1..=3usize {
            let cert = embeddability_verdict(&k0(n).complex, &seeds)
                .map_err(|e| format!("k0 n={n}: {e}"))?;
            let report = cert.report();
            let l1 = report
                .solution_l1_norm
                .ok_or_else(|| format!("k0 n={n}: no integral solution"))?;
            if cert.finger_move_bound == 0 && l1 > 0.0 {
                return Err(format!("k0 n={n}: zero bound with nonzero solution"));
            }
            if (cert.finger_move_bound as f64) < l1 {
                return Err(format!(
                    "k0 n={n}: finger-move bound {} below solution l1 norm {l1}",
                    cert.finger_move_bound
                ));
            }
        }
        Ok("rc bound = ceil(2^(l/2)) for l=0..6; finite finger-move bound dominates solution norms on k0 1..3".into())
    });
}

#[test]
fn criterion_06_suspension() {
    check(6, || {
        let half = rat(1, 2);
        for l in 0..=3usize {
            let (t, e) = telescope_level(l);
            let want = 1i64 << l;
            let base = {
                let n = normalize_to_unit_ball(e).map_err(|err| format!("l={l}: {err}"))?;
                PLEmbedding::new(
                    n.complex.clone(),
                    n.dim_ambient,
                    n.coords.iter().map(|p| p.scale(&half)).collect(),
                )
            };
            let n1 = base.complex.num_vertices;
            let s5 = suspend_embedding(&base).map_err(|err| format!("l={l}: {err}"))?;
            let sus2 = t.sphere2.suspend(n1, n1 + 1);
            let lk5 = linking_number(&t.sphere1.realize(&s5), &sus2.realize(&s5), 5, 2)
                .map_err(|err| format!("l={l}: {err}"))?;
            if lk5.abs() != want {
                return Err(format!("l={l}: |Lk| in R5 is {}, want {want}", lk5.abs()));
            }
            let base2 = PLEmbedding::new(
                s5.complex.clone(),
                s5.dim_ambient,
                s5.coords.iter().map(|p| p.scale(&half)).collect(),
            );
            let n2 = base2.complex.num_vertices;
            let s6 = suspend_embedding(&base2).map_err(|err| format!("l={l}: {err}"))?;
            let sus3 = sus2.suspend(n2, n2 + 1);
            let lk6 = linking_number(&t.sphere1.realize(&s6), &sus3.realize(&s6), 6, 2)
                .map_err(|err| format!("l={l}: {err}"))?;
            if lk6.abs() != want {
                return Err(format!("l={l}: |Lk| in R6 is {}, want {want}", lk6.abs()));
            }
        }
        Ok("one and two suspensions preserve |Lk| = 2^l exactly for l=0..3".into())
    });
}

#[test]
fn criterion_07_volume_linking_inequality() {
    check(7, || {
        for l in 1..=5usize {
            let (t, e) = telescope_level(l);
            let n = normalize_to_unit_ball(e).map_err(|err| format!("l={l}: {err}"))?;
            let report = thickness(&n, true).map_err(|err| format!("l={l}: {err}"))?;
            let d2 = report
                .min_distance_sq
                .ok_or_else(|| format!("l={l}: unbounded thickness"))?;
            // sum of exact squared cell volumes lower-bounds the squared total
            // volume, so the squared inequality below certifies the original
            let vol_sq_sum = |cycle: &vk::constructions::AbstractCycle| -> Rat {
                cycle
                    .cells
                    .iter()
                    .map(|(vs, _)| {
                        let pts: Vec<_> = vs.iter().map(|&v| n.coords[v].clone()).collect();
                        simplex_volume(&pts).0
                    })
                    .sum()
            };
            let va_sq = vol_sq_sum(&t.sphere1);
            let vb_sq = vol_sq_sum(&t.sphere2);
            // (T^4 2^l)^2 < 144 Va'^2 Vb'^2 with n = 2
            let mut lhs = Rat::one();
            for _ in 0..4 {
                lhs *= &d2;
            }
            lhs *= Rat::from_integer(num_bigint::BigInt::one() << l);
            let lhs_sq = &lhs * &lhs;
            let rhs = Rat::from_integer(144.into()) * &va_sq * &vb_sq;
            if lhs_sq >= rhs {
                return Err(format!("l={l}: T^4 2^l not below 12 Va' Vb'"));
            }
        }
        Ok("T^4 * 2^l < 12 Va' Vb' for l=1..5, exact squared comparison".into())
    });
}

#[test]
fn criterion_08_distortion_fixtures() {
    check(8, || {
        let seg = EmbeddedGraph::new(
            MetricGraph::path(2),
            vec![vec![-1.0, 0.0], vec![1.0, 0.0]],
            64,
        )
        .map_err(|e| format!("segment: {e}"))?;
        let d_seg = graph_distortion(&seg).map_err(|e| format!("segment: {e}"))?;
        if (d_seg - 1.0).abs() > 1e-9 {
            return Err(format!("segment distortion {d_seg}, want 1 +/- 1e-9"));
        }
        let coords = (0..64)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let circle = EmbeddedGraph::new(MetricGraph::cycle(64), coords, 16)
            .map_err(|e| format!("64-gon: {e}"))?;
        let d_circle = graph_distortion(&circle).map_err(|e| format!("64-gon: {e}"))?;
        if (d_circle - std::f64::consts::FRAC_PI_2).abs() > 0.01 {
            return Err(format!("64-gon distortion {d_circle}, want pi/2 +/- 0.01"));
        }
        Ok(format!(
            "segment delta = {d_seg:.12}, 64-gon delta = {d_circle:.4} (pi/2 = {:.4})",
            std::f64::consts::FRAC_PI_2
        ))
    });
}

#[test]
fn criterion_09_expander_scaling() {
    check(9, || {
        let start = Instant::now();
        let report = scaling_experiment(&[32, 64, 128, 256], 3, 3, 1, 5, 8, 1e-5)
            .map_err(|e| format!("{e}"))?;
        if !report.medians_non_decreasing {
            return Err(format!("medians not non-decreasing: {:?}", report.medians));
        }
        if !report.all_exceed_lower_bound {
            return Err("some delta at or below the lower bound".into());
        }
        for r in &report.rows {
            let alpha = r.alpha_band_lo;
            if (r.crossing_edges as f64) < alpha * r.n as f64 / 2.0 {
                return Err(format!(
                    "N={} seed {}: {} crossing edges below alpha N/2 = {:.2}",
                    r.n,
                    r.seed,
                    r.crossing_edges,
                    alpha * r.n as f64 / 2.0
                ));
            }
            if (r.shell_count as f64) <= alpha * r.n as f64 / 24.0 {
                return Err(format!(
                    "N={} seed {}: shell count {} not above alpha N/8d = {:.2}",
                    r.n,
                    r.seed,
                    r.shell_count,
                    alpha * r.n as f64 / 24.0
                ));
            }
        }
        let secs = start.elapsed().as_secs_f64();
        if secs >= 300.0 {
            return Err(format!("runtime {secs:.0}s exceeds 5 min"));
        }
        Ok(format!(
            "20 runs: medians {:?} non-decreasing, all above lower bound, slicing holds, {secs:.1}s",
            report
                .medians
                .iter()
                .map(|(n, m)| (*n, (m * 1000.0).round() / 1000.0))
                .collect::<Vec<_>>()
        ))
    });
}

#[test]
fn criterion_10_cheeger_sandwich() {
    check(10, || {
        let mut fixtures: Vec<(String, MetricGraph)> = vec![
            ("K4".into(), MetricGraph::complete(4)),
            ("K6".into(), MetricGraph::complete(6)),
            ("C8".into(), MetricGraph::cycle(8)),
            ("C12".into(), MetricGraph::cycle(12)),
            ("P9".into(), MetricGraph::path(9)),
        ];
        for n in [8usize, 12, 16, 20] {
            fixtures.push((
                format!("R{n}"),
                random_regular_graph(n, 3, 77 + n as u64).map_err(|e| format!("R{n}: {e}"))?,
            ));
        }
        for (name, g) in &fixtures {
            let alpha = rat_to_f64(&edge_expansion_exact(g).map_err(|e| format!("{name}: {e}"))?);
            let gap = spectral_gap(g).map_err(|e| format!("{name}: {e}"))?;
            let (lo, hi) = gap.cheeger_band;
            if alpha < lo - 1e-6 || alpha > hi + 1e-6 {
                return Err(format!(
                    "{name}: alpha {alpha:.6} outside [{lo:.6}, {hi:.6}]"
                ));
            }
        }
        Ok(format!(
            "{} fixtures with N <= 20: lambda2/2 <= alpha_exact <= sqrt(2 d lambda2)",
            fixtures.len()
        ))
    });
}

#[test]
fn criterion_11_word_layer() {
    check(11, || {
        for q in 1..=10usize {
            let w = commutator_word(CommutatorKind::Distinct, q);
            let want = 3 * (1usize << q) - 2;
            if w.len() != want {
                return Err(format!("q={q}: reduced length {}, want {want}", w.len()));
            }
        }
        for q in 1..=4usize {
            let w = commutator_word(CommutatorKind::Distinct, q);
            let series = magnus_expansion(&w, q + 1);
            if series.lowest_nonconstant_degree() != Some(q + 1) {
                return Err(format!(
                    "q={q}: lowest nonconstant degree {:?}, want {}",
                    series.lowest_nonconstant_degree(),
                    q + 1
                ));
            }
            let monomial: Vec<usize> = (0..=q).collect();
            if series.coefficient(&monomial).abs() != 1 {
                return Err(format!(
                    "q={q}: X1..X{} coefficient {}, want +/-1",
                    q + 1,
                    series.coefficient(&monomial)
                ));
            }
        }
        Ok("reduced length 3*2^q - 2 for q=1..10; mu-coefficient +/-1 with vanishing lower terms for q=1..4".into())
    });
}

#[test]
fn criterion_12_structural_and_determinism() {
    check(12, || {
        for (name, k) in golden_complexes() {
            for dim in 2..=k.dim() {
                let dk = k.boundary_matrix(dim).map_err(|e| format!("{name}: {e}"))?;
                let dk1 = k
                    .boundary_matrix(dim - 1)
                    .map_err(|e| format!("{name}: {e}"))?;
                for (j, col) in transpose_cols(&dk).iter().enumerate() {
                    let image = mat_vec(&dk1, col);
                    if image.iter().any(|&v| v != 0) {
                        return Err(format!("{name}: dd != 0 at dim {dim}, simplex {j}"));
                    }
                }
            }
            let n = k.dim();
            {
                let m = (2 * n).saturating_sub(2).max(1);
                let d_low = DeletedProduct::ordered_coboundary(&k, m);
                let d_high = DeletedProduct::ordered_coboundary(&k, m + 1);
                for (j, col) in transpose_cols(&d_low).iter().enumerate() {
                    let image = mat_vec(&d_high, col);
                    if image.iter().any(|&v| v != 0) {
                        return Err(format!("{name}: delta delta != 0 at cell {j}"));
                    }
                }
            }
        }
        // seeded determinism, byte identical
        let k = k0(2).complex;
        let a = generic_linear_map(&k, 4, 11).map_err(|e| format!("{e}"))?;
        let b = generic_linear_map(&k, 4, 11).map_err(|e| format!("{e}"))?;
        if format!("{:?}", a.coords) != format!("{:?}", b.coords) {
            return Err("generic_linear_map not deterministic for a fixed seed".into());
        }
        let (t, e) = telescope_level(1);
        let cycles: std::collections::BTreeMap<String, vk::constructions::AbstractCycle> =
            [("SBAR".to_string(), t.sphere1.clone())].into();
        let f1 = vk::io::serialize_embedding(e, &cycles).map_err(|err| format!("{err}"))?;
        let f2 = vk::io::serialize_embedding(e, &cycles).map_err(|err| format!("{err}"))?;
        if f1 != f2 {
            return Err("embedding serialization not byte identical".into());
        }
        let csv1 = scaling_experiment(&[16, 24], 3, 3, 5, 2, 4, 1e-5)
            .map_err(|e| format!("{e}"))?
            .to_csv();
        let csv2 = scaling_experiment(&[16, 24], 3, 3, 5, 2, 4, 1e-5)
            .map_err(|e| format!("{e}"))?
            .to_csv();
        if csv1 != csv2 {
            return Err("scaling experiment CSV not byte identical".into());
        }
        Ok("dd = 0 and deleted-product delta delta = 0 on all fixtures; seeded reruns byte identical".into())
    });
}

fn transpose_cols(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
