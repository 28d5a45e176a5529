//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p hypercut-cli --test acceptance`.

use std::path::Path;
use std::time::{Duration, Instant};

use hypercut::bip::{BipLimits, ModelMode};
use hypercut::hgraph::cut_value;
use hypercut::hgraph::io::{parse_hmetis, to_hmetis_string, HmetisFormat};
use hypercut::oracle::{brute_mincut, brute_st_mincut};
use hypercut::osolve::mincut_ordering;
use hypercut::reduce::{
    rule_imbalanced_vertex, rule_imbalanced_vertex_with, run_pipeline, update_lambda_hat, PipelineConfig,
    PipelineState, ResidualSolver, Rule, VertexTest,
};
use hypercut::synth::{k2_core, random_hypergraph, randomize_weights, GenSpec};
use hypercut::trimmer::{backward_lists, compute_head_ordering, construct_certificate, trimmer_traced};
use hypercut::{Hypergraph, Weight};
use hypercut_cli::profile::{compute_profile, read_records, write_csv};
use hypercut_cli::{run_solve, validate_record, Algorithm, SolveArgs};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn instance(seed: u64, weights: (Weight, Weight), connected: bool) -> Hypergraph {
    let spec = GenSpec {
        vertices: (4, 10),
        edges: (3, 16),
        edge_size: (2, 4),
        edge_weight: weights,
        vertex_weight: (1, 1),
        connected,
        seed,
    };
    random_hypergraph(&spec).expect("feasible spec")
}

fn suite(count: u64, base: u64, weights: (Weight, Weight), connected: bool) -> Vec<Hypergraph> {
    (0..count).map(|i| instance(base + i, weights, connected)).collect()
}

fn oracle(h: &Hypergraph) -> Weight {
    brute_mincut(h).unwrap().value
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ordering_vs_oracle() -> Outcome {
    let start = Instant::now();
    let hs = suite(1000, 0, (1, 8), true);
    for (i, h) in hs.iter().enumerate() {
        let cut = mincut_ordering(h).map_err(|e| e.to_string())?;
        check(cut.value == oracle(h), || {
            format!("instance {i}: {} vs {}", cut.value, oracle(h))
        })?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("1000/1000 match in {:.2}s", elapsed.as_secs_f64()))
}

fn rules_in_isolation() -> Outcome {
    let hs = suite(1000, 10_000, (1, 8), false);
    for rule in Rule::ALL {
        for (i, h) in hs.iter().enumerate() {
            let mut s = PipelineState::new(h, 1);
            rule.apply(&mut s);
            update_lambda_hat(&mut s);
            let reduced = if s.current.num_vertices() < 2 {
                Weight::MAX
            } else {
                oracle(&s.current)
            };
            let got = s.lambda_hat.min(reduced);
            check(got == oracle(h), || {
                format!("{} on instance {i}: {got} vs {}", rule.name(), oracle(h))
            })?;
        }
    }
    Ok("7 rules x 1000 instances, all preserved".into())
}

fn pipeline_exactness() -> Outcome {
    let hs = suite(1000, 0, (1, 8), true);
    let exact = PipelineConfig {
        threshold: 1,
        ..Default::default()
    };
    let bip = PipelineConfig {
        threshold: 1,
        solver: ResidualSolver::Bip,
        bip: BipLimits {
            mode: ModelMode::Representative,
            tolerance: 1e-7,
            deadline: None,
            max_nodes: None,
        },
        ..Default::default()
    };
    let mut bip_calls = 0;
    for (i, h) in hs.iter().enumerate() {
        let expect = oracle(h);
        for (name, config) in [("exact", &exact), ("bip", &bip)] {
            let out = run_pipeline(h, config).map_err(|e| e.to_string())?;
            check(out.cut.value == expect, || {
                format!("{name} on instance {i}: {} vs {expect}", out.cut.value)
            })?;
            let side = out.cut.side.as_deref().ok_or("missing side")?;
            check(cut_value(h, side).unwrap() == expect, || {
                format!("{name} side on instance {i}")
            })?;
            if name == "bip" {
                bip_calls += out.solver_called as usize;
            }
        }
    }
    Ok(format!(
        "exact 1000/1000, bip 1000/1000 ({bip_calls} reached the solver)"
    ))
}

/// Two heavy triangles joined through `v` by two edges of weight `w`:
/// `d_ω(v) = 2w` exactly, and the minimum cut is `w`.
fn equality_instance(w: Weight, heavy: Weight) -> Hypergraph {
    let (a, v, b) = (0u32, 3u32, 4u32);
    let edges: Vec<(Vec<u32>, Weight)> = vec![
        (vec![a, 1], heavy),
        (vec![1, 2], heavy),
        (vec![a, 2], heavy),
        (vec![a, v], w),
        (vec![v, b], w),
        (vec![b, 5], heavy),
        (vec![5, 6], heavy),
        (vec![b, 6], heavy),
    ];
    Hypergraph::from_weighted_edges(7, edges).unwrap()
}

fn strictness_regression() -> Outcome {
    let mut overshoots = 0;
    let mut count = 0;
    for w in 1..=6 {
        for heavy in [w + 1, 2 * w, 5 * w] {
            let h = equality_instance(w, heavy);
            let expect = oracle(&h);
            check(expect == w, || format!("w={w}: oracle {expect}"))?;
            count += 1;

            let mut s = PipelineState::new(&h, 1);
            let changed = rule_imbalanced_vertex(&mut s);
            check(!changed && s.current == h, || {
                format!("w={w} heavy={heavy}: strict rule contracted")
            })?;

            let out = run_pipeline(
                &h,
                &PipelineConfig {
                    threshold: 1,
                    ..Default::default()
                },
            )
            .unwrap();
            check(out.cut.value == expect, || {
                format!("w={w} heavy={heavy}: pipeline {}", out.cut.value)
            })?;

            let mut s = PipelineState::new(&h, 1);
            rule_imbalanced_vertex_with(&mut s, VertexTest::NonStrictUnmarked);
            update_lambda_hat(&mut s);
            let reduced = if s.current.num_vertices() < 2 {
                Weight::MAX
            } else {
                oracle(&s.current)
            };
            if s.lambda_hat.min(reduced) > expect {
                overshoots += 1;
            }
        }
    }
    check(overshoots > 0, || "non-strict variant never overshot".into())?;
    Ok(format!(
        "strict exact on {count}/{count}; non-strict overshoots on {overshoots}/{count}"
    ))
}

fn trimmer_checks() -> Outcome {
    let hs = suite(500, 50_000, (1, 1), true);
    let mut certificates = 0;
    let mut pairs = 0;
    for (i, h) in hs.iter().enumerate() {
        let trace = trimmer_traced(h, i as u64).map_err(|e| e.to_string())?;
        check(trace.cut.value == oracle(h), || {
            format!("instance {i}: {} vs {}", trace.cut.value, oracle(h))
        })?;

        let ordering = compute_head_ordering(h, i as u64).unwrap();
        let backward = backward_lists(h, &ordering);
        let n = h.num_vertices();
        let mut ks: Vec<usize> = trace.iterations.iter().map(|it| it.0).collect();
        ks.extend(1..=4);
        for k in ks {
            let hk = construct_certificate(h, &backward, k);
            certificates += 1;
            check(hk.num_edges() <= k * n, || {
                format!("instance {i}, k={k}: {} edges", hk.num_edges())
            })?;
            if n <= 8 {
                for s in 0..n {
                    for t in s + 1..n {
                        let full = brute_st_mincut(h, s, t).unwrap();
                        let kept = brute_st_mincut(&hk, s, t).unwrap();
                        pairs += 1;
                        check(kept >= full.min(k as Weight), || {
                            format!("instance {i}, k={k}, pair ({s},{t}): {kept} < min({k}, {full})")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "500/500 exact; {certificates} certificates within k*n; {pairs} local connectivities kept"
    ))
}

fn label_propagation() -> Outcome {
    let hs = suite(1000, 0, (1, 8), true);
    let mut hits = 0;
    for (i, h) in hs.iter().enumerate() {
        let config = PipelineConfig {
            use_lp: true,
            seed: i as u64,
            ..Default::default()
        };
        let out = run_pipeline(h, &config).map_err(|e| e.to_string())?;
        let expect = oracle(h);
        check(out.cut.value >= expect, || {
            format!("instance {i}: {} below {expect}", out.cut.value)
        })?;
        hits += (out.cut.value == expect) as usize;
    }
    Ok(format!(
        "upper bound on 1000/1000; match rate {:.1}%",
        hits as f64 / 10.0
    ))
}

fn full_reduction() -> Outcome {
    let mut fully = [0usize; 2];
    for i in 0..200u64 {
        let weighted = i % 2 == 1;
        let spec = GenSpec {
            vertices: (6, 14),
            edges: (6, 30),
            edge_size: (2, 4),
            edge_weight: (1, 1),
            vertex_weight: (1, 1),
            connected: true,
            seed: 70_000 + i,
        };
        let mut h = random_hypergraph(&spec).unwrap();
        if weighted {
            h = randomize_weights(&h, 1, 100, i).unwrap();
        }
        let out = run_pipeline(
            &h,
            &PipelineConfig {
                threshold: 1,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        if out.fully_reduced() {
            let expect = oracle(&h);
            check(out.cut.value == expect, || {
                format!("instance {i}: {} vs {expect}", out.cut.value)
            })?;
            fully[weighted as usize] += 1;
        }
    }
    let total = fully[0] + fully[1];
    check(total > 0, || "no instance was fully reduced".into())?;
    Ok(format!(
        "fully reduced {:.1}% (unit {:.0}%, weighted {:.0}%), all exact",
        total as f64 / 2.0,
        fully[0] as f64,
        fully[1] as f64
    ))
}

/// Weighted random hypergraph peeled to its (2,2)-core, so no vertex sits
/// in a single hyperedge.
fn scaling_instance(pins: usize, seed: u64) -> Hypergraph {
    // average size 3, average degree 6
    let spec = GenSpec {
        vertices: (pins / 6, pins / 6),
        edges: (pins / 3, pins / 3),
        edge_size: (2, 4),
        edge_weight: (1, 100),
        vertex_weight: (1, 1),
        connected: true,
        seed,
    };
    k2_core(&random_hypergraph(&spec).unwrap(), 2).hypergraph
}

fn median_time(h: &Hypergraph, reps: usize) -> f64 {
    let mut times: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            run_pipeline(h, &PipelineConfig::default()).unwrap();
            start.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[reps / 2]
}

fn scaling() -> Outcome {
    let mut pins = 10_000;
    let mut previous: Option<f64> = None;
    let mut ratios = Vec::new();
    let mut times = Vec::new();
    while pins <= 1_280_000 {
        // median over instances: about one in five carries parallel edges and
        // pays for an extra compaction
        let mut per_instance: Vec<f64> = (0..5)
            .map(|s| median_time(&scaling_instance(pins, pins as u64 + s), 3))
            .collect();
        per_instance.sort_by(f64::total_cmp);
        let t = per_instance[2];
        times.push(format!("{:.1}ms", t * 1e3));
        if let Some(p) = previous {
            ratios.push(t / p);
        }
        previous = Some(t);
        pins *= 2;
    }
    let worst = ratios.iter().cloned().fold(0.0, f64::max);
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    let summary = format!(
        "times [{}], per-doubling ratios [{}]",
        times.join(", "),
        shown.join(", ")
    );
    check(worst < 4.0, || summary.clone())?;
    Ok(format!("p 1e4..1.28e6, {summary}"))
}

fn formats_and_records() -> Outcome {
    for (i, h) in suite(200, 90_000, (1, 50), false).iter().enumerate() {
        let h = h
            .with_weights(
                h.edge_weights().to_vec(),
                (0..h.num_vertices() as u64).map(|v| v % 3 + 1).collect(),
            )
            .unwrap();
        for format in [
            HmetisFormat::Unweighted,
            HmetisFormat::EdgeWeights,
            HmetisFormat::VertexWeights,
            HmetisFormat::Both,
        ] {
            let text = to_hmetis_string(&h, Some(format));
            let parsed = parse_hmetis(text.as_bytes()).map_err(|e| e.to_string())?;
            check(to_hmetis_string(&parsed.hypergraph, Some(format)) == text, || {
                format!("instance {i} {format:?}")
            })?;
        }
        let text = to_hmetis_string(&h, None);
        let parsed = parse_hmetis(text.as_bytes()).unwrap();
        check(parsed.hypergraph == h, || format!("instance {i} lossless"))?;
    }

    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut records = 0;
    for file in ["tri.hgr", "weighted_tri.hgr", "two_k5.hgr", "missing.hgr"] {
        for algo in [
            Algorithm::Heicut,
            Algorithm::HeicutLp,
            Algorithm::Trimmer,
            Algorithm::Bip,
            Algorithm::Exact,
            Algorithm::Oracle,
        ] {
            let record = run_solve(&SolveArgs::new(fixtures.join(file), algo)).map_err(|e| e.to_string())?;
            let line = serde_json::to_string(&record).unwrap();
            check(!line.contains('\n'), || "record spans lines".into())?;
            validate_record(&serde_json::from_str(&line).unwrap()).map_err(|e| format!("{file} {algo:?}: {e}"))?;
            records += 1;
        }
    }

    let file = std::fs::File::open(fixtures.join("profile_records.jsonl")).unwrap();
    let recs = read_records(std::io::BufReader::new(file)).map_err(|e| e.to_string())?;
    let points = compute_profile(&recs, &[1.0, 1.25, 1.5, 2.0]).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    write_csv(&points, &mut csv).unwrap();
    let expected = std::fs::read_to_string(fixtures.join("profile_expected.csv")).unwrap();
    check(String::from_utf8(csv).unwrap() == expected, || {
        "profile differs from hand computation".into()
    })?;
    Ok(format!(
        "round trips stable; {records} records valid; profile matches fixture"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("ordering solver equals oracle", ordering_vs_oracle),
        ("each rule preserves the minimum cut", rules_in_isolation),
        ("pipeline exactness (exact and bip)", pipeline_exactness),
        ("strict imbalanced-vertex test", strictness_regression),
        ("trimmer exactness and certificates", trimmer_checks),
        ("label propagation upper bound", label_propagation),
        ("full reduction by rules alone", full_reduction),
        ("near-linear scaling", scaling),
        ("formats, records and profiles", formats_and_records),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("AC{} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("AC{} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
