//! One PASS/FAIL line per acceptance criterion. All comparisons are exact.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, finite_diameter, min_degree_ordering};
use scattered::decomp::{balance, decomposition_from_ordering, depth_bound, heuristic_decomposition, make_nice, validate_decomposition};
use scattered::gadgets::{gen_fvs_unweighted, gen_seth, gen_td_eth, gen_w1_vc, parse_cnf, parse_mcis, CnfFormula};
use scattered::graph_core::{all_pairs_distances, is_scattered};
use scattered::oracle::{brute_force_count, brute_force_max, independent_set_counts};
use scattered::tw_approx::{approx_run, int, rational, satisfies_slack};
use scattered::tw_exact::{count_scattered, forward_state_transform, inverse_state_transform, max_scattered, solve_via_treedepth, CountTable};
use scattered::vc_fpt::{compute_vertex_cover, max_scattered_vc, neighborhood_classes, reduce_to_packing};
use scattered::WeightedGraph;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn counting() -> Check {
    let mut cases = 0;
    for (seed, g) in corpus(200, 3, 12, 4) {
        let nd = make_nice(&heuristic_decomposition(&g)).unwrap();
        for d in 2..=finite_diameter(&g) + 1 {
            let got = count_scattered(&g, &nd, d, g.n()).unwrap();
            let want = big(&brute_force_count(&g, d, g.n()).unwrap());
            ensure(got == want, || format!("seed {seed} d {d}: {got:?} vs {want:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("200 graphs, {cases} (graph, d) pairs, all sizes"))
}

fn maximization() -> Check {
    let mut cases = 0;
    for (seed, g) in corpus(200, 3, 12, 4) {
        let nd = make_nice(&heuristic_decomposition(&g)).unwrap();
        for d in 2..=finite_diameter(&g) + 1 {
            let (size, w) = max_scattered(&g, &nd, d).unwrap();
            let (opt, _) = brute_force_max(&g, d).unwrap();
            ensure(size == opt && w.len() == size && is_scattered(&g, &w, d), || format!("seed {seed} d {d}: {size} vs {opt}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, d) pairs, witnesses validated"))
}

fn independent_sets() -> Check {
    for (seed, g) in corpus(200, 3, 12, 1) {
        let nd = make_nice(&heuristic_decomposition(&g)).unwrap();
        let got = count_scattered(&g, &nd, 2, g.n()).unwrap();
        let want = big(&independent_set_counts(&g).unwrap());
        ensure(got == want, || format!("seed {seed}: {got:?} vs {want:?}"))?;
    }
    Ok("200 unit graphs".into())
}

fn vertex_cover() -> Check {
    let mut cases = 0;
    for (seed, g) in corpus(200, 3, 14, 1) {
        let cover = compute_vertex_cover(&g);
        let classes = neighborhood_classes(&g, &cover).unwrap();
        for d in 3..=finite_diameter(&g).max(2) + 1 {
            let inst = reduce_to_packing(&g, &cover, &classes, d).unwrap();
            let forbidden = if d % 2 == 0 { 3 } else { 2 };
            for s in 0..inst.sets.len() {
                for e in 0..inst.universe_size() {
                    let c = inst.coefficient(s, e);
                    ensure(*c.denom() % forbidden != 0, || format!("seed {seed} d {d}: coefficient {c}"))?;
                }
            }
            let (size, w) = max_scattered_vc(&g, d, Some(&cover)).unwrap();
            let (opt, _) = brute_force_max(&g, d).unwrap();
            ensure(size == opt && is_scattered(&g, &w, d), || format!("seed {seed} d {d}: {size} vs {opt}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, d) pairs, coefficient alphabets checked"))
}

fn approximation() -> Check {
    let mut cases = 0;
    let epsilons = [int(1), rational(1, 2), rational(1, 4), rational(1, 10)];
    for (seed, g) in corpus(200, 3, 12, 4) {
        let td = heuristic_decomposition(&g);
        let dist = all_pairs_distances(&g).unwrap();
        for d in 2..=finite_diameter(&g) + 1 {
            let (opt, _) = brute_force_max(&g, d).unwrap();
            for eps in &epsilons {
                let run = approx_run(&g, &td, d, eps).unwrap();
                ensure(run.size >= opt && run.witness.len() == run.size && satisfies_slack(&dist, &run.witness, d, eps), || {
                    format!("seed {seed} d {d} eps {eps}: {} vs {opt}", run.size)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (graph, d, eps) runs"))
}

fn exactness_limit() -> Check {
    let mut cases = 0;
    for (seed, g) in corpus(100, 3, 10, 4) {
        let td = heuristic_decomposition(&g);
        for d in 2..=finite_diameter(&g) + 1 {
            let eps = rational(1, d as i64);
            let run = approx_run(&g, &td, d, &eps).unwrap();
            ensure(run.delta.clone() * int(d) < int(1), || format!("seed {seed} d {d}: delta {}", run.delta))?;
            let (opt, _) = brute_force_max(&g, d).unwrap();
            ensure(run.size == opt && is_scattered(&g, &run.witness, d), || format!("seed {seed} d {d}: {} vs {opt}", run.size))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, d) runs with eps = 1/d"))
}

fn transforms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let d = 2 + i % 5;
        let n = rng.gen_range(1..=4usize);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.6) {
                    edges.push((u, v, rng.gen_range(1..=d as u64)));
                }
            }
        }
        let g = WeightedGraph::from_edges(n, &edges).unwrap();
        let dist = all_pairs_distances(&g).unwrap();
        let k = rng.gen_range(0..=n);
        let mut t = CountTable::new((0..n).collect(), d, k).unwrap();
        for _ in 0..rng.gen_range(1..=12) {
            let states: Vec<u32> = (0..n).map(|_| rng.gen_range(0..d)).collect();
            t.set(rng.gen_range(0..=k), &states, BigInt::from(rng.gen_range(-50i64..=50)));
        }
        t.prune();
        let back = inverse_state_transform(&forward_state_transform(&t, &dist), &dist);
        ensure(back.same_as(&t), || format!("table {i} (d={d}) not restored"))?;
    }
    Ok("1000 random tables, d in 2..=6".into())
}

fn witness_sizes() -> Check {
    let yes = parse_mcis("p mcis 3 3\ne 1.1 2.1\ne 2.2 3.2\ne 1.3 3.1\ne 1.2 2.3\n").unwrap();
    for sel in [[0usize, 1, 0], [1, 0, 2]] {
        for out in [gen_w1_vc(&yes, Some(&sel)).unwrap(), gen_fvs_unweighted(&yes, Some(&sel)).unwrap()] {
            let w = out.witness.clone().ok_or("no witness on a YES instance")?;
            ensure(w.len() == 9 && out.target_size == 9 && is_scattered(&out.graph, &w, out.d) && out.certificate_holds(), || {
                format!("mcis witness for {sel:?} invalid")
            })?;
        }
    }
    let no = parse_mcis("p mcis 2 2\ne 1.1 2.1\ne 1.1 2.2\ne 1.2 2.1\ne 1.2 2.2\n").unwrap();
    let out = gen_w1_vc(&no, None).unwrap();
    let (opt, _) = brute_force_max(&out.graph, out.d).unwrap();
    ensure(opt < 4, || format!("NO instance has a scattered set of size {opt}"))?;

    let start = Instant::now();
    let phi = parse_cnf("p cnf 8 3\n1 -2 5 0\n-3 4 -8 0\n2 6 7 0\n").unwrap();
    let values = [true, false, false, true, false, true, false, false];
    let out = gen_seth(&phi, 4, &int(1), Some(&values)).unwrap();
    let (t, p) = (out.params["t"].parse::<usize>().unwrap(), out.params["p"].parse::<usize>().unwrap());
    let formula = (t * p + 2) * 3 * (t * p * 3 + 1);
    let w = out.witness.clone().ok_or("no SETH witness")?;
    ensure(w.len() == formula && out.target_size == formula && is_scattered(&out.graph, &w, 4), || "SETH witness invalid".into())?;
    let seth_n = out.graph.n();
    let seth_secs = start.elapsed().as_secs_f64();
    ensure(seth_secs < 60.0, || format!("SETH instance took {seth_secs:.1}s"))?;
    for d in [3, 5] {
        let out = gen_seth(&phi, d, &int(1), Some(&values)).unwrap();
        ensure(is_scattered(&out.graph, out.witness.as_ref().unwrap(), d), || format!("SETH witness at d={d} invalid"))?;
    }

    for (phi, values) in [
        (CnfFormula::new(4, vec![vec![1, 2, -3], vec![-1, 4], vec![3, -4, 2]]).unwrap(), vec![true, true, false, true]),
        (CnfFormula::new(1, vec![vec![1]]).unwrap(), vec![true]),
        (CnfFormula::new(9, vec![vec![1, -5, 9], vec![2, 3], vec![-4, 6, 7], vec![8, -9]]).unwrap(), vec![true; 9]),
    ] {
        let out = gen_td_eth(&phi, Some(&values)).unwrap();
        let w = out.witness.clone().ok_or("no tree-depth witness")?;
        let n = out.params["padded_vars"].parse::<usize>().unwrap();
        ensure(w.len() == n && is_scattered(&out.graph, &w, out.d), || format!("tree-depth witness of size {} invalid", w.len()))?;
    }
    Ok(format!("mcis k=3 both graphs, NO optimum {opt}, SETH d=4 n=8 m=3 ({seth_n} vertices) size {formula} in {seth_secs:.1}s, tree-depth n in {{4,1,9}}"))
}

fn toolkit() -> Check {
    for (seed, g) in corpus(200, 3, 12, 4) {
        let td = heuristic_decomposition(&g);
        let w = validate_decomposition(&g, &td).map_err(|v| format!("seed {seed}: heuristic {v}"))?;
        let bal = balance(&td, &g).unwrap();
        validate_decomposition(&g, &bal).map_err(|v| format!("seed {seed}: balanced {v}"))?;
        ensure(bal.width() <= 3 * w + 2 && bal.depth() <= depth_bound(g.n()), || {
            format!("seed {seed}: balanced width {} depth {}", bal.width(), bal.depth())
        })?;
        let ordered = decomposition_from_ordering(&g, &min_degree_ordering(&g));
        validate_decomposition(&g, &ordered).map_err(|v| format!("seed {seed}: ordering {v}"))?;
        let d = 2 + seed % 5;
        let mut results = Vec::new();
        for t in [&td, &bal, &ordered] {
            let nd = make_nice(t).unwrap();
            nd.validate(&g).map_err(|v| format!("seed {seed}: nice {v}"))?;
            results.push((count_scattered(&g, &nd, d, g.n()).unwrap(), max_scattered(&g, &nd, d).unwrap().0));
        }
        ensure(results[0] == results[1] && results[1] == results[2], || format!("seed {seed}: decompositions disagree"))?;
    }
    let p64 = WeightedGraph::path(64);
    let path_td = scattered::decomp::TreeDecomposition::path((0..63).map(|i| [i, i + 1].into()).collect());
    let depth = balance(&path_td, &p64).unwrap().depth();
    ensure(depth <= 28, || format!("P64 balanced depth {depth}"))?;
    Ok(format!("200 graphs x 3 decompositions; P64 balanced depth {depth}"))
}

fn treedepth() -> Check {
    let (mut shortcut, mut dp) = (0, 0);
    for (seed, g) in corpus(200, 3, 12, 1) {
        if !g.is_connected() {
            continue;
        }
        let diam = finite_diameter(&g);
        for d in 2..=diam + 2 {
            let s = solve_via_treedepth(&g, d).unwrap();
            if d > diam {
                ensure(s.size == 1 && !s.used_dp, || format!("seed {seed} d {d}: size {} dp {}", s.size, s.used_dp))?;
                shortcut += 1;
            } else {
                let (opt, _) = brute_force_max(&g, d).unwrap();
                ensure(s.size == opt && is_scattered(&g, &s.witness, d), || format!("seed {seed} d {d}: {} vs {opt}", s.size))?;
                dp += 1;
            }
        }
    }
    Ok(format!("{shortcut} shortcut cases without DP, {dp} DP cases"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("counting matches brute force", counting),
        ("maximization matches brute force", maximization),
        ("d=2 counts equal independent-set counts", independent_sets),
        ("vertex-cover algorithm and coefficient alphabets", vertex_cover),
        ("approximation guarantee", approximation),
        ("approximation exact below distance granularity", exactness_limit),
        ("state transform invertibility", transforms),
        ("generator witness sizes", witness_sizes),
        ("decomposition toolkit", toolkit),
        ("tree-depth wrapper", treedepth),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
