//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if
//! any exact criterion fails. Run with `cargo test --test acceptance`,
//! optionally followed by `--` and criterion numbers.

use std::ops::ControlFlow;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dchordal::coloring::{three_color, three_color_randomized, validate_coloring, ThreeColoring};
use dchordal::generators::atlas::connected_graphs_up_to;
use dchordal::generators::{
    gen_connected_random, gen_dually_chordal, gen_k4_free_dually_chordal_with_tree,
    gen_locally_connected_block, gen_locally_connected_blocks, reduce_3col_to_4col, Family, GenSpec,
};
use dchordal::oracle::{brute_force_k_colorable, is_clique_chordal, maximal_cliques};
use dchordal::properties::{check_colorability, check_tree, check_wheels};
use dchordal::recognition::{
    exhaustive_mno_search, find_mno, for_each_spanning_tree, satisfies_path_condition, sets_induce_subtrees,
};
use dchordal::structure::blocks_locally_connected;
use dchordal::Graph;

const DENSITIES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Criterion 8: allowed ratio of median times for a doubling of n.
const DOUBLING_RATIO_LIMIT: f64 = 2.5;
const BENCH_SIZES: [usize; 3] = [100_000, 200_000, 400_000];
// no extra chords: every instance is 3-colourable, so each run colours all of it
const BENCH_DENSITY: f64 = 0.0;
const BENCH_REPS: usize = 5;
/// Wall-clock criteria depend on the machine; their failure is printed but
/// does not fail the run.
const TIMING_CRITERIA: [usize; 1] = [8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Instance parameters for seed `i`: n in `lo..=hi`, density from the grid.
fn params(i: u64, lo: usize, hi: usize) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(i);
    rng.set_stream(99);
    (rng.random_range(lo..=hi), DENSITIES[rng.random_range(0..DENSITIES.len())])
}

fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

fn color_agrees(g: &Graph) -> bool {
    let fast = three_color(g).unwrap();
    let slow = brute_force_k_colorable(g, 3).unwrap().is_some();
    match fast {
        ThreeColoring::Colored(c) => slow && validate_coloring(g, &c, 3),
        ThreeColoring::NotThreeColorable { .. } => !slow,
        ThreeColoring::NotApplicable { .. } => false,
    }
}

fn criterion_1(atlas: &[Graph], corpus: &mut Vec<Graph>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut swept, mut disagreements, mut colorable) = (0, 0, 0);
    for g in atlas {
        if !blocks_locally_connected(g).unwrap() {
            continue;
        }
        swept += 1;
        // the colouring depends on labels, so try a few relabellings too
        for h in std::iter::once(g.clone()).chain((0..3).map(|_| shuffled(g, &mut rng))) {
            if !color_agrees(&h) {
                disagreements += 1;
            }
        }
    }
    let generated = 5000;
    for i in 0..generated {
        let (n, density) = params(i, 1, 12);
        let g = gen_locally_connected_blocks(&GenSpec::new(Family::LocallyConnectedBlocks, n, density, i)).unwrap();
        if brute_force_k_colorable(&g, 3).unwrap().is_some() {
            colorable += 1;
        }
        if !color_agrees(&g) {
            disagreements += 1;
        }
        corpus.push(g);
    }
    outcome(
        disagreements == 0,
        format!(
            "{swept} atlas graphs x4 labellings + {generated} generated ({colorable} 3-colourable); {disagreements} disagreements"
        ),
    )
}

fn criterion_2(corpus: &mut Vec<Graph>) -> Outcome {
    let total = 5000;
    let (mut bad, mut colorable, mut k4, mut imperfect) = (0, 0, 0, 0);
    for i in 0..total {
        let (n, density) = params(i, 1, 12);
        let g = gen_dually_chordal(&GenSpec::new(Family::DuallyChordal, n, density, i)).unwrap();
        let c = check_colorability(&g).unwrap();
        colorable += c.three_colorable as usize;
        k4 += c.has_k4 as usize;
        imperfect += !c.perfect as usize;
        if !c.holds() {
            bad += 1;
        }
        corpus.push(g);
    }
    outcome(
        bad == 0,
        format!("{total} graphs ({colorable} 3-colourable, {k4} with K4, {imperfect} imperfect); {bad} mismatches"),
    )
}

fn criterion_3(corpus: &mut Vec<Graph>) -> Outcome {
    let total = 2000;
    let (mut cycles, mut failures, mut bad_trees) = (0, 0, 0);
    for i in 0..total {
        let (n, density) = params(i, 4, 12);
        let spec = GenSpec::new(Family::K4FreeDuallyChordal, n, density.max(0.5), i);
        let (g, t) = gen_k4_free_dually_chordal_with_tree(&spec).unwrap();
        if !satisfies_path_condition(&g, &t) {
            bad_trees += 1;
            continue;
        }
        let w = check_wheels(&g, &t).unwrap();
        cycles += w.cycles;
        failures += w.failures.len();
        corpus.push(g);
    }
    outcome(
        failures == 0 && bad_trees == 0 && cycles > 0,
        format!("{total} graphs, {cycles} induced cycles of length >= 4; {failures} without hub or with a tree edge; {bad_trees} unverified trees"),
    )
}

fn criterion_4(corpus: &mut Vec<Graph>) -> Outcome {
    let total = 2000;
    let (mut bad, mut not_dc, mut colorable) = (0, 0, 0);
    for i in 0..total {
        let (n, density) = params(i, 1, 10);
        let g = gen_connected_random(&GenSpec::new(Family::ConnectedRandom, n, density, i)).unwrap();
        let h = reduce_3col_to_4col(&g);
        let three = brute_force_k_colorable(&g, 3).unwrap().is_some();
        let four = brute_force_k_colorable(&h, 4).unwrap().is_some();
        colorable += three as usize;
        if three != four {
            bad += 1;
        }
        if find_mno(&h).unwrap().is_none() {
            not_dc += 1;
        }
        corpus.push(g);
        corpus.push(h);
    }
    outcome(
        bad == 0 && not_dc == 0,
        format!("{total} graphs ({colorable} 3-colourable); {bad} equivalence failures; {not_dc} gadgets not recognised"),
    )
}

fn criterion_5(atlas: &[Graph], corpus: &mut Vec<Graph>) -> Outcome {
    let mut generated = Vec::new();
    for i in 0..2400u64 {
        let (n, density) = params(i, 1, 12);
        let family = [Family::DuallyChordal, Family::ConnectedRandom, Family::LocallyConnectedBlocks][i as usize % 3];
        generated.push(dchordal::generators::generate(&GenSpec::new(family, n, density, 10_000 + i)).unwrap());
    }
    let (mut clique_chordal, mut counterexamples) = (0, Vec::new());
    for g in atlas.iter().chain(&generated) {
        if is_clique_chordal(g).unwrap() {
            clique_chordal += 1;
            if !blocks_locally_connected(g).unwrap() {
                counterexamples.push(g.clone());
            }
        }
    }
    let first = counterexamples
        .first()
        .map(|g| format!("; first counterexample edges {:?}", g.edges().collect::<Vec<_>>()))
        .unwrap_or_default();
    let detail = format!(
        "{} atlas + {} generated graphs, {clique_chordal} clique-chordal; {} counterexamples{first}",
        atlas.len(),
        generated.len(),
        counterexamples.len()
    );
    corpus.extend(generated);
    outcome(counterexamples.is_empty(), detail)
}

fn criterion_6(atlas: &[Graph]) -> Outcome {
    let (mut recognised, mut bad) = (0, 0);
    for g in atlas {
        let fast = find_mno(g).unwrap();
        let slow = exhaustive_mno_search(g).unwrap();
        if fast.is_some() != slow.is_some() || fast.as_ref().is_some_and(|m| !m.is_valid_for(g)) {
            bad += 1;
        }
        recognised += fast.is_some() as usize;
    }
    outcome(
        bad == 0,
        format!("{} graphs, {recognised} dually chordal; {bad} disagreements", atlas.len()),
    )
}

fn criterion_7(atlas: &[Graph], corpus: &[Graph]) -> Outcome {
    let (mut checked, mut failures, mut k4_free) = (0, 0, 0);
    for g in atlas.iter().chain(corpus) {
        if let Some(c) = check_tree(g).unwrap() {
            checked += 1;
            k4_free += c.k4_free as usize;
            if !c.holds() {
                failures += 1;
            }
        }
    }
    // equivalence of the two tree conditions on every spanning tree
    let (mut trees, mut mismatches) = (0usize, 0);
    for g in atlas.iter().filter(|g| g.n() <= 6) {
        let cliques = maximal_cliques(g).unwrap();
        for_each_spanning_tree(g, |t| {
            trees += 1;
            if satisfies_path_condition(g, t) != sets_induce_subtrees(t, &cliques.cliques) {
                mismatches += 1;
            }
            ControlFlow::Continue(())
        })
        .unwrap();
    }
    outcome(
        failures == 0 && mismatches == 0,
        format!(
            "{checked} recognised graphs ({k4_free} K4-free); {failures} tree failures; {trees} spanning trees (n <= 6), {mismatches} condition mismatches"
        ),
    )
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn median_time(g: &Graph) -> f64 {
    let colored = three_color(g).unwrap().is_colored();
    assert!(colored, "benchmark instances must be 3-colourable");
    let times: Vec<f64> = (0..BENCH_REPS)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(three_color(g).unwrap());
            start.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    median(times)
}

/// Breadth-first relabelling from vertex 0.
fn bfs_labels(g: &Graph) -> Graph {
    let mut label = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::from([0]);
    label[0] = 0;
    let mut next = 1;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if label[w] == usize::MAX {
                label[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    g.relabel(&label)
}

fn criterion_8() -> Outcome {
    let mut rows = Vec::new();
    for (k, &n) in BENCH_SIZES.iter().enumerate() {
        let g = gen_locally_connected_blocks(&GenSpec::new(Family::LocallyConnectedBlocks, n, BENCH_DENSITY, k as u64))
            .unwrap();
        let t = median_time(&g);
        // same graph with cache-friendly labels, reported for diagnosis only
        let t_bfs = median_time(&bfs_labels(&g));
        rows.push((n, g.m(), t, t_bfs));
    }
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[1].2 / w[0].2).collect();
    let bfs_ratios: Vec<f64> = rows.windows(2).map(|w| w[1].3 / w[0].3).collect();
    let text: Vec<String> = rows
        .iter()
        .map(|(n, m, t, _)| format!("n={n} m={m} {t:.2}ms ({:.1}ns per n+m)", t * 1e6 / (n + m) as f64))
        .collect();
    outcome(
        ratios.iter().all(|&r| r <= DOUBLING_RATIO_LIMIT),
        format!(
            "{}; ratios {:.2}, {:.2} (limit {DOUBLING_RATIO_LIMIT}); breadth-first labelled ratios {:.2}, {:.2}",
            text.join(", "),
            ratios[0],
            ratios[1],
            bfs_ratios[0],
            bfs_ratios[1]
        ),
    )
}

fn criterion_9() -> Outcome {
    let total = 500u64;
    let (mut colorable, mut bad) = (0, 0);
    for i in 0..total {
        let (n, density) = params(i, 3, 60);
        // sparse chords keep a good share of the blocks 3-colourable
        let g = gen_locally_connected_block(n, density / 5.0, 20_000 + i).unwrap();
        let reference = three_color(&g).unwrap();
        colorable += reference.is_colored() as usize;
        for s in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(i * 31 + s);
            let other = three_color_randomized(&g, &mut rng).unwrap();
            let same = match (&reference, &other) {
                (ThreeColoring::Colored(a), ThreeColoring::Colored(b)) => a.same_up_to_renaming(b),
                (a, b) => !a.is_colored() && !b.is_colored(),
            };
            if !same {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("{total} blocks ({colorable} 3-colourable) x5 random tie-breaks; {bad} differing colourings"),
    )
}

fn main() {
    // optional arguments select criteria by number; criterion 7 then only
    // sees the corpus of the selected generator criteria
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |k: usize| selected.is_empty() || selected.contains(&k);
    let start = Instant::now();
    let atlas = connected_graphs_up_to(7).unwrap();
    let mut corpus = Vec::new();
    let mut results = Vec::new();
    let mut record = |k: usize, f: &mut dyn FnMut() -> Outcome| {
        if wanted(k) {
            results.push((k, f()));
        }
    };
    record(1, &mut || criterion_1(&atlas, &mut corpus));
    record(2, &mut || criterion_2(&mut corpus));
    record(3, &mut || criterion_3(&mut corpus));
    record(4, &mut || criterion_4(&mut corpus));
    record(5, &mut || criterion_5(&atlas, &mut corpus));
    record(6, &mut || criterion_6(&atlas));
    record(7, &mut || criterion_7(&atlas, &corpus));
    record(8, &mut criterion_8);
    record(9, &mut criterion_9);
    for (k, r) in &results {
        println!("criterion {k}: {} ({})", if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    let failed: Vec<usize> = results.iter().filter(|(_, r)| !r.pass).map(|(k, _)| *k).collect();
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed.len(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed.iter().any(|k| !TIMING_CRITERIA.contains(k)) {
        std::process::exit(1);
    }
}
