//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use farkas_core::exactlin::{inner_mixed, rank, IntMatrix, IntVector, Rational};
use farkas_core::farkas::{block_construct, integer_feasible, is_farkas_related, rational_feasible, FeasibilityProblem};
use farkas_core::graphs::{
    d_indecomposables, directed_incidence, g_indecomposables, gale_ryser_feasible, gz_indecomposables,
    has_two_edge_disjoint_odd_cycles, has_two_vertex_disjoint_odd_cycles, incidence, orientation_scores_feasible,
    orientation_system, signed_graphical, signed_graphical_realization, Digraph, Graph,
};
use farkas_core::indecomp::{decompose, enumerate_indecomposables, is_indecomposable, IndecomposablePoint};
use farkas_core::oracle::{
    brute_force_box, brute_force_orientations, brute_force_signed_sequences, farkas_related_by_definition,
    fourier_motzkin_feasible, BoxSearchBudget, EliminationLimit,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_columns(r: &mut ChaCha8Rng, n: usize, m: usize, lo: i64, hi: i64) -> Vec<IntVector> {
    (0..m).map(|_| (0..n).map(|_| BigInt::from(r.gen_range(lo..=hi))).collect()).collect()
}

fn random_box(r: &mut ChaCha8Rng, m: usize, lo: i64, hi: i64) -> (IntVector, IntVector) {
    (0..m)
        .map(|_| {
            let a = r.gen_range(lo..=hi);
            let b = r.gen_range(a..=hi);
            (BigInt::from(a), BigInt::from(b))
        })
        .unzip()
}

/// A target that is either the image of a random box point or uniformly random.
fn random_target(r: &mut ChaCha8Rng, vs: &[IntVector], lower: &[BigInt], upper: &[BigInt], n: usize) -> IntVector {
    if r.gen_bool(0.5) {
        let mut w = vec![BigInt::zero(); n];
        for (k, v) in vs.iter().enumerate() {
            let lo: i64 = (&lower[k]).try_into().unwrap();
            let hi: i64 = (&upper[k]).try_into().unwrap();
            let x = BigInt::from(r.gen_range(lo..=hi));
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi += &x * vi;
            }
        }
        // occasionally nudge off the image
        if r.gen_bool(0.3) {
            let i = r.gen_range(0..n);
            w[i] += r.gen_range(-1i64..=1);
        }
        w
    } else {
        (0..n).map(|_| BigInt::from(r.gen_range(-4i64..=4))).collect()
    }
}

fn integer_feasibility_vs_box_search() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut total, mut agree, mut feasible) = (0, 0, 0);
    while total < 250 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=6);
        let vs = random_columns(&mut r, n, m, -1, 1);
        if !is_farkas_related(&vs).0 {
            continue;
        }
        let (lower, upper) = random_box(&mut r, m, -2, 2);
        let target = random_target(&mut r, &vs, &lower, &upper, n);
        let prob = FeasibilityProblem::new(vs, lower, upper, target).unwrap();
        let ours = integer_feasible(&prob).unwrap().is_feasible();
        let brute = brute_force_box(&prob, BoxSearchBudget::default()).unwrap().is_some();
        total += 1;
        agree += usize::from(ours == brute);
        feasible += usize::from(brute);
    }
    let elapsed = start.elapsed();
    outcome(
        agree == total && elapsed < Duration::from_secs(60),
        format!("{agree}/{total} agree ({feasible} feasible), {:.1}s", elapsed.as_secs_f64()),
    )
}

fn circuit_criterion_vs_rounding_definition() -> Outcome {
    let mut r = rng(2);
    let (mut agree, mut related) = (0, 0);
    let total = 120;
    for t in 0..total {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=5);
        let vs = if t % 2 == 0 {
            random_columns(&mut r, n, m, -1, 1)
        } else {
            random_columns(&mut r, n, m, -2, 2)
        };
        let by_circuits = is_farkas_related(&vs).0;
        let by_definition = farkas_related_by_definition(&vs, 6).unwrap();
        agree += usize::from(by_circuits == by_definition);
        related += usize::from(by_definition);
    }
    outcome(agree == total, format!("{agree}/{total} agree ({related} Farkas-related)"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// One representative per isomorphism class of connected graphs on `n` vertices.
fn connected_graphs(n: usize) -> Vec<Graph> {
    let all = pairs(n);
    let mut index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in all.iter().enumerate() {
        index[i][j] = k;
        index[j][i] = k;
    }
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let edges: Vec<(usize, usize)> = (0..all.len()).filter(|k| mask >> k & 1 == 1).map(|k| all[k]).collect();
        let g = Graph::new(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |acc, &(i, j)| acc | 1 << index[p[i]][p[j]]))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn incidence_is_farkas(g: &Graph) -> bool {
    is_farkas_related(&incidence(g).columns()).0
}

fn graph_criterion(graphs: &[Graph]) -> Outcome {
    let mut mismatches = Vec::new();
    for g in graphs {
        if has_two_edge_disjoint_odd_cycles(g) != !incidence_is_farkas(g) {
            mismatches.push(g);
        }
    }
    let k4 = incidence_is_farkas(&Graph::complete(4));
    let k5 = incidence_is_farkas(&Graph::complete(5));
    let anchors = k4 && !k5;
    let example = mismatches
        .first()
        .map(|g| format!("; first mismatch n={} edges={:?}", g.n(), g.edges()))
        .unwrap_or_default();
    outcome(
        mismatches.is_empty() && anchors,
        format!(
            "{}/{} graphs agree; K4 Farkas={k4}, K5 Farkas={k5}{example}",
            graphs.len() - mismatches.len(),
            graphs.len()
        ),
    )
}

fn vertex_disjoint_variant(graphs: &[Graph]) -> Outcome {
    let agree = graphs
        .iter()
        .filter(|g| has_two_vertex_disjoint_odd_cycles(g) != incidence_is_farkas(g))
        .count();
    outcome(agree == graphs.len(), format!("{agree}/{} graphs agree", graphs.len()))
}

fn random_oriented_graph(r: &mut ChaCha8Rng, n: usize) -> Digraph {
    let density = r.gen_range(0.2..=1.0);
    let mut arcs = Vec::new();
    for (i, j) in pairs(n) {
        if r.gen_bool(density) {
            arcs.push(if r.gen_bool(0.5) { (i, j) } else { (j, i) });
        }
    }
    Digraph::new(n, &arcs).unwrap()
}

fn directed_incidence_is_farkas() -> Outcome {
    let mut r = rng(4);
    let total = 100;
    let mut ok = 0;
    for _ in 0..total {
        let n = r.gen_range(1..=7);
        let d = random_oriented_graph(&mut r, n);
        ok += usize::from(is_farkas_related(&directed_incidence(&d).columns()).0);
    }
    outcome(ok == total, format!("{ok}/{total} Farkas-related"))
}

fn reps(points: &[IndecomposablePoint]) -> BTreeSet<IntVector> {
    points.iter().map(|p| p.rep.clone()).collect()
}

fn closed_forms_match_enumeration() -> Outcome {
    let (mut graphs, mut digraphs, mut bad) = (0, 0, Vec::new());
    for n in 2..=5 {
        for g in connected_graphs(n).into_iter().filter(|g| g.m() <= 7) {
            graphs += 1;
            if reps(&g_indecomposables(&g).unwrap()) != reps(&enumerate_indecomposables(&incidence(&g).columns()).unwrap())
            {
                bad.push(format!("g {:?}", g.edges()));
            }
            if reps(&gz_indecomposables(&g).unwrap()) != reps(&enumerate_indecomposables(&orientation_system(&g)).unwrap())
            {
                bad.push(format!("gz {:?}", g.edges()));
            }
            for flips in 0u32..(1 << g.m()) {
                let arcs: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| if flips >> k & 1 == 1 { (j, i) } else { (i, j) })
                    .collect();
                let d = Digraph::new(n, &arcs).unwrap();
                digraphs += 1;
                let generic = enumerate_indecomposables(&directed_incidence(&d).columns()).unwrap();
                if reps(&d_indecomposables(&d).unwrap()) != reps(&generic) {
                    bad.push(format!("d {arcs:?}"));
                }
            }
        }
    }
    let detail = format!(
        "{graphs} graphs, {digraphs} digraphs, {} mismatches{}",
        bad.len(),
        bad.first().map(|b| format!(" (first: {b})")).unwrap_or_default()
    );
    outcome(bad.is_empty(), detail)
}

/// Every vector in the product of `0..=caps[i]`.
fn grid(caps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn gale_ryser_on_complete_bipartite() -> Outcome {
    let (mut total, mut agree) = (0, 0);
    for p in 1..=3 {
        for q in 1..=3 {
            let g = Graph::complete_bipartite(p, q);
            let left = g.bipartition().unwrap();
            let m = g.m();
            let mut realizable = BTreeSet::new();
            for mask in 0u32..(1 << m) {
                let mut deg = vec![0usize; g.n()];
                for (k, &(i, j)) in g.edges().iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        deg[i] += 1;
                        deg[j] += 1;
                    }
                }
                realizable.insert(deg);
            }
            let caps: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
            let (lower, upper) = (vec![BigInt::zero(); m], vec![BigInt::from(1); m]);
            for s in grid(&caps) {
                let sb: IntVector = s.iter().map(|&x| BigInt::from(x)).collect();
                let verdict = gale_ryser_feasible(&g, &left, &sb, &lower, &upper).unwrap().is_feasible();
                total += 1;
                agree += usize::from(verdict == realizable.contains(&s));
            }
        }
    }
    outcome(agree == total, format!("{agree}/{total} degree vectors agree"))
}

fn signed_sequences_on_four_vertices() -> Outcome {
    let n = 4i64;
    let census = brute_force_signed_sequences(4, BoxSearchBudget::default()).unwrap();
    let (mut total, mut agree) = (0, 0);
    for a in -3..=3 {
        for b in -3..=a {
            for c in -3..=b {
                for d in -3..=c {
                    let seq = [a, b, c, d];
                    let mut prefix = 0;
                    let mut printed = seq.iter().sum::<i64>() == 0;
                    for (l, x) in seq.iter().enumerate() {
                        let l = l as i64 + 1;
                        prefix += x;
                        printed &= prefix <= l * (n - l);
                    }
                    let brute = census.contains(&seq.to_vec());
                    let ours = signed_graphical(&seq).unwrap();
                    let built = signed_graphical_realization(&seq).unwrap();
                    let built_ok = match &built {
                        Some(dg) => dg.signed_degrees() == seq,
                        None => true,
                    };
                    total += 1;
                    agree += usize::from(ours == brute && printed == brute && built.is_some() == brute && built_ok);
                }
            }
        }
    }
    outcome(agree == total, format!("{agree}/{total} nonincreasing sequences agree"))
}

fn random_connected_graph(r: &mut ChaCha8Rng, n: usize, max_m: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
    let mut rest: Vec<(usize, usize)> = pairs(n).into_iter().filter(|e| !edges.contains(e)).collect();
    let extra = r.gen_range(0..=max_m.saturating_sub(edges.len()).min(rest.len()));
    for _ in 0..extra {
        let k = r.gen_range(0..rest.len());
        edges.push(rest.swap_remove(k));
    }
    Graph::new(n, &edges).unwrap()
}

fn scores_agree(g: &Graph) -> (usize, usize) {
    let census = brute_force_orientations(g, BoxSearchBudget::default()).unwrap();
    let caps: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let (mut total, mut agree) = (0, 0);
    for r in grid(&caps) {
        let rb: IntVector = r.iter().map(|&x| BigInt::from(x)).collect();
        total += 1;
        agree += usize::from(orientation_scores_feasible(g, &rb).unwrap() == census.scores.contains(&r));
    }
    (agree, total)
}

fn orientation_scores() -> Outcome {
    let (mut agree, mut total) = (0, 0);
    for n in 1..=5 {
        let (a, t) = scores_agree(&Graph::complete(n));
        agree += a;
        total += t;
    }
    let mut r = rng(8);
    for _ in 0..50 {
        let n = r.gen_range(2..=8);
        let g = random_connected_graph(&mut r, n, 10);
        let (a, t) = scores_agree(&g);
        agree += a;
        total += t;
    }
    outcome(agree == total, format!("{agree}/{total} score vectors agree (K1..K5 and 50 random graphs)"))
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    IntMatrix::from_rows(cols, (0..rows).map(|_| (0..cols).map(|_| BigInt::from(r.gen_range(lo..=hi))).collect()).collect())
        .unwrap()
}

fn block_construction() -> Outcome {
    let mut r = rng(9);
    let total = 50;
    let (mut agree, mut related) = (0, 0);
    for _ in 0..total {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=3);
        let a = random_matrix(&mut r, n, m, -2, 2);
        let b = random_matrix(&mut r, n, m, -2, 2);
        let c = loop {
            let c = random_matrix(&mut r, m, m, -2, 2);
            if rank(&c) == m {
                break c;
            }
        };
        let d = IntMatrix::from_rows(
            m,
            (0..m)
                .map(|_| {
                    let mut row = vec![BigInt::zero(); m];
                    if r.gen_bool(0.7) {
                        row[r.gen_range(0..m)] = BigInt::from(if r.gen_bool(0.5) { 1 } else { -1 });
                    }
                    row
                })
                .collect(),
        )
        .unwrap();
        let e = block_construct(&a, &b, &c, &d).unwrap();
        let reduced = a.sub(&b.mul(&d).unwrap()).unwrap();
        let lhs = is_farkas_related(&e.columns()).0;
        let rhs = is_farkas_related(&reduced.columns()).0;
        agree += usize::from(lhs == rhs);
        related += usize::from(rhs);
    }
    outcome(agree == total, format!("{agree}/{total} agree ({related} Farkas-related)"))
}

fn decomposition_contract() -> Outcome {
    let mut r = rng(10);
    let total = 100;
    let mut ok = 0;
    while ok < total {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=6);
        let vs = random_columns(&mut r, n, m, -2, 2);
        let mut u = vec![Rational::zero(); n];
        for v in &vs {
            let c = Rational::from_integer(BigInt::from(r.gen_range(-3i64..=3)));
            for (ui, vi) in u.iter_mut().zip(v) {
                *ui += &c * Rational::from_integer(vi.clone());
            }
        }
        if u.iter().all(Zero::is_zero) {
            continue;
        }
        let parts = decompose(&u, &vs).unwrap();
        let mut sum = vec![Rational::zero(); n];
        for p in &parts {
            for (s, x) in sum.iter_mut().zip(p) {
                *s += x;
            }
        }
        let each_ok = parts.iter().all(|p| {
            is_indecomposable(p, &vs).unwrap()
                && vs.iter().all(|v| {
                    let a = inner_mixed(&u, v).unwrap();
                    let b = inner_mixed(p, v).unwrap();
                    !(a * b).is_negative()
                })
        });
        if sum != u || !each_ok || parts.is_empty() {
            return outcome(false, format!("contract broken for u={u:?}, vs={vs:?}"));
        }
        ok += 1;
    }
    outcome(true, format!("{ok}/{total} decompositions satisfy the contract"))
}

fn rational_vs_fourier_motzkin() -> Outcome {
    let mut r = rng(11);
    let total = 100;
    let (mut agree, mut feasible) = (0, 0);
    for _ in 0..total {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=5);
        let vs = random_columns(&mut r, n, m, -2, 2);
        let (lower, upper) = random_box(&mut r, m, -2, 2);
        let target = random_target(&mut r, &vs, &lower, &upper, n);
        let prob = FeasibilityProblem::new(vs, lower, upper, target).unwrap();
        let ours = rational_feasible(&prob).unwrap().is_feasible();
        let fm = fourier_motzkin_feasible(&prob, EliminationLimit::default()).unwrap();
        agree += usize::from(ours == fm);
        feasible += usize::from(fm);
    }
    outcome(agree == total, format!("{agree}/{total} agree ({feasible} feasible)"))
}

fn main() {
    // harness=false targets still receive libtest flags; `--list` must print nothing
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let small_graphs: Vec<Graph> = (1..=6).flat_map(connected_graphs).collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 integer feasibility vs box search", Box::new(integer_feasibility_vs_box_search)),
        ("2 circuit criterion vs rounding definition", Box::new(circuit_criterion_vs_rounding_definition)),
        ("3 edge-disjoint odd cycles vs Farkas incidence", Box::new(|| graph_criterion(&small_graphs))),
        ("4 directed incidence is Farkas", Box::new(directed_incidence_is_farkas)),
        ("5 closed-form indecomposables", Box::new(closed_forms_match_enumeration)),
        ("6 bipartite degree realization", Box::new(gale_ryser_on_complete_bipartite)),
        ("7 signed graphical sequences", Box::new(signed_sequences_on_four_vertices)),
        ("8 orientation scores", Box::new(orientation_scores)),
        ("9 block construction", Box::new(block_construction)),
        ("10 decomposition contract", Box::new(decomposition_contract)),
        ("11 rational feasibility vs elimination", Box::new(rational_vs_fourier_motzkin)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "{} [{name}] {} ({:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    let extra = vertex_disjoint_variant(&small_graphs);
    println!(
        "{} [3' vertex-disjoint odd cycles vs Farkas incidence, informational] {}",
        if extra.pass { "PASS" } else { "FAIL" },
        extra.detail
    );
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
