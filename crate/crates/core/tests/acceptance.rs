//! Acceptance suite: ten end-to-end criteria, each checked at its stated
//! tolerance and time budget against oracles written independently of the
//! library code. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use quasirandom::irreps::{self, RepBoundContext};
use quasirandom::productfree::{self, is_product_free};
use quasirandom::rng::{self, derive_seed, random_subset};
use quasirandom::setfun::{count_quadruples, count_triples, quasirandomness_constant};
use quasirandom::solver::{self, ConstraintSystem};
use quasirandom::spectral::{self, SpectralOptions};
use quasirandom::theorems::{self, ClauseStatus, KSource};
use quasirandom::{FiniteGroup, GroupFunction, Subset};

type Outcome = Result<String, String>;

fn g(d: &str) -> FiniteGroup {
    FiniteGroup::from_descriptor(d).unwrap_or_else(|e| panic!("{d}: {e}"))
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("took {t:.2?}, budget {budget:?}"))
}

/// Groups with at most `max_n` elements used by the brute-force criteria.
fn small_catalog(max_n: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=max_n).map(|n| format!("cyclic:{n}")).collect();
    out.extend((3..=max_n / 2).map(|n| format!("dihedral:{n}")));
    for d in [
        "sym:3", "sym:4", "sym:5", "alt:4", "alt:5", "psl2:5", "psl2:7", "cyclic:2*sym:3", "sym:3*sym:3",
        "cyclic:3*alt:4", "dihedral:4*cyclic:3", "cyclic:2*cyclic:2*cyclic:2", "(cyclic:2*cyclic:2)*dihedral:5",
    ] {
        out.push(d.to_string());
    }
    out.retain(|d| g(d).order() <= max_n);
    out
}

/// Catalog groups with at most 1200 elements and at most 40 conjugacy
/// classes (the character-table limits).
fn chartab_catalog() -> Vec<String> {
    let mut out: Vec<String> = (1..=40).map(|n| format!("cyclic:{n}")).collect();
    out.extend((3..=40).map(|n| format!("dihedral:{n}")));
    for d in [
        "sym:3", "sym:4", "sym:5", "sym:6", "alt:4", "alt:5", "alt:6", "psl2:5", "psl2:7", "psl2:11", "psl2:13",
        "cyclic:2*sym:3", "sym:3*sym:3", "cyclic:2*alt:5", "cyclic:3*sym:4", "sym:4*sym:3", "dihedral:5*cyclic:4",
        "cyclic:2*psl2:7", "cyclic:2*cyclic:2*cyclic:2",
    ] {
        out.push(d.to_string());
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut orders = Vec::new();
    for q in [5, 7, 11, 13] {
        orders.push(g(&format!("psl2:{q}")).order());
    }
    ensure(orders == [60, 168, 660, 1092], || format!("orders {orders:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("orders {orders:?} in {:.2?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let catalog = chartab_catalog();
    for d in &catalog {
        let grp = g(d);
        let n = grp.order();
        let t = irreps::character_table(&grp).map_err(|e| format!("{d}: {e}"))?;
        let sq: usize = t.dims.iter().map(|x| x * x).sum();
        ensure(sq == n, || format!("{d}: squared degrees sum to {sq}, expected {n}"))?;
        ensure(t.orthogonality_residual < 1e-6 * n as f64, || {
            format!("{d}: orthogonality residual {}", t.orthogonality_residual)
        })?;
        ensure(t.dims.len() == grp.conjugacy_classes().unwrap().len(), || format!("{d}: row count"))?;
    }
    for q in [5u32, 7, 11, 13] {
        let grp = g(&format!("psl2:{q}"));
        let rep = irreps::verify_rep_bounds(&grp, RepBoundContext::Psl2).map_err(|e| e.to_string())?;
        ensure(rep.pass && rep.k as f64 >= (q as f64 - 1.0) / 2.0, || format!("psl2:{q}: k = {}", rep.k))?;
    }
    let t = irreps::character_table(&g("psl2:7")).map_err(|e| e.to_string())?;
    let mut dims = t.dims.clone();
    dims.sort();
    ensure(dims == [1, 3, 3, 6, 7, 8], || format!("psl2:7 degrees {dims:?}"))?;
    ensure(t.min_nontrivial_dim() == Some(3), || "psl2:7 minimal degree".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} groups, psl2:7 degrees {dims:?}, in {:.2?}", catalog.len(), start.elapsed()))
}

/// Largest eigenvalue of the full Gram matrix by power iteration.
fn perron_root(gram: &spectral::Gram) -> f64 {
    let n = gram.n;
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 / 10.0).collect();
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| gram.get(i, j) as f64 * v[j]).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        lambda = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    lambda
}

fn psl2_7_subsets() -> Vec<Subset> {
    (0..100u64)
        .map(|i| {
            let mut r = rng::seeded(derive_seed(2024, i));
            let d = rng::uniform(&mut r, 0.05, 0.95);
            random_subset(168, d, &mut r)
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let grp = g("psl2:7");
    let opts = SpectralOptions::default();
    for (i, a) in psl2_7_subsets().iter().enumerate() {
        let rep = spectral::spectral_report(&grp, a, &opts).map_err(|e| e.to_string())?;
        let s = a.len() as f64;
        let perron = perron_root(&spectral::bipartite_cayley_gram(&grp, a).unwrap()).sqrt();
        ensure(rel_close(rep.lambda1, s, 1e-6) && rel_close(perron, s, 1e-6), || {
            format!("subset {i}: λ₁ = {}, power iteration {perron}, |A| = {s}", rep.lambda1)
        })?;
        ensure(rel_close(rep.sum_sq, s * 168.0, 1e-6), || format!("subset {i}: Σλ² = {}", rep.sum_sq))?;
        ensure(rel_close(rep.sum_4, rep.four_cycles as f64, 1e-6), || {
            format!("subset {i}: Σλ⁴ = {} vs {} four-cycles", rep.sum_4, rep.four_cycles)
        })?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("100 subsets of psl2:7 in {:.2?}", start.elapsed()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let grp = g("psl2:7");
    let opts = SpectralOptions::default();
    let mut min_mult = usize::MAX;
    let mut worst_ratio: f64 = 0.0;
    for (i, a) in psl2_7_subsets().iter().enumerate() {
        let rep = spectral::verify_spectral_gap_bound(&grp, a, 3, &opts).map_err(|e| e.to_string())?;
        let bound = (a.len() as f64 * 168.0 / 3.0).sqrt();
        ensure(rep.lambda2 <= bound * (1.0 + 1e-9), || format!("subset {i}: λ₂ = {} > {bound}", rep.lambda2))?;
        worst_ratio = worst_ratio.max(rep.lambda2 / bound);
        if rep.lambda2 > 1e-6 * rep.lambda1 {
            ensure(rep.multiplicity >= 3, || format!("subset {i}: multiplicity {}", rep.multiplicity))?;
            min_mult = min_mult.min(rep.multiplicity);
        }
    }
    Ok(format!("max λ₂/bound {worst_ratio:.4}, min top multiplicity {min_mult}, in {:.2?}", start.elapsed()))
}

fn brute_triples(grp: &FiniteGroup, a: &Subset, b: &Subset, c: &Subset) -> u64 {
    let mut t = 0;
    for x in a.iter() {
        for y in b.iter() {
            if c.contains(grp.mult(x, y)) {
                t += 1;
            }
        }
    }
    t
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let grp = g("psl2:13");
    let reports = theorems::triple_trials(&grp, 6, KSource::Formula, 0.5, (0.5, 0.9), 100, 55)
        .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (i, r) in reports.iter().enumerate() {
        let dev = r.clauses.iter().find(|c| c.name == "deviation").unwrap();
        ensure(dev.status == ClauseStatus::Pass, || format!("trial {i}: deviation {} > {}", dev.observed, dev.predicted))?;
        ensure(r.pass, || format!("trial {i}: {:?}", r.clauses))?;
        worst = worst.max(dev.observed / dev.predicted);
    }
    let catalog = small_catalog(200);
    for (i, d) in catalog.iter().enumerate() {
        let grp = g(d);
        let n = grp.order();
        let mut r = rng::seeded(derive_seed(5, i as u64));
        for _ in 0..2 {
            let a = random_subset(n, rng::uniform(&mut r, 0.0, 1.0), &mut r);
            let b = random_subset(n, rng::uniform(&mut r, 0.0, 1.0), &mut r);
            let c = random_subset(n, rng::uniform(&mut r, 0.0, 1.0), &mut r);
            let fast = count_triples(&grp, &a, &b, &c).unwrap();
            let slow = brute_triples(&grp, &a, &b, &c);
            ensure(fast == slow, || format!("{d}: {fast} vs brute force {slow}"))?;
        }
    }
    Ok(format!(
        "100 psl2:13 trials (max deviation/bound {worst:.4}), {} groups brute-forced, in {:.2?}",
        catalog.len(),
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut applicable = 0;
    for i in 0..100u64 {
        let desc = if i % 2 == 0 { "psl2:7" } else { "psl2:11" };
        let grp = g(desc);
        let n = grp.order();
        let mut r = rng::seeded(derive_seed(66, i));
        let a = random_subset(n, rng::uniform(&mut r, 0.3, 0.95), &mut r);
        let b = random_subset(n, rng::uniform(&mut r, 0.3, 0.95), &mut r);
        let delta = rng::uniform(&mut r, 0.1, 0.9);
        let k = theorems::formula_k(&grp).unwrap();
        let (bad, rep) = theorems::bad_translate_set(&grp, &a, &b, delta, k, KSource::Formula, &[0.25, 0.5, 1.0])
            .map_err(|e| e.to_string())?;
        for c in &rep.clauses {
            ensure(c.status != ClauseStatus::Fail, || format!("instance {i}: {} {} > {}", c.name, c.observed, c.predicted))?;
            if c.status == ClauseStatus::Pass {
                applicable += 1;
            }
        }
        if n <= 200 {
            let cut = theorems::bad_threshold(a.len(), b.len(), n, delta);
            for x in 0..n {
                let direct = b.iter().filter(|&y| a.contains(grp.mult(x, y))).count();
                ensure(bad.contains(x) == (direct as f64 <= cut), || format!("instance {i}: element {x}"))?;
            }
        }
    }
    for (i, d) in small_catalog(200).iter().enumerate().step_by(7) {
        let grp = g(d);
        let n = grp.order();
        let mut r = rng::seeded(derive_seed(67, i as u64));
        let a = random_subset(n, 0.6, &mut r);
        let b = random_subset(n, 0.6, &mut r);
        let (bad, _) = theorems::bad_translate_set(&grp, &a, &b, 0.3, 1, KSource::Supplied, &[]).map_err(|e| e.to_string())?;
        let cut = theorems::bad_threshold(a.len(), b.len(), n, 0.3);
        for x in 0..n {
            let direct = b.iter().filter(|&y| a.contains(grp.mult(x, y))).count();
            ensure(bad.contains(x) == (direct as f64 <= cut), || format!("{d}: element {x}"))?;
        }
    }
    Ok(format!("100 instances, {applicable} applicable size clauses, in {:.2?}", start.elapsed()))
}

fn brute_solvable_m2(grp: &FiniteGroup, sets: &BTreeMap<u32, Subset>) -> bool {
    sets[&1].iter().any(|x| sets[&2].iter().any(|y| sets[&3].contains(grp.mult(x, y))))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let groups: Vec<FiniteGroup> = [
        "cyclic:30", "dihedral:15", "sym:4", "alt:5", "sym:5", "psl2:7", "psl2:11", "cyclic:2*alt:5", "dihedral:50",
        "cyclic:5*alt:4",
    ]
    .iter()
    .map(|d| g(d))
    .collect();
    let ks: Vec<usize> = groups.iter().map(|grp| theorems::default_k(grp).unwrap().0).collect();
    let mut solved = 0;
    let mut drawn = 0u64;
    let mut guaranteed = 0;
    while solved < 200 {
        let idx = drawn as usize % groups.len();
        let grp = &groups[idx];
        let n = grp.order();
        let mut r = rng::seeded(derive_seed(77, drawn));
        drawn += 1;
        let sets: BTreeMap<u32, Subset> =
            (1..4u32).map(|mask| (mask, random_subset(n, rng::uniform(&mut r, 0.01, 0.2), &mut r))).collect();
        if !brute_solvable_m2(grp, &sets) {
            continue;
        }
        let sys = ConstraintSystem::forward_products(grp, 2, sets).map_err(|e| e.to_string())?;
        if solver::check_density_condition(&sys, ks[idx]).unwrap().pass {
            guaranteed += 1;
        }
        let out = solver::solve(grp, &sys, drawn, 2).map_err(|e| e.to_string())?;
        let w = out.witness.as_ref().ok_or_else(|| format!("{}: solvable instance not solved", grp.descriptor()))?;
        ensure(out.status.is_solved() && sys.is_satisfied_by(grp, w), || format!("{}: bad witness", grp.descriptor()))?;
        solved += 1;
    }

    // instances meeting the density condition need k ≥ 64 (m = 2); psl2:131 has k = 65
    let big = g("psl2:131");
    let k = theorems::formula_k(&big).unwrap();
    let mut r = rng::seeded(7131);
    let sets: BTreeMap<u32, Subset> = (1..4u32).map(|mask| (mask, random_subset(big.order(), 0.996, &mut r))).collect();
    let sys = ConstraintSystem::forward_products(&big, 2, sets).map_err(|e| e.to_string())?;
    let cond = solver::check_density_condition(&sys, k).unwrap();
    ensure(cond.pass, || format!("psl2:131 density condition margin {}", cond.worst_margin))?;
    let out = solver::solve(&big, &sys, 1, 2).map_err(|e| e.to_string())?;
    ensure(out.status == solver::SolveStatus::Solved, || format!("psl2:131: {:?}", out.status))?;
    ensure(sys.is_satisfied_by(&big, out.witness.as_ref().unwrap()), || "psl2:131 witness".into())?;

    // the m = 3 form with constant 16/k on psl2:37 (k = 18)
    let mid = g("psl2:37");
    let k = theorems::formula_k(&mid).unwrap();
    let mut r = rng::seeded(737);
    let sets: BTreeMap<u32, Subset> = (1..8u32).map(|mask| (mask, random_subset(mid.order(), 0.985, &mut r))).collect();
    let sys = ConstraintSystem::forward_products(&mid, 3, sets).map_err(|e| e.to_string())?;
    let cond = solver::check_density_condition_m3(&sys, k).unwrap();
    ensure(cond.pass, || format!("psl2:37 16/k margin {}", cond.worst_margin))?;
    let out = solver::solve(&mid, &sys, 2, 2).map_err(|e| e.to_string())?;
    ensure(out.status == solver::SolveStatus::Solved, || format!("psl2:37: {:?}", out.status))?;
    ensure(sys.is_satisfied_by(&mid, out.witness.as_ref().unwrap()), || "psl2:37 witness".into())?;

    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "200 solvable instances ({drawn} drawn, {guaranteed} meet the density condition at n ≤ 660), \
         psl2:131 and psl2:37 guarantee instances solved, in {:.2?}",
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    for i in 0..100u64 {
        let mut r = rng::seeded(derive_seed(88, i));
        let len = rng::uniform_int(&mut r, 1, 50) as usize;
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < len {
            let v = rng::uniform_int(&mut r, -1000, 1000);
            if v != 0 && !xs.contains(&v) {
                xs.push(v);
            }
        }
        let res = productfree::erdos_sum_free(&xs).map_err(|e| e.to_string())?;
        let y = &res.elements;
        ensure(y.iter().all(|v| xs.contains(v)), || format!("set {i}: output not a subset"))?;
        let free = y.iter().all(|&a| y.iter().all(|&b| !y.contains(&(a + b))));
        ensure(res.verified && free, || format!("set {i}: not sum-free"))?;
        ensure(res.size >= xs.len().div_ceil(3), || format!("set {i}: {} < ⌈{}/3⌉", res.size, xs.len()))?;
    }
    Ok(format!("100 integer sets in {:.2?}", start.elapsed()))
}

/// Largest product-free subset of ℤ/n by enumerating every bitmask.
fn cyclic_oracle(n: usize) -> u32 {
    let full = (1u32 << n) - 1;
    let rot = |s: u32, a: usize| if a == 0 { s } else { ((s << a) | (s >> (n - a))) & full };
    let mut best = 0;
    // the identity is never in a product-free set, so only even masks
    for s in (0..=full).step_by(2) {
        if s.count_ones() <= best {
            continue;
        }
        if (1..n).filter(|&a| s >> a & 1 == 1).all(|a| rot(s, a) & s == 0) {
            best = s.count_ones();
        }
    }
    best
}

fn independent_product_free(grp: &FiniteGroup, elems: &[usize]) -> bool {
    elems.iter().all(|&x| elems.iter().all(|&y| !elems.contains(&grp.mult(x, y))))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for n in 1..=24 {
        let res = productfree::max_product_free_exact(&g(&format!("cyclic:{n}"))).map_err(|e| e.to_string())?;
        let oracle = cyclic_oracle(n);
        ensure(res.size as u32 == oracle, || format!("cyclic:{n}: {} vs oracle {oracle}", res.size))?;
        let elems: Vec<usize> = res.elements.iter().map(|&e| e as usize).collect();
        ensure(res.verified && independent_product_free(&g(&format!("cyclic:{n}")), &elems), || format!("cyclic:{n} witness"))?;
    }
    let mut cosets = 0;
    for d in small_catalog(120).iter().step_by(3) {
        let grp = g(d);
        for x in 0..grp.order().min(12) {
            if grp.subgroup_closure(&[x]).unwrap().len() == grp.order() {
                continue;
            }
            let res = productfree::coset_product_free(&grp, &[x]).map_err(|e| e.to_string())?;
            let elems: Vec<usize> = res.elements.iter().map(|&e| e as usize).collect();
            ensure(res.verified && independent_product_free(&grp, &elems), || format!("{d}: coset of ⟨{x}⟩"))?;
            cosets += 1;
        }
    }
    let mut rep_sizes = Vec::new();
    for d in ["alt:5", "sym:6"] {
        let grp = g(d);
        let res = productfree::representation_product_free(&grp, 0.05).map_err(|e| e.to_string())?;
        let elems: Vec<usize> = res.elements.iter().map(|&e| e as usize).collect();
        if !elems.is_empty() {
            let s = Subset::from_indices(grp.order(), &elems).unwrap();
            ensure(res.verified && is_product_free(&grp, &s) && independent_product_free(&grp, &elems), || {
                format!("{d}: construction output is not product-free")
            })?;
        }
        rep_sizes.push(res.size);
    }
    Ok(format!(
        "cyclic:1..24 match the oracle, {cosets} cosets verified, representation sets of sizes {rep_sizes:?}, in {:.2?}",
        start.elapsed()
    ))
}

/// Sum over all quadruples with `ab⁻¹ = cd⁻¹` of
/// `f(a) conj f(b) conj f(c) f(d)`.
fn direct_quadruples(grp: &FiniteGroup, f: &[Complex64]) -> f64 {
    let n = grp.order();
    let mut total = Complex64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            let ab = grp.mult(a, grp.inv(b));
            for c in 0..n {
                // d = (c⁻¹ ab)⁻¹ solves ab⁻¹ = cd⁻¹
                let d = grp.inv(grp.mult(grp.inv(c), ab));
                total += f[a] * f[b].conj() * f[c].conj() * f[d];
            }
        }
    }
    total.re
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let catalog = small_catalog(60);
    for (i, d) in catalog.iter().enumerate() {
        let grp = g(d);
        let n = grp.order();
        let mut r = rng::seeded(derive_seed(1010, i as u64));
        let values: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng::uniform(&mut r, -1.0, 1.0), rng::uniform(&mut r, -1.0, 1.0)))
            .collect();
        let f = GroupFunction::new(values.clone()).unwrap();
        let fast = count_quadruples(&grp, &f).unwrap();
        let slow = direct_quadruples(&grp, &values);
        ensure(rel_close(fast, slow, 1e-6), || format!("{d}: {fast} vs direct {slow}"))?;
    }
    for n in 2..=64 {
        let grp = g(&format!("cyclic:{n}"));
        let f = GroupFunction::new((0..n).map(|x| Complex64::from_polar(1.0, TAU * x as f64 / n as f64)).collect()).unwrap();
        let c = quasirandomness_constant(&grp, &f).unwrap().constant;
        ensure((c - 1.0).abs() <= 1e-9, || format!("cyclic:{n}: constant {c}"))?;
    }
    Ok(format!("{} groups with n ≤ 60, characters of cyclic:2..64, in {:.2?}", catalog.len(), start.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("group construction", criterion_1),
        ("character tables", criterion_2),
        ("spectral identities", criterion_3),
        ("spectral gap bound", criterion_4),
        ("triple counts", criterion_5),
        ("bad translates", criterion_6),
        ("solver soundness and guarantee", criterion_7),
        ("sum-free subsets of integers", criterion_8),
        ("product-free constructions", criterion_9),
        ("quadruple identity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
