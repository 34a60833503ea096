//! Acceptance gate. Every criterion is an exact check (zero tolerance) run
//! inside its own wall-clock budget; one PASS/FAIL line is printed per
//! criterion and the process fails if any criterion does.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use skewrec::cohomology::{build_tower, certify_recurrence, recurrentize, simple_cocycle, trivialize_on_tower, SimplePartition};
use skewrec::harness::generate::{
    random_aperiodic, random_coboundary, random_extension, random_partition, random_perm, random_subset, rng_from_seed,
};
use skewrec::measure::{halmos_distance, uniform_distance, CellSet, DyadicFamily, Perm};
use skewrec::skew::{recurrence_set, SkewProduct};
use skewrec::{Error, Rational};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const BUDGET_METRIC: Duration = Duration::from_secs(1);
const BUDGET_COCYCLE: Duration = Duration::from_secs(5);
const BUDGET_TOWER: Duration = Duration::from_secs(1);
const BUDGET_LEMMA1: Duration = Duration::from_secs(10);
const BUDGET_CERTIFICATE: Duration = Duration::from_secs(30);
const BUDGET_DENSITY: Duration = Duration::from_secs(60);
const BUDGET_DETERMINISM: Duration = Duration::from_secs(5);

/// 1. Metric axioms, domination by 4·uniform and separation on all pairs at N = 4.
fn metric_suite() -> Outcome {
    let fam = DyadicFamily::new(sp(4));
    let perms = all_perms(4);
    ensure!(perms.len() == 24, "expected 24 permutations");
    let four = Rational::from_integer(4);
    let d: Vec<Vec<Rational>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| halmos_distance(p, q, &fam).unwrap()).collect())
        .collect();
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            ensure!(d[i][j].is_zero() == (p == q), "separation fails at {p:?}, {q:?}");
            ensure!(d[i][j] == d[j][i], "asymmetric at {p:?}, {q:?}");
            let u = ok(uniform_distance(p, q))?;
            ensure!(d[i][j] <= ok(four.checked_mul(&u))?, "ρ > 4u at {p:?}, {q:?}");
            for k in 0..perms.len() {
                ensure!(d[i][k] <= ok(d[i][j].checked_add(&d[j][k]))?, "triangle fails at {i},{j},{k}");
            }
        }
    }
    Ok("576 pairs, 13824 triangles".into())
}

/// 2. C(x, n+k) = C(S^n x, k) ∘ C(x, n) over 100 seeded skew products at 4 × 4.
fn cocycle_law() -> Outcome {
    let mut checks = 0;
    for seed in 0..100u64 {
        let mut rng = rng_from_seed(seed);
        let base = random_perm(sp(4), &mut rng);
        let r = ok(random_extension(base, sp(4), None, &mut rng))?;
        for x in 0..4 {
            for n in 0..=8 {
                for k in 0..=(8 - n) {
                    let lhs = ok(r.cocycle(x, n + k))?;
                    let rhs = ok(ok(r.cocycle(r.base().iterate(x, n), k))?.compose(&ok(r.cocycle(x, n))?))?;
                    ensure!(lhs == rhs, "seed {seed}: law fails at x={x}, n={n}, k={k}");
                    ensure!(lhs.forward() == brute_cocycle(&r, x, n + k).as_slice(), "seed {seed}: oracle mismatch");
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} identities"))
}

/// Cycle types of `n` with parts in nonincreasing order.
fn cycle_types(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// 3. Rokhlin–Halmos towers on the grid N_X ≤ 16, height ≤ 4, eps ∈ {1/2, 1/4}.
fn rokhlin_halmos() -> Outcome {
    let epsilons = [rat("1/2"), rat("1/4")];
    let mut built = 0;
    let mut bases: Vec<Perm> = Vec::new();
    for nx in [2, 4, 8] {
        bases.extend(all_perms(nx));
    }
    let mut rng = rng_from_seed(316);
    for lengths in cycle_types(16) {
        let canonical = ok(Perm::with_cycle_type(sp(16), &lengths))?;
        for _ in 0..4 {
            let relabel = random_perm(sp(16), &mut rng);
            bases.push(ok(relabel.compose(&canonical))?.compose(&relabel.inverse()).unwrap());
        }
        bases.push(canonical);
    }
    for s in &bases {
        let min_cycle = s.min_cycle_length();
        let nx = s.len();
        for height in 1..=4usize {
            for eps in &epsilons {
                let needed = Rational::from_integer(height as i128).checked_div(eps).unwrap();
                let eligible = Rational::from_integer(min_cycle as i128) >= needed;
                let result = build_tower(s, height, *eps);
                if !eligible {
                    ensure!(result.is_err(), "tower accepted without its precondition: {s:?} h={height}");
                    continue;
                }
                let tower = ok(result)?;
                built += 1;
                let mut seen = vec![false; nx];
                for (i, level) in tower.levels().iter().enumerate() {
                    for &c in level.cells() {
                        ensure!(!seen[c], "levels overlap at cell {c} for {s:?}");
                        seen[c] = true;
                    }
                    let image: Vec<usize> = tower.base_set().cells().iter().map(|&b| s.iterate(b, i)).collect();
                    ensure!(CellSet::new(s.space(), image).unwrap() == *level, "level {i} is not S^i B");
                }
                let covered = seen.iter().filter(|&&b| b).count();
                ensure!(tower.coverage() == Rational::fraction(covered, nx), "coverage bookkeeping");
                ensure!(tower.coverage() > Rational::ONE.checked_sub(eps).unwrap(), "coverage <= 1 - eps for {s:?}");
                ensure!(
                    tower.residual().cells().iter().all(|&c| !seen[c]) && tower.residual().len() + covered == nx,
                    "residual is not the complement"
                );
            }
        }
    }
    let eight = build_tower(&Perm::rotation(sp(8), 1), 3, rat("1/2")).map_err(|e| e.to_string())?;
    ensure!(eight.coverage() == rat("3/4"), "8-cycle/N=3 coverage {} != 3/4", eight.coverage());
    Ok(format!("{built} towers over {} bases; 8-cycle coverage 3/4", bases.len()))
}

/// 4. Discrepancy ≤ eps + 1/N for 100 seeded coboundaries at 16 × 16.
fn lemma1_bound() -> Outcome {
    let params = [(2usize, rat("1/2")), (4, rat("1/2")), (2, rat("1/4")), (4, rat("1/4"))];
    let mut worst = Rational::ZERO;
    for seed in 0..100u64 {
        let (height, eps) = params[seed as usize % params.len()];
        let scale = Rational::from_integer(height as i128).checked_div(&eps).unwrap().ceil() as usize;
        let mut rng = rng_from_seed(1000 + seed);
        let base = ok(random_aperiodic(sp(16), scale, &mut rng))?;
        let r = ok(random_coboundary(base, sp(16), &mut rng))?;
        let tower = ok(build_tower(r.base(), height, eps))?;
        let triv = ok(trivialize_on_tower(&r, &tower))?;
        let bound = ok(eps.checked_add(&Rational::fraction(1, height)))?;
        ensure!(triv.discrepancy <= bound, "seed {seed}: discrepancy {} > {bound}", triv.discrepancy);
        worst = worst.max(ok(triv.discrepancy.checked_div(&bound))?);
    }
    Ok(format!("max discrepancy/bound = {worst}"))
}

fn check_certificate(s: &Perm, part: &SimplePartition, r: &SkewProduct, floor: usize, tag: &str) -> Result<(), String> {
    let cert = ok(certify_recurrence(s, part, floor))?;
    let block = &part.blocks()[cert.block];
    ensure!(cert.n > floor, "{tag}: n = {} not above floor {floor}", cert.n);
    ensure!(!cert.witness.is_empty(), "{tag}: empty witness");
    for &x in cert.witness.cells() {
        ensure!(block.contains(x) && block.contains(s.iterate(x, cert.n)), "{tag}: {x} is not a return");
        let c = brute_cocycle(r, x, cert.n);
        ensure!(c.iter().enumerate().all(|(i, &y)| i == y), "{tag}: C({x}, {}) != Id", cert.n);
    }
    let fam = DyadicFamily::new(r.fiber_space());
    for m in [1, 10, 100] {
        let rep = ok(recurrence_set(r, m, cert.n, block, &fam))?;
        ensure!(rep.measure >= cert.witness.measure(), "{tag}: μ(D) < |W|/N_X at m={m}");
    }
    Ok(())
}

/// 5. Certificates for simple cocycles on a partition grid, N_floor ≤ 32, cross-checked by D(m, n, R, B_k).
fn lemma3_certificates() -> Outcome {
    let mut instances: Vec<(Perm, SimplePartition)> = Vec::new();
    let mut rng = rng_from_seed(55);
    for n in [2, 4] {
        let partitions = set_partitions(n);
        for s in all_perms(n) {
            for labels in &partitions {
                let k = labels.iter().max().unwrap() + 1;
                let perms = (0..k).map(|_| random_perm(sp(n), &mut rng)).collect();
                instances.push((s.clone(), ok(SimplePartition::from_labels(labels, perms))?));
            }
        }
    }
    for n in [8, 16] {
        for i in 0..48 {
            let s = if i % 3 == 0 { Perm::rotation(sp(n), 1) } else { random_perm(sp(n), &mut rng) };
            let part = ok(random_partition(sp(n), sp(n), 1 + i % n, &mut rng))?;
            instances.push((s, part));
        }
        for width in [1, 2, n / 2] {
            let labels: Vec<usize> = (0..n).map(|x| x / width).collect();
            let perms = (0..n / width).map(|_| random_perm(sp(n), &mut rng)).collect();
            instances.push((random_perm(sp(n), &mut rng), ok(SimplePartition::from_labels(&labels, perms))?));
        }
    }
    for (i, (s, part)) in instances.iter().enumerate() {
        let r = ok(simple_cocycle(s, part))?;
        for floor in 1..=32 {
            check_certificate(s, part, &r, floor, &format!("instance {i}, floor {floor}"))?;
        }
    }
    Ok(format!("{} partitions x 32 floors", instances.len()))
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(labels: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == n {
            out.push(labels.clone());
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for k in 0..=next {
            labels.push(k);
            rec(labels, n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// 6. recurrentize on 50 seeded extensions at 16 × 16 for δ ∈ {1/2, 1/4}, certified on a seeded A with μ(A) ≥ 1/4.
fn constructive_density() -> Outcome {
    let mut worst = [Rational::ZERO, Rational::ZERO];
    for (di, delta) in [rat("1/2"), rat("1/4")].into_iter().enumerate() {
        let scale = Rational::from_integer(2).checked_div(&delta).unwrap().ceil() as usize;
        for seed in 0..50u64 {
            let tag = format!("delta {delta}, seed {seed}");
            let mut rng = rng_from_seed(7000 + seed);
            let base = ok(random_aperiodic(sp(16), scale, &mut rng))?;
            let r = ok(random_extension(base, sp(16), None, &mut rng))?;
            let a = ok(random_subset(sp(16), 4, &mut rng))?;
            ensure!(a.measure() >= rat("1/4"), "{tag}: subset too small");
            let floor = 1 + (seed as usize * 7) % 32;
            let out = ok(recurrentize(&r, delta, floor, &a))?;
            let differing = (0..16)
                .flat_map(|x| (0..16).map(move |y| (x, y)))
                .filter(|&(x, y)| r.apply(x, y).unwrap() != out.extension.apply(x, y).unwrap())
                .count();
            ensure!(out.dist == Rational::fraction(differing, 256), "{tag}: reported dist disagrees with count");
            ensure!(out.dist < delta, "{tag}: dist {} >= delta", out.dist);
            ensure!(out.extension.base() == r.base(), "{tag}: base changed");
            let cert = &out.certificate;
            let target = out.partition.blocks()[cert.block].intersection(&a);
            ensure!(cert.n > floor && !cert.witness.is_empty(), "{tag}: bad certificate");
            for &x in cert.witness.cells() {
                ensure!(target.contains(x) && target.contains(r.base().iterate(x, cert.n)), "{tag}: {x} not a return in A");
                let c = brute_cocycle(&out.extension, x, cert.n);
                ensure!(c.iter().enumerate().all(|(i, &y)| i == y), "{tag}: C({x}) != Id");
            }
            let fam = DyadicFamily::new(sp(16));
            for m in [1, 10, 100] {
                let rep = ok(recurrence_set(&out.extension, m, cert.n, &a, &fam))?;
                ensure!(rep.measure.is_positive(), "{tag}: μ(D(m={m}, n, R', A)) = 0");
            }
            worst[di] = worst[di].max(out.dist);
        }
    }
    Ok(format!("max dist {} (δ=1/2), {} (δ=1/4)", worst[0], worst[1]))
}

/// 7. Every CLI subcommand repeated with the same inputs gives identical bytes.
fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_skewrec");
    let configs = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let c = |name: &str| configs.join(name).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["metric".into(), c("swap4.json"), c("cycle8.json").replace("cycle8", "swap4")],
        vec!["tower".into(), "--base".into(), c("cycle8.json"), "--height".into(), "2".into(), "--eps".into(), "1/2".into()],
        vec!["profile".into(), c("random16.toml"), "--out".into(), "profile.csv".into(), "--plot".into(), "profile.svg".into()],
        vec!["witness".into(), c("random16.toml"), "--m".into(), "10".into(), "--floor".into(), "5".into(), "--horizon".into(), "200".into()],
        vec!["recurrentize".into(), c("random16.toml"), "--delta".into(), "1/2".into(), "--floor".into(), "9".into()],
        vec!["certify".into(), c("simple4.toml"), "--floor".into(), "11".into()],
    ];
    let mut compared = 0;
    for args in &runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let out = Command::new(bin).args(args).env("SKEWREC_OUT_DIR", dir.path()).output().map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
            let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
                .unwrap()
                .map(|e| e.unwrap())
                .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap()))
                .collect();
            files.sort();
            outputs.push((out.stdout, files));
        }
        ensure!(outputs[0] == outputs[1], "{args:?} differs between runs");
        compared += 1;
    }
    Ok(format!("{compared} subcommands byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("AC1 metric suite (N=4, all pairs)", metric_suite, BUDGET_METRIC),
        ("AC2 cocycle law (100 skew products, 4x4)", cocycle_law, BUDGET_COCYCLE),
        ("AC3 Rokhlin-Halmos towers (N_X<=16)", rokhlin_halmos, BUDGET_TOWER),
        ("AC4 trivialization bound eps + 1/N (100 coboundaries)", lemma1_bound, BUDGET_LEMMA1),
        ("AC5 simple-cocycle certificates (N_floor<=32)", lemma3_certificates, BUDGET_CERTIFICATE),
        ("AC6 constructive density on A (50 extensions x 2 deltas)", constructive_density, BUDGET_DENSITY),
        ("AC7 CLI determinism", determinism, BUDGET_DETERMINISM),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}  [{elapsed:.2?}]  {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}  [{elapsed:.2?}]  {why}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 7 acceptance criteria passed");
}

#[allow(dead_code)]
fn _error_is_used(e: Error) -> Error {
    e
}
