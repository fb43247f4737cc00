//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.
//!
//! Positional arguments filter criteria by substring, e.g.
//! `cargo test -p hoi-core --test acceptance -- sign`.

mod common;

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use common::*;
use hoi_core::format::{read_matrix_csv, read_tensor, write_matrix_csv, write_tensor};
use hoi_core::oracle::{gaussian_oinfo, sample_gaussian, GaussianSystem};
use hoi_core::{
    build_cache, co_information, eigendecomposition_budget, entropy, entropy_order2, gram,
    oinfo_tensor, pairwise_view, pearson_view, standardize, triplet_count, triplet_o_information,
    with_threads, KernelParams, Recording, TripletProgress,
};
use rand::Rng;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn params() -> KernelParams {
    KernelParams::new(5.0, 1.01).unwrap()
}

fn entropy_limits() -> Outcome {
    let started = Instant::now();
    let identical = gram(&[0.7; 16], 5.0).unwrap();
    let h0 = entropy(&identical, 1.01).unwrap().bits();
    // Pairwise distances of at least 50 sigma.
    let separated = gram(&[0.0, 250.0, 500.0, 1000.0], 5.0).unwrap();
    let h2 = entropy(&separated, 1.01).unwrap().bits();
    let elapsed = started.elapsed();
    check(
        h0.abs() < 1e-9 && (h2 - 2.0).abs() < 1e-6 && elapsed < Duration::from_millis(100),
        format!("identical H = {h0:.3e}, separated H = {h2:.12} bits, {elapsed:?}"),
    )
}

fn frobenius_oracle() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let samples = normals(&mut r, 64);
        let sigma = r.random_range(0.05..6.0);
        let g = gram(&samples, sigma).unwrap();
        let eig = entropy(&g, 2.0).unwrap().bits();
        let frob = entropy_order2(&g).bits();
        worst = worst.max((eig - frob).abs());
    }
    check(worst < 1e-10, format!("max |eig - frobenius| = {worst:.3e} over 100 Grams (n = 64)"))
}

fn co_information_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for rec_seed in 0..4 {
        let rec = structured_recording(12, 100, 300 + rec_seed);
        let cache = build_cache(&rec, params()).unwrap();
        let mut r = rng(400 + rec_seed);
        for _ in 0..50 {
            let order = {
                let mut v: Vec<usize> = (0..12).collect();
                for i in (1..12).rev() {
                    v.swap(i, r.random_range(0..=i));
                }
                v
            };
            let (i, j, k) = (order[0], order[1], order[2]);
            let b = triplet_o_information(&cache, i, j, k).unwrap();
            let co = co_information(&cache, i, j, k, b.triple_joint.bits());
            worst = worst.max(((b.tc - b.dtc) - co).abs());
            checked += 1;
        }
    }
    check(
        checked == 200 && worst < 1e-10,
        format!("max |(TC - DTC) - co-information| = {worst:.3e} over {checked} triplets (T = 100)"),
    )
}

fn triplet_o(rec: &Recording) -> f64 {
    let cache = build_cache(rec, params()).unwrap();
    triplet_o_information(&cache, 0, 1, 2).unwrap().o
}

/// Unit-variance 3x3 system with correlations uniform on (-0.9, 0.9),
/// redrawn until the smallest eigenvalue exceeds 0.05.
fn random_system(r: &mut rand_chacha::ChaCha8Rng) -> GaussianSystem {
    loop {
        let c: [f64; 3] = std::array::from_fn(|_| r.random_range(-0.9..0.9));
        let cov = nalgebra::Matrix3::new(1.0, c[0], c[1], c[0], 1.0, c[2], c[1], c[2], 1.0);
        if cov.symmetric_eigenvalues().min() > 0.05 {
            return GaussianSystem::correlated_triple(c[0], c[1], c[2]).unwrap();
        }
    }
}

fn sign_oracles() -> Outcome {
    let started = Instant::now();
    let redundant = (0..100).filter(|&s| triplet_o(&redundant_triplet(400, 10_000 + s)) > 0.0).count();
    let synergistic = (0..100).filter(|&s| triplet_o(&xor_triplet(400, 20_000 + s)) < 0.0).count();
    let independent: f64 = (0..100)
        .map(|s| triplet_o(&independent_triplet(400, 30_000 + s)).abs())
        .sum::<f64>()
        / 100.0;

    let mut agree = 0;
    let mut systems = 0;
    let mut attempt = 0u64;
    while systems < 100 {
        let mut r = rng(40_000 + attempt);
        attempt += 1;
        let sys = random_system(&mut r);
        let shannon = gaussian_oinfo(&sys).unwrap();
        if shannon.abs() <= 0.1 {
            continue;
        }
        let rec = standardize(&sample_gaussian(&sys, 500, 50_000 + attempt).unwrap()).unwrap();
        let estimated = triplet_o(&rec);
        systems += 1;
        if estimated.signum() == shannon.signum() {
            agree += 1;
        }
    }
    let elapsed = started.elapsed();
    check(
        redundant >= 95
            && synergistic >= 95
            && independent < 0.05
            && agree >= 90
            && elapsed < Duration::from_secs(300),
        format!(
            "redundant O>0 {redundant}/100, XOR O<0 {synergistic}/100, independent mean |O| = {independent:.2e}, \
             Gaussian sign agreement {agree}/{systems} ({attempt} drawn), {elapsed:.1?}"
        ),
    )
}

fn serialized_tensor(threads: usize, rec: &Recording) -> (Vec<u8>, Duration) {
    with_threads(threads, || {
        let started = Instant::now();
        let cache = build_cache(rec, params()).unwrap();
        let tensor = oinfo_tensor(&cache, None).unwrap();
        let elapsed = started.elapsed();
        let mut bytes = Vec::new();
        write_tensor(&mut bytes, &tensor).unwrap();
        (bytes, elapsed)
    })
    .unwrap()
}

fn determinism() -> Outcome {
    let rec = structured_recording(20, 100, 7);
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let (one, _) = serialized_tensor(1, &rec);
    let (four, four_time) = serialized_tensor(4, &rec);
    let (all, _) = serialized_tensor(max, &rec);
    check(
        one == four && one == all && four_time < Duration::from_secs(10),
        format!(
            "threads 1/4/{max}: byte-identical = {}, {} bytes, 4-thread run {four_time:.2?}",
            one == four && one == all,
            one.len()
        ),
    )
}

fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn scale_target() -> Outcome {
    let (c, t) = (116, 150);
    let rec = structured_recording(c, t, 116);
    let total = triplet_count(c);
    let done = AtomicUsize::new(0);
    let report = |_: TripletProgress| {
        let n = done.fetch_add(1, Ordering::Relaxed) + 1;
        if n % 25_000 == 0 {
            eprintln!("  scale: {n}/{total} triplets");
        }
    };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let started = Instant::now();
    let (tensor, count) = with_threads(threads, || {
        let cache = build_cache(&rec, params()).unwrap();
        let tensor = oinfo_tensor(&cache, Some(&report)).unwrap();
        (tensor, cache.eigendecompositions())
    })
    .unwrap();
    let elapsed = started.elapsed();
    let peak = peak_rss_bytes();
    let expected = eigendecomposition_budget(c);
    let nonzero = tensor.entries().iter().filter(|v| **v != 0.0).count();
    check(
        total == 253_460
            && count == expected
            && expected == 116 + 6_670 + 253_460
            && done.load(Ordering::Relaxed) == total
            && elapsed <= Duration::from_secs(30 * 60)
            && peak.is_some_and(|p| p <= 4 << 30),
        format!(
            "C = {c}, T = {t}: {total} triplets, {count} eigendecompositions (expected {expected}), \
             {nonzero} nonzero cells, {elapsed:.1?} on {threads} thread(s), peak RSS {}",
            peak.map_or("unavailable".into(), |p| format!("{:.1} MiB", p as f64 / 1048576.0))
        ),
    )
}

fn format_round_trip() -> Outcome {
    let rec = structured_recording(9, 60, 8);
    let cache = build_cache(&rec, params()).unwrap();
    let tensor = oinfo_tensor(&cache, None).unwrap();
    let mut bytes = Vec::new();
    write_tensor(&mut bytes, &tensor).unwrap();
    let back = read_tensor(bytes.as_slice()).unwrap();
    let tensor_exact = back.size() == tensor.size()
        && back.entries().iter().zip(tensor.entries()).all(|(a, b)| a.to_bits() == b.to_bits());

    let mut worst = 0.0f64;
    for view in [pairwise_view(&cache), pearson_view(&rec).unwrap()] {
        let mut text = Vec::new();
        write_matrix_csv(&mut text, &view).unwrap();
        let parsed = read_matrix_csv(text.as_slice()).unwrap();
        if parsed.size() != view.size() {
            return Err(format!("CSV size {} != {}", parsed.size(), view.size()));
        }
        for (a, b) in parsed.entries().iter().zip(view.entries()) {
            worst = worst.max((a - b).abs());
        }
    }
    check(
        tensor_exact && worst <= 1e-15,
        format!("HOI1 bit-exact = {tensor_exact} ({} bytes), CSV max deviation = {worst:.1e}", bytes.len()),
    )
}

fn main() {
    let criteria = [
        Criterion { name: "entropy-limits", run: entropy_limits },
        Criterion { name: "alpha2-frobenius-oracle", run: frobenius_oracle },
        Criterion { name: "co-information-identity", run: co_information_identity },
        Criterion { name: "sign-oracles", run: sign_oracles },
        Criterion { name: "determinism", run: determinism },
        Criterion { name: "format-round-trip", run: format_round_trip },
        Criterion { name: "scale-target", run: scale_target },
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();

    let mut failed = 0;
    let mut ran = 0;
    for criterion in criteria
        .iter()
        .filter(|c| filters.is_empty() || filters.iter().any(|f| c.name.contains(f.as_str())))
    {
        ran += 1;
        let outcome = std::panic::catch_unwind(criterion.run)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {:<26} {detail}", criterion.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:<26} {detail}", criterion.name);
            }
        }
        std::io::stdout().flush().ok();
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
