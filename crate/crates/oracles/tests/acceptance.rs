//! The twelve acceptance criteria, one PASS/FAIL line each.

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use randext::ntt::{build_plan, ntt_forward, ntt_inverse};
use randext::params::{satisfies_output_bound, OutputLength};
use randext::trevisan::{basic_weak_design, block_sizes, block_weak_design, find_irreducible, WeakDesign};
use randext::{
    calc_output_length, calc_seed_length, circulant_extract, circulant_extract_with, compute_params,
    cyclic_convolve_mod2, dodis_extract, dodis_extract_with, is_na_prime, na_search, toeplitz_extract,
    toeplitz_extract_with, trevisan_extract, vn_extract, BitString, Direction, Epsilon, ExtractorKind,
    ExtractorSpec, ModulusChoice, ModulusSelection, SecurityModel, SeedEntropy,
};
use randext_oracles::distance::index_to_bits;
use randext_oracles::{
    collision_probability, naive_convolve, naive_extract, naive_von_neumann, statistical_distance_strong,
    LinearKind, NaiveTrevisan, Source,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.random_range(0..2u8)).collect()
}

fn bs(bits: &[u8]) -> BitString {
    BitString::from_bits(bits)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << -e)
    }
}

fn admissible_up_to(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&n| is_na_prime(n)).collect()
}

fn lib_kind(kind: LinearKind) -> fn(&BitString, &BitString, usize) -> randext::Result<BitString> {
    match kind {
        LinearKind::Circulant => circulant_extract,
        LinearKind::Dodis => dodis_extract,
        LinearKind::Toeplitz => toeplitz_extract,
    }
}

fn non_constant(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    loop {
        let x = random_bits(rng, n);
        if x.contains(&0) && x.contains(&1) {
            return x;
        }
    }
}

/// `(x, y, m)` with the shape required by `kind` and input size drawn
/// from `sizes` (seed length for circulant/dodis, input length for toeplitz).
fn random_instance(rng: &mut ChaCha8Rng, kind: LinearKind, sizes: &[u64], max_m: usize) -> (Vec<u8>, Vec<u8>, usize) {
    let n = sizes[rng.random_range(0..sizes.len())] as usize;
    match kind {
        LinearKind::Circulant => {
            let m = rng.random_range(1..=n - 1);
            (random_bits(rng, n - 1), random_bits(rng, n), m)
        }
        LinearKind::Dodis => {
            let m = rng.random_range(1..=n);
            (non_constant(rng, n), random_bits(rng, n), m)
        }
        LinearKind::Toeplitz => {
            let m = rng.random_range(1..=max_m);
            (random_bits(rng, n), random_bits(rng, n + m - 1), m)
        }
    }
}

fn ntt_exactness() -> Outcome {
    let mut rng = rng(1);
    let lengths = admissible_up_to(4099);
    let start = Instant::now();
    for _ in 0..1000 {
        let n = lengths[rng.random_range(0..lengths.len())] as usize;
        let u = random_bits(&mut rng, n);
        let v = random_bits(&mut rng, n);
        let fast = cyclic_convolve_mod2(&bs(&u), &bs(&v)).map_err(|e| e.to_string())?;
        let wide = |b: &[u8]| b.iter().map(|&x| x as u64).collect::<Vec<_>>();
        let slow = naive_convolve(&wide(&u), &wide(&v)).map_err(|e| e.to_string())?;
        let slow: Vec<u8> = slow.iter().map(|w| (w % 2) as u8).collect();
        ensure!(fast.to_bits() == slow, "mismatch at n = {n}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:.2?}");
    Ok(format!("1000 pairs in {elapsed:.2?}"))
}

fn transform_round_trip() -> Outcome {
    let mut rng = rng(2);
    let mut checked = 0;
    for choice in [ModulusChoice::Small, ModulusChoice::Big] {
        for log in 1..=16 {
            let size = 1usize << log;
            let plan = build_plan(size, choice).map_err(|e| e.to_string())?;
            let p = plan.modulus();
            for _ in 0..3 {
                let v: Vec<u64> = (0..size).map(|_| rng.random_range(0..p)).collect();
                let forward = ntt_forward(&v, &plan).map_err(|e| e.to_string())?;
                let back = ntt_inverse(&forward, &plan).map_err(|e| e.to_string())?;
                ensure!(back == v, "round trip failed for L = {size} on {choice}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} vectors, L = 2..2^16, both moduli"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng(3);
    let primes = admissible_up_to(131);
    let lengths: Vec<u64> = (1..=131).collect();
    for kind in LinearKind::ALL {
        let sizes = if kind == LinearKind::Toeplitz { &lengths } else { &primes };
        for _ in 0..200 {
            let (x, y, m) = random_instance(&mut rng, kind, sizes, 131);
            let fast = lib_kind(kind)(&bs(&x), &bs(&y), m).map_err(|e| format!("{kind:?}: {e}"))?;
            let slow = naive_extract(kind, &x, &y, m).map_err(|e| format!("{kind:?}: {e}"))?;
            ensure!(fast.to_bits() == slow, "{kind:?} differs at n = {}, m = {m}", x.len());
        }
    }
    Ok("600 instances".into())
}

fn two_universality() -> Outcome {
    let start = Instant::now();
    let inputs: Vec<Vec<u8>> = (0..16).map(|i| index_to_bits(i, 4)).collect();
    let seeds: Vec<BitString> = (0..32).map(|s| bs(&index_to_bits(s, 5))).collect();
    let mut report = Vec::new();
    for m in 1..=4 {
        let mut worst = BigRational::zero();
        let mut pairs = 0;
        for i in 0..16 {
            for j in i + 1..16 {
                let p = collision_probability(LinearKind::Circulant, &inputs[i], &inputs[j], m)
                    .map_err(|e| e.to_string())?;
                let hits = seeds
                    .iter()
                    .filter(|y| {
                        circulant_extract(&bs(&inputs[i]), y, m).unwrap()
                            == circulant_extract(&bs(&inputs[j]), y, m).unwrap()
                    })
                    .count();
                ensure!(p == rat(hits as i64, 32), "library and oracle disagree on a pair at m = {m}");
                if p > worst {
                    worst = p;
                }
                pairs += 1;
            }
        }
        ensure!(pairs == 120, "enumerated {pairs} pairs");
        ensure!(worst <= pow2(-(m as i64)), "m = {m}: max collision {worst}");
        report.push(format!("m={m}: {worst}"));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:.2?}");
    Ok(format!("{} in {elapsed:.2?}", report.join(", ")))
}

fn strong_extraction_bound() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(5);
    let k1 = 8i64;
    // (kind, n1, bound exponent offset): Δ ≤ 2^{(m - k1 - offset)/2}
    let cases = [(LinearKind::Dodis, 11usize, 1i64), (LinearKind::Circulant, 10, 0), (LinearKind::Toeplitz, 11, 0)];
    let mut worst_ratio = 0f64;
    for (kind, n1, offset) in cases {
        for _ in 0..50 {
            let support: Vec<u64> = sample(&mut rng, 1 << n1, 1 << k1).into_iter().map(|i| i as u64).collect();
            let source = Source::flat(n1, &support).map_err(|e| e.to_string())?;
            for m in 1..=3usize {
                let d = statistical_distance_strong(kind, &source, kind.seed_len(n1, m), m)
                    .map_err(|e| e.to_string())?;
                // Δ ≤ 2^{e/2}  ⇔  Δ² ≤ 2^e
                let exponent = m as i64 - k1 - offset;
                ensure!(&d * &d <= pow2(exponent), "{kind:?} m = {m}: Δ = {d}");
                let ratio = num_traits::ToPrimitive::to_f64(&d).unwrap() / 2f64.powf(exponent as f64 / 2.0);
                worst_ratio = worst_ratio.max(ratio);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:.2?}");
    Ok(format!("150 sources x 3 m, worst Δ/bound {worst_ratio:.3} in {elapsed:.2?}"))
}

fn naive_overlap_sum(design: &WeakDesign, i: usize) -> u128 {
    (0..i)
        .map(|j| {
            let common = design.sets[i].iter().filter(|p| design.sets[j].contains(p)).count();
            1u128 << common
        })
        .sum()
}

fn design_ok(design: &WeakDesign, m: u64, r_times_m: f64) -> Result<(), String> {
    ensure!(design.sets.len() as u64 == m, "design has {} sets, wanted {m}", design.sets.len());
    for (i, set) in design.sets.iter().enumerate() {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        ensure!(sorted.len() as u64 == design.t, "set {i} has {} distinct positions", sorted.len());
        ensure!(set.iter().all(|&p| p < design.d), "set {i} leaves the seed");
        let sum = naive_overlap_sum(design, i);
        ensure!((sum as f64) <= r_times_m, "set {i}: overlap sum {sum} > {r_times_m}");
    }
    Ok(())
}

fn weak_design_contract() -> Outcome {
    let mut basic = 0;
    let mut block = 0;
    for t in [3u64, 5, 7] {
        for m in 1..=t * t {
            let d = basic_weak_design(m, t).map_err(|e| e.to_string())?;
            design_ok(&d, m, 2.0 * E * m as f64).map_err(|e| format!("basic t = {t}, m = {m}: {e}"))?;
            basic += 1;
        }
        for m in 1..=4 * t * t {
            let blocks = block_sizes(m, t).len() as u64;
            let d = block_weak_design(m, t, blocks).map_err(|e| e.to_string())?;
            design_ok(&d, m, m as f64).map_err(|e| format!("block t = {t}, m = {m}: {e}"))?;
            block += 1;
        }
    }
    Ok(format!("{basic} basic designs with r = 2e, {block} block designs with r = 1"))
}

fn trevisan_end_to_end() -> Outcome {
    let p = compute_params(1024, 8, &Epsilon::pow2(8)).map_err(|e| e.to_string())?;
    ensure!(
        (p.t, p.a, p.d, p.l) == (71, 1, 5041, 34),
        "compute_params(1024, 8, 2^-8) gave t = {}, a = {}, d = {}, l = {}",
        p.t,
        p.a,
        p.d,
        p.l
    );
    let eps = Epsilon::pow2(4);
    let fast = compute_params(64, 4, &eps).map_err(|e| e.to_string())?;
    let slow = NaiveTrevisan::new(64, 4, &rat(1, 16)).map_err(|e| e.to_string())?;
    ensure!(
        (fast.l, fast.t, fast.a, fast.d) == (slow.l as u64, slow.t, slow.a, slow.d),
        "parameters differ from the naive derivation"
    );
    let poly = find_irreducible(fast.l as usize);
    let poly = poly.iter().rev().fold(0u128, |acc, &w| (acc << 64) | w as u128);
    ensure!(poly == slow.poly, "field polynomials differ: {poly:#x} vs {:#x}", slow.poly);
    let mut rng = rng(7);
    for _ in 0..100 {
        let x = random_bits(&mut rng, 64);
        let y = random_bits(&mut rng, fast.d as usize);
        let got = trevisan_extract(&bs(&x), &bs(&y), &fast).map_err(|e| e.to_string())?;
        let want = slow.extract(&x, &y).map_err(|e| e.to_string())?;
        ensure!(got.to_bits() == want, "output differs from the naive reimplementation");
    }
    Ok("(1024, 8, 2^-8) -> t=71 a=1 d=5041 l=34; 100 random (64, 4, 2^-4) runs agree".into())
}

fn von_neumann_exhaustive() -> Outcome {
    let n = 8;
    let p = rat(3, 10);
    let q = BigRational::one() - &p;
    let mut expected_len = BigRational::zero();
    // per output position: [P(bit = 0, present), P(bit = 1, present)]
    let mut mass = vec![[BigRational::zero(), BigRational::zero()]; n / 2];
    for i in 0..1u64 << n {
        let x = index_to_bits(i, n);
        let ones = x.iter().filter(|&&b| b == 1).count() as i32;
        let weight = p.pow(ones) * q.pow(n as i32 - ones);
        let out = vn_extract(&bs(&x)).to_bits();
        ensure!(out == naive_von_neumann(&x), "library disagrees with the rule on {x:?}");
        expected_len += &weight * BigRational::from_integer(out.len().into());
        for (k, &b) in out.iter().enumerate() {
            mass[k][b as usize] += &weight;
        }
    }
    for (k, [zero, one]) in mass.iter().enumerate() {
        ensure!(zero == one, "position {k}: P(0) = {zero}, P(1) = {one}");
    }
    ensure!(expected_len == rat(168, 100), "expected length {expected_len}");
    Ok(format!("all {} positions uniform, E[len] = {expected_len}", n / 2))
}

fn case_study_regression() -> Outcome {
    let spec = ExtractorSpec::new(
        ExtractorKind::Toeplitz,
        1_738_000_000,
        BigRational::from_integer(581_295_000.into()),
        "1e-10".parse().unwrap(),
        SecurityModel::QuantumSeeded,
    );
    let m = calc_output_length(&spec).map_err(|e| e.to_string())?.m;
    ensure!(m == 581_294_933, "toeplitz output length {m}");
    let d = calc_seed_length(ExtractorKind::Toeplitz, 1_738_000_000, 41_378_264, &Epsilon::pow2(32))
        .map_err(|e| e.to_string())?;
    ensure!(d == 1_779_378_263, "toeplitz seed length {d}");
    let prime = na_search(6_500_000_001, Direction::Next).map_err(|e| e.to_string())?;
    ensure!(prime == 6_500_000_069, "next admissible prime {prime}");
    Ok("m = 581294933, d = 1779378263, next admissible prime 6500000069".into())
}

fn dual_modulus() -> Outcome {
    let mut rng = rng(10);
    let primes = admissible_up_to(1 << 16);
    let small = ModulusSelection::Force(ModulusChoice::Small);
    let big = ModulusSelection::Force(ModulusChoice::Big);
    for kind in LinearKind::ALL {
        for _ in 0..100 {
            let (x, y, m) = match kind {
                LinearKind::Toeplitz => {
                    let n = rng.random_range(1..=1usize << 15);
                    let m = rng.random_range(1..=(1usize << 16) - n + 1);
                    (random_bits(&mut rng, n), random_bits(&mut rng, n + m - 1), m)
                }
                _ => random_instance(&mut rng, kind, &primes, 0),
            };
            let (x, y) = (bs(&x), bs(&y));
            let run = |sel| match kind {
                LinearKind::Circulant => circulant_extract_with(&x, &y, m, sel),
                LinearKind::Dodis => dodis_extract_with(&x, &y, m, sel),
                LinearKind::Toeplitz => toeplitz_extract_with(&x, &y, m, sel),
            };
            let a = run(small).map_err(|e| e.to_string())?;
            let b = run(big).map_err(|e| e.to_string())?;
            ensure!(a == b, "{kind:?} differs between moduli at n = {}, m = {m}", x.len());
        }
    }
    Ok("300 cases".into())
}

fn median_circulant_time(n1: u64, runs: usize) -> Result<(Duration, u64), String> {
    let spec = ExtractorSpec::new(
        ExtractorKind::Circulant,
        n1,
        BigRational::from_integer((n1 / 2).into()),
        Epsilon::pow2(32),
        SecurityModel::QuantumSeeded,
    );
    let OutputLength { m, n2, .. } = calc_output_length(&spec).map_err(|e| e.to_string())?;
    let mut rng = rng(11 + n1);
    let x: BitString = (0..n2 - 1).map(|_| rng.random_bool(0.5)).collect();
    let y: BitString = (0..n2).map(|_| rng.random_bool(0.5)).collect();
    let mut times = Vec::with_capacity(runs);
    for _ in 0..runs {
        let start = Instant::now();
        let out = circulant_extract(&x, &y, m as usize).map_err(|e| e.to_string())?;
        times.push(start.elapsed());
        std::hint::black_box(out);
    }
    times.sort_unstable();
    Ok((times[runs / 2], m))
}

fn performance() -> Outcome {
    let (t22, m22) = median_circulant_time(1 << 22, 5)?;
    let (t23, _) = median_circulant_time(1 << 23, 5)?;
    let ratio = t23.as_secs_f64() / t22.as_secs_f64();
    let throughput = m22 as f64 / t22.as_secs_f64() / 1e6;
    let summary = format!("T(2^22) = {t22:.2?}, T(2^23) = {t23:.2?}, ratio {ratio:.2}, {throughput:.1} Mbit/s output");
    ensure!(ratio <= 2.6, "{summary}");
    ensure!(throughput >= 0.2, "{summary}");
    Ok(summary)
}

fn spec_from_fixture(case: &Value) -> Result<(ExtractorSpec, u64, u64), String> {
    let field = |k: &str| case.get(k).ok_or_else(|| format!("fixture lacks `{k}`"));
    let text = |k: &str| field(k).and_then(|v| v.as_str().map(str::to_owned).ok_or_else(|| format!("`{k}` is not text")));
    let number = |k: &str| field(k).and_then(|v| v.as_u64().ok_or_else(|| format!("`{k}` is not an integer")));
    let kind: ExtractorKind = text("kind")?.parse().map_err(|e: randext::Error| e.to_string())?;
    let model: SecurityModel = text("model")?.parse().map_err(|e: randext::Error| e.to_string())?;
    let k1 = randext::params::parse_rational(&text("k1")?).map_err(|e| e.to_string())?;
    let epsilon: Epsilon = text("epsilon")?.parse().map_err(|e: randext::Error| e.to_string())?;
    let k2 = match field("k2")? {
        Value::Null => SeedEntropy::Full,
        Value::Object(o) => {
            let parse = |v: &Value| {
                randext::params::parse_rational(v.as_str().unwrap_or("")).map_err(|e| e.to_string())
            };
            match (o.get("absolute"), o.get("rate")) {
                (Some(v), None) => SeedEntropy::Absolute(parse(v)?),
                (None, Some(v)) => SeedEntropy::Rate(parse(v)?),
                _ => return Err("k2 needs exactly one of absolute or rate".into()),
            }
        }
        other => return Err(format!("bad k2 {other}")),
    };
    let spec = ExtractorSpec::new(kind, number("n1")?, k1, epsilon, model).with_seed_entropy(k2);
    Ok((spec, number("m")?, number("n2")?))
}

fn parameter_engine() -> Outcome {
    let fixed = ExtractorSpec::new(
        ExtractorKind::Trevisan,
        1000,
        BigRational::from_integer(100.into()),
        Epsilon::pow2(8),
        SecurityModel::ClassicalSeeded,
    );
    let m = calc_output_length(&fixed).map_err(|e| e.to_string())?.m;
    ensure!(m == 40, "trevisan output length {m}");
    ensure!(satisfies_output_bound(&fixed, 40).unwrap(), "m = 40 violates its own bound");
    ensure!(!satisfies_output_bound(&fixed, 41).unwrap(), "m = 41 also satisfies the bound");

    use SecurityModel as M;
    let collapses = [
        (ExtractorKind::Circulant, M::QuantumSeeded, M::ProductTwoSource),
        (ExtractorKind::Circulant, M::QuantumSeeded, M::MarkovClassical),
        (ExtractorKind::Circulant, M::QuantumSeeded, M::MarkovQuantum),
        (ExtractorKind::Toeplitz, M::QuantumSeeded, M::ProductTwoSource),
        (ExtractorKind::Toeplitz, M::QuantumSeeded, M::MarkovClassical),
        (ExtractorKind::Toeplitz, M::QuantumSeeded, M::MarkovQuantum),
        (ExtractorKind::Dodis, M::ClassicalSeeded, M::ProductTwoSource),
        (ExtractorKind::Dodis, M::QuantumSeeded, M::MarkovQuantum),
        (ExtractorKind::Trevisan, M::ClassicalSeeded, M::ProductTwoSource),
    ];
    let mut rng = rng(12);
    for (kind, seeded, two_source) in collapses {
        for _ in 0..20 {
            let n1 = rng.random_range(2..20_000u64);
            let k1 = BigRational::from_integer(rng.random_range(0..=n1).into());
            let eps = Epsilon::pow2(rng.random_range(1..40));
            let a = ExtractorSpec::new(kind, n1, k1.clone(), eps.clone(), seeded);
            let b = ExtractorSpec::new(kind, n1, k1, eps, two_source);
            let (ma, mb) = (calc_output_length(&a).unwrap().m, calc_output_length(&b).unwrap().m);
            ensure!(ma == mb, "{kind} {two_source} at k2 = n2 gives {mb}, {seeded} gives {ma}");
        }
    }

    let raw = include_str!("fixtures/formula_fixtures.json");
    let cases: Vec<Value> = serde_json::from_str(raw).map_err(|e| e.to_string())?;
    ensure!(cases.len() >= 1000, "only {} fixtures", cases.len());
    for (i, case) in cases.iter().enumerate() {
        let (spec, m, n2) = spec_from_fixture(case)?;
        let got = calc_output_length(&spec).map_err(|e| format!("fixture {i}: {e}"))?;
        ensure!(
            (got.m, got.n2) == (m, n2),
            "fixture {i} ({} {} n1 = {}): got m = {}, n2 = {}; want m = {m}, n2 = {n2}",
            spec.kind,
            spec.model,
            spec.n1,
            got.m,
            got.n2
        );
    }
    Ok(format!("fixed point m = 40; {} collapse pairs; {} high-precision fixtures", collapses.len(), cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("NTT exactness", ntt_exactness),
        ("transform round-trip", transform_round_trip),
        ("linear-extractor oracle equivalence", oracle_equivalence),
        ("two-universality", two_universality),
        ("strong-extraction bound", strong_extraction_bound),
        ("weak-design contract", weak_design_contract),
        ("Trevisan end-to-end", trevisan_end_to_end),
        ("Von Neumann", von_neumann_exhaustive),
        ("case-study regression", case_study_regression),
        ("dual-modulus equivalence", dual_modulus),
        ("performance", performance),
        ("parameter-engine properties", parameter_engine),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let number = i + 1;
        if only.is_some_and(|o| o != number) {
            continue;
        }
        match check() {
            Ok(detail) => println!("PASS {number:>2} {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {number:>2} {name}: {reason}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
