//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fqx_core::algebra::{irreducible_count, CodeSpace, IrreducibleTable};
use fqx_core::analytics::{
    ap_correlation, correlate, gowers_norm, halasz_product, katai_statistic, linear_character_sum,
    mean_value, pretentious_distance, turan_kubilius, u2_fourier, Domain, GnFunction,
    KataiNormalization, MeanDomain, PairSet, PhaseCharacter,
};
use fqx_core::characters::{DegreeTwist, DirichletGroup, HayesCharacter};
use fqx_core::descriptor::ValueSet;
use fqx_core::forms::{
    projective_common_zeros, BiasMode, FormTerm, MultilinearForm, PolynomialPhase,
};
use fqx_core::multiplicative::MultiplicativeFunction;
use fqx_core::{Complex64, Factorizer, Fe, Field, LaurentTruncation, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u128 = 1 << 36;

const DICHOTOMY_TOL: f64 = 1e-9;
const U2_TOL: f64 = 1e-10;
const MONOTONE_SLACK: f64 = 1e-9;
const AP_SLACK: f64 = 1e-9;
const BIAS_TOL: f64 = 1e-9;
const DISTANCE_TOL: f64 = 1e-9;
const HALASZ_TOL: f64 = 1e-9;
const MEAN_TOL: f64 = 1e-12;
const TK_MAX_RATIO: f64 = 5.0;
const KATAI_LINEAR_MAX: f64 = 0.25;
const KATAI_ONE_MIN: f64 = 0.9;
const ORTHO_TOL: f64 = 1e-10;

type Check = Result<(bool, String), String>;

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn fe(f: &Field, i: u32) -> Fe {
    f.element(i).unwrap()
}

fn random_truncation(f: &Field, depth: usize, rng: &mut ChaCha8Rng) -> LaurentTruncation {
    let q = f.order();
    LaurentTruncation::new((0..depth).map(|_| fe(f, rng.random_range(0..q))).collect()).unwrap()
}

fn cis(t: f64) -> Complex64 {
    Complex64::new((TAU * t).cos(), (TAU * t).sin())
}

/// Digitwise addition of base-`p` codes.
fn add_codes(a: u64, b: u64, p: u64, n: usize) -> u64 {
    let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
    for _ in 0..n {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn add_table(p: u64, n: usize) -> Vec<usize> {
    let size = p.pow(n as u32);
    let mut t = vec![0; (size * size) as usize];
    for a in 0..size {
        for b in 0..size {
            t[(a * size + b) as usize] = add_codes(a, b, p, n) as usize;
        }
    }
    t
}

fn necklace(q: u64, d: u64) -> u64 {
    fn mu(mut n: u64) -> i64 {
        let mut sign = 1;
        let mut k = 2;
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                sign = -sign;
            }
            k += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }
    let s: i128 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mu(e) as i128 * (q as i128).pow((d / e) as u32))
        .sum();
    (s / d as i128) as u64
}

fn linear_dichotomy() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut zero_cases = 0;
    for q in [2u32, 3] {
        let f = Field::prime(q).map_err(err)?;
        for n in 4..=10 {
            for trial in 0..50 {
                let mut coeffs: Vec<u32> = (0..n + 3).map(|_| rng.random_range(0..q)).collect();
                if trial % 5 == 0 {
                    coeffs[..n].iter_mut().for_each(|c| *c = 0);
                }
                let vanish = coeffs[..n].iter().all(|&c| c == 0);
                zero_cases += vanish as u32;
                let beta = LaurentTruncation::from_indices(&f, &coeffs).map_err(err)?;
                let got = linear_character_sum(&f, &beta, n, BUDGET)
                    .map_err(err)?
                    .value();
                // direct sum of exp(2 pi i sum_i beta_i g_i / q)
                let size = (q as u64).pow(n as u32);
                let mut oracle = Complex64::new(0.0, 0.0);
                for code in 0..size {
                    let (mut c, mut t) = (code, 0u64);
                    for &b in &coeffs[..n] {
                        t += b as u64 * (c % q as u64);
                        c /= q as u64;
                    }
                    oracle += cis((t % q as u64) as f64 / q as f64);
                }
                let expected = if vanish { size as f64 } else { 0.0 };
                worst = worst
                    .max((got - expected).norm())
                    .max((oracle - expected).norm());
            }
        }
    }
    Ok((
        worst <= DICHOTOMY_TOL,
        format!("max |error| = {worst:.2e} over 700 sums ({zero_cases} vanishing)"),
    ))
}

fn brute_u2(values: &[Complex64], add: &[usize]) -> f64 {
    let n = values.len();
    let mut acc = 0.0;
    for x in 0..n {
        for h1 in 0..n {
            let a = values[x] * values[add[x * n + h1]].conj();
            for h2 in 0..n {
                let b = values[add[x * n + h2]].conj() * values[add[add[x * n + h1] * n + h2]];
                acc += (a * b).re;
            }
        }
    }
    (acc / (n as f64).powi(3)).max(0.0).powf(0.25)
}

fn u2_oracle() -> Check {
    let mut worst = 0.0f64;
    for (p, n) in [(2u32, 8usize), (3, 4)] {
        let f = Field::prime(p).map_err(err)?;
        let space = CodeSpace::new(&f, n, BUDGET).map_err(err)?;
        let add = add_table(p as u64, n);
        for seed in 0..20 {
            let g = GnFunction::random_bounded(space.clone(), seed);
            let fast = u2_fourier(&g, BUDGET).map_err(err)?;
            let rec = gowers_norm(&g, 2, BUDGET).map_err(err)?;
            let brute = brute_u2(g.values(), &add);
            worst = worst.max((fast - brute).abs()).max((rec - brute).abs());
        }
    }
    Ok((
        worst <= U2_TOL,
        format!("max |u2 - brute| = {worst:.2e} over 40 functions"),
    ))
}

fn gowers_monotone() -> Check {
    let f = Field::prime(3).map_err(err)?;
    let space = CodeSpace::new(&f, 4, BUDGET).map_err(err)?;
    let mut ok = true;
    let mut margin = f64::INFINITY;
    for seed in 0..20 {
        let g = GnFunction::random_bounded(space.clone(), 1000 + seed);
        let u: Vec<f64> = (1..=3)
            .map(|k| gowers_norm(&g, k, BUDGET))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ok &= (u[0] - g.mean().norm()).abs() <= 1e-12;
        ok &= u[0] <= u[1] + MONOTONE_SLACK && u[1] <= u[2] + MONOTONE_SLACK;
        margin = margin.min(u[1] - u[0]).min(u[2] - u[1]);
    }
    Ok((ok, format!("smallest step {margin:.3e} over 20 functions")))
}

fn ap_inequality() -> Check {
    let f = Field::prime(5).map_err(err)?;
    let space = CodeSpace::new(&f, 3, BUDGET).map_err(err)?;
    let add = add_table(5, 3);
    let size = space.size() as usize;
    let mut ok = true;
    let mut worst_ratio = 0.0f64;
    let mut oracle_gap = 0.0f64;
    for t in 0..50u64 {
        let fs: Vec<GnFunction> = (0..3)
            .map(|j| GnFunction::random_bounded(space.clone(), 3 * t + j))
            .collect();
        let refs: Vec<&GnFunction> = fs.iter().collect();
        let r = ap_correlation(&refs, BUDGET).map_err(err)?;
        let mut mean = Complex64::new(0.0, 0.0);
        for x in 0..size {
            for y in 0..size {
                let y2 = add[y * size + y];
                let a = add[x * size + y];
                let b = add[x * size + y2];
                mean += fs[0].values()[x] * fs[1].values()[a] * fs[2].values()[b];
            }
        }
        mean /= (size * size) as f64;
        oracle_gap = oracle_gap.max((mean - r.mean).norm());
        let u2 = u2_fourier(&fs[2], BUDGET).map_err(err)?;
        oracle_gap = oracle_gap.max((u2 - r.bound).abs());
        ok &= mean.norm() <= u2 + AP_SLACK && r.holds;
        worst_ratio = worst_ratio.max(mean.norm() / u2);
    }
    ok &= oracle_gap <= 1e-12;
    Ok((
        ok,
        format!("max |mean|/U2 = {worst_ratio:.3}, oracle gap {oracle_gap:.1e}, 50 triples"),
    ))
}

fn rank_one(f: &Field, domains: &[usize], terms: usize, rng: &mut ChaCha8Rng) -> MultilinearForm {
    let q = f.order();
    let terms = (0..terms)
        .map(|_| FormTerm {
            coeff: fe(f, rng.random_range(1..q)),
            slots: domains
                .iter()
                .map(|&d| random_truncation(f, d, rng))
                .collect(),
        })
        .collect();
    MultilinearForm::new(f, domains.to_vec(), terms).unwrap()
}

fn bias_rank() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    let mut worst_gap = f64::INFINITY;
    let mut direct_err = 0.0f64;
    let mut count = 0;
    for q in [2u32, 3] {
        let f = Field::prime(q).map_err(err)?;
        let d = if q == 2 { 4 } else { 3 };
        for r in 1..=3usize {
            let floor = (q as f64).powi(-(r as i32));
            for trial in 0..10 {
                let arity = 2 + trial % 2;
                let domains = vec![d; arity];
                let blocks: Vec<_> = (0..r)
                    .map(|_| {
                        let cut = rng.random_range(1..arity);
                        let mut slots: Vec<usize> = (0..arity).collect();
                        for i in (1..arity).rev() {
                            slots.swap(i, rng.random_range(0..=i));
                        }
                        let mut s: Vec<usize> = slots[..cut].to_vec();
                        s.sort_unstable();
                        let rest: Vec<usize> = (0..arity).filter(|i| !s.contains(i)).collect();
                        let a = rank_one(&f, &vec![d; s.len()], 1, &mut rng);
                        let b = rank_one(&f, &vec![d; rest.len()], 1 + rest.len() / 2, &mut rng);
                        (s, a, b)
                    })
                    .collect();
                let form = MultilinearForm::from_blocks(&f, domains, &blocks).map_err(err)?;
                let b = form.bias(BiasMode::Exhaustive, BUDGET).map_err(err)?;
                ok &= b.mean.im.abs() <= BIAS_TOL && b.mean.re >= floor - BIAS_TOL;
                worst_gap = worst_gap.min(b.mean.re - floor);
                count += 1;
            }
            // sum_{i<r} x_i y_i
            let coord = |i| {
                MultilinearForm::new(
                    &f,
                    vec![d],
                    vec![FormTerm {
                        coeff: Fe::ONE,
                        slots: vec![LaurentTruncation::coordinate(i, d).unwrap()],
                    }],
                )
                .unwrap()
            };
            let blocks: Vec<_> = (0..r).map(|i| (vec![0], coord(i), coord(i))).collect();
            let form = MultilinearForm::from_blocks(&f, vec![d, d], &blocks).map_err(err)?;
            let b = form.bias(BiasMode::Exhaustive, BUDGET).map_err(err)?;
            direct_err = direct_err.max((b.mean - floor).norm());
        }
    }
    ok &= direct_err <= BIAS_TOL;
    Ok((
        ok,
        format!(
            "{count} block forms, min(bias - q^-r) = {worst_gap:.3e}, direct sums off by {direct_err:.1e}"
        ),
    ))
}

fn random_phase(f: &Field, n: usize, m: usize, rng: &mut ChaCha8Rng) -> PolynomialPhase {
    let q = f.order();
    let mut p = PolynomialPhase::zero(f, n);
    for _ in 0..rng.random_range(1..=3) {
        let factors = (0..m).map(|_| random_truncation(f, n, rng)).collect();
        p = p.with_term(fe(f, rng.random_range(1..q)), factors).unwrap();
    }
    if rng.random::<bool>() {
        let powers: Vec<(usize, u32)> = (0..m).map(|_| (rng.random_range(0..n), 1)).collect();
        p = p
            .with_monomial(fe(f, rng.random_range(1..q)), &powers)
            .unwrap();
    }
    p
}

/// `sum_{S} (-1)^{m - |S|} P(g + sum_{i in S} h_i)` by direct evaluation.
fn finite_difference(p: &PolynomialPhase, g: &Polynomial, hs: &[Polynomial]) -> Fe {
    let f = p.field();
    let m = hs.len();
    let mut acc = Fe::ZERO;
    for mask in 0..1usize << m {
        let mut x = g.clone();
        for (i, h) in hs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x = x.add(h, f);
            }
        }
        let v = p.eval(&x).unwrap();
        acc = if (m - mask.count_ones() as usize) % 2 == 0 {
            f.add(acc, v)
        } else {
            f.sub(acc, v)
        };
    }
    acc
}

fn derivative_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 3;
    let mut failures = 0;
    let mut checked = 0u64;
    for p in [5u32, 7] {
        let f = Field::prime(p).map_err(err)?;
        let gn: Vec<Polynomial> = (0..(p as u64).pow(n as u32))
            .map(|c| Polynomial::from_code(c, p))
            .collect();
        for m in [2usize, 3] {
            let factorial = f.from_int((1..=m as i64).product());
            for _ in 0..100 {
                let top = random_phase(&f, n, m, &mut rng);
                let dm = top.derivative_form(m).map_err(err)?;
                let diag = dm.diagonal().map_err(err)?;
                for g in &gn {
                    checked += 1;
                    if diag.eval(g).map_err(err)? != f.mul(factorial, top.eval(g).map_err(err)?) {
                        failures += 1;
                    }
                }
                let lower = top
                    .with_term(
                        fe(&f, rng.random_range(1..p)),
                        vec![random_truncation(&f, n, &mut rng)],
                    )
                    .map_err(err)?;
                for _ in 0..3 {
                    let hs: Vec<Polynomial> = (0..m)
                        .map(|_| gn[rng.random_range(0..gn.len())].clone())
                        .collect();
                    let want = dm.eval(&hs).map_err(err)?;
                    for g in &gn {
                        checked += 1;
                        if finite_difference(&lower, g, &hs) != want {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((
        failures == 0,
        format!("{failures} mismatches in {checked} exact comparisons"),
    ))
}

fn irreducible_counts() -> Check {
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for q in 2u32..=256 {
        let Some((p, r)) = (2..=q).find(|p| q % p == 0).map(|p| {
            let mut r = 0;
            let mut t = q;
            while t % p == 0 {
                t /= p;
                r += 1;
            }
            (p, if t == 1 { r } else { 0 })
        }) else {
            continue;
        };
        if r == 0 {
            continue;
        }
        let f = Field::new(p, r).map_err(err)?;
        let mut dmax = 1;
        while (q as u64).pow(dmax as u32 + 1) <= 1_000_000 {
            dmax += 1;
        }
        let table = IrreducibleTable::new(&f, dmax).map_err(err)?;
        for d in 1..=dmax {
            pairs += 1;
            let formula = necklace(q as u64, d as u64);
            let library = irreducible_count(q, d).map_err(err)?;
            if table.count(d) as u64 != formula || library != formula {
                mismatches.push((q, d));
            }
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("{pairs} (q, d) pairs, mismatches {mismatches:?}"),
    ))
}

fn distance_growth() -> Check {
    let f = Field::prime(2).map_err(err)?;
    let fz = Factorizer::new(&f, 4).map_err(err)?;
    let mu = MultiplicativeFunction::moebius();
    let one = MultiplicativeFunction::one();
    let ds: Vec<f64> = (1..=20)
        .map(|n| pretentious_distance(&mu, &one, &fz, n, 1))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut oracle = 0.0;
    let mut gap = 0.0f64;
    for (i, d) in ds.iter().enumerate() {
        let deg = i as u64 + 1;
        oracle += 2.0 * necklace(2, deg) as f64 / 2f64.powi(deg as i32);
        gap = gap.max((d - oracle.sqrt()).abs());
    }
    let increasing = ds.windows(2).all(|w| w[1] > w[0]);
    let ok = (ds[0] - 2f64.sqrt()).abs() <= DISTANCE_TOL
        && increasing
        && ds[19] > ds[4] + 0.5
        && gap <= 1e-12;
    Ok((
        ok,
        format!(
            "D(1) = {:.12}, D(5) = {:.4}, D(20) = {:.4}, oracle gap {gap:.1e}",
            ds[0], ds[4], ds[19]
        ),
    ))
}

fn halasz_and_twists() -> Check {
    let mut worst_p = 0.0f64;
    for q in [2u32, 3] {
        let f = Field::prime(q).map_err(err)?;
        let fz = Factorizer::new(&f, 2).map_err(err)?;
        for n in 0..=20 {
            let h = halasz_product(&MultiplicativeFunction::one(), &fz, n).map_err(err)?;
            worst_p = worst_p.max((h.value - 1.0).norm());
        }
    }
    let f = Field::prime(2).map_err(err)?;
    let fz = Factorizer::with_default_bound(&f).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_m = 0.0f64;
    for _ in 0..10 {
        let theta: f64 = rng.random();
        let n = rng.random_range(1..=10);
        let e = MultiplicativeFunction::from_character(
            HayesCharacter::trivial().with_twist(DegreeTwist::real(theta).map_err(err)?),
        );
        let m = mean_value(&e, &fz, n, MeanDomain::Monic, BUDGET).map_err(err)?;
        worst_m = worst_m.max((m - cis(theta * n as f64)).norm());
    }
    Ok((
        worst_p <= HALASZ_TOL && worst_m <= MEAN_TOL,
        format!("max |P(1,n) - 1| = {worst_p:.1e}, max mean error {worst_m:.1e}"),
    ))
}

/// F_2 polynomials as bit masks.
fn f2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn turan_kubilius_check() -> Check {
    let f = Field::prime(2).map_err(err)?;
    let fz = Factorizer::with_default_bound(&f).map_err(err)?;
    let (w, h) = (1, 5);
    // oracle at n = 8: trial division by the window primes
    let irreducible = |g: u64| {
        let d = 63 - g.leading_zeros();
        (2u64..g).all(|c| 63 - c.leading_zeros() > d / 2 || f2_rem(g, c) != 0)
    };
    let window: Vec<u64> = (4u64..32).filter(|&g| irreducible(g)).collect();
    let a: f64 = window
        .iter()
        .map(|g| 2f64.powi(-((63 - g.leading_zeros()) as i32)))
        .sum();
    let mut lhs = 0.0;
    for g in 0u64..256 {
        let omega = window.iter().filter(|&&p| f2_rem(g, p) == 0).count() as f64;
        lhs += (omega - a) * (omega - a);
    }
    let oracle = lhs / (a * 256.0);
    let at8 = turan_kubilius(&fz, 8, w, h, BUDGET).map_err(err)?;
    let mut ok = (at8.ratio - oracle).abs() <= 1e-12 * oracle.max(1.0);
    let mut ratios = Vec::new();
    for n in 8..=14 {
        let t = turan_kubilius(&fz, n, w, h, BUDGET).map_err(err)?;
        ok &= t.ratio <= TK_MAX_RATIO;
        ratios.push(format!("{:.3}", t.ratio));
    }
    Ok((
        ok,
        format!(
            "oracle at n=8 {oracle:.6}, ratios n=8..14 [{}]",
            ratios.join(", ")
        ),
    ))
}

fn katai_check() -> Check {
    let f = Field::prime(2).map_err(err)?;
    let fz = Factorizer::with_default_bound(&f).map_err(err)?;
    let (n, k) = (14, 3);
    let beta = LaurentTruncation::from_indices(&f, &[1; 14]).map_err(err)?;
    let phase = PolynomialPhase::linear(&f, n, beta).map_err(err)?;
    let chi = PhaseCharacter(&phase);
    let one = fqx_core::analytics::Constant(Complex64::new(1.0, 0.0));
    let set_size = (3..=4).map(|d| necklace(2, d)).sum::<u64>() as f64;
    let norm = KataiNormalization::PerPair;
    let lin = katai_statistic(&chi, &fz, n, k, PairSet::Pk, norm, BUDGET).map_err(err)?;
    let full = katai_statistic(&one, &fz, n, k, PairSet::Pk, norm, BUDGET).map_err(err)?;
    let global = KataiNormalization::Global;
    let lin_p = katai_statistic(&chi, &fz, n, k, PairSet::Pk, global, BUDGET).map_err(err)?;
    let full_p = katai_statistic(&one, &fz, n, k, PairSet::Pk, global, BUDGET).map_err(err)?;
    let ok = (lin.diagonal - 1.0 / set_size).abs() <= 1e-12
        && lin.value <= KATAI_LINEAR_MAX
        && full.value >= KATAI_ONE_MIN;
    Ok((
        ok,
        format!(
            "per-pair: linear {:.4} (diagonal {:.4}), one {:.4}; globally normalized: linear {:.4}, one {:.4}",
            lin.value, lin.diagonal, full.value, lin_p.value, full_p.value
        ),
    ))
}

fn decay_exhibit() -> Check {
    let f = Field::prime(2).map_err(err)?;
    let fz = Factorizer::new(&f, 14).map_err(err)?;
    let nu = MultiplicativeFunction::random_on_irreducibles(1, ValueSet::Signs);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let l1 = random_truncation(&f, 14, &mut rng);
    let l2 = random_truncation(&f, 14, &mut rng);
    let mut series = Vec::new();
    for n in 6..=14 {
        let p = PolynomialPhase::zero(&f, n)
            .with_term(Fe::ONE, vec![l1.clone(), l2.clone()])
            .map_err(err)?;
        let c = correlate(&nu, &fz, &PhaseCharacter(&p), n, Domain::All, BUDGET).map_err(err)?;
        series.push(c.mean.norm());
    }
    let steps = series.windows(2).filter(|w| w[1] <= w[0]).count();
    let ok = series[8] < series[0] / 2.0 && steps >= 6;
    let shown: Vec<String> = series.iter().map(|v| format!("{v:.4}")).collect();
    Ok((
        ok,
        format!(
            "|corr| n=6..14 [{}], {steps}/8 nonincreasing",
            shown.join(", ")
        ),
    ))
}

fn homogeneous(f: &Field, degree: usize, rng: &mut ChaCha8Rng) -> PolynomialPhase {
    let q = f.order();
    let mut monomials = Vec::new();
    for a in 0..=degree {
        for b in 0..=degree - a {
            monomials.push([a as u32, b as u32, (degree - a - b) as u32]);
        }
    }
    loop {
        let mut p = PolynomialPhase::zero(f, 3);
        for e in &monomials {
            let c = rng.random_range(0..q);
            if c != 0 {
                let powers: Vec<(usize, u32)> = (0..3).map(|j| (j, e[j])).collect();
                p = p.with_monomial(fe(f, c), &powers).unwrap();
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn zero_count_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut failures = Vec::new();
    for q in [2u32, 3] {
        let f = Field::prime(q).map_err(err)?;
        for trial in 0..50 {
            let total = rng.random_range(1..=3usize);
            let mut degrees = Vec::new();
            let mut left = total;
            while left > 0 {
                let d = rng.random_range(1..=left);
                degrees.push(d);
                left -= d;
            }
            let system: Vec<PolynomialPhase> = degrees
                .iter()
                .map(|&d| homogeneous(&f, d, &mut rng))
                .collect();
            let z = projective_common_zeros(&f, &system, 3, BUDGET).map_err(err)?;
            if !z.holds {
                failures.push(format!(
                    "q={q} #{trial} degrees {degrees:?}: {} < {:.3}",
                    z.count, z.bound
                ));
            }
        }
    }
    let detail = if failures.is_empty() {
        "100 systems, all above the bound".to_string()
    } else {
        format!(
            "{} of 100 systems below the bound: {}",
            failures.len(),
            failures.join("; ")
        )
    };
    Ok((failures.is_empty(), detail))
}

fn orthogonality() -> Check {
    let mut worst_off = 0.0f64;
    let mut worst_on = 0.0f64;
    let mut pairs = 0;
    for q in [2u32, 3] {
        let f = Field::prime(q).map_err(err)?;
        for d in 1..=2usize {
            for code in 0..(q as u64).pow(d as u32) {
                let g = Polynomial::monic_from_code(code, d, q);
                let group = DirichletGroup::new(&f, &g).map_err(err)?;
                let chars = group.characters(BUDGET).map_err(err)?;
                let residues: Vec<Polynomial> = (0..(q as u64).pow(d as u32))
                    .map(|c| Polynomial::from_code(c, q))
                    .collect();
                let phi = residues
                    .iter()
                    .filter(|h| h.gcd(&g, &f).degree().finite() == Some(0))
                    .count() as f64;
                if chars.len() as f64 != phi {
                    return Ok((
                        false,
                        format!("{} characters modulo a modulus with phi {phi}", chars.len()),
                    ));
                }
                let vals: Vec<Vec<Complex64>> = chars
                    .iter()
                    .map(|c| residues.iter().map(|h| c.eval(h).to_complex()).collect())
                    .collect();
                for (i, a) in vals.iter().enumerate() {
                    for (j, b) in vals.iter().enumerate() {
                        let s: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
                        pairs += 1;
                        if i == j {
                            worst_on = worst_on.max((s - phi).norm());
                        } else {
                            worst_off = worst_off.max(s.norm());
                        }
                    }
                }
            }
        }
    }
    Ok((
        worst_off <= ORTHO_TOL && worst_on <= ORTHO_TOL,
        format!("{pairs} pairs, off-diagonal max {worst_off:.1e}, diagonal error {worst_on:.1e}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 14] = [
        ("linear phase dichotomy", 10, linear_dichotomy),
        ("U2 Fourier against brute force", 30, u2_oracle),
        ("Gowers monotonicity", 60, gowers_monotone),
        ("progression inequality", 60, ap_inequality),
        ("bias of partition-rank blocks", 60, bias_rank),
        ("derivative form identities", 30, derivative_identities),
        ("irreducible counts", 60, irreducible_counts),
        ("pretentious distance growth", 10, distance_growth),
        ("Halasz product and twisted means", 10, halasz_and_twists),
        ("Turan-Kubilius ratio", 60, turan_kubilius_check),
        ("Katai statistic", 120, katai_check),
        ("correlation decay exhibit", 600, decay_exhibit),
        ("projective zero-count bound", 30, zero_count_bound),
        ("Dirichlet orthogonality", 10, orthogonality),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as u32;
        println!(
            "{} {:>2} {name}: {detail} [{:.2}s of {limit}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() as u32 - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
