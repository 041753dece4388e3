//! Acceptance gate. Prints one line per criterion and exits nonzero if any
//! criterion fails for a reason other than the documented one below.
//!
//! Criterion 2 includes the second-theorem lower bound in the form
//! `Π λ_i ≥ n^{n/2−1} det`. That cannot hold for n ≥ 3 because it exceeds the
//! upper bound `γ_n^{n/2} det` of the same theorem, so the criterion is run in
//! full and its failure is accepted only if it is confined to that check on
//! lattices of dimension ≥ 3.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use geonum::minima::{self, Norm, DEFAULT_BUDGET};
use geonum::numtheory;
use geonum::rational::{self, int, ratio, Rat};
use geonum::{corpus, gso, packing, voronoi, LatticeBasis};
use num_traits::{Signed, Zero};
use rand::Rng;

const CORPUS_SEED: u64 = 20_240_501;
const CORPUS_SIZE: usize = 500;

struct Verdict {
    pass: bool,
    detail: String,
    /// Failure matches the documented unattainable shape.
    expected_failure: bool,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into(), expected_failure: false }
    }
}

fn hermite_table(corpus: &[LatticeBasis]) -> Verdict {
    let expected = [int(1), ratio(4, 3), int(2), int(4), int(8), ratio(64, 3), int(64), int(256)];
    let table_ok = (1..=8).all(|n| packing::hermite_exact(n).unwrap() == expected[n - 1]);
    let mut violations = 0;
    let mut tightest = 0.0f64;
    for l in corpus {
        let n = l.rank();
        let inv = packing::hermite_invariant_pow_n(l, DEFAULT_BUDGET).unwrap();
        let gamma = packing::hermite_exact(n).unwrap();
        if inv > gamma {
            violations += 1;
        }
        tightest = tightest.max(rational::to_f64(&(inv / gamma)));
    }
    Verdict::new(
        table_ok && violations == 0,
        format!("table exact: {table_ok}; λ₁^2n ≤ γ_n^n det² violations {violations}/{}; max ratio {tightest:.6}", corpus.len()),
    )
}

fn minkowski_suite(corpus: &[LatticeBasis]) -> Verdict {
    let required = [
        minima::GSO_LOWER,
        minima::MINKOWSKI_FIRST,
        minima::MINKOWSKI_LINF,
        minima::BALL_VOLUME_FIRST,
        minima::SECOND_LOWER,
        minima::SECOND_UPPER,
    ];
    let mut failures: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut extra: BTreeMap<&str, usize> = BTreeMap::new();
    for l in corpus {
        let report = minima::bounds_report(l, DEFAULT_BUDGET).unwrap();
        for name in required {
            let c = report.check(name).unwrap_or_else(|| panic!("missing check {name}"));
            if !c.holds {
                failures.entry(name).or_default().push(l.rank());
            }
        }
        for c in &report.checks {
            if !required.contains(&c.name) && !c.holds {
                *extra.entry(c.name).or_default() += 1;
            }
        }
    }
    let pass = failures.is_empty();
    let high_dim = corpus.iter().filter(|l| l.rank() >= 3).count();
    let expected_failure = failures.len() == 1
        && failures
            .get(minima::SECOND_LOWER)
            .is_some_and(|dims| dims.len() == high_dim && dims.iter().all(|&d| d >= 3));
    let summary: Vec<String> = failures.iter().map(|(k, v)| format!("{k}: {} violations", v.len())).collect();
    let detail = if pass {
        format!("all {} checks hold on {} lattices", required.len(), corpus.len())
    } else {
        format!(
            "{}; lower bound n^(n/2-1) det ≤ Π λ_i exceeds γ_n^(n/2) det for n ≥ 3; \
             factorial-constant lower bound violations {}, other extra-check violations {}",
            summary.join(", "),
            extra.get(minima::SECOND_LOWER_FACTORIAL).copied().unwrap_or(0),
            extra.iter().filter(|(k, _)| **k != minima::SECOND_LOWER_FACTORIAL).map(|(_, v)| v).sum::<usize>(),
        )
    };
    let extra_clean = extra.is_empty();
    Verdict { pass, detail, expected_failure: expected_failure && extra_clean }
}

fn enumeration_oracle() -> Verdict {
    let lattices = corpus::random_full_rank(CORPUS_SEED ^ 0x3, 200, 2..=4, 9);
    let mut mismatches = 0;
    let mut vectors = 0;
    for l in &lattices {
        let rows = common::to_int_rows(l);
        let r_sq = rows.iter().map(|r| common::norm_sq(r)).max().unwrap();
        let brute = common::brute_below_ambient(&rows, r_sq);
        let found: Vec<(i64, Vec<i64>)> = minima::enumerate_below(l, &int(r_sq), Norm::L2, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .map(|v| (i64::try_from(v.norm_sq.to_integer()).unwrap(), v.coeffs))
            .collect();
        vectors += brute.len();
        if found != brute {
            mismatches += 1;
        }
    }
    Verdict::new(mismatches == 0, format!("{mismatches}/{} mismatches, {vectors} vectors compared", lattices.len()))
}

fn gso_exactness(corpus: &[LatticeBasis]) -> Verdict {
    let mut bad = 0;
    for l in corpus {
        let g = gso::gram_schmidt(l);
        let m = l.rank();
        let orthogonal = (0..m)
            .all(|i| (i + 1..m).all(|j| rational::dot(&g.tilde_vectors[i], &g.tilde_vectors[j]).is_zero()));
        let rebuilt = (0..m).all(|i| {
            let mut v = g.tilde_vectors[i].clone();
            for j in 0..i {
                for (x, y) in v.iter_mut().zip(&g.tilde_vectors[j]) {
                    *x += &g.mu[i][j] * y;
                }
            }
            v == l.rows()[i]
        });
        let product: Rat = g.tilde_norms_sq.iter().fold(int(1), |acc, b| acc * b);
        let rows = common::to_int_rows(l);
        let det = Rat::from_integer(common::bareiss_det(&common::gram_int(&rows)));
        if !(orthogonal && rebuilt && product == det && *l.det_sq() == det) {
            bad += 1;
        }
    }
    Verdict::new(bad == 0, format!("{bad}/{} lattices violate orthogonality, reconstruction or Π‖ã‖² = det(AAᵀ)", corpus.len()))
}

fn sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit];
    let mut primes = Vec::new();
    for i in 2..limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn two_squares() -> Verdict {
    let primes: Vec<u64> = sieve(100_000).into_iter().filter(|p| p % 4 == 1).collect();
    let mut bad = 0;
    for &p in &primes {
        let (t, trace) = numtheory::two_squares_traced(p).unwrap();
        let trace = trace.unwrap();
        let a = (1..).find(|a| common::is_square(p - a * a).is_some()).unwrap();
        let b = common::is_square(p - a * a).unwrap();
        let construction = trace.det_sq == int(p as i64 * p as i64) && trace.lambda1_sq == int(p as i64);
        if !(t.a * t.a + t.b * t.b == p && (t.a, t.b) == (a, b) && construction) {
            bad += 1;
        }
    }
    Verdict::new(bad == 0, format!("{bad}/{} primes disagree with brute force or break det = p, λ₁² = p", primes.len()))
}

fn four_squares() -> Verdict {
    let mut bad = 0;
    let mut prime_steps = 0;
    for x in 1..=10_000u64 {
        let (f, steps) = numtheory::four_squares_traced(x).unwrap();
        let sum_ok = f.parts.iter().map(|v| v * v).sum::<u64>() == x;
        let prime_ok = !numtheory::is_prime(x) || (steps.len() == 1 && steps[0].p == x);
        let steps_ok = steps.iter().all(|s| {
            let n: i64 = s.vector.iter().map(|v| v * v).sum();
            let p = s.p as i64;
            n > 0 && n < 2 * p && n % p == 0 && n as u64 == s.norm_sq
        });
        prime_steps += steps.len();
        if !(sum_ok && prime_ok && steps_ok) {
            bad += 1;
        }
    }
    Verdict::new(bad == 0, format!("{bad}/10000 failures; {prime_steps} lattice steps checked (0 < ‖v‖² < 2p, p | ‖v‖²)"))
}

fn dirichlet() -> Verdict {
    let mut rng = corpus::rng(CORPUS_SEED ^ 0x7);
    let mut bad = 0;
    let mut strong = 0;
    let trials = 1000;
    for _ in 0..trials {
        let alpha = ratio(rng.gen_range(-100_000..=100_000), rng.gen_range(1..=10_000));
        let q_max = rng.gen_range(1..=100u64);
        let a = numtheory::dirichlet_approx(&alpha, q_max).unwrap();
        let approx = Rat::new(a.p.clone(), a.q.into());
        let err = (&alpha - approx).abs();
        if !(a.q > 0 && a.q <= q_max && err <= ratio(1, q_max as i64)) {
            bad += 1;
        }
        if err <= ratio(1, (a.q * q_max) as i64) {
            strong += 1;
        }
    }
    Verdict::new(bad == 0, format!("{bad}/{trials} violate 0 < q ≤ Q, |α − p/q| ≤ 1/Q; 1/(qQ) holds for {strong}/{trials}"))
}

fn voronoi_checks(corpus: &[LatticeBasis]) -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for n in [2usize, 3] {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let l = LatticeBasis::from_integers(&rows).unwrap();
        let set = voronoi::relevant_vectors(&l, DEFAULT_BUDGET).unwrap();
        let mut found: Vec<Vec<i64>> = set.vectors.iter().map(|v| v.coeffs.clone()).collect();
        found.sort();
        let brute = common::brute_relevant(&rows);
        let mut units = rows.clone();
        units.sort();
        let ok = found == brute && found == units && set.count_with_signs() == 2 * n;
        pass &= ok;
        notes.push(format!("Z^{n}: {} relevant", set.count_with_signs()));
    }
    let z2 = LatticeBasis::from_integers(&[[1, 0], [0, 1]]).unwrap();
    let est = voronoi::covering_radius_estimate(&z2, 64, DEFAULT_BUDGET).unwrap();
    let gap = (est - std::f64::consts::FRAC_1_SQRT_2).abs();
    pass &= gap <= 0.02;
    notes.push(format!("Z² grid 64 estimate {est:.6} (gap {gap:.2e})"));

    let small: Vec<&LatticeBasis> = corpus.iter().filter(|l| l.rank() <= 3).collect();
    let mut outside = 0;
    for l in &small {
        let grid = if l.rank() == 2 { 32 } else { 16 };
        let est = voronoi::covering_radius_estimate(l, grid, DEFAULT_BUDGET).unwrap();
        let m = minima::successive_minima(l, DEFAULT_BUDGET).unwrap();
        let half = rational::to_f64(m.last_sq()).sqrt() / 2.0;
        let upper = (l.rank() as f64).sqrt() * half;
        let tol = 1e-12 * upper;
        if !(half - tol <= est && est <= upper + tol) {
            outside += 1;
        }
    }
    pass &= outside == 0;
    notes.push(format!("sandwich λ_n/2 ≤ est ≤ √n λ_n/2 violated on {outside}/{} corpus lattices", small.len()));
    Verdict::new(pass, notes.join("; "))
}

fn packing_density(corpus: &[LatticeBasis]) -> Verdict {
    let z2 = LatticeBasis::from_integers(&[[1, 0], [0, 1]]).unwrap();
    let z3 = LatticeBasis::from_integers(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
    let d2 = packing::packing_density(&z2, DEFAULT_BUDGET).unwrap();
    let d3 = packing::packing_density(&z3, DEFAULT_BUDGET).unwrap();
    let pi = std::f64::consts::PI;
    let identity_ok = (d2 - pi / 4.0).abs() <= 1e-9 && (d3 - pi / 6.0).abs() <= 1e-9;
    let mut scaled_bad = 0;
    let sample = &corpus[..100];
    for l in sample {
        let base = packing::hermite_invariant_pow_n(l, DEFAULT_BUDGET).unwrap();
        let density = packing::packing_density(l, DEFAULT_BUDGET).unwrap();
        for k in [2i64, 3, 7] {
            let rows: Vec<Vec<Rat>> = l.rows().iter().map(|r| r.iter().map(|x| x * int(k)).collect()).collect();
            let s = LatticeBasis::new(rows).unwrap();
            let exact = packing::hermite_invariant_pow_n(&s, DEFAULT_BUDGET).unwrap() == base;
            let dens = packing::packing_density(&s, DEFAULT_BUDGET).unwrap();
            if !exact || (dens - density).abs() > 1e-12 * density {
                scaled_bad += 1;
            }
        }
    }
    Verdict::new(
        identity_ok && scaled_bad == 0,
        format!(
            "Z² {d2:.12} vs π/4, Z³ {d3:.12} vs π/6; scaling by 2, 3, 7 changed λ₁^2n/det² in {scaled_bad}/{} cases",
            3 * sample.len()
        ),
    )
}

fn hlawka() -> Verdict {
    let pi = std::f64::consts::PI;
    let b2 = packing::minkowski_hlawka_bound(2).unwrap();
    let b4 = packing::minkowski_hlawka_bound(4).unwrap();
    let e2 = (b2 - pi * pi / 12.0).abs();
    let e4 = (b4 - pi.powi(4) / 720.0).abs();
    Verdict::new(e2 <= 1e-9 && e4 <= 1e-9, format!("ζ(2)/2 = {b2:.12} (err {e2:.1e}), ζ(4)/8 = {b4:.12} (err {e4:.1e})"))
}

fn main() {
    let corpus = corpus::random_full_rank(CORPUS_SEED, CORPUS_SIZE, 2..=6, 9);
    type Criterion<'a> = (u32, &'a str, Option<u64>, Box<dyn Fn() -> Verdict + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "hermite table fidelity", Some(120), Box::new(|| hermite_table(&corpus))),
        (2, "minkowski inequality suite", Some(300), Box::new(|| minkowski_suite(&corpus))),
        (3, "enumeration oracle equivalence", Some(120), Box::new(enumeration_oracle)),
        (4, "gso exactness", None, Box::new(|| gso_exactness(&corpus))),
        (5, "two squares", Some(60), Box::new(two_squares)),
        (6, "four squares", Some(120), Box::new(four_squares)),
        (7, "dirichlet approximation", None, Box::new(dirichlet)),
        (8, "voronoi relevant vectors and covering radius", None, Box::new(|| voronoi_checks(&corpus))),
        (9, "packing density", None, Box::new(|| packing_density(&corpus))),
        (10, "minkowski-hlawka values", None, Box::new(hlawka)),
    ];
    let mut unexpected = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let pass = v.pass && in_time;
        let budget = limit.map(|s| format!(" / limit {s}s")).unwrap_or_default();
        let status = if pass {
            "PASS"
        } else if v.expected_failure && in_time {
            "FAIL (expected)"
        } else {
            unexpected += 1;
            "FAIL"
        };
        println!("criterion {id:>2} {status:<15} {title} [{:.2}s{budget}] {}", elapsed.as_secs_f64(), v.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
