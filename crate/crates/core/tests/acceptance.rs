//! Acceptance criteria. Every check is exact; run with `--nocapture` to see
//! one PASS/FAIL line per criterion.

use std::collections::BTreeMap;

use charclass_core::bundles::{tensor_lines, total_chern};
use charclass_core::classify::{
    self, p1_coefficient, p1_coefficient_expanded, p1_coefficient_symbolic, tangent_classes,
    w2_coefficient, w2_coefficient_expanded, w2_coefficient_symbolic,
};
use charclass_core::{validate, RootBag, StiefelParams, TruncSeries};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5717_e4e1;

/// Nondecreasing sequences of length `k` over `1..=l_max`.
fn multisets(k: usize, l_max: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            go(k, v, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 1, l_max, &mut Vec::new(), &mut out);
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// 2 <= n <= 10, 1 <= k <= n, canonical l with entries in 1..=3, gcd 1.
fn theorem_grid() -> Vec<StiefelParams> {
    let mut grid = Vec::new();
    for n in 2..=10i64 {
        for k in 1..=n {
            for l in multisets(k as usize, 3) {
                if l.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
                    grid.push(validate(n, k, &l).expect("gcd 1 grid point"));
                }
            }
        }
    }
    grid
}

/// Random (n, k, l) with |l_i| <= 50, k <= 8, k <= n <= 12. The weights are
/// not required to have gcd 1, so this works on raw integers.
fn random_samples(count: usize) -> Vec<(i64, i64, Vec<i64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=8i64);
            let n = rng.gen_range(k.max(2)..=12);
            let l = (0..k).map(|_| rng.gen_range(-50..=50)).collect();
            (n, k, l)
        })
        .collect()
}

struct Outcome {
    id: u32,
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new(id: u32, name: &'static str) -> Self {
        Outcome {
            id,
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

fn criterion_theorem_table(grid: &[StiefelParams]) -> Outcome {
    let mut o = Outcome::new(1, "theorem table: parallelizable / stably parallelizable");
    for p in grid {
        let (n, k) = (p.n(), p.k());
        let c = classify::classify(p);
        let stably = k == n || k == n - 1;
        let par = stably && (n, k) != (2, 1);
        o.check(
            c.stably_parallelizable == stably && c.parallelizable == par,
            || {
                format!(
                    "{p:?}: got par={} stably={}",
                    c.parallelizable, c.stably_parallelizable
                )
            },
        );
    }
    o
}

fn criterion_p1_identity(samples: &[(i64, i64, Vec<i64>)]) -> Outcome {
    let mut o = Outcome::new(
        2,
        "p1 identity n*sum l^2 - sum (l_j-l_i)^2 == (n-k) sum l^2 + (sum l)^2",
    );
    for (n, k, l) in samples {
        let sum: i64 = l.iter().sum();
        let sq: i64 = l.iter().map(|x| x * x).sum();
        let pairs: i64 = (0..l.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| (l[j] - l[i]).pow(2))
            .sum();
        let lhs = n * sq - pairs;
        let rhs = (n - k) * sq + sum * sum;
        o.check(lhs == rhs, || {
            format!("n={n} k={k} l={l:?}: {lhs} != {rhs}")
        });
        // the library's two evaluators agree with the raw integers too
        if l.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            let p = validate(*n, *k, l).unwrap();
            o.check(
                p1_coefficient(&p) == BigInt::from(rhs)
                    && p1_coefficient_expanded(&p) == BigInt::from(lhs),
                || format!("library evaluators disagree at {p:?}"),
            );
        }
    }
    o
}

fn criterion_symbolic_agreement(grid: &[StiefelParams]) -> Outcome {
    let mut o = Outcome::new(
        3,
        "symbolic solve_stable path reproduces p1 and w2 closed forms",
    );
    for p in grid {
        let (p1, w2) = (p1_coefficient_symbolic(p), w2_coefficient_symbolic(p));
        o.check(p1 == p1_coefficient(p) && w2 == w2_coefficient(p), || {
            format!("{p:?}: symbolic p1={p1} w2={w2}")
        });
    }
    o
}

fn binomial(n: u64, r: u64) -> BigInt {
    (0..r).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_known_spaces() -> Outcome {
    let mut o = Outcome::new(4, "known spaces: CP^{n-1}, CP^2 non-spin, S^2");
    for n in 2..=12i64 {
        let p = validate(n, 1, &[1]).unwrap();
        o.check(p1_coefficient(&p) == binomial(n as u64, 1), || {
            format!("p1(CP^{}) = {}", n - 1, p1_coefficient(&p))
        });
        // full Pontrjagin class (1 + x^2)^n through c^{2n}
        let cap = 2 * n as usize;
        let oracle = TruncSeries::from_coeffs(
            cap,
            (0..=cap as u64).map(|i| {
                if i % 2 == 0 {
                    binomial(n as u64, i / 2)
                } else {
                    BigInt::from(0)
                }
            }),
        );
        o.check(tangent_classes(&p, cap).total_pontrjagin == oracle, || {
            format!("p(CP^{}) differs from (1+x^2)^{n}", n - 1)
        });
    }
    let cp2 = classify::classify(&validate(3, 1, &[1]).unwrap());
    o.check(cp2.w2_possibly_nonzero, || "CP^2 reported spin".into());
    let s2 = classify::classify(&validate(2, 1, &[1]).unwrap());
    o.check(
        s2.dimension == 2 && s2.stably_parallelizable && !s2.parallelizable,
        || format!("S^2 verdict: {s2:?}"),
    );
    o
}

fn criterion_w2_parity(samples: &[(i64, i64, Vec<i64>)]) -> Outcome {
    let mut o = Outcome::new(5, "w2 parity (n+r)(k-r) == n sum l - sum (l_j - l_i) mod 2");
    for (n, k, l) in samples {
        let r = l.iter().filter(|x| *x % 2 == 0).count() as i64;
        let closed = ((n + r) * (k - r)).rem_euclid(2);
        let sum: i64 = l.iter().sum();
        let pairs: i64 = (0..l.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| l[j] - l[i])
            .sum();
        let expanded = (n * sum - pairs).rem_euclid(2);
        o.check(closed == expanded, || {
            format!("n={n} k={k} l={l:?}: {closed} vs {expanded}")
        });
        if l.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            let p = validate(*n, *k, l).unwrap();
            o.check(
                w2_coefficient(&p) == (closed == 1)
                    && w2_coefficient_expanded(&p) == (expanded == 1),
                || format!("library w2 evaluators disagree at {p:?}"),
            );
        }
    }
    o
}

fn criterion_ring_layer() -> Outcome {
    let mut o = Outcome::new(
        6,
        "ring layer: a * invert(a) == 1; splitting oracle == tensor_lines",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x6);
    for cap in [2usize, 4] {
        for _ in 0..1000 {
            let c0: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let coeffs: Vec<i64> = std::iter::once(c0)
                .chain((0..cap).map(|_| rng.gen_range(-9..=9)))
                .collect();
            let a = TruncSeries::from_coeffs(cap, coeffs.iter().copied());
            let inv = a.invert().expect("unit constant term");
            o.check(a.try_mul(&inv).unwrap().is_one(), || {
                format!("{a} has no inverse at cap {cap}")
            });
        }
    }
    let roots = RootBag::formal(2, 0..1).tensor(&RootBag::formal(2, 1..2));
    let poly = roots.chern_polynomial(2);
    for m1 in -10..=10i64 {
        for m2 in -10..=10i64 {
            let images: BTreeMap<usize, i64> = [(0, m1), (1, m2)].into_iter().collect();
            let oracle = poly.eval(&images).unwrap();
            let direct = total_chern(&tensor_lines(m1, m2), 2).unwrap();
            o.check(oracle == direct, || {
                format!("tensor_lines({m1}, {m2}): {direct} vs {oracle}")
            });
        }
    }
    o
}

fn criterion_span_cases(grid: &[StiefelParams]) -> Outcome {
    let mut o = Outcome::new(7, "span cases match the three literal conditions");
    let (mut saw_k1, mut saw_r_odd_gate) = (false, false);
    for p in grid {
        let (n, k) = (p.n(), p.k());
        let r = p.weights().iter().filter(|x| *x % 2 == 0).count() as u32;
        let expect = [
            k > 1 && k % 2 == 1,
            k % 4 == 2 && k > 2 && n % 2 == 1,
            k % 4 == 2 && k > 2 && n % 2 == 0 && r.is_multiple_of(2),
        ];
        let got = classify::span_cases(p);
        let got = [got.contains(1), got.contains(2), got.contains(3)];
        o.check(got == expect, || {
            format!("{p:?}: got {got:?}, want {expect:?}")
        });
        saw_k1 |= k == 1;
        saw_r_odd_gate |= k % 4 == 2 && k > 2 && n % 2 == 0 && r % 2 == 1;
        if k == 1 {
            o.check(!got[0], || format!("{p:?}: k = 1 put in case 1"));
        }
    }
    o.check(saw_k1 && saw_r_odd_gate, || {
        "grid misses the k = 1 or odd-r edge".into()
    });
    o
}

#[test]
fn acceptance() {
    let grid = theorem_grid();
    let samples = random_samples(10_000);
    let outcomes = [
        criterion_theorem_table(&grid),
        criterion_p1_identity(&samples),
        criterion_symbolic_agreement(&grid),
        criterion_known_spaces(),
        criterion_w2_parity(&samples),
        criterion_ring_layer(),
        criterion_span_cases(&grid),
    ];
    for o in &outcomes {
        let tag = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {}: {} ({} checks)",
            o.id, o.name, o.checked
        );
        for f in &o.failures {
            println!("       {f}");
        }
    }
    assert!(
        outcomes.iter().all(Outcome::passed),
        "acceptance criteria failed"
    );
}
