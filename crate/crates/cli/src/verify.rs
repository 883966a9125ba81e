//! Seeded property suites for the ring, bundle, manifold and classification
//! layers. The same seed always replays the same samples, so a reported
//! counterexample can be reproduced exactly.

use std::collections::BTreeMap;

use charclass_core::bundles::{
    pontrjagin_from_chern, solve_stable, tensor_lines, total_chern, total_pontrjagin, total_sw,
    BundleExpr, CharClassReport,
};
use charclass_core::classify::{
    classify, p1_coefficient, p1_coefficient_expanded, span_cases, tangent_classes, w2_coefficient,
    w2_coefficient_expanded,
};
use charclass_core::{validate, MultiPoly, RootBag, TruncSeries};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate;

pub const DEFAULT_SEED: u64 = 20_160_101;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Highest power of `c` kept; at least 2.
    pub degree_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    /// First violated property and the input that broke it.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            result: SuiteResult {
                name,
                checks: 0,
                counterexample: None,
            },
        }
    }

    fn failed(&self) -> bool {
        self.result.counterexample.is_some()
    }

    /// Records one check; only the first failure is kept.
    fn check(&mut self, property: &str, ok: bool, input: impl FnOnce() -> String) {
        if self.failed() {
            return;
        }
        self.result.checks += 1;
        if !ok {
            self.result.counterexample = Some(format!("{property}: {}", input()));
        }
    }
}

pub fn run(cfg: &VerifyConfig) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    vec![
        ring_suite(&mut rng, cfg),
        bundles_suite(&mut rng, cfg),
        stiefel_suite(&mut rng, cfg),
        classify_suite(&mut rng, cfg),
    ]
}

fn random_series(rng: &mut ChaCha8Rng, cap: usize) -> TruncSeries {
    TruncSeries::from_coeffs(cap, (0..=cap).map(|_| rng.gen_range(-9i64..=9)))
}

fn random_unit(rng: &mut ChaCha8Rng, cap: usize) -> TruncSeries {
    let c0 = if rng.gen_bool(0.5) { 1 } else { -1 };
    TruncSeries::from_coeffs(
        cap,
        std::iter::once(c0).chain((0..cap).map(|_| rng.gen_range(-9i64..=9))),
    )
}

fn random_expr(rng: &mut ChaCha8Rng) -> BundleExpr {
    let mut e = BundleExpr::trivial_complex(rng.gen_range(-3..=3))
        + BundleExpr::trivial_real(rng.gen_range(0..=4));
    for _ in 0..rng.gen_range(0..5) {
        e = e + BundleExpr::lines(rng.gen_range(-3..=3), rng.gen_range(-6..=6));
    }
    e
}

fn ring_suite(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("ring");
    let cap = cfg.degree_cap;
    for _ in 0..cfg.samples {
        let (a, b, c) = (
            random_series(rng, cap),
            random_series(rng, cap),
            random_series(rng, cap),
        );
        let show = || format!("a = {a}, b = {b}, c = {c}");
        let add = |x: &TruncSeries, y: &TruncSeries| x.try_add(y).unwrap();
        let mul = |x: &TruncSeries, y: &TruncSeries| x.try_mul(y).unwrap();
        s.check("add commutes", add(&a, &b) == add(&b, &a), show);
        s.check("mul commutes", mul(&a, &b) == mul(&b, &a), show);
        s.check(
            "add associates",
            add(&add(&a, &b), &c) == add(&a, &add(&b, &c)),
            show,
        );
        s.check(
            "mul associates",
            mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)),
            show,
        );
        s.check(
            "mul distributes",
            mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c)),
            show,
        );
        s.check(
            "reduce_mod2 preserves products",
            mul(&a, &b).reduce_mod2() == a.reduce_mod2().try_mul(&b.reduce_mod2()).unwrap(),
            show,
        );
        s.check(
            "reduce_mod2 preserves sums",
            add(&a, &b).reduce_mod2() == a.reduce_mod2().try_add(&b.reduce_mod2()).unwrap(),
            show,
        );

        let u = random_unit(rng, cap);
        let inv = u.invert().expect("unit");
        s.check(
            "invert is two-sided",
            mul(&u, &inv).is_one() && mul(&inv, &u).is_one(),
            || format!("a = {u}"),
        );

        let fa: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
        let fb: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
        let images: BTreeMap<usize, i64> = (0..3).map(|i| (i, rng.gen_range(-5..=5))).collect();
        let p = MultiPoly::one_plus_linear(cap, &fa);
        let q = MultiPoly::one_plus_linear(cap, &fb);
        let lhs = p.try_mul(&q).unwrap().eval(&images).unwrap();
        let rhs = mul(&p.eval(&images).unwrap(), &q.eval(&images).unwrap());
        s.check("eval is multiplicative", lhs == rhs, || {
            format!("forms {fa:?}, {fb:?}, images {images:?}")
        });
        if s.failed() {
            break;
        }
    }
    s.result
}

fn bundles_suite(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("bundles");
    let cap = cfg.degree_cap;
    let tensor_roots = RootBag::formal(2, 0..1).tensor(&RootBag::formal(2, 1..2));
    let tensor_poly = tensor_roots.chern_polynomial(cap);
    for _ in 0..cfg.samples {
        let (e1, e2) = (random_expr(rng), random_expr(rng));
        let show = || format!("e1 = {e1}, e2 = {e2}");
        let (c1, c2) = (e1.complex_part(), e2.complex_part());
        s.check(
            "Whitney multiplicativity",
            total_chern(&(c1.clone() + c2.clone()), cap).unwrap()
                == total_chern(&c1, cap)
                    .unwrap()
                    .try_mul(&total_chern(&c2, cap).unwrap())
                    .unwrap(),
            show,
        );

        let m = rng.gen_range(-20i64..=20);
        let mut direct = Vec::with_capacity(cap + 1);
        let mut power = BigInt::from(1);
        for _ in 0..=cap {
            direct.push(power.clone());
            power *= -m;
        }
        s.check(
            "dual rule",
            total_chern(&-BundleExpr::line(m), cap).unwrap()
                == TruncSeries::from_coeffs(cap, direct)
                && total_chern(&BundleExpr::line(m).dual(), cap).unwrap()
                    == TruncSeries::linear(cap, -m),
            || format!("m = {m}"),
        );

        let (m1, m2) = (rng.gen_range(-10i64..=10), rng.gen_range(-10i64..=10));
        let images: BTreeMap<usize, i64> = [(0, m1), (1, m2)].into_iter().collect();
        s.check(
            "tensor rule matches splitting roots",
            total_chern(&tensor_lines(m1, m2), cap).unwrap() == tensor_poly.eval(&images).unwrap(),
            || format!("m1 = {m1}, m2 = {m2}"),
        );

        let chern = total_chern(&c1, cap).unwrap();
        let p = total_pontrjagin(&e1, cap);
        let resigned = TruncSeries::from_coeffs(
            cap,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 4 == 2 { -a } else { a.clone() }),
        );
        s.check(
            "Chern-Pontrjagin relation round-trips",
            resigned == chern.alternate().try_mul(&chern).unwrap()
                && p == pontrjagin_from_chern(&chern),
            || format!("e = {e1}"),
        );

        let (tc, tr) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let bigger = e1.clone() + BundleExpr::trivial_complex(tc) + BundleExpr::trivial_real(tr);
        s.check(
            "trivial summands change no p or w",
            total_pontrjagin(&bigger, cap) == p && total_sw(&bigger, cap) == total_sw(&e1, cap),
            || format!("e = {e1}, +{tc} eps_C, +{tr} eps_R"),
        );
        s.check(
            "w = c mod 2",
            total_sw(&c1, cap) == chern.reduce_mod2(),
            || format!("e = {c1}"),
        );

        let solved = solve_stable(&e1, &e2, cap).unwrap();
        let diff = CharClassReport::of(&(e2.clone() - e1.clone()), cap);
        s.check(
            "solve_stable equals the virtual difference",
            solved.total_pontrjagin == diff.total_pontrjagin
                && solved.total_sw == diff.total_sw
                && solved.total_chern == diff.total_chern,
            || format!("known = {e1}, rhs = {e2}"),
        );
        if s.failed() {
            break;
        }
    }
    s.result
}

fn random_params(rng: &mut ChaCha8Rng, max_n: i64, max_l: i64) -> (i64, i64, Vec<i64>) {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..=n.min(8));
    let l = (0..k).map(|_| rng.gen_range(-max_l..=max_l)).collect();
    (n, k, l)
}

fn stiefel_suite(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("stiefel");
    for _ in 0..cfg.samples {
        let (n, k, mut l) = random_params(rng, 12, 12);
        let g = l.iter().fold(0u64, |g, &x| num_gcd(g, x.unsigned_abs()));
        let valid = validate(n, k, &l);
        s.check(
            "validate accepts exactly gcd 1",
            valid.is_ok() == (g == 1),
            || format!("n = {n}, k = {k}, l = {l:?}"),
        );
        // force validity so the rest of the checks run on every sample
        l[0] = 1;
        let p = validate(n, k, &l).expect("l_1 = 1");
        let eq = p.tangent_stable_equation();
        s.check(
            "dimension = 2nk - k^2 - 1 >= 2",
            p.dimension() as i64 == 2 * n * k - k * k - 1 && p.dimension() >= 2,
            || format!("{p:?}"),
        );
        s.check(
            "tangent equation balances real ranks",
            p.dimension() as i64 + eq.known.real_rank() == eq.rhs.real_rank(),
            || format!("{p:?}"),
        );
        let mut shuffled = l.clone();
        shuffled.shuffle(rng);
        let q = validate(n, k, &shuffled).expect("permutation keeps gcd");
        s.check(
            "permuting l keeps dimension and coefficients",
            q.dimension() == p.dimension()
                && p1_coefficient(&q) == p1_coefficient(&p)
                && w2_coefficient(&q) == w2_coefficient(&p),
            || format!("{l:?} vs {shuffled:?}"),
        );
        s.check(
            "cohomology facts apply iff k < n - 1",
            p.cohomology_facts().applicable == (k < n - 1),
            || format!("{p:?}"),
        );
        if s.failed() {
            break;
        }
    }
    s.result
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn classify_suite(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> SuiteResult {
    let mut s = Suite::new("classify");
    let cap = cfg.degree_cap;
    for _ in 0..cfg.samples {
        let (n, k, mut l) = random_params(rng, 12, 50);
        let show = || format!("n = {n}, k = {k}, l = {l:?}");
        let (n_big, k_big) = (BigInt::from(n), BigInt::from(k));
        let sum: BigInt = l.iter().map(|&x| BigInt::from(x)).sum();
        let sq: BigInt = l.iter().map(|&x| BigInt::from(x * x)).sum();
        let mut pairs_sq = BigInt::from(0);
        let mut pairs = BigInt::from(0);
        for i in 0..l.len() {
            for j in 0..i {
                pairs_sq += BigInt::from((l[j] - l[i]).pow(2));
                pairs += BigInt::from(l[j] - l[i]);
            }
        }
        s.check(
            "p1 identity",
            &n_big * &sq - &pairs_sq == (&n_big - &k_big) * &sq + &sum * &sum,
            show,
        );
        let r = l.iter().filter(|x| *x % 2 == 0).count() as i64;
        s.check(
            "w2 parity identity",
            ((n + r) * (k - r)).rem_euclid(2) == ((n - k + 1) * (k - r)).rem_euclid(2)
                && ((n + r) * (k - r)).rem_euclid(2) == (&n_big * &sum - &pairs).bit(0) as i64,
            show,
        );

        l[0] = 1;
        let p = validate(n, k, &l).expect("l_1 = 1");
        let tau = tangent_classes(&p, cap);
        s.check(
            "three routes agree on p1 and w2",
            p1_coefficient(&p) == p1_coefficient_expanded(&p)
                && p1_coefficient(&p) == tau.p1()
                && w2_coefficient(&p) == w2_coefficient_expanded(&p)
                && w2_coefficient(&p) == tau.w2(),
            || format!("{p:?}"),
        );
        let mut shuffled = l.clone();
        shuffled.shuffle(rng);
        let q = validate(n, k, &shuffled).expect("permutation keeps gcd");
        s.check(
            "span cases are symmetric in l",
            span_cases(&p) == span_cases(&q),
            || format!("{l:?} vs {shuffled:?}"),
        );
        if s.failed() {
            break;
        }
    }
    for p in enumerate::grid(10, 3) {
        if s.failed() {
            break;
        }
        let c = classify(&p);
        let ok = (!c.parallelizable || c.stably_parallelizable)
            && (!c.cohomology_applicable
                || (!c.stably_parallelizable && c.p1_coefficient > BigInt::from(0)))
            && c.orientable;
        s.check("classification invariants on the grid", ok, || {
            format!("{c:?}")
        });
    }
    s.result
}
