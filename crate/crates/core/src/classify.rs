//! Parallelizability verdicts and the `p_1`, `w_2` coefficients of the
//! tangent bundle of `W_{n,k;l}`.
//!
//! The coefficients are computed along three routes that must agree:
//!
//! * closed form: `p_1 = ((n-k) sum l_i^2 + (sum l_i)^2) c_1^2` and
//!   `w_2 = (n+r)(k-r) w_2(xi)` with `r` the number of even weights;
//! * expanded form: `n sum l_i^2 - sum_{j<i} (l_j - l_i)^2` and
//!   `n sum l_i - sum_{j<i} (l_j - l_i)` (mod 2);
//! * symbolic: divide total classes through the stable tangent equation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::bundles::{self, CharClassReport};
use crate::ring::DEFAULT_CAP;
use crate::stiefel::StiefelParams;

/// Which of the three sufficient conditions for span = stable span hold.
/// No case holding means "unknown", never "unequal".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SpanCases {
    /// `k > 1` odd.
    pub odd_k: bool,
    /// `k = 2 mod 4`, `k > 2`, `n` odd.
    pub k2mod4_n_odd: bool,
    /// `k = 2 mod 4`, `k > 2`, `n` even, even number of even weights.
    pub k2mod4_n_even_r_even: bool,
}

impl SpanCases {
    /// Case numbers in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u8> {
        [self.odd_k, self.k2mod4_n_odd, self.k2mod4_n_even_r_even]
            .into_iter()
            .zip(1u8..)
            .filter_map(|(on, i)| on.then_some(i))
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }

    pub fn contains(&self, case: u8) -> bool {
        self.iter().any(|c| c == case)
    }
}

/// Full verdict for one `(n, k, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub params: StiefelParams,
    pub dimension: u64,
    pub orientable: bool,
    pub parallelizable: bool,
    pub stably_parallelizable: bool,
    /// Coefficient of `c_1(xi)^2` in `p_1(tau)`.
    pub p1_coefficient: BigInt,
    /// Coefficient of `w_2(xi)` in `w_2(tau)`.
    pub w2_coefficient: bool,
    pub w2_possibly_nonzero: bool,
    pub span_cases: SpanCases,
    pub cohomology_applicable: bool,
}

pub fn classify(p: &StiefelParams) -> Classification {
    let (n, k) = (p.n(), p.k());
    let stably = k == n || k + 1 == n;
    let applicable = p.cohomology_facts().applicable;
    Classification {
        params: p.clone(),
        dimension: p.dimension(),
        // SU(n) modulo a connected closed subgroup
        orientable: true,
        parallelizable: stably && (n, k) != (2, 1),
        stably_parallelizable: stably,
        p1_coefficient: p1_coefficient(p),
        w2_coefficient: w2_coefficient(p),
        w2_possibly_nonzero: w2_possibly_nonzero(p),
        span_cases: span_cases(p),
        cohomology_applicable: applicable,
    }
}

impl Classification {
    /// Conditions under which the verdict should be read with care.
    pub fn caveats(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.cohomology_applicable {
            out.push(
                "k >= n-1: H^2 and H^4 are not known to be free on c_1 and c_1^2, \
                 so the p1 and w2 coefficients imply no nonvanishing",
            );
        }
        if self.span_cases.is_empty() {
            out.push("no span case applies: span = stable span is undecided, not false");
        } else if !self.cohomology_applicable {
            out.push(
                "span cases are applied verbatim; whether they also need k < n-1 is not settled",
            );
        }
        out
    }
}

fn weight_sums(p: &StiefelParams) -> (BigInt, BigInt) {
    p.weights()
        .iter()
        .fold((BigInt::from(0), BigInt::from(0)), |(s, sq), &l| {
            let l = BigInt::from(l);
            (s + &l, sq + &l * &l)
        })
}

/// `(n-k) sum l_i^2 + (sum l_i)^2`.
pub fn p1_coefficient(p: &StiefelParams) -> BigInt {
    let (sum, sum_sq) = weight_sums(p);
    BigInt::from(p.n() - p.k()) * sum_sq + &sum * &sum
}

/// `n sum l_i^2 - sum_{j<i} (l_j - l_i)^2`.
pub fn p1_coefficient_expanded(p: &StiefelParams) -> BigInt {
    let l = p.weights();
    let (_, sum_sq) = weight_sums(p);
    let mut pairs = BigInt::from(0);
    for i in 0..l.len() {
        for j in 0..i {
            let d = BigInt::from(l[j]) - l[i];
            pairs += &d * &d;
        }
    }
    BigInt::from(p.n()) * sum_sq - pairs
}

/// Classes of the tangent bundle from the stable equation, at `cap`.
pub fn tangent_classes(p: &StiefelParams, cap: usize) -> CharClassReport {
    let eq = p.tangent_stable_equation();
    bundles::solve_stable(&eq.known, &eq.rhs, cap).expect("total classes of line sums are units")
}

pub fn p1_coefficient_symbolic(p: &StiefelParams) -> BigInt {
    tangent_classes(p, DEFAULT_CAP).p1()
}

/// `(n+r)(k-r) mod 2`, `r` = number of even weights.
pub fn w2_coefficient(p: &StiefelParams) -> bool {
    let r = p.even_count();
    (p.n() + r) % 2 == 1 && (p.k() - r) % 2 == 1
}

/// `n sum l_i - sum_{j<i} (l_j - l_i)` mod 2.
pub fn w2_coefficient_expanded(p: &StiefelParams) -> bool {
    let l = p.weights();
    let mut acc = BigInt::from(p.n()) * weight_sums(p).0;
    for i in 0..l.len() {
        for j in 0..i {
            acc -= BigInt::from(l[j]) - l[i];
        }
    }
    acc.bit(0)
}

pub fn w2_coefficient_symbolic(p: &StiefelParams) -> bool {
    tangent_classes(p, DEFAULT_CAP).w2()
}

/// `w_2(tau)` is nonzero when its coefficient is odd and `w_2(xi)` is known
/// to be nonzero, i.e. for `n, k` odd with `r` even or `n, k` even with `r`
/// odd, in the range `k < n - 1`.
pub fn w2_possibly_nonzero(p: &StiefelParams) -> bool {
    w2_coefficient(p) && p.cohomology_facts().applicable
}

pub fn span_cases(p: &StiefelParams) -> SpanCases {
    let (n, k, r) = (p.n(), p.k(), p.even_count());
    let k2mod4 = k % 4 == 2 && k > 2;
    SpanCases {
        odd_k: k > 1 && k % 2 == 1,
        k2mod4_n_odd: k2mod4 && n % 2 == 1,
        k2mod4_n_even_r_even: k2mod4 && n % 2 == 0 && r % 2 == 0,
    }
}

/// One line of a derivation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: &'static str,
    pub expression: String,
    pub class: String,
}

/// Re-derives `p_1` and `w_2` step by step for display.
pub fn derivation(p: &StiefelParams) -> Vec<DerivationStep> {
    let cap = DEFAULT_CAP;
    let eq = p.tangent_stable_equation();
    let step = |rule, expression: String, class: String| DerivationStep {
        rule,
        expression,
        class,
    };
    let known_c = bundles::total_chern(&eq.known.complex_part(), cap).expect("complex part");
    let rhs_c = bundles::total_chern(&eq.rhs, cap).expect("rhs is complex");
    let tau = tangent_classes(p, cap);
    let r = p.even_count();
    let (sum, sum_sq) = weight_sums(p);
    Vec::from([
        step(
            "stable tangent equation",
            format!("tau + {} = {}", eq.known, eq.rhs),
            format!("rank tau = {}", eq.tangent_rank()),
        ),
        step(
            "Whitney product, c(xi^m) = 1 + mc",
            format!("c({})", eq.rhs),
            format!("{rhs_c}"),
        ),
        step(
            "Whitney product, real trivial summands dropped",
            format!("c({})", eq.known.complex_part()),
            format!("{known_c}"),
        ),
        step(
            "1 - p1 + p2 - ... = c(-c) c(c), then divide",
            String::from("p(tau)"),
            format!("{}", tau.total_pontrjagin),
        ),
        step(
            "w = c mod 2, then divide",
            String::from("w(tau)"),
            format!("{}", tau.total_sw),
        ),
        step(
            "closed form (n-k) sum l^2 + (sum l)^2",
            format!("({} - {}) * {} + ({})^2", p.n(), p.k(), sum_sq, sum),
            format!("p1 = {} c^2", p1_coefficient(p)),
        ),
        step(
            "closed form (n+r)(k-r) mod 2",
            format!("({} + {r}) * ({} - {r}) mod 2", p.n(), p.k()),
            format!("w2 = {} w2(xi)", u8::from(w2_coefficient(p))),
        ),
    ])
}
