//! The manifolds `W_{n,k;l}`: parameters, dimension, the stable tangent
//! equation, and the low-degree cohomology facts.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::bundles::BundleExpr;
use crate::error::StiefelError;

/// Validated `(n, k, l)`: `n >= 2`, `1 <= k <= n`, `l` has length `k` and
/// `gcd(|l_1|, ..., |l_k|) = 1`. Weights may be zero or negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StiefelParams {
    n: u32,
    k: u32,
    l: Vec<i64>,
}

/// Checks that the circle action with weights `l` on `k`-frames in `C^n` is
/// free, so the quotient is a manifold.
pub fn validate(n: i64, k: i64, l: &[i64]) -> Result<StiefelParams, StiefelError> {
    if n < 2 {
        return Err(StiefelError::InvalidParameters("n must be at least 2"));
    }
    if n > u32::MAX as i64 {
        return Err(StiefelError::InvalidParameters("n is too large"));
    }
    if k < 1 {
        return Err(StiefelError::InvalidParameters("k must be at least 1"));
    }
    if k > n {
        return Err(StiefelError::InvalidParameters("k must not exceed n"));
    }
    if l.len() as i64 != k {
        return Err(StiefelError::InvalidParameters(
            "l must have exactly k entries",
        ));
    }
    let g = l.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()));
    if g != 1 {
        return Err(StiefelError::NotAManifold { gcd: g });
    }
    Ok(StiefelParams {
        n: n as u32,
        k: k as u32,
        l: l.to_vec(),
    })
}

impl StiefelParams {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn weights(&self) -> &[i64] {
        &self.l
    }

    /// Number of even weights.
    pub fn even_count(&self) -> u32 {
        self.l.iter().filter(|x| *x % 2 == 0).count() as u32
    }

    /// Real dimension `n^2 - (n-k)^2 - 1 = 2nk - k^2 - 1`.
    pub fn dimension(&self) -> u64 {
        let (n, k) = (self.n as u64, self.k as u64);
        2 * n * k - k * k - 1
    }

    /// The stable equation
    /// `tau + (k+1) eps_R + sum_{j<i} xi^{l_j - l_i} = n sum_i xi^{-l_i}`.
    pub fn tangent_stable_equation(&self) -> TangentEquation {
        let k = self.l.len();
        let mut known = BundleExpr::trivial_real(k as i64 + 1);
        for i in 0..k {
            for j in 0..i {
                known = known + BundleExpr::line(self.l[j] - self.l[i]);
            }
        }
        let rhs = self
            .l
            .iter()
            .fold(BundleExpr::zero(), |acc, &li| acc + BundleExpr::line(-li));
        TangentEquation {
            known,
            rhs: self.n as i64 * rhs,
        }
    }

    pub fn cohomology_facts(&self) -> CohomologyFacts {
        let applicable = self.k + 1 < self.n;
        CohomologyFacts {
            applicable,
            h2_free_on_c1: applicable,
            h4_free_on_c1_sq: applicable,
        }
    }
}

/// Both sides of the stable tangent equation, with `tau` left implicit on
/// the left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentEquation {
    /// `(k+1) eps_R + sum_{j<i} xi^{l_j - l_i}`.
    pub known: BundleExpr,
    /// `n sum_i xi^{-l_i}`.
    pub rhs: BundleExpr,
}

impl TangentEquation {
    /// Real rank of `tau` forced by the equation.
    pub fn tangent_rank(&self) -> i64 {
        self.rhs.real_rank() - self.known.real_rank()
    }
}

/// Low-degree integral cohomology of `W_{n,k;l}`. When `k < n - 1` the
/// Stiefel manifold is 4-connected, so `H^2` and `H^4` are infinite cyclic on
/// `c_1(xi)` and `c_1(xi)^2`. Otherwise nothing is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyFacts {
    pub applicable: bool,
    pub h2_free_on_c1: bool,
    pub h4_free_on_c1_sq: bool,
}
