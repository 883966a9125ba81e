//! Grid enumeration over canonical parameters.
//!
//! Weights are taken up to permutation: each row carries the nondecreasing
//! representative `1 <= l_1 <= ... <= l_k <= l_max` with gcd 1. Rows are
//! ordered lexicographically by `(n, k, l)` regardless of how many threads
//! evaluated them.

use std::io::{self, Write};

use charclass_core::classify::classify;
use charclass_core::{validate, StiefelParams};
use rayon::prelude::*;

use crate::report::{GridRow, TSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GridFormat {
    Tsv,
    JsonLines,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Nondecreasing length-`k` sequences over `1..=l_max` with gcd 1, in
/// lexicographic order.
pub fn canonical_weights(k: usize, l_max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, l_max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            if cur.iter().fold(0, |g, &x| gcd(x, g)) == 1 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for v in lo..=l_max {
            cur.push(v);
            go(k, l_max, cur, out);
            cur.pop();
        }
    }
    go(k, l_max, &mut cur, &mut out);
    out
}

/// Every valid `(n, k, l)` with `2 <= n <= n_max`, `1 <= k <= n` and
/// canonical `l` bounded by `l_max`.
pub fn grid(n_max: u32, l_max: i64) -> Vec<StiefelParams> {
    let mut out = Vec::new();
    for n in 2..=n_max as i64 {
        for k in 1..=n {
            for l in canonical_weights(k as usize, l_max) {
                out.push(validate(n, k, &l).expect("canonical weights have gcd 1"));
            }
        }
    }
    out
}

/// Classifies the grid in parallel and returns rows in grid order.
pub fn rows(n_max: u32, l_max: i64) -> Vec<GridRow> {
    grid(n_max, l_max)
        .par_iter()
        .map(|p| GridRow::new(&classify(p)))
        .collect()
}

pub fn write_rows<W: Write>(out: &mut W, rows: &[GridRow], format: GridFormat) -> io::Result<()> {
    match format {
        GridFormat::Tsv => {
            writeln!(out, "{TSV_HEADER}")?;
            for r in rows {
                writeln!(out, "{}", r.to_tsv())?;
            }
        }
        GridFormat::JsonLines => {
            for r in rows {
                writeln!(out, "{}", r.to_json_line())?;
            }
        }
    }
    out.flush()
}
