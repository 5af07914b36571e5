//! Exact prime counting and comparison against the offset logarithmic
//! integral.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::evaluator::{Evaluator, LogFn};
use crate::exec::Exec;

/// Largest sieve limit accepted.
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;
/// The error bound |π(x) − Li(x)| < √x·ln x/(8π) is stated for x above this.
pub const SCHOENFELD_THRESHOLD: u64 = 2657;

/// Primality bits up to `limit` with per-word cumulative counts.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
    /// Number of primes in all words before index i.
    cumulative: Vec<u64>,
}

/// Sieve of Eratosthenes up to and including `limit`.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::LimitTooLarge {
            limit,
            max: MAX_SIEVE_LIMIT,
        });
    }
    if limit < 2 {
        return Err(Error::domain("sieve", "limit >= 2", limit as f64));
    }
    let words = (limit as usize + 1).div_ceil(64);
    let mut bits = vec![!0u64; words];
    let clear = |bits: &mut [u64], i: usize| bits[i / 64] &= !(1u64 << (i % 64));
    clear(&mut bits, 0);
    clear(&mut bits, 1);
    // drop the padding past `limit`
    let tail = (limit as usize + 1) % 64;
    if tail != 0 {
        bits[words - 1] &= (1u64 << tail) - 1;
    }
    let n = limit as usize;
    let mut p = 2usize;
    while p * p <= n {
        if bits[p / 64] >> (p % 64) & 1 == 1 {
            let mut m = p * p;
            while m <= n {
                clear(&mut bits, m);
                m += p;
            }
        }
        p += 1;
    }
    let mut cumulative = Vec::with_capacity(words);
    let mut acc = 0u64;
    for w in &bits {
        cumulative.push(acc);
        acc += u64::from(w.count_ones());
    }
    Ok(PrimeTable {
        limit,
        bits,
        cumulative,
    })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.limit && self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Primes up to the limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.limit).filter(move |&n| self.is_prime(n))
    }
}

/// π(x), the number of primes ≤ x.
pub fn pi_of(table: &PrimeTable, x: u64) -> Result<u64> {
    if x > table.limit {
        return Err(Error::OutOfRange {
            x,
            limit: table.limit,
        });
    }
    let word = (x / 64) as usize;
    let bit = x % 64;
    let mask = if bit == 63 {
        !0u64
    } else {
        (1u64 << (bit + 1)) - 1
    };
    Ok(table.cumulative[word] + u64::from((table.bits[word] & mask).count_ones()))
}

/// One line of the π(x) versus Li(x) comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub x: u64,
    pub pi_x: u64,
    /// Li(x) = li(x) − li(2)
    pub li_x: f64,
    pub abs_diff: f64,
    /// √x·ln x/(8π)
    pub schoenfeld_bound: f64,
    /// Only defined above the threshold 2657.
    pub bound_holds: Option<bool>,
}

impl ComparisonRow {
    pub const CSV_HEADER: &'static str = "x,pi,li_offset,abs_diff,schoenfeld_bound,bound_holds";

    pub fn to_csv(&self) -> String {
        let holds = match self.bound_holds {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        format!(
            "{},{},{:.6},{:.6},{:.6},{}",
            self.x, self.pi_x, self.li_x, self.abs_diff, self.schoenfeld_bound, holds
        )
    }
}

pub fn schoenfeld_bound(x: f64) -> f64 {
    x.sqrt() * x.ln() / (8.0 * PI)
}

pub fn schoenfeld_row(table: &PrimeTable, x: u64) -> Result<ComparisonRow> {
    if x < 2 || x > table.limit {
        return Err(Error::OutOfRange {
            x,
            limit: table.limit,
        });
    }
    let pi_x = pi_of(table, x)?;
    let li_x = Evaluator::default()
        .eval_log(LogFn::LiOffset, x as f64)?
        .value;
    let abs_diff = (pi_x as f64 - li_x).abs();
    let bound = schoenfeld_bound(x as f64);
    Ok(ComparisonRow {
        x,
        pi_x,
        li_x,
        abs_diff,
        schoenfeld_bound: bound,
        bound_holds: (x > SCHOENFELD_THRESHOLD).then_some(abs_diff < bound),
    })
}

/// Rows for every x in `xs`, in input order.
pub fn compare_table(table: &PrimeTable, xs: &[u64]) -> Result<Vec<ComparisonRow>> {
    compare_table_with(table, xs, Exec::default())
}

pub fn compare_table_with(
    table: &PrimeTable,
    xs: &[u64],
    exec: Exec,
) -> Result<Vec<ComparisonRow>> {
    exec.map(xs, |&x| schoenfeld_row(table, x))
        .into_iter()
        .collect()
}

/// Integers in `[from, to]` above the threshold where the Schoenfeld
/// inequality fails.
pub fn schoenfeld_violations(
    table: &PrimeTable,
    from: u64,
    to: u64,
    exec: Exec,
) -> Result<Vec<u64>> {
    if to > table.limit {
        return Err(Error::OutOfRange {
            x: to,
            limit: table.limit,
        });
    }
    let xs: Vec<u64> = (from.max(SCHOENFELD_THRESHOLD + 1)..=to).collect();
    let rows = compare_table_with(table, &xs, exec)?;
    Ok(rows
        .into_iter()
        .filter(|r| r.bound_holds == Some(false))
        .map(|r| r.x)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_count(x: u64) -> u64 {
        (2..=x)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .count() as u64
    }

    #[test]
    fn small_sieve() {
        let t = sieve(10).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(pi_of(&t, 10).unwrap(), 4);
        assert_eq!(pi_of(&t, 1).unwrap(), 0);
        assert_eq!(pi_of(&t, 0).unwrap(), 0);
    }

    #[test]
    fn counts_match_trial_division() {
        let t = sieve(2000).unwrap();
        for x in [2, 3, 63, 64, 65, 100, 127, 128, 700, 1000, 2000] {
            assert_eq!(pi_of(&t, x).unwrap(), brute_force_count(x), "x={x}");
        }
        assert_eq!(pi_of(&t, 100).unwrap(), 25);
        assert_eq!(pi_of(&t, 700).unwrap(), 125);
        assert_eq!(pi_of(&t, 1000).unwrap(), 168);
    }

    #[test]
    fn ten_thousand() {
        let t = sieve(10_000).unwrap();
        assert_eq!(pi_of(&t, 10_000).unwrap(), 1229);
        assert!(!t.is_prime(0) && !t.is_prime(1) && t.is_prime(2));
    }

    #[test]
    fn limits_and_ranges() {
        assert!(matches!(
            sieve(MAX_SIEVE_LIMIT + 1),
            Err(Error::LimitTooLarge { .. })
        ));
        assert!(sieve(1).is_err());
        let t = sieve(100).unwrap();
        assert!(matches!(pi_of(&t, 101), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            schoenfeld_row(&t, 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn row_at_ten_thousand() {
        let t = sieve(10_000).unwrap();
        let r = schoenfeld_row(&t, 10_000).unwrap();
        assert_eq!(r.pi_x, 1229);
        assert!((r.schoenfeld_bound - 36.6468).abs() < 1e-4);
        assert!((r.abs_diff - 16.092).abs() < 0.01);
        assert_eq!(r.bound_holds, Some(true));
        let low = schoenfeld_row(&t, 2000).unwrap();
        assert_eq!(low.bound_holds, None);
        assert!(r.to_csv().starts_with("10000,1229,1245.09"));
    }

    #[test]
    fn three_thousand_holds() {
        let t = sieve(3000).unwrap();
        assert_eq!(schoenfeld_row(&t, 3000).unwrap().bound_holds, Some(true));
    }

    #[test]
    fn empty_and_ordered_tables() {
        let t = sieve(700).unwrap();
        assert!(compare_table(&t, &[]).unwrap().is_empty());
        let xs: Vec<u64> = (2..=100).rev().collect();
        let rows = compare_table(&t, &xs).unwrap();
        assert_eq!(rows.len(), 99);
        assert_eq!(rows[0].x, 100);
        assert_eq!(rows[0].pi_x, 25);
        assert_eq!(compare_table(&t, &[700]).unwrap()[0].pi_x, 125);
    }

    #[test]
    fn pi_steps_by_zero_or_one() {
        let t = sieve(5000).unwrap();
        let mut prev = 0;
        for x in 1..=5000 {
            let p = pi_of(&t, x).unwrap();
            assert!(p == prev || p == prev + 1);
            prev = p;
        }
    }
}
