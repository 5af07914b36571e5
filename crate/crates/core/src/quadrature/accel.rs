//! Sequence acceleration used by the improper-integral drivers.

/// Wynn's epsilon algorithm over a sequence of partial sums.
///
/// Returns the extrapolated limit together with an error estimate taken
/// from the two most recent even-column entries. Falls back to the last
/// partial sum when the table degenerates.
pub fn wynn_epsilon(partials: &[f64]) -> (f64, f64) {
    let n = partials.len();
    match n {
        0 => return (0.0, f64::INFINITY),
        1 => return (partials[0], f64::INFINITY),
        _ => {}
    }

    let mut best = partials[n - 1];
    let mut best_err = (partials[n - 1] - partials[n - 2]).abs();

    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partials.to_vec();
    let mut column = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 {
                // exact convergence in this column
                if column % 2 == 0 {
                    return (cur[i + 1], best_err.min(f64::EPSILON * cur[i + 1].abs()));
                }
                return (best, best_err);
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        column += 1;
        if column % 2 == 0 && next.len() >= 2 {
            let m = next.len();
            let est = next[m - 1];
            let err = (next[m - 1] - next[m - 2]).abs();
            if est.is_finite() && err < best_err {
                best = est;
                best_err = err;
            }
        }
        prev = cur;
        cur = next;
    }
    (best, best_err)
}

/// Richardson extrapolation of values `J(ε_k)` sampled on a geometric sequence
/// `ε_k = ε_0·ratio^k`, assuming `J(ε) = J(0) + c₁ε + c₂ε² + …`.
///
/// Returns the extrapolated value and the difference between the last two
/// diagonal entries as an error estimate.
pub fn richardson_geometric(samples: &[f64], ratio: f64, max_order: usize) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n == 1 {
        return (samples[0], f64::INFINITY);
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (k, &s) in samples.iter().enumerate() {
        let mut row = vec![s];
        let depth = k.min(max_order);
        for m in 1..=depth {
            let r = ratio.powi(m as i32);
            let v = (row[m - 1] - r * table[k - 1][m - 1]) / (1.0 - r);
            row.push(v);
        }
        table.push(row);
    }
    let last = &table[n - 1];
    let prev = &table[n - 2];
    let value = *last.last().unwrap();
    let err = (value - prev.last().unwrap()).abs();
    (value, err)
}
