//! Derivative-free refinement of bracketed minima.

/// Locates a minimum of `f` inside `[lo, hi]` by bisecting on the sign of a
/// centered difference (dichotomous search).
///
/// Each step keeps the half that contains the smaller of `f(mid ± eps)`,
/// with `eps` a small fraction of the current width, so the bracket shrinks
/// by just over a half per step. Iteration stops once the width reaches
/// `floor` or the probes collapse onto `mid` in floating point.
pub fn refine_minimum<F>(f: F, mut lo: f64, mut hi: f64, floor: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    const MAX_STEPS: usize = 400;
    for _ in 0..MAX_STEPS {
        let width = hi - lo;
        if width <= floor {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let ulp = mid.abs().next_up() - mid.abs();
        let eps = (1e-3 * width).max(2.0 * ulp);
        if 2.0 * eps >= width {
            break;
        }
        let (left, right) = (mid - eps, mid + eps);
        if f(left) <= f(right) {
            hi = right;
        } else {
            lo = left;
        }
    }
    let mid = 0.5 * (lo + hi);
    [mid, lo, hi]
        .into_iter()
        .map(|x| (x, f(x)))
        .fold((mid, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        })
        .0
}

/// Indices of strict-from-the-left discrete local minima of `values`,
/// endpoints excluded.
pub fn local_minimum_indices(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] < values[i - 1] {
            // walk over a plateau
            let mut j = i;
            while j + 1 < values.len() && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < values.len() && values[j + 1] > values[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Number of local minima, counted as `-` → `+` sign changes of the
/// discrete forward differences. Zero differences are skipped.
pub fn count_local_minima(values: &[f64]) -> usize {
    let mut count = 0;
    let mut last_sign = 0i8;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        let sign = if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            continue;
        };
        if last_sign < 0 && sign > 0 {
            count += 1;
        }
        last_sign = sign;
    }
    count
}
