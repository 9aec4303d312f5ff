//! Dense complex Gaussian elimination with partial pivoting.

use num_complex::Complex64;

/// Outcome of an elimination on an `N × N` system.
#[derive(Debug, Clone, PartialEq)]
pub enum Solve<const N: usize> {
    Solution([Complex64; N]),
    /// A pivot fell below `rel_tol` times the largest matrix entry.
    Singular {
        smallest_pivot: f64,
        scale: f64,
    },
}

/// Solves `a x = b` in place.
pub fn solve<const N: usize>(
    mut a: [[Complex64; N]; N],
    mut b: [Complex64; N],
    rel_tol: f64,
) -> Solve<N> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Solve::Singular {
            smallest_pivot: 0.0,
            scale,
        };
    }
    let threshold = rel_tol * scale;
    let mut smallest_pivot = f64::INFINITY;

    for col in 0..N {
        let (pivot_row, pivot_mag) =
            (col..N)
                .map(|row| (row, a[row][col].norm()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        smallest_pivot = smallest_pivot.min(pivot_mag);
        if pivot_mag <= threshold {
            return Solve::Singular {
                smallest_pivot,
                scale,
            };
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        let inv = a[col][col].inv();
        for row in col + 1..N {
            let factor = a[row][col] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[row][col] = Complex64::new(0.0, 0.0);
            for k in col + 1..N {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }

    let mut x = [Complex64::new(0.0, 0.0); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Solve::Solution(x)
}
