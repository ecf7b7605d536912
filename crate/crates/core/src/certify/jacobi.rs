//! Cyclic Jacobi eigenvalues for small dense real symmetric matrices.

/// Off-diagonal Frobenius norm at which the sweep stops.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 64;

fn off_diagonal_norm(a: &[f64], dim: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                s += a[i * dim + j] * a[i * dim + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of the symmetric `dim x dim` row-major matrix `a`, in
/// ascending order. `a` is overwritten.
pub fn symmetric_eigenvalues(a: &mut [f64], dim: usize) -> Vec<f64> {
    assert_eq!(a.len(), dim * dim, "matrix must be dim x dim");
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a, dim) < OFF_DIAGONAL_TOLERANCE {
            break;
        }
        for p in 0..dim {
            for r in p + 1..dim {
                let apr = a[p * dim + r];
                if apr == 0.0 {
                    continue;
                }
                let (app, arr) = (a[p * dim + p], a[r * dim + r]);
                let theta = (arr - app) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let (akp, akr) = (a[k * dim + p], a[k * dim + r]);
                    a[k * dim + p] = c * akp - s * akr;
                    a[k * dim + r] = s * akp + c * akr;
                }
                for k in 0..dim {
                    let (apk, ark) = (a[p * dim + k], a[r * dim + k]);
                    a[p * dim + k] = c * apk - s * ark;
                    a[r * dim + k] = s * apk + c * ark;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    eig
}
