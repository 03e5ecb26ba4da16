//! Dense complex linear algebra: LU direct solve, full GMRES, eigenvalues
//! and 2-norm condition numbers.
//!
//! The LU factorization and GMRES are implemented here; the eigenvalue and
//! singular-value computations are delegated to nalgebra's dense Schur and
//! SVD decompositions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinSolveError {
    #[error("matrix is singular to working precision at pivot {index} (|pivot| = {magnitude:.3e})")]
    SingularPivot { index: usize, magnitude: f64 },
    #[error("matrix must be square, got {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: matrix {n} x {n}, vector {len}")]
    DimensionMismatch { n: usize, len: usize },
    #[error("eigenvalue iteration failed to converge")]
    EigenFailure,
}

/// Which algorithm produced a solution, plus its quality indicators.
#[derive(Debug, Clone)]
pub struct SolveDiagnostics {
    pub method: SolveMethod,
    pub iterations: usize,
    /// True relative residual ||Ax - b|| / ||b||.
    pub residual: f64,
    pub condition_number_2: Option<f64>,
    /// min |pivot| / max |pivot| from the LU factorization (direct solves).
    pub pivot_ratio: Option<f64>,
    /// Set when an iterative solve stopped at its iteration cap.
    pub stagnated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Direct,
    Gmres,
}

/// LU factorization with partial pivoting, solving A x = b.
pub fn direct_solve(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
) -> Result<(DVector<Complex64>, SolveDiagnostics), LinSolveError> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(LinSolveError::DimensionMismatch { n, len: b.len() });
    }
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let max_abs = a.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let hard_floor = max_abs * f64::EPSILON * 1e-3;
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0f64;

    for k in 0..n {
        let mut p = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best <= hard_floor {
            return Err(LinSolveError::SingularPivot {
                index: k,
                magnitude: best,
            });
        }
        if p != k {
            lu.swap_rows(p, k);
            perm.swap(p, k);
        }
        min_pivot = min_pivot.min(best);
        max_pivot = max_pivot.max(best);
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let v = lu[(k, j)];
                lu[(i, j)] -= factor * v;
            }
        }
    }

    // L y = P b (unit lower triangle), then U x = y
    let mut x = DVector::from_fn(n, |i, _| b[perm[i]]);
    for i in 0..n {
        for j in 0..i {
            let v = x[j];
            x[i] -= lu[(i, j)] * v;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let v = x[j];
            x[i] -= lu[(i, j)] * v;
        }
        x[i] /= lu[(i, i)];
    }
    let residual = relative_residual(a, &x, b);
    let diag = SolveDiagnostics {
        method: SolveMethod::Direct,
        iterations: 1,
        residual,
        condition_number_2: None,
        pivot_ratio: Some(min_pivot / max_pivot),
        stagnated: false,
    };
    Ok((x, diag))
}

fn relative_residual(
    a: &DMatrix<Complex64>,
    x: &DVector<Complex64>,
    b: &DVector<Complex64>,
) -> f64 {
    let r = b - a * x;
    r.norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Full GMRES (restart = max_iter) with modified Gram-Schmidt and one
/// reorthogonalization pass.
pub fn gmres<F>(
    apply: F,
    b: &DVector<Complex64>,
    tol: f64,
    max_iter: usize,
) -> (DVector<Complex64>, SolveDiagnostics)
where
    F: Fn(&DVector<Complex64>) -> DVector<Complex64>,
{
    let n = b.len();
    let b_norm = b.norm();
    if b_norm == 0.0 {
        return (
            DVector::zeros(n),
            SolveDiagnostics {
                method: SolveMethod::Gmres,
                iterations: 0,
                residual: 0.0,
                condition_number_2: None,
                pivot_ratio: None,
                stagnated: false,
            },
        );
    }
    let m = max_iter.min(n);
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(m + 1);
    let mut h = vec![vec![Complex64::new(0.0, 0.0); m]; m + 1]; // h[i][k]
    let mut cs = vec![Complex64::new(0.0, 0.0); m];
    let mut sn = vec![Complex64::new(0.0, 0.0); m];
    let mut g = vec![Complex64::new(0.0, 0.0); m + 1];

    basis.push(b / Complex64::new(b_norm, 0.0));
    g[0] = Complex64::new(b_norm, 0.0);
    let mut iterations = 0;
    let mut converged = false;

    for k in 0..m {
        iterations = k + 1;
        let mut wvec = apply(&basis[k]);
        // modified Gram-Schmidt + one reorthogonalization sweep
        for pass in 0..2 {
            for (j, vj) in basis.iter().enumerate() {
                let proj = vj.dotc(&wvec);
                wvec -= vj * proj;
                if pass == 0 {
                    h[j][k] = proj;
                } else {
                    h[j][k] += proj;
                }
            }
        }
        let w_norm = wvec.norm();
        h[k + 1][k] = Complex64::new(w_norm, 0.0);

        // apply accumulated Givens rotations to the new column
        for j in 0..k {
            let t = cs[j].conj() * h[j][k] + sn[j].conj() * h[j + 1][k];
            h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
            h[j][k] = t;
        }
        let (c, s) = givens(h[k][k], h[k + 1][k]);
        cs[k] = c;
        sn[k] = s;
        h[k][k] = c.conj() * h[k][k] + s.conj() * h[k + 1][k];
        h[k + 1][k] = Complex64::new(0.0, 0.0);
        g[k + 1] = -s * g[k];
        g[k] = c.conj() * g[k];

        let implicit_res = g[k + 1].norm() / b_norm;
        if implicit_res <= tol {
            converged = true;
            break;
        }
        if w_norm < 1e-300 {
            // lucky breakdown: exact solution in the current subspace
            converged = true;
            break;
        }
        basis.push(wvec / Complex64::new(w_norm, 0.0));
    }

    // back substitution for the least-squares coefficients
    let k = iterations;
    let mut y = vec![Complex64::new(0.0, 0.0); k];
    for i in (0..k).rev() {
        let mut acc = g[i];
        for j in i + 1..k {
            acc -= h[i][j] * y[j];
        }
        y[i] = if h[i][i].norm() > 0.0 {
            acc / h[i][i]
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let mut x = DVector::zeros(n);
    for (yi, vi) in y.iter().zip(basis.iter()) {
        x += vi * *yi;
    }
    let residual = {
        let ax = apply(&x);
        (b - ax).norm() / b_norm
    };
    let diag = SolveDiagnostics {
        method: SolveMethod::Gmres,
        iterations,
        residual,
        condition_number_2: None,
        pivot_ratio: None,
        stagnated: !converged && residual > tol,
    };
    (x, diag)
}

fn givens(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    }
    let r = (an * an + bn * bn).sqrt();
    let c = Complex64::new(an / r, 0.0);
    let s = (a / an) * (b.conj() / r);
    (c, s.conj())
}

/// Full spectrum of a dense complex matrix via the Schur decomposition.
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>, LinSolveError> {
    check_square(a)?;
    let schur = a
        .clone()
        .try_schur(f64::EPSILON, 10_000)
        .ok_or(LinSolveError::EigenFailure)?;
    let t = schur.unpack().1;
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// 2-norm condition number from the singular values.
pub fn condition_number_2(a: &DMatrix<Complex64>) -> Result<f64, LinSolveError> {
    check_square(a)?;
    let svd = a.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    Ok(smax / smin.max(f64::MIN_POSITIVE))
}

fn check_square(a: &DMatrix<Complex64>) -> Result<usize, LinSolveError> {
    if a.nrows() != a.ncols() {
        return Err(LinSolveError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn direct_identity_returns_rhs() {
        let a = DMatrix::identity(4, 4);
        let b = DVector::from_vec(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(4.0, -1.0)]);
        let (x, diag) = direct_solve(&a, &b).unwrap();
        assert!((&x - &b).norm() < 1e-15);
        assert!(diag.residual < 1e-15);
        assert_eq!(diag.pivot_ratio, Some(1.0));
    }

    #[test]
    fn direct_random_system_small_residual() {
        // deterministic pseudo-random complex 50x50 system
        let n = 50;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = DMatrix::from_fn(n, n, |i, j| {
            let base = if i == j { 4.0 } else { 0.0 };
            c(base + rnd(), rnd())
        });
        let b = DVector::from_fn(n, |_, _| c(rnd(), rnd()));
        let (x, diag) = direct_solve(&a, &b).unwrap();
        let res = (&b - &a * &x).norm() / b.norm();
        assert!(res < 1e-12, "residual {res}");
        assert!(diag.residual < 1e-12);
    }

    #[test]
    fn direct_reports_singular_pivot() {
        // exactly singular: row2 = row0
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(3.0, 0.0),
                c(0.0, 1.0),
                c(1.0, 1.0),
                c(0.5, 0.0),
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(3.0, 0.0),
            ],
        );
        let b = DVector::from_vec(vec![c(1.0, 0.0); 3]);
        match direct_solve(&a, &b) {
            Err(LinSolveError::SingularPivot { index, .. }) => assert_eq!(index, 2),
            other => panic!("expected singular pivot, got {other:?}"),
        }
    }

    #[test]
    fn gmres_identity_one_iteration() {
        let a = DMatrix::<Complex64>::identity(6, 6);
        let b = DVector::from_fn(6, |i, _| c(i as f64 + 1.0, -(i as f64)));
        let (x, diag) = gmres(|v| &a * v, &b, 1e-12, 50);
        assert_eq!(diag.iterations, 1);
        assert!((&x - &b).norm() < 1e-12);
    }

    #[test]
    fn gmres_scaled_identity() {
        let a = DMatrix::<Complex64>::identity(5, 5) * c(2.0, 0.0);
        let b = DVector::from_fn(5, |i, _| c(1.0 + i as f64, 0.5));
        let (x, diag) = gmres(|v| &a * v, &b, 1e-12, 50);
        assert_eq!(diag.iterations, 1);
        assert!((&x * c(2.0, 0.0) - &b).norm() < 1e-12);
    }

    #[test]
    fn gmres_agrees_with_direct() {
        let n = 40;
        let mut state = 42u64;
        let mut rnd = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = DMatrix::from_fn(n, n, |i, j| {
            let base = if i == j { 5.0 } else { 0.0 };
            c(base + rnd(), rnd())
        });
        let b = DVector::from_fn(n, |_, _| c(rnd(), rnd()));
        let (xd, _) = direct_solve(&a, &b).unwrap();
        let (xg, diag) = gmres(|v| &a * v, &b, 1e-12, 200);
        assert!(diag.residual <= 1e-11);
        assert!((&xd - &xg).norm() / xd.norm() < 1e-8);
    }

    #[test]
    fn eigenvalues_diagonal_and_rotation() {
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(1.0, 0.0),
            c(-2.0, 1.0),
            c(0.0, 3.0),
        ]));
        let mut eig = eigenvalues(&d).unwrap();
        eig.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((eig[0] - c(-2.0, 1.0)).norm() < 1e-12);
        assert!((eig[1] - c(0.0, 3.0)).norm() < 1e-12);
        assert!((eig[2] - c(1.0, 0.0)).norm() < 1e-12);

        let phi = 0.7f64;
        let rot = DMatrix::from_row_slice(
            2,
            2,
            &[
                c(phi.cos(), 0.0),
                c(-phi.sin(), 0.0),
                c(phi.sin(), 0.0),
                c(phi.cos(), 0.0),
            ],
        );
        let mut eig = eigenvalues(&rot).unwrap();
        eig.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((eig[0] - Complex64::from_polar(1.0, -phi)).norm() < 1e-12);
        assert!((eig[1] - Complex64::from_polar(1.0, phi)).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_companion_cube_roots() {
        // companion matrix of z^3 - 1
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
            ],
        );
        let mut eig = eigenvalues(&a).unwrap();
        eig.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        let expect = [
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 3.0),
            c(1.0, 0.0),
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0),
        ];
        let mut expect = expect.to_vec();
        expect.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        for (e, x) in eig.iter().zip(&expect) {
            assert!((e - x).norm() < 1e-12, "{e} vs {x}");
        }
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let n = 30;
        let mut state = 7u64;
        let mut rnd = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = DMatrix::from_fn(n, n, |_, _| c(rnd(), rnd()));
        let eig = eigenvalues(&a).unwrap();
        let sum: Complex64 = eig.iter().sum();
        let trace: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
        let scale = a.norm();
        assert!((sum - trace).norm() < 1e-9 * scale, "{sum} vs {trace}");
    }

    #[test]
    fn condition_number_examples() {
        let a = DMatrix::<Complex64>::identity(5, 5);
        assert!((condition_number_2(&a).unwrap() - 1.0).abs() < 1e-12);
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![c(10.0, 0.0), c(1.0, 0.0)]));
        assert!((condition_number_2(&d).unwrap() - 10.0).abs() < 1e-12);
    }
}
