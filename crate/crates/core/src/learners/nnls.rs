//! Non-negative least squares (Lawson-Hanson active set).

use crate::scalar::Scalar;

/// Solves the small dense system `g s = rhs` by Gaussian elimination with
/// partial pivoting. Dependent directions get a zero coefficient.
fn solve_dense<T: Scalar>(mut g: Vec<Vec<T>>, mut rhs: Vec<T>) -> Vec<T> {
    let k = rhs.len();
    for col in 0..k {
        let piv =
            (col..k).max_by(|&a, &b| g[a][col].abs().partial_cmp(&g[b][col].abs()).expect("finite")).expect("nonempty");
        g.swap(col, piv);
        rhs.swap(col, piv);
        let d = g[col][col];
        if d.abs() <= T::min_positive_value() {
            continue;
        }
        for row in col + 1..k {
            let f = g[row][col] / d;
            if f != T::zero() {
                for c in col..k {
                    let v = g[col][c];
                    g[row][c] -= f * v;
                }
                let v = rhs[col];
                rhs[row] -= f * v;
            }
        }
    }
    let mut s = vec![T::zero(); k];
    for row in (0..k).rev() {
        let mut acc = rhs[row];
        for c in row + 1..k {
            acc -= g[row][c] * s[c];
        }
        s[row] = if g[row][row].abs() <= T::min_positive_value() { T::zero() } else { acc / g[row][row] };
    }
    s
}

fn residual<T: Scalar>(cols: &[Vec<T>], lambda: &[T], b: &[T]) -> Vec<T> {
    let mut r = b.to_vec();
    for (c, &l) in cols.iter().zip(lambda) {
        if l != T::zero() {
            for (ri, &ci) in r.iter_mut().zip(c) {
                *ri -= l * ci;
            }
        }
    }
    r
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// `argmin_{lambda >= 0} |A lambda - b|` where `cols` are the columns of `A`.
pub fn nnls<T: Scalar>(cols: &[Vec<T>], b: &[T]) -> Vec<T> {
    let k = cols.len();
    let mut lambda = vec![T::zero(); k];
    let mut passive = vec![false; k];
    let scale = cols.iter().map(|c| dot(c, c)).fold(dot(b, b), T::max).max(T::one());
    let tol = T::lit(1e-12) * scale;
    for _ in 0..3 * k + 10 {
        let r = residual(cols, &lambda, b);
        let grad: Vec<T> = cols.iter().map(|c| dot(c, &r)).collect();
        let pick = (0..k)
            .filter(|&j| !passive[j] && grad[j] > tol)
            .max_by(|&a, &b| grad[a].partial_cmp(&grad[b]).expect("finite"));
        let Some(t) = pick else { break };
        passive[t] = true;
        for _ in 0..3 * k + 10 {
            let idx: Vec<usize> = (0..k).filter(|&j| passive[j]).collect();
            let g: Vec<Vec<T>> = idx.iter().map(|&i| idx.iter().map(|&j| dot(&cols[i], &cols[j])).collect()).collect();
            let rhs: Vec<T> = idx.iter().map(|&i| dot(&cols[i], b)).collect();
            let s = solve_dense(g, rhs);
            if s.iter().all(|&v| v > T::zero()) {
                for (&i, &v) in idx.iter().zip(&s) {
                    lambda[i] = v;
                }
                break;
            }
            let mut alpha = T::one();
            for (&i, &v) in idx.iter().zip(&s) {
                if v <= T::zero() {
                    let denom = lambda[i] - v;
                    if denom > T::zero() {
                        alpha = alpha.min(lambda[i] / denom);
                    }
                }
            }
            for (&i, &v) in idx.iter().zip(&s) {
                lambda[i] = lambda[i] + alpha * (v - lambda[i]);
                if lambda[i] <= T::lit(1e-15) {
                    lambda[i] = T::zero();
                    passive[i] = false;
                }
            }
        }
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_conic_combination() {
        let cols: Vec<Vec<f64>> = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 1.0]];
        let b = vec![2.0, 3.0, 1.0];
        let l = nnls(&cols, &b);
        let r = residual(&cols, &l, &b);
        assert!(dot(&r, &r).sqrt() < 1e-10, "{l:?}");
        assert!(l.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn projects_outside_points() {
        let cols = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let l = nnls(&cols, &[-1.0, 2.0]);
        assert_eq!(l, vec![0.0, 2.0]);
    }
}
