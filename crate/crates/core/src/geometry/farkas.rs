//! Exact conic feasibility: is `target` a nonnegative combination of the
//! given vectors?
//!
//! Phase-1 simplex over the rationals on
//!
//! ```text
//!     A y + s = b,   y >= 0, s >= 0,   minimise sum(s)
//! ```
//!
//! where the columns of `A` are the generators and each row has been
//! negated if needed so that `b >= 0`. Pivoting follows Bland's rule
//! (lowest-index entering column, lowest-index leaving basic variable on
//! ratio ties), which cannot cycle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Multipliers `y >= 0` with `sum_k y_k generators[k] = target`, if any.
pub fn conic_combination(generators: &[&[BigInt]], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let cols = generators.len();
    debug_assert!(generators.iter().all(|g| g.len() == rows));

    if target.iter().all(Zero::is_zero) {
        return Some(vec![BigRational::zero(); cols]);
    }

    // Columns 0..cols are the multipliers, cols..cols+rows the artificials.
    let width = cols + rows;
    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(rows);
    for r in 0..rows {
        let flip = target[r].is_negative();
        let signed = |v: &BigInt| {
            let q = BigRational::from_integer(v.clone());
            if flip {
                -q
            } else {
                q
            }
        };
        let mut row = vec![BigRational::zero(); width];
        for (c, g) in generators.iter().enumerate() {
            row[c] = signed(&g[r]);
        }
        row[cols + r] = BigRational::from_integer(1.into());
        tableau.push(row);
        rhs.push(signed(&target[r]));
    }
    let mut basis: Vec<usize> = (cols..width).collect();

    // Reduced costs of the phase-1 objective and its current value (negated).
    let mut cost = vec![BigRational::zero(); width];
    let mut cost_rhs = BigRational::zero();
    for r in 0..rows {
        for c in 0..cols {
            cost[c] -= &tableau[r][c];
        }
        cost_rhs -= &rhs[r];
    }

    while let Some(enter) = (0..width).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if !tableau[r][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &tableau[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Phase-1 objective is bounded below by zero, so a ratio always exists.
        let (pr, _) = leave.expect("phase-1 problem is bounded");

        let pivot = tableau[pr][enter].clone();
        for v in tableau[pr].iter_mut() {
            *v /= &pivot;
        }
        rhs[pr] /= &pivot;
        let pivot_row = tableau[pr].clone();
        let pivot_rhs = rhs[pr].clone();
        for r in 0..rows {
            if r == pr || tableau[r][enter].is_zero() {
                continue;
            }
            let factor = tableau[r][enter].clone();
            for (v, p) in tableau[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            rhs[r] -= &factor * &pivot_rhs;
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for (v, p) in cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            cost_rhs -= &factor * &pivot_rhs;
        }
        basis[pr] = enter;
    }

    if !cost_rhs.is_zero() {
        return None;
    }
    let mut y = vec![BigRational::zero(); cols];
    for (r, &b) in basis.iter().enumerate() {
        if b < cols {
            y[b] = rhs[r].clone();
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(gens: &[Vec<BigInt>], target: &[BigInt]) -> bool {
        let refs: Vec<&[BigInt]> = gens.iter().map(|g| g.as_slice()).collect();
        match conic_combination(&refs, target) {
            Some(y) => {
                assert!(y.iter().all(|c| !c.is_negative()));
                for r in 0..target.len() {
                    let s = y
                        .iter()
                        .zip(gens)
                        .fold(BigRational::zero(), |acc, (c, g)| {
                            acc + c * BigRational::from_integer(g[r].clone())
                        });
                    assert_eq!(s, BigRational::from_integer(target[r].clone()));
                }
                true
            }
            None => false,
        }
    }

    #[test]
    fn transitivity_is_a_sum() {
        let gens = vec![v(&[1, -1, 0]), v(&[0, 1, -1])];
        assert!(check(&gens, &v(&[1, 0, -1])));
        assert!(!check(&gens, &v(&[-1, 0, 1])));
    }

    #[test]
    fn opposite_and_unrelated() {
        assert!(!check(&[v(&[1, -1])], &v(&[-1, 1])));
        let gens = vec![v(&[1, -1, 0]), v(&[1, 0, -1])];
        assert!(!check(&gens, &v(&[0, 1, -1])));
        assert!(check(&gens, &v(&[2, -1, -1])));
        assert!(check(&[], &v(&[0, 0])));
        assert!(!check(&[], &v(&[0, 1])));
    }

    #[test]
    fn degenerate_ties() {
        // Many parallel and dependent columns exercise the tie-breaking path.
        let gens = vec![
            v(&[1, 1, 0, 0]),
            v(&[2, 2, 0, 0]),
            v(&[0, 0, 1, 1]),
            v(&[1, 1, 1, 1]),
            v(&[1, 0, 0, 0]),
            v(&[0, 1, 0, -1]),
        ];
        assert!(check(&gens, &v(&[3, 3, 2, 2])));
        assert!(check(&gens, &v(&[2, 1, 0, 0])));
        assert!(!check(&gens, &v(&[0, 0, 0, 1])));
    }
}
