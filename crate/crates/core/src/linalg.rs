//! Exact rational linear algebra on small integer matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-reduced echelon form over `Q`; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, piv);
        let lead = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let delta = &f * &m[row][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn to_rational(rows: &[Vec<u64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect()
}

/// Rank over `Q`.
pub fn rank(rows: &[Vec<u64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    rref(&mut to_rational(rows), cols).len()
}

/// A basis of the right kernel `{v : M v = 0}`, each vector scaled to
/// coprime integers with positive leading entry.
pub fn kernel_basis(rows: &[Vec<u64>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m = to_rational(rows);
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            let denom = v
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &denom).to_integer()).collect();
            let g = ints
                .iter()
                .fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
            if !g.is_zero() {
                ints.iter_mut().for_each(|x| *x = &*x / &g);
            }
            if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                ints.iter_mut().for_each(|x| *x = -&*x);
            }
            ints
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![2, 1], vec![0, 1]]), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0, 0]]), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&[vec![1, 1, 0], vec![0, 1, 1]], 3);
        assert_eq!(k, vec![vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]]);
        assert!(kernel_basis(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }
}
