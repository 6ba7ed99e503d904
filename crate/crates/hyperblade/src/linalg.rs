//! Exact dense Gaussian elimination over the rationals. The matrices in this
//! crate are tiny (at most a few hundred rows/columns), so a straightforward
//! fraction-free-ish elimination with full pivoting on rows is plenty.

use num::Zero;

use crate::Rat;

/// Row-reduces `m` in place and returns (rank, pivot column per pivot row).
fn row_reduce(m: &mut [Vec<Rat>]) -> (usize, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (0, Vec::new());
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..cols {
                    let t = &m[r][cc] * &f;
                    m[i][cc] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (r, pivots)
}

pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    row_reduce(&mut m).0
}

/// Basis of the right nullspace of `m`.
pub fn nullspace(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut work: Vec<Vec<Rat>> = m.to_vec();
    let (_, pivots) = row_reduce(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = crate::rat(1);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves the square system A·x = b exactly; None when A is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (r, pivots) = row_reduce(&mut aug);
    if r < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rank_and_nullspace() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(m.clone()), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(num::Zero::is_zero(&dot));
        }
    }

    #[test]
    fn solve_exact() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let b = vec![rat(5), rat(10)];
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(solve_square(&singular, &b).is_none());
    }
}
