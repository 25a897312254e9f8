//! Dense exact linear algebra over Q for the small systems used here.

use num_traits::{One, Zero};

use crate::exact::Rat;

pub type Matrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mul(l: &Matrix, r: &Matrix) -> Matrix {
    let (n, m, k) = (l.len(), r[0].len(), r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rat::zero(), |acc, t| acc + &l[i][t] * &r[t][j]))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; None when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (ac, ic) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &f * ac;
                    inv[r][j] -= &f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Rat], m: &Matrix) -> Vec<Rat> {
    (0..m[0].len())
        .map(|j| v.iter().zip(m).fold(Rat::zero(), |acc, (x, row)| acc + x * &row[j]))
        .collect()
}
