//! Smith normal form of integer matrices with unimodular transforms,
//! used for homology computations from group presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::Matrix;
use super::rational::Rational;

#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal entries d_1 | d_2 | ..., all >= 0.
    pub diag: Vec<BigInt>,
    /// Left transform: `u * m * v = d`.
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Row-style matrix multiply for the transform bookkeeping.
pub fn int_matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Smith normal form over the integers. Returns diagonal and the two
/// unimodular transforms with `u * m * v = diag`.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // find a pivot: smallest nonzero |entry| in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && piv.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let (pi, pj) = match piv {
            Some(p) => p,
            None => break,
        };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        // clear row and column t; restart whenever a remainder appears
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][t], &a[t][t]);
                for j in 0..cols {
                    let x = &a[i][j] - &q * &a[t][j];
                    a[i][j] = x;
                }
                for j in 0..rows {
                    let x = &u[i][j] - &q * &u[t][j];
                    u[i][j] = x;
                }
                if !a[i][t].is_zero() {
                    // remainder smaller than pivot: swap up and redo
                    a.swap(t, i);
                    u.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[t][j], &a[t][t]);
                for i in 0..rows {
                    let x = &a[i][j] - &q * &a[i][t];
                    a[i][j] = x;
                }
                for i in 0..cols {
                    let x = &v[i][j] - &q * &v[i][t];
                    v[i][j] = x;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        // ensure divisibility d_t | rest of block; if some entry fails,
        // add its column to column t and redo this step
        let mut redo = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for r in 0..rows {
                        let x = &a[r][t] + &a[r][j];
                        a[r][t] = x;
                    }
                    for r in 0..cols {
                        let x = &v[r][t] + &v[r][j];
                        v[r][t] = x;
                    }
                    redo = true;
                    break 'outer;
                }
            }
        }
        if redo {
            continue;
        }

        if a[t][t].is_negative() {
            for j in 0..cols {
                let x = -&a[t][j];
                a[t][j] = x;
            }
            for j in 0..rows {
                let x = -&u[t][j];
                u[t][j] = x;
            }
        }
        t += 1;
    }

    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    Snf { diag, u, v }
}

/// Rounded division used to shrink remainders fast.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl Snf {
    /// Nonzero invariant factors > 1 (the finite cyclic summands).
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && **d != BigInt::from(1))
            .cloned()
            .collect()
    }

    /// Order of the cokernel of an n x k relation matrix: product of
    /// invariant factors when all nonzero and free rank is zero; None if
    /// infinite.
    pub fn cokernel_order(&self, ambient_rank: usize) -> Option<BigInt> {
        let nonzero: Vec<&BigInt> = self.diag.iter().filter(|d| !d.is_zero()).collect();
        if nonzero.len() < ambient_rank {
            return None; // free part
        }
        Some(nonzero.into_iter().product())
    }
}

/// Verify `u * m * v = diag` (test support).
pub fn snf_check(m: &[Vec<BigInt>], s: &Snf) -> bool {
    let umv = int_matmul(&int_matmul(&s.u, m), &s.v);
    for (i, row) in umv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expect = if i == j && i < s.diag.len() {
                s.diag[i].clone()
            } else {
                BigInt::zero()
            };
            if *x != expect {
                return false;
            }
        }
    }
    // unimodularity
    let det_u = int_det(&s.u);
    let det_v = int_det(&s.v);
    (det_u.abs() == BigInt::from(1)) && (det_v.abs() == BigInt::from(1))
}

fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let mm = Matrix::from_fn(m.len(), m.len(), |i, j| Rational::from(m[i][j].clone()));
    let d = mm.det().unwrap();
    assert!(num_traits::One::is_one(d.denom()));
    d.numer().clone()
}
