//! Dense exact-rational linear algebra used by the geometric predicates.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinSolve {
    Inconsistent,
    Unique(Vec<Rat>),
    Underdetermined,
}

/// Solves a x = b by Gaussian elimination over the rationals.
/// `a` is row-major, m rows by n columns.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> LinSolve {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        // pick the largest-magnitude nonzero pivot in this column
        let mut pivot = None;
        for r in row..m {
            if !a[r][col].is_zero() {
                match pivot {
                    None => pivot = Some(r),
                    Some(p) => {
                        if a[r][col].abs() > a[p][col].abs() {
                            pivot = Some(r);
                        }
                    }
                }
            }
        }
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        b.swap(row, p);
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[row][col];
                for c in col..n {
                    let t = &f * &a[row][c];
                    a[r][c] = &a[r][c] - t;
                }
                let t = &f * &b[row];
                b[r] = &b[r] - t;
            }
        }
        pivot_cols.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    for r in row..m {
        if !b[r].is_zero() {
            return LinSolve::Inconsistent;
        }
    }
    if pivot_cols.len() < n {
        return LinSolve::Underdetermined;
    }
    let mut x = vec![Rat::zero(); n];
    for &(r, c) in &pivot_cols {
        x[c] = &b[r] / &a[r][c];
    }
    LinSolve::Unique(x)
}

/// Determinant of a square rational matrix.
pub fn det(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut result = Rat::one();
    for col in 0..n {
        let mut pivot = None;
        for r in col..n {
            if !a[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { return Rat::zero() };
        if p != col {
            a.swap(col, p);
            result = -result;
        }
        result *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - t;
                }
            }
        }
    }
    result
}

/// Rank of a rational matrix.
pub fn rank(mut a: Vec<Vec<Rat>>) -> usize {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut row = 0usize;
    for col in 0..n {
        let mut pivot = None;
        for r in row..m {
            if !a[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        for r in row + 1..m {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[row][col];
                for c in col..n {
                    let t = &f * &a[row][c];
                    a[r][c] = &a[r][c] - t;
                }
            }
        }
        row += 1;
        if row == m {
            break;
        }
    }
    row
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// A rational upper bound on sqrt(x), tight within a relative factor of
/// 1 + 2^-40. Panics if x < 0.
pub fn sqrt_upper(x: &Rat) -> Rat {
    use num_bigint::BigInt;
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    let scale: BigInt = BigInt::from(1u8) << 41;
    // sqrt(p/q) = sqrt(p*q)/q; floor-sqrt of p*q*scale^2 then round up
    let pq = x.numer() * x.denom();
    let s = (pq * &scale * &scale).sqrt() + 1;
    Rat::new(s, x.denom() * scale)
}
