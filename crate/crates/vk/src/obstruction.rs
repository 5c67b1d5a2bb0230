//! Embedding obstruction pipeline: intersection cochain of a generic map,
//! coboundary solvability over GF(2) and over Z, the isoperimetric constant
//! of the quotient coboundary matrix, and certificate assembly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::embedding::PLEmbedding;
use crate::geometry::linalg::{rat, Rat};
use crate::geometry::predicates::{simplex_intersection_sign, Crossing};
use crate::geometry::{generic_linear_map, GeomError};
use crate::simplicial::{DeletedProduct, IntegerCochain, SimplicialComplex};

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("degenerate intersection on cell pair {0}; re-draw the map")]
    DegenerateIntersection(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("all {0} seeds produced degenerate maps")]
    SeedsExhausted(usize),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Intersection cochain of a generic map: for each quotient top cell {σ, τ},
/// the algebraic crossing number of the images, stored on the representative.
pub fn vankampen_cochain(
    k: &SimplicialComplex,
    e: &PLEmbedding,
) -> Result<IntegerCochain, ObstructionError> {
    let n = k.dim();
    if e.dim_ambient != 2 * n {
        return Err(ObstructionError::Domain(format!(
            "ambient dimension {} is not 2n = {}",
            e.dim_ambient,
            2 * n
        )));
    }
    let dp = DeletedProduct::new(k);
    let mut o = IntegerCochain::zero(2 * n);
    for (i, cell) in dp.reps_top.iter().enumerate() {
        let sigma = e.points_of(&k.simplices(cell.dim_a)[cell.idx_a]);
        let tau = e.points_of(&k.simplices(cell.dim_b)[cell.idx_b]);
        match simplex_intersection_sign(&sigma, &tau, 2 * n)? {
            Crossing::Empty => {}
            Crossing::Transverse(s) => o.set(i, s as i64),
            Crossing::Degenerate => {
                return Err(ObstructionError::DegenerateIntersection(format!(
                    "{:?}",
                    cell
                )))
            }
        }
    }
    Ok(o)
}

/// Consistency of A·c = o over GF(2) by bitset Gaussian elimination.
pub fn is_coboundary_mod2(a: &[Vec<i64>], o: &IntegerCochain) -> bool {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let blocks = (cols + 1 + 63) / 64;
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row = vec![0u64; blocks];
            for c in 0..cols {
                if a[r][c] & 1 != 0 {
                    row[c / 64] |= 1 << (c % 64);
                }
            }
            if o.get(r) & 1 != 0 {
                row[cols / 64] |= 1 << (cols % 64);
            }
            row
        })
        .collect();
    let mut pivot_row = 0usize;
    for c in 0..cols {
        let (blk, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (pivot_row..rows).find(|&r| m[r][blk] & bit != 0) else {
            continue;
        };
        m.swap(pivot_row, p);
        for r in 0..rows {
            if r != pivot_row && m[r][blk] & bit != 0 {
                let (head, tail) = m.split_at_mut(pivot_row.max(r));
                let (dst, src) = if r < pivot_row {
                    (&mut head[r], &tail[0])
                } else {
                    (&mut tail[0], &head[pivot_row])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d ^= s;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // consistent iff no row reduces to 0 = 1
    let aug = (cols / 64, 1u64 << (cols % 64));
    !(0..rows).any(|r| {
        m[r][aug.0] & aug.1 != 0
            && (0..cols).all(|c| m[r][c / 64] & (1 << (c % 64)) == 0)
    })
}

/// Diagonalization D = P·A·Q over Z with unimodular P, Q, including the
/// divisor-chain normalization of the diagonal.
pub struct SmithSystem {
    pub d: Vec<Vec<BigInt>>,
    pub p: Vec<Vec<BigInt>>,
    pub q: Vec<Vec<BigInt>>,
    pub rank: usize,
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (r >= BigInt::zero()) == (*b >= BigInt::zero()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

pub fn smith(a_in: &[Vec<i64>]) -> SmithSystem {
    let m = a_in.len();
    let n = if m == 0 { 0 } else { a_in[0].len() };
    let mut d: Vec<Vec<BigInt>> = a_in
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut p: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut q: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();

    let row_op = |d: &mut Vec<Vec<BigInt>>, p: &mut Vec<Vec<BigInt>>, r: usize, t: usize, f: &BigInt| {
        for c in 0..n {
            let v = &d[t][c] * f;
            d[r][c] -= v;
        }
        for c in 0..m {
            let v = &p[t][c] * f;
            p[r][c] -= v;
        }
    };
    let col_op = |d: &mut Vec<Vec<BigInt>>, q: &mut Vec<Vec<BigInt>>, c: usize, t: usize, f: &BigInt| {
        for row in d.iter_mut() {
            let v = &row[t] * f;
            row[c] -= v;
        }
        for row in q.iter_mut() {
            let v = &row[t] * f;
            row[c] -= v;
        }
    };

    let mut t = 0usize;
    while t < m.min(n) {
        // smallest-magnitude nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        p.swap(t, pi);
        if pj != t {
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut clean = true;
            for r in t + 1..m {
                if !d[r][t].is_zero() {
                    let f = rounded_div(&d[r][t], &d[t][t]);
                    row_op(&mut d, &mut p, r, t, &f);
                    if !d[r][t].is_zero() {
                        // remainder is strictly smaller: promote it to pivot
                        d.swap(t, r);
                        p.swap(t, r);
                        clean = false;
                    }
                }
            }
            for c in t + 1..n {
                if !d[t][c].is_zero() {
                    let f = rounded_div(&d[t][c], &d[t][t]);
                    col_op(&mut d, &mut q, c, t, &f);
                    if !d[t][c].is_zero() {
                        for row in d.iter_mut() {
                            row.swap(t, c);
                        }
                        for row in q.iter_mut() {
                            row.swap(t, c);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    let rank = t;
    // divisor chain: fold any offending later entry into position t and redo
    let mut t = 0usize;
    while t + 1 < rank {
        let mut dirty = false;
        for r in t + 1..rank {
            if !(&d[r][r] % &d[t][t]).is_zero() {
                // add column r to column t, creating d[t][?]; re-eliminate
                for row in d.iter_mut() {
                    let v = row[r].clone();
                    row[t] += v;
                }
                for row in q.iter_mut() {
                    let v = row[r].clone();
                    row[t] += v;
                }
                // clear the single new off-diagonal entry pair at (r, t)
                loop {
                    if d[r][t].is_zero() {
                        break;
                    }
                    let f = rounded_div(&d[r][t], &d[t][t]);
                    row_op(&mut d, &mut p, r, t, &f);
                    if !d[r][t].is_zero() {
                        d.swap(t, r);
                        p.swap(t, r);
                    }
                    if !d[t][r].is_zero() {
                        let f = rounded_div(&d[t][r], &d[t][t]);
                        col_op(&mut d, &mut q, r, t, &f);
                        if !d[t][r].is_zero() {
                            for row in d.iter_mut() {
                                row.swap(t, r);
                            }
                            for row in q.iter_mut() {
                                row.swap(t, r);
                            }
                        }
                    }
                }
                // the column op may have reintroduced d[t][r]
                if !d[t][r].is_zero() {
                    let f = rounded_div(&d[t][r], &d[t][t]);
                    col_op(&mut d, &mut q, r, t, &f);
                }
                dirty = true;
            }
        }
        if !dirty {
            t += 1;
        }
    }
    SmithSystem { d, p, q, rank }
}

/// One integer solution c of A·c = o via the diagonalization, or None.
pub fn integer_certificate(a: &[Vec<i64>], o: &IntegerCochain) -> Option<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let s = smith(a);
    // pb = P * o
    let pb: Vec<BigInt> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| &s.p[r][c] * BigInt::from(o.get(c)))
                .sum::<BigInt>()
        })
        .collect();
    let mut y = vec![BigInt::zero(); n];
    for t in 0..s.rank {
        if (&pb[t] % &s.d[t][t]).is_zero() {
            y[t] = &pb[t] / &s.d[t][t];
        } else {
            return None;
        }
    }
    for item in pb.iter().take(m).skip(s.rank) {
        if !item.is_zero() {
            return None;
        }
    }
    let c: Vec<BigInt> = (0..n)
        .map(|i| (0..s.rank).map(|t| &s.q[i][t] * &y[t]).sum::<BigInt>())
        .collect();
    // exact re-verification of A c = o
    for (r, row) in a.iter().enumerate() {
        let lhs: BigInt = row.iter().zip(&c).map(|(&x, ci)| ci * x).sum();
        assert_eq!(lhs, BigInt::from(o.get(r)), "solver postcondition");
    }
    Some(c)
}

/// Smallest nonzero singular value of a nonzero integer matrix: exact rank
/// over the rationals, then the r-th largest eigenvalue of the smaller Gram
/// matrix with a residual check.
pub fn isoperimetric_lambda(a: &[Vec<i64>]) -> Result<f64, ObstructionError> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 || n == 0 || a.iter().all(|row| row.iter().all(|&x| x == 0)) {
        return Err(ObstructionError::Domain("zero matrix".into()));
    }
    let rat_rows: Vec<Vec<Rat>> = a
        .iter()
        .map(|row| row.iter().map(|&x| rat(x, 1)).collect())
        .collect();
    let r = crate::geometry::linalg::rank(rat_rows);
    // Gram matrix on the smaller side: same nonzero spectrum
    let (rows, cols, transpose) = if m <= n { (m, n, false) } else { (n, m, true) };
    let at = |i: usize, j: usize| -> f64 {
        if transpose {
            a[j][i] as f64
        } else {
            a[i][j] as f64
        }
    };
    let mut gram = nalgebra::DMatrix::<f64>::zeros(rows, rows);
    for i in 0..rows {
        for j in i..rows {
            let v: f64 = (0..cols).map(|k| at(i, k) * at(j, k)).sum();
            gram[(i, j)] = v;
            gram[(j, i)] = v;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(gram.clone());
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap()
    });
    let idx = order[r - 1];
    let mu = eig.eigenvalues[idx];
    let v = eig.eigenvectors.column(idx);
    let residual = (&gram * v - mu * v).norm();
    if residual > 1e-8 * v.norm().max(1.0) {
        return Err(ObstructionError::Numerical(format!(
            "eigenpair residual {residual:.3e} above tolerance"
        )));
    }
    if mu <= 0.0 {
        return Err(ObstructionError::Numerical(
            "nonpositive eigenvalue at exact rank position".into(),
        ));
    }
    Ok(mu.sqrt())
}

/// Upper bound on the l¹-norm of a correcting cochain: ceil(N · ‖o‖₂ / λ).
pub fn finger_move_bound(
    o: &IntegerCochain,
    lambda: f64,
    n_simplices: usize,
) -> Result<u64, ObstructionError> {
    if lambda <= 0.0 {
        return Err(ObstructionError::Domain("lambda must be positive".into()));
    }
    if o.is_zero() {
        return Ok(0);
    }
    Ok((n_simplices as f64 * o.l2_norm() / lambda).ceil() as u64)
}

/// Simplex-count lower bound from a realized linking number: ceil(√L).
pub fn rc_lower_bound_from_linking(l: u64) -> u64 {
    if l == 0 {
        return 0;
    }
    let mut s = (l as f64).sqrt() as u64;
    while s * s >= l && s > 0 {
        s -= 1;
    }
    while s * s < l {
        s += 1;
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NonEmbeddable,
    EmbeddableVanKampen,
    ObstructionVanishesButN2Inconclusive,
}

#[derive(Debug)]
pub struct ObstructionCertificate {
    pub o_f: IntegerCochain,
    pub l2_norm_of: f64,
    pub solvable_mod2: bool,
    pub integer_solution: Option<Vec<BigInt>>,
    pub lambda: f64,
    pub finger_move_bound: u64,
    pub verdict: Verdict,
    pub seed: u64,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub wall_time_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub seed: u64,
    pub o_l2_norm: f64,
    pub lambda: f64,
    pub finger_move_bound: u64,
    pub solvable_mod2: bool,
    pub integrally_solvable: bool,
    pub solution_l1_norm: Option<f64>,
    pub solution_l2_norm: Option<f64>,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub wall_time_ms: u128,
}

impl ObstructionCertificate {
    pub fn report(&self) -> CertificateReport {
        let norms = self.integer_solution.as_ref().map(|c| {
            let l1: f64 = c.iter().map(|x| x.abs().to_f64().unwrap_or(f64::NAN)).sum();
            let l2: f64 = c
                .iter()
                .map(|x| {
                    let v = x.to_f64().unwrap_or(f64::NAN);
                    v * v
                })
                .sum::<f64>()
                .sqrt();
            (l1, l2)
        });
        CertificateReport {
            verdict: self.verdict,
            seed: self.seed,
            o_l2_norm: self.l2_norm_of,
            lambda: self.lambda,
            finger_move_bound: self.finger_move_bound,
            solvable_mod2: self.solvable_mod2,
            integrally_solvable: self.integer_solution.is_some(),
            solution_l1_norm: norms.map(|(l1, _)| l1),
            solution_l2_norm: norms.map(|(_, l2)| l2),
            matrix_rows: self.matrix_rows,
            matrix_cols: self.matrix_cols,
            wall_time_ms: self.wall_time_ms,
        }
    }
}

/// Full pipeline for an n-complex targeting R^{2n}: generic map from the
/// first workable seed, intersection cochain, solvability both ways, λ, the
/// finger-move bound, and the verdict.
pub fn embeddability_verdict(
    k: &SimplicialComplex,
    seeds: &[u64],
) -> Result<ObstructionCertificate, ObstructionError> {
    let start = std::time::Instant::now();
    let n = k.dim();
    let mut picked = None;
    for &seed in seeds {
        match generic_linear_map(k, 2 * n, seed) {
            Ok(e) => match vankampen_cochain(k, &e) {
                Ok(o) => {
                    picked = Some((seed, o));
                    break;
                }
                Err(ObstructionError::DegenerateIntersection(_)) => continue,
                Err(other) => return Err(other),
            },
            Err(GeomError::GenericityFailure { .. }) => continue,
            Err(other) => return Err(other.into()),
        }
    }
    let Some((seed, o)) = picked else {
        return Err(ObstructionError::SeedsExhausted(seeds.len()));
    };
    let dp = DeletedProduct::new(k);
    let a = dp.coboundary_matrix();
    let solvable_mod2 = is_coboundary_mod2(&a, &o);
    let integer_solution = if solvable_mod2 {
        integer_certificate(&a, &o)
    } else {
        None
    };
    let lambda = isoperimetric_lambda(&a)?;
    let n_max = k.num_simplices(n).max(k.num_simplices(n - 1));
    let bound = finger_move_bound(&o, lambda, n_max)?;
    let verdict = if !solvable_mod2 || integer_solution.is_none() {
        Verdict::NonEmbeddable
    } else if n >= 3 {
        Verdict::EmbeddableVanKampen
    } else {
        Verdict::ObstructionVanishesButN2Inconclusive
    };
    Ok(ObstructionCertificate {
        l2_norm_of: o.l2_norm(),
        o_f: o,
        solvable_mod2,
        integer_solution,
        lambda,
        finger_move_bound: bound,
        verdict,
        seed,
        matrix_rows: a.len(),
        matrix_cols: a.first().map(|r| r.len()).unwrap_or(0),
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Checks that two generic maps yield cohomologous cochains: the difference
/// must be an integral coboundary.
pub fn class_invariance_check(
    k: &SimplicialComplex,
    seed_a: u64,
    seed_b: u64,
) -> Result<bool, ObstructionError> {
    let n = k.dim();
    let ea = generic_linear_map(k, 2 * n, seed_a)?;
    let eb = generic_linear_map(k, 2 * n, seed_b)?;
    let oa = vankampen_cochain(k, &ea)?;
    let ob = vankampen_cochain(k, &eb)?;
    let diff = oa.sub(&ob);
    let a = DeletedProduct::new(k).coboundary_matrix();
    Ok(integer_certificate(&a, &diff).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k0, vk_flores_complex};
    use crate::geometry::Point;

    fn k5() -> SimplicialComplex {
        vk_flores_complex(1)
    }

    fn cochain_from(vals: &[i64]) -> IntegerCochain {
        let mut o = IntegerCochain::zero(2);
        for (i, &v) in vals.iter().enumerate() {
            o.set(i, v);
        }
        o
    }

    #[test]
    fn k5_cochain_has_odd_sum() {
        let k = k5();
        let e = generic_linear_map(&k, 2, 3).unwrap();
        let o = vankampen_cochain(&k, &e).unwrap();
        let sum: i64 = (0..15).map(|i| o.get(i)).sum();
        assert_eq!(sum.rem_euclid(2), 1);
    }

    #[test]
    fn planar_drawing_gives_zero_cochain() {
        // K5 minus the edge {3,4}, drawn with explicit planar coordinates
        let mut faces = Vec::new();
        for i in 0..5usize {
            for j in i + 1..5 {
                if (i, j) != (3, 4) {
                    faces.push(vec![i, j]);
                }
            }
        }
        let k = SimplicialComplex::from_maximal_faces(&faces, "k5_minus_edge").unwrap();
        let coords = vec![
            Point(vec![rat(-10, 1), rat(0, 1)]),
            Point(vec![rat(10, 1), rat(0, 1)]),
            Point(vec![rat(1, 1), rat(4, 1)]),
            Point(vec![rat(0, 1), rat(1, 1)]),
            Point(vec![rat(0, 1), rat(10, 1)]),
        ];
        let mut e = PLEmbedding::new(k.clone(), 2, coords);
        e.verify_generic().unwrap();
        e.generic = true;
        let o = vankampen_cochain(&k, &e).unwrap();
        assert!(o.is_zero());
    }

    #[test]
    fn flores_2_cochain_has_odd_sum() {
        let k = vk_flores_complex(2);
        let e = generic_linear_map(&k, 4, 7).unwrap();
        let o = vankampen_cochain(&k, &e).unwrap();
        let dp = DeletedProduct::new(&k);
        let sum: i64 = (0..dp.reps_top.len()).map(|i| o.get(i)).sum();
        assert_eq!(sum.rem_euclid(2), 1);
    }

    #[test]
    fn mod2_trivial_and_k5() {
        let k = k5();
        let a = DeletedProduct::new(&k).coboundary_matrix();
        assert!(is_coboundary_mod2(&a, &IntegerCochain::zero(2)));
        let e = generic_linear_map(&k, 2, 3).unwrap();
        let o = vankampen_cochain(&k, &e).unwrap();
        assert!(!is_coboundary_mod2(&a, &o));
    }

    #[test]
    fn k0_1_is_solvable_both_ways() {
        let marked = k0(1);
        let k = marked.complex;
        let a = DeletedProduct::new(&k).coboundary_matrix();
        let e = generic_linear_map(&k, 2, 5).unwrap();
        let o = vankampen_cochain(&k, &e).unwrap();
        assert!(is_coboundary_mod2(&a, &o));
        assert!(integer_certificate(&a, &o).is_some());
    }

    #[test]
    fn k5_not_integrally_solvable() {
        let k = k5();
        let a = DeletedProduct::new(&k).coboundary_matrix();
        let e = generic_linear_map(&k, 2, 3).unwrap();
        let o = vankampen_cochain(&k, &e).unwrap();
        assert!(integer_certificate(&a, &o).is_none());
    }

    #[test]
    fn smith_factors_and_invariants() {
        let a = vec![vec![2, 4], vec![6, 8]];
        let s = smith(&a);
        assert_eq!(s.rank, 2);
        // D = P A Q exactly
        for i in 0..2 {
            for j in 0..2 {
                let mut v = BigInt::zero();
                for k in 0..2 {
                    for l in 0..2 {
                        v += &s.p[i][k] * BigInt::from(a[k][l]) * &s.q[l][j];
                    }
                }
                assert_eq!(v, s.d[i][j]);
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        assert_eq!(s.d[0][0].abs(), BigInt::from(2));
        assert_eq!(s.d[1][1].abs(), BigInt::from(4));
    }

    #[test]
    fn integer_solver_on_diagonal_cases() {
        let a = vec![vec![2, 0], vec![0, 3]];
        let c = integer_certificate(&a, &cochain_from(&[4, -9])).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(-3)]);
        assert!(integer_certificate(&a, &cochain_from(&[1, 0])).is_none());
        let zero = integer_certificate(&a, &IntegerCochain::zero(2)).unwrap();
        assert!(zero.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn lambda_trivial_cases() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!((isoperimetric_lambda(&id).unwrap() - 1.0).abs() < 1e-12);
        let diag = vec![vec![2, 0], vec![0, 0]];
        assert!((isoperimetric_lambda(&diag).unwrap() - 2.0).abs() < 1e-12);
        assert!(isoperimetric_lambda(&[vec![0, 0]]).is_err());
    }

    #[test]
    fn lambda_matches_svd_oracle_on_k5() {
        let a = DeletedProduct::new(&k5()).coboundary_matrix();
        let lam = isoperimetric_lambda(&a).unwrap();
        assert!(lam > 0.0);
        let m = nalgebra::DMatrix::from_fn(a.len(), a[0].len(), |i, j| a[i][j] as f64);
        let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().cloned().collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let rat_rows: Vec<Vec<Rat>> = a
            .iter()
            .map(|row| row.iter().map(|&x| rat(x, 1)).collect())
            .collect();
        let r = crate::geometry::linalg::rank(rat_rows);
        let oracle = sv[r - 1];
        assert!((lam - oracle).abs() <= 1e-6 * oracle.max(1.0));
    }

    #[test]
    fn finger_move_bound_formula() {
        assert_eq!(
            finger_move_bound(&IntegerCochain::zero(2), 0.5, 10).unwrap(),
            0
        );
        // ‖o‖₂ = 3 from nine unit entries
        let o = cochain_from(&[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(finger_move_bound(&o, 0.5, 10).unwrap(), 60);
        assert!(finger_move_bound(&o, 0.0, 10).is_err());
    }

    #[test]
    fn rc_bound_values() {
        assert_eq!(rc_lower_bound_from_linking(0), 0);
        assert_eq!(rc_lower_bound_from_linking(1), 1);
        assert_eq!(rc_lower_bound_from_linking(2), 2);
        assert_eq!(rc_lower_bound_from_linking(1024), 32);
        assert_eq!(rc_lower_bound_from_linking(1025), 33);
    }

    #[test]
    fn verdict_k5_nonembeddable() {
        let cert = embeddability_verdict(&k5(), &[1, 2, 3]).unwrap();
        assert_eq!(cert.verdict, Verdict::NonEmbeddable);
        assert!(!cert.solvable_mod2);
        let n = 5usize.max(10); // max(#vertices, #edges) for K5
        assert!(cert.l2_norm_of < n as f64);
        assert!(cert.lambda > 0.0);
    }

    #[test]
    fn verdict_k0_2_inconclusive() {
        let cert = embeddability_verdict(&k0(2).complex, &[1, 2, 3]).unwrap();
        assert_eq!(cert.verdict, Verdict::ObstructionVanishesButN2Inconclusive);
        assert!(cert.solvable_mod2);
        assert!(cert.integer_solution.is_some());
    }

    #[test]
    fn class_invariance_small() {
        let k = k5();
        assert!(class_invariance_check(&k, 11, 11).unwrap());
        assert!(class_invariance_check(&k, 11, 12).unwrap());
    }

    #[test]
    fn report_serializes() {
        let cert = embeddability_verdict(&k5(), &[1]).unwrap();
        let json = serde_json::to_string(&cert.report()).unwrap();
        assert!(json.contains("NonEmbeddable"));
    }
}
