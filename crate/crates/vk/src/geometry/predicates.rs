//! Exact predicates on rational simplices: transverse intersection signs,
//! hull disjointness, and closest-pair distances.

use num_traits::{One, Signed, Zero};

use super::linalg::{det, solve, LinSolve, Rat};
use super::{GeomError, Point};

/// Outcome of intersecting two closed simplices whose dimensions sum to the
/// ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    /// Closed simplices are disjoint.
    Empty,
    /// A single transverse crossing in the open faces, with frame sign.
    Transverse(i8),
    /// Non-transverse, boundary-touching, or higher-dimensional intersection.
    Degenerate,
}

/// Builds the affine intersection system for conv(sigma) ∩ conv(tau):
/// unknowns are the barycentric coordinates (λ, μ), equations are
/// Σλ_i σ_i = Σμ_j τ_j plus the two affine constraints Σλ = Σμ = 1.
fn affine_system(sigma: &[Point], tau: &[Point], d: usize) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let p1 = sigma.len();
    let q1 = tau.len();
    let n = p1 + q1;
    let mut a = vec![vec![Rat::zero(); n]; d + 2];
    let mut b = vec![Rat::zero(); d + 2];
    for c in 0..d {
        for (i, s) in sigma.iter().enumerate() {
            a[c][i] = s.0[c].clone();
        }
        for (j, t) in tau.iter().enumerate() {
            a[c][p1 + j] = -t.0[c].clone();
        }
    }
    for i in 0..p1 {
        a[d][i] = Rat::one();
    }
    for j in 0..q1 {
        a[d + 1][p1 + j] = Rat::one();
    }
    b[d] = Rat::one();
    b[d + 1] = Rat::one();
    (a, b)
}

/// Algebraic intersection sign of a p-simplex and a q-simplex with p + q = d.
/// Orientations are taken from the given vertex orders.
pub fn simplex_intersection_sign(
    sigma: &[Point],
    tau: &[Point],
    d: usize,
) -> Result<Crossing, GeomError> {
    let p = sigma.len() - 1;
    let q = tau.len() - 1;
    if p + q != d {
        return Err(GeomError::DimensionMismatch(format!(
            "dim {} + dim {} != ambient {}",
            p, q, d
        )));
    }
    let (a, b) = affine_system(sigma, tau, d);
    match solve(a, b) {
        LinSolve::Inconsistent => Ok(Crossing::Empty),
        LinSolve::Underdetermined => {
            if simplex_pair_distance_sq(sigma, tau).is_zero() {
                Ok(Crossing::Degenerate)
            } else {
                Ok(Crossing::Empty)
            }
        }
        LinSolve::Unique(x) => {
            if x.iter().any(|v| v.is_negative()) {
                return Ok(Crossing::Empty);
            }
            if x.iter().any(|v| v.is_zero()) {
                return Ok(Crossing::Degenerate);
            }
            // transverse interior crossing: sign of the concatenated frame
            let mut frame = Vec::with_capacity(d);
            for s in &sigma[1..] {
                frame.push(s.sub(&sigma[0]).0);
            }
            for t in &tau[1..] {
                frame.push(t.sub(&tau[0]).0);
            }
            // det of column frame = det of transpose
            let dval = det(frame);
            if dval.is_zero() {
                Ok(Crossing::Degenerate)
            } else if dval.is_positive() {
                Ok(Crossing::Transverse(1))
            } else {
                Ok(Crossing::Transverse(-1))
            }
        }
    }
}

/// Exact test whether two closed simplices intersect, in any dimensions.
pub fn hulls_intersect(sigma: &[Point], tau: &[Point], d: usize) -> bool {
    let (a, b) = affine_system(sigma, tau, d);
    match solve(a, b) {
        LinSolve::Inconsistent => false,
        LinSolve::Unique(x) => x.iter().all(|v| !v.is_negative()),
        LinSolve::Underdetermined => simplex_pair_distance_sq(sigma, tau).is_zero(),
    }
}

/// Exact squared distance between two closed simplices, by exhaustive
/// enumeration over face pairs: for each pair of faces solve the affine
/// critical-point system and keep candidates with feasible barycentric
/// coordinates.
pub fn simplex_pair_distance_sq(sigma: &[Point], tau: &[Point]) -> Rat {
    let mut best: Option<Rat> = None;
    let ns = sigma.len();
    let nt = tau.len();
    for fmask in 1u32..(1 << ns) {
        let f: Vec<&Point> = (0..ns).filter(|i| fmask >> i & 1 == 1).map(|i| &sigma[i]).collect();
        for gmask in 1u32..(1 << nt) {
            let g: Vec<&Point> =
                (0..nt).filter(|j| gmask >> j & 1 == 1).map(|j| &tau[j]).collect();
            if let Some(d2) = face_pair_candidate(&f, &g) {
                best = match best {
                    None => Some(d2),
                    Some(b) if d2 < b => Some(d2),
                    keep => keep,
                };
            }
        }
    }
    best.expect("vertex-vertex candidates always exist")
}

fn face_pair_candidate(f: &[&Point], g: &[&Point]) -> Option<Rat> {
    let s = f.len() - 1;
    let t = g.len() - 1;
    if s + t == 0 {
        return Some(f[0].sub(g[0]).norm_sq());
    }
    let e: Vec<Point> = f[1..].iter().map(|p| p.sub(f[0])).collect();
    let h: Vec<Point> = g[1..].iter().map(|p| p.sub(g[0])).collect();
    let w0 = f[0].sub(g[0]);
    // unknowns u (len s), w (len t); x - y = w0 + Σ u_i e_i - Σ w_j h_j
    // normal equations: <x - y, e_i> = 0, <x - y, h_j> = 0
    let n = s + t;
    let mut a = vec![vec![Rat::zero(); n]; n];
    let mut b = vec![Rat::zero(); n];
    for (r, ei) in e.iter().enumerate() {
        for (c, ek) in e.iter().enumerate() {
            a[r][c] = ek.dot(ei);
        }
        for (c, hj) in h.iter().enumerate() {
            a[r][s + c] = -hj.dot(ei);
        }
        b[r] = -w0.dot(ei);
    }
    for (r, hj) in h.iter().enumerate() {
        for (c, ek) in e.iter().enumerate() {
            a[s + r][c] = ek.dot(hj);
        }
        for (c, hm) in h.iter().enumerate() {
            a[s + r][s + c] = -hm.dot(hj);
        }
        b[s + r] = -w0.dot(hj);
    }
    let x = match solve(a, b) {
        LinSolve::Unique(x) => x,
        // dependent directions: the minimum is also attained on a sub-face pair
        _ => return None,
    };
    let (u, w) = x.split_at(s);
    // feasibility: interior barycentric coordinates of the affine minimizer
    let su: Rat = u.iter().fold(Rat::zero(), |acc, v| acc + v);
    let sw: Rat = w.iter().fold(Rat::zero(), |acc, v| acc + v);
    if u.iter().any(|v| v.is_negative())
        || w.iter().any(|v| v.is_negative())
        || su > Rat::one()
        || sw > Rat::one()
    {
        return None;
    }
    let mut diff = w0;
    for (ui, ei) in u.iter().zip(&e) {
        diff = diff.add(&ei.scale(ui));
    }
    for (wj, hj) in w.iter().zip(&h) {
        diff = diff.sub(&hj.scale(wj));
    }
    Some(diff.norm_sq())
}
