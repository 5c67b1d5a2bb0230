//! PL embeddings: seeded generic linear maps with exact verification,
//! thickness measurement, unit-ball normalization, and simplex volumes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linalg::{det, rank, rat_to_f64, sqrt_upper, Rat};
use super::predicates::{hulls_intersect, simplex_intersection_sign, simplex_pair_distance_sq, Crossing};
use super::{GeomError, Point};
use crate::simplicial::SimplicialComplex;

/// A map from the vertices of a complex to exact rational points, extended
/// linearly over simplices.
#[derive(Debug, Clone)]
pub struct PLEmbedding {
    pub complex: SimplicialComplex,
    pub dim_ambient: usize,
    pub coords: Vec<Point>,
    /// true once exact genericity verification has passed
    pub generic: bool,
}

/// Identifies a simplex by (dimension, index within that dimension).
pub type SimplexId = (usize, usize);

impl PLEmbedding {
    pub fn new(complex: SimplicialComplex, dim_ambient: usize, coords: Vec<Point>) -> Self {
        assert_eq!(coords.len(), complex.num_vertices);
        PLEmbedding {
            complex,
            dim_ambient,
            coords,
            generic: false,
        }
    }

    pub fn points_of(&self, simplex: &[usize]) -> Vec<Point> {
        simplex.iter().map(|&v| self.coords[v].clone()).collect()
    }

    pub fn simplex_points(&self, id: SimplexId) -> Vec<Point> {
        self.points_of(&self.complex.simplices(id.0)[id.1])
    }

    fn all_simplex_ids(&self) -> Vec<SimplexId> {
        let mut out = Vec::new();
        for k in 0..=self.complex.dim() {
            for i in 0..self.complex.num_simplices(k) {
                out.push((k, i));
            }
        }
        out
    }

    /// All unordered vertex-disjoint simplex pairs, across all dimensions.
    pub fn disjoint_pairs(&self) -> Vec<(SimplexId, SimplexId)> {
        let ids = self.all_simplex_ids();
        let mut out = Vec::new();
        for (a, ia) in ids.iter().enumerate() {
            let sa = &self.complex.simplices(ia.0)[ia.1];
            for ib in ids.iter().skip(a + 1) {
                let sb = &self.complex.simplices(ib.0)[ib.1];
                if vertex_disjoint(sa, sb) {
                    out.push((*ia, *ib));
                }
            }
        }
        out
    }

    /// Axis-aligned bounding box per simplex, for exact pruning.
    fn bounding_boxes(&self) -> Vec<(SimplexId, Vec<Rat>, Vec<Rat>)> {
        self.all_simplex_ids()
            .into_iter()
            .map(|id| {
                let pts = self.simplex_points(id);
                let d = self.dim_ambient;
                let mut lo = pts[0].0.clone();
                let mut hi = pts[0].0.clone();
                for p in &pts[1..] {
                    for c in 0..d {
                        if p.0[c] < lo[c] {
                            lo[c] = p.0[c].clone();
                        }
                        if p.0[c] > hi[c] {
                            hi[c] = p.0[c].clone();
                        }
                    }
                }
                (id, lo, hi)
            })
            .collect()
    }

    /// Exact genericity verification: every simplex image affinely
    /// independent; no intersections among vertex-disjoint pairs with
    /// dimension sum below ambient; transverse interior crossings only when
    /// the dimension sum equals the ambient dimension.
    pub fn verify_generic(&self) -> Result<(), String> {
        self.verify_affine_independence()?;
        let d = self.dim_ambient;
        let pairs = self.disjoint_pairs();
        let bad = pairs.par_iter().find_map_any(|(ia, ib)| {
            let sa = self.simplex_points(*ia);
            let sb = self.simplex_points(*ib);
            let dimsum = ia.0 + ib.0;
            if dimsum < d {
                if hulls_intersect(&sa, &sb, d) {
                    return Some(format!("low-dim pair {:?} x {:?} intersects", ia, ib));
                }
            } else if dimsum == d {
                match simplex_intersection_sign(&sa, &sb, d) {
                    Ok(Crossing::Degenerate) => {
                        return Some(format!("degenerate crossing {:?} x {:?}", ia, ib))
                    }
                    Ok(_) => {}
                    Err(e) => return Some(e.to_string()),
                }
            } else if !simplex_pair_distance_sq(&sa, &sb).is_positive() {
                return Some(format!("high-dim pair {:?} x {:?} intersects", ia, ib));
            }
            None
        });
        match bad {
            Some(msg) => Err(msg),
            None => Ok(()),
        }
    }

    fn verify_affine_independence(&self) -> Result<(), String> {
        for k in 1..=self.complex.dim() {
            for (i, s) in self.complex.simplices(k).iter().enumerate() {
                let pts = self.points_of(s);
                let edges: Vec<Vec<Rat>> = pts[1..].iter().map(|p| p.sub(&pts[0]).0).collect();
                if rank(edges) != k {
                    return Err(format!("degenerate simplex image ({}, {})", k, i));
                }
            }
        }
        Ok(())
    }

    /// Exact embedding verification: no vertex-disjoint simplex pair
    /// intersects, in any dimension combination. Bounding boxes prune the
    /// quadratic scan exactly.
    pub fn verify_embedding(&self) -> Result<(), GeomError> {
        self.verify_affine_independence()
            .map_err(GeomError::NotEmbedding)?;
        let d = self.dim_ambient;
        let boxes = self.bounding_boxes();
        let mut pairs = Vec::new();
        for (a, (ia, lo_a, hi_a)) in boxes.iter().enumerate() {
            let sa = &self.complex.simplices(ia.0)[ia.1];
            for (ib, lo_b, hi_b) in boxes.iter().skip(a + 1) {
                let sb = &self.complex.simplices(ib.0)[ib.1];
                if !vertex_disjoint(sa, sb) {
                    continue;
                }
                if boxes_disjoint(lo_a, hi_a, lo_b, hi_b) {
                    continue;
                }
                pairs.push((*ia, *ib));
            }
        }
        let bad = pairs.par_iter().find_map_any(|(ia, ib)| {
            let sa = self.simplex_points(*ia);
            let sb = self.simplex_points(*ib);
            if hulls_intersect(&sa, &sb, d) {
                Some(format!("pair {:?} x {:?} intersects", ia, ib))
            } else {
                None
            }
        });
        match bad {
            Some(msg) => Err(GeomError::NotEmbedding(msg)),
            None => Ok(()),
        }
    }

    /// Maximum pairwise vertex distance, as an f64 upper estimate.
    pub fn vertex_diameter(&self) -> f64 {
        let mut best = Rat::zero();
        for (i, p) in self.coords.iter().enumerate() {
            for q in self.coords.iter().skip(i + 1) {
                let d2 = p.sub(q).norm_sq();
                if d2 > best {
                    best = d2;
                }
            }
        }
        rat_to_f64(&best).sqrt()
    }
}

fn vertex_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn boxes_disjoint(lo_a: &[Rat], hi_a: &[Rat], lo_b: &[Rat], hi_b: &[Rat]) -> bool {
    for c in 0..lo_a.len() {
        if hi_a[c] < lo_b[c] || hi_b[c] < lo_a[c] {
            return true;
        }
    }
    false
}

/// Float mirror of the exact face-pair enumeration, used only to screen
/// candidate pairs; infeasible or ill-conditioned face systems are skipped,
/// and the vertex-vertex pairs always supply a finite value.
fn simplex_pair_distance_sq_f64(sigma: &[Vec<f64>], tau: &[Vec<f64>]) -> f64 {
    let ns = sigma.len();
    let nt = tau.len();
    let mut best = f64::INFINITY;
    for fmask in 1u32..(1 << ns) {
        let f: Vec<&Vec<f64>> =
            (0..ns).filter(|i| fmask >> i & 1 == 1).map(|i| &sigma[i]).collect();
        for gmask in 1u32..(1 << nt) {
            let g: Vec<&Vec<f64>> =
                (0..nt).filter(|j| gmask >> j & 1 == 1).map(|j| &tau[j]).collect();
            if let Some(d2) = face_pair_candidate_f64(&f, &g) {
                best = best.min(d2);
            }
        }
    }
    best
}

fn face_pair_candidate_f64(f: &[&Vec<f64>], g: &[&Vec<f64>]) -> Option<f64> {
    let d = f[0].len();
    let s = f.len() - 1;
    let t = g.len() - 1;
    let diff0: Vec<f64> = (0..d).map(|c| f[0][c] - g[0][c]).collect();
    if s + t == 0 {
        return Some(diff0.iter().map(|x| x * x).sum());
    }
    let e: Vec<Vec<f64>> = f[1..]
        .iter()
        .map(|p| (0..d).map(|c| p[c] - f[0][c]).collect())
        .collect();
    let h: Vec<Vec<f64>> = g[1..]
        .iter()
        .map(|p| (0..d).map(|c| p[c] - g[0][c]).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| -> f64 { (0..d).map(|c| a[c] * b[c]).sum() };
    let n = s + t;
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for (r, ei) in e.iter().enumerate() {
        for (c, ek) in e.iter().enumerate() {
            a[r][c] = dot(ek, ei);
        }
        for (c, hj) in h.iter().enumerate() {
            a[r][s + c] = -dot(hj, ei);
        }
        a[r][n] = -dot(&diff0, ei);
    }
    for (r, hj) in h.iter().enumerate() {
        for (c, ek) in e.iter().enumerate() {
            a[s + r][c] = dot(ek, hj);
        }
        for (c, hm) in h.iter().enumerate() {
            a[s + r][s + c] = -dot(hm, hj);
        }
        a[s + r][n] = -dot(&diff0, hj);
    }
    // Gaussian elimination with partial pivoting; bail on near-singular
    // systems, whose minimizers are recovered on a sub-face pair anyway
    let scale = a
        .iter()
        .flat_map(|row| row[..n].iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col].abs() <= scale * 1e-9 {
            return None;
        }
        a.swap(col, piv);
        for row in col + 1..n {
            let m = a[row][col] / a[col][col];
            for c in col..=n {
                a[row][c] -= m * a[col][c];
            }
        }
    }
    let mut x = vec![0.0f64; n];
    for col in (0..n).rev() {
        let mut v = a[col][n];
        for c in col + 1..n {
            v -= a[col][c] * x[c];
        }
        x[col] = v / a[col][col];
    }
    let (u, w) = x.split_at(s);
    let su: f64 = u.iter().sum();
    let sw: f64 = w.iter().sum();
    let tol = 1e-9;
    if u.iter().any(|&v| v < -tol) || w.iter().any(|&v| v < -tol) || su > 1.0 + tol || sw > 1.0 + tol
    {
        return None;
    }
    let mut diff = diff0;
    for (ui, ei) in u.iter().zip(&e) {
        for c in 0..d {
            diff[c] += ui * ei[c];
        }
    }
    for (wj, hj) in w.iter().zip(&h) {
        for c in 0..d {
            diff[c] -= wj * hj[c];
        }
    }
    Some(diff.iter().map(|v| v * v).sum())
}

const GENERIC_RETRY_CAP: u32 = 32;
const COORD_BITS: u32 = 20;

/// Seeded generic linear map of the vertices of K into the unit cube of R^d,
/// with exact genericity verification and bounded re-draws.
pub fn generic_linear_map(
    k: &SimplicialComplex,
    d: usize,
    seed: u64,
) -> Result<PLEmbedding, GeomError> {
    assert!(d >= k.dim(), "ambient dimension below complex dimension");
    let mut last = String::new();
    for attempt in 0..GENERIC_RETRY_CAP {
        let derived = seed.wrapping_add((attempt as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let mut rng = ChaCha8Rng::seed_from_u64(derived);
        let denom = BigInt::from(1u64 << COORD_BITS);
        let coords: Vec<Point> = (0..k.num_vertices)
            .map(|_| {
                Point(
                    (0..d)
                        .map(|_| {
                            let n: u64 = rng.gen_range(0..(1u64 << COORD_BITS));
                            Rat::new(BigInt::from(n), denom.clone())
                        })
                        .collect(),
                )
            })
            .collect();
        let mut emb = PLEmbedding::new(k.clone(), d, coords);
        match emb.verify_generic() {
            Ok(()) => {
                emb.generic = true;
                return Ok(emb);
            }
            Err(msg) => last = msg,
        }
    }
    Err(GeomError::GenericityFailure {
        attempts: GENERIC_RETRY_CAP,
        detail: last,
    })
}

/// Thickness of a PL-straight embedding: the minimum distance between images
/// of vertex-disjoint simplices. Flat simplices have embedded normal bundles
/// at every radius, so the pair distance is the binding constraint.
#[derive(Debug, Clone)]
pub struct ThicknessReport {
    /// exact squared minimum distance; None when no vertex-disjoint pair exists
    pub min_distance_sq: Option<Rat>,
    pub attaining_pair: Option<(SimplexId, SimplexId)>,
    pub normalized: bool,
}

impl ThicknessReport {
    pub fn distance(&self) -> f64 {
        match &self.min_distance_sq {
            Some(d2) => rat_to_f64(d2).sqrt(),
            None => f64::INFINITY,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.min_distance_sq.is_none()
    }
}

/// Measures embedding thickness. Errors if some vertex-disjoint pair
/// intersects (the map is not an embedding).
///
/// Two-phase scan: a float pass screens every vertex-disjoint pair by its
/// bounding-box gap against a running vertex-vertex upper bound (both sound
/// up to a generous slack factor), then exact rational distances decide the
/// minimum among the survivors.
pub fn thickness(e: &PLEmbedding, normalized: bool) -> Result<ThicknessReport, GeomError> {
    let ids = e.all_simplex_ids();
    let verts: Vec<&Vec<usize>> = ids.iter().map(|id| &e.complex.simplices(id.0)[id.1]).collect();
    let coords_f: Vec<Vec<f64>> = e.coords.iter().map(|p| p.to_f64()).collect();
    let d = e.dim_ambient;
    let boxes_f: Vec<(Vec<f64>, Vec<f64>)> = verts
        .iter()
        .map(|s| {
            let mut lo = coords_f[s[0]].clone();
            let mut hi = coords_f[s[0]].clone();
            for &v in &s[1..] {
                for c in 0..d {
                    lo[c] = lo[c].min(coords_f[v][c]);
                    hi[c] = hi[c].max(coords_f[v][c]);
                }
            }
            (lo, hi)
        })
        .collect();
    let gap_sq_f = |a: usize, b: usize| -> f64 {
        let mut g = 0.0;
        for c in 0..d {
            let lo = boxes_f[a].0[c].max(boxes_f[b].0[c]);
            let hi = boxes_f[a].1[c].min(boxes_f[b].1[c]);
            if lo > hi {
                g += (lo - hi) * (lo - hi);
            }
        }
        g
    };
    let vv_sq_f = |a: usize, b: usize| -> f64 {
        let mut best = f64::INFINITY;
        for &u in verts[a] {
            for &v in verts[b] {
                let s: f64 = (0..d)
                    .map(|c| (coords_f[u][c] - coords_f[v][c]).powi(2))
                    .sum();
                best = best.min(s);
            }
        }
        best
    };
    // float pass: ub is a valid upper bound on the squared minimum, and any
    // pair whose box gap clearly exceeds it cannot attain the minimum
    let mut ub = f64::INFINITY;
    let mut candidates: Vec<((SimplexId, SimplexId), f64)> = Vec::new();
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            if !vertex_disjoint(verts[a], verts[b]) {
                continue;
            }
            let gap = gap_sq_f(a, b);
            if gap.is_nan() || gap * 0.99 <= ub {
                ub = ub.min(vv_sq_f(a, b));
                candidates.push(((ids[a], ids[b]), gap));
            }
        }
    }
    candidates.retain(|(_, gap)| gap.is_nan() || gap * 0.99 <= ub);
    // float distance pass: the exact minimizer must sit within the float
    // round-off slack of the float minimum
    let fdist: Vec<f64> = candidates
        .par_iter()
        .map(|((ia, ib), _)| {
            let sa: Vec<Vec<f64>> = e
                .simplex_points(*ia)
                .iter()
                .map(|p| p.to_f64())
                .collect();
            let sb: Vec<Vec<f64>> = e
                .simplex_points(*ib)
                .iter()
                .map(|p| p.to_f64())
                .collect();
            simplex_pair_distance_sq_f64(&sa, &sb)
        })
        .collect();
    let fmin = fdist.iter().cloned().fold(f64::INFINITY, f64::min);
    let finalists: Vec<(SimplexId, SimplexId)> = candidates
        .iter()
        .zip(&fdist)
        .filter(|(_, &d2)| !d2.is_finite() || d2 <= fmin * 1.05)
        .map(|((pair, _), _)| *pair)
        .collect();
    // exact pass on the survivors
    let results: Vec<(Rat, (SimplexId, SimplexId))> = finalists
        .par_iter()
        .map(|(ia, ib)| {
            let d2 = simplex_pair_distance_sq(&e.simplex_points(*ia), &e.simplex_points(*ib));
            (d2, (*ia, *ib))
        })
        .collect();
    let mut min: Option<(Rat, (SimplexId, SimplexId))> = None;
    for (d2, pair) in results {
        if d2.is_zero() {
            return Err(GeomError::NotEmbedding(format!(
                "pair {:?} x {:?} intersects",
                pair.0, pair.1
            )));
        }
        match &min {
            Some((m, _)) if &d2 >= m => {}
            _ => min = Some((d2, pair)),
        }
    }
    Ok(ThicknessReport {
        min_distance_sq: min.as_ref().map(|(m, _)| m.clone()),
        attaining_pair: min.map(|(_, p)| p),
        normalized,
    })
}

/// Translates the vertex centroid to the origin and rescales so the maximum
/// vertex norm is 1, up to the relative slack of the rational square root.
pub fn normalize_to_unit_ball(e: &PLEmbedding) -> Result<PLEmbedding, GeomError> {
    let n = e.coords.len();
    if n == 0 {
        return Err(GeomError::DegenerateInput("no vertices".into()));
    }
    let mut centroid = Point::zero(e.dim_ambient);
    for p in &e.coords {
        centroid = centroid.add(p);
    }
    let inv_n = Rat::new(BigInt::one(), BigInt::from(n));
    centroid = centroid.scale(&inv_n);
    let translated: Vec<Point> = e.coords.iter().map(|p| p.sub(&centroid)).collect();
    let max_sq = translated
        .iter()
        .map(|p| p.norm_sq())
        .max()
        .expect("nonempty");
    if max_sq.is_zero() {
        return Err(GeomError::DegenerateInput("all vertices coincide".into()));
    }
    let scale = sqrt_upper(&max_sq);
    let inv = scale.recip();
    let coords: Vec<Point> = translated.iter().map(|p| p.scale(&inv)).collect();
    Ok(PLEmbedding {
        complex: e.complex.clone(),
        dim_ambient: e.dim_ambient,
        coords,
        generic: e.generic,
    })
}

/// k-volume of a k-simplex image via the Gram determinant: returns the exact
/// squared volume det(GᵀG)/(k!)² and its f64 square root.
pub fn simplex_volume(points: &[Point]) -> (Rat, f64) {
    let k = points.len() - 1;
    if k == 0 {
        return (Rat::zero(), 0.0);
    }
    let edges: Vec<Point> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    let mut gram = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = edges[i].dot(&edges[j]);
        }
    }
    let g = det(gram);
    let mut fact_sq = Rat::one();
    for i in 1..=k {
        let f = Rat::from(BigInt::from(i));
        fact_sq *= &f * &f;
    }
    let vol_sq = g / fact_sq;
    let v = rat_to_f64(&vol_sq).max(0.0).sqrt();
    (vol_sq, v)
}
