//! Exact PL linking numbers via the cone method: Lk(A, B) is the signed
//! intersection count of a generic cone over A with B.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use super::linalg::Rat;
use super::predicates::{simplex_intersection_sign, Crossing};
use super::{GeomError, Point};

/// An oriented cell of a geometric cycle: vertex indices in orientation
/// order, with an integer multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedCell {
    pub vertices: Vec<usize>,
    pub coeff: i64,
}

impl OrientedCell {
    pub fn new(vertices: Vec<usize>, coeff: i64) -> Self {
        OrientedCell { vertices, coeff }
    }
}

/// A geometric p-cycle: points in R^d and oriented p-cells over them.
#[derive(Debug, Clone)]
pub struct Cycle {
    pub dim: usize,
    pub points: Vec<Point>,
    pub cells: Vec<OrientedCell>,
}

impl Cycle {
    pub fn new(dim: usize, points: Vec<Point>, cells: Vec<OrientedCell>) -> Self {
        Cycle { dim, points, cells }
    }

    /// Closed polygon through the given points, in order.
    pub fn polygon(points: Vec<Point>) -> Self {
        let n = points.len();
        let cells = (0..n)
            .map(|i| OrientedCell::new(vec![i, (i + 1) % n], 1))
            .collect();
        Cycle::new(1, points, cells)
    }

    pub fn reversed(&self) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| OrientedCell::new(c.vertices.clone(), -c.coeff))
            .collect();
        Cycle::new(self.dim, self.points.clone(), cells)
    }

    /// Checks the algebraic boundary vanishes. Faces are canonicalized by
    /// sorting vertices and tracking the permutation parity.
    pub fn is_cycle(&self) -> bool {
        let mut boundary: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for cell in &self.cells {
            if cell.vertices.len() != self.dim + 1 {
                return false;
            }
            for i in 0..cell.vertices.len() {
                let mut face: Vec<usize> = cell.vertices.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let (canon, parity) = sort_with_parity(face);
                *boundary.entry(canon).or_insert(0) += cell.coeff * sign * parity;
            }
        }
        boundary.values().all(|&v| v == 0)
    }

    fn cell_points(&self, cell: &OrientedCell) -> Vec<Point> {
        cell.vertices.iter().map(|&v| self.points[v].clone()).collect()
    }

    fn coord_bound(&self) -> Rat {
        use num_traits::Signed;
        let mut best = Rat::zero();
        for p in &self.points {
            for c in &p.0 {
                if c.abs() > best {
                    best = c.abs();
                }
            }
        }
        best
    }
}

fn sort_with_parity(mut v: Vec<usize>) -> (Vec<usize>, i64) {
    let mut parity = 1i64;
    // insertion sort; cycles here are tiny
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            parity = -parity;
            j -= 1;
        }
    }
    (v, parity)
}

const APEX_RETRY_CAP: u32 = 32;

/// Linking number of a p-cycle and a q-cycle in R^d with p + q = d - 1.
/// Cones A from a seeded random apex and counts signed crossings with B;
/// degenerate apexes are re-drawn.
pub fn linking_number(a: &Cycle, b: &Cycle, d: usize, seed: u64) -> Result<i64, GeomError> {
    if a.dim + b.dim + 1 != d {
        return Err(GeomError::DimensionMismatch(format!(
            "cycle dimensions {} + {} + 1 != ambient {}",
            a.dim, b.dim, d
        )));
    }
    if !a.is_cycle() || !b.is_cycle() {
        return Err(GeomError::DegenerateInput("chain has nonzero boundary".into()));
    }
    let spread = a.coord_bound().max(b.coord_bound()) * Rat::from(BigInt::from(4)) + Rat::from(BigInt::from(4));
    let mut last = String::new();
    'apex: for attempt in 0..APEX_RETRY_CAP {
        let derived = seed.wrapping_add((attempt as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let mut rng = ChaCha8Rng::seed_from_u64(derived);
        let denom = BigInt::from(1u64 << 16);
        let apex = Point(
            (0..d)
                .map(|_| {
                    let n: i64 = rng.gen_range(-(1i64 << 16)..(1i64 << 16));
                    Rat::new(BigInt::from(n), denom.clone()) * &spread
                })
                .collect(),
        );
        let mut total = 0i64;
        for ca in &a.cells {
            if ca.coeff == 0 {
                continue;
            }
            // cone cell [apex, v0..vp]: its face opposite the apex is ca
            // with sign +1, so d(cone A) = A and crossings count Lk(A, B)
            let mut cone_pts = vec![apex.clone()];
            cone_pts.extend(a.cell_points(ca));
            for cb in &b.cells {
                if cb.coeff == 0 {
                    continue;
                }
                match simplex_intersection_sign(&cone_pts, &b.cell_points(cb), d) {
                    Ok(Crossing::Empty) => {}
                    Ok(Crossing::Transverse(s)) => total += s as i64 * ca.coeff * cb.coeff,
                    Ok(Crossing::Degenerate) => {
                        last = "degenerate cone crossing".into();
                        continue 'apex;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        return Ok(total);
    }
    Err(GeomError::GenericityFailure {
        attempts: APEX_RETRY_CAP,
        detail: last,
    })
}
