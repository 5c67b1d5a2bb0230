//! Explicit families: skeleta of large simplices, K₀ with marked spheres,
//! mapping telescopes with exact R⁴ embeddings, suspension embeddings, Hopf
//! fixtures, and iterated commutators with their Magnus expansions.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::geometry::embedding::PLEmbedding;
use crate::geometry::linalg::{rat, Rat};
use crate::geometry::linking::{Cycle, OrientedCell};
use crate::geometry::{GeomError, Point};
use crate::simplicial::SimplicialComplex;

/// An oriented cycle on abstract vertex ids of a host complex.
#[derive(Debug, Clone)]
pub struct AbstractCycle {
    pub dim: usize,
    /// (ordered vertex tuple, multiplicity)
    pub cells: Vec<(Vec<usize>, i64)>,
}

impl AbstractCycle {
    pub fn boundary_vanishes(&self) -> bool {
        let mut boundary: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (verts, coeff) in &self.cells {
            if verts.len() != self.dim + 1 {
                return false;
            }
            for i in 0..verts.len() {
                let mut face = verts.clone();
                face.remove(i);
                let mut parity: i64 = if i % 2 == 0 { 1 } else { -1 };
                for a in 1..face.len() {
                    let mut b = a;
                    while b > 0 && face[b - 1] > face[b] {
                        face.swap(b - 1, b);
                        parity = -parity;
                        b -= 1;
                    }
                }
                *boundary.entry(face).or_insert(0) += coeff * parity;
            }
        }
        boundary.values().all(|&v| v == 0)
    }

    /// Geometric cycle under an embedding of the host complex.
    pub fn realize(&self, e: &PLEmbedding) -> Cycle {
        let mut ids: Vec<usize> = self.cells.iter().flat_map(|(v, _)| v.iter().cloned()).collect();
        ids.sort_unstable();
        ids.dedup();
        let points: Vec<Point> = ids.iter().map(|&v| e.coords[v].clone()).collect();
        let cells = self
            .cells
            .iter()
            .map(|(verts, coeff)| {
                let local: Vec<usize> = verts
                    .iter()
                    .map(|v| ids.binary_search(v).expect("vertex present"))
                    .collect();
                OrientedCell::new(local, *coeff)
            })
            .collect();
        Cycle::new(self.dim, points, cells)
    }

    /// Boundary of the simplex on the given sorted vertices.
    pub fn simplex_boundary(vertices: &[usize]) -> AbstractCycle {
        let cells = (0..vertices.len())
            .map(|i| {
                let mut face = vertices.to_vec();
                face.remove(i);
                (face, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        AbstractCycle {
            dim: vertices.len().saturating_sub(2),
            cells,
        }
    }

    /// Closed polygon through the vertex ids, in order.
    pub fn polygon(ring: &[usize]) -> AbstractCycle {
        let n = ring.len();
        let cells = (0..n)
            .map(|i| (vec![ring[i], ring[(i + 1) % n]], 1))
            .collect();
        AbstractCycle { dim: 1, cells }
    }

    /// Suspension of a cycle: cones to the two poles with opposite signs.
    pub fn suspend(&self, north: usize, south: usize) -> AbstractCycle {
        let mut cells = Vec::with_capacity(2 * self.cells.len());
        for (verts, coeff) in &self.cells {
            let mut up = vec![north];
            up.extend(verts.iter().cloned());
            cells.push((up, *coeff));
            let mut down = vec![south];
            down.extend(verts.iter().cloned());
            cells.push((down, -coeff));
        }
        AbstractCycle {
            dim: self.dim + 1,
            cells,
        }
    }
}

/// A complex with two distinguished spheres.
#[derive(Debug, Clone)]
pub struct MarkedComplex {
    pub complex: SimplicialComplex,
    pub sphere1: AbstractCycle,
    pub sphere2: AbstractCycle,
    pub label: String,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next k-subset of {0..n}
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// n-skeleton of the (2n+2)-simplex.
pub fn vk_flores_complex(n: usize) -> SimplicialComplex {
    assert!(n >= 1);
    let faces = combinations(2 * n + 3, n + 1);
    SimplicialComplex::from_maximal_faces(&faces, &format!("flores_{n}")).unwrap()
}

/// The same skeleton with the n-simplex on {0..n} removed, plus the two
/// marked spheres: S₁ the removed simplex's boundary, S₂ the boundary of the
/// (n+1)-simplex on the remaining n+2 vertices.
pub fn k0(n: usize) -> MarkedComplex {
    assert!(n >= 1);
    let removed: Vec<usize> = (0..=n).collect();
    let faces: Vec<Vec<usize>> = combinations(2 * n + 3, n + 1)
        .into_iter()
        .filter(|f| *f != removed)
        .collect();
    let complex = SimplicialComplex::from_maximal_faces(&faces, &format!("k0_{n}")).unwrap();
    let rest: Vec<usize> = (n + 1..2 * n + 3).collect();
    MarkedComplex {
        complex,
        sphere1: AbstractCycle::simplex_boundary(&removed),
        sphere2: AbstractCycle::simplex_boundary(&rest),
        label: format!("k0_{n}"),
    }
}

/// Ring vertex ids of the telescope over K₀²: ring 0 is the boundary of the
/// removed triangle, ring j has 3·2^j fresh vertices.
fn telescope_rings(l: usize) -> Vec<Vec<usize>> {
    let mut rings = vec![vec![0, 1, 2]];
    let mut next = 7usize;
    for j in 1..=l {
        let size = 3usize << j;
        rings.push((next..next + size).collect());
        next += size;
    }
    rings
}

/// Mapping telescope over K₀² with l stages: stage j is the simplicial
/// mapping cylinder of the degree-2 cover of ring j-1 by ring j. The marked
/// 1-cycle becomes the outermost ring.
pub fn telescope(l: usize) -> MarkedComplex {
    let base = k0(2);
    let mut faces = base.complex.maximal_faces();
    let rings = telescope_rings(l);
    for j in 1..=l {
        let inner = &rings[j - 1];
        let outer = &rings[j];
        let m = inner.len();
        let mm = outer.len();
        for k in 0..mm {
            let w0 = outer[k];
            let w1 = outer[(k + 1) % mm];
            let u0 = inner[k % m];
            let u1 = inner[(k + 1) % mm % m];
            faces.push(vec![w0, w1, u1]);
            faces.push(vec![w0, u0, u1]);
        }
    }
    let complex =
        SimplicialComplex::from_maximal_faces(&faces, &format!("telescope_{l}")).unwrap();
    // outermost ring traversed in the order that makes Lk(ring, S2) positive
    let outer: Vec<usize> = rings[l].iter().rev().cloned().collect();
    MarkedComplex {
        complex,
        sphere1: AbstractCycle::polygon(&outer),
        sphere2: base.sphere2,
        label: format!("telescope_{l}"),
    }
}

/// Nearby rational point on the unit circle (denominator 2^16); exactness of
/// the radius is irrelevant, only distinctness and winding order matter.
fn unit_dir(theta: f64) -> (Rat, Rat) {
    let scale = 1i64 << 16;
    (
        rat((theta.cos() * scale as f64).round() as i64, scale),
        rat((theta.sin() * scale as f64).round() as i64, scale),
    )
}

/// Base coordinates for K₀² in R⁴: the tetrahedron {3,4,5,6} in the
/// hyperplane x₄ = 0, vertex 0 inside it, vertices 1 and 2 above and below a
/// point that sees every tetrahedron vertex from outside.
fn k0_2_coords() -> Vec<Point> {
    let p = |a: i64, b: i64, c: i64, d: i64| Point(vec![rat(a, 1), rat(b, 1), rat(c, 1), rat(d, 1)]);
    vec![
        p(1, 1, 1, 0),
        p(3, -2, -2, 2),
        p(3, -2, -2, -2),
        p(0, 0, 0, 0),
        p(6, 0, 0, 0),
        p(0, 6, 0, 0),
        p(0, 0, 6, 0),
    ]
}

/// Exact embedded telescope in R⁴. Ring j lies over the boundary of a copy
/// of the removed triangle shrunk toward its barycenter by depth t_j, so the
/// stages occupy disjoint nested bands of the collar; within a stage the
/// double cover is separated by a small rotating offset in a fixed 2-plane
/// transverse to the triangle's plane. Verified exactly; a failure is a
/// construction bug for the default parameters.
pub fn telescope_embedding(l: usize, collar_ratio: &Rat) -> Result<PLEmbedding, GeomError> {
    if !collar_ratio.is_positive() || *collar_ratio >= Rat::one() {
        return Err(GeomError::DegenerateInput(
            "collar_ratio must lie in (0,1)".into(),
        ));
    }
    let marked = telescope(l);
    let mut coords = k0_2_coords();
    let corners = [coords[0].clone(), coords[1].clone(), coords[2].clone()];
    // depth is the exact linear functional g = (3,1,1,0): it takes the
    // value 5 on all three corners of the removed triangle, so a stage j
    // cell lies in the slab g*x in [5+t_{j-1}, 5+t_j] and distinct stages
    // can only meet along their shared ring
    //
    // per-corner inward directions with g*w = 1, each strictly inside a
    // free region of that vertex's link: from vertex 0 the direction
    // (6,7,5,0) sits inside the spherical face spanned by the tetrahedron
    // directions (the barycenter direction lies exactly on the cone of the
    // triangle {0,3,4} and must not be used); from vertices 1 and 2 any
    // direction with x4 respectively positive / negative clears every link
    // cone, which all point back toward the x4 = 0 hyperplane
    let inward = [
        Point(vec![rat(1, 5), rat(7, 30), rat(1, 6), rat(0, 1)]),
        Point(vec![rat(1, 9), rat(5, 12), rat(1, 4), rat(2, 1)]),
        Point(vec![rat(1, 9), rat(1, 4), rat(5, 12), rat(-2, 1)]),
    ];
    // rotation plane inside ker g, so offsets never change the depth level;
    // it necessarily meets the plane of the removed triangle in a line, and
    // this choice puts that line along (2,-3,-3,1), parallel to no side
    let d1 = Point(vec![rat(0, 1), rat(1, 4), rat(-1, 4), rat(1, 4)]);
    let d2 = Point(vec![rat(1, 2), rat(-3, 4), rat(-3, 4), rat(1, 4)]);
    let rings = telescope_rings(l);
    let mut ratio_pow = Rat::one();
    // hierarchical offset angles: a child vertex sits at its parent's angle
    // plus or minus a per-stage decrement, one sign per strand of the
    // double cover, so every cylinder cell stays in a narrow angular sector
    // nested inside its parent's sector
    let mut prev_theta: Vec<f64> = Vec::new();
    for j in 1..=l {
        // depth cap 1/5 keeps every band clear of the locus where the
        // removed triangle's interior meets the tetrahedron's boundary
        let depth = Rat::new((j as i64).into(), (5 * (l + 1) as i64).into());
        // rotation radius scales with depth so every cell's offset cone
        // stays within a fixed angular margin of the inward directions
        let radius = &depth * &ratio_pow * rat(1, 64);
        let mm = rings[j].len();
        let m = mm / 2;
        let delta = std::f64::consts::PI / 16.0 / 4f64.powi(j as i32 - 2);
        let mut theta = Vec::with_capacity(mm);
        for k in 0..mm {
            let corner = &corners[k % 3];
            let base = corner.add(&inward[k % 3].scale(&depth));
            // per-corner angle clusters around phase and phase + pi: the
            // two strands at a corner keep cosine components of opposite,
            // nonvanishing sign, and distinct corner phases rule out the
            // exact swap coincidence on the crossover edges
            let t = if j == 1 {
                let phase = [0.3, 0.7, 1.1][k % 3];
                phase + if k < m { 0.0 } else { std::f64::consts::PI }
            } else {
                prev_theta[k % m] + if k < m { delta } else { -delta }
            };
            theta.push(t);
            let (c, s) = unit_dir(t);
            let offset = d1.scale(&(&c * &radius)).add(&d2.scale(&(&s * &radius)));
            coords.push(base.add(&offset));
        }
        prev_theta = theta;
        ratio_pow *= collar_ratio;
    }
    let e = PLEmbedding::new(marked.complex, 4, coords);
    e.verify_embedding()?;
    Ok(e)
}

/// Suspension of an embedding strictly inside the unit ball: the complex is
/// placed in the hyperplane x_{d+1} = 0 and coned to the poles (0,…,0,±1).
/// Cones from an off-hyperplane apex over disjoint embedded simplices stay
/// disjoint (points at equal heights lie on rays through distinct base
/// points), so no pair scan is needed beyond the base embedding.
pub fn suspend_embedding(e: &PLEmbedding) -> Result<PLEmbedding, GeomError> {
    if e.coords.iter().any(|p| p.norm_sq() >= Rat::one()) {
        return Err(GeomError::DegenerateInput(
            "image must lie strictly inside the unit ball; rescale first".into(),
        ));
    }
    let d = e.dim_ambient;
    let mut coords: Vec<Point> = e
        .coords
        .iter()
        .map(|p| {
            let mut v = p.0.clone();
            v.push(Rat::zero());
            Point(v)
        })
        .collect();
    let mut north = vec![Rat::zero(); d + 1];
    north[d] = Rat::one();
    let mut south = vec![Rat::zero(); d + 1];
    south[d] = -Rat::one();
    coords.push(Point(north));
    coords.push(Point(south));
    Ok(PLEmbedding::new(e.complex.suspension(), d + 1, coords))
}

/// Two regular m-gons approximating unit circles in orthogonal planes, each
/// through the other's center.
pub fn hopf_link_pl(m: usize) -> (Cycle, Cycle) {
    assert!(m >= 3);
    let mut a_pts = Vec::with_capacity(m);
    let mut b_pts = Vec::with_capacity(m);
    for k in 0..m {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        let (c, s) = unit_dir(theta);
        a_pts.push(Point(vec![c.clone(), s.clone(), Rat::zero()]));
        b_pts.push(Point(vec![&c + Rat::one(), Rat::zero(), s]));
    }
    (Cycle::polygon(a_pts), Cycle::polygon(b_pts))
}

// ---------------------------------------------------------------------------
// free words and Magnus expansions

/// A freely reduced word in a free group; letters are (generator, ±1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeWord {
    pub letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(i: usize) -> Self {
        FreeWord {
            letters: vec![(i, 1)],
        }
    }

    /// Free reduction: cancel adjacent inverse pairs until none remain.
    pub fn reduced(letters: Vec<(usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
        for l in letters {
            match out.last() {
                Some(&(g, e)) if g == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        FreeWord::reduced(letters)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorKind {
    /// [x,[x,…,[x,y]]]
    RepeatedXY,
    /// [x₁,[x₂,…,[x_q,x_{q+1}]]]
    Distinct,
}

/// The q-fold iterated commutator, freely reduced.
pub fn commutator_word(kind: CommutatorKind, q: usize) -> FreeWord {
    assert!(q >= 1);
    match kind {
        CommutatorKind::RepeatedXY => {
            let x = FreeWord::generator(0);
            let mut w = FreeWord::generator(1);
            for _ in 0..q {
                w = FreeWord::commutator(&x, &w);
            }
            w
        }
        CommutatorKind::Distinct => {
            let mut w = FreeWord::generator(q);
            for i in (0..q).rev() {
                w = FreeWord::commutator(&FreeWord::generator(i), &w);
            }
            w
        }
    }
}

pub fn reduced_length(w: &FreeWord) -> usize {
    FreeWord::reduced(w.letters.clone()).len()
}

/// Truncated noncommutative power series with integer coefficients; keys are
/// monomials as generator-index sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    pub max_degree: usize,
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl MagnusSeries {
    pub fn one(max_degree: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), 1);
        MagnusSeries { max_degree, terms }
    }

    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        assert_eq!(self.max_degree, other.max_degree);
        let mut terms: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > self.max_degree {
                    continue;
                }
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                let e = terms.entry(m).or_insert(0);
                *e += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != 0);
        MagnusSeries {
            max_degree: self.max_degree,
            terms,
        }
    }

    /// Image of a single letter: 1 + X or the truncated geometric series
    /// 1 - X + X² - … for the inverse.
    pub fn letter(gen: usize, exp: i8, max_degree: usize) -> MagnusSeries {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), 1);
        if exp == 1 {
            terms.insert(vec![gen], 1);
        } else {
            let mut sign = -1i64;
            for deg in 1..=max_degree {
                terms.insert(vec![gen; deg], sign);
                sign = -sign;
            }
        }
        MagnusSeries { max_degree, terms }
    }

    pub fn coefficient(&self, monomial: &[usize]) -> i64 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    /// Smallest degree with a nonzero coefficient, ignoring the constant.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .map(|(m, _)| m.len())
            .min()
    }
}

pub fn magnus_expansion(w: &FreeWord, max_degree: usize) -> MagnusSeries {
    assert!(max_degree >= 1);
    let mut acc = MagnusSeries::one(max_degree);
    for &(g, e) in &w.letters {
        acc = acc.mul(&MagnusSeries::letter(g, e, max_degree));
    }
    acc
}

/// Parses `x y x' [x,[y,x2]]`-style word syntax: named generators x, y or
/// x1, x2, …; `'` for inverses; `[a,b]` commutator sugar.
pub fn parse_word(input: &str) -> Result<FreeWord, String> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0usize;
    let w = parse_seq(&chars, &mut pos, &[])?;
    skip_ws(&chars, &mut pos);
    if pos != chars.len() {
        return Err(format!("unexpected character at offset {pos}"));
    }
    Ok(w)
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_seq(chars: &[char], pos: &mut usize, stop: &[char]) -> Result<FreeWord, String> {
    let mut acc = FreeWord::identity();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() || stop.contains(&chars[*pos]) {
            return Ok(acc);
        }
        let item = parse_item(chars, pos)?;
        acc = acc.concat(&item);
    }
}

fn parse_item(chars: &[char], pos: &mut usize) -> Result<FreeWord, String> {
    skip_ws(chars, pos);
    let mut base = if chars.get(*pos) == Some(&'[') {
        *pos += 1;
        let a = parse_seq(chars, pos, &[','])?;
        if chars.get(*pos) != Some(&',') {
            return Err("expected ',' in commutator".into());
        }
        *pos += 1;
        let b = parse_seq(chars, pos, &[']'])?;
        if chars.get(*pos) != Some(&']') {
            return Err("expected ']' closing commutator".into());
        }
        *pos += 1;
        FreeWord::commutator(&a, &b)
    } else {
        parse_generator(chars, pos)?
    };
    skip_ws(chars, pos);
    while chars.get(*pos) == Some(&'\'') {
        *pos += 1;
        base = base.inverse();
    }
    Ok(base)
}

fn parse_generator(chars: &[char], pos: &mut usize) -> Result<FreeWord, String> {
    let c = *chars
        .get(*pos)
        .ok_or_else(|| "unexpected end of input".to_string())?;
    if !c.is_ascii_alphabetic() {
        return Err(format!("unexpected character '{c}'"));
    }
    *pos += 1;
    let mut digits = String::new();
    while let Some(d) = chars.get(*pos) {
        if d.is_ascii_digit() {
            digits.push(*d);
            *pos += 1;
        } else {
            break;
        }
    }
    let idx = if digits.is_empty() {
        // bare letters map alphabetically: x -> 0, y -> 1, z -> 2, a -> 3, …
        match c {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            other => 3 + (other as usize - 'a' as usize),
        }
    } else {
        let k: usize = digits.parse().map_err(|_| "bad generator index")?;
        if k == 0 {
            return Err("generator indices start at 1".into());
        }
        k - 1
    };
    Ok(FreeWord::generator(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{linking_number, normalize_to_unit_ball, thickness};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flores_counts() {
        let k1 = vk_flores_complex(1);
        assert_eq!(k1.num_vertices, 5);
        assert_eq!(k1.num_simplices(1), 10);
        let k2 = vk_flores_complex(2);
        assert_eq!(k2.num_vertices, 7);
        assert_eq!(k2.num_simplices(2), 35);
        let k3 = vk_flores_complex(3);
        assert_eq!(k3.num_vertices, 9);
        assert_eq!(k3.num_simplices(3), 126);
    }

    #[test]
    fn k0_structure() {
        for n in 1..=3usize {
            let m = k0(n);
            let binom = |n: usize, k: usize| -> usize {
                (1..=k).fold(1usize, |acc, i| acc * (n + 1 - i) / i)
            };
            assert_eq!(m.complex.num_simplices(n), binom(2 * n + 3, n + 1) - 1);
            assert!(m.sphere1.boundary_vanishes());
            assert!(m.sphere2.boundary_vanishes());
            assert_eq!(m.sphere1.dim, n - 1);
            assert_eq!(m.sphere2.dim, n);
        }
        let m1 = k0(1);
        assert!(!m1.complex.contains(&[0, 1]));
        assert_eq!(k0(2).complex.num_simplices(2), 34);
    }

    #[test]
    fn telescope_counts() {
        let t0 = telescope(0);
        assert_eq!(t0.complex.num_simplices(2), 34);
        assert_eq!(t0.sphere1.cells.len(), 3);
        let t1 = telescope(1);
        assert_eq!(t1.complex.num_vertices, 13);
        assert_eq!(t1.complex.num_simplices(2), 34 + 12);
        assert_eq!(t1.sphere1.cells.len(), 6);
        assert!(t1.sphere1.boundary_vanishes());
        // each stage has Euler characteristic 0: vertices 2m, edges 6m, faces 4m
        let t2 = telescope(2);
        let dv = t2.complex.num_vertices as i64 - t1.complex.num_vertices as i64;
        let de = t2.complex.num_simplices(1) as i64 - t1.complex.num_simplices(1) as i64;
        let df = t2.complex.num_simplices(2) as i64 - t1.complex.num_simplices(2) as i64;
        assert_eq!(dv - de + df, 0);
        assert_eq!((dv, de, df), (12, 36, 24));
    }

    #[test]
    fn k0_2_base_is_embedded() {
        let e = telescope_embedding(0, &rat(1, 2)).unwrap();
        assert_eq!(e.coords.len(), 7);
    }

    #[test]
    fn telescope_l2_embeds_and_links() {
        let t = telescope(2);
        let e = telescope_embedding(2, &rat(1, 2)).unwrap();
        let sbar = t.sphere1.realize(&e);
        let s2 = t.sphere2.realize(&e);
        let lk = linking_number(&sbar, &s2, 4, 23).unwrap();
        assert_eq!(lk.abs(), 4);
    }

    #[test]
    fn telescope_l0_linking_odd() {
        let t = telescope(0);
        let e = telescope_embedding(0, &rat(1, 2)).unwrap();
        let s1 = t.sphere1.realize(&e);
        let s2 = t.sphere2.realize(&e);
        let lk = linking_number(&s1, &s2, 4, 9).unwrap();
        assert_eq!(lk.abs() % 2, 1);
    }

    #[test]
    fn telescope_l3_links_8() {
        let t = telescope(3);
        let e = telescope_embedding(3, &rat(1, 2)).unwrap();
        let lk = linking_number(&t.sphere1.realize(&e), &t.sphere2.realize(&e), 4, 1).unwrap();
        assert_eq!(lk.abs(), 8);
    }

    #[test]
    fn telescope_rejects_bad_ratio() {
        assert!(telescope_embedding(1, &rat(1, 1)).is_err());
        assert!(telescope_embedding(1, &rat(-1, 2)).is_err());
    }

    #[test]
    fn suspend_two_points_is_square() {
        let k = SimplicialComplex::from_maximal_faces(&[vec![0], vec![1]], "s0").unwrap();
        let e = PLEmbedding::new(
            k,
            1,
            vec![Point(vec![rat(-1, 2)]), Point(vec![rat(1, 2)])],
        );
        let s = suspend_embedding(&e).unwrap();
        assert_eq!(s.dim_ambient, 2);
        assert_eq!(s.complex.num_simplices(1), 4);
        s.verify_embedding().unwrap();
    }

    #[test]
    fn double_suspension_is_octahedron_boundary() {
        let k = SimplicialComplex::from_maximal_faces(&[vec![0], vec![1]], "s0").unwrap();
        let e = PLEmbedding::new(
            k,
            1,
            vec![Point(vec![rat(-1, 2)]), Point(vec![rat(1, 2)])],
        );
        let once = suspend_embedding(&e).unwrap();
        let scaled = normalize_to_unit_ball(&once).unwrap();
        // normalization puts extreme points on the sphere; shrink strictly inside
        let shrunk = PLEmbedding::new(
            scaled.complex.clone(),
            2,
            scaled.coords.iter().map(|p| p.scale(&rat(1, 2))).collect(),
        );
        let twice = suspend_embedding(&shrunk).unwrap();
        assert_eq!(twice.complex.num_vertices, 6);
        assert_eq!(twice.complex.num_simplices(2), 8);
        twice.verify_embedding().unwrap();
    }

    #[test]
    fn suspension_rejects_unscaled_input() {
        let k = SimplicialComplex::from_maximal_faces(&[vec![0], vec![1]], "s0").unwrap();
        let e = PLEmbedding::new(k, 1, vec![Point(vec![rat(-3, 1)]), Point(vec![rat(3, 1)])]);
        assert!(suspend_embedding(&e).is_err());
    }

    #[test]
    fn suspension_preserves_linking() {
        let t = telescope(1);
        let e = telescope_embedding(1, &rat(1, 2)).unwrap();
        let lk4 = linking_number(&t.sphere1.realize(&e), &t.sphere2.realize(&e), 4, 2).unwrap();
        let ball = normalize_to_unit_ball(&e).unwrap();
        let shrunk = PLEmbedding::new(
            ball.complex.clone(),
            4,
            ball.coords.iter().map(|p| p.scale(&rat(9, 10))).collect(),
        );
        let s = suspend_embedding(&shrunk).unwrap();
        let north = shrunk.complex.num_vertices;
        let s2up = t.sphere2.suspend(north, north + 1);
        assert!(s2up.boundary_vanishes());
        let lk5 = linking_number(&t.sphere1.realize(&s), &s2up.realize(&s), 5, 2).unwrap();
        assert_eq!(lk4.abs(), lk5.abs());
        assert_eq!(lk4.abs(), 2);
    }

    #[test]
    fn hopf_fixture_links_once() {
        for m in [3usize, 6] {
            let (a, b) = hopf_link_pl(m);
            assert!(a.is_cycle() && b.is_cycle());
            let lk = linking_number(&a, &b, 3, 4).unwrap();
            assert_eq!(lk.abs(), 1);
        }
        // split variant
        let (a, mut b) = hopf_link_pl(6);
        for p in &mut b.points {
            p.0[0] += rat(100, 1);
        }
        assert_eq!(linking_number(&a, &b, 3, 4).unwrap(), 0);
    }

    #[test]
    fn thickness_decreases_with_stages() {
        let t1 = thickness(&telescope_embedding(1, &rat(1, 2)).unwrap(), false).unwrap();
        let t2 = thickness(&telescope_embedding(2, &rat(1, 2)).unwrap(), false).unwrap();
        assert!(t2.min_distance_sq.unwrap() < t1.min_distance_sq.unwrap());
    }

    #[test]
    fn commutator_lengths() {
        let w1 = commutator_word(CommutatorKind::RepeatedXY, 1);
        assert_eq!(
            w1.letters,
            vec![(0, 1), (1, 1), (0, -1), (1, -1)]
        );
        assert_eq!(commutator_word(CommutatorKind::RepeatedXY, 2).len(), 10);
        // repeated iterated commutators genuinely cancel under free
        // reduction from q = 3 on: w_2 ends in x^-1, so [x, w_2] loses a
        // pair at the junction, and further cancellations compound
        let repeated = [4usize, 10, 20, 38, 72, 138];
        for q in 1..=6 {
            assert_eq!(
                commutator_word(CommutatorKind::RepeatedXY, q).len(),
                repeated[q - 1]
            );
            // distinct generators leave no junction cancellations, so the
            // naive doubling recurrence is exact
            assert_eq!(
                commutator_word(CommutatorKind::Distinct, q).len(),
                3 * (1 << q) - 2
            );
        }
    }

    #[test]
    fn free_reduction() {
        let w = FreeWord::reduced(vec![(0, 1), (0, -1)]);
        assert!(w.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let base: Vec<(usize, i8)> = (0..10)
                .map(|_| (rng.gen_range(0..3usize), if rng.gen::<bool>() { 1 } else { -1 }))
                .collect();
            let w = FreeWord::reduced(base.clone());
            // insert a canceling pair at a random spot; reduction is unchanged
            let mut noisy = base.clone();
            let at = rng.gen_range(0..=noisy.len());
            let g = rng.gen_range(0..3usize);
            noisy.insert(at, (g, -1));
            noisy.insert(at, (g, 1));
            assert_eq!(FreeWord::reduced(noisy).len(), w.len());
        }
    }

    #[test]
    fn magnus_basics() {
        let x = FreeWord::generator(0);
        let ex = magnus_expansion(&x, 3);
        assert_eq!(ex.coefficient(&[]), 1);
        assert_eq!(ex.coefficient(&[0]), 1);
        assert_eq!(ex.terms.len(), 2);
        // x x' = 1 exactly after truncation
        let e = magnus_expansion(&FreeWord::reduced(vec![(0, 1), (0, -1)]), 4);
        assert_eq!(e, MagnusSeries::one(4));
        let comm = commutator_word(CommutatorKind::RepeatedXY, 1);
        let ec = magnus_expansion(&comm, 2);
        assert_eq!(ec.coefficient(&[0, 1]), 1);
        assert_eq!(ec.coefficient(&[1, 0]), -1);
        assert_eq!(ec.coefficient(&[0]), 0);
        assert_eq!(ec.coefficient(&[1]), 0);
    }

    #[test]
    fn magnus_mu_coefficient_of_distinct_commutators() {
        for q in 1..=4usize {
            let w = commutator_word(CommutatorKind::Distinct, q);
            let e = magnus_expansion(&w, q + 1);
            assert_eq!(e.lowest_nonconstant_degree(), Some(q + 1));
            let monomial: Vec<usize> = (0..=q).collect();
            assert_eq!(e.coefficient(&monomial).abs(), 1);
        }
    }

    #[test]
    fn magnus_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let mk = |rng: &mut ChaCha8Rng| {
                FreeWord::reduced(
                    (0..rng.gen_range(0..20usize))
                        .map(|_| (rng.gen_range(0..3usize), if rng.gen::<bool>() { 1 } else { -1 }))
                        .collect(),
                )
            };
            let u = mk(&mut rng);
            let v = mk(&mut rng);
            let lhs = magnus_expansion(&u.concat(&v), 4);
            let rhs = magnus_expansion(&u, 4).mul(&magnus_expansion(&v, 4));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn word_parser() {
        assert_eq!(parse_word("x y").unwrap().letters, vec![(0, 1), (1, 1)]);
        assert_eq!(parse_word("x'").unwrap().letters, vec![(0, -1)]);
        assert_eq!(parse_word("x x'").unwrap(), FreeWord::identity());
        assert_eq!(
            parse_word("[x,y]").unwrap(),
            commutator_word(CommutatorKind::RepeatedXY, 1)
        );
        assert_eq!(
            parse_word("[x1,[x2,x3]]").unwrap(),
            commutator_word(CommutatorKind::Distinct, 2)
        );
        assert_eq!(parse_word("x3").unwrap().letters, vec![(2, 1)]);
        assert_eq!(parse_word("[x,y]'").unwrap(), parse_word("y x y' x'").unwrap());
        assert!(parse_word("[x y").is_err());
        assert!(parse_word("x0").is_err());
        assert!(parse_word("?").is_err());
    }
}
