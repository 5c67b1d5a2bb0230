//! Abstract simplicial complexes, chain machinery, deleted products and suspension.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("face {0:?} contains a duplicate vertex")]
    DuplicateVertex(Vec<usize>),
    #[error("skeleton dimension {0} out of range for complex of dimension {1}")]
    SkeletonOutOfRange(usize, usize),
    #[error("boundary matrix dimension {0} out of range")]
    BoundaryOutOfRange(usize),
    #[error("complex is empty")]
    Empty,
}

/// A finite abstract simplicial complex. Simplices are stored per dimension
/// as strictly sorted vertex tuples, in lexicographic order, so every index
/// is reproducible across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub num_vertices: usize,
    /// `simplices_by_dim[k]` lists the k-simplices, each a sorted vertex tuple.
    pub simplices_by_dim: Vec<Vec<Vec<usize>>>,
    pub name: String,
}

impl SimplicialComplex {
    /// Builds the downward closure of a set of maximal faces.
    pub fn from_maximal_faces(
        maximal_faces: &[Vec<usize>],
        name: impl Into<String>,
    ) -> Result<Self, SimplicialError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut num_vertices = 0usize;
        for face in maximal_faces {
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != face.len() {
                return Err(SimplicialError::DuplicateVertex(face.clone()));
            }
            for &v in &sorted {
                num_vertices = num_vertices.max(v + 1);
            }
            // all non-empty subsets of the face
            let m = sorted.len();
            for mask in 1u64..(1u64 << m) {
                let sub: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| sorted[i]).collect();
                all.insert(sub);
            }
        }
        let dim = all.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut simplices_by_dim = vec![Vec::new(); dim + 1];
        for s in all {
            simplices_by_dim[s.len() - 1].push(s);
        }
        // BTreeSet iteration is sorted by Vec order which for equal-length sorted
        // tuples is lexicographic, but tuples of different lengths interleave;
        // re-sort each dimension to be safe.
        for list in &mut simplices_by_dim {
            list.sort_unstable();
        }
        Ok(SimplicialComplex {
            num_vertices,
            simplices_by_dim,
            name: name.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.simplices_by_dim.len().saturating_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        self.simplices_by_dim.get(k).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices_by_dim.iter().map(|l| l.len()).sum()
    }

    /// Index of a sorted vertex tuple among the k-simplices, if present.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len() - 1;
        self.simplices(k).binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// The k-skeleton: simplices of dimension <= k.
    pub fn skeleton(&self, k: usize) -> Result<Self, SimplicialError> {
        if k > self.dim() {
            return Err(SimplicialError::SkeletonOutOfRange(k, self.dim()));
        }
        Ok(SimplicialComplex {
            num_vertices: self.num_vertices,
            simplices_by_dim: self.simplices_by_dim[..=k].to_vec(),
            name: format!("{}_skel{}", self.name, k),
        })
    }

    /// The boundary matrix ∂_k as a dense integer matrix: entry (i, j) is the
    /// incidence sign of the i-th (k-1)-simplex in the j-th k-simplex, under
    /// the alternating-face rule on sorted tuples.
    pub fn boundary_matrix(&self, k: usize) -> Result<Vec<Vec<i64>>, SimplicialError> {
        if k == 0 || k > self.dim() {
            return Err(SimplicialError::BoundaryOutOfRange(k));
        }
        let rows = self.num_simplices(k - 1);
        let cols = self.num_simplices(k);
        let mut m = vec![vec![0i64; cols]; rows];
        for (j, s) in self.simplices(k).iter().enumerate() {
            for (omit, sign) in boundary_faces(s) {
                let i = self
                    .index_of(&omit)
                    .expect("downward closure guarantees faces are present");
                m[i][j] += sign;
            }
        }
        Ok(m)
    }

    /// Verifies downward closure by exhaustive face scan.
    pub fn is_downward_closed(&self) -> bool {
        for k in 1..=self.dim() {
            for s in self.simplices(k) {
                for (face, _) in boundary_faces(s) {
                    if !self.contains(&face) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The suspension: two new pole vertices; every simplex σ yields σ,
    /// σ∪{north}, σ∪{south}.
    pub fn suspension(&self) -> SimplicialComplex {
        let north = self.num_vertices;
        let south = self.num_vertices + 1;
        let dim = self.dim() + 1;
        let mut simplices_by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim + 1];
        for k in 0..=self.dim() {
            for s in self.simplices(k) {
                simplices_by_dim[k].push(s.clone());
                let mut n = s.clone();
                n.push(north);
                simplices_by_dim[k + 1].push(n);
                let mut t = s.clone();
                t.push(south);
                simplices_by_dim[k + 1].push(t);
            }
        }
        simplices_by_dim[0].push(vec![north]);
        simplices_by_dim[0].push(vec![south]);
        for list in &mut simplices_by_dim {
            list.sort_unstable();
        }
        SimplicialComplex {
            num_vertices: self.num_vertices + 2,
            simplices_by_dim,
            name: format!("susp_{}", self.name),
        }
    }

    /// Maximal faces (simplices that are not a proper face of another simplex).
    pub fn maximal_faces(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for k in 0..=self.dim() {
            for s in self.simplices(k) {
                let mut is_face = false;
                if k + 1 <= self.dim() {
                    'outer: for t in self.simplices(k + 1) {
                        // s is a face of t iff s ⊂ t
                        let mut it = t.iter();
                        for v in s {
                            loop {
                                match it.next() {
                                    Some(w) if w == v => break,
                                    Some(_) => continue,
                                    None => continue 'outer,
                                }
                            }
                        }
                        is_face = true;
                        break;
                    }
                }
                if !is_face {
                    out.push(s.clone());
                }
            }
        }
        out
    }
}

/// Faces of a sorted tuple with alternating signs: omitting vertex i carries
/// sign (-1)^i.
pub fn boundary_faces(simplex: &[usize]) -> impl Iterator<Item = (Vec<usize>, i64)> + '_ {
    (0..simplex.len()).map(move |i| {
        let mut face: Vec<usize> = simplex.to_vec();
        face.remove(i);
        (face, if i % 2 == 0 { 1 } else { -1 })
    })
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    // both sorted
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

/// An ordered cell (σ, τ) of the deleted product, identified by the host
/// dimensions and indices of the two factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProductCell {
    pub dim_a: usize,
    pub idx_a: usize,
    pub dim_b: usize,
    pub idx_b: usize,
}

impl ProductCell {
    pub fn swap(&self) -> ProductCell {
        ProductCell {
            dim_a: self.dim_b,
            idx_a: self.idx_b,
            dim_b: self.dim_a,
            idx_b: self.idx_a,
        }
    }
}

/// The deleted product of an n-complex, materialized in the two degrees the
/// obstruction theory needs: 2n and 2n-1. Ordered cells are pairs of
/// vertex-disjoint simplices; the swap involution acts freely and quotient
/// representatives are the lexicographically smaller ordered pairs.
#[derive(Debug, Clone)]
pub struct DeletedProduct {
    pub host: SimplicialComplex,
    /// ordered cells of dimension 2n (pairs of n-simplices)
    pub cells_top: Vec<ProductCell>,
    /// ordered cells of dimension 2n-1 (pairs with dims {n-1, n})
    pub cells_sub: Vec<ProductCell>,
    /// quotient representatives, top dimension
    pub reps_top: Vec<ProductCell>,
    /// quotient representatives, dimension 2n-1
    pub reps_sub: Vec<ProductCell>,
}

impl DeletedProduct {
    pub fn new(host: &SimplicialComplex) -> DeletedProduct {
        let n = host.dim();
        assert!(n >= 1, "deleted product needs dimension >= 1");
        let cells_top = ordered_cells(host, 2 * n);
        let cells_sub = ordered_cells(host, 2 * n - 1);
        let reps_top = quotient_reps(&cells_top);
        let reps_sub = quotient_reps(&cells_sub);
        DeletedProduct {
            host: host.clone(),
            cells_top,
            cells_sub,
            reps_top,
            reps_sub,
        }
    }

    pub fn n(&self) -> usize {
        self.host.dim()
    }

    /// Index of the quotient representative of an ordered cell's orbit in the
    /// given representative list.
    pub fn rep_index(reps: &[ProductCell], cell: &ProductCell) -> Option<(usize, ProductCell)> {
        let rep = std::cmp::min(cell.clone(), cell.swap());
        reps.binary_search(&rep).ok().map(|i| (i, rep))
    }

    /// Coboundary matrix A mapping quotient (2n-1)-cochains to quotient
    /// 2n-cochains: row per top representative, column per sub representative.
    /// Product boundary rule ∂(σ×τ) = ∂σ×τ + (-1)^{dim σ} σ×∂τ, transposed.
    pub fn coboundary_matrix(&self) -> Vec<Vec<i64>> {
        let rows = self.reps_top.len();
        let cols = self.reps_sub.len();
        let mut a = vec![vec![0i64; cols]; rows];
        for (r, cell) in self.reps_top.iter().enumerate() {
            for (face, coeff) in product_boundary(&self.host, cell) {
                let (c, _) = Self::rep_index(&self.reps_sub, &face)
                    .expect("faces of disjoint pairs are disjoint pairs");
                a[r][c] += coeff;
            }
        }
        a
    }

    /// Coboundary matrix on ordered cells between arbitrary consecutive
    /// degrees, used for the δδ = 0 check.
    pub fn ordered_coboundary(host: &SimplicialComplex, m: usize) -> Vec<Vec<i64>> {
        let upper = ordered_cells(host, m);
        let lower = ordered_cells(host, m - 1);
        let rows = upper.len();
        let cols = lower.len();
        let mut a = vec![vec![0i64; cols]; rows];
        for (r, cell) in upper.iter().enumerate() {
            for (face, coeff) in product_boundary(host, cell) {
                let c = lower.binary_search(&face).expect("face cell present");
                a[r][c] += coeff;
            }
        }
        a
    }
}

/// Ordered deleted-product cells of total dimension m: pairs (σ, τ) of
/// vertex-disjoint simplices with dim σ + dim τ = m, in lexicographic order.
pub fn ordered_cells(host: &SimplicialComplex, m: usize) -> Vec<ProductCell> {
    let mut out = Vec::new();
    for dim_a in 0..=host.dim().min(m) {
        let dim_b = m - dim_a;
        if dim_b > host.dim() {
            continue;
        }
        for (idx_a, a) in host.simplices(dim_a).iter().enumerate() {
            for (idx_b, b) in host.simplices(dim_b).iter().enumerate() {
                if disjoint(a, b) {
                    out.push(ProductCell { dim_a, idx_a, dim_b, idx_b });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn quotient_reps(cells: &[ProductCell]) -> Vec<ProductCell> {
    let mut reps: Vec<ProductCell> = cells
        .iter()
        .filter(|c| **c <= c.swap())
        .cloned()
        .collect();
    reps.sort_unstable();
    reps
}

/// Boundary of an ordered product cell within the deleted product:
/// (face, coefficient) pairs. Faces of a vertex-disjoint pair are
/// automatically vertex-disjoint, so no filtering is needed.
fn product_boundary(
    host: &SimplicialComplex,
    cell: &ProductCell,
) -> Vec<(ProductCell, i64)> {
    let mut out = Vec::new();
    let a = &host.simplices(cell.dim_a)[cell.idx_a];
    let b = &host.simplices(cell.dim_b)[cell.idx_b];
    if cell.dim_a >= 1 {
        for (face, sign) in boundary_faces(a) {
            let idx = host.index_of(&face).expect("closure");
            out.push((
                ProductCell {
                    dim_a: cell.dim_a - 1,
                    idx_a: idx,
                    dim_b: cell.dim_b,
                    idx_b: cell.idx_b,
                },
                sign,
            ));
        }
    }
    if cell.dim_b >= 1 {
        let koszul = if cell.dim_a % 2 == 0 { 1 } else { -1 };
        for (face, sign) in boundary_faces(b) {
            let idx = host.index_of(&face).expect("closure");
            out.push((
                ProductCell {
                    dim_a: cell.dim_a,
                    idx_a: cell.idx_a,
                    dim_b: cell.dim_b - 1,
                    idx_b: idx,
                },
                koszul * sign,
            ));
        }
    }
    out
}

/// Sparse integer-valued cochain on cells of a fixed dimension; zero entries
/// are absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerCochain {
    pub dimension: usize,
    pub values: std::collections::BTreeMap<usize, i64>,
}

impl IntegerCochain {
    pub fn zero(dimension: usize) -> Self {
        IntegerCochain { dimension, values: Default::default() }
    }

    pub fn set(&mut self, idx: usize, v: i64) {
        if v == 0 {
            self.values.remove(&idx);
        } else {
            self.values.insert(idx, v);
        }
    }

    pub fn get(&self, idx: usize) -> i64 {
        self.values.get(&idx).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn l1_norm(&self) -> i64 {
        self.values.values().map(|v| v.abs()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.values().map(|v| (v * v) as f64).sum::<f64>()).sqrt()
    }

    pub fn sub(&self, other: &IntegerCochain) -> IntegerCochain {
        assert_eq!(self.dimension, other.dimension);
        let mut out = self.clone();
        for (&i, &v) in &other.values {
            out.set(i, out.get(i) - v);
        }
        out
    }

    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        let mut v = vec![0i64; len];
        for (&i, &x) in &self.values {
            v[i] = x;
        }
        v
    }
}
