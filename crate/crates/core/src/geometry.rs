//! Simplices, barycenters, homotheties, Gram volumes, and the nested
//! subsimplex family Δ^[K].
//!
//! An n-simplex Δ = conv{x_0, …, x_n} ⊂ ℝⁿ with index set N = {0, …, n}
//! carries, for every subset K ⊆ N with card K = k ≤ n, an (n−k)-simplex
//!
//! ```text
//! Δ^[K] = conv{ x_j^[K] : j ∈ N∖K },
//! x_j^[K] = (1/(n+1)) Σ_{i∈K} x_i + ((n+1−k)/(n+1)) x_j.
//! ```
//!
//! Δ^[∅] = Δ, and when N∖K is a single index the member collapses to the
//! barycenter b of Δ. All members share that barycenter, and growing K by
//! one element l maps Δ^[K] to Δ^[K∪{l}] through the homothety with center
//! x_l^[K] and scale (n−k)/(n+1−k) applied to the face opposite x_l^[K].
//!
//! Volumes are k-dimensional Lebesgue volumes of embedded simplices,
//! computed from the Gram determinant of the edge matrix.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Scale-invariant degeneracy guard: a k-simplex is degenerate when
/// det(EᵀE) ≤ `EPS_DEGENERATE` · (max edge length)^(2k).
pub const EPS_DEGENERATE: f64 = 1e-12;

/// A point or displacement in ℝⁿ.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    /// Requires at least one coordinate, all finite.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteCoordinate { index, value });
            }
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Max-norm distance. Panics on dimension mismatch.
    pub fn linf_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "linf_distance: dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn euclidean_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "euclidean_distance: dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// The homothety H(a, λ): x ↦ a + λ(x − a).
pub fn homothety_apply(center: &Vector, scale: f64, x: &Vector) -> Result<Vector> {
    if center.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            left: center.dim(),
            right: x.dim(),
        });
    }
    if !scale.is_finite() {
        return Err(Error::InvalidArgument {
            reason: format!("homothety scale must be finite, got {scale}"),
        });
    }
    let coords = center
        .as_slice()
        .iter()
        .zip(x.as_slice())
        .map(|(&a, &xi)| a + scale * (xi - a))
        .collect();
    Ok(Vector { coords })
}

/// An ordered list of k+1 vertices in ℝⁿ, k ≤ n. The intrinsic dimension k
/// may be strictly smaller than the ambient dimension: members of the
/// Δ^[K] family are embedded simplices.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Simplex {
    vertices: Vec<Vector>,
}

impl Simplex {
    /// Requires a non-empty vertex list with one common ambient dimension
    /// and vertex count ≤ ambient dimension + 1. Degeneracy is not checked
    /// here; operations that need non-degeneracy check it themselves.
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::EmptyVector)?;
        let ambient = first.dim();
        for v in &vertices {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    left: ambient,
                    right: v.dim(),
                });
            }
        }
        if vertices.len() > ambient + 1 {
            return Err(Error::TooManyVertices {
                vertices: vertices.len(),
                ambient,
            });
        }
        Ok(Self { vertices })
    }

    /// Build from plain coordinate rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let vertices = rows.into_iter().map(Vector::new).collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &Vector {
        &self.vertices[index]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Intrinsic dimension k = vertex count − 1.
    pub fn dim_intrinsic(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn dim_ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Arithmetic mean of the vertices.
    pub fn barycenter(&self) -> Vector {
        let n = self.dim_ambient();
        let count = self.vertices.len() as f64;
        let mut coords = vec![0.0; n];
        for v in &self.vertices {
            for (acc, &c) in coords.iter_mut().zip(v.as_slice()) {
                *acc += c;
            }
        }
        for c in &mut coords {
            *c /= count;
        }
        Vector { coords }
    }

    /// Longest Euclidean edge over all vertex pairs; 0 for a single point.
    pub fn max_edge_length(&self) -> f64 {
        let mut max = 0.0f64;
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                max = max.max(self.vertices[i].euclidean_distance(&self.vertices[j]));
            }
        }
        max
    }

    /// Gram determinant det(EᵀE) of the edge matrix E with rows x_i − x_0,
    /// together with the degeneracy threshold for this simplex.
    fn gram_det_and_threshold(&self) -> (f64, f64) {
        let k = self.dim_intrinsic();
        debug_assert!(k >= 1);
        let x0 = self.vertices[0].as_slice();
        let edges: Vec<Vec<f64>> = self.vertices[1..]
            .iter()
            .map(|v| v.as_slice().iter().zip(x0).map(|(a, b)| a - b).collect())
            .collect();
        let mut gram = vec![vec![0.0; k]; k];
        for i in 0..k {
            for j in i..k {
                let dot: f64 = edges[i].iter().zip(&edges[j]).map(|(a, b)| a * b).sum();
                gram[i][j] = dot;
                gram[j][i] = dot;
            }
        }
        let det = det_lu(gram);
        let threshold = EPS_DEGENERATE * self.max_edge_length().powi(2 * k as i32);
        (det, threshold)
    }

    /// A 0-simplex is never degenerate; higher simplices are degenerate when
    /// the Gram determinant falls below the scale-invariant threshold.
    pub fn is_degenerate(&self) -> bool {
        if self.dim_intrinsic() == 0 {
            return false;
        }
        let (det, threshold) = self.gram_det_and_threshold();
        det <= threshold
    }

    /// k-dimensional Lebesgue volume sqrt(det(EᵀE)) / k!.
    ///
    /// The volume of a 0-simplex is defined as 1 so that the mean value of a
    /// function over a point reduces to evaluation at that point.
    pub fn volume(&self) -> Result<f64> {
        let k = self.dim_intrinsic();
        if k == 0 {
            return Ok(1.0);
        }
        let (det, threshold) = self.gram_det_and_threshold();
        if det <= threshold {
            return Err(Error::DegenerateSimplex {
                gram: det,
                threshold,
            });
        }
        Ok(det.sqrt() / factorial_f64(k))
    }

    /// The (k−1)-simplex with the indexed vertex removed, order preserved.
    pub fn face_opposite(&self, vertex_index: usize) -> Result<Simplex> {
        if vertex_index >= self.vertices.len() {
            return Err(Error::VertexIndexOutOfRange {
                index: vertex_index,
                count: self.vertices.len(),
            });
        }
        if self.dim_intrinsic() == 0 {
            return Err(Error::InvalidArgument {
                reason: "a 0-simplex has no opposite face".into(),
            });
        }
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != vertex_index)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(Simplex { vertices })
    }

    /// Max over vertices of the max-norm vertex distance; requires equal
    /// vertex counts and dimensions. Panics otherwise (test utility).
    pub fn max_vertex_distance(&self, other: &Simplex) -> f64 {
        assert_eq!(self.vertex_count(), other.vertex_count());
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| a.linf_distance(b))
            .fold(0.0, f64::max)
    }
}

/// conv{0, e_1, …, e_n}, the standard n-simplex. Volume 1/n!.
pub fn standard_simplex(n: usize) -> Simplex {
    assert!(n >= 1, "standard simplex needs dimension >= 1");
    let mut rows = vec![vec![0.0; n]];
    for i in 0..n {
        let mut row = vec![0.0; n];
        row[i] = 1.0;
        rows.push(row);
    }
    Simplex::from_rows(rows).expect("standard simplex is well-formed")
}

/// A random non-degenerate n-simplex: the standard simplex scaled by
/// `scale` with every coordinate jittered uniformly in ±scale/4.
/// Draws a fixed number of variates per attempt, so the result is a pure
/// function of the rng state.
pub fn random_simplex<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> Simplex {
    assert!(n >= 1 && scale > 0.0);
    for _ in 0..64 {
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![0.0; n];
            if i > 0 {
                row[i - 1] = scale;
            }
            for c in row.iter_mut() {
                *c += rng.random_range(-0.25 * scale..0.25 * scale);
            }
            rows.push(row);
        }
        let s = Simplex::from_rows(rows).expect("jittered simplex rows are well-formed");
        if !s.is_degenerate() {
            return s;
        }
    }
    unreachable!("jittered standard simplex was degenerate 64 times in a row")
}

/// A subset K of the vertex index set N = {0, …, n}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SubsetIndex {
    members: Vec<usize>,
    n: usize,
}

impl SubsetIndex {
    /// Members must lie in {0, …, n} without duplicates. The full set N is
    /// representable; operations that require a proper subset reject it.
    pub fn new(members: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        if n >= 63 {
            return Err(Error::InvalidSubset {
                reason: format!("index bound {n} too large (max 62)"),
            });
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidSubset {
                    reason: format!("duplicate member {}", pair[0]),
                });
            }
        }
        if let Some(&max) = members.last() {
            if max > n {
                return Err(Error::InvalidSubset {
                    reason: format!("member {max} exceeds bound {n}"),
                });
            }
        }
        Ok(Self { members, n })
    }

    pub fn empty(n: usize) -> Self {
        Self::new([], n).expect("empty subset is valid")
    }

    pub fn card(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The index bound n of N = {0, …, n}.
    pub fn bound(&self) -> usize {
        self.n
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.n + 1
    }

    /// N∖K in ascending order.
    pub fn complement(&self) -> Vec<usize> {
        (0..=self.n).filter(|j| !self.contains(*j)).collect()
    }

    pub fn is_subset_of(&self, other: &SubsetIndex) -> bool {
        self.n == other.n && self.members.iter().all(|&m| other.contains(m))
    }

    /// K ∪ {l}; errors if l is already a member or out of range.
    pub fn with_element(&self, l: usize) -> Result<SubsetIndex> {
        if self.contains(l) {
            return Err(Error::InvalidSubset {
                reason: format!("element {l} already present"),
            });
        }
        let mut members = self.members.clone();
        members.push(l);
        SubsetIndex::new(members, self.n)
    }

    /// Bitmask encoding, used for seed derivation and cache keys.
    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0u64, |m, &i| m | (1u64 << i))
    }

    pub fn from_mask(mask: u64, n: usize) -> Result<SubsetIndex> {
        let members = (0..=n).filter(|i| mask & (1u64 << i) != 0);
        let s = SubsetIndex::new(members, n)?;
        if mask >> (n + 1) != 0 {
            return Err(Error::InvalidSubset {
                reason: format!("mask {mask:#x} has bits above bound {n}"),
            });
        }
        Ok(s)
    }

    /// Every K ⊊ N, ordered by (cardinality, members lexicographic).
    pub fn enumerate_proper(n: usize) -> Vec<SubsetIndex> {
        let full = (1u64 << (n + 1)) - 1;
        let mut all: Vec<SubsetIndex> = (0..full)
            .map(|mask| SubsetIndex::from_mask(mask, n).expect("mask below full set is valid"))
            .collect();
        all.sort_by(|a, b| a.card().cmp(&b.card()).then_with(|| a.members.cmp(&b.members)));
        all
    }
}

impl std::fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

fn check_family_base(base: &Simplex, k_set: &SubsetIndex) -> Result<()> {
    let n = base.dim_ambient();
    if base.dim_intrinsic() != n {
        return Err(Error::InvalidArgument {
            reason: format!(
                "family base must be a full-dimensional simplex: {} vertices in dimension {n}",
                base.vertex_count()
            ),
        });
    }
    if k_set.bound() != n {
        return Err(Error::InvalidSubset {
            reason: format!("subset bound {} does not match simplex dimension {n}", k_set.bound()),
        });
    }
    if base.is_degenerate() {
        let (gram, threshold) = base.gram_det_and_threshold();
        return Err(Error::DegenerateSimplex { gram, threshold });
    }
    Ok(())
}

/// The family member Δ^[K]: vertices x_j^[K] for j ∈ N∖K in increasing j.
pub fn build_delta_k(base: &Simplex, k_set: &SubsetIndex) -> Result<Simplex> {
    check_family_base(base, k_set)?;
    let n = base.dim_intrinsic();
    let complement = k_set.complement();
    if complement.is_empty() {
        return Err(Error::SubsetExhaustsVertices);
    }
    let np1 = (n + 1) as f64;
    let mut k_sum = vec![0.0; n];
    for &i in k_set.members() {
        for (acc, &c) in k_sum.iter_mut().zip(base.vertex(i).as_slice()) {
            *acc += c;
        }
    }
    let coef = (n + 1 - k_set.card()) as f64 / np1;
    let vertices = complement
        .iter()
        .map(|&j| {
            let coords = k_sum
                .iter()
                .zip(base.vertex(j).as_slice())
                .map(|(&s, &xj)| s / np1 + coef * xj)
                .collect();
            Vector { coords }
        })
        .collect();
    Simplex::new(vertices)
}

/// Δ^[K∪{l}] built as the homothety image of the face of Δ^[K] opposite
/// x_l^[K], with center x_l^[K] and scale (n−card K)/(n+1−card K). Agrees
/// vertex-wise with [`build_delta_k`] on K∪{l}.
pub fn delta_l_via_homothety(base: &Simplex, k_set: &SubsetIndex, l: usize) -> Result<Simplex> {
    check_family_base(base, k_set)?;
    let n = base.dim_intrinsic();
    if k_set.contains(l) || l > n {
        return Err(Error::NotInComplement { index: l });
    }
    if k_set.card() + 1 == n + 1 {
        return Err(Error::SubsetExhaustsVertices);
    }
    let delta_k = build_delta_k(base, k_set)?;
    let complement = k_set.complement();
    let position = complement
        .iter()
        .position(|&j| j == l)
        .expect("l is in the complement");
    let center = delta_k.vertex(position).clone();
    let face = delta_k.face_opposite(position)?;
    let k = k_set.card() as f64;
    let scale = (n as f64 - k) / (n as f64 + 1.0 - k);
    let vertices = face
        .vertices()
        .iter()
        .map(|v| homothety_apply(&center, scale, v))
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(vertices)
}

/// Determinant by LU decomposition with partial pivoting.
pub(crate) fn det_lu(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty pivot range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in (col + 1)..n {
            let (pivot_rows, rest) = m.split_at_mut(row);
            let pivot_row = &pivot_rows[col];
            let target = &mut rest[0];
            let factor = target[col] / pivot_row[col];
            for (t, &p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                *t -= factor * p;
            }
        }
    }
    det
}

pub(crate) fn factorial_f64(k: usize) -> f64 {
    assert!(k <= 33, "factorial overflows u128 beyond 33!");
    (1..=k as u128).product::<u128>() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_triangle() -> Simplex {
        Simplex::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn vector_rejects_empty_and_non_finite() {
        assert!(matches!(Vector::new(vec![]), Err(Error::EmptyVector)));
        assert!(matches!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteCoordinate { index: 1, .. })
        ));
    }

    #[test]
    fn barycenter_of_triangle_segment_point() {
        let t = unit_triangle();
        assert_eq!(t.barycenter().as_slice(), &[1.0 / 3.0, 1.0 / 3.0]);

        let seg = Simplex::from_rows(vec![vec![-1.0], vec![3.0]]).unwrap();
        assert_eq!(seg.barycenter().as_slice(), &[1.0]);

        let p = Simplex::from_rows(vec![vec![2.5, -4.0]]).unwrap();
        assert_eq!(p.barycenter().as_slice(), &[2.5, -4.0]);
    }

    #[test]
    fn homothety_identity_collapse_scaling() {
        let a = Vector::from_slice(&[0.3, -0.7]).unwrap();
        let x = Vector::from_slice(&[1.2, 2.5]).unwrap();
        let id = homothety_apply(&a, 1.0, &x).unwrap();
        assert!(id.linf_distance(&x) < 1e-15);

        let collapsed = homothety_apply(&a, 0.0, &x).unwrap();
        assert_eq!(collapsed, a);

        let origin = Vector::from_slice(&[0.0, 0.0]).unwrap();
        let p = Vector::from_slice(&[2.0, 4.0]).unwrap();
        let half = homothety_apply(&origin, 0.5, &p).unwrap();
        assert_eq!(half.as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn homothety_dimension_mismatch() {
        let a = Vector::from_slice(&[0.0]).unwrap();
        let x = Vector::from_slice(&[1.0, 2.0]).unwrap();
        assert!(matches!(
            homothety_apply(&a, 0.5, &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn volume_unit_triangle() {
        assert_relative_eq!(unit_triangle().volume().unwrap(), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn volume_standard_simplices() {
        for n in 1..=6 {
            let v = standard_simplex(n).volume().unwrap();
            assert_relative_eq!(v, 1.0 / factorial_f64(n), max_relative = 1e-12);
        }
    }

    #[test]
    fn volume_embedded_segment() {
        // Length of the segment (2/3,0) to (0,2/3) is (2/3)*sqrt(2).
        let seg =
            Simplex::from_rows(vec![vec![2.0 / 3.0, 0.0], vec![0.0, 2.0 / 3.0]]).unwrap();
        assert_relative_eq!(
            seg.volume().unwrap(),
            0.942_809_041_582_063_4,
            max_relative = 1e-12
        );
    }

    #[test]
    fn volume_of_point_is_one() {
        let p = Simplex::from_rows(vec![vec![7.0, 8.0]]).unwrap();
        assert_eq!(p.volume().unwrap(), 1.0);
        assert!(!p.is_degenerate());
    }

    #[test]
    fn degenerate_simplex_is_rejected() {
        let collinear =
            Simplex::from_rows(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        assert!(collinear.is_degenerate());
        assert!(matches!(
            collinear.volume(),
            Err(Error::DegenerateSimplex { .. })
        ));
    }

    #[test]
    fn face_opposite_examples() {
        let t = unit_triangle();
        let f = t.face_opposite(0).unwrap();
        assert_eq!(f.vertices(), &t.vertices()[1..]);

        let seg = Simplex::from_rows(vec![vec![4.0], vec![9.0]]).unwrap();
        let p = seg.face_opposite(1).unwrap();
        assert_eq!(p.vertex(0).as_slice(), &[4.0]);

        let tet = standard_simplex(3);
        let face = tet.face_opposite(2).unwrap();
        assert_eq!(face.vertex(0), tet.vertex(0));
        assert_eq!(face.vertex(1), tet.vertex(1));
        assert_eq!(face.vertex(2), tet.vertex(3));

        assert!(matches!(
            t.face_opposite(3),
            Err(Error::VertexIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn subset_index_validation() {
        assert!(SubsetIndex::new([0, 2], 2).is_ok());
        assert!(matches!(
            SubsetIndex::new([0, 0], 2),
            Err(Error::InvalidSubset { .. })
        ));
        assert!(matches!(
            SubsetIndex::new([3], 2),
            Err(Error::InvalidSubset { .. })
        ));
        let full = SubsetIndex::new([0, 1, 2], 2).unwrap();
        assert!(full.is_full());
        assert!(full.complement().is_empty());
    }

    #[test]
    fn subset_enumeration_counts() {
        // 2^(n+1) - 1 proper subsets.
        assert_eq!(SubsetIndex::enumerate_proper(1).len(), 3);
        assert_eq!(SubsetIndex::enumerate_proper(2).len(), 7);
        assert_eq!(SubsetIndex::enumerate_proper(6).len(), 127);
        let subsets = SubsetIndex::enumerate_proper(2);
        assert_eq!(subsets[0].card(), 0);
        assert!(subsets.windows(2).all(|w| w[0].card() <= w[1].card()));
    }

    #[test]
    fn delta_k_empty_subset_is_identity() {
        let t = unit_triangle();
        let d = build_delta_k(&t, &SubsetIndex::empty(2)).unwrap();
        assert_eq!(d, t);
    }

    #[test]
    fn delta_k_singleton_complement_is_barycenter() {
        let t = unit_triangle();
        let k = SubsetIndex::new([0, 1], 2).unwrap();
        let d = build_delta_k(&t, &k).unwrap();
        assert_eq!(d.vertex_count(), 1);
        assert!(d.vertex(0).linf_distance(&t.barycenter()) <= 1e-15);
    }

    #[test]
    fn delta_k_triangle_example() {
        let t = unit_triangle();
        let k = SubsetIndex::new([0], 2).unwrap();
        let d = build_delta_k(&t, &k).unwrap();
        let expected =
            Simplex::from_rows(vec![vec![2.0 / 3.0, 0.0], vec![0.0, 2.0 / 3.0]]).unwrap();
        assert!(d.max_vertex_distance(&expected) <= 1e-15);
    }

    #[test]
    fn delta_k_full_subset_errors() {
        let t = unit_triangle();
        let full = SubsetIndex::new([0, 1, 2], 2).unwrap();
        assert!(matches!(
            build_delta_k(&t, &full),
            Err(Error::SubsetExhaustsVertices)
        ));
    }

    #[test]
    fn delta_k_intrinsic_dimension() {
        let s = standard_simplex(4);
        for k_set in SubsetIndex::enumerate_proper(4) {
            let d = build_delta_k(&s, &k_set).unwrap();
            assert_eq!(d.dim_intrinsic(), 4 - k_set.card());
        }
    }

    #[test]
    fn homothety_route_matches_direct_construction() {
        let t = unit_triangle();
        let via = delta_l_via_homothety(&t, &SubsetIndex::empty(2), 0).unwrap();
        let expected =
            Simplex::from_rows(vec![vec![2.0 / 3.0, 0.0], vec![0.0, 2.0 / 3.0]]).unwrap();
        assert!(via.max_vertex_distance(&expected) <= 1e-15);
    }

    #[test]
    fn homothety_route_forced_point() {
        let seg = Simplex::from_rows(vec![vec![0.0], vec![1.0]]).unwrap();
        let via = delta_l_via_homothety(&seg, &SubsetIndex::empty(1), 0).unwrap();
        assert_eq!(via.vertex_count(), 1);
        assert!((via.vertex(0).as_slice()[0] - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn homothety_route_preserves_barycenter() {
        let s = standard_simplex(3);
        let k = SubsetIndex::new([1], 3).unwrap();
        let d = delta_l_via_homothety(&s, &k, 2).unwrap();
        assert!(d.barycenter().linf_distance(&s.barycenter()) <= 1e-15);
    }

    #[test]
    fn homothety_route_preconditions() {
        let t = unit_triangle();
        let k = SubsetIndex::new([0], 2).unwrap();
        assert!(matches!(
            delta_l_via_homothety(&t, &k, 0),
            Err(Error::NotInComplement { index: 0 })
        ));
        assert!(matches!(
            delta_l_via_homothety(&t, &SubsetIndex::new([0, 1], 2).unwrap(), 2),
            Err(Error::SubsetExhaustsVertices)
        ));
    }

    #[test]
    fn det_lu_known_values() {
        assert_eq!(det_lu(vec![vec![3.0]]), 3.0);
        assert_relative_eq!(
            det_lu(vec![vec![1.0, 2.0], vec![3.0, 4.0]]),
            -2.0,
            max_relative = 1e-14
        );
        // Cofactor expansion: 2*(12-2) - 0 + 1*(1-3) = 18.
        assert_relative_eq!(
            det_lu(vec![
                vec![2.0, 0.0, 1.0],
                vec![1.0, 3.0, 2.0],
                vec![1.0, 1.0, 4.0],
            ]),
            18.0,
            max_relative = 1e-14
        );
        assert_eq!(det_lu(vec![vec![1.0, 1.0], vec![1.0, 1.0]]), 0.0);
    }

    #[test]
    fn random_simplex_is_reproducible() {
        let mut a = crate::seeding::rng_from_seed(5);
        let mut b = crate::seeding::rng_from_seed(5);
        let s1 = random_simplex(3, 1.0, &mut a);
        let s2 = random_simplex(3, 1.0, &mut b);
        assert_eq!(s1, s2);
        assert!(!s1.is_degenerate());
    }
}
