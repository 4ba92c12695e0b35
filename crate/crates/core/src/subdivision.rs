//! Barycentric subdivision levels and cone partitions.
//!
//! Splitting an m-simplex at its barycenter yields m+1 subsimplices of
//! equal volume; applying the split to every member of a level yields the
//! next level. Level p of a root m-simplex holds (m+1)^p members. The
//! average of a function over the member barycenters is nondecreasing in p
//! for convex functions and converges to the mean value over the root.

use serde::Serialize;

use crate::convexfns::TestFunction;
use crate::error::{Error, Result};
use crate::geometry::{Simplex, Vector};
use crate::util::pairwise_sum;

/// Member-count cap for a single level; (m+1)^p grows fast.
pub const LEVEL_CAP: usize = 1_000_000;

/// One level of the subdivision sequence: all members have the intrinsic
/// dimension of the root and equal volume, and together they cover it.
#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionLevel {
    level: u32,
    simplices: Vec<Simplex>,
}

impl SubdivisionLevel {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn members(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn member_count(&self) -> usize {
        self.simplices.len()
    }

    /// The next level: every member split at its barycenter, children of
    /// member i preceding children of member i+1, children within a split
    /// ordered by replaced-vertex index.
    pub fn refine(&self) -> Result<SubdivisionLevel> {
        let m = self.simplices[0].dim_intrinsic();
        if m == 0 {
            // A point splits to itself.
            return Ok(SubdivisionLevel {
                level: self.level + 1,
                simplices: self.simplices.clone(),
            });
        }
        let requested = self.simplices.len() as u128 * (m + 1) as u128;
        if requested > LEVEL_CAP as u128 {
            return Err(Error::LevelCapExceeded {
                requested,
                cap: LEVEL_CAP,
            });
        }
        let mut simplices = Vec::with_capacity(requested as usize);
        for member in &self.simplices {
            simplices.extend(barycentric_split(member)?);
        }
        Ok(SubdivisionLevel {
            level: self.level + 1,
            simplices,
        })
    }
}

/// Split an m-simplex (m ≥ 1) into the m+1 equal-volume subsimplices
/// obtained by replacing each vertex in turn with the barycenter.
pub fn barycentric_split(s: &Simplex) -> Result<Vec<Simplex>> {
    let m = s.dim_intrinsic();
    if m == 0 {
        return Err(Error::InvalidArgument {
            reason: "cannot split a 0-simplex".into(),
        });
    }
    // Rejects degenerate input.
    s.volume()?;
    let b = s.barycenter();
    let mut children = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut vertices: Vec<Vector> = s.vertices().to_vec();
        vertices[i] = b.clone();
        children.push(Simplex::new(vertices)?);
    }
    Ok(children)
}

/// Level p of the subdivision sequence over `root`: level 0 is {root},
/// level p+1 is the refinement of level p. For a 0-simplex root every
/// level is {root}.
pub fn dr_level(root: &Simplex, p: u32) -> Result<SubdivisionLevel> {
    let m = root.dim_intrinsic();
    if m > 0 {
        let requested = (m as u128 + 1).pow(p);
        if requested > LEVEL_CAP as u128 {
            return Err(Error::LevelCapExceeded {
                requested,
                cap: LEVEL_CAP,
            });
        }
        root.volume()?;
    }
    let mut level = SubdivisionLevel {
        level: 0,
        simplices: vec![root.clone()],
    };
    for _ in 0..p {
        level = level.refine()?;
    }
    Ok(level)
}

/// Arithmetic mean of f over the member barycenters.
pub fn barycenter_average(f: &TestFunction, level: &SubdivisionLevel) -> f64 {
    let values: Vec<f64> = level
        .members()
        .iter()
        .map(|s| f.eval(s.barycenter().as_slice()))
        .collect();
    pairwise_sum(&values) / values.len() as f64
}

/// The cone conv(base_face ∪ {apex}): base face vertices followed by the
/// apex. Errors when the apex lies in the affine hull of the face.
pub fn cone_over(base_face: &Simplex, apex: &Vector) -> Result<Simplex> {
    if apex.dim() != base_face.dim_ambient() {
        return Err(Error::DimensionMismatch {
            left: base_face.dim_ambient(),
            right: apex.dim(),
        });
    }
    let mut vertices = base_face.vertices().to_vec();
    vertices.push(apex.clone());
    let cone = Simplex::new(vertices)?;
    // Degenerate cone means the apex adds no affine dimension.
    cone.volume()?;
    Ok(cone)
}
