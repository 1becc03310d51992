use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{Coeff, LaurentPoly};

/// Convex lattice polytope in dimension 1 or 2.
///
/// In dimension 2 the vertices are extreme points listed counterclockwise from the
/// lexicographic minimum; in dimension 1 they are `[min, max]` (or one point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

/// Outcome of [`strict_containment`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub strict: bool,
    /// An outer normal `n` of `outer` with `max_inner ⟨n, ·⟩ ≥ max_outer ⟨n, ·⟩`.
    pub witness: Option<Vec<i64>>,
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; collinear points are dropped.
fn hull2(mut pts: Vec<[i64; 2]>) -> Vec<[i64; 2]> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Primitive integer vector in the direction of `v` (nonzero).
pub(crate) fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = gcd(v[0], v[1]).max(1);
    [v[0] / g, v[1] / g]
}

/// Sort key for edge directions: angle in `(−π/2, 3π/2]`, matching a counterclockwise
/// walk from the lexicographically smallest vertex.
fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    let half = |v: [i64; 2]| u8::from(!(v[0] > 0 || (v[0] == 0 && v[1] > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

impl LatticePolytope {
    /// Convex hull of lattice points.
    pub fn hull(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("convex hull of an empty set".into()));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Structural(format!("points must have dimension {dim}")));
        }
        let vertices = match dim {
            1 => {
                let lo = points.iter().map(|p| p[0]).min().unwrap();
                let hi = points.iter().map(|p| p[0]).max().unwrap();
                if lo == hi {
                    vec![vec![lo]]
                } else {
                    vec![vec![lo], vec![hi]]
                }
            }
            2 => hull2(points.iter().map(|p| [p[0], p[1]]).collect()).into_iter().map(|p| p.to_vec()).collect(),
            d => return Err(Error::UnsupportedDimension(d)),
        };
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    fn v2(&self) -> Vec<[i64; 2]> {
        self.vertices.iter().map(|v| [v[0], v[1]]).collect()
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// `max ⟨n, v⟩` over the polytope.
    pub fn support(&self, n: &[i64]) -> i64 {
        self.vertices.iter().map(|v| v.iter().zip(n).map(|(a, b)| a * b).sum()).max().unwrap()
    }

    /// Edge vectors in counterclockwise order (dimension 2; a segment has two opposite edges).
    pub fn edges(&self) -> Vec<[i64; 2]> {
        let v = self.v2();
        if v.len() < 2 {
            return vec![];
        }
        (0..v.len()).map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            [b[0] - a[0], b[1] - a[1]]
        }).collect()
    }

    /// Primitive inward normals of the edges (dimension 2), i.e. the rays of the normal fan.
    pub fn inner_normals(&self) -> Vec<[i64; 2]> {
        self.edges().into_iter().map(|e| primitive([-e[1], e[0]])).collect()
    }

    /// `min ⟨β, ·⟩` over the polytope.
    pub fn face_value(&self, beta: &[i64]) -> i64 {
        -self.support(&beta.iter().map(|b| -b).collect::<Vec<_>>())
    }
}

/// Convex hull of the exponent vectors of `p`.
pub fn newton_polytope<C: Coeff>(p: &LaurentPoly<C>) -> Result<LatticePolytope> {
    if p.is_zero() {
        return Err(Error::Domain("Newton polytope of the zero polynomial".into()));
    }
    let pts: Vec<Vec<i64>> = p.terms().map(|(e, _)| e.iter().map(|&k| k as i64).collect()).collect();
    LatticePolytope::hull(p.nvars(), &pts)
}

/// Minkowski sum; in dimension 2 by merging the edge sequences by angle.
pub fn minkowski_sum(a: &LatticePolytope, b: &LatticePolytope) -> Result<LatticePolytope> {
    if a.dim != b.dim {
        return Err(Error::Structural(format!("dimension mismatch: {} vs {}", a.dim, b.dim)));
    }
    if a.dim == 1 {
        let lo = a.vertices[0][0] + b.vertices[0][0];
        let hi = a.vertices.last().unwrap()[0] + b.vertices.last().unwrap()[0];
        return LatticePolytope::hull(1, &[vec![lo], vec![hi]]);
    }
    let (va, vb) = (a.v2(), b.v2());
    let mut edges: Vec<[i64; 2]> = a.edges();
    edges.extend(b.edges());
    edges.sort_by(|x, y| angle_cmp(*x, *y));
    let mut cur = [va[0][0] + vb[0][0], va[0][1] + vb[0][1]];
    let mut pts = vec![cur.to_vec()];
    for e in edges {
        cur = [cur[0] + e[0], cur[1] + e[1]];
        pts.push(cur.to_vec());
    }
    LatticePolytope::hull(2, &pts)
}

/// Whether `inner` lies in the interior of `outer`, tested against the outer facet normals.
pub fn strict_containment(inner: &LatticePolytope, outer: &LatticePolytope) -> Result<Containment> {
    if inner.dim != outer.dim {
        return Err(Error::Structural(format!("dimension mismatch: {} vs {}", inner.dim, outer.dim)));
    }
    let normals: Vec<Vec<i64>> = match (outer.dim, outer.affine_dim()) {
        (1, 0) => return Ok(Containment { strict: false, witness: Some(vec![1]) }),
        (1, _) => vec![vec![-1], vec![1]],
        (_, 2) => outer.inner_normals().into_iter().map(|n| vec![-n[0], -n[1]]).collect(),
        // a flat polytope has empty interior; its affine hull's normal witnesses that
        (_, 1) => {
            let e = outer.edges()[0];
            return Ok(Containment { strict: false, witness: Some(primitive([-e[1], e[0]]).to_vec()) });
        }
        _ => return Ok(Containment { strict: false, witness: Some(vec![1, 0]) }),
    };
    for n in normals {
        if inner.support(&n) >= outer.support(&n) {
            return Ok(Containment { strict: false, witness: Some(n) });
        }
    }
    Ok(Containment { strict: true, witness: None })
}
