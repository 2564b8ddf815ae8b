//! Convex polytopes in the plane and in space, with vertex normal cones.

use std::f64::consts::PI;

use super::UnitVector;
use crate::error::{Error, Result};

/// Relative tolerance for coplanarity and duplicate detection.
const GEOM_EPS: f64 = 1e-10;

/// The set of outer normals at which a vertex is the support point.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalCone {
    /// Angles `start < end` with `end - start < π`, counter-clockwise.
    Interval { start: f64, end: f64 },
    /// Convex spherical polygon; vertices are facet normals in
    /// counter-clockwise order seen from outside the sphere.
    SphericalPolygon { vertices: Vec<UnitVector> },
}

impl NormalCone {
    /// Spherical measure of the cone (arc length or solid angle).
    pub fn measure(&self) -> f64 {
        match self {
            NormalCone::Interval { start, end } => end - start,
            NormalCone::SphericalPolygon { vertices } => girard_area(vertices),
        }
    }

    pub fn contains(&self, u: &UnitVector) -> bool {
        match self {
            NormalCone::Interval { start, end } => {
                let s = u.as_slice();
                let mut theta = s[1].atan2(s[0]);
                while theta < *start {
                    theta += 2.0 * PI;
                }
                theta < *end
            }
            NormalCone::SphericalPolygon { vertices } => {
                let k = vertices.len();
                (0..k).all(|i| {
                    det3(
                        vertices[i].as_slice(),
                        vertices[(i + 1) % k].as_slice(),
                        u.as_slice(),
                    ) >= 0.0
                })
            }
        }
    }
}

/// Area of a convex spherical polygon by the angle-excess formula.
pub fn girard_area(vertices: &[UnitVector]) -> f64 {
    let k = vertices.len();
    let mut angle_sum = 0.0;
    for i in 0..k {
        let prev = vertices[(i + k - 1) % k].as_slice();
        let cur = vertices[i].as_slice();
        let next = vertices[(i + 1) % k].as_slice();
        // tangent directions at `cur` toward the neighbours
        let a = tangent_toward(cur, next);
        let b = tangent_toward(cur, prev);
        let cos = dot(&a, &b).clamp(-1.0, 1.0);
        angle_sum += cos.acos();
    }
    angle_sum - (k as f64 - 2.0) * PI
}

fn tangent_toward(at: &[f64], to: &[f64]) -> Vec<f64> {
    let d = dot(at, to);
    let v: Vec<f64> = to.iter().zip(at).map(|(t, a)| t - d * a).collect();
    let norm = dot(&v, &v).sqrt();
    v.iter().map(|x| x / norm).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: UnitVector,
    /// Distance from the origin to the facet's plane, `h_P(normal)`.
    pub offset: f64,
    /// Vertex indices, counter-clockwise seen from outside.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub vertices: [usize; 2],
    pub length: f64,
    /// Angle between the outer normals of the two adjacent facets.
    pub exterior_angle: f64,
}

#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    cones: Vec<NormalCone>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
}

impl Polytope {
    /// Convex hull of `points` (n = 2 or 3). Points that are not extreme are
    /// dropped. The origin must lie in the interior.
    pub fn from_vertices(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).unwrap_or(0);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidBody("vertices of mixed dimension".into()));
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBody("non-finite vertex coordinate".into()));
        }
        let poly = match dim {
            2 => Self::planar(points)?,
            3 => Self::spatial(points)?,
            _ => {
                return Err(Error::UnsupportedDimension {
                    dim,
                    reason: "polytopes are supported for n = 2 and n = 3",
                })
            }
        };
        if let Some(f) = poly.facets.iter().find(|f| !(f.offset > 0.0)) {
            return Err(Error::InvalidBody(format!(
                "origin is not interior: facet with normal {:?} has offset {}",
                f.normal.as_slice(),
                f.offset
            )));
        }
        Ok(poly)
    }

    /// Axis-parallel square `[-h, h]^2`.
    pub fn square(half_width: f64) -> Result<Self> {
        let h = half_width;
        Self::from_vertices(vec![vec![h, h], vec![-h, h], vec![-h, -h], vec![h, -h]])
    }

    /// Axis-parallel cube `[-h, h]^3`.
    pub fn cube(half_width: f64) -> Result<Self> {
        let h = half_width;
        let mut pts = Vec::new();
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                for sz in [-1.0, 1.0] {
                    pts.push(vec![sx * h, sy * h, sz * h]);
                }
            }
        }
        Self::from_vertices(pts)
    }

    fn planar(points: Vec<Vec<f64>>) -> Result<Self> {
        let hull = monotone_chain(&points);
        if hull.len() < 3 {
            return Err(Error::InvalidBody("polygon needs three non-collinear vertices".into()));
        }
        let k = hull.len();
        let mut facets = Vec::with_capacity(k);
        for i in 0..k {
            let a = &hull[i];
            let b = &hull[(i + 1) % k];
            let normal = UnitVector::new(vec![b[1] - a[1], a[0] - b[0]])?;
            let offset = normal.dot(a);
            facets.push(Facet {
                normal,
                offset,
                vertices: vec![i, (i + 1) % k],
            });
        }
        // vertex i sits between edge i-1 and edge i
        let cones = (0..k)
            .map(|i| {
                let prev = facets[(i + k - 1) % k].normal.as_slice();
                let next = facets[i].normal.as_slice();
                let start = prev[1].atan2(prev[0]);
                let mut end = next[1].atan2(next[0]);
                while end <= start {
                    end += 2.0 * PI;
                }
                NormalCone::Interval { start, end }
            })
            .collect();
        let edges = (0..k)
            .map(|i| {
                let j = (i + 1) % k;
                Edge {
                    vertices: [i, j],
                    length: dist(&hull[i], &hull[j]),
                    exterior_angle: 0.0,
                }
            })
            .collect();
        Ok(Self {
            dim: 2,
            vertices: hull,
            cones,
            facets,
            edges,
        })
    }

    fn spatial(points: Vec<Vec<f64>>) -> Result<Self> {
        let scale = points
            .iter()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .max(f64::MIN_POSITIVE);
        let tol = GEOM_EPS * scale;
        let pts = dedupe(points, tol);
        let np = pts.len();

        // supporting planes through point triples
        let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
        for i in 0..np {
            for j in i + 1..np {
                for k in j + 1..np {
                    let n = cross(&sub(&pts[j], &pts[i]), &sub(&pts[k], &pts[i]));
                    let len = dot(&n, &n).sqrt();
                    if len <= tol * scale {
                        continue;
                    }
                    let mut n: Vec<f64> = n.iter().map(|x| x / len).collect();
                    let mut b = dot(&n, &pts[i]);
                    let above = pts.iter().any(|p| dot(&n, p) - b > tol);
                    let below = pts.iter().any(|p| dot(&n, p) - b < -tol);
                    if above && below {
                        continue;
                    }
                    if above {
                        n.iter_mut().for_each(|x| *x = -*x);
                        b = -b;
                    }
                    if !planes
                        .iter()
                        .any(|(m, c)| dist(m, &n) < GEOM_EPS.sqrt() && (c - b).abs() < tol.sqrt())
                    {
                        planes.push((n, b));
                    }
                }
            }
        }
        if planes.len() < 4 {
            return Err(Error::InvalidBody("polyhedron is degenerate (no interior)".into()));
        }

        // facet polygons and the set of extreme vertices
        let mut keep = vec![false; np];
        let mut facet_loops = Vec::with_capacity(planes.len());
        for (n, b) in &planes {
            let on: Vec<usize> = (0..np).filter(|&i| (dot(n, &pts[i]) - b).abs() <= tol).collect();
            let basis = plane_basis(n);
            let local: Vec<Vec<f64>> = on
                .iter()
                .map(|&i| vec![dot(&basis[0], &pts[i]), dot(&basis[1], &pts[i])])
                .collect();
            let hull = monotone_chain_indices(&local);
            let ring: Vec<usize> = hull.into_iter().map(|h| on[h]).collect();
            for &v in &ring {
                keep[v] = true;
            }
            facet_loops.push(ring);
        }
        let remap: Vec<Option<usize>> = {
            let mut next = 0;
            keep.iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let vertices: Vec<Vec<f64>> = (0..np).filter(|&i| keep[i]).map(|i| pts[i].clone()).collect();
        let facets: Vec<Facet> = planes
            .into_iter()
            .zip(facet_loops)
            .map(|((n, b), ring)| Facet {
                normal: UnitVector::from_unit_unchecked(n),
                offset: b,
                vertices: ring.into_iter().map(|v| remap[v].expect("hull vertex")).collect(),
            })
            .collect();

        let mut edges: Vec<Edge> = Vec::new();
        let mut edge_faces: Vec<Vec<usize>> = Vec::new();
        for (fi, f) in facets.iter().enumerate() {
            let k = f.vertices.len();
            for e in 0..k {
                let (a, b) = (f.vertices[e], f.vertices[(e + 1) % k]);
                let key = [a.min(b), a.max(b)];
                match edges.iter().position(|ed| ed.vertices == key) {
                    Some(pos) => edge_faces[pos].push(fi),
                    None => {
                        edges.push(Edge {
                            vertices: key,
                            length: dist(&vertices[a], &vertices[b]),
                            exterior_angle: 0.0,
                        });
                        edge_faces.push(vec![fi]);
                    }
                }
            }
        }
        for (edge, faces) in edges.iter_mut().zip(&edge_faces) {
            if faces.len() != 2 {
                return Err(Error::InvalidBody("hull edge not shared by exactly two facets".into()));
            }
            let c = facets[faces[0]]
                .normal
                .dot(facets[faces[1]].normal.as_slice())
                .clamp(-1.0, 1.0);
            edge.exterior_angle = c.acos();
        }

        let cones = (0..vertices.len())
            .map(|v| {
                let normals: Vec<UnitVector> = facets
                    .iter()
                    .filter(|f| f.vertices.contains(&v))
                    .map(|f| f.normal.clone())
                    .collect();
                NormalCone::SphericalPolygon {
                    vertices: order_ccw(normals),
                }
            })
            .collect();

        Ok(Self {
            dim: 3,
            vertices,
            cones,
            facets,
            edges,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// `cones()[i]` is the normal cone at `vertices()[i]`.
    pub fn cones(&self) -> &[NormalCone] {
        &self.cones
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `h_P(u) = max_v <v, u>`.
    pub fn support(&self, u: &UnitVector) -> f64 {
        self.vertices
            .iter()
            .map(|v| u.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `min h_P`, the distance from the origin to the nearest facet plane.
    pub fn beta(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset)
            .fold(f64::INFINITY, f64::min)
    }

    /// n-dimensional volume.
    pub fn volume(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset * self.facet_measure(f))
            .sum::<f64>()
            / self.dim as f64
    }

    /// Perimeter (n = 2) or surface area (n = 3).
    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| self.facet_measure(f)).sum()
    }

    /// `½ Σ_e ℓ_e θ_e` (n = 3), the coefficient of `t²` in `vol(P + tB)`.
    pub fn edge_angle_sum(&self) -> f64 {
        0.5 * self
            .edges
            .iter()
            .map(|e| e.length * e.exterior_angle)
            .sum::<f64>()
    }

    /// `vol(P + tB^n_2)` by the polytope Steiner polynomial.
    pub fn steiner_volume(&self, t: f64) -> f64 {
        match self.dim {
            2 => self.volume() + self.surface_area() * t + PI * t * t,
            _ => {
                self.volume()
                    + self.surface_area() * t
                    + self.edge_angle_sum() * t * t
                    + 4.0 * PI / 3.0 * t * t * t
            }
        }
    }

    fn facet_measure(&self, f: &Facet) -> f64 {
        let vs: Vec<&Vec<f64>> = f.vertices.iter().map(|&i| &self.vertices[i]).collect();
        if self.dim == 2 {
            return dist(vs[0], vs[1]);
        }
        // fan area of a planar polygon
        let mut acc = [0.0; 3];
        for i in 1..vs.len() - 1 {
            let c = cross(&sub(vs[i], vs[0]), &sub(vs[i + 1], vs[0]));
            for k in 0..3 {
                acc[k] += c[k];
            }
        }
        0.5 * dot(&acc, f.normal.as_slice()).abs()
    }
}

fn order_ccw(normals: Vec<UnitVector>) -> Vec<UnitVector> {
    let mut c = vec![0.0; 3];
    for n in &normals {
        for (ck, x) in c.iter_mut().zip(n.as_slice()) {
            *ck += x;
        }
    }
    let len = dot(&c, &c).sqrt();
    let c: Vec<f64> = c.iter().map(|x| x / len).collect();
    let basis = plane_basis(&c);
    let mut keyed: Vec<(f64, UnitVector)> = normals
        .into_iter()
        .map(|n| {
            let x = dot(&basis[0], n.as_slice());
            let y = dot(&basis[1], n.as_slice());
            (y.atan2(x), n)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut ordered: Vec<UnitVector> = keyed.into_iter().map(|(_, n)| n).collect();
    if det3(&c, ordered[0].as_slice(), ordered[1].as_slice()) < 0.0 {
        ordered.reverse();
    }
    ordered
}

/// Orthonormal `(e1, e2)` with `e1 × e2 = n`.
fn plane_basis(n: &[f64]) -> [Vec<f64>; 2] {
    let pick = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = cross(&pick, n);
    let l = dot(&e1, &e1).sqrt();
    let e1: Vec<f64> = e1.iter().map(|x| x / l).collect();
    let e2 = cross(n, &e1);
    [e1, e2]
}

fn monotone_chain(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    monotone_chain_indices(points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect()
}

/// Counter-clockwise convex hull (Andrew's algorithm), collinear points dropped.
fn monotone_chain_indices(points: &[Vec<f64>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let scale = points
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let eps = GEOM_EPS * scale * scale;
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn dedupe(points: Vec<Vec<f64>>, tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| dist(q, &p) <= tol) {
            out.push(p);
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    let d = sub(a, b);
    dot(&d, &d).sqrt()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn det3(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    dot(a, &cross(b, c))
}
