//! Rational polytopes with both vertex and facet descriptions.
//!
//! A polytope is stored with lex-sorted vertices, an irredundant facet
//! list (inequalities valid on the affine hull) and the affine-hull
//! equations. Lower-dimensional polytopes are handled by reducing to
//! the saturated lattice of their direction space, so facet normals
//! and normalized volumes are always taken with respect to the lattice
//! the polytope actually spans.

use crate::dd::{enum_polyhedron, PolyEnum};
use crate::matrix::{coords_in_span, dual_basis, orth_complement, saturate};
use crate::num::*;
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `<x, normal> >= offset` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: LatVec,
    pub offset: Rat,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    /// ambient dimension
    pub dim: usize,
    /// affine dimension
    pub adim: usize,
    /// lex-sorted, irredundant
    pub vertices: Vec<RatVec>,
    /// facets, as inequalities on the affine hull
    pub halfspaces: Vec<HalfSpace>,
    /// affine hull: `<x, a> = b`
    pub equations: Vec<(LatVec, Rat)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HrepError {
    Empty,
    Unbounded,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}
impl Eq for Polytope {}

impl Polytope {
    pub fn from_vertices(points: &[RatVec], dim: usize) -> Polytope {
        assert!(!points.is_empty(), "a polytope needs at least one point");
        for p in points {
            assert_eq!(p.len(), dim);
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        // integer spanning set of the direction space
        let base = pts[0].clone();
        let dirs: Vec<LatVec> = pts[1..]
            .iter()
            .map(|p| primitive_from_rat(&sub_vec(p, &base)))
            .collect();
        let dirs: Vec<LatVec> = dirs.into_iter().filter(|d| !is_zero_vec_int(d)).collect();
        let basis = saturate(&dirs, dim);
        let adim = basis.len();

        let mut equations: Vec<(LatVec, Rat)> = orth_complement(&basis, dim)
            .into_iter()
            .map(|a| {
                let b = dot_rat_lat(&base, &a);
                (a, b)
            })
            .collect();
        equations.sort();

        if adim == 0 {
            return Polytope {
                dim,
                adim,
                vertices: pts,
                halfspaces: Vec::new(),
                equations,
            };
        }

        if adim == dim {
            let (vertices, halfspaces) = full_dim_hull(&pts, dim);
            return Polytope {
                dim,
                adim,
                vertices,
                halfspaces,
                equations,
            };
        }

        // lower-dimensional: work in lattice coordinates of the hull
        let coords: Vec<RatVec> = pts
            .iter()
            .map(|p| coords_in_span(&basis, &sub_vec(p, &base)).expect("point in hull"))
            .collect();
        let (inner_vs, inner_hs) = full_dim_hull(&coords, adim);
        let duals = dual_basis(&basis, dim);
        let lift = |v: &RatVec| -> RatVec {
            let mut x = base.clone();
            for (c, b) in v.iter().zip(&basis) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += c * Rat::from(bi.clone());
                }
            }
            x
        };
        let mut vertices: Vec<RatVec> = inner_vs.iter().map(lift).collect();
        vertices.sort();
        let mut halfspaces: Vec<HalfSpace> = inner_hs
            .iter()
            .map(|h| {
                // lift mu in the basis-dual so <lift(y), nu> recovers <y, mu>
                let mut nu = vec![Int::zero(); dim];
                for (m, w) in h.normal.iter().zip(&duals) {
                    for (ni, wi) in nu.iter_mut().zip(w) {
                        *ni += m * wi;
                    }
                }
                let offset = &h.offset + dot_rat_lat(&base, &nu);
                let g = nu.iter().fold(Int::zero(), |g, x| g.gcd(x));
                let nu: LatVec = nu.iter().map(|x| x / &g).collect();
                let offset = offset / Rat::from(g);
                HalfSpace { normal: nu, offset }
            })
            .collect();
        halfspaces.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        Polytope {
            dim,
            adim,
            vertices,
            halfspaces,
            equations,
        }
    }

    pub fn from_halfspaces(constraints: &[(LatVec, Rat)], dim: usize) -> Result<Polytope, HrepError> {
        match enum_polyhedron(constraints, dim) {
            PolyEnum::Empty => Err(HrepError::Empty),
            PolyEnum::Pointed { vertices, rays } => {
                if rays.is_empty() {
                    Ok(Polytope::from_vertices(&vertices, dim))
                } else {
                    Err(HrepError::Unbounded)
                }
            }
            PolyEnum::NonPointed => {
                // feasibility only depends on the span of the normals
                let normals: Vec<LatVec> = constraints.iter().map(|(n, _)| n.clone()).collect();
                let basis = saturate(&normals, dim);
                if basis.is_empty() {
                    // no effective constraints: feasible iff offsets allow 0
                    let feasible = constraints.iter().all(|(_, d)| !d.is_positive());
                    return Err(if feasible { HrepError::Unbounded } else { HrepError::Empty });
                }
                let reduced: Vec<(LatVec, Rat)> = constraints
                    .iter()
                    .map(|(nu, d)| {
                        let nu2: LatVec = basis.iter().map(|b| dot_int(b, nu)).collect();
                        (nu2, d.clone())
                    })
                    .collect();
                match Polytope::from_halfspaces(&reduced, basis.len()) {
                    Err(HrepError::Empty) => Err(HrepError::Empty),
                    _ => Err(HrepError::Unbounded),
                }
            }
        }
    }

    pub fn is_full_dim(&self) -> bool {
        self.adim == self.dim
    }

    /// `ord(nu)`: minimum of `<x, nu>` over the polytope.
    pub fn support_value(&self, nu: &[Int]) -> Rat {
        self.vertices
            .iter()
            .map(|v| dot_rat_lat(v, nu))
            .min()
            .expect("nonempty")
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations
            .iter()
            .all(|(a, b)| dot_rat_lat(x, a) == *b)
            && self
                .halfspaces
                .iter()
                .all(|h| dot_rat_lat(x, &h.normal) >= h.offset)
    }

    pub fn contains_poly(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    pub fn translate(&self, t: &[Rat]) -> Polytope {
        let pts: Vec<RatVec> = self.vertices.iter().map(|v| add_vec(v, t)).collect();
        Polytope::from_vertices(&pts, self.dim)
    }

    pub fn dilate(&self, k: &Rat) -> Polytope {
        assert!(k.is_positive());
        let pts: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        Polytope::from_vertices(&pts, self.dim)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        assert_eq!(self.dim, other.dim);
        let pts: Vec<RatVec> = self
            .vertices
            .iter()
            .cartesian_product(&other.vertices)
            .map(|(a, b)| add_vec(a, b))
            .collect();
        Polytope::from_vertices(&pts, self.dim)
    }

    /// Image under the integer linear map whose rows are given.
    pub fn project(&self, rows: &[LatVec]) -> Polytope {
        let pts: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| rows.iter().map(|r| dot_rat_lat(v, r)).collect())
            .collect();
        Polytope::from_vertices(&pts, rows.len())
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// All lattice points, in lex order.
    pub fn lattice_points(&self) -> Vec<LatVec> {
        let mut ranges: Vec<Vec<Int>> = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let lo = self
                .vertices
                .iter()
                .map(|v| v[j].ceil().to_integer())
                .min()
                .unwrap();
            let hi = self
                .vertices
                .iter()
                .map(|v| v[j].floor().to_integer())
                .max()
                .unwrap();
            let mut col = Vec::new();
            let mut x = lo.clone();
            while x <= hi {
                col.push(x.clone());
                x += 1;
            }
            ranges.push(col);
        }
        if ranges.iter().any(|r| r.is_empty()) {
            return Vec::new();
        }
        // integer membership test: <x, n> >= p/q becomes q <x, n> >= p
        let scale = |n: &LatVec, off: &Rat| (n.clone(), off.numer().clone(), off.denom().clone());
        let ineqs: Vec<(LatVec, Int, Int)> = self
            .halfspaces
            .iter()
            .map(|h| scale(&h.normal, &h.offset))
            .collect();
        let eqs: Vec<(LatVec, Int, Int)> = self
            .equations
            .iter()
            .map(|(a, b)| scale(a, b))
            .collect();
        ranges
            .iter()
            .map(|r| r.iter().cloned())
            .multi_cartesian_product()
            .filter(|x| {
                eqs.iter().all(|(a, p, q)| dot_int(a, x) * q == *p)
                    && ineqs.iter().all(|(a, p, q)| dot_int(a, x) * q >= *p)
            })
            .collect()
    }

    /// Vertex indices lying on facet `i`.
    pub fn facet_vertex_indices(&self, i: usize) -> Vec<usize> {
        let h = &self.halfspaces[i];
        (0..self.vertices.len())
            .filter(|&k| dot_rat_lat(&self.vertices[k], &h.normal) == h.offset)
            .collect()
    }

    pub fn facet(&self, i: usize) -> Polytope {
        let pts: Vec<RatVec> = self
            .facet_vertex_indices(i)
            .into_iter()
            .map(|k| self.vertices[k].clone())
            .collect();
        Polytope::from_vertices(&pts, self.dim)
    }

    /// Normalized volume: `adim!` times the Euclidean volume measured
    /// in the saturated lattice of the direction space.
    pub fn normalized_volume(&self) -> Rat {
        if self.adim == 0 {
            return Rat::from(int(1));
        }
        if self.is_full_dim() {
            return self.full_dim_normalized_volume();
        }
        // remap into lattice coordinates of the hull, then recurse
        let base = &self.vertices[0];
        let dirs: Vec<LatVec> = self.vertices[1..]
            .iter()
            .map(|p| primitive_from_rat(&sub_vec(p, base)))
            .collect();
        let basis = saturate(&dirs, self.dim);
        let coords: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|p| coords_in_span(&basis, &sub_vec(p, base)).expect("point in hull"))
            .collect();
        Polytope::from_vertices(&coords, self.adim).normalized_volume()
    }

    fn full_dim_normalized_volume(&self) -> Rat {
        if self.adim == 1 {
            // a segment [a, b] in R^1 after reduction
            let a = self.support_value(&lat(&[1]));
            let b = -self.support_value(&lat(&[-1]));
            return b - a;
        }
        let apex = &self.vertices[0];
        let mut total = Rat::zero();
        for i in 0..self.halfspaces.len() {
            let h = &self.halfspaces[i];
            let slack = dot_rat_lat(apex, &h.normal) - &h.offset;
            if slack.is_zero() {
                continue;
            }
            // primitive normal, so `slack` is the lattice height
            total += slack * self.facet(i).normalized_volume();
        }
        total
    }
}

/// Facet enumeration for a full-dimensional point set, via the polar
/// dual about the vertex centroid.
fn full_dim_hull(pts: &[RatVec], dim: usize) -> (Vec<RatVec>, Vec<HalfSpace>) {
    let n = Rat::from(int(pts.len() as i64));
    let mut centroid = vec![Rat::zero(); dim];
    for p in pts {
        for (c, x) in centroid.iter_mut().zip(p) {
            *c += x;
        }
    }
    for c in centroid.iter_mut() {
        *c /= &n;
    }
    // dual of conv(pts - c): {y : <y, p - c> <= 1}, bounded because the
    // centroid is interior
    let mut constraints: Vec<(LatVec, Rat)> = Vec::with_capacity(pts.len());
    for p in pts {
        let w = sub_vec(p, &centroid);
        let l: Int = w.iter().fold(int(1), |l, x| l.lcm(x.denom()));
        let u: LatVec = w.iter().map(|x| (x * Rat::from(l.clone())).to_integer()).collect();
        constraints.push((u.iter().map(|x| -x).collect(), -Rat::from(l)));
    }
    let PolyEnum::Pointed { vertices: dual_vs, rays } = enum_polyhedron(&constraints, dim)
    else {
        panic!("polar dual of a full-dimensional hull is a polytope");
    };
    assert!(rays.is_empty(), "polar dual must be bounded");

    let mut halfspaces: Vec<HalfSpace> = dual_vs
        .iter()
        .map(|y| {
            let neg: RatVec = y.iter().map(|x| -x).collect();
            let normal = primitive_from_rat(&neg);
            let offset = pts.iter().map(|p| dot_rat_lat(p, &normal)).min().unwrap();
            HalfSpace { normal, offset }
        })
        .collect();
    halfspaces.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));

    // keep only points tight on >= dim facets: those are the vertices
    let vertices: Vec<RatVec> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<&HalfSpace> = halfspaces
                .iter()
                .filter(|h| dot_rat_lat(p, &h.normal) == h.offset)
                .collect();
            let rows: Vec<LatVec> = tight.iter().map(|h| h.normal.clone()).collect();
            crate::matrix::lat_rank(&rows) == dim
        })
        .cloned()
        .collect();
    (vertices, halfspaces)
}

fn is_zero_vec_int(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn dot_rat_lat(x: &[Rat], nu: &[Int]) -> Rat {
    pair(x, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{lat, point, rat, ratio};

    fn cube() -> Polytope {
        let vs: Vec<RatVec> = (0..8)
            .map(|i| point(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]))
            .collect();
        Polytope::from_vertices(&vs, 3)
    }

    #[test]
    fn cube_facets() {
        let c = cube();
        assert_eq!(c.adim, 3);
        assert_eq!(c.vertices.len(), 8);
        assert_eq!(c.halfspaces.len(), 6);
        assert!(c.equations.is_empty());
        assert_eq!(c.support_value(&lat(&[1, 1, 1])), rat(0));
        assert_eq!(c.support_value(&lat(&[-1, 0, 0])), rat(-1));
    }

    #[test]
    fn interior_points_dropped_from_vertex_list() {
        let mut vs: Vec<RatVec> = vec![point(&[0, 0]), point(&[2, 0]), point(&[0, 2])];
        vs.push(point(&[1, 1])); // on an edge
        vs.push(vec![ratio(1, 2), ratio(1, 2)]); // interior
        let p = Polytope::from_vertices(&vs, 2);
        assert_eq!(p.vertices, vec![point(&[0, 0]), point(&[0, 2]), point(&[2, 0])]);
        assert_eq!(p.halfspaces.len(), 3);
    }

    #[test]
    fn hrep_roundtrip() {
        let c = cube();
        let cs: Vec<(LatVec, Rat)> = c
            .halfspaces
            .iter()
            .map(|h| (h.normal.clone(), h.offset.clone()))
            .collect();
        let c2 = Polytope::from_halfspaces(&cs, 3).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn hrep_empty_and_unbounded() {
        let empty = vec![(lat(&[1]), rat(1)), (lat(&[-1]), rat(0))];
        assert_eq!(Polytope::from_halfspaces(&empty, 1), Err(HrepError::Empty));
        let unb = vec![(lat(&[1, 0]), rat(0)), (lat(&[0, 1]), rat(0))];
        assert_eq!(Polytope::from_halfspaces(&unb, 2), Err(HrepError::Unbounded));
        // nonzero lineality, feasible
        let line = vec![(lat(&[1, 0]), rat(0)), (lat(&[-1, 0]), rat(-2))];
        assert_eq!(Polytope::from_halfspaces(&line, 2), Err(HrepError::Unbounded));
        // nonzero lineality, infeasible
        let line2 = vec![(lat(&[1, 0]), rat(1)), (lat(&[-1, 0]), rat(0))];
        assert_eq!(Polytope::from_halfspaces(&line2, 2), Err(HrepError::Empty));
    }

    #[test]
    fn lower_dimensional_segment() {
        let p = Polytope::from_vertices(&[point(&[0, 0, 0]), point(&[2, 2, 0])], 3);
        assert_eq!(p.adim, 1);
        assert_eq!(p.equations.len(), 2);
        assert_eq!(p.halfspaces.len(), 2);
        assert!(p.contains(&point(&[1, 1, 0])));
        assert!(!p.contains(&point(&[1, 0, 0])));
        assert_eq!(p.normalized_volume(), rat(2)); // (2,2,0) = 2 * (1,1,0)
    }

    #[test]
    fn point_polytope() {
        let p = Polytope::from_vertices(&[point(&[3, -1])], 2);
        assert_eq!(p.adim, 0);
        assert_eq!(p.normalized_volume(), rat(1));
        assert!(p.contains(&point(&[3, -1])));
        assert!(!p.contains(&point(&[3, 0])));
    }

    #[test]
    fn lattice_point_enumeration() {
        let p = Polytope::from_vertices(
            &[point(&[0, 0]), point(&[2, 0]), point(&[0, 2])],
            2,
        );
        let pts = p.lattice_points();
        assert_eq!(
            pts,
            vec![
                lat(&[0, 0]),
                lat(&[0, 1]),
                lat(&[0, 2]),
                lat(&[1, 0]),
                lat(&[1, 1]),
                lat(&[2, 0]),
            ]
        );
    }

    #[test]
    fn volumes() {
        assert_eq!(cube().normalized_volume(), rat(6));
        let simplex = Polytope::from_vertices(
            &[point(&[0, 0, 0]), point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])],
            3,
        );
        assert_eq!(simplex.normalized_volume(), rat(1));
        let seg = Polytope::from_vertices(&[vec![rat(0)], vec![ratio(7, 2)]], 1);
        assert_eq!(seg.normalized_volume(), ratio(7, 2));
    }

    #[test]
    fn minkowski_and_dilate() {
        let sq = Polytope::from_vertices(
            &[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), point(&[1, 1])],
            2,
        );
        let two = sq.dilate(&rat(2));
        assert_eq!(two.normalized_volume(), rat(8));
        let sum = sq.minkowski_sum(&sq);
        assert_eq!(sum, two);
        let t = sq.translate(&point(&[5, -1]));
        assert_eq!(t.vertices[0], point(&[5, -1]));
    }

    #[test]
    fn rational_triangle_facets() {
        // vertices (-1,0), (0,3/2), (4,-5/2)
        let p = Polytope::from_vertices(
            &[
                point(&[-1, 0]),
                vec![rat(0), ratio(3, 2)],
                vec![rat(4), ratio(-5, 2)],
            ],
            2,
        );
        assert_eq!(p.adim, 2);
        assert_eq!(p.halfspaces.len(), 3);
        for h in &p.halfspaces {
            assert_eq!(p.support_value(&h.normal), h.offset);
        }
    }

    #[test]
    fn projection() {
        let c = cube();
        let q = c.project(&[lat(&[1, 0, 0]), lat(&[0, 1, 0])]);
        assert_eq!(q.adim, 2);
        assert_eq!(q.vertices.len(), 4);
    }
}
