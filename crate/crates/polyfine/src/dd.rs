//! Double description for pointed cones, and vertex/ray enumeration of
//! polyhedra via homogenization.
//!
//! The incremental step decides adjacency of extreme rays with the
//! combinatorial test: rays `r`, `s` are adjacent iff no third ray is
//! tight on every constraint tight at both. Tight sets are kept as bit
//! sets, so the test costs a few word operations per candidate pair
//! even with thousands of constraints. All arithmetic is exact and the
//! output is sorted, so the same input always yields the same ray and
//! vertex lists.

use crate::matrix::{lat_rank, right_kernel, solve_rat, IntMatrix};
use crate::num::*;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Extreme rays of the pointed cone `{x : <normals_i, x> >= 0}`,
/// primitive and lex-sorted. Returns `None` when the cone has a
/// nonzero lineality space (i.e. the normals do not span).
pub fn dd_cone(normals: &[LatVec], n: usize) -> Option<Vec<LatVec>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let mat = IntMatrix::new(normals.to_vec(), n);
    if right_kernel(&mat).nrows() > 0 {
        return None;
    }
    let m = normals.len();

    // greedy full-rank initial subset
    let mut init: Vec<usize> = Vec::new();
    for i in 0..m {
        let mut rows: Vec<LatVec> = init.iter().map(|&j| normals[j].clone()).collect();
        rows.push(normals[i].clone());
        if lat_rank(&rows) > init.len() {
            init.push(i);
        }
        if init.len() == n {
            break;
        }
    }
    debug_assert_eq!(init.len(), n);

    // rays of {Bx >= 0} with B invertible: columns of B^-1
    let b: Vec<RatVec> = init.iter().map(|&i| lat_to_rat(&normals[i])).collect();
    let mut rays: Vec<LatVec> = Vec::new();
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = solve_rat(&b, &e).expect("initial basis is invertible");
        rays.push(primitive_from_rat(&col));
    }

    // tight sets w.r.t. processed constraints only
    let mut done: Vec<usize> = init.clone();
    let mut tight: Vec<BitSet> = rays
        .iter()
        .map(|r| {
            let mut t = BitSet::new(m);
            for &i in &done {
                if dot_int(&normals[i], r).is_zero() {
                    t.set(i);
                }
            }
            t
        })
        .collect();

    for k in 0..m {
        if init.contains(&k) {
            continue;
        }
        let nu = &normals[k];
        let dots: Vec<Int> = rays.iter().map(|r| dot_int(nu, r)).collect();
        if dots.iter().all(|d| !d.is_negative()) {
            done.push(k);
            for (t, d) in tight.iter_mut().zip(&dots) {
                if d.is_zero() {
                    t.set(k);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_negative()).collect();

        let mut new_rays: Vec<LatVec> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = tight[p].and(&tight[q]);
                // r and s are adjacent iff their common tight set is
                // maximal among all rays
                let blocked = (0..rays.len())
                    .any(|t| t != p && t != q && common.is_subset_of(&tight[t]));
                if blocked {
                    continue;
                }
                // positive combination landing on the hyperplane of nu
                let mut r = scale_lat(&rays[q], &dots[p]);
                let neg = scale_lat(&rays[p], &dots[q]);
                for (a, b) in r.iter_mut().zip(&neg) {
                    *a -= b;
                }
                let r = primitive(&r);
                if !new_rays.contains(&r) {
                    new_rays.push(r);
                }
            }
        }

        let keep: Vec<usize> = (0..rays.len()).filter(|&i| !dots[i].is_negative()).collect();
        rays = keep.iter().map(|&i| rays[i].clone()).collect();
        tight = keep.iter().map(|&i| tight[i].clone()).collect();
        done.push(k);
        for (t, r) in tight.iter_mut().zip(&rays) {
            if dot_int(nu, r).is_zero() {
                t.set(k);
            }
        }
        for r in new_rays {
            let mut t = BitSet::new(m);
            for &i in &done {
                if dot_int(&normals[i], &r).is_zero() {
                    t.set(i);
                }
            }
            rays.push(r);
            tight.push(t);
        }
    }
    rays.sort();
    Some(rays)
}

fn scale_lat(v: &[Int], c: &Int) -> LatVec {
    v.iter().map(|x| x * c).collect()
}

/// Vertices and recession rays of `{x : <x, normal_i> >= offset_i}`.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyEnum {
    Empty,
    /// nonzero lineality space; the caller decides how to proceed
    NonPointed,
    Pointed {
        vertices: Vec<RatVec>,
        rays: Vec<LatVec>,
    },
}

pub fn enum_polyhedron(constraints: &[(LatVec, Rat)], n: usize) -> PolyEnum {
    // homogenize: <x, nu> >= delta becomes <(x,t), (q nu, -p)> >= 0
    // with delta = p/q, plus the extra facet t >= 0
    let mut hom: Vec<LatVec> = Vec::with_capacity(constraints.len() + 1);
    for (nu, delta) in constraints {
        let q = delta.denom();
        let mut row: LatVec = nu.iter().map(|x| x * q).collect();
        row.push(-delta.numer().clone());
        hom.push(row);
    }
    let mut t_row = vec![Int::zero(); n];
    t_row.push(Int::one());
    hom.push(t_row);

    let Some(hrays) = dd_cone(&hom, n + 1) else {
        return PolyEnum::NonPointed;
    };
    let mut vertices: Vec<RatVec> = Vec::new();
    let mut rays: Vec<LatVec> = Vec::new();
    for r in hrays {
        let t = &r[n];
        if t.is_zero() {
            rays.push(r[..n].to_vec());
        } else {
            let tq = Rat::from(t.clone());
            vertices.push(r[..n].iter().map(|x| Rat::from(x.clone()) / &tq).collect());
        }
    }
    if vertices.is_empty() {
        // a pointed homogenized cone with a feasible point x contains
        // the ray through (x, 1), hence some extreme ray with t > 0
        return PolyEnum::Empty;
    }
    vertices.sort();
    rays.sort();
    PolyEnum::Pointed { vertices, rays }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{lat, point, rat, ratio};

    #[test]
    fn octant_rays() {
        let normals = vec![lat(&[1, 0, 0]), lat(&[0, 1, 0]), lat(&[0, 0, 1])];
        let rays = dd_cone(&normals, 3).unwrap();
        assert_eq!(rays, vec![lat(&[0, 0, 1]), lat(&[0, 1, 0]), lat(&[1, 0, 0])]);
    }

    #[test]
    fn redundant_constraint_ignored() {
        let normals = vec![lat(&[1, 0]), lat(&[0, 1]), lat(&[1, 1])];
        let rays = dd_cone(&normals, 2).unwrap();
        assert_eq!(rays, vec![lat(&[0, 1]), lat(&[1, 0])]);
    }

    #[test]
    fn halfspace_is_not_pointed() {
        assert_eq!(dd_cone(&[lat(&[1, 0])], 2), None);
    }

    #[test]
    fn many_redundant_constraints() {
        // all of these cut the same quadrant except the last two
        let mut normals: Vec<LatVec> = Vec::new();
        for a in 0..50i64 {
            normals.push(lat(&[1 + a, 1]));
        }
        normals.push(lat(&[1, 0]));
        normals.push(lat(&[0, 1]));
        let rays = dd_cone(&normals, 2).unwrap();
        assert_eq!(rays, vec![lat(&[0, 1]), lat(&[1, 0])]);
    }

    #[test]
    fn square_vertices() {
        let cs = vec![
            (lat(&[1, 0]), rat(0)),
            (lat(&[-1, 0]), rat(-1)),
            (lat(&[0, 1]), rat(0)),
            (lat(&[0, -1]), rat(-1)),
        ];
        let PolyEnum::Pointed { vertices, rays } = enum_polyhedron(&cs, 2) else {
            panic!("square");
        };
        assert!(rays.is_empty());
        assert_eq!(
            vertices,
            vec![point(&[0, 0]), point(&[0, 1]), point(&[1, 0]), point(&[1, 1])]
        );
    }

    #[test]
    fn rational_offsets() {
        // x >= 1/2, x <= 3/2 in 1d
        let cs = vec![(lat(&[1]), ratio(1, 2)), (lat(&[-1]), ratio(-3, 2))];
        let PolyEnum::Pointed { vertices, rays } = enum_polyhedron(&cs, 1) else {
            panic!("interval");
        };
        assert!(rays.is_empty());
        assert_eq!(vertices, vec![vec![ratio(1, 2)], vec![ratio(3, 2)]]);
    }

    #[test]
    fn empty_detected() {
        let cs = vec![(lat(&[1, 0]), rat(1)), (lat(&[-1, 0]), rat(0)), (lat(&[0, 1]), rat(0)), (lat(&[0, -1]), rat(0))];
        assert_eq!(enum_polyhedron(&cs, 2), PolyEnum::Empty);
    }

    #[test]
    fn recession_rays_reported() {
        // x >= 0, y >= 0, x + y >= 1: unbounded with rays e1, e2
        let cs = vec![
            (lat(&[1, 0]), rat(0)),
            (lat(&[0, 1]), rat(0)),
            (lat(&[1, 1]), rat(1)),
        ];
        let PolyEnum::Pointed { vertices, rays } = enum_polyhedron(&cs, 2) else {
            panic!("pointed");
        };
        assert_eq!(vertices, vec![point(&[0, 1]), point(&[1, 0])]);
        assert_eq!(rays, vec![lat(&[0, 1]), lat(&[1, 0])]);
    }

    #[test]
    fn whole_plane_not_pointed() {
        assert_eq!(enum_polyhedron(&[], 2), PolyEnum::NonPointed);
    }

    #[test]
    fn cyclic_like_3d() {
        // octahedron from half-spaces
        let mut cs = Vec::new();
        for sx in [-1i64, 1] {
            for sy in [-1i64, 1] {
                for sz in [-1i64, 1] {
                    cs.push((lat(&[sx, sy, sz]), rat(-1)));
                }
            }
        }
        let PolyEnum::Pointed { vertices, rays } = enum_polyhedron(&cs, 3) else {
            panic!("octahedron");
        };
        assert!(rays.is_empty());
        assert_eq!(vertices.len(), 6);
    }
}
