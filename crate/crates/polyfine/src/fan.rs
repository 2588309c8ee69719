//! Rational polyhedral cones and fans.
//!
//! Cones are pointed and stored with extreme rays, facet normals and
//! span equations. The normal fan of a full-dimensional polytope is
//! assembled from the vertex/facet incidence, and completeness is
//! certified combinatorially: in a complete fan every facet of a
//! maximal cone is shared by exactly two maximal cones.

use crate::matrix::{coords_in_span, dual_basis, orth_complement, saturate};
use crate::num::*;
use crate::polytope::Polytope;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    /// ambient dimension
    pub dim: usize,
    /// dimension of the linear span
    pub adim: usize,
    /// extreme rays, primitive and lex-sorted
    pub rays: Vec<LatVec>,
    /// facet normals: valid on the span, `<x, h> >= 0`
    pub hrep: Vec<LatVec>,
    /// span equations: `<x, a> = 0`
    pub equations: Vec<LatVec>,
}

impl Cone {
    /// Builds a pointed cone from generators (extreme or not).
    pub fn from_rays(rays: &[LatVec], dim: usize) -> Cone {
        let mut gens: Vec<LatVec> = rays.iter().map(|r| primitive(r)).collect();
        gens.sort();
        gens.dedup();
        let basis = saturate(&gens, dim);
        let adim = basis.len();
        let mut equations = orth_complement(&basis, dim);
        equations.sort();
        if adim == 0 {
            return Cone {
                dim,
                adim,
                rays: Vec::new(),
                hrep: Vec::new(),
                equations,
            };
        }
        // move to lattice coordinates of the span, where the cone is
        // full-dimensional and its facet normals are the extreme rays
        // of the dual cone
        let coords: Vec<LatVec> = gens
            .iter()
            .map(|g| {
                let q: RatVec = g.iter().map(|x| Rat::from(x.clone())).collect();
                let c = coords_in_span(&basis, &q).expect("ray in span");
                c.iter()
                    .map(|x| {
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        let inner_hrep =
            crate::dd::dd_cone(&coords, adim).expect("generators span their saturation");
        let inner_rays =
            crate::dd::dd_cone(&inner_hrep, adim).expect("pointed cone in its span");
        let duals = dual_basis(&basis, dim);
        let lift_normal = |mu: &LatVec| -> LatVec {
            let mut nu = vec![Int::zero(); dim];
            for (m, w) in mu.iter().zip(&duals) {
                for (ni, wi) in nu.iter_mut().zip(w) {
                    *ni += m * wi;
                }
            }
            primitive(&nu)
        };
        let lift_ray = |c: &LatVec| -> LatVec {
            let mut r = vec![Int::zero(); dim];
            for (ci, b) in c.iter().zip(&basis) {
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri += ci * bi;
                }
            }
            primitive(&r)
        };
        let mut rays: Vec<LatVec> = inner_rays.iter().map(lift_ray).collect();
        rays.sort();
        let mut hrep: Vec<LatVec> = inner_hrep.iter().map(lift_normal).collect();
        hrep.sort();
        Cone {
            dim,
            adim,
            rays,
            hrep,
            equations,
        }
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.adim
    }

    pub fn contains_lat(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|a| dot_int(a, x).is_zero())
            && self.hrep.iter().all(|h| !dot_int(h, x).is_negative())
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|a| pair(x, a).is_zero())
            && self.hrep.iter().all(|h| !pair(x, h).is_negative())
    }

    /// Facets, as cones spanned by the rays tight on one facet normal.
    pub fn facet_cones(&self) -> Vec<Cone> {
        self.hrep
            .iter()
            .map(|h| {
                let sub: Vec<LatVec> = self
                    .rays
                    .iter()
                    .filter(|r| dot_int(h, r).is_zero())
                    .cloned()
                    .collect();
                Cone::from_rays(&sub, self.dim)
            })
            .collect()
    }

    /// All proper faces of the given dimension.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Cone> {
        assert!(k <= self.adim);
        let mut level = vec![self.clone()];
        let mut d = self.adim;
        while d > k {
            let mut next: Vec<Cone> = Vec::new();
            for c in &level {
                for f in c.facet_cones() {
                    if !next.contains(&f) {
                        next.push(f);
                    }
                }
            }
            next.sort_by(|a, b| a.rays.cmp(&b.rays));
            level = next;
            d -= 1;
        }
        level
    }
}

#[derive(Clone, Debug)]
pub struct Fan {
    pub dim: usize,
    /// all rays appearing in the fan, lex-sorted
    pub rays: Vec<LatVec>,
    pub max_cones: Vec<Cone>,
}

impl Fan {
    pub fn from_max_cones(max_cones: Vec<Cone>, dim: usize) -> Fan {
        let mut rays: Vec<LatVec> = max_cones.iter().flat_map(|c| c.rays.clone()).collect();
        rays.sort();
        rays.dedup();
        let mut max_cones = max_cones;
        max_cones.sort_by(|a, b| a.rays.cmp(&b.rays));
        Fan {
            dim,
            rays,
            max_cones,
        }
    }

    /// Every facet of a maximal cone must be shared by exactly two
    /// maximal cones; together with full-dimensional maximal cones
    /// this certifies completeness of the fan.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.iter().any(|c| c.adim != self.dim) {
            return false;
        }
        let mut count: BTreeMap<Vec<LatVec>, usize> = BTreeMap::new();
        for c in &self.max_cones {
            for f in c.facet_cones() {
                *count.entry(f.rays).or_insert(0) += 1;
            }
        }
        !count.is_empty() && count.values().all(|&k| k == 2)
    }

    /// All cones of dimension `k`, deduplicated by ray set.
    pub fn cones_of_dim(&self, k: usize) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        for c in &self.max_cones {
            for f in c.faces_of_dim(k) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out.sort_by(|a, b| a.rays.cmp(&b.rays));
        out
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| c.is_simplicial())
    }
}

/// Normal fan of a full-dimensional polytope. The maximal cone at a
/// vertex is spanned by the normals of the facets through that vertex.
pub fn normal_fan(p: &Polytope) -> Fan {
    assert!(p.is_full_dim(), "normal fan needs a full-dimensional polytope");
    let max_cones: Vec<Cone> = p
        .vertices
        .iter()
        .map(|v| {
            let gens: Vec<LatVec> = p
                .halfspaces
                .iter()
                .filter(|h| pair(v, &h.normal) == h.offset)
                .map(|h| h.normal.clone())
                .collect();
            Cone::from_rays(&gens, p.dim)
        })
        .collect();
    Fan::from_max_cones(max_cones, p.dim)
}
