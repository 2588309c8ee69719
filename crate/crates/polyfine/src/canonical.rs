//! Fan-level data of the canonical model: the normal fan of
//! `C(P) + F(P)`, the coneswise canonical refinement, discrepancies,
//! codimension-two certificates and a deterministic crepant
//! simplicial refinement with its terminality certificate.

use crate::dd::{dd_cone, enum_polyhedron, PolyEnum};
use crate::fan::{normal_fan, Cone, Fan};
use crate::fine;
use crate::lp::lp_feasible;
use crate::num::*;
use crate::polytope::Polytope;
use num_traits::{One, Zero};

/// `Theta*_sigma` data of a full-dimensional cone and the induced
/// subdivision into domains of linearity of `ord_{Theta*_sigma}`.
#[derive(Clone, Debug)]
pub struct CanonicalConeData {
    pub cone: Cone,
    /// vertex set `M(sigma)` of `Theta*_sigma`
    pub m_points: Vec<RatVec>,
    /// recession rays of `Theta*_sigma` (the dual cone of `sigma`)
    pub recession: Vec<LatVec>,
    /// the canonical refinement of `sigma`, one maximal subcone per
    /// point of `M(sigma)`
    pub subcones: Vec<Cone>,
}

/// Nonzero lattice points of `Conv({0} U rays(sigma))`; they determine
/// `Theta*_sigma` just as the global candidate set determines the
/// Fine interior.
pub fn cone_candidates(cone: &Cone) -> Vec<LatVec> {
    let mut pts: Vec<RatVec> = cone.rays.iter().map(|r| lat_to_rat(r)).collect();
    pts.push(vec![Rat::zero(); cone.dim]);
    Polytope::from_vertices(&pts, cone.dim)
        .lattice_points()
        .into_iter()
        .filter(|v| !v.iter().all(|x| x.is_zero()))
        .collect()
}

pub fn canonical_refinement(cone: &Cone) -> CanonicalConeData {
    assert_eq!(cone.adim, cone.dim, "refinement needs a full-dimensional cone");
    let candidates = cone_candidates(cone);
    let constraints: Vec<(LatVec, Rat)> = candidates
        .iter()
        .map(|nu| (nu.clone(), Rat::one()))
        .collect();
    let PolyEnum::Pointed { vertices, rays } = enum_polyhedron(&constraints, cone.dim) else {
        panic!("Theta* of a strictly convex full-dimensional cone is pointed and nonempty");
    };
    let m_points = vertices;

    // the subcone of m is where <m, .> realizes ord_{Theta*}: cut
    // sigma by <m' - m, y> >= 0 for the other vertices
    let subcones: Vec<Cone> = m_points
        .iter()
        .map(|m| {
            let mut normals: Vec<LatVec> = cone.hrep.clone();
            for m2 in &m_points {
                if m2 == m {
                    continue;
                }
                let d = sub_vec(m2, m);
                normals.push(primitive_from_rat(&d));
            }
            let rays = dd_cone(&normals, cone.dim)
                .expect("subcone of a pointed full-dimensional cone");
            Cone::from_rays(&rays, cone.dim)
        })
        .collect();
    CanonicalConeData {
        cone: cone.clone(),
        m_points,
        recession: rays,
        subcones,
    }
}

/// Glues the coneswise refinements of the normal fan of `p`.
pub fn canonical_refinement_fan(p: &Polytope) -> Fan {
    let base = normal_fan(p);
    let mut max_cones: Vec<Cone> = Vec::new();
    for sigma in &base.max_cones {
        max_cones.extend(canonical_refinement(sigma).subcones);
    }
    Fan::from_max_cones(max_cones, p.dim)
}

/// Normal fan of `P~ = C(P) + F(P)`; its rays lie in the support set.
pub fn tilde_fan(chull: &Polytope, f: &Polytope) -> Fan {
    normal_fan(&chull.minkowski_sum(f))
}

/// `a(nu) = ord_F(nu) - ord_p(nu) - 1`: zero exactly on the support
/// set, positive on every other nonzero lattice vector.
pub fn discrepancy(p: &Polytope, f: &Polytope, nu: &[Int]) -> Rat {
    assert!(!nu.iter().all(|x| x.is_zero()));
    fine::delta(p, f, nu) - Rat::one()
}

#[derive(Clone, Debug)]
pub struct Codim2Report {
    /// the two rays spanning the 2-cone
    pub rays: Vec<LatVec>,
    /// the corresponding face of the Fine interior is nonempty
    pub face_nonempty: bool,
    /// some vertex of `p` is tight on both rays
    pub has_vertex: bool,
}

impl Codim2Report {
    pub fn ok(&self) -> bool {
        self.face_nonempty && self.has_vertex
    }
}

/// Checks, per 2-dimensional cone of the tilde fan, that the common
/// tight face of the Fine interior is nonempty and that some vertex of
/// `p` minimizes both rays at once.
pub fn verify_codim2(p: &Polytope, f: &Polytope, tilde: &Fan) -> Vec<Codim2Report> {
    tilde
        .cones_of_dim(2)
        .into_iter()
        .map(|c| {
            assert_eq!(c.rays.len(), 2);
            let face_nonempty = fine_face_nonempty(f, &c.rays);
            let has_vertex = p.vertices.iter().any(|v| {
                c.rays
                    .iter()
                    .all(|nu| pair(v, nu) == p.support_value(nu))
            });
            Codim2Report {
                rays: c.rays,
                face_nonempty,
                has_vertex,
            }
        })
        .collect()
}

/// LP feasibility of `{x in f : <x, nu> = ord_f(nu) for both rays}`.
fn fine_face_nonempty(f: &Polytope, rays: &[LatVec]) -> bool {
    let dim = f.dim;
    let mut constraints: Vec<(RatVec, Rat)> = Vec::new();
    for h in &f.halfspaces {
        constraints.push((lat_to_rat(&h.normal), h.offset.clone()));
    }
    for (a, b) in &f.equations {
        constraints.push((lat_to_rat(a), b.clone()));
        constraints.push((lat_to_rat(a).iter().map(|x| -x).collect(), -b));
    }
    for nu in rays {
        let level = f.support_value(nu);
        constraints.push((lat_to_rat(nu), level.clone()));
        constraints.push((lat_to_rat(nu).iter().map(|x| -x).collect(), -level));
    }
    lp_feasible(&constraints, dim)
}

/// Star subdivision of the fan at the ray through `s`.
fn stellar_subdivide(fan: &Fan, s: &LatVec) -> Fan {
    let mut max_cones: Vec<Cone> = Vec::new();
    for sigma in &fan.max_cones {
        if !sigma.contains_lat(s) {
            max_cones.push(sigma.clone());
            continue;
        }
        for tau in sigma.facet_cones() {
            if tau.contains_lat(s) {
                continue;
            }
            let mut gens = tau.rays.clone();
            gens.push(s.clone());
            max_cones.push(Cone::from_rays(&gens, fan.dim));
        }
    }
    let mut out = Vec::new();
    for c in max_cones {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Fan::from_max_cones(out, fan.dim)
}

/// Pulling triangulation: cone over the lex-smallest ray joined with
/// the recursively triangulated facets avoiding it. Shared facets get
/// identical triangulations, so the pieces glue into a fan.
fn triangulate_cone(cone: &Cone) -> Vec<Cone> {
    if cone.is_simplicial() {
        return vec![cone.clone()];
    }
    let r = cone.rays[0].clone();
    let mut out = Vec::new();
    for tau in cone.facet_cones() {
        if tau.rays.contains(&r) {
            continue;
        }
        for piece in triangulate_cone(&tau) {
            let mut gens = piece.rays.clone();
            gens.push(r.clone());
            out.push(Cone::from_rays(&gens, cone.dim));
        }
    }
    out
}

/// Refines the tilde fan into a simplicial fan with ray set exactly
/// the support set: stellar subdivision at every support point in lex
/// order, then pulling triangulation of whatever stays non-simplicial.
/// The returned flag certifies terminality: in every maximal cone the
/// only support points are its rays.
pub fn crepant_simplicial_refinement(tilde: &Fan, support: &[LatVec]) -> (Fan, bool) {
    let mut fan = tilde.clone();
    let mut points = support.to_vec();
    points.sort();
    for s in &points {
        fan = stellar_subdivide(&fan, s);
    }
    let mut max_cones: Vec<Cone> = Vec::new();
    for c in &fan.max_cones {
        max_cones.extend(triangulate_cone(c));
    }
    let fan = Fan::from_max_cones(max_cones, tilde.dim);
    let certificate = fan.max_cones.iter().all(|c| {
        points
            .iter()
            .filter(|s| c.contains_lat(s))
            .all(|s| c.rays.contains(s))
    });
    (fan, certificate)
}
