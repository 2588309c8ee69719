//! The Fine interior of a polytope and everything defined from it:
//! support set, canonical hull, closedness flags and the two lambda
//! thresholds.
//!
//! The defining intersection runs over all nonzero dual lattice
//! vectors, but only finitely many matter: the support is contained in
//! the convex hull of the primitive facet normals, so that hull's
//! nonzero lattice points are a sufficient candidate set. A brute
//! force oracle that enumerates every dual vector up to a given
//! sup-norm radius is kept alongside for cross-checking.

use crate::lp::{lp_solve, LpProblem, LpResult};
use crate::num::*;
use num_integer::Integer;
use crate::polytope::{HrepError, Polytope};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};

/// Primitive lattice points of `Conv(facet normals of p, 0)`.
/// Sufficient to compute the Fine interior and a superset of the
/// support set; shared by all dilations of `p`. Imprimitive points
/// are dropped: the constraint of `k mu` follows from the one of `mu`
/// (multiply by `k` and use `k >= 1`), and `k mu` is never tight
/// because `delta(k mu) = k delta(mu) >= k`.
pub fn candidate_normals(p: &Polytope) -> Vec<LatVec> {
    assert!(p.is_full_dim());
    let mut pts: Vec<RatVec> = p
        .halfspaces
        .iter()
        .map(|h| lat_to_rat(&h.normal))
        .collect();
    pts.push(vec![Rat::zero(); p.dim]);
    let hull = Polytope::from_vertices(&pts, p.dim);
    hull.lattice_points()
        .into_iter()
        .filter(|v| !v.iter().all(|x| x.is_zero()))
        .filter(|v| primitive(v) == *v)
        .collect()
}

pub fn fine_interior(p: &Polytope) -> Option<Polytope> {
    fine_interior_with(p, &candidate_normals(p))
}

/// Fine interior computed from a precomputed candidate set (the set
/// only depends on the normal fan, so it can be reused across
/// dilations of the same polytope).
pub fn fine_interior_with(p: &Polytope, candidates: &[LatVec]) -> Option<Polytope> {
    fine_interior_scaled(p, candidates, &Rat::one())
}

/// `F(lambda p)` without materializing the dilation: intersect
/// `<x, nu> >= lambda ord_p(nu) + 1` over the candidates. Row
/// generation keeps the double-description calls small: start from the
/// facet normals (they already bound the result), then repeatedly cut
/// with the most violated candidates until none are violated. The
/// candidate order breaks ties, so the loop is deterministic.
/// Clear denominators per vertex: returns `(w, s)` with vertex `w / s`.
fn scaled_vertices(p: &Polytope) -> Vec<(LatVec, Int)> {
    p.vertices
        .iter()
        .map(|v| {
            let s = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
            let w: LatVec = v.iter().map(|x| x.numer() * (&s / x.denom())).collect();
            (w, s)
        })
        .collect()
}

/// `min_v <v, nu>` over scaled vertices, as a numerator/denominator pair.
fn ord_int(scaled: &[(LatVec, Int)], nu: &[Int]) -> (Int, Int) {
    let mut min: Option<(Int, Int)> = None;
    for (w, s) in scaled {
        let t = dot_int(w, nu);
        let smaller = match &min {
            None => true,
            Some((t0, s0)) => &t * s0 < t0 * s,
        };
        if smaller {
            min = Some((t, s.clone()));
        }
    }
    min.expect("polytope has vertices")
}

fn fine_interior_scaled(p: &Polytope, candidates: &[LatVec], lambda: &Rat) -> Option<Polytope> {
    let seeds: Vec<LatVec> = p.halfspaces.iter().map(|h| h.normal.clone()).collect();
    shrink_by_candidates(p, &seeds, candidates, lambda)
}

/// Intersection of `<x, nu> >= lambda ord_p(nu) + 1` over
/// `seeds ∪ candidates`; the seed constraints must already bound it.
fn shrink_by_candidates(
    p: &Polytope,
    seeds: &[LatVec],
    candidates: &[LatVec],
    lambda: &Rat,
) -> Option<Polytope> {
    const CUTS_PER_ROUND: usize = 16;
    let offset = |nu: &[Int]| lambda * p.support_value(nu) + Rat::one();
    let mut active: Vec<LatVec> = seeds.to_vec();
    let in_active: std::collections::BTreeSet<LatVec> = active.iter().cloned().collect();
    // offsets lambda (u/s) + 1 split as p/q so everything downstream is
    // pure integer work
    let p_scaled = scaled_vertices(p);
    let mut pending: Vec<(LatVec, Int, Int)> = candidates
        .iter()
        .filter(|nu| !in_active.contains(*nu))
        .map(|nu| {
            let (u, s) = ord_int(&p_scaled, nu);
            let q = lambda.denom() * &s;
            let po = lambda.numer() * u + &q;
            (nu.clone(), po, q)
        })
        .collect();
    loop {
        let constraints: Vec<(LatVec, Rat)> = active
            .iter()
            .map(|nu| (nu.clone(), offset(nu)))
            .collect();
        let f = match Polytope::from_halfspaces(&constraints, p.dim) {
            Ok(f) => f,
            Err(HrepError::Empty) => return None,
            Err(HrepError::Unbounded) => unreachable!("the seed constraints bound the intersection"),
        };
        // candidate (nu, p, q) is violated iff min over f of <x, nu>
        // is below p/q; rank the cuts by the violation gap
        let f_scaled = scaled_vertices(&f);
        let mut violated: Vec<(Rat, usize)> = Vec::new();
        for (i, (nu, po, qo)) in pending.iter().enumerate() {
            let (t, s) = ord_int(&f_scaled, nu);
            if qo * &t < po * &s {
                let gap = Rat::new(po.clone(), qo.clone()) - Rat::new(t, s);
                violated.push((gap, i));
            }
        }
        if violated.is_empty() {
            return Some(f);
        }
        violated.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        violated.truncate(CUTS_PER_ROUND);
        let mut idx: Vec<usize> = violated.into_iter().map(|(_, i)| i).collect();
        idx.sort_unstable_by(|a, b| b.cmp(a));
        for i in idx {
            active.push(pending.swap_remove(i).0);
        }
    }
}

/// `S_F(p)`: candidates whose constraint is tight on the Fine interior.
pub fn support_set(p: &Polytope, f: &Polytope) -> Vec<LatVec> {
    support_set_with(p, f, &candidate_normals(p))
}

pub fn support_set_with(p: &Polytope, f: &Polytope, candidates: &[LatVec]) -> Vec<LatVec> {
    let p_scaled = scaled_vertices(p);
    let f_scaled = scaled_vertices(f);
    // tight iff ord_f = ord_p + 1, compared by cross-multiplication
    let mut out: Vec<LatVec> = candidates
        .iter()
        .filter(|nu| {
            let (t, sigma) = ord_int(&f_scaled, nu);
            let (u, s) = ord_int(&p_scaled, nu);
            t * &s == (u + &s) * sigma
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// `C(p)`: intersection of the support half-spaces at their original
/// levels. Contains `p` and has the same Fine interior.
pub fn canonical_hull(p: &Polytope, support: &[LatVec]) -> Polytope {
    let constraints: Vec<(LatVec, Rat)> = support
        .iter()
        .map(|nu| (nu.clone(), p.support_value(nu)))
        .collect();
    match Polytope::from_halfspaces(&constraints, p.dim) {
        Ok(c) => c,
        Err(e) => panic!("canonical hull must be a polytope, got {e:?}"),
    }
}

/// `delta_p(nu) = ord_F(nu) - ord_p(nu)`; equals 1 exactly on the
/// support set and is >= 1 for every nonzero lattice vector.
pub fn delta(p: &Polytope, f: &Polytope, nu: &[Int]) -> Rat {
    f.support_value(nu) - p.support_value(nu)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub has_fine_interior: bool,
    pub canonically_closed: bool,
    pub integrally_closed: bool,
    pub reflexive: bool,
    pub almost_reflexive: bool,
    pub pseudoreflexive: bool,
}

fn is_origin_point(f: &Polytope) -> bool {
    f.adim == 0 && f.vertices[0].iter().all(|x| x.is_zero())
}

fn hull_of_lattice_points(c: &Polytope) -> Option<Polytope> {
    let pts = c.lattice_points();
    if pts.is_empty() {
        return None;
    }
    let qs: Vec<RatVec> = pts.iter().map(|p| lat_to_rat(p)).collect();
    Some(Polytope::from_vertices(&qs, c.dim))
}

fn is_reflexive(p: &Polytope) -> bool {
    if !p.is_lattice() {
        return false;
    }
    let Some(f) = fine_interior(p) else {
        return false;
    };
    if !is_origin_point(&f) {
        return false;
    }
    canonical_hull(p, &support_set(p, &f)) == *p
}

pub fn closedness_flags(p: &Polytope) -> Flags {
    match fine_interior(p) {
        Some(f) => {
            let support = support_set(p, &f);
            let chull = canonical_hull(p, &support);
            closedness_flags_with(p, &f, &support, &chull)
        }
        None => Flags::default(),
    }
}

/// Same as `closedness_flags` with the Fine data already computed.
pub fn closedness_flags_with(
    p: &Polytope,
    f: &Polytope,
    support: &[LatVec],
    chull: &Polytope,
) -> Flags {
    let canonically_closed = p
        .halfspaces
        .iter()
        .all(|h| support.contains(&h.normal));
    let integrally_closed = match hull_of_lattice_points(chull) {
        Some(hull) => hull == *p,
        None => false,
    };
    let f_is_origin = is_origin_point(f);
    Flags {
        has_fine_interior: true,
        canonically_closed,
        integrally_closed,
        reflexive: f_is_origin && *chull == *p,
        almost_reflexive: f_is_origin && is_reflexive(chull),
        pseudoreflexive: integrally_closed && f_is_origin,
    }
}

/// The dilation threshold below which the Fine interior is empty:
/// the optimum of the parametric LP "minimize `lambda` subject to
/// `<x, nu> - lambda ord_p(nu) >= 1` over all candidates" in the
/// variables `(x, lambda)`.
pub fn lambda_min(p: &Polytope) -> Rat {
    lambda_min_with(p, &candidate_normals(p))
}

pub fn lambda_min_with(p: &Polytope, candidates: &[LatVec]) -> Rat {
    let d = p.dim;
    let mut objective = vec![Rat::zero(); d + 1];
    objective[d] = Rat::one();
    let p_scaled = scaled_vertices(p);
    let row = |nu: &[Int]| {
        let (u, s) = ord_int(&p_scaled, nu);
        let mut r = lat_to_rat(nu);
        r.push(-Rat::new(u, s));
        r
    };
    // row generation: the facet normals alone already bound lambda from
    // below (a positive combination of them vanishes), so solve the
    // relaxation and cut with the most violated candidate until the
    // relaxed optimum is feasible for every candidate
    let mut active: Vec<(RatVec, Rat)> = p
        .halfspaces
        .iter()
        .map(|h| (row(&h.normal), Rat::one()))
        .collect();
    let in_active: std::collections::BTreeSet<LatVec> =
        p.halfspaces.iter().map(|h| h.normal.clone()).collect();
    let mut pending: Vec<RatVec> = candidates
        .iter()
        .filter(|nu| !in_active.contains(*nu))
        .map(|nu| row(nu))
        .collect();
    loop {
        let (value, witness) = match lp_solve(&LpProblem::new(objective.clone(), active.clone())) {
            LpResult::Optimal { value, witness } => (value, witness),
            other => panic!("dilation LP is feasible and bounded, got {other:?}"),
        };
        let mut worst: Option<(Rat, usize)> = None;
        for (i, r) in pending.iter().enumerate() {
            let gap = Rat::one() - dot_rat(r, &witness);
            if gap.is_positive() && worst.as_ref().map_or(true, |(g, _)| gap > *g) {
                worst = Some((gap, i));
            }
        }
        match worst {
            None => return value,
            Some((_, i)) => active.push((pending.swap_remove(i), Rat::one())),
        }
    }
}

/// Whether the dilation `lambda p` is canonically closed.
pub fn canonically_closed_at(p: &Polytope, candidates: &[LatVec], lambda: &Rat) -> bool {
    // ord_{lambda p} = lambda ord_p, so the dilation never needs to be
    // materialized: F(lambda p) comes from the scaled offsets and the
    // facet normals of lambda p are those of p
    let Some(f) = fine_interior_scaled(p, candidates, lambda) else {
        return false;
    };
    p.halfspaces
        .iter()
        .all(|h| f.support_value(&h.normal) == lambda * p.support_value(&h.normal) + Rat::one())
}

/// Brackets the closedness threshold: the returned `[lo, hi]` has the
/// predicate "`lambda p` canonically closed" false at `lo` (unless
/// `lo` is already the exact threshold) and true at `hi`, with
/// `hi - lo <= precision`.
pub fn lambda_closed(p: &Polytope, precision: &Rat) -> (Rat, Rat) {
    lambda_closed_with(p, &candidate_normals(p), precision)
}

pub fn lambda_closed_with(p: &Polytope, candidates: &[LatVec], precision: &Rat) -> (Rat, Rat) {
    assert!(precision.is_positive());
    let lo = lambda_min_with(p, candidates);
    if canonically_closed_at(p, &candidates, &lo) {
        return (lo.clone(), lo);
    }
    // every d-fold dilation is canonically closed, but the threshold
    // can exceed d when lambda_min does; grow until the predicate holds
    let mut hi = Rat::from(int(p.dim as i64));
    if hi < lo {
        hi = lo.clone();
    }
    while !canonically_closed_at(p, &candidates, &hi) {
        hi += Rat::one();
    }
    let mut lo = lo;
    let half = ratio(1, 2);
    while &hi - &lo > *precision {
        let mid = (&lo + &hi) * &half;
        if canonically_closed_at(p, &candidates, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Independent of the candidate-set reduction: intersects the defining
/// half-spaces over every nonzero dual vector with sup-norm at most
/// `radius`. Agrees with `fine_interior` once the radius covers the
/// candidate normals; below that it may be strictly larger.
pub fn oracle_fine_interior(p: &Polytope, radius: i64) -> Option<Polytope> {
    assert!(radius >= 1);
    assert!(p.is_full_dim());
    let range: Vec<Int> = (-radius..=radius).map(int).collect();
    let normals: Vec<LatVec> = (0..p.dim)
        .map(|_| range.iter().cloned())
        .multi_cartesian_product()
        .filter(|nu| !nu.iter().all(|x| x.is_zero()))
        .collect();
    // seed with the coordinate directions (always inside the box) so
    // intermediate intersections stay bounded without assuming the
    // facet normals fit in the radius
    let mut seeds: Vec<LatVec> = Vec::new();
    for j in 0..p.dim {
        for sign in [1i64, -1] {
            let mut e = vec![Int::zero(); p.dim];
            e[j] = int(sign);
            seeds.push(e);
        }
    }
    shrink_by_candidates(p, &seeds, &normals, &Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{lat, point, rat, ratio};

    use crate::testutil::parallelepiped;

    fn cube01() -> Polytope {
        let vs: Vec<RatVec> = (0..8)
            .map(|i| point(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]))
            .collect();
        Polytope::from_vertices(&vs, 3)
    }

    #[test]
    fn parallelepiped_fine_point() {
        let p = parallelepiped();
        let f = fine_interior(&p).unwrap();
        assert_eq!(f.vertices, vec![vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)]]);
        let s = support_set(&p, &f);
        let mut expect = vec![
            lat(&[0, 1, 1]),
            lat(&[0, -1, -1]),
            lat(&[1, 0, 1]),
            lat(&[-1, 0, -1]),
            lat(&[1, 1, 0]),
            lat(&[-1, -1, 0]),
        ];
        expect.sort();
        assert_eq!(s, expect);
        assert_eq!(delta(&p, &f, &lat(&[1, 1, 0])), rat(1));
        assert_eq!(delta(&p, &f, &lat(&[1, 0, 0])), ratio(3, 2));
    }

    #[test]
    fn cube_has_empty_fine_interior() {
        assert_eq!(fine_interior(&cube01()), None);
        assert_eq!(closedness_flags(&cube01()), Flags::default());
    }

    #[test]
    fn square_candidates() {
        let sq = Polytope::from_vertices(
            &[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), point(&[1, 1])],
            2,
        );
        let c = candidate_normals(&sq);
        assert_eq!(
            c,
            vec![lat(&[-1, 0]), lat(&[0, -1]), lat(&[0, 1]), lat(&[1, 0])]
        );
    }

    #[test]
    fn rational_triangle() {
        let p = Polytope::from_vertices(
            &[
                point(&[-1, 0]),
                vec![rat(0), ratio(3, 2)],
                vec![rat(4), ratio(-5, 2)],
            ],
            2,
        );
        let f = fine_interior(&p).unwrap();
        assert_eq!(
            f.vertices,
            vec![
                point(&[0, 0]),
                vec![rat(0), ratio(1, 2)],
                vec![rat(1), ratio(-1, 2)],
            ]
        );
        let c = canonical_hull(&p, &support_set(&p, &f));
        assert_eq!(c.vertices.len(), 4);
        assert!(c.vertices.contains(&vec![rat(-1), ratio(1, 2)]));
        assert!(c.contains_poly(&p));
    }

    #[test]
    fn simplex_gains_vertex_in_hull() {
        let p = Polytope::from_vertices(
            &[
                point(&[-1, -1, -1]),
                point(&[1, 1, 0]),
                point(&[1, 0, 1]),
                point(&[0, 1, 1]),
            ],
            3,
        );
        let f = fine_interior(&p).unwrap();
        assert_eq!(f.vertices, vec![point(&[0, 0, 0])]);
        let c = canonical_hull(&p, &support_set(&p, &f));
        let mut expect = p.vertices.clone();
        expect.push(point(&[1, 1, 1]));
        expect.sort();
        assert_eq!(c.vertices, expect);
        let flags = closedness_flags(&p);
        assert!(!flags.canonically_closed);
        assert!(!flags.reflexive);
        assert!(flags.almost_reflexive);
    }

    #[test]
    fn cross_polygon_is_reflexive() {
        let p = Polytope::from_vertices(
            &[point(&[1, 0]), point(&[-1, 0]), point(&[0, 1]), point(&[0, -1])],
            2,
        );
        let flags = closedness_flags(&p);
        assert!(flags.reflexive);
        assert!(flags.canonically_closed);
        assert!(flags.pseudoreflexive);
    }

    #[test]
    fn two_dim_lattice_polytopes_are_canonically_closed() {
        let p = Polytope::from_vertices(&[point(&[0, 0]), point(&[3, 0]), point(&[0, 3])], 2);
        assert!(closedness_flags(&p).canonically_closed);
    }

    #[test]
    fn lambda_thresholds() {
        assert_eq!(lambda_min(&cube01()), rat(2));
        let d2 = Polytope::from_vertices(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1])], 2);
        assert_eq!(lambda_min(&d2), rat(3));
        let (lo, hi) = lambda_closed(&cube01(), &ratio(1, 64));
        assert!(lo <= rat(2) && rat(2) <= hi);
        assert!(&hi - &lo <= ratio(1, 64));
    }

    #[test]
    fn oracle_matches() {
        let p = parallelepiped();
        let f = oracle_fine_interior(&p, 2).unwrap();
        assert_eq!(Some(f), fine_interior(&p));
        // 2d rule check on [0,3]^2
        let sq = Polytope::from_vertices(
            &[point(&[0, 0]), point(&[3, 0]), point(&[0, 3]), point(&[3, 3])],
            2,
        );
        let f = oracle_fine_interior(&sq, 3).unwrap();
        assert_eq!(
            f.vertices,
            vec![point(&[1, 1]), point(&[1, 2]), point(&[2, 1]), point(&[2, 2])]
        );
    }
}
