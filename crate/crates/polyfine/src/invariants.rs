//! Birational invariants read off the Fine-interior data: Kodaira
//! dimension, the self-intersection number of the canonical class,
//! surface Chern numbers and the Iitaka fibration.

use crate::canonical::{tilde_fan, verify_codim2};
use crate::fine::{self, Flags};
use crate::matrix::{coords_in_span, hnf, orth_complement, saturate, IntMatrix};
use crate::num::*;
use crate::polytope::Polytope;
use num_traits::{One, Zero};

/// `min(dim F, d-1)`, or `None` when the Fine interior is empty.
pub fn kodaira_dimension(p: &Polytope, f: Option<&Polytope>) -> Option<i64> {
    f.map(|f| (f.adim as i64).min(p.dim as i64 - 1))
}

/// `K^{d-1}` of the canonical model, by cases on `dim F`:
/// full-dimensional F contributes its volume plus its facet volumes,
/// `dim F = d-1` contributes twice the volume, anything smaller gives 0.
pub fn canonical_degree(p: &Polytope, f: &Polytope) -> Rat {
    let d = p.dim;
    if f.adim == d {
        let mut total = f.normalized_volume();
        for i in 0..f.halfspaces.len() {
            total += f.facet(i).normalized_volume();
        }
        total
    } else if f.adim + 1 == d {
        Rat::from(int(2)) * f.normalized_volume()
    } else {
        Rat::zero()
    }
}

/// `(c1^2, chi(O), c2)` of the minimal surface, for `d = 3`.
pub fn surface_invariants(p: &Polytope, f: &Polytope) -> (Rat, i64, Rat) {
    assert_eq!(p.dim, 3);
    let c1sq = canonical_degree(p, f);
    let chi = 1 + f.lattice_points().len() as i64;
    let c2 = Rat::from(int(12 * chi)) - &c1sq;
    (c1sq, chi, c2)
}

#[derive(Clone, Debug)]
pub struct FibrationData {
    /// HNF basis of the sublattice of functionals constant on F
    pub nf_basis: Vec<LatVec>,
    /// basis of the image lattice in projection coordinates
    pub mf_basis: Vec<LatVec>,
    /// the projection matrix: pairing with each basis functional
    pub projection: Vec<LatVec>,
    /// image of `p` under the projection
    pub pf: Polytope,
    /// hull of the support vectors constant on F, in basis coordinates
    pub phif: Polytope,
    /// `F(P^F)` is the image of `F(P)`
    pub check_fine_projects: bool,
    /// the support of the image matches the constant support vectors
    pub check_support_matches: bool,
    /// `Phi^F` is full-dimensional with 0 as its only interior point
    pub check_canonical_fano: bool,
}

impl FibrationData {
    pub fn ok(&self) -> bool {
        self.check_fine_projects && self.check_support_matches && self.check_canonical_fano
    }
}

fn hnf_rows(rows: &[LatVec], dim: usize) -> Vec<LatVec> {
    let (h, _) = hnf(&IntMatrix::new(rows.to_vec(), dim));
    h.rows
        .into_iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .collect()
}

/// Iitaka fibration data, defined when `0 <= dim F < d`.
pub fn fibration_data(p: &Polytope, f: &Polytope, support: &[LatVec]) -> FibrationData {
    let d = p.dim;
    assert!(f.adim < d, "no fibration when F is full-dimensional");
    // functionals constant on F = saturated complement of F's directions
    let dirs: Vec<LatVec> = f.vertices[1..]
        .iter()
        .map(|v| primitive_from_rat(&sub_vec(v, &f.vertices[0])))
        .collect();
    let dir_basis = saturate(&dirs, d);
    let nf_basis = hnf_rows(&orth_complement(&dir_basis, d), d);
    let rank = nf_basis.len();
    debug_assert_eq!(rank, d - f.adim);
    let mf_basis: Vec<LatVec> = (0..rank)
        .map(|i| {
            let mut e = vec![Int::zero(); rank];
            e[i] = Int::one();
            e
        })
        .collect();
    let pf = p.project(&nf_basis);
    let f_image = f.project(&nf_basis);

    // support vectors constant on F, in nf-basis coordinates
    let constant_support: Vec<LatVec> = support
        .iter()
        .filter(|s| {
            let q = lat_to_rat(s);
            coords_in_span(&nf_basis, &q).is_some()
        })
        .map(|s| {
            coords_in_span(&nf_basis, &lat_to_rat(s))
                .unwrap()
                .iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.to_integer()
                })
                .collect()
        })
        .collect();
    let phif = Polytope::from_vertices(
        &constant_support.iter().map(|s| lat_to_rat(s)).collect::<Vec<_>>(),
        rank,
    );

    let pf_fine = fine::fine_interior(&pf);
    let check_fine_projects = pf_fine.as_ref() == Some(&f_image);
    let check_support_matches = match &pf_fine {
        Some(ff) => {
            let mut cs = constant_support.clone();
            cs.sort();
            cs.dedup();
            fine::support_set(&pf, ff) == cs
        }
        None => false,
    };
    let interior: Vec<LatVec> = phif
        .lattice_points()
        .into_iter()
        .filter(|q| {
            let x = lat_to_rat(q);
            phif.halfspaces
                .iter()
                .all(|h| pair(&x, &h.normal) > h.offset)
        })
        .collect();
    let check_canonical_fano =
        phif.is_full_dim() && interior.len() == 1 && interior[0].iter().all(|x| x.is_zero());

    FibrationData {
        nf_basis: nf_basis.clone(),
        mf_basis,
        projection: nf_basis,
        pf,
        phif,
        check_fine_projects,
        check_support_matches,
        check_canonical_fano,
    }
}

/// Everything the report needs, computed once.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub p: Polytope,
    pub fine: Option<Polytope>,
    pub support: Vec<LatVec>,
    pub chull: Option<Polytope>,
    pub flags: Flags,
    /// `None` encodes Kodaira dimension minus infinity
    pub kodaira: Option<i64>,
    pub canonical_degree: Option<Rat>,
    pub surface: Option<(Rat, i64, Rat)>,
    pub fibration: Option<FibrationData>,
    pub codim2_ok: bool,
    pub lambda0: Rat,
    pub lambda_interval: Option<(Rat, Rat)>,
}

pub fn analyze(p: &Polytope, with_thresholds: bool) -> Analysis {
    assert!(p.is_full_dim());
    let candidates = fine::candidate_normals(p);
    let fine_p = fine::fine_interior_with(p, &candidates);
    let (support, chull, flags, canonical_degree, surface, fibration, codim2_ok) =
        match &fine_p {
            None => (Vec::new(), None, Flags::default(), None, None, None, true),
            Some(f) => {
                let support = fine::support_set_with(p, f, &candidates);
                let chull = fine::canonical_hull(p, &support);
                let flags = fine::closedness_flags_with(p, f, &support, &chull);
                let degree = canonical_degree(p, f);
                let surface = (p.dim == 3).then(|| surface_invariants(p, f));
                let fibration = (f.adim < p.dim).then(|| fibration_data(p, f, &support));
                let tilde = tilde_fan(&chull, f);
                let codim2_ok = verify_codim2(p, f, &tilde).iter().all(|r| r.ok());
                (support, Some(chull), flags, Some(degree), surface, fibration, codim2_ok)
            }
        };
    let lambda0 = fine::lambda_min_with(p, &candidates);
    let lambda_interval =
        with_thresholds.then(|| fine::lambda_closed_with(p, &candidates, &ratio(1, 64)));
    let kodaira = kodaira_dimension(p, fine_p.as_ref());
    Analysis {
        p: p.clone(),
        fine: fine_p,
        support,
        chull,
        flags,
        kodaira,
        canonical_degree,
        surface,
        fibration,
        codim2_ok,
        lambda0,
        lambda_interval,
    }
}
