//! Deterministic exact rational linear programming.
//!
//! Dense two-phase simplex over `BigRational` with Bland's pivoting
//! rule, which guarantees termination and makes identical inputs give
//! identical answers. On top of the raw solver, [`lp_solve`] refines
//! the optimum lexicographically so the returned witness is always a
//! vertex of the feasible region whenever the optimal face is bounded.

use crate::num::*;
use num_traits::{One, Signed, Zero};

/// Minimize `objective . x` subject to `<x, normal_i> >= offset_i`.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: RatVec,
    pub constraints: Vec<(RatVec, Rat)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { value: Rat, witness: RatVec },
    Infeasible,
    Unbounded,
}

impl LpProblem {
    pub fn new(objective: RatVec, constraints: Vec<(RatVec, Rat)>) -> Self {
        for (n, _) in &constraints {
            assert_eq!(n.len(), objective.len(), "constraint dimension mismatch");
        }
        LpProblem {
            objective,
            constraints,
        }
    }
}

pub fn lp_solve(problem: &LpProblem) -> LpResult {
    let dim = problem.objective.len();
    let first = simplex(&problem.objective, &problem.constraints);
    let LpResult::Optimal { value, witness } = first else {
        return first;
    };
    // Pin the witness to the lexicographically smallest point of the
    // optimal face; that point is a vertex when the face is bounded.
    let mut constraints = problem.constraints.clone();
    constraints.push((problem.objective.clone(), value.clone()));
    constraints.push((
        problem.objective.iter().map(|c| -c).collect(),
        -value.clone(),
    ));
    let mut witness = witness;
    for j in 0..dim {
        let mut obj = vec![Rat::zero(); dim];
        obj[j] = Rat::one();
        match simplex(&obj, &constraints) {
            LpResult::Optimal {
                value: xj,
                witness: w,
            } => {
                witness = w;
                let mut lo = vec![Rat::zero(); dim];
                lo[j] = Rat::one();
                constraints.push((lo.clone(), xj.clone()));
                lo[j] = -Rat::one();
                constraints.push((lo, -xj));
            }
            // coordinate unbounded on the optimal face: keep what we have
            LpResult::Unbounded => break,
            LpResult::Infeasible => unreachable!("refinement kept a feasible point"),
        }
    }
    LpResult::Optimal { value, witness }
}

/// Raw two-phase simplex. Standard form uses the split `x = u - v`,
/// one surplus variable per constraint and one artificial per row.
/// Feasibility of `<x, n_i> >= delta_i` alone: phase 1 only, no
/// optimal-witness refinement.
pub fn lp_feasible(constraints: &[(RatVec, Rat)], dim: usize) -> bool {
    if constraints.is_empty() {
        return true;
    }
    !matches!(
        simplex(&vec![Rat::zero(); dim], constraints),
        LpResult::Infeasible
    )
}

fn simplex(objective: &[Rat], constraints: &[(RatVec, Rat)]) -> LpResult {
    let dim = objective.len();
    let m = constraints.len();
    if m == 0 {
        if is_zero_vec(objective) {
            return LpResult::Optimal {
                value: Rat::zero(),
                witness: vec![Rat::zero(); dim],
            };
        }
        return LpResult::Unbounded;
    }
    let n_struct = 2 * dim + m; // u, v, surplus
    let n = n_struct + m; // + artificials

    // rows: <a, u> - <a, v> - s_i (+/- flipped so rhs >= 0) + art_i = rhs
    let mut a = vec![vec![Rat::zero(); n]; m];
    let mut rhs = vec![Rat::zero(); m];
    for (i, (normal, offset)) in constraints.iter().enumerate() {
        let flip = offset.is_negative();
        let sign = if flip { -Rat::one() } else { Rat::one() };
        for j in 0..dim {
            a[i][j] = &normal[j] * &sign;
            a[i][dim + j] = -&normal[j] * &sign;
        }
        a[i][2 * dim + i] = -&sign; // surplus for >=
        a[i][n_struct + i] = Rat::one();
        rhs[i] = offset * &sign;
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + i).collect();

    // phase 1: minimize sum of artificials
    let mut phase1 = vec![Rat::zero(); n];
    for j in n_struct..n {
        phase1[j] = Rat::one();
    }
    let status = run_simplex(&mut a, &mut rhs, &mut basis, &phase1, n);
    debug_assert!(status != SimplexStatus::Unbounded);
    let phase1_value = basis
        .iter()
        .zip(&rhs)
        .filter(|(&b, _)| b >= n_struct)
        .fold(Rat::zero(), |acc, (_, r)| acc + r);
    if !phase1_value.is_zero() {
        return LpResult::Infeasible;
    }
    // pivot remaining artificials out of the basis where possible
    for i in 0..m {
        if basis[i] >= n_struct {
            if let Some(j) = (0..n_struct).find(|&j| !a[i][j].is_zero()) {
                pivot(&mut a, &mut rhs, &mut basis, i, j);
            }
            // otherwise the row is redundant; the artificial stays at 0
        }
    }

    // phase 2
    let mut phase2 = vec![Rat::zero(); n];
    for j in 0..dim {
        phase2[j] = objective[j].clone();
        phase2[dim + j] = -objective[j].clone();
    }
    // artificials are forbidden: give them a cost only after masking
    let status = run_simplex_masked(&mut a, &mut rhs, &mut basis, &phase2, n_struct);
    if status == SimplexStatus::Unbounded {
        return LpResult::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        x[b] = rhs[i].clone();
    }
    let witness: RatVec = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
    let value = dot_rat(objective, &witness);
    LpResult::Optimal { value, witness }
}

#[derive(PartialEq)]
enum SimplexStatus {
    Optimal,
    Unbounded,
}

fn run_simplex(
    a: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &[Rat],
    ncols: usize,
) -> SimplexStatus {
    run_simplex_masked(a, rhs, basis, cost, ncols)
}

/// Bland's rule simplex; columns `>= ncols` never enter the basis.
fn run_simplex_masked(
    a: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &[Rat],
    ncols: usize,
) -> SimplexStatus {
    let m = a.len();
    loop {
        // reduced costs: c_j - c_B B^-1 A_j, tableau is kept in
        // canonical form so this is c_j - sum_i c_basis[i] * a[i][j]
        let mut entering: Option<usize> = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut red = cost[j].clone();
            for i in 0..m {
                if !a[i][j].is_zero() && !cost[basis[i]].is_zero() {
                    red -= &cost[basis[i]] * &a[i][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: lowest index
            }
        }
        let Some(j) = entering else {
            return SimplexStatus::Optimal;
        };
        // ratio test, ties broken by lowest basis index (Bland)
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if a[i][j].is_positive() {
                let ratio = &rhs[i] / &a[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leave else {
            return SimplexStatus::Unbounded;
        };
        pivot(a, rhs, basis, i, j);
    }
}

fn pivot(a: &mut [Vec<Rat>], rhs: &mut [Rat], basis: &mut [usize], row: usize, col: usize) {
    let m = a.len();
    let n = a[row].len();
    let inv = a[row][col].clone();
    for c in 0..n {
        a[row][c] = &a[row][c] / &inv;
    }
    rhs[row] = &rhs[row] / &inv;
    for r in 0..m {
        if r == row || a[r][col].is_zero() {
            continue;
        }
        let f = a[r][col].clone();
        for c in 0..n {
            let sub = &f * &a[row][c];
            a[r][c] -= sub;
        }
        let sub = &f * &rhs[row];
        rhs[r] -= sub;
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{point, rat, ratio};

    fn c(normal: &[i64], offset: Rat) -> (RatVec, Rat) {
        (point(normal), offset)
    }

    #[test]
    fn single_constraint_1d() {
        let p = LpProblem::new(point(&[1]), vec![c(&[1], rat(3))]);
        assert_eq!(
            lp_solve(&p),
            LpResult::Optimal {
                value: rat(3),
                witness: point(&[3])
            }
        );
    }

    #[test]
    fn square_vertex_optimum() {
        let p = LpProblem::new(
            point(&[1, 2]),
            vec![
                c(&[1, 0], rat(0)),
                c(&[-1, 0], rat(-1)),
                c(&[0, 1], rat(0)),
                c(&[0, -1], rat(-1)),
            ],
        );
        assert_eq!(
            lp_solve(&p),
            LpResult::Optimal {
                value: rat(0),
                witness: point(&[0, 0])
            }
        );
    }

    #[test]
    fn empty_interval_infeasible() {
        // x >= 1 and x <= lambda - 1 at lambda = 3/2
        let p = LpProblem::new(
            point(&[1]),
            vec![c(&[1], rat(1)), c(&[-1], -ratio(1, 2))],
        );
        assert_eq!(lp_solve(&p), LpResult::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let p = LpProblem::new(point(&[-1, 0]), vec![c(&[1, 0], rat(0))]);
        assert_eq!(lp_solve(&p), LpResult::Unbounded);
    }

    #[test]
    fn feasibility_objective_returns_vertex() {
        // zero objective over [-1,1]^2: the witness must still be a vertex
        let p = LpProblem::new(
            point(&[0, 0]),
            vec![
                c(&[1, 0], rat(-1)),
                c(&[-1, 0], rat(-1)),
                c(&[0, 1], rat(-1)),
                c(&[0, -1], rat(-1)),
            ],
        );
        let LpResult::Optimal { witness, .. } = lp_solve(&p) else {
            panic!("feasible");
        };
        assert_eq!(witness, point(&[-1, -1]));
    }

    #[test]
    fn degenerate_objective_on_edge() {
        // objective constant along the bottom edge of the unit square
        let p = LpProblem::new(
            point(&[0, 1]),
            vec![
                c(&[1, 0], rat(0)),
                c(&[-1, 0], rat(-1)),
                c(&[0, 1], rat(0)),
                c(&[0, -1], rat(-1)),
            ],
        );
        let LpResult::Optimal { value, witness } = lp_solve(&p) else {
            panic!("feasible");
        };
        assert_eq!(value, rat(0));
        assert_eq!(witness, point(&[0, 0]));
    }
}
