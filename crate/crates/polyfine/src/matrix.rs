//! Integer and rational linear algebra: Hermite normal form, kernels,
//! lattice saturation, and exact solving.

use crate::num::*;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<LatVec>,
    pub cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<LatVec>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::new(rows.iter().map(|r| lat(r)).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        IntMatrix { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            cols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        let mut acc = Int::zero();
                        for (k, rk) in r.iter().enumerate() {
                            acc += rk * &other.rows[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        IntMatrix {
            rows,
            cols: other.cols,
        }
    }

    /// Determinant of a square matrix by fraction-free expansion over Q.
    pub fn det(&self) -> Int {
        assert_eq!(self.nrows(), self.cols);
        let n = self.cols;
        let mut m: Vec<RatVec> = self.rows.iter().map(|r| lat_to_rat(r)).collect();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else {
                return Int::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= m[col][col].clone();
            let inv = m[col][col].clone();
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &inv;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        debug_assert!(det.denom().is_one());
        det.numer().clone()
    }
}

/// Row Hermite normal form with transformation: returns `(h, u)` with
/// `h = u * m`, `u` unimodular, `h` upper-trapezoidal with positive
/// pivots and reduced entries above each pivot.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nrows = m.nrows();
    let cols = m.cols;
    let mut h = m.rows.clone();
    let mut u = IntMatrix::identity(nrows).rows;

    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= nrows {
            break;
        }
        // gcd elimination down the column
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..nrows {
                if !h[r][col].is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => h[r][col].abs() < h[b][col].abs(),
                    };
                    if better {
                        best = Some(r);
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            let pivot = h[pivot_row][col].clone();
            for r in pivot_row + 1..nrows {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&h[r][col], &pivot);
                if !q.is_zero() {
                    for c in 0..cols {
                        let sub = &q * &h[pivot_row][c];
                        h[r][c] -= sub;
                    }
                    for c in 0..nrows {
                        let sub = &q * &u[pivot_row][c];
                        u[r][c] -= sub;
                    }
                }
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            for c in 0..cols {
                h[pivot_row][c] = -h[pivot_row][c].clone();
            }
            for c in 0..nrows {
                u[pivot_row][c] = -u[pivot_row][c].clone();
            }
        }
        // reduce entries above the pivot
        let pivot = h[pivot_row][col].clone();
        for r in 0..pivot_row {
            let q = h[r][col].div_euclid(&pivot);
            if !q.is_zero() {
                for c in 0..cols {
                    let sub = &q * &h[pivot_row][c];
                    h[r][c] -= sub;
                }
                for c in 0..nrows {
                    let sub = &q * &u[pivot_row][c];
                    u[r][c] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    (
        IntMatrix { rows: h, cols },
        IntMatrix {
            rows: u,
            cols: nrows,
        },
    )
}

fn div_round(a: &Int, b: &Int) -> Int {
    // nearest-integer quotient, keeps coefficients small
    let two = Int::from(2);
    let (q, r) = a.div_rem(b);
    if &(r.abs() * &two) > &b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + Int::one()
        } else {
            q - Int::one()
        }
    } else {
        q
    }
}

use num_integer::Integer as _;

trait DivEuclid {
    fn div_euclid(&self, other: &Int) -> Int;
}
impl DivEuclid for Int {
    fn div_euclid(&self, other: &Int) -> Int {
        self.div_floor(other)
    }
}

/// Basis of the left kernel `{ x : x * m = 0 }` as rows of a matrix.
/// The basis is saturated and extends to a basis of `Z^nrows`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let rows: Vec<LatVec> = h
        .rows
        .iter()
        .zip(&u.rows)
        .filter(|(hr, _)| is_zero_vec(hr))
        .map(|(_, ur)| ur.clone())
        .collect();
    IntMatrix {
        rows,
        cols: m.nrows(),
    }
}

/// Basis of `{ x in Z^cols : m * x^T = 0 }` (integer right kernel),
/// returned as row vectors.
pub fn right_kernel(m: &IntMatrix) -> IntMatrix {
    left_kernel(&m.transpose())
}

/// Saturated orthogonal complement `{ x in Z^d : <x, v> = 0 for all rows v }`.
pub fn orth_complement(vectors: &[LatVec], dim: usize) -> Vec<LatVec> {
    let m = IntMatrix::new(vectors.to_vec(), dim);
    right_kernel(&m).rows
}

/// Basis of the saturated sublattice `span_Q(vectors) ∩ Z^d`.
/// The result extends to a Z-basis of the full lattice.
pub fn saturate(vectors: &[LatVec], dim: usize) -> Vec<LatVec> {
    let perp = orth_complement(vectors, dim);
    orth_complement(&perp, dim)
}

/// Rank of a set of rational row vectors.
pub fn rat_rank(rows: &[RatVec]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m: Vec<RatVec> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..m.len()).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &inv;
            for c in col..cols {
                let sub = &f * &m[rank][c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn lat_rank(rows: &[LatVec]) -> usize {
    let as_rat: Vec<RatVec> = rows.iter().map(|r| lat_to_rat(r)).collect();
    rat_rank(&as_rat)
}

/// Solves `a * x = b` for square nonsingular rational `a` by Gaussian
/// elimination. Returns `None` when `a` is singular or inconsistent
/// for non-square systems (least constraints first).
pub fn solve_rat(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let nrows = a.len();
    let cols = a.first()?.len();
    let mut m: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for r in 0..nrows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &inv;
            for c in col..=cols {
                let sub = &f * &m[rank][c];
                m[r][c] -= sub;
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    // inconsistent rows
    for r in rank..nrows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, c) in pivots {
        x[c] = &m[r][cols] / &m[r][c];
    }
    Some(x)
}

/// Integer vectors `w_1..w_r` with `<b_i, w_j> = delta_ij` for a
/// saturated basis `b_1..b_r`. Exists exactly because the basis is
/// saturated.
pub fn dual_basis(basis: &[LatVec], dim: usize) -> Vec<LatVec> {
    let r = basis.len();
    if r == 0 {
        return Vec::new();
    }
    let bt = IntMatrix::new(basis.to_vec(), dim).transpose(); // d x r
    let (h, u) = hnf(&bt); // h = u * bt, top r x r block is the identity
    for i in 0..r {
        assert!(
            h.rows[i][i].is_one(),
            "dual_basis: input basis is not saturated"
        );
    }
    // z * h = e_j with z supported on the first r coordinates, then w = z * u
    let mut duals = Vec::with_capacity(r);
    for j in 0..r {
        let mut z = vec![Int::zero(); dim];
        // back-substitution on the triangular top block
        for i in (0..r).rev() {
            let mut acc = if i == j { Int::one() } else { Int::zero() };
            for k in i + 1..r {
                acc -= &z[k] * &h.rows[k][i];
            }
            // pivots verified to be 1 above
            z[i] = acc;
        }
        let w: LatVec = (0..dim)
            .map(|c| {
                let mut acc = Int::zero();
                for (k, zk) in z.iter().enumerate() {
                    if !zk.is_zero() {
                        acc += zk * &u.rows[k][c];
                    }
                }
                acc
            })
            .collect();
        duals.push(w);
    }
    duals
}

/// Coordinates of `x` in the rational span of `basis` (rows). Returns
/// `None` if `x` is outside the span.
pub fn coords_in_span(basis: &[LatVec], x: &[Rat]) -> Option<RatVec> {
    // solve sum c_i b_i = x via the normal equations B B^T c = B x
    let r = basis.len();
    if r == 0 {
        return if is_zero_vec(x) { Some(vec![]) } else { None };
    }
    let mut gram: Vec<RatVec> = Vec::with_capacity(r);
    let mut rhs: Vec<Rat> = Vec::with_capacity(r);
    for bi in basis {
        gram.push(
            basis
                .iter()
                .map(|bj| Rat::from_integer(dot_int(bi, bj)))
                .collect(),
        );
        rhs.push(pair(x, bi));
    }
    let c = solve_rat(&gram, &rhs)?;
    // verify membership
    let mut recon = vec![Rat::zero(); x.len()];
    for (ci, bi) in c.iter().zip(basis) {
        for (k, bik) in bi.iter().enumerate() {
            recon[k] += ci * Rat::from_integer(bik.clone());
        }
    }
    if recon == x {
        Some(c)
    } else {
        None
    }
}
