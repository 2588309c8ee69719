//! Exact scalar and vector arithmetic over arbitrary-precision rationals
//! and the integer lattice.
//!
//! All geometry in this crate is exact: coordinates in `M_Q` are
//! [`Rat`] and dual lattice vectors in `N` are [`LatVec`]. No floating
//! point appears anywhere in the core.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// A dual lattice vector `nu` in `N = Z^d`.
pub type LatVec = Vec<Int>;
/// A rational point of `M_Q = Q^d`.
pub type RatVec = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn lat(coords: &[i64]) -> LatVec {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn point(coords: &[i64]) -> RatVec {
    coords.iter().map(|&c| rat(c)).collect()
}

pub fn rat_point(coords: &[(i64, i64)]) -> RatVec {
    coords.iter().map(|&(p, q)| ratio(p, q)).collect()
}

/// Pairing `<x, nu>` of a rational point with a lattice vector.
pub fn pair(x: &[Rat], nu: &[Int]) -> Rat {
    debug_assert_eq!(x.len(), nu.len());
    let mut acc = Rat::zero();
    for (xi, ni) in x.iter().zip(nu) {
        if !ni.is_zero() {
            acc += xi * Rat::from_integer(ni.clone());
        }
    }
    acc
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (ai, bi) in a.iter().zip(b) {
        acc += ai * bi;
    }
    acc
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (ai, bi) in a.iter().zip(b) {
        acc += ai * bi;
    }
    acc
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Rat], s: &Rat) -> RatVec {
    a.iter().map(|x| x * s).collect()
}

pub fn neg_lat(a: &[Int]) -> LatVec {
    a.iter().map(|x| -x).collect()
}

pub fn lat_to_rat(a: &[Int]) -> RatVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Divides a nonzero lattice vector by the gcd of its entries,
/// preserving signs.
pub fn primitive(v: &[Int]) -> LatVec {
    let mut g = Int::zero();
    for c in v {
        g = g.gcd(c);
    }
    assert!(!g.is_zero(), "primitive: zero vector");
    v.iter().map(|c| c / &g).collect()
}

/// Clears denominators of a nonzero rational vector and reduces to a
/// primitive integer vector pointing the same way.
pub fn primitive_from_rat(v: &[Rat]) -> LatVec {
    let mut lcm = Int::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: LatVec = v
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive(&ints)
}

/// Formats a rational as `p/q` (reduced, `q > 0`) or a bare integer.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_vec_str(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

pub fn lat_vec_i64(v: &[Int]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

/// Largest absolute value of an entry (`||v||_inf`).
pub fn inf_norm(v: &[Int]) -> Int {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(Int::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&lat(&[4, 6])), lat(&[2, 3]));
        assert_eq!(primitive(&lat(&[0, 0, 5])), lat(&[0, 0, 1]));
        assert_eq!(primitive(&lat(&[-3, -6, -9])), lat(&[-1, -2, -3]));
    }

    #[test]
    #[should_panic]
    fn primitive_zero_panics() {
        primitive(&lat(&[0, 0]));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(rat_str(&ratio(3, 2)), "3/2");
        assert_eq!(rat_str(&ratio(-4, 2)), "-2");
        assert_eq!(rat_str(&rat(7)), "7");
    }

    #[test]
    fn pairing() {
        let x = rat_point(&[(1, 2), (1, 3)]);
        let nu = lat(&[6, 3]);
        assert_eq!(pair(&x, &nu), rat(4));
    }
}
