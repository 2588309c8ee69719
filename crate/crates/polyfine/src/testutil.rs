//! Shared fixtures for unit tests.

use crate::num::point;
use crate::polytope::Polytope;

pub fn parallelepiped() -> Polytope {
    Polytope::from_vertices(
        &[
            point(&[0, 0, 0]),
            point(&[-1, 1, 1]),
            point(&[1, -1, 1]),
            point(&[1, 1, -1]),
            point(&[2, 0, 0]),
            point(&[0, 2, 0]),
            point(&[0, 0, 2]),
            point(&[1, 1, 1]),
        ],
        3,
    )
}
