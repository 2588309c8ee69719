use polyfine::input::{parse_input, to_polytope};
use polyfine::num::*;
use polyfine::polytope::Polytope;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(name: &str) -> Polytope {
    let path = corpus_dir().join(format!("{name}.poly"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    to_polytope(&parse_input(&text).expect("parse")).expect("polytope")
}

/// The worked examples, all full-dimensional.
pub const EXAMPLE_NAMES: &[&str] = &[
    "parallelepiped",
    "fivedim",
    "simplex27",
    "rational_triangle",
    "sec7_simplex",
    "skarke",
    "cube",
    "simplex3_x4",
    "simplex3_x5",
    "genus2",
    "diamond",
];

/// Deterministic random full-dimensional lattice polytopes with
/// coordinates in [-4, 4].
pub fn random_polytopes(d: usize, count: usize, seed: u64) -> Vec<Polytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let npts = rng.gen_range(d + 1..=d + 5);
        let pts: Vec<RatVec> = (0..npts)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-4..=4))).collect())
            .collect();
        let p = Polytope::from_vertices(&pts, d);
        if p.is_full_dim() {
            out.push(p);
        }
    }
    out
}

pub fn pass(line: &str) {
    println!("{line}: PASS");
}
