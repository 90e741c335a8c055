#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use permcode::{make_code, Code, Isometry, Permutation};

pub fn p(images: &str) -> Permutation {
    images.parse().unwrap()
}

pub fn code(d: usize, rows: &[&str]) -> Code {
    make_code(d, rows.iter().map(|r| p(r))).unwrap()
}

pub fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_zero_based(&v)
}

pub fn random_isometry(rng: &mut StdRng, n: usize) -> Isometry {
    Isometry::new(random_perm(rng, n), random_perm(rng, n), rng.gen()).unwrap()
}

/// Greedy random code with at most `target` elements.
pub fn random_code(rng: &mut StdRng, n: usize, d: usize, target: usize) -> Code {
    let mut all: Vec<Permutation> = Permutation::all(n).collect();
    all.shuffle(rng);
    let mut picked: Vec<Permutation> = Vec::new();
    for phi in all {
        if picked.len() == target {
            break;
        }
        if picked.iter().all(|q| q.distance(&phi) >= d) {
            picked.push(phi);
        }
    }
    make_code(d, picked).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
