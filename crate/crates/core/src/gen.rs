//! Seeded random instances for the property suites.
//!
//! Every generator draws from a caller-supplied [`ChaCha8Rng`], so a suite
//! run is reproducible from its seed alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolalg::FinBool;
use crate::kolmo::Cylinder;
use crate::proba::{self, ProbAlgebra, ProbMorphism};
use crate::scalar::{Rational, Scalar};

pub type SeededRng = ChaCha8Rng;

/// A generator stream for one named check: independent of scheduling.
pub fn rng(seed: u64, stream: &str) -> SeededRng {
    let salt = stream
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn named(prefix: &str, n: usize) -> FinBool {
    FinBool::new((0..n).map(|i| format!("{prefix}{i}"))).expect("fresh names")
}

fn normalize(weights: &[u64]) -> Vec<Rational> {
    let total: u64 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| Rational::from_ratio(w as i64, total as i64))
        .collect()
}

/// `n` atoms `{prefix}0…` with random positive masses.
pub fn prob_algebra(rng: &mut SeededRng, prefix: &str, n: usize) -> ProbAlgebra {
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    ProbAlgebra::new(named(prefix, n), normalize(&weights)).expect("positive weights")
}

/// A random map of `x` onto a fresh `m`-atom target carrying the pushforward.
pub fn factor_of(rng: &mut SeededRng, x: &ProbAlgebra, prefix: &str, m: usize) -> ProbMorphism {
    let n = x.atom_count();
    assert!(1 <= m && m <= n);
    let mut map: Vec<usize> = (0..n).map(|a| if a < m { a } else { rng.gen_range(0..m) }).collect();
    map.shuffle(rng);
    let y = ProbAlgebra::new(named(prefix, m), proba::pushforward(x.measure(), &map, m)).expect("onto");
    ProbMorphism::new(x.clone(), y, map).expect("pushforward target")
}

/// A random factor map with at most `max_atoms` source atoms.
pub fn prob_morphism(rng: &mut SeededRng, max_atoms: usize) -> ProbMorphism {
    let n = rng.gen_range(1..=max_atoms);
    let x = prob_algebra(rng, "x", n);
    let m = rng.gen_range(1..=n);
    factor_of(rng, &x, "y", m)
}

/// `X → Y → Z`.
pub fn composable_pair(rng: &mut SeededRng, max_atoms: usize) -> (ProbMorphism, ProbMorphism) {
    let first = prob_morphism(rng, max_atoms);
    let m = rng.gen_range(1..=first.target().atom_count());
    let second = factor_of(rng, first.target(), "z", m);
    (first, second)
}

/// An extension of `y` in which every atom splits into 1–3 pieces.
pub fn extension_of(rng: &mut SeededRng, y: &ProbAlgebra, prefix: &str) -> ProbMorphism {
    let mut masses = Vec::new();
    let mut map = Vec::new();
    for (b, m) in y.measure().iter().enumerate() {
        let parts = rng.gen_range(1..=3);
        let weights: Vec<u64> = (0..parts).map(|_| rng.gen_range(1..=4)).collect();
        for w in normalize(&weights) {
            masses.push(w * m.clone());
            map.push(b);
        }
    }
    // zero-padded names keep the sorted atom order equal to creation order
    let n = masses.len();
    let algebra = FinBool::new((0..n).map(|i| format!("{prefix}{i:02}"))).expect("fresh names");
    let x = ProbAlgebra::new(algebra, masses).expect("positive pieces");
    ProbMorphism::new(x, y.clone(), map).expect("pieces sum to the base mass")
}

/// Two extensions of one random base.
pub fn pair_over(rng: &mut SeededRng, max_base: usize) -> (ProbMorphism, ProbMorphism) {
    let k = rng.gen_range(1..=max_base);
    let y = prob_algebra(rng, "y", k);
    (extension_of(rng, &y, "p"), extension_of(rng, &y, "q"))
}

/// A random rational in `[-9, 9]` with denominator at most 6.
pub fn rational(rng: &mut SeededRng) -> Rational {
    Rational::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn real_vector(rng: &mut SeededRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

/// A space with masses drawn from `{1, 2}` (so mass classes have several
/// members) and 1–3 mass-preserving permutations.
pub fn action(rng: &mut SeededRng, max_atoms: usize) -> (ProbAlgebra, Vec<ProbMorphism>) {
    let n = rng.gen_range(1..=max_atoms);
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let x = ProbAlgebra::new(named("s", n), normalize(&weights)).expect("positive");
    let count = rng.gen_range(1..=3);
    let generators = (0..count)
        .map(|_| {
            let mut map: Vec<usize> = (0..n).collect();
            for class in [1u64, 2] {
                let members: Vec<usize> = (0..n).filter(|&a| weights[a] == class).collect();
                // a random permutation of each class, sometimes only a
                // transposition so that orbits stay small
                let mut images = members.clone();
                if rng.gen_bool(0.5) {
                    images.shuffle(rng);
                } else if images.len() >= 2 {
                    let i = rng.gen_range(0..images.len());
                    let j = rng.gen_range(0..images.len());
                    images.swap(i, j);
                }
                for (a, b) in members.into_iter().zip(images) {
                    map[a] = b;
                }
            }
            ProbMorphism::new(x.clone(), x.clone(), map).expect("mass classes are preserved")
        })
        .collect();
    (x, generators)
}

/// A cylinder over 1–3 random indices in `1..=max_index` with a random
/// event, plus random extra indices (so `|F ∪ extra| ≤ 6`).
pub fn cylinder(rng: &mut SeededRng, atoms: &[String], max_index: u64) -> (Cylinder, Vec<u64>) {
    let mut pool: Vec<u64> = (1..=max_index).collect();
    pool.shuffle(rng);
    let k = rng.gen_range(1..=3);
    let indices: Vec<u64> = pool[..k].to_vec();
    let extra_count = rng.gen_range(0..=(6 - k).min(pool.len() - k));
    let extra = pool[k..k + extra_count].to_vec();
    let size = atoms.len().pow(k as u32);
    let event = (0..size)
        .filter(|_| rng.gen_bool(0.5))
        .map(|flat| {
            crate::enumerate::unflatten(flat, &vec![atoms.len(); k])
                .into_iter()
                .map(|a| atoms[a].clone())
                .collect()
        })
        .collect();
    (Cylinder { indices, event }, extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_valid_and_reproducible() {
        let mut a = rng(7, "x");
        let mut b = rng(7, "x");
        for _ in 0..50 {
            let t = prob_morphism(&mut a, 12);
            assert_eq!(t, prob_morphism(&mut b, 12));
            assert!(t.is_surjective());
        }
        let mut r = rng(1, "pairs");
        for _ in 0..20 {
            let (p, q) = pair_over(&mut r, 4);
            assert_eq!(p.target(), q.target());
            let (f, g) = composable_pair(&mut r, 6);
            assert_eq!(f.target(), g.source());
            let (x, gens) = action(&mut r, 6);
            assert!(gens.iter().all(|g| g.source() == &x && g.is_bijective()));
        }
        let (mut x, mut y) = (rng(7, "x"), rng(7, "y"));
        let xs: Vec<_> = (0..10).map(|_| prob_morphism(&mut x, 12)).collect();
        let ys: Vec<_> = (0..10).map(|_| prob_morphism(&mut y, 12)).collect();
        assert_ne!(xs, ys);
    }
}
