//! Deterministic staircase corpora for the limit-ideal verification runs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::direction::Direction;
use crate::lattice::{LatticePoint, Staircase};
use crate::ops::{delta_specialize_staircase, dilate, dilate_uniform, sum_along_axis};

/// Largest staircase the corpus will contain.
pub const MAX_CORPUS_CARDINALITY: usize = 200;

/// A fixed, seeded mix of structured and random staircases of the given
/// dimension (supported: 2, 3, 4). Repeated calls return identical corpora.
pub fn limit_corpus(dim: usize) -> Vec<Staircase> {
    let (target, coord_cap, card_cap) = match dim {
        2 => (20usize, 12u32, 200usize),
        3 => (20, 7, 150),
        4 => (12, 3, 80),
        _ => panic!("limit corpus covers dimensions 2..=4"),
    };
    let mut out = structured(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e + dim as u64);
    while out.len() < target {
        let generators: Vec<LatticePoint> = (0..rng.gen_range(1..=3))
            .map(|_| {
                LatticePoint::new((0..dim).map(|_| rng.gen_range(0..=coord_cap)).collect())
            })
            .collect();
        let e = Staircase::downward_closure(dim, generators).expect("closure");
        let maxc = e.max_coords().into_iter().max().unwrap_or(0);
        if e.is_empty() || e.len() > card_cap || maxc > coord_cap {
            continue;
        }
        out.push(e);
    }
    debug_assert!(out.iter().all(|e| e.len() <= MAX_CORPUS_CARDINALITY));
    debug_assert!(out.iter().all(|e| e.dim() == dim));
    out
}

fn structured(dim: usize) -> Vec<Staircase> {
    let r = |m: u32| Staircase::regular(dim, m);
    let mut out = vec![r(1), r(2), r(3)];
    out.push(dilate_uniform(2, &r(1)).unwrap());
    out.push(dilate_uniform(2, &r(2)).unwrap());
    match dim {
        2 => {
            out.push(r(4));
            out.push(dilate_uniform(3, &r(2)).unwrap());
            out.push(dilate(&[1, 3], &r(2)).unwrap());
            out.push(dilate(&[2, 1], &r(3)).unwrap());
            out.push(sum_along_axis(0, &[r(2), r(2)]).unwrap());
            out.push(sum_along_axis(1, &[r(1), r(3)]).unwrap());
            let dir = Direction::new(vec![1, -2]).unwrap();
            out.push(delta_specialize_staircase(&dir, &dilate_uniform(2, &r(2)).unwrap()).unwrap());
            // a tall column and a wide box
            out.push(
                Staircase::downward_closure(2, vec![LatticePoint::new(vec![0, 9])]).unwrap(),
            );
            out.push(
                Staircase::downward_closure(2, vec![LatticePoint::new(vec![6, 2])]).unwrap(),
            );
        }
        3 => {
            out.push(dilate_uniform(3, &r(1)).unwrap());
            out.push(dilate(&[1, 2, 2], &r(2)).unwrap());
            out.push(sum_along_axis(2, &[r(2), r(2)]).unwrap());
            let dir = Direction::new(vec![1, -1, -1]).unwrap();
            out.push(delta_specialize_staircase(&dir, &dilate_uniform(2, &r(1)).unwrap()).unwrap());
            out.push(delta_specialize_staircase(&dir, &dilate_uniform(2, &r(2)).unwrap()).unwrap());
            out.push(
                Staircase::downward_closure(3, vec![LatticePoint::new(vec![0, 0, 7])]).unwrap(),
            );
            out.push(
                Staircase::downward_closure(3, vec![LatticePoint::new(vec![2, 2, 2])]).unwrap(),
            );
        }
        4 => {
            let dir = Direction::new(vec![1, -1, -1, 0]).unwrap();
            out.push(delta_specialize_staircase(&dir, &dilate_uniform(2, &r(1)).unwrap()).unwrap());
            out.push(
                Staircase::downward_closure(4, vec![LatticePoint::new(vec![1, 1, 1, 1])]).unwrap(),
            );
            out.push(
                Staircase::downward_closure(4, vec![LatticePoint::new(vec![3, 1, 0, 0])]).unwrap(),
            );
        }
        _ => unreachable!(),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes_and_bounds() {
        let mut total = 0;
        for dim in 2..=4usize {
            let corpus = limit_corpus(dim);
            total += corpus.len();
            assert!(corpus.iter().all(|e| e.dim() == dim));
            assert!(corpus
                .iter()
                .all(|e| !e.is_empty() && e.len() <= MAX_CORPUS_CARDINALITY));
        }
        assert!(total >= 50, "corpus holds {total} staircases");
    }

    #[test]
    fn corpus_is_deterministic() {
        for dim in 2..=4usize {
            let a = limit_corpus(dim);
            let b = limit_corpus(dim);
            assert_eq!(a.len(), b.len());
            assert!(a.iter().zip(&b).all(|(x, y)| x == y));
        }
    }
}
