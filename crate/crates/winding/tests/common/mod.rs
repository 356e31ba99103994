//! Shared helpers for the integration suites: seeded word and polynomial
//! generators.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use winding::laurent::LPoly;
use winding::words::{Gen, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random reduced word of at most `max_len` letters.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut w = Word::empty();
    for _ in 0..len {
        let g = if rng.gen_bool(0.5) { Gen::X } else { Gen::Y };
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        w.push_run(g, e);
    }
    w
}

/// Random element of the derived subgroup: a random word with its
/// exponent sums cancelled.
pub fn random_derived(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let w = random_word(rng, max_len);
    let (ex, ey) = w.exponent_vector();
    w.concat(&Word::x_pow(-ex)).concat(&Word::y_pow(-ey))
}

/// Random sparse Laurent polynomial.
pub fn random_poly(rng: &mut ChaCha8Rng, terms: usize, max_exp: i64, max_coeff: i64) -> LPoly {
    let mut p = LPoly::zero();
    for _ in 0..terms {
        let i = rng.gen_range(-max_exp..=max_exp);
        let j = rng.gen_range(-max_exp..=max_exp);
        let c = rng.gen_range(-max_coeff..=max_coeff);
        p.add_term(i, j, BigInt::from(c));
    }
    p
}

/// Random connected simply-connected polyomino with `cells` cells, grown
/// cell by cell (retried until the simple-connectivity check passes).
pub fn random_polyomino(rng: &mut ChaCha8Rng, cells: usize) -> winding::tilings::Region {
    loop {
        let mut set = std::collections::BTreeSet::from([(0i64, 0i64)]);
        while set.len() < cells {
            let &base = set
                .iter()
                .nth(rng.gen_range(0..set.len()))
                .expect("nonempty");
            let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.gen_range(0..4)];
            set.insert((base.0 + dx, base.1 + dy));
        }
        if let Ok(region) = winding::tilings::Region::new(set) {
            return region;
        }
    }
}
