//! Shared sampling helpers for the randomized suites. The seed defaults to
//! a fixed value and can be overridden through `HILBNUM_SEED`.

use hilbnum::{Monomial, MonomialIdeal};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng() -> ChaCha8Rng {
    let seed = std::env::var("HILBNUM_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0x48494C42);
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random monomial over `x1..x{max_var}` with `1 <= tdeg <= max_deg`.
pub fn random_monomial(rng: &mut ChaCha8Rng, max_var: u32, max_deg: u32) -> Monomial {
    loop {
        let mut budget = rng.random_range(1..=max_deg);
        let mut pairs = Vec::new();
        for v in 1..=max_var {
            if budget == 0 {
                break;
            }
            let e = rng.random_range(0..=budget);
            if e > 0 {
                pairs.push((v, e));
                budget -= e;
            }
        }
        let m = Monomial::from_pairs(pairs).unwrap();
        if !m.is_one() {
            return m;
        }
    }
}

/// A random minimalized ideal with at most `max_gens` generators over
/// `x1..x{max_var}`, generator degrees `<= max_deg`.
pub fn random_ideal(
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_var: u32,
    max_deg: u32,
) -> MonomialIdeal {
    let k = rng.random_range(1..=max_gens);
    MonomialIdeal::generated_by((0..k).map(|_| random_monomial(rng, max_var, max_deg)))
}
