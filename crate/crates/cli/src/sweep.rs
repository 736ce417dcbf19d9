//! Seeded random sweeps of the normalizer identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use weylsect::{
    ExtendedElement, Isogeny, IsogenyLattice, MonomialGroup, Normalizer, TypeTag, WeylElement,
};

use crate::CliError;

/// Systems used by the cocycle sweep.
pub const COCYCLE_SYSTEMS: [(TypeTag, usize); 5] = [
    (TypeTag::A, 3),
    (TypeTag::B, 3),
    (TypeTag::C, 3),
    (TypeTag::D, 4),
    (TypeTag::G, 2),
];

/// Rank ≤ 4 systems used by the powers sweep.
pub const POWERS_SYSTEMS: [(TypeTag, usize); 8] = [
    (TypeTag::A, 2),
    (TypeTag::A, 4),
    (TypeTag::B, 3),
    (TypeTag::B, 4),
    (TypeTag::C, 4),
    (TypeTag::D, 4),
    (TypeTag::F, 4),
    (TypeTag::G, 2),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn context(t: TypeTag, n: usize) -> Result<Normalizer, CliError> {
    let lat = IsogenyLattice::build(t, n, Isogeny::Adjoint)?;
    Ok(Normalizer::new(lat, MonomialGroup::constants(24)?))
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..rank)).collect()
}

fn element(ctx: &Normalizer, word: &[usize]) -> WeylElement {
    ctx.sys().element_of(word)
}

/// `c(u,v) c(uv,x) = u(c(v,x)) c(u,vx)` on random word triples, spread
/// evenly over [`COCYCLE_SYSTEMS`].
pub fn cocycle_sweep(seed: u64, trials: usize) -> Result<SweepReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctxs: Vec<Normalizer> = COCYCLE_SYSTEMS
        .iter()
        .map(|&(t, n)| context(t, n))
        .collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    for k in 0..trials {
        let c = &ctxs[k % ctxs.len()];
        let words: Vec<Vec<usize>> = (0..3)
            .map(|_| random_word(&mut rng, c.rank(), 16))
            .collect();
        let (u, v, x) = (
            element(c, &words[0]),
            element(c, &words[1]),
            element(c, &words[2]),
        );
        let sys = c.sys();
        let uv = sys.compose(&u, &v);
        let vx = sys.compose(&v, &x);
        let lhs = &c.tits_cocycle(&u, &v) * &c.tits_cocycle(&uv, &x);
        let rhs = &c.act(&u, &c.tits_cocycle(&v, &x)) * &c.tits_cocycle(&u, &vx);
        if lhs != rhs {
            failures.push(format!("{}: {:?}", sys.name(), words));
        }
    }
    Ok(SweepReport {
        name: "cocycle".into(),
        seed,
        trials,
        failures,
    })
}

/// `N∘(w)^k = N∘(w^k) · ∏_{m<k} ∏_{F_w(m)} α^∨(-1)` for random `w` and `k ≤ 6`.
pub fn powers_sweep(seed: u64, trials: usize) -> Result<SweepReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctxs: Vec<Normalizer> = POWERS_SYSTEMS
        .iter()
        .map(|&(t, n)| context(t, n))
        .collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    for k in 0..trials {
        let c = &ctxs[k % ctxs.len()];
        let word = random_word(&mut rng, c.rank(), 20);
        let pow = rng.gen_range(1..=6u32);
        let w = element(c, &word);
        let lhs = c.pow(&c.tits_lift(&w), pow)?;
        let wk = c.sys().power(&w, pow);
        let disc = ExtendedElement {
            t: c.tits_power_discrepancy(&w, pow),
            w: c.sys().identity(),
        };
        let rhs = c.mul(&c.tits_lift(&wk), &disc)?;
        if lhs != rhs {
            failures.push(format!("{}: {:?}^{pow}", c.sys().name(), word));
        }
    }
    Ok(SweepReport {
        name: "powers".into(),
        seed,
        trials,
        failures,
    })
}
