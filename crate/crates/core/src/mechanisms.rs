//! Second-stage posted-price mechanisms and the composition wrapper.
//!
//! All four mechanisms consume the output of [`crate::pruning::prune`] and
//! post take-it-or-leave-it prices. An agent accepts an offer iff its bid is
//! at most the offer (acceptance at equality).

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::model::{BidProfile, Instance, Outcome};
use crate::pruning::{cap_payment, prune, PruneResult};
use crate::scalar::{int, rat, Scalar};
use crate::Result;

/// The four second-stage mechanisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MechanismKind {
    FirstWarmup,
    SecondWarmup,
    Deterministic,
    Randomized,
}

impl MechanismKind {
    pub const ALL: [MechanismKind; 4] = [
        MechanismKind::FirstWarmup,
        MechanismKind::SecondWarmup,
        MechanismKind::Deterministic,
        MechanismKind::Randomized,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MechanismKind::FirstWarmup => "first-warmup",
            MechanismKind::SecondWarmup => "second-warmup",
            MechanismKind::Deterministic => "deterministic",
            MechanismKind::Randomized => "randomized",
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, MechanismKind::Randomized)
    }
}

impl std::str::FromStr for MechanismKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "first-warmup" => Ok(MechanismKind::FirstWarmup),
            "second-warmup" => Ok(MechanismKind::SecondWarmup),
            "deterministic" => Ok(MechanismKind::Deterministic),
            "randomized" => Ok(MechanismKind::Randomized),
            other => Err(format!("unknown mechanism {other:?}")),
        }
    }
}

impl std::fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The randomized mechanism's price distribution for the highest-value item:
/// point masses at `hi` (weight `q_star`) and `lo` (weight `q_rest`), plus a
/// uniform draw on `[lo, hi]` (weight `q`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceDistribution {
    pub q: Scalar,
    pub q_star: Scalar,
    pub q_rest: Scalar,
    /// `B - v(T)/r`
    pub lo: Scalar,
    /// `v_{i*}/r`
    pub hi: Scalar,
}

fn offer(p: &PruneResult, id: usize) -> Scalar {
    &p.values[&id] / &p.r
}

/// Collects accepted offers into an outcome. Offers are (id, price).
fn settle(p: &PruneResult, bids: &BidProfile, offers: Vec<(usize, Scalar)>) -> Outcome {
    let accepted = offers
        .into_iter()
        .filter(|(id, price)| bids.get(*id).expect("kept items are bid") <= price)
        .map(|(id, price)| (id, p.values[&id].clone(), price))
        .collect();
    Outcome::from_winners(accepted)
}

/// First warm-up: buy whichever of `{i*}` and `T` has the higher value, at
/// prices `v_i / r`.
pub fn run_first_warmup(p: &PruneResult, bids: &BidProfile, _budget: &Scalar) -> Outcome {
    let offers = if *p.star_value() >= p.v_rest {
        vec![(p.star, offer(p, p.star))]
    } else {
        p.rest.iter().map(|&i| (i, offer(p, i))).collect()
    };
    settle(p, bids, offers)
}

/// Second warm-up: buy `i*` alone when `v_{i*} >= sqrt(2) * v(T)` (checked
/// in squared form); otherwise buy all of `T` at `v_i / r` and offer the
/// residual `B - v(T)/r` to `i*`.
pub fn run_second_warmup(p: &PruneResult, bids: &BidProfile, budget: &Scalar) -> Outcome {
    let v_star = p.star_value();
    if v_star * v_star >= int(2) * &p.v_rest * &p.v_rest {
        settle(p, bids, vec![(p.star, offer(p, p.star))])
    } else {
        let mut offers: Vec<(usize, Scalar)> =
            p.rest.iter().map(|&i| (i, offer(p, i))).collect();
        offers.push((p.star, budget - &p.v_rest / &p.r));
        settle(p, bids, offers)
    }
}

/// The adaptive 3-approximation mechanism.
pub fn run_deterministic(p: &PruneResult, bids: &BidProfile, budget: &Scalar) -> Outcome {
    let v_star = p.star_value().clone();
    let rest_offers = |p: &PruneResult| -> Vec<(usize, Scalar)> {
        p.rest.iter().map(|&i| (i, offer(p, i))).collect()
    };

    if &v_star * int(2) <= p.v_rest {
        // Case 1: T dominates; buy all of T at v_i / r.
        return settle(p, bids, rest_offers(p));
    }
    if v_star >= int(2) * &p.v_rest {
        // Case 2: i* dominates; buy i* at v_{i*} / r.
        return settle(p, bids, vec![(p.star, offer(p, p.star))]);
    }

    // Case 3: offer an adaptive price to i* first.
    let candidate = (int(2) * &v_star - &p.v_rest) * budget / &p.v_kept;
    let star_cap = offer(p, p.star);
    let price_star = if star_cap <= candidate { star_cap } else { candidate };
    let star_bid = bids.get(p.star).expect("kept items are bid");
    if *star_bid <= price_star {
        // i* accepts; split the residual budget over T in proportion to value.
        let mut offers = vec![(p.star, price_star.clone())];
        for &i in &p.rest {
            let share = &p.values[&i] / &p.v_rest * (budget - &price_star);
            let cap = offer(p, i);
            offers.push((i, if cap <= share { cap } else { share }));
        }
        settle(p, bids, offers)
    } else {
        // i* rejects; fall back to buying all of T.
        settle(p, bids, rest_offers(p))
    }
}

/// The randomized mechanism's price distribution over the offer to `i*`.
///
/// Requires `T` nonempty; the degenerate single-item case is handled by
/// [`run_randomized`] directly.
pub fn randomized_distribution(p: &PruneResult, budget: &Scalar) -> Result<PriceDistribution> {
    if p.rest.is_empty() {
        return Err(Error::DegenerateSupport);
    }
    let v_star = p.star_value().clone();
    let min_side = if v_star <= p.v_rest { v_star.clone() } else { p.v_rest.clone() };
    let q = rat(1, 2) * (&p.v_kept - &p.r * budget) / &min_side;
    let (q_star, q_rest) = if v_star <= p.v_rest {
        (rat(1, 2) - &q, rat(1, 2))
    } else {
        (rat(1, 2), rat(1, 2) - &q)
    };
    Ok(PriceDistribution {
        q,
        q_star,
        q_rest,
        lo: budget - &p.v_rest / &p.r,
        hi: &v_star / &p.r,
    })
}

/// Draws a 64-bit dyadic fraction in `[0, 1)` as an exact rational.
fn unit_fraction(rng: &mut ChaCha8Rng) -> Scalar {
    let x: u64 = rng.gen();
    Scalar::new(BigInt::from(x), BigInt::one() << 64)
}

/// The full posted-price vector one seed realizes: the drawn price for `i*`
/// and the proportional residual split over `T`. Prices sum to exactly `B`
/// whenever `T` is nonempty.
pub fn randomized_offers(p: &PruneResult, budget: &Scalar, seed: u64) -> Vec<(usize, Scalar)> {
    if p.rest.is_empty() {
        return vec![(p.star, offer(p, p.star))];
    }
    let dist = randomized_distribution(p, budget).expect("rest is nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = unit_fraction(&mut rng);
    let price_star = if u < dist.q_star {
        dist.hi.clone()
    } else if u < &dist.q_star + &dist.q_rest {
        dist.lo.clone()
    } else {
        let u2 = unit_fraction(&mut rng);
        &dist.lo + u2 * (&dist.hi - &dist.lo)
    };
    let mut offers = vec![(p.star, price_star.clone())];
    for &i in &p.rest {
        offers.push((i, &p.values[&i] / &p.v_rest * (budget - &price_star)));
    }
    offers
}

/// One realization of the randomized mechanism under the given seed.
///
/// In the degenerate single-item case the sole offer is `v_{i*}/r <= B`,
/// posted with probability 1.
pub fn run_randomized(
    p: &PruneResult,
    bids: &BidProfile,
    budget: &Scalar,
    seed: u64,
) -> Outcome {
    settle(p, bids, randomized_offers(p, budget, seed))
}

/// The composition wrapper: prune, dispatch to the second stage, and apply
/// the `v_i / r` payment cap to every winner.
pub fn run(
    kind: MechanismKind,
    instance: &Instance,
    bids: &BidProfile,
    seed: u64,
) -> Result<Outcome> {
    match run_with_prune(kind, instance, bids, seed) {
        Ok((_, outcome)) => Ok(outcome),
        // Every bid priced itself out of the market; nobody wins.
        Err(Error::NoEligibleItems) => Ok(Outcome::empty()),
        Err(e) => Err(e),
    }
}

/// Prune result alongside an outcome, for callers that need both.
pub fn run_with_prune(
    kind: MechanismKind,
    instance: &Instance,
    bids: &BidProfile,
    seed: u64,
) -> Result<(PruneResult, Outcome)> {
    bids.check_covers(instance)?;
    let p = prune(instance, bids, &instance.budget)?;
    let mut outcome = match kind {
        MechanismKind::FirstWarmup => run_first_warmup(&p, bids, &instance.budget),
        MechanismKind::SecondWarmup => run_second_warmup(&p, bids, &instance.budget),
        MechanismKind::Deterministic => run_deterministic(&p, bids, &instance.budget),
        MechanismKind::Randomized => run_randomized(&p, bids, &instance.budget, seed),
    };
    for (&id, payment) in outcome.payments.iter_mut() {
        *payment = cap_payment(payment, &p.values[&id], &p.r);
    }
    Ok((p, outcome))
}
