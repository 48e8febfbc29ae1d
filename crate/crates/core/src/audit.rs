//! Exact and statistical verification: individual-rationality and budget
//! audits, closed-form acceptance probabilities for the randomized
//! mechanism, truthfulness auditing, and approximation-ratio computation.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::knapsack::fractional_opt;
use crate::mechanisms::{
    randomized_distribution, run, run_randomized, run_with_prune, MechanismKind,
};
use crate::model::{BidProfile, Instance, Outcome};
use crate::pruning::{cap_payment, prune, PruneResult};
use crate::scalar::{format_scalar, int, rat, to_f64, Scalar};
use crate::Result;

/// A single failed check with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub item: Option<usize>,
    pub check: String,
    pub witness: String,
}

/// Result of an audit pass; `passed` iff no violations were recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub violations: Vec<Violation>,
    pub checked_points: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, item: Option<usize>, check: &str, witness: String) {
        self.violations.push(Violation {
            item,
            check: check.to_owned(),
            witness,
        });
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.violations.extend(other.violations);
        self.checked_points += other.checked_points;
    }
}

/// Exact acceptance probability per kept item for the randomized mechanism,
/// and the implied expected outcome value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationProbabilities {
    pub x: BTreeMap<usize, Scalar>,
    pub expected_value: Scalar,
}

fn indicator(condition: bool) -> Scalar {
    if condition {
        int(1)
    } else {
        Scalar::zero()
    }
}

/// Evaluates each kept item's acceptance probability against the three-part
/// mixture over the price offered to `i*`: point mass at `hi` (weight
/// `q_star`), point mass at `lo` (weight `q_rest`), uniform on `[lo, hi]`
/// (weight `q`). All arithmetic is exact.
pub fn acceptance_probabilities(
    p: &PruneResult,
    bids: &BidProfile,
    budget: &Scalar,
) -> Result<AllocationProbabilities> {
    let mut x = BTreeMap::new();
    if p.rest.is_empty() {
        // Degenerate support: i* is offered v_{i*}/r with probability 1
        // and always accepts.
        x.insert(p.star, int(1));
        return Ok(AllocationProbabilities {
            expected_value: p.star_value().clone(),
            x,
        });
    }
    let dist = randomized_distribution(p, budget)?;
    let width = &dist.hi - &dist.lo;

    // i* accepts a realized price iff its bid is at most the price.
    let star_bid = bids.bid(p.star)?;
    let upper_part = {
        let cut = if *star_bid > dist.lo { star_bid.clone() } else { dist.lo.clone() };
        let len = &dist.hi - &cut;
        if len.is_positive() { len / &width } else { Scalar::zero() }
    };
    let x_star = &dist.q_star * indicator(*star_bid <= dist.hi)
        + &dist.q_rest * indicator(*star_bid <= dist.lo)
        + &dist.q * upper_part;
    x.insert(p.star, x_star);

    // An item i in T accepts iff the price to i* is at most
    // B - v(T) * b_i / v_i.
    for &i in &p.rest {
        let bid = bids.bid(i)?;
        let threshold = budget - &p.v_rest * bid / &p.values[&i];
        let lower_part = {
            let cut = if threshold < dist.hi { threshold.clone() } else { dist.hi.clone() };
            let len = &cut - &dist.lo;
            if len.is_positive() { len / &width } else { Scalar::zero() }
        };
        let x_i = &dist.q_star * indicator(dist.hi <= threshold)
            + &dist.q_rest * indicator(dist.lo <= threshold)
            + &dist.q * lower_part;
        x.insert(i, x_i);
    }

    let expected_value = x
        .iter()
        .map(|(id, xi)| &p.values[id] * xi)
        .sum();
    Ok(AllocationProbabilities { x, expected_value })
}

/// fopt / alg, or the infinite sentinel when alg = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioValue {
    Finite(Scalar),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioMode {
    /// Deterministic outcome value, or the analytic expected value for the
    /// randomized mechanism.
    Exact,
    /// Empirical mean over seeded trials (exact rational mean).
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub fopt: Scalar,
    pub alg: Scalar,
    pub ratio: RatioValue,
}

/// Computes fopt / alg for a mechanism under truthful bids.
pub fn ratio(
    instance: &Instance,
    kind: MechanismKind,
    mode: RatioMode,
    seed: u64,
    trials: u64,
) -> Result<RatioReport> {
    let bids = BidProfile::truthful(instance);
    let fopt = fractional_opt(instance).fopt;
    let alg = match (kind, mode) {
        (MechanismKind::Randomized, RatioMode::Exact) => {
            let p = prune(instance, &bids, &instance.budget)?;
            acceptance_probabilities(&p, &bids, &instance.budget)?.expected_value
        }
        (_, RatioMode::Exact) => run(kind, instance, &bids, seed)?.value,
        (_, RatioMode::MonteCarlo) => {
            let trials = trials.max(1);
            let mut total = Scalar::zero();
            for t in 0..trials {
                total += run(kind, instance, &bids, trial_seed(seed, t))?.value;
            }
            total / int(trials as i64)
        }
    };
    let ratio = if alg.is_zero() {
        RatioValue::Infinite
    } else {
        RatioValue::Finite(&fopt / &alg)
    };
    Ok(RatioReport { fopt, alg, ratio })
}

/// Exact checks `p_i >= b_i` for each winner (losers receive nothing).
pub fn check_individual_rationality(outcome: &Outcome, bids: &BidProfile) -> AuditReport {
    let mut report = AuditReport::default();
    for &id in &outcome.winners {
        report.checked_points += 1;
        let payment = &outcome.payments[&id];
        match bids.get(id) {
            Some(bid) if payment >= bid => {}
            Some(bid) => report.record(
                Some(id),
                "individual-rationality",
                format!("payment {} < bid {}", format_scalar(payment), format_scalar(bid)),
            ),
            None => report.record(Some(id), "individual-rationality", "winner has no bid".into()),
        }
    }
    report
}

/// Exact check that total payments stay within the budget.
pub fn check_budget_feasibility(outcome: &Outcome, budget: &Scalar) -> AuditReport {
    let mut report = AuditReport::default();
    report.checked_points += 1;
    let total = outcome.total_payment();
    if total > *budget {
        report.record(
            None,
            "budget-feasibility",
            format!("total payment {} > budget {}", format_scalar(&total), format_scalar(budget)),
        );
    }
    report
}

/// Exact checks of the randomized mechanism's analytic structure on one
/// prune result: the weight identity `r B = 2 q_star v_star + 2 q_rest
/// v(T)`, and the per-item lower bounds on `v_i * x_i`.
pub fn check_randomized_identities(
    p: &PruneResult,
    bids: &BidProfile,
    budget: &Scalar,
) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    if p.rest.is_empty() {
        return Ok(report);
    }
    let dist = randomized_distribution(p, budget)?;
    let probs = acceptance_probabilities(p, bids, budget)?;
    let v_star = p.star_value();

    report.checked_points += 1;
    let lhs = &p.r * budget;
    let rhs = int(2) * &dist.q_star * v_star + int(2) * &dist.q_rest * &p.v_rest;
    if lhs != rhs {
        report.record(
            None,
            "weight-identity",
            format!("rB = {} but 2(q*v* + qT vT) = {}", format_scalar(&lhs), format_scalar(&rhs)),
        );
    }

    report.checked_points += 1;
    let star_bid = bids.bid(p.star)?;
    let lhs = v_star * &probs.x[&p.star];
    let rhs = &dist.q_star * v_star + rat(1, 2) * (v_star - &p.r * star_bid);
    if lhs < rhs {
        report.record(
            Some(p.star),
            "star-contribution-bound",
            format!("v*x = {} < {}", format_scalar(&lhs), format_scalar(&rhs)),
        );
    }

    for &i in &p.rest {
        report.checked_points += 1;
        let bid = bids.bid(i)?;
        let v_i = &p.values[&i];
        let lhs = v_i * &probs.x[&i];
        let rhs = &dist.q_rest * v_i + rat(1, 2) * (v_i - &p.r * bid);
        if lhs < rhs {
            report.record(
                Some(i),
                "rest-contribution-bound",
                format!("v_i x_i = {} < {}", format_scalar(&lhs), format_scalar(&rhs)),
            );
        }
    }
    Ok(report)
}

/// Estimate of a winner's threshold bid from one audited seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdEstimate {
    pub seed: u64,
    /// Highest probed bid that still wins.
    pub win_bid: Scalar,
    /// Lowest probed bid that loses (equals `win_bid` when the threshold is
    /// exactly the budget).
    pub lose_bid: Scalar,
    pub payment: Scalar,
}

/// Bisection depth for threshold location: the final interval has width
/// `B / 2^40`.
pub const BISECTION_DEPTH: u32 = 40;

/// Truthfulness audit for one agent: per seed, checks that no deviation on
/// the grid beats truthful bidding, that the win region is downward-closed
/// over the grid, and that a winner's payment equals its located win/lose
/// threshold.
pub fn audit_truthfulness(
    kind: MechanismKind,
    instance: &Instance,
    agent: usize,
    deviations: &[Scalar],
    seeds: &[u64],
) -> Result<(AuditReport, Vec<ThresholdEstimate>)> {
    let truthful = BidProfile::truthful(instance);
    let cost = instance
        .item(agent)
        .ok_or(crate::Error::MissingBid { id: agent })?
        .cost
        .clone();
    let budget = &instance.budget;
    let mut report = AuditReport::default();
    let mut thresholds = Vec::new();

    for &seed in seeds {
        let (p, truthful_outcome) = run_with_prune(kind, instance, &truthful, seed)?;
        let truthful_utility = if truthful_outcome.winners.contains(&agent) {
            &truthful_outcome.payments[&agent] - &cost
        } else {
            Scalar::zero()
        };

        // Structural grid: the only bids at which the outcome can change.
        let mut grid: Vec<Scalar> = vec![Scalar::zero(), &cost / int(2), cost.clone(), budget.clone()];
        grid.extend(truthful_outcome.payments.values().cloned());
        if let Some(v) = p.values.get(&agent) {
            grid.push(v / &p.r);
        }
        grid.extend_from_slice(deviations);
        grid.retain(|b| *b >= Scalar::zero() && *b <= *budget);
        grid.sort();
        grid.dedup();

        let evaluate = |bid: &Scalar| -> Result<(bool, Scalar)> {
            let outcome = run(kind, instance, &truthful.with_bid(agent, bid.clone()), seed)?;
            let utility = if outcome.winners.contains(&agent) {
                &outcome.payments[&agent] - &cost
            } else {
                Scalar::zero()
            };
            Ok((outcome.winners.contains(&agent), utility))
        };

        let mut seen_loss = false;
        for bid in &grid {
            report.checked_points += 1;
            let (wins, utility) = evaluate(bid)?;
            if utility > truthful_utility {
                report.record(
                    Some(agent),
                    "profitable-deviation",
                    format!(
                        "seed {seed}: bid {} yields utility {} > truthful {}",
                        format_scalar(bid),
                        format_scalar(&utility),
                        format_scalar(&truthful_utility)
                    ),
                );
            }
            if wins && seen_loss {
                report.record(
                    Some(agent),
                    "non-monotone-win-region",
                    format!("seed {seed}: wins again at bid {}", format_scalar(bid)),
                );
            }
            if !wins {
                seen_loss = true;
            }
        }

        // Threshold payment: bisect the win/lose boundary for winners.
        if truthful_outcome.winners.contains(&agent) {
            let payment = truthful_outcome.payments[&agent].clone();
            let (wins_at_budget, _) = evaluate(budget)?;
            report.checked_points += 1;
            let estimate = if wins_at_budget {
                // The threshold is the budget itself.
                if payment != *budget {
                    report.record(
                        Some(agent),
                        "threshold-payment",
                        format!(
                            "seed {seed}: wins at the budget but is paid {}",
                            format_scalar(&payment)
                        ),
                    );
                }
                ThresholdEstimate {
                    seed,
                    win_bid: budget.clone(),
                    lose_bid: budget.clone(),
                    payment,
                }
            } else {
                let mut lo = cost.clone(); // wins here by assumption
                let mut hi = budget.clone(); // loses here
                for _ in 0..BISECTION_DEPTH {
                    let mid = (&lo + &hi) / int(2);
                    let (wins, _) = evaluate(&mid)?;
                    if wins {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                // Re-evaluate both endpoints to certify the straddle.
                let (wins_lo, _) = evaluate(&lo)?;
                let (wins_hi, _) = evaluate(&hi)?;
                if !wins_lo || wins_hi {
                    report.record(
                        Some(agent),
                        "threshold-bisection",
                        format!("seed {seed}: endpoints do not straddle the boundary"),
                    );
                }
                if payment < lo || payment > hi {
                    report.record(
                        Some(agent),
                        "threshold-payment",
                        format!(
                            "seed {seed}: payment {} outside [{}, {}]",
                            format_scalar(&payment),
                            format_scalar(&lo),
                            format_scalar(&hi)
                        ),
                    );
                }
                ThresholdEstimate { seed, win_bid: lo, lose_bid: hi, payment }
            };
            thresholds.push(estimate);
        }
    }
    Ok((report, thresholds))
}

/// Derives the per-trial seed from the master seed and the trial counter
/// (splitmix-style), so trials are independent of evaluation order.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Empirical acceptance statistics from seeded trials under truthful bids.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloStats {
    pub trials: u64,
    pub wins: BTreeMap<usize, u64>,
    pub mean_value: Scalar,
}

impl MonteCarloStats {
    pub fn frequency(&self, id: usize) -> f64 {
        *self.wins.get(&id).unwrap_or(&0) as f64 / self.trials as f64
    }

    /// Binomial standard error at the empirical frequency.
    pub fn std_error(&self, id: usize) -> f64 {
        let f = self.frequency(id);
        (f * (1.0 - f) / self.trials as f64).sqrt()
    }

    pub fn mean_value_f64(&self) -> f64 {
        to_f64(&self.mean_value)
    }
}

/// Runs the mechanism `trials` times with counter-derived seeds and records
/// per-item win frequencies and the mean outcome value.
pub fn monte_carlo(
    kind: MechanismKind,
    instance: &Instance,
    trials: u64,
    master_seed: u64,
) -> Result<MonteCarloStats> {
    let trials = trials.max(1);
    let bids = BidProfile::truthful(instance);
    // The prune stage depends only on (instance, bids), so it is hoisted out
    // of the trial loop; each trial is identical to a full `run`.
    let p = prune(instance, &bids, &instance.budget)?;
    let mut wins: BTreeMap<usize, u64> =
        instance.items.iter().map(|it| (it.id, 0)).collect();
    let mut total = Scalar::zero();
    for t in 0..trials {
        let seed = trial_seed(master_seed, t);
        let mut outcome = match kind {
            MechanismKind::FirstWarmup => {
                crate::mechanisms::run_first_warmup(&p, &bids, &instance.budget)
            }
            MechanismKind::SecondWarmup => {
                crate::mechanisms::run_second_warmup(&p, &bids, &instance.budget)
            }
            MechanismKind::Deterministic => {
                crate::mechanisms::run_deterministic(&p, &bids, &instance.budget)
            }
            MechanismKind::Randomized => run_randomized(&p, &bids, &instance.budget, seed),
        };
        for (&id, payment) in outcome.payments.iter_mut() {
            *payment = cap_payment(payment, &p.values[&id], &p.r);
        }
        for &id in &outcome.winners {
            *wins.get_mut(&id).expect("winner is an instance item") += 1;
        }
        total += outcome.value;
    }
    Ok(MonteCarloStats {
        trials,
        wins,
        mean_value: total / int(trials as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{gen_lower_bound, parse_instance, Instance, Item};
    use crate::scalar::{int, rat};

    fn d1() -> Instance {
        parse_instance(
            r#"{"budget":"4","items":[{"value":"6","cost":"2"},{"value":"4","cost":"2"},{"value":"2","cost":"2"}]}"#,
        )
        .unwrap()
    }

    fn d2() -> Instance {
        let items = (0..4)
            .map(|id| Item { id, value: int(1), cost: rat(1, 2) })
            .collect();
        Instance::new(int(1), items).unwrap()
    }

    fn single() -> Instance {
        Instance::new(int(10), vec![Item { id: 0, value: int(5), cost: int(3) }]).unwrap()
    }

    #[test]
    fn probabilities_on_d2() {
        let inst = d2();
        let bids = BidProfile::truthful(&inst);
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        let probs = acceptance_probabilities(&p, &bids, &inst.budget).unwrap();
        assert_eq!(probs.x[&1], int(0));
        assert_eq!(probs.x[&2], rat(1, 2));
        assert_eq!(probs.x[&3], rat(1, 2));
        assert_eq!(probs.expected_value, int(1));
    }

    #[test]
    fn probabilities_on_lower_bound() {
        let (inst, bids) = gen_lower_bound(&rat(1, 100), &int(1)).unwrap();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        let probs = acceptance_probabilities(&p, &bids, &inst.budget).unwrap();
        assert_eq!(probs.x[&0], int(1));
        assert_eq!(probs.x[&2], rat(1, 2));
        assert_eq!(probs.expected_value, rat(3, 2));
    }

    #[test]
    fn star_bidding_above_hi_never_wins() {
        let inst = d2();
        let truthful = BidProfile::truthful(&inst);
        let p = prune(&inst, &truthful, &inst.budget).unwrap();
        // hi = 1/2 on D2; a star bid above it keeps the star in the kept set
        // only if it also survives pruning, so probe just above hi.
        let bids = truthful.with_bid(p.star, rat(1, 2) + rat(1, 1000));
        let p2 = prune(&inst, &bids, &inst.budget).unwrap();
        if p2.kept.contains(&p.star) && !p2.rest.is_empty() {
            let probs = acceptance_probabilities(&p2, &bids, &inst.budget).unwrap();
            assert_eq!(probs.x[&p2.star], int(0));
        }
    }

    #[test]
    fn degenerate_support_accepts_with_probability_one() {
        let inst = single();
        let bids = BidProfile::truthful(&inst);
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        let probs = acceptance_probabilities(&p, &bids, &inst.budget).unwrap();
        assert_eq!(probs.x[&0], int(1));
        assert_eq!(probs.expected_value, int(5));
    }

    #[test]
    fn ratio_on_the_lower_bound_is_tight() {
        let (inst, _) = gen_lower_bound(&rat(1, 100), &int(1)).unwrap();
        let report = ratio(&inst, MechanismKind::Deterministic, RatioMode::Exact, 0, 0).unwrap();
        assert_eq!(report.fopt, rat(599, 200));
        assert_eq!(report.alg, int(1));
        assert_eq!(report.ratio, RatioValue::Finite(rat(599, 200)));
    }

    #[test]
    fn ratio_on_d2_randomized_is_two() {
        let report = ratio(&d2(), MechanismKind::Randomized, RatioMode::Exact, 0, 0).unwrap();
        assert_eq!(report.fopt, int(2));
        assert_eq!(report.alg, int(1));
        assert_eq!(report.ratio, RatioValue::Finite(int(2)));
    }

    #[test]
    fn ratio_on_single_item_is_one() {
        for kind in MechanismKind::ALL {
            let report = ratio(&single(), kind, RatioMode::Exact, 0, 0).unwrap();
            assert_eq!(report.ratio, RatioValue::Finite(int(1)), "{kind}");
        }
    }

    #[test]
    fn ir_and_budget_checks_on_d1() {
        let inst = d1();
        let bids = BidProfile::truthful(&inst);
        let out = run(MechanismKind::Deterministic, &inst, &bids, 0).unwrap();
        assert!(check_individual_rationality(&out, &bids).passed());
        assert!(check_budget_feasibility(&out, &inst.budget).passed());
    }

    #[test]
    fn budget_check_flags_overpayment() {
        let out = Outcome::from_winners(vec![(0, int(1), int(8))]);
        let report = check_budget_feasibility(&out, &int(4));
        assert!(!report.passed());
        assert_eq!(report.violations[0].check, "budget-feasibility");
    }

    #[test]
    fn ir_check_flags_underpayment() {
        let out = Outcome::from_winners(vec![(0, int(1), int(1))]);
        let bids = BidProfile::new([(0usize, int(2))].into_iter().collect()).unwrap();
        assert!(!check_individual_rationality(&out, &bids).passed());
    }

    #[test]
    fn empty_outcome_passes_vacuously() {
        let out = Outcome::empty();
        let bids = BidProfile::new(BTreeMap::new()).unwrap();
        assert!(check_individual_rationality(&out, &bids).passed());
        assert!(check_budget_feasibility(&out, &int(1)).passed());
    }

    #[test]
    fn truthfulness_on_d1_agent0() {
        let inst = d1();
        let grid = vec![int(0), int(1), int(2), int(3), rat(16, 5), rat(7, 2), int(4)];
        let (report, thresholds) =
            audit_truthfulness(MechanismKind::Deterministic, &inst, 0, &grid, &[0]).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(thresholds.len(), 1);
        assert_eq!(thresholds[0].payment, rat(16, 5));
        assert!(thresholds[0].win_bid <= rat(16, 5));
        assert!(thresholds[0].lose_bid >= rat(16, 5));
    }

    #[test]
    fn truthfulness_on_lower_bound_agent0() {
        let (inst, _) = gen_lower_bound(&rat(1, 100), &int(1)).unwrap();
        let grid = vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)];
        let (report, thresholds) =
            audit_truthfulness(MechanismKind::Deterministic, &inst, 0, &grid, &[0]).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(thresholds[0].payment, rat(1, 2));
    }

    #[test]
    fn truthfulness_on_randomized_d2_all_agents() {
        let inst = d2();
        let seeds: Vec<u64> = (0..4).collect();
        for agent in 0..4 {
            let (report, _) =
                audit_truthfulness(MechanismKind::Randomized, &inst, agent, &[], &seeds).unwrap();
            assert!(report.passed(), "agent {agent}: {:?}", report.violations);
        }
    }

    #[test]
    fn randomized_identities_hold_on_examples() {
        for inst in [d1(), d2()] {
            let bids = BidProfile::truthful(&inst);
            let p = prune(&inst, &bids, &inst.budget).unwrap();
            let report = check_randomized_identities(&p, &bids, &inst.budget).unwrap();
            assert!(report.passed(), "{:?}", report.violations);
        }
    }

    #[test]
    fn monte_carlo_deterministic_kind_is_constant() {
        let stats = monte_carlo(MechanismKind::Deterministic, &d1(), 10, 99).unwrap();
        assert_eq!(stats.wins[&0], 10);
        assert_eq!(stats.mean_value, int(6));
    }

    #[test]
    fn monte_carlo_degenerate_randomized_always_accepts() {
        let stats = monte_carlo(MechanismKind::Randomized, &single(), 100, 1).unwrap();
        assert_eq!(stats.wins[&0], 100);
    }

    #[test]
    fn monte_carlo_tracks_analytic_probabilities_on_d2() {
        let inst = d2();
        let trials = 20_000u64;
        let stats = monte_carlo(MechanismKind::Randomized, &inst, trials, 42).unwrap();
        let bids = BidProfile::truthful(&inst);
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        let probs = acceptance_probabilities(&p, &bids, &inst.budget).unwrap();
        for (&id, x) in &probs.x {
            let exact = to_f64(x);
            let se = (exact * (1.0 - exact) / trials as f64).sqrt();
            let err = (stats.frequency(id) - exact).abs();
            assert!(err <= 3.0 * se + 1e-12, "item {id}: err {err}, se {se}");
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = monte_carlo(MechanismKind::Randomized, &d2(), 500, 7).unwrap();
        let b = monte_carlo(MechanismKind::Randomized, &d2(), 500, 7).unwrap();
        assert_eq!(a, b);
    }
}
