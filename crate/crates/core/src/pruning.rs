//! First-stage pruning: discard low value-per-cost items until the budget
//! at ratio `r` covers everything but the highest-value item.
//!
//! The continuous ratio increase is discretized to events: between an item's
//! discard point and the stop point neither the stop condition nor the
//! membership of the kept set changes, so jumping from event to event is
//! exact.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::model::{BidProfile, Instance};
use crate::scalar::Scalar;
use crate::Result;

/// Output of the pruning stage: the final ratio and the surviving items,
/// plus the derived aggregates every second stage consumes.
///
/// Satisfies `v(T) <= r * B <= v(S)`; the right inequality is strict
/// whenever `rest` is nonempty (equality occurs only when the stop
/// condition already fails at initialization with a single kept item).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneResult {
    /// Final ratio at the moment the stop condition first fails.
    pub r: Scalar,
    /// Surviving item ids, ascending.
    pub kept: Vec<usize>,
    /// Highest-value kept item, ties broken by smallest id.
    pub star: usize,
    /// Kept items other than `star`, ascending.
    pub rest: Vec<usize>,
    /// Values of the kept items.
    pub values: BTreeMap<usize, Scalar>,
    /// Total value of the kept set.
    pub v_kept: Scalar,
    /// Total value of `rest`.
    pub v_rest: Scalar,
    /// Sum of bids over the kept set (the mechanism's view of its cost).
    pub c_kept_lower: Scalar,
}

impl PruneResult {
    pub fn star_value(&self) -> &Scalar {
        &self.values[&self.star]
    }
}

struct Live {
    id: usize,
    value: Scalar,
    bid: Scalar,
}

fn build_result(r: Scalar, live: &[Live]) -> PruneResult {
    let star = live
        .iter()
        .max_by(|a, b| a.value.cmp(&b.value).then(b.id.cmp(&a.id)))
        .expect("kept set is nonempty")
        .id;
    let values: BTreeMap<usize, Scalar> =
        live.iter().map(|it| (it.id, it.value.clone())).collect();
    let v_kept: Scalar = live.iter().map(|it| it.value.clone()).sum();
    let v_rest = &v_kept - &values[&star];
    PruneResult {
        r,
        kept: live.iter().map(|it| it.id).collect(),
        star,
        rest: live.iter().map(|it| it.id).filter(|id| *id != star).collect(),
        values,
        v_kept,
        v_rest,
        c_kept_lower: live.iter().map(|it| it.bid.clone()).sum(),
    }
}

/// Runs the pruning stage on the instance's values and the reported bids.
///
/// Starts at `r = max v_i / B` with `S = {i : v_i >= r * b_i}`; while
/// `r * B < v(S) - max v(S)`, either discards the smallest-id item whose
/// ratio has been reached, or advances `r` to the next event (the nearest
/// item ratio strictly above `r`, or the stop point `(v(S) - max) / B`,
/// whichever is smaller).
pub fn prune(instance: &Instance, bids: &BidProfile, budget: &Scalar) -> Result<PruneResult> {
    if instance.items.is_empty() {
        return Err(Error::NoItems);
    }
    bids.check_covers(instance)?;

    let max_value = instance
        .items
        .iter()
        .map(|it| it.value.clone())
        .max()
        .expect("nonempty");
    let mut r = &max_value / budget;

    // All ratio comparisons are cross-multiplied: membership is
    // v_i >= r * b_i, so bid-0 items are always members.
    let mut live: Vec<Live> = instance
        .items
        .iter()
        .filter_map(|it| {
            let bid = bids.get(it.id).expect("covered").clone();
            (it.value >= &r * &bid).then(|| Live {
                id: it.id,
                value: it.value.clone(),
                bid,
            })
        })
        .collect();
    // Possible only when every bid exceeds the budget; no agent can win.
    if live.is_empty() {
        return Err(Error::NoEligibleItems);
    }

    loop {
        let v_live: Scalar = live.iter().map(|it| it.value.clone()).sum();
        let max_live = live
            .iter()
            .map(|it| it.value.clone())
            .max()
            .expect("kept set never empties");
        let slack = &v_live - &max_live;

        // Stop-condition check: loop runs while r * B < v(S) - max v(S).
        if &r * budget >= slack {
            return Ok(build_result(r, &live));
        }

        // Discard the smallest-id item whose ratio has been reached, one at
        // a time, re-checking the stop condition after each.
        if let Some(pos) = live
            .iter()
            .position(|it| !it.bid.is_zero() && it.value <= &r * &it.bid)
        {
            live.remove(pos);
            continue;
        }

        // Advance r to the next event.
        let stop_point = &slack / budget;
        let next_ratio = live
            .iter()
            .filter(|it| !it.bid.is_zero())
            .map(|it| &it.value / &it.bid)
            .filter(|ratio| *ratio > r)
            .min();
        r = match next_ratio {
            Some(ratio) if ratio < stop_point => ratio,
            _ => stop_point,
        };
    }
}

/// Caps a second-stage payment at `value / r` (the composition template).
pub fn cap_payment(raw: &Scalar, value: &Scalar, r: &Scalar) -> Scalar {
    let cap = value / r;
    if *raw <= cap {
        raw.clone()
    } else {
        cap
    }
}

/// Upper bound on the fractional optimum implied by a prune result:
/// `v(S) + r * (B - c(S))`, with `c(S)` read from the bids.
pub fn fopt_bound(p: &PruneResult, budget: &Scalar) -> Scalar {
    &p.v_kept + &p.r * (budget - &p.c_kept_lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{gen_lower_bound, parse_instance, BidProfile, Instance, Item};
    use crate::scalar::{int, rat};

    fn d1() -> (Instance, BidProfile) {
        let inst = parse_instance(
            r#"{"budget":"4","items":[{"value":"6","cost":"2"},{"value":"4","cost":"2"},{"value":"2","cost":"2"}]}"#,
        )
        .unwrap();
        let bids = BidProfile::truthful(&inst);
        (inst, bids)
    }

    fn d2() -> (Instance, BidProfile) {
        let items = (0..4)
            .map(|id| Item { id, value: int(1), cost: rat(1, 2) })
            .collect();
        let inst = Instance::new(int(1), items).unwrap();
        let bids = BidProfile::truthful(&inst);
        (inst, bids)
    }

    #[test]
    fn prune_d1_stops_at_initialization() {
        let (inst, bids) = d1();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(p.r, rat(3, 2));
        assert_eq!(p.kept, vec![0, 1]);
        assert_eq!(p.star, 0);
        assert_eq!(p.rest, vec![1]);
        assert_eq!(p.v_kept, int(10));
        assert_eq!(p.v_rest, int(4));
        assert_eq!(p.c_kept_lower, int(4));
    }

    #[test]
    fn prune_d2_discards_one_item() {
        let (inst, bids) = d2();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(p.r, int(2));
        assert_eq!(p.kept, vec![1, 2, 3]);
        assert_eq!(p.star, 1);
        assert_eq!(p.rest, vec![2, 3]);
        assert_eq!(p.v_kept, int(3));
    }

    #[test]
    fn prune_single_item() {
        let inst = Instance::new(
            int(10),
            vec![Item { id: 0, value: int(5), cost: int(3) }],
        )
        .unwrap();
        let bids = BidProfile::truthful(&inst);
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(p.r, rat(1, 2));
        assert_eq!(p.kept, vec![0]);
        assert_eq!(p.star, 0);
        assert!(p.rest.is_empty());
        assert_eq!(p.v_rest, int(0));
    }

    #[test]
    fn prune_lower_bound_instance() {
        let (inst, bids) = gen_lower_bound(&rat(1, 100), &int(1)).unwrap();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(p.r, rat(399, 200));
        assert_eq!(p.kept, vec![0, 2]);
        assert_eq!(p.star, 0);
        assert_eq!(p.rest, vec![2]);
    }

    #[test]
    fn kept_items_satisfy_membership_bounds() {
        let (inst, bids) = d2();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        for id in &p.kept {
            let v = &p.values[id];
            let b = bids.get(*id).unwrap();
            assert!(b * &p.r <= *v);
            assert!(*v <= &p.r * &inst.budget);
        }
        // sandwich on the kept set
        assert!(p.v_rest <= &p.r * &inst.budget);
        assert!(&p.r * &inst.budget < p.v_kept);
    }

    #[test]
    fn cap_payment_examples() {
        assert_eq!(cap_payment(&int(4), &int(6), &rat(3, 2)), int(4));
        assert_eq!(cap_payment(&int(10), &int(6), &rat(3, 2)), int(4));
        assert_eq!(cap_payment(&rat(1, 2), &int(1), &rat(399, 200)), rat(1, 2));
    }

    #[test]
    fn fopt_bound_examples() {
        let (inst, bids) = d1();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(fopt_bound(&p, &inst.budget), int(10));

        let (inst, bids) = d2();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(fopt_bound(&p, &inst.budget), int(2));

        let inst = Instance::new(
            int(10),
            vec![Item { id: 0, value: int(5), cost: int(3) }],
        )
        .unwrap();
        let bids = BidProfile::truthful(&inst);
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert_eq!(fopt_bound(&p, &inst.budget), rat(17, 2));
    }

    #[test]
    fn discarded_items_had_their_ratio_reached() {
        let (inst, bids) = d2();
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        for item in &inst.items {
            let b = bids.get(item.id).unwrap();
            if p.kept.contains(&item.id) {
                assert!(item.value >= &p.r * b);
            } else {
                assert!(item.value <= &p.r * b);
            }
        }
    }

    #[test]
    fn bid_zero_items_are_never_discarded() {
        let inst = Instance::new(
            int(1),
            vec![
                Item { id: 0, value: rat(1, 100), cost: int(0) },
                Item { id: 1, value: int(1), cost: rat(1, 2) },
                Item { id: 2, value: int(1), cost: rat(1, 2) },
                Item { id: 3, value: int(1), cost: rat(1, 2) },
            ],
        )
        .unwrap();
        let bids = BidProfile::truthful(&inst);
        let p = prune(&inst, &bids, &inst.budget).unwrap();
        assert!(p.kept.contains(&0));
    }
}
