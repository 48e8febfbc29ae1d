//! Instance model: items, budgets, bid profiles, outcomes, and generators.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{format_scalar, int, parse_scalar, Scalar};
use crate::Result;

/// A single agent's item: publicly known value, privately known true cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    /// 0-based index; defines the lexicographic order used by every tie-break.
    pub id: usize,
    pub value: Scalar,
    pub cost: Scalar,
}

/// A procurement market: a budget and an ordered list of items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub budget: Scalar,
    pub items: Vec<Item>,
}

/// Reported costs, one per item of the associated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidProfile {
    bids: BTreeMap<usize, Scalar>,
}

/// The result of one mechanism run: winners, their payments, realized value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub winners: BTreeSet<usize>,
    pub payments: BTreeMap<usize, Scalar>,
    pub value: Scalar,
}

impl Instance {
    /// Validates the structural invariants: positive budget, at least one
    /// item, positive values, nonnegative costs.
    pub fn new(budget: Scalar, items: Vec<Item>) -> Result<Self> {
        if budget <= Scalar::zero() {
            return Err(Error::NonpositiveBudget);
        }
        if items.is_empty() {
            return Err(Error::NoItems);
        }
        for item in &items {
            if item.value <= Scalar::zero() {
                return Err(Error::NonpositiveValue { id: item.id });
            }
            if item.cost < Scalar::zero() {
                return Err(Error::NegativeCost { id: item.id });
            }
        }
        Ok(Instance { budget, items })
    }

    /// Drops items whose true cost exceeds the budget; such agents can never
    /// win. Surviving items keep their ids.
    pub fn normalize(&self) -> Result<Instance> {
        let items: Vec<Item> = self
            .items
            .iter()
            .filter(|it| it.cost <= self.budget)
            .cloned()
            .collect();
        if items.is_empty() {
            return Err(Error::EmptyMarket);
        }
        Ok(Instance {
            budget: self.budget.clone(),
            items,
        })
    }

    /// True if every item cost is within the budget.
    pub fn is_normalized(&self) -> bool {
        self.items.iter().all(|it| it.cost <= self.budget)
    }

    pub fn item(&self, id: usize) -> Option<&Item> {
        self.items.iter().find(|it| it.id == id)
    }

    pub fn total_value(&self) -> Scalar {
        self.items.iter().map(|it| it.value.clone()).sum()
    }
}

impl BidProfile {
    pub fn new(bids: BTreeMap<usize, Scalar>) -> Result<Self> {
        for (id, b) in &bids {
            if *b < Scalar::zero() {
                return Err(Error::NegativeBid { id: *id });
            }
        }
        Ok(BidProfile { bids })
    }

    /// The truthful profile: every agent reports its true cost.
    pub fn truthful(instance: &Instance) -> Self {
        BidProfile {
            bids: instance
                .items
                .iter()
                .map(|it| (it.id, it.cost.clone()))
                .collect(),
        }
    }

    pub fn get(&self, id: usize) -> Option<&Scalar> {
        self.bids.get(&id)
    }

    pub fn bid(&self, id: usize) -> Result<&Scalar> {
        self.bids.get(&id).ok_or(Error::MissingBid { id })
    }

    /// Returns a copy with agent `id` bidding `bid` instead.
    pub fn with_bid(&self, id: usize, bid: Scalar) -> Self {
        let mut bids = self.bids.clone();
        bids.insert(id, bid);
        BidProfile { bids }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Scalar)> {
        self.bids.iter()
    }

    /// Fails unless every item of `instance` has a bid.
    pub fn check_covers(&self, instance: &Instance) -> Result<()> {
        for it in &instance.items {
            if !self.bids.contains_key(&it.id) {
                return Err(Error::MissingBid { id: it.id });
            }
        }
        Ok(())
    }
}

impl Outcome {
    pub fn empty() -> Self {
        Outcome {
            winners: BTreeSet::new(),
            payments: BTreeMap::new(),
            value: Scalar::zero(),
        }
    }

    /// Builds an outcome from accepted (id, value, payment) triples.
    pub fn from_winners(accepted: Vec<(usize, Scalar, Scalar)>) -> Self {
        let mut out = Outcome::empty();
        for (id, value, payment) in accepted {
            out.winners.insert(id);
            out.payments.insert(id, payment);
            out.value += value;
        }
        out
    }

    pub fn total_payment(&self) -> Scalar {
        self.payments.values().cloned().sum()
    }
}

// --- JSON instance format -------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ItemDoc {
    value: String,
    cost: String,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    budget: String,
    items: Vec<ItemDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bids: Option<Vec<String>>,
}

/// Parses the JSON instance document, ignoring any bundled bids.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with_bids(text).map(|(inst, _)| inst)
}

/// Parses the JSON instance document plus its optional `bids` array.
pub fn parse_instance_with_bids(text: &str) -> Result<(Instance, Option<BidProfile>)> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let budget = parse_scalar(&doc.budget)?;
    let items = doc
        .items
        .iter()
        .enumerate()
        .map(|(id, it)| {
            Ok(Item {
                id,
                value: parse_scalar(&it.value)?,
                cost: parse_scalar(&it.cost)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let instance = Instance::new(budget, items)?;
    let bids = match doc.bids {
        None => None,
        Some(raw) => {
            if raw.len() != instance.items.len() {
                return Err(Error::Malformed(format!(
                    "bids array has {} entries for {} items",
                    raw.len(),
                    instance.items.len()
                )));
            }
            let map = raw
                .iter()
                .enumerate()
                .map(|(id, b)| Ok((id, parse_scalar(b)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            Some(BidProfile::new(map)?)
        }
    };
    Ok((instance, bids))
}

/// Serializes an instance (and optional bids) into the JSON document format.
///
/// Scalars render in canonical reduced form, so `parse(serialize(x)) == x`.
pub fn serialize_instance(instance: &Instance, bids: Option<&BidProfile>) -> String {
    let doc = InstanceDoc {
        budget: format_scalar(&instance.budget),
        items: instance
            .items
            .iter()
            .map(|it| ItemDoc {
                value: format_scalar(&it.value),
                cost: format_scalar(&it.cost),
            })
            .collect(),
        bids: bids.map(|profile| {
            instance
                .items
                .iter()
                .map(|it| format_scalar(profile.get(it.id).expect("bid for every item")))
                .collect()
        }),
    };
    serde_json::to_string_pretty(&doc).expect("instance document serializes")
}

// --- Generators -----------------------------------------------------------

/// Parameters for the seeded random instance generator.
#[derive(Debug, Clone)]
pub struct RandomParams {
    pub n: usize,
    pub seed: u64,
    pub value_range: (Scalar, Scalar),
    pub cost_range: (Scalar, Scalar),
    pub budget: Scalar,
    /// Denominator of the sampling grid; draws are `lo + k/grid * (hi - lo)`.
    pub grid: u64,
}

impl RandomParams {
    pub fn new(
        n: usize,
        seed: u64,
        value_range: (Scalar, Scalar),
        cost_range: (Scalar, Scalar),
        budget: Scalar,
    ) -> Self {
        RandomParams {
            n,
            seed,
            value_range,
            cost_range,
            budget,
            grid: 1000,
        }
    }
}

/// Draws a deterministic random instance. Values are strictly positive,
/// costs are clamped to the budget, and the result is a pure function of
/// the parameters.
pub fn gen_random(params: &RandomParams) -> Result<Instance> {
    let RandomParams {
        n,
        seed,
        value_range: (vlo, vhi),
        cost_range: (clo, chi),
        budget,
        grid,
    } = params;
    if *n == 0 || *grid == 0 {
        return Err(Error::InvalidRange);
    }
    if vlo > vhi || clo > chi || *vlo <= Scalar::zero() || *clo < Scalar::zero() {
        return Err(Error::InvalidRange);
    }
    if *budget <= Scalar::zero() {
        return Err(Error::NonpositiveBudget);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
    let mut draw = |lo: &Scalar, hi: &Scalar| -> Scalar {
        let k = rng.gen_range(0..=*grid);
        lo + (hi - lo) * int(k as i64) / int(*grid as i64)
    };
    let items = (0..*n)
        .map(|id| {
            let value = draw(vlo, vhi);
            let cost = draw(clo, chi);
            let cost = if cost > *budget { budget.clone() } else { cost };
            Item { id, value, cost }
        })
        .collect();
    Instance::new(budget.clone(), items)
}

/// Builds the three-item family that witnesses the deterministic lower
/// bound: values (1, 1, 1), costs (0, c*, c*) with `c* = B / (2 - eps/2)`,
/// and truthful bids.
pub fn gen_lower_bound(epsilon: &Scalar, budget: &Scalar) -> Result<(Instance, BidProfile)> {
    if *epsilon <= Scalar::zero() || *epsilon >= int(2) {
        return Err(Error::EpsilonOutOfRange);
    }
    if *budget <= Scalar::zero() {
        return Err(Error::NonpositiveBudget);
    }
    let c_star = budget / (int(2) - epsilon / int(2));
    let items = vec![
        Item {
            id: 0,
            value: int(1),
            cost: Scalar::zero(),
        },
        Item {
            id: 1,
            value: int(1),
            cost: c_star.clone(),
        },
        Item {
            id: 2,
            value: int(1),
            cost: c_star,
        },
    ];
    let instance = Instance::new(budget.clone(), items)?;
    let bids = BidProfile::truthful(&instance);
    Ok((instance, bids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn instance_d1() -> Instance {
        parse_instance(
            r#"{"budget":"4","items":[{"value":"6","cost":"2"},{"value":"4","cost":"2"},{"value":"2","cost":"2"}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn parses_the_lower_bound_document() {
        let inst = parse_instance(
            r#"{"budget":"1","items":[{"value":"1","cost":"0"},{"value":"1","cost":"200/399"},{"value":"1","cost":"200/399"}]}"#,
        )
        .unwrap();
        assert_eq!(inst.budget, int(1));
        assert_eq!(inst.items.len(), 3);
        assert_eq!(inst.items[1].cost, rat(200, 399));
    }

    #[test]
    fn parses_d1() {
        let inst = instance_d1();
        assert_eq!(inst.budget, int(4));
        assert_eq!(inst.items[0].value, int(6));
    }

    #[test]
    fn rejects_nonpositive_value() {
        let err = parse_instance(r#"{"budget":"1","items":[{"value":"0","cost":"1"}]}"#);
        assert!(matches!(err, Err(Error::NonpositiveValue { id: 0 })));
    }

    #[test]
    fn rejects_missing_budget() {
        assert!(matches!(
            parse_instance(r#"{"items":[{"value":"1","cost":"0"}]}"#),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn normalize_drops_over_budget_items() {
        let inst = Instance::new(
            int(1),
            vec![
                Item { id: 0, value: int(1), cost: rat(1, 2) },
                Item { id: 1, value: int(1), cost: int(2) },
            ],
        )
        .unwrap();
        let norm = inst.normalize().unwrap();
        assert_eq!(norm.items.len(), 1);
        assert_eq!(norm.items[0].id, 0);
        // idempotent
        assert_eq!(norm.normalize().unwrap(), norm);
    }

    #[test]
    fn normalize_keeps_feasible_instances() {
        let inst = instance_d1();
        assert_eq!(inst.normalize().unwrap(), inst);
    }

    #[test]
    fn normalize_errors_on_empty_market() {
        let inst = Instance::new(
            int(1),
            vec![
                Item { id: 0, value: int(1), cost: int(2) },
                Item { id: 1, value: int(1), cost: int(3) },
            ],
        )
        .unwrap();
        assert!(matches!(inst.normalize(), Err(Error::EmptyMarket)));
    }

    #[test]
    fn serialization_round_trips() {
        let inst = instance_d1();
        let bids = BidProfile::truthful(&inst);
        let text = serialize_instance(&inst, Some(&bids));
        let (back, back_bids) = parse_instance_with_bids(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back_bids.unwrap(), bids);
    }

    #[test]
    fn gen_random_is_seed_deterministic() {
        let params = RandomParams::new(3, 7, (int(1), int(10)), (int(0), int(5)), int(4));
        assert_eq!(gen_random(&params).unwrap(), gen_random(&params).unwrap());
        let other = RandomParams { seed: 8, ..params.clone() };
        assert_ne!(gen_random(&params).unwrap(), gen_random(&other).unwrap());
    }

    #[test]
    fn gen_random_degenerate_ranges() {
        let params = RandomParams::new(1, 0, (int(1), int(1)), (int(0), int(0)), int(1));
        let inst = gen_random(&params).unwrap();
        assert_eq!(inst.items[0].value, int(1));
        assert_eq!(inst.items[0].cost, int(0));
    }

    #[test]
    fn gen_random_clamps_costs_to_budget() {
        let params = RandomParams::new(20, 11, (int(1), int(10)), (int(0), int(10)), int(1));
        let inst = gen_random(&params).unwrap();
        assert!(inst.items.iter().all(|it| it.cost <= int(1)));
    }

    #[test]
    fn gen_random_rejects_bad_ranges() {
        let params = RandomParams::new(3, 7, (int(10), int(1)), (int(0), int(5)), int(4));
        assert!(matches!(gen_random(&params), Err(Error::InvalidRange)));
        let params = RandomParams::new(3, 7, (int(0), int(1)), (int(0), int(5)), int(4));
        assert!(matches!(gen_random(&params), Err(Error::InvalidRange)));
    }

    #[test]
    fn lower_bound_instance_matches_closed_form() {
        let (inst, bids) = gen_lower_bound(&rat(1, 100), &int(1)).unwrap();
        assert_eq!(inst.items[1].cost, rat(200, 399));
        assert_eq!(bids.get(1).unwrap(), &rat(200, 399));
        let (inst, _) = gen_lower_bound(&int(1), &int(1)).unwrap();
        assert_eq!(inst.items[1].cost, rat(2, 3));
    }

    #[test]
    fn lower_bound_structural_invariants() {
        for eps in [rat(1, 10), rat(1, 100), rat(1, 1000), rat(3, 2)] {
            let (inst, _) = gen_lower_bound(&eps, &int(1)).unwrap();
            assert!(inst.items.iter().all(|it| it.value == int(1)));
            let zero_costs = inst.items.iter().filter(|it| it.cost == int(0)).count();
            assert_eq!(zero_costs, 1);
            let c_star = &inst.items[1].cost;
            assert!(c_star * int(2) > inst.budget);
            assert!(*c_star <= inst.budget);
        }
    }

    #[test]
    fn lower_bound_rejects_bad_epsilon() {
        assert!(gen_lower_bound(&int(0), &int(1)).is_err());
        assert!(gen_lower_bound(&int(2), &int(1)).is_err());
        assert!(gen_lower_bound(&rat(-1, 2), &int(1)).is_err());
    }
}
