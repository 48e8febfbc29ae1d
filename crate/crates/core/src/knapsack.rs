//! Benchmark oracles: the greedy fractional relaxation and a desk-scale
//! exact solver.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::model::{Instance, Item};
use crate::scalar::Scalar;
use crate::Result;

/// Default item cap for the exact solver; larger instances must be solved
/// against the fractional benchmark only.
pub const DEFAULT_ORACLE_LIMIT: usize = 30;

/// Optimum of the fractional relaxation, with the greedy allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution {
    pub fopt: Scalar,
    /// `x_i` per item id; every item of the instance has an entry.
    pub allocation: BTreeMap<usize, Scalar>,
}

/// Exact optimum and one optimal set (lexicographically smallest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralSolution {
    pub opt: Scalar,
    pub chosen: BTreeSet<usize>,
}

/// Orders two items by decreasing value-per-cost ratio, ties by id.
///
/// Ratios are compared by cross-multiplication, which extends the order to
/// cost-0 items (they sort first).
fn ratio_before(a: &Item, b: &Item) -> std::cmp::Ordering {
    // a before b iff v_a/c_a > v_b/c_b iff v_a*c_b > v_b*c_a
    let lhs = &a.value * &b.cost;
    let rhs = &b.value * &a.cost;
    rhs.cmp(&lhs).then(a.id.cmp(&b.id))
}

fn greedy_order(instance: &Instance) -> Vec<&Item> {
    let mut order: Vec<&Item> = instance.items.iter().collect();
    order.sort_by(|a, b| ratio_before(a, b));
    order
}

/// Solves the fractional relaxation by taking items divisibly in decreasing
/// ratio order until the budget runs out.
pub fn fractional_opt(instance: &Instance) -> FractionalSolution {
    let mut allocation: BTreeMap<usize, Scalar> = instance
        .items
        .iter()
        .map(|it| (it.id, Scalar::zero()))
        .collect();
    let mut fopt = Scalar::zero();
    let mut remaining = instance.budget.clone();
    for item in greedy_order(instance) {
        if item.cost.is_zero() {
            allocation.insert(item.id, Scalar::one());
            fopt += &item.value;
        } else if item.cost <= remaining {
            allocation.insert(item.id, Scalar::one());
            fopt += &item.value;
            remaining -= &item.cost;
        } else {
            if !remaining.is_zero() {
                let fraction = &remaining / &item.cost;
                fopt += &item.value * &fraction;
                allocation.insert(item.id, fraction);
            }
            break;
        }
    }
    FractionalSolution { fopt, allocation }
}

/// Upper bound for a branch: fractional value of `order[from..]` under the
/// residual budget.
fn fractional_bound(order: &[&Item], from: usize, budget: &Scalar) -> Scalar {
    let mut bound = Scalar::zero();
    let mut remaining = budget.clone();
    for item in &order[from..] {
        if item.cost.is_zero() || item.cost <= remaining {
            bound += &item.value;
            if !item.cost.is_zero() {
                remaining -= &item.cost;
            }
        } else {
            if !remaining.is_zero() {
                bound += &item.value * &remaining / &item.cost;
            }
            break;
        }
    }
    bound
}

struct Search<'a> {
    order: Vec<&'a Item>,
    best_value: Scalar,
    best_set: BTreeSet<usize>,
}

impl Search<'_> {
    fn consider(&mut self, value: &Scalar, chosen: &BTreeSet<usize>) {
        if *value > self.best_value
            || (*value == self.best_value && *chosen < self.best_set)
        {
            self.best_value = value.clone();
            self.best_set = chosen.clone();
        }
    }

    fn descend(&mut self, index: usize, value: Scalar, remaining: Scalar, chosen: &mut BTreeSet<usize>) {
        if index == self.order.len() {
            self.consider(&value, chosen);
            return;
        }
        // Strict pruning keeps ties alive so the lexicographic preference
        // is decided by the explicit comparison, not by search order.
        let bound = &value + fractional_bound(&self.order, index, &remaining);
        if bound < self.best_value {
            return;
        }
        let item = self.order[index];
        if item.cost <= remaining {
            chosen.insert(item.id);
            self.descend(
                index + 1,
                &value + &item.value,
                &remaining - &item.cost,
                chosen,
            );
            chosen.remove(&item.id);
        }
        self.descend(index + 1, value, remaining, chosen);
    }
}

/// Exact optimum via branch-and-bound, limited to [`DEFAULT_ORACLE_LIMIT`]
/// items.
pub fn integral_opt(instance: &Instance) -> Result<IntegralSolution> {
    integral_opt_with_limit(instance, DEFAULT_ORACLE_LIMIT)
}

/// Exact optimum with an explicit item cap. Among optimal sets the
/// lexicographically smallest (as a sorted id sequence) is returned.
pub fn integral_opt_with_limit(instance: &Instance, limit: usize) -> Result<IntegralSolution> {
    let n = instance.items.len();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let mut search = Search {
        order: greedy_order(instance),
        best_value: Scalar::zero(),
        best_set: BTreeSet::new(),
    };
    let mut chosen = BTreeSet::new();
    search.descend(0, Scalar::zero(), instance.budget.clone(), &mut chosen);
    Ok(IntegralSolution {
        opt: search.best_value,
        chosen: search.best_set,
    })
}
