//! Two-firefighter plans for the local configurations at a degree-3 start.
//!
//! The plan is found per occurrence by containment search, first with the
//! protections confined to the closed neighbourhoods of the configuration's
//! key vertices, then without that restriction.

use crate::detect::configs::{detect_local_configs, ConfigId, ConfigMatch};
use crate::error::{Error, Result};
use crate::fire::search::{containment_search, Containment, ContainmentQuery, Goal};
use crate::fire::Schedule;
use crate::graph::EmbeddedGraph;
use crate::strategy::{ProtectionPlan, Strategy};

pub const CONFIG_BURN_CAP: usize = 18;

#[derive(Clone, Debug)]
pub struct ConfigStrategy {
    /// Restrict to one configuration; `None` accepts any.
    pub config: Option<ConfigId>,
    pub node_limit: u64,
}

impl ConfigStrategy {
    pub fn new(config: Option<ConfigId>) -> Self {
        ConfigStrategy { config, node_limit: crate::fire::search::DEFAULT_NODE_LIMIT }
    }

    /// Plan for one given occurrence.
    pub fn plan_for(&self, g: &EmbeddedGraph, m: &ConfigMatch, schedule: Schedule) -> Result<ProtectionPlan> {
        let mut near: Vec<usize> = Vec::new();
        for c in m.core() {
            near.push(c);
            near.extend_from_slice(g.neighbors(c));
        }
        near.sort_unstable();
        near.dedup();
        let local = ContainmentQuery {
            node_limit: self.node_limit,
            allowed: Some(near),
            goal: Goal::MinimumBurn,
            ..ContainmentQuery::new(CONFIG_BURN_CAP)
        };
        let open = ContainmentQuery { node_limit: self.node_limit, ..ContainmentQuery::new(CONFIG_BURN_CAP) };
        for query in [local, open] {
            match containment_search(g, m.anchor, schedule, &query) {
                Ok(Containment::Feasible(t)) => {
                    return Ok(ProtectionPlan {
                        strategy: format!("config:{}", m.config),
                        start: m.anchor,
                        schedule,
                        rounds: t.protections(),
                        burn_bound: Some(CONFIG_BURN_CAP),
                    })
                }
                Ok(Containment::Infeasible) | Err(Error::Timeout) => {}
                Err(e) => return Err(e),
            }
        }
        Err(Error::NotApplicable(format!("no plan within {CONFIG_BURN_CAP} burned for {} at {}", m.config, m.anchor)))
    }
}

impl Strategy for ConfigStrategy {
    fn name(&self) -> String {
        match self.config {
            Some(c) => format!("config:{c}"),
            None => "config".into(),
        }
    }

    fn plan(&self, g: &EmbeddedGraph, start: usize, schedule: Schedule) -> Result<ProtectionPlan> {
        let matches = detect_local_configs(g, start)?;
        let m = matches
            .iter()
            .find(|m| self.config.is_none_or(|c| c == m.config))
            .ok_or_else(|| Error::NotApplicable(format!("no matching configuration at {start}")))?;
        self.plan_for(g, m, schedule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, FamilySpec};

    #[test]
    fn cube_low_neighbour() {
        let cube = generate(&"cube".parse::<FamilySpec>().unwrap()).unwrap();
        let s = ConfigStrategy::new(Some(ConfigId::LowNeighbour));
        for v in 0..8 {
            let t = s.plan(&cube, v, Schedule::constant(2)).unwrap().verify(&cube).unwrap();
            assert_eq!(t.burned_total(), 2);
        }
        let none = ConfigStrategy::new(Some(ConfigId::Degree6LowStar));
        assert!(matches!(none.plan(&cube, 0, Schedule::constant(2)), Err(Error::NotApplicable(_))));
    }
}
