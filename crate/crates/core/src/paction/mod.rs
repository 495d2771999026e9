//! Partial actions of finite inverse semigroups on finite discrete sets.

pub mod coe;
pub mod dual;
mod dynamics;
mod induced;

pub use coe::{coe_from_groupoid_iso, identity_coe, iso_from_coe, verify_orbit_equivalence, CoeError, CoeReport, OrbitEquivalence};
pub use dual::{dual_action, ideal_lattice_check, ideal_of, recover_action_from_dual, support_union, AlgebraicPartialAction, RecoverError};
pub use dynamics::{dynamics_report, DynamicsReport};
pub use induced::{induced_exel_action, induced_group_action, join_over_group_image, InducedError};

use crate::invsemi::InverseSemigroup;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("expected {expected} entries for {what}, got {got}")]
    Shape { what: &'static str, expected: usize, got: usize },
    #[error("map of {0} is not defined exactly on the domain of its inverse")]
    MapDomain(String),
    #[error("map of {0} is not a bijection onto its domain")]
    NotBijective(String),
    #[error("map of {0}* is not the inverse of the map of {0}")]
    InverseMismatch(String),
    #[error("composite of {0} and {1} is not a restriction of the map of their product")]
    CompositionNotRestriction(String, String),
    #[error("{0} <= {1} but the map of {0} does not extend to the map of {1}")]
    OrderNotPreserved(String, String),
    #[error("point {0} lies in no idempotent domain")]
    Degenerate(String),
}

/// A validated partial action. `domain[s]` is `X_s`; `map[s][x]` is
/// `θ_s(x)`, defined exactly for `x ∈ X_{s*}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAction {
    semigroup: InverseSemigroup,
    carrier: Vec<String>,
    domain: Vec<Vec<bool>>,
    map: Vec<Vec<Option<usize>>>,
}

impl PartialAction {
    pub fn validate(
        semigroup: InverseSemigroup,
        carrier: Vec<String>,
        map: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, ActionError> {
        let n = semigroup.len();
        let m = carrier.len();
        if map.len() != n {
            return Err(ActionError::Shape { what: "maps", expected: n, got: map.len() });
        }
        for row in &map {
            if row.len() != m {
                return Err(ActionError::Shape { what: "map rows", expected: m, got: row.len() });
            }
            if row.iter().flatten().any(|&y| y >= m) {
                return Err(ActionError::Shape { what: "map values", expected: m, got: m + 1 });
            }
        }
        let domain: Vec<Vec<bool>> = (0..n)
            .map(|s| {
                let mut d = vec![false; m];
                for y in map[s].iter().flatten() {
                    d[*y] = true;
                }
                d
            })
            .collect();
        let name = |s: usize| semigroup.name(s).to_string();
        for s in 0..n {
            let si = semigroup.inv(s);
            for x in 0..m {
                if map[s][x].is_some() != domain[si][x] {
                    return Err(ActionError::MapDomain(name(s)));
                }
            }
            let mut hit = vec![false; m];
            for y in map[s].iter().flatten() {
                if std::mem::replace(&mut hit[*y], true) {
                    return Err(ActionError::NotBijective(name(s)));
                }
            }
        }
        for s in 0..n {
            let si = semigroup.inv(s);
            for x in 0..m {
                if let Some(y) = map[s][x] {
                    if map[si][y] != Some(x) {
                        return Err(ActionError::InverseMismatch(name(s)));
                    }
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                let st = semigroup.mul(s, t);
                for x in 0..m {
                    if let Some(y) = map[t][x] {
                        if let Some(z) = map[s][y] {
                            if map[st][x] != Some(z) {
                                return Err(ActionError::CompositionNotRestriction(name(s), name(t)));
                            }
                        }
                    }
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                if s != t && semigroup.leq(s, t) {
                    for x in 0..m {
                        if let Some(y) = map[s][x] {
                            if map[t][x] != Some(y) {
                                return Err(ActionError::OrderNotPreserved(name(s), name(t)));
                            }
                        }
                    }
                }
            }
        }
        let idem = semigroup.idempotents();
        for x in 0..m {
            if !idem.iter().any(|&e| domain[e][x]) {
                return Err(ActionError::Degenerate(carrier[x].clone()));
            }
        }
        Ok(PartialAction { semigroup, carrier, domain, map })
    }

    /// Builds the map table from `f(s, x)`, which returns `None` off `X_{s*}`.
    pub fn from_fn(
        semigroup: InverseSemigroup,
        carrier: Vec<String>,
        f: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, ActionError> {
        let m = carrier.len();
        let map = (0..semigroup.len()).map(|s| (0..m).map(|x| f(s, x)).collect()).collect();
        Self::validate(semigroup, carrier, map)
    }

    pub fn semigroup(&self) -> &InverseSemigroup {
        &self.semigroup
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn points(&self) -> usize {
        self.carrier.len()
    }

    /// `x ∈ X_s`
    pub fn in_domain(&self, s: usize, x: usize) -> bool {
        self.domain[s][x]
    }

    pub fn domain(&self, s: usize) -> Vec<usize> {
        (0..self.points()).filter(|&x| self.domain[s][x]).collect()
    }

    /// `θ_s(x)`, defined iff `x ∈ X_{s*}`.
    pub fn apply(&self, s: usize, x: usize) -> Option<usize> {
        self.map[s][x]
    }

    pub fn maps(&self) -> &[Vec<Option<usize>>] {
        &self.map
    }

    /// `X_{s*} = X_{s*s}` for all `s`.
    pub fn is_global(&self) -> bool {
        (0..self.semigroup.len()).all(|s| {
            let a = self.semigroup.inv(s);
            let b = self.semigroup.source_idempotent(s);
            self.domain[a] == self.domain[b]
        })
    }

    /// `S_x = { s : x ∈ X_{s*} }`
    pub fn stabilizing_set(&self, x: usize) -> Vec<usize> {
        (0..self.semigroup.len()).filter(|&s| self.map[s][x].is_some()).collect()
    }

    /// Germ relation at `x`: some idempotent `e` with `x ∈ X_e` and `se = te`.
    pub fn same_germ(&self, s: usize, t: usize, x: usize) -> bool {
        let sg = &self.semigroup;
        self.map[s][x].is_some()
            && self.map[t][x].is_some()
            && sg.idempotents().into_iter().any(|e| self.domain[e][x] && sg.mul(s, e) == sg.mul(t, e))
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|c| c == name)
    }
}
