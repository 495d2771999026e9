//! Finite groupoids, groupoids of germs, bisections and isomorphism search.
//!
//! On finite discrete groupoids every subset is compact open, so the
//! inverse semigroup of open bisections and the ample semigroup coincide;
//! only the latter is exposed.

mod bisection;
mod germ;
mod groupoid;
mod iso;
mod universal;

pub use bisection::{
    ample_semigroup, ample_subsemigroup, bisection_action, bisection_inverse, bisection_product, enumerate_bisections, full_pseudogroup,
    is_bisection, tau, Bisection, PseudogroupReport,
};
pub use germ::{groupoid_of_germs, CongruenceFailure, GermGroupoid};
pub use groupoid::{FiniteGroupoid, GroupoidError, GroupoidTables};
pub use iso::{groupoid_iso_search, IsoSearchTimeout};
pub use universal::{induced_hom_universal, UniversalError};

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    /// `(unit, isotropy arrows)` per unit.
    pub iso_groups: Vec<(usize, Vec<usize>)>,
    pub effective: bool,
    pub top_principal: bool,
    pub trivial_points: Vec<usize>,
}

pub fn isotropy_report(g: &FiniteGroupoid) -> IsotropyReport {
    let iso_groups: Vec<(usize, Vec<usize>)> = g.units().iter().map(|&u| (u, g.isotropy(u))).collect();
    // Iso(G) is open in the discrete topology, so its interior is itself.
    let iso_arrows: usize = iso_groups.iter().map(|(_, v)| v.len()).sum();
    let effective = iso_arrows == g.units().len();
    let trivial_points: Vec<usize> = iso_groups.iter().filter(|(_, v)| v.len() == 1).map(|(u, _)| *u).collect();
    // Closure is the identity on subsets of a discrete space.
    let top_principal = trivial_points.len() == g.units().len();
    IsotropyReport { iso_groups, effective, top_principal, trivial_points }
}
