//! Generalised cylinders `Z(μ, F)` and basic bisections `Z(μ, ν, F)`.
//!
//! Expansion at depth `D` replaces `Z(μ, F)` by the disjoint cylinders
//! `Z(μe)` for `e ∈ s⁻¹(r(μ)) ∖ F`, repeated until the path has length `D`
//! and no forbidden set, or ends at a sink, where the cylinder is a single
//! boundary path.

use super::{Graph, GraphError, Path};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    pub mu: Path,
    pub forbidden: BTreeSet<usize>,
}

fn check_forbidden(g: &Graph, at: usize, forbidden: &BTreeSet<usize>) -> Result<(), GraphError> {
    match forbidden.iter().find(|&&e| g.source(e) != at) {
        Some(&e) => Err(GraphError::ForbiddenNotAtRange(g.edge_name(e).into())),
        None => Ok(()),
    }
}

/// Continuations of `Z(r, F)` at the given remaining depth, as suffix paths
/// starting at `r`.
fn expand(g: &Graph, r: usize, forbidden: &BTreeSet<usize>, remaining: usize) -> Vec<Path> {
    let base = g.vertex_path(r);
    if g.is_sink(r) || (remaining == 0 && forbidden.is_empty()) {
        return vec![base];
    }
    let mut out = Vec::new();
    for &e in g.out_edges(r) {
        if forbidden.contains(&e) {
            continue;
        }
        for tail in expand(g, g.range(e), &BTreeSet::new(), remaining.saturating_sub(1)) {
            out.push(base.push(e).concat(&tail));
        }
    }
    out
}

impl Cylinder {
    pub fn new(g: &Graph, mu: Path, forbidden: BTreeSet<usize>) -> Result<Self, GraphError> {
        check_forbidden(g, mu.range(g), &forbidden)?;
        Ok(Cylinder { mu, forbidden })
    }

    pub fn basic(mu: Path) -> Self {
        Cylinder { mu, forbidden: BTreeSet::new() }
    }

    /// Empty iff `r(μ)` emits edges and all of them are forbidden.
    pub fn is_empty(&self, g: &Graph) -> bool {
        let r = self.mu.range(g);
        !g.is_sink(r) && g.out_edges(r).iter().all(|e| self.forbidden.contains(e))
    }

    /// Disjoint atoms `Z(p)` covering the cylinder, each with `|p| = depth`
    /// or `p` ending at a sink.
    pub fn atoms(&self, g: &Graph, depth: usize) -> Result<Vec<Path>, GraphError> {
        if depth < self.mu.len() {
            return Err(GraphError::DepthTooSmall { depth, len: self.mu.len() });
        }
        let tails = expand(g, self.mu.range(g), &self.forbidden, depth - self.mu.len());
        Ok(tails.iter().map(|t| self.mu.concat(t)).collect())
    }

    /// Membership of a finite boundary path.
    pub fn contains(&self, x: &Path) -> bool {
        self.mu.is_prefix_of(x) && (x.len() == self.mu.len() || !self.forbidden.contains(&x.edges[self.mu.len()]))
    }

    pub fn points(&self, boundary: &[Path]) -> Vec<Path> {
        boundary.iter().filter(|x| self.contains(x)).cloned().collect()
    }

    pub fn label(&self, g: &Graph) -> String {
        if self.forbidden.is_empty() {
            format!("Z({})", self.mu.label(g))
        } else {
            let f: Vec<&str> = self.forbidden.iter().map(|&e| g.edge_name(e)).collect();
            format!("Z({}, {{{}}})", self.mu.label(g), f.join(","))
        }
    }
}

/// `σ(Z(μ₁μ₂…μₙ, F)) = Z(μ₂…μₙ, F)`.
pub fn shift_on_cylinder(g: &Graph, c: &Cylinder) -> Result<Cylinder, GraphError> {
    let mu = c.mu.shift(1, g).filter(|_| !c.mu.is_empty()).ok_or(GraphError::LengthZero)?;
    Ok(Cylinder { mu, forbidden: c.forbidden.clone() })
}

/// `Z(μ, ν, F) = {(μx, |μ| − |ν|, νx) : x ∈ Z(r(μ), F)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylinderBisection {
    pub mu: Path,
    pub nu: Path,
    pub forbidden: BTreeSet<usize>,
}

impl CylinderBisection {
    pub fn new(g: &Graph, mu: Path, nu: Path, forbidden: BTreeSet<usize>) -> Result<Self, GraphError> {
        if mu.range(g) != nu.range(g) {
            return Err(GraphError::RangeMismatch(mu.label(g), nu.label(g)));
        }
        check_forbidden(g, mu.range(g), &forbidden)?;
        Ok(CylinderBisection { mu, nu, forbidden })
    }

    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn is_empty(&self, g: &Graph) -> bool {
        Cylinder { mu: self.mu.clone(), forbidden: self.forbidden.clone() }.is_empty(g)
    }

    /// Atoms `Z(μγ, νγ)` with `|νγ| = depth` or `r(γ)` a sink.
    pub fn atoms(&self, g: &Graph, depth: usize) -> Result<Vec<(Path, Path)>, GraphError> {
        if depth < self.nu.len() {
            return Err(GraphError::DepthTooSmall { depth, len: self.nu.len() });
        }
        let tails = expand(g, self.nu.range(g), &self.forbidden, depth - self.nu.len());
        Ok(tails.iter().map(|t| (self.mu.concat(t), self.nu.concat(t))).collect())
    }

    /// Triples `(μx, k, νx)` over finite boundary points `x`.
    pub fn triples(&self, g: &Graph, boundary: &[Path]) -> Vec<(Path, i64, Path)> {
        let r = self.mu.range(g);
        boundary
            .iter()
            .filter(|x| x.start == r && (x.is_empty() || !self.forbidden.contains(&x.edges[0])))
            .map(|x| (self.mu.concat(x), self.degree(), self.nu.concat(x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::boundary_enumerate;

    #[test]
    fn single_loop_has_one_atom_per_depth() {
        let g = Graph::from_edges(&["v"], &[("e", "v", "v")]).unwrap();
        let atoms = Cylinder::basic(g.vertex_path(0)).atoms(&g, 2).unwrap();
        assert_eq!(atoms, vec![g.parse_path("e.e").unwrap()]);
    }

    #[test]
    fn forbidding_every_edge_empties_a_regular_cylinder() {
        let g = Graph::from_edges(&["v", "w"], &[("e", "v", "w"), ("f", "v", "v")]).unwrap();
        let c = Cylinder::new(&g, g.vertex_path(0), [0, 1].into_iter().collect()).unwrap();
        assert!(c.is_empty(&g));
        assert!(c.atoms(&g, 3).unwrap().is_empty());
        let d = Cylinder::new(&g, g.vertex_path(0), [1].into_iter().collect()).unwrap();
        assert!(!d.is_empty(&g));
        assert_eq!(d.atoms(&g, 0).unwrap(), vec![g.parse_path("e").unwrap()]);
        assert!(Cylinder::new(&g, g.vertex_path(1), [0].into_iter().collect()).is_err());
    }

    #[test]
    fn v_to_w_cylinders() {
        let g = Graph::from_edges(&["v", "w"], &[("e", "v", "w")]).unwrap();
        let zv = Cylinder::basic(g.vertex_path(0));
        assert_eq!(zv.atoms(&g, 1).unwrap(), vec![g.parse_path("e").unwrap()]);
        let zw = Cylinder::basic(g.vertex_path(1));
        assert_eq!(zw.atoms(&g, 1).unwrap(), vec![g.vertex_path(1)]);
        assert!(matches!(Cylinder::basic(g.parse_path("e").unwrap()).atoms(&g, 0), Err(GraphError::DepthTooSmall { .. })));
    }

    #[test]
    fn shift_matches_pointwise_shift() {
        let g = Graph::from_edges(&["u", "v", "w", "x"], &[("e", "u", "v"), ("f", "v", "w"), ("h", "v", "x")]).unwrap();
        let boundary = boundary_enumerate(&g).unwrap();
        let c = Cylinder::new(&g, g.parse_path("e").unwrap(), [1].into_iter().collect()).unwrap();
        let shifted = shift_on_cylinder(&g, &c).unwrap();
        let mut image: Vec<Path> = c.points(&boundary).iter().map(|x| x.shift(1, &g).unwrap()).collect();
        image.sort();
        let mut direct = shifted.points(&boundary);
        direct.sort();
        assert_eq!(image, direct);
        assert_eq!(shifted.label(&g), "Z(v, {f})");
        assert_eq!(shift_on_cylinder(&g, &Cylinder::basic(g.vertex_path(0))), Err(GraphError::LengthZero));
    }

    #[test]
    fn bisection_atoms_match_triples_at_saturating_depth() {
        let g = Graph::from_edges(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w"), ("h", "u", "w")]).unwrap();
        let boundary = boundary_enumerate(&g).unwrap();
        let b = CylinderBisection::new(&g, g.parse_path("e").unwrap(), g.parse_path("v").unwrap(), BTreeSet::new()).unwrap();
        let atoms = b.atoms(&g, 2).unwrap();
        let triples = b.triples(&g, &boundary);
        assert_eq!(atoms.len(), triples.len());
        for ((mu, nu), (x, k, y)) in atoms.iter().zip(&triples) {
            assert_eq!((mu, nu, *k), (x, y, 1));
        }
    }
}
