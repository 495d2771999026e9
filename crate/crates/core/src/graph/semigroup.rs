use super::{Graph, GraphError, Path};
use crate::invsemi::{InverseSemigroup, TooLarge};
use std::collections::HashMap;

/// `0` or `(μ, ν)` with `range(μ) = range(ν)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphISGElement {
    Zero,
    Pair(Path, Path),
}

impl GraphISGElement {
    pub fn pair(g: &Graph, mu: Path, nu: Path) -> Result<Self, GraphError> {
        if mu.range(g) != nu.range(g) {
            return Err(GraphError::RangeMismatch(mu.label(g), nu.label(g)));
        }
        Ok(GraphISGElement::Pair(mu, nu))
    }

    /// `(μ,ν)(ζ,η)` is `(μ, ηγ)` if `ν = ζγ`, `(μγ, η)` if `ζ = νγ`, else `0`.
    pub fn mul(&self, other: &Self, g: &Graph) -> Self {
        match (self, other) {
            (GraphISGElement::Pair(mu, nu), GraphISGElement::Pair(zeta, eta)) => {
                if let Some(gamma) = zeta.strip_prefix(nu, g) {
                    GraphISGElement::Pair(mu.clone(), eta.concat(&gamma))
                } else if let Some(gamma) = nu.strip_prefix(zeta, g) {
                    GraphISGElement::Pair(mu.concat(&gamma), eta.clone())
                } else {
                    GraphISGElement::Zero
                }
            }
            _ => GraphISGElement::Zero,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GraphISGElement::Pair(mu, nu) => GraphISGElement::Pair(nu.clone(), mu.clone()),
            GraphISGElement::Zero => GraphISGElement::Zero,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            GraphISGElement::Pair(mu, nu) => mu == nu,
            GraphISGElement::Zero => true,
        }
    }

    pub fn label(&self, g: &Graph) -> String {
        match self {
            GraphISGElement::Pair(mu, nu) => format!("({},{})", mu.label(g), nu.label(g)),
            GraphISGElement::Zero => "0".into(),
        }
    }
}

/// `S_E` of an acyclic graph: zero first, then pairs ordered by `(μ, ν)`.
pub fn graph_semigroup(g: &Graph, max_elements: usize) -> Result<(InverseSemigroup, Vec<GraphISGElement>), GraphError> {
    let paths = g.all_paths()?;
    let mut elems = vec![GraphISGElement::Zero];
    for mu in &paths {
        for nu in &paths {
            if mu.range(g) == nu.range(g) {
                elems.push(GraphISGElement::Pair(mu.clone(), nu.clone()));
                if elems.len() > max_elements {
                    return Err(TooLarge { size: elems.len(), limit: max_elements }.into());
                }
            }
        }
    }
    let index: HashMap<GraphISGElement, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let names = elems.iter().map(|e| e.label(g)).collect();
    let s = InverseSemigroup::from_fn(names, |a, b| index[&elems[a].mul(&elems[b], g)])
        .expect("graph inverse semigroup");
    Ok((s, elems))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vw() -> Graph {
        Graph::from_edges(&["v", "w"], &[("e", "v", "w")]).unwrap()
    }

    #[test]
    fn product_cases() {
        let g = Graph::from_edges(&["v", "w", "x"], &[("e", "v", "w"), ("f", "w", "x"), ("h", "v", "x")]).unwrap();
        let p = |s: &str| g.parse_path(s).unwrap();
        let a = GraphISGElement::pair(&g, p("e.f"), p("x")).unwrap();
        let b = GraphISGElement::pair(&g, p("x"), p("h")).unwrap();
        assert_eq!(a.mul(&b, &g), GraphISGElement::Pair(p("e.f"), p("h")));
        // ν = v, ζ = e.f: first case fails, second gives (μ·e.f, η)
        let c = GraphISGElement::pair(&g, p("v"), p("v")).unwrap();
        let d = GraphISGElement::pair(&g, p("e.f"), p("h")).unwrap();
        assert_eq!(c.mul(&d, &g), GraphISGElement::Pair(p("e.f"), p("h")));
        // ν = h and ζ = e.f are incomparable
        assert_eq!(b.mul(&d, &g), GraphISGElement::Zero);
        assert_eq!(d.inverse().mul(&d, &g), GraphISGElement::Pair(p("h"), p("h")));
    }

    #[test]
    fn v_to_w_semigroup() {
        let g = vw();
        let (s, elems) = graph_semigroup(&g, 100).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.zero(), Some(0));
        assert_eq!(elems[0], GraphISGElement::Zero);
        assert_eq!(s.idempotents().len(), 4);
        // 0 lies below everything, so only the non-zero part can be E-unitary.
        assert!(!s.is_e_unitary());
    }

    #[test]
    fn natural_order_has_meets() {
        let g = Graph::from_edges(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w"), ("h", "u", "w")]).unwrap();
        let (s, _) = graph_semigroup(&g, 1000).unwrap();
        for a in 0..s.len() {
            for b in 0..s.len() {
                let cover = s.weak_semilattice_cover(a, b);
                assert_eq!(cover.len(), 1, "{} {}", s.name(a), s.name(b));
                if s.compatible(a, b) {
                    assert_eq!(s.compatible_meet(a, b), Some(cover[0]));
                }
            }
        }
    }

    #[test]
    fn cyclic_graph_is_refused() {
        let g = Graph::from_edges(&["v"], &[("e", "v", "v")]).unwrap();
        assert!(matches!(graph_semigroup(&g, 100), Err(GraphError::NotAcyclic(_))));
    }
}
