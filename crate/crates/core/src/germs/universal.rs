use super::bisection::{bisection_inverse, bisection_product, tau, Bisection};
use super::germ::GermGroupoid;
use super::groupoid::FiniteGroupoid;
use crate::paction::PartialAction;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("sigma is not a partial homomorphism at ({0},{1})")]
    NotPartialHom(String, String),
    #[error("sigma({0}) is not a bisection")]
    NotBisection(String),
    #[error("condition ({which}) fails at s={s}, x={x}")]
    ConditionFails { which: u8, s: String, x: String },
    #[error("induced map is not well defined on the germ of {s} at {x}")]
    NotWellDefined { s: String, x: String },
    #[error("induced map is not a homomorphism")]
    NotHomomorphism,
}

/// The homomorphism `Ψ[s,x]` = arrow of `σ(s)` with source `φ(x)`, returned
/// as a map from arrows of the germ groupoid to arrows of `h`.
pub fn induced_hom_universal(
    theta: &PartialAction,
    germs: &GermGroupoid,
    h: &FiniteGroupoid,
    sigma: &[Bisection],
    phi: &[usize],
) -> Result<Vec<usize>, UniversalError> {
    let sg = theta.semigroup();
    let sn = |s: usize| sg.name(s).to_string();
    let xn = |x: usize| theta.carrier()[x].clone();
    let sorted = |b: &Bisection| {
        let mut b = b.clone();
        b.sort_unstable();
        b
    };
    for s in 0..sg.len() {
        if !super::is_bisection(h, &sigma[s]) {
            return Err(UniversalError::NotBisection(sn(s)));
        }
    }
    for s in 0..sg.len() {
        if sorted(&sigma[sg.inv(s)]) != bisection_inverse(h, &sigma[s]) {
            return Err(UniversalError::NotPartialHom(sn(s), sn(sg.inv(s))));
        }
        for t in 0..sg.len() {
            let prod = bisection_product(h, &sigma[s], &sigma[t]);
            let st = &sigma[sg.mul(s, t)];
            if !prod.iter().all(|a| st.contains(a)) {
                return Err(UniversalError::NotPartialHom(sn(s), sn(t)));
            }
            if sg.leq(s, t) && !sigma[s].iter().all(|a| sigma[t].contains(a)) {
                return Err(UniversalError::NotPartialHom(sn(s), sn(t)));
            }
        }
    }
    for s in 0..sg.len() {
        let ranges: Vec<usize> = sigma[s].iter().map(|&a| h.range(a)).collect();
        for x in theta.domain(s) {
            if !ranges.contains(&phi[x]) {
                return Err(UniversalError::ConditionFails { which: 1, s: sn(s), x: xn(x) });
            }
        }
        let t = tau(h, &sigma[s]);
        let pos = |u: usize| h.units().iter().position(|&v| v == u).expect("unit");
        for x in 0..theta.points() {
            if let Some(y) = theta.apply(s, x) {
                if t.map[pos(phi[x])] != Some(pos(phi[y])) {
                    return Err(UniversalError::ConditionFails { which: 2, s: sn(s), x: xn(x) });
                }
            }
        }
    }
    let mut psi = vec![usize::MAX; germs.len()];
    for ((s, x), a) in germs.pairs() {
        let image = *sigma[s].iter().find(|&&b| h.source(b) == phi[x]).expect("condition (i) for s*");
        if psi[a] == usize::MAX {
            psi[a] = image;
        } else if psi[a] != image {
            return Err(UniversalError::NotWellDefined { s: sn(s), x: xn(x) });
        }
    }
    if !germs.base().is_homomorphism(h, &psi) {
        return Err(UniversalError::NotHomomorphism);
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::groupoid_of_germs;
    use crate::invsemi::{munn_representation, symmetric_inverse_semigroup, InverseSemigroup};

    #[test]
    fn identity_from_basic_bisections() {
        let (s, _) = symmetric_inverse_semigroup(2, 100).unwrap();
        let theta = munn_representation(&s);
        let g = groupoid_of_germs(&theta);
        let sigma: Vec<Bisection> = (0..s.len())
            .map(|t| {
                let mut b: Vec<usize> = (0..theta.points()).filter_map(|x| g.germ(t, x)).collect();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let phi: Vec<usize> = (0..theta.points()).map(|x| g.unit_of(x)).collect();
        let psi = induced_hom_universal(&theta, &g, g.base(), &sigma, &phi).unwrap();
        assert_eq!(psi, (0..g.len()).collect::<Vec<_>>());
    }

    #[test]
    fn quotient_onto_group_image() {
        let z = InverseSemigroup::with_zero(&InverseSemigroup::cyclic_group(2));
        let theta = PartialAction::from_fn(z.clone(), vec!["p".into()], |s, _| (s != 2).then_some(0)).unwrap();
        let g = groupoid_of_germs(&theta);
        let z2 = InverseSemigroup::cyclic_group(2);
        let h = FiniteGroupoid::from_group(&z2);
        // sigma(s) = {s} on the group part, empty on zero
        let sigma = vec![vec![0], vec![1], vec![]];
        let psi = induced_hom_universal(&theta, &g, &h, &sigma, &[0]).unwrap();
        assert_eq!(psi.len(), 2);
        let bad = vec![vec![0], vec![], vec![]];
        assert!(induced_hom_universal(&theta, &g, &h, &bad, &[0]).is_err());
    }

    #[test]
    fn violated_intertwining_condition() {
        let z2 = InverseSemigroup::cyclic_group(2);
        let theta = PartialAction::from_fn(z2, vec!["x".into(), "y".into()], |s, x| Some(if s == 1 { 1 - x } else { x }))
            .unwrap();
        let g = groupoid_of_germs(&theta);
        let h = FiniteGroupoid::pair(2);
        // sigma sends the swap to the units: a partial homomorphism, but τ is wrong
        let sigma = vec![vec![0, 3], vec![0, 3]];
        let err = induced_hom_universal(&theta, &g, &h, &sigma, &[0, 3]).unwrap_err();
        assert_eq!(err, UniversalError::ConditionFails { which: 2, s: "g1".into(), x: "x".into() });
    }
}
