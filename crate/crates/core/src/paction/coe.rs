//! Continuous orbit equivalence of partial actions on finite discrete sets.
//! Continuity of `a` and `b` is vacuous there; the germ identities stand in
//! for local constancy.

use super::{dynamics_report, PartialAction};
use crate::germs::GermGroupoid;
use serde::Serialize;
use thiserror::Error;

/// `a[s][x]` is defined for `x ∈ X_{s*}`, `b[t][y]` for `y ∈ Y_{t*}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEquivalence {
    pub phi: Vec<usize>,
    pub a: Vec<Vec<Option<usize>>>,
    pub b: Vec<Vec<Option<usize>>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeError {
    #[error("tables have the wrong shape: {0}")]
    Shape(String),
    #[error("phi is not a bijection")]
    NotBijection,
    #[error("orbit identity ({side}) fails at s={s}, x={x}")]
    IdentityFails { side: u8, s: String, x: String },
    #[error("germ identity ({which}) fails: {data}")]
    GermIdentityFails { which: String, data: String },
    #[error("no element covers the image of the germ of {s} at {x}")]
    NoCoveringElement { s: String, x: String },
    #[error("actions are not both topologically principal")]
    NotTopPrincipal,
    #[error("image of the germ of {s} at {x} depends on the representative")]
    NotWellDefined { s: String, x: String },
    #[error("induced map is not a groupoid isomorphism")]
    NotIsomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeReport {
    pub pointwise: bool,
    pub germ_identities_checked: bool,
    pub germ_identities: bool,
}

fn inverse_perm(phi: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; phi.len()];
    for (x, &y) in phi.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Identities (i)/(ii) for one direction.
fn check_side(
    side: u8,
    theta: &PartialAction,
    gamma: &PartialAction,
    phi: &[usize],
    a: &[Vec<Option<usize>>],
) -> Result<(), CoeError> {
    let sg = theta.semigroup();
    for s in 0..sg.len() {
        for x in 0..theta.points() {
            let Some(sx) = theta.apply(s, x) else { continue };
            let fail = || CoeError::IdentityFails { side, s: sg.name(s).into(), x: theta.carrier()[x].clone() };
            let t = a[s][x].ok_or_else(fail)?;
            if t >= gamma.semigroup().len() || gamma.apply(t, phi[x]) != Some(phi[sx]) {
                return Err(fail());
            }
        }
    }
    Ok(())
}

/// Germ identities (a)–(c) for one direction.
fn check_germs(
    primed: bool,
    theta: &PartialAction,
    gamma: &PartialAction,
    phi: &[usize],
    a: &[Vec<Option<usize>>],
    b: &[Vec<Option<usize>>],
) -> Result<(), CoeError> {
    let sg = theta.semigroup();
    let tg = gamma.semigroup();
    let tag = |w: &str| if primed { format!("{w}'") } else { w.to_string() };
    let name = |s: usize, x: usize| format!("s={}, x={}", sg.name(s), theta.carrier()[x]);
    for x in 0..theta.points() {
        let sx = theta.stabilizing_set(x);
        let y = phi[x];
        for &s1 in &sx {
            for &s2 in &sx {
                if theta.same_germ(s1, s2, x) {
                    let (t1, t2) = (a[s1][x].expect("total"), a[s2][x].expect("total"));
                    if !gamma.same_germ(t1, t2, y) {
                        return Err(CoeError::GermIdentityFails {
                            which: tag("a"),
                            data: format!("{} and {}", name(s1, x), name(s2, x)),
                        });
                    }
                }
            }
        }
        for &s2 in &sx {
            let x2 = theta.apply(s2, x).expect("s2 ∈ S_x");
            for s1 in theta.stabilizing_set(x2) {
                let lhs = a[sg.mul(s1, s2)][x].expect("total");
                let rhs = tg.mul(a[s1][x2].expect("total"), a[s2][x].expect("total"));
                if !gamma.same_germ(lhs, rhs, y) {
                    return Err(CoeError::GermIdentityFails {
                        which: tag("b"),
                        data: format!("s1={}, {}", sg.name(s1), name(s2, x)),
                    });
                }
            }
        }
        for &s in &sx {
            let t = a[s][x].expect("total");
            let back = b[t][y].expect("total");
            if !theta.same_germ(back, s, x) {
                return Err(CoeError::GermIdentityFails { which: tag("c"), data: name(s, x) });
            }
        }
    }
    Ok(())
}

pub fn verify_orbit_equivalence(
    theta: &PartialAction,
    gamma: &PartialAction,
    coe: &OrbitEquivalence,
) -> Result<CoeReport, CoeError> {
    let n = theta.points();
    if coe.phi.len() != n || gamma.points() != n {
        return Err(CoeError::NotBijection);
    }
    let mut hit = vec![false; n];
    for &y in &coe.phi {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(CoeError::NotBijection);
        }
    }
    if coe.a.len() != theta.semigroup().len() || coe.b.len() != gamma.semigroup().len() {
        return Err(CoeError::Shape("a or b has the wrong number of rows".into()));
    }
    if coe.a.iter().chain(&coe.b).any(|row| row.len() != n) {
        return Err(CoeError::Shape("a or b row length differs from the carrier size".into()));
    }
    let phi_inv = inverse_perm(&coe.phi);
    check_side(1, theta, gamma, &coe.phi, &coe.a)?;
    check_side(2, gamma, theta, &phi_inv, &coe.b)?;
    let principal = dynamics_report(theta).top_principal && dynamics_report(gamma).top_principal;
    if principal {
        check_germs(false, theta, gamma, &coe.phi, &coe.a, &coe.b)?;
        check_germs(true, gamma, theta, &phi_inv, &coe.b, &coe.a)?;
    }
    Ok(CoeReport { pointwise: true, germ_identities_checked: principal, germ_identities: principal })
}

/// Reads off `φ = Φ|_X` and cocycles `a`, `b` from a groupoid isomorphism
/// `Φ : S⋉X → T⋉Y` given as an arrow map.
pub fn coe_from_groupoid_iso(
    theta: &PartialAction,
    gamma: &PartialAction,
    g_theta: &GermGroupoid,
    g_gamma: &GermGroupoid,
    iso: &[usize],
) -> Result<OrbitEquivalence, CoeError> {
    let n = theta.points();
    if iso.len() != g_theta.len() || g_gamma.len() != g_theta.len() {
        return Err(CoeError::NotIsomorphism);
    }
    let phi: Vec<usize> = (0..n)
        .map(|x| g_gamma.point_of(iso[g_theta.unit_of(x)]).ok_or(CoeError::NotIsomorphism))
        .collect::<Result<_, _>>()?;
    let mut iso_inv = vec![0; iso.len()];
    for (a, &b) in iso.iter().enumerate() {
        iso_inv[b] = a;
    }
    let phi_inv = inverse_perm(&phi);
    let cover = |src: &PartialAction,
                 dst: &PartialAction,
                 g_src: &GermGroupoid,
                 g_dst: &GermGroupoid,
                 map: &[usize],
                 pmap: &[usize]|
     -> Result<Vec<Vec<Option<usize>>>, CoeError> {
        let ssg = src.semigroup();
        let mut out = vec![vec![None; n]; ssg.len()];
        for s in 0..ssg.len() {
            for x in 0..n {
                if src.apply(s, x).is_none() {
                    continue;
                }
                let target = map[g_src.germ(s, x).expect("germ pair")];
                let t = (0..dst.semigroup().len())
                    .find(|&t| g_dst.germ(t, pmap[x]) == Some(target))
                    .ok_or_else(|| CoeError::NoCoveringElement { s: ssg.name(s).into(), x: src.carrier()[x].clone() })?;
                out[s][x] = Some(t);
            }
        }
        Ok(out)
    };
    let a = cover(theta, gamma, g_theta, g_gamma, iso, &phi)?;
    let b = cover(gamma, theta, g_gamma, g_theta, &iso_inv, &phi_inv)?;
    Ok(OrbitEquivalence { phi, a, b })
}

/// `Φ[s,x] = [a(s,x), φ(x)]`, checked to be a well-defined isomorphism.
pub fn iso_from_coe(
    theta: &PartialAction,
    gamma: &PartialAction,
    g_theta: &GermGroupoid,
    g_gamma: &GermGroupoid,
    coe: &OrbitEquivalence,
) -> Result<Vec<usize>, CoeError> {
    if !(dynamics_report(theta).top_principal && dynamics_report(gamma).top_principal) {
        return Err(CoeError::NotTopPrincipal);
    }
    let sg = theta.semigroup();
    let mut iso = vec![usize::MAX; g_theta.len()];
    for ((s, x), arrow) in g_theta.pairs() {
        let t = coe.a[s][x].ok_or(CoeError::NotIsomorphism)?;
        let image = g_gamma.germ(t, coe.phi[x]).ok_or(CoeError::NotIsomorphism)?;
        if iso[arrow] == usize::MAX {
            iso[arrow] = image;
        } else if iso[arrow] != image {
            return Err(CoeError::NotWellDefined { s: sg.name(s).into(), x: theta.carrier()[x].clone() });
        }
    }
    if !g_theta.base().is_isomorphism(g_gamma.base(), &iso) {
        return Err(CoeError::NotIsomorphism);
    }
    Ok(iso)
}

/// `φ = id`, `a(s,x) = s`, `b(t,y) = t`.
pub fn identity_coe(theta: &PartialAction) -> OrbitEquivalence {
    let n = theta.points();
    let table: Vec<Vec<Option<usize>>> = (0..theta.semigroup().len())
        .map(|s| (0..n).map(|x| theta.apply(s, x).map(|_| s)).collect())
        .collect();
    OrbitEquivalence { phi: (0..n).collect(), a: table.clone(), b: table }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::groupoid_of_germs;
    use crate::invsemi::{munn_representation, InverseSemigroup};

    #[test]
    fn identity_coe_passes_and_gives_identity_iso() {
        let theta = munn_representation(&InverseSemigroup::chain(3));
        let coe = identity_coe(&theta);
        let r = verify_orbit_equivalence(&theta, &theta, &coe).unwrap();
        assert!(r.germ_identities_checked);
        let g = groupoid_of_germs(&theta);
        let iso = iso_from_coe(&theta, &theta, &g, &g, &coe).unwrap();
        assert_eq!(iso, (0..g.len()).collect::<Vec<_>>());
        let back = coe_from_groupoid_iso(&theta, &theta, &g, &g, &iso).unwrap();
        assert_eq!(back.phi, coe.phi);
    }

    #[test]
    fn corrupted_cocycle_is_detected() {
        let z2 = InverseSemigroup::cyclic_group(2);
        let theta =
            PartialAction::from_fn(z2, vec!["x".into(), "y".into()], |s, x| Some(if s == 1 { 1 - x } else { x })).unwrap();
        let mut coe = identity_coe(&theta);
        coe.a[1][0] = Some(0);
        assert_eq!(
            verify_orbit_equivalence(&theta, &theta, &coe),
            Err(CoeError::IdentityFails { side: 1, s: "g1".into(), x: "x".into() })
        );
    }

    #[test]
    fn non_principal_pair_is_refused() {
        let z2 = InverseSemigroup::cyclic_group(2);
        let theta = PartialAction::from_fn(z2, vec!["p".into()], |_, _| Some(0)).unwrap();
        let g = groupoid_of_germs(&theta);
        let coe = identity_coe(&theta);
        assert!(!verify_orbit_equivalence(&theta, &theta, &coe).unwrap().germ_identities_checked);
        assert_eq!(iso_from_coe(&theta, &theta, &g, &g, &coe), Err(CoeError::NotTopPrincipal));
    }
}
