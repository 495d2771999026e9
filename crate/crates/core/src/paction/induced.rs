use super::{ActionError, PartialAction};
use crate::invsemi::{exel_semigroup, exel::ExelError, ExelElement, GroupImage};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InducedError {
    #[error("semigroup is not E-unitary")]
    NotEUnitary,
    #[error("maps of {s} and {t} disagree at {x}")]
    IncompatibleJoin { s: String, t: String, x: String },
    #[error("acting semigroup is not a group")]
    NotAGroup,
    #[error(transparent)]
    Exel(#[from] ExelError),
    #[error(transparent)]
    Invalid(#[from] ActionError),
}

/// Joins `{θ_s : [s] = γ}` into a map for each `γ ∈ G(S)` and validates the
/// result as a partial action of `G(S)`.
pub fn join_over_group_image(theta: &PartialAction) -> Result<(PartialAction, GroupImage), InducedError> {
    let sg = theta.semigroup();
    let gi = sg.max_group_image();
    let n = theta.points();
    let k = gi.group.len();
    let mut map: Vec<Vec<Option<usize>>> = vec![vec![None; n]; k];
    let mut witness: Vec<Vec<usize>> = vec![vec![usize::MAX; n]; k];
    for s in 0..sg.len() {
        let c = gi.class_of[s];
        for x in 0..n {
            let Some(y) = theta.apply(s, x) else { continue };
            match map[c][x] {
                None => {
                    map[c][x] = Some(y);
                    witness[c][x] = s;
                }
                Some(z) if z != y => {
                    return Err(InducedError::IncompatibleJoin {
                        s: sg.name(witness[c][x]).into(),
                        t: sg.name(s).into(),
                        x: theta.carrier()[x].clone(),
                    })
                }
                _ => {}
            }
        }
    }
    // A union of partial bijections may still fail to be injective.
    for (c, row) in map.iter().enumerate() {
        let mut seen = vec![usize::MAX; n];
        for (x, y) in row.iter().enumerate() {
            if let Some(y) = *y {
                if seen[y] != usize::MAX {
                    let name = |p: usize| theta.carrier()[p].clone();
                    return Err(InducedError::IncompatibleJoin {
                        s: gi.group.name(c).into(),
                        t: name(seen[y]),
                        x: name(x),
                    });
                }
                seen[y] = x;
            }
        }
    }
    let act = PartialAction::validate(gi.group.clone(), theta.carrier().to_vec(), map)?;
    Ok((act, gi))
}

/// The partial action of `G(S)` induced by an action of an E-unitary `S`.
pub fn induced_group_action(theta: &PartialAction) -> Result<(PartialAction, GroupImage), InducedError> {
    if !theta.semigroup().is_e_unitary() {
        return Err(InducedError::NotEUnitary);
    }
    join_over_group_image(theta)
}

/// The global action of `S(G)` induced by a partial action of a group `G`:
/// `ε_R[g]` acts as `θ_g` restricted to points sent into every `X_r`.
pub fn induced_exel_action(
    theta: &PartialAction,
    max_elements: usize,
) -> Result<(PartialAction, Vec<ExelElement>), InducedError> {
    let g = theta.semigroup();
    if !g.is_group() {
        return Err(InducedError::NotAGroup);
    }
    let (s, elems) = exel_semigroup(g, max_elements)?;
    let act = PartialAction::from_fn(s, theta.carrier().to_vec(), |i, x| {
        let e = &elems[i];
        theta.apply(e.g, x).filter(|&y| e.eps.iter().all(|&r| theta.in_domain(r, y)))
    })?;
    Ok((act, elems))
}
