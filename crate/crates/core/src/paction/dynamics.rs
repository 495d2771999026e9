use super::PartialAction;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicsReport {
    /// Λ(θ): points whose fixing elements all dominate an idempotent of `S_x`.
    pub lambda: Vec<usize>,
    /// Λ(θ) via the pairwise form: `θ_s(x) = θ_t(x)` forces a common lower bound in `S_x`.
    pub lambda_pairwise: Vec<usize>,
    pub free: bool,
    pub effective: bool,
    pub top_principal: bool,
    /// Both forms of Λ agree and the three flags coincide.
    pub consistent: bool,
}

pub fn dynamics_report(theta: &PartialAction) -> DynamicsReport {
    let sg = theta.semigroup();
    let n = theta.points();
    let idem = sg.idempotents();

    let lambda: Vec<usize> = (0..n)
        .filter(|&x| {
            let sx = theta.stabilizing_set(x);
            sx.iter().all(|&s| {
                theta.apply(s, x) != Some(x) || idem.iter().any(|&e| sx.contains(&e) && sg.leq(e, s))
            })
        })
        .collect();

    let lambda_pairwise: Vec<usize> = (0..n)
        .filter(|&x| {
            let sx = theta.stabilizing_set(x);
            sx.iter().all(|&s| {
                sx.iter().all(|&t| {
                    theta.apply(s, x) != theta.apply(t, x)
                        || sx.iter().any(|&u| sg.leq(u, s) && sg.leq(u, t))
                })
            })
        })
        .collect();

    let free = lambda.len() == n;

    // Fixed points of θ_s equal the union of X_e over idempotents e <= s.
    let effective = (0..sg.len()).all(|s| {
        let fixed: Vec<usize> = (0..n).filter(|&x| theta.apply(s, x) == Some(x)).collect();
        let trivially: Vec<usize> =
            (0..n).filter(|&x| idem.iter().any(|&e| sg.leq(e, s) && theta.in_domain(e, x))).collect();
        fixed == trivially
    });

    // Closure of Λ in a discrete space is Λ itself.
    let top_principal = lambda.len() == n;

    let consistent = lambda == lambda_pairwise && free == effective && effective == top_principal;
    DynamicsReport { lambda, lambda_pairwise, free, effective, top_principal, consistent }
}
