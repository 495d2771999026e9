use super::InverseSemigroup;
use crate::germs::FiniteGroupoid;
use crate::paction::PartialAction;

/// Munn representation on `E(S)`: `X_s = { e : e <= ss* }`, `θ_s(e) = ses*`.
pub fn munn_representation(s: &InverseSemigroup) -> PartialAction {
    let idem = s.idempotents();
    let carrier = idem.iter().map(|&e| s.name(e).to_string()).collect();
    let pos = |e: usize| idem.iter().position(|&f| f == e).expect("idempotent");
    PartialAction::from_fn(s.clone(), carrier, |t, x| {
        let e = idem[x];
        s.leq(e, s.source_idempotent(t)).then(|| pos(s.mul(s.mul(t, e), s.inv(t))))
    })
    .expect("Munn representation is a partial action")
}

/// Left self-action: `α_s(t) = st` on `D_{s*} = { t : tt* <= s*s }`.
pub fn canonical_self_action(s: &InverseSemigroup) -> PartialAction {
    let carrier = s.names().to_vec();
    PartialAction::from_fn(s.clone(), carrier, |a, t| {
        s.leq(s.range_idempotent(t), s.source_idempotent(a)).then(|| s.mul(a, t))
    })
    .expect("left self-action is a partial action")
}

/// `(S, ·)`: `s·t` defined iff `s*s = tt*`.
pub fn restricted_product_groupoid(s: &InverseSemigroup) -> FiniteGroupoid {
    let n = s.len();
    FiniteGroupoid::validate(
        s.names().to_vec(),
        (0..n).map(|a| s.source_idempotent(a)).collect(),
        (0..n).map(|a| s.range_idempotent(a)).collect(),
        (0..n).map(|a| s.inv(a)).collect(),
        |a, b| (s.source_idempotent(a) == s.range_idempotent(b)).then(|| s.mul(a, b)),
    )
    .expect("restricted product is a groupoid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invsemi::symmetric_inverse_semigroup;

    #[test]
    fn restricted_product_composable_pairs_match_brute_force() {
        let (s, _) = symmetric_inverse_semigroup(2, 100).unwrap();
        let g = restricted_product_groupoid(&s);
        let mut brute = 0;
        for a in 0..7 {
            for b in 0..7 {
                if s.mul(s.inv(a), a) == s.mul(b, s.inv(b)) {
                    brute += 1;
                }
            }
        }
        let counted = (0..7).map(|a| (0..7).filter(|&b| g.compose(a, b).is_some()).count()).sum::<usize>();
        assert_eq!(counted, brute);
        // idempotent classes: ∅ gives 1·1, each singleton 2·2, the full set 2·2
        assert_eq!(brute, 13);
    }

    #[test]
    fn semilattice_restricted_product_is_units_only() {
        let g = restricted_product_groupoid(&InverseSemigroup::chain(3));
        assert_eq!(g.units().len(), 3);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn self_action_is_global() {
        let (s, _) = symmetric_inverse_semigroup(2, 100).unwrap();
        assert!(canonical_self_action(&s).is_global());
        assert!(munn_representation(&s).is_global());
    }
}
