//! Mechanical check that `A_R(S ⋉ X) ≅ R^X ⋊ S` for the dual action.
//!
//! `Φ(δ_x δ_s) = 1_{[s, θ_{s*}(x)]}` is built on `L` and checked to vanish
//! on `N` before it is used on classes. `Ψ(1_{[s,y]})` is the class of
//! `δ_{θ_s(y)} δ_s`, checked to be independent of the representative.

use super::crossed::{CrossedProduct, CrossedProductSummary};
use super::steinberg::{convolve, is_diagonal, SteinbergElement};
use super::AlgebraError;
use crate::germs::{groupoid_of_germs, GermGroupoid};
use crate::paction::{dual_action, PartialAction};
use crate::scalar::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub ring: String,
    pub arrows: usize,
    pub crossed_product: CrossedProductSummary,
    pub dimensions_agree: bool,
    pub phi_vanishes_on_n: bool,
    pub phi_multiplicative: bool,
    pub psi_well_defined: bool,
    pub psi_phi_identity: bool,
    pub phi_psi_identity: bool,
    pub diagonal: bool,
    pub membership_cross_check: bool,
    pub vanishing_combinations: usize,
    pub vanishing_ok: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

struct Maps<'a, R: Ring> {
    theta: &'a PartialAction,
    germs: &'a GermGroupoid,
    cp: &'a CrossedProduct<R>,
}

impl<R: Ring> Maps<'_, R> {
    fn phi(&self, v: &[R]) -> SteinbergElement<R> {
        let sg = self.theta.semigroup();
        let g = self.germs.base();
        let terms = self.cp.basis().iter().zip(v).filter(|(_, r)| !r.is_zero()).map(|(&(s, x), r)| {
            let y = self.theta.apply(sg.inv(s), x).expect("x ∈ X_s");
            (self.germs.germ(s, y).expect("germ pair"), r.clone())
        });
        SteinbergElement::from_coeffs(g, terms)
    }

    /// `Ψ(1_{[s,y]})` through the given representative, as an `L` vector.
    fn psi_pair(&self, s: usize, y: usize) -> Vec<R> {
        let x = self.theta.apply(s, y).expect("y ∈ X_{s*}");
        let mut v = vec![R::zero(); self.cp.dim_l()];
        v[self.cp.basis_index(s, x).expect("x ∈ X_s")] = R::one();
        v
    }

    fn psi(&self, f: &SteinbergElement<R>) -> Vec<R> {
        let mut out = vec![R::zero(); self.cp.dim_l()];
        for (a, r) in f.terms() {
            let (s, y) = self.germs.representative(a);
            for (o, w) in out.iter_mut().zip(self.psi_pair(s, y)) {
                *o = o.clone() + r.clone() * w;
            }
        }
        self.cp.reduce(&out)
    }
}

fn unit_vector<R: Ring>(d: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); d];
    v[i] = R::one();
    v
}

fn small<R: Ring>(rng: &mut ChaCha8Rng) -> R {
    R::from_i64(rng.gen_range(-4..=4))
}

/// Runs every check and collects witnesses. `samples` random cases are
/// drawn from `seed` for the membership and vanishing-combination checks.
pub fn theorem_iso_verify<R: Ring>(theta: &PartialAction, seed: u64, samples: usize) -> Result<TheoremReport, AlgebraError> {
    let germs = groupoid_of_germs(theta);
    let cp = CrossedProduct::build(&dual_action::<R>(theta))?;
    let g = germs.base();
    let sg = theta.semigroup();
    let maps = Maps { theta, germs: &germs, cp: &cp };
    let d = cp.dim_l();
    let mut failures = Vec::new();
    let basis_name = |i: usize| {
        let (s, x) = cp.basis()[i];
        format!("δ_{} δ_{}", theta.carrier()[x], sg.name(s))
    };

    let dimensions_agree = cp.quotient_dim() == g.len();
    if !dimensions_agree {
        failures.push(format!("quotient dimension {} differs from {} arrows", cp.quotient_dim(), g.len()));
    }

    let mut phi_vanishes_on_n = true;
    for (v, &(r, s, x)) in cp.generators().iter().zip(cp.generator_labels()) {
        if !maps.phi(v).is_zero() {
            phi_vanishes_on_n = false;
            failures.push(format!("Φ is non-zero on the generator for {} ≤ {} at {}", sg.name(r), sg.name(s), theta.carrier()[x]));
        }
    }

    let mut phi_multiplicative = true;
    for i in 0..d {
        for j in 0..d {
            let (ei, ej) = (unit_vector::<R>(d, i), unit_vector::<R>(d, j));
            let lhs = maps.phi(&cp.l_multiply(&ei, &ej)?);
            let rhs = convolve(g, &maps.phi(&ei), &maps.phi(&ej))?;
            if lhs != rhs {
                phi_multiplicative = false;
                failures.push(format!("Φ not multiplicative on ({}, {})", basis_name(i), basis_name(j)));
            }
        }
    }

    let mut psi_well_defined = true;
    for ((s, y), a) in germs.pairs() {
        let (s0, y0) = germs.representative(a);
        if cp.reduce(&maps.psi_pair(s, y)) != cp.reduce(&maps.psi_pair(s0, y0)) {
            psi_well_defined = false;
            failures.push(format!("Ψ depends on the representative ({}, {}) of {}", sg.name(s), theta.carrier()[y], g.name(a)));
        }
    }

    let mut psi_phi_identity = true;
    for i in 0..d {
        let e = unit_vector::<R>(d, i);
        if maps.psi(&maps.phi(&e)) != cp.reduce(&e) {
            psi_phi_identity = false;
            failures.push(format!("ΨΦ ≠ id at {}", basis_name(i)));
        }
    }

    let mut phi_psi_identity = true;
    for a in 0..g.len() {
        let one = SteinbergElement::indicator(g, &[a]);
        if maps.phi(&maps.psi(&one)) != one {
            phi_psi_identity = false;
            failures.push(format!("ΦΨ ≠ id at {}", g.name(a)));
        }
    }

    // Diagonal: δ_x δ_e for idempotent e maps onto the unit indicators.
    let mut diagonal = true;
    let mut hit = vec![false; theta.points()];
    for (i, &(s, x)) in cp.basis().iter().enumerate() {
        if !sg.is_idempotent(s) {
            continue;
        }
        let f = maps.phi(&unit_vector(d, i));
        if !is_diagonal(g, &f) || f != SteinbergElement::indicator(g, &[germs.unit_of(x)]) {
            diagonal = false;
            failures.push(format!("Φ({}) is not the unit indicator at {}", basis_name(i), theta.carrier()[x]));
        }
        hit[x] = true;
    }
    if hit.iter().any(|h| !h) {
        diagonal = false;
        failures.push("diagonal image misses a unit".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut membership_cross_check = true;
    for k in 0..samples {
        let u: Vec<R> = (0..d).map(|_| small(&mut rng)).collect();
        let v: Vec<R> = if k % 2 == 0 || cp.generators().is_empty() {
            (0..d).map(|_| small(&mut rng)).collect()
        } else {
            let mut v = u.clone();
            for gen in cp.generators() {
                let c: R = small(&mut rng);
                for (vi, gi) in v.iter_mut().zip(gen) {
                    *vi = vi.clone() + c.clone() * gi.clone();
                }
            }
            v
        };
        let by_residue = cp.cp_equal(&cp.element(&u), &cp.element(&v))?;
        if by_residue != cp.congruent_by_membership(&u, &v) {
            membership_cross_check = false;
            failures.push(format!("elimination orders disagree on sample {k}"));
        }
    }

    // Σ r_i 1_{[s_i, y]} = 0 built from coincident germs must map to zero.
    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.len()];
    for (p, a) in germs.pairs() {
        classes[a].push(p);
    }
    let mut vanishing_ok = true;
    let mut vanishing_combinations = 0;
    for k in 0..samples {
        let mut pairs: Vec<((usize, usize), R)> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let class = &classes[rng.gen_range(0..g.len())];
            let mut total = R::zero();
            for (idx, &p) in class.iter().enumerate() {
                let c = if idx + 1 == class.len() { -total.clone() } else { small(&mut rng) };
                total = total + c.clone();
                pairs.push((p, c));
            }
        }
        let steinberg = SteinbergElement::from_coeffs(
            g,
            pairs.iter().map(|&((s, y), ref c)| (germs.germ(s, y).expect("germ pair"), c.clone())),
        );
        let mut l = vec![R::zero(); d];
        for ((s, y), c) in &pairs {
            for (o, w) in l.iter_mut().zip(maps.psi_pair(*s, *y)) {
                *o = o.clone() + c.clone() * w;
            }
        }
        vanishing_combinations += 1;
        if !steinberg.is_zero() || !cp.reduce(&l).iter().all(R::is_zero) {
            vanishing_ok = false;
            failures.push(format!("vanishing combination {k} does not vanish in the crossed product"));
        }
    }

    let passed = failures.is_empty();
    Ok(TheoremReport {
        ring: R::name(),
        arrows: g.len(),
        crossed_product: cp.summary(),
        dimensions_agree,
        phi_vanishes_on_n,
        phi_multiplicative,
        psi_well_defined,
        psi_phi_identity,
        phi_psi_identity,
        diagonal,
        membership_cross_check,
        vanishing_combinations,
        vanishing_ok,
        failures,
        passed,
    })
}
