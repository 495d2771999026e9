use super::AlgebraError;
use crate::germs::{enumerate_bisections, is_bisection, Bisection, FiniteGroupoid};
use crate::invsemi::TooLarge;
use crate::scalar::Ring;
use serde::Serialize;
use std::collections::BTreeMap;

/// A function on the arrows of a finite groupoid. Zero coefficients are never
/// stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergElement<R: Ring> {
    groupoid: u64,
    coeffs: BTreeMap<usize, R>,
}

impl<R: Ring> SteinbergElement<R> {
    pub fn zero(g: &FiniteGroupoid) -> Self {
        SteinbergElement { groupoid: g.fingerprint(), coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(g: &FiniteGroupoid, coeffs: impl IntoIterator<Item = (usize, R)>) -> Self {
        let mut out = Self::zero(g);
        for (a, r) in coeffs {
            out.add_at(a, r);
        }
        out
    }

    /// `1_U`.
    pub fn indicator(g: &FiniteGroupoid, arrows: &[usize]) -> Self {
        Self::from_coeffs(g, arrows.iter().map(|&a| (a, R::one())))
    }

    /// `1_{G⁽⁰⁾}`, the multiplicative identity.
    pub fn identity(g: &FiniteGroupoid) -> Self {
        Self::indicator(g, g.units())
    }

    pub fn from_dense(g: &FiniteGroupoid, v: &[R]) -> Self {
        Self::from_coeffs(g, v.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, len: usize) -> Vec<R> {
        let mut v = vec![R::zero(); len];
        for (&a, r) in &self.coeffs {
            v[a] = r.clone();
        }
        v
    }

    fn add_at(&mut self, a: usize, r: R) {
        let v = self.coeffs.remove(&a).unwrap_or_else(R::zero) + r;
        if !v.is_zero() {
            self.coeffs.insert(a, v);
        }
    }

    pub fn coeff(&self, a: usize) -> R {
        self.coeffs.get(&a).cloned().unwrap_or_else(R::zero)
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().map(|(&a, r)| (a, r))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn groupoid_fingerprint(&self) -> u64 {
        self.groupoid
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&a, r) in &other.coeffs {
            out.add_at(a, r.clone());
        }
        out
    }

    pub fn scale(&self, r: &R) -> Self {
        let mut out = SteinbergElement { groupoid: self.groupoid, coeffs: BTreeMap::new() };
        for (&a, v) in &self.coeffs {
            out.add_at(a, r.clone() * v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-R::one()))
    }
}

/// `(f ∗ g)(a) = Σ_{xy=a} f(x) g(y)`.
pub fn convolve<R: Ring>(
    g: &FiniteGroupoid,
    f: &SteinbergElement<R>,
    h: &SteinbergElement<R>,
) -> Result<SteinbergElement<R>, AlgebraError> {
    if f.groupoid != g.fingerprint() || h.groupoid != g.fingerprint() {
        return Err(AlgebraError::GroupoidMismatch);
    }
    let mut out = SteinbergElement::zero(g);
    for (x, fx) in f.terms() {
        for (y, hy) in h.terms() {
            if let Some(xy) = g.compose(x, y) {
                out.add_at(xy, fx.clone() * hy.clone());
            }
        }
    }
    Ok(out)
}

/// Basis of `D_R(G)`: indicators of single units.
pub fn diagonal_subalgebra<R: Ring>(g: &FiniteGroupoid) -> Vec<SteinbergElement<R>> {
    g.units().iter().map(|&u| SteinbergElement::indicator(g, &[u])).collect()
}

pub fn is_diagonal<R: Ring>(g: &FiniteGroupoid, f: &SteinbergElement<R>) -> bool {
    f.terms().all(|(a, _)| g.is_unit(a))
}

#[derive(Clone, Debug, Serialize)]
pub struct IndicatorReport {
    pub bisections: usize,
    pub multiplicative_pairs: usize,
    pub additive_pairs: usize,
    /// `(U, V)` where `1_U ∗ 1_V ≠ 1_{UV}`.
    pub multiplicative_failures: Vec<(Bisection, Bisection)>,
    /// Disjoint `(U, V)` with `U ∪ V` a bisection and `1_{U∪V} ≠ 1_U + 1_V`.
    pub additive_failures: Vec<(Bisection, Bisection)>,
    pub empty_is_zero: bool,
}

impl IndicatorReport {
    pub fn passed(&self) -> bool {
        self.multiplicative_failures.is_empty() && self.additive_failures.is_empty() && self.empty_is_zero
    }
}

/// Exhaustive check that `U ↦ 1_U` is a Boolean representation.
pub fn indicator_representation_check<R: Ring>(g: &FiniteGroupoid, max_bisections: usize) -> Result<IndicatorReport, TooLarge> {
    let bis = enumerate_bisections(g, max_bisections)?;
    let ind = |b: &[usize]| SteinbergElement::<R>::indicator(g, b);
    let mut report = IndicatorReport {
        bisections: bis.len(),
        multiplicative_pairs: 0,
        additive_pairs: 0,
        multiplicative_failures: Vec::new(),
        additive_failures: Vec::new(),
        empty_is_zero: ind(&[]).is_zero(),
    };
    for u in &bis {
        for v in &bis {
            report.multiplicative_pairs += 1;
            let uv = crate::germs::bisection_product(g, u, v);
            if convolve(g, &ind(u), &ind(v)).expect("same groupoid") != ind(&uv) {
                report.multiplicative_failures.push((u.clone(), v.clone()));
            }
            if u.iter().any(|a| v.contains(a)) {
                continue;
            }
            let mut w: Vec<usize> = u.iter().chain(v).copied().collect();
            w.sort_unstable();
            if is_bisection(g, &w) {
                report.additive_pairs += 1;
                if ind(&w) != ind(u).add(&ind(v)) {
                    report.additive_failures.push((u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(report)
}
