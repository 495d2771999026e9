//! Exact coefficient rings.
//!
//! Every algebraic routine in the crate is generic over [`Ring`]. The trait
//! extends the `num-traits` arithmetic vocabulary with the few operations
//! exact elimination needs: Bezout combinations, a canonical division with
//! remainder, and inversion of units.

use num::bigint::BigInt;
use num::integer::Integer as _;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Field,
    EuclideanDomain,
    /// Commutative ring with zero divisors; elimination is not supported.
    Other,
}

pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn name() -> String;
    fn kind() -> RingKind;
    fn from_i64(n: i64) -> Self;
    fn try_inverse(&self) -> Option<Self>;
    /// An idempotent other than 0 and 1, if the ring has one.
    fn nontrivial_idempotent() -> Option<Self>;
    /// `(g, s, t)` with `g = s*self + t*other` generating the ideal `(self, other)`.
    fn bezout(&self, other: &Self) -> (Self, Self, Self);
    /// `(q, r)` with `self = q*d + r` and `r` the canonical residue modulo `(d)`.
    fn div_rem_canonical(&self, d: &Self) -> (Self, Self);
    /// Unit `u` such that `u*self` is the canonical associate.
    fn normalizing_unit(&self) -> Self;

    fn is_field() -> bool {
        Self::kind() == RingKind::Field
    }

    /// Whether the elements generate the unit ideal.
    fn generates_unit(values: &[Self]) -> bool {
        let mut g = Self::zero();
        for v in values {
            g = g.bezout(v).0;
        }
        g.try_inverse().is_some()
    }
}

impl Ring for BigRational {
    fn name() -> String {
        "Q".into()
    }
    fn kind() -> RingKind {
        RingKind::Field
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn nontrivial_idempotent() -> Option<Self> {
        None
    }
    fn bezout(&self, other: &Self) -> (Self, Self, Self) {
        field_bezout(self, other)
    }
    fn div_rem_canonical(&self, d: &Self) -> (Self, Self) {
        field_div_rem(self, d)
    }
    fn normalizing_unit(&self) -> Self {
        self.try_inverse().unwrap_or_else(Self::one)
    }
}

impl Ring for BigInt {
    fn name() -> String {
        "Z".into()
    }
    fn kind() -> RingKind {
        RingKind::EuclideanDomain
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn nontrivial_idempotent() -> Option<Self> {
        None
    }
    fn bezout(&self, other: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(other);
        (e.gcd, e.x, e.y)
    }
    fn div_rem_canonical(&self, d: &Self) -> (Self, Self) {
        if d.is_zero() {
            return (Self::zero(), self.clone());
        }
        let r = self.mod_floor(&d.abs());
        ((self - &r) / d, r)
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

fn field_bezout<F: Ring>(a: &F, b: &F) -> (F, F, F) {
    if let Some(ai) = a.try_inverse() {
        (F::one(), ai, F::zero())
    } else if let Some(bi) = b.try_inverse() {
        (F::one(), F::zero(), bi)
    } else {
        (F::zero(), F::zero(), F::zero())
    }
}

fn field_div_rem<F: Ring>(a: &F, d: &F) -> (F, F) {
    match d.try_inverse() {
        Some(di) => (a.clone() * di, F::zero()),
        None => (F::zero(), a.clone()),
    }
}

/// Integers modulo `N`. A field exactly when `N` is prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Zn<const N: u64>(u64);

/// Prime fields are the `Zn` with prime modulus.
pub type Zp<const P: u64> = Zn<P>;

impl<const N: u64> Zn<N> {
    pub fn new(v: i64) -> Self {
        Zn(v.rem_euclid(N as i64) as u64)
    }
    pub fn value(self) -> u64 {
        self.0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = xgcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = xgcd(a as i128, m as i128);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m as i128) as u64)
    }
}

impl<const N: u64> fmt::Debug for Zn<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const N: u64> fmt::Display for Zn<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const N: u64> Add for Zn<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Zn(((self.0 as u128 + o.0 as u128) % N as u128) as u64)
    }
}

impl<const N: u64> Sub for Zn<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zn(((self.0 as u128 + N as u128 - o.0 as u128) % N as u128) as u64)
    }
}

impl<const N: u64> Mul for Zn<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zn(((self.0 as u128 * o.0 as u128) % N as u128) as u64)
    }
}

impl<const N: u64> Neg for Zn<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Zn((N - self.0) % N)
    }
}

impl<const N: u64> Zero for Zn<N> {
    fn zero() -> Self {
        Zn(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const N: u64> One for Zn<N> {
    fn one() -> Self {
        Zn(1 % N)
    }
}

impl<const N: u64> Ring for Zn<N> {
    fn name() -> String {
        format!("Zp:{N}")
    }
    fn kind() -> RingKind {
        if is_prime(N) {
            RingKind::Field
        } else {
            RingKind::Other
        }
    }
    fn from_i64(n: i64) -> Self {
        Zn::new(n)
    }
    fn try_inverse(&self) -> Option<Self> {
        inverse_mod(self.0, N).map(Zn)
    }
    fn nontrivial_idempotent() -> Option<Self> {
        // Split N = q * m with q the full power of its smallest prime factor;
        // the CRT lift of (1 mod q, 0 mod m) is idempotent.
        let mut p = 2u64;
        while p * p <= N && !N.is_multiple_of(p) {
            p += 1;
        }
        if N < 2 || !N.is_multiple_of(p) {
            return None;
        }
        let mut q = 1u64;
        while N.is_multiple_of(q * p) {
            q *= p;
        }
        let m = N / q;
        if m == 1 {
            return None;
        }
        let e = (m as u128 * inverse_mod(m % q, q)? as u128) % N as u128;
        Some(Zn(e as u64))
    }
    fn bezout(&self, other: &Self) -> (Self, Self, Self) {
        let (g, x, y) = xgcd(self.0 as i128, other.0 as i128);
        let n = N as i128;
        (
            Zn(g.rem_euclid(n) as u64),
            Zn(x.rem_euclid(n) as u64),
            Zn(y.rem_euclid(n) as u64),
        )
    }
    fn div_rem_canonical(&self, d: &Self) -> (Self, Self) {
        // (d) = (g) with g = gcd(d, N); the residue is self mod g.
        let g = gcd_u(d.0, N);
        let r = self.0 % g;
        let a = (self.0 - r) / g;
        let m = N / g;
        let q = match inverse_mod((d.0 / g) % m, m) {
            Some(inv) => ((a as u128 * inv as u128) % m as u128) as u64,
            None => 0,
        };
        (Zn(q), Zn(r))
    }
    fn normalizing_unit(&self) -> Self {
        self.try_inverse().unwrap_or_else(Self::one)
    }
}

/// Coefficient ring chosen at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Rationals,
    IntegersModPrime(u64),
    Integers,
}

/// Prime moduli with a compiled `Zp` instantiation.
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101, 65521];

impl RingSpec {
    pub fn parse(s: &str) -> Result<RingSpec, String> {
        match s {
            "Q" => Ok(RingSpec::Rationals),
            "Z" => Ok(RingSpec::Integers),
            _ => {
                let p = s
                    .strip_prefix("Zp:")
                    .ok_or_else(|| format!("unknown ring '{s}', expected Q, Z or Zp:<p>"))?;
                let p: u64 = p.parse().map_err(|_| format!("bad modulus in '{s}'"))?;
                if !is_prime(p) {
                    return Err(format!("modulus {p} is not prime"));
                }
                if !SUPPORTED_PRIMES.contains(&p) {
                    return Err(format!("prime {p} not supported; supported: {SUPPORTED_PRIMES:?}"));
                }
                Ok(RingSpec::IntegersModPrime(p))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            RingSpec::Rationals => "Q".into(),
            RingSpec::Integers => "Z".into(),
            RingSpec::IntegersModPrime(p) => format!("Zp:{p}"),
        }
    }
}

/// Expands `$body` with the type alias `$R` bound to the ring named by `$spec`.
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, $R:ident => $body:expr) => {{
        use $crate::scalar::RingSpec;
        match $spec {
            RingSpec::Rationals => {
                type $R = $crate::Rational;
                $body
            }
            RingSpec::Integers => {
                type $R = $crate::Integer;
                $body
            }
            RingSpec::IntegersModPrime(p) => $crate::with_ring!(@prime p, $R => $body;
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101, 65521),
        }
    }};
    (@prime $p:ident, $R:ident => $body:expr; $($q:literal),*) => {
        match $p {
            $($q => {
                type $R = $crate::scalar::Zn<$q>;
                $body
            })*
            other => unreachable!("unsupported prime {other}"),
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_arithmetic() {
        let a = Zn::<5>::new(3);
        let b = Zn::<5>::new(4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!(a.try_inverse().unwrap().value(), 2);
        assert_eq!(Zn::<5>::kind(), RingKind::Field);
    }

    #[test]
    fn z6_has_idempotent_three() {
        let e = Zn::<6>::nontrivial_idempotent().unwrap();
        assert_eq!(e.value(), 3);
        assert_eq!(e * e, e);
        assert!(Zn::<5>::nontrivial_idempotent().is_none());
        assert!(Zn::<8>::nontrivial_idempotent().is_none());
        assert!(Zn::<12>::nontrivial_idempotent().is_some());
    }

    #[test]
    fn idempotent_scan_agrees_for_small_moduli() {
        fn scan<const N: u64>() -> bool {
            (2..N).any(|v| {
                let x = Zn::<N>::new(v as i64);
                x * x == x
            })
        }
        assert_eq!(scan::<6>(), Zn::<6>::nontrivial_idempotent().is_some());
        assert_eq!(scan::<9>(), Zn::<9>::nontrivial_idempotent().is_some());
        assert_eq!(scan::<10>(), Zn::<10>::nontrivial_idempotent().is_some());
        assert_eq!(scan::<15>(), Zn::<15>::nontrivial_idempotent().is_some());
        assert_eq!(scan::<16>(), Zn::<16>::nontrivial_idempotent().is_some());
    }

    #[test]
    fn integer_division_is_floor_with_nonnegative_residue() {
        let (q, r) = BigInt::from(-7).div_rem_canonical(&BigInt::from(3));
        assert_eq!(q, BigInt::from(-3));
        assert_eq!(r, BigInt::from(2));
        assert!(BigInt::generates_unit(&[BigInt::from(4), BigInt::from(6), BigInt::from(9)]));
        assert!(!BigInt::generates_unit(&[BigInt::from(4), BigInt::from(6)]));
    }

    #[test]
    fn ring_spec_parsing() {
        assert_eq!(RingSpec::parse("Q").unwrap(), RingSpec::Rationals);
        assert_eq!(RingSpec::parse("Zp:5").unwrap(), RingSpec::IntegersModPrime(5));
        assert!(RingSpec::parse("Zp:6").is_err());
        assert!(RingSpec::parse("R").is_err());
        let name = with_ring!(RingSpec::IntegersModPrime(7), R => R::name());
        assert_eq!(name, "Zp:7");
    }
}
