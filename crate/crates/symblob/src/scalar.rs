//! Exact coefficient arithmetic: arbitrary-precision rationals and a prime
//! field, plus the six-parameter set shared by every algebra instance.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::util::SplitMix64;

/// An exact field element. Both backends are exact; no floating point exists
/// anywhere in this crate.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// None exactly when the element is zero.
    fn inv(&self) -> Option<Self>;
    fn from_int(v: i64) -> Self;
    /// `num/den`; den must be invertible in the field.
    fn from_fraction(num: i64, den: i64) -> Self;
    /// Canonical coefficient string for JSON documents ("p/q" or "p").
    fn coeff_string(&self) -> String;
    fn backend_name() -> &'static str;
    /// Backend identifier including any modulus, for cache digests.
    fn backend_id() -> String {
        Self::backend_name().to_string()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero"))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Arbitrary-precision rational backend.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_string())
    }
}

impl Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_string())
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn from_int(v: i64) -> Self {
        Rat(BigRational::from(BigInt::from(v)))
    }
    fn from_fraction(num: i64, den: i64) -> Self {
        Rat::new(num, den)
    }
    fn coeff_string(&self) -> String {
        if self.0.denom().is_one() {
            format!("{}", self.0.numer())
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }
    fn backend_name() -> &'static str {
        "rational"
    }
}

/// Default prime for the prime-field backend: 2^20 + 7.
pub const DEFAULT_PRIME: u64 = 1_048_583;

static FP_PRIME: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(DEFAULT_PRIME);

/// The process-wide prime used by `Fp` values created through the `Field`
/// constructors.
pub fn fp_prime() -> u64 {
    FP_PRIME.load(std::sync::atomic::Ordering::Relaxed)
}

/// Configures the prime-field modulus. Rejects composites and primes at or
/// below 2^20.
pub fn set_fp_prime(p: u64) -> Result<()> {
    if p <= 1 << 20 || p >= 1 << 31 {
        return Err(Error::Parse(format!("prime {p} out of range (2^20, 2^31)")));
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        d += 1;
    }
    FP_PRIME.store(p, std::sync::atomic::Ordering::Relaxed);
    Ok(())
}

/// Prime-field backend F_p. The modulus travels with the value so a prime can
/// be chosen at run time; mixing moduli is a programming error.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub prime: u64,
}

impl Fp {
    pub fn new(value: i64, prime: u64) -> Self {
        let v = value.rem_euclid(prime as i64) as u64;
        Fp { value: v, prime }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            prime: fp_prime(),
        }
    }
    fn one() -> Self {
        Fp {
            value: 1,
            prime: fp_prime(),
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        let p = self.lift(other);
        Fp {
            value: (self.value + other.value) % p,
            prime: p,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        let p = self.lift(other);
        Fp {
            value: (self.value + p - other.value) % p,
            prime: p,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.lift(other);
        Fp {
            value: (self.value as u128 * other.value as u128 % p as u128) as u64,
            prime: p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.prime - self.value) % self.prime,
            prime: self.prime,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let (g, x, _) = egcd(self.value as i128, self.prime as i128);
        debug_assert_eq!(g, 1);
        Some(Fp {
            value: x.rem_euclid(self.prime as i128) as u64,
            prime: self.prime,
        })
    }
    fn from_int(v: i64) -> Self {
        Fp::new(v, fp_prime())
    }
    fn from_fraction(num: i64, den: i64) -> Self {
        let p = fp_prime();
        let d = Fp::new(den, p);
        Fp::new(num, p).mul(&d.inv().expect("denominator divisible by prime"))
    }
    fn coeff_string(&self) -> String {
        format!("{}", self.value)
    }
    fn backend_name() -> &'static str {
        "fp"
    }
    fn backend_id() -> String {
        format!("fp/{}", fp_prime())
    }
}

impl Fp {
    fn lift(&self, other: &Fp) -> u64 {
        debug_assert_eq!(self.prime, other.prime, "mixed prime-field moduli");
        self.prime
    }
}

pub const PARAM_NAMES: [&str; 6] = ["delta", "deltaL", "deltaR", "kappaL", "kappaR", "kappaLR"];

/// The six invertible scalars of an algebra instance. The identifications
/// k_L = k_R = kappa_LR are built in: a single `kappa_lr` serves all three
/// roles.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParameterSet<F: Field> {
    pub delta: F,
    pub delta_l: F,
    pub delta_r: F,
    pub kappa_l: F,
    pub kappa_r: F,
    pub kappa_lr: F,
}

impl<F: Field> ParameterSet<F> {
    /// Validates that every parameter is nonzero.
    pub fn new(
        delta: F,
        delta_l: F,
        delta_r: F,
        kappa_l: F,
        kappa_r: F,
        kappa_lr: F,
    ) -> Result<Self> {
        let fields = [&delta, &delta_l, &delta_r, &kappa_l, &kappa_r, &kappa_lr];
        for (value, name) in fields.iter().zip(PARAM_NAMES) {
            if value.is_zero() {
                return Err(Error::ZeroParameter(match name {
                    "delta" => "delta",
                    "deltaL" => "deltaL",
                    "deltaR" => "deltaR",
                    "kappaL" => "kappaL",
                    "kappaR" => "kappaR",
                    _ => "kappaLR",
                }));
            }
        }
        Ok(ParameterSet {
            delta,
            delta_l,
            delta_r,
            kappa_l,
            kappa_r,
            kappa_lr,
        })
    }

    /// The repo-wide default generic point (2, 3, 5, 7, 11, 13).
    pub fn default_point() -> Self {
        ParameterSet::new(
            F::from_int(2),
            F::from_int(3),
            F::from_int(5),
            F::from_int(7),
            F::from_int(11),
            F::from_int(13),
        )
        .expect("default point is nonzero")
    }

    /// `k_L`, which equals `kappa_lr` by construction.
    pub fn k_l(&self) -> &F {
        &self.kappa_lr
    }

    /// `k_R`, which equals `kappa_lr` by construction.
    pub fn k_r(&self) -> &F {
        &self.kappa_lr
    }

    /// Moves the parameter point to one with kappa_L = kappa_R = 1 by
    /// rescaling the two boundary generators:
    /// (d, dL/kL, dR/kR, 1, 1, kLR/(kL kR)).
    pub fn rescaled(&self) -> Self {
        let inv_kl = self.kappa_l.inv().expect("invertible by invariant");
        let inv_kr = self.kappa_r.inv().expect("invertible by invariant");
        ParameterSet {
            delta: self.delta.clone(),
            delta_l: self.delta_l.mul(&inv_kl),
            delta_r: self.delta_r.mul(&inv_kr),
            kappa_l: F::one(),
            kappa_r: F::one(),
            kappa_lr: self.kappa_lr.mul(&inv_kl).mul(&inv_kr),
        }
    }

    pub fn square_scalar(&self, letter: u8, n: u16) -> F {
        if letter == 0 {
            self.delta_l.clone()
        } else if letter as u16 == n {
            self.delta_r.clone()
        } else {
            self.delta.clone()
        }
    }

    pub fn as_strings(&self) -> Vec<(&'static str, String)> {
        vec![
            ("delta", self.delta.coeff_string()),
            ("deltaL", self.delta_l.coeff_string()),
            ("deltaR", self.delta_r.coeff_string()),
            ("kappaL", self.kappa_l.coeff_string()),
            ("kappaR", self.kappa_r.coeff_string()),
            ("kappaLR", self.kappa_lr.coeff_string()),
        ]
    }

    /// Parses `name=value` pairs (comma separated, values are integer
    /// fractions such as `3/7`) on top of the default point.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut values: Vec<F> = vec![
            F::from_int(2),
            F::from_int(3),
            F::from_int(5),
            F::from_int(7),
            F::from_int(11),
            F::from_int(13),
        ];
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got `{part}`")))?;
            let idx = PARAM_NAMES
                .iter()
                .position(|p| p.eq_ignore_ascii_case(name.trim()))
                .ok_or_else(|| Error::UnknownParameter(name.trim().to_string()))?;
            values[idx] = parse_scalar(value.trim())?;
        }
        let mut it = values.into_iter();
        ParameterSet::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        )
    }

    /// A seeded random nonzero point; used as the second generic point in the
    /// verification suite.
    pub fn random_point(seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mut draw = || {
            let num = 1 + rng.below(97) as i64;
            let den = 1 + rng.below(89) as i64;
            F::from_fraction(num, den)
        };
        ParameterSet::new(draw(), draw(), draw(), draw(), draw(), draw())
            .expect("draws are nonzero by construction")
    }
}

/// Parses an integer fraction such as `13`, `-2` or `3/7`.
pub fn parse_scalar<F: Field>(text: &str) -> Result<F> {
    let bad = || Error::BadScalar(text.to_string());
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(F::from_fraction(num, den))
    } else {
        let v: i64 = text.parse().map_err(|_| bad())?;
        Ok(F::from_int(v))
    }
}
