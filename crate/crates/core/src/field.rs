//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Field elements carry no context; arithmetic goes through the field value, which is a small
//! `Copy` handle. This keeps `F_p` with a runtime modulus on the same footing as `Q`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime description of a ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) if is_prime(p) => Ok(()),
            FieldSpec::Prime(p) => Err(Error::InvalidField(format!("{p} is not prime"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in `{s}`")))?;
            let spec = FieldSpec::Prime(p);
            spec.validate()?;
            return Ok(spec);
        }
        Err(Error::InvalidField(format!("unknown field `{s}` (expected Q or Fp:p)")))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field. Implementations are cheap handles; elements are plain values.
pub trait Field: Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    type El: Clone + Debug + Display + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, v: i64) -> Self::El;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rat(&self, r: &Rat) -> Option<Self::El>;
    /// Canonical rational representative (for `F_p`, the integer in `[0, p)`).
    fn to_rat(&self, a: &Self::El) -> Rat;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn is_zero(&self, a: &Self::El) -> bool;
    /// Random element used by seeded searches: small integers over `Q`, uniform over `F_p`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::El;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::El, b: &Self::El, c: &Self::El) {
        *a = self.sub(a, &self.mul(b, c));
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::El, b: &Self::El, c: &Self::El) {
        *a = self.add(a, &self.mul(b, c));
    }

    fn div(&self, a: &Self::El, b: &Self::El) -> Option<Self::El> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// Exact rational number. Small values live inline; anything that overflows `i64`
/// is promoted to an arbitrary-precision rational. The representation is canonical,
/// so derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rat {
    /// numerator, denominator; denominator positive, fraction reduced
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn zero() -> Rat {
        Rat::Small(0, 1)
    }

    pub fn one() -> Rat {
        Rat::Small(1, 1)
    }

    pub fn from_int(v: i64) -> Rat {
        Rat::Small(v, 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        // BigRational::new / arithmetic keeps values reduced with positive denominator
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(b) => b.denom().clone(),
        }
    }

    pub fn add(&self, other: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rat::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_add(c * b) {
                return Rat::from_i128(n, b * d);
            }
        }
        Rat::from_big(self.to_big() + other.to_big())
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n != i64::MIN => Rat::Small(-n, *d),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_sub(*c) {
                    return Rat::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_sub(c * b) {
                return Rat::from_i128(n, b * d);
            }
        }
        Rat::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, other) {
            if *a == 0 || *c == 0 {
                return Rat::zero();
            }
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rat::Small(p, 1);
                }
            }
            return Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Rat::from_big(self.to_big() * other.to_big())
    }

    pub fn inv(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(n, d) => Some(Rat::from_i128(*d as i128, *n as i128)),
            Rat::Big(b) => Some(Rat::from_big(b.recip())),
        }
    }

    pub fn abs(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n >= 0 => Rat::Small(*n, *d),
            _ => Rat::from_big(self.to_big().abs()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(n, 1) => Some(*n),
            _ => None,
        }
    }
}

impl Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rat::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::Parse(format!("bad rational literal `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type El = Rat;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn from_i64(&self, v: i64) -> Rat {
        Rat::from_int(v)
    }
    fn from_rat(&self, r: &Rat) -> Option<Rat> {
        Some(r.clone())
    }
    fn to_rat(&self, a: &Rat) -> Rat {
        a.clone()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(b)
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a.sub(b)
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a.mul(b)
    }
    fn neg(&self, a: &Rat) -> Rat {
        a.neg()
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        a.inv()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat {
        Rat::from_int(rng.gen_range(-3..=3))
    }
}

/// The prime field `F_p` for a runtime prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("modulus {p} too large (need p < 2^32)")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc as u128 * base as u128 % self.p as u128) as u64;
            }
            base = (base as u128 * base as u128 % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type El = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rat(&self, r: &Rat) -> Option<u64> {
        let n = self.reduce_big(&r.numer());
        let d = self.reduce_big(&r.denom());
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn to_rat(&self, a: &u64) -> Rat {
        Rat::from_int(*a as i64)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn sub_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        let prod = b * c % self.p;
        *a = self.sub(a, &prod);
    }
    fn add_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a = (*a + b * c) % self.p;
    }
}

/// Rational roots of a polynomial with coefficients in `Q` (lowest degree first).
/// Trial division is capped; when an integer coefficient is too large to factor the
/// search returns what it found so far.
pub fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let mut coeffs: Vec<Rat> = coeffs.to_vec();
    while coeffs.last().map_or(false, |c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // strip factors of x
    if coeffs[0].is_zero() {
        roots.push(Rat::zero());
        while coeffs.first().map_or(false, |c| c.is_zero()) {
            coeffs.remove(0);
        }
        if coeffs.len() < 2 {
            return roots;
        }
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(&c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let (Some(p_divs), Some(q_divs)) = (small_divisors(&a0), small_divisors(&an)) else {
        return roots;
    };
    let eval = |num: &BigInt, den: &BigInt| -> bool {
        // Σ c_i num^i den^(d-i) == 0
        let d = ints.len() - 1;
        let mut acc = BigInt::zero();
        let mut npow = BigInt::one();
        let mut dpows = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            dpows[i] = &dpows[i - 1] * den;
        }
        for (i, c) in ints.iter().enumerate() {
            acc += c * &npow * &dpows[d - i];
            npow *= num;
        }
        acc.is_zero()
    };
    for p in &p_divs {
        for q in &q_divs {
            if p.gcd(q) != BigInt::one() {
                continue;
            }
            for sign in [1i32, -1] {
                let num = p * BigInt::from(sign);
                if eval(&num, q) {
                    let r = Rat::from_big(BigRational::new(num, q.clone()));
                    if !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Roots in the field of a polynomial given lowest degree first.
pub fn field_roots<F: Field>(field: F, coeffs: &[F::El]) -> Vec<F::El> {
    match field.spec() {
        FieldSpec::Rationals => {
            let rats: Vec<Rat> = coeffs.iter().map(|c| field.to_rat(c)).collect();
            rational_roots(&rats)
                .iter()
                .filter_map(|r| field.from_rat(r))
                .collect()
        }
        FieldSpec::Prime(p) => {
            if p > 1 << 20 {
                return Vec::new();
            }
            (0..p as i64)
                .map(|v| field.from_i64(v))
                .filter(|x| field.is_zero(&eval_poly(field, coeffs, x)))
                .collect()
        }
    }
}

pub fn eval_poly<F: Field>(field: F, coeffs: &[F::El], x: &F::El) -> F::El {
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_promotes_on_overflow() {
        let big = Rat::from_int(i64::MAX);
        let s = big.add(&Rat::one());
        assert!(matches!(s, Rat::Big(_)));
        let back = s.sub(&Rat::one());
        assert_eq!(back, Rat::from_int(i64::MAX));
        assert!(matches!(back, Rat::Small(..)));
    }

    #[test]
    fn rat_parse_and_reduce() {
        let r: Rat = "6/-4".parse().unwrap();
        assert_eq!(r, Rat::Small(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u64 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.from_rat(&"1/2".parse().unwrap()), Some(51));
        assert!(PrimeField::new(100).is_err());
    }

    #[test]
    fn roots_of_split_polynomial() {
        // (x - 1/2)(x + 3)(x) = x^3 + 5/2 x^2 - 3/2 x
        let c: Vec<Rat> = ["0", "-3/2", "5/2", "1"].iter().map(|s| s.parse().unwrap()).collect();
        let mut r = rational_roots(&c);
        r.sort_by_key(|x| x.to_string());
        assert_eq!(r.len(), 3);
        assert!(r.contains(&"1/2".parse().unwrap()));
        assert!(r.contains(&Rat::from_int(-3)));
        assert!(r.contains(&Rat::zero()));
    }

    #[test]
    fn field_spec_parse() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert!("Fp:12".parse::<FieldSpec>().is_err());
    }
}
