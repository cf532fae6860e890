use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    /// Prime field `F_p`, checking `2 <= p <= 2^31 - 1` and primality.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p as u64,
        }
    }

    pub fn is_prime_field(self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Parses the command-line spelling: `q` for the rationals, `pN` for `F_N`.
    pub fn parse_flag(s: &str) -> Result<Self, LinalgError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = t.strip_prefix('p').or_else(|| t.strip_prefix('P')) {
            if let Ok(p) = rest.parse::<u64>() {
                return FieldSpec::prime(p);
            }
        }
        Err(LinalgError::BadField(s.to_string()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// `num / den` in `field`; fails when `den` vanishes in the field.
    pub fn from_ratio(field: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self, LinalgError> {
        match field {
            FieldSpec::Rational => {
                if den.is_zero() {
                    return Err(LinalgError::ZeroDenominator);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u32().unwrap_or(0);
                let d = den.mod_floor(&pb).to_u32().unwrap_or(0);
                if d == 0 {
                    return Err(LinalgError::ZeroDenominator);
                }
                let n = Scalar::Residue { value: n, modulus: p };
                let d = Scalar::Residue { value: d, modulus: p };
                Ok(&n * &d.inverse().expect("nonzero residue"))
            }
        }
    }

    /// Parses `"3"`, `"-1"`, `"2/5"` exactly into `field`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self, LinalgError> {
        let t = s.trim();
        let bad = || LinalgError::BadScalar(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<BigInt>().map_err(|_| bad())?,
                b.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        Self::from_ratio(field, &num, &den)
    }

    /// The image of this scalar in another field: a rational reduces mod `p`
    /// when its denominator is prime to `p`; a residue only maps to itself.
    pub fn reduce(&self, field: FieldSpec) -> Result<Scalar, LinalgError> {
        match (self, field) {
            (Scalar::Rational(q), _) => Scalar::from_ratio(field, q.numer(), q.denom()),
            (Scalar::Residue { modulus, .. }, FieldSpec::Prime(p)) if *modulus == p => Ok(self.clone()),
            _ => Err(LinalgError::FieldMismatch {
                expected: field,
                found: self.field(),
            }),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                // extended Euclid
                let (mut r0, mut r1) = (*modulus as i64, *value as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                Scalar::Residue {
                    value: t0.rem_euclid(*modulus as i64) as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue value as an integer in `[0, p)`; `None` over the rationals.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `dst += factor * src`, skipping zero entries.
pub fn axpy(dst: &mut [Scalar], factor: &Scalar, src: &[Scalar]) {
    debug_assert_eq!(dst.len(), src.len());
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = &*d + &(factor * s);
        }
    }
}

pub fn zero_vec(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); n]
}

pub fn unit_vec(field: FieldSpec, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[k] = Scalar::one(field);
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Sign of a rational scalar, used only for rendering.
pub(crate) fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(q) => q.is_negative(),
        Scalar::Residue { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_coefficients() {
        let q = FieldSpec::Rational;
        assert_eq!(Scalar::parse(q, "2/4").unwrap().to_string(), "1/2");
        assert_eq!(Scalar::parse(q, "-3").unwrap().to_string(), "-3");
        assert_eq!(Scalar::parse(q, "6/-4").unwrap().to_string(), "-3/2");
        assert!(matches!(
            Scalar::parse(q, "2/0"),
            Err(LinalgError::ZeroDenominator)
        ));
        assert!(Scalar::parse(q, "x").is_err());
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(Scalar::parse(f3, "1/2").unwrap().residue(), Some(2));
        assert_eq!(Scalar::parse(f3, "-1").unwrap().residue(), Some(2));
        assert!(Scalar::parse(f3, "1/3").is_err());
    }

    #[test]
    fn rejects_composite_and_out_of_range_moduli() {
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert!(FieldSpec::prime(MAX_PRIME).is_ok());
        assert_eq!(FieldSpec::parse_flag("p5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse_flag("q").unwrap(), FieldSpec::Rational);
        assert!(FieldSpec::parse_flag("p6").is_err());
    }

    #[test]
    fn inverses_are_exact() {
        let q = FieldSpec::Rational;
        let a = Scalar::parse(q, "7/3").unwrap();
        assert!((&a * &a.inverse().unwrap()).is_one());
        for p in [2u64, 3, 5, 7, 101, 65_537, MAX_PRIME] {
            let f = FieldSpec::prime(p).unwrap();
            for n in [1i64, 2, 3, 17, -5] {
                let x = Scalar::from_i64(f, n);
                if x.is_zero() {
                    continue;
                }
                assert!((&x * &x.inverse().unwrap()).is_one());
                // Fermat: x * x^(p-2) = 1
                assert!((&x * &x.pow(p - 2)).is_one());
            }
        }
        assert!(Scalar::zero(q).inverse().is_none());
    }
}
