//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is exact. A [`Scalar`] is either a
//! `BigRational` (always reduced, positive denominator) or a residue in
//! `[0, p)` for a prime `p` carried alongside the value. Mixing scalars
//! from different fields is a programming error and panics; matrix
//! constructors validate homogeneity up front and report it as an error.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// A ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { v: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: m % *p, p: *p }
            }
        }
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime, a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, p } => *v == 1 % *p,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { v: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { v: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (*p - *v) % *p, p: *p },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "division by zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "division by zero");
                Scalar::Fp { v: mod_inverse(*v, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Exact string form used by the JSON serializers ("-3/7", or a residue).
    pub fn to_exact_string(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    /// Parse the output of [`Scalar::to_exact_string`] back in `field`.
    pub fn from_exact_string(field: Field, s: &str) -> Option<Scalar> {
        match field {
            Field::Q => {
                let r: BigRational = s.parse().ok()?;
                Some(Scalar::Q(r))
            }
            Field::Fp(p) => {
                let v: u64 = s.parse().ok()?;
                if v < p {
                    Some(Scalar::Fp { v, p })
                } else {
                    None
                }
            }
        }
    }

    /// The rational value as an i64 when it is a small integer.
    pub fn as_small_int(&self) -> Option<i64> {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    let n = r.numer();
                    if n.abs() <= BigInt::from(i64::MAX) {
                        return n.to_string().parse().ok();
                    }
                }
                None
            }
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validate a user-specified prime field modulus.
pub fn check_prime(p: u64) -> crate::error::Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(crate::error::Error::Parse {
            line: 0,
            col: 0,
            msg: format!("{p} is not prime"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Q;
        let a = f.from_i64(2).div(&f.from_i64(3));
        let b = f.from_i64(5).div(&f.from_i64(7));
        // (a + b) - b == a, on the nose
        assert_eq!(a.add(&b).sub(&b), a);
        // lowest terms, positive denominator
        match f.from_i64(-4).div(&f.from_i64(6)) {
            Scalar::Q(r) => {
                assert_eq!(r.numer().to_string(), "-2");
                assert_eq!(r.denom().to_string(), "3");
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Fp(101);
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Fp { v: 100, p: 101 });
        assert!(a.mul(&a).is_one());
        let b = f.from_i64(37);
        assert!(b.mul(&b.inv()).is_one());
        assert_eq!(a.add(&f.one()), f.zero());
    }

    #[test]
    fn exact_string_round_trip() {
        let vals = [
            Field::Q.from_i64(0),
            Field::Q.from_i64(-7).div(&Field::Q.from_i64(12)),
            Field::Fp(13).from_i64(9),
        ];
        for v in vals {
            let s = v.to_exact_string();
            assert_eq!(Scalar::from_exact_string(v.field(), &s).unwrap(), v);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101) && is_prime(1_000_003));
        assert!(!is_prime(1) && !is_prime(91));
    }
}
