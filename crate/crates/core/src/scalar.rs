//! Exact scalar fields.
//!
//! Two implementations are provided: [`Rational`], an exact rational with a
//! machine-word fast path that promotes to arbitrary precision on overflow,
//! and [`Fp`], the prime field of order `P`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// 0 for the rationals, `P` for `Fp<P>`.
    fn characteristic() -> u64;
    /// All field elements, when the field is small enough to list.
    fn elements() -> Option<Vec<Self>>;
    /// Short name used in reports, e.g. `rat` or `fp:7`.
    fn mode_name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    fn sub_assign(&mut self, o: &Self) {
        *self = self.sub(o);
    }
    fn mul_assign(&mut self, o: &Self) {
        *self = self.mul(o);
    }
}

/// Exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are always stored in
/// the `Small` variant, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational::Small(a, b),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rational::Small(a, b),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(a, b) => (BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(a, 1) => write!(f, "{a}"),
            Rational::Small(a, b) => write!(f, "{a}/{b}"),
            Rational::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::Small(v, 1)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num.clone(), den.clone())))
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rational::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match a.checked_mul(d).zip(c.checked_mul(b)).and_then(|(x, y)| x.checked_add(y)) {
                    Some(n) => Self::from_i128(n, b * d),
                    None => Self::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Rational::Small(s, 1);
                    }
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Rational::Small(a, b) => match a.checked_neg() {
                Some(n) => Rational::Small(n, *b),
                None => Self::from_big(-self.to_big()),
            },
            Rational::Big(r) => Self::from_big(-r),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(a, b) => Self::from_i128(*b as i128, *a as i128),
            Rational::Big(r) => Self::from_big(r.recip()),
        }
    }
    fn characteristic() -> u64 {
        0
    }
    fn elements() -> Option<Vec<Self>> {
        None
    }
    fn mode_name() -> String {
        "rat".to_string()
    }
}

impl Rational {
    /// Absolute value, used by tests.
    pub fn abs(&self) -> Self {
        Self::from_big(self.to_big().abs())
    }
}

/// Element of the prime field of order `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc = 1u128;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let n = num.mod_floor(&p).to_u64()?;
        let d = den.mod_floor(&p).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(Fp(n).mul(&Fp(d).inv()))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn characteristic() -> u64 {
        P
    }
    fn elements() -> Option<Vec<Self>> {
        if P <= 4096 {
            Some((0..P).map(Fp).collect())
        } else {
            None
        }
    }
    fn mode_name() -> String {
        format!("fp:{P}")
    }
}

/// Unique eigenvalue of a matrix known to have a single eigenvalue
/// (left multiplication by an element of a split local algebra).
pub fn single_eigenvalue<S: Scalar>(m: &[Vec<S>]) -> S {
    let d = m.len();
    let ch = S::characteristic();
    if ch == 0 || !(d as u64).is_multiple_of(ch) {
        let mut tr = S::zero();
        for (i, row) in m.iter().enumerate() {
            tr.add_assign(&row[i]);
        }
        return tr.div(&S::from_i64(d as i64));
    }
    let elems = S::elements().expect("field too large to search for an eigenvalue");
    for lam in elems {
        let mut shifted: Vec<Vec<S>> = m.to_vec();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i].sub_assign(&lam);
        }
        if crate::linalg::rank(shifted) < d {
            return lam;
        }
    }
    panic!("no eigenvalue found in the prime field")
}
