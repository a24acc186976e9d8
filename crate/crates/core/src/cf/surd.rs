//! Exact arithmetic in the real quadratic field Q(√d).
//!
//! A [`Surd`] is the number `(a + b√d) / c` with arbitrary-precision integer
//! coefficients. Values are kept normalized (`gcd(a, b, c) = 1`, `c > 0`), so
//! structural equality is numeric equality. Floors are exact: `⌊b√d⌋` comes
//! from an integer square root of `b²d`, never from a float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Fractional bits carried by the fixed-point path in [`Surd::fract_mul_f64`].
pub(crate) const FRACT_BITS: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

fn is_square(d: u64) -> bool {
    let r = d.sqrt();
    r * r == d
}

/// `⌊b·√d⌋` for non-square `d`.
fn floor_b_sqrt_d(b: &BigInt, d: u64) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let sq: BigUint = b.magnitude() * b.magnitude() * BigUint::from(d);
    let r = BigInt::from(sq.sqrt());
    if b.is_positive() {
        r
    } else {
        // b²d is never a perfect square here, so the root is strictly inside (r, r+1).
        -(r + BigInt::one())
    }
}

impl Surd {
    /// `(a + b√d) / c`. Rejects `c = 0` and perfect-square radicands.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self> {
        let c = c.into();
        if c.is_zero() {
            return Err(invalid("surd denominator must be nonzero"));
        }
        if is_square(d) {
            return Err(invalid(format!("radicand {d} is a perfect square")));
        }
        Ok(Self::normalized(a.into(), b.into(), c, d))
    }

    pub fn integer(n: impl Into<BigInt>, d: u64) -> Self {
        Self::normalized(n.into(), BigInt::zero(), BigInt::one(), d)
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: u64) -> Self {
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_zero() && !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Surd { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.c.is_one()
    }

    pub fn conjugate(&self) -> Self {
        Surd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d,
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let num = &self.a + floor_b_sqrt_d(&self.b, self.d);
        num.div_floor(&self.c)
    }

    /// Sign of the value, computed without rounding.
    pub fn signum(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        match (sa, sb) {
            (Sign::NoSign, s) | (s, Sign::NoSign) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigInt::from(self.d);
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Sign::NoSign,
                }
            }
        }
    }

    /// Multiply by an integer.
    pub fn mul_int(&self, h: &BigInt) -> Self {
        Self::normalized(&self.a * h, &self.b * h, self.c.clone(), self.d)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(invalid("reciprocal of zero surd"));
        }
        // c / (a + b√d) = c(a − b√d) / (a² − b²d)
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        Ok(Self::normalized(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d,
        ))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Surd::integer(1, self.d);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `{h·self}` computed exactly to [`FRACT_BITS`] fractional bits, then
    /// converted to `f64` once.
    pub fn fract_mul_f64(&self, h: &BigInt) -> f64 {
        if h.is_zero() {
            return 0.0;
        }
        let scale = BigInt::one() << FRACT_BITS;
        let scaled = Surd {
            a: &self.a * h * &scale,
            b: &self.b * h * &scale,
            c: self.c.clone(),
            d: self.d,
        };
        let fixed = scaled.floor().mod_floor(&scale);
        fixed.to_f64().unwrap_or(0.0) * 2f64.powi(-(FRACT_BITS as i32))
    }

    /// Fractional part `{self}`.
    pub fn fract_f64(&self) -> f64 {
        self.fract_mul_f64(&BigInt::one())
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        let fl = self.floor();
        fl.to_f64().unwrap_or(f64::NAN) + self.fract_f64()
    }

    fn check_same_field(&self, other: &Surd) {
        assert_eq!(
            self.d, other.d,
            "surd arithmetic across different radicands"
        );
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√{})/{}", self.a, self.b, self.d, self.c)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d {
            return None;
        }
        Some(match (self - other).signum() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        self.check_same_field(rhs);
        Surd::normalized(
            &self.a * &rhs.c + &rhs.a * &self.c,
            &self.b * &rhs.c + &rhs.b * &self.c,
            &self.c * &rhs.c,
            self.d,
        )
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        self.check_same_field(rhs);
        let d = BigInt::from(self.d);
        Surd::normalized(
            &self.a * &rhs.a + &self.b * &rhs.b * d,
            &self.a * &rhs.b + &self.b * &rhs.a,
            &self.c * &rhs.c,
            self.d,
        )
    }
}

impl<'a> Div<&'a Surd> for &'a Surd {
    type Output = Surd;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Surd) -> Surd {
        self * &rhs.recip().expect("division by zero surd")
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Surd> for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);
