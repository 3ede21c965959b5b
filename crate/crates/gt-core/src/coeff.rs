//! Exact scalars: rationals and the truncated polynomial ring ℚ[b]/(b²).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

/// Rational from a small integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3/2"`, `"-4"` or `"0"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Scalar ring interface shared by [`Q`] and [`Coeff`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + Zero
    + One
{
    fn from_q(x: Q) -> Self;
    /// Multiplication by a rational.
    fn scale(&self, x: &Q) -> Self;
    /// Human-readable rendering used by the text formatter.
    fn render(&self) -> String;
}

impl Scalar for Q {
    fn from_q(x: Q) -> Self {
        x
    }
    fn scale(&self, x: &Q) -> Self {
        self * x
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
}

/// Element `b0 + b1·b` of ℚ[b]/(b²).
///
/// Products drop every `b²` term, which is exactly the arithmetic of the
/// second s-filtered quotient.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Coeff {
    pub b0: Q,
    pub b1: Q,
}

impl Coeff {
    pub fn new(b0: Q, b1: Q) -> Self {
        Coeff { b0, b1 }
    }

    /// The rational `x` with no `b` part.
    pub fn rational(x: Q) -> Self {
        Coeff { b0: x, b1: Zero::zero() }
    }

    /// The element `x·b`.
    pub fn b_times(x: Q) -> Self {
        Coeff { b0: Zero::zero(), b1: x }
    }

    /// Multiplication by `b`: `b0 + b1 b ↦ b0 b`.
    pub fn mul_b(&self) -> Self {
        Coeff { b0: Zero::zero(), b1: self.b0.clone() }
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        Coeff { b0: self.b0 + o.b0, b1: self.b1 + o.b1 }
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        Coeff { b0: self.b0 - o.b0, b1: self.b1 - o.b1 }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { b0: -self.b0, b1: -self.b1 }
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        let b1 = &self.b0 * &o.b1 + &self.b1 * &o.b0;
        Coeff { b0: self.b0 * o.b0, b1 }
    }
}

impl AddAssign for Coeff {
    fn add_assign(&mut self, o: Coeff) {
        self.b0 += o.b0;
        self.b1 += o.b1;
    }
}

impl SubAssign for Coeff {
    fn sub_assign(&mut self, o: Coeff) {
        self.b0 -= o.b0;
        self.b1 -= o.b1;
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::default()
    }
    fn is_zero(&self) -> bool {
        self.b0.is_zero() && self.b1.is_zero()
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff::rational(One::one())
    }
}

impl Scalar for Coeff {
    fn from_q(x: Q) -> Self {
        Coeff::rational(x)
    }
    fn scale(&self, x: &Q) -> Self {
        Coeff { b0: &self.b0 * x, b1: &self.b1 * x }
    }
    fn render(&self) -> String {
        match (self.b0.is_zero(), self.b1.is_zero()) {
            (_, true) => fmt_q(&self.b0),
            (true, false) => {
                if self.b1.is_one() {
                    "b".to_string()
                } else if (-&self.b1).is_one() {
                    "-b".to_string()
                } else {
                    format!("{} b", fmt_q(&self.b1))
                }
            }
            (false, false) => {
                let sign = if self.b1.is_negative() { "-" } else { "+" };
                let mag = self.b1.abs();
                let tail = if mag.is_one() { "b".to_string() } else { format!("{} b", fmt_q(&mag)) };
                format!("({} {} {})", fmt_q(&self.b0), sign, tail)
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_squared_vanishes() {
        let b = Coeff::b_times(q(1));
        assert!((b.clone() * b).is_zero());
    }

    #[test]
    fn product_keeps_linear_part() {
        let x = Coeff::new(q(2), q(3));
        let y = Coeff::new(qf(1, 2), q(-1));
        assert_eq!(x * y, Coeff::new(q(1), qf(-1, 2)));
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3/2", "-7", "0", "-1/3"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
    }

    #[test]
    fn render_forms() {
        assert_eq!(Coeff::b_times(q(1)).render(), "b");
        assert_eq!(Coeff::new(qf(3, 2), q(-2)).render(), "(3/2 - 2 b)");
        assert_eq!(Coeff::rational(q(-4)).render(), "-4");
    }
}
