use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{factor, parse_rat, Rat};
use crate::error::{bail, Error, Result};

/// The field Q(sqrt a) for a squarefree `a` other than 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    a: i64,
}

impl Field {
    pub fn new(a: i64) -> Result<Self> {
        if a == 0 || a == 1 {
            bail!(Domain, "a = {a} does not define a quadratic field");
        }
        if !factor::is_squarefree(a) {
            bail!(Domain, "a = {a} is not squarefree");
        }
        Ok(Field { a })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn elem(&self, x: impl Into<Rat>, y: impl Into<Rat>) -> QuadElem {
        QuadElem::raw(x.into(), y.into(), self.a)
    }

    pub fn int(&self, x: i64) -> QuadElem {
        self.elem(super::int(x), Rat::zero())
    }

    pub fn rat(&self, q: Rat) -> QuadElem {
        self.elem(q, Rat::zero())
    }

    pub fn zero(&self) -> QuadElem {
        self.int(0)
    }

    pub fn one(&self) -> QuadElem {
        self.int(1)
    }

    /// The generator sqrt(a).
    pub fn sqrt(&self) -> QuadElem {
        self.elem(Rat::zero(), Rat::one())
    }

    pub fn parse(&self, s: &str) -> Result<QuadElem> {
        QuadElem::parse_in(s, self.a)
    }
}

/// x + y sqrt(a) with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    x: Rat,
    y: Rat,
    a: i64,
}

impl QuadElem {
    pub fn new(x: Rat, y: Rat, a: i64) -> Result<Self> {
        Field::new(a)?;
        Ok(Self::raw(x, y, a))
    }

    pub(crate) fn raw(x: Rat, y: Rat, a: i64) -> Self {
        QuadElem { x, y, a }
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn field(&self) -> Field {
        Field { a: self.a }
    }

    pub fn same_field(&self, other: &QuadElem) -> Result<()> {
        if self.a != other.a {
            bail!(Mismatch, "Q(sqrt {}) vs Q(sqrt {})", self.a, other.a);
        }
        Ok(())
    }

    fn check(&self, other: &QuadElem) {
        assert!(
            self.a == other.a,
            "quadratic field mismatch: a = {} vs a = {}",
            self.a,
            other.a
        );
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem::raw(self.x.clone(), -&self.y, self.a)
    }

    /// x^2 - a y^2; equals |e|^2 when a < 0.
    pub fn norm(&self) -> Rat {
        &self.x * &self.x - Rat::from_integer(BigInt::from(self.a)) * &self.y * &self.y
    }

    pub fn trace(&self) -> Rat {
        &self.x + &self.x
    }

    pub fn scale(&self, q: &Rat) -> QuadElem {
        QuadElem::raw(&self.x * q, &self.y * q, self.a)
    }

    pub fn inv(&self) -> Option<QuadElem> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadElem::raw(&self.x / &n, -&self.y / &n, self.a))
    }

    pub fn checked_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_div(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        if other.is_zero() {
            bail!(Domain, "division by zero");
        }
        Ok(self / other)
    }

    pub fn pow(&self, mut e: u32) -> QuadElem {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Membership in the ring of integers of Q(sqrt a).
    pub fn is_integral(&self) -> bool {
        if self.a.rem_euclid(4) == 1 {
            let two = Rat::from_integer(BigInt::from(2));
            let (x2, y2) = (&self.x * &two, &self.y * &two);
            x2.is_integer()
                && y2.is_integer()
                && (x2.to_integer() - y2.to_integer()).is_even()
        } else {
            self.x.is_integer() && self.y.is_integer()
        }
    }

    /// Rational part of the complex number when a < 0 (the real part).
    pub fn re(&self) -> &Rat {
        &self.x
    }

    /// Sign of the real number x + y sqrt(a) for a > 0.
    pub fn real_sign(&self) -> i32 {
        assert!(self.a > 0, "real_sign needs a real field");
        let sx = sign(&self.x);
        let sy = sign(&self.y);
        if sx == sy || sy == 0 {
            return sx;
        }
        if sx == 0 {
            return sy;
        }
        // opposite signs: compare x^2 with a y^2
        let cmp = (&self.x * &self.x)
            .cmp(&(Rat::from_integer(BigInt::from(self.a)) * &self.y * &self.y));
        match cmp {
            std::cmp::Ordering::Greater => sx,
            std::cmp::Ordering::Less => sy,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Rescale by a positive rational so both coordinates are coprime integers.
    pub fn primitive_part(&self) -> QuadElem {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.x.denom().lcm(self.y.denom());
        let (xi, yi) = (
            (&self.x * Rat::from_integer(l.clone())).to_integer(),
            (&self.y * Rat::from_integer(l)).to_integer(),
        );
        let g = xi.gcd(&yi);
        QuadElem::raw(
            Rat::from_integer(xi / &g),
            Rat::from_integer(yi / &g),
            self.a,
        )
    }

    /// Parse the canonical rendering, or a bare rational, in Q(sqrt a).
    pub fn parse_in(s: &str, a: i64) -> Result<QuadElem> {
        let e: QuadElem = match s.parse::<QuadElem>() {
            Ok(e) => e,
            Err(_) if !s.contains("sqrt") => {
                Field::new(a)?;
                return Ok(QuadElem::raw(parse_rat(s)?, Rat::zero(), a));
            }
            Err(err) => return Err(err),
        };
        if e.a != a {
            bail!(Mismatch, "{s:?} lives in Q(sqrt {}) not Q(sqrt {a})", e.a);
        }
        Ok(e)
    }
}

fn sign(q: &Rat) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.x, -&self.y, self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.x, self.y, self.a)
        }
    }
}

impl FromStr for QuadElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = compact.find("*sqrt(").or_else(|| compact.find("sqrt(")) else {
            bail!(Parse, "{s:?} has no sqrt(a) term");
        };
        let tail = &compact[pos..];
        let open = tail.find('(').unwrap();
        let close = tail
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed sqrt in {s:?}")))?;
        if close + 1 != tail.len() {
            bail!(Parse, "trailing input after sqrt(...) in {s:?}");
        }
        let a: i64 = tail[open + 1..close]
            .parse()
            .map_err(|_| Error::Parse(format!("bad radicand in {s:?}")))?;
        let head = &compact[..pos];
        let bytes = head.as_bytes();
        // split at the last +/- that is not a leading sign
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                let prev = bytes[i - 1];
                split = Some(if prev == b'+' || prev == b'-' { i - 1 } else { i });
                break;
            }
        }
        let coeff = |t: &str| -> Result<Rat> {
            match t {
                "" | "+" => Ok(Rat::one()),
                "-" => Ok(-Rat::one()),
                _ => parse_rat(t.strip_prefix('+').unwrap_or(t)),
            }
        };
        let (x, y) = match split {
            Some(i) => {
                let x = parse_rat(&head[..i])?;
                let (sgn, rest) = head[i..].split_at(1);
                let rest = rest.strip_prefix('+').unwrap_or(rest);
                let (neg, rest) = match rest.strip_prefix('-') {
                    Some(r) => (sgn == "+", r),
                    None => (sgn == "-", rest),
                };
                let y = coeff(rest)?;
                (x, if neg { -y } else { y })
            }
            None => (Rat::zero(), coeff(head)?),
        };
        QuadElem::new(x, y, a)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &QuadElem) -> QuadElem {
                self.check(rhs);
                $body(self, rhs)
            }
        }
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &QuadElem) -> QuadElem {
                (&self).$m(rhs)
            }
        }
        impl $tr<QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |l: &QuadElem, r: &QuadElem| QuadElem::raw(
    &l.x + &r.x,
    &l.y + &r.y,
    l.a
));
binop!(Sub, sub, |l: &QuadElem, r: &QuadElem| QuadElem::raw(
    &l.x - &r.x,
    &l.y - &r.y,
    l.a
));
binop!(Mul, mul, |l: &QuadElem, r: &QuadElem| {
    let a = Rat::from_integer(BigInt::from(l.a));
    QuadElem::raw(
        &l.x * &r.x + a * &l.y * &r.y,
        &l.x * &r.y + &l.y * &r.x,
        l.a,
    )
});
binop!(Div, div, |l: &QuadElem, r: &QuadElem| {
    let inv = r.inv().expect("division by zero in Q(sqrt a)");
    l * &inv
});

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::raw(-self.x, -self.y, self.a)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::raw(-&self.x, -&self.y, self.a)
    }
}
