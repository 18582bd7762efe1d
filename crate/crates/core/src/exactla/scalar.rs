//! Exact scalars: arbitrary-precision rationals with an `i64` fast path, and
//! Gaussian rationals `a + bi`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
///
/// Values whose numerator and denominator both fit in an `i64` are kept
/// inline; anything larger spills to a heap-allocated [`BigRational`]. The
/// representation is canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // num > i64::MIN, den > 0, gcd(num, den) = 1
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational(Repr::Small(n, 1))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let neg = (num < 0) != (den < 0);
        let un = num.unsigned_abs();
        let ud = den.unsigned_abs();
        let g = gcd_u128(un, ud);
        let (un, ud) = if g > 1 { (un / g, ud / g) } else { (un, ud) };
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = un as i64;
            return Rational(Repr::Small(if neg { -n } else { n }, ud as i64));
        }
        let sign = if un == 0 {
            Sign::NoSign
        } else if neg {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let n = BigInt::from_biguint(sign, un.into());
        let d = BigInt::from(ud);
        Rational(Repr::Big(Box::new(BigRational::new_raw(n, d))))
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduces; only demote when it fits.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    /// Numerator and denominator reduced modulo `p`, or `None` if `p`
    /// divides the denominator.
    pub(crate) fn residue_parts(&self, p: u64) -> Option<(u64, u64)> {
        let (n, d) = match &self.0 {
            Repr::Small(n, d) => (n.rem_euclid(p as i64) as u64, (*d as u64) % p),
            Repr::Big(b) => {
                let pb = BigInt::from(p);
                let n = b.numer().mod_floor(&pb).to_u64().expect("reduced below p");
                let d = b.denom().mod_floor(&pb).to_u64().expect("reduced below p");
                (n, d)
            }
        };
        (d != 0).then_some((n, d))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        let n = self.numer();
        let d = self.denom();
        n.div_floor(&d)
    }

    /// Approximate bit size of numerator plus denominator; used for pivot
    /// heuristics only.
    pub fn height_bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(n, d) => {
                (64 - n.unsigned_abs().leading_zeros()) as u64
                    + (64 - (*d as u64).leading_zeros()) as u64
            }
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    /// `self * a + b` style accumulate: `self += a * b`.
    pub fn add_mul(&mut self, a: &Rational, b: &Rational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a * b;
        *self += &prod;
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(n))
    }
}

fn add_small(a: i64, b: i64, c: i64, d: i64) -> Rational {
    if b == d {
        if b == 1 {
            if let Some(s) = a.checked_add(c) {
                if s != i64::MIN {
                    return Rational(Repr::Small(s, 1));
                }
            }
        }
        return Rational::from_i128(a as i128 + c as i128, b as i128);
    }
    let g = gcd_u64(b as u64, d as u64) as i128;
    let (b, d, a, c) = (b as i128, d as i128, a as i128, c as i128);
    // a/b + c/d = (a*(d/g) + c*(b/g)) / (b/g*d)
    let num = a * (d / g) + c * (b / g);
    let den = (b / g) * d;
    Rational::from_i128(num, den)
}

fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Rational {
    if b == 1 && d == 1 {
        if let Some(p) = a.checked_mul(c) {
            if p != i64::MIN {
                return Rational(Repr::Small(p, 1));
            }
        }
    }
    Rational::from_i128(a as i128 * c as i128, b as i128 * d as i128)
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) => rhs.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => add_small(*a, *b, *c, *d),
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => add_small(*a, *b, -*c, *d),
            _ => Rational::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
            (Repr::Small(1, 1), _) => rhs.clone(),
            (_, Repr::Small(1, 1)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => mul_small(*a, *b, *c, *d),
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] for a checked path.
    fn div(self, rhs: &'a Rational) -> Rational {
        let inv = rhs.recip().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-*n, *d)),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                <&Rational as $tr<&Rational>>::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                <&Rational as $tr<&Rational>>::$m(&self, rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        *self = &*self + rhs;
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        *self = &*self - rhs;
    }
}

impl<'a> MulAssign<&'a Rational> for Rational {
    fn mul_assign(&mut self, rhs: &'a Rational) {
        *self = &*self * rhs;
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with an optional leading sign on `p`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(alloc::format!("invalid rational literal {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(alloc::format!("zero denominator in {s:?}")));
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Rational {
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

/// A Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn recip(&self) -> Result<Self, Error> {
        let n = self.norm_sqr().recip()?;
        Ok(GaussRational {
            re: &self.re * &n,
            im: -&(&self.im * &n),
        })
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &'a GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &'a GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &'a GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(
                f,
                "{}{}{}i",
                self.re,
                if self.im.signum() < 0 { "" } else { "+" },
                self.im
            )
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which scalar ring a matrix or subspace lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Real,
    Complex,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Real => "real",
            Ring::Complex => "complex",
        }
    }
}

/// Ring operations shared by [`Rational`] and [`GaussRational`], plus the
/// coordinate map used to treat either as a vector space over the rationals.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + 'static {
    /// Number of rational coordinates per scalar (1 real, 2 complex).
    const REAL_DIM: usize;
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn push_coords(&self, out: &mut Vec<Rational>);
    fn from_coords(c: &[Rational]) -> Self;
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = Scalar::add(self, &Scalar::mul(a, b));
    }
    /// Row-major product of an `n × m` and an `m × p` matrix, when the ring
    /// has a faster route than entrywise accumulation.
    fn matmul(_a: &[Self], _b: &[Self], _n: usize, _m: usize, _p: usize) -> Option<Vec<Self>> {
        None
    }
}

// Integer numerators over a common denominator per row (or column) of a
// matrix, so products need no gcd until the end.
fn scaled_lines<'a>(lines: impl Iterator<Item = Vec<&'a Rational>>) -> Vec<(BigInt, Vec<BigInt>)> {
    lines
        .map(|line| {
            let mut den = BigInt::one();
            for x in line.iter().filter(|x| !x.is_integer()) {
                den = den.lcm(&x.denom());
            }
            let ints = line
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        BigInt::zero()
                    } else {
                        x.numer() * (&den / x.denom())
                    }
                })
                .collect();
            (den, ints)
        })
        .collect()
}

fn rational_matmul(a: &[Rational], b: &[Rational], n: usize, m: usize, p: usize) -> Vec<Rational> {
    let rows = scaled_lines((0..n).map(|i| a[i * m..(i + 1) * m].iter().collect()));
    let cols = scaled_lines((0..p).map(|j| (0..m).map(|k| &b[k * p + j]).collect()));
    let mut out = Vec::with_capacity(n * p);
    for (rd, r) in &rows {
        for (cd, c) in &cols {
            let mut acc = BigInt::zero();
            for (x, y) in r.iter().zip(c) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            out.push(if acc.is_zero() {
                Rational::zero()
            } else {
                Rational::from_bigints(acc, rd * cd).expect("nonzero denominator")
            });
        }
    }
    out
}

impl Scalar for Rational {
    const REAL_DIM: usize = 1;
    const RING: Ring = Ring::Real;

    fn matmul(a: &[Self], b: &[Self], n: usize, m: usize, p: usize) -> Option<Vec<Self>> {
        let big = |x: &Rational| matches!(x.0, Repr::Big(_));
        (a.iter().any(big) || b.iter().any(big)).then(|| rational_matmul(a, b, n, m, p))
    }

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn push_coords(&self, out: &mut Vec<Rational>) {
        out.push(self.clone());
    }
    fn from_coords(c: &[Rational]) -> Self {
        c[0].clone()
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.add_mul(a, b);
    }
}

impl Scalar for GaussRational {
    const REAL_DIM: usize = 2;
    const RING: Ring = Ring::Complex;

    fn zero() -> Self {
        GaussRational::default()
    }
    fn one() -> Self {
        GaussRational::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        GaussRational::conj(self)
    }
    fn from_rational(r: Rational) -> Self {
        GaussRational::real(r)
    }
    fn scale(&self, r: &Rational) -> Self {
        GaussRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
    fn push_coords(&self, out: &mut Vec<Rational>) {
        out.push(self.re.clone());
        out.push(self.im.clone());
    }
    fn from_coords(c: &[Rational]) -> Self {
        GaussRational {
            re: c[0].clone(),
            im: c[1].clone(),
        }
    }
}
