//! Reduced rational functions in `z` over ℚ(i).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ArithError, GaussianRational, Poly, RationalPoint};

/// Order of vanishing at a point. `Infinite` only for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Ordering::Less,
            (Order::Infinite, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinite, Order::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "+inf"),
        }
    }
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
/// The representation is canonical, so structural equality is equality in
/// the function field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc_inv = den.leading().expect("nonzero").inv().expect("nonzero");
        Self { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn to_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Option<Self> {
        rhs.inv().map(|inv| self * &inv)
    }

    pub fn pow(&self, exp: i32) -> Self {
        let base = if exp < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        Self { num: base.num.pow(exp.unsigned_abs()), den: base.den.pow(exp.unsigned_abs()) }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `σ(q)(z) = conj(q(conj z))`: conjugate every coefficient. Conjugation
    /// preserves coprimality and monicity, so no re-reduction is needed.
    pub fn sigma(&self) -> Self {
        Self { num: self.num.sigma(), den: self.den.sigma() }
    }

    pub fn is_sigma_fixed(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    /// Multiplicity of `(z - x)` in the numerator minus that in the denominator.
    pub fn ord_at(&self, x: &RationalPoint) -> Order {
        match self.num.split_root(x.value()) {
            None => Order::Infinite,
            Some((num_mult, _)) => {
                let (den_mult, _) = self.den.split_root(x.value()).expect("denominator is nonzero");
                Order::Finite(i64::from(num_mult) - i64::from(den_mult))
            }
        }
    }

    /// Value of `(z - x)^(-n) · q` at `z = x`. Fails when that function has a pole at `x`.
    pub fn eval_shifted(&self, x: &RationalPoint, n: i64) -> Result<GaussianRational, ArithError> {
        let Some((num_mult, num_rest)) = self.num.split_root(x.value()) else {
            return Ok(GaussianRational::zero());
        };
        let (den_mult, den_rest) = self.den.split_root(x.value()).expect("denominator is nonzero");
        let order = i64::from(num_mult) - i64::from(den_mult);
        match order.cmp(&n) {
            Ordering::Less => Err(ArithError::Pole { order, shift: n }),
            Ordering::Greater => Ok(GaussianRational::zero()),
            Ordering::Equal => Ok(&num_rest.eval_real(x.value()) / &den_rest.eval_real(x.value())),
        }
    }

    /// Plain evaluation; `None` at a pole.
    pub fn eval(&self, x: &RationalPoint) -> Option<GaussianRational> {
        self.eval_shifted(x, 0).ok()
    }

    /// Pole order at `z = 0` (0 if regular there).
    pub fn pole_order_at_zero(&self) -> i64 {
        match self.ord_at(&RationalPoint::new(BigRational::zero())) {
            Order::Finite(n) if n < 0 => -n,
            _ => 0,
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<GaussianRational> for RatFunc {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            // both denominators are 1
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics when dividing by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if nonzero > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
