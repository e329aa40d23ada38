//! Even-weight algebraic families of Harish-Chandra modules, generated by
//! their weight-0 component, for the contraction family with generators
//! `H, E, F` satisfying
//!
//! ```text
//! [H, E] = 2E,   [H, F] = -2F,   [E, F] = zH.
//! ```
//!
//! The module has an `𝒪`-basis `f_k` indexed by even `k` with
//! `H f_k = k f_k`, `E f_k = A_k f_{k+2}` and `F f_{k+2} = B_k f_k`. The basis
//! is normalized so that `A_k = 1` for `k ≥ 0` and `B_k = 1` for `k < 0`; the
//! remaining coefficient at each weight is then `(z/4)(c - k² - 2k)`, where
//! `c` is the scalar by which the Casimir `H² + 2H + (4/z)FE` acts.
//!
//! Only a finite window of weights `-W..=W` is materialized.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{GaussianRational, Poly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("window bound must be even and at least 2, got {0}")]
    InvalidWindow(i64),
    #[error("Casimir {casimir} has a pole away from z = 0; it must be regular on C \\ {{0}}")]
    PoleAwayFromZero { casimir: String },
    #[error("pole too deep: Casimir has a pole of order {order} at z = 0 (at most a simple pole is allowed)")]
    PoleTooDeep { order: i64 },
    #[error("not generically irreducible: Casimir is the constant k^2 + 2k for k = {k}")]
    NotGenericallyIrreducible { k: i64 },
    #[error("missing coefficient {name}_{k}")]
    MissingCoefficient { name: &'static str, k: i64 },
    #[error("not a family with scalar Casimir: weight {k} gives {found}, expected {expected}")]
    NonScalarCasimir { k: i64, found: String, expected: String },
    #[error("window overflow: weight {target} is outside [-{bound}, {bound}]")]
    WindowOverflow { target: i64, bound: i64 },
    #[error("weight {0} is not an even weight inside the window")]
    WeightOutsideWindow(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    H,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::H, Generator::E, Generator::F];

    /// Weight shift of the generator.
    pub fn shift(self) -> i64 {
        match self {
            Generator::H => 0,
            Generator::E => 2,
            Generator::F => -2,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::H => "H",
            Generator::E => "E",
            Generator::F => "F",
        };
        f.write_str(s)
    }
}

/// The even weights `-W, -W+2, …, W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightWindow {
    bound: i64,
}

impl WeightWindow {
    pub fn new(bound: i64) -> Result<Self, FamilyError> {
        if bound < 2 || bound % 2 != 0 {
            return Err(FamilyError::InvalidWindow(bound));
        }
        Ok(Self { bound })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn contains(&self, k: i64) -> bool {
        k % 2 == 0 && k.abs() <= self.bound
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> + Clone {
        (-self.bound..=self.bound).step_by(2)
    }

    pub fn len(&self) -> usize {
        (self.bound + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A family truncated to a weight window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyModule {
    casimir: RatFunc,
    window: WeightWindow,
    a: BTreeMap<i64, Poly>,
    b: BTreeMap<i64, Poly>,
}

/// `(z/4)(c - k² - 2k)`, which equals `A_k·B_k`.
pub fn coefficient_product(casimir: &RatFunc, k: i64) -> RatFunc {
    let quarter_z = RatFunc::from_poly(Poly::z().scale(&GaussianRational::from_ratio(1, 4)));
    &quarter_z * &(casimir - &RatFunc::from_integer(k * k + 2 * k))
}

/// Validates a Casimir function for the 0-generated even-weight family.
pub fn validate_casimir(casimir: &RatFunc) -> Result<(), FamilyError> {
    let den = casimir.denom();
    let order = den.degree().unwrap_or(0);
    if *den != Poly::monomial(order) {
        return Err(FamilyError::PoleAwayFromZero { casimir: casimir.to_string() });
    }
    if order >= 2 {
        return Err(FamilyError::PoleTooDeep { order: order as i64 });
    }
    if let Some(k) = casimir.as_constant().and_then(|c| excluded_weight(&c)) {
        return Err(FamilyError::NotGenericallyIrreducible { k });
    }
    Ok(())
}

/// The even `k ≥ 0` with `k² + 2k = c`, if any. Since `k² + 2k = (k+1)² - 1`
/// and the map is symmetric under `k ↦ -k-2`, this covers all even `k`.
fn excluded_weight(c: &GaussianRational) -> Option<i64> {
    if !c.is_real() || !c.re().is_integer() {
        return None;
    }
    let shifted: BigInt = c.re().to_integer() + 1;
    if shifted.is_negative() {
        return None;
    }
    let root = shifted.sqrt();
    if &root * &root != shifted || (&root % 2u32).is_zero() {
        return None;
    }
    (root - BigInt::one()).to_i64()
}

/// Builds the normalized family with Casimir `casimir` on weights `-W..=W`.
pub fn build_family(casimir: &RatFunc, bound: i64) -> Result<FamilyModule, FamilyError> {
    let window = WeightWindow::new(bound)?;
    validate_casimir(casimir)?;
    let mut a = BTreeMap::new();
    let mut b = BTreeMap::new();
    for k in window.weights() {
        let product = coefficient_product(casimir, k).to_poly().expect("simple pole at 0 is cancelled by z");
        if k >= 0 {
            a.insert(k, Poly::one());
            b.insert(k, product);
        } else {
            a.insert(k, product);
            b.insert(k, Poly::one());
        }
    }
    Ok(FamilyModule { casimir: casimir.clone(), window, a, b })
}

impl FamilyModule {
    /// Assembles a family from explicit coefficient maps without checking the
    /// Casimir identity. Every window weight needs both `A_k` and `B_k`.
    pub fn from_coefficients(
        casimir: RatFunc,
        window: WeightWindow,
        a: BTreeMap<i64, Poly>,
        b: BTreeMap<i64, Poly>,
    ) -> Result<Self, FamilyError> {
        for k in window.weights() {
            if !a.contains_key(&k) {
                return Err(FamilyError::MissingCoefficient { name: "A", k });
            }
            if !b.contains_key(&k) {
                return Err(FamilyError::MissingCoefficient { name: "B", k });
            }
        }
        let a = a.into_iter().filter(|(k, _)| window.contains(*k)).collect();
        let b = b.into_iter().filter(|(k, _)| window.contains(*k)).collect();
        Ok(Self { casimir, window, a, b })
    }

    pub fn casimir(&self) -> &RatFunc {
        &self.casimir
    }

    pub fn window(&self) -> WeightWindow {
        self.window
    }

    pub fn a(&self, k: i64) -> Option<&Poly> {
        self.a.get(&k)
    }

    pub fn b(&self, k: i64) -> Option<&Poly> {
        self.b.get(&k)
    }

    pub fn a_map(&self) -> &BTreeMap<i64, Poly> {
        &self.a
    }

    pub fn b_map(&self) -> &BTreeMap<i64, Poly> {
        &self.b
    }

    /// Copy with `B_k` replaced; used to build deliberately broken families.
    pub fn with_b(&self, k: i64, value: Poly) -> Self {
        let mut out = self.clone();
        out.b.insert(k, value);
        out
    }

    pub fn with_a(&self, k: i64, value: Poly) -> Self {
        let mut out = self.clone();
        out.a.insert(k, value);
        out
    }

    /// Restriction to a smaller window.
    pub fn restrict(&self, bound: i64) -> Result<Self, FamilyError> {
        let window = WeightWindow::new(bound)?;
        if bound > self.window.bound {
            return Err(FamilyError::WindowOverflow { target: bound, bound: self.window.bound });
        }
        Self::from_coefficients(self.casimir.clone(), window, self.a.clone(), self.b.clone())
    }

    /// `g · f_k = coefficient · f_target`.
    pub fn act(&self, g: Generator, k: i64) -> Result<(i64, Poly), FamilyError> {
        if !self.window.contains(k) {
            return Err(FamilyError::WeightOutsideWindow(k));
        }
        let target = k + g.shift();
        if !self.window.contains(target) {
            return Err(FamilyError::WindowOverflow { target, bound: self.window.bound });
        }
        let coeff = match g {
            Generator::H => Poly::from_integers(&[k]),
            Generator::E => self.a[&k].clone(),
            Generator::F => self.b[&target].clone(),
        };
        Ok((target, coeff))
    }

    /// Applies a word of generators (rightmost first) to `f_k`. `None` if an
    /// intermediate weight leaves the window.
    pub fn apply_word(&self, word: &[Generator], k: i64) -> Option<(i64, Poly)> {
        let mut weight = k;
        let mut coeff = Poly::one();
        for &g in word.iter().rev() {
            let (target, c) = self.act(g, weight).ok()?;
            coeff = &coeff * &c;
            weight = target;
        }
        Some((weight, coeff))
    }

    /// Checks the three bracket relations on every weight where both
    /// compositions stay inside the window.
    pub fn verify_relations(&self) -> RelationReport {
        use Generator::*;
        let mut report = RelationReport::default();
        for k in self.window.weights() {
            for relation in Relation::ALL {
                let (x, y) = relation.pair();
                let (Some((wxy, cxy)), Some((wyx, cyx))) = (self.apply_word(&[x, y], k), self.apply_word(&[y, x], k))
                else {
                    continue;
                };
                debug_assert_eq!(wxy, wyx);
                let lhs = &cxy - &cyx;
                // right-hand sides: 2E, -2F, zH
                let rhs = match relation {
                    Relation::HE => self.act(E, k).map(|(_, c)| c.scale(&GaussianRational::from_integer(2))),
                    Relation::HF => self.act(F, k).map(|(_, c)| c.scale(&GaussianRational::from_integer(-2))),
                    Relation::EF => Ok(&Poly::z() * &Poly::from_integers(&[k])),
                }
                .expect("single steps stay inside the window when the compositions do");
                report.checked += 1;
                if lhs != rhs {
                    report.failures.push(RelationFailure { relation, weight: k, lhs, rhs });
                }
            }
        }
        report
    }

    /// Applies the Casimir to every `f_k` and returns the common scalar.
    ///
    /// Uses `H² + 2H + (4/z)FE` except at the top weight, where `E f_W` leaves
    /// the window and the equivalent `H² - 2H + (4/z)EF` is used instead.
    pub fn casimir_scalar(&self) -> Result<RatFunc, FamilyError> {
        use Generator::*;
        let four_over_z = RatFunc::new(Poly::from_integers(&[4]), Poly::z()).expect("nonzero");
        let mut common: Option<RatFunc> = None;
        for k in self.window.weights() {
            let (linear, word) = if k < self.window.bound { (2 * k, [F, E]) } else { (-2 * k, [E, F]) };
            let (_, coeff) = self.apply_word(&word, k).expect("chosen word stays inside the window");
            let value = &RatFunc::from_integer(k * k + linear) + &(&four_over_z * &RatFunc::from_poly(coeff));
            match &common {
                None => common = Some(value),
                Some(c) if *c == value => {}
                Some(c) => {
                    return Err(FamilyError::NonScalarCasimir { k, found: value.to_string(), expected: c.to_string() })
                }
            }
        }
        Ok(common.expect("window is nonempty"))
    }

    /// True iff no product `A_k·B_k` vanishes identically on the window.
    pub fn is_generically_irreducible(&self) -> bool {
        self.window.weights().all(|k| !(&self.a[&k] * &self.b[&k]).is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    HE,
    HF,
    EF,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::HE, Relation::HF, Relation::EF];

    fn pair(self) -> (Generator, Generator) {
        match self {
            Relation::HE => (Generator::H, Generator::E),
            Relation::HF => (Generator::H, Generator::F),
            Relation::EF => (Generator::E, Generator::F),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.pair();
        write!(f, "[{x},{y}]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: Relation,
    pub weight: i64,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&RelationFailure> {
        self.failures.first()
    }
}
