//! Jantzen filtrations at rational real points.
//!
//! At `x ∈ ℚ` with coordinate `p = z - x`, the filtration of the fiber is
//! `𝓕|ₓⁿ = span{ f_k : ord_x(φ_k) ≥ n }`, and the form on the level-`n`
//! subquotient is the value of `p^{-n}⟨f, f⟩` at `x`. Because the pairing is
//! diagonal, each layer is a set of weights with one form value per weight.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{count_real_roots, rational_roots, ArithError, GaussianRational, Order, Poly, RatFunc, RationalPoint};
use crate::duality::{pairing, Intertwiner};
use crate::family::{FamilyModule, WeightWindow};

/// Largest window the Gram-matrix oracle accepts.
pub const ORACLE_MAX_BOUND: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JantzenError {
    #[error("intertwiner has no value at weight {0}")]
    MissingWeight(i64),
    #[error("intertwiner vanishes identically at weight {0}")]
    ZeroEntry(i64),
    #[error("coordinate scale must be a positive rational")]
    NonPositiveScale,
    #[error("no Jantzen layer at level {0}")]
    MissingLevel(i64),
    #[error("window bound {bound} is too large for the oracle (max {max})")]
    WindowTooLarge { bound: i64, max: i64 },
    #[error("Gram matrix is degenerate over the field of rational functions")]
    DegenerateForm,
    #[error("interval [{lo}, {hi}] is empty")]
    EmptyInterval { lo: String, hi: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
}

impl Verdict {
    /// Definiteness of a diagonal hermitian form with the given entries.
    /// Non-real entries make the form indefinite.
    pub fn of_values<'a>(values: impl IntoIterator<Item = &'a GaussianRational>) -> Self {
        let mut signs = BTreeSet::new();
        for v in values {
            match v.real_sign() {
                Some(s) if s != 0 => {
                    signs.insert(s);
                }
                _ => return Verdict::Indefinite,
            }
        }
        match (signs.contains(&1), signs.contains(&-1)) {
            (true, false) => Verdict::PositiveDefinite,
            (false, true) => Verdict::NegativeDefinite,
            _ => Verdict::Indefinite,
        }
    }

    /// Definite either way; a negative-definite form is an inner product after
    /// rescaling by `-1`.
    pub fn is_definite(self) -> bool {
        self != Verdict::Indefinite
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::PositiveDefinite => "positive_definite",
            Verdict::NegativeDefinite => "negative_definite",
            Verdict::Indefinite => "indefinite",
        })
    }
}

/// The real group carried by the fiber at `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealForm {
    SU11,
    CartanMotion,
    SU2,
}

impl RealForm {
    pub fn at(x: &RationalPoint) -> Self {
        match x.signum() {
            1 => RealForm::SU11,
            0 => RealForm::CartanMotion,
            _ => RealForm::SU2,
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            RealForm::SU11 => "SU(1,1)",
            RealForm::CartanMotion => "U(1) x C (Cartan motion group)",
            RealForm::SU2 => "SU(2)",
        }
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealForm::SU11 => "SU11",
            RealForm::CartanMotion => "CartanMotion",
            RealForm::SU2 => "SU2",
        })
    }
}

/// Jantzen data of one fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JantzenAnalysis {
    point: RationalPoint,
    window: WeightWindow,
    casimir_value: Option<GaussianRational>,
    shift: i64,
    orders: BTreeMap<i64, i64>,
    form_values: BTreeMap<i64, GaussianRational>,
    layers: BTreeMap<i64, Vec<i64>>,
    verdicts: BTreeMap<i64, Verdict>,
    real_form: RealForm,
}

impl JantzenAnalysis {
    /// Builds the analysis from raw (unshifted) orders and form values per
    /// weight. Levels are normalized so the smallest is 0.
    fn assemble(
        point: RationalPoint,
        window: WeightWindow,
        casimir_value: Option<GaussianRational>,
        raw: BTreeMap<i64, (i64, GaussianRational)>,
    ) -> Self {
        let shift = raw.values().map(|(n, _)| *n).min().unwrap_or(0);
        let mut orders = BTreeMap::new();
        let mut form_values = BTreeMap::new();
        let mut layers: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (k, (n, value)) in raw {
            orders.insert(k, n - shift);
            form_values.insert(k, value);
            layers.entry(n - shift).or_default().push(k);
        }
        let verdicts = layers
            .iter()
            .map(|(&level, weights)| (level, Verdict::of_values(weights.iter().map(|k| &form_values[k]))))
            .collect();
        let real_form = RealForm::at(&point);
        Self { point, window, casimir_value, shift, orders, form_values, layers, verdicts, real_form }
    }

    pub fn point(&self) -> &RationalPoint {
        &self.point
    }

    pub fn window(&self) -> WeightWindow {
        self.window
    }

    /// `c(x)`, or `None` when the Casimir has its pole at `x`.
    pub fn casimir_value(&self) -> Option<&GaussianRational> {
        self.casimir_value.as_ref()
    }

    /// The minimum raw order that was subtracted from every order.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Normalized orders `n_k`.
    pub fn orders(&self) -> &BTreeMap<i64, i64> {
        &self.orders
    }

    /// Raw orders `ord_x(φ_k)` before normalization.
    pub fn raw_order(&self, k: i64) -> Option<i64> {
        self.orders.get(&k).map(|n| n + self.shift)
    }

    pub fn form_values(&self) -> &BTreeMap<i64, GaussianRational> {
        &self.form_values
    }

    pub fn layers(&self) -> &BTreeMap<i64, Vec<i64>> {
        &self.layers
    }

    pub fn levels(&self) -> impl Iterator<Item = i64> + '_ {
        self.layers.keys().copied()
    }

    pub fn max_level(&self) -> i64 {
        self.layers.keys().next_back().copied().unwrap_or(0)
    }

    pub fn verdicts(&self) -> &BTreeMap<i64, Verdict> {
        &self.verdicts
    }

    pub fn verdict(&self, level: i64) -> Option<Verdict> {
        self.verdicts.get(&level).copied()
    }

    pub fn real_form(&self) -> RealForm {
        self.real_form
    }

    /// A single Jantzen quotient: the fiber itself.
    pub fn is_trivial(&self) -> bool {
        self.layers.len() == 1
    }

    /// Weights of `𝓕|ₓⁿ`, the union of layers at level `≥ n`.
    pub fn filtration_space(&self, n: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self.layers.range(n..).flat_map(|(_, w)| w.iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Form values on the level-`n` layer, in weight order.
    pub fn layer_values(&self, n: i64) -> Vec<&GaussianRational> {
        self.layers.get(&n).map(|w| w.iter().map(|k| &self.form_values[k]).collect()).unwrap_or_default()
    }
}

/// Analysis with the coordinate `p = z - x`.
pub fn analyze_at(
    family: &FamilyModule,
    intertwiner: &Intertwiner,
    x: &RationalPoint,
) -> Result<JantzenAnalysis, JantzenError> {
    analyze_with_coordinate(family, intertwiner, x, &BigRational::one())
}

/// Analysis with the coordinate `p = s·(z - x)` for a positive rational `s`.
/// Changing `s` multiplies the level-`n` form by `s^{-n}`.
pub fn analyze_with_coordinate(
    family: &FamilyModule,
    intertwiner: &Intertwiner,
    x: &RationalPoint,
    scale: &BigRational,
) -> Result<JantzenAnalysis, JantzenError> {
    if !scale.is_positive() {
        return Err(JantzenError::NonPositiveScale);
    }
    let mut raw = BTreeMap::new();
    for k in family.window().weights() {
        let phi = intertwiner.phi(k).ok_or(JantzenError::MissingWeight(k))?;
        let Order::Finite(n) = phi.ord_at(x) else {
            return Err(JantzenError::ZeroEntry(k));
        };
        let value = phi.eval_shifted(x, n)?;
        let value = if n == 0 { value } else { &value * &GaussianRational::real(scale.pow(-n as i32)) };
        raw.insert(k, (n, value));
    }
    Ok(JantzenAnalysis::assemble(x.clone(), family.window(), family.casimir().eval(x), raw))
}

/// Weights of the level-`n` Jantzen subquotient.
pub fn layer_module(analysis: &JantzenAnalysis, n: i64) -> Result<&[i64], JantzenError> {
    analysis.layers.get(&n).map(Vec::as_slice).ok_or(JantzenError::MissingLevel(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerClassification {
    pub verdict: Verdict,
    /// Identification of the unitary representation, for definite layers.
    pub label: Option<String>,
}

pub const TRIVIAL_LABEL: &str = "trivial representation";

/// Verdict of the level-`n` layer plus, when it is definite, the unitary
/// representation it realizes.
pub fn classify_layer(analysis: &JantzenAnalysis, n: i64) -> Result<LayerClassification, JantzenError> {
    let weights = layer_module(analysis, n)?;
    let verdict = analysis.verdicts[&n];
    if !verdict.is_definite() {
        return Ok(LayerClassification { verdict, label: None });
    }
    let full = weights.len() == analysis.window.len();
    let label = match analysis.real_form {
        RealForm::SU2 => {
            let highest = weights.iter().copied().max().expect("layers are nonempty");
            format!("SU(2) irrep, highest weight {highest}")
        }
        RealForm::CartanMotion => "motion-group spherical representation".to_string(),
        RealForm::SU11 if full => spherical_label(analysis.casimir_value.as_ref()),
        RealForm::SU11 if weights == [0] => TRIVIAL_LABEL.to_string(),
        RealForm::SU11 if !weights.contains(&0) => {
            let lowest = weights.iter().map(|k| k.abs()).min().expect("layers are nonempty");
            format!("discrete series, |weight| >= {lowest}")
        }
        RealForm::SU11 => "unitary Jantzen quotient".to_string(),
    };
    Ok(LayerClassification { verdict, label: Some(label) })
}

fn spherical_label(casimir: Option<&GaussianRational>) -> String {
    let Some(c) = casimir else {
        return "spherical unitary representation".to_string();
    };
    let minus_one = GaussianRational::from_integer(-1);
    let series = match (c - &minus_one).real_sign() {
        Some(s) if s <= 0 => "spherical unitary principal series",
        Some(_) if c.real_sign() == Some(-1) => "spherical complementary series",
        _ => "spherical unitary representation",
    };
    format!("{series}, Casimir {c}")
}

/// A closed interval of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    lo: RationalPoint,
    hi: RationalPoint,
}

impl RationalInterval {
    pub fn new(lo: RationalPoint, hi: RationalPoint) -> Result<Self, JantzenError> {
        if lo > hi {
            return Err(JantzenError::EmptyInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &RationalPoint {
        &self.lo
    }

    pub fn hi(&self) -> &RationalPoint {
        &self.hi
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        x >= &self.lo && x <= &self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPoints {
    /// Sorted, deduplicated rational points with a nontrivial filtration.
    pub points: Vec<RationalPoint>,
    /// Monic square-free factors with real irrational roots in the range; not analyzed.
    pub unanalyzed: Vec<Poly>,
}

/// Rational points in `range` where the Jantzen filtration is nontrivial.
///
/// Candidates are the roots and poles of `φ_0` and of the ratios of
/// neighbouring entries, which are the small polynomials `-σ(B_k)/A_k`
/// (resp. `-σ(A_k)/B_k`) rather than the full products.
pub fn distinguished_points(
    family: &FamilyModule,
    intertwiner: &Intertwiner,
    range: &RationalInterval,
) -> Result<DistinguishedPoints, JantzenError> {
    let window = family.window();
    let phi = |k: i64| intertwiner.phi(k).ok_or(JantzenError::MissingWeight(k));
    let mut factors: Vec<Poly> = Vec::new();
    let mut push = |q: &RatFunc| {
        for p in [q.numer(), q.denom()] {
            if !p.is_constant() && !factors.contains(p) {
                factors.push(p.clone());
            }
        }
    };
    push(phi(0)?);
    for k in window.weights() {
        let next = if k >= 0 { k + 2 } else { k - 2 };
        if window.contains(next) {
            let ratio = phi(next)?.checked_div(phi(k)?).ok_or(JantzenError::ZeroEntry(k))?;
            push(&ratio);
        }
    }

    let mut candidates = BTreeSet::new();
    let mut unanalyzed: Vec<Poly> = Vec::new();
    for p in &factors {
        let report = rational_roots(p)?;
        candidates.extend(report.roots.into_iter().map(|(x, _)| x).filter(|x| range.contains(x)));
        let rest = report.remainder;
        if !rest.is_constant() && count_real_roots(&rest, range.lo(), range.hi())? > 0 && !unanalyzed.contains(&rest) {
            unanalyzed.push(rest);
        }
    }

    let mut points = Vec::new();
    for x in candidates {
        let mut orders = BTreeSet::new();
        for k in window.weights() {
            orders.insert(phi(k)?.ord_at(&x));
        }
        if orders.len() > 1 {
            points.push(x);
        }
    }
    Ok(DistinguishedPoints { points, unanalyzed })
}

/// One step of the localized diagonalization: the basis vector (tagged by its
/// original weight) and the pivot entry found for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisor {
    pub weight: i64,
    pub order: i64,
    pub value: GaussianRational,
}

/// Diagonalizes a hermitian matrix over `𝒦` by congruences `G ↦ P G P*` with
/// `P` invertible over the local ring at `x`, and returns the pivot orders and
/// the values of `p^{-n}·pivot` at `x`.
pub fn localized_divisors(
    gram: &[Vec<RatFunc>],
    labels: &[i64],
    x: &RationalPoint,
) -> Result<Vec<ElementaryDivisor>, JantzenError> {
    let n = gram.len();
    let mut g: Vec<Vec<RatFunc>> = gram.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);

    while !active.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for &a in &active {
            for &b in &active {
                if let Some(ord) = g[a][b].ord_at(x).finite() {
                    let better = match best {
                        None => true,
                        Some((o, ba, bb)) => ord < o || (ord == o && ba != bb && a == b),
                    };
                    if better {
                        best = Some((ord, a, b));
                    }
                }
            }
        }
        let (min_order, a, b) = best.ok_or(JantzenError::DegenerateForm)?;
        if a != b {
            // no diagonal entry reaches the minimal order: replace e_a by
            // e_a + t e_b so that the new diagonal entry does
            let lead = g[a][b].eval_shifted(x, min_order)?;
            let t = if lead.re().is_zero() { GaussianRational::i() } else { GaussianRational::one() };
            add_multiple(&mut g, a, b, &RatFunc::constant(t));
        }
        let pivot = g[a][a].clone();
        if pivot.is_zero() || pivot.ord_at(x) != Order::Finite(min_order) {
            return Err(JantzenError::DegenerateForm);
        }
        for &c in &active {
            if c == a || g[c][a].is_zero() {
                continue;
            }
            let m = -(&g[c][a] / &pivot);
            add_multiple(&mut g, c, a, &m);
        }
        out.push(ElementaryDivisor { weight: labels[a], order: min_order, value: pivot.eval_shifted(x, min_order)? });
        active.retain(|&c| c != a);
    }
    Ok(out)
}

/// Basis change `e_target ← e_target + m·e_source` applied to the form:
/// row `target` gains `m·row source`, column `target` gains `σ(m)·column source`.
fn add_multiple(g: &mut [Vec<RatFunc>], target: usize, source: usize, m: &RatFunc) {
    let source_row = g[source].clone();
    for (cell, s) in g[target].iter_mut().zip(&source_row) {
        *cell = &*cell + &(m * s);
    }
    let sm = m.sigma();
    for row in g.iter_mut() {
        let add = &row[source] * &sm;
        row[target] = &row[target] + &add;
    }
}

/// Independent route to the same analysis: build the full Gram matrix of the
/// pairing on the window and read orders and form values off its localized
/// elementary divisors.
pub fn filtration_oracle(
    family: &FamilyModule,
    intertwiner: &Intertwiner,
    x: &RationalPoint,
) -> Result<JantzenAnalysis, JantzenError> {
    let window = family.window();
    if window.bound() > ORACLE_MAX_BOUND {
        return Err(JantzenError::WindowTooLarge { bound: window.bound(), max: ORACLE_MAX_BOUND });
    }
    let labels: Vec<i64> = window.weights().collect();
    for &k in &labels {
        intertwiner.phi(k).ok_or(JantzenError::MissingWeight(k))?;
    }
    let gram: Vec<Vec<RatFunc>> =
        labels.iter().map(|&j| labels.iter().map(|&k| pairing(intertwiner, j, k)).collect()).collect();
    let divisors = localized_divisors(&gram, &labels, x)?;
    let raw = divisors.into_iter().map(|d| (d.weight, (d.order, d.value))).collect();
    Ok(JantzenAnalysis::assemble(x.clone(), window, family.casimir().eval(x), raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::intertwiner;
    use crate::family::build_family;

    fn pt(n: i64, d: i64) -> RationalPoint {
        RationalPoint::from_ratio(n, d)
    }

    fn contraction(bound: i64) -> (FamilyModule, Intertwiner) {
        let c = RatFunc::new(Poly::from_integers(&[-1, -1]), Poly::z()).unwrap();
        let fam = build_family(&c, bound).unwrap();
        let phi = intertwiner(&fam).unwrap();
        (fam, phi)
    }

    fn discrete(bound: i64) -> (FamilyModule, Intertwiner) {
        let c = RatFunc::new(Poly::from_integers(&[1, -1]), Poly::z()).unwrap();
        let fam = build_family(&c, bound).unwrap();
        let phi = intertwiner(&fam).unwrap();
        (fam, phi)
    }

    #[test]
    fn orders_at_first_reducibility_point() {
        let (fam, phi) = contraction(8);
        let a = analyze_at(&fam, &phi, &pt(-1, 9)).unwrap();
        for (&k, &n) in a.orders() {
            assert_eq!(n, i64::from(k.abs() > 2), "k = {k}");
        }
        assert_eq!(layer_module(&a, 0).unwrap(), &[-2, 0, 2]);
        assert_eq!(layer_module(&a, 1).unwrap(), &[-8, -6, -4, 4, 6, 8]);
        assert_eq!(a.filtration_space(1), vec![-8, -6, -4, 4, 6, 8]);
        assert!(a.filtration_space(2).is_empty());
        assert_eq!(a.real_form(), RealForm::SU2);
        assert_eq!(layer_module(&a, 2), Err(JantzenError::MissingLevel(2)));
    }

    #[test]
    fn positive_points_are_definite_and_trivial() {
        let (fam, phi) = contraction(8);
        let a = analyze_at(&fam, &phi, &pt(1, 4)).unwrap();
        assert!(a.is_trivial());
        assert_eq!(layer_module(&a, 0).unwrap().len(), 9);
        assert_eq!(a.verdict(0), Some(Verdict::PositiveDefinite));
        assert!(a.form_values().values().all(|v| v.real_sign() == Some(1)));
        let a = analyze_at(&fam, &phi, &pt(1, 3)).unwrap();
        assert!(a.is_trivial());
    }

    #[test]
    fn generic_negative_point_is_indefinite() {
        let (fam, phi) = contraction(8);
        let a = analyze_at(&fam, &phi, &pt(-1, 4)).unwrap();
        assert!(a.is_trivial());
        assert_eq!(a.verdict(0), Some(Verdict::Indefinite));
    }

    #[test]
    fn classification_labels() {
        let (fam, phi) = contraction(8);
        let a = analyze_at(&fam, &phi, &pt(-1, 1)).unwrap();
        assert_eq!(layer_module(&a, 0).unwrap(), &[0]);
        assert_eq!(a.form_values()[&0], GaussianRational::one());
        let cls = classify_layer(&a, 0).unwrap();
        assert_eq!(cls.verdict, Verdict::PositiveDefinite);
        assert_eq!(cls.label.as_deref(), Some("SU(2) irrep, highest weight 0"));

        let a = analyze_at(&fam, &phi, &pt(-1, 9)).unwrap();
        assert_eq!(classify_layer(&a, 1).unwrap(), LayerClassification { verdict: Verdict::Indefinite, label: None });

        let a = analyze_at(&fam, &phi, &pt(1, 2)).unwrap();
        let cls = classify_layer(&a, 0).unwrap();
        assert_eq!(cls.verdict, Verdict::PositiveDefinite);
        assert_eq!(cls.label.as_deref(), Some("spherical unitary principal series, Casimir -3"));

        let a = analyze_at(&fam, &phi, &pt(0, 1)).unwrap();
        assert_eq!(a.real_form(), RealForm::CartanMotion);
        assert!(a.casimir_value().is_none());
        assert_eq!(classify_layer(&a, 0).unwrap().label.as_deref(), Some("motion-group spherical representation"));
    }

    #[test]
    fn discrete_distinguished_layers() {
        let (fam, phi) = discrete(10);
        let a = analyze_at(&fam, &phi, &pt(1, 1)).unwrap();
        assert_eq!(layer_module(&a, 0).unwrap(), &[0]);
        assert_eq!(classify_layer(&a, 0).unwrap().label.as_deref(), Some(TRIVIAL_LABEL));
        let cls = classify_layer(&a, 1).unwrap();
        assert!(cls.verdict.is_definite());
        assert_eq!(cls.label.as_deref(), Some("discrete series, |weight| >= 2"));

        let a = analyze_at(&fam, &phi, &pt(2, 1)).unwrap();
        let cls = classify_layer(&a, 0).unwrap();
        assert_eq!(cls.label.as_deref(), Some("spherical complementary series, Casimir -1/2"));
    }

    #[test]
    fn distinguished_contraction_negative_axis() {
        let (fam, phi) = contraction(10);
        let range = RationalInterval::new(pt(-6, 5), pt(1, 1)).unwrap();
        let d = distinguished_points(&fam, &phi, &range).unwrap();
        assert_eq!(d.points, vec![pt(-1, 1), pt(-1, 9), pt(-1, 25), pt(-1, 49), pt(-1, 81)]);
        assert!(d.unanalyzed.is_empty());
        let range = RationalInterval::new(pt(0, 1), pt(1, 100)).unwrap();
        assert!(distinguished_points(&fam, &phi, &range).unwrap().points.is_empty());
    }

    #[test]
    fn distinguished_discrete_matches_root_oracle() {
        let (fam, phi) = discrete(10);
        let range = RationalInterval::new(pt(0, 1), pt(2, 1)).unwrap();
        let d = distinguished_points(&fam, &phi, &range).unwrap();
        // oracle: rational roots of each B_k, k = 0..W-2
        let mut expected: Vec<RationalPoint> = (0..=8)
            .step_by(2)
            .flat_map(|k| rational_roots(fam.b(k).unwrap()).unwrap().roots.into_iter().map(|(x, _)| x))
            .filter(|x| range.contains(x))
            .collect();
        expected.sort();
        assert_eq!(d.points, expected);
        assert_eq!(d.points, vec![pt(1, 81), pt(1, 49), pt(1, 25), pt(1, 9), pt(1, 1)]);
    }

    #[test]
    fn irrational_points_are_reported() {
        // c = (1 - 2z^2)/z gives B_0 = (1 - 2 z^2)/4 with roots ±1/√2
        let c = RatFunc::new(Poly::from_integers(&[1, 0, -2]), Poly::z()).unwrap();
        let fam = build_family(&c, 2).unwrap();
        let phi = intertwiner(&fam).unwrap();
        let range = RationalInterval::new(pt(0, 1), pt(1, 1)).unwrap();
        let d = distinguished_points(&fam, &phi, &range).unwrap();
        assert_eq!(d.unanalyzed, vec![Poly::new(vec![GaussianRational::from_ratio(-1, 2), 0.into(), 1.into()])]);
    }

    #[test]
    fn oracle_matches_direct_analysis() {
        let (fam, phi) = contraction(8);
        for x in [pt(-1, 9), pt(-1, 1), pt(1, 3), pt(0, 1), pt(-1, 25)] {
            assert_eq!(filtration_oracle(&fam, &phi, &x).unwrap(), analyze_at(&fam, &phi, &x).unwrap());
        }
        let (big, big_phi) = contraction(14);
        assert_eq!(
            filtration_oracle(&big, &big_phi, &pt(1, 1)),
            Err(JantzenError::WindowTooLarge { bound: 14, max: ORACLE_MAX_BOUND })
        );
    }

    #[test]
    fn oracle_handles_off_diagonal_pivots() {
        // [[z, 1], [1, 0]] at x = 0: signature (1, 1), both divisors of order 0
        let z = RatFunc::z();
        let gram = vec![vec![z, RatFunc::one()], vec![RatFunc::one(), RatFunc::zero()]];
        let divisors = localized_divisors(&gram, &[0, 2], &pt(0, 1)).unwrap();
        assert_eq!(divisors.len(), 2);
        assert!(divisors.iter().all(|d| d.order == 0));
        assert_eq!(Verdict::of_values(divisors.iter().map(|d| &d.value)), Verdict::Indefinite);
        assert_eq!(divisors[0].value, GaussianRational::from_integer(2));
        assert_eq!(divisors[1].value, GaussianRational::from_ratio(-1, 2));
    }

    #[test]
    fn coordinate_scale_rescales_higher_levels() {
        let (fam, phi) = contraction(8);
        let x = pt(-1, 9);
        let base = analyze_at(&fam, &phi, &x).unwrap();
        let s = BigRational::new(3.into(), 2.into());
        let scaled = analyze_with_coordinate(&fam, &phi, &x, &s).unwrap();
        assert_eq!(scaled.layers(), base.layers());
        assert_eq!(scaled.verdicts(), base.verdicts());
        let factor = GaussianRational::real(BigRational::new(2.into(), 3.into()));
        assert_eq!(scaled.form_values()[&4], &base.form_values()[&4] * &factor);
        assert_eq!(scaled.form_values()[&0], base.form_values()[&0]);
        assert_eq!(
            analyze_with_coordinate(&fam, &phi, &x, &BigRational::zero()),
            Err(JantzenError::NonPositiveScale)
        );
    }

    #[test]
    fn verdict_rule() {
        let pos = [GaussianRational::one(), GaussianRational::from_ratio(1, 3)];
        assert_eq!(Verdict::of_values(&pos), Verdict::PositiveDefinite);
        let neg = [GaussianRational::from_integer(-1)];
        assert_eq!(Verdict::of_values(&neg), Verdict::NegativeDefinite);
        let mixed = [GaussianRational::one(), GaussianRational::from_integer(-1)];
        assert_eq!(Verdict::of_values(&mixed), Verdict::Indefinite);
        assert_eq!(Verdict::of_values(&[GaussianRational::i()]), Verdict::Indefinite);
    }
}
