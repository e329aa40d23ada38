//! The σ-twisted dual, the rational intertwiner `φ` and the hermitian pairing
//! `⟨f_j, f_k⟩ = φ(f_j)(f_k)`.
//!
//! The pairing is linear in the first slot and σ-semilinear in the second:
//! `⟨a f_j, b f_k⟩ = a · σ(b) · ⟨f_j, f_k⟩`. It is diagonal in the `f`-basis with
//! entries `φ_k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{GaussianRational, Poly, RatFunc};
use crate::family::{FamilyModule, Generator, WeightWindow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("no σ-twisted self-duality: Casimir {casimir} is not real on the real axis")]
    NotSelfDual { casimir: String },
    #[error("intertwiner has no value at weight {0}")]
    MissingWeight(i64),
    #[error("intertwiner entry at weight {0} is zero")]
    ZeroEntry(i64),
    #[error("the pairing is not hermitian up to a common factor (weight {0} disagrees)")]
    NoCommonFactor(i64),
}

/// `±X` for a generator `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedGenerator {
    pub negated: bool,
    pub generator: Generator,
}

impl SignedGenerator {
    pub fn sign(&self) -> i64 {
        if self.negated {
            -1
        } else {
            1
        }
    }
}

/// Action of the real structure on the sections `H, E, F`: `H ↦ -H`,
/// `E ↦ F`, `F ↦ E`. On `𝒪`-combinations it is conjugate-linear,
/// `σ(q·X) = σ(q)·σ(X)`.
pub fn sigma_on_sections(g: Generator) -> SignedGenerator {
    match g {
        Generator::H => SignedGenerator { negated: true, generator: Generator::H },
        Generator::E => SignedGenerator { negated: false, generator: Generator::F },
        Generator::F => SignedGenerator { negated: false, generator: Generator::E },
    }
}

/// Coefficient data of `𝓕^⟨σ⟩` in the basis `e_k` dual to `f_k`:
/// `E e_k = -σ(B_k) e_{k+2}`, `F e_{k+2} = -σ(A_k) e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedDualModule {
    casimir: RatFunc,
    window: WeightWindow,
    e_coeff: BTreeMap<i64, Poly>,
    f_coeff: BTreeMap<i64, Poly>,
}

pub fn twisted_dual(family: &FamilyModule) -> TwistedDualModule {
    let e_coeff = family.b_map().iter().map(|(&k, b)| (k, -b.sigma())).collect();
    let f_coeff = family.a_map().iter().map(|(&k, a)| (k, -a.sigma())).collect();
    TwistedDualModule { casimir: family.casimir().sigma(), window: family.window(), e_coeff, f_coeff }
}

impl TwistedDualModule {
    pub fn window(&self) -> WeightWindow {
        self.window
    }

    /// Casimir of the dual, `σ(c)`.
    pub fn casimir(&self) -> &RatFunc {
        &self.casimir
    }

    /// Coefficient `A'_k` with `E e_k = A'_k e_{k+2}`.
    pub fn e_coeff(&self, k: i64) -> Option<&Poly> {
        self.e_coeff.get(&k)
    }

    /// Coefficient `B'_k` with `F e_{k+2} = B'_k e_k`.
    pub fn f_coeff(&self, k: i64) -> Option<&Poly> {
        self.f_coeff.get(&k)
    }

    /// `g · e_k = coefficient · e_target`, or `None` outside the window.
    pub fn act(&self, g: Generator, k: i64) -> Option<(i64, Poly)> {
        let target = k + g.shift();
        if !self.window.contains(k) || !self.window.contains(target) {
            return None;
        }
        let coeff = match g {
            Generator::H => Poly::from_integers(&[k]),
            Generator::E => self.e_coeff[&k].clone(),
            Generator::F => self.f_coeff[&target].clone(),
        };
        Some((target, coeff))
    }

    /// The dual viewed as a family in its own right, so it can be dualized again.
    pub fn as_family(&self) -> FamilyModule {
        FamilyModule::from_coefficients(self.casimir.clone(), self.window, self.e_coeff.clone(), self.f_coeff.clone())
            .expect("dual carries every window weight")
    }
}

/// `𝓕` is rationally isomorphic to `𝓕^⟨σ⟩` iff its Casimir is σ-fixed.
pub fn self_dual_condition(family: &FamilyModule) -> bool {
    family.casimir().sigma() == *family.casimir()
}

/// The diagonal entries `φ_k` of `φ: 𝒦⊗𝓕 → 𝒦⊗𝓕^⟨σ⟩`, `φ(f_k) = φ_k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    phi: BTreeMap<i64, RatFunc>,
}

/// Closed form normalized by `φ_0 = 1`:
/// `φ_k = (-1)^{k/2} B_{k-2}⋯B_0` for `k > 0` and
/// `φ_k = (-1)^{k/2} A_k A_{k+2}⋯A_{-2}` for `k < 0`.
pub fn intertwiner(family: &FamilyModule) -> Result<Intertwiner, DualityError> {
    if !self_dual_condition(family) {
        return Err(DualityError::NotSelfDual { casimir: family.casimir().to_string() });
    }
    let bound = family.window().bound();
    let mut phi = BTreeMap::new();
    phi.insert(0, RatFunc::one());
    let mut acc = Poly::one();
    for k in (2..=bound).step_by(2) {
        acc = &acc * family.b(k - 2).expect("window weight");
        phi.insert(k, RatFunc::from_poly(signed(&acc, k)));
    }
    let mut acc = Poly::one();
    for k in (-bound..=-2).rev().step_by(2) {
        acc = &acc * family.a(k).expect("window weight");
        phi.insert(k, RatFunc::from_poly(signed(&acc, k)));
    }
    Ok(Intertwiner { phi })
}

fn signed(p: &Poly, k: i64) -> Poly {
    if (k / 2) % 2 == 0 {
        p.clone()
    } else {
        -p
    }
}

impl Intertwiner {
    /// Wraps explicit values; every entry must be nonzero.
    pub fn from_values(phi: BTreeMap<i64, RatFunc>) -> Result<Self, DualityError> {
        if let Some((&k, _)) = phi.iter().find(|(_, v)| v.is_zero()) {
            return Err(DualityError::ZeroEntry(k));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self, k: i64) -> Option<&RatFunc> {
        self.phi.get(&k)
    }

    pub fn values(&self) -> &BTreeMap<i64, RatFunc> {
        &self.phi
    }

    /// `r · φ` (Schur's lemma: every other intertwiner has this form).
    pub fn scaled(&self, r: &RatFunc) -> Result<Self, DualityError> {
        Self::from_values(self.phi.iter().map(|(&k, v)| (k, v * r)).collect())
    }

    /// Entries `φ_k^{-1}` of the inverse map `𝒦⊗𝓕^⟨σ⟩ → 𝒦⊗𝓕`.
    pub fn inverse(&self) -> Self {
        Self { phi: self.phi.iter().map(|(&k, v)| (k, v.inv().expect("entries are nonzero"))).collect() }
    }

    /// Weights at which a compatibility relation
    /// `A_{k-2} φ_k = -σ(B_{k-2}) φ_{k-2}` or `B_k φ_k = -σ(A_k) φ_{k+2}` fails.
    pub fn recurrence_failures(&self, family: &FamilyModule) -> Vec<i64> {
        let window = family.window();
        let mut failures = Vec::new();
        for k in window.weights() {
            let mut ok = true;
            if window.contains(k - 2) {
                let lhs = &RatFunc::from_poly(family.a(k - 2).unwrap().clone()) * &self.phi[&k];
                let rhs = &RatFunc::from_poly(-family.b(k - 2).unwrap().sigma()) * &self.phi[&(k - 2)];
                ok &= lhs == rhs;
            }
            if window.contains(k + 2) {
                let lhs = &RatFunc::from_poly(family.b(k).unwrap().clone()) * &self.phi[&k];
                let rhs = &RatFunc::from_poly(-family.a(k).unwrap().sigma()) * &self.phi[&(k + 2)];
                ok &= lhs == rhs;
            }
            if !ok {
                failures.push(k);
            }
        }
        failures
    }
}

/// `⟨f_j, f_k⟩`.
pub fn pairing(intertwiner: &Intertwiner, j: i64, k: i64) -> RatFunc {
    if j != k {
        return RatFunc::zero();
    }
    intertwiner.phi(j).cloned().unwrap_or_else(RatFunc::zero)
}

/// `⟨a f_j, b f_k⟩ = a · σ(b) · ⟨f_j, f_k⟩`.
pub fn pairing_of(intertwiner: &Intertwiner, a: &RatFunc, j: i64, b: &RatFunc, k: i64) -> RatFunc {
    if j != k || a.is_zero() || b.is_zero() {
        return RatFunc::zero();
    }
    &(a * &b.sigma()) * &pairing(intertwiner, j, k)
}

/// The function `q` with `σ(⟨f_2, f_1⟩) = q · ⟨f_1, f_2⟩`. It always satisfies
/// `σ(q)·q = 1`; the closed-form intertwiner gives `q = 1`.
pub fn hermitian_factor(intertwiner: &Intertwiner) -> Result<RatFunc, DualityError> {
    let mut factor: Option<RatFunc> = None;
    for (&k, v) in intertwiner.values() {
        let q = &v.sigma() / v;
        match &factor {
            None => factor = Some(q),
            Some(f) if *f == q => {}
            Some(_) => return Err(DualityError::NoCommonFactor(k)),
        }
    }
    Ok(factor.unwrap_or_else(RatFunc::one))
}

/// A failed instance of `⟨X f_j, f_k⟩ + ⟨f_j, σ(X) f_k⟩ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceFailure {
    pub generator: Generator,
    pub j: i64,
    pub k: i64,
    pub value: RatFunc,
}

/// Checks `𝖌`-invariance of the pairing on all window pairs `(j, k)` where
/// both actions stay inside the window.
pub fn invariance_failures(family: &FamilyModule, intertwiner: &Intertwiner) -> Vec<InvarianceFailure> {
    let window = family.window();
    let mut failures = Vec::new();
    for g in Generator::ALL {
        let sg = sigma_on_sections(g);
        for j in window.weights() {
            for k in window.weights() {
                let (Ok((tj, cj)), Ok((tk, ck))) = (family.act(g, j), family.act(sg.generator, k)) else {
                    continue;
                };
                let ck = RatFunc::from_poly(ck.scale(&GaussianRational::from_integer(sg.sign())));
                let lhs = pairing_of(intertwiner, &RatFunc::from_poly(cj), tj, &RatFunc::one(), k);
                let rhs = pairing_of(intertwiner, &RatFunc::one(), j, &ck, tk);
                let value = &lhs + &rhs;
                if !value.is_zero() {
                    failures.push(InvarianceFailure { generator: g, j, k, value });
                }
            }
        }
    }
    failures
}
