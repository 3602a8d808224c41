//! Siegel–Veech constants of configurations.
//!
//! The labelled formulas for distinct zeros and for loops share one shape:
//!
//! ```text
//! c = 1/(|Γ||Γ₋|) · ∏(angle factors) · 2^{−(p−1)} · ∏(d_i/2 − 1)!/(d/2 − 2)! · ∏μ(H_i)/μ(H)
//! ```
//!
//! Volumes come from a [`VolumeProvider`]; the error class of the result is
//! the worst class among the volumes used.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classes::ErrorClass;
use crate::configurations::{enumerate_distinct_zero_configs, enumerate_loop_configs, ConfigKind, Configuration};
use crate::error::{Error, Result};
use crate::numbers::{factorial, factorial_ratio, ratu, PiLaurent, Rational};
use crate::strata::{
    classify_components, volume_hyp_minimal, volume_hyp_two, volume_leading_coefficient, volume_torus, ComponentId,
    StratumSignature, VolumeValue,
};

/// Source of stratum volumes.
pub trait VolumeProvider: Sync {
    fn volume(&self, s: &StratumSignature, c: ComponentId) -> Result<VolumeValue>;
}

/// Exact volumes where a closed form exists, `4/∏(m+1)` elsewhere.
///
/// Strata of genus below `low_genus_below` get the `O(1)` class since the
/// large-genus formula says nothing about them.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticVolumes {
    pub low_genus_below: u64,
}

impl Default for AsymptoticVolumes {
    fn default() -> Self {
        Self { low_genus_below: 10 }
    }
}

impl VolumeProvider for AsymptoticVolumes {
    fn volume(&self, s: &StratumSignature, c: ComponentId) -> Result<VolumeValue> {
        let comps = classify_components(s);
        if !comps.admits(c) {
            return Err(Error::InvalidComponent { stratum: s.to_string(), component: c.to_string() });
        }
        if s.is_torus_block() {
            return Ok(VolumeValue::Exact(volume_torus()));
        }
        let hyp = c == ComponentId::Hyperelliptic || (c == ComponentId::Whole && comps.coincides_with_hyperelliptic);
        if c == ComponentId::Hyperelliptic || (hyp && comps.is_connected() && s.genus() == 2) {
            return hyperelliptic_volume(s);
        }
        let mut lead = volume_leading_coefficient(s);
        if matches!(c, ComponentId::Odd | ComponentId::Even) {
            lead /= Rational::from_integer(2.into());
        }
        let error = if s.genus() >= self.low_genus_below { ErrorClass::OneOverG } else { ErrorClass::LowGenus };
        Ok(VolumeValue::Leading { value: lead.into(), error })
    }
}

/// Only the closed-form volumes: `H(0)`, `H(0,0)` and the hyperelliptic families.
#[derive(Debug, Clone, Copy, Default)]
pub struct HyperellipticVolumes;

impl VolumeProvider for HyperellipticVolumes {
    fn volume(&self, s: &StratumSignature, _c: ComponentId) -> Result<VolumeValue> {
        if s.is_torus_block() {
            return Ok(VolumeValue::Exact(volume_torus()));
        }
        hyperelliptic_volume(s)
    }
}

fn hyperelliptic_volume(s: &StratumSignature) -> Result<VolumeValue> {
    if s.is_minimal_shape() {
        Ok(VolumeValue::Exact(volume_hyp_minimal(s.genus())))
    } else if s.is_two_equal_shape() {
        Ok(VolumeValue::Exact(volume_hyp_two(s.genus())))
    } else {
        Err(Error::VolumeUnavailable(format!("{s}^hyp")))
    }
}

/// Volumes from a closure.
pub struct FnVolumes<F>(pub F);

impl<F> VolumeProvider for FnVolumes<F>
where
    F: Fn(&StratumSignature, ComponentId) -> Result<VolumeValue> + Sync,
{
    fn volume(&self, s: &StratumSignature, c: ComponentId) -> Result<VolumeValue> {
        (self.0)(s, c)
    }
}

/// Which formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    DistinctZerosFormula,
    LoopFormula,
    MultiplicityOne,
    HyperellipticDistinct,
    HyperellipticLoopsTwoEqual,
    HyperellipticLoopsMinimal,
    DominantClosedForm,
    NonDominantBound,
    Sum,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::DistinctZerosFormula => "distinct-zeros formula",
            Provenance::LoopFormula => "loop formula",
            Provenance::MultiplicityOne => "multiplicity-one formula",
            Provenance::HyperellipticDistinct => "hyperelliptic distinct zeros",
            Provenance::HyperellipticLoopsTwoEqual => "hyperelliptic loops in H(g-1,g-1)",
            Provenance::HyperellipticLoopsMinimal => "hyperelliptic loops in H(2g-2)",
            Provenance::DominantClosedForm => "dominant closed form",
            Provenance::NonDominantBound => "non-dominant bound",
            Provenance::Sum => "sum over configurations",
        })
    }
}

/// A Siegel–Veech constant.
///
/// With `error = BoundOnly` the value is only an expression `E` with
/// `c ≤ C^p · E` for an unspecified constant `C`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvValue {
    pub value: PiLaurent,
    pub error: ErrorClass,
    pub provenance: Provenance,
}

impl SvValue {
    pub fn exact(value: PiLaurent, provenance: Provenance) -> Self {
        Self { value, error: ErrorClass::Exact, provenance }
    }

    pub fn zero(provenance: Provenance) -> Self {
        Self::exact(PiLaurent::zero(), provenance)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_bound(&self) -> bool {
        self.error == ErrorClass::BoundOnly
    }
}

impl fmt::Display for SvValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.error {
            ErrorClass::Exact => write!(f, "{} (exact)", self.value),
            ErrorClass::BoundOnly => write!(f, "<= C^p * {}", self.value),
            e => write!(f, "{} * ({e})", self.value),
        }
    }
}

/// Sums values, refusing to mix bounds with values.
pub fn sum_values(values: impl IntoIterator<Item = SvValue>) -> Result<SvValue> {
    let mut total = SvValue::zero(Provenance::Sum);
    let mut any_bound = false;
    let mut any_value = false;
    for v in values {
        if v.is_bound() {
            any_bound = true;
        } else {
            any_value = true;
        }
        if any_bound && any_value {
            return Err(Error::Precondition("bound-only values cannot be added to values".into()));
        }
        total.value += &v.value;
        total.error = total.error.combine(v.error);
    }
    Ok(total)
}

/// `∏ (d_i/2 − 1)! / (d/2 − 2)!` for the sub-strata of a configuration.
///
/// The largest factorial is cancelled against the denominator first, so
/// dominant configurations stay cheap in any genus.
pub fn dimension_term(c: &Configuration) -> Rational {
    let mut parts: Vec<u64> = c.blocks.iter().filter_map(|b| b.half_dimension_minus_one()).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let denom = c.stratum.dimension() / 2 - 2;
    let mut r = factorial_ratio(parts[0], denom);
    for &k in &parts[1..] {
        r *= ratu(factorial(k));
    }
    r
}

fn pow2_inv(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

fn exact_part(v: &VolumeValue, s: &StratumSignature) -> Result<PiLaurent> {
    v.pi_laurent().cloned().ok_or_else(|| Error::VolumeUnavailable(format!("{s} (no exact leading coefficient)")))
}

/// Combinatorial prefactor shared by both master formulas.
fn prefactor(c: &Configuration) -> Rational {
    let sym = c.symmetry();
    let angle = Rational::from_integer(BigInt::from(c.angle_product()));
    angle * pow2_inv(c.p() - 1) * dimension_term(c) / Rational::from_integer(BigInt::from(sym.product()))
}

fn master(c: &Configuration, parent: ComponentId, vol: &dyn VolumeProvider, provenance: Provenance) -> Result<SvValue> {
    c.validate()?;
    let mut error = ErrorClass::Exact;
    let mut product = PiLaurent::one();
    for b in &c.blocks {
        if let Some(s) = &b.substratum {
            let v = vol.volume(s, b.component.unwrap_or(ComponentId::Whole))?;
            error = error.combine(v.error_class());
            product *= &exact_part(&v, s)?;
        }
    }
    let vh = vol.volume(&c.stratum, parent)?;
    error = error.combine(vh.error_class());
    let value = product.div_monomial(&exact_part(&vh, &c.stratum)?)?.scale(&prefactor(c));
    Ok(SvValue { value, error, provenance })
}

/// Labelled saddle connections between distinct zeros in a connected stratum.
pub fn sv_distinct_labelled(c: &Configuration, vol: &dyn VolumeProvider) -> Result<SvValue> {
    if !matches!(c.kind, ConfigKind::DistinctZeros { .. }) || !c.labelled {
        return Err(Error::Precondition("expected a labelled distinct-zeros configuration".into()));
    }
    master(c, ComponentId::Whole, vol, Provenance::DistinctZerosFormula)
}

/// Labelled loops in a connected stratum.
pub fn sv_loop_labelled(c: &Configuration, vol: &dyn VolumeProvider) -> Result<SvValue> {
    if !c.is_loop() || !c.labelled {
        return Err(Error::Precondition("expected a labelled loop configuration".into()));
    }
    master(c, ComponentId::Whole, vol, Provenance::LoopFormula)
}

/// Either master formula, with an explicit parent component.
pub fn sv_labelled_on(c: &Configuration, parent: ComponentId, vol: &dyn VolumeProvider) -> Result<SvValue> {
    if !c.labelled {
        return Err(Error::Precondition("expected a labelled configuration".into()));
    }
    let prov = if c.is_loop() { Provenance::LoopFormula } else { Provenance::DistinctZerosFormula };
    master(c, parent, vol, prov)
}

/// `(m₁ + m₂ + 1) · μ(H₁)/μ(H)` with `H₁` the stratum where the two zeros merge.
pub fn sv_multiplicity_one(h: &StratumSignature, z1: usize, z2: usize, vol: &dyn VolumeProvider) -> Result<SvValue> {
    let o = h.orders();
    if z1 == z2 || z1 >= o.len() || z2 >= o.len() {
        return Err(Error::Precondition("two distinct zero indices are required".into()));
    }
    let mut sub = vec![o[z1] + o[z2]];
    sub.extend((0..o.len()).filter(|&i| i != z1 && i != z2).map(|i| o[i]));
    let h1 = StratumSignature::new(sub)?;
    let v1 = vol.volume(&h1, ComponentId::Whole)?;
    let v = vol.volume(h, ComponentId::Whole)?;
    let k = Rational::from_integer(BigInt::from(o[z1] + o[z2] + 1));
    let value = exact_part(&v1, &h1)?.div_monomial(&exact_part(&v, h)?)?.scale(&k);
    Ok(SvValue { value, error: v1.error_class().combine(v.error_class()), provenance: Provenance::MultiplicityOne })
}

/// Sum of the labelled formula over every configuration of multiplicity `p`
/// between zeros `z1` and `z2`.
pub fn sv_distinct_total(
    h: &StratumSignature,
    z1: usize,
    z2: usize,
    p: usize,
    vol: &dyn VolumeProvider,
) -> Result<SvValue> {
    let configs = enumerate_distinct_zero_configs(h, z1, z2, p, true)?;
    sum_values(configs.iter().map(|c| sv_distinct_labelled(c, vol)).collect::<Result<Vec<_>>>()?)
}

/// Sum of the labelled loop formula over every configuration of multiplicity `p` at zero `z`.
pub fn sv_loop_total(h: &StratumSignature, z: usize, p: usize, vol: &dyn VolumeProvider) -> Result<SvValue> {
    let configs = enumerate_loop_configs(h, z, p, true)?;
    sum_values(configs.iter().map(|c| sv_loop_labelled(c, vol)).collect::<Result<Vec<_>>>()?)
}

/// Closed forms for components of non-connected strata.
///
/// A dominant configuration gets
/// `∏(m+1)/(|Γ||Γ₋|) · (π²/6)^{p−1} · dimension term` with a `1 + O(1/g)`
/// error; any other configuration only the bound `∏(m+1) · dimension term`.
/// The product runs over the zeros created by the gluing.
pub fn sv_component_corrected(c: &Configuration, parent: ComponentId) -> Result<SvValue> {
    if parent == ComponentId::Hyperelliptic {
        return Err(Error::Precondition("hyperelliptic components use the exact hyperelliptic formulas".into()));
    }
    if !classify_components(&c.stratum).admits(parent) {
        return Err(Error::InvalidComponent { stratum: c.stratum.to_string(), component: parent.to_string() });
    }
    c.validate()?;
    let orders: BigInt = c.glued_orders().iter().map(|&m| BigInt::from(m + 1)).product();
    let dim = dimension_term(c);
    if c.is_dominant() {
        let sym = c.symmetry();
        let k = Rational::from_integer(orders) * dim / Rational::from_integer(BigInt::from(sym.product()));
        let value = PiLaurent::monomial(Rational::new(1.into(), 6.into()), 2).pow(c.p() as u32 - 1).scale(&k);
        Ok(SvValue { value, error: ErrorClass::OneOverG, provenance: Provenance::DominantClosedForm })
    } else {
        let value = PiLaurent::from_rational(Rational::from_integer(orders) * dim);
        Ok(SvValue { value, error: ErrorClass::BoundOnly, provenance: Provenance::NonDominantBound })
    }
}

/// The three hyperelliptic families with exact formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypFamily {
    /// Saddle connections between the two zeros of `H^hyp(g−1,g−1)`.
    DistinctTwoEqual,
    /// Loops in `H^hyp(g−1,g−1)`.
    LoopsTwoEqual,
    /// Loops in `H^hyp(2g−2)`.
    LoopsMinimal,
}

impl HypFamily {
    pub fn stratum(self, g: u64) -> StratumSignature {
        match self {
            HypFamily::LoopsMinimal => StratumSignature::minimal(g),
            _ => StratumSignature::two_equal(g),
        }
    }

    fn provenance(self) -> Provenance {
        match self {
            HypFamily::DistinctTwoEqual => Provenance::HyperellipticDistinct,
            HypFamily::LoopsTwoEqual => Provenance::HyperellipticLoopsTwoEqual,
            HypFamily::LoopsMinimal => Provenance::HyperellipticLoopsMinimal,
        }
    }

    /// The sum the two genera of a multiplicity-two partition must reach.
    pub fn partition_total(self, g: u64) -> u64 {
        match self {
            HypFamily::DistinctTwoEqual => g,
            _ => g - 1,
        }
    }

    /// Whether `(g₁, g₂)` and `(g₂, g₁)` describe the same configuration.
    pub fn unordered_partitions(self) -> bool {
        self != HypFamily::LoopsMinimal
    }

    /// Partitions summed over at multiplicity two.
    pub fn partitions(self, g: u64) -> Vec<(u64, u64)> {
        let t = self.partition_total(g);
        (1..t).map(|g1| (g1, t - g1)).filter(|&(g1, g2)| !self.unordered_partitions() || g1 <= g2).collect()
    }
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational part of `μ(H^hyp(2k−2))`: the volume is this times `π^{2k}`.
fn vmin(k: u64) -> Rational {
    volume_hyp_minimal(k).as_monomial().map(|(q, _)| q.clone()).expect("monomial")
}

/// Rational part of `μ(H^hyp(k−1,k−1))`.
fn vtwo(k: u64) -> Rational {
    volume_hyp_two(k).as_monomial().map(|(q, _)| q.clone()).expect("monomial")
}

/// One multiplicity-two term; the value is this rational times `π^{shift}`.
fn hyp_p2_term(family: HypFamily, g: u64, g1: u64, g2: u64) -> (Rational, i64) {
    let big_gamma = if family.unordered_partitions() && g1 == g2 { 2 } else { 1 };
    match family {
        HypFamily::DistinctTwoEqual => {
            let q = rat((2 * g1 - 1) * (2 * g2 - 1)) / rat(2 * big_gamma)
                * ratu(factorial(2 * g1 - 1) * factorial(2 * g2 - 1))
                / ratu(factorial(2 * g - 1))
                * vmin(g1)
                * vmin(g2)
                / vtwo(g);
            (q, 0)
        }
        HypFamily::LoopsTwoEqual => {
            let q = rat(g1 * g2) / rat(2 * big_gamma) * ratu(factorial(2 * g1) * factorial(2 * g2))
                / ratu(factorial(2 * g - 1))
                * vtwo(g1)
                * vtwo(g2)
                / vtwo(g);
            (q, -2)
        }
        HypFamily::LoopsMinimal => {
            let q = rat((2 * g1 - 1) * 2 * g2) / rat(8) * ratu(factorial(2 * g1 - 1) * factorial(2 * g2))
                / ratu(factorial(2 * g - 2))
                * vmin(g1)
                * vtwo(g2)
                / vmin(g);
            (q, -2)
        }
    }
}

/// The multiplicity-one formula of a family, split into its terms.
///
/// Loops in `H^hyp(2g−2)` have two terms: a two-hole block on
/// `H^hyp(g−2,g−2)` and a figure-eight with a cylinder on `H^hyp(2g−4)`.
pub fn hyperelliptic_p1_terms(family: HypFamily, g: u64) -> Vec<PiLaurent> {
    match family {
        HypFamily::DistinctTwoEqual => {
            vec![PiLaurent::from_rational(rat(2 * g - 1) * vmin(g) / vtwo(g))]
        }
        HypFamily::LoopsTwoEqual => {
            vec![PiLaurent::monomial(rat(g - 1) / rat(2 * g - 1) * vtwo(g - 1) / vtwo(g), -2)]
        }
        HypFamily::LoopsMinimal => vec![
            PiLaurent::monomial(rat(g - 1) / rat(2) * vtwo(g - 1) / vmin(g), -2),
            PiLaurent::monomial(
                Rational::new(1.into(), 2.into()) * rat(2 * g - 3) / rat(2 * g - 2) * vmin(g - 1) / vmin(g),
                -2,
            ),
        ],
    }
}

/// Exact constants on the hyperelliptic components.
///
/// `p = 2` with `partition = None` sums over all partitions; with a
/// partition it returns that single term. Multiplicities three and higher do
/// not occur and give exact zero.
pub fn sv_hyperelliptic_exact(
    h: &StratumSignature,
    family: HypFamily,
    p: usize,
    partition: Option<(u64, u64)>,
) -> Result<SvValue> {
    let g = h.genus();
    if g < 2 || *h != family.stratum(g) {
        return Err(Error::Precondition(format!("{h} is not the stratum of the {family:?} family in genus at least 2")));
    }
    let prov = family.provenance();
    match p {
        0 => Err(Error::Precondition("multiplicity must be positive".into())),
        1 => Ok(SvValue::exact(hyperelliptic_p1_terms(family, g).into_iter().sum(), prov)),
        2 => match partition {
            Some((g1, g2)) => {
                if g1 == 0 || g2 == 0 || g1 + g2 != family.partition_total(g) {
                    return Err(Error::Precondition(format!(
                        "partition ({g1},{g2}) must have positive parts adding to {}",
                        family.partition_total(g)
                    )));
                }
                let (q, k) = hyp_p2_term(family, g, g1, g2);
                Ok(SvValue::exact(PiLaurent::monomial(q, k), prov))
            }
            None => Ok(SvValue::exact(hyperelliptic_p2_sum(family, g), prov)),
        },
        _ => Ok(SvValue::zero(prov)),
    }
}

/// Multiplicity-two total summed over partitions by the direct formula.
pub fn hyperelliptic_p2_sum(family: HypFamily, g: u64) -> PiLaurent {
    let mut total = Rational::zero();
    let mut shift = 0;
    for (g1, g2) in family.partitions(g) {
        let (q, k) = hyp_p2_term(family, g, g1, g2);
        total += q;
        shift = k;
    }
    PiLaurent::monomial(total, shift)
}

/// Fast evaluator of the multiplicity-two sums for long genus sweeps.
///
/// Every factorial-volume product collapses to a central binomial:
///
/// ```text
/// (2k−1)!·v_min(k) = C(2k−2, k−1) / (k(2k+1)·4^{k−1})
/// (2k)!·v_two(k)   = 4^{k+1} / (k(2k+1)(2k+2)·C(2k, k))
/// ```
///
/// where `v` is the rational part of the volume. The tables are built once
/// and each genus costs one pass of rational multiply-adds.
pub struct HypSweep {
    /// `(2k−1)!·v_min(k)` for `k ≥ 1`.
    wmin: Vec<Rational>,
    /// `(2k)!·v_two(k)` for `k ≥ 1`.
    wtwo: Vec<Rational>,
    /// Natural logarithms of the two tables.
    ln_min: Vec<f64>,
    ln_two: Vec<f64>,
}

impl HypSweep {
    pub fn new(max_g: u64) -> Self {
        let n = max_g as usize + 1;
        let mut wmin = vec![Rational::zero(); n];
        let mut wtwo = vec![Rational::zero(); n];
        let mut central = BigInt::one();
        let mut four = BigInt::one();
        let (mut ln_min, mut ln_two) = (vec![0.0; n], vec![0.0; n]);
        // ln C(2k−2, k−1), advanced by the same recurrence as `central`.
        let mut ln_central = 0.0f64;
        let ln4 = 4f64.ln();
        for k in 1..n as u64 {
            let kf = k as f64;
            ln_min[k as usize] = ln_central - (kf * (2.0 * kf + 1.0)).ln() - (kf - 1.0) * ln4;
            let ln_next = ln_central + (2.0 * (2.0 * kf - 1.0) / kf).ln();
            ln_two[k as usize] = (kf + 1.0) * ln4 - (kf * (2.0 * kf + 1.0) * (2.0 * kf + 2.0)).ln() - ln_next;
            ln_central = ln_next;
            // Here central = C(2k−2, k−1) and four = 4^{k−1}.
            wmin[k as usize] = Rational::new(central.clone(), BigInt::from(k * (2 * k + 1)) * &four);
            let next = &central * BigInt::from(2 * (2 * k - 1)) / BigInt::from(k);
            let four_k = &four * 4;
            wtwo[k as usize] =
                Rational::new(BigInt::from(4) * &four_k, BigInt::from(k * (2 * k + 1) * (2 * k + 2)) * &next);
            central = next;
            four = four_k;
        }
        Self { wmin, wtwo, ln_min, ln_two }
    }

    pub fn max_genus(&self) -> u64 {
        self.wmin.len() as u64 - 1
    }

    /// Same value as [`hyperelliptic_p2_sum`].
    pub fn p2_sum(&self, family: HypFamily, g: u64) -> PiLaurent {
        assert!(g <= self.max_genus(), "sweep tables too short");
        let gu = g as usize;
        let mut total = Rational::zero();
        for (g1, g2) in family.partitions(g) {
            let big_gamma = if family.unordered_partitions() && g1 == g2 { 2 } else { 1 };
            let (a, b) = (g1 as usize, g2 as usize);
            total += match family {
                HypFamily::DistinctTwoEqual => {
                    rat((2 * g1 - 1) * (2 * g2 - 1)) / rat(2 * big_gamma) * &self.wmin[a] * &self.wmin[b]
                }
                HypFamily::LoopsTwoEqual => rat(g1 * g2) / rat(2 * big_gamma) * &self.wtwo[a] * &self.wtwo[b],
                HypFamily::LoopsMinimal => rat((2 * g1 - 1) * 2 * g2) / rat(8) * &self.wmin[a] * &self.wtwo[b],
            };
        }
        match family {
            HypFamily::DistinctTwoEqual => {
                // Divide by (2g−1)!·v_two(g) = wtwo[g]/(2g).
                PiLaurent::from_rational(total * rat(2 * g) / &self.wtwo[gu])
            }
            HypFamily::LoopsTwoEqual => PiLaurent::monomial(total * rat(2 * g) / &self.wtwo[gu], -2),
            HypFamily::LoopsMinimal => {
                // Divide by (2g−2)!·v_min(g) = wmin[g]/(2g−1).
                PiLaurent::monomial(total * rat(2 * g - 1) / &self.wmin[gu], -2)
            }
        }
    }

    /// [`HypSweep::p2_sum`] as a double, π factor included.
    ///
    /// Every term is positive and is formed in the log domain, so the
    /// relative error stays near `1e-12` at any genus the tables reach. The
    /// exact sums renormalise rationals of thousands of bits per term, which
    /// is too slow for sweeps over thousands of genera.
    pub fn p2_sum_f64(&self, family: HypFamily, g: u64) -> f64 {
        assert!(g <= self.max_genus(), "sweep tables too short");
        let gu = g as usize;
        let (ln_norm, shift) = match family {
            HypFamily::DistinctTwoEqual => ((2.0 * g as f64).ln() - self.ln_two[gu], 0),
            HypFamily::LoopsTwoEqual => ((2.0 * g as f64).ln() - self.ln_two[gu], -2),
            HypFamily::LoopsMinimal => ((2.0 * g as f64 - 1.0).ln() - self.ln_min[gu], -2),
        };
        let mut terms: Vec<f64> = family
            .partitions(g)
            .into_iter()
            .map(|(g1, g2)| {
                let big_gamma = if family.unordered_partitions() && g1 == g2 { 2.0 } else { 1.0 };
                let (a, b) = (g1 as usize, g2 as usize);
                let (x, y) = (g1 as f64, g2 as f64);
                let ln_term = match family {
                    HypFamily::DistinctTwoEqual => {
                        ((2.0 * x - 1.0) * (2.0 * y - 1.0) / (2.0 * big_gamma)).ln() + self.ln_min[a] + self.ln_min[b]
                    }
                    HypFamily::LoopsTwoEqual => (x * y / (2.0 * big_gamma)).ln() + self.ln_two[a] + self.ln_two[b],
                    HypFamily::LoopsMinimal => ((2.0 * x - 1.0) * 2.0 * y / 8.0).ln() + self.ln_min[a] + self.ln_two[b],
                };
                (ln_term + ln_norm).exp()
            })
            .collect();
        // Smallest first keeps the rounding error of the sum at one ulp per term.
        terms.sort_by(f64::total_cmp);
        terms.iter().sum::<f64>() * std::f64::consts::PI.powi(shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat as q;

    #[test]
    fn sweep_matches_direct_formulas() {
        let sweep = HypSweep::new(30);
        for fam in [HypFamily::DistinctTwoEqual, HypFamily::LoopsTwoEqual, HypFamily::LoopsMinimal] {
            for g in 3..=30 {
                let exact = hyperelliptic_p2_sum(fam, g);
                assert_eq!(sweep.p2_sum(fam, g), exact, "{fam:?} g={g}");
                assert!((sweep.p2_sum_f64(fam, g) / exact.to_f64() - 1.0).abs() < 1e-12, "{fam:?} g={g}");
            }
        }
    }

    #[test]
    fn high_multiplicity_is_zero() {
        for fam in [HypFamily::DistinctTwoEqual, HypFamily::LoopsTwoEqual, HypFamily::LoopsMinimal] {
            let v = sv_hyperelliptic_exact(&fam.stratum(7), fam, 3, None).unwrap();
            assert!(v.value.is_zero() && v.error.is_exact());
        }
    }

    #[test]
    fn multiplicity_one_identity_in_genus_two() {
        let h = StratumSignature::new(vec![1, 1]).unwrap();
        let direct = sv_multiplicity_one(&h, 0, 1, &HyperellipticVolumes).unwrap();
        let formula = sv_hyperelliptic_exact(&h, HypFamily::DistinctTwoEqual, 1, None).unwrap();
        assert_eq!(direct.value, formula.value);
        // 3 · (π⁴/120)/(π⁴/135) = 27/8
        assert_eq!(direct.value, PiLaurent::from_rational(q(27, 8)));
    }
}
