//! Strata of abelian differentials: signatures, connected components,
//! dimensions and Masur–Veech volumes.
//!
//! Zeros are labelled throughout. Marked points are zeros of order 0 and
//! count towards the number of zeros `ℓ` (and hence the dimension), but do
//! not influence which connected components exist.

use std::fmt;
use std::str::FromStr;

use astro_float::BigFloat;
use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classes::ErrorClass;
use crate::error::{Error, Result};
use crate::numbers::float::{pi, with_consts, RM};
use crate::numbers::{double_factorial, factorial, float_to_f64, ratu, PiLaurent, Rational};

/// Ordered list of zero orders `(m_1, …, m_ℓ)` with `Σ m_n = 2g − 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumSignature {
    orders: Vec<u64>,
}

impl StratumSignature {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidStratum("a stratum needs at least one zero or marked point".into()));
        }
        let total: u64 = orders.iter().sum();
        if total % 2 != 0 {
            return Err(Error::InvalidStratum(format!("zero orders sum to the odd number {total}")));
        }
        Ok(Self { orders })
    }

    /// `H(2g−2)`
    pub fn minimal(g: u64) -> Self {
        assert!(g >= 1, "genus must be positive");
        Self { orders: vec![2 * g - 2] }
    }

    /// `H(g−1, g−1)`
    pub fn two_equal(g: u64) -> Self {
        assert!(g >= 1, "genus must be positive");
        Self { orders: vec![g - 1, g - 1] }
    }

    /// `H(1, …, 1)` in genus `g ≥ 2`.
    pub fn principal(g: u64) -> Self {
        assert!(g >= 2, "principal stratum needs genus at least 2");
        Self { orders: vec![1; (2 * g - 2) as usize] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn genus(&self) -> u64 {
        self.orders.iter().sum::<u64>() / 2 + 1
    }

    /// Number of zeros `ℓ`, marked points included.
    pub fn num_zeros(&self) -> u64 {
        self.orders.len() as u64
    }

    /// Real dimension `d = 2(2g + ℓ − 1)`.
    pub fn dimension(&self) -> u64 {
        2 * (2 * self.genus() + self.num_zeros() - 1)
    }

    /// Orders with marked points removed, sorted decreasingly.
    pub fn essential_orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.orders.iter().copied().filter(|&m| m > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// The same multiset of orders sorted decreasingly.
    pub fn sorted(&self) -> StratumSignature {
        let mut orders = self.orders.clone();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        StratumSignature { orders }
    }

    pub fn is_minimal_shape(&self) -> bool {
        self.orders.len() == 1
    }

    pub fn is_two_equal_shape(&self) -> bool {
        self.orders.len() == 2 && self.orders[0] == self.orders[1]
    }

    /// `H(0)` or `H(0,0)`: the blocks that make a configuration dominant.
    pub fn is_torus_block(&self) -> bool {
        self.orders.iter().all(|&m| m == 0) && self.orders.len() <= 2
    }

    /// `∏ (m_n + 1)`, grouped by order so long runs of equal zeros are one power.
    pub fn order_product(&self) -> BigUint {
        let mut counts = std::collections::BTreeMap::new();
        for &m in &self.orders {
            *counts.entry(m).or_insert(0u32) += 1;
        }
        counts.into_iter().map(|(m, k)| BigUint::from(m + 1).pow(k)).product()
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.orders.iter().map(|m| m.to_string()).collect();
        write!(f, "H({})", inner.join(","))
    }
}

/// Connected component tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentId {
    Whole,
    Hyperelliptic,
    Odd,
    Even,
    NonHyperelliptic,
}

impl ComponentId {
    pub fn suffix(self) -> Option<&'static str> {
        match self {
            ComponentId::Whole => None,
            ComponentId::Hyperelliptic => Some("hyp"),
            ComponentId::Odd => Some("odd"),
            ComponentId::Even => Some("even"),
            ComponentId::NonHyperelliptic => Some("nonhyp"),
        }
    }

    fn from_suffix(s: &str) -> Option<Self> {
        Some(match s {
            "hyp" => ComponentId::Hyperelliptic,
            "odd" => ComponentId::Odd,
            "even" => ComponentId::Even,
            "nonhyp" | "non-hyp" => ComponentId::NonHyperelliptic,
            _ => return None,
        })
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix().unwrap_or("whole"))
    }
}

/// A signature together with a component; `Whole` means the full stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub signature: StratumSignature,
    pub component: ComponentId,
}

impl Stratum {
    pub fn whole(signature: StratumSignature) -> Self {
        Self { signature, component: ComponentId::Whole }
    }

    /// Attaches a component after checking that the stratum has it.
    pub fn with_component(signature: StratumSignature, component: ComponentId) -> Result<Self> {
        let comps = classify_components(&signature);
        if !comps.admits(component) {
            return Err(Error::InvalidComponent { stratum: signature.to_string(), component: component.to_string() });
        }
        Ok(Self { signature, component })
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signature)?;
        if let Some(s) = self.component.suffix() {
            write!(f, "^{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Stratum {
    type Err = Error;

    /// Parses `H(m1,m2,...)` with an optional `^hyp`, `^odd`, `^even` or `^nonhyp`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (body, suffix) = match t.split_once('^') {
            Some((b, x)) => (b.trim(), Some(x.trim())),
            None => (t, None),
        };
        let inner = body
            .strip_prefix("H(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(s, "expected H(m1,...,mn)"))?;
        let orders = inner
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| Error::parse(s, format!("bad zero order {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let signature = StratumSignature::new(orders)?;
        let component = match suffix {
            None => ComponentId::Whole,
            Some(x) => ComponentId::from_suffix(x).ok_or_else(|| Error::parse(s, format!("unknown component {x:?}")))?,
        };
        Stratum::with_component(signature, component)
    }
}

impl FromStr for StratumSignature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let st: Stratum = s.parse()?;
        if st.component != ComponentId::Whole {
            return Err(Error::parse(s, "a bare signature takes no component suffix"));
        }
        Ok(st.signature)
    }
}

impl Serialize for StratumSignature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StratumSignature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Result of component classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub components: Vec<ComponentId>,
    /// The stratum is connected and consists of hyperelliptic surfaces only.
    pub coincides_with_hyperelliptic: bool,
    /// Genus 3 outside the small named cases: the genus ≥ 4 rules were applied.
    pub extrapolated: bool,
}

impl Components {
    pub fn is_connected(&self) -> bool {
        self.components == [ComponentId::Whole]
    }

    /// `Whole` is always admissible; other tags must be listed, except that
    /// `Hyperelliptic` names the whole stratum when the two coincide.
    pub fn admits(&self, c: ComponentId) -> bool {
        c == ComponentId::Whole
            || self.components.contains(&c)
            || (c == ComponentId::Hyperelliptic && self.coincides_with_hyperelliptic)
    }
}

/// Connected components of a stratum.
pub fn classify_components(s: &StratumSignature) -> Components {
    let g = s.genus();
    let ess = s.essential_orders();
    let whole = |coincide: bool, extrapolated: bool| Components {
        components: vec![ComponentId::Whole],
        coincides_with_hyperelliptic: coincide,
        extrapolated,
    };
    if g == 1 {
        // Genus one strata are connected; H(0) is also the hyperelliptic one.
        return whole(s.orders() == [0], false);
    }
    if g == 2 {
        // H(2) and H(1,1), possibly with marked points.
        return whole(true, false);
    }
    let extrapolated = g == 3;
    let minimal = ess.len() == 1;
    let two_equal = ess.len() == 2 && ess[0] == ess[1];
    let all_even = ess.iter().all(|m| m % 2 == 0);
    let components = if (minimal || two_equal) && all_even {
        vec![ComponentId::Hyperelliptic, ComponentId::Odd, ComponentId::Even]
    } else if two_equal {
        vec![ComponentId::Hyperelliptic, ComponentId::NonHyperelliptic]
    } else if all_even {
        vec![ComponentId::Odd, ComponentId::Even]
    } else {
        vec![ComponentId::Whole]
    };
    Components { components, coincides_with_hyperelliptic: false, extrapolated }
}

/// Real dimension `d = 2(2g + ℓ − 1)`.
pub fn dimension(s: &StratumSignature) -> u64 {
    s.dimension()
}

/// A volume, either exact or a leading term with an error class.
#[derive(Debug, Clone, PartialEq)]
pub enum VolumeValue {
    Exact(PiLaurent),
    /// Exact leading coefficient; the true volume is this times `(1 + error)`.
    Leading { value: PiLaurent, error: ErrorClass },
    /// Leading term that is not a Laurent polynomial in π (Stirling forms).
    LeadingFloat { value: BigFloat, error: ErrorClass },
}

impl VolumeValue {
    pub fn error_class(&self) -> ErrorClass {
        match self {
            VolumeValue::Exact(_) => ErrorClass::Exact,
            VolumeValue::Leading { error, .. } | VolumeValue::LeadingFloat { error, .. } => *error,
        }
    }

    /// The exact value or exact leading coefficient, if one exists.
    pub fn pi_laurent(&self) -> Option<&PiLaurent> {
        match self {
            VolumeValue::Exact(v) | VolumeValue::Leading { value: v, .. } => Some(v),
            VolumeValue::LeadingFloat { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            VolumeValue::Exact(v) | VolumeValue::Leading { value: v, .. } => v.to_f64(),
            VolumeValue::LeadingFloat { value, .. } => float_to_f64(value),
        }
    }

    pub fn render(&self) -> String {
        match self {
            VolumeValue::Exact(v) => v.to_string(),
            VolumeValue::Leading { value, error } => format!("{value} * ({error})"),
            VolumeValue::LeadingFloat { value, error } => {
                let text = with_consts(|cc| value.format(astro_float::Radix::Dec, RM, cc)).unwrap_or_else(|_| "nan".into());
                format!("{text} * ({error})")
            }
        }
    }
}

/// `4/∏(m_n+1)`: the large-genus volume of the whole stratum.
pub fn volume_leading_coefficient(s: &StratumSignature) -> Rational {
    Rational::new(4.into(), s.order_product().into())
}

/// Large-genus volume `4/∏(m_n+1)·(1 + O(1/g))`.
pub fn volume_asymptotic(s: &StratumSignature) -> VolumeValue {
    VolumeValue::Leading { value: volume_leading_coefficient(s).into(), error: ErrorClass::OneOverG }
}

/// The same leading value with only an `O(1)` guarantee, used for strata whose
/// genus does not grow with the ambient genus.
pub fn volume_low_genus(s: &StratumSignature) -> VolumeValue {
    VolumeValue::Leading { value: volume_leading_coefficient(s).into(), error: ErrorClass::LowGenus }
}

/// `μ(H^hyp(2g−2)) = 2π^{2g}/(2g+1)! · (2g−3)!!/(2g−2)!!`, valid for `g ≥ 1`.
pub fn volume_hyp_minimal(g: u64) -> PiLaurent {
    assert!(g >= 1);
    let g = g as i64;
    let q = Rational::new(2.into(), factorial(2 * g as u64 + 1).into())
        * ratu(double_factorial(2 * g - 3).expect("n ≥ −1"))
        / ratu(double_factorial(2 * g - 2).expect("n ≥ −1"));
    PiLaurent::monomial(q, 2 * g)
}

/// `μ(H^hyp(g−1,g−1)) = 8π^{2g}/(2g+2)! · (2g−2)!!/(2g−1)!!`, valid for `g ≥ 1`.
pub fn volume_hyp_two(g: u64) -> PiLaurent {
    assert!(g >= 1);
    let g = g as i64;
    let q = Rational::new(8.into(), factorial(2 * g as u64 + 2).into())
        * ratu(double_factorial(2 * g - 2).expect("n ≥ −1"))
        / ratu(double_factorial(2 * g - 1).expect("n ≥ −1"));
    PiLaurent::monomial(q, 2 * g)
}

/// `μ(H(0)) = π²/3`; the stratum with two marked points has the same volume.
pub fn volume_torus() -> PiLaurent {
    PiLaurent::monomial(Rational::new(1.into(), 3.into()), 2)
}

/// Exact volumes for the pairs that have a closed form.
pub fn volume_exact_special(s: &StratumSignature, c: ComponentId) -> Result<VolumeValue> {
    let comps = classify_components(s);
    if !comps.admits(c) {
        return Err(Error::InvalidComponent { stratum: s.to_string(), component: c.to_string() });
    }
    let o = s.orders();
    if s.genus() == 1 && o.len() <= 2 {
        return Ok(VolumeValue::Exact(volume_torus()));
    }
    let hyp_like = c == ComponentId::Hyperelliptic || (c == ComponentId::Whole && comps.coincides_with_hyperelliptic);
    if hyp_like && s.is_minimal_shape() {
        return Ok(VolumeValue::Exact(volume_hyp_minimal(s.genus())));
    }
    if hyp_like && s.is_two_equal_shape() {
        return Ok(VolumeValue::Exact(volume_hyp_two(s.genus())));
    }
    let tag = match c.suffix() {
        Some(x) => format!("{s}^{x}"),
        None => s.to_string(),
    };
    Err(Error::NoExactFormula(format!("volume of {tag}")))
}

/// Stirling form `(1/2π)(πe/2)^{2g} g^{−2g−2}` of the minimal hyperelliptic volume.
pub fn volume_hyp_minimal_stirling(g: u64, precision: usize) -> BigFloat {
    stirling_form(g, precision, true)
}

/// Stirling form `(1/2)(πe/2)^{2g} g^{−2g−3}` of the hyperelliptic `H(g−1,g−1)` volume.
pub fn volume_hyp_two_stirling(g: u64, precision: usize) -> BigFloat {
    stirling_form(g, precision, false)
}

fn stirling_form(g: u64, precision: usize, minimal: bool) -> BigFloat {
    let w = precision + 32;
    let p = pi(w);
    let e = with_consts(|cc| cc.e(w, RM));
    let gf = BigFloat::from_word(g, w);
    let base = p.mul(&e, w, RM).div(&BigFloat::from_word(2, w), w, RM);
    let num = base.powi(2 * g as usize, w, RM);
    let extra = if minimal { 2 } else { 3 };
    let den = gf.powi((2 * g + extra) as usize, w, RM);
    let lead = if minimal { BigFloat::from_word(2, w).mul(&p, w, RM) } else { BigFloat::from_word(2, w) };
    let mut v = num.div(&den, w, RM).div(&lead, w, RM);
    v.set_precision(precision, RM).expect("precision change");
    v
}

/// Component volumes in the large-genus regime.
pub fn volume_component_asymptotic(s: &StratumSignature, c: ComponentId) -> Result<VolumeValue> {
    let comps = classify_components(s);
    if !comps.admits(c) {
        return Err(Error::InvalidComponent { stratum: s.to_string(), component: c.to_string() });
    }
    let lead = volume_leading_coefficient(s);
    Ok(match c {
        ComponentId::Whole | ComponentId::NonHyperelliptic => {
            VolumeValue::Leading { value: lead.into(), error: ErrorClass::OneOverG }
        }
        ComponentId::Odd | ComponentId::Even => VolumeValue::Leading {
            value: (lead / Rational::from_integer(2.into())).into(),
            error: ErrorClass::OneOverG,
        },
        ComponentId::Hyperelliptic => {
            let g = s.genus();
            let v = if s.is_minimal_shape() {
                volume_hyp_minimal_stirling(g, 128)
            } else {
                volume_hyp_two_stirling(g, 128)
            };
            VolumeValue::LeadingFloat { value: v, error: ErrorClass::OneOverG }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn sig(s: &str) -> StratumSignature {
        s.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(sig("H(2)").dimension(), 8);
        assert_eq!(sig("H(0)").dimension(), 4);
        assert_eq!(sig("H(1,1)").dimension(), 10);
        assert_eq!(sig("H(0,0)").dimension(), 6);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["H(0)", "H(4)^hyp", "H(2,2)^odd", "H(3,3)^nonhyp", "H(1,1,0)", "H(6)^even"] {
            let st: Stratum = s.parse().unwrap();
            assert_eq!(st.to_string(), s);
        }
        assert!("H(1)".parse::<Stratum>().is_err());
        assert!("H(1,1,1,1)^hyp".parse::<Stratum>().is_err());
        assert!("H(3,1)^odd".parse::<Stratum>().is_err());
        assert!("G(2)".parse::<Stratum>().is_err());
    }

    #[test]
    fn named_small_cases() {
        for s in ["H(0)", "H(2)", "H(1,1)"] {
            let c = classify_components(&sig(s));
            assert!(c.is_connected() && c.coincides_with_hyperelliptic && !c.extrapolated, "{s}");
        }
        let c = classify_components(&sig("H(4)"));
        assert!(c.extrapolated);
    }

    #[test]
    fn large_genus_classification() {
        use ComponentId::*;
        let g = 10;
        assert_eq!(classify_components(&StratumSignature::principal(g)).components, vec![Whole]);
        assert_eq!(classify_components(&StratumSignature::minimal(g)).components, vec![Hyperelliptic, Odd, Even]);
        assert_eq!(classify_components(&StratumSignature::two_equal(g)).components, vec![Hyperelliptic, NonHyperelliptic]);
        assert_eq!(classify_components(&StratumSignature::two_equal(11)).components, vec![Hyperelliptic, Odd, Even]);
        assert_eq!(classify_components(&sig("H(4,2,2,2,2,2,2)")).components, vec![Odd, Even]);
        assert_eq!(classify_components(&sig("H(9,9,0)")).components, vec![Hyperelliptic, NonHyperelliptic]);
    }

    #[test]
    fn exact_special_volumes() {
        let v = |s: &str, c| volume_exact_special(&sig(s), c).unwrap().pi_laurent().unwrap().clone();
        assert_eq!(v("H(0)", ComponentId::Whole), PiLaurent::monomial(rat(1, 3), 2));
        assert_eq!(v("H(0,0)", ComponentId::Whole), PiLaurent::monomial(rat(1, 3), 2));
        assert_eq!(v("H(2)", ComponentId::Hyperelliptic), PiLaurent::monomial(rat(1, 120), 4));
        assert_eq!(v("H(2)", ComponentId::Whole), PiLaurent::monomial(rat(1, 120), 4));
        assert_eq!(v("H(1,1)", ComponentId::Hyperelliptic), PiLaurent::monomial(rat(1, 135), 4));
        assert!(matches!(
            volume_exact_special(&sig("H(3,1)"), ComponentId::Whole),
            Err(Error::NoExactFormula(_))
        ));
        assert!(matches!(
            volume_exact_special(&sig("H(6)"), ComponentId::Odd),
            Err(Error::NoExactFormula(_))
        ));
    }

    #[test]
    fn asymptotic_volumes() {
        let g = 7;
        let v = volume_asymptotic(&StratumSignature::minimal(g));
        assert_eq!(v.pi_laurent().unwrap(), &PiLaurent::from(rat(4, 13)));
        let v = volume_asymptotic(&StratumSignature::two_equal(g));
        assert_eq!(v.pi_laurent().unwrap(), &PiLaurent::from(rat(4, 49)));
        assert_eq!(volume_low_genus(&sig("H(0,0,0)")).pi_laurent().unwrap(), &PiLaurent::from(4));
        let v = volume_component_asymptotic(&sig("H(3,1)"), ComponentId::Whole).unwrap();
        assert_eq!(v.pi_laurent().unwrap(), &PiLaurent::from(rat(1, 2)));
        let v = volume_component_asymptotic(&StratumSignature::minimal(g), ComponentId::Odd).unwrap();
        assert_eq!(v.pi_laurent().unwrap(), &PiLaurent::from(rat(2, 13)));
    }
}
