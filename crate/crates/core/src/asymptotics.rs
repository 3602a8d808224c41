//! Large-genus closed forms and the lookup table.
//!
//! Every constant here is a leading term `coefficient · scale(g)` together
//! with an [`ErrorClass`]. The scale is a product of powers of linear forms
//! in `g`, kept symbolic so a value can be evaluated at any genus, and the
//! only way to compare it with a number is [`AsymptoticValue::interval`],
//! which needs the genus.
//!
//! Zeros are labelled throughout the crate. The factors that turn fixed-zero
//! constants into constants for "any zero" are applied in this module only.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::ErrorClass;
use crate::error::{Error, Result};
use crate::numbers::{rat, PiLaurent, Rational};
use crate::strata::StratumSignature;

/// `(a·g + b)^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearPower {
    pub a: i64,
    pub b: i64,
    pub e: i64,
}

impl fmt::Display for LinearPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.a, self.b) {
            (1, 0) => "g".to_string(),
            (a, 0) => format!("({a}g)"),
            (a, b) if b > 0 => format!("({a}g+{b})"),
            (a, b) => format!("({a}g-{})", -b),
        }
        .replace("(1g", "(g");
        match self.e {
            1 => f.write_str(&base),
            e if e < 0 => write!(f, "{base}^({e})"),
            e => write!(f, "{base}^{e}"),
        }
    }
}

/// A product of [`LinearPower`] factors; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct GScale(pub Vec<LinearPower>);

impl GScale {
    pub fn one() -> Self {
        GScale(Vec::new())
    }

    /// `(a·g + b)^e`; a zero exponent gives the empty product.
    pub fn power(a: i64, b: i64, e: i64) -> Self {
        if e == 0 {
            GScale::one()
        } else {
            GScale(vec![LinearPower { a, b, e }])
        }
    }

    pub fn times(mut self, other: GScale) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Net power of `g` as `g → ∞`.
    pub fn degree(&self) -> i64 {
        self.0.iter().filter(|f| f.a != 0).map(|f| f.e).sum()
    }

    /// Exact value at genus `g`.
    pub fn eval(&self, g: u64) -> Result<Rational> {
        let mut r = Rational::one();
        for f in &self.0 {
            let base = BigInt::from(f.a) * BigInt::from(g) + BigInt::from(f.b);
            if base.is_zero() && f.e < 0 {
                return Err(Error::Domain(format!("{f} vanishes at g = {g}")));
            }
            let p = num_traits::pow(Rational::from_integer(base), f.e.unsigned_abs() as usize);
            r = if f.e < 0 { r / p } else { r * p };
        }
        Ok(r)
    }
}

impl fmt::Display for GScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// A leading term with its error class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticValue {
    pub coefficient: PiLaurent,
    pub g_power: GScale,
    pub error: ErrorClass,
}

impl AsymptoticValue {
    pub fn new(coefficient: PiLaurent, g_power: GScale, error: ErrorClass) -> Self {
        if coefficient.is_zero() {
            return Self::exact_zero();
        }
        Self { coefficient, g_power, error }
    }

    pub fn exact_zero() -> Self {
        Self { coefficient: PiLaurent::zero(), g_power: GScale::one(), error: ErrorClass::Exact }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coefficient.is_zero() && self.error == ErrorClass::Exact
    }

    /// The leading term at genus `g` as an exact Laurent polynomial in π.
    pub fn leading_at(&self, g: u64) -> Result<PiLaurent> {
        if self.coefficient.is_zero() {
            return Ok(PiLaurent::zero());
        }
        Ok(self.coefficient.scale(&self.g_power.eval(g)?))
    }

    pub fn leading_f64(&self, g: u64) -> Result<f64> {
        Ok(self.leading_at(g)?.to_f64())
    }

    /// `leading · (1 ± K·rate(g))` for a caller-chosen constant `K`.
    ///
    /// `None` for bound-only values, whose constant is not known.
    pub fn interval(&self, g: u64, k: f64) -> Result<Option<(f64, f64)>> {
        let v = self.leading_f64(g)?;
        Ok(self.error.relative_bound(g as f64, k).map(|r| {
            let (a, b) = (v * (1.0 - r), v * (1.0 + r));
            (a.min(b), a.max(b))
        }))
    }

    fn times_rational(mut self, q: &Rational) -> Self {
        self.coefficient = self.coefficient.scale(q);
        if self.coefficient.is_zero() {
            return Self::exact_zero();
        }
        self
    }

    /// `coefficient*scale` without the error class.
    pub fn expression(&self) -> String {
        let c = self.coefficient.to_string();
        if self.g_power.is_one() {
            return c;
        }
        let c = if self.coefficient.terms().count() > 1 { format!("({c})") } else { c };
        if c == "1" {
            self.g_power.to_string()
        } else {
            format!("{c}*{}", self.g_power)
        }
    }
}

impl fmt::Display for AsymptoticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.error {
            ErrorClass::Exact => write!(f, "{} (exact)", self.expression()),
            ErrorClass::BoundOnly => write!(f, "<= C^p * {}", self.expression()),
            e => write!(f, "{} * ({e})", self.expression()),
        }
    }
}

fn int(n: i64) -> Rational {
    rat(n, 1)
}

/// `(π²/6)^k`
fn zeta2_pow(k: u64) -> PiLaurent {
    PiLaurent::monomial(rat(1, 6), 2).pow(k as u32)
}

fn require_positive(p: u64) -> Result<()> {
    if p == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    Ok(())
}

/// `2g + ℓ − 3` as a linear form.
fn n_form(l: u64, e: i64) -> GScale {
    GScale::power(2, l as i64 - 3, e)
}

/// Fixed distinct zeros of orders `m₁, m₂` joined by `p` homologous saddle
/// connections, in a stratum with `ℓ` zeros.
pub fn asym_distinct_fixed(m1: u64, m2: u64, p: u64, l: u64) -> Result<AsymptoticValue> {
    require_positive(p)?;
    if p > m1.min(m2) + 1 {
        return Ok(AsymptoticValue::exact_zero());
    }
    let k = int(((m1 + 1) * (m2 + 1)) as i64);
    Ok(AsymptoticValue::new(
        zeta2_pow(p - 1).scale(&k),
        n_form(l, -(2 * p as i64 - 2)),
        ErrorClass::OneOverGTimesCp,
    ))
}

/// Fixed distinct zeros, all multiplicities together.
///
/// With `up_to_homology` each homology class of saddle connections counts
/// once and the value is exact.
pub fn asym_distinct_any_multiplicity(m1: u64, m2: u64, up_to_homology: bool) -> AsymptoticValue {
    let k = PiLaurent::from_rational(int(((m1 + 1) * (m2 + 1)) as i64));
    let error = if up_to_homology { ErrorClass::Exact } else { ErrorClass::OneOverG };
    AsymptoticValue::new(k, GScale::one(), error)
}

/// Number of labelled zeros of order `m`.
pub fn zero_choices(h: &StratumSignature, m: u64) -> u64 {
    h.orders().iter().filter(|&&x| x == m).count() as u64
}

/// Number of unordered pairs of distinct zeros with orders `{m₁, m₂}`.
pub fn zero_pair_choices(h: &StratumSignature, m1: u64, m2: u64) -> u64 {
    let (a, b) = (zero_choices(h, m1), zero_choices(h, m2));
    if m1 == m2 {
        a * a.saturating_sub(1) / 2
    } else {
        a * b
    }
}

/// Any two distinct zeros of orders `m₁, m₂` in `h`: the fixed-zero value
/// times the number of ways to choose the zeros.
pub fn asym_distinct_any_zeros(h: &StratumSignature, m1: u64, m2: u64, p: u64) -> Result<AsymptoticValue> {
    let fixed = asym_distinct_fixed(m1, m2, p, h.num_zeros())?;
    Ok(fixed.times_rational(&int(zero_pair_choices(h, m1, m2) as i64)))
}

/// Which loops at a fixed zero of order `m` are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopMode {
    /// Multiplicity one, the loop bounds no cylinder.
    NoCylinder,
    /// Multiplicity one, the loop bounds a cylinder whose other boundary is a loop at the same zero.
    CylinderSameZero,
    /// Multiplicity one, the other boundary of the cylinder is at a fixed zero of order `m2`.
    CylinderOtherZero { m2: u64 },
    /// Multiplicity `p`, every other zero free; the closed form assumes `m` grows with `g`.
    OneFixedZeroTotal,
    /// Multiplicity `p`, order of magnitude only.
    OneFixedZeroOrder,
    /// All multiplicities together.
    AnyMultiplicity,
}

/// Loops of multiplicity `p` at a fixed zero of order `m` in a stratum with `ℓ` zeros.
pub fn asym_loop(m: u64, p: u64, mode: LoopMode, l: u64) -> Result<AsymptoticValue> {
    require_positive(p)?;
    let single = |what: &str| -> Result<()> {
        if p != 1 {
            return Err(Error::Precondition(format!("the {what} case is stated for multiplicity one")));
        }
        Ok(())
    };
    let (mi, pi) = (m as i64, p as i64);
    match mode {
        LoopMode::NoCylinder => {
            single("no-cylinder")?;
            if m < 2 {
                return Ok(AsymptoticValue::exact_zero());
            }
            Ok(AsymptoticValue::new(rat((mi + 1) * (mi - 1), 2).into(), GScale::one(), ErrorClass::OneOverG))
        }
        LoopMode::CylinderSameZero => {
            single("same-zero cylinder")?;
            if m < 2 {
                return Ok(AsymptoticValue::exact_zero());
            }
            Ok(AsymptoticValue::new(rat((mi + 1) * (mi - 1), 2).into(), n_form(l, -1), ErrorClass::OneOverG))
        }
        LoopMode::CylinderOtherZero { m2 } => {
            single("two-zero cylinder")?;
            if m == 0 || m2 == 0 {
                return Ok(AsymptoticValue::exact_zero());
            }
            Ok(AsymptoticValue::new(int((mi + 1) * (m2 as i64 + 1)).into(), n_form(l, -1), ErrorClass::OneOverG))
        }
        LoopMode::AnyMultiplicity => {
            // A regular marked point bounds no saddle connection to itself.
            if m == 0 {
                return Ok(AsymptoticValue::exact_zero());
            }
            Ok(AsymptoticValue::new(rat((mi + 1) * (mi + 1), 2).into(), GScale::one(), ErrorClass::OneOverG))
        }
        LoopMode::OneFixedZeroTotal if p == 1 => asym_loop(m, p, LoopMode::AnyMultiplicity, l),
        LoopMode::OneFixedZeroTotal if 2 * p <= m => {
            let k = rat((mi + 1) * (mi - 2 * pi + 1), 2);
            Ok(AsymptoticValue::new(zeta2_pow(p - 1).scale(&k), n_form(l, -(2 * pi - 2)), ErrorClass::OneOverGTimesCp))
        }
        LoopMode::OneFixedZeroTotal | LoopMode::OneFixedZeroOrder => {
            // Below the dominant range only configurations through other zeros remain.
            let k = if mi - 2 * pi + 1 > 0 { (mi + 1) * (mi - 2 * pi + 1) } else { (2 * pi - 2).max(1) * (mi + 1) };
            Ok(AsymptoticValue::new(int(k).into(), n_form(l, -(2 * pi - 2)), ErrorClass::BoundOnly))
        }
    }
}

/// Loops of multiplicity `p` that visit exactly the fixed zeros of the given
/// orders, in a stratum with `ℓ` zeros.
///
/// Vanishes outside `n/2 ≤ p ≤ M/2` where `n` is the number of zeros and `M`
/// their total order. With one zero the dominant configuration gives a closed
/// form; with more only the order of magnitude is known.
pub fn asym_loop_all_zeros_fixed(orders: &[u64], p: u64, l: u64) -> Result<AsymptoticValue> {
    require_positive(p)?;
    let n = orders.len() as u64;
    if n == 0 {
        return Err(Error::Precondition("at least one zero is required".into()));
    }
    let total: u64 = orders.iter().sum();
    if 2 * p < n || 2 * p > total {
        return Ok(AsymptoticValue::exact_zero());
    }
    let pi = p as i64;
    if n == 1 {
        let m = orders[0] as i64;
        let k = rat((m + 1) * (m - 2 * pi + 1), 2);
        let error = if p == 1 { ErrorClass::OneOverG } else { ErrorClass::OneOverGTimesCp };
        return Ok(AsymptoticValue::new(zeta2_pow(p - 1).scale(&k), n_form(l, -(2 * pi - 2)), error));
    }
    let k: i64 = orders.iter().map(|&m| m as i64 + 1).product();
    Ok(AsymptoticValue::new(int(k).into(), n_form(l, -(2 * pi - 3 + n as i64)), ErrorClass::BoundOnly))
}

/// Loops of multiplicity `p` at any zero of `H(1,…,1)`.
pub fn asym_principal_loops(p: u64) -> Result<AsymptoticValue> {
    require_positive(p)?;
    let c = PiLaurent::monomial(rat(1, 3), 2).pow(p as u32 - 1).scale(&rat(1, 2));
    Ok(AsymptoticValue::new(c, GScale::power(4, -5, -(2 * p as i64 - 3)), ErrorClass::OneOverGTimesCp))
}

/// Every saddle connection of a stratum, any multiplicity, any zeros.
pub fn asym_total(h: &StratumSignature) -> AsymptoticValue {
    let l = h.num_zeros() as i64;
    AsymptoticValue::new(rat(1, 2).into(), GScale::power(2, l - 2, 2), ErrorClass::OneOverG)
}

/// A multiplicity or all of them at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Exactly(u64),
    Any,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Exactly(p) => write!(f, "{p}"),
            Multiplicity::Any => f.write_str("any"),
        }
    }
}

/// Strata with their own closed forms.
///
/// The non-hyperelliptic families hold for the whole stratum and for its
/// odd, even and non-hyperelliptic components alike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialFamily {
    /// Loops in `H(2g−2)`; there is only one zero, so fixed and any agree.
    MinimalLoops,
    /// The two zeros of `H(g−1,g−1)`.
    TwoEqualDistinct,
    /// Loops at a fixed zero of `H(g−1,g−1)`.
    TwoEqualLoopsFixedZero,
    /// Loops at either zero of `H(g−1,g−1)`.
    TwoEqualLoopsAnyZero,
    /// Saddle connections between any two zeros of `H(1,…,1)`.
    PrincipalDistinctAnyZeros,
    /// Loops at any zero of `H(1,…,1)`.
    PrincipalLoopsAnyZero,
    /// Loops in `H^hyp(2g−2)`.
    HypMinimalLoops,
    /// The two zeros of `H^hyp(g−1,g−1)`.
    HypTwoEqualDistinct,
    /// Loops in `H^hyp(g−1,g−1)`.
    HypTwoEqualLoops,
}

impl SpecialFamily {
    pub const ALL: [SpecialFamily; 9] = [
        SpecialFamily::MinimalLoops,
        SpecialFamily::TwoEqualDistinct,
        SpecialFamily::TwoEqualLoopsFixedZero,
        SpecialFamily::TwoEqualLoopsAnyZero,
        SpecialFamily::PrincipalDistinctAnyZeros,
        SpecialFamily::PrincipalLoopsAnyZero,
        SpecialFamily::HypMinimalLoops,
        SpecialFamily::HypTwoEqualDistinct,
        SpecialFamily::HypTwoEqualLoops,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialFamily::MinimalLoops => "minimal-loops",
            SpecialFamily::TwoEqualDistinct => "two-equal-distinct",
            SpecialFamily::TwoEqualLoopsFixedZero => "two-equal-loops-fixed",
            SpecialFamily::TwoEqualLoopsAnyZero => "two-equal-loops-any",
            SpecialFamily::PrincipalDistinctAnyZeros => "principal-distinct",
            SpecialFamily::PrincipalLoopsAnyZero => "principal-loops",
            SpecialFamily::HypMinimalLoops => "hyp-minimal-loops",
            SpecialFamily::HypTwoEqualDistinct => "hyp-two-equal-distinct",
            SpecialFamily::HypTwoEqualLoops => "hyp-two-equal-loops",
        }
    }

    pub fn from_name(s: &str) -> Option<SpecialFamily> {
        SpecialFamily::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn is_hyperelliptic(self) -> bool {
        matches!(
            self,
            SpecialFamily::HypMinimalLoops | SpecialFamily::HypTwoEqualDistinct | SpecialFamily::HypTwoEqualLoops
        )
    }

    pub fn stratum(self, g: u64) -> StratumSignature {
        match self {
            SpecialFamily::MinimalLoops | SpecialFamily::HypMinimalLoops => StratumSignature::minimal(g),
            SpecialFamily::PrincipalDistinctAnyZeros | SpecialFamily::PrincipalLoopsAnyZero => {
                StratumSignature::principal(g)
            }
            _ => StratumSignature::two_equal(g),
        }
    }
}

/// `c·g²`
fn g_squared(c: PiLaurent, error: ErrorClass) -> AsymptoticValue {
    AsymptoticValue::new(c, GScale::power(1, 0, 2), error)
}

/// The hyperelliptic constants at multiplicities one and two, as `(a, b, c)`
/// for `a + b/π + c/π²`.
fn hyp_constant(family: SpecialFamily, p: u64) -> PiLaurent {
    let (a, b, c) = match (family, p) {
        (SpecialFamily::HypMinimalLoops, 1) => (rat(0, 1), int(2), int(2)),
        (SpecialFamily::HypMinimalLoops, _) => (rat(3, 2), int(-2), int(-2)),
        (SpecialFamily::HypTwoEqualDistinct, 1) => (int(0), int(2), int(0)),
        (SpecialFamily::HypTwoEqualDistinct, _) => (int(1), int(-2), int(0)),
        (SpecialFamily::HypTwoEqualLoops, 1) => (int(0), int(0), int(2)),
        (_, _) => (rat(1, 2), int(0), int(-2)),
    };
    let mut v = PiLaurent::from_rational(a);
    v += &PiLaurent::monomial(b, -1);
    v += &PiLaurent::monomial(c, -2);
    v
}

/// Closed forms for the special strata.
///
/// Multiplicities above the largest possible one give an exact zero.
pub fn asym_special_families(family: SpecialFamily, mult: Multiplicity, g: u64) -> Result<AsymptoticValue> {
    if g < 2 {
        return Err(Error::Precondition("the special families need g >= 2".into()));
    }
    if let Multiplicity::Exactly(p) = mult {
        require_positive(p)?;
    }
    // ¼(π²/6)^{p−1}·(2g−1)^{−(2p−4)} and friends.
    let two_equal = |c: Rational, p: u64| {
        AsymptoticValue::new(
            zeta2_pow(p - 1).scale(&c),
            GScale::power(2, -1, -(2 * p as i64 - 4)),
            ErrorClass::OneOverGTimesCp,
        )
    };
    use Multiplicity::{Any, Exactly};
    use SpecialFamily as F;
    Ok(match (family, mult) {
        (F::MinimalLoops, Any) => g_squared(int(2).into(), ErrorClass::OneOverG),
        (F::MinimalLoops, Exactly(p)) if p > g - 1 => AsymptoticValue::exact_zero(),
        (F::MinimalLoops, Exactly(p)) => AsymptoticValue::new(
            zeta2_pow(p - 1).scale(&rat(1, 2)),
            GScale::power(2, -2, -(2 * p as i64 - 4)),
            ErrorClass::OneOverGTimesCp,
        ),
        (F::TwoEqualDistinct, Any) => g_squared(int(1).into(), ErrorClass::OneOverG),
        (F::TwoEqualDistinct, Exactly(p)) if p > g => AsymptoticValue::exact_zero(),
        (F::TwoEqualDistinct, Exactly(p)) => two_equal(rat(1, 4), p),
        (F::TwoEqualLoopsFixedZero, Any) => g_squared(rat(1, 2).into(), ErrorClass::OneOverG),
        (F::TwoEqualLoopsAnyZero, Any) => g_squared(int(1).into(), ErrorClass::OneOverG),
        (F::TwoEqualLoopsFixedZero | F::TwoEqualLoopsAnyZero, Exactly(p)) if p > g - 1 => {
            AsymptoticValue::exact_zero()
        }
        (F::TwoEqualLoopsFixedZero | F::TwoEqualLoopsAnyZero, Exactly(p)) if 2 * p > g - 1 => {
            // Beyond the single-zero range every loop visits both zeros.
            let v = asym_loop_all_zeros_fixed(&[g - 1, g - 1], p, 2)?;
            if family == F::TwoEqualLoopsAnyZero {
                v.times_rational(&int(2))
            } else {
                v
            }
        }
        (F::TwoEqualLoopsFixedZero, Exactly(p)) => two_equal(rat(1, 8), p),
        (F::TwoEqualLoopsAnyZero, Exactly(p)) => two_equal(rat(1, 4), p),
        (F::PrincipalDistinctAnyZeros, Any | Exactly(1)) => g_squared(int(8).into(), ErrorClass::OneOverG),
        (F::PrincipalDistinctAnyZeros, Exactly(2)) => {
            AsymptoticValue::new(PiLaurent::monomial(rat(1, 12), 2), GScale::one(), ErrorClass::OneOverG)
        }
        (F::PrincipalDistinctAnyZeros, Exactly(_)) => AsymptoticValue::exact_zero(),
        (F::PrincipalLoopsAnyZero, Any) => {
            AsymptoticValue::new(int(2).into(), GScale::power(1, 0, 1), ErrorClass::OneOverG)
        }
        (F::PrincipalLoopsAnyZero, Exactly(p)) if p > g - 1 => AsymptoticValue::exact_zero(),
        (F::PrincipalLoopsAnyZero, Exactly(p)) => asym_principal_loops(p)?,
        (F::HypMinimalLoops | F::HypTwoEqualDistinct | F::HypTwoEqualLoops, Exactly(p)) if p >= 3 => {
            AsymptoticValue::exact_zero()
        }
        (F::HypMinimalLoops | F::HypTwoEqualDistinct | F::HypTwoEqualLoops, Exactly(p)) => {
            let error = if p == 1 { ErrorClass::OneOverG } else { ErrorClass::OneOverGQuarter };
            g_squared(hyp_constant(family, p), error)
        }
        (F::HypMinimalLoops | F::HypTwoEqualDistinct | F::HypTwoEqualLoops, Any) => {
            return Err(Error::NoExactFormula(format!(
                "{}: the hyperelliptic families are stated per multiplicity",
                family.name()
            )))
        }
    })
}

// ---------------------------------------------------------------------------
// Lookup table
// ---------------------------------------------------------------------------

/// Parameters for the rows that hold for any stratum.
///
/// Those rows are evaluated on `H(m₁, m₂, 2g−2−m₁−m₂)` with the loop zero
/// being the first one, so `m = m₁` and `ℓ = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableParams {
    pub m1: u64,
    pub m2: u64,
    /// Multiplicity used by the rows stated for a general `p`.
    pub p: u64,
}

impl Default for TableParams {
    fn default() -> Self {
        Self { m1: 4, m2: 2, p: 2 }
    }
}

/// One evaluated row of the lookup table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub row: usize,
    pub stratum: String,
    pub multiplicity: String,
    pub loops: String,
    pub zero_orders: String,
    pub fixed_any: String,
    /// The row's asymptotic formula in the table's own variables.
    pub formula: String,
    pub coefficient: PiLaurent,
    pub g_power: GScale,
    /// `coefficient · g_power` at the requested genus.
    pub value: PiLaurent,
    pub float: f64,
    pub error: ErrorClass,
}

impl TableRow {
    pub fn reference(&self) -> String {
        format!("row {}", self.row)
    }
}

struct RowSpec {
    stratum: &'static str,
    multiplicity: String,
    loops: &'static str,
    zero_orders: String,
    fixed_any: &'static str,
    formula: &'static str,
    value: Box<dyn Fn(u64) -> Result<AsymptoticValue> + Send + Sync>,
}

const ANY_STRATUM: &str = "any H / H^odd / H^even / H^nonhyp";
const PRINCIPAL: &str = "H(1,...,1)";
const TWO_EQUAL: &str = "H(g-1,g-1) / odd / even / nonhyp";
const HYP_TWO_EQUAL: &str = "H^hyp(g-1,g-1)";
const MINIMAL: &str = "H(2g-2) / odd / even";
const HYP_MINIMAL: &str = "H^hyp(2g-2)";

fn row_specs(params: TableParams) -> Vec<RowSpec> {
    let TableParams { m1, m2, p } = params;
    let m = m1;
    let beyond = m1.min(m2) + 2;
    let special = |family: SpecialFamily, mult: Multiplicity| -> Box<dyn Fn(u64) -> Result<AsymptoticValue> + Send + Sync> {
        Box::new(move |g| asym_special_families(family, mult, g))
    };
    let spec = |stratum, multiplicity: String, loops, zero_orders: String, fixed_any, formula, value| RowSpec {
        stratum,
        multiplicity,
        loops,
        zero_orders,
        fixed_any,
        formula,
        value,
    };
    let pair = format!("m1={m1}, m2={m2}");
    let single = format!("m={m}");
    use Multiplicity::{Any, Exactly};
    use SpecialFamily as F;
    vec![
        spec(ANY_STRATUM, "1/any".into(), "distinct", pair.clone(), "fixed", "(m1+1)(m2+1)",
            Box::new(move |_| Ok(asym_distinct_any_multiplicity(m1, m2, false)))),
        spec(ANY_STRATUM, format!("p<=min(m1,m2)+1 (p={p})"), "distinct", pair.clone(), "fixed",
            "(pi^2/6)^(p-1)*(m1+1)(m2+1)/(2g+l-3)^(2p-2)",
            Box::new(move |_| asym_distinct_fixed(m1, m2, p, 3))),
        spec(ANY_STRATUM, format!(">=min(m1,m2)+2 (p={beyond})"), "distinct", pair, "fixed", "0",
            Box::new(move |_| asym_distinct_fixed(m1, m2, beyond, 3))),
        spec(ANY_STRATUM, "1/any".into(), "loops", single.clone(), "fixed", "(m+1)^2/2",
            Box::new(move |_| asym_loop(m, 1, LoopMode::AnyMultiplicity, 3))),
        spec(ANY_STRATUM, format!("p>=1 (p={p})"), "loops", single, "fixed",
            "(m+1)(m-2p+1)/(2g+l-3)^(2p-2)*O(1)^p",
            Box::new(move |_| asym_loop(m, p, LoopMode::OneFixedZeroOrder, 3))),
        spec(ANY_STRATUM, "1/any".into(), "any", String::new(), "any", "(2g+l-2)^2/2",
            Box::new(move |g| Ok(asym_total(&table_stratum(params, g)?)))),
        spec(PRINCIPAL, "1/any".into(), "distinct", String::new(), "any", "8g^2",
            special(F::PrincipalDistinctAnyZeros, Any)),
        spec(PRINCIPAL, "2".into(), "distinct", String::new(), "any", "pi^2/12",
            special(F::PrincipalDistinctAnyZeros, Exactly(2))),
        spec(PRINCIPAL, "1/any".into(), "loops", String::new(), "any", "2g", special(F::PrincipalLoopsAnyZero, Any)),
        spec(PRINCIPAL, format!("p>=1 (p={p})"), "loops", String::new(), "any", "(1/2)(pi^2/3)^(p-1)/(4g-5)^(2p-3)",
            special(F::PrincipalLoopsAnyZero, Exactly(p))),
        spec(TWO_EQUAL, "1/any".into(), "distinct", String::new(), "fixed/any", "g^2",
            special(F::TwoEqualDistinct, Any)),
        spec(TWO_EQUAL, format!("p<=g (p={p})"), "distinct", String::new(), "fixed/any",
            "(1/4)(pi^2/6)^(p-1)/(2g-1)^(2p-4)", special(F::TwoEqualDistinct, Exactly(p))),
        spec(TWO_EQUAL, "1/any".into(), "loops", String::new(), "fixed", "g^2/2",
            special(F::TwoEqualLoopsFixedZero, Any)),
        spec(TWO_EQUAL, format!("p>=1 (p={p})"), "loops", String::new(), "fixed", "(1/8)(pi^2/6)^(p-1)/(2g-1)^(2p-4)",
            special(F::TwoEqualLoopsFixedZero, Exactly(p))),
        spec(TWO_EQUAL, format!("p>=1 (p={p})"), "loops", String::new(), "any", "(1/4)(pi^2/6)^(p-1)/(2g-1)^(2p-4)",
            special(F::TwoEqualLoopsAnyZero, Exactly(p))),
        spec(HYP_TWO_EQUAL, "1".into(), "distinct", String::new(), "fixed/any", "(2/pi)g^2",
            special(F::HypTwoEqualDistinct, Exactly(1))),
        spec(HYP_TWO_EQUAL, "2".into(), "distinct", String::new(), "fixed/any", "(1-2/pi)g^2",
            special(F::HypTwoEqualDistinct, Exactly(2))),
        spec(HYP_TWO_EQUAL, ">=3 (p=3)".into(), "distinct", String::new(), "fixed/any", "0",
            special(F::HypTwoEqualDistinct, Exactly(3))),
        spec(HYP_TWO_EQUAL, "1".into(), "loops", String::new(), "fixed/any", "(2/pi^2)g^2",
            special(F::HypTwoEqualLoops, Exactly(1))),
        spec(HYP_TWO_EQUAL, "2".into(), "loops", String::new(), "fixed/any", "(1/2-2/pi^2)g^2",
            special(F::HypTwoEqualLoops, Exactly(2))),
        spec(HYP_TWO_EQUAL, ">=3 (p=3)".into(), "loops", String::new(), "fixed/any", "0",
            special(F::HypTwoEqualLoops, Exactly(3))),
        spec(MINIMAL, "1/any".into(), "loops", String::new(), "fixed/any", "2g^2", special(F::MinimalLoops, Any)),
        spec(MINIMAL, format!("p>=1 (p={p})"), "loops", String::new(), "fixed/any",
            "(1/2)(pi^2/6)^(p-1)/(2g-2)^(2p-4)", special(F::MinimalLoops, Exactly(p))),
        spec(HYP_MINIMAL, "1".into(), "loops", String::new(), "fixed/any", "(2/pi+2/pi^2)g^2",
            special(F::HypMinimalLoops, Exactly(1))),
        spec(HYP_MINIMAL, "2".into(), "loops", String::new(), "fixed/any", "(3/2-2/pi-2/pi^2)g^2",
            special(F::HypMinimalLoops, Exactly(2))),
        spec(HYP_MINIMAL, ">=3 (p=3)".into(), "loops", String::new(), "fixed/any", "0",
            special(F::HypMinimalLoops, Exactly(3))),
    ]
}

/// The stratum `H(m₁, m₂, 2g−2−m₁−m₂)` the general rows are evaluated on.
pub fn table_stratum(params: TableParams, g: u64) -> Result<StratumSignature> {
    let rest = (2 * g).checked_sub(2 + params.m1 + params.m2).ok_or_else(|| {
        Error::Precondition(format!("m1 + m2 = {} exceeds 2g - 2 at g = {g}", params.m1 + params.m2))
    })?;
    StratumSignature::new(vec![params.m1, params.m2, rest])
}

/// Every row of the lookup table evaluated at genus `g`.
pub fn generate_table(g: u64, params: TableParams) -> Result<Vec<TableRow>> {
    if g < 4 {
        return Err(Error::Precondition("the table is generated for g >= 4".into()));
    }
    if params.p == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    table_stratum(params, g)?;
    row_specs(params)
        .into_par_iter()
        .enumerate()
        .map(|(i, s)| {
            let v = (s.value)(g)?;
            let value = v.leading_at(g)?;
            Ok(TableRow {
                row: i + 1,
                stratum: s.stratum.to_string(),
                multiplicity: s.multiplicity,
                loops: s.loops.to_string(),
                zero_orders: s.zero_orders,
                fixed_any: s.fixed_any.to_string(),
                formula: s.formula.to_string(),
                float: value.to_f64(),
                coefficient: v.coefficient,
                g_power: v.g_power,
                value,
                error: v.error,
            })
        })
        .collect()
}

/// Output format of the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

pub const TABLE_COLUMNS: [&str; 12] = [
    "row",
    "stratum",
    "multiplicity",
    "loops",
    "zero_orders",
    "fixed_any",
    "formula",
    "coefficient",
    "g_power",
    "value",
    "float",
    "error_class",
];

/// Renders rows as CSV (with a header) or as a JSON array.
pub fn render_table(rows: &[TableRow], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "row": r.row,
                        "stratum": r.stratum,
                        "multiplicity": r.multiplicity,
                        "loops": r.loops,
                        "zero_orders": r.zero_orders,
                        "fixed_any": r.fixed_any,
                        "formula": r.formula,
                        "coefficient": r.coefficient.to_string(),
                        "g_power": r.g_power.to_string(),
                        "value": r.value.to_string(),
                        "float": r.float,
                        "error_class": r.error.to_string(),
                        "reference": r.reference(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items).map_err(|e| Error::Domain(e.to_string()))
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Domain(e.to_string());
            w.write_record(TABLE_COLUMNS).map_err(io)?;
            for r in rows {
                w.write_record([
                    r.row.to_string(),
                    r.stratum.clone(),
                    r.multiplicity.clone(),
                    r.loops.clone(),
                    r.zero_orders.clone(),
                    r.fixed_any.clone(),
                    r.formula.clone(),
                    r.coefficient.to_string(),
                    r.g_power.to_string(),
                    r.value.to_string(),
                    format!("{:e}", r.float),
                    r.error.to_string(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Domain(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Domain(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_render_and_evaluate() {
        let s = GScale::power(2, 0, -2).times(GScale::power(1, 0, 2));
        assert_eq!(s.to_string(), "(2g)^(-2)*g^2");
        assert_eq!(s.eval(7).unwrap(), rat(1, 4));
        assert_eq!(s.degree(), 0);
        assert_eq!(GScale::power(4, -5, 1).to_string(), "(4g-5)");
        assert_eq!(GScale::power(1, 3, 1).to_string(), "(g+3)");
    }

    #[test]
    fn zero_values_are_exact() {
        assert!(asym_distinct_fixed(3, 1, 3, 4).unwrap().is_exact_zero());
        assert!(asym_loop_all_zeros_fixed(&[2, 2, 2], 1, 5).unwrap().is_exact_zero());
        assert!(asym_loop_all_zeros_fixed(&[4], 3, 5).unwrap().is_exact_zero());
    }

    #[test]
    fn table_has_every_row() {
        let rows = generate_table(10, TableParams::default()).unwrap();
        assert_eq!(rows.len(), 26);
        assert_eq!(rows[7].coefficient.to_string(), "pi^2/12");
        assert!(rows[25].coefficient.is_zero());
    }
}
