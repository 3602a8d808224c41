//! Executable checks of the combinatorial lemmas behind the asymptotics.
//!
//! The three factorial inequalities are checked exactly, one input at a
//! time or over exhaustive sweeps. The partition sums and series are
//! evaluated with their limits alongside, so convergence can be measured
//! rather than assumed.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::{binomial, factorial, falling_factorial, rat, ratu, PiLaurent, Rational};

// ---------------------------------------------------------------------------
// Inequalities
// ---------------------------------------------------------------------------

fn sum(xs: &[u64]) -> u64 {
    xs.iter().sum()
}

fn factorial_product(xs: impl IntoIterator<Item = u64>) -> BigUint {
    xs.into_iter().fold(BigUint::one(), |acc, x| acc * factorial(x))
}

/// `∏(Aᵢ+r)!/(A+r−1)! ≤ ∏(Bᵢ+r)!/(B+r−1)!` for `0 ≤ Bᵢ ≤ Aᵢ` with every
/// `Bᵢ < B`, where `A` and `B` are the sums of the parts.
///
/// A violated precondition is an error; `Ok(false)` means the inequality
/// itself fails.
pub fn check_lemma_factorial_comparison(r: u64, a: &[u64], b: &[u64]) -> Result<bool> {
    factorial_comparison_pre(a, b)?;
    let (ta, tb) = (sum(a), sum(b));
    // Cross-multiplied; B ≥ 2 so every factorial argument is non-negative.
    let lhs = factorial_product(a.iter().map(|x| x + r)) * factorial(tb + r - 1);
    let rhs = factorial_product(b.iter().map(|x| x + r)) * factorial(ta + r - 1);
    Ok(lhs <= rhs)
}

fn factorial_comparison_pre(a: &[u64], b: &[u64]) -> Result<()> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::Precondition("A and B need the same positive number of parts".into()));
    }
    let tb = sum(b);
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        if y > x {
            return Err(Error::Precondition(format!("B{} = {y} exceeds A{} = {x}", i + 1, i + 1)));
        }
        if y >= tb {
            return Err(Error::Precondition(format!("B{} = {y} is not below B = {tb}", i + 1)));
        }
    }
    Ok(())
}

/// `∏(2ℓᵢ+aᵢ+r)!/∏ℓᵢ! ≤ 2^{rp}·C(Σ(2ℓᵢ+aᵢ), Σℓᵢ)·∏(ℓᵢ+aᵢ+r)!`
pub fn check_lemma_product_binomials(r: u64, l: &[u64], a: &[u64]) -> Result<bool> {
    if l.is_empty() || l.len() != a.len() {
        return Err(Error::Precondition("ℓ and a need the same positive number of entries".into()));
    }
    let p = l.len() as u64;
    let lhs = factorial_product(l.iter().zip(a).map(|(&li, &ai)| 2 * li + ai + r));
    let top: u64 = l.iter().zip(a).map(|(&li, &ai)| 2 * li + ai).sum();
    let rhs = (BigUint::one() << (r * p) as usize)
        * binomial(top, sum(l))
        * factorial_product(l.iter().zip(a).map(|(&li, &ai)| li + ai + r))
        * factorial_product(l.iter().copied());
    Ok(lhs <= rhs)
}

/// `∏(Aᵢ+3+r)! ≤ (3+r)!^{p−1}·(A+r)!` for `p ≥ 2`, `A ≥ r` and every `Aᵢ ≤ A−3`.
///
/// The inequality is false in general: with `p = 2`, `r = 0` and
/// `A₁ = A₂ = 3` the left side is `6!²` and the right side `3!·6!`.
pub fn check_lemma_ingredient(r: u64, parts: &[u64]) -> Result<bool> {
    ingredient_pre(r, parts)?;
    let p = parts.len() as u32;
    let lhs = factorial_product(parts.iter().map(|x| x + 3 + r));
    let rhs = factorial(3 + r).pow(p - 1) * factorial(sum(parts) + r);
    Ok(lhs <= rhs)
}

fn ingredient_pre(r: u64, parts: &[u64]) -> Result<()> {
    if parts.len() < 2 {
        return Err(Error::Precondition("at least two parts are required".into()));
    }
    let total = sum(parts);
    if total < r {
        return Err(Error::Precondition(format!("A = {total} is below r = {r}")));
    }
    if let Some((i, &x)) = parts.iter().enumerate().find(|&(_, &x)| x + 3 > total) {
        return Err(Error::Precondition(format!("A{} = {x} exceeds A − 3 = {}", i + 1, total as i64 - 3)));
    }
    Ok(())
}

/// Outcome of an exhaustive sweep of one inequality.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub lemma: &'static str,
    pub checked: u64,
    pub violations: u64,
    /// Largest observed left/right ratio; at most 1 when the inequality holds.
    pub max_ratio: f64,
    pub first_violation: Option<String>,
}

impl SweepReport {
    fn new(lemma: &'static str) -> Self {
        Self { lemma, checked: 0, violations: 0, max_ratio: 0.0, first_violation: None }
    }

    fn record(&mut self, lhs: f64, rhs: f64, holds: bool, input: impl FnOnce() -> String) {
        self.checked += 1;
        self.max_ratio = self.max_ratio.max(lhs / rhs);
        if !holds {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(input());
            }
        }
    }

    fn merge(mut self, other: SweepReport) -> Self {
        self.checked += other.checked;
        self.violations += other.violations;
        self.max_ratio = self.max_ratio.max(other.max_ratio);
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} checked, {} violations, max ratio {:.6}", self.lemma, self.checked, self.violations, self.max_ratio)?;
        if let Some(v) = &self.first_violation {
            write!(f, ", first at {v}")?;
        }
        Ok(())
    }
}

/// Calls `f` on every tuple with `0 ≤ xᵢ ≤ bounds[i]`.
fn for_each_tuple(bounds: &[u64], f: &mut impl FnMut(&[u64])) {
    let mut x = vec![0u64; bounds.len()];
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == x.len() {
                return;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Calls `f` on every composition of `total` into `parts` non-negative parts.
fn for_each_composition(total: u64, parts: usize, f: &mut impl FnMut(&[u64])) {
    fn go(rest: u64, buf: &mut Vec<u64>, parts: usize, f: &mut impl FnMut(&[u64])) {
        if buf.len() + 1 == parts {
            buf.push(rest);
            f(buf);
            buf.pop();
            return;
        }
        for x in 0..=rest {
            buf.push(x);
            go(rest - x, buf, parts, f);
            buf.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    go(total, &mut Vec::with_capacity(parts), parts, f);
}

fn range_u128(lo: u64, hi: u64) -> Option<u128> {
    (lo..=hi).try_fold(1u128, |acc, k| acc.checked_mul(k as u128))
}

/// Sweep of the factorial comparison over `p ≤ max_p`, `r ≤ max_r` and
/// parts `Bᵢ ≤ Aᵢ ≤ max_part`, skipping inputs outside the preconditions.
pub fn sweep_factorial_comparison(max_p: usize, max_r: u64, max_part: u64) -> SweepReport {
    let jobs: Vec<(usize, u64, u64)> =
        (1..=max_p).flat_map(|p| (0..=max_r).flat_map(move |r| (0..=max_part).map(move |a0| (p, r, a0)))).collect();
    let parts: Vec<SweepReport> = jobs
        .into_par_iter()
        .map(|(p, r, a0)| {
            let mut rep = SweepReport::new("factorial-comparison");
            for_each_tuple(&vec![max_part; p - 1], &mut |rest| {
                let mut a = vec![a0];
                a.extend_from_slice(rest);
                for_each_tuple(&a, &mut |b| {
                    if factorial_comparison_pre(&a, b).is_err() {
                        return;
                    }
                    let (ta, tb) = (sum(&a), sum(b));
                    let lhs = a.iter().zip(b).try_fold(1u128, |acc, (&x, &y)| acc.checked_mul(range_u128(y + r + 1, x + r)?));
                    let rhs = range_u128(tb + r, ta + r - 1);
                    let (holds, l, rr) = match (lhs, rhs) {
                        (Some(l), Some(rr)) => (l <= rr, l as f64, rr as f64),
                        _ => (check_lemma_factorial_comparison(r, &a, b).expect("preconditions checked"), 1.0, 1.0),
                    };
                    rep.record(l, rr, holds, || format!("r={r} A={a:?} B={b:?}"));
                });
            });
            rep
        })
        .collect();
    parts.into_iter().fold(SweepReport::new("factorial-comparison"), SweepReport::merge)
}

/// Sweep of the binomial product inequality over `p ≤ max_p`, `r ≤ max_r`
/// and `ℓᵢ, aᵢ ≤ max_part`.
///
/// Dividing both sides by `∏(ℓᵢ+aᵢ+r)!` turns it into
/// `∏C(2ℓᵢ+aᵢ+r, ℓᵢ) ≤ 2^{rp}·C(Σ(2ℓᵢ+aᵢ), Σℓᵢ)`, which fits in `u128`
/// throughout the sweep.
pub fn sweep_product_binomials(max_p: usize, max_r: u64, max_part: u64) -> SweepReport {
    let n = (2 * max_part * max_p as u64 + max_part * max_p as u64 + max_r) as usize + 1;
    let mut pascal = vec![vec![0u128; n]; n];
    for i in 0..n {
        pascal[i][0] = 1;
        for j in 1..=i {
            pascal[i][j] = pascal[i - 1][j - 1].saturating_add(if j < i { pascal[i - 1][j] } else { 0 });
        }
    }
    let jobs: Vec<(usize, u64, u64)> =
        (1..=max_p).flat_map(|p| (0..=max_r).flat_map(move |r| (0..=max_part).map(move |l0| (p, r, l0)))).collect();
    let parts: Vec<SweepReport> = jobs
        .into_par_iter()
        .map(|(p, r, l0)| {
            let mut rep = SweepReport::new("product-binomials");
            let bounds = vec![max_part; 2 * p - 1];
            for_each_tuple(&bounds, &mut |rest| {
                let l: Vec<u64> = std::iter::once(l0).chain(rest[..p - 1].iter().copied()).collect();
                let a = &rest[p - 1..];
                let mut lhs = 1u128;
                let mut top = 0u64;
                for (&li, &ai) in l.iter().zip(a) {
                    lhs *= pascal[(2 * li + ai + r) as usize][li as usize];
                    top += 2 * li + ai;
                }
                let rhs = pascal[top as usize][sum(&l) as usize] << (r * p as u64);
                rep.record(lhs as f64, rhs as f64, lhs <= rhs, || format!("r={r} l={l:?} a={a:?}"));
            });
            rep
        })
        .collect();
    parts.into_iter().fold(SweepReport::new("product-binomials"), SweepReport::merge)
}

/// Sweep of the ingredient inequality over `2 ≤ p ≤ max_p`, `r ≤ max_r` and
/// parts `Aᵢ ≤ max_part`, skipping inputs outside the preconditions.
pub fn sweep_ingredient(max_p: usize, max_r: u64, max_part: u64) -> SweepReport {
    let mut rep = SweepReport::new("ingredient");
    for p in 2..=max_p {
        for r in 0..=max_r {
            for_each_tuple(&vec![max_part; p], &mut |parts| {
                if ingredient_pre(r, parts).is_err() {
                    return;
                }
                let lhs = factorial_product(parts.iter().map(|x| x + 3 + r));
                let rhs = factorial(3 + r).pow(p as u32 - 1) * factorial(sum(parts) + r);
                let ratio = Rational::new(lhs.clone().into(), rhs.clone().into());
                rep.record(ratio.to_f64().unwrap_or(f64::INFINITY), 1.0, lhs <= rhs, || format!("r={r} A={parts:?}"));
            });
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// Sums over block assignments
// ---------------------------------------------------------------------------

/// Which of the two bounds on sums over block assignments to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumVariant {
    /// `Σ∏(dᵢ+1)! ≤ Cᵖ·D!`
    First,
    /// `Σ∏(dᵢ+2)! ≤ Cᵖ·(D+1)!`
    Second,
}

/// Exact sum and the empirical constant it implies.
#[derive(Debug, Clone, Serialize)]
pub struct SumEstimate {
    pub p: usize,
    pub blocks: Vec<u64>,
    pub l: u64,
    pub variant: SumVariant,
    /// Number of admissible choices in the sum.
    pub choices: u64,
    /// The sum divided by `D!` (first variant) or `(D+1)!` (second).
    #[serde(serialize_with = "display")]
    pub ratio: Rational,
    /// `ratio^{1/p}`.
    pub constant: f64,
}

fn display<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Empirical constant for the sum over block assignments with the cyclic
/// assignment `a′ᵢ ↦ Mᵢ mod n`, `a″ᵢ ↦ Mᵢ₊₁ mod n`.
pub fn estimate_lemma_sum_constant(p: usize, blocks: &[u64], l: u64, variant: SumVariant) -> Result<SumEstimate> {
    let n = blocks.len();
    let first: Vec<usize> = (0..p).map(|i| i % n.max(1)).collect();
    let second: Vec<usize> = (0..p).map(|i| (i + 1) % n.max(1)).collect();
    estimate_lemma_sum_constant_with(p, blocks, l, &first, &second, variant)
}

/// Empirical constant for an explicit assignment: `a′ᵢ` is a block of
/// `M_{first[i]}` and `a″ᵢ` a block of `M_{second[i]}`.
///
/// Choices where some `dᵢ = a′ᵢ+a″ᵢ+ℓᵢ` reaches the total `D` are excluded.
pub fn estimate_lemma_sum_constant_with(
    p: usize,
    blocks: &[u64],
    l: u64,
    first: &[usize],
    second: &[usize],
    variant: SumVariant,
) -> Result<SumEstimate> {
    let n = blocks.len();
    if p == 0 || n < 2 {
        return Err(Error::Precondition("need p ≥ 1 and at least two totals".into()));
    }
    if first.len() != p || second.len() != p {
        return Err(Error::Precondition("one assignment per index is required".into()));
    }
    for i in 0..p {
        if first[i] >= n || second[i] >= n || first[i] == second[i] {
            return Err(Error::Precondition(format!("a′{0} and a″{0} must lie in different totals", i + 1)));
        }
    }
    // Slots of each total, as (index, is_second).
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..p {
        slots[first[i]].push(i);
        slots[second[i]].push(i);
    }
    let total = sum(blocks) + l;
    let shift = match variant {
        SumVariant::First => 1,
        SumVariant::Second => 2,
    };
    let mut acc = BigUint::zero();
    let mut choices = 0u64;
    let mut d = vec![0u64; p];
    fn assign(
        j: usize,
        blocks: &[u64],
        slots: &[Vec<usize>],
        d: &mut Vec<u64>,
        leaf: &mut impl FnMut(&mut Vec<u64>),
    ) {
        if j == blocks.len() {
            leaf(d);
            return;
        }
        let s = &slots[j];
        for_each_composition(blocks[j], s.len(), &mut |parts| {
            for (&i, &x) in s.iter().zip(parts) {
                d[i] += x;
            }
            assign(j + 1, blocks, slots, d, leaf);
            for (&i, &x) in s.iter().zip(parts) {
                d[i] -= x;
            }
        });
    }
    assign(0, blocks, &slots, &mut d, &mut |d| {
        for_each_composition(l, p, &mut |ls| {
            if d.iter().zip(ls).any(|(x, y)| x + y >= total) {
                return;
            }
            choices += 1;
            acc += factorial_product(d.iter().zip(ls).map(|(x, y)| x + y + shift));
        });
    });
    let ratio = ratu(acc) / ratu(factorial(total + shift - 1));
    let constant = ratio.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / p as f64);
    Ok(SumEstimate { p, blocks: blocks.to_vec(), l, variant, choices, ratio, constant })
}

/// Largest empirical constant over `p ≤ max_p`, two or three totals and all
/// inputs with `ΣMⱼ + L ≤ max_total`.
pub fn sweep_sum_constant(max_p: usize, max_total: u64, variant: SumVariant) -> Result<SumEstimate> {
    let mut cases = Vec::new();
    for p in 1..=max_p {
        for n in 2..=3 {
            for t in 0..=max_total {
                for_each_composition(t, n + 1, &mut |x| cases.push((p, x[..n].to_vec(), x[n])));
            }
        }
    }
    let estimates: Vec<SumEstimate> = cases
        .into_par_iter()
        .map(|(p, m, l)| estimate_lemma_sum_constant(p, &m, l, variant))
        .collect::<Result<_>>()?;
    Ok(estimates.into_iter().fold(None::<SumEstimate>, |best, e| match best {
        Some(b) if b.constant >= e.constant => Some(b),
        _ => Some(e),
    })
    .expect("sweep is non-empty"))
}

// ---------------------------------------------------------------------------
// Zeta values
// ---------------------------------------------------------------------------

/// `B₂ₖ/(2k)!` for `k = 1..6`.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
];

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin with a cut at `n = 64`.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta needs s > 1");
    let n = 64.0f64;
    let mut total: f64 = (1..64).map(|k| (k as f64).powf(-s)).sum();
    total += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // Rising product s(s+1)…(s+2k−2) times n^{−s−2k+1}.
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        total += c * rising * power;
        let k = k as f64 + 1.0;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        power /= n * n;
    }
    total
}

/// Compensated running sum.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `Σ_{g₁+g₂=g, gᵢ≥1} g^{3/2}/(g₁g₂)^{3/2}`, which tends to `2ζ(3/2)`.
pub fn eval_partition_zeta_sum(g: u64) -> Result<f64> {
    if g < 2 {
        return Err(Error::Precondition("g must be at least 2".into()));
    }
    let gf = g as f64;
    let mut acc = Neumaier::default();
    for n in 1..g {
        let x = gf / (n as f64 * (g - n) as f64);
        acc.add(x * x.sqrt());
    }
    Ok(acc.value())
}

// ---------------------------------------------------------------------------
// Double factorial sums
// ---------------------------------------------------------------------------

/// `lcm(1, …, n)`
fn lcm_upto(n: u64) -> BigUint {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut acc = BigUint::one();
    for q in 2..=n {
        if !sieve[q] {
            continue;
        }
        for m in (q * q..=n).step_by(q) {
            sieve[m] = false;
        }
        let mut pw = q;
        while pw * q <= n {
            pw *= q;
        }
        acc *= pw as u64;
    }
    acc
}

/// `C(2k, k)` for `k = 0..=n`.
fn central_binomials(n: u64) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    out.push(c.clone());
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 1);
        out.push(c.clone());
    }
    out
}

/// The three partition sums with double factorials, as exact rationals
/// without the `g^{3/2}` prefactor.
///
/// With `C_k = C(2k,k)` one has `(2k−1)!!/(2k)!! = C_k/4^k` and
/// `(2k)!!/(2k+1)!! = 4^k/((2k+1)C_k)`. Every denominator divides a power of
/// `L = lcm(1, …, 2g+2)`, so the terms are added as integers over a common
/// denominator and the fraction is reduced once.
pub fn double_factorial_sum_exact(g: u64, which: u8) -> Result<Rational> {
    if g < 4 {
        return Err(Error::Precondition("g must be at least 4".into()));
    }
    let c = central_binomials(g);
    let lcm = lcm_upto(2 * g + 2);
    let four = |k: u64| BigUint::one() << (2 * k) as usize;
    // X_k = (2k+1)(2k+2)C_k divides L², so Y_k = L²/X_k is an integer.
    let y = |k: u64| -> BigUint { (&lcm * &lcm) / (&c[k as usize] * ((2 * k + 1) * (2 * k + 2))) };
    match which {
        1 => {
            let mut acc = BigUint::zero();
            for a in 1..g {
                let b = g - a;
                acc += &c[a as usize] * &c[b as usize] * (&lcm / (2 * a + 1)) * (&lcm / (2 * b + 1));
            }
            Ok(ratu(acc) / ratu(&lcm * &lcm * four(g)))
        }
        2 => {
            let ys: Vec<BigUint> = (0..g).into_par_iter().map(y).collect();
            let mut acc = BigUint::zero();
            for a in 1..g - 1 {
                acc += &ys[a as usize] * &ys[(g - 1 - a) as usize];
            }
            let l2 = &lcm * &lcm;
            Ok(ratu(acc * four(g - 1)) / ratu(&l2 * &l2))
        }
        3 => {
            let mut acc = BigUint::zero();
            for a in 1..g - 1 {
                let b = g - 1 - a;
                acc += &c[a as usize] * four(2 * b) * (&lcm / (2 * a + 1)) * y(b);
            }
            Ok(ratu(acc) / ratu(&lcm * &lcm * &lcm * four(g - 1)))
        }
        _ => Err(Error::Precondition(format!("sum {which} does not exist; choose 1, 2 or 3"))),
    }
}

/// The double factorial sum `which ∈ {1, 2, 3}` including `g^{3/2}`.
pub fn eval_double_factorial_sums(g: u64, which: u8) -> Result<f64> {
    let q = double_factorial_sum_exact(g, which)?;
    let gf = g as f64;
    Ok(crate::numbers::rational_to_f64(&q) * gf * gf.sqrt())
}

/// Limit of double factorial sum `which`, as `√π` times the returned
/// Laurent polynomial.
pub fn double_factorial_limit(which: u8) -> Result<PiLaurent> {
    let m = |n: i64, d: i64, k: i64| PiLaurent::monomial(rat(n, d), k);
    let parts = match which {
        1 => vec![m(1, 2, 0), m(-1, 1, -1)],
        2 => vec![m(1, 16, 2), m(-1, 4, 0)],
        3 => vec![m(3, 16, 1), m(-1, 4, 0), m(-1, 4, -1)],
        _ => return Err(Error::Precondition(format!("sum {which} does not exist; choose 1, 2 or 3"))),
    };
    Ok(parts.into_iter().sum())
}

pub fn double_factorial_limit_f64(which: u8) -> Result<f64> {
    Ok(double_factorial_limit(which)?.to_f64() * std::f64::consts::PI.sqrt())
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

/// The two series evaluated in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    /// `Σ_{n≥0} (2n−1)!!/((2n+1)(2n)!!) = π/2`
    HalfPi,
    /// `Σ_{n≥0} (2n)!!/((2n+2)(2n+1)!!) = π²/8`
    PiSqOverEight,
}

impl Series {
    pub fn name(self) -> &'static str {
        match self {
            Series::HalfPi => "half_pi",
            Series::PiSqOverEight => "pi_sq_over_8",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Series::HalfPi, Series::PiSqOverEight].into_iter().find(|x| x.name() == s)
    }

    pub fn limit(self) -> PiLaurent {
        match self {
            Series::HalfPi => PiLaurent::monomial(rat(1, 2), 1),
            Series::PiSqOverEight => PiLaurent::monomial(rat(1, 8), 2),
        }
    }
}

/// Partial sum of a series over `n = 0..=N`.
///
/// Ratios of consecutive double factorials are carried in `f64` and the terms
/// summed with compensation; an exact partial sum at `N = 10⁶` would need
/// million-digit denominators.
pub fn eval_series(which: Series, n_max: u64) -> Result<f64> {
    if n_max < 1 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let mut acc = Neumaier::default();
    // (2n−1)!!/(2n)!! resp. (2n)!!/(2n+1)!!
    let mut ratio = 1.0f64;
    for n in 0..=n_max {
        let nf = n as f64;
        match which {
            Series::HalfPi => {
                acc.add(ratio / (2.0 * nf + 1.0));
                ratio *= (2.0 * nf + 1.0) / (2.0 * nf + 2.0);
            }
            Series::PiSqOverEight => {
                acc.add(ratio / (2.0 * nf + 2.0));
                ratio *= (2.0 * nf + 2.0) / (2.0 * nf + 3.0);
            }
        }
    }
    Ok(acc.value())
}

/// Exact partial sum for small `N`, the oracle for [`eval_series`].
pub fn eval_series_exact(which: Series, n_max: u64) -> Rational {
    (0..=n_max)
        .map(|n| match which {
            Series::HalfPi => {
                ratu(binomial(2 * n, n)) / (ratu(BigUint::one() << (2 * n) as usize) * rat(2 * n as i64 + 1, 1))
            }
            Series::PiSqOverEight => {
                ratu(BigUint::one() << (2 * n) as usize)
                    / (ratu(binomial(2 * n, n)) * rat((2 * n as i64 + 1) * (2 * n as i64 + 2), 1))
            }
        })
        .fold(Rational::zero(), |a, b| a + b)
}

// ---------------------------------------------------------------------------
// Error terms
// ---------------------------------------------------------------------------

/// `(2g−2p)!·(2g)^{2p}/(2g)!`, which is `1 + O(1/g)·O(1)ᵖ` for `p ≤ g`.
pub fn check_cancelling_factorials(p: u64, g: u64) -> Result<f64> {
    if p < 1 || p > g {
        return Err(Error::Precondition(format!("need 1 ≤ p ≤ g, got p = {p}, g = {g}")));
    }
    let num = BigUint::from(2 * g).pow(2 * p as u32);
    Ok(crate::numbers::rational_to_f64(&(ratu(num) / ratu(falling_factorial(2 * g, 2 * p)))))
}

/// `Σ_{p=1}^{g} g^{−(2p−2)}·(1 + c·Cᵖ/g)` exactly.
pub fn error_term_sum(g: u64, c: u64, big_c: u64) -> Rational {
    let gg = ratu(BigUint::from(g));
    let mut total = Rational::zero();
    let mut damp = Rational::one();
    let g2 = &gg * &gg;
    for p in 1..=g {
        let grow = ratu(BigUint::from(big_c).pow(p as u32)) * ratu(BigUint::from(c)) / &gg;
        total += &damp * (Rational::one() + grow);
        damp /= &g2;
    }
    total
}

/// `g·(S − 1)` for the sum above: bounded in `g` exactly when the sum is
/// `1 + O(1/g)`.
pub fn error_term_constant(g: u64, c: u64, big_c: u64) -> Rational {
    (error_term_sum(g, c, big_c) - Rational::one()) * ratu(BigUint::from(g))
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One row of a convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub g: u64,
    pub value: f64,
    pub limit: f64,
    pub error: f64,
}

fn convergence(gs: &[u64], limit: f64, f: impl Fn(u64) -> Result<f64> + Sync) -> Result<Vec<ConvergenceRow>> {
    gs.par_iter()
        .map(|&g| {
            let value = f(g)?;
            Ok(ConvergenceRow { g, value, limit, error: (value - limit).abs() })
        })
        .collect()
}

/// `|error|` strictly decreasing along the table.
pub fn strictly_decreasing(rows: &[ConvergenceRow]) -> bool {
    rows.windows(2).all(|w| w[1].error < w[0].error)
}

/// Convergence of the partition zeta sum to `2ζ(3/2)`.
pub fn zeta_sum_table(gs: &[u64]) -> Result<Vec<ConvergenceRow>> {
    convergence(gs, 2.0 * zeta(1.5), eval_partition_zeta_sum)
}

/// Convergence of a double factorial sum to its limit.
pub fn double_factorial_table(which: u8, gs: &[u64]) -> Result<Vec<ConvergenceRow>> {
    let limit = double_factorial_limit_f64(which)?;
    convergence(gs, limit, |g| eval_double_factorial_sums(g, which))
}

/// The lemma checks reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaId {
    FactorialComparison,
    ProductBinomials,
    Ingredient,
    SumConstant,
    ZetaSum,
    DoubleFactorial,
    Series,
    CancellingFactorials,
    ErrorTerm,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::FactorialComparison,
        LemmaId::ProductBinomials,
        LemmaId::Ingredient,
        LemmaId::SumConstant,
        LemmaId::ZetaSum,
        LemmaId::DoubleFactorial,
        LemmaId::Series,
        LemmaId::CancellingFactorials,
        LemmaId::ErrorTerm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::FactorialComparison => "factorial-comparison",
            LemmaId::ProductBinomials => "product-binomials",
            LemmaId::Ingredient => "ingredient",
            LemmaId::SumConstant => "sum-constant",
            LemmaId::ZetaSum => "zeta-sum",
            LemmaId::DoubleFactorial => "double-factorial",
            LemmaId::Series => "series",
            LemmaId::CancellingFactorials => "cancelling-factorials",
            LemmaId::ErrorTerm => "error-term",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name() == s)
    }
}

/// Size knobs shared by the command line reports.
#[derive(Debug, Clone, Copy)]
pub struct LemmaSize {
    /// Largest number of parts or multiplicity.
    pub max_p: usize,
    /// Largest part, total, or shift `r`.
    pub max_part: u64,
    pub max_r: u64,
    /// Genus, or series cut-off for [`LemmaId::Series`].
    pub g: u64,
}

impl Default for LemmaSize {
    fn default() -> Self {
        Self { max_p: 4, max_part: 8, max_r: 3, g: 10_000 }
    }
}

/// Runs one check and returns its JSON report, with a pass flag where the
/// check has one.
pub fn lemma_report(id: LemmaId, size: LemmaSize) -> Result<serde_json::Value> {
    use serde_json::json;
    let sweep = |rep: SweepReport| json!({ "passed": rep.passed(), "sweep": rep });
    Ok(match id {
        LemmaId::FactorialComparison => sweep(sweep_factorial_comparison(size.max_p, size.max_r, size.max_part)),
        LemmaId::ProductBinomials => sweep(sweep_product_binomials(size.max_p, size.max_r, size.max_part)),
        LemmaId::Ingredient => sweep(sweep_ingredient(size.max_p, size.max_r, size.max_part)),
        LemmaId::SumConstant => {
            let first = sweep_sum_constant(size.max_p.min(3), size.max_part, SumVariant::First)?;
            let second = sweep_sum_constant(size.max_p.min(3), size.max_part, SumVariant::Second)?;
            json!({ "worst_first": first, "worst_second": second })
        }
        LemmaId::ZetaSum => {
            let rows = zeta_sum_table(&decades(size.g))?;
            json!({ "zeta_3_2": zeta(1.5), "decreasing": strictly_decreasing(&rows), "table": rows })
        }
        LemmaId::DoubleFactorial => {
            let mut out = Vec::new();
            for which in 1..=3 {
                let rows = double_factorial_table(which, &decades(size.g))?;
                out.push(json!({
                    "which": which,
                    "limit": format!("sqrt(pi)*({})", double_factorial_limit(which)?),
                    "decreasing": strictly_decreasing(&rows),
                    "table": rows,
                }));
            }
            json!(out)
        }
        LemmaId::Series => {
            let mut out = Vec::new();
            for s in [Series::HalfPi, Series::PiSqOverEight] {
                let value = eval_series(s, size.g)?;
                let limit = s.limit().to_f64();
                out.push(json!({
                    "series": s.name(),
                    "n": size.g,
                    "value": value,
                    "limit": s.limit().to_string(),
                    "limit_float": limit,
                    "error": (value - limit).abs(),
                }));
            }
            json!(out)
        }
        LemmaId::CancellingFactorials => {
            let g = size.g;
            let rows: Vec<_> = (1..=size.max_p as u64)
                .filter(|&p| p <= g)
                .map(|p| Ok(json!({ "p": p, "g": g, "ratio": check_cancelling_factorials(p, g)? })))
                .collect::<Result<_>>()?;
            json!(rows)
        }
        LemmaId::ErrorTerm => {
            let ks: Vec<f64> =
                (10..=size.g.clamp(10, 200)).map(|g| error_term_constant(g, 2, 2).to_f64().unwrap_or(f64::NAN)).collect();
            let k = ks.iter().cloned().fold(0.0, f64::max);
            json!({ "c": 2, "C": 2, "max_g_times_excess": k, "bounded_by_5": k <= 5.0 })
        }
    })
}

/// `10², 10³, …` up to `g`.
fn decades(g: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 100;
    while x <= g.max(100) {
        out.push(x);
        x *= 10;
    }
    out
}
