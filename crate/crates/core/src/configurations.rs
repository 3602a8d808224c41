//! Gluing data of saddle-connection configurations.
//!
//! A configuration is a cyclic sequence of construction blocks. For a saddle
//! connection between two distinct zeros every block is a slit construction.
//! For a loop the blocks are figure-eight and two-hole constructions, possibly
//! separated by cylinders. Consecutive blocks are glued along a seam, and
//! every seam carries one of the zeros created by the gluing.
//!
//! The orders of the created zeros come from walking the seams. A
//! figure-eight subsurface has one zero on both boundary curves, so it fuses
//! the seams on its two sides. A maximal run of fused seams ends on each side
//! at a two-hole block or a cylinder, and its zero has order
//!
//! ```text
//! Σ_{figure-eights in the run} (a + 2)  +  e_left  +  e_right  −  1
//! ```
//!
//! where a two-hole end contributes `b + 3/2` and a cylinder end `1/2`. A
//! two-hole block shows `b″` to the seam on its right and `b′` to the seam on
//! its left. This reproduces every multiplicity-one shape: a lone two-hole
//! block gives `b′ + b″ + 2`, a figure-eight beside a cylinder gives `a + 2`
//! on both cylinder boundaries, and a two-hole block beside a cylinder gives
//! the two zeros `b′ + 1` and `b″ + 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::strata::{classify_components, ComponentId, StratumSignature};

/// The surgery that produced one subsurface, with its angle partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BlockKind {
    Slit { a1: u64, a2: u64 },
    FigureEight { a1: u64, a2: u64 },
    TwoHole { b1: u64, b2: u64 },
    Cylinder,
}

impl BlockKind {
    fn tag(self) -> u8 {
        match self {
            BlockKind::Slit { .. } => 0,
            BlockKind::FigureEight { .. } => 1,
            BlockKind::TwoHole { .. } => 2,
            BlockKind::Cylinder => 3,
        }
    }

    /// The same block read backwards: primed and double-primed parts swap.
    pub fn swapped(self) -> BlockKind {
        match self {
            BlockKind::Slit { a1, a2 } => BlockKind::Slit { a1: a2, a2: a1 },
            BlockKind::FigureEight { a1, a2 } => BlockKind::FigureEight { a1: a2, a2: a1 },
            BlockKind::TwoHole { b1, b2 } => BlockKind::TwoHole { b1: b2, b2: b1 },
            BlockKind::Cylinder => BlockKind::Cylinder,
        }
    }

    /// Orders of the distinguished zeros this block adds to its sub-stratum.
    pub fn distinguished_orders(self) -> Vec<u64> {
        match self {
            BlockKind::Slit { a1, a2 } | BlockKind::FigureEight { a1, a2 } => vec![a1 + a2],
            BlockKind::TwoHole { b1, b2 } => vec![b1, b2],
            BlockKind::Cylinder => vec![],
        }
    }

    /// `a + 1` for slits and figure-eights, `(b′+1)(b″+1)` for two-hole blocks.
    pub fn angle_factor(self) -> u128 {
        match self {
            BlockKind::Slit { a1, a2 } | BlockKind::FigureEight { a1, a2 } => (a1 + a2 + 1) as u128,
            BlockKind::TwoHole { b1, b2 } => (b1 as u128 + 1) * (b2 as u128 + 1),
            BlockKind::Cylinder => 1,
        }
    }

    pub fn is_cylinder(self) -> bool {
        self == BlockKind::Cylinder
    }
}

/// One block of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConstructionBlock {
    pub kind: BlockKind,
    /// `None` for cylinders.
    pub substratum: Option<StratumSignature>,
    pub component: Option<ComponentId>,
    /// Indices into the parent signature of the zeros carried by this subsurface.
    pub zeros: Vec<usize>,
}

impl ConstructionBlock {
    /// Builds a block; the sub-stratum lists the distinguished zeros first.
    pub fn new(kind: BlockKind, mut zeros: Vec<usize>, parent: &StratumSignature) -> Result<Self> {
        zeros.sort_unstable();
        if kind.is_cylinder() {
            if !zeros.is_empty() {
                return Err(Error::InvalidConfiguration("a cylinder carries no zeros".into()));
            }
            return Ok(Self { kind, substratum: None, component: None, zeros });
        }
        let mut orders = kind.distinguished_orders();
        for &i in &zeros {
            let m = *parent
                .orders()
                .get(i)
                .ok_or_else(|| Error::InvalidConfiguration(format!("zero index {i} out of range")))?;
            orders.push(m);
        }
        let sub = StratumSignature::new(orders)?;
        Ok(Self { kind, substratum: Some(sub), component: None, zeros })
    }

    pub fn genus(&self) -> u64 {
        self.substratum.as_ref().map_or(0, |s| s.genus())
    }

    /// `d_i/2 − 1` for the sub-stratum.
    pub fn half_dimension_minus_one(&self) -> Option<u64> {
        self.substratum.as_ref().map(|s| s.dimension() / 2 - 1)
    }
}

/// Which saddle connection the configuration describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConfigKind {
    /// From zero `z1` to a different zero `z2` (indices into the signature).
    DistinctZeros { z1: usize, z2: usize },
    /// A loop at zero `z`.
    Loop { z: usize },
}

/// A saddle-connection configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    pub stratum: StratumSignature,
    pub kind: ConfigKind,
    /// Cyclically ordered blocks.
    pub blocks: Vec<ConstructionBlock>,
    /// Loops only: `seams[j]` is the parent zero on the seam between block `j`
    /// and block `j + 1`.
    pub seams: Vec<usize>,
    pub labelled: bool,
}

/// `|Γ|` and `|Γ₋|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryData {
    pub gamma_order: u64,
    pub gamma_minus_order: u64,
}

impl SymmetryData {
    pub fn product(self) -> u64 {
        self.gamma_order * self.gamma_minus_order
    }
}

impl Configuration {
    /// Multiplicity: the number of non-cylinder blocks.
    pub fn p(&self) -> usize {
        self.blocks.iter().filter(|b| !b.kind.is_cylinder()).count()
    }

    /// Number of cylinders.
    pub fn q(&self) -> usize {
        self.blocks.len() - self.p()
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.kind, ConfigKind::Loop { .. })
    }

    /// Parent zeros created by the gluing, the fixed ones first.
    pub fn glued_zeros(&self) -> Vec<usize> {
        match self.kind {
            ConfigKind::DistinctZeros { z1, z2 } => vec![z1, z2],
            ConfigKind::Loop { z } => {
                let mut out = vec![z];
                for &s in &self.seams {
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
                out
            }
        }
    }

    /// Orders `m, m₂, …, m_n` of the glued zeros, fixed zero first.
    pub fn glued_orders(&self) -> Vec<u64> {
        self.glued_zeros().iter().map(|&i| self.stratum.orders()[i]).collect()
    }

    /// `∏ (a_i + 1) · ∏ (b′+1)(b″+1)`
    pub fn angle_product(&self) -> BigUint {
        self.blocks.iter().map(|b| BigUint::from(b.kind.angle_factor())).product()
    }

    pub fn substrata(&self) -> impl Iterator<Item = &StratumSignature> {
        self.blocks.iter().filter_map(|b| b.substratum.as_ref())
    }

    /// All but at most one sub-stratum is `H(0)` (slits) or `H(0)`/`H(0,0)` (loops).
    pub fn is_dominant(&self) -> bool {
        let torus = |s: &StratumSignature| {
            if self.is_loop() {
                s.is_torus_block()
            } else {
                s.orders() == [0]
            }
        };
        self.substrata().filter(|s| !torus(s)).count() <= 1
    }

    /// The block sequence rotated so that block `k` comes first.
    pub fn rotated(&self, k: usize) -> Configuration {
        let n = self.blocks.len();
        let mut c = self.clone();
        c.blocks = (0..n).map(|i| self.blocks[(i + k) % n].clone()).collect();
        if !self.seams.is_empty() {
            c.seams = (0..n).map(|i| self.seams[(i + k) % n]).collect();
        }
        c
    }

    /// The data read backwards with primed and double-primed parts exchanged.
    pub fn reversed(&self) -> Configuration {
        let n = self.blocks.len();
        let mut c = self.clone();
        c.blocks = (0..n)
            .map(|i| {
                let mut b = self.blocks[n - 1 - i].clone();
                b.kind = b.kind.swapped();
                if let (BlockKind::TwoHole { b1, b2 }, Some(sub)) = (b.kind, &b.substratum) {
                    let mut o = sub.orders().to_vec();
                    o[0] = b1;
                    o[1] = b2;
                    b.substratum = Some(StratumSignature::new(o).expect("same total order"));
                }
                b
            })
            .collect();
        if !self.seams.is_empty() {
            c.seams = (0..n).map(|i| self.seams[(2 * n - 2 - i) % n]).collect();
        }
        c
    }

    fn key(&self) -> Vec<ElementKey> {
        let orders = self.stratum.orders();
        let fixed = self.glued_zeros();
        let label = |i: usize| -> (u8, u64) {
            if self.labelled {
                (0, i as u64)
            } else {
                // Fixed zeros keep their identity, the rest only their order.
                match fixed.iter().position(|&f| f == i) {
                    Some(pos) if pos < if self.is_loop() { 1 } else { 2 } => (0, pos as u64),
                    _ => (1, orders[i]),
                }
            }
        };
        self.blocks
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let (x, y) = match b.kind {
                    BlockKind::Slit { a1, a2 } | BlockKind::FigureEight { a1, a2 } => (a1, a2),
                    BlockKind::TwoHole { b1, b2 } => (b1, b2),
                    BlockKind::Cylinder => (0, 0),
                };
                let mut zeros: Vec<(u8, u64)> = b.zeros.iter().map(|&i| label(i)).collect();
                zeros.sort_unstable();
                let seam = self.seams.get(j).map(|&s| label(s));
                ElementKey { tag: b.kind.tag(), x, y, zeros, seam }
            })
            .collect()
    }

    /// Symmetry groups of the data.
    ///
    /// For a labelled saddle connection between distinct zeros the two
    /// endpoints orient the data, so `Γ₋` is trivial.
    pub fn symmetry(&self) -> SymmetryData {
        let n = self.blocks.len();
        let key = self.key();
        let gamma = (0..n).filter(|&k| self.rotated(k).key() == key).count() as u64;
        let reversal_applies = self.is_loop() || !self.labelled;
        let rev = self.reversed();
        let gamma_minus = if reversal_applies && (0..n).any(|k| rev.rotated(k).key() == key) { 2 } else { 1 };
        SymmetryData { gamma_order: gamma, gamma_minus_order: gamma_minus }
    }

    /// Orbit representative: the lexicographically smallest key over
    /// rotations, and over reversals for loops.
    pub fn canonical(&self) -> Configuration {
        let n = self.blocks.len();
        let mut candidates: Vec<Configuration> = (0..n).map(|k| self.rotated(k)).collect();
        if self.is_loop() {
            let rev = self.reversed();
            candidates.extend((0..n).map(|k| rev.rotated(k)));
        }
        candidates.into_iter().min_by_key(|c| c.key()).expect("at least one block")
    }

    /// Zero orders of the runs of fused seams, in run order.
    pub fn seam_runs(&self) -> Vec<SeamRun> {
        seam_runs(&self.blocks.iter().map(|b| b.kind).collect::<Vec<_>>())
    }

    /// Re-checks every structural identity without trusting the enumerator.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfiguration(m));
        let orders = self.stratum.orders();
        let n = self.blocks.len();
        if n == 0 {
            return bad("no blocks".into());
        }
        for b in &self.blocks {
            let expected = if b.kind.is_cylinder() {
                None
            } else {
                let mut o = b.kind.distinguished_orders();
                o.extend(b.zeros.iter().map(|&i| orders[i]));
                Some(o)
            };
            if b.substratum.as_ref().map(|s| s.orders().to_vec()) != expected {
                return bad("sub-stratum does not match the block data".into());
            }
        }
        let mut seen: Vec<usize> = self.blocks.iter().flat_map(|b| b.zeros.iter().copied()).collect();
        seen.extend(self.glued_zeros());
        seen.sort_unstable();
        if seen != (0..orders.len()).collect::<Vec<_>>() {
            return bad("zeros are not distributed exactly once".into());
        }
        let p = self.p() as u64;
        let q = self.q() as u64;
        let genus_sum: u64 = self.blocks.iter().map(|b| b.genus()).sum();
        let dim_sum: u64 = self.substrata().map(|s| s.dimension()).sum();
        match self.kind {
            ConfigKind::DistinctZeros { z1, z2 } => {
                let (mut s1, mut s2) = (0, 0);
                for b in &self.blocks {
                    match b.kind {
                        BlockKind::Slit { a1, a2 } => {
                            s1 += a1;
                            s2 += a2;
                        }
                        _ => return bad("distinct zeros use slit blocks only".into()),
                    }
                }
                if z1 == z2 || s1 + p - 1 != orders[z1] || s2 + p - 1 != orders[z2] {
                    return bad("endpoint orders do not match the slit data".into());
                }
                if genus_sum != self.stratum.genus() {
                    return bad("genera of the pieces do not add up".into());
                }
            }
            ConfigKind::Loop { z } => {
                if self.blocks.iter().any(|b| matches!(b.kind, BlockKind::Slit { .. })) {
                    return bad("loops do not use slit blocks".into());
                }
                if self.seams.len() != n {
                    return bad("one seam label per block is required".into());
                }
                for j in 0..n {
                    if self.blocks[j].kind.is_cylinder() && self.blocks[(j + 1) % n].kind.is_cylinder() {
                        return bad("adjacent cylinders".into());
                    }
                }
                let runs = self.seam_runs();
                let mut labels = BTreeSet::new();
                for r in &runs {
                    let l = self.seams[r.seams[0]];
                    if r.seams.iter().any(|&s| self.seams[s] != l) || !labels.insert(l) {
                        return bad("seam labels disagree with the fused runs".into());
                    }
                    if orders[l] != r.order {
                        return bad(format!("run order {} differs from zero order {}", r.order, orders[l]));
                    }
                }
                if !labels.contains(&z) {
                    return bad("the loop zero is not created by the gluing".into());
                }
                let total: u64 = runs.iter().map(|r| r.order).sum();
                let pieces: u64 = self
                    .blocks
                    .iter()
                    .map(|b| match b.kind {
                        BlockKind::FigureEight { a1, a2 } => a1 + a2 + 2,
                        BlockKind::TwoHole { b1, b2 } => b1 + b2 + 2,
                        _ => 0,
                    })
                    .sum();
                if total != pieces {
                    return bad("total order of the new zeros is off".into());
                }
                if genus_sum + 1 != self.stratum.genus() {
                    return bad("genera of the pieces do not add up".into());
                }
            }
        }
        if dim_sum + 2 * q + 2 != self.stratum.dimension() {
            return bad("dimension identity fails".into());
        }
        Ok(())
    }

    /// Admissible component tags for each sub-stratum, as a lazy product.
    ///
    /// For a connected parent every sub-stratum is taken whole. For a parent
    /// component every sub-stratum ranges over its own non-trivial components.
    pub fn component_choices(&self, parent: ComponentId) -> impl Iterator<Item = Vec<ComponentId>> {
        let options: Vec<Vec<ComponentId>> = self
            .substrata()
            .map(|s| {
                let c = classify_components(s);
                if parent == ComponentId::Whole || c.is_connected() {
                    vec![ComponentId::Whole]
                } else {
                    c.components.clone()
                }
            })
            .collect();
        let total: usize = options.iter().map(|o| o.len()).product();
        (0..total).map(move |mut idx| {
            options
                .iter()
                .map(|o| {
                    let c = o[idx % o.len()];
                    idx /= o.len();
                    c
                })
                .collect()
        })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match (b.kind, &b.substratum) {
                (BlockKind::Slit { a1, a2 }, Some(s)) => format!("S({a1},{a2}){s}"),
                (BlockKind::FigureEight { a1, a2 }, Some(s)) => format!("F({a1},{a2}){s}"),
                (BlockKind::TwoHole { b1, b2 }, Some(s)) => format!("T({b1},{b2}){s}"),
                _ => "C".to_string(),
            })
            .collect();
        write!(f, "{} [{}]", self.stratum, parts.join(" | "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ElementKey {
    tag: u8,
    x: u64,
    y: u64,
    zeros: Vec<(u8, u64)>,
    seam: Option<(u8, u64)>,
}

/// A maximal chain of seams fused by figure-eight blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeamRun {
    pub seams: Vec<usize>,
    pub order: u64,
}

fn seam_runs(kinds: &[BlockKind]) -> Vec<SeamRun> {
    let n = kinds.len();
    let mut runs = Vec::new();
    // Start a walk at every seam whose left block is not a figure-eight.
    for start in 0..n {
        if matches!(kinds[start], BlockKind::FigureEight { .. }) {
            continue;
        }
        let mut twice = end_contribution(kinds[start], true);
        let mut seams = vec![start];
        let mut j = start;
        loop {
            let right = (j + 1) % n;
            match kinds[right] {
                BlockKind::FigureEight { a1, a2 } => {
                    twice += 2 * (a1 + a2 + 2);
                    j = right;
                    seams.push(j);
                }
                other => {
                    twice += end_contribution(other, false);
                    break;
                }
            }
        }
        debug_assert!(twice >= 2 && twice % 2 == 0);
        runs.push(SeamRun { seams, order: twice / 2 - 1 });
    }
    runs
}

/// Twice the contribution of a run end. `right_side` means the seam lies to
/// the right of the block.
fn end_contribution(kind: BlockKind, right_side: bool) -> u64 {
    match kind {
        BlockKind::TwoHole { b1, b2 } => 2 * if right_side { b2 } else { b1 } + 3,
        BlockKind::Cylinder => 1,
        _ => unreachable!("runs end at two-hole blocks or cylinders"),
    }
}

fn compositions(total: u64, parts: usize, out: &mut Vec<Vec<u64>>) {
    fn rec(rest: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            rec(rest - x, left - 1, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), out);
}

/// All maps from `free` zero indices to `bins` blocks such that every block's
/// order sum (starting from `base`) is even.
fn parity_assignments(orders: &[u64], free: &[usize], base: &[u64]) -> Vec<Vec<Vec<usize>>> {
    struct Search<'a> {
        orders: &'a [u64],
        free: &'a [usize],
        /// Odd zeros among `free[k..]`.
        odd_suffix: Vec<usize>,
        out: Vec<Vec<Vec<usize>>>,
    }
    impl Search<'_> {
        fn rec(&mut self, k: usize, parity: &mut Vec<u64>, bins: &mut Vec<Vec<usize>>) {
            if k == self.free.len() {
                if parity.iter().all(|p| p % 2 == 0) {
                    self.out.push(bins.clone());
                }
                return;
            }
            // Prune when the remaining odd zeros cannot fix the odd blocks.
            let odd_blocks = parity.iter().filter(|p| *p % 2 == 1).count();
            let odd_left = self.odd_suffix[k];
            if odd_left < odd_blocks || (odd_left - odd_blocks) % 2 == 1 {
                return;
            }
            let z = self.free[k];
            for b in 0..bins.len() {
                bins[b].push(z);
                parity[b] += self.orders[z];
                self.rec(k + 1, parity, bins);
                parity[b] -= self.orders[z];
                bins[b].pop();
            }
        }
    }
    let mut out = Vec::new();
    if base.is_empty() {
        if free.is_empty() {
            out.push(Vec::new());
        }
        return out;
    }
    if base.len() == 1 {
        // One block takes every free zero; no search needed however many there are.
        let total: u64 = base[0] + free.iter().map(|&i| orders[i]).sum::<u64>();
        if total % 2 == 0 {
            out.push(vec![free.to_vec()]);
        }
        return out;
    }
    let mut odd_suffix = vec![0; free.len() + 1];
    for k in (0..free.len()).rev() {
        odd_suffix[k] = odd_suffix[k + 1] + (orders[free[k]] % 2) as usize;
    }
    let mut search = Search { orders, free, odd_suffix, out };
    search.rec(0, &mut base.to_vec(), &mut vec![Vec::new(); base.len()]);
    search.out
}

/// Keeps one canonical representative per orbit.
fn dedupe(configs: impl IntoIterator<Item = Configuration>) -> Vec<Configuration> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in configs {
        let canon = c.canonical();
        if seen.insert(canon.key()) {
            out.push(canon);
        }
    }
    out
}

/// Configurations of `p` homologous saddle connections from zero `z1` to the
/// different zero `z2`.
pub fn enumerate_distinct_zero_configs(
    h: &StratumSignature,
    z1: usize,
    z2: usize,
    p: usize,
    labelled: bool,
) -> Result<Vec<Configuration>> {
    let orders = h.orders();
    if z1 == z2 || z1 >= orders.len() || z2 >= orders.len() {
        return Err(Error::Precondition(format!("zero indices {z1}, {z2} must be distinct and in range")));
    }
    if p == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    let (m1, m2) = (orders[z1], orders[z2]);
    if p as u64 > m1.min(m2) + 1 {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..orders.len()).filter(|&i| i != z1 && i != z2).collect();
    let (mut c1, mut c2) = (Vec::new(), Vec::new());
    compositions(m1 + 1 - p as u64, p, &mut c1);
    compositions(m2 + 1 - p as u64, p, &mut c2);
    let mut raw = Vec::new();
    for x in &c1 {
        for y in &c2 {
            let base: Vec<u64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            for bins in parity_assignments(orders, &free, &base) {
                let blocks = (0..p)
                    .map(|i| ConstructionBlock::new(BlockKind::Slit { a1: x[i], a2: y[i] }, bins[i].clone(), h))
                    .collect::<Result<Vec<_>>>()?;
                raw.push(Configuration {
                    stratum: h.clone(),
                    kind: ConfigKind::DistinctZeros { z1, z2 },
                    blocks,
                    seams: Vec::new(),
                    labelled,
                });
            }
        }
    }
    Ok(dedupe(raw))
}

/// The dominant configuration of `p` saddle connections from `z1` to `z2`:
/// `p − 1` slits on tori and one slit carrying every other zero.
///
/// Built directly rather than filtered from the enumeration, so it is
/// available in strata far too large to enumerate. `None` when `p` exceeds
/// the largest multiplicity.
pub fn dominant_distinct_config(h: &StratumSignature, z1: usize, z2: usize, p: usize) -> Result<Option<Configuration>> {
    let orders = h.orders();
    if z1 == z2 || z1 >= orders.len() || z2 >= orders.len() {
        return Err(Error::Precondition(format!("zero indices {z1}, {z2} must be distinct and in range")));
    }
    if p == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    let (m1, m2) = (orders[z1], orders[z2]);
    if p as u64 > m1.min(m2) + 1 {
        return Ok(None);
    }
    let free: Vec<usize> = (0..orders.len()).filter(|&i| i != z1 && i != z2).collect();
    let big = BlockKind::Slit { a1: m1 + 1 - p as u64, a2: m2 + 1 - p as u64 };
    let mut blocks = vec![ConstructionBlock::new(big, free, h)?];
    for _ in 1..p {
        blocks.push(ConstructionBlock::new(BlockKind::Slit { a1: 0, a2: 0 }, Vec::new(), h)?);
    }
    let c = Configuration {
        stratum: h.clone(),
        kind: ConfigKind::DistinctZeros { z1, z2 },
        blocks,
        seams: Vec::new(),
        labelled: true,
    };
    c.validate()?;
    Ok(Some(c.canonical()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Letter {
    F,
    T,
    C,
}

/// Cyclic words with `p` non-cylinder letters and `q` cylinders, no two
/// cylinders adjacent, and at least one zero created.
fn loop_words(p: usize, q: usize) -> Vec<Vec<Letter>> {
    let n = p + q;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, q: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        let used_c = cur.iter().filter(|&&l| l == Letter::C).count();
        if cur.len() == n {
            if used_c == q && !(n > 1 && cur[0] == Letter::C && cur[n - 1] == Letter::C) && (n > 1 || q == 0) {
                let t = cur.iter().filter(|&&l| l == Letter::T).count();
                if t + q >= 1 {
                    out.push(cur.clone());
                }
            }
            return;
        }
        for l in [Letter::F, Letter::T, Letter::C] {
            if l == Letter::C && (used_c == q || cur.last() == Some(&Letter::C)) {
                continue;
            }
            if l != Letter::C && cur.len() - used_c == n - q {
                continue;
            }
            cur.push(l);
            rec(n, q, cur, out);
            cur.pop();
        }
    }
    rec(n, q, &mut cur, &mut out);
    out
}

/// Variables of a run: figure-eight partitions and two-hole ends.
#[derive(Clone, Copy)]
enum Slot {
    FePrime(usize),
    FeDouble(usize),
    ThLeft(usize),
    ThRight(usize),
}

/// Configurations of loops of multiplicity `p` at zero `z`.
pub fn enumerate_loop_configs(h: &StratumSignature, z: usize, p: usize, labelled: bool) -> Result<Vec<Configuration>> {
    let orders = h.orders();
    if z >= orders.len() {
        return Err(Error::Precondition(format!("zero index {z} out of range")));
    }
    if p == 0 {
        return Err(Error::Precondition("multiplicity must be positive".into()));
    }
    let mut raw = Vec::new();
    for q in 0..=p {
        for word in loop_words(p, q) {
            let n = word.len();
            // Shape of the runs with all parameters zero.
            let proto: Vec<BlockKind> = word
                .iter()
                .map(|l| match l {
                    Letter::F => BlockKind::FigureEight { a1: 0, a2: 0 },
                    Letter::T => BlockKind::TwoHole { b1: 0, b2: 0 },
                    Letter::C => BlockKind::Cylinder,
                })
                .collect();
            let runs = seam_runs(&proto);
            if runs.len() > orders.len() {
                continue;
            }
            let run_slots: Vec<Vec<Slot>> = runs
                .iter()
                .map(|r| {
                    let mut slots = Vec::new();
                    let first = r.seams[0];
                    if word[first] == Letter::T {
                        slots.push(Slot::ThRight(first));
                    }
                    for &s in &r.seams[1..] {
                        slots.push(Slot::FePrime(s));
                        slots.push(Slot::FeDouble(s));
                    }
                    let last = (r.seams[r.seams.len() - 1] + 1) % n;
                    if word[last] == Letter::T {
                        slots.push(Slot::ThLeft(last));
                    }
                    slots
                })
                .collect();
            for labels in injective_labels(orders, &runs, z) {
                let mut per_run: Vec<Vec<Vec<u64>>> = Vec::with_capacity(runs.len());
                for (r, &l) in runs.iter().zip(&labels) {
                    let mut c = Vec::new();
                    compositions(orders[l] - r.order, run_slots[per_run.len()].len(), &mut c);
                    per_run.push(c);
                }
                let seams = {
                    let mut s = vec![0usize; n];
                    for (r, &l) in runs.iter().zip(&labels) {
                        for &j in &r.seams {
                            s[j] = l;
                        }
                    }
                    s
                };
                let free: Vec<usize> = (0..orders.len()).filter(|i| !labels.contains(i)).collect();
                for choice in cartesian(&per_run) {
                    let mut kinds = proto.clone();
                    for (slots, vals) in run_slots.iter().zip(&choice) {
                        for (slot, &v) in slots.iter().zip(vals.iter()) {
                            match *slot {
                                Slot::FePrime(j) => {
                                    if let BlockKind::FigureEight { a1, .. } = &mut kinds[j] {
                                        *a1 = v
                                    }
                                }
                                Slot::FeDouble(j) => {
                                    if let BlockKind::FigureEight { a2, .. } = &mut kinds[j] {
                                        *a2 = v
                                    }
                                }
                                Slot::ThLeft(j) => {
                                    if let BlockKind::TwoHole { b1, .. } = &mut kinds[j] {
                                        *b1 = v
                                    }
                                }
                                Slot::ThRight(j) => {
                                    if let BlockKind::TwoHole { b2, .. } = &mut kinds[j] {
                                        *b2 = v
                                    }
                                }
                            }
                        }
                    }
                    let solid: Vec<usize> = (0..n).filter(|&j| !kinds[j].is_cylinder()).collect();
                    let base: Vec<u64> =
                        solid.iter().map(|&j| kinds[j].distinguished_orders().iter().sum()).collect();
                    for bins in parity_assignments(orders, &free, &base) {
                        let mut blocks = Vec::with_capacity(n);
                        let mut next = 0;
                        for kind in &kinds {
                            let zeros = if kind.is_cylinder() {
                                Vec::new()
                            } else {
                                next += 1;
                                bins[next - 1].clone()
                            };
                            blocks.push(ConstructionBlock::new(*kind, zeros, h)?);
                        }
                        raw.push(Configuration {
                            stratum: h.clone(),
                            kind: ConfigKind::Loop { z },
                            blocks,
                            seams: seams.clone(),
                            labelled,
                        });
                    }
                }
            }
        }
    }
    Ok(dedupe(raw))
}

/// Injective assignments of parent zeros to runs, respecting the minimum
/// order of each run and using `z` somewhere.
fn injective_labels(orders: &[u64], runs: &[SeamRun], z: usize) -> Vec<Vec<usize>> {
    fn rec(orders: &[u64], runs: &[SeamRun], z: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == runs.len() {
            if cur.contains(&z) {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..orders.len() {
            if !cur.contains(&i) && orders[i] >= runs[k].order {
                cur.push(i);
                rec(orders, runs, z, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(orders, runs, z, &mut Vec::new(), &mut out);
    out
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for x in l {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Whether a configuration can occur on a hyperelliptic component.
///
/// All zeros of the parent are created by the gluing, every sub-stratum is
/// a hyperelliptic-shaped stratum with symmetric partition, and the block
/// pattern is one of the few compatible with the involution:
/// `H(2g−2)`: `T`, `F C` (p = 1) and `F T` (p = 2);
/// `H(g−1,g−1)` loops: `T C` (p = 1) and `T T` (p = 2);
/// `H(g−1,g−1)` distinct zeros: one or two slits.
pub fn is_hyperelliptic_compatible(c: &Configuration) -> bool {
    let h = &c.stratum;
    if !(h.is_minimal_shape() || h.is_two_equal_shape()) || c.p() > 2 {
        return false;
    }
    let symmetric = c.blocks.iter().all(|b| match b.kind {
        BlockKind::Slit { a1, a2 } | BlockKind::FigureEight { a1, a2 } => a1 == a2,
        BlockKind::TwoHole { b1, b2 } => b1 == b2,
        BlockKind::Cylinder => true,
    });
    if !symmetric || c.blocks.iter().any(|b| !b.zeros.is_empty()) {
        return false;
    }
    let mut word: Vec<u8> = c.blocks.iter().map(|b| b.kind.tag()).collect();
    word.sort_unstable();
    match c.kind {
        ConfigKind::DistinctZeros { .. } => h.is_two_equal_shape(),
        ConfigKind::Loop { .. } if h.is_minimal_shape() => {
            matches!(word.as_slice(), [2] | [1, 3] | [1, 2])
        }
        ConfigKind::Loop { .. } => matches!(word.as_slice(), [2, 3] | [2, 2]),
    }
}

/// Enumerates configurations on a component. Hyperelliptic components keep
/// only the compatible patterns and tag their sub-strata hyperelliptic.
pub fn enumerate_on_component(
    h: &StratumSignature,
    component: ComponentId,
    kind: ConfigKind,
    p: usize,
    labelled: bool,
) -> Result<Vec<Configuration>> {
    if !classify_components(h).admits(component) {
        return Err(Error::InvalidComponent { stratum: h.to_string(), component: component.to_string() });
    }
    let mut all = match kind {
        ConfigKind::DistinctZeros { z1, z2 } => enumerate_distinct_zero_configs(h, z1, z2, p, labelled)?,
        ConfigKind::Loop { z } => enumerate_loop_configs(h, z, p, labelled)?,
    };
    if component == ComponentId::Hyperelliptic {
        all.retain(is_hyperelliptic_compatible);
        for c in &mut all {
            for b in &mut c.blocks {
                b.component = b.substratum.as_ref().map(|s| {
                    if classify_components(s).admits(ComponentId::Hyperelliptic) {
                        ComponentId::Hyperelliptic
                    } else {
                        ComponentId::Whole
                    }
                });
            }
        }
    }
    Ok(all)
}
