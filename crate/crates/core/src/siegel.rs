//! Monte Carlo check of the Siegel formula for unimodular lattices in the plane.
//!
//! A unimodular lattice up to rotation is a point `τ` of the modular
//! fundamental domain; the Haar measure becomes `dx dy / y²`. The ball
//! indicator is rotation invariant, so the rotation factor integrates out
//! and sampling `τ` is enough. The average number of nonzero lattice vectors
//! of length at most `L` is then `πL²`.

use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lemmas::zeta;

/// Lower edge of the fundamental domain, `√3/2`.
const Y_MIN: f64 = 0.866_025_403_784_438_6;

/// A point of the fundamental domain `|x| ≤ 1/2`, `x² + y² ≥ 1` (the
/// circle test allows rounding at the corners).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSample {
    pub tau_x: f64,
    pub tau_y: f64,
}

pub type Basis = [[f64; 2]; 2];

impl LatticeSample {
    pub fn new(tau_x: f64, tau_y: f64) -> Result<Self> {
        let s = Self { tau_x, tau_y };
        if tau_y.is_nan() || tau_y <= 0.0 || !s.in_fundamental_domain() {
            return Err(Error::Domain(format!("({tau_x}, {tau_y}) is outside the fundamental domain")));
        }
        Ok(s)
    }

    pub fn in_fundamental_domain(&self) -> bool {
        self.tau_x.abs() <= 0.5 && self.tau_x * self.tau_x + self.tau_y * self.tau_y >= 1.0 - 1e-12
    }

    /// `(1, 0)/√y` and `(x, y)/√y`, of determinant one.
    pub fn basis(&self) -> Basis {
        let s = self.tau_y.sqrt();
        [[1.0 / s, 0.0], [self.tau_x / s, s]]
    }
}

pub fn determinant(b: &Basis) -> f64 {
    b[0][0] * b[1][1] - b[0][1] * b[1][0]
}

/// Draws `τ` with density proportional to `1/y²` on the fundamental domain.
///
/// `y` comes from the dominating density `√3/(2y²)` on `[√3/2, ∞)` by
/// inversion, `x` is uniform on `[−1/2, 1/2]`, and points below the unit
/// circle are rejected.
pub fn sample_lattice<R: Rng + ?Sized>(rng: &mut R) -> LatticeSample {
    loop {
        let u: f64 = 1.0 - rng.gen::<f64>();
        let y = Y_MIN / u;
        let x = rng.gen::<f64>() - 0.5;
        if x * x + y * y >= 1.0 {
            return LatticeSample { tau_x: x, tau_y: y };
        }
    }
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Lagrange (Gauss) reduction: `|b₀| ≤ |b₁|` and `|⟨b₀, b₁⟩| ≤ |b₀|²/2`.
pub fn lagrange_reduce(b: Basis) -> Basis {
    let (mut u, mut v) = (b[0], b[1]);
    if dot(u, u) > dot(v, v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let mu = (dot(u, v) / dot(u, u)).round();
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
        if dot(v, v) >= dot(u, u) {
            return [u, v];
        }
        std::mem::swap(&mut u, &mut v);
    }
}

/// Relative slack on `|v|² ≤ L²`, so vectors exactly on the circle count.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Nonzero (or primitive) vectors of length at most `radius` in the lattice
/// spanned by `b`.
///
/// After reduction, `|m·b₀ + n·b₁| ≥ (√3/2)·max(|m|·|b₀|, |n|·|b₁|)`, so the
/// coefficient box `|m| ≤ 2L/(√3|b₀|)`, `|n| ≤ 2L/(√3|b₁|)` is complete.
/// For each `n` only the `m` interval cut out by the circle is visited.
pub fn count_vectors_in_basis(b: &Basis, radius: f64, primitive_only: bool) -> u64 {
    assert!(radius > 0.0, "radius must be positive");
    let [u, v] = lagrange_reduce(*b);
    let r2 = radius * radius * (1.0 + BOUNDARY_SLACK);
    let uu = dot(u, u);
    let n_max = (2.0 * radius / (3f64.sqrt() * dot(v, v).sqrt())).ceil() as i64;
    let m_max = (2.0 * radius / (3f64.sqrt() * uu.sqrt())).ceil() as i64;
    let mut count = 0u64;
    for n in -n_max..=n_max {
        let w = [n as f64 * v[0], n as f64 * v[1]];
        // |m·u + w|² ≤ r² is a quadratic in m centred at −⟨u,w⟩/|u|².
        let centre = -dot(u, w) / uu;
        let disc = (r2 - dot(w, w)) / uu + centre * centre;
        if disc < 0.0 {
            continue;
        }
        let half = disc.sqrt();
        let lo = ((centre - half).floor() as i64 - 1).max(-m_max);
        let hi = ((centre + half).ceil() as i64 + 1).min(m_max);
        for m in lo..=hi {
            if m == 0 && n == 0 {
                continue;
            }
            let x = [m as f64 * u[0] + w[0], m as f64 * u[1] + w[1]];
            if dot(x, x) <= r2 && (!primitive_only || m.gcd(&n) == 1) {
                count += 1;
            }
        }
    }
    count
}

pub fn count_vectors(s: &LatticeSample, radius: f64, primitive_only: bool) -> u64 {
    count_vectors_in_basis(&s.basis(), radius, primitive_only)
}

/// Result of one Monte Carlo run.
#[derive(Debug, Clone, Serialize)]
pub struct SiegelReport {
    pub samples: u64,
    pub radius: f64,
    pub seed: u64,
    pub primitive: bool,
    pub estimate: f64,
    /// `πL²`, or `πL²/ζ(2)` for primitive vectors.
    pub target: f64,
    pub ratio: f64,
    pub standard_error: f64,
    pub z_score: f64,
    /// Samples without any vector in the ball.
    pub zero_counts: u64,
    pub wall_time_s: f64,
}

/// Samples per independent random stream.
const CHUNK: u64 = 1024;

/// Mean lattice-vector count over `samples` random lattices.
///
/// Chunk `k` draws from stream `k` of a ChaCha generator keyed by `seed`, so
/// the result does not depend on the number of threads. Counts are summed
/// as integers, which makes the reduction order irrelevant.
pub fn siegel_average(samples: u64, radius: f64, seed: u64, primitive_only: bool) -> Result<SiegelReport> {
    if samples < 100 {
        return Err(Error::Precondition("at least 100 samples are required".into()));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    let start = Instant::now();
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(u128, u128, u64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let n = CHUNK.min(samples - k * CHUNK);
            let (mut s1, mut s2, mut zeros) = (0u128, 0u128, 0u64);
            for _ in 0..n {
                let c = count_vectors(&sample_lattice(&mut rng), radius, primitive_only) as u128;
                s1 += c;
                s2 += c * c;
                zeros += (c == 0) as u64;
            }
            (s1, s2, zeros)
        })
        .collect();
    let (s1, s2, zero_counts) =
        partial.iter().fold((0u128, 0u128, 0u64), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let n = samples as f64;
    let mean = s1 as f64 / n;
    let var = (s2 as f64 - n * mean * mean) / (n - 1.0);
    let standard_error = (var.max(0.0) / n).sqrt();
    let mut target = std::f64::consts::PI * radius * radius;
    if primitive_only {
        target /= zeta(2.0);
    }
    Ok(SiegelReport {
        samples,
        radius,
        seed,
        primitive: primitive_only,
        estimate: mean,
        target,
        ratio: mean / target,
        standard_error,
        z_score: (mean - target) / standard_error,
        zero_counts,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
