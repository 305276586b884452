//! Twin-slit Monte Carlo: a first event drawn from |ψ|² on a depth slice,
//! a slit family chosen from the single-slit intensities at that event,
//! and the straight ray from that slit through the event carried to the
//! final surface.
//!
//! Coordinates: `z` is the depth from the slit plane (0 < z ≤ L) and `y` the
//! transverse position. The detector region D is the trapezoid
//! `|y| ≤ h(z) = s + (H − s)·z/L` where `s` is the largest slit offset and
//! `H` the half-width of the final surface.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

/// Cells of the inverse-CDF grid on each slice.
pub const GRID_CELLS: usize = 8192;

/// Below this many trials the visibility estimate is flagged as unstable.
pub const MIN_STABLE_TRIALS: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("point (z = {z}, y = {y}) lies outside the detector region")]
    OutsideRegion { z: f64, y: f64 },
    #[error("depth {0} is outside the allowed range")]
    Depth(f64),
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("density vanishes on the whole slice")]
    ZeroDensity,
    #[error("event coincides with slit {0}")]
    AtSlit(usize),
    #[error("bin count must be at least 1")]
    Bins,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwinSlitGeometry {
    slits: [f64; 2],
    length: f64,
    k: f64,
    half_width: f64,
    mask: Option<usize>,
}

impl TwinSlitGeometry {
    pub fn new(slits: [f64; 2], length: f64, k: f64, half_width: f64) -> Result<Self, SamplerError> {
        let finite = slits.iter().chain([&length, &k, &half_width]).all(|v| v.is_finite());
        if !finite {
            return Err(SamplerError::Geometry("non-finite parameter".into()));
        }
        if length <= 0.0 || k <= 0.0 {
            return Err(SamplerError::Geometry("L and k must be positive".into()));
        }
        if slits[0] == slits[1] {
            return Err(SamplerError::Geometry("slits must be distinct".into()));
        }
        let smax = slits[0].abs().max(slits[1].abs());
        if half_width <= smax {
            return Err(SamplerError::Geometry("final surface must be wider than the slit pair".into()));
        }
        Ok(Self {
            slits,
            length,
            k,
            half_width,
            mask: None,
        })
    }

    /// λ = 1, slits at ±5, L = 3800 (so d² = λL/38), final half-width two
    /// fringe periods.
    pub fn standard() -> Self {
        let (d, length, k) = (10.0, 3800.0, 2.0 * PI);
        let period = fringe_period_for(d, length, k);
        Self::new([-d / 2.0, d / 2.0], length, k, 2.0 * period).expect("standard geometry is valid")
    }

    /// Same geometry with slit `j` closed.
    pub fn masked(mut self, closed: usize) -> Self {
        self.mask = Some(closed);
        self
    }

    pub fn slits(&self) -> [f64; 2] {
        self.slits
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn open_slits(&self) -> Vec<usize> {
        (0..2).filter(|&j| self.mask != Some(j)).collect()
    }

    /// Fringe spacing at the centre of the final surface.
    pub fn fringe_period(&self) -> f64 {
        fringe_period_for((self.slits[1] - self.slits[0]).abs(), self.length, self.k)
    }

    /// Transverse half-width of D at depth `z`.
    pub fn slice_half_width(&self, z: f64) -> f64 {
        let s = self.slits[0].abs().max(self.slits[1].abs());
        s + (self.half_width - s) * z / self.length
    }

    pub fn contains(&self, z: f64, y: f64) -> bool {
        z > 0.0 && z <= self.length && y.abs() <= self.slice_half_width(z)
    }

    fn check_depth(&self, z: f64) -> Result<(), SamplerError> {
        if z > 0.0 && z <= self.length && z.is_finite() {
            Ok(())
        } else {
            Err(SamplerError::Depth(z))
        }
    }

    fn distance(&self, j: usize, z: f64, y: f64) -> f64 {
        (y - self.slits[j]).hypot(z)
    }

    /// `Σ_j e^{i k r_j}` over the open slits, without normalization.
    fn raw_amplitude(&self, z: f64, y: f64) -> Complex64 {
        self.open_slits()
            .into_iter()
            .map(|j| Complex64::from_polar(1.0, self.k * self.distance(j, z, y)))
            .sum()
    }

    /// `∫ |Σ_j e^{ikr_j}|² dy` across the slice, midpoint rule on a fine grid.
    fn slice_norm(&self, z: f64) -> f64 {
        let h = self.slice_half_width(z);
        let n = 4 * GRID_CELLS;
        let w = 2.0 * h / n as f64;
        (0..n)
            .map(|i| self.raw_amplitude(z, -h + (i as f64 + 0.5) * w).norm_sqr() * w)
            .sum()
    }
}

fn fringe_period_for(d: f64, length: f64, k: f64) -> f64 {
    let lambda = 2.0 * PI / k;
    lambda * (length * length + d * d / 4.0).sqrt() / d
}

/// `ψ = A(e^{ikr₁} + e^{ikr₂})` with `A` normalizing `∫|ψ|²` over the
/// point's depth slice to 1.
pub fn amplitude_at(geom: &TwinSlitGeometry, z: f64, y: f64) -> Result<Complex64, SamplerError> {
    if !geom.contains(z, y) {
        return Err(SamplerError::OutsideRegion { z, y });
    }
    let norm = geom.slice_norm(z);
    Ok(geom.raw_amplitude(z, y) / norm.sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordinal {
    First,
    Subsequent,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationalEvent {
    pub z: f64,
    pub y: f64,
    pub trial: u64,
    pub ordinal: Ordinal,
    /// Slit index of the trajectory family, once assigned.
    pub family: Option<usize>,
}

/// Inverse-CDF table of `|ψ|²` on one slice.
struct SliceSampler {
    z: f64,
    y0: f64,
    cell: f64,
    cdf: Vec<f64>,
}

impl SliceSampler {
    fn new(geom: &TwinSlitGeometry, z: f64) -> Result<Self, SamplerError> {
        let h = geom.slice_half_width(z);
        let cell = 2.0 * h / GRID_CELLS as f64;
        let mut cdf = Vec::with_capacity(GRID_CELLS);
        let mut acc = 0.0;
        for i in 0..GRID_CELLS {
            acc += geom.raw_amplitude(z, -h + (i as f64 + 0.5) * cell).norm_sqr();
            cdf.push(acc);
        }
        if acc <= 0.0 {
            return Err(SamplerError::ZeroDensity);
        }
        cdf.iter_mut().for_each(|c| *c /= acc);
        Ok(Self { z, y0: -h, cell, cdf })
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let i = self.cdf.partition_point(|&c| c < u).min(GRID_CELLS - 1);
        self.y0 + (i as f64 + rng.random::<f64>()) * self.cell
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `count` first events on the slice at depth `z`; event `i` uses PRNG
/// stream `i`, so the result does not depend on scheduling.
pub fn sample_first_events(
    geom: &TwinSlitGeometry,
    z: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<RelationalEvent>, SamplerError> {
    geom.check_depth(z)?;
    if count == 0 {
        return Err(SamplerError::EmptyCount);
    }
    let sampler = SliceSampler::new(geom, z)?;
    Ok((0..count as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            RelationalEvent {
                z: sampler.z,
                y: sampler.draw(&mut rng),
                trial,
                ordinal: Ordinal::First,
                family: None,
            }
        })
        .collect())
}

/// Single-slit weights `(1/r_j) / Σ 1/r_i` at a point (intensity of a
/// 2-D point source falls as 1/r).
pub fn family_probabilities(geom: &TwinSlitGeometry, z: f64, y: f64) -> Result<[f64; 2], SamplerError> {
    let mut w = [0.0; 2];
    for j in geom.open_slits() {
        let r = geom.distance(j, z, y);
        if r == 0.0 {
            return Err(SamplerError::AtSlit(j));
        }
        w[j] = 1.0 / r;
    }
    let total = w[0] + w[1];
    Ok([w[0] / total, w[1] / total])
}

/// Member of a slit's ray fan: the straight line from slit `slit`
/// through a first event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trajectory {
    pub slit: usize,
    origin: f64,
    slope: f64,
}

impl Trajectory {
    pub fn through(geom: &TwinSlitGeometry, slit: usize, z: f64, y: f64) -> Self {
        let origin = geom.slits[slit];
        Self {
            slit,
            origin,
            slope: (y - origin) / z,
        }
    }

    /// Transverse position at depth `z`.
    pub fn y_at(&self, z: f64) -> f64 {
        self.origin + self.slope * z
    }
}

/// Where the ray from slit `family` through `(z, y)` meets the final surface.
pub fn extend_to_final(geom: &TwinSlitGeometry, family: usize, z: f64, y: f64) -> f64 {
    Trajectory::through(geom, family, z, y).y_at(geom.length)
}

/// Draws the family for `first` and returns it with the terminating event.
pub fn assign_family_and_extend<R: Rng>(
    geom: &TwinSlitGeometry,
    first: &RelationalEvent,
    rng: &mut R,
) -> Result<(usize, RelationalEvent), SamplerError> {
    if !geom.contains(first.z, first.y) {
        return Err(SamplerError::OutsideRegion { z: first.z, y: first.y });
    }
    let p = family_probabilities(geom, first.z, first.y)?;
    let family = if rng.random::<f64>() < p[0] { 0 } else { 1 };
    let end = RelationalEvent {
        z: geom.length,
        y: extend_to_final(geom, family, first.z, first.y),
        trial: first.trial,
        ordinal: Ordinal::Subsequent,
        family: Some(family),
    };
    Ok((family, end))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionResult {
    pub depth: f64,
    pub trials: usize,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub visibility: f64,
    /// Terminating events outside the final surface's extent.
    pub outside: u64,
    pub warning: Option<String>,
}

/// Default bin count: bins one tenth of a fringe period wide.
pub fn default_bins(geom: &TwinSlitGeometry) -> usize {
    (2.0 * geom.half_width / (geom.fringe_period() / 10.0)).round() as usize
}

/// `(max − min)/(max + min)` over bins whose centres lie within one
/// fringe period of the axis.
pub fn visibility(edges: &[f64], counts: &[u64], period: f64) -> f64 {
    let central: Vec<u64> = counts
        .iter()
        .enumerate()
        .filter(|(i, _)| (0.5 * (edges[*i] + edges[*i + 1])).abs() <= period)
        .map(|(_, &c)| c)
        .collect();
    let (Some(&max), Some(&min)) = (central.iter().max(), central.iter().min()) else {
        return 0.0;
    };
    if max + min == 0 {
        0.0
    } else {
        (max - min) as f64 / (max + min) as f64
    }
}

fn check_fraction(depth_fraction: f64) -> Result<(), SamplerError> {
    if depth_fraction > 0.0 && depth_fraction < 1.0 {
        Ok(())
    } else {
        Err(SamplerError::Depth(depth_fraction))
    }
}

/// First and terminating event of every trial, in trial order. Trial `t`
/// uses PRNG stream `t`; a draw that lands on a slit is redrawn.
pub fn run_trials(
    geom: &TwinSlitGeometry,
    depth_fraction: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<(RelationalEvent, RelationalEvent)>, SamplerError> {
    check_fraction(depth_fraction)?;
    if trials == 0 {
        return Err(SamplerError::EmptyCount);
    }
    let z = depth_fraction * geom.length;
    let sampler = SliceSampler::new(geom, z)?;
    (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            loop {
                let mut first = RelationalEvent {
                    z,
                    y: sampler.draw(&mut rng),
                    trial,
                    ordinal: Ordinal::First,
                    family: None,
                };
                match assign_family_and_extend(geom, &first, &mut rng) {
                    Ok((family, end)) => {
                        first.family = Some(family);
                        return Ok((first, end));
                    }
                    Err(SamplerError::AtSlit(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
        })
        .collect()
}

/// Runs `trials` first-event/extension trials with first events at depth
/// `depth_fraction · L` (strictly between the slits and the final surface)
/// and histograms the terminating events.
pub fn transition_experiment(
    geom: &TwinSlitGeometry,
    depth_fraction: f64,
    trials: usize,
    seed: u64,
    bins: Option<usize>,
) -> Result<TransitionResult, SamplerError> {
    check_fraction(depth_fraction)?;
    if trials == 0 {
        return Err(SamplerError::EmptyCount);
    }
    let bins = bins.unwrap_or_else(|| default_bins(geom));
    if bins == 0 {
        return Err(SamplerError::Bins);
    }
    let h = geom.half_width;
    let width = 2.0 * h / bins as f64;
    let bin_edges: Vec<f64> = (0..=bins).map(|i| -h + i as f64 * width).collect();
    let terminal = run_trials(geom, depth_fraction, trials, seed)?;

    let mut counts = vec![0u64; bins];
    let mut outside = 0;
    for (_, end) in terminal {
        let y = end.y;
        let b = ((y + h) / width).floor();
        if b >= 0.0 && (b as usize) < bins {
            counts[b as usize] += 1;
        } else {
            outside += 1;
        }
    }
    let warning = (trials < MIN_STABLE_TRIALS)
        .then(|| format!("{trials} trials: visibility estimate is unstable below {MIN_STABLE_TRIALS}"));
    Ok(TransitionResult {
        depth: depth_fraction,
        visibility: visibility(&bin_edges, &counts, geom.fringe_period()),
        trials,
        bin_edges,
        counts,
        outside,
        warning,
    })
}

/// Pearson χ² test of sampled first events against `|ψ|²` integrated
/// over `bins` equal-width bins of the slice. Returns `(statistic, p)`.
pub fn chi_square_first_events(
    geom: &TwinSlitGeometry,
    z: f64,
    events: &[RelationalEvent],
    bins: usize,
) -> Result<(f64, f64), SamplerError> {
    geom.check_depth(z)?;
    if bins < 2 {
        return Err(SamplerError::Bins);
    }
    let h = geom.slice_half_width(z);
    let width = 2.0 * h / bins as f64;
    let norm = geom.slice_norm(z);
    // Expected mass per bin from Simpson's rule on the analytic density.
    let sub = 64;
    let expected: Vec<f64> = (0..bins)
        .map(|b| {
            let a = -h + b as f64 * width;
            let dx = width / sub as f64;
            let f = |i: usize| geom.raw_amplitude(z, a + i as f64 * dx).norm_sqr();
            let inner: f64 = (1..sub).map(|i| if i % 2 == 1 { 4.0 * f(i) } else { 2.0 * f(i) }).sum();
            (f(0) + inner + f(sub)) * dx / 3.0 / norm
        })
        .collect();
    let mut observed = vec![0u64; bins];
    for e in events {
        let b = (((e.y + h) / width).floor() as isize).clamp(0, bins as isize - 1) as usize;
        observed[b] += 1;
    }
    let n = events.len() as f64;
    let mut stat = 0.0;
    let mut dof = 0usize;
    for (o, p) in observed.iter().zip(&expected) {
        let e = p * n;
        if e >= 5.0 {
            stat += (*o as f64 - e).powi(2) / e;
            dof += 1;
        }
    }
    let dist = ChiSquared::new(dof.saturating_sub(1).max(1) as f64).expect("positive degrees of freedom");
    Ok((stat, 1.0 - dist.cdf(stat)))
}
