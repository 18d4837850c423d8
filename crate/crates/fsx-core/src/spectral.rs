//! Unitary DFT, the smooth dyadic partition of unity, and Fourier
//! multipliers.
//!
//! Frequencies are indexed by integer bins `k` in `[-N/2, N/2)` per axis
//! (FFT storage order: index `< N/2` is bin `k = index`, otherwise
//! `k = index - N`). All multiplier tables are functions of the bin radius
//! `|k|`; nothing here depends on the physical half-width of the spatial
//! domain.
//!
//! The cutoff profile is built from `t -> exp(-1/t)`: it vanishes
//! identically for `t <= 0`, so plateau values of the transition are exactly
//! `0.0` and `1.0` in floating point. Block multipliers therefore vanish
//! exactly outside their dyadic band and the telescoping identities below
//! hold to rounding of a few exact terms, not to "smooth cutoff" accuracy.

use std::sync::Mutex;

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::FftPlanner;

use crate::lattice::{Grid, SampledFunction};
use crate::{par, CoreError, Result};

static PLANNER: Lazy<Mutex<FftPlanner<f64>>> = Lazy::new(|| Mutex::new(FftPlanner::new()));

fn plan(n: usize, forward: bool) -> std::sync::Arc<dyn rustfft::Fft<f64>> {
    let mut planner = PLANNER.lock().unwrap();
    if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    }
}

/// Signed frequency bin of a storage index along one axis.
#[inline]
pub fn bin_of_index(n: usize, i: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Storage index of a signed frequency bin.
#[inline]
pub fn index_of_bin(n: usize, k: i64) -> usize {
    debug_assert!(-((n / 2) as i64) <= k && k < (n / 2) as i64);
    k.rem_euclid(n as i64) as usize
}

/// Signed bins of a row-major cell index, per axis.
#[inline]
pub fn bins(grid: &Grid, idx: usize) -> [i64; 2] {
    let n = grid.samples_per_dim();
    let ax = grid.axis_indices(idx);
    match grid.dim() {
        1 => [bin_of_index(n, ax[0]), 0],
        _ => [bin_of_index(n, ax[0]), bin_of_index(n, ax[1])],
    }
}

/// Euclidean bin radius `|k|` of a cell index (exact squares, exact sum).
#[inline]
pub fn bin_radius(grid: &Grid, idx: usize) -> f64 {
    let b = bins(grid, idx);
    (((b[0] * b[0]) + (b[1] * b[1])) as f64).sqrt()
}

fn transform(values: &mut Vec<Complex64>, grid: &Grid, forward: bool) {
    let n = grid.samples_per_dim();
    let fft = plan(n, forward);
    par::for_each_chunk_mut(values, n, |row| fft.process(row));
    if grid.dim() == 2 {
        transpose_square(values, n);
        par::for_each_chunk_mut(values, n, |row| fft.process(row));
        transpose_square(values, n);
    }
    let scale = (n as f64).powi(grid.dim() as i32).sqrt().recip();
    for v in values.iter_mut() {
        *v *= scale;
    }
}

fn transpose_square(values: &mut Vec<Complex64>, n: usize) {
    let out = par::map_range(values.len(), |idx| values[(idx % n) * n + idx / n]);
    *values = out;
}

/// Unitary forward DFT (scale `N^{-dim/2}`).
pub fn dft(f: &SampledFunction) -> SampledFunction {
    let grid = f.grid();
    let mut values = f.values().to_vec();
    transform(&mut values, &grid, true);
    SampledFunction::from_parts(grid, values)
}

/// Unitary inverse DFT.
pub fn idft(f: &SampledFunction) -> SampledFunction {
    let grid = f.grid();
    let mut values = f.values().to_vec();
    transform(&mut values, &grid, false);
    SampledFunction::from_parts(grid, values)
}

// ---------------------------------------------------------------------------
// Smooth dyadic partition of unity
// ---------------------------------------------------------------------------

/// `exp(-1/t)` continued by zero: identically `0.0` for `t <= 0`.
#[inline]
fn mollifier(t: f64) -> f64 {
    if t > 0.0 {
        (-t.recip()).exp()
    } else {
        0.0
    }
}

/// Smooth transition: exactly 0 for `t <= 0`, exactly 1 for `t >= 1`,
/// strictly increasing in between.
#[inline]
pub fn smooth_step(t: f64) -> f64 {
    let a = mollifier(t);
    let b = mollifier(1.0 - t);
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

/// Radial low-pass profile: exactly 1 for `r <= 1`, exactly 0 for
/// `r >= 3/2`, smooth in between.
#[inline]
pub fn lowpass_profile(r: f64) -> f64 {
    smooth_step(3.0 - 2.0 * r)
}

/// The dyadic block system on a grid's frequency lattice.
///
/// Block `j` carries the shell `|k| ~ 2^j`. Inhomogeneous indices run over
/// `0 ..= j_max` with block 0 the low-pass; homogeneous indices extend
/// downward, but on the integer bin lattice every block with `j < 0`
/// vanishes identically (the shell `[2^{j-1}, 3·2^{j-1}]` contains no
/// nonzero integer bin and the two low-pass profiles agree at `k = 0`), so
/// `j_min_hom` is informational and evaluation may skip negative indices.
#[derive(Clone, Copy, Debug)]
pub struct DyadicSystem {
    grid: Grid,
    j_max: i32,
    j_min_hom: i32,
}

impl DyadicSystem {
    pub fn new(grid: Grid) -> Self {
        let j_max = grid.log2_samples() as i32 - 2;
        DyadicSystem {
            grid,
            j_max,
            j_min_hom: -grid.halfwidth_log2(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Largest block index resolved by the lattice: `log2(N/2) - 1`.
    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    /// Lowest homogeneous index the spatial domain can distinguish.
    pub fn j_min_hom(&self) -> i32 {
        self.j_min_hom
    }

    /// Block indices that are nonzero on the integer bin lattice.
    pub fn effective_blocks(&self, homogeneous: bool) -> std::ops::RangeInclusive<i32> {
        let lo = if homogeneous { self.j_min_hom.max(0) } else { 0 };
        lo..=self.j_max
    }

    /// Multiplier value of block `j` at bin radius `r`.
    ///
    /// Inhomogeneous block 0 is the plain low-pass; every other block (and
    /// every homogeneous block) is the difference of two dilated low-passes.
    pub fn block_multiplier_at(&self, j: i32, homogeneous: bool, r: f64) -> f64 {
        if !homogeneous && j == 0 {
            lowpass_profile(r)
        } else {
            lowpass_profile(r * f64::exp2(-j as f64)) - lowpass_profile(r * f64::exp2((1 - j) as f64))
        }
    }

    fn check_block_index(&self, j: i32, homogeneous: bool) -> Result<()> {
        let lo = if homogeneous { self.j_min_hom } else { 0 };
        if j < lo || j > self.j_max {
            return Err(CoreError::Range(format!(
                "block index {j} outside [{lo}, {}]",
                self.j_max
            )));
        }
        Ok(())
    }

    /// Full multiplier table of block `j`, in FFT storage order.
    pub fn block_table(&self, j: i32, homogeneous: bool) -> Result<Vec<f64>> {
        self.check_block_index(j, homogeneous)?;
        let grid = self.grid;
        Ok(par::map_range(grid.len(), |idx| {
            self.block_multiplier_at(j, homogeneous, bin_radius(&grid, idx))
        }))
    }

    /// Low-pass multiplier table at scale `2^J` (the sum of blocks through `J`).
    pub fn partial_sum_table(&self, j_cap: i32) -> Result<Vec<f64>> {
        if !(0..=self.j_max).contains(&j_cap) {
            return Err(CoreError::Range(format!(
                "partial-sum cap {j_cap} outside [0, {}]",
                self.j_max
            )));
        }
        let grid = self.grid;
        let scale = f64::exp2(-j_cap as f64);
        Ok(par::map_range(grid.len(), |idx| {
            lowpass_profile(bin_radius(&grid, idx) * scale)
        }))
    }
}

// ---------------------------------------------------------------------------
// Multiplier application
// ---------------------------------------------------------------------------

/// Apply a real multiplier table (FFT storage order) to the spectrum of `f`.
pub fn apply_real_multiplier(f: &SampledFunction, table: &[f64]) -> SampledFunction {
    let mut spec = dft(f);
    for (v, m) in spec.values_mut().iter_mut().zip(table) {
        *v *= *m;
    }
    idft(&spec)
}

/// Apply a multiplier given as a function of the signed bins.
pub fn apply_bin_multiplier<F>(f: &SampledFunction, m: F) -> SampledFunction
where
    F: Fn([i64; 2]) -> Complex64 + Sync + Send,
{
    let grid = f.grid();
    let spec = dft(f);
    let values = par::map_range(grid.len(), |idx| spec.values()[idx] * m(bins(&grid, idx)));
    idft(&SampledFunction::from_parts(grid, values))
}

/// Dyadic frequency block `j` of `f`.
pub fn lp_block(sys: &DyadicSystem, f: &SampledFunction, j: i32, homogeneous: bool) -> Result<SampledFunction> {
    let table = sys.block_table(j, homogeneous)?;
    Ok(apply_real_multiplier(f, &table))
}

/// Low-pass piece of `f` through block `j_cap` (single smooth cutoff, not a
/// literal block sum — the two agree exactly by telescoping).
pub fn partial_sum(sys: &DyadicSystem, f: &SampledFunction, j_cap: i32) -> Result<SampledFunction> {
    let table = sys.partial_sum_table(j_cap)?;
    Ok(apply_real_multiplier(f, &table))
}

/// Smoothing multiplier `(1 + |k|^2)^{s/2}`.
pub fn bessel(f: &SampledFunction, s: f64) -> SampledFunction {
    apply_bin_multiplier(f, |b| {
        let r2 = (b[0] * b[0] + b[1] * b[1]) as f64;
        Complex64::new((1.0 + r2).powf(s / 2.0), 0.0)
    })
}

/// Relative mean-mass threshold below which the `|k|^s, s < 0` multiplier
/// treats the zero bin as empty.
pub const RIESZ_DC_RTOL: f64 = 1e-12;

/// Homogeneous multiplier `|k|^s`, zero bin annihilated.
///
/// For `s < 0` the zero bin must carry no mass (relative to the `l^2` mass
/// of the spectrum); otherwise the operation is singular and fails.
pub fn riesz(f: &SampledFunction, s: f64) -> Result<SampledFunction> {
    if s == 0.0 {
        return Ok(f.clone());
    }
    let spec = dft(f);
    if s < 0.0 {
        let total = spec.values().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let dc = spec.values()[0].norm();
        if dc > RIESZ_DC_RTOL * total {
            return Err(CoreError::SingularMultiplier(format!(
                "|k|^{s} with nonzero mean: |spectrum(0)| = {dc:.3e} vs {total:.3e} total"
            )));
        }
    }
    let grid = f.grid();
    let values = par::map_range(grid.len(), |idx| {
        let r2 = {
            let b = bins(&grid, idx);
            (b[0] * b[0] + b[1] * b[1]) as f64
        };
        if r2 == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            spec.values()[idx] * r2.powf(s / 2.0)
        }
    });
    Ok(idft(&SampledFunction::from_parts(grid, values)))
}

/// Spectral partial derivative of multi-index `beta`: multiplier
/// `prod_axis (i * k_axis)^{beta_axis}` in integer-bin units.
pub fn derivative(f: &SampledFunction, beta: &[u32]) -> Result<SampledFunction> {
    let grid = f.grid();
    if beta.len() != grid.dim() {
        return Err(CoreError::Parameter(format!(
            "expected {} derivative orders, got {}",
            grid.dim(),
            beta.len()
        )));
    }
    let beta = [beta[0], if grid.dim() == 2 { beta[1] } else { 0 }];
    Ok(apply_bin_multiplier(f, move |b| {
        let mut m = Complex64::new(1.0, 0.0);
        for a in 0..2 {
            for _ in 0..beta[a] {
                m *= Complex64::new(0.0, b[a] as f64);
            }
        }
        m
    }))
}

/// All multi-indices of total order `<= m` in `dim` variables, in
/// deterministic (graded lexicographic) order.
pub fn multi_indices(dim: usize, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=m {
        match dim {
            1 => out.push(vec![total]),
            _ => {
                for first in (0..=total).rev() {
                    out.push(vec![first, total - first]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Grid;

    fn rel_l2(a: &SampledFunction, b: &SampledFunction) -> f64 {
        a.sub(b).unwrap().l2_norm() / b.l2_norm()
    }

    #[test]
    fn smooth_step_plateaus_are_exact() {
        assert_eq!(smooth_step(0.0), 0.0);
        assert_eq!(smooth_step(-3.5), 0.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert_eq!(smooth_step(7.0), 1.0);
        let mid = smooth_step(0.5);
        assert!((mid - 0.5).abs() < 1e-15);
        assert!(smooth_step(0.3) > 0.0 && smooth_step(0.3) < smooth_step(0.7));
    }

    #[test]
    fn lowpass_profile_plateaus() {
        assert_eq!(lowpass_profile(0.0), 1.0);
        assert_eq!(lowpass_profile(1.0), 1.0);
        assert_eq!(lowpass_profile(1.5), 0.0);
        assert_eq!(lowpass_profile(8.0), 0.0);
        let v = lowpass_profile(1.25);
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn dft_round_trip() {
        for dim in [1usize, 2] {
            let grid = if dim == 1 {
                Grid::new(1, 4, 256).unwrap()
            } else {
                Grid::new(2, 3, 64).unwrap()
            };
            let f = SampledFunction::from_fn(grid, |x| {
                Complex64::new((-(x[0] * x[0])).exp(), (x[0] * 0.7).sin())
            });
            let back = idft(&dft(&f));
            assert!(rel_l2(&back, &f) < 1e-13, "dim {dim}");
        }
    }

    #[test]
    fn dft_is_unitary_on_constants() {
        let grid = Grid::new(1, 2, 64).unwrap();
        let ones = SampledFunction::from_real_fn(grid, |_| 1.0);
        let spec = dft(&ones);
        assert!((spec.values()[0].re - 8.0).abs() < 1e-12);
        let off: f64 = spec.values()[1..].iter().map(|v| v.norm()).sum();
        assert!(off < 1e-12);
    }

    #[test]
    fn gaussian_spectrum_matches_analytic_transform() {
        // f(x) = exp(-x^2/2) has continuous transform sqrt(2π)·exp(-ξ^2/2);
        // on the lattice, bin k sits at ξ = πk/2^K and the DFT picks up a
        // factor e^{-iπk}/(spacing·sqrt(N)) from the sample positions.
        let grid = Grid::new(1, 4, 4096).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-x[0] * x[0] / 2.0).exp());
        let spec = dft(&f);
        let n = grid.samples_per_dim();
        let scale = (2.0 * std::f64::consts::PI).sqrt() / (grid.spacing() * (n as f64).sqrt());
        let mut num = 0.0;
        let mut den = 0.0;
        for idx in 0..n {
            let k = bin_of_index(n, idx) as f64;
            let xi = std::f64::consts::PI * k / 16.0;
            let expect = scale * (-xi * xi / 2.0).exp();
            num += (spec.values()[idx].norm() - expect).powi(2);
            den += expect * expect;
        }
        assert!((num / den).sqrt() < 1e-10);
    }

    #[test]
    fn block_tables_partition_unity_exactly() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let sys = DyadicSystem::new(grid);
        assert_eq!(sys.j_max(), 5);
        let mut total = vec![0.0f64; grid.len()];
        for j in 0..=sys.j_max() {
            for (t, b) in total.iter_mut().zip(sys.block_table(j, false).unwrap()) {
                *t += b;
            }
        }
        // Telescoping collapses to the outermost low-pass, which is exactly 1
        // on every resolved bin |k| <= 2^{j_max} = N/4 and dips only in the
        // unresolved corner band.
        for idx in 0..grid.len() {
            let r = bin_radius(&grid, idx);
            if r <= f64::exp2(sys.j_max() as f64) {
                assert!((total[idx] - 1.0).abs() <= 1e-12, "bin radius {r}");
            } else {
                assert!(total[idx] <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn homogeneous_blocks_match_inhomogeneous_for_positive_j() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let sys = DyadicSystem::new(grid);
        for j in 1..=sys.j_max() {
            let hom = sys.block_table(j, true).unwrap();
            let inhom = sys.block_table(j, false).unwrap();
            assert_eq!(hom, inhom, "block {j}");
        }
    }

    #[test]
    fn negative_homogeneous_blocks_vanish_on_the_bin_lattice() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let sys = DyadicSystem::new(grid);
        for j in sys.j_min_hom()..0 {
            let table = sys.block_table(j, true).unwrap();
            assert!(table.iter().all(|&v| v == 0.0), "block {j}");
        }
    }

    #[test]
    fn block_support_is_the_dyadic_shell() {
        let grid = Grid::new(1, 4, 4096).unwrap();
        let sys = DyadicSystem::new(grid);
        for j in [1, 4, sys.j_max()] {
            let table = sys.block_table(j, false).unwrap();
            for idx in 0..grid.len() {
                let r = bin_radius(&grid, idx);
                let lo = f64::exp2((j - 1) as f64);
                let hi = 3.0 * f64::exp2((j - 1) as f64);
                if r < lo || r > hi {
                    assert_eq!(table[idx], 0.0, "j={j}, |k|={r}");
                }
            }
        }
    }

    #[test]
    fn partial_sum_equals_block_sum() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let sys = DyadicSystem::new(grid);
        let f = SampledFunction::from_fn(grid, |x| Complex64::new((x[0] * 1.3).cos(), 0.1 * x[0]));
        let j_cap = 3;
        let ps = partial_sum(&sys, &f, j_cap).unwrap();
        let mut acc = SampledFunction::zeros(grid);
        for j in 0..=j_cap {
            acc = acc.add(&lp_block(&sys, &f, j, false).unwrap()).unwrap();
        }
        assert!(rel_l2(&acc, &ps) < 1e-12);
    }

    #[test]
    fn bessel_acts_diagonally_on_single_bins() {
        let grid = Grid::new(1, 2, 64).unwrap();
        let n = grid.samples_per_dim();
        // Exact lattice harmonic on bin 5.
        let f = SampledFunction::from_fn(grid, |_| Complex64::new(0.0, 0.0));
        let mut vals = f.values().to_vec();
        for (i, v) in vals.iter_mut().enumerate() {
            let ph = 2.0 * std::f64::consts::PI * 5.0 * i as f64 / n as f64;
            *v = Complex64::new(ph.cos(), ph.sin());
        }
        let f = SampledFunction::new(grid, vals).unwrap();
        let s = -1.3;
        let out = bessel(&f, s);
        let expect = f.scaled(Complex64::new((1.0f64 + 25.0).powf(s / 2.0), 0.0));
        assert!(rel_l2(&out, &expect) < 1e-12);
    }

    #[test]
    fn bessel_inverse_composes_to_identity() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-(x[0] * x[0])).exp() * (1.0 + x[0]));
        let round = bessel(&bessel(&f, 0.8), -0.8);
        assert!(rel_l2(&round, &f) < 1e-11);
    }

    #[test]
    fn riesz_semigroup_away_from_dc() {
        let grid = Grid::new(1, 3, 128).unwrap();
        // Mean-free: odd function.
        let f = SampledFunction::from_real_fn(grid, |x| x[0] * (-(x[0] * x[0])).exp());
        let two_step = riesz(&riesz(&f, 0.7).unwrap(), 0.6).unwrap();
        let one_step = riesz(&f, 1.3).unwrap();
        assert!(rel_l2(&two_step, &one_step) < 1e-10);
    }

    #[test]
    fn riesz_rejects_negative_order_with_mean() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-(x[0] * x[0])).exp());
        assert!(matches!(
            riesz(&f, -0.5),
            Err(CoreError::SingularMultiplier(_))
        ));
        assert!(riesz(&f, 0.5).is_ok());
    }

    #[test]
    fn multipliers_commute() {
        let grid = Grid::new(1, 3, 128).unwrap();
        let sys = DyadicSystem::new(grid);
        let f = SampledFunction::from_real_fn(grid, |x| x[0] * (-(x[0] * x[0])).exp());
        let a = riesz(&bessel(&lp_block(&sys, &f, 2, false).unwrap(), 0.4), 0.9).unwrap();
        let b = lp_block(&sys, &riesz(&bessel(&f, 0.4), 0.9).unwrap(), 2, false).unwrap();
        let denom = a.l2_norm().max(b.l2_norm());
        assert!(a.sub(&b).unwrap().l2_norm() / denom < 1e-11);
    }

    #[test]
    fn derivative_multiplier_on_a_harmonic() {
        let grid = Grid::new(2, 2, 32).unwrap();
        let n = grid.samples_per_dim();
        let (k0, k1) = (3.0, -2.0);
        let f = SampledFunction::from_parts(
            grid,
            par::map_range(grid.len(), |idx| {
                let ax = grid.axis_indices(idx);
                let ph = 2.0 * std::f64::consts::PI * (k0 * ax[0] as f64 + k1 * ax[1] as f64)
                    / n as f64;
                Complex64::new(ph.cos(), ph.sin())
            }),
        );
        let d = derivative(&f, &[1, 2]).unwrap();
        let factor = Complex64::new(0.0, k0) * Complex64::new(0.0, k1) * Complex64::new(0.0, k1);
        assert!(rel_l2(&d, &f.scaled(factor)) < 1e-12);
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(1, 2), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            multi_indices(2, 2),
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }
}
