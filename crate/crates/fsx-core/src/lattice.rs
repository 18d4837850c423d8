//! Periodic dyadic grids and exact lattice operations.
//!
//! A [`Grid`] samples the torus `[-2^K, 2^K)^n` (n = 1 or 2) at `N` points
//! per axis, `N` a power of two. Spacing and cell-center coordinates are
//! dyadic rationals of small magnitude, hence exact in `f64`; everything
//! here that claims exactness (annulus membership, dilation remaps,
//! translations) leans on that.

use num_complex::Complex64;

use crate::{par, CoreError, Result};

/// Sanity bound on `K`: coordinates up to `2^20` stay comfortably exact.
const MAX_HALFWIDTH_LOG2: i32 = 20;
/// Sanity bound on `log2 N` (axis size), so `N^dim` fits usize and per-cell
/// squared radii stay exact dyadics.
const MAX_LOG2_N: u32 = 20;

/// A periodic grid on `[-2^K, 2^K)^dim` with `N` samples per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    dim: u8,
    halfwidth_log2: i8,
    samples_per_dim: u32,
}

impl Grid {
    pub fn new(dim: usize, halfwidth_log2: i32, samples_per_dim: usize) -> Result<Grid> {
        if !(1..=2).contains(&dim) {
            return Err(CoreError::Grid(format!("dim must be 1 or 2, got {dim}")));
        }
        let n = samples_per_dim;
        if n < 16 || !n.is_power_of_two() || n > (1 << MAX_LOG2_N) {
            return Err(CoreError::Grid(format!(
                "samples per axis must be a power of two in [16, 2^{MAX_LOG2_N}], got {n}"
            )));
        }
        if halfwidth_log2.unsigned_abs() > MAX_HALFWIDTH_LOG2 as u32 {
            return Err(CoreError::Grid(format!(
                "|halfwidth_log2| must be <= {MAX_HALFWIDTH_LOG2}, got {halfwidth_log2}"
            )));
        }
        Ok(Grid {
            dim: dim as u8,
            halfwidth_log2: halfwidth_log2 as i8,
            samples_per_dim: n as u32,
        })
    }

    /// Default resolution per dimension: 1-d `K=4, N=4096`; 2-d `K=3, N=256`.
    pub fn default_for_dim(dim: usize) -> Result<Grid> {
        match dim {
            1 => Grid::new(1, 4, 4096),
            2 => Grid::new(2, 3, 256),
            _ => Err(CoreError::Grid(format!("dim must be 1 or 2, got {dim}"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// `K`: the domain is `[-2^K, 2^K)` per axis.
    pub fn halfwidth_log2(&self) -> i32 {
        self.halfwidth_log2 as i32
    }

    /// `N`: samples per axis.
    pub fn samples_per_dim(&self) -> usize {
        self.samples_per_dim as usize
    }

    /// log2 of the per-axis sample count.
    pub fn log2_samples(&self) -> u32 {
        self.samples_per_dim.trailing_zeros()
    }

    /// Total number of cells, `N^dim`.
    pub fn len(&self) -> usize {
        let n = self.samples_per_dim();
        match self.dim {
            1 => n,
            _ => n * n,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lattice spacing `2^{K+1}/N`, an exact power of two.
    pub fn spacing(&self) -> f64 {
        f64::exp2((self.halfwidth_log2() + 1 - self.log2_samples() as i32) as f64)
    }

    /// Cell volume `spacing^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Per-axis decomposition of a row-major cell index.
    #[inline]
    pub fn axis_indices(&self, idx: usize) -> [usize; 2] {
        let n = self.samples_per_dim();
        match self.dim {
            1 => [idx, 0],
            _ => [idx / n, idx % n],
        }
    }

    #[inline]
    pub fn flat_index(&self, axes: [usize; 2]) -> usize {
        match self.dim {
            1 => axes[0],
            _ => axes[0] * self.samples_per_dim() + axes[1],
        }
    }

    /// Signed per-axis index `i - N/2`, so coordinates are `centered * spacing`.
    #[inline]
    pub fn centered(&self, i: usize) -> i64 {
        i as i64 - (self.samples_per_dim() / 2) as i64
    }

    /// Coordinate of sample `i` along one axis: `-2^K + i * spacing` (exact).
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        self.centered(i) as f64 * self.spacing()
    }

    /// Cell-center coordinates; the second entry is 0 in one dimension.
    #[inline]
    pub fn coords(&self, idx: usize) -> [f64; 2] {
        let ax = self.axis_indices(idx);
        match self.dim {
            1 => [self.coord(ax[0]), 0.0],
            _ => [self.coord(ax[0]), self.coord(ax[1])],
        }
    }

    /// Squared Euclidean norm of the cell center (exact in `f64`).
    #[inline]
    pub fn radius_sq(&self, idx: usize) -> f64 {
        let c = self.coords(idx);
        c[0] * c[0] + c[1] * c[1]
    }

    /// Index of the origin cell (`x = 0`).
    pub fn origin_index(&self) -> usize {
        let h = self.samples_per_dim() / 2;
        self.flat_index([h, h * (self.dim as usize - 1)])
    }
}

/// A complex-valued sample vector over a [`Grid`], row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(CoreError::Grid(format!(
                "value vector has {} entries, grid has {} cells",
                values.len(),
                grid.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(CoreError::NonFinite(format!("cell {bad} holds {}", values[bad])));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        SampledFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Sample a closure at every cell center.
    pub fn from_fn<F>(grid: Grid, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Sync + Send,
    {
        let values = par::map_range(grid.len(), |idx| {
            let c = grid.coords(idx);
            f(&c[..grid.dim()])
        });
        SampledFunction { grid, values }
    }

    /// Real-valued variant of [`SampledFunction::from_fn`].
    pub fn from_real_fn<F>(grid: Grid, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Sync + Send,
    {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub(crate) fn from_parts(grid: Grid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        SampledFunction { grid, values }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    /// Quadrature `L^2` norm: `sqrt(sum |f|^2 * cell_volume)`.
    pub fn l2_norm(&self) -> f64 {
        let vol = self.grid.cell_volume();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * vol).sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        SampledFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(CoreError::Grid("grid mismatch in pointwise combination".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(SampledFunction { grid: self.grid, values })
    }
}

// ---------------------------------------------------------------------------
// Dyadic annuli
// ---------------------------------------------------------------------------

/// Index of the dyadic annulus `2^{k-1} < |x| <= 2^k` containing the cell
/// center, or `None` for the origin cell. Membership is decided by exact
/// comparison of the (exact) squared radius against exact powers of four.
pub fn annulus_index(grid: &Grid, idx: usize) -> Option<i32> {
    let r2 = grid.radius_sq(idx);
    if r2 == 0.0 {
        return None;
    }
    // Smallest k with r2 <= 4^k; the float log2 seeds within one of the
    // answer and the loops settle it exactly.
    let mut k = (r2.log2() / 2.0).ceil() as i32;
    while f64::exp2(2.0 * k as f64) < r2 {
        k += 1;
    }
    while k > i32::MIN && f64::exp2(2.0 * (k - 1) as f64) >= r2 {
        k -= 1;
    }
    Some(k)
}

/// Indicator of annulus `k` as a 0/1-valued function. The annulus must fit
/// in the domain: `k <= K`.
pub fn annulus_mask(grid: &Grid, k: i32) -> Result<SampledFunction> {
    if k > grid.halfwidth_log2() {
        return Err(CoreError::Range(format!(
            "annulus {k} exceeds the domain half-width 2^{}",
            grid.halfwidth_log2()
        )));
    }
    let values = par::map_range(grid.len(), |idx| {
        let inside = annulus_index(grid, idx) == Some(k);
        Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
    });
    Ok(SampledFunction::from_parts(*grid, values))
}

/// Contiguous range of annulus indices `k_min ..= k_max` used by the
/// annulus-weighted norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnulusRange {
    pub k_min: i32,
    pub k_max: i32,
}

impl AnnulusRange {
    pub fn new(k_min: i32, k_max: i32) -> Result<Self> {
        if k_min > k_max {
            return Err(CoreError::Parameter(format!(
                "annulus range [{k_min}, {k_max}] is empty"
            )));
        }
        Ok(AnnulusRange { k_min, k_max })
    }

    /// Everything the grid resolves: from the annulus of the nearest
    /// off-origin cell (`|x| = spacing`, i.e. `k = K + 1 - log2 N`) up to the
    /// domain half-width.
    pub fn default_for(grid: &Grid) -> Self {
        let k = grid.halfwidth_log2();
        AnnulusRange {
            k_min: k + 1 - grid.log2_samples() as i32,
            k_max: k,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.k_min..=self.k_max
    }

    pub fn len(&self) -> usize {
        (self.k_max - self.k_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: i32) -> bool {
        (self.k_min..=self.k_max).contains(&k)
    }
}

// ---------------------------------------------------------------------------
// Exact index remaps: dyadic dilation, torus translation
// ---------------------------------------------------------------------------

/// Relative cutoff defining "numerically supported" cells for the dilation
/// precondition.
pub const DILATION_SUPPORT_RTOL: f64 = 1e-12;

/// Sample `x -> f(2^m x)` by exact index remapping, for `|m| <= K-1`.
///
/// Shrinking (`m > 0`) requires the support of `f` (cells above
/// [`DILATION_SUPPORT_RTOL`] relative to `max|f|`) to fit in
/// `[-2^{K-m}, 2^{K-m})^dim`; otherwise mass would alias across the torus
/// seam and the call fails with a truncation report. Stretching (`m < 0`)
/// reads the nearest preimage cell, ties rounded away from zero so the remap
/// commutes with `x -> -x`.
pub fn dilate_dyadic(f: &SampledFunction, m: i32) -> Result<SampledFunction> {
    let grid = f.grid();
    let k = grid.halfwidth_log2();
    if m.abs() > k - 1 {
        return Err(CoreError::Range(format!(
            "dilation exponent {m} out of range; need |m| <= K-1 = {}",
            k - 1
        )));
    }
    if m == 0 {
        return Ok(f.clone());
    }
    let n = grid.samples_per_dim() as i64;
    let half = n / 2;

    if m > 0 {
        // Support precondition: centered index within [-N/2^{m+1}, N/2^{m+1}).
        let bound = half >> m;
        let tol = DILATION_SUPPORT_RTOL * f.max_abs();
        let mut worst = 0.0f64;
        for (idx, v) in f.values().iter().enumerate() {
            if v.norm() > tol {
                let ax = grid.axis_indices(idx);
                let outside = (0..grid.dim()).any(|a| {
                    let c = grid.centered(ax[a]);
                    c < -bound || c >= bound
                });
                if outside {
                    worst = worst.max(v.norm());
                }
            }
        }
        if worst > 0.0 {
            return Err(CoreError::Truncation(format!(
                "dilation by 2^{m} folds support across the domain edge: \
                 |f| up to {worst:.3e} outside [-2^{}, 2^{})",
                k - m,
                k - m
            )));
        }
        let values = par::map_range(grid.len(), |idx| {
            let ax = grid.axis_indices(idx);
            let mut src = [0usize; 2];
            for a in 0..grid.dim() {
                let c = grid.centered(ax[a]) << m;
                if c < -half || c >= half {
                    return Complex64::new(0.0, 0.0);
                }
                src[a] = (c + half) as usize;
            }
            f.values()[grid.flat_index(src)]
        });
        Ok(SampledFunction::from_parts(grid, values))
    } else {
        let shift = (-m) as u32;
        let step = 1i64 << shift;
        let values = par::map_range(grid.len(), |idx| {
            let ax = grid.axis_indices(idx);
            let mut src = [0usize; 2];
            for a in 0..grid.dim() {
                let c = grid.centered(ax[a]);
                // Nearest preimage index c / 2^{|m|}, ties away from zero.
                let j = if c >= 0 {
                    (c + step / 2) >> shift
                } else {
                    -((-c + step / 2) >> shift)
                };
                src[a] = (j + half) as usize;
            }
            f.values()[grid.flat_index(src)]
        });
        Ok(SampledFunction::from_parts(grid, values))
    }
}

/// Periodic lattice translation: `g(x) = f(x + offset * spacing)`,
/// one integer offset per axis. Exactly invertible and norm-preserving.
pub fn translate(f: &SampledFunction, offsets: &[i64]) -> Result<SampledFunction> {
    let grid = f.grid();
    if offsets.len() != grid.dim() {
        return Err(CoreError::Parameter(format!(
            "expected {} offsets, got {}",
            grid.dim(),
            offsets.len()
        )));
    }
    let n = grid.samples_per_dim() as i64;
    let values = par::map_range(grid.len(), |idx| {
        let ax = grid.axis_indices(idx);
        let mut src = [0usize; 2];
        for a in 0..grid.dim() {
            src[a] = (ax[a] as i64 + offsets[a]).rem_euclid(n) as usize;
        }
        f.values()[grid.flat_index(src)]
    });
    Ok(SampledFunction::from_parts(grid, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(grid: Grid) -> SampledFunction {
        SampledFunction::from_real_fn(grid, |x| {
            (-(x.iter().map(|c| c * c).sum::<f64>())).exp()
        })
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(3, 4, 64).is_err());
        assert!(Grid::new(1, 4, 48).is_err());
        assert!(Grid::new(1, 4, 8).is_err());
        assert!(Grid::new(1, 40, 64).is_err());
        assert!(Grid::new(2, 3, 256).is_ok());
    }

    #[test]
    fn spacing_and_coords_are_exact() {
        let g = Grid::new(1, 4, 4096).unwrap();
        assert_eq!(g.spacing(), f64::exp2(-7.0));
        assert_eq!(g.coord(0), -16.0);
        assert_eq!(g.coord(2048), 0.0);
        assert_eq!(g.coord(2049), f64::exp2(-7.0));
        let g2 = Grid::new(2, 3, 256).unwrap();
        assert_eq!(g2.spacing(), 1.0 / 16.0);
        assert_eq!(g2.len(), 65536);
        assert_eq!(g2.coords(g2.origin_index()), [0.0, 0.0]);
    }

    #[test]
    fn unit_annulus_cells_on_coarse_line() {
        // K=2, N=64: spacing 1/8; annulus 0 is 1/2 < |x| <= 1,
        // i.e. centered index in ±{5..8} — eight cells.
        let g = Grid::new(1, 2, 64).unwrap();
        let mask = annulus_mask(&g, 0).unwrap();
        let count: f64 = mask.values().iter().map(|v| v.re).sum();
        assert_eq!(count, 8.0);
        for idx in 0..g.len() {
            let c = g.centered(idx).abs();
            let expect = (5..=8).contains(&c);
            assert_eq!(mask.values()[idx].re == 1.0, expect, "cell {idx}");
        }
    }

    #[test]
    fn annuli_partition_the_punctured_domain() {
        let g = Grid::new(2, 3, 256).unwrap();
        let range = AnnulusRange::default_for(&g);
        assert_eq!(range.k_min, 3 + 1 - 8);
        assert_eq!(range.k_max, 3);
        let halfwidth = f64::exp2(g.halfwidth_log2() as f64);
        for idx in 0..g.len() {
            let r2 = g.radius_sq(idx);
            match annulus_index(&g, idx) {
                None => assert_eq!(r2, 0.0),
                Some(k) => {
                    // Exact membership of the half-open dyadic shell.
                    assert!(f64::exp2(2.0 * (k - 1) as f64) < r2);
                    assert!(r2 <= f64::exp2(2.0 * k as f64));
                    if r2 <= halfwidth * halfwidth {
                        assert!(range.contains(k), "k={k} for r2={r2}");
                    } else {
                        assert!(k > range.k_max);
                    }
                }
            }
        }
    }

    #[test]
    fn annulus_mask_rejects_out_of_domain_shells() {
        let g = Grid::new(1, 2, 64).unwrap();
        assert!(annulus_mask(&g, 3).is_err());
        assert!(annulus_mask(&g, 2).is_ok());
    }

    #[test]
    fn dilation_identity_is_bitwise() {
        let g = Grid::default_for_dim(1).unwrap();
        let f = gaussian(g);
        let d = dilate_dyadic(&f, 0).unwrap();
        assert_eq!(f, d);
    }

    #[test]
    fn dilation_matches_direct_resampling_of_a_gaussian() {
        let g = Grid::default_for_dim(1).unwrap();
        let f = gaussian(g);
        let d = dilate_dyadic(&f, 1).unwrap();
        let direct = SampledFunction::from_real_fn(g, |x| (-(4.0 * x[0] * x[0])).exp());
        for (a, b) in d.values().iter().zip(direct.values()) {
            assert!((a - b).norm() <= 1e-14);
        }
    }

    #[test]
    fn dilation_rejects_support_overflow() {
        let g = Grid::new(1, 2, 64).unwrap();
        let ones = SampledFunction::from_real_fn(g, |_| 1.0);
        match dilate_dyadic(&ones, 1) {
            Err(CoreError::Truncation(_)) => {}
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn stretch_rounds_preimages_away_from_zero() {
        let g = Grid::new(1, 2, 64).unwrap();
        let ramp = SampledFunction::from_fn(g, |x| Complex64::new(x[0] * 8.0, 0.0));
        let d = dilate_dyadic(&ramp, -1).unwrap();
        let at = |c: i64| d.values()[(c + 32) as usize].re;
        assert_eq!(at(0), 0.0);
        assert_eq!(at(1), 1.0); // 0.5 rounds to 1
        assert_eq!(at(2), 1.0);
        assert_eq!(at(3), 2.0); // 1.5 rounds to 2
        assert_eq!(at(-1), -1.0); // symmetric partner of +1
        assert_eq!(at(-3), -2.0);
    }

    #[test]
    fn dilation_round_trip_is_exact_on_the_surviving_sublattice() {
        let g = Grid::new(1, 3, 128).unwrap();
        // Supported well inside [-2, 2) so the m=2 shrink is admissible.
        let f = SampledFunction::from_real_fn(g, |x| {
            if x[0].abs() < 1.5 {
                (x[0] * 3.0).sin() + 0.25
            } else {
                0.0
            }
        });
        let round = dilate_dyadic(&dilate_dyadic(&f, 2).unwrap(), -2).unwrap();
        for idx in 0..g.len() {
            let c = g.centered(idx);
            if c % 4 == 0 {
                assert_eq!(round.values()[idx], f.values()[idx], "cell {c}");
            }
        }
    }

    #[test]
    fn translation_is_invertible_and_norm_preserving() {
        let g = Grid::new(2, 2, 32).unwrap();
        let f = SampledFunction::from_fn(g, |x| Complex64::new(x[0] + 0.3, x[1] - 0.1));
        let t = translate(&f, &[5, -9]).unwrap();
        let back = translate(&t, &[-5, 9]).unwrap();
        assert_eq!(f, back);
        assert_eq!(f.l2_norm(), t.l2_norm());
        // Spot-check the defining identity g(x) = f(x + h*spacing).
        let idx = g.flat_index([7, 20]);
        assert_eq!(t.values()[idx], f.values()[g.flat_index([12, 11])]);
    }

    #[test]
    fn sampled_function_rejects_bad_inputs() {
        let g = Grid::new(1, 2, 64).unwrap();
        assert!(SampledFunction::new(g, vec![Complex64::new(0.0, 0.0); 63]).is_err());
        let mut vals = vec![Complex64::new(0.0, 0.0); 64];
        vals[10] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            SampledFunction::new(g, vals),
            Err(CoreError::NonFinite(_))
        ));
    }
}
