//! Weighted quasi-norms on sampled functions.
//!
//! The family: Lebesgue `L^p` (optionally on a region), power-weighted
//! `L^p(|x|^{alpha p})`, annulus-weighted Herz norms, ball-uniform Morrey
//! norms, the block-smoothness scales built over either base (sum-then-norm
//! and norm-of-pointwise-sum), Bessel-potential and Sobolev-style variants,
//! and the multiplicative interpolation check.
//!
//! Every evaluation returns a [`NormValue`]: the number, a truncation
//! diagnostic (boundary-annulus terms, unresolved spectral tail), and
//! free-form flags for soft hypothesis violations. Reductions over cells,
//! annuli, and blocks always fold in fixed index order so results do not
//! depend on the worker count.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::lattice::{annulus_index, AnnulusRange, Grid, SampledFunction};
use crate::spectral::{self, DyadicSystem};
use crate::{par, CoreError, Result};

// ---------------------------------------------------------------------------
// Parameter bundles
// ---------------------------------------------------------------------------

/// Annulus-weighted norm parameters: weight `2^{k alpha}` on annulus `k`,
/// outer `l^p` aggregation over annuli, inner `L^q` on each annulus.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct HerzParams {
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
}

impl HerzParams {
    pub fn new(alpha: f64, p: f64, q: f64) -> Result<Self> {
        let hp = HerzParams { alpha, p, q };
        hp.validate()?;
        Ok(hp)
    }

    pub fn validate(&self) -> Result<()> {
        require_exponent("p", self.p)?;
        require_exponent("q", self.q)?;
        if !self.alpha.is_finite() {
            return Err(CoreError::Parameter(format!("alpha must be finite, got {}", self.alpha)));
        }
        Ok(())
    }
}

/// Smoothness aggregation across dyadic blocks: weight `2^{js}`, `l^beta`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SmoothnessParams {
    pub s: f64,
    pub beta: f64,
}

impl SmoothnessParams {
    pub fn new(s: f64, beta: f64) -> Result<Self> {
        let sp = SmoothnessParams { s, beta };
        sp.validate()?;
        Ok(sp)
    }

    pub fn validate(&self) -> Result<()> {
        require_exponent("beta", self.beta)?;
        if !self.s.is_finite() {
            return Err(CoreError::Parameter(format!("s must be finite, got {}", self.s)));
        }
        Ok(())
    }
}

/// Ball-uniform norm parameters: local index `u`, global scaling index `p`,
/// `u <= p`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MorreyParams {
    pub u: f64,
    pub p: f64,
}

impl MorreyParams {
    pub fn new(u: f64, p: f64) -> Result<Self> {
        let mp = MorreyParams { u, p };
        mp.validate()?;
        Ok(mp)
    }

    pub fn validate(&self) -> Result<()> {
        require_exponent("u", self.u)?;
        require_exponent("p", self.p)?;
        if self.u > self.p {
            return Err(CoreError::Parameter(format!(
                "need u <= p, got u = {}, p = {}",
                self.u, self.p
            )));
        }
        Ok(())
    }
}

fn require_exponent(name: &str, v: f64) -> Result<()> {
    if v.is_nan() || v <= 0.0 {
        return Err(CoreError::Parameter(format!(
            "{name} must be positive (possibly infinite), got {v}"
        )));
    }
    Ok(())
}

/// `1/x` with the `1/inf = 0` convention.
#[inline]
pub fn recip_or_zero(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        x.recip()
    }
}

/// A computed quasi-norm plus diagnostics.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct NormValue {
    pub value: f64,
    /// Size of what the finite grid had to drop: boundary-annulus terms for
    /// annulus sums, unresolved spectral tail (plus the mean part in the
    /// homogeneous scales) for block sums.
    pub truncation_diag: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl NormValue {
    pub fn plain(value: f64) -> Self {
        NormValue {
            value,
            truncation_diag: 0.0,
            flags: Vec::new(),
        }
    }
}

/// `l^p` aggregation of nonnegative terms, `p = inf` meaning the supremum.
fn ell_norm<I: IntoIterator<Item = f64>>(terms: I, p: f64) -> f64 {
    if p.is_infinite() {
        terms.into_iter().fold(0.0, f64::max)
    } else {
        terms
            .into_iter()
            .map(|t| t.powf(p))
            .sum::<f64>()
            .powf(p.recip())
    }
}

// ---------------------------------------------------------------------------
// Annulus index cache
// ---------------------------------------------------------------------------

/// Sentinel for the origin cell in the per-grid annulus table.
const ORIGIN: i32 = i32::MIN;

fn annulus_table(grid: &Grid) -> Arc<Vec<i32>> {
    type Key = (usize, i32, usize);
    static TABLES: Lazy<Mutex<HashMap<Key, Arc<Vec<i32>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (grid.dim(), grid.halfwidth_log2(), grid.samples_per_dim());
    if let Some(t) = TABLES.lock().unwrap().get(&key) {
        return t.clone();
    }
    let table = Arc::new(par::map_range(grid.len(), |idx| {
        annulus_index(grid, idx).unwrap_or(ORIGIN)
    }));
    TABLES
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(table)
        .clone()
}

/// Region mask of all cells covered by the given annulus range (used to
/// compare annulus sums against plain Lebesgue integrals on equal footing).
pub fn annulus_region(grid: &Grid, range: AnnulusRange) -> Vec<bool> {
    let table = annulus_table(grid);
    table.iter().map(|&k| k != ORIGIN && range.contains(k)).collect()
}

// ---------------------------------------------------------------------------
// Base norms
// ---------------------------------------------------------------------------

/// `(sum |f|^p vol)^{1/p}` over the region (whole domain by default);
/// `p = inf` takes the max over the region.
pub fn lebesgue_norm(f: &SampledFunction, p: f64, region: Option<&[bool]>) -> Result<NormValue> {
    require_exponent("p", p)?;
    if let Some(mask) = region {
        if mask.len() != f.grid().len() {
            return Err(CoreError::Parameter("region mask length mismatch".into()));
        }
        if !mask.iter().any(|&b| b) {
            return Ok(NormValue {
                value: 0.0,
                truncation_diag: 0.0,
                flags: vec!["empty-region".into()],
            });
        }
    }
    let included = |idx: usize| region.map_or(true, |m| m[idx]);
    let value = if p.is_infinite() {
        f.values()
            .iter()
            .enumerate()
            .filter(|(i, _)| included(*i))
            .fold(0.0f64, |m, (_, v)| m.max(v.norm()))
    } else {
        let vol = f.grid().cell_volume();
        let sum: f64 = f
            .values()
            .iter()
            .enumerate()
            .filter(|(i, _)| included(*i))
            .map(|(_, v)| v.norm().powf(p))
            .sum();
        (sum * vol).powf(p.recip())
    };
    Ok(NormValue::plain(value))
}

/// Power-weighted Lebesgue norm `(sum |f|^p |x|^{alpha p} vol)^{1/p}`.
/// The origin cell is excluded when `alpha < 0` (its weight is undefined).
pub fn weighted_lp_norm(f: &SampledFunction, alpha: f64, p: f64) -> Result<NormValue> {
    require_exponent("p", p)?;
    if !alpha.is_finite() {
        return Err(CoreError::Parameter(format!("alpha must be finite, got {alpha}")));
    }
    let grid = f.grid();
    let mut flags = Vec::new();
    if alpha < 0.0 && f.values()[grid.origin_index()].norm() > 0.0 {
        flags.push("origin-cell-excluded".into());
    }
    let weighted = |idx: usize, v: &Complex64| -> Option<f64> {
        let r2 = grid.radius_sq(idx);
        if r2 == 0.0 && alpha < 0.0 {
            return None;
        }
        // |x|^alpha; 0^0 = 1 keeps alpha = 0 identical to the plain norm.
        let w = if alpha == 0.0 { 1.0 } else { r2.powf(alpha / 2.0) };
        Some(v.norm() * w)
    };
    let value = if p.is_infinite() {
        f.values()
            .iter()
            .enumerate()
            .filter_map(|(i, v)| weighted(i, v))
            .fold(0.0f64, f64::max)
    } else {
        let vol = grid.cell_volume();
        let sum: f64 = f
            .values()
            .iter()
            .enumerate()
            .filter_map(|(i, v)| weighted(i, v))
            .map(|t| t.powf(p))
            .sum();
        (sum * vol).powf(p.recip())
    };
    Ok(NormValue {
        value,
        truncation_diag: 0.0,
        flags,
    })
}

/// Annulus-weighted norm: `l^p` over annuli `k` in `range` of
/// `2^{k alpha} ||f chi_k||_q`. The diagnostic reports the two boundary
/// annulus terms (aggregated the same way), and flags name any cells whose
/// annulus falls outside the range (the origin cell is outside by
/// construction and is not flagged).
pub fn herz_norm(f: &SampledFunction, hp: HerzParams, range: AnnulusRange) -> Result<NormValue> {
    hp.validate()?;
    let grid = f.grid();
    if range.k_max > grid.halfwidth_log2() {
        return Err(CoreError::Range(format!(
            "annulus range reaches {} beyond the domain half-width 2^{}",
            range.k_max,
            grid.halfwidth_log2()
        )));
    }
    let table = annulus_table(&grid);
    let nk = range.len();
    let sup = hp.q.is_infinite();
    let vol = grid.cell_volume();
    let len = grid.len();

    // Chunked accumulation with a fixed chunk size: parallel-safe and
    // deterministic (partials merge in chunk order; merge ops are
    // order-insensitive sums/maxes anyway).
    const CHUNK: usize = 1 << 14;
    let chunks = len.div_ceil(CHUNK);
    struct Partial {
        acc: Vec<f64>,
        below: f64,
        above: f64,
    }
    let partials = par::map_range(chunks, |c| {
        let mut p = Partial {
            acc: vec![0.0; nk],
            below: 0.0,
            above: 0.0,
        };
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(len);
        for idx in lo..hi {
            let k = table[idx];
            if k == ORIGIN {
                continue;
            }
            let mag = f.values()[idx].norm();
            if !range.contains(k) {
                if k < range.k_min {
                    p.below = p.below.max(mag);
                } else {
                    p.above = p.above.max(mag);
                }
                continue;
            }
            let slot = (k - range.k_min) as usize;
            if sup {
                p.acc[slot] = p.acc[slot].max(mag);
            } else {
                p.acc[slot] += mag.powf(hp.q) * vol;
            }
        }
        p
    });
    let mut acc = vec![0.0f64; nk];
    let mut below = 0.0f64;
    let mut above = 0.0f64;
    for p in partials {
        for (a, b) in acc.iter_mut().zip(&p.acc) {
            if sup {
                *a = a.max(*b);
            } else {
                *a += *b;
            }
        }
        below = below.max(p.below);
        above = above.max(p.above);
    }

    let term = |slot: usize| -> f64 {
        let k = range.k_min + slot as i32;
        let local = if sup { acc[slot] } else { acc[slot].powf(hp.q.recip()) };
        f64::exp2(k as f64 * hp.alpha) * local
    };
    let terms: Vec<f64> = (0..nk).map(term).collect();
    let value = ell_norm(terms.iter().copied(), hp.p);
    let truncation_diag = ell_norm([terms[0], terms[nk - 1]], hp.p);

    let mut flags = Vec::new();
    let scale = f.max_abs();
    if below > 1e-12 * scale {
        flags.push("mass-below-annulus-range".into());
    }
    if above > 1e-12 * scale {
        flags.push("mass-beyond-annulus-range".into());
    }
    Ok(NormValue {
        value,
        truncation_diag,
        flags,
    })
}

// ---------------------------------------------------------------------------
// Morrey norm
// ---------------------------------------------------------------------------

fn ball_kernel_spectrum(grid: &Grid, m: i32) -> (Arc<Vec<Complex64>>, f64) {
    type Key = (usize, i32, usize, i32);
    static KERNELS: Lazy<Mutex<HashMap<Key, (Arc<Vec<Complex64>>, f64)>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (grid.dim(), grid.halfwidth_log2(), grid.samples_per_dim(), m);
    if let Some(hit) = KERNELS.lock().unwrap().get(&key) {
        return hit.clone();
    }
    // Indicator of the torus ball |offset| <= 2^m, indexed by signed offset
    // (same wrap rule as frequency bins), so circular convolution against it
    // sums exactly the cells within distance 2^m of each center.
    let n = grid.samples_per_dim();
    let spacing = grid.spacing();
    let r2 = f64::exp2(2.0 * m as f64);
    let values = par::map_range(grid.len(), |idx| {
        let ax = grid.axis_indices(idx);
        let mut d2 = 0.0;
        for a in 0..grid.dim() {
            let off = spectral::bin_of_index(n, ax[a]) as f64 * spacing;
            d2 += off * off;
        }
        Complex64::new(if d2 <= r2 { 1.0 } else { 0.0 }, 0.0)
    });
    let count: f64 = values.iter().map(|v| v.re).sum();
    let spec = spectral::dft(&SampledFunction::new(*grid, values).unwrap());
    let entry = (Arc::new(spec.values().to_vec()), count);
    KERNELS
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(entry)
        .clone()
}

/// Ball-uniform norm: `sup_B |B|^{1/p - 1/u} ||f chi_B||_u` over the
/// implemented ball family — torus balls of dyadic radius `2^m` (from one
/// lattice spacing up to the domain half-width) centered on a
/// stride-coarsened lattice, plus the full domain. `|B|` is the discrete
/// measure (cell count times cell volume), so the family is exactly nested
/// under Hölder: `u`-monotonicity holds with constant 1.
pub fn morrey_norm(f: &SampledFunction, mp: MorreyParams) -> Result<NormValue> {
    mp.validate()?;
    let grid = f.grid();
    if mp.u.is_infinite() {
        // u = p = inf: every ball term is a local sup; the sup over balls is
        // the global max.
        return Ok(NormValue::plain(f.max_abs()));
    }
    let u = mp.u;
    let expo = recip_or_zero(mp.p) - u.recip();
    let vol = grid.cell_volume();
    let base: Vec<Complex64> = f
        .values()
        .iter()
        .map(|v| Complex64::new(v.norm().powf(u), 0.0))
        .collect();
    let total_mass: f64 = base.iter().map(|v| v.re).sum::<f64>() * vol;
    let domain_vol = vol * grid.len() as f64;
    // Full-domain member: for u = p this is exactly the Lebesgue norm and
    // dominates every ball term.
    let mut best = total_mass.powf(u.recip()) * domain_vol.powf(expo);

    let base_spec = spectral::dft(&SampledFunction::new(grid, base)?);
    let n = grid.samples_per_dim();
    let stride = (n / 64).max(1);
    let m_min = grid.halfwidth_log2() + 1 - grid.log2_samples() as i32;
    let conv_scale = (grid.len() as f64).sqrt();
    for m in m_min..=grid.halfwidth_log2() {
        let (kernel_spec, count) = ball_kernel_spectrum(&grid, m);
        let product = par::map_range(grid.len(), |idx| {
            base_spec.values()[idx] * kernel_spec[idx] * conv_scale
        });
        let conv = spectral::idft(&SampledFunction::from_parts(grid, product));
        let measure = (count * vol).powf(expo);
        let mut radius_best = 0.0f64;
        let mut visit = |idx: usize| {
            let mass = conv.values()[idx].re.max(0.0) * vol;
            radius_best = radius_best.max(mass.powf(u.recip()) * measure);
        };
        match grid.dim() {
            1 => (0..n).step_by(stride).for_each(|i| visit(i)),
            _ => {
                for i in (0..n).step_by(stride) {
                    for j in (0..n).step_by(stride) {
                        visit(i * n + j);
                    }
                }
            }
        }
        best = best.max(radius_best);
    }
    Ok(NormValue::plain(best))
}

// ---------------------------------------------------------------------------
// Block-smoothness scales
// ---------------------------------------------------------------------------

/// Which aggregation pattern a block norm uses: sum-then-base-norm, or
/// base-norm-of-pointwise-sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BlockScale {
    Besov,
    TriebelLizorkin,
}

/// All nonvanishing dyadic blocks of `f`, sharing a single forward DFT.
fn compute_blocks(
    sys: &DyadicSystem,
    f: &SampledFunction,
    homogeneous: bool,
) -> Result<Vec<(i32, SampledFunction)>> {
    let grid = f.grid();
    if sys.grid() != grid {
        return Err(CoreError::Grid("block system grid differs from sample grid".into()));
    }
    let spec = spectral::dft(f);
    let js: Vec<i32> = sys.effective_blocks(homogeneous).collect();
    Ok(par::map_slice(&js, |&j| {
        let filtered = par::map_range(grid.len(), |idx| {
            spec.values()[idx]
                * sys.block_multiplier_at(j, homogeneous, spectral::bin_radius(&grid, idx))
        });
        (j, spectral::idft(&SampledFunction::from_parts(grid, filtered)))
    }))
}

/// `L^2` mass of the spectrum above the resolved blocks (what the finite
/// block sum cannot see), plus — in the homogeneous case — the constant mean
/// part that the block family annihilates.
fn block_coverage_diag<B>(
    sys: &DyadicSystem,
    f: &SampledFunction,
    homogeneous: bool,
    dc_norm: B,
) -> f64
where
    B: FnOnce(f64) -> f64,
{
    let grid = f.grid();
    let spec = spectral::dft(f);
    let vol = grid.cell_volume();
    let cap = f64::exp2(-sys.j_max() as f64);
    let tail2: f64 = (0..grid.len())
        .map(|idx| {
            let keep = spectral::lowpass_profile(spectral::bin_radius(&grid, idx) * cap);
            (spec.values()[idx].norm() * (1.0 - keep)).powi(2)
        })
        .sum();
    let mut diag = (tail2 * vol).sqrt();
    if homogeneous {
        let mean = spec.values()[0].norm() / (grid.len() as f64).sqrt();
        if mean > 0.0 {
            diag += dc_norm(mean);
        }
    }
    diag
}

fn herz_of_constant(grid: &Grid, hp: HerzParams, range: AnnulusRange, c: f64) -> f64 {
    let table = annulus_table(grid);
    let vol = grid.cell_volume();
    let mut counts = vec![0usize; range.len()];
    for &k in table.iter() {
        if k != ORIGIN && range.contains(k) {
            counts[(k - range.k_min) as usize] += 1;
        }
    }
    let terms = counts.iter().enumerate().map(|(slot, &cnt)| {
        let k = range.k_min + slot as i32;
        let local = if hp.q.is_infinite() {
            if cnt > 0 {
                c
            } else {
                0.0
            }
        } else {
            c * (cnt as f64 * vol).powf(hp.q.recip())
        };
        f64::exp2(k as f64 * hp.alpha) * local
    });
    ell_norm(terms, hp.p)
}

fn merge_flags(into: &mut Vec<String>, from: &[String]) {
    for f in from {
        if !into.contains(f) {
            into.push(f.clone());
        }
    }
}

/// Sum-then-norm block scale over the annulus-weighted base:
/// `l^beta` over blocks `j` of `2^{js} ||block_j f||_{Herz}`.
pub fn herz_besov_norm(
    f: &SampledFunction,
    hp: HerzParams,
    sp: SmoothnessParams,
    sys: &DyadicSystem,
    homogeneous: bool,
) -> Result<NormValue> {
    hp.validate()?;
    sp.validate()?;
    let grid = f.grid();
    let range = AnnulusRange::default_for(&grid);
    let blocks = compute_blocks(sys, f, homogeneous)?;
    let per: Vec<NormValue> = {
        let results = par::map_slice(&blocks, |(_, b)| herz_norm(b, hp, range));
        results.into_iter().collect::<Result<_>>()?
    };
    let terms = blocks
        .iter()
        .zip(&per)
        .map(|((j, _), nv)| f64::exp2(*j as f64 * sp.s) * nv.value);
    let value = ell_norm(terms, sp.beta);
    let mut flags = Vec::new();
    for nv in &per {
        merge_flags(&mut flags, &nv.flags);
    }
    let diag = block_coverage_diag(sys, f, homogeneous, |mean| {
        herz_of_constant(&grid, hp, range, mean)
    });
    Ok(NormValue {
        value,
        truncation_diag: diag,
        flags,
    })
}

/// Norm-of-pointwise-sum block scale over the annulus-weighted base:
/// Herz norm of `x -> (sum_j (2^{js} |block_j f(x)|)^beta)^{1/beta}`.
/// Defined for finite `p, q` only.
pub fn herz_tl_norm(
    f: &SampledFunction,
    hp: HerzParams,
    sp: SmoothnessParams,
    sys: &DyadicSystem,
    homogeneous: bool,
) -> Result<NormValue> {
    hp.validate()?;
    sp.validate()?;
    if hp.p.is_infinite() || hp.q.is_infinite() {
        return Err(CoreError::Parameter(
            "pointwise-sum block scale requires finite p and q".into(),
        ));
    }
    let grid = f.grid();
    let blocks = compute_blocks(sys, f, homogeneous)?;
    let weights: Vec<f64> = blocks.iter().map(|(j, _)| f64::exp2(*j as f64 * sp.s)).collect();
    let pointwise = par::map_range(grid.len(), |idx| {
        let terms = blocks
            .iter()
            .zip(&weights)
            .map(|((_, b), w)| w * b.values()[idx].norm());
        Complex64::new(ell_norm(terms, sp.beta), 0.0)
    });
    let aggregated = SampledFunction::from_parts(grid, pointwise);
    let range = AnnulusRange::default_for(&grid);
    let mut out = herz_norm(&aggregated, hp, range)?;
    out.truncation_diag = block_coverage_diag(sys, f, homogeneous, |mean| {
        herz_of_constant(&grid, hp, range, mean)
    });
    Ok(out)
}

/// Dispatch between the two block aggregation patterns.
pub fn block_scale_norm(
    f: &SampledFunction,
    hp: HerzParams,
    sp: SmoothnessParams,
    sys: &DyadicSystem,
    homogeneous: bool,
    scale: BlockScale,
) -> Result<NormValue> {
    match scale {
        BlockScale::Besov => herz_besov_norm(f, hp, sp, sys, homogeneous),
        BlockScale::TriebelLizorkin => herz_tl_norm(f, hp, sp, sys, homogeneous),
    }
}

/// Sum-then-norm block scale over the ball-uniform base.
pub fn besov_morrey_norm(
    f: &SampledFunction,
    mp: MorreyParams,
    sp: SmoothnessParams,
    sys: &DyadicSystem,
    homogeneous: bool,
) -> Result<NormValue> {
    mp.validate()?;
    sp.validate()?;
    let blocks = compute_blocks(sys, f, homogeneous)?;
    let per: Vec<NormValue> = {
        let results = par::map_slice(&blocks, |(_, b)| morrey_norm(b, mp));
        results.into_iter().collect::<Result<_>>()?
    };
    let terms = blocks
        .iter()
        .zip(&per)
        .map(|((j, _), nv)| f64::exp2(*j as f64 * sp.s) * nv.value);
    let value = ell_norm(terms, sp.beta);
    let diag = block_coverage_diag(sys, f, homogeneous, |mean| {
        mean * (f.grid().cell_volume() * f.grid().len() as f64).powf(recip_or_zero(mp.p))
    });
    Ok(NormValue {
        value,
        truncation_diag: diag,
        flags: Vec::new(),
    })
}

/// Norm-of-pointwise-sum block scale over the ball-uniform base.
pub fn tl_morrey_norm(
    f: &SampledFunction,
    mp: MorreyParams,
    sp: SmoothnessParams,
    sys: &DyadicSystem,
    homogeneous: bool,
) -> Result<NormValue> {
    mp.validate()?;
    sp.validate()?;
    let grid = f.grid();
    let blocks = compute_blocks(sys, f, homogeneous)?;
    let weights: Vec<f64> = blocks.iter().map(|(j, _)| f64::exp2(*j as f64 * sp.s)).collect();
    let pointwise = par::map_range(grid.len(), |idx| {
        let terms = blocks
            .iter()
            .zip(&weights)
            .map(|((_, b), w)| w * b.values()[idx].norm());
        Complex64::new(ell_norm(terms, sp.beta), 0.0)
    });
    let aggregated = SampledFunction::from_parts(grid, pointwise);
    let mut out = morrey_norm(&aggregated, mp)?;
    out.truncation_diag = block_coverage_diag(sys, f, homogeneous, |mean| {
        mean * (grid.cell_volume() * grid.len() as f64).powf(recip_or_zero(mp.p))
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Potential-type norms
// ---------------------------------------------------------------------------

/// Herz norm of the `(1 + |k|^2)^{s/2}` image. The classically proven window
/// is `1 < q < inf`, `-n/q < alpha < n(1 - 1/q)`; outside it the value is
/// still computed but flagged.
pub fn bessel_potential_norm(f: &SampledFunction, hp: HerzParams, s: f64) -> Result<NormValue> {
    hp.validate()?;
    if !s.is_finite() {
        return Err(CoreError::Parameter(format!("s must be finite, got {s}")));
    }
    let grid = f.grid();
    let lifted = spectral::bessel(f, s);
    let mut out = herz_norm(&lifted, hp, AnnulusRange::default_for(&grid))?;
    let n = grid.dim() as f64;
    let in_window = hp.q > 1.0
        && hp.q.is_finite()
        && hp.alpha > -n / hp.q
        && hp.alpha < n * (1.0 - 1.0 / hp.q);
    if !in_window {
        out.flags.push("outside-proven-window".into());
    }
    Ok(out)
}

/// Sum over all spectral derivatives of order `<= m` of their Herz norms.
pub fn sobolev_herz_norm(f: &SampledFunction, hp: HerzParams, m: u32) -> Result<NormValue> {
    hp.validate()?;
    let grid = f.grid();
    let range = AnnulusRange::default_for(&grid);
    let mut value = 0.0;
    let mut flags = Vec::new();
    for beta in spectral::multi_indices(grid.dim(), m) {
        let image = spectral::derivative(f, &beta)?;
        let nv = herz_norm(&image, hp, range)?;
        value += nv.value;
        merge_flags(&mut flags, &nv.flags);
    }
    Ok(NormValue {
        value,
        truncation_diag: 0.0,
        flags,
    })
}

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

/// One weighted block-scale space: annulus parameters plus smoothness.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpaceBundle {
    pub hp: HerzParams,
    pub sp: SmoothnessParams,
}

/// The θ-intermediate bundle: `alpha` and `s` affine in θ; `1/p`, `1/q`,
/// `1/beta` affine in θ with `1/inf = 0`.
pub fn blend_bundles(b0: &SpaceBundle, b1: &SpaceBundle, theta: f64) -> SpaceBundle {
    let affine = |x0: f64, x1: f64| (1.0 - theta) * x0 + theta * x1;
    let harmonic = |x0: f64, x1: f64| {
        let r = affine(recip_or_zero(x0), recip_or_zero(x1));
        if r == 0.0 {
            f64::INFINITY
        } else {
            r.recip()
        }
    };
    SpaceBundle {
        hp: HerzParams {
            alpha: affine(b0.hp.alpha, b1.hp.alpha),
            p: harmonic(b0.hp.p, b1.hp.p),
            q: harmonic(b0.hp.q, b1.hp.q),
        },
        sp: SmoothnessParams {
            s: affine(b0.sp.s, b1.sp.s),
            beta: harmonic(b0.sp.beta, b1.sp.beta),
        },
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct InterpolationCheck {
    pub bundle: SpaceBundle,
    pub lhs: NormValue,
    pub norm0: f64,
    pub norm1: f64,
    /// `norm0^{1-theta} * norm1^{theta}`.
    pub rhs: f64,
}

/// Evaluate one multiplicative interpolation instance: the θ-intermediate
/// norm of `f` against the product of endpoint-norm powers. The discrete
/// inequality `lhs <= rhs` is an instance of Hölder on finite sums, so it
/// holds to rounding whenever the endpoint parameters are positive.
pub fn interpolation_check(
    f: &SampledFunction,
    sys: &DyadicSystem,
    b0: &SpaceBundle,
    b1: &SpaceBundle,
    theta: f64,
    scale: BlockScale,
    homogeneous: bool,
) -> Result<InterpolationCheck> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(CoreError::Parameter(format!("theta must be in (0,1), got {theta}")));
    }
    let mid = blend_bundles(b0, b1, theta);
    let lhs = block_scale_norm(f, mid.hp, mid.sp, sys, homogeneous, scale)?;
    let norm0 = block_scale_norm(f, b0.hp, b0.sp, sys, homogeneous, scale)?.value;
    let norm1 = block_scale_norm(f, b1.hp, b1.sp, sys, homogeneous, scale)?.value;
    let rhs = norm0.powf(1.0 - theta) * norm1.powf(theta);
    Ok(InterpolationCheck {
        bundle: mid,
        lhs,
        norm0,
        norm1,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::dilate_dyadic;

    fn grid1() -> Grid {
        Grid::default_for_dim(1).unwrap()
    }

    fn gaussian(grid: Grid, a: f64) -> SampledFunction {
        SampledFunction::from_real_fn(grid, move |x| {
            (-a * x.iter().map(|c| c * c).sum::<f64>()).exp()
        })
    }

    #[test]
    fn lebesgue_of_unit_interval_indicator() {
        let g = grid1();
        let f = SampledFunction::from_real_fn(g, |x| if x[0].abs() <= 1.0 { 1.0 } else { 0.0 });
        let v = lebesgue_norm(&f, 2.0, None).unwrap().value;
        assert!((v - 2.0f64.sqrt()).abs() <= g.spacing().sqrt());
        assert_eq!(lebesgue_norm(&f, f64::INFINITY, None).unwrap().value, 1.0);
    }

    #[test]
    fn lebesgue_homogeneity_and_empty_region() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        let scaled = f.scaled(Complex64::new(-3.0, 4.0));
        let a = lebesgue_norm(&scaled, 1.7, None).unwrap().value;
        let b = 5.0 * lebesgue_norm(&f, 1.7, None).unwrap().value;
        assert!((a - b).abs() <= 1e-13 * b);
        let empty = vec![false; g.len()];
        let nv = lebesgue_norm(&f, 2.0, Some(&empty)).unwrap();
        assert_eq!(nv.value, 0.0);
        assert!(nv.flags.iter().any(|f| f == "empty-region"));
    }

    #[test]
    fn weighted_norm_of_unit_annulus() {
        // integral of |x| over 1/2 < |x| <= 1 in one dimension is 3/4.
        let g = grid1();
        let f = crate::lattice::annulus_mask(&g, 0).unwrap();
        let v = weighted_lp_norm(&f, 1.0, 1.0).unwrap().value;
        assert!((v - 0.75).abs() <= 2.0 * g.spacing());
        let plain = weighted_lp_norm(&f, 0.0, 2.0).unwrap().value;
        let leb = lebesgue_norm(&f, 2.0, None).unwrap().value;
        assert!((plain - leb).abs() <= 1e-13 * leb);
    }

    #[test]
    fn negative_weight_excludes_origin_cell() {
        let g = grid1();
        let f = SampledFunction::from_real_fn(g, |_| 1.0);
        let nv = weighted_lp_norm(&f, -0.25, 2.0).unwrap();
        assert!(nv.value.is_finite());
        assert!(nv.flags.iter().any(|f| f == "origin-cell-excluded"));
    }

    #[test]
    fn herz_norm_of_single_annulus_mask() {
        let g = grid1();
        let f = crate::lattice::annulus_mask(&g, 0).unwrap();
        let hp = HerzParams::new(0.7, 3.0, 2.0).unwrap();
        let v = herz_norm(&f, hp, AnnulusRange::default_for(&g)).unwrap().value;
        // Only k = 0 survives and the annulus has measure 1.
        assert!((v - 1.0).abs() <= 2.0 * g.spacing());
    }

    #[test]
    fn herz_collapses_to_lebesgue_on_covered_annuli() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let hp = HerzParams::new(0.0, p, p).unwrap();
            let range = AnnulusRange::default_for(&g);
            let h = herz_norm(&f, hp, range).unwrap().value;
            let region = annulus_region(&g, range);
            let l = lebesgue_norm(&f, p, Some(&region)).unwrap().value;
            assert!((h - l).abs() <= 1e-12 * l, "p = {p}");
        }
    }

    #[test]
    fn herz_dilation_covariance() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        let hp = HerzParams::new(0.25, 2.0, 3.0).unwrap();
        let range = AnnulusRange::default_for(&g);
        let base = herz_norm(&f, hp, range).unwrap().value;
        for m in [-1i32, 1, 2] {
            let d = dilate_dyadic(&f, m).unwrap();
            let v = herz_norm(&d, hp, range).unwrap().value;
            let expect = f64::exp2(-(m as f64) * (hp.alpha + 1.0 / hp.q)) * base;
            assert!(
                (v - expect).abs() <= 1e-10 * expect,
                "m = {m}: {v} vs {expect}"
            );
        }
    }

    #[test]
    fn herz_sup_variants() {
        let g = grid1();
        let f = crate::lattice::annulus_mask(&g, 1).unwrap();
        let range = AnnulusRange::default_for(&g);
        // q = inf: per-annulus sup is 1 on annulus 1 only; alpha weight 2^k.
        let hp = HerzParams::new(0.5, f64::INFINITY, f64::INFINITY).unwrap();
        let v = herz_norm(&f, hp, range).unwrap().value;
        assert!((v - f64::exp2(0.5)).abs() < 1e-12);
    }

    #[test]
    fn morrey_top_index_is_lebesgue() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        for p in [1.0, 2.0] {
            let mp = MorreyParams::new(p, p).unwrap();
            let m = morrey_norm(&f, mp).unwrap().value;
            let l = lebesgue_norm(&f, p, None).unwrap().value;
            assert!((m - l).abs() <= 1e-12 * l, "p = {p}");
        }
        let zero = SampledFunction::zeros(g);
        assert_eq!(morrey_norm(&zero, MorreyParams::new(1.0, 2.0).unwrap()).unwrap().value, 0.0);
    }

    #[test]
    fn morrey_local_index_monotonicity_has_constant_one() {
        let g = Grid::new(2, 2, 64).unwrap();
        let f = SampledFunction::from_real_fn(g, |x| {
            (-(x[0] * x[0] + x[1] * x[1])).exp() + if x[0].abs() < 0.5 { 0.5 } else { 0.0 }
        });
        let p = 3.0;
        let lo = morrey_norm(&f, MorreyParams::new(1.0, p).unwrap()).unwrap().value;
        let mid = morrey_norm(&f, MorreyParams::new(2.0, p).unwrap()).unwrap().value;
        let hi = morrey_norm(&f, MorreyParams::new(3.0, p).unwrap()).unwrap().value;
        assert!(lo <= mid * (1.0 + 1e-12));
        assert!(mid <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn single_bin_harmonic_occupies_one_block() {
        let g = Grid::new(1, 2, 64).unwrap();
        let sys = DyadicSystem::new(g);
        let n = g.samples_per_dim();
        let f = SampledFunction::from_parts(
            g,
            par::map_range(g.len(), |i| {
                let ph = 2.0 * std::f64::consts::PI * 7.0 * i as f64 / n as f64;
                Complex64::new(ph.cos(), ph.sin())
            }),
        );
        let hp = HerzParams::new(0.25, 2.0, 2.0).unwrap();
        let sp = SmoothnessParams::new(1.3, 2.0).unwrap();
        let base = herz_norm(&f, hp, AnnulusRange::default_for(&g)).unwrap().value;
        let kb = herz_besov_norm(&f, hp, sp, &sys, false).unwrap().value;
        // Bin 7 sits on block 3's plateau, so the sum has exactly one term.
        assert!((kb - f64::exp2(3.0 * sp.s) * base).abs() <= 1e-11 * kb);
        let kf = herz_tl_norm(&f, hp, sp, &sys, false).unwrap().value;
        assert!((kf - kb).abs() <= 1e-10 * kb);
    }

    #[test]
    fn homogeneous_diag_carries_the_mean_part() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        let hp = HerzParams::new(0.0, 2.0, 2.0).unwrap();
        let sp = SmoothnessParams::new(0.5, 2.0).unwrap();
        let sys = DyadicSystem::new(g);
        let inhom = herz_besov_norm(&f, hp, sp, &sys, false).unwrap();
        let hom = herz_besov_norm(&f, hp, sp, &sys, true).unwrap();
        // Same blocks for j >= 1; the homogeneous family additionally misses
        // the mean, which must show up in its diagnostic.
        assert!(hom.truncation_diag > inhom.truncation_diag);
        assert!(inhom.truncation_diag <= 1e-10 * inhom.value);
    }

    #[test]
    fn tl_norm_requires_finite_indices() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        let sys = DyadicSystem::new(g);
        let sp = SmoothnessParams::new(0.0, 2.0).unwrap();
        let hp = HerzParams::new(0.0, f64::INFINITY, 2.0).unwrap();
        assert!(matches!(
            herz_tl_norm(&f, hp, sp, &sys, false),
            Err(CoreError::Parameter(_))
        ));
    }

    #[test]
    fn square_function_is_near_isometric_in_l2() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        let sys = DyadicSystem::new(g);
        let hp = HerzParams::new(0.0, 2.0, 2.0).unwrap();
        let sp = SmoothnessParams::new(0.0, 2.0).unwrap();
        let tl = herz_tl_norm(&f, hp, sp, &sys, false).unwrap().value;
        let l2 = lebesgue_norm(&f, 2.0, None).unwrap().value;
        let ratio = tl / l2;
        assert!((1.0 / 1.5..=1.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn bessel_norm_at_zero_order_is_herz() {
        let g = grid1();
        let f = gaussian(g, 2.0);
        let hp = HerzParams::new(0.25, 2.0, 2.0).unwrap();
        let b = bessel_potential_norm(&f, hp, 0.0).unwrap();
        let h = herz_norm(&f, hp, AnnulusRange::default_for(&g)).unwrap().value;
        assert!((b.value - h).abs() <= 1e-13 * h);
        assert!(b.flags.is_empty());
        let bad = HerzParams::new(0.0, 2.0, 0.5).unwrap();
        assert!(bessel_potential_norm(&f, bad, 0.0)
            .unwrap()
            .flags
            .iter()
            .any(|f| f == "outside-proven-window"));
    }

    #[test]
    fn sobolev_norm_on_a_harmonic() {
        let g = Grid::new(1, 2, 64).unwrap();
        let n = g.samples_per_dim();
        let f = SampledFunction::from_parts(
            g,
            par::map_range(g.len(), |i| {
                let ph = 2.0 * std::f64::consts::PI * 5.0 * i as f64 / n as f64;
                Complex64::new(ph.cos(), ph.sin())
            }),
        );
        let hp = HerzParams::new(0.0, 2.0, 2.0).unwrap();
        let m0 = sobolev_herz_norm(&f, hp, 0).unwrap().value;
        let h = herz_norm(&f, hp, AnnulusRange::default_for(&g)).unwrap().value;
        assert_eq!(m0, h);
        let m1 = sobolev_herz_norm(&f, hp, 1).unwrap().value;
        assert!((m1 - 6.0 * h).abs() <= 1e-11 * m1);
    }

    #[test]
    fn interpolation_with_identical_bundles_is_trivial() {
        let g = grid1();
        let f = gaussian(g, 1.0);
        let sys = DyadicSystem::new(g);
        let b = SpaceBundle {
            hp: HerzParams::new(0.25, 2.0, 3.0).unwrap(),
            sp: SmoothnessParams::new(0.8, 2.0).unwrap(),
        };
        let chk = interpolation_check(&f, &sys, &b, &b, 0.37, BlockScale::Besov, false).unwrap();
        assert!((chk.lhs.value - chk.rhs).abs() <= 1e-12 * chk.rhs);
    }

    #[test]
    fn interpolation_is_one_sided_hoelder() {
        let g = grid1();
        let f = gaussian(g, 0.5);
        let sys = DyadicSystem::new(g);
        let b0 = SpaceBundle {
            hp: HerzParams::new(0.0, 2.0, 2.0).unwrap(),
            sp: SmoothnessParams::new(0.5, 2.0).unwrap(),
        };
        let b1 = SpaceBundle {
            hp: HerzParams::new(0.5, 4.0, 3.0).unwrap(),
            sp: SmoothnessParams::new(2.0, 4.0).unwrap(),
        };
        for scale in [BlockScale::Besov, BlockScale::TriebelLizorkin] {
            let chk = interpolation_check(&f, &sys, &b0, &b1, 1.0 / 3.0, scale, false).unwrap();
            assert!(
                chk.lhs.value <= (1.0 + 1e-9) * chk.rhs,
                "{scale:?}: {} vs {}",
                chk.lhs.value,
                chk.rhs
            );
        }
        let zero = SampledFunction::zeros(g);
        let chk = interpolation_check(&zero, &sys, &b0, &b1, 0.5, BlockScale::Besov, false).unwrap();
        assert_eq!(chk.lhs.value, 0.0);
        assert_eq!(chk.rhs, 0.0);
    }

    #[test]
    fn blend_uses_extended_real_conventions() {
        let b0 = SpaceBundle {
            hp: HerzParams::new(1.0, f64::INFINITY, 2.0).unwrap(),
            sp: SmoothnessParams::new(0.0, f64::INFINITY).unwrap(),
        };
        let b1 = SpaceBundle {
            hp: HerzParams::new(0.0, f64::INFINITY, 4.0).unwrap(),
            sp: SmoothnessParams::new(1.0, f64::INFINITY).unwrap(),
        };
        let mid = blend_bundles(&b0, &b1, 0.5);
        assert!(mid.hp.p.is_infinite());
        assert!(mid.sp.beta.is_infinite());
        assert!((mid.hp.q - 8.0 / 3.0).abs() < 1e-15);
        assert!((mid.hp.alpha - 0.5).abs() < 1e-15);
    }
}
