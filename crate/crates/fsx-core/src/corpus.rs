//! Analytic test functions with known transforms and closed-form norms.
//!
//! Each [`TestFunction`] renders onto a grid with a wrap guard: anything
//! defined in physical space must keep its outermost boundary layer below
//! `1e-12` of its total `L²` mass, so periodization cannot contaminate the
//! sampled values. Frequency-space constructions (harmonics, band-limited
//! kernels) are exactly periodic and exempt.
//!
//! Power cutoffs `|x|^a` on a run of dyadic annuli double as the oracle
//! family: their annulus-weighted norms have a closed form, evaluated here
//! independently of the sampled path.

use num_complex::Complex64;

use crate::lattice::{annulus_index, annulus_mask, Grid, SampledFunction};
use crate::quasinorms::HerzParams;
use crate::spectral;
use crate::{CoreError, Result};

/// Relative bound on boundary-layer mass for physical-space renders.
pub const WRAP_RTOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// `exp(-a |x|^2)`.
    Gaussian { a: f64 },
    /// `exp(1 - 1/(1 - (|x|/radius)^2))` inside `|x| < radius`, else 0.
    Bump { radius: f64 },
    /// Indicator of the dyadic annulus `2^{k-1} < |x| <= 2^k`.
    AnnulusIndicator { k: i32 },
    /// `|x|^a` on annuli `k1..=k2`, else 0 (origin cell excluded).
    PowerCutoff { a: f64, k1: i32, k2: i32 },
    /// Real kernel whose spectrum is the smooth low-pass profile at
    /// frequency scale `r`: exactly band-limited to `|xi| <= 3r/2`.
    BandlimitedKernel { r: u32 },
    /// Exact DFT basis vector `exp(2 pi i k.j / N)`, one entry per axis.
    Harmonic { k: Vec<i64> },
    /// `(x_1 + 1/4)^degree` (one axis) or `(x_1 + x_2/3 + 1/4)^degree`
    /// (two axes), cut to the box `|x|_inf <= radius`.
    PolynomialWindow { degree: u32, radius: f64 },
}

impl TestFunction {
    /// Short unique identifier, safe for file names and CSV cells.
    pub fn label(&self) -> String {
        match self {
            TestFunction::Gaussian { a } => format!("gaussian_a{a}"),
            TestFunction::Bump { radius } => format!("bump_r{radius}"),
            TestFunction::AnnulusIndicator { k } => format!("annulus_k{k}"),
            TestFunction::PowerCutoff { a, k1, k2 } => format!("power_a{a}_k{k1}..{k2}"),
            TestFunction::BandlimitedKernel { r } => format!("kernel_R{r}"),
            TestFunction::Harmonic { k } => {
                let parts: Vec<String> = k.iter().map(|c| c.to_string()).collect();
                format!("harmonic_{}", parts.join("_"))
            }
            TestFunction::PolynomialWindow { degree, radius } => {
                format!("polywin_d{degree}_r{radius}")
            }
        }
    }

    /// Whether the render is a frequency-space construction, exactly
    /// periodic and exempt from the wrap guard.
    pub fn wrap_exempt(&self) -> bool {
        matches!(
            self,
            TestFunction::Harmonic { .. } | TestFunction::BandlimitedKernel { .. }
        )
    }

    pub fn render(&self, grid: &Grid) -> Result<SampledFunction> {
        let f = match self {
            TestFunction::Gaussian { a } => {
                require_positive("a", *a)?;
                let a = *a;
                SampledFunction::from_real_fn(*grid, move |x| {
                    (-a * x.iter().map(|c| c * c).sum::<f64>()).exp()
                })
            }
            TestFunction::Bump { radius } => {
                require_positive("radius", *radius)?;
                let r2 = radius * radius;
                SampledFunction::from_real_fn(*grid, move |x| {
                    let q = x.iter().map(|c| c * c).sum::<f64>() / r2;
                    if q < 1.0 {
                        (1.0 - 1.0 / (1.0 - q)).exp()
                    } else {
                        0.0
                    }
                })
            }
            TestFunction::AnnulusIndicator { k } => annulus_mask(grid, *k)?,
            TestFunction::PowerCutoff { a, k1, k2 } => {
                if k1 > k2 {
                    return Err(CoreError::Parameter(format!(
                        "need k1 <= k2, got {k1} > {k2}"
                    )));
                }
                if !a.is_finite() {
                    return Err(CoreError::Parameter(format!("a must be finite, got {a}")));
                }
                let values = (0..grid.len())
                    .map(|idx| {
                        let on = matches!(annulus_index(grid, idx), Some(k) if (*k1..=*k2).contains(&k));
                        if on {
                            Complex64::new(grid.radius_sq(idx).powf(a / 2.0), 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                SampledFunction::new(*grid, values)?
            }
            TestFunction::BandlimitedKernel { r } => {
                let n = grid.samples_per_dim();
                if *r < 1 || 3 * r >= n {
                    return Err(CoreError::Parameter(format!(
                        "kernel scale must satisfy 1 <= r < N/3, got r = {r}, N = {n}"
                    )));
                }
                let scale = *r as f64;
                let values = (0..grid.len())
                    .map(|idx| {
                        Complex64::new(
                            spectral::lowpass_profile(spectral::bin_radius(grid, idx) / scale),
                            0.0,
                        )
                    })
                    .collect();
                let spatial = spectral::idft(&SampledFunction::new(*grid, values)?);
                // The spectrum is real and even (the lone unpaired bin -N/2
                // gets weight 0), so the kernel is real; drop rounding noise.
                let real = spatial
                    .values()
                    .iter()
                    .map(|v| Complex64::new(v.re, 0.0))
                    .collect();
                SampledFunction::new(*grid, real)?
            }
            TestFunction::Harmonic { k } => {
                if k.len() != grid.dim() {
                    return Err(CoreError::Parameter(format!(
                        "harmonic needs {} frequency components, got {}",
                        grid.dim(),
                        k.len()
                    )));
                }
                let n = grid.samples_per_dim() as i64;
                if k.iter().any(|c| c.abs() >= n / 2) {
                    return Err(CoreError::Parameter(
                        "harmonic frequency outside the resolvable bins".into(),
                    ));
                }
                let k = k.clone();
                let values = (0..grid.len())
                    .map(|idx| {
                        let ax = grid.axis_indices(idx);
                        let dot: i64 = (0..grid.dim()).map(|a| k[a] * ax[a] as i64).sum();
                        let phase =
                            2.0 * std::f64::consts::PI * (dot.rem_euclid(n) as f64) / n as f64;
                        Complex64::new(phase.cos(), phase.sin())
                    })
                    .collect();
                SampledFunction::new(*grid, values)?
            }
            TestFunction::PolynomialWindow { degree, radius } => {
                require_positive("radius", *radius)?;
                let deg = *degree as i32;
                let radius = *radius;
                SampledFunction::from_real_fn(*grid, move |x| {
                    if x.iter().any(|c| c.abs() > radius) {
                        return 0.0;
                    }
                    let base = if x.len() == 1 {
                        x[0] + 0.25
                    } else {
                        x[0] + x[1] / 3.0 + 0.25
                    };
                    base.powi(deg)
                })
            }
        };
        if !self.wrap_exempt() {
            check_wrap(&f)?;
        }
        Ok(f)
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(CoreError::Parameter(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

fn check_wrap(f: &SampledFunction) -> Result<()> {
    let grid = f.grid();
    let n = grid.samples_per_dim();
    let mut boundary2 = 0.0;
    let mut total2 = 0.0;
    for (idx, v) in f.values().iter().enumerate() {
        let m2 = v.norm_sqr();
        total2 += m2;
        let ax = grid.axis_indices(idx);
        if (0..grid.dim()).any(|a| ax[a] == 0 || ax[a] == n - 1) {
            boundary2 += m2;
        }
    }
    if boundary2.sqrt() > WRAP_RTOL * total2.sqrt() {
        return Err(CoreError::Truncation(format!(
            "boundary layer holds {:.3e} of the function's L2 mass {:.3e}; \
             the render would wrap around the torus seam",
            boundary2.sqrt(),
            total2.sqrt()
        )));
    }
    Ok(())
}

/// Closed-form annulus-weighted norm of a [`TestFunction::PowerCutoff`]:
/// `l^p` over `k` of `2^{k alpha} I_k^{1/q}` with
/// `I_k = surf * (2^{k e} - 2^{(k-1) e}) / e`, `e = aq + n` (and
/// `surf * ln 2` when `e = 0`). Independent of the sampled path.
pub fn oracle_herz_norm(tf: &TestFunction, hp: HerzParams, dim: usize) -> Result<f64> {
    let TestFunction::PowerCutoff { a, k1, k2 } = tf else {
        return Err(CoreError::Parameter(
            "closed-form norm is defined for power cutoffs only".into(),
        ));
    };
    hp.validate()?;
    if hp.q.is_infinite() {
        return Err(CoreError::Parameter("closed form requires finite q".into()));
    }
    let surf = match dim {
        1 => 2.0,
        2 => 2.0 * std::f64::consts::PI,
        _ => return Err(CoreError::Parameter(format!("unsupported dimension {dim}"))),
    };
    let n = dim as f64;
    let e = a * hp.q + n;
    let mut terms = Vec::with_capacity((k2 - k1 + 1) as usize);
    for k in *k1..=*k2 {
        let ik = if e != 0.0 {
            surf * (f64::exp2(k as f64 * e) - f64::exp2((k - 1) as f64 * e)) / e
        } else {
            surf * std::f64::consts::LN_2
        };
        terms.push(f64::exp2(k as f64 * hp.alpha) * ik.powf(hp.q.recip()));
    }
    Ok(if hp.p.is_infinite() {
        terms.into_iter().fold(0.0, f64::max)
    } else {
        terms
            .into_iter()
            .map(|t| t.powf(hp.p))
            .sum::<f64>()
            .powf(hp.p.recip())
    })
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub function: TestFunction,
}

fn entry(function: TestFunction) -> CorpusEntry {
    CorpusEntry {
        name: function.label(),
        function,
    }
}

/// The curated function set for the given dimension: a spread of scales and
/// decay behaviors, all renderable on the default grid.
pub fn standard_corpus(dim: usize) -> Vec<CorpusEntry> {
    use TestFunction::*;
    match dim {
        1 => vec![
            entry(Gaussian { a: 0.25 }),
            entry(Gaussian { a: 0.5 }),
            entry(Gaussian { a: 1.0 }),
            entry(Gaussian { a: 2.0 }),
            entry(Gaussian { a: 4.0 }),
            entry(Bump { radius: 1.0 }),
            entry(Bump { radius: 2.0 }),
            entry(Bump { radius: 4.0 }),
            entry(PowerCutoff { a: 1.0, k1: 1, k2: 3 }),
            entry(PowerCutoff { a: -0.5, k1: 0, k2: 3 }),
            entry(PowerCutoff { a: 0.75, k1: -1, k2: 2 }),
            entry(BandlimitedKernel { r: 1 }),
            entry(BandlimitedKernel { r: 4 }),
            entry(BandlimitedKernel { r: 16 }),
            entry(AnnulusIndicator { k: -1 }),
            entry(AnnulusIndicator { k: 1 }),
            entry(Harmonic { k: vec![3] }),
            entry(Harmonic { k: vec![17] }),
            entry(PolynomialWindow { degree: 2, radius: 2.0 }),
            entry(PolynomialWindow { degree: 3, radius: 1.0 }),
        ],
        _ => vec![
            entry(Gaussian { a: 0.5 }),
            entry(Gaussian { a: 1.0 }),
            entry(Gaussian { a: 2.0 }),
            entry(Bump { radius: 1.0 }),
            entry(Bump { radius: 2.0 }),
            entry(PowerCutoff { a: -0.5, k1: 0, k2: 2 }),
            entry(PowerCutoff { a: 1.0, k1: 1, k2: 2 }),
            entry(BandlimitedKernel { r: 1 }),
            entry(BandlimitedKernel { r: 4 }),
            entry(AnnulusIndicator { k: 0 }),
            entry(Harmonic { k: vec![2, 3] }),
            entry(PolynomialWindow { degree: 2, radius: 1.5 }),
        ],
    }
}

/// The spectrally resolved subset: functions whose spectrum decays below the
/// reconstruction tolerance inside the resolvable band (smooth, or exactly
/// band-limited). Indicators and power cutoffs are excluded — their jump
/// discontinuities put genuine mass above the Nyquist blocks.
pub fn spectral_corpus(dim: usize) -> Vec<CorpusEntry> {
    standard_corpus(dim)
        .into_iter()
        .filter(|e| match &e.function {
            TestFunction::Gaussian { .. } => true,
            TestFunction::Bump { radius } => *radius >= 2.0,
            TestFunction::BandlimitedKernel { .. } => true,
            TestFunction::Harmonic { .. } => true,
            _ => false,
        })
        .collect()
}

/// The dyadic dilation family of a corpus function, taken analytically.
///
/// Returns `(g, c)` with `c * g(x) = f(2^m x)` pointwise, so norms of the
/// dilated function are `c` times norms of the render of `g` — no resampling
/// and none of the staircase artifacts a lattice stretch would introduce.
/// Kinds that are not closed under dilation return `None`:
/// band-limited kernels (on the torus, `f(2^m x)` has spectrum only on bins
/// divisible by `2^m`, which is not a kernel of another scale), harmonics
/// whose frequency does not divide evenly, and polynomial windows (their
/// affine offset breaks homogeneity).
pub fn dilated_scaled(tf: &TestFunction, m: i32) -> Option<(TestFunction, f64)> {
    use TestFunction::*;
    if m == 0 {
        return Some((tf.clone(), 1.0));
    }
    let lambda = (m as f64).exp2();
    match tf {
        Gaussian { a } => Some((Gaussian { a: a * lambda * lambda }, 1.0)),
        Bump { radius } => Some((Bump { radius: radius / lambda }, 1.0)),
        AnnulusIndicator { k } => Some((AnnulusIndicator { k: k - m }, 1.0)),
        // |2^m x|^a on the shifted annulus span: the amplitude factor 2^{am}
        // comes out exactly (powers of two are exact in binary floats).
        PowerCutoff { a, k1, k2 } => Some((
            PowerCutoff { a: *a, k1: k1 - m, k2: k2 - m },
            (a * m as f64).exp2(),
        )),
        BandlimitedKernel { .. } => None,
        Harmonic { k } => {
            if m > 0 {
                let shifted = k.iter().map(|c| c << m).collect();
                Some((Harmonic { k: shifted }, 1.0))
            } else {
                let div = 1i64 << (-m);
                if k.iter().all(|c| c % div == 0) {
                    let shifted = k.iter().map(|c| c / div).collect();
                    Some((Harmonic { k: shifted }, 1.0))
                } else {
                    None
                }
            }
        }
        PolynomialWindow { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::dilate_dyadic;
    use crate::quasinorms::{herz_norm, lebesgue_norm};
    use crate::lattice::AnnulusRange;

    fn grid1() -> Grid {
        Grid::default_for_dim(1).unwrap()
    }

    #[test]
    fn every_standard_entry_renders() {
        for dim in [1, 2] {
            let grid = Grid::default_for_dim(dim).unwrap();
            for e in standard_corpus(dim) {
                let f = e.function.render(&grid).unwrap();
                assert!(f.max_abs().is_finite(), "{}", e.name);
            }
        }
    }

    #[test]
    fn corpus_labels_are_unique_and_token_like() {
        for dim in [1, 2] {
            let corpus = standard_corpus(dim);
            let mut names: Vec<&str> = corpus.iter().map(|e| e.name.as_str()).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), corpus.len());
            for n in names {
                assert!(!n.contains(',') && !n.contains(' '), "{n}");
            }
        }
    }

    #[test]
    fn gaussian_l2_matches_the_gaussian_integral() {
        let f = TestFunction::Gaussian { a: 1.0 };
        let g1 = f.render(&grid1()).unwrap();
        let v1 = lebesgue_norm(&g1, 2.0, None).unwrap().value;
        let exact1 = (std::f64::consts::PI / 2.0).powf(0.25);
        assert!((v1 - exact1).abs() <= 1e-10 * exact1, "{v1} vs {exact1}");
        let g2 = f.render(&Grid::default_for_dim(2).unwrap()).unwrap();
        let v2 = lebesgue_norm(&g2, 2.0, None).unwrap().value;
        let exact2 = (std::f64::consts::PI / 2.0).powf(0.5);
        assert!((v2 - exact2).abs() <= 1e-10 * exact2, "{v2} vs {exact2}");
    }

    #[test]
    fn renders_touching_the_seam_are_rejected() {
        let g = grid1();
        let edge = TestFunction::AnnulusIndicator { k: 4 };
        assert!(matches!(edge.render(&g), Err(CoreError::Truncation(_))));
        let wide = TestFunction::Gaussian { a: 0.001 };
        assert!(matches!(wide.render(&g), Err(CoreError::Truncation(_))));
    }

    #[test]
    fn degenerate_cutoff_beyond_the_grid_renders_as_zero() {
        let g = grid1();
        let f = TestFunction::PowerCutoff { a: 1.0, k1: 10, k2: 11 }
            .render(&g)
            .unwrap();
        assert_eq!(f.max_abs(), 0.0);
    }

    #[test]
    fn closed_form_values_pin_the_examples() {
        // Unit annulus, a = 0: the annulus has measure 1 in one dimension.
        let flat = TestFunction::PowerCutoff { a: 0.0, k1: 0, k2: 0 };
        let hp = HerzParams::new(0.3, 2.0, 2.0).unwrap();
        let v = oracle_herz_norm(&flat, hp, 1).unwrap();
        assert!((v - 1.0).abs() <= 1e-12);
        // a q + n = 0 branch: each annulus integral is surf * ln 2.
        let inv = TestFunction::PowerCutoff { a: -1.0, k1: 1, k2: 2 };
        let hp = HerzParams::new(0.0, f64::INFINITY, 1.0).unwrap();
        let v = oracle_herz_norm(&inv, hp, 1).unwrap();
        assert!((v - 2.0 * std::f64::consts::LN_2).abs() <= 1e-12);
        // |x| on the unit annulus integrates to 3/4.
        let lin = TestFunction::PowerCutoff { a: 1.0, k1: 0, k2: 0 };
        let hp = HerzParams::new(0.0, 1.0, 1.0).unwrap();
        let v = oracle_herz_norm(&lin, hp, 1).unwrap();
        assert!((v - 0.75).abs() <= 1e-12);
    }

    #[test]
    fn sampled_norm_tracks_the_closed_form() {
        let g = grid1();
        let tf = TestFunction::PowerCutoff { a: 1.0, k1: 1, k2: 3 };
        let f = tf.render(&g).unwrap();
        let hp = HerzParams::new(0.25, 2.0, 2.0).unwrap();
        let sampled = herz_norm(&f, hp, AnnulusRange::default_for(&g)).unwrap().value;
        let exact = oracle_herz_norm(&tf, hp, 1).unwrap();
        assert!(
            (sampled - exact).abs() <= 0.005 * exact,
            "{sampled} vs {exact}"
        );
    }

    #[test]
    fn dilating_a_power_cutoff_shifts_its_annuli() {
        let g = grid1();
        let a = 0.75;
        let f = TestFunction::PowerCutoff { a, k1: 1, k2: 2 }.render(&g).unwrap();
        let dilated = dilate_dyadic(&f, 1).unwrap();
        let shifted = TestFunction::PowerCutoff { a, k1: 0, k2: 1 }.render(&g).unwrap();
        let scale = f64::exp2(a);
        let peak = f.max_abs();
        for (d, s) in dilated.values().iter().zip(shifted.values()) {
            assert!((d - scale * s).norm() <= 1e-10 * peak);
        }
    }

    #[test]
    fn harmonic_renders_an_exact_spectral_bin() {
        let g = grid1();
        let f = TestFunction::Harmonic { k: vec![17] }.render(&g).unwrap();
        let spec = spectral::dft(&f);
        let n = g.samples_per_dim();
        let expected = (n as f64).sqrt();
        for (idx, v) in spec.values().iter().enumerate() {
            let bin = spectral::bin_of_index(n, idx);
            if bin == 17 {
                assert!((v.re - expected).abs() <= 1e-10 * expected);
                assert!(v.im.abs() <= 1e-10 * expected);
            } else {
                assert!(v.norm() <= 1e-12 * expected, "bin {bin}");
            }
        }
    }

    #[test]
    fn bandlimited_kernel_spectrum_sits_on_the_profile() {
        let g = grid1();
        let f = TestFunction::BandlimitedKernel { r: 4 }.render(&g).unwrap();
        assert!(f.values().iter().all(|v| v.im == 0.0));
        let spec = spectral::dft(&f);
        let n = g.samples_per_dim();
        let peak = spec.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (idx, v) in spec.values().iter().enumerate() {
            let r = spectral::bin_of_index(n, idx).abs() as f64;
            let profile = spectral::lowpass_profile(r / 4.0);
            assert!(
                (v.re - profile).abs() <= 1e-12 * peak,
                "bin radius {r}: {} vs {profile}",
                v.re
            );
            if r >= 6.0 {
                assert!(v.norm() <= 1e-13 * peak);
            }
        }
    }

    #[test]
    fn spectral_subset_keeps_only_smooth_kinds() {
        for dim in [1, 2] {
            for e in spectral_corpus(dim) {
                assert!(
                    !matches!(
                        e.function,
                        TestFunction::AnnulusIndicator { .. }
                            | TestFunction::PowerCutoff { .. }
                            | TestFunction::PolynomialWindow { .. }
                    ),
                    "{}",
                    e.name
                );
            }
        }
    }

    #[test]
    fn test_function_round_trips_through_json() {
        let tf = TestFunction::PowerCutoff { a: -0.5, k1: 0, k2: 3 };
        let text = serde_json::to_string(&tf).unwrap();
        assert!(text.contains("\"kind\":\"power_cutoff\""));
        let back: TestFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(back, tf);
    }

    /// For m >= 0 the lattice compression `dilate_dyadic` is exact
    /// subsampling, so the analytic family must agree with it sample by
    /// sample. (The m < 0 stretch is a nearest-cell staircase and is exactly
    /// what the analytic family exists to avoid.)
    #[test]
    fn analytic_dilation_family_matches_lattice_compression() {
        let grid = grid1();
        for tf in [
            TestFunction::Gaussian { a: 1.0 },
            TestFunction::Bump { radius: 2.0 },
            TestFunction::PowerCutoff { a: -0.5, k1: -3, k2: 1 },
            TestFunction::AnnulusIndicator { k: 0 },
        ] {
            let f = tf.render(&grid).unwrap();
            let compressed = dilate_dyadic(&f, 1).unwrap();
            let (g, c) = dilated_scaled(&tf, 1).unwrap();
            let direct = g.render(&grid).unwrap();
            let worst = compressed
                .values()
                .iter()
                .zip(direct.values())
                .map(|(a, b)| (a - b * c).norm())
                .fold(0.0_f64, f64::max);
            assert!(worst <= 1e-12 * f.max_abs(), "{}: {worst:.3e}", tf.label());
        }
    }

    #[test]
    fn dilation_family_amplitude_tracks_the_power() {
        let (g, c) = dilated_scaled(&TestFunction::PowerCutoff { a: -1.0, k1: -8, k2: 3 }, 2).unwrap();
        assert_eq!(g, TestFunction::PowerCutoff { a: -1.0, k1: -10, k2: 1 });
        assert_eq!(c, 0.25);
        assert!(dilated_scaled(&TestFunction::BandlimitedKernel { r: 4 }, 1).is_none());
        assert!(dilated_scaled(&TestFunction::Harmonic { k: vec![3] }, -1).is_none());
        let (h, _) = dilated_scaled(&TestFunction::Harmonic { k: vec![4] }, -2).unwrap();
        assert_eq!(h, TestFunction::Harmonic { k: vec![1] });
    }
}
