//! Monte Carlo estimate of λ from the scaling of `vol{|f| <= t}` near the
//! origin: the volume behaves like `t^α`, with `λ = α` over a real box and
//! `λ = α/2` over a complex polydisk.

use num_complex::Complex;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Coefficient, Polynomial};

/// Samples drawn from one RNG stream.
pub const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Real,
    Complex,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Real => "real",
            Mode::Complex => "complex",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub mode: Mode,
    pub samples_per_level: u64,
    pub t_min: f64,
    pub t_max: f64,
    /// Number of grid levels.
    pub points: usize,
    pub box_radius: f64,
    pub seed: u64,
    /// Levels with fewer hits are left out of the fit.
    pub min_hits: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Complex,
            samples_per_level: 1_000_000,
            t_min: 1e-5,
            t_max: 1e-2,
            points: 8,
            box_radius: 1.0,
            seed: 42,
            min_hits: 100,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<(), EstimatorError> {
        let bad = |msg: &str| Err(EstimatorError::InvalidConfig(msg.to_string()));
        if self.samples_per_level == 0 {
            return bad("samples per level must be positive");
        }
        if !(self.t_min > 0.0 && self.t_min < self.t_max && self.t_max <= 1.0) {
            return bad("need 0 < t_min < t_max <= 1");
        }
        if self.points == 0 {
            return bad("need at least one grid level");
        }
        if !(self.box_radius > 0.0 && self.box_radius.is_finite()) {
            return bad("box radius must be positive");
        }
        if self.min_hits == 0 {
            return bad("min_hits must be positive");
        }
        Ok(())
    }

    /// Geometric grid from `t_min` to `t_max`.
    pub fn t_grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.t_max];
        }
        let ratio = (self.t_max / self.t_min).ln() / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.t_max
                } else {
                    self.t_min * (ratio * i as f64).exp()
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate<F> {
    /// NaN when fewer than two levels were usable.
    pub lambda_hat: F,
    pub stderr: F,
    /// Fitted slope of log(hit fraction) against log t.
    pub slope: F,
    pub levels_used: usize,
    pub samples_per_level: u64,
    /// `(t, hits)` for every grid level, used or not.
    pub hit_counts: Vec<(f64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimatorError<F = f64> {
    #[error("invalid estimator configuration: {0}")]
    InvalidConfig(String),
    #[error("unreliable estimate: {reason}")]
    Unreliable { reason: String, partial: Box<Estimate<F>> },
}

/// `f` with coefficients embedded in the complex numbers.
struct Compiled<F> {
    terms: Vec<(Vec<u32>, Complex<F>)>,
    dim: usize,
}

impl<F: Float> Compiled<F> {
    fn new<C: Coefficient>(f: &Polynomial<C>) -> Self {
        Self {
            terms: f
                .terms()
                .map(|(e, c)| (e.as_slice().to_vec(), c.embed::<F>()))
                .collect(),
            dim: f.variables().len(),
        }
    }

    fn norm_at(&self, point: &[Complex<F>]) -> F {
        let mut acc = Complex::new(F::zero(), F::zero());
        for (e, c) in &self.terms {
            let mut m = *c;
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m = m * x.powu(k);
                }
            }
            acc = acc + m;
        }
        acc.norm()
    }
}

fn stream(seed: u64, level: u64, chunk: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream((level << 32) | chunk);
    rng
}

fn uniform<F: Float>(rng: &mut ChaCha12Rng, radius: F) -> F {
    let u = F::from(rng.random::<f64>()).unwrap();
    radius * (u + u - F::one())
}

fn sample_point<F: Float>(rng: &mut ChaCha12Rng, mode: Mode, radius: F, out: &mut [Complex<F>]) {
    for z in out.iter_mut() {
        *z = match mode {
            Mode::Real => Complex::new(uniform(rng, radius), F::zero()),
            Mode::Complex => loop {
                let re = uniform(rng, radius);
                let im = uniform(rng, radius);
                if re * re + im * im <= radius * radius {
                    break Complex::new(re, im);
                }
            },
        };
    }
}

/// Number of sample points with `|f| <= t` among the samples of `level`.
fn count_hits<F: Float + Send + Sync>(f: &Compiled<F>, t: F, level: u64, config: &EstimatorConfig) -> u64 {
    let radius = F::from(config.box_radius).unwrap();
    let chunks = config.samples_per_level.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let n = CHUNK.min(config.samples_per_level - chunk * CHUNK);
            let mut rng = stream(config.seed, level, chunk);
            let mut point = vec![Complex::new(F::zero(), F::zero()); f.dim];
            let mut hits = 0u64;
            for _ in 0..n {
                sample_point(&mut rng, config.mode, radius, &mut point);
                if f.norm_at(&point) <= t {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

/// Fraction of the level-0 sample with `|f| <= t`. The sample does not
/// depend on `t`, so the fraction is non-decreasing in `t`.
pub fn volume_probe<F, C>(f: &Polynomial<C>, t: F, config: &EstimatorConfig) -> F
where
    F: Float + Send + Sync,
    C: Coefficient,
{
    let compiled = Compiled::<F>::new(f);
    let hits = count_hits(&compiled, t, 0, config);
    F::from(hits).unwrap() / F::from(config.samples_per_level).unwrap()
}

/// Weighted least squares of `ln(hits/N)` on `ln t`, weights = hits
/// (the inverse variance of a log binomial proportion).
fn fit<F: Float>(levels: &[(f64, u64)], samples: u64) -> (F, F) {
    let n = F::from(samples).unwrap();
    let pts: Vec<(F, F, F)> = levels
        .iter()
        .map(|&(t, h)| {
            let w = F::from(h).unwrap();
            (F::from(t).unwrap().ln(), (w / n).ln(), w)
        })
        .collect();
    let sw = pts.iter().fold(F::zero(), |a, p| a + p.2);
    let mx = pts.iter().fold(F::zero(), |a, p| a + p.2 * p.0) / sw;
    let my = pts.iter().fold(F::zero(), |a, p| a + p.2 * p.1) / sw;
    let sxx = pts.iter().fold(F::zero(), |a, p| a + p.2 * (p.0 - mx) * (p.0 - mx));
    let sxy = pts.iter().fold(F::zero(), |a, p| a + p.2 * (p.0 - mx) * (p.1 - my));
    (sxy / sxx, (F::one() / sxx).sqrt())
}

/// Hit counts on the whole grid (fresh samples per level) and the fitted λ.
pub fn estimate<F, C>(f: &Polynomial<C>, config: &EstimatorConfig) -> Result<Estimate<F>, EstimatorError<F>>
where
    F: Float + Send + Sync,
    C: Coefficient,
{
    config.validate().map_err(|e| match e {
        EstimatorError::InvalidConfig(m) => EstimatorError::InvalidConfig(m),
        EstimatorError::Unreliable { reason, .. } => EstimatorError::InvalidConfig(reason),
    })?;
    let compiled = Compiled::<F>::new(f);
    let hit_counts: Vec<(f64, u64)> = config
        .t_grid()
        .into_iter()
        .enumerate()
        .map(|(level, t)| (t, count_hits(&compiled, F::from(t).unwrap(), level as u64, config)))
        .collect();
    let usable: Vec<(f64, u64)> = hit_counts
        .iter()
        .copied()
        .filter(|&(_, h)| h >= config.min_hits && h < config.samples_per_level)
        .collect();
    let mut est = Estimate {
        lambda_hat: F::nan(),
        stderr: F::nan(),
        slope: F::nan(),
        levels_used: usable.len(),
        samples_per_level: config.samples_per_level,
        hit_counts,
    };
    if usable.len() >= 2 {
        let (slope, se) = fit::<F>(&usable, config.samples_per_level);
        let scale = match config.mode {
            Mode::Real => F::one(),
            Mode::Complex => F::from(2.0).unwrap(),
        };
        est.slope = slope;
        est.lambda_hat = slope / scale;
        est.stderr = se / scale;
    }
    let reason = if usable.len() < 2 {
        Some(format!(
            "only {} level(s) with at least {} hits",
            usable.len(),
            config.min_hits
        ))
    } else if config.points < 4 {
        Some(format!("grid has {} levels, at least 4 needed", config.points))
    } else {
        None
    };
    match reason {
        Some(reason) => Err(EstimatorError::Unreliable {
            reason,
            partial: Box::new(est),
        }),
        None => Ok(est),
    }
}
