//! Periodic grids and real surface fields with cached FFT plans.
//!
//! The infinite line is modelled by a periodic box of length `L`; fields are
//! assumed to have decayed below round-off at the box edges. Fields live in
//! physical space; spectral views are computed on demand and never persisted
//! across mutations.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, WaveError};

/// Uniform 1-D periodic grid of `n` points on `[0, L)` with FFT-ordered
/// wavenumbers `k_j = 2π j / L`, `j ∈ [-n/2, n/2)`.
pub struct PeriodicGrid {
    n: usize,
    length: f64,
    wavenumbers: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl PeriodicGrid {
    /// Build a grid with `n` points (power of two, >= 8) on `[0, length)`.
    pub fn new(n: usize, length: f64) -> Result<Arc<Self>> {
        if n < 8 || !n.is_power_of_two() {
            return Err(WaveError::Config(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(WaveError::Config(format!(
                "grid length must be positive and finite, got {length}"
            )));
        }
        let base = 2.0 * std::f64::consts::PI / length;
        let mut wavenumbers = vec![0.0; n];
        for (j, k) in wavenumbers.iter_mut().enumerate() {
            let m = if j <= n / 2 - 1 {
                j as i64
            } else {
                j as i64 - n as i64
            };
            *k = base * m as f64;
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Arc::new(Self {
            n,
            length,
            wavenumbers,
            fwd,
            inv,
        }))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Wavenumbers in FFT order. The Nyquist mode sits at index `n/2` and
    /// carries the negative value `-π n / L`.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Physical coordinate of sample `j`.
    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx()
    }

    /// All sample coordinates.
    pub fn coords(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Index of the Nyquist mode.
    pub fn nyquist_index(&self) -> usize {
        self.n / 2
    }

    /// Largest wavenumber magnitude on the grid (the Nyquist wavenumber).
    pub fn k_nyquist(&self) -> f64 {
        std::f64::consts::PI * self.n as f64 / self.length
    }

    /// Forward transform of real samples (unnormalised, rustfft convention).
    pub fn fft(&self, values: &[f64]) -> Vec<Complex64> {
        debug_assert_eq!(values.len(), self.n);
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    /// Inverse transform, returning the real part scaled by `1/n`.
    pub fn ifft_real(&self, spectrum: &[Complex64]) -> Vec<f64> {
        debug_assert_eq!(spectrum.len(), self.n);
        let mut buf = spectrum.to_vec();
        self.inv.process(&mut buf);
        let norm = 1.0 / self.n as f64;
        buf.iter().map(|c| c.re * norm).collect()
    }

    /// Band-limited interpolation of a real field's spectrum at arbitrary `x`.
    ///
    /// Uses the symmetric trigonometric interpolant: real modes paired, the
    /// Nyquist mode contributes a pure cosine.
    pub fn eval_spectrum(&self, spectrum: &[Complex64], x: f64) -> f64 {
        debug_assert_eq!(spectrum.len(), self.n);
        let norm = 1.0 / self.n as f64;
        let half = self.n / 2;
        let mut acc = spectrum[0].re;
        for j in 1..half {
            let k = self.wavenumbers[j];
            let (s, c) = (k * x).sin_cos();
            // 2 Re(c_j e^{ikx}) for the conjugate pair (j, n-j)
            acc += 2.0 * (spectrum[j].re * c - spectrum[j].im * s);
        }
        let k_nyq = -self.wavenumbers[half]; // stored negative; cosine is even
        acc += spectrum[half].re * (k_nyq * x).cos();
        acc * norm
    }
}

impl PartialEq for PeriodicGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.length == other.length
    }
}

impl fmt::Debug for PeriodicGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicGrid")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

/// Construct a grid; convenience wrapper mirroring the library entry points.
pub fn make_grid(n_points: usize, length: f64) -> Result<Arc<PeriodicGrid>> {
    PeriodicGrid::new(n_points, length)
}

/// Real-valued field sampled on a [`PeriodicGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceField {
    grid: Arc<PeriodicGrid>,
    values: Vec<f64>,
}

impl SurfaceField {
    pub fn new(grid: Arc<PeriodicGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(WaveError::Config(format!(
                "field length {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(WaveError::Numeric(
                "field contains non-finite values".into(),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<PeriodicGrid>) -> Self {
        let n = grid.len();
        Self {
            grid,
            values: vec![0.0; n],
        }
    }

    /// Sample a function of the physical coordinate.
    pub fn from_fn(grid: Arc<PeriodicGrid>, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.x(j))).collect();
        Self { grid, values }
    }

    pub fn from_spectrum(grid: Arc<PeriodicGrid>, spectrum: &[Complex64]) -> Self {
        let values = grid.ifft_real(spectrum);
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<PeriodicGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn to_spectrum(&self) -> Vec<Complex64> {
        self.grid.fft(&self.values)
    }

    /// Band-limited evaluation at an arbitrary coordinate.
    pub fn eval_at(&self, x: f64) -> f64 {
        let spec = self.to_spectrum();
        self.grid.eval_spectrum(&spec, x)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(
            self.grid.as_ref(),
            other.grid.as_ref(),
            "fields live on different grids"
        );
        Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| s * v)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Periodic trapezoid quadrature of the field over the box (mean × L).
    pub fn integral(&self) -> f64 {
        self.mean() * self.grid.length()
    }

    pub fn linf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Root mean square over the grid samples.
    pub fn l2(&self) -> f64 {
        (self.values.iter().map(|&v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// Grid inner product Σ a_i b_i dx.
    pub fn inner(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a * b)
            .sum::<f64>()
            * self.grid.dx()
    }
}
