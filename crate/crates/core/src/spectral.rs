//! Fourier-multiplier algebra and the Dirichlet–Neumann operator (DNO).
//!
//! Four forms of the DNO are provided: the flat-bottom leading term
//! `D tanh(hD)`, the first-order form with the `G⁽⁰⁾ + G⁽¹⁾` correction, the
//! normal-ordered exact formula truncated at a configurable power of the
//! surface elevation, and the long-wave polynomial form.
//!
//! Operator convention: `D = -i ∂x`, so `D e^{ikx} = k e^{ikx}` and products
//! like `D η D ξ` reduce to the real operation `-(η ξ_x)_x`. All products of
//! physical-space fields are dealiased by the 2/3 rule.

use num_complex::Complex64;

use crate::error::{Result, WaveError};
use crate::grid::{PeriodicGrid, SurfaceField};
use crate::params::PhysicalParams;

/// A Fourier multiplier `m(k)` applied spectrally.
pub struct Multiplier {
    symbol: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl Multiplier {
    pub fn new(symbol: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            symbol: Box::new(symbol),
        }
    }

    /// Real-valued symbol (even symbols preserve realness of the field).
    pub fn real(symbol: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(move |k| Complex64::new(symbol(k), 0.0))
    }

    pub fn eval(&self, k: f64) -> Complex64 {
        (self.symbol)(k)
    }
}

/// Apply a multiplier to a field: `IFFT(m(k) · f̂(k))`.
///
/// The result is real whenever the symbol has the conjugate symmetry of a
/// real operator; the imaginary residue is discarded.
pub fn apply_multiplier(field: &SurfaceField, m: &Multiplier) -> Result<SurfaceField> {
    let grid = field.grid().clone();
    let mut spec = field.to_spectrum();
    for (c, &k) in spec.iter_mut().zip(grid.wavenumbers()) {
        let s = m.eval(k);
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(WaveError::Numeric(format!(
                "multiplier symbol non-finite at k = {k}"
            )));
        }
        *c *= s;
    }
    Ok(SurfaceField::from_spectrum(grid, &spec))
}

/// Apply a real symbol without allocation of a `Multiplier`.
fn apply_real_symbol(field: &SurfaceField, symbol: impl Fn(f64) -> f64) -> SurfaceField {
    let grid = field.grid().clone();
    let mut spec = field.to_spectrum();
    for (c, &k) in spec.iter_mut().zip(grid.wavenumbers()) {
        *c *= symbol(k);
    }
    SurfaceField::from_spectrum(grid, &spec)
}

/// Zero all modes with |k| above 2/3 of the Nyquist wavenumber.
pub fn dealias_spectrum(grid: &PeriodicGrid, spec: &mut [Complex64]) {
    let cutoff = 2.0 / 3.0 * grid.k_nyquist();
    for (c, &k) in spec.iter_mut().zip(grid.wavenumbers()) {
        if k.abs() > cutoff {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

/// Project a field onto the dealiased band.
pub fn dealias(field: &SurfaceField) -> SurfaceField {
    let mut spec = field.to_spectrum();
    dealias_spectrum(field.grid(), &mut spec);
    SurfaceField::from_spectrum(field.grid().clone(), &spec)
}

/// Pointwise product with 2/3-rule dealiasing of both factors and the result.
pub fn dealiased_product(a: &SurfaceField, b: &SurfaceField) -> SurfaceField {
    let p = dealias(a).zip_with(&dealias(b), |x, y| x * y);
    dealias(&p)
}

/// Spectral derivative `∂x` (multiplier `ik`, Nyquist mode zeroed).
pub fn ddx(field: &SurfaceField) -> SurfaceField {
    let grid = field.grid().clone();
    let mut spec = field.to_spectrum();
    ddx_spectrum(&grid, &mut spec);
    SurfaceField::from_spectrum(grid, &spec)
}

/// In-place spectral derivative on a spectrum.
pub fn ddx_spectrum(grid: &PeriodicGrid, spec: &mut [Complex64]) {
    let nyq = grid.nyquist_index();
    for (j, (c, &k)) in spec.iter_mut().zip(grid.wavenumbers()).enumerate() {
        *c = if j == nyq {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, k) * *c
        };
    }
}

/// `D tanh(hD)` — the flat-surface DNO kernel (symbol `k tanh(hk)`).
fn d_tanh(field: &SurfaceField, h: f64) -> SurfaceField {
    apply_real_symbol(field, |k| k * (h * k).tanh())
}

/// Flat-surface DNO: `G⁽⁰⁾ξ = D tanh(hD) ξ`.
pub fn dno_flat(xi: &SurfaceField, params: &PhysicalParams) -> SurfaceField {
    d_tanh(xi, params.depth())
}

/// First-order DNO: `G⁽⁰⁾ξ + (D η D - D tanh(hD) η D tanh(hD)) ξ`.
pub fn dno_order1(
    xi: &SurfaceField,
    eta: &SurfaceField,
    params: &PhysicalParams,
) -> SurfaceField {
    let h = params.depth();
    if eta.linf() > 0.2 * h {
        log::warn!(
            "first-order DNO called with max|eta| = {:.3e} > 0.2 h; truncation error grows",
            eta.linf()
        );
    }
    let g0 = d_tanh(xi, h);
    // D η D ξ = -(η ξ_x)_x
    let term_a = ddx(&dealiased_product(eta, &ddx(xi))).scale(-1.0);
    // D tanh(hD) [η · D tanh(hD) ξ]
    let term_b = d_tanh(&dealiased_product(eta, &g0), h);
    g0.add(&term_a.sub(&term_b))
}

/// Exact normal-ordered DNO
/// `Gξ = -η_x ξ_x + (1+η_x²) :sinh((η+h)D): D [:cosh((η+h)D):]⁻¹ ξ`,
/// with both normal-ordered operators expanded to `order` powers of η and the
/// inverse taken as a Neumann series truncated at the same order.
pub fn dno_paper_exact(
    xi: &SurfaceField,
    eta: &SurfaceField,
    params: &PhysicalParams,
    order: usize,
) -> Result<SurfaceField> {
    if order > 2 {
        return Err(WaveError::UnsupportedOrder { got: order, max: 2 });
    }
    let h = params.depth();
    let dt_xi = d_tanh(xi, h); // D tanh(hD) ξ
    let mut out = dt_xi.clone();
    if order >= 1 {
        let eta_x = ddx(eta);
        let xi_x = ddx(xi);
        // -η_x ξ_x
        out = out.add(&dealiased_product(&eta_x, &xi_x).scale(-1.0));
        // η · D² ξ   (D² has symbol k²)
        let d2_xi = apply_real_symbol(xi, |k| k * k);
        out = out.add(&dealiased_product(eta, &d2_xi));
        // -D tanh(hD) [η · D tanh(hD) ξ]
        out = out.sub(&d_tanh(&dealiased_product(eta, &dt_xi), h));
    }
    if order == 2 {
        let eta_x = ddx(eta);
        let half_eta_sq = dealiased_product(eta, eta).scale(0.5);
        // η_x² · D tanh(hD) ξ
        let b1 = dealiased_product(&dealiased_product(&eta_x, &eta_x), &dt_xi);
        // (η²/2) · D³ tanh(hD) ξ
        let d3t_xi = apply_real_symbol(xi, |k| k * k * k * (h * k).tanh());
        let b2 = dealiased_product(&half_eta_sq, &d3t_xi);
        // -η · D² [η · D tanh(hD) ξ]
        let w = dealiased_product(eta, &dt_xi);
        let b3 = dealiased_product(eta, &apply_real_symbol(&w, |k| k * k)).scale(-1.0);
        // -D tanh(hD) [(η²/2) · D² ξ] + D tanh(hD) [η · D tanh(hD) (η · D tanh(hD) ξ)]
        let d2_xi = apply_real_symbol(xi, |k| k * k);
        let b4a = d_tanh(&dealiased_product(&half_eta_sq, &d2_xi), h).scale(-1.0);
        let b4b = d_tanh(&dealiased_product(eta, &d_tanh(&w, h)), h);
        out = out.add(&b1).add(&b2).add(&b3).add(&b4a).add(&b4b);
    }
    Ok(out)
}

/// Long-wave DNO: `Gξ = -h ξ_xx - (1/3) h³ ξ_xxxx - (η ξ_x)_x`.
pub fn dno_longwave(
    xi: &SurfaceField,
    eta: &SurfaceField,
    params: &PhysicalParams,
) -> SurfaceField {
    let h = params.depth();
    // -h ξ_xx - h³/3 ξ_xxxx has symbol h k² - h³ k⁴ / 3
    let poly = apply_real_symbol(xi, |k| {
        let k2 = k * k;
        h * k2 - h * h * h * k2 * k2 / 3.0
    });
    poly.sub(&ddx(&dealiased_product(eta, &ddx(xi))))
}
