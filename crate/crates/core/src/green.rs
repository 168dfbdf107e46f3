//! Green function of the Laplacian with Dirichlet conditions on the strip
//! `{-h < z < 0}`, in four representations, plus the first-order wavy-domain
//! form and the surface-evaluated derivatives that drive the vortex–wave
//! coupling.
//!
//! Conventions follow the logarithm-of-squared-distance normalisation
//! `Γ₀ = (1/4π) ln((x-x₀)² + (z-z₀)²)`; lengths are dimensional throughout.
//! Only differences and derivatives of Γ enter the dynamics, so the additive
//! constant from dimensional logarithms is inert.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Result, WaveError};
use crate::grid::{PeriodicGrid, SurfaceField};
use crate::params::VortexState;
use crate::spectral::{dealiased_product, dealias_spectrum};

/// A point `(x, z)` in the fluid.
pub type Point = (f64, f64);

const FOUR_PI: f64 = 4.0 * PI;
// Beyond this scaled horizontal separation every strip kernel is below
// ~1e-140 of its peak; the direct formulas would overflow cosh/sinh.
const THETA_CUTOFF: f64 = 340.0;

fn check_strip_interior(label: &str, z: f64, h: f64) -> Result<()> {
    if !(z > -h && z < 0.0) {
        return Err(WaveError::Domain(format!(
            "{label} must lie strictly inside the strip -h < z < 0 (z = {z}, h = {h})"
        )));
    }
    Ok(())
}

/// Free-space Green function `Γ₀ = (1/4π) ln((x-x₀)² + (z-z₀)²)`.
pub fn gamma_free(x: Point, x0: Point) -> Result<f64> {
    let r2 = (x.0 - x0.0).powi(2) + (x.1 - x0.1).powi(2);
    if r2 == 0.0 {
        return Err(WaveError::Singularity(
            "free-space Green function evaluated at its source".into(),
        ));
    }
    Ok(r2.ln() / FOUR_PI)
}

/// Conformal-map Green function of the Dirichlet strip.
///
/// Vanishes on both boundaries (returned as exact 0 there) and decays like
/// `e^{-π|x-x₀|/h}` in the horizontal direction.
pub fn gamma_conformal(x: Point, x0: Point, h: f64) -> Result<f64> {
    let (xx, z) = x;
    let (x0x, z0) = x0;
    for (label, zz) in [("field point", z), ("source", z0)] {
        if !(zz >= -h && zz <= 0.0) {
            return Err(WaveError::Domain(format!(
                "{label} outside the closed strip (z = {zz}, h = {h})"
            )));
        }
    }
    if xx == x0x && z == z0 {
        return Err(WaveError::Singularity(
            "strip Green function evaluated at its source".into(),
        ));
    }
    // Dirichlet condition holds identically on either boundary.
    if z == 0.0 || z == -h || z0 == 0.0 || z0 == -h {
        return Ok(0.0);
    }
    let theta = PI * (xx - x0x) / h;
    let a_half = PI * (z - z0) / (2.0 * h);
    let b_half = PI * (z + z0) / (2.0 * h);
    let t = theta.abs();
    if t > 36.0 {
        // cosh θ - cos A = (e^θ/2)(1 + e^{-2θ} - 2 cos A e^{-θ}); the leading
        // factor cancels in the ratio.
        let e1 = (-t).exp();
        let e2 = e1 * e1;
        let cos_a = 1.0 - 2.0 * a_half.sin().powi(2);
        let cos_b = 1.0 - 2.0 * b_half.sin().powi(2);
        let num = (e2 - 2.0 * cos_a * e1).ln_1p();
        let den = (e2 - 2.0 * cos_b * e1).ln_1p();
        return Ok((num - den) / FOUR_PI);
    }
    // cosh θ - cos A = 2 (sinh²(θ/2) + sin²(A/2)), cancellation-free.
    let sh2 = (theta / 2.0).sinh().powi(2);
    let num = sh2 + a_half.sin().powi(2);
    let den = sh2 + b_half.sin().powi(2);
    Ok((num / den).ln() / FOUR_PI)
}

/// Log of the n-th factor of the image product.
fn image_log_term(dx2: f64, z: f64, z0: f64, h: f64, n: i64) -> f64 {
    let shift = 2.0 * n as f64 * h;
    let num = dx2 + (z - z0 - shift).powi(2);
    let den = dx2 + (z + z0 + shift).powi(2);
    (num / den).ln()
}

// ---- Euler–Maclaurin tail of the image sum ---------------------------------
// The paired terms P(t) = Σ_± ln(a² + (w ∓ 2th)²) - ln(a² + (w' ∓ 2th)²)
// with w = z-z₀, w' = z+z₀ decay like 1/t², so the plain partial product
// converges only O(1/N). The tail Σ_{n>N} P(n) is summed by Euler–Maclaurin
// with the closed-form antiderivative of P.

/// Antiderivative helper `∫ ln(a² + u²) du = u ln(u²+a²) - 2u + 2a atan(u/a)`.
fn log_antideriv(u: f64, a: f64) -> f64 {
    if a == 0.0 {
        if u == 0.0 {
            return 0.0;
        }
        return u * (u * u).ln() - 2.0 * u;
    }
    u * (u * u + a * a).ln() - 2.0 * u + 2.0 * a * (u / a).atan()
}

fn image_pair(t: f64, a: f64, w: f64, wp: f64, h: f64) -> f64 {
    let s = 2.0 * t * h;
    (a * a + (w - s).powi(2)).ln() + (a * a + (w + s).powi(2)).ln()
        - (a * a + (wp - s).powi(2)).ln()
        - (a * a + (wp + s).powi(2)).ln()
}

fn image_pair_deriv(t: f64, a: f64, w: f64, wp: f64, h: f64) -> f64 {
    let s = 2.0 * t * h;
    let term = |v: f64, sgn: f64| {
        let u = v + sgn * s;
        4.0 * h * sgn * u / (a * a + u * u)
    };
    term(w, -1.0) + term(w, 1.0) - term(wp, -1.0) - term(wp, 1.0)
}

fn image_tail(n_terms: usize, a: f64, w: f64, wp: f64, h: f64) -> f64 {
    let t = (n_terms + 1) as f64;
    let s = 2.0 * t * h;
    // ∫_t^∞ P dτ in closed form (divergent pieces cancel pairwise at ∞).
    let integral = (log_antideriv(w - s, a) - log_antideriv(w + s, a)
        + log_antideriv(wp + s, a)
        - log_antideriv(wp - s, a))
        / (2.0 * h);
    integral + 0.5 * image_pair(t, a, w, wp, h) - image_pair_deriv(t, a, w, wp, h) / 12.0
}

/// Method-of-images Green function: symmetric partial product over
/// `n ∈ [-n_terms, n_terms]` with the remaining tail summed in closed form
/// (Euler–Maclaurin), so the result converges to [`gamma_conformal`] far
/// faster than the bare O(1/n_terms) truncation.
pub fn gamma_images(x: Point, x0: Point, h: f64, n_terms: usize) -> Result<f64> {
    let (xx, z) = x;
    let (x0x, z0) = x0;
    check_strip_interior("field point", z, h)?;
    check_strip_interior("source", z0, h)?;
    if n_terms < 1 {
        return Err(WaveError::Config("n_terms must be >= 1".into()));
    }
    let dx = xx - x0x;
    let dx2 = dx * dx;
    if dx2 + (z - z0).powi(2) == 0.0 {
        return Err(WaveError::Singularity(
            "image product evaluated at its source".into(),
        ));
    }
    let n = n_terms as i64;
    let mut sum = 0.0;
    for i in -n..=n {
        sum += image_log_term(dx2, z, z0, h, i);
    }
    sum += image_tail(n_terms, dx.abs(), z - z0, z + z0, h);
    Ok(sum / FOUR_PI)
}

/// `sinh(a k) / sinh(h k)` evaluated stably (even in k; k = 0 uses the limit
/// `a/h`). Requires `|a| <= h`.
fn sinh_ratio(a: f64, h: f64, k: f64) -> f64 {
    let kk = k.abs();
    if kk == 0.0 {
        return a / h;
    }
    let mag = |aa: f64| ((aa - h) * kk).exp() * (-(-2.0 * aa * kk).exp_m1()) / (-(-2.0 * h * kk).exp_m1());
    if a >= 0.0 {
        mag(a)
    } else {
        -mag(-a)
    }
}

/// `k cosh(z k) / sinh(h k)` evaluated stably (even in k; limit `1/h` at 0).
fn dcosh_over_sinh(z: f64, h: f64, k: f64) -> f64 {
    let kk = k.abs();
    if kk == 0.0 {
        return 1.0 / h;
    }
    // cosh(zk)/sinh(hk) = e^{(|z|-h)k} (1+e^{-2|z|k}) / (1-e^{-2hk})
    let za = z.abs();
    kk * ((za - h) * kk).exp() * (1.0 + (-2.0 * za * kk).exp())
        / (-(-2.0 * h * kk).exp_m1())
}

/// `k coth(h k)` (limit `1/h` at k = 0).
fn dcoth(h: f64, k: f64) -> f64 {
    let kk = k.abs();
    if kk == 0.0 {
        return 1.0 / h;
    }
    kk * (1.0 + (-2.0 * h * kk).exp()) / (-(-2.0 * h * kk).exp_m1())
}

fn check_operator_inputs(z: f64, x0: Point, h: f64) -> Result<()> {
    if !(z >= -h && z <= 0.0) {
        return Err(WaveError::Domain(format!(
            "slice height must satisfy -h <= z <= 0 (z = {z}, h = {h})"
        )));
    }
    check_strip_interior("source", x0.1, h)
}

/// Operator form of the strip Green function, sampled along the grid at a
/// fixed height `z`:
///
/// `Γ = (1/4π){ln r² - sinh((z+h)D)[sinh(hD)]⁻¹ f_top + sinh(zD)[sinh(hD)]⁻¹ f_bot}`
///
/// with boundary traces `f_top = ln((x-x₀)² + z₀²)` and
/// `f_bot = ln((x-x₀)² + (h+z₀)²)`. The k = 0 mode of `[sinh(hD)]⁻¹` uses the
/// continuum limits of the symbols, which is equivalent to subtracting the
/// trace means and restoring the affine-in-z harmonic matching both boundary
/// means.
pub fn gamma_operator_strip(
    grid: &Arc<PeriodicGrid>,
    z: f64,
    x0: Point,
    h: f64,
) -> Result<SurfaceField> {
    check_operator_inputs(z, x0, h)?;
    let (x0x, z0) = x0;
    let top = SurfaceField::from_fn(grid.clone(), |x| ((x - x0x).powi(2) + z0 * z0).ln());
    let bot = SurfaceField::from_fn(grid.clone(), |x| {
        ((x - x0x).powi(2) + (h + z0).powi(2)).ln()
    });
    let mut top_hat = top.to_spectrum();
    let mut bot_hat = bot.to_spectrum();
    for (j, &k) in grid.wavenumbers().iter().enumerate() {
        top_hat[j] *= sinh_ratio(z + h, h, k);
        bot_hat[j] *= sinh_ratio(z, h, k);
    }
    let top_part = grid.ifft_real(&top_hat);
    let bot_part = grid.ifft_real(&bot_hat);
    let values = (0..grid.len())
        .map(|j| {
            let x = grid.x(j);
            let r2 = (x - x0x).powi(2) + (z - z0).powi(2);
            (r2.ln() - top_part[j] + bot_part[j]) / FOUR_PI
        })
        .collect();
    SurfaceField::new(grid.clone(), values)
}

/// Wavy-domain Green function of the first-order theory, evaluated at one
/// interior point. `order = 0` reproduces [`gamma_operator_strip`] exactly;
/// `order = 1` keeps the terms linear in the surface elevation.
pub fn gamma_wavy(
    x: Point,
    x0: Point,
    eta: &SurfaceField,
    h: f64,
    order: usize,
) -> Result<f64> {
    if order > 1 {
        return Err(WaveError::UnsupportedOrder { got: order, max: 1 });
    }
    let grid = eta.grid().clone();
    let (xx, z) = x;
    let (x0x, z0) = x0;
    let eta_max = eta.values().iter().fold(f64::MIN, |m, &v| m.max(v));
    let eta_min = eta.values().iter().fold(f64::MAX, |m, &v| m.min(v));
    if !(z >= -h && z <= 0.0f64.max(eta_max)) {
        return Err(WaveError::Domain(format!(
            "field point outside the wavy domain (z = {z})"
        )));
    }
    if !(z0 > -h && z0 < eta_min.min(0.0)) {
        return Err(WaveError::Domain(format!(
            "source must lie below the surface trough (z0 = {z0})"
        )));
    }

    let g_top = SurfaceField::from_fn(grid.clone(), |xg| {
        ((xg - x0x).powi(2) + z0 * z0).ln() / FOUR_PI
    });
    let g_bot = SurfaceField::from_fn(grid.clone(), |xg| {
        ((xg - x0x).powi(2) + (h + z0).powi(2)).ln() / FOUR_PI
    });
    let mut top_hat = g_top.to_spectrum();
    let mut bot_hat = g_bot.to_spectrum();

    let mut eta_times_dcosh = 0.0;
    if order == 1 {
        // ∂z Γ₀ on z = 0: -2 z₀ / ((x-x₀)² + z₀²) / 4π
        let g1 = SurfaceField::from_fn(grid.clone(), |xg| {
            -2.0 * z0 / (((xg - x0x).powi(2) + z0 * z0) * FOUR_PI)
        });
        let apply_dcoth = |f: &SurfaceField| {
            let mut s = f.to_spectrum();
            for (j, &k) in grid.wavenumbers().iter().enumerate() {
                s[j] *= dcoth(h, k);
            }
            SurfaceField::from_spectrum(grid.clone(), &s)
        };
        // top trace gains η ∂z Γ₀ from the surface evaluation plus the
        // Neumann-series correction -η D coth(hD) g_top of the inverse.
        let top_corr = dealiased_product(eta, &g1).sub(&dealiased_product(eta, &apply_dcoth(&g_top)));
        let bot_corr = dealiased_product(eta, &apply_dcoth(&g_bot)).scale(-1.0);
        for (j, (t, b)) in top_corr
            .to_spectrum()
            .iter()
            .zip(bot_corr.to_spectrum())
            .enumerate()
        {
            top_hat[j] += t;
            bot_hat[j] += b;
        }
        // -η · D cosh(zD) [sinh(hD)]⁻¹ g_bot from the normal ordering of
        // sinh((z-η)D)
        let mut m3 = g_bot.to_spectrum();
        for (j, &k) in grid.wavenumbers().iter().enumerate() {
            m3[j] *= dcosh_over_sinh(z, h, k);
        }
        dealias_spectrum(&grid, &mut m3);
        let mut eta_hat = eta.to_spectrum();
        dealias_spectrum(&grid, &mut eta_hat);
        eta_times_dcosh = grid.eval_spectrum(&eta_hat, xx) * grid.eval_spectrum(&m3, xx);
    }

    for (j, &k) in grid.wavenumbers().iter().enumerate() {
        top_hat[j] *= sinh_ratio(z + h, h, k);
        bot_hat[j] *= sinh_ratio(z, h, k);
    }
    let r2 = (xx - x0x).powi(2) + (z - z0).powi(2);
    if r2 == 0.0 {
        return Err(WaveError::Singularity(
            "wavy Green function evaluated at its source".into(),
        ));
    }
    Ok(r2.ln() / FOUR_PI - grid.eval_spectrum(&top_hat, xx) + grid.eval_spectrum(&bot_hat, xx)
        - eta_times_dcosh)
}

/// Gradient `(Γ_x, Γ_z)` of the conformal strip Green function with source at
/// the vortex. Excludes self-interaction: evaluation at the vortex errors.
pub fn grad_gamma_strip(x: Point, q: &VortexState, h: f64) -> Result<(f64, f64)> {
    let (xx, z) = x;
    check_strip_interior("vortex", q.q2, h)?;
    if xx == q.q1 && z == q.q2 {
        return Err(WaveError::Singularity(
            "vortex field evaluated at the vortex (no self-interaction)".into(),
        ));
    }
    let theta = PI * (xx - q.q1) / h;
    if theta.abs() > THETA_CUTOFF {
        return Ok((0.0, 0.0));
    }
    let sq = (PI * q.q2 / h).sin();
    let cq = (PI * q.q2 / h).cos();
    let sz = (PI * z / h).sin();
    let cz = (PI * z / h).cos();
    let ch = theta.cosh();
    let den = (ch - (PI * (z - q.q2) / h).cos()) * (ch - (PI * (z + q.q2) / h).cos());
    let gx = sz * sq * theta.sinh() / (2.0 * h * den);
    let gz = sq * (cq - ch * cz) / (2.0 * h * den);
    Ok((gx, gz))
}

/// Surface trace `Γ_z(x, 0; q)` of the strip Green function:
/// `-sin(πq₂/h) / [2h (cosh(π(x-q₁)/h) - cos(πq₂/h))]`.
pub fn gamma_z_surface(x: f64, q: &VortexState, h: f64) -> Result<f64> {
    check_strip_interior("vortex", q.q2, h)?;
    Ok(gamma_z_surface_unchecked(x, q.q1, q.q2, h))
}

pub(crate) fn gamma_z_surface_unchecked(x: f64, q1: f64, q2: f64, h: f64) -> f64 {
    let theta = PI * (x - q1) / h;
    if theta.abs() > THETA_CUTOFF {
        return 0.0;
    }
    -(PI * q2 / h).sin() / (2.0 * h * (theta.cosh() - (PI * q2 / h).cos()))
}

/// Leading-order surface traces of the mixed second derivatives,
/// `(Γ_zq₁, Γ_zq₂)` at `z = 0`. The `Γ_xq₁`, `Γ_xq₂` traces are O(ε) and do
/// not appear at this order.
pub fn second_derivs_surface(x: f64, q: &VortexState, h: f64) -> Result<(f64, f64)> {
    check_strip_interior("vortex", q.q2, h)?;
    Ok(second_derivs_surface_unchecked(x, q.q1, q.q2, h))
}

pub(crate) fn second_derivs_surface_unchecked(x: f64, q1: f64, q2: f64, h: f64) -> (f64, f64) {
    let theta = PI * (x - q1) / h;
    if theta.abs() > THETA_CUTOFF {
        return (0.0, 0.0);
    }
    let sq = (PI * q2 / h).sin();
    let cq = (PI * q2 / h).cos();
    let ch = theta.cosh();
    let den = (ch - cq).powi(2);
    let pref = PI / (2.0 * h * h);
    let gzq1 = -pref * sq * theta.sinh() / den;
    let gzq2 = pref * (1.0 - cq * ch) / den;
    (gzq1, gzq2)
}

/// Sample `Γ_z(·, 0; q)` on a grid (vortex warning included).
pub fn gamma_z_surface_field(
    grid: &Arc<PeriodicGrid>,
    q: &VortexState,
    h: f64,
) -> Result<SurfaceField> {
    check_strip_interior("vortex", q.q2, h)?;
    if q.near_boundary(h) {
        log::warn!(
            "vortex at q2 = {:.4e} is within 1% of a boundary; surface kernels are steep",
            q.q2
        );
    }
    let values = (0..grid.len())
        .map(|j| gamma_z_surface_unchecked(grid.x(j), q.q1, q.q2, h))
        .collect();
    SurfaceField::new(grid.clone(), values)
}

/// Sample `(Γ_zq₁, Γ_zq₂)(·, 0; q)` on a grid.
pub fn second_derivs_surface_fields(
    grid: &Arc<PeriodicGrid>,
    q: &VortexState,
    h: f64,
) -> Result<(SurfaceField, SurfaceField)> {
    check_strip_interior("vortex", q.q2, h)?;
    let mut a = Vec::with_capacity(grid.len());
    let mut b = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let (gzq1, gzq2) = second_derivs_surface_unchecked(grid.x(j), q.q1, q.q2, h);
        a.push(gzq1);
        b.push(gzq2);
    }
    Ok((
        SurfaceField::new(grid.clone(), a)?,
        SurfaceField::new(grid.clone(), b)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn gamma_free_values() {
        // unit separation -> 0; (3,4) -> ln(25)/4π
        assert_eq!(gamma_free((1.0, 0.0), (0.0, 0.0)).unwrap(), 0.0);
        let v = gamma_free((3.0, 4.0), (0.0, 0.0)).unwrap();
        assert!((v - 0.25614999936338806).abs() < 1e-15);
        // symmetry
        let a = gamma_free((0.3, -0.2), (1.4, -0.9)).unwrap();
        let b = gamma_free((1.4, -0.9), (0.3, -0.2)).unwrap();
        assert_eq!(a, b);
        assert!(gamma_free((1.0, 2.0), (1.0, 2.0)).is_err());
    }

    #[test]
    fn conformal_boundary_and_example() {
        let h = 1.0;
        assert_eq!(gamma_conformal((0.7, 0.0), (0.0, -0.5), h).unwrap(), 0.0);
        assert_eq!(gamma_conformal((0.7, -1.0), (0.0, -0.5), h).unwrap(), 0.0);
        // h=1, x-x0=1, z=-0.25, z0=-0.75
        let v = gamma_conformal((1.0, -0.25), (0.0, -0.75), h).unwrap();
        assert!((v - (-0.006584781660629622)).abs() < 1e-15, "{v}");
        // far field
        let far = gamma_conformal((20.0, -0.4), (0.0, -0.5), h).unwrap();
        assert!(far.abs() < 1e-8);
        // symmetry at interior points
        let a = gamma_conformal((0.4, -0.3), (1.1, -0.8), h).unwrap();
        let b = gamma_conformal((1.1, -0.8), (0.4, -0.3), h).unwrap();
        assert!((a - b).abs() < 1e-13 * a.abs().max(1.0));
    }

    #[test]
    fn conformal_rejects_outside_and_coincident() {
        assert!(gamma_conformal((0.0, 0.5), (0.0, -0.5), 1.0).is_err());
        assert!(gamma_conformal((0.0, -0.5), (0.0, -0.5), 1.0).is_err());
    }

    #[test]
    fn images_zeroth_factor_is_free_minus_mirror() {
        // The n = 0 factor of the product is Γ₀ minus its z-mirror image.
        let (x, z, x0, z0) = (0.8, -0.3, 0.1, -0.6);
        let dx2 = (x - x0) * (x - x0);
        let term = image_log_term(dx2, z, z0, 1.0, 0) / FOUR_PI;
        let expect =
            gamma_free((x, z), (x0, z0)).unwrap() - gamma_free((x, z), (x0, -z0)).unwrap();
        assert!((term - expect).abs() < 1e-15);
    }

    #[test]
    fn images_match_conformal_at_n100() {
        let h = 1.0;
        let gi = gamma_images((1.0, -0.25), (0.0, -0.75), h, 100).unwrap();
        let gc = gamma_conformal((1.0, -0.25), (0.0, -0.75), h).unwrap();
        assert!((gi - gc).abs() < 1e-8, "gap {}", (gi - gc).abs());
    }

    #[test]
    fn images_surface_limit_shrinks_with_terms() {
        // On z -> 0 slices the factors pair off; |Γ| stays at round-off and
        // does not grow with the number of terms.
        let h = 1.0;
        let near0 = gamma_images((0.5, -1e-9), (0.0, -0.5), h, 50).unwrap();
        assert!(near0.abs() < 1e-8);
    }

    #[test]
    fn images_rejects_bad_input() {
        assert!(gamma_images((0.0, -0.5), (0.0, -0.5), 1.0, 10).is_err());
        assert!(gamma_images((1.0, -0.4), (0.0, -0.5), 1.0, 0).is_err());
    }

    #[test]
    fn operator_strip_boundaries_and_interior() {
        let h = 1.0;
        let grid = make_grid(1024, 40.0 * h).unwrap();
        let x0 = (20.0, -0.6);
        for z in [0.0, -h] {
            let f = gamma_operator_strip(&grid, z, x0, h).unwrap();
            assert!(f.linf() < 1e-6, "boundary slice {z}: {}", f.linf());
        }
        let z = -0.37;
        let f = gamma_operator_strip(&grid, z, x0, h).unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..grid.len() {
            let x = grid.x(j);
            if (x - x0.0).abs() > 10.0 * h {
                continue;
            }
            let exact = gamma_conformal((x, z), x0, h).unwrap();
            worst = worst.max((f.values()[j] - exact).abs());
        }
        assert!(worst < 1e-6, "interior slice error {worst}");
    }

    #[test]
    fn operator_strip_rejects_outside() {
        let grid = make_grid(64, 40.0).unwrap();
        assert!(gamma_operator_strip(&grid, 0.5, (20.0, -0.5), 1.0).is_err());
        assert!(gamma_operator_strip(&grid, -1.5, (20.0, -0.5), 1.0).is_err());
    }

    #[test]
    fn wavy_order0_equals_operator_strip() {
        let h = 1.0;
        let grid = make_grid(512, 40.0).unwrap();
        let eta = SurfaceField::zeros(grid.clone());
        let x0 = (20.0, -0.5);
        let z = -0.4;
        let strip = gamma_operator_strip(&grid, z, x0, h).unwrap();
        for j in [200, 256, 300] {
            let x = grid.x(j);
            for order in [0, 1] {
                let v = gamma_wavy((x, z), x0, &eta, h, order).unwrap();
                assert!(
                    (v - strip.values()[j]).abs() < 1e-12,
                    "order {order} at x = {x}"
                );
            }
        }
    }

    #[test]
    fn wavy_first_order_slope() {
        // |Γ(ε) - Γ(0)| = O(ε)
        let h = 1.0;
        let grid = make_grid(512, 40.0).unwrap();
        let x0 = (20.0, -0.5);
        let p = (21.3, -0.35);
        let base = gamma_wavy(p, x0, &SurfaceField::zeros(grid.clone()), h, 1).unwrap();
        let mut gaps = Vec::new();
        for eps in [1e-2, 1e-3] {
            let eta = SurfaceField::from_fn(grid.clone(), move |x| eps * (x - 20.0).cos());
            let v = gamma_wavy(p, x0, &eta, h, 1).unwrap();
            gaps.push((v - base).abs());
        }
        let ratio = gaps[0] / gaps[1];
        assert!((ratio - 10.0).abs() < 1.0, "linear-order ratio {ratio}");
    }

    #[test]
    fn wavy_surface_residual_is_second_order() {
        // On z = η(x) the order-1 form satisfies the boundary condition up to
        // O(ε²).
        let h = 1.0;
        let grid = make_grid(512, 40.0).unwrap();
        let x0 = (20.0, -0.5);
        let x = 20.9;
        let mut residuals = Vec::new();
        for eps in [1e-2, 1e-3] {
            let eta = SurfaceField::from_fn(grid.clone(), move |xx| eps * (xx - 20.0).cos());
            let z = eta.eval_at(x);
            let v = gamma_wavy((x, z), x0, &eta, h, 1).unwrap();
            residuals.push(v.abs());
        }
        let ratio = residuals[0] / residuals[1];
        assert!(
            (50.0..200.0).contains(&ratio),
            "quadratic residual ratio {ratio} ({residuals:?})"
        );
    }

    #[test]
    fn wavy_rejects_order_2() {
        let grid = make_grid(64, 40.0).unwrap();
        let eta = SurfaceField::zeros(grid);
        assert!(matches!(
            gamma_wavy((1.0, -0.5), (0.0, -0.5), &eta, 1.0, 2),
            Err(WaveError::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn gradient_surface_and_parity() {
        let h = 1.0;
        let q = VortexState::new(0.0, -0.6, 1.0);
        // Γ_x vanishes identically on z = 0
        let (gx, _) = grad_gamma_strip((0.7, 0.0), &q, h).unwrap();
        assert_eq!(gx, 0.0);
        // Γ_x odd, Γ_z even in x - q1
        let (gxp, gzp) = grad_gamma_strip((0.5, -0.4), &q, h).unwrap();
        let (gxm, gzm) = grad_gamma_strip((-0.5, -0.4), &q, h).unwrap();
        assert!((gxp + gxm).abs() < 1e-14);
        assert!((gzp - gzm).abs() < 1e-14);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let h = 1.0;
        let q = VortexState::new(0.0, -0.6, 1.0);
        let (x, z) = (1.0, -0.4);
        let d = 1e-5;
        let (gx, gz) = grad_gamma_strip((x, z), &q, h).unwrap();
        let src = (q.q1, q.q2);
        let fdx = (gamma_conformal((x + d, z), src, h).unwrap()
            - gamma_conformal((x - d, z), src, h).unwrap())
            / (2.0 * d);
        let fdz = (gamma_conformal((x, z + d), src, h).unwrap()
            - gamma_conformal((x, z - d), src, h).unwrap())
            / (2.0 * d);
        assert!((gx - fdx).abs() < 1e-7, "Γ_x {gx} vs FD {fdx}");
        assert!((gz - fdz).abs() < 1e-7, "Γ_z {gz} vs FD {fdz}");
    }

    #[test]
    fn gradient_rejects_vortex_point() {
        let q = VortexState::new(0.3, -0.4, 1.0);
        assert!(grad_gamma_strip((0.3, -0.4), &q, 1.0).is_err());
    }

    #[test]
    fn gamma_z_surface_values() {
        let h = 10.0;
        let q = VortexState::new(0.0, -5.0, 1.0);
        // at x = q1: -sin(-π/2)/(2·10·(1-0)) = +0.05
        let v = gamma_z_surface(0.0, &q, h).unwrap();
        assert!((v - 0.05).abs() < 1e-15);
        // bottom-adjacent vortex has no surface signature at this order
        let deep = VortexState::new(0.0, -h + 1e-9, 1.0);
        assert!(gamma_z_surface(0.0, &deep, h).unwrap().abs() < 1e-9);
        // matches the z-component of the full gradient on z = 0
        let (_, gz) = grad_gamma_strip((3.7, 0.0), &q, h).unwrap();
        let trace = gamma_z_surface(3.7, &q, h).unwrap();
        assert!((gz - trace).abs() <= 1e-12 * trace.abs());
        assert!(gamma_z_surface(0.0, &VortexState::new(0.0, 0.5, 1.0), h).is_err());
    }

    #[test]
    fn second_derivs_values_and_fd() {
        let h = 10.0;
        let q = VortexState::new(0.0, -5.0, 1.0);
        let (gzq1, gzq2) = second_derivs_surface(0.0, &q, h).unwrap();
        assert_eq!(gzq1, 0.0); // sinh(0) factor
        assert!((gzq2 - 0.015707963267948967).abs() < 1e-15); // π/200
        // Γ_zq1 is the q1-derivative of the surface trace (centered FD oracle)
        let x = 4.2;
        let d = 1e-5;
        let (gzq1, gzq2) = second_derivs_surface(x, &q, h).unwrap();
        let fd1 = (gamma_z_surface(x, &VortexState::new(q.q1 + d, q.q2, 1.0), h).unwrap()
            - gamma_z_surface(x, &VortexState::new(q.q1 - d, q.q2, 1.0), h).unwrap())
            / (2.0 * d);
        let fd2 = (gamma_z_surface(x, &VortexState::new(q.q1, q.q2 + d, 1.0), h).unwrap()
            - gamma_z_surface(x, &VortexState::new(q.q1, q.q2 - d, 1.0), h).unwrap())
            / (2.0 * d);
        assert!((gzq1 - fd1).abs() < 1e-7, "Γ_zq1 {gzq1} vs FD {fd1}");
        assert!((gzq2 - fd2).abs() < 1e-7, "Γ_zq2 {gzq2} vs FD {fd2}");
    }

    #[test]
    fn strip_kernels_decay() {
        let h = 1.0;
        let q = VortexState::new(0.0, -0.5, 1.0);
        let peak = gamma_z_surface(0.0, &q, h).unwrap().abs();
        let far = gamma_z_surface(15.5 * h, &q, h).unwrap().abs();
        assert!(far < 1e-8 * peak);
        let g_near = gamma_conformal((0.3, -0.4), (0.0, -0.5), h).unwrap().abs();
        let g_far = gamma_conformal((15.5, -0.4), (0.0, -0.5), h).unwrap().abs();
        assert!(g_far < 1e-8 * g_near);
        let (a, b) = second_derivs_surface(16.0, &q, h).unwrap();
        let (pa, pb) = second_derivs_surface(0.3, &q, h).unwrap();
        assert!(a.abs() < 1e-8 * pa.abs().max(pb.abs()));
        assert!(b.abs() < 1e-8 * pa.abs().max(pb.abs()));
    }

    #[test]
    fn far_kernels_do_not_overflow() {
        let h = 1.0;
        let q = VortexState::new(0.0, -0.5, 1.0);
        assert_eq!(gamma_z_surface(1e6, &q, h).unwrap(), 0.0);
        assert_eq!(second_derivs_surface(1e6, &q, h).unwrap(), (0.0, 0.0));
        assert_eq!(grad_gamma_strip((1e6, -0.4), &q, h).unwrap(), (0.0, 0.0));
    }
}
