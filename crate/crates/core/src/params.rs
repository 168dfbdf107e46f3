//! Physical parameters and the point-vortex state.

use crate::error::{Result, WaveError};

/// Depth, gravity and soliton parameters of a run.
///
/// The long-wave propagation speed `c = sqrt(g h)` is derived, never stored,
/// so `c² = g·h` holds to machine precision by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    depth: f64,
    gravity: f64,
    soliton_k: f64,
    soliton_x0: f64,
}

impl PhysicalParams {
    pub fn new(depth: f64, gravity: f64, soliton_k: f64, soliton_x0: f64) -> Result<Self> {
        if !(depth > 0.0) || !depth.is_finite() {
            return Err(WaveError::Config(format!("depth must be > 0, got {depth}")));
        }
        if !(gravity > 0.0) || !gravity.is_finite() {
            return Err(WaveError::Config(format!(
                "gravity must be > 0, got {gravity}"
            )));
        }
        if !(soliton_k >= 0.0) || !soliton_k.is_finite() {
            return Err(WaveError::Config(format!(
                "soliton parameter K must be >= 0, got {soliton_k}"
            )));
        }
        if !soliton_x0.is_finite() {
            return Err(WaveError::Config("soliton offset must be finite".into()));
        }
        Ok(Self {
            depth,
            gravity,
            soliton_k,
            soliton_x0,
        })
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    pub fn soliton_k(&self) -> f64 {
        self.soliton_k
    }

    pub fn soliton_x0(&self) -> f64 {
        self.soliton_x0
    }

    /// Linear long-wave speed `c = sqrt(g h)`.
    pub fn c(&self) -> f64 {
        (self.gravity * self.depth).sqrt()
    }

    /// Soliton propagation speed `(1 + 2/3 h²K²) c`.
    pub fn soliton_speed(&self) -> f64 {
        (1.0 + 2.0 / 3.0 * self.depth_k_sq()) * self.c()
    }

    /// Soliton crest amplitude `4 c h² K² / 3` (a velocity, m/s).
    pub fn soliton_amplitude(&self) -> f64 {
        4.0 * self.c() * self.depth * self.depth * self.soliton_k * self.soliton_k / 3.0
    }

    fn depth_k_sq(&self) -> f64 {
        let hk = self.depth * self.soliton_k;
        hk * hk
    }

    /// Long-wave validity: the trajectory-range square root requires
    /// `2 h² K² < 3`.
    pub fn long_wave_valid(&self) -> bool {
        2.0 * self.depth_k_sq() < 3.0
    }
}

/// Position and strength of a submerged point vortex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VortexState {
    pub q1: f64,
    pub q2: f64,
    pub omega_star: f64,
}

impl VortexState {
    pub fn new(q1: f64, q2: f64, omega_star: f64) -> Self {
        Self {
            q1,
            q2,
            omega_star,
        }
    }

    /// The vortex must sit strictly inside the fluid: `-h < q2 < 0`.
    pub fn check_interior(&self, depth: f64) -> Result<()> {
        if !(self.q2 > -depth && self.q2 < 0.0) {
            return Err(WaveError::Domain(format!(
                "vortex must satisfy -h < q2 < 0 (q2 = {}, h = {depth})",
                self.q2
            )));
        }
        Ok(())
    }

    /// Surface-evaluated kernels grow large when the vortex approaches either
    /// boundary; callers log a warning when this returns true.
    pub fn near_boundary(&self, depth: f64) -> bool {
        self.q2.abs() < 0.01 * depth || (self.q2 + depth).abs() < 0.01 * depth
    }
}
