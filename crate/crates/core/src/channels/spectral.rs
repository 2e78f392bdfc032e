//! Reservoir spectral densities and the channel parameters they induce:
//! the Ohmic decoherence rate gamma(t) and dephasing factor Gamma(t), and
//! the Lorentzian amplitude-damping amplitude J_t with its memory kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{adaptive_quad, gamma_fn};

/// Ohmic reservoir J(w) = alpha w_c (w/w_c)^S exp(-w/w_c).
#[derive(Debug, Clone, Copy)]
pub struct OhmicSpectralDensity {
    alpha: f64,
    omega_c: f64,
    s: f64,
    /// Euler Gamma of the Ohmicity parameter, fixed at construction.
    euler_gamma_s: f64,
}

impl OhmicSpectralDensity {
    pub fn new(alpha: f64, omega_c: f64, s: f64) -> Result<Self> {
        for (name, value) in [("alpha", alpha), ("omega_c", omega_c), ("S", s)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::ParameterOutOfRange { name, value });
            }
        }
        Ok(Self {
            alpha,
            omega_c,
            s,
            euler_gamma_s: gamma_fn(s)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// J(w) itself; used by the quadrature cross-checks.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        self.alpha * self.omega_c * (omega / self.omega_c).powf(self.s)
            * (-omega / self.omega_c).exp()
    }
}

/// Zero-temperature Ohmic decoherence rate
/// gamma(t) = alpha w_c Gamma0(S) sin[S arctan(w_c t)] / (1 + w_c^2 t^2)^(S/2).
///
/// This is the closed form of the defining integral
/// gamma(t) = int J(w) sin(w t)/w dw, which keeps the rate nonnegative for
/// S <= 2 and lets it change sign only for S > 2.
pub fn ohmic_rate(sd: &OhmicSpectralDensity, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let x = sd.omega_c * t;
    sd.alpha * sd.omega_c * sd.euler_gamma_s * (sd.s * x.atan()).sin()
        / (1.0 + x * x).powf(sd.s / 2.0)
}

/// Dephasing factor Gamma(t) = exp(-2 int_0^t gamma(t') dt'), evaluated by
/// adaptive quadrature of the rate.
pub fn dephasing_factor(sd: &OhmicSpectralDensity, t: f64, tol: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::BadInterval { a: 0.0, b: t });
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let integral = adaptive_quad(|x| ohmic_rate(sd, x), 0.0, t, tol)?;
    Ok((-2.0 * integral).exp())
}

/// Lorentzian reservoir J(w) = gamma0 lambda^2 / (2 pi [(w - w_cav)^2 + lambda^2]),
/// parametrized by the coupling gamma0, the spectral width lambda and the
/// qubit-cavity detuning delta = w_0 - w_cav.
#[derive(Debug, Clone, Copy)]
pub struct LorentzianSpectralDensity {
    gamma0: f64,
    lambda: f64,
    delta: f64,
}

impl LorentzianSpectralDensity {
    pub fn new(gamma0: f64, lambda: f64, delta: f64) -> Result<Self> {
        for (name, value) in [("gamma0", gamma0), ("lambda", lambda)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::ParameterOutOfRange { name, value });
            }
        }
        if !delta.is_finite() {
            return Err(Error::ParameterOutOfRange {
                name: "delta",
                value: delta,
            });
        }
        Ok(Self {
            gamma0,
            lambda,
            delta,
        })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Closed-form damping amplitude
/// J_t = e^{-(lambda - i delta) t / 2} [cosh(eta t / 2)
///       + (lambda - i delta)/eta sinh(eta t / 2)],
/// eta = sqrt((lambda - i delta)^2 - 2 gamma0 lambda) (principal branch).
///
/// The eta -> 0 degeneracy is replaced by its analytic limit
/// (cosh -> 1, sinh(eta t/2)/eta -> t/2) once |eta| t < 1e-6.
pub fn lorentzian_jt(sd: &LorentzianSpectralDensity, t: f64) -> Complex64 {
    debug_assert!(t >= 0.0);
    let lmid = Complex64::new(sd.lambda, -sd.delta);
    let eta = (lmid * lmid - 2.0 * sd.gamma0 * sd.lambda).sqrt();
    let half = 0.5 * t;
    let (cosh_term, sinh_over_eta) = if eta.norm() * t < 1e-6 {
        (Complex64::ONE, Complex64::new(half, 0.0))
    } else {
        let z = eta * half;
        (z.cosh(), z.sinh() / eta)
    };
    (-lmid * half).exp() * (cosh_term + lmid * sinh_over_eta)
}

/// Lorentzian reservoir correlation function
/// f(tau) = (gamma0 lambda / 2) e^{(i delta - lambda) tau},
/// the Fourier transform of J(w) as a function of the time difference.
pub fn memory_kernel(sd: &LorentzianSpectralDensity, tau: f64) -> Complex64 {
    debug_assert!(tau >= 0.0);
    let rate = Complex64::new(-sd.lambda, sd.delta);
    0.5 * sd.gamma0 * sd.lambda * (rate * tau).exp()
}
