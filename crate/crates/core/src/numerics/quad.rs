//! Adaptive Simpson quadrature with a hard subdivision cap.

use crate::error::{Error, Result};

/// Total number of interval splits allowed before giving up.
const SUBDIVISION_CAP: u64 = 1 << 20;

struct Budget {
    remaining: u64,
    exhausted: bool,
}

fn simpson(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    budget: &mut Budget,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !flm.is_finite() {
        return Err(Error::NonFiniteIntegrand { x: lm });
    }
    if !frm.is_finite() {
        return Err(Error::NonFiniteIntegrand { x: rm });
    }
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // Richardson: the fourth-order correction is delta / 15.
    if delta.abs() <= 15.0 * tol || (b - a).abs() < f64::EPSILON * (a.abs() + b.abs() + 1.0) {
        return Ok(left + right + delta / 15.0);
    }
    if budget.remaining == 0 {
        budget.exhausted = true;
        return Ok(left + right + delta / 15.0);
    }
    budget.remaining -= 1;
    let l = refine(f, a, m, fa, flm, fm, left, 0.5 * tol, budget)?;
    let r = refine(f, m, b, fm, frm, fb, right, 0.5 * tol, budget)?;
    Ok(l + r)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol` (for smooth
/// integrands) by adaptive Simpson refinement.
///
/// Exhausting the subdivision cap yields `QuadratureNoConvergence` carrying
/// the best estimate assembled so far.
pub fn adaptive_quad(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a <= b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::BadInterval { a, b });
    }
    if !(tol > 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "tol",
            value: tol,
        });
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    for (x, v) in [(a, fa), (0.5 * (a + b), fm), (b, fb)] {
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { x });
        }
    }
    let whole = simpson(fa, fm, fb, b - a);
    let mut budget = Budget {
        remaining: SUBDIVISION_CAP,
        exhausted: false,
    };
    let best = refine(&mut f, a, b, fa, fm, fb, whole, tol, &mut budget)?;
    if budget.exhausted {
        return Err(Error::QuadratureNoConvergence { best });
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_integrand() {
        let v = adaptive_quad(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sine_over_half_period() {
        let v = adaptive_quad(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn lorentzian_rate_has_arctan_antiderivative() {
        // integral of alpha*wc / (1 + wc^2 t^2) from 0 to t is alpha*arctan(wc t)
        let (alpha, wc) = (0.7, 1.3);
        for t in [0.2, 1.0, 4.0, 20.0] {
            let v = adaptive_quad(|x| alpha * wc / (1.0 + wc * wc * x * x), 0.0, t, 1e-12).unwrap();
            assert!((v - alpha * (wc * t).atan()).abs() < 1e-10);
        }
    }

    #[test]
    fn additive_over_interval_splits() {
        let tol = 1e-10;
        let f = |x: f64| (3.0 * x).sin().exp();
        let whole = adaptive_quad(f, 0.0, 2.0, tol).unwrap();
        let parts = adaptive_quad(f, 0.0, 0.7, tol).unwrap() + adaptive_quad(f, 0.7, 2.0, tol).unwrap();
        assert!((whole - parts).abs() < 2.0 * tol);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive_quad(|x| x * x, 2.0, 2.0, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn invalid_interval_and_tolerance() {
        assert!(matches!(
            adaptive_quad(|x| x, 1.0, 0.0, 1e-9),
            Err(Error::BadInterval { .. })
        ));
        assert!(matches!(
            adaptive_quad(|x| x, 0.0, 1.0, 0.0),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn cap_exhaustion_reports_best_estimate() {
        // A rapidly oscillating integrand with an unreachable tolerance.
        let f = |x: f64| (1e7 * x * x).sin();
        match adaptive_quad(f, 0.0, 3.0, 1e-300) {
            Err(Error::QuadratureNoConvergence { best }) => assert!(best.is_finite()),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let f = |x: f64| 1.0 / x;
        assert!(matches!(
            adaptive_quad(f, 0.0, 1.0, 1e-9),
            Err(Error::NonFiniteIntegrand { .. })
        ));
    }
}
