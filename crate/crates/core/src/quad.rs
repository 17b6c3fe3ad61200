//! Matching energy by numerical quadrature of the Coulson-type integral
//!
//! ```text
//! ME = (2/pi) * integral_0^inf x^-2 * ln( sum_k m_k x^{2k} ) dx.
//! ```
//!
//! The range is split at x = 1 and the tail is folded back onto [0, 1] with
//! u = 1/x. Writing M* for the largest k with m_k > 0, the tail piece
//! contributes an exactly integrable -2 M* ln u term plus a smooth remainder:
//!
//! ```text
//! ME = (2/pi) [ I_low + 2 M* + I_high ],
//! I_low  = integral_0^1 ln(1 + sum_{k>=1} m_k x^{2k}) / x^2 dx,
//! I_high = integral_0^1 ln( sum_k m_k u^{2(M*-k)} ) du.
//! ```
//!
//! Both integrands extend continuously to 0 (values m_1 and ln m_{M*}), so
//! plain adaptive Simpson handles them.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_EVALS: u64 = 4_000_000;

/// Matching energy from the matching counts alone, to within `tol`.
pub fn me_by_quadrature(m: &[BigUint], tol: f64) -> Result<f64> {
    let mstar = match (0..m.len()).rev().find(|&k| !m[k].is_zero()) {
        Some(k) => k,
        None => return Err(Error::RootIsolation("empty matching vector".into())),
    };
    if mstar == 0 {
        return Ok(0.0);
    }
    let mf: Vec<f64> = m[..=mstar]
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();

    // s(t) = sum_{k>=1} m_k t^{k-1}, so the integrand is ln1p(x^2 s(x^2))/x^2
    let low_poly: Vec<f64> = mf[1..].to_vec();
    let m1 = mf[1];
    let f_low = move |x: f64| {
        if x == 0.0 {
            return m1;
        }
        let t = x * x;
        let s = horner(&low_poly, t);
        (t * s).ln_1p() / t
    };

    // p(t) = sum_j m_{M*-j} t^j, so the integrand is ln p(u^2)
    let high_poly: Vec<f64> = mf.iter().rev().copied().collect();
    let f_high = move |u: f64| horner(&high_poly, u * u).ln();

    let piece_tol = tol * std::f64::consts::FRAC_PI_4;
    let mut evals = 0u64;
    let i_low = adaptive_simpson(&f_low, 0.0, 1.0, piece_tol, &mut evals)?;
    let i_high = adaptive_simpson(&f_high, 0.0, 1.0, piece_tol, &mut evals)?;
    Ok(std::f64::consts::FRAC_2_PI * (i_low + 2.0 * mstar as f64 + i_high))
}

/// Evaluate sum_j coeffs[j] t^j with coeffs in ascending order.
fn horner(coeffs: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    evals: &mut u64,
) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    *evals += 3;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, evals)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    evals: &mut u64,
) -> Result<f64> {
    if *evals > MAX_EVALS {
        return Err(Error::QuadratureBudget);
    }
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    *evals += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // interval has collapsed to floating-point resolution: accept the estimate
    if delta.abs() <= 15.0 * tol || lm <= a || rm >= b {
        return Ok(left + right + delta / 15.0);
    }
    let half_tol = 0.5 * tol;
    let l = refine(f, a, m, fa, flm, fm, left, half_tol, evals)?;
    let r = refine(f, m, b, fm, frm, fb, right, half_tol, evals)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m_of(vals: &[u64]) -> Vec<BigUint> {
        vals.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn single_edge_is_exactly_two() {
        let me = me_by_quadrature(&m_of(&[1, 1]), 1e-10).unwrap();
        assert!((me - 2.0).abs() < 1e-9, "{me}");
    }

    #[test]
    fn edgeless_graph_is_zero() {
        assert_eq!(me_by_quadrature(&m_of(&[1]), 1e-8).unwrap(), 0.0);
        assert_eq!(me_by_quadrature(&m_of(&[1, 0, 0]), 1e-8).unwrap(), 0.0);
    }

    #[test]
    fn star_with_four_rays() {
        let me = me_by_quadrature(&m_of(&[1, 4]), 1e-10).unwrap();
        assert!((me - 4.0).abs() < 1e-9, "{me}");
    }

    #[test]
    fn four_path() {
        let me = me_by_quadrature(&m_of(&[1, 3, 1]), 1e-10).unwrap();
        assert!((me - 2.0 * 5f64.sqrt()).abs() < 1e-9, "{me}");
    }

    #[test]
    fn six_cycle() {
        let me = me_by_quadrature(&m_of(&[1, 6, 9, 2]), 1e-10).unwrap();
        let expect = 2.0 * 2f64.sqrt() + 2.0 * 6f64.sqrt();
        assert!((me - expect).abs() < 1e-9, "{me} vs {expect}");
    }

    #[test]
    fn tolerance_is_honoured() {
        // coarse and fine runs bracket the exact value of 2 K_2 (ME = 4)
        for tol in [1e-6, 1e-8, 1e-10] {
            let me = me_by_quadrature(&m_of(&[1, 2, 1]), tol).unwrap();
            assert!((me - 4.0).abs() < tol * 10.0, "tol {tol}: {me}");
        }
    }

    #[test]
    fn refinement_that_cannot_converge_exhausts_the_budget() {
        // an oscillation far below resolution defeats Richardson acceptance
        // at every depth until the evaluation budget trips
        let f = |x: f64| (3.0e9 * x).sin();
        let mut evals = 0u64;
        let err = adaptive_simpson(&f, 0.0, 1.0, 0.0, &mut evals).unwrap_err();
        assert!(matches!(err, Error::QuadratureBudget));
    }

    #[test]
    fn large_counts_stay_finite() {
        // star K_{1,31}: m = (1, 31); ME = 2 sqrt 31
        let me = me_by_quadrature(&m_of(&[1, 31]), 1e-8).unwrap();
        assert!((me - 2.0 * 31f64.sqrt()).abs() < 1e-7);
    }
}
