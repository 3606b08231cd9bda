//! Uniformly sampled series types, phase unwrapping and discrete differentiation.
//!
//! `RealSeries` and `ComplexSeries` enforce their invariants (positive sample
//! interval, finite samples) at construction, so downstream operations never
//! have to re-validate. Derivatives use central finite differences with
//! one-sided stencils of matching accuracy at the boundaries; callers that
//! differentiate are expected to drop `k` samples per side before spectral
//! work (see `enhance::boundary_width`).

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Uniformly sampled real-valued series. Units are context dependent
/// (radians, millimetres, or dimensionless amplitude).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeries {
    samples: Vec<f64>,
    dt: f64,
}

impl RealSeries {
    pub fn new(samples: Vec<f64>, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidInput(format!(
                "sample interval must be positive and finite, got {dt}"
            )));
        }
        if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite sample {bad}")));
        }
        Ok(Self { samples, dt })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Record duration from first to last sample.
    pub fn duration(&self) -> f64 {
        self.dt * self.samples.len().saturating_sub(1) as f64
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Copy with the time-average subtracted.
    pub fn mean_removed(&self) -> RealSeries {
        let m = self.mean();
        RealSeries {
            samples: self.samples.iter().map(|v| v - m).collect(),
            dt: self.dt,
        }
    }

    /// Copy with `n` samples dropped from each end.
    pub fn trimmed(&self, n: usize) -> Result<RealSeries> {
        if self.samples.len() < 2 * n + 1 {
            return Err(Error::TooShort {
                needed: 2 * n + 1,
                got: self.samples.len(),
            });
        }
        Ok(RealSeries {
            samples: self.samples[n..self.samples.len() - n].to_vec(),
            dt: self.dt,
        })
    }

    pub(crate) fn from_parts_unchecked(samples: Vec<f64>, dt: f64) -> Self {
        debug_assert!(samples.iter().all(|v| v.is_finite()));
        Self { samples, dt }
    }
}

/// Uniformly sampled complex radar signal s(t).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeries {
    samples: Vec<Complex64>,
    dt: f64,
}

impl ComplexSeries {
    pub fn new(samples: Vec<Complex64>, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidInput(format!(
                "sample interval must be positive and finite, got {dt}"
            )));
        }
        if samples.is_empty() {
            return Err(Error::InvalidInput("empty complex series".into()));
        }
        if let Some(bad) = samples.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite sample {bad}")));
        }
        Ok(Self { samples, dt })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.samples.len().saturating_sub(1) as f64
    }

    /// Nyquist frequency of the sampling grid in Hz.
    pub fn nyquist(&self) -> f64 {
        0.5 / self.dt
    }

    pub(crate) fn from_parts_unchecked(samples: Vec<Complex64>, dt: f64) -> Self {
        Self { samples, dt }
    }
}

/// Map a phase difference onto (-pi, pi].
fn wrap_to_half_open(d: f64) -> f64 {
    d - 2.0 * PI * ((d - PI) / (2.0 * PI)).ceil()
}

/// Unwrap a phase series given in (-pi, pi].
///
/// The first output sample equals the first input sample; successive output
/// differences lie in (-pi, pi]; each output sample is congruent with its
/// input mod 2*pi. Non-finite inputs are rejected by `RealSeries` itself.
pub fn unwrap_phase(wrapped: &RealSeries) -> RealSeries {
    let x = wrapped.samples();
    let mut out = Vec::with_capacity(x.len());
    if let Some(&first) = x.first() {
        out.push(first);
        for w in x.windows(2) {
            let prev = *out.last().unwrap();
            out.push(prev + wrap_to_half_open(w[1] - w[0]));
        }
    }
    RealSeries::from_parts_unchecked(out, wrapped.dt())
}

/// Wrapped phase of each sample with the hold-previous rule for
/// zero-magnitude samples (phase undefined there). Returns the wrapped
/// phases and the number of held samples. A zero first sample holds 0.
pub(crate) fn wrapped_phase_hold_previous(samples: &[Complex64]) -> (Vec<f64>, usize) {
    let mut out = Vec::with_capacity(samples.len());
    let mut prev = 0.0;
    let mut held = 0;
    for z in samples {
        if z.norm_sqr() == 0.0 {
            held += 1;
        } else {
            prev = z.arg();
        }
        out.push(prev);
    }
    (out, held)
}

/// Finite-difference stencils: (coefficients, index offset of the first tap
/// relative to the evaluation point). One-sided stencils match the
/// second-order accuracy of the central ones.
fn stencils(k: u8) -> (&'static [f64], &'static [f64], &'static [f64], usize) {
    match k {
        1 => (
            &[-0.5, 0.0, 0.5],
            &[-1.5, 2.0, -0.5],
            &[0.5, -2.0, 1.5],
            1,
        ),
        2 => (
            &[1.0, -2.0, 1.0],
            &[2.0, -5.0, 4.0, -1.0],
            &[-1.0, 4.0, -5.0, 2.0],
            1,
        ),
        3 => (
            &[-0.5, 1.0, 0.0, -1.0, 0.5],
            &[-2.5, 9.0, -12.0, 7.0, -1.5],
            &[1.5, -7.0, 12.0, -9.0, 2.5],
            2,
        ),
        _ => unreachable!("validated by caller"),
    }
}

fn diff_k<T>(x: &[T], dt: f64, k: u8) -> Vec<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let (central, forward, backward, half) = stencils(k);
    let scale = dt.powi(-(k as i32));
    let n = x.len();
    let dot = |taps: &[f64], base: usize| -> T {
        let mut acc = x[base] * (taps[0] * scale);
        for (i, &c) in taps.iter().enumerate().skip(1) {
            acc = acc + x[base + i] * (c * scale);
        }
        acc
    };
    let mut out = Vec::with_capacity(n);
    for i in 0..half {
        out.push(dot(forward, i));
    }
    for i in half..n - half {
        out.push(dot(central, i - half));
    }
    for i in n - half..n {
        out.push(dot(backward, i + 1 - backward.len()));
    }
    out
}

fn check_deriv_args(len: usize, k: u8) -> Result<()> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "derivative order must be 1..=3, got {k}"
        )));
    }
    let needed = 2 * k as usize + 1;
    if len < needed {
        return Err(Error::TooShort { needed, got: len });
    }
    Ok(())
}

/// k-th time derivative of a complex series by central finite differences,
/// boundaries filled with one-sided differences of the same accuracy order.
pub fn kth_derivative(series: &ComplexSeries, k: u8) -> Result<ComplexSeries> {
    check_deriv_args(series.len(), k)?;
    Ok(ComplexSeries::from_parts_unchecked(
        diff_k(series.samples(), series.dt(), k),
        series.dt(),
    ))
}

/// Real-series counterpart of [`kth_derivative`].
pub fn kth_derivative_real(series: &RealSeries, k: u8) -> Result<RealSeries> {
    check_deriv_args(series.len(), k)?;
    Ok(RealSeries::from_parts_unchecked(
        diff_k(series.samples(), series.dt(), k),
        series.dt(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn rs(v: Vec<f64>) -> RealSeries {
        RealSeries::new(v, 1.0).unwrap()
    }

    #[test]
    fn real_series_rejects_non_finite() {
        assert!(RealSeries::new(vec![1.0, f64::NAN], 1.0).is_err());
        assert!(RealSeries::new(vec![1.0, f64::INFINITY], 1.0).is_err());
        assert!(RealSeries::new(vec![1.0], 0.0).is_err());
        assert!(ComplexSeries::new(vec![], 1.0).is_err());
    }

    #[test]
    fn unwrap_identity_without_crossing() {
        let out = unwrap_phase(&rs(vec![1.0, 1.1, 1.2]));
        assert_eq!(out.samples(), &[1.0, 1.1, 1.2]);
    }

    #[test]
    fn unwrap_single_forward_wrap() {
        let out = unwrap_phase(&rs(vec![3.0, -3.0]));
        assert_relative_eq!(out.samples()[0], 3.0);
        assert_relative_eq!(out.samples()[1], -3.0 + 2.0 * PI, max_relative = 1e-12);
    }

    #[test]
    fn constant_series_derivatives_vanish() {
        let s = ComplexSeries::new(vec![Complex64::new(2.5, -1.0); 16], 0.01).unwrap();
        for k in 1..=3u8 {
            let d = kth_derivative(&s, k).unwrap();
            for z in d.samples() {
                assert!(z.norm() < 1e-9, "k={k} residue {z}");
            }
        }
    }

    #[test]
    fn quadratic_second_derivative_exact() {
        let x: Vec<f64> = (0..32).map(|n| (n as f64).powi(2)).collect();
        let d = kth_derivative_real(&rs(x), 2).unwrap();
        for (i, v) in d.samples().iter().enumerate() {
            assert_relative_eq!(*v, 2.0, max_relative = 1e-9, epsilon = 1e-9);
            let _ = i;
        }
    }

    #[test]
    fn tone_second_derivative_matches_analytic() {
        // s(t) = e^{j 2 pi f t}: |s''| = (2 pi f)^2, within 0.5% at interior.
        let dt = 6.87e-3;
        let f = 1.0;
        let n = 2048;
        let s = ComplexSeries::new(
            (0..n)
                .map(|i| Complex64::from_polar(1.0, 2.0 * PI * f * i as f64 * dt))
                .collect(),
            dt,
        )
        .unwrap();
        let d2 = kth_derivative(&s, 2).unwrap();
        let expect = (2.0 * PI * f).powi(2);
        for z in &d2.samples()[2..n - 2] {
            assert_relative_eq!(z.norm(), expect, max_relative = 5e-3);
        }
    }

    #[test]
    fn derivative_rejects_short_series() {
        let s = ComplexSeries::new(vec![Complex64::new(1.0, 0.0); 4], 1.0).unwrap();
        assert!(matches!(
            kth_derivative(&s, 2),
            Err(Error::TooShort { needed: 5, got: 4 })
        ));
    }

    #[test]
    fn third_derivative_of_cubic_exact() {
        let x: Vec<f64> = (0..40).map(|n| (n as f64).powi(3)).collect();
        let d = kth_derivative_real(&rs(x), 3).unwrap();
        for v in d.samples() {
            assert_relative_eq!(*v, 6.0, max_relative = 1e-7, epsilon = 1e-7);
        }
    }

    #[test]
    fn hold_previous_phase_rule() {
        let (phases, held) = wrapped_phase_hold_previous(&[
            Complex64::from_polar(1.0, 0.3),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(2.0, -0.4),
        ]);
        assert_eq!(held, 1);
        assert_relative_eq!(phases[0], 0.3);
        assert_relative_eq!(phases[1], 0.3);
        assert_relative_eq!(phases[2], -0.4);
    }

    proptest! {
        /// Wrap-then-unwrap recovers the original up to one global 2*pi multiple.
        #[test]
        fn unwrap_round_trip(steps in proptest::collection::vec(-3.13f64..3.13, 1..200), start in -40.0f64..40.0) {
            let mut phase = vec![start];
            for s in &steps {
                let prev = *phase.last().unwrap();
                phase.push(prev + s);
            }
            let wrapped: Vec<f64> = phase.iter().map(|p| wrap_to_half_open(*p)).collect();
            let out = unwrap_phase(&rs(wrapped));
            let offset = out.samples()[0] - phase[0];
            // offset is an integer multiple of 2*pi shared by every sample
            let k = offset / (2.0 * PI);
            prop_assert!((k - k.round()).abs() < 1e-9);
            for (o, p) in out.samples().iter().zip(&phase) {
                prop_assert!((o - p - offset).abs() < 1e-9);
            }
            // successive differences stay in (-pi, pi]
            for w in out.samples().windows(2) {
                let d = w[1] - w[0];
                prop_assert!(d > -PI - 1e-12 && d <= PI + 1e-12);
            }
        }

        /// Differentiation is linear to machine precision.
        #[test]
        fn derivative_linearity(
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
            x in proptest::collection::vec(-10.0f64..10.0, 9..50),
            k in 1u8..=3,
        ) {
            let y: Vec<f64> = x.iter().rev().map(|v| v * 0.7 + 1.0).collect();
            let combo: Vec<f64> = x.iter().zip(&y).map(|(xv, yv)| a * xv + b * yv).collect();
            let dx = kth_derivative_real(&rs(x.clone()), k).unwrap();
            let dy = kth_derivative_real(&rs(y), k).unwrap();
            let dc = kth_derivative_real(&rs(combo), k).unwrap();
            for ((dxv, dyv), dcv) in dx.samples().iter().zip(dy.samples()).zip(dc.samples()) {
                let want = a * dxv + b * dyv;
                prop_assert!((dcv - want).abs() <= 1e-9 * want.abs().max(1.0));
            }
        }
    }
}
