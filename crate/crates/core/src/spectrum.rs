//! Rectangular-window periodogram estimation and FFT helpers.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::{ComplexSeries, RealSeries};

/// One-sided (real input) or full (complex input) power spectral density,
/// bins uniformly spaced from 0 Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    freqs: Vec<f64>,
    power: Vec<f64>,
}

impl PowerSpectrum {
    pub(crate) fn from_parts(freqs: Vec<f64>, power: Vec<f64>) -> Self {
        debug_assert_eq!(freqs.len(), power.len());
        Self { freqs, power }
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Bin spacing in Hz.
    pub fn df(&self) -> f64 {
        if self.freqs.len() > 1 {
            self.freqs[1] - self.freqs[0]
        } else {
            0.0
        }
    }

    /// Index of the bin nearest to `f` Hz.
    pub fn nearest_bin(&self, f: f64) -> usize {
        if self.freqs.len() < 2 {
            return 0;
        }
        let df = self.df();
        ((f / df).round() as usize).min(self.freqs.len() - 1)
    }

    /// Total power in `[f_lo, f_hi]` (inclusive).
    pub fn band_power(&self, f_lo: f64, f_hi: f64) -> f64 {
        self.freqs
            .iter()
            .zip(&self.power)
            .filter(|(f, _)| **f >= f_lo && **f <= f_hi)
            .map(|(_, p)| *p)
            .sum()
    }
}

pub fn fft_forward(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}

/// Unnormalized inverse FFT; divide by the length for a round trip.
pub fn fft_inverse(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_inverse(buf.len()).process(buf);
}

/// Zero-padded FFT length used for selection/display spectra: next power of
/// two at or above four times the record length.
pub fn default_nfft(len: usize) -> usize {
    (4 * len.max(1)).next_power_of_two()
}

fn periodogram_impl(
    samples: &[Complex64],
    dt: f64,
    remove_mean: bool,
    nfft: usize,
    one_sided: bool,
) -> Result<PowerSpectrum> {
    let n = samples.len();
    if nfft < n {
        return Err(Error::InvalidInput(format!(
            "nfft {nfft} is smaller than the series length {n}"
        )));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); nfft];
    buf[..n].copy_from_slice(samples);
    if remove_mean {
        let mean = samples.iter().sum::<Complex64>() / n as f64;
        for v in buf[..n].iter_mut() {
            *v -= mean;
        }
    }
    fft_forward(&mut buf);
    let scale = dt / n as f64;
    let keep = if one_sided { nfft / 2 + 1 } else { nfft };
    let df = 1.0 / (nfft as f64 * dt);
    let freqs = (0..keep).map(|k| k as f64 * df).collect();
    let power = buf[..keep].iter().map(|z| z.norm_sqr() * scale).collect();
    Ok(PowerSpectrum::from_parts(freqs, power))
}

/// Rectangular-window periodogram of a real series; bins 0..=nfft/2.
/// power[k] = |DFT(x, nfft)[k]|^2 * dt / N.
pub fn periodogram(series: &RealSeries, remove_mean: bool, nfft: usize) -> Result<PowerSpectrum> {
    let cx: Vec<Complex64> = series
        .samples()
        .iter()
        .map(|v| Complex64::new(*v, 0.0))
        .collect();
    periodogram_impl(&cx, series.dt(), remove_mean, nfft, true)
}

/// Periodogram of a complex series; all nfft bins are returned, the upper
/// half holding the negative-frequency image.
pub fn periodogram_complex(
    series: &ComplexSeries,
    remove_mean: bool,
    nfft: usize,
) -> Result<PowerSpectrum> {
    periodogram_impl(series.samples(), series.dt(), remove_mean, nfft, false)
}

/// Zero-phase FFT low-pass of a complex signal with a raised-cosine rolloff
/// between `pass_hz` and `stop_hz` (applied to both frequency signs).
pub fn lowpass_complex(signal: &ComplexSeries, pass_hz: f64, stop_hz: f64) -> Result<ComplexSeries> {
    if !(pass_hz > 0.0) || !(stop_hz > pass_hz) {
        return Err(Error::InvalidInput(format!(
            "need 0 < pass ({pass_hz}) < stop ({stop_hz})"
        )));
    }
    let n = signal.len();
    let mut buf = signal.samples().to_vec();
    fft_forward(&mut buf);
    let df = 1.0 / (n as f64 * signal.dt());
    for (k, v) in buf.iter_mut().enumerate() {
        // two-sided frequency of the unshifted FFT bin
        let f = if k <= n / 2 {
            k as f64 * df
        } else {
            (k as f64 - n as f64) * df
        };
        let af = f.abs();
        let gain = if af <= pass_hz {
            1.0
        } else if af >= stop_hz {
            0.0
        } else {
            0.5 * (1.0 + (std::f64::consts::PI * (af - pass_hz) / (stop_hz - pass_hz)).cos())
        };
        *v *= gain;
    }
    fft_inverse(&mut buf);
    let inv = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= inv;
    }
    Ok(ComplexSeries::new(buf, signal.dt())?)
}
