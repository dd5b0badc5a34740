//! FFT plumbing on `(ℝ/2πℤ)⁴`: per-axis line transforms, 4-D transforms and
//! the spectral derivative.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::{Fft, FftPlanner};

use super::Grid4;
use crate::{par, C64};

type Plans = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

fn plans(n: usize) -> Plans {
    static CACHE: OnceLock<Mutex<HashMap<usize, Plans>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
        })
        .clone()
}

/// Signed wavenumber of DFT bin `j`; the Nyquist bin maps to `N/2`.
pub fn wavenumber(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

// First site of line `l` along `axis` (the remaining three indices enumerate
// lines in lexicographic order).
fn line_start(l: usize, axis: usize, n: usize) -> usize {
    let stride = n.pow(3 - axis as u32);
    let hi = l / stride;
    let lo = l % stride;
    hi * stride * n + lo
}

/// Apply `f` to every line along `axis`, in place.
fn map_lines<F>(data: &mut [C64], grid: &Grid4, axis: usize, f: F)
where
    F: Fn(&mut [C64]) + Sync + Send,
{
    let n = grid.n();
    let stride = grid.stride(axis);
    let src: &[C64] = data;
    let lines = par::map(n * n * n, |l| {
        let start = line_start(l, axis, n);
        let mut buf: Vec<C64> = (0..n).map(|j| src[start + j * stride]).collect();
        f(&mut buf);
        buf
    });
    for (l, buf) in lines.into_iter().enumerate() {
        let start = line_start(l, axis, n);
        for (j, v) in buf.into_iter().enumerate() {
            data[start + j * stride] = v;
        }
    }
}

/// Exact derivative along `axis` of the trigonometric interpolant of
/// `values`. The Nyquist mode is dropped.
pub fn partial(values: &[C64], grid: &Grid4, axis: usize) -> Vec<C64> {
    let n = grid.n();
    let (fwd, inv) = plans(n);
    let scale = 1.0 / n as f64;
    let mut out = values.to_vec();
    map_lines(&mut out, grid, axis, |buf| {
        fwd.process(buf);
        for (j, c) in buf.iter_mut().enumerate() {
            let k = if 2 * j == n { 0 } else { wavenumber(j, n) };
            *c *= C64::new(0.0, k as f64 * scale);
        }
        inv.process(buf);
    });
    out
}

/// Unnormalized forward 4-D DFT, `f̂_k = Σ_x f(x) e^{−ik·x}`.
pub fn fft4(values: &[C64], grid: &Grid4) -> Vec<C64> {
    let (fwd, _) = plans(grid.n());
    let mut out = values.to_vec();
    for axis in 0..4 {
        map_lines(&mut out, grid, axis, |buf| fwd.process(buf));
    }
    out
}

/// Inverse of [`fft4`], including the `1/N⁴` factor.
pub fn ifft4(values: &[C64], grid: &Grid4) -> Vec<C64> {
    let (_, inv) = plans(grid.n());
    let mut out = values.to_vec();
    for axis in 0..4 {
        map_lines(&mut out, grid, axis, |buf| inv.process(buf));
    }
    let s = 1.0 / grid.sites() as f64;
    out.iter_mut().for_each(|v| *v *= s);
    out
}

/// Largest Fourier coefficient magnitude (normalized by `N⁴`) among modes
/// with some `|k_μ| > kmax`.
pub fn max_mode_above(values: &[C64], grid: &Grid4, kmax: usize) -> f64 {
    let spec = fft4(values, grid);
    let n = grid.n();
    let s = 1.0 / grid.sites() as f64;
    par::max(spec.len(), |idx| {
        let outside = grid
            .coords(idx)
            .iter()
            .any(|&j| wavenumber(j, n).unsigned_abs() as usize > kmax);
        if outside {
            spec[idx].norm() * s
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumbers_wrap() {
        assert_eq!(wavenumber(0, 8), 0);
        assert_eq!(wavenumber(3, 8), 3);
        assert_eq!(wavenumber(4, 8), 4);
        assert_eq!(wavenumber(5, 8), -3);
    }

    #[test]
    fn line_starts_cover_every_site_once() {
        let grid = Grid4::new(4).unwrap();
        for axis in 0..4 {
            let mut seen = vec![false; grid.sites()];
            for l in 0..64 {
                let s = line_start(l, axis, 4);
                for j in 0..4 {
                    let idx = s + j * grid.stride(axis);
                    assert!(!seen[idx]);
                    seen[idx] = true;
                }
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn fft_roundtrip() {
        let grid = Grid4::new(4).unwrap();
        let v: Vec<C64> = (0..grid.sites())
            .map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let back = ifft4(&fft4(&v, &grid), &grid);
        let err = v.iter().zip(&back).fold(0.0_f64, |m, (a, b)| m.max((a - b).norm()));
        assert!(err < 1e-13);
    }
}
