//! Ricci curvature of `g_Y = g_X + r²(dθ + a)²` with constant `r` and
//! coclosed curvature, plus an independent finite-difference oracle.

use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, TwoFormFibre};

type Mat5 = SMatrix<f64, 5, 5>;

fn f_matrix(f: &TwoFormFibre) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = f.component(i, j).im;
        }
    }
    m
}

/// `Ric_Y(E_a, E_b)` in the frame `(e₁*, …, e₄*, K/r)` (index 4 is `K/r`)
/// over a flat base. `f` is the imaginary curvature `F_A = i·f`.
pub fn ricci_kk(f: &TwoFormFibre, r: f64, a: usize, b: usize) -> f64 {
    ricci_kk_with_base(f, r, &[[0.0; 4]; 4], a, b)
}

/// As [`ricci_kk`] with base Ricci tensor `ric_x` in the frame `e_μ`:
///
/// ```text
/// Ric(K/r, K/r) = ½ r² |f|²
/// Ric(V*, W*)   = Ric_X(V, W) − ½ r² ⟨i_V f, i_W f⟩
/// Ric(V*, K/r)  = 0
/// ```
pub fn ricci_kk_with_base(f: &TwoFormFibre, r: f64, ric_x: &[[f64; 4]; 4], a: usize, b: usize) -> f64 {
    let m = f_matrix(f);
    match (a, b) {
        (4, 4) => 0.5 * r * r * f.norm_sq(),
        (4, _) | (_, 4) => 0.0,
        (i, j) => ric_x[i][j] - 0.5 * r * r * (0..4).map(|k| m[i][k] * m[j][k]).sum::<f64>(),
    }
}

/// One compared component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RicciEntry {
    pub name: String,
    pub oracle: f64,
    pub formula: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RicciTable {
    pub c: f64,
    pub r: f64,
    pub step: f64,
    pub entries: Vec<RicciEntry>,
    pub max_deviation: f64,
}

impl RicciTable {
    pub fn entry(&self, name: &str) -> Option<&RicciEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Smallest step for which nested central differences stay above rounding.
pub const MIN_STEP: f64 = 1e-7;
pub const DEFAULT_STEP: f64 = 1e-4;
const POINT: [f64; 4] = [0.3, 0.2, -0.1, 0.4];

fn christoffel(metric: &impl Fn(&[f64; 5]) -> Mat5, x: &[f64; 5], h: f64) -> [[[f64; 5]; 5]; 5] {
    let ginv = metric(x).try_inverse().expect("metric is invertible");
    let dg: Vec<Mat5> = (0..5)
        .map(|k| {
            let (mut xp, mut xm) = (*x, *x);
            xp[k] += h;
            xm[k] -= h;
            (metric(&xp) - metric(&xm)) / (2.0 * h)
        })
        .collect();
    let mut gam = [[[0.0; 5]; 5]; 5];
    for (l, gl) in gam.iter_mut().enumerate() {
        for i in 0..5 {
            for j in 0..5 {
                gl[i][j] = 0.5
                    * (0..5)
                        .map(|m| ginv[(l, m)] * (dg[i][(m, j)] + dg[j][(m, i)] - dg[m][(i, j)]))
                        .sum::<f64>();
            }
        }
    }
    gam
}

/// Coordinate Ricci tensor by nested central differences.
fn ricci_coordinates(metric: &impl Fn(&[f64; 5]) -> Mat5, x: &[f64; 5], h: f64) -> Mat5 {
    let gam = christoffel(metric, x, h);
    let dgam: Vec<[[[f64; 5]; 5]; 5]> = (0..5)
        .map(|k| {
            let (mut xp, mut xm) = (*x, *x);
            xp[k] += h;
            xm[k] -= h;
            let (p, m) = (christoffel(metric, &xp, h), christoffel(metric, &xm, h));
            let mut d = [[[0.0; 5]; 5]; 5];
            for l in 0..5 {
                for i in 0..5 {
                    for j in 0..5 {
                        d[l][i][j] = (p[l][i][j] - m[l][i][j]) / (2.0 * h);
                    }
                }
            }
            d
        })
        .collect();
    let mut ric = Mat5::zeros();
    for b in 0..5 {
        for d in 0..5 {
            let mut s = 0.0;
            for a in 0..5 {
                s += dgam[a][a][d][b] - dgam[d][a][a][b];
                for e in 0..5 {
                    s += gam[a][a][e] * gam[e][d][b] - gam[a][d][e] * gam[e][a][b];
                }
            }
            ric[(b, d)] = s;
        }
    }
    ric
}

/// Compare [`ricci_kk`] with finite differences for `a = c·x¹ dx²` on flat
/// `T⁴` and constant radius `r`.
pub fn ricci_oracle(c: f64, r: f64) -> Result<RicciTable> {
    ricci_oracle_with_step(c, r, DEFAULT_STEP)
}

pub fn ricci_oracle_with_step(c: f64, r: f64, h: f64) -> Result<RicciTable> {
    if !(h >= MIN_STEP) {
        return Err(Error::StepUnderflow(h));
    }
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    let a_of = |x: &[f64; 5]| [0.0, c * x[0], 0.0, 0.0];
    let metric = |x: &[f64; 5]| {
        let a = a_of(x);
        let mut g = Mat5::identity();
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] += r * r * a[i] * a[j];
            }
            g[(i, 4)] = r * r * a[i];
            g[(4, i)] = r * r * a[i];
        }
        g[(4, 4)] = r * r;
        g
    };
    let x = [POINT[0], POINT[1], POINT[2], POINT[3], 0.0];
    let ric = ricci_coordinates(&metric, &x, h);

    // e_μ* = ∂_μ − a_μ ∂_θ, K/r = ∂_θ / r
    let a = a_of(&x);
    let frame = |k: usize| {
        let mut v = nalgebra::SVector::<f64, 5>::zeros();
        if k < 4 {
            v[k] = 1.0;
            v[4] = -a[k];
        } else {
            v[4] = 1.0 / r;
        }
        v
    };
    let f = TwoFormFibre::basis(0, 1) * crate::C64::new(0.0, c);
    let names = ["e1*", "e2*", "e3*", "e4*", "K/r"];
    let pairs = [(4, 4), (0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (2, 3), (0, 4), (1, 4)];
    let entries: Vec<RicciEntry> = pairs
        .iter()
        .map(|&(i, j)| {
            let oracle = (frame(i).transpose() * ric * frame(j))[(0, 0)];
            let formula = ricci_kk(&f, r, i, j);
            RicciEntry {
                name: format!("Ric({},{})", names[i], names[j]),
                oracle,
                formula,
                deviation: (oracle - formula).abs(),
            }
        })
        .collect();
    let max_deviation = entries.iter().fold(0.0_f64, |m, e| m.max(e.deviation));
    Ok(RicciTable {
        c,
        r,
        step: h,
        entries,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_bundle_is_ricci_flat() {
        let t = ricci_oracle(0.0, 1.0).unwrap();
        assert!(t.max_deviation < 1e-10);
        for e in &t.entries {
            assert!(e.oracle.abs() < 1e-10);
        }
    }

    #[test]
    fn unit_field_radius_two() {
        let t = ricci_oracle(1.0, 2.0).unwrap();
        let v = t.entry("Ric(K/r,K/r)").unwrap();
        assert!((v.oracle - 2.0).abs() < 1e-6, "{v:?}");
        let h = t.entry("Ric(e1*,e1*)").unwrap();
        assert!((h.oracle + 2.0).abs() < 1e-6, "{h:?}");
        assert!(t.max_deviation < 1e-6);
    }

    #[test]
    fn tiny_step_is_rejected() {
        assert!(matches!(ricci_oracle_with_step(1.0, 1.0, 1e-12), Err(Error::StepUnderflow(_))));
    }

    #[test]
    fn kahler_form_gives_einstein_horizontal_block() {
        // F = iλω, r = 2/|λ|: horizontal Ricci λ − 2 on the Kähler–Einstein
        // base with Ric_X = λ g.
        let lam = -4.0;
        let w = TwoFormFibre::basis(0, 1) + TwoFormFibre::basis(2, 3);
        let f = w * crate::C64::new(0.0, lam);
        let r = 2.0 / lam.abs();
        let mut ric_x = [[0.0; 4]; 4];
        for (i, row) in ric_x.iter_mut().enumerate() {
            row[i] = lam;
        }
        for i in 0..4 {
            assert!((ricci_kk_with_base(&f, r, &ric_x, i, i) - (lam - 2.0)).abs() < 1e-14);
        }
        assert!((ricci_kk(&f, r, 4, 4) - 4.0).abs() < 1e-14);
    }
}
