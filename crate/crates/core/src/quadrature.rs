//! Globally adaptive Gauss–Kronrod quadrature on a finite interval.
//!
//! 7-point Gauss / 15-point Kronrod pair with bisection of the panel
//! carrying the largest error estimate. Deterministic: panel selection and
//! the final summation order depend only on the panel list, never on
//! threading or hashing.

use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

// QUADPACK dqk15 abscissae and weights, kept at their published precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_439_9,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_964,
    0.063_092_092_629_978_553_291,
    0.104_790_010_322_250_183_84,
    0.140_653_259_715_525_918_75,
    0.169_004_726_639_267_902_83,
    0.190_350_578_064_785_409_91,
    0.204_432_940_075_298_892_51,
    0.209_482_141_084_727_828_01,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_27,
    0.279_705_391_489_276_667_90,
    0.381_830_050_505_118_944_95,
    0.417_959_183_673_469_387_76,
];

/// Value, rigorous-ish error bound, and panel count of one integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub error_bound: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut res_abs = kronrod.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = f_center;
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for (j, &v) in fv.iter().enumerate() {
        if j != 7 {
            let w = WGK[if j < 7 { j } else { 14 - j }];
            res_asc += w * (v - mean).abs();
        }
    }

    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK error rescaling
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let min_err = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && min_err > err {
        err = min_err;
    }

    Panel {
        a,
        b,
        value,
        error: err,
    }
}

/// Integrate `f` over `[a, b]`, bisecting until the summed error estimate
/// satisfies `err <= max(abs_tol, rel_tol * |value|)` or `max_panels` is
/// reached.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
    context: &'static str,
) -> Result<QuadratureOutcome> {
    if a == b {
        return Ok(QuadratureOutcome {
            value: 0.0,
            error_bound: 0.0,
            panels: 0,
        });
    }

    let mut panels = vec![qk15(&f, a, b)];
    loop {
        let mut total = 0.0;
        let mut total_err = 0.0;
        let mut worst = 0usize;
        for (i, p) in panels.iter().enumerate() {
            total += p.value;
            total_err += p.error;
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            // ascending-interval compensated sum for a reproducible value
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            let mut sum = CompensatedSum::new();
            let mut err = CompensatedSum::new();
            for p in &panels {
                sum.add(p.value);
                err.add(p.error);
            }
            return Ok(QuadratureOutcome {
                value: sum.value(),
                error_bound: err.value(),
                panels: panels.len(),
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureDidNotConverge {
                context,
                estimate: total,
                error_bound: total_err,
                panels: panels.len(),
            });
        }
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        panels.push(qk15(&f, a, mid));
        panels.push(qk15(&f, mid, b));
    }
}
