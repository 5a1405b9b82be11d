//! Dynamic atomic polarizability on the imaginary frequency axis, α(iξ).
//!
//! α(iξ) is real, non-negative and non-increasing in ξ for a ground-state
//! atom; the Matsubara tail bounds rely on that monotonicity. Tabulated data
//! are interpolated with a monotonicity-preserving piecewise cubic
//! (Fritsch-Carlson) in the variable u = ln(1+ξ), which compresses the many
//! decades of the grid without the ξ = 0 singularity of a pure log axis.
//! Above the last node α continues with the free-electron tail
//! α_last·(ξ_last/ξ)².

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::quantities::{au_to_si_polarizability, PolarizabilityValue};

/// Units of the α column in a polarizability table file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableUnits {
    /// α in atomic units (a₀³); converted on ingestion.
    AtomicUnits,
    /// α already in m³.
    Si,
}

/// Relative slack tolerated before an increasing α row is rejected.
const MONOTONICITY_TOLERANCE: f64 = 1e-12;

/// Tabulated α(iξ): interpolation nodes plus the ξ = 0 anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizabilityTable {
    /// Interpolation abscissae u = ln(1+ξ); first node is ξ = 0.
    u: Vec<f64>,
    alpha: Vec<f64>,
    /// Fritsch-Carlson node derivatives dα/du.
    slope: Vec<f64>,
    xi_last: f64,
}

impl PolarizabilityTable {
    /// Build from (ξ rad/s, α m³) rows. The first row may sit at ξ = 0 and
    /// then serves as the static anchor; otherwise the anchor is the first
    /// row's α, extended flat down to ξ = 0.
    pub fn from_rows(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        for (i, &(xi, alpha)) in rows.iter().enumerate() {
            if !(xi >= 0.0) || !xi.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("frequency must be non-negative and finite, got {xi:e}"),
                });
            }
            if !(alpha >= 0.0) || !alpha.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("polarizability must be non-negative, got {alpha:e}"),
                });
            }
            if i > 0 {
                if xi <= rows[i - 1].0 {
                    return Err(Error::Parse {
                        line: i + 1,
                        reason: "frequencies must be strictly increasing".into(),
                    });
                }
                if alpha > rows[i - 1].1 * (1.0 + MONOTONICITY_TOLERANCE) {
                    return Err(Error::Parse {
                        line: i + 1,
                        reason: format!(
                            "polarizability must be non-increasing: row value {alpha:e} \
                             exceeds previous {:e}",
                            rows[i - 1].1
                        ),
                    });
                }
            }
        }
        if rows.len() == 1 && rows[0].0 > 0.0 {
            return Err(Error::EmptyTable);
        }

        let mut nodes = rows;
        if nodes[0].0 > 0.0 {
            // flat anchor segment [0, ξ_first] at α(0) = first α
            nodes.insert(0, (0.0, nodes[0].1));
        }
        let u: Vec<f64> = nodes.iter().map(|&(xi, _)| xi.ln_1p()).collect();
        let alpha: Vec<f64> = nodes.iter().map(|&(_, a)| a).collect();
        let slope = fritsch_carlson_slopes(&u, &alpha);
        let xi_last = nodes.last().unwrap().0;
        Ok(Self {
            u,
            alpha,
            slope,
            xi_last,
        })
    }

    /// Parse a `xi alpha` stream, `#` comments, with the α column in the
    /// given units (ξ is rad/s in both cases).
    pub fn parse(reader: impl BufRead, units: TableUnits) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("expected `xi alpha`, got {} fields", fields.len()),
                });
            }
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("cannot parse {what} from `{s}`"),
                })
            };
            let xi = parse(fields[0], "frequency")?;
            let mut alpha = parse(fields[1], "polarizability")?;
            if alpha < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("polarizability must be non-negative, got {alpha:e}"),
                });
            }
            if units == TableUnits::AtomicUnits {
                alpha = au_to_si_polarizability(alpha)?.cubic_meters();
            }
            rows.push((xi, alpha));
        }
        Self::from_rows(rows)
    }

    /// Static anchor α(0) in m³.
    pub fn static_value(&self) -> f64 {
        self.alpha[0]
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    fn eval(&self, xi: f64) -> f64 {
        if xi <= 0.0 {
            return self.alpha[0];
        }
        if xi >= self.xi_last {
            let last = *self.alpha.last().unwrap();
            let r = self.xi_last / xi;
            return last * r * r;
        }
        let u = xi.ln_1p();
        // bracketing interval by binary search
        let mut lo = 0usize;
        let mut hi = self.u.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.u[mid] <= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.u[hi] - self.u[lo];
        let t = (u - self.u[lo]) / h;
        let (a0, a1) = (self.alpha[lo], self.alpha[hi]);
        let (d0, d1) = (self.slope[lo] * h, self.slope[hi] * h);
        // cubic Hermite basis
        let t2 = t * t;
        let t3 = t2 * t;
        a0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + d0 * (t3 - 2.0 * t2 + t)
            + a1 * (-2.0 * t3 + 3.0 * t2)
            + d1 * (t3 - t2)
    }
}

/// Fritsch-Carlson monotone cubic slopes: never overshoots, reproduces
/// nodes exactly, keeps the interpolant within each bracketing node pair.
fn fritsch_carlson_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![0.0];
    }
    let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
    let s: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    let mut d = vec![0.0; n];

    d[0] = endpoint_slope(h[0], h.get(1).copied().unwrap_or(h[0]), s[0], s.get(1).copied().unwrap_or(s[0]));
    d[n - 1] = endpoint_slope(
        h[n - 2],
        if n >= 3 { h[n - 3] } else { h[n - 2] },
        s[n - 2],
        if n >= 3 { s[n - 3] } else { s[n - 2] },
    );
    for i in 1..n - 1 {
        if s[i - 1] == 0.0 || s[i] == 0.0 || (s[i - 1] > 0.0) != (s[i] > 0.0) {
            d[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
        }
    }
    d
}

fn endpoint_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d.signum() != s0.signum() {
        0.0
    } else if s0.signum() != s1.signum() && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

/// Atomic polarizability model.
#[derive(Debug, Clone, PartialEq)]
pub enum PolarizabilityModel {
    /// α(iξ) = α₀ for all ξ.
    Static { alpha0: f64 },
    /// α(iξ) = α₀ / (1 + ξ²/ω₀²).
    SingleOscillator { alpha0: f64, omega0: f64 },
    /// Interpolated table.
    Tabulated(PolarizabilityTable),
}

impl PolarizabilityModel {
    pub fn static_alpha(alpha0: PolarizabilityValue) -> Self {
        Self::Static {
            alpha0: alpha0.cubic_meters(),
        }
    }

    pub fn single_oscillator(alpha0: PolarizabilityValue, omega0: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "oscillator frequency",
                requirement: "positive and finite",
                value: omega0,
            });
        }
        Ok(Self::SingleOscillator {
            alpha0: alpha0.cubic_meters(),
            omega0,
        })
    }

    /// α(iξ) in m³. Total function for ξ ≥ 0 on every valid model.
    pub fn at_imag_freq(&self, xi: f64) -> PolarizabilityValue {
        let alpha = match self {
            PolarizabilityModel::Static { alpha0 } => *alpha0,
            PolarizabilityModel::SingleOscillator { alpha0, omega0 } => {
                alpha0 / (1.0 + (xi / omega0) * (xi / omega0))
            }
            PolarizabilityModel::Tabulated(table) => table.eval(xi),
        };
        PolarizabilityValue::new(alpha.max(0.0)).expect("models produce finite non-negative alpha")
    }

    /// α(0) in m³.
    pub fn static_value(&self) -> f64 {
        match self {
            PolarizabilityModel::Static { alpha0 } => *alpha0,
            PolarizabilityModel::SingleOscillator { alpha0, .. } => *alpha0,
            PolarizabilityModel::Tabulated(table) => table.static_value(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::BOHR_RADIUS;
    use approx::assert_relative_eq;
    use std::io::Cursor;

    fn alpha0(v: f64) -> PolarizabilityValue {
        PolarizabilityValue::new(v).unwrap()
    }

    #[test]
    fn parse_converts_atomic_units() {
        let t = PolarizabilityTable::parse(
            Cursor::new("0 100\n1e15 50\n"),
            TableUnits::AtomicUnits,
        )
        .unwrap();
        let a0 = 100.0 * BOHR_RADIUS.powi(3);
        assert_relative_eq!(t.static_value(), a0, max_relative = 1e-14);
        assert_relative_eq!(t.static_value(), 1.481_847_1e-29, max_relative = 1e-7);
    }

    #[test]
    fn parse_rejects_empty_and_negative() {
        assert!(matches!(
            PolarizabilityTable::parse(Cursor::new(""), TableUnits::Si),
            Err(Error::EmptyTable)
        ));
        let err = PolarizabilityTable::parse(
            Cursor::new("0 1e-29\n1e15 -1e-30\n"),
            TableUnits::Si,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_rejects_increasing_alpha() {
        let err = PolarizabilityTable::parse(
            Cursor::new("0 1e-29\n1e15 9e-30\n2e15 9.5e-30\n"),
            TableUnits::Si,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn parse_rejects_non_monotone_frequency() {
        let err = PolarizabilityTable::parse(
            Cursor::new("0 1e-29\n2e15 9e-30\n1e15 8e-30\n"),
            TableUnits::Si,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn static_model_is_constant() {
        let m = PolarizabilityModel::static_alpha(alpha0(3e-29));
        for xi in [0.0, 1e12, 1e16, 1e19] {
            assert_eq!(m.at_imag_freq(xi).cubic_meters(), 3e-29);
        }
    }

    #[test]
    fn single_oscillator_half_value_at_omega0() {
        let m = PolarizabilityModel::single_oscillator(alpha0(3e-29), 2e15).unwrap();
        assert_relative_eq!(
            m.at_imag_freq(2e15).cubic_meters(),
            1.5e-29,
            max_relative = 1e-15
        );
    }

    #[test]
    fn single_oscillator_tends_to_static() {
        let a = alpha0(3e-29);
        let xi = 1e15;
        let mut prev_gap = f64::INFINITY;
        for omega0 in [1e16, 1e17, 1e18, 1e19] {
            let m = PolarizabilityModel::single_oscillator(a, omega0).unwrap();
            let gap = (m.at_imag_freq(xi).cubic_meters() - 3e-29).abs();
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
        assert!(prev_gap < 3e-29 * 1e-7);
    }

    fn sample_table() -> PolarizabilityTable {
        let rows: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let xi = if i == 0 { 0.0 } else { 1e13 * 1.45f64.powi(i) };
                let alpha = 4e-29 / (1.0 + (xi / 1.7e15).powi(2));
                (xi, alpha)
            })
            .collect();
        PolarizabilityTable::from_rows(rows).unwrap()
    }

    #[test]
    fn interpolation_reproduces_nodes() {
        let rows: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let xi = if i == 0 { 0.0 } else { 1e13 * 1.45f64.powi(i) };
                (xi, 4e-29 / (1.0 + (xi / 1.7e15).powi(2)))
            })
            .collect();
        let t = PolarizabilityTable::from_rows(rows.clone()).unwrap();
        for &(xi, alpha) in &rows {
            assert_relative_eq!(t.eval(xi), alpha, max_relative = 1e-13);
        }
    }

    #[test]
    fn interpolation_never_overshoots_bracketing_nodes() {
        let rows: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let xi = if i == 0 { 0.0 } else { 1e13 * 1.45f64.powi(i) };
                (xi, 4e-29 / (1.0 + (xi / 1.7e15).powi(2)))
            })
            .collect();
        let t = PolarizabilityTable::from_rows(rows.clone()).unwrap();
        for w in rows.windows(2) {
            let (x0, a0) = w[0];
            let (x1, a1) = w[1];
            let (hi, lo) = (a0.max(a1), a0.min(a1));
            for k in 1..16 {
                let xi = x0 + (x1 - x0) * k as f64 / 16.0;
                let v = t.eval(xi);
                assert!(
                    v <= hi * (1.0 + 1e-12) && v >= lo * (1.0 - 1e-12),
                    "overshoot at xi={xi:e}: {v:e} outside [{lo:e}, {hi:e}]"
                );
            }
        }
    }

    #[test]
    fn all_models_non_increasing_on_geometric_grid() {
        let models = [
            PolarizabilityModel::static_alpha(alpha0(4e-29)),
            PolarizabilityModel::single_oscillator(alpha0(4e-29), 1.7e15).unwrap(),
            PolarizabilityModel::Tabulated(sample_table()),
        ];
        for m in &models {
            let mut prev = f64::INFINITY;
            let mut xi = 1e11;
            while xi < 1e19 {
                let a = m.at_imag_freq(xi).cubic_meters();
                assert!(a >= 0.0);
                assert!(a <= prev * (1.0 + 1e-12), "increase at xi={xi:e} for {m:?}");
                prev = a;
                xi *= 1.7;
            }
        }
    }

    #[test]
    fn high_frequency_tail_is_inverse_square() {
        let t = sample_table();
        let xi_last = 1e13 * 1.45f64.powi(39);
        let a_last = t.eval(xi_last);
        assert_relative_eq!(
            t.eval(10.0 * xi_last),
            a_last / 100.0,
            max_relative = 1e-12
        );
        // continuous at the matching point
        assert_relative_eq!(
            t.eval(xi_last * (1.0 + 1e-9)),
            a_last,
            max_relative = 1e-6
        );
    }

    #[test]
    fn below_first_positive_node_returns_anchor() {
        // rows starting above zero get a flat anchor segment
        let rows = vec![(1e14, 2e-29), (1e15, 1e-29)];
        let t = PolarizabilityTable::from_rows(rows).unwrap();
        assert_eq!(t.static_value(), 2e-29);
        for xi in [0.0, 1e12, 5e13, 9.9e13] {
            assert_relative_eq!(t.eval(xi), 2e-29, max_relative = 1e-12);
        }
    }
}
