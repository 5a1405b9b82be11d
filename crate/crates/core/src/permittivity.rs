//! Dielectric permittivity of the wall material on the imaginary frequency
//! axis, ε(iξ).
//!
//! Analytic free-electron models (plasma, Drude) are evaluated in closed
//! form. Tabulated optical data enter through the Kramers-Kronig relation
//!
//! ε(iξ) = 1 + extrapolation(ξ) + (2/π) ∫ ω·Im ε(ω) / (ω² + ξ²) dω,
//!
//! with the integral taken over the tabulated range by the trapezoidal rule
//! on the measured grid (the data, not the quadrature, limit the accuracy),
//! and the low-frequency extrapolation supplied analytically by a plasma or
//! Drude term. Contributions above the last tabulated frequency are dropped;
//! the 1/(ω²+ξ²) kernel suppresses them.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::quantities::{ev_to_angular_frequency, PermittivityValue};

/// Low-frequency continuation of tabulated data down to ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extrapolation {
    /// Lossless free electrons: adds ω_p²/ξ².
    Plasma { omega_p: f64 },
    /// Dissipative free electrons: adds ω_p²/(ξ(ξ+γ)).
    Drude { omega_p: f64, gamma: f64 },
}

impl Extrapolation {
    fn validate(self) -> Result<Self> {
        let (omega_p, gamma) = match self {
            Extrapolation::Plasma { omega_p } => (omega_p, 0.0),
            Extrapolation::Drude { omega_p, gamma } => (omega_p, gamma),
        };
        if !(omega_p > 0.0) || !omega_p.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "plasma frequency",
                requirement: "positive and finite",
                value: omega_p,
            });
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "relaxation frequency",
                requirement: "non-negative and finite",
                value: gamma,
            });
        }
        Ok(self)
    }

    fn term(self, xi: f64) -> f64 {
        match self {
            Extrapolation::Plasma { omega_p } => (omega_p / xi) * (omega_p / xi),
            Extrapolation::Drude { omega_p, gamma } => omega_p * omega_p / (xi * (xi + gamma)),
        }
    }
}

/// Tabulated absorption spectrum: ordered (ω, Im ε(ω)) rows.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalTable {
    omega: Vec<f64>,
    im_eps: Vec<f64>,
}

impl OpticalTable {
    /// Build from rows of (ω rad/s, Im ε ≥ 0). Requires at least two rows
    /// with strictly increasing ω.
    pub fn from_rows(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::EmptyTable);
        }
        for (i, &(w, im)) in rows.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("frequency must be positive and finite, got {w:e}"),
                });
            }
            if !(im >= 0.0) || !im.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("Im eps must be non-negative, got {im:e}"),
                });
            }
            if i > 0 && w <= rows[i - 1].0 {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: "frequencies must be strictly increasing".into(),
                });
            }
        }
        let (omega, im_eps) = rows.into_iter().unzip();
        Ok(Self { omega, im_eps })
    }

    /// Parse an optical data stream: one record per line,
    /// `photon_energy_eV n k`, whitespace separated, `#` comments.
    /// Im ε = 2nk; energies must ascend strictly.
    pub fn parse(reader: impl BufRead) -> Result<Self> {
        let mut rows = Vec::new();
        let mut prev_energy = f64::NEG_INFINITY;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("expected `energy_eV n k`, got {} fields", fields.len()),
                });
            }
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("cannot parse {what} from `{s}`"),
                })
            };
            let energy = parse(fields[0], "photon energy")?;
            let n = parse(fields[1], "n")?;
            let k = parse(fields[2], "k")?;
            if energy <= prev_energy {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!(
                        "photon energies must be strictly ascending ({energy} after {prev_energy})"
                    ),
                });
            }
            if n < 0.0 || k < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "refractive index components must be non-negative".into(),
                });
            }
            prev_energy = energy;
            let omega = ev_to_angular_frequency(energy).map_err(|_| Error::Parse {
                line: line_no,
                reason: "photon energy must be non-negative".into(),
            })?;
            if omega == 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "photon energy must be positive".into(),
                });
            }
            rows.push((omega, 2.0 * n * k));
        }
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        Self::from_rows(rows)
    }

    pub fn omega_min(&self) -> f64 {
        self.omega[0]
    }

    pub fn omega_max(&self) -> f64 {
        *self.omega.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Kramers-Kronig core term (2/π) ∫ ω·Im ε(ω)/(ω²+ξ²) dω, trapezoidal
    /// on the tabulated grid.
    pub fn kramers_kronig_core(&self, xi: f64) -> f64 {
        let xi2 = xi * xi;
        let g = |i: usize| self.omega[i] * self.im_eps[i] / (self.omega[i] * self.omega[i] + xi2);
        let mut acc = crate::summation::CompensatedSum::new();
        let mut prev = g(0);
        for i in 1..self.omega.len() {
            let cur = g(i);
            acc.add(0.5 * (prev + cur) * (self.omega[i] - self.omega[i - 1]));
            prev = cur;
        }
        2.0 / std::f64::consts::PI * acc.value()
    }
}

/// Wall material model, evaluated on the imaginary axis.
#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    /// ε → ∞ limit. Never evaluated as a number; the kernel substitutes
    /// the unit reflection coefficients directly.
    IdealMetal,
    /// ε(iξ) = 1 + ω_p²/ξ².
    Plasma { omega_p: f64 },
    /// ε(iξ) = 1 + ω_p²/(ξ(ξ+γ)).
    Drude { omega_p: f64, gamma: f64 },
    /// Frequency-independent dielectric with finite ε(0) = ε ≥ 1; mainly a
    /// diagnostic wall for the dielectric branch of the zero-frequency limit.
    Constant { eps: f64 },
    /// Measured absorption + Kramers-Kronig, with an analytic free-electron
    /// extrapolation below the tabulated range.
    TabulatedKk {
        table: OpticalTable,
        extrapolation: Extrapolation,
    },
}

impl PermittivityModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        Extrapolation::Plasma { omega_p }.validate()?;
        Ok(Self::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        Extrapolation::Drude { omega_p, gamma }.validate()?;
        Ok(Self::Drude { omega_p, gamma })
    }

    pub fn constant(eps: f64) -> Result<Self> {
        PermittivityValue::new(eps)?;
        Ok(Self::Constant { eps })
    }

    pub fn tabulated_kk(table: OpticalTable, extrapolation: Extrapolation) -> Result<Self> {
        extrapolation.validate()?;
        Ok(Self::TabulatedKk {
            table,
            extrapolation,
        })
    }

    /// ε(iξ). Fails for the ideal metal (no finite value exists) and for
    /// ξ = 0 on free-electron models, whose permittivity diverges there;
    /// the kernel handles the l = 0 term through [`Self::static_tm_reflection`].
    pub fn at_imag_freq(&self, xi: f64) -> Result<PermittivityValue> {
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "imaginary frequency",
                requirement: "non-negative and finite",
                value: xi,
            });
        }
        match self {
            PermittivityModel::IdealMetal => Err(Error::IdealMetalPermittivity),
            PermittivityModel::Constant { eps } => PermittivityValue::new(*eps),
            _ if xi == 0.0 => Err(Error::DivergingPermittivity),
            PermittivityModel::Plasma { omega_p } => {
                PermittivityValue::new(1.0 + Extrapolation::Plasma { omega_p: *omega_p }.term(xi))
            }
            PermittivityModel::Drude { omega_p, gamma } => PermittivityValue::new(
                1.0 + Extrapolation::Drude {
                    omega_p: *omega_p,
                    gamma: *gamma,
                }
                .term(xi),
            ),
            PermittivityModel::TabulatedKk {
                table,
                extrapolation,
            } => PermittivityValue::new(
                1.0 + extrapolation.term(xi) + table.kramers_kronig_core(xi),
            ),
        }
    }

    /// Zero-frequency transverse-magnetic reflection factor:
    /// (ε(0)−1)/(ε(0)+1) for a finite-ε(0) dielectric, 1 for metals.
    pub fn static_tm_reflection(&self) -> f64 {
        match self {
            PermittivityModel::Constant { eps } => (eps - 1.0) / (eps + 1.0),
            _ => 1.0,
        }
    }

    /// True when ε(0) diverges (free electrons or the ideal-metal limit).
    pub fn is_metallic(&self) -> bool {
        !matches!(self, PermittivityModel::Constant { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::io::Cursor;

    fn table(text: &str) -> Result<OpticalTable> {
        OpticalTable::parse(Cursor::new(text))
    }

    #[test]
    fn parse_computes_two_n_k() {
        let t = table("1.0 0.9 1.9\n2.0 0.5 0.5\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_relative_eq!(t.im_eps[0], 3.42, max_relative = 1e-15);
        assert_relative_eq!(
            t.omega[0],
            ev_to_angular_frequency(1.0).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn parse_rejects_comment_only_stream() {
        assert!(matches!(table("# comment\n# another\n"), Err(Error::EmptyTable)));
    }

    #[test]
    fn parse_rejects_descending_energies_with_line_number() {
        let err = table("1.0 1.0 1.0\n3.0 1.0 1.0\n2.0 1.0 1.0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_negative_n_or_k() {
        assert!(matches!(
            table("1.0 -0.1 1.0\n2.0 1.0 1.0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            table("1.0 0.1 1.0\n2.0 1.0 -1.0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_allows_inline_comments_and_blank_lines() {
        let t = table("\n# header\n1.0 1.0 0.5  # row\n\n2.0 0.9 0.4\n").unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn single_row_is_not_a_table() {
        assert!(matches!(table("1.0 1.0 1.0\n"), Err(Error::EmptyTable)));
    }

    #[test]
    fn plasma_at_its_own_frequency() {
        let m = PermittivityModel::plasma(1e16).unwrap();
        assert_relative_eq!(m.at_imag_freq(1e16).unwrap().value(), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn drude_with_zero_gamma_equals_plasma() {
        let p = PermittivityModel::plasma(9e15).unwrap();
        let d = PermittivityModel::drude(9e15, 0.0).unwrap();
        for xi in [1e13, 1e15, 3e16, 1e18] {
            assert_eq!(
                p.at_imag_freq(xi).unwrap().value(),
                d.at_imag_freq(xi).unwrap().value()
            );
        }
    }

    #[test]
    fn tabulated_with_zero_absorption_reduces_to_plasma_term() {
        // oracle: direct quadrature of an identically-zero integrand is zero,
        // so at ξ = ω_p the tabulated model must give exactly 1 + 1 = 2
        let rows: Vec<(f64, f64)> = (0..40)
            .map(|i| (1e14 * 1.3f64.powi(i), 0.0))
            .collect();
        let zero_kk: f64 = rows
            .windows(2)
            .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
            .sum();
        assert_eq!(zero_kk, 0.0);
        let omega_p = 1.2e16;
        let t = OpticalTable::from_rows(rows).unwrap();
        let m = PermittivityModel::tabulated_kk(t, Extrapolation::Plasma { omega_p }).unwrap();
        assert_relative_eq!(
            m.at_imag_freq(omega_p).unwrap().value(),
            2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn zero_frequency_signals_divergence() {
        for m in [
            PermittivityModel::plasma(1e16).unwrap(),
            PermittivityModel::drude(1e16, 1e13).unwrap(),
            PermittivityModel::tabulated_kk(
                OpticalTable::from_rows(vec![(1e14, 1.0), (1e15, 0.5)]).unwrap(),
                Extrapolation::Plasma { omega_p: 1e16 },
            )
            .unwrap(),
        ] {
            assert!(matches!(
                m.at_imag_freq(0.0),
                Err(Error::DivergingPermittivity)
            ));
        }
        assert!(matches!(
            PermittivityModel::IdealMetal.at_imag_freq(1e15),
            Err(Error::IdealMetalPermittivity)
        ));
        assert_eq!(
            PermittivityModel::constant(4.0).unwrap().at_imag_freq(0.0).unwrap().value(),
            4.0
        );
    }

    #[test]
    fn static_reflection_factor() {
        assert_relative_eq!(
            PermittivityModel::constant(2.0).unwrap().static_tm_reflection(),
            1.0 / 3.0,
            max_relative = 1e-15
        );
        assert_eq!(PermittivityModel::plasma(1e16).unwrap().static_tm_reflection(), 1.0);
        assert_eq!(PermittivityModel::IdealMetal.static_tm_reflection(), 1.0);
        assert_eq!(PermittivityModel::constant(1.0).unwrap().static_tm_reflection(), 0.0);
    }

    #[test]
    fn monotone_non_increasing_on_geometric_grid() {
        let rows: Vec<(f64, f64)> = (0..60)
            .map(|i| {
                let w = 1e14 * 1.25f64.powi(i);
                // single broad Lorentzian absorption
                let im = 1e31 * w / ((w * w - 1e32).powi(2) / 1e32 + w * w);
                (w, im.max(0.0))
            })
            .collect();
        let models = [
            PermittivityModel::plasma(1.37e16).unwrap(),
            PermittivityModel::drude(1.37e16, 5.3e13).unwrap(),
            PermittivityModel::constant(4.0).unwrap(),
            PermittivityModel::tabulated_kk(
                OpticalTable::from_rows(rows).unwrap(),
                Extrapolation::Plasma { omega_p: 1.37e16 },
            )
            .unwrap(),
        ];
        for m in &models {
            let mut prev = f64::INFINITY;
            let mut xi = 1e12;
            while xi <= 1e18 {
                let eps = m.at_imag_freq(xi).unwrap().value();
                assert!(eps >= 1.0, "eps >= 1 violated at xi={xi:e}");
                assert!(
                    eps <= prev * (1.0 + 1e-13),
                    "monotonicity violated at xi={xi:e} for {m:?}"
                );
                prev = eps;
                xi *= 1.6;
            }
        }
    }

    #[test]
    fn tabulated_dominates_bare_plasma() {
        let rows: Vec<(f64, f64)> = (0..50)
            .map(|i| (5e13 * 1.4f64.powi(i), 0.3))
            .collect();
        let omega_p = 1.37e16;
        let plasma = PermittivityModel::plasma(omega_p).unwrap();
        let tab = PermittivityModel::tabulated_kk(
            OpticalTable::from_rows(rows).unwrap(),
            Extrapolation::Plasma { omega_p },
        )
        .unwrap();
        let mut xi = 1e12;
        while xi <= 1e18 {
            assert!(
                tab.at_imag_freq(xi).unwrap().value() >= plasma.at_imag_freq(xi).unwrap().value()
            );
            xi *= 2.3;
        }
    }

    #[test]
    fn drude_converges_to_plasma_with_small_gamma() {
        let omega_p = 1.37e16;
        let gamma = 5.3e13;
        let p = PermittivityModel::plasma(omega_p).unwrap();
        let d = PermittivityModel::drude(omega_p, gamma).unwrap();
        let mut xi = 10.0 * gamma;
        while xi <= 1e18 {
            let delta =
                (d.at_imag_freq(xi).unwrap().value() - p.at_imag_freq(xi).unwrap().value()).abs();
            assert!(delta <= omega_p * omega_p * gamma / (xi * xi * xi) * (1.0 + 1e-12));
            xi *= 2.0;
        }
    }
}
