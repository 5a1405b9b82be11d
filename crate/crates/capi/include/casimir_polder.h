/* C interface to the casimir-polder atom-surface interaction library.
 *
 * Build a scenario with cp_scenario_new(), configure it with the setters,
 * then call cp_evaluate(). All functions returning CpStatus set a
 * thread-local message readable through cp_last_error_message() on failure.
 */

#ifndef CASIMIR_POLDER_H
#define CASIMIR_POLDER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * How a result was obtained: Matsubara summation or the T = 0 integral.
 */
typedef enum {
  CP_MODE_MATSUBARA_SUM = 0,
  CP_MODE_ZERO_TEMPERATURE_INTEGRAL = 1,
} CpMode;

/**
 * Result code of every fallible C-API call.
 */
typedef enum {
  CP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CP_STATUS_NULL_POINTER = 1,
  /**
   * An argument lies outside its domain (negative separation, ε < 1, …).
   */
  CP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The scenario is missing a wall or an atom model.
   */
  CP_STATUS_INCOMPLETE_SCENARIO = 3,
  /**
   * Physics domain error (nonperturbative breakdown, wrong mode).
   */
  CP_STATUS_DOMAIN_ERROR = 4,
  /**
   * Quadrature or summation failed to converge.
   */
  CP_STATUS_NUMERICAL_ERROR = 5,
  /**
   * File could not be read or parsed.
   */
  CP_STATUS_IO_ERROR = 6,
  /**
   * Internal panic; the message carries details.
   */
  CP_STATUS_INTERNAL_ERROR = 7,
} CpStatus;

/**
 * Opaque scenario builder.
 */
typedef struct CpScenario CpScenario;

/**
 * Evaluation output: both theories plus their relative deviations.
 * `delta_f`/`delta_force` are NaN when the perturbative reference is zero.
 */
typedef struct {
  /**
   * Nonperturbative free energy (J).
   */
  double free_energy_j;
  /**
   * Nonperturbative force (N).
   */
  double force_n;
  /**
   * Perturbative (first-order Lifshitz) free energy (J).
   */
  double free_energy_perturbative_j;
  /**
   * Perturbative force (N).
   */
  double force_perturbative_n;
  /**
   * (exact − perturbative)/perturbative for the free energy.
   */
  double delta_f;
  /**
   * (exact − perturbative)/perturbative for the force.
   */
  double delta_force;
  /**
   * Matsubara terms summed (or quadrature panels at T = 0).
   */
  uint64_t terms_used;
  CpMode mode;
} CpInteraction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Allocate a scenario with the defaults: a = 10 nm, T = 300 K, no wall,
 * no atom. Free with [`cp_scenario_free`].
 */
CpScenario *cp_scenario_new(void);

/**
 * Release a scenario created by [`cp_scenario_new`]. Null is a no-op.
 */
void cp_scenario_free(CpScenario *scenario);

/**
 * Set the atom-surface separation (m).
 */
CpStatus cp_scenario_set_separation(CpScenario *scenario, double a_m);

/**
 * Set the validity floor on the separation (m); default 0.8 nm.
 */
CpStatus cp_scenario_set_separation_floor(CpScenario *scenario, double floor_m);

/**
 * Set the temperature (K); 0 selects the zero-temperature integral mode.
 */
CpStatus cp_scenario_set_temperature(CpScenario *scenario, double temperature_k);

/**
 * Ideal-metal wall (unit reflection coefficients).
 */
CpStatus cp_scenario_set_wall_ideal(CpScenario *scenario);

/**
 * Lossless plasma wall, ε(iξ) = 1 + ω_p²/ξ² (ω_p in rad/s).
 */
CpStatus cp_scenario_set_wall_plasma(CpScenario *scenario, double omega_p_rad_s);

/**
 * Dissipative Drude wall, ε(iξ) = 1 + ω_p²/(ξ(ξ+γ)) (both rad/s).
 */
CpStatus cp_scenario_set_wall_drude(CpScenario *scenario, double omega_p_rad_s, double gamma_rad_s);

/**
 * Frequency-independent dielectric wall with ε ≥ 1.
 */
CpStatus cp_scenario_set_wall_constant(CpScenario *scenario, double eps);

/**
 * Tabulated optical data (`energy_eV n k` lines) with Kramers-Kronig
 * transform and a free-electron extrapolation below the tabulated range:
 * plasma when `use_drude_extrapolation` is zero, Drude otherwise.
 */
CpStatus cp_scenario_set_wall_tabulated_file(CpScenario *scenario,
                                             const char *path,
                                             int use_drude_extrapolation,
                                             double omega_p_rad_s,
                                             double gamma_rad_s);

/**
 * Frequency-independent polarizability α(iξ) = α₀ (m³).
 */
CpStatus cp_scenario_set_atom_static(CpScenario *scenario, double alpha0_m3);

/**
 * Single-oscillator polarizability α₀/(1 + ξ²/ω₀²) (α₀ in m³, ω₀ in rad/s).
 */
CpStatus cp_scenario_set_atom_oscillator(CpScenario *scenario,
                                         double alpha0_m3,
                                         double omega0_rad_s);

/**
 * Tabulated polarizability from a `xi alpha` file; the α column is in
 * atomic units when `atomic_units` is nonzero, m³ otherwise.
 */
CpStatus cp_scenario_set_atom_table_file(CpScenario *scenario, const char *path, int atomic_units);

/**
 * Evaluate the scenario: exact and perturbative free energy and force,
 * by Matsubara summation (T > 0) or the zero-temperature integral (T = 0).
 */
CpStatus cp_evaluate(const CpScenario *scenario, CpInteraction *out);

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cp_last_error_message(void);

/**
 * Library version as a static C string.
 */
const char *cp_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CASIMIR_POLDER_H */
