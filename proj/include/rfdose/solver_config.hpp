#pragma once

#include <array>
#include <cmath>
#include <string>

#include "rfdose/constants.hpp"
#include "rfdose/dielectrics.hpp"
#include "rfdose/errors.hpp"

namespace rfdose {

// Courant stability limit for the uniform cubic grid.
inline double courant_dt(double spacing) {
  if (!(spacing > 0.0)) throw ParameterDomainError("spacing must be > 0");
  return spacing / (kSpeedOfLight * std::sqrt(3.0));
}

struct SourceSpec {
  enum class Kind { None, Port, SheetX };  // SheetX: uniform Ex current sheet
  enum class Waveform { ContinuousWave, GaussianPulse };

  Kind kind = Kind::Port;
  Waveform waveform = Waveform::ContinuousWave;
  double frequency = 2.45e9;  // CW frequency or pulse center, Hz
  double bandwidth = 2.0e9;   // pulse: two-sided width where envelope >= 10%
  double amplitude = 1.0;     // volts (port) or A/m^2 (sheet)
  int sheet_k = 0;            // scene-relative k plane for the sheet source
};

enum class FaceBc { Pml, Pec, Pmc };

// Face order: x-, x+, y-, y+, z-, z+
using FaceBcs = std::array<FaceBc, 6>;

struct SimulationConfig {
  double spacing = 2e-3;
  double dt = 0.0;                 // 0 => courant_fraction * Courant limit
  double courant_fraction = 0.99;
  int pml_cells = 10;
  int margin_cells = 0;            // 0 => ceil(lambda0/4 / spacing)
  FaceBcs boundaries{FaceBc::Pml, FaceBc::Pml, FaceBc::Pml,
                     FaceBc::Pml, FaceBc::Pml, FaceBc::Pml};

  SourceSpec source;

  long max_steps = 200000;
  double convergence_tol = 1e-3;   // CW: relative energy change per period
  int extraction_periods = 2;      // CW: Fourier window after convergence
  int ramp_periods = 3;            // CW: source turn-on ramp
  double decay_tol = 1e-6;         // broadband: trailing/total port energy
  int decay_window = 1000;         // broadband: trailing window, steps

  // CPML: polynomial grading, sigma_max at the standard optimum.
  int pml_order = 3;
  double pml_sigma_scale = 1.0;    // multiplies 0.8*(m+1)/(eta0*spacing)
  double pml_kappa_max = 1.0;
  double pml_alpha_max = 0.0;

  int workers = 1;
  int check_interval = 100;        // instability scan period, steps
  bool compute_flux = true;
  int flux_inset_cells = 2;        // flux box inflation beyond the scene box

  double s11_f_min = 1.8e9, s11_f_max = 3.4e9;
  int s11_points = 321;

  double mesh_warn_cells_per_wavelength = 10.0;

  double resolved_dt() const {
    if (dt > 0.0) return dt;
    return courant_fraction * courant_dt(spacing);
  }

  // Largest dt <= courant_fraction*limit that fits an integer number of steps
  // into one period of f; keeps the CW extraction window period-exact.
  long steps_per_period(double f) const {
    const double period = 1.0 / f;
    const double cap = courant_fraction * courant_dt(spacing);
    return static_cast<long>(std::ceil(period / cap - 1e-12));
  }

  int margin_for(double f_low) const {
    if (margin_cells > 0) return margin_cells;
    const double lambda0 = kSpeedOfLight / f_low;
    return static_cast<int>(std::ceil(lambda0 / 4.0 / spacing));
  }
};

struct MeshDiagnostic {
  double lambda0_over_spacing = 0.0;
  double tissue_cells_per_wavelength = 0.0;
  std::string densest_tissue;
  bool in_paper_guidance = false;  // lambda0/spacing within [15, 20]
  bool warning = false;            // in-tissue sampling below threshold
  std::string message;
};

// Free-space and in-tissue sampling report at f_max. Warns (never fails)
// when the densest tissue is sampled below the configured cells/wavelength.
inline MeshDiagnostic check_mesh_guidance(const SimulationConfig& cfg, double f_max,
                                          const TissueTable& table) {
  MeshDiagnostic d;
  const double lambda0 = kSpeedOfLight / f_max;
  d.lambda0_over_spacing = lambda0 / cfg.spacing;
  d.in_paper_guidance =
      d.lambda0_over_spacing >= 15.0 && d.lambda0_over_spacing <= 20.0;

  double max_eps = 1.0;
  for (const auto& [id, e] : table.entries()) {
    if (id == kFreeSpaceId) continue;
    const DielectricSample s = table.lookup(id, f_max);
    if (s.eps_r > max_eps) {
      max_eps = s.eps_r;
      d.densest_tissue = e.name;
    }
  }
  const double lambda_tissue = kSpeedOfLight / (f_max * std::sqrt(max_eps));
  d.tissue_cells_per_wavelength = lambda_tissue / cfg.spacing;
  d.warning = d.tissue_cells_per_wavelength < cfg.mesh_warn_cells_per_wavelength;
  if (d.warning)
    d.message = "in-tissue sampling in " + d.densest_tissue + " is " +
                std::to_string(d.tissue_cells_per_wavelength) +
                " cells/wavelength at " + std::to_string(f_max / 1e9) + " GHz";
  return d;
}

}  // namespace rfdose
