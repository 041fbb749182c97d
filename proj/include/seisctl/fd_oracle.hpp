#pragma once

#include <vector>

#include <Eigen/Dense>

#include "seisctl/heterogeneity.hpp"
#include "seisctl/scenario.hpp"
#include "seisctl/simulation.hpp"

namespace seisctl {

struct FdOptions {
  int cells = 128;          // per axis
  double dt = 0.0;          // hr; 0 picks 0.9 of the explicit stability limit
  std::vector<double> output_times;  // hr
  Eigen::VectorXd control_fluxes;    // constant m^3/hr at the control wells; empty = zero
};

struct FdResult {
  std::vector<double> times;
  Eigen::MatrixXd region_means;  // one row per output time, one column per region, MPa
  Eigen::MatrixXd final_field;   // cells x cells at the last output, row j = y-index
  double dt = 0.0;
  long long steps = 0;
};

/**
 * @brief Cell-centred finite-volume reference for u_t = div(c_hy(x) grad u) + sources.
 *
 * Diffusivity is sampled at face midpoints and the Dirichlet boundary is
 * imposed through mirrored ghost cells. Each point source is spread
 * bilinearly over the four nearest cell centres and carries
 * 1 / (beta(x_w) h^2 D_z). Time stepping is explicit Euler; a step above the
 * stability limit is rejected and a blow-up aborts with std::runtime_error.
 *
 * Fixed wells inject the configured fixed fluxes; the controller is not
 * simulated, control wells take `options.control_fluxes`.
 */
FdResult fd_reference_solve(const ScenarioConfig& cfg, const FdOptions& options);

/// Same, with an explicit heterogeneity field (nullptr = homogeneous).
FdResult fd_reference_solve(const ScenarioConfig& cfg, const HeterogeneityField* field, const FdOptions& options);

/// Region-mean pressure of the Galerkin model against the finite-difference
/// reference under the same open-loop forcing (controller off, fixed wells on).
struct OracleReport {
  std::vector<double> times;
  Eigen::MatrixXd galerkin;  // rows = times, cols = regions, MPa
  Eigen::MatrixXd reference;
  Eigen::VectorXd relative_l2;  // per region, ||g - f||_2 / ||f||_2 over time
  double dt = 0.0;
  long long steps = 0;

  double worst() const { return relative_l2.size() ? relative_l2.maxCoeff() : 0.0; }
};

/// Controller and demand are switched off; the horizon is cfg.output.horizon
/// sampled at cfg.output.cadence.
OracleReport oracle_compare(const ScenarioConfig& cfg, int cells);

}  // namespace seisctl
