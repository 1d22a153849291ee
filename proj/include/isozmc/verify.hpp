#pragma once

#include <string>
#include <vector>

#include "isozmc/diffgeo.hpp"

// The invariant suite: every identity the catalog surfaces must satisfy,
// evaluated over a grid and aggregated into a report of named residuals.

namespace isozmc {

struct GridSpec {
  double u_min = -1.0, u_max = 1.0;
  double v_min = -1.0, v_max = 1.0;
  int n_u = 41, n_v = 41;

  void validate() const;
  double u_at(int i) const { return u_min + (u_max - u_min) * i / (n_u - 1.0); }
  double v_at(int j) const { return v_min + (v_max - v_min) * j / (n_v - 1.0); }
};

/// Pole-free default evaluation window per family.
GridSpec default_grid(FamilyTag tag);

struct Tolerances {
  double mean_curvature_analytic = 1e-8;
  double mean_curvature_fd = 1e-5;
  double hopf = 1e-8;
  double conformality = 1e-8;
  double metric_match = 1e-8;
  double hopf_constancy = 1e-10;
  double gauss_weingarten = 1e-6;
  double ode = 1e-10;
  double pde = 1e-8;
  double planarity = 1e-8;
  double axial = 1e-6;
  double affine_mean = 1e-4;
  double affine_lt_nt = 1e-8;
  double affine_metric = 1e-8;
  double affine_solve = 1e-5;
  double fd_match_factor = 10.0;  // tolerance = factor * step^2
  double path_independence = 1e-10;
  double gauss_map = 1e-12;
  double degenerate_floor = 1e-12;
  double max_excluded_fraction = 0.02;

  void validate() const;
};

struct NumericsConfig {
  QuadratureConfig quad;
  double fd_step_jet = 1e-3;
  // The affine normal is analytic here, so differencing it tolerates a much
  // smaller step than a sampled-surface third derivative would.
  double fd_step_affine = 1e-3;
  unsigned long long seed = 20240817ull;
};

struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int excluded_points = 0;
};

struct VerificationReport {
  std::string family_name;
  bool conjugated = false;
  std::vector<CheckRecord> checks;
  int grid_points = 0;
  int excluded_total = 0;
  std::vector<std::array<int, 2>> excluded_indices;  // (i, j) of degenerate samples
  bool overall_pass = true;

  const CheckRecord* find(const std::string& name) const;
};

VerificationReport run_invariant_suite(const WeierstrassFamily& f,
                                       const ConformalFactorModel& m, const GridSpec& grid,
                                       const Tolerances& tol, const NumericsConfig& num = {});

/// Worker cap honoring ISO_ZMC_THREADS; always >= 1.
int worker_count();

/// Deterministic result layout regardless of scheduling.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace isozmc
