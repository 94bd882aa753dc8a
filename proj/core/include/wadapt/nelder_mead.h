#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wadapt {

struct SimplexConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  /// 0 means 200 * dimension.
  int max_evals = 0;
  double f_tolerance = 1e-8;
  double x_tolerance = 1e-6;
  /// Offset of the initial simplex vertices along each coordinate.
  double initial_step = 0.1;

  void validate() const;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex minimization. The returned point is never worse than
/// x0. Throws std::domain_error if the objective returns a non-finite value.
MinimizeResult minimize(const Objective &f, std::vector<double> x0, const SimplexConfig &cfg = {});

} // namespace wadapt
