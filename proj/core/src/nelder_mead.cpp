#include "wadapt/nelder_mead.h"

#include "wadapt/errors.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wadapt {

void SimplexConfig::validate() const {
  if (!(reflection > 0.0) || !(expansion > 1.0) || !(contraction > 0.0 && contraction < 1.0) ||
      !(shrink > 0.0 && shrink < 1.0))
    throw ParameterError("simplex: need reflection > 0, expansion > 1 > contraction > 0, 0 < shrink < 1");
  if (max_evals < 0 || initial_step == 0.0 || f_tolerance < 0.0 || x_tolerance < 0.0)
    throw ParameterError("simplex: invalid tolerance, budget or step");
}

MinimizeResult minimize(const Objective &f, std::vector<double> x0, const SimplexConfig &cfg) {
  cfg.validate();
  const std::size_t m = x0.size();
  if (m == 0)
    throw ParameterError("minimize: empty parameter vector");
  const int budget = cfg.max_evals > 0 ? cfg.max_evals : 200 * static_cast<int>(m);

  int evals = 0;
  auto eval = [&](const std::vector<double> &x) {
    ++evals;
    const double v = f(x);
    if (!std::isfinite(v))
      throw std::domain_error("minimize: objective returned a non-finite value after " +
                              std::to_string(evals) + " evaluations");
    return v;
  };

  std::vector<std::vector<double>> simplex(m + 1, x0);
  std::vector<double> fv(m + 1);
  fv[0] = eval(x0);
  for (std::size_t i = 0; i < m; ++i) {
    simplex[i + 1][i] += cfg.initial_step;
    fv[i + 1] = eval(simplex[i + 1]);
  }

  std::vector<std::size_t> order(m + 1);
  std::vector<double> centroid(m), xr(m), xe(m), xc(m);
  auto point = [&](double t, const std::vector<double> &towards, std::vector<double> &out) {
    // centroid + t * (centroid - towards)
    for (std::size_t i = 0; i < m; ++i)
      out[i] = centroid[i] + t * (centroid[i] - towards[i]);
  };

  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    // stable: earlier vertices win ties, keeping the run deterministic
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> s2(m + 1);
      std::vector<double> f2(m + 1);
      for (std::size_t i = 0; i <= m; ++i) {
        s2[i] = std::move(simplex[order[i]]);
        f2[i] = fv[order[i]];
      }
      simplex = std::move(s2);
      fv = std::move(f2);
    }

    double xspread = 0.0;
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        xspread = std::max(xspread, std::abs(simplex[i][k] - simplex[0][k]));
    if (fv[m] - fv[0] <= cfg.f_tolerance && xspread <= cfg.x_tolerance) {
      converged = true;
      break;
    }
    if (evals >= budget)
      break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        centroid[k] += simplex[i][k] / static_cast<double>(m);

    point(cfg.reflection, simplex[m], xr);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      point(cfg.reflection * cfg.expansion, simplex[m], xe);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[m] = xe;
        fv[m] = fe;
      } else {
        simplex[m] = xr;
        fv[m] = fr;
      }
      continue;
    }
    if (fr < fv[m - 1]) {
      simplex[m] = xr;
      fv[m] = fr;
      continue;
    }
    if (fr < fv[m]) {
      point(cfg.reflection * cfg.contraction, simplex[m], xc); // outside
      const double fc = eval(xc);
      if (fc <= fr) {
        simplex[m] = xc;
        fv[m] = fc;
        continue;
      }
    } else {
      point(-cfg.contraction, simplex[m], xc); // inside
      const double fc = eval(xc);
      if (fc < fv[m]) {
        simplex[m] = xc;
        fv[m] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t k = 0; k < m; ++k)
        simplex[i][k] = simplex[0][k] + cfg.shrink * (simplex[i][k] - simplex[0][k]);
      fv[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {simplex[best], fv[best], evals, converged};
}

} // namespace wadapt
