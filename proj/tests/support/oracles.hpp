// Test-only independent oracles: brute-force routes kept deliberately
// separate from the library implementations they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dgmp/measurement.hpp"
#include "dgmp/types.hpp"

namespace dgmp::test {

// Quadruple-loop Kronecker product, no library calls.
inline CMat kron_bruteforce(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index c = 0; c < b.cols(); ++c)
          out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
  return out;
}

// Column-major stacking without Eigen::Map.
inline CVec vect_bruteforce(const CMat& x) {
  CVec v(x.size());
  Eigen::Index n = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) v(n++) = x(i, j);
  return v;
}

// Exhaustive normalized joint-correlation scan over every column of the
// materialized measurement matrices; returns the winning column index.
// Independent of the estimators' factored correlation path.
inline int exhaustive_correlation_argmax(const MeasurementSet& meas,
                                         const std::vector<CVec>& residues) {
  const int n_cols = meas.dims.cols();
  std::vector<double> score(n_cols, 0.0);
  for (int p = 1; p <= meas.dims.n_subcarriers; ++p) {
    const CMat psi = meas.psi_bar(p);
    for (int j = 0; j < n_cols; ++j) {
      const double nj = psi.col(j).norm();
      if (nj == 0.0) continue;
      const cxd c = (psi.col(j) / nj).adjoint() * residues[p - 1];
      score[j] += std::norm(c);
    }
  }
  return static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
}

// Two-sided Kolmogorov-Smirnov statistic against U[0, hi).
inline double ks_statistic_uniform(std::vector<double> samples, double hi) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = samples[i] / hi;
    d = std::max(d, std::abs((i + 1) / n - cdf));
    d = std::max(d, std::abs(cdf - i / n));
  }
  return d;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / n;
  double v = 0.0;
  for (double x : xs) v += (x - mean) * (x - mean);
  return {mean, xs.size() > 1 ? std::sqrt(v / (n - 1) / n) : 0.0};
}

} // namespace dgmp::test
