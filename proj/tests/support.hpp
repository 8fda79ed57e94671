#pragma once

#include "fracres/fracops.hpp"
#include "fracres/linops.hpp"

#include <cmath>
#include <random>

namespace fracres::test {

inline const double kSqrtPi = std::sqrt(M_PI);

/// Random rows x cols matrix of the given rank (rank <= min(rows, cols)).
inline Mat random_rank_matrix(std::mt19937_64& rng, int rows, int cols, int rank) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat u(rows, rank), v(rank, cols);
  for (int i = 0; i < u.size(); ++i) u.data()[i] = g(rng);
  for (int i = 0; i < v.size(); ++i) v.data()[i] = g(rng);
  return u * v;
}

inline GridFn scalar_grid(int n, double (*f)(double)) {
  return GridFn::sample(n, 1, [f](double t) { return Vec::Constant(1, f(t)); });
}

/// Largest |a - b| over nodes lo..hi of the first component.
inline double max_diff(const GridFn& a, const GridFn& b, int lo, int hi) {
  double m = 0.0;
  for (int j = lo; j <= hi; ++j) m = std::max(m, std::abs(a.values()(j, 0) - b.values()(j, 0)));
  return m;
}

}  // namespace fracres::test
