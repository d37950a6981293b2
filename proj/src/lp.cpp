#include "xsect/lp.hpp"

#include <cmath>
#include <limits>

#include "xsect/errors.hpp"

namespace xsect::lp {

Result maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c, int max_iterations) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != n) throw LpError("constraint row has wrong width");
    if (b[i] < 0.0) throw LpError("right-hand side must be non-negative");
  }

  // Tableau rows 0..m-1 are constraints, row m is the objective (reduced costs).
  const int width = n + m + 1;
  std::vector<double> tab(static_cast<std::size_t>((m + 1) * width), 0.0);
  auto at = [&](int r, int col) -> double& { return tab[static_cast<std::size_t>(r * width + col)]; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = A[i][j];
    at(i, n + i) = 1.0;
    at(i, width - 1) = b[i];
  }
  for (int j = 0; j < n; ++j) at(m, j) = -c[j];

  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  constexpr double kEps = 1e-12;
  Result res;
  for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (at(m, j) < -kEps) {
        enter = j;
        break;
      }
    if (enter < 0) {
      res.status = Status::Optimal;
      break;
    }
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a > kEps) {
        const double ratio = at(i, width - 1) / a;
        if (ratio < best - kEps || (std::abs(ratio - best) <= kEps && leave >= 0 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      res.status = Status::Unbounded;
      return res;
    }
    const double piv = at(leave, enter);
    for (int col = 0; col < width; ++col) at(leave, col) /= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int col = 0; col < width; ++col) at(r, col) -= f * at(leave, col);
    }
    basis[leave] = enter;
  }
  if (res.status != Status::Optimal) return res;

  res.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = at(i, width - 1);
  res.value = at(m, width - 1);
  return res;
}

}  // namespace xsect::lp
