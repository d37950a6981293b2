#pragma once

#include <vector>

namespace xsect::lp {

enum class Status { Optimal, Unbounded, IterationLimit };

struct Result {
  Status status = Status::IterationLimit;
  double value = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so that the
/// origin is feasible. Dense tableau simplex with Bland's rule; meant for
/// the handful of variables a Chebyshev-center problem needs.
Result maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c, int max_iterations = 10000);

}  // namespace xsect::lp
