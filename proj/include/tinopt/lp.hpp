#pragma once

#include <vector>

#include "tinopt/rational.hpp"

namespace tinopt::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rational value;              // objective at the optimum (optimal only)
  std::vector<Rational> x;     // optimal point (optimal only)
};

/// maximize c'x  subject to  A x <= b,  x >= 0, in exact arithmetic.
/// Dense two-phase tableau simplex with Bland's rule, so it terminates on
/// degenerate problems. `a` is row-major with b.size() rows of c.size()
/// columns.
Result maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                const std::vector<Rational>& c);

}  // namespace tinopt::lp
