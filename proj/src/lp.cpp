#include "tinopt/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace tinopt::lp {

namespace {

// Tableau layout: rows 0..m-1 are constraints, each holding the coefficients
// of all n+m+1 columns (original, slack, artificial) and the right-hand side
// in the last column. `basis[r]` is the basic column of row r.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b, std::size_t n)
      : rows_(b.size()), cols_(n + b.size() + 1), cells_(rows_ * (cols_ + 1)), basis_(rows_) {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (a[r].size() != n) throw std::invalid_argument("lp: row width does not match objective");
      for (std::size_t c = 0; c < n; ++c) cell(r, c) = a[r][c];
      cell(r, n + r) = 1;
      cell(r, cols_ - 1) = -1;  // artificial x0, used in phase one only
      rhs(r) = b[r];
      basis_[r] = n + r;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& cell(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return cells_[r * (cols_ + 1) + cols_]; }
  std::size_t artificial() const { return cols_ - 1; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t row, std::size_t col, std::vector<Rational>& objective, Rational& objective_value) {
    const Rational p = cell(row, col);
    for (std::size_t c = 0; c <= cols_; ++c) cells_[row * (cols_ + 1) + c] /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const Rational f = cell(r, col);
      if (f == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) cells_[r * (cols_ + 1) + c] -= f * cells_[row * (cols_ + 1) + c];
    }
    // objective row holds reduced costs z_c - c_c; value tracks current z.
    const Rational f = objective[col];
    if (f != 0) {
      for (std::size_t c = 0; c < cols_; ++c) objective[c] -= f * cell(row, c);
      objective_value -= f * rhs(row);
    }
    basis_[row] = col;
  }

  // Runs Bland's-rule simplex on the given reduced-cost row. Columns with
  // `blocked[c]` set never enter. Returns false when unbounded.
  bool optimize(std::vector<Rational>& objective, Rational& objective_value, const std::vector<bool>& blocked) {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_; ++c)
        if (!blocked[c] && objective[c] < 0) {
          entering = c;
          break;
        }
      if (entering == cols_) return true;

      std::size_t leaving = rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (cell(r, entering) <= 0) continue;
        Rational ratio = rhs(r) / cell(r, entering);
        if (leaving == rows_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering, objective, objective_value);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                const std::vector<Rational>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("lp: constraint and bound counts differ");
  const std::size_t n = c.size();
  Tableau t(a, b, n);
  const std::size_t m = t.rows();
  const std::size_t x0 = t.artificial();
  std::vector<bool> blocked(t.cols(), false);

  // Phase one: minimize x0, i.e. maximize -x0, starting from the most
  // violated row when the origin is infeasible.
  std::size_t worst = m;
  for (std::size_t r = 0; r < m; ++r)
    if (t.rhs(r) < 0 && (worst == m || t.rhs(r) < t.rhs(worst))) worst = r;

  if (worst != m) {
    std::vector<Rational> phase1(t.cols());
    Rational phase1_value = 0;
    phase1[x0] = 1;
    t.pivot(worst, x0, phase1, phase1_value);
    t.optimize(phase1, phase1_value, blocked);
    if (phase1_value < 0) return {};  // min x0 > 0

    // Drive x0 out of the basis if it is still there at level zero.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] != x0) continue;
      for (std::size_t col = 0; col < x0; ++col)
        if (t.cell(r, col) != 0) {
          t.pivot(r, col, phase1, phase1_value);
          break;
        }
    }
  }
  blocked[x0] = true;

  // Phase two on the original objective, expressed in the current basis.
  std::vector<Rational> objective(t.cols());
  Rational value = 0;
  for (std::size_t col = 0; col < n; ++col) objective[col] = -c[col];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t basic = t.basis()[r];
    const Rational f = objective[basic];
    if (f == 0) continue;
    for (std::size_t col = 0; col < t.cols(); ++col) objective[col] -= f * t.cell(r, col);
    value -= f * t.rhs(r);
  }
  if (!t.optimize(objective, value, blocked)) return {Status::unbounded, {}, {}};

  Result result{Status::optimal, value, std::vector<Rational>(n)};
  for (std::size_t r = 0; r < m; ++r)
    if (t.basis()[r] < n) result.x[t.basis()[r]] = t.rhs(r);
  return result;
}

}  // namespace tinopt::lp
