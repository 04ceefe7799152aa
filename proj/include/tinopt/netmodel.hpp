#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinopt/rational.hpp"

namespace tinopt {

// All indices in the C++ API are 0-based: users k, i, j in [0, K), states and
// message orders m in [0, M). Documents and human-readable output are 1-based.

/// Raised for malformed or out-of-range model data. `path()` names the
/// offending field, e.g. "pi[2][1]" (0-based, as in the document).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Raised when an exhaustive procedure would exceed its configured size cap.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense square matrix of rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size) * size) {}

  int size() const noexcept { return size_; }
  Rational& operator()(int row, int col) { return data_[index(row, col)]; }
  const Rational& operator()(int row, int col) const { return data_[index(row, col)]; }
  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row) * size_ + col; }
  int size_ = 0;
  std::vector<Rational> data_;
};

/// K-user, M-state interference network: channel strength exponents and the
/// per-state decoding thresholds.
class NetworkSpec {
 public:
  /// `alpha` is laid out state-major as alpha[m][k][i] (receiver row k,
  /// transmitter column i); `pi` as pi[k][m] holding values in [1, M].
  NetworkSpec(int users, int states, std::vector<Rational> alpha, std::vector<int> pi);

  int users() const noexcept { return users_; }
  int states() const noexcept { return states_; }

  /// Strength of the link from transmitter i to receiver k in state m.
  const Rational& alpha(int k, int i, int m) const { return alpha_[alpha_index(k, i, m)]; }
  /// Number of message orders receiver k decodes in state m (1..M).
  int pi(int k, int m) const { return pi_[static_cast<std::size_t>(k) * states_ + m]; }

  /// Largest threshold of receiver k over all states.
  int max_pi(int k) const;
  /// True when some state decodes order m (0-based) of user k.
  bool deliverable(int k, int m) const { return m < max_pi(k); }

  /// The K x K matrix of state m.
  RationalMatrix state_matrix(int m) const;

  /// Copy of this network with a different threshold assignment (pi[k][m]).
  NetworkSpec with_pi(std::vector<int> pi) const;

  const std::vector<Rational>& alpha_data() const noexcept { return alpha_; }
  const std::vector<int>& pi_data() const noexcept { return pi_; }

  bool operator==(const NetworkSpec&) const = default;

 private:
  std::size_t alpha_index(int k, int i, int m) const {
    return (static_cast<std::size_t>(m) * users_ + k) * users_ + i;
  }

  int users_;
  int states_;
  std::vector<Rational> alpha_;
  std::vector<int> pi_;
};

/// One GDoF coordinate d_k^{[m]}.
struct Variable {
  int user;
  int order;
  auto operator<=>(const Variable&) const = default;
};

/// Variables that some state decodes, ordered by message order then user
/// (d_1, d_2, ..., then the order-2 messages, ...).
std::vector<Variable> deliverable_variables(const NetworkSpec& spec);

/// Target or achieved GDoF d_k^{[m]} for every user and message order.
class GdofTuple {
 public:
  GdofTuple() = default;
  GdofTuple(int users, int orders) : users_(users), orders_(orders), values_(static_cast<std::size_t>(users) * orders) {}
  GdofTuple(int users, int orders, std::vector<Rational> values);

  static GdofTuple zeros(const NetworkSpec& spec) { return {spec.users(), spec.states()}; }
  /// Builds a tuple from values listed in deliverable_variables order.
  static GdofTuple from_variables(const NetworkSpec& spec, const std::vector<Rational>& values);

  int users() const noexcept { return users_; }
  int orders() const noexcept { return orders_; }
  Rational& at(int k, int m) { return values_[static_cast<std::size_t>(k) * orders_ + m]; }
  const Rational& at(int k, int m) const { return values_[static_cast<std::size_t>(k) * orders_ + m]; }

  /// Sum of d_k^{[1..count]}.
  Rational prefix_sum(int k, int count) const;

  const std::vector<Rational>& data() const noexcept { return values_; }
  bool operator==(const GdofTuple&) const = default;

 private:
  int users_ = 0;
  int orders_ = 0;
  std::vector<Rational> values_;
};

/// Throws ValidationError unless the tuple has the spec's dimensions, is
/// nonnegative, and is zero on undeliverable orders.
void validate_tuple(const NetworkSpec& spec, const GdofTuple& tuple);

/// Transmit power exponents r_k^{[m]} for m = 1..M plus the floor r_k^{[M+1]}.
class PowerAllocation {
 public:
  PowerAllocation() = default;
  PowerAllocation(int users, int orders)
      : users_(users), orders_(orders), values_(static_cast<std::size_t>(users) * (orders + 1)) {}

  int users() const noexcept { return users_; }
  int orders() const noexcept { return orders_; }
  /// Level m in [0, M]; level M is the auxiliary floor.
  Rational& at(int k, int m) { return values_[static_cast<std::size_t>(k) * (orders_ + 1) + m]; }
  const Rational& at(int k, int m) const { return values_[static_cast<std::size_t>(k) * (orders_ + 1) + m]; }
  const Rational& base(int k) const { return at(k, 0); }
  std::vector<Rational> bases() const {
    std::vector<Rational> out;
    for (int k = 0; k < users_; ++k) out.push_back(base(k));
    return out;
  }

  /// Builds the layered allocation r^{[m+1]} = r^{[m]} - d^{[m]} from base
  /// exponents r^{[1]}.
  static PowerAllocation layered(const std::vector<Rational>& base, const GdofTuple& tuple);

  /// 0 >= r^{[1]} >= r^{[2]} >= ... >= r^{[M+1]} for every user.
  bool is_ordered() const;

  bool operator==(const PowerAllocation&) const = default;

 private:
  int users_ = 0;
  int orders_ = 0;
  std::vector<Rational> values_;
};

/// Throws ValidationError unless dimensions match the spec and the ordering
/// invariant holds.
void validate_allocation(const NetworkSpec& spec, const PowerAllocation& alloc);

/// Receiver k sits in state states[k].
using MixedState = std::vector<int>;

/// Matrix whose row k is receiver k's row in its own state ms[k].
RationalMatrix mixed_state_alpha(const NetworkSpec& spec, const MixedState& ms);

/// Number of mixed states M^K, saturating at `limit + 1`.
std::size_t mixed_state_count(const NetworkSpec& spec, std::size_t limit);

/// Calls `visit(ms)` for every mixed state in lexicographic order.
template <typename Visitor>
void for_each_mixed_state(int users, int states, Visitor&& visit) {
  MixedState ms(static_cast<std::size_t>(users), 0);
  while (true) {
    visit(static_cast<const MixedState&>(ms));
    int pos = users - 1;
    while (pos >= 0 && ms[pos] == states - 1) ms[pos--] = 0;
    if (pos < 0) return;
    ++ms[pos];
  }
}

/// The 3-user, 2-state network used as the worked example throughout the
/// documentation, with thresholds pi_1 = (1,1), pi_2 = (2,1), pi_3 = (1,2).
NetworkSpec example_network();

}  // namespace tinopt
