#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tinopt/netmodel.hpp"
#include "tinopt/potential.hpp"
#include "tinopt/region.hpp"

namespace tinopt {

/// GDoF achieved by layered superposition and opportunistic TIN:
///   d_k^{[m]} = max{0, min{ r_k^{[m]} - r_k^{[m+1]},
///                 min_{m': pi_k(m') >= m} alpha_kk^{[m']} + r_k^{[m]}
///                   - max{0, max_{i != k} alpha_ki^{[m']} + r_i^{[1]}} }}
/// and 0 for orders no state decodes.
GdofTuple achieved_gdof(const NetworkSpec& spec, const PowerAllocation& alloc);

struct StateSinr {
  int state;
  double sinr;
};

struct RateEntry {
  int user;
  int order;
  std::vector<StateSinr> sinr;  // states decoding this order
  double rate;                  // nats per channel use
  double normalized;            // rate / ln P
};

struct RateReport {
  double power;
  std::vector<RateEntry> entries;  // deliverable variables, order-major
};

/// Finite-P SINR and rates. Layer m of user k transmits at
/// c_k P^{r_k^{[m]}} with c_k = min(1, 1 / sum_m P^{r_k^{[m]}}), so every
/// user meets the unit sum-power constraint exactly. Orders no state decodes
/// carry no message and are silent.
std::vector<RateReport> finite_p_report(const NetworkSpec& spec, const PowerAllocation& alloc,
                                        std::span<const double> powers);

struct ScanRecord {
  GdofTuple tuple;
  bool member;
  bool feasible;
};

struct ScanResult {
  std::size_t grid_size = 0;   // points in the full grid (saturating)
  std::size_t scanned = 0;
  std::size_t members = 0;
  std::vector<ScanRecord> disagreements;
  std::vector<std::string> certificate_failures;
};

struct ScanOptions {
  Rational step = Rational(1, 2);
  std::size_t cap = 100'000;
  /// When set and the grid exceeds the cap, scan `cap` grid points drawn
  /// uniformly with this seed instead of the lexicographic prefix.
  std::optional<std::uint64_t> seed;
};

/// Compares region membership against potential-graph feasibility on a grid
/// over [0, alpha_max] per deliverable variable, and checks every
/// certificate the feasibility side produces.
ScanResult oracle_membership_scan(const NetworkSpec& spec, const ScanOptions& options = {});

/// Same scan against a precomputed inequality list.
ScanResult oracle_membership_scan(const NetworkSpec& spec, const std::vector<Inequality>& region,
                                  const ScanOptions& options);

}  // namespace tinopt
