#include "tinopt/io.hpp"

namespace tinopt {

namespace {

std::string at(const std::string& path, std::size_t n) { return path + "[" + std::to_string(n) + "]"; }

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object()) throw ValidationError("", "document must be a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ValidationError(key, "missing field");
  return *it;
}

const Json& require_array(const Json& value, const std::string& path, std::size_t size) {
  if (!value.is_array()) throw ValidationError(path, "expected an array");
  if (value.size() != size)
    throw ValidationError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(value.size()));
  return value;
}

int int_from_json(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_string()) {
    try {
      Rational r = parse_rational(value.get<std::string>());
      if (denominator(r) == 1) return static_cast<int>(numerator(r));
    } catch (const std::invalid_argument&) {
    }
  }
  throw ValidationError(path, "expected an integer");
}

// Matrix of rationals with a fixed number of rows, each row of `cols`
// entries; `cols == 0` infers the width from the first row.
std::vector<Rational> rational_rows(const Json& value, const std::string& path, std::size_t& cols) {
  if (!value.is_array()) throw ValidationError(path, "expected an array");
  std::vector<Rational> out;
  for (std::size_t row = 0; row < value.size(); ++row) {
    const auto& r = value[row];
    if (!r.is_array()) throw ValidationError(at(path, row), "expected an array");
    if (cols == 0) cols = r.size();
    require_array(r, at(path, row), cols);
    for (std::size_t c = 0; c < cols; ++c) out.push_back(rational_from_json(r[c], at(at(path, row), c)));
  }
  return out;
}

}  // namespace

Rational rational_from_json(const Json& value, const std::string& path) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number_float()) return parse_rational(format_double(value.get<double>()));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(path, e.what());
  }
  throw ValidationError(path, "expected a decimal string or number");
}

Json rational_to_json(const Rational& value) { return format_rational(value); }

NetworkSpec spec_from_json(const Json& doc) {
  const int users = int_from_json(require(doc, "users"), "users");
  const int states = int_from_json(require(doc, "states"), "states");
  if (users < 1) throw ValidationError("users", "must be at least 1");
  if (states < 1) throw ValidationError("states", "must be at least 1");
  const auto k_count = static_cast<std::size_t>(users);
  const auto m_count = static_cast<std::size_t>(states);

  const Json& alpha_doc = require_array(require(doc, "alpha"), "alpha", m_count);
  std::vector<Rational> alpha;
  alpha.reserve(m_count * k_count * k_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const std::string path = at("alpha", m);
    require_array(alpha_doc[m], path, k_count);
    std::size_t cols = k_count;
    auto rows = rational_rows(alpha_doc[m], path, cols);
    alpha.insert(alpha.end(), rows.begin(), rows.end());
  }

  const Json& pi_doc = require_array(require(doc, "pi"), "pi", k_count);
  std::vector<int> pi;
  for (std::size_t k = 0; k < k_count; ++k) {
    require_array(pi_doc[k], at("pi", k), m_count);
    for (std::size_t m = 0; m < m_count; ++m) pi.push_back(int_from_json(pi_doc[k][m], at(at("pi", k), m)));
  }
  return NetworkSpec(users, states, std::move(alpha), std::move(pi));
}

Json spec_to_json(const NetworkSpec& spec) {
  Json alpha = Json::array();
  for (int m = 0; m < spec.states(); ++m) {
    Json state = Json::array();
    for (int k = 0; k < spec.users(); ++k) {
      Json row = Json::array();
      for (int i = 0; i < spec.users(); ++i) row.push_back(rational_to_json(spec.alpha(k, i, m)));
      state.push_back(std::move(row));
    }
    alpha.push_back(std::move(state));
  }
  Json doc;
  doc["users"] = spec.users();
  doc["states"] = spec.states();
  doc["alpha"] = std::move(alpha);
  doc["pi"] = pi_to_json(spec);
  return doc;
}

Json pi_to_json(const NetworkSpec& spec) {
  Json pi = Json::array();
  for (int k = 0; k < spec.users(); ++k) {
    Json row = Json::array();
    for (int m = 0; m < spec.states(); ++m) row.push_back(spec.pi(k, m));
    pi.push_back(std::move(row));
  }
  return pi;
}

NetworkSpec parse_spec(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("", std::string("malformed document: ") + e.what());
  }
  return spec_from_json(doc);
}

std::string serialize_spec(const NetworkSpec& spec) { return spec_to_json(spec).dump(2); }

GdofTuple tuple_from_json(const Json& doc) {
  const Json& d = require(doc, "d");
  if (!d.is_array() || d.empty()) throw ValidationError("d", "expected a non-empty array of rows");
  std::size_t cols = 0;
  auto values = rational_rows(d, "d", cols);
  return GdofTuple(static_cast<int>(d.size()), static_cast<int>(cols), std::move(values));
}

Json tuple_to_json(const GdofTuple& tuple) {
  Json rows = Json::array();
  for (int k = 0; k < tuple.users(); ++k) {
    Json row = Json::array();
    for (int m = 0; m < tuple.orders(); ++m) row.push_back(rational_to_json(tuple.at(k, m)));
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["d"] = std::move(rows);
  return doc;
}

PowerAllocation allocation_from_json(const Json& doc) {
  const Json& r = require(doc, "r");
  if (!r.is_array() || r.empty()) throw ValidationError("r", "expected a non-empty array of rows");
  std::size_t cols = 0;
  auto values = rational_rows(r, "r", cols);
  if (cols < 2) throw ValidationError("r", "each row needs M + 1 >= 2 levels");
  PowerAllocation alloc(static_cast<int>(r.size()), static_cast<int>(cols) - 1);
  std::size_t n = 0;
  for (int k = 0; k < alloc.users(); ++k)
    for (int m = 0; m <= alloc.orders(); ++m) alloc.at(k, m) = values[n++];
  return alloc;
}

Json allocation_to_json(const PowerAllocation& alloc) {
  Json rows = Json::array();
  for (int k = 0; k < alloc.users(); ++k) {
    Json row = Json::array();
    for (int m = 0; m <= alloc.orders(); ++m) row.push_back(rational_to_json(alloc.at(k, m)));
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["r"] = std::move(rows);
  return doc;
}

}  // namespace tinopt
