#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "tinopt/netmodel.hpp"

namespace tinopt {

using Json = nlohmann::ordered_json;

/// Reads a numeric field written as a decimal string, an integer, or a JSON
/// float (taken through its shortest round-trip decimal form).
Rational rational_from_json(const Json& value, const std::string& path);
Json rational_to_json(const Rational& value);

/// Network document:
///   { "users": K, "states": M,
///     "alpha": [ state ][ receiver ][ transmitter ],
///     "pi":    [ receiver ][ state ] }
NetworkSpec spec_from_json(const Json& doc);
Json spec_to_json(const NetworkSpec& spec);

/// Parses and validates a network document. Errors carry the index path of
/// the offending field.
NetworkSpec parse_spec(std::string_view text);
std::string serialize_spec(const NetworkSpec& spec);

/// Tuple document: { "d": [ user ][ order ] } with M orders per user.
GdofTuple tuple_from_json(const Json& doc);
Json tuple_to_json(const GdofTuple& tuple);

/// Allocation document: { "r": [ user ][ level ] } with M + 1 levels per
/// user, the last being the floor r^{[M+1]}.
PowerAllocation allocation_from_json(const Json& doc);
Json allocation_to_json(const PowerAllocation& alloc);

/// Thresholds as [ receiver ][ state ].
Json pi_to_json(const NetworkSpec& spec);

}  // namespace tinopt
