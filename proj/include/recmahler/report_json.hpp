#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "recmahler/error.hpp"
#include "recmahler/functions.hpp"
#include "recmahler/identities.hpp"
#include "recmahler/probe.hpp"
#include "recmahler/recurrence.hpp"
#include "recmahler/transform.hpp"

namespace recmahler::report {

/// Insertion-ordered so that reports keep a fixed, readable key order.
using Json = nlohmann::ordered_json;

/// Bumped whenever a field changes meaning or disappears. docs/report-schema.md
inline constexpr const char* kSchema = "recmahler-report/1";
inline constexpr const char* kVersion = "0.1.0";

/// Reproducibility stamp carried by every report.
struct RunManifest {
  std::string subcommand;
  Json parameters = Json::object();
  std::string output;  // empty: stdout
};

Json to_json(const RunManifest& m);

// Every number that is not a small integer is written as a decimal string.
Json to_json(const ComplexBall& z);
Json to_json(const PAdic& x);
Json to_json(const PrecisionScalar& s);
Json to_json(const Clause& c);
Json to_json(const ConditionReport& r);
Json to_json(const OmegaConditionReport& r);
Json to_json(const IdentityCase& c);
Json to_json(const RelationCertificate& c);
Json to_json(const RankCheck& r);
Json to_json(const LinearRecurrence& rec);
Json to_json(const Error& e);

/// Coefficients (l, m) of the jet in row-major order, with the truncation
/// certificate. Wall time only when asked for, so reports stay reproducible.
Json to_json(const EvalResult& r, bool with_timing = false);

/// Top-level envelope: {"schema", "manifest", <body fields>...}.
Json envelope(const RunManifest& m, const Json& body);

/// Deterministic text: two-space indent and a trailing newline.
std::string dump(const Json& j);

/// {"c": [...], "init": [...]}; entries are integers or decimal strings.
LinearRecurrence recurrence_from_json(const Json& j);
/// "p/q", "-3" or a JSON integer.
Rat rat_from_json(const Json& j);
BigInt int_from_json(const Json& j);
/// Wraps nlohmann parse failures as ParseError.
Json parse(const std::string& text);

}  // namespace recmahler::report
