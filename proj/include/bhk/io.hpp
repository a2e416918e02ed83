#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bhk/monomial.hpp"
#include "bhk/obstruction.hpp"
#include "bhk/waldhausen.hpp"

namespace bhk::io {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "bhk-report";
inline constexpr const char* kSchemaVersion = "1.0";

/// Input that does not match its schema; `where` is a JSON path like "differentials.1[2]".
struct SchemaError : std::runtime_error {
  SchemaError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), location(where) {}
  std::string location;
};

json read_file(const std::string& path);

json rational(const Rational& q);
Rational rational(const json& j, const std::string& where);
/// Decimal string, or "2^k".
Integer integer(const json& j, const std::string& where);
Integer parse_integer(const std::string& text, const std::string& where);

json encode(const BoundingFunction& f);
BoundingFunction decode_function(const json& j, const std::string& where);

/// {"kind": "Zn"|"free", "rank": n, "weights": [...]} or
/// {"kind": "presentation", "generators": [...], "weights": [...], "relators": ["a b a^-1"]}.
json encode(const GroupModel& g);
GroupPtr decode_group(const json& j, const std::string& where);

/// {"schema": "bhk-complex", "group": optional, "degrees": {"n": {"basis": [...], "weights": [...]}},
///  "differentials": {"n": [[coeff, row, col] or [coeff, row, col, element], ...]}}.
/// Rows index the basis of degree n - 1, columns that of degree n. d^2 and
/// index errors raise SchemaError.
ChainComplex decode_complex(const json& j, const std::string& where = "complex");
json encode(const ChainComplex& c);

/// {"perm": [2, 1], "labels": [["+", "a"], ["-", "e"]]}, perm 1-based.
json encode(const MonomialMatrix& m, const GroupModel& g);
MonomialMatrix decode_monomial(const json& j, const GroupModel& g, const std::string& where);

/// {"basis": [...], "weights": [...]} over the group of `oracle`.
MonomialObject decode_object(const json& j, const OraclePtr& oracle, const std::string& where);
json encode(const MonomialObject& m);

json encode(const IdentityFailure& f);
json encode(const EquivalenceReport& r);
json encode(const AxiomSuiteReport& r);
json encode(const MarginRow& r);
json encode(const InverseSearchResult& r);
json encode(const TwoTermReport& r);

/// Schema header plus command, config and result; exit code and verdict.
json report(const std::string& command, const json& config, const json& result, Verdict verdict);
/// Stable text form: two-space indentation, sorted keys, trailing newline.
std::string dump(const json& j);

}  // namespace bhk::io
