#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "cauchyenv/verify.hpp"

namespace cauchyenv::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Problem file:
///   {"m": 2, "a": [[re, im], ...], "w0": [[re, im], ...], "label": "...",
///    "metadata": {...}}
/// w0, label and metadata are optional.
struct Problem {
  CoeffVector a;
  std::optional<InitVector> w0;
  std::string label;
  json metadata;
};

/// Family file:
///   {"k": 1, "m": 2, "grid": 17, "domain": [[lo, hi], ...],
///    "coeffs": [[{"c": [re, im], "p": [e_1, ..., e_k]}, ...], ...]}
/// coeffs[i] lists the monomials of a_i(t). grid is optional.

Problem parse_problem(const json& j);
FamilySpec parse_family(const json& j);

/// Reads and parses a JSON file. Syntax errors are reported as
/// "path:line:column: message"; schema errors name the offending field.
/// Both throw Error(InvalidInput).
json read_json_file(const std::string& path);

/// Plain number inside the double range, decimal string beyond it.
json to_json(Wide x);
json to_json(Complex z);
json to_json(const CVector& v);
json to_json(const Problem& p);
json to_json(const RootSet& R);
json to_json(const ModalSolution& S);
json to_json(const StabilityVerdict& v);
json to_json(const HurwitzResult& h);
json to_json(const ReducedProblem& rp);
json to_json(const Envelope& env);
json to_json(const EnvelopeReport& r);
json to_json(const SupResult& s);
json to_json(const DecayCertificate& c);
json to_json(const FamilyCheckReport& r);
json to_json(const InvariantResult& r);
json to_json(const SuiteConfig& cfg);
/// Machine report; wall time is deliberately left out so that equal configs
/// give byte-identical output.
json to_json(const SuiteReport& r, const SuiteConfig& cfg);

Complex complex_from_json(const json& j, const std::string& where);
CVector cvector_from_json(const json& j, const std::string& where);

/// Wraps a payload with schema_version and command fields.
json report_document(const std::string& command, json payload);

}  // namespace cauchyenv::io
