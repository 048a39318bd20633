#pragma once

#include "covkit/adversarial.hpp"
#include "covkit/completion.hpp"
#include "covkit/oracle.hpp"
#include "covkit/rational.hpp"
#include "covkit/set_function.hpp"
#include "covkit/subset.hpp"
#include "covkit/wtransform.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covkit {

// All file formats are JSON with insertion-ordered keys, canonical "p/q"
// rational strings, and set arrays in ascending bit-pattern order, so a
// fixed input always serializes to identical bytes.
using Json = nlohmann::ordered_json;

inline Json rational_to_json(const BigRational& r) { return format_rational(r); }

inline BigRational rational_from_json(const Json& j, const char* context) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return BigRational(j.get<std::int64_t>());
  throw std::invalid_argument(std::string(context) +
                              ": expected a rational string like \"p/q\"");
}

inline Json set_to_json(const SubsetMask& s) {
  Json arr = Json::array();
  for (int e : s.elements()) arr.push_back(e);
  return arr;
}

inline SubsetMask set_from_json(const Json& j, int m, const char* context) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(context) + ": set must be an array");
  }
  std::uint32_t bits = 0;
  for (const auto& e : j) {
    if (!e.is_number_integer()) {
      throw std::invalid_argument(std::string(context) + ": set elements must be integers");
    }
    const auto v = e.get<std::int64_t>();
    if (v < 1 || v > m) {
      throw std::invalid_argument(std::string(context) + ": element " +
                                  std::to_string(v) + " outside ground set");
    }
    bits |= std::uint32_t{1} << (v - 1);
  }
  return SubsetMask(bits, m);
}

inline int ground_size_from_json(const Json& j, const char* context) {
  if (!j.contains("m") || !j.at("m").is_number_integer()) {
    throw std::invalid_argument(std::string(context) + ": missing integer field \"m\"");
  }
  const auto m = j.at("m").get<std::int64_t>();
  if (m < 0 || m > kMaxGroundSize) {
    throw std::invalid_argument(std::string(context) + ": ground size out of range");
  }
  return static_cast<int>(m);
}

// Instance file: {"m": int, "elements": [{"set": [...], "weight": "p/q"}]}.
inline Json instance_to_json(const CoverageInstance& inst) {
  Json j;
  j["m"] = inst.ground_size();
  Json elements = Json::array();
  for (const auto& el : inst.elements()) {
    Json e;
    e["set"] = set_to_json(el.membership);
    e["weight"] = rational_to_json(el.weight);
    elements.push_back(std::move(e));
  }
  j["elements"] = std::move(elements);
  return j;
}

inline CoverageInstance instance_from_json(const Json& j) {
  const int m = ground_size_from_json(j, "instance");
  if (!j.contains("elements") || !j.at("elements").is_array()) {
    throw std::invalid_argument("instance: missing array field \"elements\"");
  }
  std::vector<WeightedElement> elements;
  for (const auto& e : j.at("elements")) {
    if (!e.contains("set") || !e.contains("weight")) {
      throw std::invalid_argument("instance: element needs \"set\" and \"weight\"");
    }
    elements.push_back({set_from_json(e.at("set"), m, "instance"),
                        rational_from_json(e.at("weight"), "instance weight")});
  }
  return CoverageInstance::from_elements(m, elements);
}

// Table file: {"m": int, "values": [{"set": [...], "value": "p/q"}]},
// exactly one entry per subset including the empty set.
inline Json table_to_json(const DenseSetFunction& f) {
  Json j;
  j["m"] = f.ground_size();
  Json values = Json::array();
  for (std::uint32_t bits = 0; bits < table_size(f.ground_size()); ++bits) {
    Json e;
    e["set"] = set_to_json(SubsetMask(bits, f.ground_size()));
    e["value"] = rational_to_json(f.at_bits(bits));
    values.push_back(std::move(e));
  }
  j["values"] = std::move(values);
  return j;
}

inline DenseSetFunction table_from_json(const Json& j,
                                        int dense_limit = kDefaultDenseLimit) {
  const int m = ground_size_from_json(j, "table");
  check_dense_limit(m, dense_limit);
  if (!j.contains("values") || !j.at("values").is_array()) {
    throw std::invalid_argument("table: missing array field \"values\"");
  }
  std::vector<BigRational> values(table_size(m));
  std::vector<bool> seen(table_size(m), false);
  for (const auto& e : j.at("values")) {
    if (!e.contains("set") || !e.contains("value")) {
      throw std::invalid_argument("table: entry needs \"set\" and \"value\"");
    }
    const SubsetMask s = set_from_json(e.at("set"), m, "table");
    if (seen[s.bits()]) {
      throw std::invalid_argument("table: duplicate entry for " + s.to_string());
    }
    seen[s.bits()] = true;
    values[s.bits()] = rational_from_json(e.at("value"), "table value");
  }
  for (std::uint32_t bits = 0; bits < table_size(m); ++bits) {
    if (!seen[bits]) {
      throw std::invalid_argument("table: missing entry for " +
                                  SubsetMask(bits, m).to_string());
    }
  }
  return DenseSetFunction(m, std::move(values), dense_limit);
}

// Coefficient file: {"m": int, "coefficients": [{"set": [...], "value":
// "p/q"}]}, exactly one entry per nonempty subset.
inline Json coefficients_to_json(const WCoefficients& w) {
  Json j;
  j["m"] = w.ground_size();
  Json coeffs = Json::array();
  for (std::uint32_t bits = 1; bits < table_size(w.ground_size()); ++bits) {
    Json e;
    e["set"] = set_to_json(SubsetMask(bits, w.ground_size()));
    e["value"] = rational_to_json(w.at_bits(bits));
    coeffs.push_back(std::move(e));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline WCoefficients coefficients_from_json(const Json& j,
                                            int dense_limit = kDefaultDenseLimit) {
  const int m = ground_size_from_json(j, "coefficients");
  check_dense_limit(m, dense_limit);
  if (!j.contains("coefficients") || !j.at("coefficients").is_array()) {
    throw std::invalid_argument("coefficients: missing array field \"coefficients\"");
  }
  WCoefficients w(m, dense_limit);
  std::vector<bool> seen(table_size(m), false);
  for (const auto& e : j.at("coefficients")) {
    if (!e.contains("set") || !e.contains("value")) {
      throw std::invalid_argument("coefficients: entry needs \"set\" and \"value\"");
    }
    const SubsetMask s = set_from_json(e.at("set"), m, "coefficients");
    if (s.is_empty()) {
      throw std::invalid_argument("coefficients: the empty set carries no coefficient");
    }
    if (seen[s.bits()]) {
      throw std::invalid_argument("coefficients: duplicate entry for " + s.to_string());
    }
    seen[s.bits()] = true;
    w.set(s, rational_from_json(e.at("value"), "coefficient value"));
  }
  for (std::uint32_t bits = 1; bits < table_size(m); ++bits) {
    if (!seen[bits]) {
      throw std::invalid_argument("coefficients: missing entry for " +
                                  SubsetMask(bits, m).to_string());
    }
  }
  return w;
}

// Query log: {"m": int, "entries": [{"set": [...], "value": "p/q"}]}.
inline Json query_log_to_json(const QueryLog& log) {
  Json j;
  j["m"] = log.ground_size();
  Json entries = Json::array();
  for (const auto& [set, value] : log.entries()) {
    Json e;
    e["set"] = set_to_json(set);
    e["value"] = rational_to_json(value);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline QueryLog query_log_from_json(const Json& j) {
  const int m = ground_size_from_json(j, "query log");
  if (!j.contains("entries") || !j.at("entries").is_array()) {
    throw std::invalid_argument("query log: missing array field \"entries\"");
  }
  std::vector<std::pair<SubsetMask, BigRational>> entries;
  for (const auto& e : j.at("entries")) {
    if (!e.contains("set") || !e.contains("value")) {
      throw std::invalid_argument("query log: entry needs \"set\" and \"value\"");
    }
    entries.emplace_back(set_from_json(e.at("set"), m, "query log"),
                         rational_from_json(e.at("value"), "query log value"));
  }
  return QueryLog(m, std::move(entries));
}

// Witness: {"alpha": [{"set": [...], "value": "p/q"}]}, nonzero multipliers
// only, ascending bit pattern.
inline Json witness_to_json(const FarkasWitness& w) {
  Json j;
  j["alpha"] = Json::array();
  for (const auto& [bits, value] : w.alpha) {
    Json e;
    e["set"] = set_to_json(SubsetMask(bits, w.m));
    e["value"] = rational_to_json(value);
    j["alpha"].push_back(std::move(e));
  }
  return j;
}

inline FarkasWitness witness_from_json(const Json& j, int m) {
  if (!j.contains("alpha") || !j.at("alpha").is_array()) {
    throw std::invalid_argument("witness: missing array field \"alpha\"");
  }
  FarkasWitness w;
  w.m = m;
  for (const auto& e : j.at("alpha")) {
    if (!e.contains("set") || !e.contains("value")) {
      throw std::invalid_argument("witness: entry needs \"set\" and \"value\"");
    }
    const SubsetMask s = set_from_json(e.at("set"), m, "witness");
    w.alpha[s.bits()] = rational_from_json(e.at("value"), "witness value");
  }
  return w;
}

// Oracle spec: {"backend": "fstar", "m": M, "k": K, "N": "..."} for the
// closed-form adversarial family. Instance and table files are accepted
// directly as oracle specs too, recognized by their "elements" / "values"
// field, so generated files feed straight back into query commands.
inline Json adversarial_spec_to_json(const AdversarialParams& params) {
  Json j;
  j["backend"] = "fstar";
  j["m"] = params.m;
  j["k"] = params.k;
  j["N"] = rational_to_json(params.n);
  return j;
}

inline CountingOracle oracle_from_json(const Json& j,
                                       int dense_limit = kDefaultDenseLimit) {
  if (j.contains("backend")) {
    const std::string backend = j.at("backend").get<std::string>();
    if (backend == "fstar") {
      const int m = ground_size_from_json(j, "oracle spec");
      if (!j.contains("k") || !j.at("k").is_number_integer()) {
        throw std::invalid_argument("oracle spec: missing integer field \"k\"");
      }
      const int k = static_cast<int>(j.at("k").get<std::int64_t>());
      if (j.contains("N")) {
        return CountingOracle(AdversarialFunction(
            AdversarialParams(m, k, rational_from_json(j.at("N"), "oracle spec N"))));
      }
      return CountingOracle(AdversarialFunction(AdversarialParams(m, k)));
    }
    throw std::invalid_argument("oracle spec: unknown backend \"" + backend + "\"");
  }
  if (j.contains("elements")) return CountingOracle(instance_from_json(j));
  if (j.contains("values")) return CountingOracle(table_from_json(j, dense_limit));
  throw std::invalid_argument(
      "oracle spec: expected \"backend\", \"elements\", or \"values\"");
}

}  // namespace covkit
