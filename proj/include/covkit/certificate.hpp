#pragma once

#include "covkit/oracle.hpp"
#include "covkit/rational.hpp"
#include "covkit/subset.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace covkit {

// A checkable refutation of coverage: the full query transcript behind one
// negative coefficient. Anyone holding the certificate can recompute the
// alternating sum from the recorded values; no further oracle access needed.
struct NonCoverageCertificate {
  SubsetMask set;           // the S whose coefficient is negative
  BigRational coefficient;  // strictly negative
  // (T, f(T)) for every T with S union T = [m], ascending by bit pattern.
  std::vector<std::pair<SubsetMask, BigRational>> entries;
};

struct CertificateProbe {
  SubsetMask set;
  BigRational coefficient;
  // Present exactly when the coefficient is negative.
  std::optional<NonCoverageCertificate> certificate;

  bool negative() const { return certificate.has_value(); }
};

// Queries exactly the 2^|S| sets completing S to the ground set and returns
// the certificate if their alternating sum is negative. A non-negative sum
// is reported back with the probed value, it refutes nothing.
inline CertificateProbe extract_certificate(const CountingOracle& oracle,
                                            const SubsetMask& s) {
  if (s.ground_size() != oracle.ground_size()) {
    throw std::invalid_argument("extract_certificate: ground size mismatch");
  }
  if (s.is_empty()) {
    throw std::invalid_argument("extract_certificate: the empty set carries no coefficient");
  }
  const SubsetMask comp = s.complement();
  std::vector<std::pair<SubsetMask, BigRational>> entries;
  entries.reserve(std::size_t{1} << s.count());
  BigRational acc;
  for_each_subset(s, [&](const SubsetMask& x) {
    SubsetMask t = comp.set_union(x);
    BigRational value = oracle.eval(t);
    if (x.count() % 2 == 1) {
      acc += value;
    } else {
      acc -= value;
    }
    entries.emplace_back(t, std::move(value));
  });
  CertificateProbe probe{s, acc, std::nullopt};
  if (acc.sign() < 0) {
    probe.certificate = NonCoverageCertificate{s, std::move(acc), std::move(entries)};
  }
  return probe;
}

// True iff the entries cover exactly the completion family of S, the
// recorded alternating sum matches, and the coefficient is negative.
inline bool verify_certificate(const NonCoverageCertificate& cert) {
  const SubsetMask& s = cert.set;
  if (s.is_empty()) return false;
  if (cert.coefficient.sign() >= 0) return false;
  const std::size_t expected = std::size_t{1} << s.count();
  if (cert.entries.size() != expected) return false;

  const std::uint32_t full = SubsetMask::full_set(s.ground_size()).bits();
  std::set<std::uint32_t> seen;
  BigRational acc;
  for (const auto& [t, value] : cert.entries) {
    if (t.ground_size() != s.ground_size()) return false;
    if ((s.bits() | t.bits()) != full) return false;
    if (!seen.insert(t.bits()).second) return false;  // duplicate entry
    const int overlap = std::popcount(s.bits() & t.bits());
    if (overlap % 2 == 1) {
      acc += value;
    } else {
      acc -= value;
    }
  }
  return acc == cert.coefficient;
}

}  // namespace covkit
