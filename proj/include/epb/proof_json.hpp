#pragma once

// JSON documents for the proof artifacts (table, enumeration, reports,
// identity check).

#include <cstdint>
#include <optional>

#include "epb/json_io.hpp"
#include "epb/proof.hpp"

namespace epb {

// {"a": .., "b": .., "d": .., "exact": "(2 + sqrt(2))/8", "decimal": "0.4267766953"}
Json qsqrt2_to_json(const QSqrt2& x);
Json poly_to_json(const QuadPoly& poly, const std::string& var);

// With `p`, every product-event probability is also evaluated numerically.
Json nine_set_to_json(const NineEventSet& s, const SetVerification* verification, std::optional<double> p);
Json table1_to_json(bool verify, std::optional<double> p);
Json enumeration_to_json(const Event& ninth);
Json proof_to_json(const ProofReport& r);

struct IdentityCheckOptions {
  std::uint64_t seed = 20140312;
  std::size_t samples = 100;
  std::size_t symmetric_points = 20;
  double tolerance = 1e-9;
};

// Residuals for `samples` random behaviors and an evenly spaced symmetric
// family p in [0, 1/2]; "passed" is true when every residual is within tolerance.
Json identity_check_to_json(const IdentityCheckOptions& options);

}  // namespace epb
