#pragma once

#include <cstdint>
#include <json.hpp>

namespace spherestat::cli {

// One verification suite: payload for the report plus the overall verdict.
struct VerifyResult {
  nlohmann::ordered_json payload;
  bool ok;
};

// Each suite exercises one identity or characterization numerically on
// randomized desk-scale inputs.
VerifyResult verify_identity(int trials, int samples, std::uint64_t seed);
VerifyResult verify_energy(int trials, int samples, std::uint64_t seed);
VerifyResult verify_negtype(int trials, std::uint64_t seed);
VerifyResult verify_cw(int trials, std::uint64_t seed);
VerifyResult verify_symm(int trials, std::uint64_t seed);
VerifyResult verify_compare(int trials, std::uint64_t seed);

}  // namespace spherestat::cli
