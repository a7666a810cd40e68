#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "npsp/algebra.hpp"

namespace npsp {

// Ranges and seed for commodity randomness. The protocol itself never fixes
// these; they are configuration. Half-open intervals [lo, hi).
struct RandomnessConfig {
  Scalar entry_lo = 0;
  Scalar entry_hi = Scalar(1) << 31;
  Scalar scalar_lo = 0;
  Scalar scalar_hi = Scalar(1) << 31;
  std::uint64_t seed = 0;
};

// Deterministic seedable generator with portable bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform draw from [lo, hi) by rejection over 32-bit limbs.
  Scalar uniform(const Scalar& lo, const Scalar& hi);

 private:
  std::mt19937_64 eng_;
};

// Stable seed derivation for child protocols: hash(parent_seed, child_id).
std::uint64_t derive_seed(std::uint64_t parent_seed, std::string_view child_id);

// One party's correlated randomness {R_i, r_i}.
struct SharePair {
  DiagVec r_mat;
  Scalar r_scalar;
};

// Full commodity output for one protocol instance. The r_i are an additive
// split of phi(R_1 ... R_n): all but the last are random, the last is forced.
struct ShareSet {
  std::vector<SharePair> pairs;
  std::uint64_t seed = 0;
};

ShareSet generate_share_set(int n, std::size_t m, const RandomnessConfig& cfg);

// Builds a ShareSet from fixed matrices and scalars with exactly one scalar
// slot left unset; the unset slot is forced so the sum identity holds.
ShareSet inject_share_set(std::vector<DiagVec> mats,
                          std::vector<std::optional<Scalar>> scalars);

}  // namespace npsp
