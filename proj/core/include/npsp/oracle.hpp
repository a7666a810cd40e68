#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "npsp/algebra.hpp"

namespace npsp {
namespace oracle {

// Ground-truth scalar product, computed with a different accumulation order
// than phi (per-party fold into an accumulator vector, then entry sum).
Scalar plaintext_scalar_product(std::span<const DiagVec> data);
Scalar plaintext_scalar_product(const std::vector<const DiagVec*>& data);

enum class FactorTag : std::uint8_t { ABSENT, DATA, RAND };

// One canonical term of the formal expansion: a coefficient and, per party,
// whether the party contributes its data matrix, its random matrix, or
// nothing. Parties are bit positions; a party never appears as both.
struct FormalMonomial {
  Scalar coefficient;
  std::uint32_t d_mask = 0;
  std::uint32_t r_mask = 0;

  FactorTag tag(int party) const {
    if (d_mask >> party & 1u) return FactorTag::DATA;
    if (r_mask >> party & 1u) return FactorTag::RAND;
    return FactorTag::ABSENT;
  }
  bool operator==(const FormalMonomial&) const = default;
};

// Expands the protocol's closing value u_n + v2 symbolically, with the
// r-share sum folded into the pure-R monomial via sum(r_i) = phi(prod R_i).
// Zero-coefficient monomials are dropped. Sorted by (d_mask, r_mask).
std::vector<FormalMonomial> symbolic_expand_protocol(int n);

// Evaluates a set of monomials on a concrete assignment of per-party data
// and random matrices.
Scalar evaluate_monomials(const std::vector<FormalMonomial>& monomials,
                          std::span<const DiagVec> data,
                          std::span<const DiagVec> rand);

}  // namespace oracle
}  // namespace npsp
