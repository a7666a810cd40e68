#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "npsp/algebra.hpp"
#include "npsp/shares.hpp"

namespace npsp {

enum class ExecutionMode {
  // Every leftover term is resolved by a genuine sub-protocol run.
  FULL_RECURSIVE,
  // Leftovers with a single data factor are resolved by shipping the
  // product of the random matrices to the data owner.
  SHORTCUT,
};

enum class CommodityStrategy {
  // Dedicated external servers, one per subprotocol size.
  NAIVE_POOL,
  // Idle data owners serve, never twice along one recursion chain.
  PARTY_REUSE,
};

struct ProtocolStats {
  std::uint64_t protocols = 0;
  std::uint64_t messages = 0;
  bool operator==(const ProtocolStats&) const = default;
};

struct ProtocolResult {
  Scalar value;
  ProtocolStats stats;
};

// One leftover term: the parties contributing raw data (A), the parties
// whose random matrices appear (B), and how often the term occurs.
// A and B partition the parent's party set; |B| in [2, n-1]; multiplicity
// is |B| - 1.
struct SubprotocolSpec {
  std::vector<int> data_indices;
  std::vector<int> rand_indices;
  int multiplicity = 1;
  bool operator==(const SubprotocolSpec&) const = default;
};

// All leftover terms of an n-party run, grouped by R-factor count x in
// [2, n-1]: every x-sized subset of parties on the R side, multiplicity x-1.
std::vector<SubprotocolSpec> enumerate_subprotocols(int n);

// The two-party base protocol. The second party owns v2 and the result:
// u = phi(a_hat, b) + r_b - v2; v1 = u - phi(r_a, b_hat) + r_a;
// value = v1 + v2 = dot(a, b).
ProtocolResult two_party_protocol(const DiagVec& a, const DiagVec& b,
                                  const ShareSet& shares, const Scalar& v2,
                                  const std::optional<Modulus>& mod = {});

// The sequential masking chain. Returns all u_i:
//   u_1 = phi(masked_2 .. masked_n, raw_first) + (n-1) r_1 - v2
//   u_i = u_{i-1} - phi(prod_{x != i} masked_x, r_mat_i) + (n-1) r_i
std::vector<Scalar> compute_u_values(std::span<const DiagVec> masked,
                                     const DiagVec& raw_first,
                                     std::span<const DiagVec> r_mats,
                                     std::span<const Scalar> r_scalars,
                                     const Scalar& v2,
                                     const std::optional<Modulus>& mod = {});

// Last element of the chain, u_n.
Scalar compute_u_chain(std::span<const DiagVec> masked, const DiagVec& raw_first,
                       std::span<const DiagVec> r_mats,
                       std::span<const Scalar> r_scalars, const Scalar& v2,
                       const std::optional<Modulus>& mod = {});

// Resolves a single-data-factor leftover directly: phi(d, r_product) where
// r_product is the entrywise product of the commodity matrices involved.
Scalar solve_single_d_shortcut(const DiagVec& d, const DiagVec& r_product,
                               const std::optional<Modulus>& mod = {});

// Full n-party protocol over the simulated runtime, transcript discarded.
ProtocolResult n_party_protocol(const std::vector<DiagVec>& data,
                                ExecutionMode mode, const RandomnessConfig& cfg,
                                CommodityStrategy strategy,
                                const std::optional<Modulus>& mod = {});

// Closed recurrences for full-recursive cost. A subprotocol with x R-factors
// collapses to an (n-x+1)-party problem, the R-product acting as one party.
//   P(2) = 1,  P(n) = 1 + sum_{x=2}^{n-1} C(n,x) P(n-x+1)
//   M(2) = 6,  M(n) = (n + n^2) + sum_{x=2}^{n-1} C(n,x) M(n-x+1)
Scalar count_protocols(int n);
Scalar count_messages(int n);

}  // namespace npsp
