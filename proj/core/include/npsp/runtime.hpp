#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "npsp/engine.hpp"

namespace npsp {

// Data owners are 0..n-1. External commodity servers (the pool and the root
// server) live above kCommodityBase, indexed by the instance size they serve.
struct PartyId {
  int value = -1;
  auto operator<=>(const PartyId&) const = default;
};

inline constexpr int kCommodityBase = 1000;
inline PartyId pool_server(int instance_size) { return PartyId{kCommodityBase + instance_size}; }
inline bool is_external(PartyId p) { return p.value >= kCommodityBase; }

enum class MessageKind {
  SHARE_PAIR,
  MASKED_MATRIX,
  U_VALUE,
  SUBRESULT,
  SHORTCUT_PRODUCT,
};

// Payload schema is determined by kind: SHARE_PAIR carries {mat, scalar},
// MASKED_MATRIX and SHORTCUT_PRODUCT a matrix, U_VALUE and SUBRESULT a
// scalar. Payload contents are kept only when the run records them.
struct Payload {
  std::optional<DiagVec> mat;
  std::optional<Scalar> scalar;
  std::size_t size = 0;  // entry count, kept even when contents are elided
};

struct Message {
  std::string protocol_id;  // hierarchical path, e.g. "root/3/1"
  PartyId sender;
  PartyId receiver;
  MessageKind kind;
  Payload payload;
};

using Transcript = std::vector<Message>;

struct SimulationConfig {
  ExecutionMode mode = ExecutionMode::FULL_RECURSIVE;
  CommodityStrategy strategy = CommodityStrategy::NAIVE_POOL;
  RandomnessConfig rand;
  std::optional<Modulus> modulus;
  unsigned threads = 1;
  bool record_payloads = true;
  // Cross-check every (sub)result against the plaintext oracle. Development
  // aid; defeats privacy, never enable in realistic runs.
  bool debug_verify = false;
  // Fixed randomness for the root instance (golden replays).
  std::optional<ShareSet> root_shares;
  std::optional<Scalar> root_v2;
};

struct SimulationOutput {
  ProtocolResult result;
  Transcript transcript;
};

SimulationOutput run_simulation(const std::vector<DiagVec>& data,
                                const SimulationConfig& cfg);

// Picks the commodity server for a subprotocol. `parent_parties` are the
// parent instance's participants in order, `parent_commodity` its server,
// `chain` every commodity along the ancestor path (parent's included),
// `root_n` the number of original data owners.
PartyId assign_commodity(const SubprotocolSpec& spec,
                         const std::vector<PartyId>& parent_parties,
                         PartyId parent_commodity, int root_n,
                         const std::vector<PartyId>& chain,
                         CommodityStrategy strategy);

struct MessageTally {
  std::map<std::string, std::uint64_t> per_protocol;
  std::uint64_t total = 0;
};

MessageTally message_counts(const Transcript& t);

}  // namespace npsp
