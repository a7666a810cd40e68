#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npsp/runtime.hpp"

namespace npsp {
namespace audit {

// A set of colluding parties and what they jointly know: every transcript
// message one of them sent or received. Local secrets (the commodity's
// generated shares) appear in the transcript as SHARE_PAIR sends, so the
// filtered transcript is the complete coalition knowledge.
struct CollusionCoalition {
  std::vector<PartyId> members;
  Transcript knowledge;
};

CollusionCoalition make_coalition(const Transcript& t,
                                  std::vector<PartyId> members);

// The masked-matrix attack: if the coalition knows both the masked matrix
// sent by `target` and the random matrix the commodity dealt to `target`,
// subtracting them exposes the target's raw data. Returns nothing when
// the coalition lacks either artifact.
std::optional<DiagVec> collusion_recover(const CollusionCoalition& coalition,
                                         PartyId target);

enum class ViolationKind {
  ROLE_EXCLUSIVITY,
  REUSE_SAFETY,
  SHORTCUT_CONFIDENTIALITY,
  COMMODITY_BLINDNESS,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string protocol_id;
  std::size_t message_index;
};

struct AuditReport {
  std::vector<Violation> violations;
  bool clean() const { return violations.empty(); }
};

// Structural information-flow checks over a complete transcript. Reports,
// never throws.
AuditReport audit_transcript(const Transcript& t);

}  // namespace audit
}  // namespace npsp
