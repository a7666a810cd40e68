#include "npsp/audit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace npsp {
namespace audit {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ROLE_EXCLUSIVITY: return "ROLE_EXCLUSIVITY";
    case ViolationKind::REUSE_SAFETY: return "REUSE_SAFETY";
    case ViolationKind::SHORTCUT_CONFIDENTIALITY: return "SHORTCUT_CONFIDENTIALITY";
    case ViolationKind::COMMODITY_BLINDNESS: return "COMMODITY_BLINDNESS";
  }
  return "UNKNOWN";
}

CollusionCoalition make_coalition(const Transcript& t,
                                  std::vector<PartyId> members) {
  CollusionCoalition coalition;
  coalition.members = std::move(members);
  auto is_member = [&](PartyId p) {
    return std::find(coalition.members.begin(), coalition.members.end(), p) !=
           coalition.members.end();
  };
  for (const Message& msg : t) {
    if (is_member(msg.sender) || is_member(msg.receiver)) {
      coalition.knowledge.push_back(msg);
    }
  }
  return coalition;
}

std::optional<DiagVec> collusion_recover(const CollusionCoalition& coalition,
                                         PartyId target) {
  for (PartyId member : coalition.members) {
    if (member == target) {
      throw ArgumentError("collusion_recover: target is a coalition member");
    }
  }
  // Need, from the same protocol instance: the random matrix dealt to the
  // target (known because the coalition's commodity sent it) and the masked
  // matrix the target published (known because a coalition member got it).
  for (const Message& dealt : coalition.knowledge) {
    if (dealt.kind != MessageKind::SHARE_PAIR || dealt.receiver != target ||
        !dealt.payload.mat) {
      continue;
    }
    for (const Message& published : coalition.knowledge) {
      if (published.kind != MessageKind::MASKED_MATRIX ||
          published.sender != target ||
          published.protocol_id != dealt.protocol_id || !published.payload.mat) {
        continue;
      }
      return unmask(*published.payload.mat, *dealt.payload.mat);
    }
  }
  return std::nullopt;
}

AuditReport audit_transcript(const Transcript& t) {
  AuditReport report;

  // role maps per protocol instance, from message structure alone
  std::map<std::string, std::set<PartyId>> commodities;  // SHARE_PAIR senders
  std::map<std::string, std::set<PartyId>> data_owners;  // dealt-to / publishers
  std::map<std::string, std::size_t> first_index;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Message& msg = t[i];
    first_index.try_emplace(msg.protocol_id, i);
    switch (msg.kind) {
      case MessageKind::SHARE_PAIR:
        commodities[msg.protocol_id].insert(msg.sender);
        data_owners[msg.protocol_id].insert(msg.receiver);
        break;
      case MessageKind::MASKED_MATRIX:
      case MessageKind::U_VALUE:
      case MessageKind::SUBRESULT:
        data_owners[msg.protocol_id].insert(msg.sender);
        break;
      case MessageKind::SHORTCUT_PRODUCT:
        break;
    }
  }

  // role exclusivity: no party both deals shares and acts as data owner
  // within one instance
  std::set<std::pair<std::string, PartyId>> reported_roles;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Message& msg = t[i];
    PartyId owner_role{-1};
    if (msg.kind == MessageKind::SHARE_PAIR) {
      owner_role = msg.receiver;
    } else if (msg.kind == MessageKind::MASKED_MATRIX ||
               msg.kind == MessageKind::U_VALUE ||
               msg.kind == MessageKind::SUBRESULT) {
      owner_role = msg.sender;
    }
    if (owner_role.value < 0) continue;
    const auto it = commodities.find(msg.protocol_id);
    if (it == commodities.end() || !it->second.contains(owner_role)) continue;
    if (reported_roles.emplace(msg.protocol_id, owner_role).second) {
      report.violations.push_back(
          {ViolationKind::ROLE_EXCLUSIVITY, msg.protocol_id, i});
    }
  }

  // reuse safety: a commodity id must not repeat along a root-to-leaf chain
  for (const auto& [pid, servers] : commodities) {
    for (std::size_t pos = pid.rfind('/'); pos != std::string::npos;
         pos = pid.rfind('/', pos - 1)) {
      const std::string ancestor = pid.substr(0, pos);
      const auto it = commodities.find(ancestor);
      if (it == commodities.end()) continue;
      for (PartyId server : servers) {
        if (it->second.contains(server)) {
          report.violations.push_back(
              {ViolationKind::REUSE_SAFETY, pid, first_index[pid]});
        }
      }
      if (pos == 0) break;
    }
  }

  // shortcut confidentiality: the resolved value must never reach the owner
  // of the random factors
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].kind != MessageKind::SHORTCUT_PRODUCT) continue;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const Message& other = t[j];
      if (other.protocol_id != t[i].protocol_id) continue;
      if ((other.kind == MessageKind::SUBRESULT ||
           other.kind == MessageKind::U_VALUE) &&
          other.receiver == t[i].sender) {
        report.violations.push_back(
            {ViolationKind::SHORTCUT_CONFIDENTIALITY, other.protocol_id, j});
      }
    }
  }

  // commodity blindness: the dealer of an instance never receives masked
  // data, chain values, or results of that instance
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Message& msg = t[i];
    if (msg.kind != MessageKind::MASKED_MATRIX &&
        msg.kind != MessageKind::U_VALUE && msg.kind != MessageKind::SUBRESULT) {
      continue;
    }
    const auto it = commodities.find(msg.protocol_id);
    if (it != commodities.end() && it->second.contains(msg.receiver)) {
      report.violations.push_back(
          {ViolationKind::COMMODITY_BLINDNESS, msg.protocol_id, i});
    }
  }

  return report;
}

}  // namespace audit
}  // namespace npsp
