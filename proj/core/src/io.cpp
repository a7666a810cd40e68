#include "npsp/io.hpp"

#include <sstream>

namespace npsp {
namespace io {

std::string to_decimal(const Scalar& v) { return v.str(); }

Scalar scalar_from_decimal(const std::string& s) {
  std::size_t digits_from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  bool valid = s.size() > digits_from;
  for (std::size_t i = digits_from; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      valid = false;
      break;
    }
  }
  if (!valid) {
    throw ArgumentError("not a decimal integer: '" + s + "'");
  }
  return Scalar(s);
}

ordered_json diagvec_to_json(const DiagVec& v) {
  ordered_json arr = ordered_json::array();
  for (std::size_t k = 0; k < v.size(); ++k) {
    arr.push_back(to_decimal(v[k]));
  }
  return arr;
}

DiagVec diagvec_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw ArgumentError("vector JSON must be an array of decimal strings");
  }
  std::vector<Scalar> entries;
  entries.reserve(j.size());
  for (const auto& cell : j) {
    if (cell.is_string()) {
      entries.push_back(scalar_from_decimal(cell.get<std::string>()));
    } else if (cell.is_number_integer()) {
      entries.push_back(Scalar(cell.get<long long>()));
    } else {
      throw ArgumentError("vector JSON cells must be strings or integers");
    }
  }
  return DiagVec(std::move(entries));
}

std::string diagvec_to_csv(const DiagVec& v) {
  std::ostringstream out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out << ',';
    out << v[k].str();
  }
  out << '\n';
  return out.str();
}

DiagVec diagvec_from_csv(const std::string& text) {
  std::vector<Scalar> entries;
  std::string cell;
  auto flush = [&] {
    // trim surrounding spaces
    const auto begin = cell.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
      cell.clear();
      return;
    }
    const auto end = cell.find_last_not_of(" \t\r");
    entries.push_back(scalar_from_decimal(cell.substr(begin, end - begin + 1)));
    cell.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '\n') {
      flush();
    } else {
      cell.push_back(c);
    }
  }
  flush();
  if (entries.empty()) {
    throw ArgumentError("CSV vector is empty");
  }
  return DiagVec(std::move(entries));
}

std::string to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::SHARE_PAIR: return "SHARE_PAIR";
    case MessageKind::MASKED_MATRIX: return "MASKED_MATRIX";
    case MessageKind::U_VALUE: return "U_VALUE";
    case MessageKind::SUBRESULT: return "SUBRESULT";
    case MessageKind::SHORTCUT_PRODUCT: return "SHORTCUT_PRODUCT";
  }
  return "UNKNOWN";
}

std::string to_string(ExecutionMode mode) {
  return mode == ExecutionMode::FULL_RECURSIVE ? "full" : "shortcut";
}

std::string to_string(CommodityStrategy strategy) {
  return strategy == CommodityStrategy::NAIVE_POOL ? "pool" : "reuse";
}

std::string transcript_to_jsonl(const Transcript& t, bool full_payloads) {
  std::ostringstream out;
  for (const Message& msg : t) {
    ordered_json line;
    line["protocol"] = msg.protocol_id;
    line["from"] = msg.sender.value;
    line["to"] = msg.receiver.value;
    line["kind"] = to_string(msg.kind);
    line["size"] = msg.payload.size;
    if (full_payloads) {
      if (msg.payload.mat) line["mat"] = diagvec_to_json(*msg.payload.mat);
      if (msg.payload.scalar) line["scalar"] = to_decimal(*msg.payload.scalar);
    }
    out << line.dump() << '\n';
  }
  return out.str();
}

ordered_json shareset_to_json(const ShareSet& s) {
  ordered_json pairs = ordered_json::array();
  for (const SharePair& p : s.pairs) {
    ordered_json item;
    item["r_mat"] = diagvec_to_json(p.r_mat);
    item["r_scalar"] = to_decimal(p.r_scalar);
    pairs.push_back(std::move(item));
  }
  ordered_json doc;
  doc["seed"] = s.seed;
  doc["pairs"] = std::move(pairs);
  return doc;
}

ordered_json audit_report_to_json(const audit::AuditReport& report) {
  ordered_json violations = ordered_json::array();
  for (const audit::Violation& v : report.violations) {
    ordered_json item;
    item["kind"] = audit::to_string(v.kind);
    item["protocol"] = v.protocol_id;
    item["message_index"] = v.message_index;
    violations.push_back(std::move(item));
  }
  ordered_json doc;
  doc["clean"] = report.clean();
  doc["violations"] = std::move(violations);
  return doc;
}

}  // namespace io
}  // namespace npsp
