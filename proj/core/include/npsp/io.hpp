#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "npsp/audit.hpp"
#include "npsp/runtime.hpp"

namespace npsp {
namespace io {

using ordered_json = nlohmann::ordered_json;

// Scalars travel as decimal strings to preserve arbitrary precision.
std::string to_decimal(const Scalar& v);
Scalar scalar_from_decimal(const std::string& s);

ordered_json diagvec_to_json(const DiagVec& v);
DiagVec diagvec_from_json(const nlohmann::json& j);

// CSV: decimal integer cells, separated by commas and/or newlines.
std::string diagvec_to_csv(const DiagVec& v);
DiagVec diagvec_from_csv(const std::string& text);

// One message per line; payload contents only with full_payloads.
std::string transcript_to_jsonl(const Transcript& t, bool full_payloads = false);

ordered_json shareset_to_json(const ShareSet& s);

ordered_json audit_report_to_json(const audit::AuditReport& report);

std::string to_string(MessageKind kind);
std::string to_string(ExecutionMode mode);
std::string to_string(CommodityStrategy strategy);

}  // namespace io
}  // namespace npsp
