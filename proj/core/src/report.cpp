#include "lk/report.hpp"

#include <nlohmann/json.hpp>

namespace lk {

std::string to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::pass: return "pass";
  case CheckStatus::fail: return "fail";
  case CheckStatus::info: return "info";
  }
  return "unknown";
}

bool VerificationReport::passed() const noexcept { return failures() == 0; }

std::size_t VerificationReport::failures() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows)
    if (r.status == CheckStatus::fail)
      ++n;
  return n;
}

const CheckRow* VerificationReport::binding() const noexcept {
  const CheckRow* worst = nullptr;
  for (const auto& r : rows) {
    if (r.status == CheckStatus::info)
      continue;
    if (!worst || r.margin < worst->margin)
      worst = &r;
  }
  return worst;
}

std::string VerificationReport::to_json_string(int indent) const {
  nlohmann::ordered_json j;
  j["subject"] = subject;
  j["passed"] = passed();
  j["failures"] = failures();
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["check"] = r.check;
    row["status"] = to_string(r.status);
    row["margin"] = r.margin;
    row["witness"] = r.witness;
    rows_json.push_back(std::move(row));
  }
  j["rows"] = std::move(rows_json);
  return j.dump(indent);
}

} // namespace lk
