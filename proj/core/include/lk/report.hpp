#ifndef LK_REPORT_HPP
#define LK_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace lk {

enum class CheckStatus { pass, fail, info };

std::string to_string(CheckStatus s);

/// One verified inequality or condition. `margin` is rhs - lhs of the binding
/// inequality (negative means violated); `witness` pins where it was attained.
struct CheckRow {
  std::string check;
  CheckStatus status = CheckStatus::info;
  double margin = 0.0;
  std::string witness;
};

struct VerificationReport {
  std::string subject;
  std::vector<CheckRow> rows;

  bool passed() const noexcept;
  std::size_t failures() const noexcept;

  /// Row with the smallest margin among pass/fail rows; nullptr if none.
  const CheckRow* binding() const noexcept;

  std::string to_json_string(int indent = 2) const;
};

} // namespace lk

#endif
