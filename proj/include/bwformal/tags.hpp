#pragma once

#include <string>

namespace bwformal {

struct TagResult {
  enum class Status { kOk, kAbsent, kUnclosed };
  Status status = Status::kAbsent;
  std::string text;  // inner content when kOk

  bool ok() const { return status == Status::kOk; }
};

/// Returns the content of the first <tag>...</tag> pair, tolerating
/// surrounding prose. The first close after the open wins, so stray
/// foreign tags inside the body are returned verbatim.
TagResult extract_tagged(const std::string& text, const std::string& tag);

}  // namespace bwformal
