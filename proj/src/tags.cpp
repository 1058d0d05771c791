#include "bwformal/tags.hpp"

namespace bwformal {

TagResult extract_tagged(const std::string& text, const std::string& tag) {
  TagResult result;
  std::string open = "<" + tag + ">";
  std::string close = "</" + tag + ">";
  std::size_t start = text.find(open);
  if (start == std::string::npos) return result;
  start += open.size();
  std::size_t end = text.find(close, start);
  if (end == std::string::npos) {
    result.status = TagResult::Status::kUnclosed;
    return result;
  }
  result.status = TagResult::Status::kOk;
  result.text = text.substr(start, end - start);
  return result;
}

}  // namespace bwformal
