#include "bwformal/counting.hpp"

#include <cmath>
#include <stdexcept>

namespace bwformal {

double big_log10(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("big_log10 needs a positive value");
  std::string digits = v.str();
  // log10(d.ddd... * 10^(k-1)) with a 17-digit mantissa
  std::string head = digits.substr(0, 17);
  double mantissa = std::stod(head);
  return std::log10(mantissa) +
         static_cast<double>(digits.size() - head.size());
}

StateCount count_states(int n) {
  if (n < 0) throw std::invalid_argument("negative block count");
  BigInt prev2 = 1, prev1 = 1;  // a(0), a(1)
  if (n <= 1) return {BigInt(1), 0.0};
  BigInt cur = 0;
  for (int k = 2; k <= n; ++k) {
    cur = (2 * k - 1) * prev1 - BigInt(k - 1) * (k - 2) * prev2;
    prev2 = prev1;
    prev1 = cur;
  }
  return {cur, big_log10(cur)};
}

StateCount count_states_with_holding(int n) {
  if (n < 0) throw std::invalid_argument("negative block count");
  BigInt total = count_states(n).exact;
  if (n >= 1) total += n * count_states(n - 1).exact;
  return {total, big_log10(total)};
}

}  // namespace bwformal
