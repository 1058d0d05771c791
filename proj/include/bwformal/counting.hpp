#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bwformal {

using BigInt = boost::multiprecision::cpp_int;

struct StateCount {
  BigInt exact;
  double log10_value;
};

/// Number of arrangements of n labeled blocks into unordered stacks of
/// ordered blocks with the arm empty, via the exact recurrence
/// a(n) = (2n-1)a(n-1) - (n-1)(n-2)a(n-2), a(0) = a(1) = 1.
StateCount count_states(int n);

/// Variant that also counts states where the arm holds one block:
/// count_states(n) + n * count_states(n-1).
StateCount count_states_with_holding(int n);

/// log10 of an arbitrary positive big integer (digit-count based, exact to
/// double precision even far beyond the double range).
double big_log10(const BigInt& v);

}  // namespace bwformal
