#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace mdet {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// exact integer type used on every certified path
using Int = boost::multiprecision::cpp_int;

// floor(sqrt(x)), x >= 0
inline Int isqrt(const Int& x) { return boost::multiprecision::sqrt(x); }

}  // namespace mdet
