#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace juntalab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_fraction_string(const BigRational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

BigInt big_binomial(int n, int k);

}  // namespace juntalab
