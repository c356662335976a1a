#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tropcount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Entrywise subtraction of sequences would produce a negative entry.
struct NegativeEntry : Error {
  using Error::Error;
};

/// A path step spans two or more columns where a column profile is needed.
struct ColumnSkip : Error {
  using Error::Error;
};

/// An argument violated the documented precondition of an operation.
struct PreconditionError : Error {
  using Error::Error;
};

/// A sum of rational multiplicities that must be integral was not.
struct NonIntegralTotal : Error {
  using Error::Error;
};

/// Malformed textual input (sequence syntax, cache files).
struct ParseError : Error {
  using Error::Error;
};

/// C(n, k) over unbounded integers; 0 when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline BigInt factorial(std::uint64_t n) {
  BigInt result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

/// n! / (a_1! ... a_k! (n - a_1 - ... - a_k)!), or 0 when the parts exceed n.
template <typename Range>
BigInt multinomial(std::uint64_t n, Range const& parts) {
  BigInt result = 1;
  std::uint64_t remaining = n;
  for (auto part : parts) {
    auto p = static_cast<std::uint64_t>(part);
    if (p > remaining) return 0;
    result *= binomial(remaining, p);
    remaining -= p;
  }
  return result;
}

inline bool is_integral(Rational const& r) {
  return boost::multiprecision::denominator(r) == 1;
}

/// Decimal text of an integer, or "p/q" of a reduced rational.
inline std::string to_decimal(BigInt const& v) { return v.str(); }
inline std::string to_decimal(Rational const& r) {
  if (is_integral(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace tropcount
