#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace d2lab {

// All geometry in this library is exact: Scalar is an arbitrary-precision
// rational, always kept in lowest terms with a positive denominator.
using Scalar = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Thrown when a computation exceeds a configured size cap.
class SizeCapError : public std::runtime_error {
 public:
  SizeCapError(const std::string& cap_name, const std::string& what)
      : std::runtime_error(what), cap_name_(cap_name) {}
  const std::string& cap_name() const { return cap_name_; }

 private:
  std::string cap_name_;
};

inline Scalar frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("frac: zero denominator");
  return Scalar(num) / Scalar(den);
}

// Parses "p/q" or "n". Throws std::invalid_argument on malformed input
// (including zero denominators).
Scalar parse_scalar(const std::string& text);

// Canonical rendering: "p/q" in lowest terms, integers without the "/1".
std::string to_string(const Scalar& value);

// Lossy decimal rendering for report columns flagged approximate. Never used
// in any decision path.
double approx_double(const Scalar& value);

// base^exp for exp >= 0.
Scalar pow_int(const Scalar& base, int exp);

enum class Ordering { less, equal, greater };

Ordering compare_exact(const Scalar& a, const Scalar& b);

// Ordering of a^(1/p) versus b, decided by comparing a against b^p.
// Requires a, b >= 0 and p >= 1; throws std::domain_error otherwise.
Ordering compare_pth_power(const Scalar& a, const Scalar& b, int p);

// Exact handle for the value radicand^(1/p) with radicand >= 0. p == 1 is a
// plain scalar. Roots are never materialized; every comparison happens on
// integer powers.
struct NormValue {
  Scalar radicand;
  int p = 1;

  static NormValue exact(const Scalar& v) { return NormValue{v, 1}; }
  bool is_exact() const { return p == 1; }
  const Scalar& scalar() const {
    if (p != 1) throw std::domain_error("NormValue: no exact scalar for p > 1");
    return radicand;
  }
};

// Compares radicand_a^(1/pa) with radicand_b^(1/pb) via cross powers.
Ordering compare(const NormValue& a, const NormValue& b);
Ordering compare(const NormValue& a, const Scalar& b);

inline bool leq(const NormValue& a, const Scalar& b) {
  return compare(a, b) != Ordering::greater;
}
inline bool geq(const NormValue& a, const Scalar& b) {
  return compare(a, b) != Ordering::less;
}

}  // namespace d2lab
