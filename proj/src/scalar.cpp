#include "d2lab/scalar.hpp"

namespace d2lab {

Scalar parse_scalar(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_scalar: empty string");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      BigInt n(text);
      return Scalar(n);
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_scalar: zero denominator");
    return Scalar(num) / Scalar(den);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_scalar: malformed rational '" + text + "'");
  }
}

std::string to_string(const Scalar& value) { return value.str(); }

double approx_double(const Scalar& value) { return value.convert_to<double>(); }

Scalar pow_int(const Scalar& base, int exp) {
  if (exp < 0) throw std::domain_error("pow_int: negative exponent");
  Scalar result(1);
  Scalar acc = base;
  int e = exp;
  while (e > 0) {
    if (e & 1) result *= acc;
    e >>= 1;
    if (e) acc *= acc;
  }
  return result;
}

Ordering compare_exact(const Scalar& a, const Scalar& b) {
  if (a < b) return Ordering::less;
  if (a > b) return Ordering::greater;
  return Ordering::equal;
}

Ordering compare_pth_power(const Scalar& a, const Scalar& b, int p) {
  if (p < 1) throw std::domain_error("compare_pth_power: p must be >= 1");
  if (a < 0 || b < 0) throw std::domain_error("compare_pth_power: negative input");
  return compare_exact(a, pow_int(b, p));
}

Ordering compare(const NormValue& a, const NormValue& b) {
  if (a.p < 1 || b.p < 1) throw std::domain_error("NormValue: p must be >= 1");
  if (a.radicand < 0 || b.radicand < 0)
    throw std::domain_error("NormValue: negative radicand");
  // a^(1/pa) vs b^(1/pb)  <=>  a^pb vs b^pa
  return compare_exact(pow_int(a.radicand, b.p), pow_int(b.radicand, a.p));
}

Ordering compare(const NormValue& a, const Scalar& b) {
  if (b < 0) {
    // radicand >= 0 so the root is >= 0 > b
    return Ordering::greater;
  }
  return compare_pth_power(a.radicand, b, a.p);
}

}  // namespace d2lab
