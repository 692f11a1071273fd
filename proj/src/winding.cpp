#include "bsloc/winding.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "bsloc/error.hpp"

namespace bsloc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EndpointOnLattice: return "EndpointOnLattice";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidPiece: return "InvalidPiece";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::IncompatibleGluing: return "IncompatibleGluing";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::OddEuler: return "OddEuler";
    case ErrorCode::UnknownGluing: return "UnknownGluing";
    case ErrorCode::LiftOnLattice: return "LiftOnLattice";
    case ErrorCode::BadSum: return "BadSum";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::BadMargin: return "BadMargin";
    case ErrorCode::BadModeWindow: return "BadModeWindow";
    case ErrorCode::Unresolved: return "Unresolved";
    case ErrorCode::EmptyKernel: return "EmptyKernel";
    case ErrorCode::UnresolvedFactor: return "UnresolvedFactor";
    case ErrorCode::SingularFiberPresent: return "SingularFiberPresent";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::InputError: return "InputError";
    case ErrorCode::LatticeBoundary: return "LatticeBoundary";
  }
  return "Unknown";
}

Winding::Winding(double u) : exact_(rational_from_double(u)) {}

Winding Winding::from_decimal(const std::string& text) { return Winding(parse_decimal(text)); }

BigInt floor(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;  // truncates toward zero; den > 0
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

BigInt nearest_integer(const Rational& q) { return floor(Rational(q + Rational(1, 2))); }

double lattice_distance(const Rational& q) {
  Rational d = q - Rational(nearest_integer(q));
  if (d < 0) d = -d;
  return d.convert_to<double>();
}

bool on_lattice(const Rational& q, double tol) { return lattice_distance(q) <= tol; }

FiberClass classify_fiber(const Winding& u, double tol) {
  return on_lattice(u.exact(), tol) ? FiberClass::BohrSommerfeld : FiberClass::Acyclic;
}

Rational parse_decimal(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  BigInt digits = 0;
  long long scale = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (after_point) ++scale;
      seen_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::InputError, "not a decimal number: '" + text + "'");
  long long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    auto [ptr, ec] = std::from_chars(text.data() + i + (text[i] == '+' ? 1 : 0),
                                     text.data() + text.size(), exponent);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw Error(ErrorCode::InputError, "bad exponent in '" + text + "'");
    i = text.size();
  }
  if (i != text.size()) throw Error(ErrorCode::InputError, "trailing characters in '" + text + "'");
  long long power = exponent - scale;
  BigInt ten = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(power)));
  Rational q = power >= 0 ? Rational(digits * ten) : Rational(digits, ten);
  return negative ? Rational(-q) : q;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InputError, "non-finite winding value");
  return parse_decimal(format_double(v));
}

std::string format_rational(const Rational& q) {
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

long long to_int64(const BigInt& z) {
  if (z > std::numeric_limits<long long>::max() || z < std::numeric_limits<long long>::min())
    throw Error(ErrorCode::InputError, "integer out of 64-bit range");
  return z.convert_to<long long>();
}

}  // namespace bsloc
