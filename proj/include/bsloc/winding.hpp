#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bsloc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Default distance-to-lattice tolerance, in winding units.
inline constexpr double kLatticeTol = 1e-9;

/// Fiberwise U(1) holonomy as a real lift in winding units: holonomy = exp(2 pi i u).
///
/// The exact value is a rational. Values read from decimal text (or from a double
/// whose shortest round-trip representation is that text) are held exactly, so
/// 0.1 + 0.2 + 0.7 sums to 1 without rounding noise.
class Winding {
 public:
  Winding() = default;
  explicit Winding(Rational exact) : exact_(std::move(exact)) {}
  explicit Winding(double u);
  static Winding from_decimal(const std::string& text);

  const Rational& exact() const { return exact_; }
  double value() const { return exact_.convert_to<double>(); }

  Winding operator+(const Winding& o) const { return Winding(exact_ + o.exact_); }
  Winding operator-(const Winding& o) const { return Winding(exact_ - o.exact_); }
  Winding operator-() const { return Winding(Rational(-exact_)); }
  bool operator==(const Winding& o) const { return exact_ == o.exact_; }
  auto operator<=>(const Winding& o) const {
    if (exact_ < o.exact_) return std::strong_ordering::less;
    if (exact_ > o.exact_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational exact_{0};
};

enum class FiberClass { BohrSommerfeld, Acyclic };

BigInt floor(const Rational& q);
BigInt nearest_integer(const Rational& q);
/// |q - nearest integer| as a double.
double lattice_distance(const Rational& q);
bool on_lattice(const Rational& q, double tol = kLatticeTol);

/// Bohr-Sommerfeld iff the lift lies within tol of an integer.
FiberClass classify_fiber(const Winding& u, double tol = kLatticeTol);

/// Exact rational from a double via its shortest round-trip decimal form.
Rational rational_from_double(double v);
Rational parse_decimal(const std::string& text);

/// Shortest round-trip decimal text of a double.
std::string format_double(double v);
std::string format_rational(const Rational& q);

long long to_int64(const BigInt& z);

}  // namespace bsloc
