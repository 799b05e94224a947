#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace simctx {

/// Exact arbitrary-precision rational. Expression templates are off so that
/// `auto` results are values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

enum class SemiringKind { NonnegRational, Boolean, RealField };

/// Structural flags of a commutative semiring.
struct SemiringDesc {
  SemiringKind kind;
  bool ordered;
  bool zero_sum_free;
  bool integral;
  bool has_negation;

  static SemiringDesc of(SemiringKind kind);
  /// Every nonzero element has a multiplicative inverse.
  bool is_division() const { return true; }
  std::string_view name() const;
};

SemiringKind parse_semiring_kind(std::string_view name);
std::string_view semiring_name(SemiringKind kind);

/// Element of one of the supported semirings. Booleans are stored as 0/1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(SemiringKind kind, Rational value);
  Scalar(SemiringKind kind, long value) : Scalar(kind, Rational(value)) {}

  static Scalar zero(SemiringKind kind) { return Scalar(kind, 0L); }
  static Scalar one(SemiringKind kind) { return Scalar(kind, 1L); }

  /// Parses "p/q", an integer, or (Boolean) "0"/"1".
  static Scalar parse(SemiringKind kind, std::string_view text);

  SemiringKind kind() const { return kind_; }
  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  /// Multiplicative inverse; throws on zero.
  Scalar reciprocal() const;
  /// Additive inverse; RealField only.
  Scalar negated() const;

  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  SemiringKind kind_ = SemiringKind::NonnegRational;
  Rational value_ = 0;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
/// a - b. Defined on RealField, and on NonnegRational when a >= b.
Scalar sub(const Scalar& a, const Scalar& b);
/// a / b for b != 0.
Scalar div(const Scalar& a, const Scalar& b);

inline Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
inline Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }

std::string rational_to_string(const Rational& r);
Rational parse_rational(std::string_view text);

}  // namespace simctx
