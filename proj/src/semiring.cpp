#include "simctx/semiring.hpp"

#include <charconv>
#include <string>

#include "simctx/errors.hpp"

namespace simctx {

SemiringDesc SemiringDesc::of(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::NonnegRational:
      return {kind, true, true, true, false};
    case SemiringKind::Boolean:
      return {kind, true, true, true, false};
    case SemiringKind::RealField:
      return {kind, true, false, true, true};
  }
  throw UsageError("unknown semiring kind");
}

std::string_view SemiringDesc::name() const { return semiring_name(kind); }

std::string_view semiring_name(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::NonnegRational:
      return "rational";
    case SemiringKind::Boolean:
      return "boolean";
    case SemiringKind::RealField:
      return "real";
  }
  return "?";
}

SemiringKind parse_semiring_kind(std::string_view name) {
  if (name == "rational" || name == "nonneg" || name == "NonnegRational") return SemiringKind::NonnegRational;
  if (name == "boolean" || name == "bool" || name == "Boolean") return SemiringKind::Boolean;
  if (name == "real" || name == "RealField") return SemiringKind::RealField;
  throw UsageError("unknown semiring '" + std::string(name) + "'");
}

namespace {

void check_same(const Scalar& a, const Scalar& b, const char* op) {
  if (a.kind() != b.kind()) {
    throw UsageError(std::string("mixed-semiring operands in ") + op + ": " +
                     std::string(semiring_name(a.kind())) + " vs " +
                     std::string(semiring_name(b.kind())));
  }
}

}  // namespace

Scalar::Scalar(SemiringKind kind, Rational value) : kind_(kind), value_(std::move(value)) {
  switch (kind_) {
    case SemiringKind::NonnegRational:
      if (value_ < 0) throw UsageError("negative value " + rational_to_string(value_) + " in nonnegative semiring");
      break;
    case SemiringKind::Boolean:
      if (value_ != 0 && value_ != 1) throw UsageError("boolean scalar must be 0 or 1, got " + rational_to_string(value_));
      break;
    case SemiringKind::RealField:
      break;
  }
}

Scalar Scalar::parse(SemiringKind kind, std::string_view text) { return Scalar(kind, parse_rational(text)); }

Scalar Scalar::reciprocal() const {
  if (is_zero()) throw UsageError("reciprocal of zero");
  return Scalar(kind_, Rational(1) / value_);
}

Scalar Scalar::negated() const {
  if (!SemiringDesc::of(kind_).has_negation) {
    if (is_zero()) return *this;
    throw UsageError(std::string("no additive inverses in ") + std::string(semiring_name(kind_)));
  }
  return Scalar(kind_, -value_);
}

std::string Scalar::to_string() const { return rational_to_string(value_); }

double Scalar::to_double() const { return value_.convert_to<double>(); }

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Scalar add(const Scalar& a, const Scalar& b) {
  check_same(a, b, "add");
  if (a.kind() == SemiringKind::Boolean) return Scalar(a.kind(), (a.is_zero() && b.is_zero()) ? 0L : 1L);
  return Scalar(a.kind(), a.value() + b.value());
}

Scalar mul(const Scalar& a, const Scalar& b) {
  check_same(a, b, "mul");
  if (a.kind() == SemiringKind::Boolean) return Scalar(a.kind(), (a.is_zero() || b.is_zero()) ? 0L : 1L);
  return Scalar(a.kind(), a.value() * b.value());
}

Scalar sub(const Scalar& a, const Scalar& b) {
  check_same(a, b, "sub");
  if (a.kind() == SemiringKind::Boolean) {
    if (b.is_zero()) return a;
    throw UsageError("boolean subtraction is undefined");
  }
  return Scalar(a.kind(), a.value() - b.value());
}

Scalar div(const Scalar& a, const Scalar& b) {
  check_same(a, b, "div");
  return mul(a, b.reciprocal());
}

std::string rational_to_string(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw UsageError("malformed rational '" + std::string(text) + "'");
    for (char c : digits) {
      if (c < '0' || c > '9') throw UsageError("malformed rational '" + std::string(text) + "'");
    }
    if (s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace simctx
