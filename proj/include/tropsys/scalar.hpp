#pragma once

#include <tropsys/error.hpp>
#include <tropsys/rational.hpp>

#include <compare>
#include <ostream>
#include <string>
#include <utility>

namespace tropsys {

/// An element of the max-plus semiring: an exact rational or -inf.
class Scalar {
 public:
  /// Default construction yields -inf, the neutral element of max.
  Scalar() = default;
  Scalar(Rational value) : finite_(true), value_(std::move(value)) {}  // NOLINT(implicit)
  Scalar(long long value) : finite_(true), value_(value) {}            // NOLINT(implicit)
  Scalar(int value) : finite_(true), value_(value) {}                  // NOLINT(implicit)

  static Scalar neg_inf() { return Scalar(); }

  bool is_neg_inf() const noexcept { return !finite_; }
  bool is_finite() const noexcept { return finite_; }

  /// Rational payload; throws DomainError on -inf.
  const Rational& value() const {
    if (!finite_) throw DomainError("value() of -inf");
    return value_;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return finite_ ? to_string(value_) : "-inf"; }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  bool finite_ = false;
  Rational value_{};
};

/// max
inline Scalar oplus(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// min (the dual addition)
inline Scalar oplus_min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

/// Tropical product: ordinary sum, -inf absorbing.
inline Scalar odot(const Scalar& a, const Scalar& b) {
  if (a.is_neg_inf() || b.is_neg_inf()) return Scalar::neg_inf();
  return Scalar(Rational(a.value() + b.value()));
}

/// The dual product coincides with odot on the semiring itself.
inline Scalar odot_min(const Scalar& a, const Scalar& b) { return odot(a, b); }

struct ScalarOps {
  Scalar oplus;
  Scalar odot;
  Scalar oplus_min;
  Scalar odot_min;
};

inline ScalarOps scalar_ops(const Scalar& a, const Scalar& b) {
  return {oplus(a, b), odot(a, b), oplus_min(a, b), odot_min(a, b)};
}

/// Rationals extended by both infinities. Used for differences and interval
/// endpoints only; never stored in a matrix.
class ExtScalar {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtScalar() = default;
  ExtScalar(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT
  ExtScalar(long long value) : kind_(Kind::Finite), value_(value) {}            // NOLINT
  ExtScalar(int value) : kind_(Kind::Finite), value_(value) {}                  // NOLINT
  explicit ExtScalar(const Scalar& s) : kind_(s.is_finite() ? Kind::Finite : Kind::NegInf) {
    if (s.is_finite()) value_ = s.value();
  }

  static ExtScalar neg_inf() { return ExtScalar(); }
  static ExtScalar pos_inf() {
    ExtScalar e;
    e.kind_ = Kind::PosInf;
    return e;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }

  const Rational& value() const {
    if (kind_ != Kind::Finite) throw DomainError("value() of an infinite ExtScalar");
    return value_;
  }

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::Finite || a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtScalar& a, const ExtScalar& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Extended sum. PosInf + NegInf is left undefined and throws.
  friend ExtScalar operator+(const ExtScalar& a, const ExtScalar& b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
      throw DomainError("+inf + -inf is undefined");
    }
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return ExtScalar(Rational(a.value_ + b.value_));
  }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      case Kind::Finite: break;
    }
    return to_string(value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtScalar& s) { return os << s.str(); }

 private:
  Kind kind_ = Kind::NegInf;
  Rational value_{};
};

}  // namespace tropsys
