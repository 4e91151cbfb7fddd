#ifndef CTLAB_RATIONAL_HPP
#define CTLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace ctlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p" or "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

std::int64_t to_int64(const Integer& z);

/// A value extended by +infinity; used for orders and valuations of the zero
/// polynomial.
template <class T>
class Extended {
public:
  Extended(T value) : value_(std::move(value)) {}  // NOLINT(implicit)

  static Extended infinity() { return Extended(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  /// Throws std::bad_optional_access on infinity.
  const T& value() const { return value_.value(); }

  friend bool operator==(const Extended& a, const Extended& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

  std::string to_string() const;

private:
  Extended() = default;
  std::optional<T> value_;
};

template <class T>
std::string Extended<T>::to_string() const {
  if (is_infinite()) return "inf";
  if constexpr (std::is_same_v<T, Rational>) {
    return value_->get_str();
  } else {
    return std::to_string(*value_);
  }
}

using Order = Extended<int>;
using Valuation = Extended<Rational>;

}  // namespace ctlab

#endif
