#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace latsep {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator both fit in 64 bits are stored
/// inline and combined with 128-bit intermediates; anything larger is held
/// as a GMP rational. The representation is normalized after every
/// operation, so two equal values always share the same representation.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  /// Parses "p", "-p", or "p/q" (q nonzero). Throws ParseError on bad input.
  static Rational parse(std::string_view text);

  [[nodiscard]] int sign() const;
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_small() const { return big_ == nullptr; }

  /// Numerator and denominator as GMP integers (always valid).
  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;
  [[nodiscard]] mpq_class to_mpq() const;

  /// Floor / ceiling; throws ArithmeticOverflow when outside int64.
  [[nodiscard]] std::int64_t floor() const;
  [[nodiscard]] std::int64_t ceil() const;

  /// Lossy conversion, used only for display.
  [[nodiscard]] double to_double() const;

  /// "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  [[nodiscard]] std::size_t hash() const;

 private:
  void assign_reduced(__int128 num, __int128 den);
  void assign_big(const mpq_class& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  // Immutable once built; sharing keeps copies cheap.
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& out, const Rational& value);

inline Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

}  // namespace latsep

template <>
struct std::hash<latsep::Rational> {
  std::size_t operator()(const latsep::Rational& value) const noexcept { return value.hash(); }
};
