#include "latsep/rational.hpp"

#include <array>
#include <limits>
#include <ostream>
#include <utility>

#include "latsep/error.hpp"

namespace latsep {
namespace {

using u128 = unsigned __int128;

constexpr __int128 kInt64Min = std::numeric_limits<std::int64_t>::min();
constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

bool fits_int64(__int128 value) { return value >= kInt64Min && value <= kInt64Max; }

u128 magnitude(__int128 value) { return value < 0 ? u128(0) - u128(value) : u128(value); }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Binary gcd; avoids hardware division, which dominates tableau pivots.
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) {
    return b;
  }
  if (b == 0) {
    return a;
  }
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) {
      std::swap(a, b);
    }
    b -= a;
  } while (b != 0);
  return a << shift;
}

std::uint64_t magnitude64(std::int64_t value) {
  return value < 0 ? std::uint64_t(0) - std::uint64_t(value) : std::uint64_t(value);
}

mpz_class to_mpz(std::int64_t value) {
  mpz_class out;
  // mpz_set_si takes a long, which is 64-bit on every supported platform.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpz_set_si(out.get_mpz_t(), static_cast<long>(value));
  return out;
}

bool mpz_fits_int64(const mpz_class& value) { return mpz_fits_slong_p(value.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw InvalidArgument("rational with zero denominator");
  }
  assign_reduced(num, den);
}

Rational::Rational(const mpq_class& value) {
  mpq_class copy(value);
  copy.canonicalize();
  assign_big(copy);
}

void Rational::assign_reduced(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (fits_int64(num) && den <= kInt64Max && num != kInt64Min) {
    const std::uint64_t g = gcd_u64(magnitude64(static_cast<std::int64_t>(num)),
                                    static_cast<std::uint64_t>(den));
    num_ = static_cast<std::int64_t>(num) / static_cast<std::int64_t>(g);
    den_ = static_cast<std::int64_t>(den) / static_cast<std::int64_t>(g);
    big_.reset();
    return;
  }
  u128 g = gcd_u128(magnitude(num), u128(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (fits_int64(num) && fits_int64(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  auto to_mpz128 = [](__int128 v) {
    const u128 m = magnitude(v);
    const std::array<std::uint64_t, 2> limbs{static_cast<std::uint64_t>(m),
                                             static_cast<std::uint64_t>(m >> 64)};
    mpz_class out;
    mpz_import(out.get_mpz_t(), limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
    return v < 0 ? mpz_class(-out) : out;
  };
  mpq_class q(to_mpz128(num), to_mpz128(den));
  assign_big(q);
}

void Rational::assign_big(const mpq_class& value) {
  if (mpz_fits_int64(value.get_num()) && mpz_fits_int64(value.get_den())) {
    num_ = mpz_get_si(value.get_num_mpz_t());
    den_ = mpz_get_si(value.get_den_mpz_t());
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(value);
  }
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) -> mpz_class {
    if (part.empty()) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
    }
    std::string digits(part[0] == '+' ? part.substr(1) : part);
    return mpz_class(digits, 10);
  };
  const auto slash = text.find('/');
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = slash == std::string_view::npos ? mpz_class(1) : parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw ParseError("rational '" + std::string(text) + "' has zero denominator");
  }
  mpq_class q(num, den);
  q.canonicalize();
  Rational out;
  out.assign_big(q);
  return out;
}

int Rational::sign() const {
  if (big_) {
    return sgn(*big_);
  }
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  if (big_) {
    return big_->get_den() == 1;
  }
  return den_ == 1;
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(num_); }

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : to_mpz(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) {
    return *big_;
  }
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

std::int64_t Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) {
      --q;
    }
    return q;
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!mpz_fits_int64(q)) {
    throw ArithmeticOverflow("floor of rational outside 64-bit range");
  }
  return mpz_get_si(q.get_mpz_t());
}

std::int64_t Rational::ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ > 0)) {
      ++q;
    }
    return q;
  }
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!mpz_fits_int64(q)) {
    throw ArithmeticOverflow("ceiling of rational outside 64-bit range");
  }
  return mpz_get_si(q.get_mpz_t());
}

double Rational::to_double() const {
  if (big_) {
    return big_->get_d();
  }
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) {
    return big_->get_str(10);
  }
  if (den_ == 1) {
    return std::to_string(num_);
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) {
    return Rational(mpq_class(-*big_));
  }
  Rational out;
  out.assign_reduced(-static_cast<__int128>(num_), den_);
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      std::int64_t sum;
      if (!__builtin_add_overflow(num_, rhs.num_, &sum)) {
        if (den_ == 1) {
          num_ = sum;
        } else {
          assign_reduced(sum, den_);
        }
        return *this;
      }
    }
    const std::uint64_t g = gcd_u64(std::uint64_t(den_), std::uint64_t(rhs.den_));
    const __int128 lhs_scale = rhs.den_ / static_cast<std::int64_t>(g);
    const __int128 rhs_scale = den_ / static_cast<std::int64_t>(g);
    assign_reduced(num_ * lhs_scale + rhs.num_ * rhs_scale, den_ * lhs_scale);
    return *this;
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_ && rhs.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational neg;
    neg.num_ = -rhs.num_;
    neg.den_ = rhs.den_;
    return *this += neg;
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t product;
      if (!__builtin_mul_overflow(num_, rhs.num_, &product)) {
        num_ = product;
        return *this;
      }
    }
    // Cross-reduce first so the products stay small and already coprime.
    const std::int64_t g1 = static_cast<std::int64_t>(gcd_u64(magnitude64(num_), std::uint64_t(rhs.den_)));
    const std::int64_t g2 = static_cast<std::int64_t>(gcd_u64(magnitude64(rhs.num_), std::uint64_t(den_)));
    const __int128 num = static_cast<__int128>(num_ / g1) * (rhs.num_ / g2);
    const __int128 den = static_cast<__int128>(den_ / g2) * (rhs.den_ / g1);
    if (fits_int64(num) && fits_int64(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
    } else {
      assign_reduced(num, den);
    }
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw InvalidArgument("division by zero rational");
  }
  if (!big_ && !rhs.big_ && rhs.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational inv;
    inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    return *this *= inv;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  if (lhs.big_ && rhs.big_) {
    return *lhs.big_ == *rhs.big_;
  }
  // Normalized: a small value never equals a big one.
  return false;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (!lhs.big_ && !rhs.big_) {
    const __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
    const __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
    return l <=> r;
  }
  const int c = cmp(lhs.to_mpq(), rhs.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::hash() const {
  if (big_) {
    return std::hash<std::string>{}(big_->get_str(16));
  }
  std::size_t h = std::hash<std::int64_t>{}(num_);
  h ^= std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::ostream& operator<<(std::ostream& out, const Rational& value) { return out << value.to_string(); }

}  // namespace latsep
