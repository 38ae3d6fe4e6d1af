#pragma once

#include <mtspec/abelian.hpp>
#include <mtspec/error.hpp>
#include <mtspec/integer.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace mtspec {

/// A nonzero complex number of the form q · exp(2πi t) with q a positive
/// rational and t ∈ Q/Z. Closed under products, quotients and integer powers,
/// which is all the invertible theories here ever need.
class ExactUnit {
 public:
  ExactUnit() = default;

  explicit ExactUnit(const Rational& value) {
    if (value == 0) throw Error(ErrorKind::InvalidArgument, "zero is not a unit");
    modulus_ = abs(value);
    turn_ = value < 0 ? Rational(1, 2) : Rational(0);
  }
  explicit ExactUnit(long long value) : ExactUnit(Rational(value)) {}

  static ExactUnit root_of_unity(const Integer& order, const Integer& power) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "root of unity order must be positive");
    return ExactUnit(Rational(1), Rational(power, order));
  }

  static ExactUnit from_root_tuple_entry(const RootTuple& t, std::size_t i) {
    return root_of_unity(t.order, t.powers.at(i));
  }

  const Rational& modulus() const noexcept { return modulus_; }
  /// Argument as a fraction of a full turn, in [0, 1).
  const Rational& turn() const noexcept { return turn_; }

  bool is_real() const { return turn_ == 0 || turn_ == Rational(1, 2); }
  Rational to_rational() const {
    if (!is_real()) throw Error(ErrorKind::InvalidArgument, "value is not real");
    return turn_ == 0 ? modulus_ : Rational(-modulus_);
  }
  /// Order of the root-of-unity part (1 for positive rationals).
  Integer root_order() const { return boost::multiprecision::denominator(turn_); }
  Integer root_power() const { return boost::multiprecision::numerator(turn_); }

  ExactUnit inverse() const { return ExactUnit(1 / modulus_, -turn_); }

  ExactUnit pow(const Integer& e) const {
    Rational m = 1;
    Rational base = e < 0 ? Rational(1 / modulus_) : modulus_;
    Integer n = abs(e);
    while (n > 0) {
      if ((n & 1) != 0) m *= base;
      base *= base;
      n >>= 1;
    }
    return ExactUnit(m, turn_ * Rational(e));
  }

  std::complex<double> to_complex() const {
    double r = static_cast<double>(modulus_);
    double angle = 2.0 * std::numbers::pi * static_cast<double>(turn_);
    return std::polar(r, angle);
  }

  /// "27/2", "-3", "zeta6^5", "2*zeta6" (ascii) or with ζ₆⁵ / · (unicode).
  std::string to_string(bool unicode = false) const {
    if (is_real()) return mtspec::to_string(to_rational());
    std::string root = root_string(root_order(), root_power(), unicode);
    if (modulus_ == 1) return root;
    return mtspec::to_string(modulus_) + (unicode ? "·" : "*") + root;
  }

  static std::string root_string(const Integer& order, const Integer& power, bool unicode) {
    if (!unicode) return "zeta" + order.str() + (power == 1 ? "" : "^" + power.str());
    return "ζ" + subscript(order.str()) + (power == 1 ? "" : superscript(power.str()));
  }

  static std::string superscript(const std::string& digits) {
    static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    for (char c : digits) out += c == '-' ? std::string("⁻") : std::string(sup[c - '0']);
    return out;
  }
  static std::string subscript(const std::string& digits) {
    static const char* sub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string out;
    for (char c : digits) out += c == '-' ? std::string("₋") : std::string(sub[c - '0']);
    return out;
  }

  /// Accepts a nonzero rational ("3", "-27/2"), a root of unity ("zeta6",
  /// "zeta6^5") or a product "q*zeta6^5".
  static ExactUnit parse(std::string_view text) {
    auto fail = [&]() { return Error(ErrorKind::ParseError, "bad exact value '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    std::size_t star = text.find('*');
    if (star != std::string_view::npos)
      return parse(text.substr(0, star)) * parse(text.substr(star + 1));
    if (text.starts_with("zeta")) {
      std::string_view rest = text.substr(4);
      std::size_t caret = rest.find('^');
      std::string order(rest.substr(0, caret));
      std::string power = caret == std::string_view::npos ? "1" : std::string(rest.substr(caret + 1));
      if (order.empty() || power.empty() || !all_digits(order) || !all_digits(power, true)) throw fail();
      return root_of_unity(Integer(order), Integer(power));
    }
    std::string s(text);
    std::size_t slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!all_digits(num, true) || !all_digits(den) || Integer(den) == 0) throw fail();
    Rational q{Integer(num), Integer(den)};
    if (q == 0) throw Error(ErrorKind::InvalidArgument, "zero is not a unit");
    return ExactUnit(q);
  }

  friend ExactUnit operator*(const ExactUnit& a, const ExactUnit& b) {
    return ExactUnit(a.modulus_ * b.modulus_, a.turn_ + b.turn_);
  }
  friend ExactUnit operator/(const ExactUnit& a, const ExactUnit& b) { return a * b.inverse(); }
  friend bool operator==(const ExactUnit&, const ExactUnit&) = default;

 private:
  ExactUnit(Rational modulus, Rational turn) : modulus_(std::move(modulus)), turn_(std::move(turn)) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Integer num = numerator(turn_);
    Integer den = denominator(turn_);
    turn_ = Rational(floor_mod(num, den), den);
  }

  static bool all_digits(const std::string& s, bool allow_sign = false) {
    std::size_t start = allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start >= s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  Rational modulus_ = 1;
  Rational turn_ = 0;
};

/// base^exponent kept symbolic, with the exact value available on demand.
struct PowerFactor {
  std::string symbol;
  ExactUnit base;
  Integer exponent;

  friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

struct ExactValue {
  std::vector<PowerFactor> factors;

  ExactUnit value() const {
    ExactUnit v;
    for (const PowerFactor& f : factors) v = v * f.base.pow(f.exponent);
    return v;
  }

  friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

}  // namespace mtspec
