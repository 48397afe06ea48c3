#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pmvl {

/// The exponent p in [1, inf], with the closed-form cases tagged.
/// Finite(2) is permitted and must agree with Two up to solver tolerance.
/// Finite p above 64 is evaluated through the Infinity branch of p_mean,
/// since |.|^{p-2} under/overflows double precision there.
class Exponent {
 public:
  enum class Kind { One, Two, Infinity, Finite };

  static Exponent one() { return Exponent(Kind::One, 1.0); }
  static Exponent two() { return Exponent(Kind::Two, 2.0); }
  static Exponent infinity() { return Exponent(Kind::Infinity, std::numeric_limits<double>::infinity()); }
  static Exponent finite(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
      throw std::invalid_argument("Exponent::finite requires finite p > 1");
    return Exponent(Kind::Finite, p);
  }

  /// Parses "1", "2", "inf", or a finite decimal exponent.
  static Exponent parse(const std::string& s) {
    if (s == "1") return one();
    if (s == "2") return two();
    if (s == "inf" || s == "infinity" || s == "Inf") return infinity();
    double p = std::stod(s);
    if (p == 1.0) return one();
    if (p == 2.0) return two();
    if (std::isinf(p)) return infinity();
    return finite(p);
  }

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }
  bool is_finite() const { return kind_ != Kind::Infinity; }

  /// Numeric value; +inf for the Infinity tag.
  double value() const { return p_; }

  std::string str() const {
    switch (kind_) {
      case Kind::One: return "1";
      case Kind::Two: return "2";
      case Kind::Infinity: return "inf";
      default: {
        std::string s = std::to_string(p_);
        while (s.size() > 1 && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
      }
    }
  }

 private:
  Exponent(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

}  // namespace pmvl
