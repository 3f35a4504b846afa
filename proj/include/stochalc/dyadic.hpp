#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace stochalc {

using BigNat = boost::multiprecision::cpp_int;

// Exact k / 2^n, kept normalized (k odd, or k = 0 and n = 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigNat numerator, std::uint64_t exponent);

  static Dyadic zero() { return {}; }
  static Dyadic one() { return {1, 0}; }
  // 2^-n
  static Dyadic pow2_neg(std::uint64_t n) { return {1, n}; }

  [[nodiscard]] const BigNat& numerator() const { return num_; }
  [[nodiscard]] std::uint64_t exponent() const { return exp_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] double to_double() const;

  // "k/2^n"
  [[nodiscard]] std::string to_string() const;
  static Dyadic from_string(const std::string& text);

  Dyadic& operator+=(const Dyadic& other);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  // Requires a >= b.
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  // Halves the value.
  [[nodiscard]] Dyadic half() const { return {num_, exp_ + 1}; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.num_ == b.num_ && a.exp_ == b.exp_; }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();
  BigNat num_ = 0;
  std::uint64_t exp_ = 0;
};

}  // namespace stochalc
