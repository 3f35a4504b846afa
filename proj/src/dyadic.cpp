#include "stochalc/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace stochalc {

Dyadic::Dyadic(BigNat numerator, std::uint64_t exponent) : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0) throw std::invalid_argument("dyadic numerator must be non-negative");
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

double Dyadic::to_double() const { return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_)); }

std::string Dyadic::to_string() const { return num_.str() + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::from_string(const std::string& text) {
  auto slash = text.find("/2^");
  if (slash == std::string::npos) throw std::invalid_argument("malformed dyadic: " + text);
  BigNat k(text.substr(0, slash));
  std::uint64_t n = std::stoull(text.substr(slash + 3));
  return {k, n};
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  if (other.exp_ > exp_) {
    num_ <<= static_cast<unsigned>(other.exp_ - exp_);
    exp_ = other.exp_;
    num_ += other.num_;
  } else {
    num_ += other.num_ << static_cast<unsigned>(exp_ - other.exp_);
  }
  normalize();
  return *this;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  BigNat x = a.num_ << static_cast<unsigned>(e - a.exp_);
  BigNat y = b.num_ << static_cast<unsigned>(e - b.exp_);
  if (x < y) throw std::domain_error("dyadic subtraction would be negative");
  return {x - y, e};
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  BigNat x = a.num_ << static_cast<unsigned>(e - a.exp_);
  BigNat y = b.num_ << static_cast<unsigned>(e - b.exp_);
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace stochalc
