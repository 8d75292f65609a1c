#include "graphbench/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "graphbench/errors.hpp"

namespace graphbench {

Numeric Numeric::ofInt(int64_t v) {
  Numeric n;
  n.integral_ = true;
  n.i_ = v;
  return n;
}

Numeric Numeric::ofFloat(double v) {
  Numeric n;
  n.integral_ = false;
  n.f_ = v;
  return n;
}

Numeric Numeric::parse(std::string_view text) {
  if (text.empty()) throw DataFormatError("numeric value is empty");
  bool floaty = false;
  for (char c : text) {
    if (c == '.' || c == 'e' || c == 'E' || c == 'n' || c == 'N' || c == 'i' ||
        c == 'I') {
      floaty = true;
      break;
    }
  }
  if (!floaty) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size())
      return ofInt(v);
    // fall through: could be an integer too wide for int64, treat as double
  }
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw DataFormatError("value does not parse as a number: '" +
                          std::string(text) + "'");
  return ofFloat(d);
}

int64_t Numeric::asInt() const {
  if (!integral_)
    throw DataFormatError("expected an integer value, got " + render());
  return i_;
}

bool Numeric::zero() const { return integral_ ? i_ == 0 : f_ == 0.0; }

bool Numeric::equals(const Numeric& o) const {
  if (integral_ && o.integral_) return i_ == o.i_;
  return asFloat() == o.asFloat();
}

std::string Numeric::render() const {
  if (integral_) return std::to_string(i_);
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, f_);
  if (ec != std::errc()) throw DataFormatError("unrenderable double");
  return std::string(buf, ptr);
}

Numeric Numeric::plus(const Numeric& o) const {
  if (integral_ && o.integral_) return ofInt(i_ + o.i_);
  return ofFloat(asFloat() + o.asFloat());
}

Numeric Numeric::times(const Numeric& o) const {
  if (integral_ && o.integral_) return ofInt(i_ * o.i_);
  return ofFloat(asFloat() * o.asFloat());
}

Numeric Numeric::max(const Numeric& o) const {
  if (integral_ && o.integral_) return ofInt(i_ > o.i_ ? i_ : o.i_);
  return ofFloat(std::fmax(asFloat(), o.asFloat()));
}

Numeric Numeric::min(const Numeric& o) const {
  if (integral_ && o.integral_) return ofInt(i_ < o.i_ ? i_ : o.i_);
  return ofFloat(std::fmin(asFloat(), o.asFloat()));
}

}  // namespace graphbench
