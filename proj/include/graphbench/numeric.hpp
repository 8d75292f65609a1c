#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace graphbench {

// Numeric payload of a cell value. Values travel as UTF-8 decimal text;
// this class gives them arithmetic. Counts and partial products stay in
// 64-bit integers so parity-sensitive math is exact, ratios promote to
// double. Rendering an integer never produces a decimal point; rendering a
// double uses the shortest round-trip form.
class Numeric {
 public:
  Numeric() = default;

  static Numeric ofInt(int64_t v);
  static Numeric ofFloat(double v);

  // Parses decimal text. Integers are kept exact; anything with a '.', an
  // exponent, or "inf"/"nan" spelling becomes a double. Throws
  // DataFormatError on anything else.
  static Numeric parse(std::string_view text);

  bool integral() const { return integral_; }
  int64_t asInt() const;  // throws DataFormatError when not integral
  double asFloat() const { return integral_ ? static_cast<double>(i_) : f_; }
  bool zero() const;
  bool equals(const Numeric& o) const;

  std::string render() const;

  Numeric plus(const Numeric& o) const;
  Numeric times(const Numeric& o) const;
  Numeric max(const Numeric& o) const;
  Numeric min(const Numeric& o) const;

 private:
  bool integral_ = true;
  int64_t i_ = 0;
  double f_ = 0.0;
};

}  // namespace graphbench
