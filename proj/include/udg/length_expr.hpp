#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace udg {

/// Symbolic rod length. Keeping lengths symbolic lets edge substitution
/// demand exact length equality without float drift across compositions;
/// the double value is a derived view.
///
///   Unit        1
///   DPow(d, k)  D^k for the dimension-d spindle distance D
///   Chord(d, N) 2 r0 sin(x_N / 2) with x_N = (N-1) alpha mod 2pi
///   Product     product of factors, evaluated left to right
class LengthExpr {
 public:
  enum class Kind : std::uint8_t { Unit, DPow, Chord, Product };

  LengthExpr() : kind_(Kind::Unit) {}

  static LengthExpr unit() { return LengthExpr(); }
  static LengthExpr d_pow(int d, int k);
  static LengthExpr chord_index(int d, long index);
  static LengthExpr product(LengthExpr a, LengthExpr b);

  Kind kind() const { return kind_; }
  int dim() const { return d_; }
  int power() const { return k_; }
  long index() const { return index_; }
  const std::vector<LengthExpr>& factors() const { return factors_; }

  /// Deterministic double evaluation (> 0).
  double value() const;

  bool operator==(const LengthExpr& other) const;
  bool operator!=(const LengthExpr& other) const { return !(*this == other); }

 private:
  Kind kind_;
  int d_ = 0;
  int k_ = 0;
  long index_ = 0;
  std::vector<LengthExpr> factors_;
};

}  // namespace udg
