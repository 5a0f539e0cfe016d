#include "udg/length_expr.hpp"

#include <cmath>

#include "udg/constants.hpp"

namespace udg {

LengthExpr LengthExpr::d_pow(int d, int k) {
  dimension_constants(d);  // validates d
  LengthExpr e;
  e.kind_ = Kind::DPow;
  e.d_ = d;
  e.k_ = k;
  return e;
}

LengthExpr LengthExpr::chord_index(int d, long index) {
  dimension_constants(d);
  LengthExpr e;
  e.kind_ = Kind::Chord;
  e.d_ = d;
  e.index_ = index;
  return e;
}

LengthExpr LengthExpr::product(LengthExpr a, LengthExpr b) {
  LengthExpr e;
  e.kind_ = Kind::Product;
  e.factors_.push_back(std::move(a));
  e.factors_.push_back(std::move(b));
  return e;
}

double LengthExpr::value() const {
  switch (kind_) {
    case Kind::Unit:
      return 1.0;
    case Kind::DPow: {
      const double D = dimension_constants(d_).D;
      double v = 1.0;
      for (int i = 0; i < k_; ++i) v *= D;
      return v;
    }
    case Kind::Chord: {
      const DimensionConstants c = dimension_constants(d_);
      const double x = std::fmod(static_cast<double>(index_ - 1) * c.alpha, kTwoPi);
      return 2.0 * c.r0 * std::sin(x / 2.0);
    }
    case Kind::Product: {
      double v = 1.0;
      for (const LengthExpr& f : factors_) v *= f.value();
      return v;
    }
  }
  return 1.0;
}

bool LengthExpr::operator==(const LengthExpr& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Unit: return true;
    case Kind::DPow: return d_ == other.d_ && k_ == other.k_;
    case Kind::Chord: return d_ == other.d_ && index_ == other.index_;
    case Kind::Product: return factors_ == other.factors_;
  }
  return false;
}

}  // namespace udg
