#include "kni/ops/fixtures.hpp"

namespace kni::ops {

DiffOp printed_order4_operator(LastDenominator reading) {
  const RatFn x = RatFn::var(), i(CycNum::i());
  const RatFn c = reading == LastDenominator::AsPrinted ? RatFn(1) : i;
  const RatFn a3 = RatFn(2) * (RatFn(3) * i - RatFn(5) * x) / (x * (i - x));
  const RatFn a2 = (RatFn(-3) * x + i) * (RatFn(-29) * x + RatFn(23) * i) / (RatFn(4) * (x - i).pow(2) * x.pow(2));
  const RatFn a1 = -(i - RatFn(3) * x) * (RatFn(7) * x + i) / (RatFn(4) * (x - i).pow(2) * x.pow(3));
  const RatFn a0 = (RatFn(3) * x + i) / (RatFn(4) * (x - c).pow(3) * x.pow(4));
  return DiffOp(Chart::x1(), {a0, a1, a2, a3, RatFn(1)});
}

RatFn y0_log_derivative() {
  const RatFn x = RatFn::var();
  return (x - RatFn(CycNum::i())).inverse() - (RatFn(2) * x).inverse();
}

RatFn hypergeometric_gauge(const CycNum& e) {
  const RatFn x = RatFn::var(), i(CycNum::i());
  return (RatFn(2) * x).inverse() + RatFn(e * CycNum::i()) / (RatFn(1) + i * x);
}

}  // namespace kni::ops
