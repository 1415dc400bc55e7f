#pragma once

#include "kni/ops/diffop.hpp"

namespace kni::ops {

/// How to read the denominator of the order-0 coefficient of the displayed
/// order-4 operator: literally 4 (x1 - 1)^3 x1^4, or 4 (x1 - i)^3 x1^4.
enum class LastDenominator { AsPrinted, ReadWithI };

/// The displayed order-4 operator in the x1 chart:
///   D^4 + 2(3i - 5x)/(x(i - x)) D^3 + (-3x + i)(-29x + 23i)/(4(x - i)^2 x^2) D^2
///       - (i - 3x)(7x + i)/(4(x - i)^2 x^3) D + (3x + i)/(4(x - c)^3 x^4)
DiffOp printed_order4_operator(LastDenominator reading);

/// log-derivative of y0 = (i - x1)/sqrt(x1): 1/(x1 - i) - 1/(2 x1).
RatFn y0_log_derivative();

/// Gauge r = 1/(2 x1) + e i/(1 + i x1) stripping sqrt(x1) (1 + i x1)^e.
RatFn hypergeometric_gauge(const CycNum& e);

}  // namespace kni::ops
