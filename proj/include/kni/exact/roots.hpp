#pragma once

#include <complex>
#include <vector>

#include "kni/exact/poly.hpp"

namespace kni::exact {

struct FieldRoot {
  CycNum value;
  int multiplicity = 1;
};

/// Roots of p lying in Q(zeta), each verified exactly (p(root) = 0).
///
/// Candidates come from numeric roots of the eight Galois conjugates of p,
/// lifted to coordinates by inverting the embedding matrix and rationalized
/// by continued fractions; only exactly verified candidates are returned.
/// Roots with very large coordinate denominators can be missed.
std::vector<FieldRoot> roots_in_field(const Poly& p);

/// Complex roots of p under the embedding zeta -> exp(i*pi*k/12).
std::vector<std::complex<double>> numeric_roots(const Poly& p, int embedding = 1);

}  // namespace kni::exact
