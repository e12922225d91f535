#pragma once

#include <cmath>

#include "doctest.h"
#include "oblique/error.hpp"
#include "oblique/linalg.hpp"
#include "oblique/matrix.hpp"
#include "oracles.hpp"

namespace testing {

using oblique::ComplexMatrix;

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return oblique::op_norm(a - b);
}

// Relative distance in the library's mixed sense.
inline double rdist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return dist(a, b) / (1.0 + oblique::op_norm(b));
}

template <class F>
oblique::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const oblique::DomainError& e) {
    return e.kind();
  }
  FAIL("expected a DomainError");
  return oblique::ErrorKind::InvalidArgument;
}

}  // namespace testing
