#include "isolab/special.hpp"

namespace isolab {

Rational binom(const Rational& beta, unsigned j) {
  Rational r(1);
  for (unsigned k = 0; k < j; ++k) {
    r *= beta - Rational(static_cast<long>(k));
    r /= Rational(static_cast<long>(k + 1));
  }
  return r;
}

Rational pochhammer(const Rational& theta, unsigned j) {
  Rational r(1);
  for (unsigned k = 0; k < j; ++k) r *= theta + Rational(static_cast<long>(k));
  return r;
}

}  // namespace isolab
