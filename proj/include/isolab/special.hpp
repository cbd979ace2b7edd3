#pragma once

#include "isolab/rational.hpp"

namespace isolab {

// Generalized binomial coefficient beta(beta-1)...(beta-j+1)/j!.
Rational binom(const Rational& beta, unsigned j);

// Rising factorial theta(theta+1)...(theta+j-1).
Rational pochhammer(const Rational& theta, unsigned j);

}  // namespace isolab
