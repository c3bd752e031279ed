#pragma once

#include <string>

#include "qforge/numeric.hpp"

namespace qf {

// Square class of a nonzero rational, represented by its canonical
// sign-carrying squarefree integer. The trivial class is 1; the class of a
// product is the product of classes computed in the same representation.
struct SquareClass {
  Integer rep = 1;

  bool trivial() const { return rep == 1; }
  bool operator==(const SquareClass& o) const { return rep == o.rep; }
};

SquareClass class_product(const SquareClass& a, const SquareClass& b);

// Squarefree s with r = s * (rational square); sign(s) = sign(r).
// Zero input is the degenerate color and is rejected.
SquareClass squarefree_part(const Rational& r);

struct SqrtClass {
  Integer d;   // squarefree, sign-carrying
  Rational s;  // > 0
};

// r = d * s^2 exactly; sqrt(r) is rational iff d = 1, otherwise it lives
// in Q(sqrt(d)).
SqrtClass rational_sqrt_class(const Rational& r);

// Square test without factorization (numerator and denominator of a
// canonical rational are coprime, so both must be perfect squares).
bool is_rational_square(const Rational& r);

std::string square_class_str(const SquareClass& c);

}  // namespace qf
