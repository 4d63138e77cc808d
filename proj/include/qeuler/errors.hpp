#pragma once

#include <stdexcept>
#include <string>

namespace qeuler {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division by an exact zero (rational or rational function).
struct zero_division_error : error {
    using error::error;
};

// Evaluation of a rational function at a root of its denominator.
struct pole_error : error {
    using error::error;
};

// Bernstein index with k > n.
struct index_error : error {
    using error::error;
};

// Wrong number of samples handed to the Bernstein operator.
struct arity_error : error {
    using error::error;
};

// Parameter outside the admissible domain (even p, |1-q0|_p = 1, u = 1, ...).
struct domain_error : error {
    using error::error;
};

// Rational whose denominator is divisible by p cannot be embedded in Z/p^M.
struct non_unit_error : error {
    using error::error;
};

// Identity parameters violate the identity's side conditions. This is not
// the same thing as the identity failing.
struct precondition_error : error {
    using error::error;
};

}  // namespace qeuler
