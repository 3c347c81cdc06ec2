#pragma once

#include <gmpxx.h>
#include <string>

namespace qha {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) through arithmetic; anything built from raw strings
// goes through scalar_from_string which canonicalizes explicitly.
using Scalar = mpq_class;

// Accepts "p" or "p/q" with optional leading minus, q > 0 after
// canonicalization. Throws std::invalid_argument on anything else.
Scalar scalar_from_string(const std::string& s);

// Inverse of scalar_from_string: "p" when the denominator is 1, else "p/q".
std::string scalar_to_string(const Scalar& x);

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

}  // namespace qha
