#ifndef FROBOP_ORACLE_HPP
#define FROBOP_ORACLE_HPP

#include "frobop/frobenius.hpp"

namespace frobop {
namespace oracle {

// Brute-force checks used to pin down the production routines in tests.
// They deliberately avoid the production shortcuts: multiplication here is
// a fresh schoolbook routine, powers are repeated multiplication, and the
// image of D^(s) is enumerated term by term.

// The ideal D^(s) . f, from scratch: apply every divided power D_b with
// 0 <= b_i < p^s to f and take the ideal those images generate.  Refuses to
// enumerate more than `limit` operators.
Ideal ds_image(const Poly& f, unsigned s, std::uint64_t limit = 4096);

// Reassembles sum_alpha coords[alpha]^(p^s) * x^alpha by naive arithmetic.
Poly recompose(const FrobDecomposition& dec);

// f^n by n-fold naive multiplication.
Poly pow(const Poly& f, std::uint64_t n);

} // namespace oracle
} // namespace frobop

#endif
