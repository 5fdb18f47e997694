#ifndef FROBOP_FROBENIUS_HPP
#define FROBOP_FROBENIUS_HPP

#include <map>

#include "frobop/ideal.hpp"

namespace frobop {

// Coordinates of g in the free basis {x^alpha : 0 <= alpha_i < p^s} of
// F_p[x] over its subring of p^s-th powers:
//   g = sum_alpha coords[alpha]^(p^s) * x^alpha.
// Keys are the residues alpha = exps mod p^s; absent keys mean zero.
struct FrobDecomposition {
    unsigned level = 0;
    ContextPtr ctx;
    std::map<ExpVec, Poly> coords;
};

FrobDecomposition frob_decompose(const Poly& g, unsigned s);

// I_s(g): the ideal generated by the coordinates of g at level s.  It is the
// smallest ideal J with g in J^[p^s], and decreases when g gains factors.
Ideal frobenius_root_ideal(const Poly& g, unsigned s);

} // namespace frobop

#endif
