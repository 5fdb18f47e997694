#ifndef FROBOP_FIELD_HPP
#define FROBOP_FIELD_HPP

#include <cstdint>

#include "frobop/errors.hpp"

namespace frobop {

// A prime field element is a plain residue in [0, p).  The modulus lives in
// the PrimeField (and, one level up, in the RingContext) that produced it.
using FieldScalar = std::uint64_t;

bool is_prime(std::uint64_t n);

// Arithmetic mod a prime p.  p is capped at 2^32 - 1 so that a*b of two
// reduced residues never overflows the uint64_t intermediate.
class PrimeField {
public:
    static constexpr std::uint64_t max_modulus = 0xffffffffull;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t p() const { return p_; }

    FieldScalar reduce(std::uint64_t v) const { return v % p_; }
    FieldScalar reduce_signed(std::int64_t v) const;

    FieldScalar add(FieldScalar a, FieldScalar b) const;
    FieldScalar sub(FieldScalar a, FieldScalar b) const;
    FieldScalar mul(FieldScalar a, FieldScalar b) const;
    FieldScalar neg(FieldScalar a) const;
    FieldScalar pow(FieldScalar a, std::uint64_t e) const;

    // Multiplicative inverse; throws DivisionByZero on 0.
    FieldScalar inv(FieldScalar a) const;

    // The unique b with b^p = a.  Frobenius is the identity on F_p.
    FieldScalar pth_root(FieldScalar a) const;

private:
    std::uint64_t p_;
};

// C(n, k) mod p by Lucas: the product of the binomials of the base-p digits.
// Zero as soon as some digit of k exceeds the matching digit of n.
FieldScalar lucas_binomial(std::uint64_t n, std::uint64_t k, const PrimeField& field);

} // namespace frobop

#endif
