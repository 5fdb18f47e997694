#ifndef FROBOP_IDEAL_HPP
#define FROBOP_IDEAL_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "frobop/poly.hpp"

namespace frobop {

// Reduced Groebner basis of an ideal plus, for each basis element, an exact
// representation in terms of the ideal's stored generators:
//   basis[i] = sum_j reps[i][j] * gens[j].
struct GroebnerData {
    std::vector<Poly> basis;
    std::vector<std::vector<Poly>> reps;
};

// Finitely generated ideal of F_p[vars].  Generators are kept nonzero and
// deduplicated in construction order.  The reduced Groebner basis (monic,
// autoreduced, sorted by leading monomial) is computed once on first use and
// shared between copies; the fill is guarded so concurrent readers race-free
// observe one canonical basis.
class Ideal {
public:
    Ideal(ContextPtr ctx, std::vector<Poly> gens);

    static Ideal zero(ContextPtr ctx);
    static Ideal unit(ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Poly>& gens() const { return gens_; }

    // Canonical form: two ideals are equal iff their bases are identical.
    const std::vector<Poly>& groebner() const;

    // Remainder of full division by the reduced basis; unique given the
    // context order.  The zero ideal leaves h untouched.
    Poly normal_form(const Poly& h) const;

    bool contains(const Poly& h) const;
    bool contains_one() const;
    bool subset_of(const Ideal& other) const;

    // Cofactors r with h = sum_j r[j] * gens()[j], or nullopt when h is not
    // a member.  The recombination is re-multiplied and checked before the
    // result is returned.
    std::optional<std::vector<Poly>> divide_with_cofactors(const Poly& h) const;

    // Pairwise products of generators.
    Ideal product(const Ideal& other) const;

    // Ideal generated by g^(p^s) for each generator g.  When this ideal's
    // basis is already cached, the result is seeded with the term-wise
    // Frobenius power of that basis (the Frobenius image of a reduced basis
    // is again one); the seed is spot-checked like any cached basis.
    Ideal bracket_power(unsigned s) const;

private:
    struct Cache;

    const GroebnerData& data() const;
    void seed_cache(GroebnerData data) const;
    void validate_cache() const;

    ContextPtr ctx_;
    std::vector<Poly> gens_;
    std::shared_ptr<Cache> cache_;
};

bool ideal_equal(const Ideal& a, const Ideal& b);

} // namespace frobop

#endif
