#include "frobop/frobenius.hpp"

namespace frobop {
namespace {

// p^s as a checked 64-bit value; level exponents must stay addressable.
std::uint64_t checked_ps(const ContextPtr& ctx, unsigned s) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < s; ++i) {
        if (q > (static_cast<std::uint64_t>(max_exponent) + 1) / ctx->p())
            throw OverflowError("p^s exceeds the exponent range");
        q *= ctx->p();
    }
    return q;
}

} // namespace

FrobDecomposition frob_decompose(const Poly& g, unsigned s) {
    if (s == 0)
        throw DomainError("frob_decompose requires s >= 1");
    const ContextPtr& ctx = g.context();
    std::uint64_t q = checked_ps(ctx, s);

    // Bucket each term by its residue alpha = exps mod p^s.  The quotient
    // (exps - alpha) / p^s indexes the coordinate monomial, and the
    // coefficient carries over unchanged because a^(p^s) = a on F_p.
    std::map<ExpVec, std::vector<Term>> buckets;
    for (const auto& t : g.terms()) {
        ExpVec alpha(t.exps.size());
        ExpVec inner(t.exps.size());
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            alpha[i] = static_cast<std::uint32_t>(t.exps[i] % q);
            inner[i] = static_cast<std::uint32_t>(t.exps[i] / q);
        }
        buckets[std::move(alpha)].push_back({std::move(inner), t.coeff});
    }

    FrobDecomposition dec;
    dec.level = s;
    dec.ctx = ctx;
    for (auto& [alpha, terms] : buckets)
        dec.coords.emplace(alpha, Poly::make(ctx, std::move(terms)));
    return dec;
}

Ideal frobenius_root_ideal(const Poly& g, unsigned s) {
    FrobDecomposition dec = frob_decompose(g, s);
    std::vector<Poly> gens;
    gens.reserve(dec.coords.size());
    for (auto& [alpha, coord] : dec.coords)
        gens.push_back(std::move(coord));
    return Ideal(g.context(), std::move(gens));
}

} // namespace frobop
