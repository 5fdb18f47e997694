#include "frobop/oracle.hpp"

#include <map>

namespace frobop {
namespace oracle {
namespace {

// Independent term-list arithmetic: plain maps and % only, no sharing with
// the production Poly routines beyond the term representation itself.
using TermMap = std::map<ExpVec, std::uint64_t>;

TermMap to_map(const Poly& f) {
    TermMap m;
    for (const auto& t : f.terms())
        m.emplace(t.exps, t.coeff);
    return m;
}

Poly from_map(const ContextPtr& ctx, const TermMap& m) {
    std::vector<Term> terms;
    terms.reserve(m.size());
    for (const auto& [e, c] : m)
        terms.push_back({e, c});
    return Poly::make(ctx, std::move(terms));
}

void naive_add_into(TermMap& acc, const TermMap& g, std::uint64_t p) {
    for (const auto& [e, c] : g) {
        std::uint64_t& slot = acc[e];
        slot = (slot + c) % p;
        if (slot == 0)
            acc.erase(e);
    }
}

TermMap naive_mul(const TermMap& a, const TermMap& b, std::uint64_t p) {
    TermMap out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            ExpVec e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                std::uint64_t sum = static_cast<std::uint64_t>(ea[i]) + eb[i];
                if (sum > max_exponent)
                    throw OverflowError("exponent overflow");
                e[i] = static_cast<std::uint32_t>(sum);
            }
            std::uint64_t& slot = out[e];
            slot = (slot + ca * cb % p) % p;
            if (slot == 0)
                out.erase(e);
        }
    }
    return out;
}

TermMap naive_pow(const TermMap& base, std::uint64_t n, const ContextPtr& ctx) {
    TermMap acc;
    acc.emplace(ExpVec(ctx->nvars(), 0), 1 % ctx->p());
    for (std::uint64_t i = 0; i < n; ++i)
        acc = naive_mul(acc, base, ctx->p());
    return acc;
}

} // namespace

Ideal ds_image(const Poly& f, unsigned s, std::uint64_t limit) {
    if (s == 0)
        throw DomainError("ds_image requires s >= 1");
    const ContextPtr& ctx = f.context();
    std::uint64_t q = 1;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < s; ++i) {
        q *= ctx->p();
        for (std::size_t v = 0; v < ctx->nvars(); ++v) {
            count *= ctx->p();
            if (count > limit)
                throw DomainError("ds_image enumeration exceeds the limit");
        }
    }

    std::vector<Poly> images;
    ExpVec b(ctx->nvars(), 0);
    for (;;) {
        images.push_back(apply_divided_power(b, f));
        std::size_t i = 0;
        while (i < b.size()) {
            if (static_cast<std::uint64_t>(b[i]) + 1 < q) {
                ++b[i];
                break;
            }
            b[i] = 0;
            ++i;
        }
        if (i == b.size())
            break;
    }
    return Ideal(ctx, std::move(images));
}

Poly recompose(const FrobDecomposition& dec) {
    const ContextPtr& ctx = dec.ctx;
    if (!ctx)
        throw DomainError("decomposition has no context");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < dec.level; ++i)
        q *= ctx->p();

    TermMap total;
    for (const auto& [alpha, coord] : dec.coords) {
        TermMap part = naive_pow(to_map(coord), q, ctx);
        TermMap shifted;
        for (const auto& [e, c] : part) {
            ExpVec moved(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                std::uint64_t sum = static_cast<std::uint64_t>(e[i]) + alpha[i];
                if (sum > max_exponent)
                    throw OverflowError("exponent overflow");
                moved[i] = static_cast<std::uint32_t>(sum);
            }
            shifted.emplace(std::move(moved), c);
        }
        naive_add_into(total, shifted, ctx->p());
    }
    return from_map(ctx, total);
}

Poly pow(const Poly& f, std::uint64_t n) {
    return from_map(f.context(), naive_pow(to_map(f), n, f.context()));
}

} // namespace oracle
} // namespace frobop
