#include "frobop/chain.hpp"

namespace frobop {
namespace {

std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t m = n - k + i;
        // r * m / i is exact (it is C(n-k+i, i)); guard the product
        if (r > UINT64_MAX / m)
            throw OverflowError("level cap exceeds the 64-bit range");
        r = r * m / i;
    }
    return r;
}

} // namespace

std::uint64_t auto_level_cap(const Poly& f) {
    if (f.is_zero() || f.is_constant())
        throw DomainError("the chain is defined for nonconstant f");
    std::uint64_t deg = static_cast<std::uint64_t>(f.total_degree());
    std::uint64_t d = f.context()->nvars();
    std::uint64_t c = checked_binomial(deg - 1 + d, d);
    if (c == UINT64_MAX)
        throw OverflowError("level cap exceeds the 64-bit range");
    return c + 1;
}

ChainReport compute_chain(const Poly& f, std::optional<unsigned> max_level) {
    std::uint64_t cap = auto_level_cap(f); // also validates f
    std::uint64_t limit = max_level ? static_cast<std::uint64_t>(*max_level) : cap;
    if (limit == 0)
        throw DomainError("max_level must be at least 1");

    ChainReport report;
    report.f = f;
    report.cap = cap;

    std::int64_t deg_f = f.total_degree();
    Poly fp1 = pow_ps_minus_one(f, 1); // f^(p-1)
    Poly g = fp1;                      // f^(p^s - 1) for the current s
    for (unsigned s = 1; static_cast<std::uint64_t>(s) <= limit; ++s) {
        if (s > 1)
            g = frobenius_power(g, 1) * fp1;
        Ideal ideal = frobenius_root_ideal(g, s);
        for (const auto& gen : ideal.gens()) {
            // every coordinate of f^(p^s - 1) has degree < deg f
            if (gen.total_degree() >= deg_f)
                report.degrees_ok = false;
        }
        report.levels.push_back({s, std::move(ideal)});
        if (report.levels.size() >= 2) {
            const Ideal& prev = report.levels[report.levels.size() - 2].ideal;
            const Ideal& curr = report.levels.back().ideal;
            if (!curr.subset_of(prev))
                throw Error("chain failed to descend");
            if (ideal_equal(prev, curr)) {
                report.stabilized_at = s - 1;
                break;
            }
        }
    }
    return report;
}

std::optional<unsigned> stabilization_level(const ChainReport& report) {
    return report.stabilized_at;
}

} // namespace frobop
