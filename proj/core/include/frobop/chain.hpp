#ifndef FROBOP_CHAIN_HPP
#define FROBOP_CHAIN_HPP

#include <optional>

#include "frobop/frobenius.hpp"

namespace frobop {

struct ChainLevel {
    unsigned s;
    Ideal ideal; // I_s(f^(p^s - 1)), basis cached
};

// The descending chain I_1(f^(p-1)) >= I_2(f^(p^2-1)) >= ... computed up to
// the first repeat or the level cap.  stabilized_at is the first s with
// I_s = I_(s+1) (the report then also holds level s+1), and is absent when
// the cap ran out first.  degrees_ok records the audit that every stored
// generator has total degree < deg f.
struct ChainReport {
    Poly f;
    std::vector<ChainLevel> levels;
    std::optional<unsigned> stabilized_at;
    std::uint64_t cap = 0;
    bool degrees_ok = true;
};

// Number of monomials of total degree < deg f in d variables, plus one:
// C(deg f - 1 + d, d) + 1.  The chain must repeat within that many levels.
std::uint64_t auto_level_cap(const Poly& f);

// max_level caps how many levels are computed; empty means auto_level_cap.
// f must be nonzero and nonconstant.
ChainReport compute_chain(const Poly& f, std::optional<unsigned> max_level = std::nullopt);

std::optional<unsigned> stabilization_level(const ChainReport& report);

} // namespace frobop

#endif
