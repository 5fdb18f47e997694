#ifndef FROBOP_POLY_HPP
#define FROBOP_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobop/context.hpp"

namespace frobop {

// Exponent vector of a monomial; one entry per context variable.
// Components stay <= max_exponent so sums during multiplication cannot wrap.
using ExpVec = std::vector<std::uint32_t>;

inline constexpr std::uint32_t max_exponent = 0x7fffffffu;

std::uint64_t exps_degree(const ExpVec& e);
ExpVec exps_add(const ExpVec& a, const ExpVec& b); // checked
ExpVec exps_sub(const ExpVec& a, const ExpVec& b); // pre: b divides a
ExpVec exps_lcm(const ExpVec& a, const ExpVec& b);
bool exps_divides(const ExpVec& a, const ExpVec& b); // a_i <= b_i for all i
ExpVec exps_scale(const ExpVec& e, std::uint64_t q);  // checked
bool exps_coprime(const ExpVec& a, const ExpVec& b);

// Strict a < b in the given order.  grevlex: smaller total degree first,
// ties broken by the rightmost difference, larger entry losing.  lex:
// leftmost difference decides.
bool monomial_less(const ExpVec& a, const ExpVec& b, MonomialOrder order);

struct Term {
    ExpVec exps;
    FieldScalar coeff;
};

// Sparse polynomial over F_p.  Terms are kept sorted ascending in the
// context order with nonzero coefficients in [1, p); the leading term is
// terms().back().
class Poly {
public:
    Poly() = default;

    static Poly zero(ContextPtr ctx);
    static Poly constant(ContextPtr ctx, std::uint64_t value);
    static Poly variable(ContextPtr ctx, std::size_t index);
    static Poly monomial(ContextPtr ctx, ExpVec exps, std::uint64_t coeff);
    // Normalizes an arbitrary term list: sorts, merges, drops zeros.
    static Poly make(ContextPtr ctx, std::vector<Term> terms);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || exps_degree(terms_.back().exps) == 0; }

    // -1 for the zero polynomial.
    std::int64_t total_degree() const;

    const Term& leading_term() const; // pre: nonzero
    FieldScalar leading_coeff() const;
    const ExpVec& leading_monomial() const;

    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator-() const;
    Poly operator*(const Poly& other) const;
    bool operator==(const Poly& other) const;
    bool operator!=(const Poly& other) const { return !(*this == other); }

    Poly scaled(FieldScalar c) const;
    Poly monic() const; // pre: nonzero
    // this * c * x^e, exact and order preserving.
    Poly times_monomial(const ExpVec& e, FieldScalar c) const;

    // Canonical text form: terms in descending context order, coefficients
    // in [1, p), '^' for powers and explicit '*'.
    std::string str() const;

private:
    ContextPtr ctx_;
    std::vector<Term> terms_;
};

// f^n by repeated squaring (production path; the oracle has its own).
Poly poly_pow(const Poly& f, std::uint64_t n);

// Term-wise Frobenius: coefficients to the p^s, exponents times p^s.
// Coefficients are fixed points because a^p = a on F_p.
Poly frobenius_power(const Poly& f, unsigned s);

// f^(p^s - 1) through f^(p^s - 1) = (f^(p^(s-1) - 1))^p * f^(p-1).
Poly pow_ps_minus_one(const Poly& f, unsigned s);

// The divided power operator D_b = prod_i (1/b_i!) d^(b_i)/dx_i^(b_i):
// sends x^e to C(e, b) x^(e-b) with C evaluated digit-wise mod p.
Poly apply_divided_power(const ExpVec& b, const Poly& f);

// Quotient of f by g when the division is exact, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

} // namespace frobop

#endif
