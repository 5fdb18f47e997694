#include "frobop/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace frobop {

std::uint64_t exps_degree(const ExpVec& e) {
    std::uint64_t d = 0;
    for (auto v : e)
        d += v;
    return d;
}

namespace {

std::uint32_t checked_exp(std::uint64_t v) {
    if (v > max_exponent)
        throw OverflowError("exponent overflow");
    return static_cast<std::uint32_t>(v);
}

} // namespace

ExpVec exps_add(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = checked_exp(static_cast<std::uint64_t>(a[i]) + b[i]);
    return r;
}

ExpVec exps_sub(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

ExpVec exps_lcm(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

bool exps_divides(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

ExpVec exps_scale(const ExpVec& e, std::uint64_t q) {
    ExpVec r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        r[i] = checked_exp(static_cast<std::uint64_t>(e[i]) * q);
    return r;
}

bool exps_coprime(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0)
            return false;
    return true;
}

bool monomial_less(const ExpVec& a, const ExpVec& b, MonomialOrder order) {
    if (order == MonomialOrder::lex) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] < b[i];
        return false;
    }
    std::uint64_t da = exps_degree(a), db = exps_degree(b);
    if (da != db)
        return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] > b[i]; // rightmost difference, larger entry is smaller
    return false;
}

namespace {

struct ExpVecHash {
    std::size_t operator()(const ExpVec& e) const {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (auto v : e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

void check_width(const ContextPtr& ctx, const ExpVec& e) {
    if (e.size() != ctx->nvars())
        throw DomainError("exponent vector length does not match variable count");
}

} // namespace

Poly Poly::zero(ContextPtr ctx) {
    Poly f;
    f.ctx_ = std::move(ctx);
    return f;
}

Poly Poly::constant(ContextPtr ctx, std::uint64_t value) {
    FieldScalar c = ctx->field().reduce(value);
    Poly f = zero(std::move(ctx));
    if (c != 0)
        f.terms_.push_back({ExpVec(f.ctx_->nvars(), 0), c});
    return f;
}

Poly Poly::variable(ContextPtr ctx, std::size_t index) {
    if (index >= ctx->nvars())
        throw DomainError("variable index out of range");
    ExpVec e(ctx->nvars(), 0);
    e[index] = 1;
    return monomial(std::move(ctx), std::move(e), 1);
}

Poly Poly::monomial(ContextPtr ctx, ExpVec exps, std::uint64_t coeff) {
    check_width(ctx, exps);
    FieldScalar c = ctx->field().reduce(coeff);
    Poly f = zero(std::move(ctx));
    if (c != 0)
        f.terms_.push_back({std::move(exps), c});
    return f;
}

Poly Poly::make(ContextPtr ctx, std::vector<Term> terms) {
    const auto& field = ctx->field();
    MonomialOrder ord = ctx->order();
    for (auto& t : terms) {
        check_width(ctx, t.exps);
        t.coeff = field.reduce(t.coeff);
    }
    std::sort(terms.begin(), terms.end(), [ord](const Term& a, const Term& b) {
        return monomial_less(a.exps, b.exps, ord);
    });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff = field.add(merged.back().coeff, t.coeff);
        else
            merged.push_back(std::move(t));
        if (!merged.empty() && merged.back().coeff == 0)
            merged.pop_back();
    }
    Poly f = zero(std::move(ctx));
    f.terms_ = std::move(merged);
    return f;
}

std::int64_t Poly::total_degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_)
        d = std::max(d, static_cast<std::int64_t>(exps_degree(t.exps)));
    return d;
}

const Term& Poly::leading_term() const {
    if (terms_.empty())
        throw DomainError("leading term of zero polynomial");
    return terms_.back();
}

FieldScalar Poly::leading_coeff() const {
    return leading_term().coeff;
}

const ExpVec& Poly::leading_monomial() const {
    return leading_term().exps;
}

Poly Poly::operator+(const Poly& other) const {
    require_same_ring(ctx_, other.ctx_);
    const auto& field = ctx_->field();
    MonomialOrder ord = ctx_->order();
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < other.terms_.size()) {
        const Term& a = terms_[i];
        const Term& b = other.terms_[j];
        if (a.exps == b.exps) {
            FieldScalar c = field.add(a.coeff, b.coeff);
            if (c != 0)
                out.push_back({a.exps, c});
            ++i;
            ++j;
        } else if (monomial_less(a.exps, b.exps, ord)) {
            out.push_back(a);
            ++i;
        } else {
            out.push_back(b);
            ++j;
        }
    }
    for (; i < terms_.size(); ++i)
        out.push_back(terms_[i]);
    for (; j < other.terms_.size(); ++j)
        out.push_back(other.terms_[j]);
    Poly f = zero(ctx_);
    f.terms_ = std::move(out);
    return f;
}

Poly Poly::operator-() const {
    Poly f = *this;
    const auto& field = ctx_->field();
    for (auto& t : f.terms_)
        t.coeff = field.neg(t.coeff);
    return f;
}

Poly Poly::operator-(const Poly& other) const {
    return *this + (-other);
}

Poly Poly::operator*(const Poly& other) const {
    require_same_ring(ctx_, other.ctx_);
    if (is_zero() || other.is_zero())
        return zero(ctx_);
    const auto& field = ctx_->field();
    std::unordered_map<ExpVec, FieldScalar, ExpVecHash> acc;
    acc.reserve(terms_.size() + other.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : other.terms_) {
            FieldScalar c = field.mul(a.coeff, b.coeff);
            if (c == 0)
                continue;
            auto [it, fresh] = acc.try_emplace(exps_add(a.exps, b.exps), c);
            if (!fresh)
                it->second = field.add(it->second, c);
        }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c != 0)
            out.push_back({e, c});
    MonomialOrder ord = ctx_->order();
    std::sort(out.begin(), out.end(), [ord](const Term& a, const Term& b) {
        return monomial_less(a.exps, b.exps, ord);
    });
    Poly f = zero(ctx_);
    f.terms_ = std::move(out);
    return f;
}

bool Poly::operator==(const Poly& other) const {
    require_same_ring(ctx_, other.ctx_);
    if (terms_.size() != other.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != other.terms_[i].exps || terms_[i].coeff != other.terms_[i].coeff)
            return false;
    return true;
}

Poly Poly::scaled(FieldScalar c) const {
    const auto& field = ctx_->field();
    c = field.reduce(c);
    if (c == 0)
        return zero(ctx_);
    Poly f = *this;
    for (auto& t : f.terms_)
        t.coeff = field.mul(t.coeff, c);
    return f;
}

Poly Poly::monic() const {
    return scaled(ctx_->field().inv(leading_coeff()));
}

Poly Poly::times_monomial(const ExpVec& e, FieldScalar c) const {
    check_width(ctx_, e);
    const auto& field = ctx_->field();
    c = field.reduce(c);
    if (c == 0)
        return zero(ctx_);
    // Translation by e preserves both supported orders, so terms stay sorted.
    Poly f = zero(ctx_);
    f.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        f.terms_.push_back({exps_add(t.exps, e), field.mul(t.coeff, c)});
    return f;
}

std::string Poly::str() const {
    if (terms_.empty())
        return "0";
    const auto& vars = ctx_->vars();
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty())
            out += " + ";
        std::string mono;
        for (std::size_t i = 0; i < it->exps.size(); ++i) {
            if (it->exps[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += vars[i];
            if (it->exps[i] > 1) {
                mono += "^";
                mono += std::to_string(it->exps[i]);
            }
        }
        if (mono.empty())
            out += std::to_string(it->coeff);
        else if (it->coeff == 1)
            out += mono;
        else
            out += std::to_string(it->coeff) + "*" + mono;
    }
    return out;
}

Poly poly_pow(const Poly& f, std::uint64_t n) {
    Poly acc = Poly::constant(f.context(), 1);
    Poly base = f;
    while (n > 0) {
        if (n & 1)
            acc = acc * base;
        if (n >>= 1)
            base = base * base;
    }
    return acc;
}

namespace {

std::uint64_t checked_prime_power(std::uint64_t p, unsigned s) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < s; ++i) {
        if (q > max_exponent / p)
            throw OverflowError("p^s exceeds the exponent range");
        q *= p;
    }
    return q;
}

} // namespace

Poly frobenius_power(const Poly& f, unsigned s) {
    if (s == 0)
        throw DomainError("frobenius_power needs s >= 1");
    std::uint64_t q = checked_prime_power(f.context()->p(), s);
    std::vector<Term> out;
    out.reserve(f.term_count());
    // a^(p^s) = a on F_p, so only the exponents move.
    for (const auto& t : f.terms())
        out.push_back({exps_scale(t.exps, q), t.coeff});
    return Poly::make(f.context(), std::move(out));
}

Poly pow_ps_minus_one(const Poly& f, unsigned s) {
    if (f.is_zero())
        throw DomainError("pow_ps_minus_one of zero");
    if (s == 0)
        throw DomainError("pow_ps_minus_one needs s >= 1");
    checked_prime_power(f.context()->p(), s); // fail early on range
    Poly fpm1 = poly_pow(f, f.context()->p() - 1);
    Poly g = fpm1;
    for (unsigned k = 2; k <= s; ++k)
        g = frobenius_power(g, 1) * fpm1;
    return g;
}

Poly apply_divided_power(const ExpVec& b, const Poly& f) {
    const ContextPtr& ctx = f.context();
    check_width(ctx, b);
    const auto& field = ctx->field();
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        if (!exps_divides(b, t.exps))
            continue;
        FieldScalar c = t.coeff;
        for (std::size_t i = 0; i < b.size() && c != 0; ++i)
            c = field.mul(c, lucas_binomial(t.exps[i], b[i], field));
        if (c != 0)
            out.push_back({exps_sub(t.exps, b), c});
    }
    return Poly::make(ctx, std::move(out));
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    require_same_ring(f.context(), g.context());
    if (g.is_zero())
        throw DivisionByZero("exact division by zero polynomial");
    const auto& field = f.context()->field();
    Poly r = f;
    std::vector<Term> quot;
    FieldScalar lc_inv = field.inv(g.leading_coeff());
    while (!r.is_zero()) {
        const Term& lt = r.leading_term();
        if (!exps_divides(g.leading_monomial(), lt.exps))
            return std::nullopt;
        ExpVec e = exps_sub(lt.exps, g.leading_monomial());
        FieldScalar c = field.mul(lt.coeff, lc_inv);
        quot.push_back({e, c});
        r = r - g.times_monomial(e, c);
    }
    return Poly::make(f.context(), std::move(quot));
}

} // namespace frobop
