#include "frobop/diffop.hpp"

#include <algorithm>

#include "frobop/chain.hpp"
#include "frobop/frobenius.hpp"
#include "frobop/ideal.hpp"

namespace frobop {
namespace {

std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base)
            throw OverflowError("p^N exceeds the 64-bit range");
        r *= base;
    }
    return r;
}

// f^n with n split into base-p digits: f^n = prod_i (f^d_i)^(p^i), the inner
// power by squaring, the outer one term-wise.
Poly pow_base_p(const Poly& f, std::uint64_t n) {
    const std::uint64_t p = f.context()->p();
    Poly result = Poly::constant(f.context(), 1);
    unsigned i = 0;
    while (n > 0) {
        std::uint64_t digit = n % p;
        n /= p;
        if (digit > 0) {
            Poly piece = poly_pow(f, digit);
            if (i > 0)
                piece = frobenius_power(piece, i);
            result = result * piece;
        }
        ++i;
    }
    return result;
}

} // namespace

DiffOperator DiffOperator::make(ContextPtr ctx, std::map<ExpVec, Poly> terms) {
    if (!ctx)
        throw DomainError("operator context is required");
    DiffOperator op(ctx);
    for (auto& [b, g] : terms) {
        if (b.size() != ctx->nvars())
            throw DomainError("divided power index has the wrong arity");
        if (g.is_zero())
            continue;
        require_same_ring(ctx, g.context());
        op.terms_.emplace(b, std::move(g));
    }
    return op;
}

DiffOperator DiffOperator::divided_power(ContextPtr ctx, ExpVec b) {
    std::map<ExpVec, Poly> terms;
    Poly one = Poly::constant(ctx, 1);
    terms.emplace(std::move(b), std::move(one));
    return make(std::move(ctx), std::move(terms));
}

DiffOperator DiffOperator::identity(ContextPtr ctx) {
    ExpVec b(ctx->nvars(), 0);
    return divided_power(std::move(ctx), std::move(b));
}

DiffOperator DiffOperator::multiplication(const Poly& g) {
    if (!g.context())
        throw DomainError("operator context is required");
    std::map<ExpVec, Poly> terms;
    terms.emplace(ExpVec(g.context()->nvars(), 0), g);
    return make(g.context(), std::move(terms));
}

unsigned DiffOperator::level() const {
    std::uint32_t top = 0;
    for (const auto& [b, g] : terms_)
        for (std::uint32_t c : b)
            top = std::max(top, c);
    unsigned n = 0;
    std::uint64_t q = 1;
    while (q <= top) {
        q *= ctx_->p();
        ++n;
    }
    return n;
}

DiffOperator DiffOperator::operator+(const DiffOperator& other) const {
    require_same_ring(ctx_, other.ctx_);
    DiffOperator out(ctx_);
    out.terms_ = terms_;
    for (const auto& [b, g] : other.terms_) {
        auto [it, fresh] = out.terms_.try_emplace(b, g);
        if (fresh)
            continue;
        Poly sum = it->second + g;
        if (sum.is_zero())
            out.terms_.erase(it);
        else
            it->second = std::move(sum);
    }
    return out;
}

DiffOperator DiffOperator::left_mul(const Poly& g) const {
    require_same_ring(ctx_, g.context());
    DiffOperator out(ctx_);
    if (g.is_zero())
        return out;
    for (const auto& [b, coeff] : terms_)
        out.terms_.emplace(b, g * coeff);
    return out;
}

DiffOperator DiffOperator::scaled(FieldScalar c) const {
    FieldScalar r = ctx_->field().reduce(c);
    DiffOperator out(ctx_);
    if (r == 0)
        return out;
    for (const auto& [b, coeff] : terms_)
        out.terms_.emplace(b, coeff.scaled(r));
    return out;
}

bool DiffOperator::operator==(const DiffOperator& other) const {
    require_same_ring(ctx_, other.ctx_);
    return terms_ == other.terms_;
}

Poly DiffOperator::apply(const Poly& h) const {
    require_same_ring(ctx_, h.context());
    Poly sum = Poly::zero(ctx_);
    for (const auto& [b, g] : terms_) {
        Poly derived = apply_divided_power(b, h);
        if (!derived.is_zero())
            sum = sum + g * derived;
    }
    return sum;
}

std::string DiffOperator::str() const {
    if (terms_.empty())
        return "0";
    std::vector<const std::pair<const ExpVec, Poly>*> order;
    order.reserve(terms_.size());
    for (const auto& entry : terms_)
        order.push_back(&entry);
    MonomialOrder ord = ctx_->order();
    std::sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
        return monomial_less(b->first, a->first, ord);
    });

    std::string out;
    for (const auto* entry : order) {
        const auto& [b, g] = *entry;
        if (!out.empty())
            out += " + ";
        std::string coeff = g.str();
        if (g.term_count() > 1)
            coeff = "(" + coeff + ")";
        if (exps_degree(b) == 0) {
            out += coeff;
            continue;
        }
        std::string atom = "D[";
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i > 0)
                atom += ",";
            atom += std::to_string(b[i]);
        }
        atom += "]";
        bool coeff_is_one = g.term_count() == 1 && g.leading_coeff() == 1 &&
                            exps_degree(g.leading_monomial()) == 0;
        out += coeff_is_one ? atom : coeff + " * " + atom;
    }
    return out;
}

Poly apply_operator(const DiffOperator& op, const Poly& h) {
    return op.apply(h);
}

DiffOperator dual_projection(const ExpVec& alpha, unsigned s, const ContextPtr& ctx) {
    if (s == 0)
        throw DomainError("dual_projection requires s >= 1");
    if (alpha.size() != ctx->nvars())
        throw DomainError("alpha has the wrong arity");
    std::uint64_t q = checked_pow_u64(ctx->p(), s);
    if (q > static_cast<std::uint64_t>(max_exponent) + 1)
        throw OverflowError("p^s exceeds the exponent range");
    for (std::uint32_t a : alpha)
        if (a >= q)
            throw DomainError("alpha lies outside the level-s basis");

    // g_beta = 0 whenever beta does not dominate alpha, so only the interval
    // alpha <= beta < p^s is walked; the odometer order refines the
    // componentwise order, which is all the recursion needs.
    const auto& field = ctx->field();
    std::map<ExpVec, Poly> g;
    ExpVec beta = alpha;
    for (;;) {
        Poly acc = (beta == alpha) ? Poly::constant(ctx, 1) : Poly::zero(ctx);
        for (const auto& [b, gb] : g) {
            if (!exps_divides(b, beta))
                continue;
            FieldScalar c = 1;
            for (std::size_t i = 0; i < beta.size() && c != 0; ++i)
                c = field.mul(c, lucas_binomial(beta[i], b[i], field));
            if (c != 0)
                acc = acc - gb.times_monomial(exps_sub(beta, b), c);
        }
        if (!acc.is_zero())
            g.emplace(beta, std::move(acc));

        std::size_t i = 0;
        while (i < beta.size()) {
            if (static_cast<std::uint64_t>(beta[i]) + 1 < q) {
                ++beta[i];
                break;
            }
            beta[i] = alpha[i];
            ++i;
        }
        if (i == beta.size())
            break;
    }
    return DiffOperator::make(ctx, std::move(g));
}

namespace {

// Fast path against a precomputed g = f^(p^s - 1).
std::optional<DiffOperator> fast_path_on(const Poly& g, unsigned s) {
    const ContextPtr& ctx = g.context();
    std::uint64_t q = checked_pow_u64(ctx->p(), s);
    const Term* best = nullptr;
    std::uint32_t best_top = 0;
    for (const auto& t : g.terms()) {
        std::uint32_t top = 0;
        bool bounded = true;
        for (std::uint32_t c : t.exps) {
            top = std::max(top, c);
            if (static_cast<std::uint64_t>(c) >= q)
                bounded = false;
        }
        if (!bounded)
            continue;
        bool dominated = false;
        for (const auto& u : g.terms()) {
            if (&u != &t && exps_divides(t.exps, u.exps)) {
                dominated = true;
                break;
            }
        }
        if (dominated)
            continue;
        // smallest maximal component wins; ties to the largest alpha
        if (!best || top < best_top ||
            (top == best_top && monomial_less(best->exps, t.exps, ctx->order()))) {
            best = &t;
            best_top = top;
        }
    }
    if (!best)
        return std::nullopt;
    return DiffOperator::make(
        ctx, {{best->exps, Poly::constant(ctx, ctx->field().inv(best->coeff))}});
}

void require_chain_input(const Poly& f) {
    if (f.is_zero() || f.is_constant())
        throw DomainError("the operator synthesis is defined for nonconstant f");
}

} // namespace

std::optional<DiffOperator> monomial_fast_path(const Poly& f, unsigned s) {
    require_chain_input(f);
    if (s == 0)
        throw DomainError("monomial_fast_path requires s >= 1");
    return fast_path_on(pow_ps_minus_one(f, s), s);
}

DiffOperator synthesize_delta_cofactors(const Poly& f, unsigned s) {
    require_chain_input(f);
    const ContextPtr& ctx = f.context();
    unsigned n = s + 1;
    Poly gs = pow_ps_minus_one(f, s);
    FrobDecomposition dec = frob_decompose(frobenius_power(gs, 1) * pow_ps_minus_one(f, 1), n);

    // keep the generator list aligned with the alphas: dedup here so the
    // ideal's own dedup is a no-op
    std::vector<ExpVec> alphas;
    std::vector<Poly> gens;
    for (const auto& [alpha, coord] : dec.coords) {
        bool dup = false;
        for (const auto& kept : gens) {
            if (kept == coord) {
                dup = true;
                break;
            }
        }
        if (dup)
            continue;
        alphas.push_back(alpha);
        gens.push_back(coord);
    }

    Ideal small(ctx, gens);
    Ideal bracket = small.bracket_power(n);
    Poly h = frobenius_power(gs, 1); // f^(p^n - p)
    auto cof = bracket.divide_with_cofactors(h);
    if (!cof)
        throw Error("cofactor division failed; the chain is not stable at this level");

    DiffOperator delta(ctx);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if ((*cof)[j].is_zero())
            continue;
        delta = delta + dual_projection(alphas[j], n, ctx).left_mul((*cof)[j]);
    }
    return delta;
}

DiffOperator synthesize_delta(const Poly& f, unsigned s) {
    require_chain_input(f);
    Poly fp1 = pow_ps_minus_one(f, 1);
    Poly g = fp1;
    for (unsigned sigma = 1; sigma <= s + 1; ++sigma) {
        if (sigma > 1)
            g = frobenius_power(g, 1) * fp1;
        auto hit = fast_path_on(g, sigma);
        if (!hit)
            continue;
        DiffOperator delta = *hit;
        if (sigma > 1) {
            // a level-sigma hit sends f^(p^sigma - 1) to 1; the left factor
            // f^(p^sigma - p) turns that into the verifiable identity
            delta = delta.left_mul(frobenius_power(pow_ps_minus_one(f, sigma - 1), 1));
        }
        if (verify_delta(delta, f, sigma))
            return delta;
    }
    DiffOperator delta = synthesize_delta_cofactors(f, s);
    if (!verify_delta(delta, f, s + 1))
        throw Error("synthesized operator failed verification");
    return delta;
}

bool verify_delta(const DiffOperator& op, const Poly& f, unsigned level) {
    require_same_ring(op.context(), f.context());
    if (level == 0)
        throw DomainError("verification level must be >= 1");
    if (op.level() > level)
        throw DomainError("operator level exceeds the verification level");
    if (f.is_zero())
        throw DomainError("f must be nonzero");
    Poly lhs = apply_operator(op, pow_ps_minus_one(f, level));
    Poly rhs = level == 1 ? Poly::constant(f.context(), 1)
                          : frobenius_power(pow_ps_minus_one(f, level - 1), 1);
    return lhs == rhs;
}

struct OperatorExpr::Node {
    Kind kind;
    ContextPtr ctx;
    unsigned level = 0;
    DiffOperator op;                          // leaf
    std::optional<OperatorExpr> inner, outer; // twist: inner; compose: both
};

OperatorExpr OperatorExpr::leaf(DiffOperator op) {
    if (!op.context())
        throw DomainError("operator context is required");
    auto node = std::make_shared<Node>();
    node->kind = Kind::leaf;
    node->ctx = op.context();
    node->level = op.level();
    node->op = std::move(op);
    return OperatorExpr(std::move(node));
}

OperatorExpr OperatorExpr::twist(OperatorExpr inner) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::twist;
    node->ctx = inner.context();
    node->level = inner.level() + 1;
    node->inner = std::move(inner);
    return OperatorExpr(std::move(node));
}

OperatorExpr OperatorExpr::compose(OperatorExpr outer, OperatorExpr inner) {
    require_same_ring(outer.context(), inner.context());
    auto node = std::make_shared<Node>();
    node->kind = Kind::compose;
    node->ctx = outer.context();
    node->level = std::max(outer.level(), inner.level());
    node->outer = std::move(outer);
    node->inner = std::move(inner);
    return OperatorExpr(std::move(node));
}

OperatorExpr::Kind OperatorExpr::kind() const {
    return node_->kind;
}

const ContextPtr& OperatorExpr::context() const {
    return node_->ctx;
}

const DiffOperator& OperatorExpr::op() const {
    if (node_->kind != Kind::leaf)
        throw DomainError("expression is not a leaf");
    return node_->op;
}

const OperatorExpr& OperatorExpr::inner() const {
    if (node_->kind == Kind::leaf)
        throw DomainError("a leaf has no inner expression");
    return *node_->inner;
}

const OperatorExpr& OperatorExpr::outer() const {
    if (node_->kind != Kind::compose)
        throw DomainError("only compositions have an outer expression");
    return *node_->outer;
}

unsigned OperatorExpr::level() const {
    return node_->level;
}

Poly OperatorExpr::apply(const Poly& h) const {
    switch (node_->kind) {
    case Kind::leaf:
        return node_->op.apply(h);
    case Kind::compose:
        return node_->outer->apply(node_->inner->apply(h));
    case Kind::twist: {
        // e'(c^p + rest) = e(c)^p: pick the coordinate at basis exponent 0
        FrobDecomposition dec = frob_decompose(h, 1);
        auto it = dec.coords.find(ExpVec(node_->ctx->nvars(), 0));
        Poly c = it == dec.coords.end() ? Poly::zero(node_->ctx) : it->second;
        return frobenius_power(node_->inner->apply(c), 1);
    }
    }
    throw Error("corrupt operator expression");
}

std::string OperatorExpr::str() const {
    switch (node_->kind) {
    case Kind::leaf:
        return node_->op.str();
    case Kind::twist:
        return "twist(" + node_->inner->str() + ")";
    case Kind::compose:
        return "compose(" + node_->outer->str() + ", " + node_->inner->str() + ")";
    }
    throw Error("corrupt operator expression");
}

OperatorExpr frobenius_twist(OperatorExpr inner) {
    return OperatorExpr::twist(std::move(inner));
}

OperatorExpr generator_witness(const DiffOperator& delta, unsigned s_target) {
    if (s_target == 0)
        throw DomainError("the witness target power must be >= 1");
    OperatorExpr w = OperatorExpr::leaf(delta);
    for (unsigned k = 2; k <= s_target; ++k)
        w = OperatorExpr::compose(OperatorExpr::twist(std::move(w)), OperatorExpr::leaf(delta));
    return w;
}

OperatorExpr generator_witness(const Poly& f, unsigned s_target) {
    ChainReport report = compute_chain(f);
    if (!report.stabilized_at)
        throw Error("the chain did not stabilize within the level cap");
    DiffOperator delta = synthesize_delta(f, *report.stabilized_at);
    return generator_witness(delta, s_target);
}

LocalizedValue apply_localized(const OperatorExpr& e, const Poly& g, const Poly& f,
                               std::uint64_t m) {
    require_same_ring(e.context(), g.context());
    require_same_ring(e.context(), f.context());
    if (f.is_zero())
        throw DomainError("the denominator polynomial must be nonzero");
    const std::uint64_t p = f.context()->p();
    unsigned n = e.level();
    std::uint64_t q = checked_pow_u64(p, n);
    while (q < m) {
        if (q > UINT64_MAX / p)
            throw OverflowError("p^N exceeds the 64-bit range");
        q *= p;
        ++n;
    }
    Poly shifted = g * pow_base_p(f, q - m);
    return {e.apply(shifted), q};
}

LocalizedValue normalize_localized(LocalizedValue value, const Poly& f) {
    require_same_ring(value.numerator.context(), f.context());
    if (f.is_zero())
        throw DomainError("the denominator polynomial must be nonzero");
    if (value.numerator.is_zero()) {
        value.denominator_power = 0;
        return value;
    }
    while (value.denominator_power > 0) {
        auto q = divide_exact(value.numerator, f);
        if (!q)
            break;
        value.numerator = std::move(*q);
        --value.denominator_power;
    }
    return value;
}

} // namespace frobop
