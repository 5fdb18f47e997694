#ifndef FROBOP_DIFFOP_HPP
#define FROBOP_DIFFOP_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "frobop/poly.hpp"

namespace frobop {

// Differential operator in normal form: a finite sum
//   sum_b g_b * D_b
// of polynomial left coefficients against divided powers D_b.  An operator
// with every b_i <= p^N - 1 is linear over p^N-th powers; level() is the
// smallest such N.
class DiffOperator {
public:
    DiffOperator() = default;
    explicit DiffOperator(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static DiffOperator make(ContextPtr ctx, std::map<ExpVec, Poly> terms);
    static DiffOperator divided_power(ContextPtr ctx, ExpVec b);
    static DiffOperator identity(ContextPtr ctx);
    static DiffOperator multiplication(const Poly& g);

    const ContextPtr& context() const { return ctx_; }
    const std::map<ExpVec, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned level() const;

    DiffOperator operator+(const DiffOperator& other) const;
    DiffOperator left_mul(const Poly& g) const;
    DiffOperator scaled(FieldScalar c) const;
    bool operator==(const DiffOperator& other) const;
    bool operator!=(const DiffOperator& other) const { return !(*this == other); }

    Poly apply(const Poly& h) const;

    // Canonical text: terms with b descending in the context order, each
    // "coeff * D[b1,...,bd]" ("(...)" around multi-term coefficients, bare
    // coefficient for b = 0, coefficient 1 dropped); "0" when empty.
    std::string str() const;

private:
    ContextPtr ctx_;
    std::map<ExpVec, Poly> terms_; // b -> g_b, no zero coefficients
};

Poly apply_operator(const DiffOperator& op, const Poly& h);

// pi_alpha in D^(s): picks the alpha-coordinate of the level-s Frobenius
// decomposition, i.e. pi_alpha(x^beta) = delta_(alpha,beta) on the basis
// {x^beta : beta_i < p^s}.  Built by the unitriangular recursion
//   g_beta = delta_(alpha,beta) - sum_(b < beta) g_b * C(beta,b) x^(beta-b)
// over basis exponents in increasing order.
DiffOperator dual_projection(const ExpVec& alpha, unsigned s, const ContextPtr& ctx);

// Looks in f^(p^s - 1) for a term a_alpha x^alpha with every alpha_i <=
// p^s - 1 such that each other term x^gamma has gamma_i < alpha_i somewhere
// (so D_alpha kills it).  Returns delta = a_alpha^(-1) D_alpha, which sends
// f^(p^s - 1) to 1.  Among admissible terms the one with the smallest
// maximal component wins (lowest operator level), ties broken by taking the
// largest alpha in the context order.
std::optional<DiffOperator> monomial_fast_path(const Poly& f, unsigned s);

// The general synthesis route at level N = s + 1: decomposes f^(p^N - 1)
// into coordinates c_alpha, divides f^(p^N - p) by the bracket powers
// c_alpha^(p^N) for cofactors r_alpha, and assembles
//   delta = sum_alpha r_alpha * dual_projection(alpha, N).
// Pre: the chain of f stabilized at s.  The caller verifies the result.
DiffOperator synthesize_delta_cofactors(const Poly& f, unsigned s);

// An operator delta with delta(1/f) = 1/f^p, witnessed by the checkable
// identity delta(f^(p^N - 1)) = f^(p^N - p).  Tries the monomial fast path
// at levels 1..s+1 (lifting a level-sigma hit by f^(p^sigma - p)), then
// falls back to the cofactor construction.  Pre: compute_chain(f) reported
// stabilized_at = s.  The result is verified with verify_delta.
DiffOperator synthesize_delta(const Poly& f, unsigned s);

// Replays apply_operator(op, f^(p^N - 1)) == f^(p^N - p) exactly.
// Pre: op.level() <= N.
bool verify_delta(const DiffOperator& op, const Poly& f, unsigned level);

// Operator expression tree: a normal form leaf, a Frobenius twist, or a
// composition.  The twist of e acts on polynomials by e'(c^p * 1 + rest) =
// e(c)^p where c is the coordinate of the level-1 decomposition at basis
// exponent 0; it raises the level by one.
class OperatorExpr {
public:
    enum class Kind { leaf, twist, compose };

    static OperatorExpr leaf(DiffOperator op);
    static OperatorExpr twist(OperatorExpr inner);
    static OperatorExpr compose(OperatorExpr outer, OperatorExpr inner);

    Kind kind() const;
    const ContextPtr& context() const;
    const DiffOperator& op() const;    // pre: leaf
    const OperatorExpr& inner() const; // pre: twist or compose
    const OperatorExpr& outer() const; // pre: compose
    unsigned level() const;

    Poly apply(const Poly& h) const;
    std::string str() const;

private:
    struct Node;
    explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

OperatorExpr frobenius_twist(OperatorExpr inner);

// Witness that 1/f generates the localization: w_t with w_t(1/f) = 1/f^(p^t),
// built as w_1 = delta, w_k = compose(twist(w_(k-1)), delta).
OperatorExpr generator_witness(const DiffOperator& delta, unsigned s_target);
// Convenience form running compute_chain + synthesize_delta first.
OperatorExpr generator_witness(const Poly& f, unsigned s_target);

// A fraction numerator / f^denominator_power.
struct LocalizedValue {
    Poly numerator;
    std::uint64_t denominator_power = 0;
};

// Applies e to g/f^m by rewriting it as (g * f^(p^N - m)) / f^(p^N) for the
// smallest N with N >= level(e) and p^N >= m.
LocalizedValue apply_localized(const OperatorExpr& e, const Poly& g, const Poly& f,
                               std::uint64_t m);

// Cancels factors of f out of the numerator while the division stays exact.
LocalizedValue normalize_localized(LocalizedValue value, const Poly& f);

// Parsers for the textual operator forms emitted by str().  parse_operator
// accepts only normal forms; parse_operator_expr also accepts twist(...) and
// compose(outer, inner).
DiffOperator parse_operator(std::string_view text, const ContextPtr& ctx);
OperatorExpr parse_operator_expr(std::string_view text, const ContextPtr& ctx);

} // namespace frobop

#endif
