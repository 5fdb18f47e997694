#ifndef FROBOP_CONTEXT_HPP
#define FROBOP_CONTEXT_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frobop/field.hpp"

namespace frobop {

enum class MonomialOrder { grevlex, lex };

std::string order_name(MonomialOrder order);
std::optional<MonomialOrder> order_from_name(std::string_view name);

// The ambient ring F_p[vars] together with the monomial order used for
// display and Groebner computations.  Contexts are immutable and shared;
// every Poly/Ideal/operator value holds a pointer to exactly one.
class RingContext {
public:
    static std::shared_ptr<const RingContext> make(std::uint64_t p,
                                                   std::vector<std::string> vars,
                                                   MonomialOrder order = MonomialOrder::grevlex);

    const PrimeField& field() const { return field_; }
    std::uint64_t p() const { return field_.p(); }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    MonomialOrder order() const { return order_; }

    std::optional<std::size_t> var_index(std::string_view name) const;

    // Value equality: same modulus, same variable list, same order.
    bool same_ring(const RingContext& other) const;

private:
    RingContext(std::uint64_t p, std::vector<std::string> vars, MonomialOrder order);

    PrimeField field_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
};

using ContextPtr = std::shared_ptr<const RingContext>;

// Throws ContextMismatch unless both contexts describe the same ring.
void require_same_ring(const ContextPtr& a, const ContextPtr& b);

} // namespace frobop

#endif
