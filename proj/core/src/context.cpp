#include "frobop/context.hpp"

#include <algorithm>
#include <cctype>

namespace frobop {

std::string order_name(MonomialOrder order) {
    return order == MonomialOrder::grevlex ? "grevlex" : "lex";
}

std::optional<MonomialOrder> order_from_name(std::string_view name) {
    if (name == "grevlex")
        return MonomialOrder::grevlex;
    if (name == "lex")
        return MonomialOrder::lex;
    return std::nullopt;
}

namespace {

bool valid_var_name(const std::string& name) {
    if (name.empty())
        return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

RingContext::RingContext(std::uint64_t p, std::vector<std::string> vars, MonomialOrder order)
    : field_(p), vars_(std::move(vars)), order_(order) {
    if (vars_.empty())
        throw DomainError("context needs at least one variable");
    for (const auto& v : vars_) {
        if (!valid_var_name(v))
            throw DomainError("invalid variable name: '" + v + "'");
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i] == vars_[j])
                throw DomainError("duplicate variable name: '" + vars_[i] + "'");
}

ContextPtr RingContext::make(std::uint64_t p, std::vector<std::string> vars, MonomialOrder order) {
    return std::shared_ptr<const RingContext>(new RingContext(p, std::move(vars), order));
}

std::optional<std::size_t> RingContext::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return i;
    return std::nullopt;
}

bool RingContext::same_ring(const RingContext& other) const {
    return p() == other.p() && vars_ == other.vars_ && order_ == other.order_;
}

void require_same_ring(const ContextPtr& a, const ContextPtr& b) {
    if (!a || !b)
        throw ContextMismatch("missing ring context");
    if (a.get() == b.get())
        return;
    if (!a->same_ring(*b))
        throw ContextMismatch("values come from different ring contexts");
}

} // namespace frobop
