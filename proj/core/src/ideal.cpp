#include "frobop/ideal.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace frobop {
namespace {

// Greater-than comparator so map.begin() is the leading monomial.
struct OrderGreater {
    MonomialOrder ord;
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        return monomial_less(b, a, ord);
    }
};

struct DivisionOutcome {
    Poly remainder;
    std::vector<Poly> quotients; // aligned with the divisor list
};

// Full multivariate division: h = sum_k quotients[k] * divisors[k] + r where
// no monomial of r is divisible by any divisor's leading monomial.  Scans
// divisors in list order, so the result is deterministic.
DivisionOutcome divide(const Poly& h, const std::vector<Poly>& divisors) {
    const ContextPtr& ctx = h.context();
    const auto& field = ctx->field();
    std::map<ExpVec, FieldScalar, OrderGreater> work{OrderGreater{ctx->order()}};
    for (const auto& t : h.terms())
        work.emplace(t.exps, t.coeff);

    std::vector<std::vector<Term>> quot(divisors.size());
    std::vector<Term> rem;
    while (!work.empty()) {
        auto lead = work.begin();
        const ExpVec& e = lead->first;
        FieldScalar c = lead->second;
        std::size_t hit = divisors.size();
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            if (exps_divides(divisors[k].leading_monomial(), e)) {
                hit = k;
                break;
            }
        }
        if (hit == divisors.size()) {
            rem.push_back({e, c});
            work.erase(lead);
            continue;
        }
        const Poly& d = divisors[hit];
        ExpVec shift = exps_sub(e, d.leading_monomial());
        FieldScalar q = field.mul(c, field.inv(d.leading_coeff()));
        quot[hit].push_back({shift, q});
        for (const auto& t : d.terms()) {
            ExpVec key = exps_add(t.exps, shift);
            FieldScalar delta = field.mul(q, t.coeff);
            auto [it, fresh] = work.try_emplace(std::move(key), 0);
            it->second = field.sub(it->second, delta);
            if (it->second == 0)
                work.erase(it);
        }
    }

    DivisionOutcome out;
    out.remainder = Poly::make(ctx, std::move(rem));
    out.quotients.reserve(divisors.size());
    for (auto& q : quot)
        out.quotients.push_back(Poly::make(ctx, std::move(q)));
    return out;
}

struct WorkEntry {
    Poly g;                // monic
    std::vector<Poly> rep; // g = sum rep[j] * gens[j]
};

void make_monic(WorkEntry& e) {
    FieldScalar inv = e.g.context()->field().inv(e.g.leading_coeff());
    e.g = e.g.scaled(inv);
    for (auto& r : e.rep)
        r = r.scaled(inv);
}

// h reduced against every entry, with the representation kept exact.
WorkEntry reduce_entry(Poly h, std::vector<Poly> rep, const std::vector<WorkEntry>& entries,
                       std::size_t skip = static_cast<std::size_t>(-1)) {
    std::vector<Poly> divisors;
    std::vector<std::size_t> which;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (k == skip)
            continue;
        divisors.push_back(entries[k].g);
        which.push_back(k);
    }
    DivisionOutcome out = divide(h, divisors);
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        if (out.quotients[k].is_zero())
            continue;
        const auto& used = entries[which[k]];
        for (std::size_t j = 0; j < rep.size(); ++j)
            rep[j] = rep[j] - out.quotients[k] * used.rep[j];
    }
    return {std::move(out.remainder), std::move(rep)};
}

struct PairKey {
    std::uint64_t deg;
    ExpVec lcm;
    std::size_t i, j;
};

struct PairLess {
    MonomialOrder ord;
    bool operator()(const PairKey& a, const PairKey& b) const {
        if (a.deg != b.deg)
            return a.deg < b.deg;
        if (a.lcm != b.lcm)
            return monomial_less(a.lcm, b.lcm, ord);
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    }
};

GroebnerData buchberger(const ContextPtr& ctx, const std::vector<Poly>& gens) {
    GroebnerData out;
    std::vector<WorkEntry> entries;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::vector<Poly> rep(gens.size(), Poly::zero(ctx));
        rep[j] = Poly::constant(ctx, 1);
        WorkEntry e{gens[j], std::move(rep)};
        make_monic(e);
        entries.push_back(std::move(e));
    }
    if (entries.empty())
        return out;

    std::set<PairKey, PairLess> queue{PairLess{ctx->order()}};
    std::set<std::pair<std::size_t, std::size_t>> pending;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            ExpVec l = exps_lcm(entries[i].g.leading_monomial(), entries[k].g.leading_monomial());
            queue.insert({exps_degree(l), std::move(l), i, k});
            pending.insert({i, k});
        }
    };
    for (std::size_t k = 1; k < entries.size(); ++k)
        push_pairs(k);

    while (!queue.empty()) {
        PairKey pair = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({pair.i, pair.j});
        const ExpVec& lm_i = entries[pair.i].g.leading_monomial();
        const ExpVec& lm_j = entries[pair.j].g.leading_monomial();
        if (exps_coprime(lm_i, lm_j))
            continue; // product criterion
        bool chained = false;
        for (std::size_t k = 0; k < entries.size() && !chained; ++k) {
            if (k == pair.i || k == pair.j)
                continue;
            if (!exps_divides(entries[k].g.leading_monomial(), pair.lcm))
                continue;
            auto a = std::minmax(pair.i, k);
            auto b = std::minmax(pair.j, k);
            if (!pending.count({a.first, a.second}) && !pending.count({b.first, b.second}))
                chained = true; // chain criterion
        }
        if (chained)
            continue;

        Poly s = entries[pair.i].g.times_monomial(exps_sub(pair.lcm, lm_i), 1) -
                 entries[pair.j].g.times_monomial(exps_sub(pair.lcm, lm_j), 1);
        std::vector<Poly> rep(gens.size(), Poly::zero(ctx));
        for (std::size_t j = 0; j < gens.size(); ++j)
            rep[j] = entries[pair.i].rep[j].times_monomial(exps_sub(pair.lcm, lm_i), 1) -
                     entries[pair.j].rep[j].times_monomial(exps_sub(pair.lcm, lm_j), 1);
        WorkEntry reduced = reduce_entry(std::move(s), std::move(rep), entries);
        if (reduced.g.is_zero())
            continue;
        make_monic(reduced);
        entries.push_back(std::move(reduced));
        push_pairs(entries.size() - 1);
    }

    // minimal basis: drop entries whose leading monomial another one divides
    std::vector<std::size_t> order(entries.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        order[k] = k;
    MonomialOrder ord = ctx->order();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return monomial_less(entries[a].g.leading_monomial(), entries[b].g.leading_monomial(), ord);
    });
    std::vector<WorkEntry> minimal;
    for (std::size_t idx : order) {
        bool redundant = false;
        for (const auto& kept : minimal) {
            if (exps_divides(kept.g.leading_monomial(), entries[idx].g.leading_monomial())) {
                redundant = true;
                break;
            }
        }
        if (!redundant)
            minimal.push_back(std::move(entries[idx]));
    }

    // autoreduce: leading monomials are now pairwise non-dividing, so one
    // full-reduction pass of each tail against the others suffices
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        WorkEntry e = reduce_entry(minimal[k].g, minimal[k].rep, minimal, k);
        minimal[k] = std::move(e);
    }

    for (auto& e : minimal) {
        out.basis.push_back(std::move(e.g));
        out.reps.push_back(std::move(e.rep));
    }
    return out;
}

} // namespace

struct Ideal::Cache {
    std::once_flag once;
    std::atomic<bool> ready{false};
    GroebnerData data;
};

Ideal::Ideal(ContextPtr ctx, std::vector<Poly> gens)
    : ctx_(std::move(ctx)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
        if (g.is_zero())
            continue;
        require_same_ring(ctx_, g.context());
        bool dup = false;
        for (const auto& kept : gens_) {
            if (kept == g) {
                dup = true;
                break;
            }
        }
        if (!dup)
            gens_.push_back(std::move(g));
    }
}

Ideal Ideal::zero(ContextPtr ctx) {
    return Ideal(std::move(ctx), {});
}

Ideal Ideal::unit(ContextPtr ctx) {
    Poly one = Poly::constant(ctx, 1);
    return Ideal(std::move(ctx), {std::move(one)});
}

const GroebnerData& Ideal::data() const {
    std::call_once(cache_->once, [this] {
        cache_->data = buchberger(ctx_, gens_);
        validate_cache();
        cache_->ready.store(true, std::memory_order_release);
    });
    return cache_->data;
}

void Ideal::seed_cache(GroebnerData data) const {
    std::call_once(cache_->once, [&] {
        cache_->data = std::move(data);
        validate_cache();
        cache_->ready.store(true, std::memory_order_release);
    });
}

// spot-check: every stored generator must reduce to zero against the basis
void Ideal::validate_cache() const {
    for (const auto& g : gens_) {
        if (!divide(g, cache_->data.basis).remainder.is_zero())
            throw Error("groebner cache is inconsistent with the generators");
    }
}

const std::vector<Poly>& Ideal::groebner() const {
    return data().basis;
}

Poly Ideal::normal_form(const Poly& h) const {
    require_same_ring(ctx_, h.context());
    return divide(h, data().basis).remainder;
}

bool Ideal::contains(const Poly& h) const {
    return normal_form(h).is_zero();
}

bool Ideal::contains_one() const {
    const auto& basis = groebner();
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

bool Ideal::subset_of(const Ideal& other) const {
    require_same_ring(ctx_, other.ctx_);
    for (const auto& g : gens_)
        if (!other.contains(g))
            return false;
    return true;
}

std::optional<std::vector<Poly>> Ideal::divide_with_cofactors(const Poly& h) const {
    require_same_ring(ctx_, h.context());
    const GroebnerData& gb = data();
    DivisionOutcome out = divide(h, gb.basis);
    if (!out.remainder.is_zero())
        return std::nullopt;
    std::vector<Poly> cof(gens_.size(), Poly::zero(ctx_));
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
        if (out.quotients[i].is_zero())
            continue;
        for (std::size_t j = 0; j < gens_.size(); ++j)
            if (!gb.reps[i][j].is_zero())
                cof[j] = cof[j] + out.quotients[i] * gb.reps[i][j];
    }
    // mandatory recombination check
    Poly probe = Poly::zero(ctx_);
    for (std::size_t j = 0; j < gens_.size(); ++j)
        if (!cof[j].is_zero())
            probe = probe + cof[j] * gens_[j];
    if (probe != h)
        throw Error("cofactor recombination failed");
    return cof;
}

Ideal Ideal::product(const Ideal& other) const {
    require_same_ring(ctx_, other.ctx_);
    std::vector<Poly> gens;
    gens.reserve(gens_.size() * other.gens_.size());
    for (const auto& a : gens_)
        for (const auto& b : other.gens_)
            gens.push_back(a * b);
    return Ideal(ctx_, std::move(gens));
}

Ideal Ideal::bracket_power(unsigned s) const {
    if (s == 0)
        return *this;
    std::vector<Poly> gens;
    gens.reserve(gens_.size());
    for (const auto& g : gens_)
        gens.push_back(frobenius_power(g, s));
    Ideal result(ctx_, std::move(gens));
    if (cache_->ready.load(std::memory_order_acquire)) {
        // Frobenius carries a reduced basis (and its representations) to one
        // of the bracket ideal; the seed still runs the cache spot-check.
        GroebnerData seeded;
        for (const auto& b : cache_->data.basis)
            seeded.basis.push_back(frobenius_power(b, s));
        for (const auto& rep : cache_->data.reps) {
            std::vector<Poly> lifted;
            lifted.reserve(rep.size());
            for (const auto& r : rep)
                lifted.push_back(r.is_zero() ? r : frobenius_power(r, s));
            seeded.reps.push_back(std::move(lifted));
        }
        result.seed_cache(std::move(seeded));
    }
    return result;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
    require_same_ring(a.context(), b.context());
    const auto& ga = a.groebner();
    const auto& gb = b.groebner();
    if (ga.size() != gb.size())
        return false;
    for (std::size_t i = 0; i < ga.size(); ++i)
        if (ga[i] != gb[i])
            return false;
    return true;
}

} // namespace frobop
