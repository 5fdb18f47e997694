#include <benchmark/benchmark.h>

#include "frobop/frobop.hpp"

using namespace frobop;

namespace {

ContextPtr four_vars(std::uint64_t p) {
    return RingContext::make(p, {"x1", "x2", "x3", "x4"}, MonomialOrder::grevlex);
}

Poly four_squares(const ContextPtr& ctx) {
    Poly f = Poly::zero(ctx);
    for (std::size_t i = 0; i < 4; ++i) {
        Poly x = Poly::variable(ctx, i);
        f = f + x * x;
    }
    return f;
}

void bm_pow_ps_minus_one(benchmark::State& state) {
    auto ctx = four_vars(5);
    Poly f = four_squares(ctx);
    auto s = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pow_ps_minus_one(f, s));
}

void bm_frob_decompose(benchmark::State& state) {
    auto ctx = four_vars(5);
    auto s = static_cast<unsigned>(state.range(0));
    Poly g = pow_ps_minus_one(four_squares(ctx), s);
    for (auto _ : state)
        benchmark::DoNotOptimize(frob_decompose(g, s));
}

void bm_groebner(benchmark::State& state) {
    auto ctx = RingContext::make(3, {"x", "y", "z"}, MonomialOrder::grevlex);
    std::vector<Poly> gens{parse_poly("x^2*y + z^2", ctx), parse_poly("y^2*z + x", ctx),
                           parse_poly("z^3 + x*y + 2", ctx)};
    for (auto _ : state) {
        Ideal ideal(ctx, gens);
        benchmark::DoNotOptimize(ideal.groebner());
    }
}

void bm_compute_chain(benchmark::State& state) {
    auto ctx = four_vars(static_cast<std::uint64_t>(state.range(0)));
    Poly f = four_squares(ctx);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_chain(f));
}

void bm_synthesize_delta(benchmark::State& state) {
    auto ctx = four_vars(static_cast<std::uint64_t>(state.range(0)));
    Poly f = four_squares(ctx);
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_delta(f, 1));
}

// cofactor route, which the four-squares fast path skips
void bm_synthesize_cofactors(benchmark::State& state) {
    auto ctx = RingContext::make(2, {"x"}, MonomialOrder::grevlex);
    Poly f = parse_poly("x^2 + x + 1", ctx);
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_delta(f, 1));
}

void bm_dual_projection(benchmark::State& state) {
    auto ctx = RingContext::make(3, {"x", "y"}, MonomialOrder::grevlex);
    auto s = static_cast<unsigned>(state.range(0));
    ExpVec alpha{1, 2};
    for (auto _ : state)
        benchmark::DoNotOptimize(dual_projection(alpha, s, ctx));
}

void bm_verify_delta(benchmark::State& state) {
    auto ctx = four_vars(5);
    Poly f = four_squares(ctx);
    DiffOperator delta = synthesize_delta(f, 1);
    auto level = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_delta(delta, f, level));
}

BENCHMARK(bm_pow_ps_minus_one)->Arg(1)->Arg(2);
BENCHMARK(bm_frob_decompose)->Arg(1)->Arg(2);
BENCHMARK(bm_groebner);
BENCHMARK(bm_compute_chain)->Arg(3)->Arg(5);
BENCHMARK(bm_synthesize_delta)->Arg(3)->Arg(5);
BENCHMARK(bm_synthesize_cofactors);
BENCHMARK(bm_dual_projection)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(bm_verify_delta)->Arg(1)->Arg(2);

} // namespace

BENCHMARK_MAIN();
