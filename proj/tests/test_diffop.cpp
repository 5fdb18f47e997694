#include <doctest.h>

#include "test_util.hpp"

using namespace frobop;
using namespace frobop::test;

TEST_CASE("operator construction and normalization") {
    auto ctx = ctx2(3);
    Poly x = Poly::variable(ctx, 0);
    SUBCASE("zero coefficients are dropped") {
        DiffOperator op = DiffOperator::make(ctx, {{ExpVec{1, 0}, Poly::zero(ctx)},
                                                   {ExpVec{0, 1}, x}});
        CHECK(op.terms().size() == 1);
        CHECK_FALSE(op.is_zero());
    }
    SUBCASE("empty operator") {
        DiffOperator op(ctx);
        CHECK(op.is_zero());
        CHECK(op.level() == 0);
        CHECK(op.str() == "0");
        CHECK(op.apply(x).is_zero());
    }
    SUBCASE("wrong arity is rejected") {
        CHECK_THROWS_AS(DiffOperator::make(ctx, {{ExpVec{1}, x}}), DomainError);
    }
    SUBCASE("foreign coefficients are rejected") {
        auto other = ctx2(5);
        CHECK_THROWS_AS(DiffOperator::make(ctx, {{ExpVec{1, 0}, Poly::variable(other, 0)}}),
                        ContextMismatch);
        DiffOperator op = DiffOperator::divided_power(ctx, {1, 0});
        CHECK_THROWS_AS(op.apply(Poly::variable(other, 0)), ContextMismatch);
    }
}

TEST_CASE("identity and multiplication operators") {
    auto ctx = ctx2(5);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
        Poly h = random_poly(rng, ctx, 4, 5, false);
        Poly g = random_poly(rng, ctx, 3, 4, false);
        CHECK(DiffOperator::identity(ctx).apply(h) == h);
        CHECK(DiffOperator::multiplication(g).apply(h) == g * h);
        CHECK(DiffOperator::multiplication(g).level() == 0);
    }
}

TEST_CASE("divided power operators agree with the poly-core kernel") {
    auto ctx = ctx2(3);
    std::mt19937_64 rng(37);
    for (int i = 0; i < 10; ++i) {
        Poly h = random_poly(rng, ctx, 5, 5, false);
        for (std::uint32_t a = 0; a <= 2; ++a) {
            for (std::uint32_t b = 0; b <= 2; ++b) {
                ExpVec e{a, b};
                CHECK(DiffOperator::divided_power(ctx, e).apply(h) == apply_divided_power(e, h));
            }
        }
    }
}

TEST_CASE("operator algebra is pointwise") {
    auto ctx = ctx2(5);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 10; ++i) {
        DiffOperator a = DiffOperator::make(
            ctx, {{ExpVec{1, 0}, random_poly(rng, ctx, 2, 3, false)},
                  {ExpVec{0, 2}, random_poly(rng, ctx, 2, 3, false)}});
        DiffOperator b = DiffOperator::make(
            ctx, {{ExpVec{1, 0}, random_poly(rng, ctx, 2, 3, false)},
                  {ExpVec{1, 1}, random_poly(rng, ctx, 2, 3, false)}});
        Poly h = random_poly(rng, ctx, 4, 5, false);
        Poly g = random_poly(rng, ctx, 2, 3, false);
        CHECK((a + b).apply(h) == a.apply(h) + b.apply(h));
        CHECK(a.left_mul(g).apply(h) == g * a.apply(h));
        CHECK(a.scaled(3).apply(h) == a.apply(h).scaled(3));
        CHECK(a + DiffOperator(ctx) == a);
    }
    // cancellation: a + (-1)a = 0
    DiffOperator a = DiffOperator::divided_power(ctx, {1, 1}).left_mul(Poly::variable(ctx, 0));
    CHECK((a + a.scaled(4)).is_zero());
}

TEST_CASE("operator level is the smallest p-power bound") {
    auto c2 = ctx1(2);
    CHECK(DiffOperator::divided_power(c2, {1}).level() == 1);
    CHECK(DiffOperator::divided_power(c2, {2}).level() == 2);
    CHECK(DiffOperator::divided_power(c2, {3}).level() == 2);
    CHECK(DiffOperator::divided_power(c2, {4}).level() == 3);
    CHECK(DiffOperator::identity(c2).level() == 0);
    auto c5 = ctx2(5);
    CHECK(DiffOperator::divided_power(c5, {4, 2}).level() == 1);
    CHECK(DiffOperator::divided_power(c5, {5, 0}).level() == 2);
}

TEST_CASE("operator canonical text") {
    auto ctx = ctx2(5);
    Poly x = Poly::variable(ctx, 0);
    Poly y = Poly::variable(ctx, 1);
    DiffOperator op = DiffOperator::make(ctx, {{ExpVec{1, 0}, x + Poly::constant(ctx, 1)},
                                               {ExpVec{0, 1}, y.scaled(3)},
                                               {ExpVec{0, 0}, Poly::constant(ctx, 2)}});
    CHECK(op.str() == "(x + 1) * D[1,0] + 3*y * D[0,1] + 2");
    CHECK(DiffOperator::identity(ctx).str() == "1");
    CHECK(DiffOperator::multiplication(x + y).str() == "(x + y)");
    CHECK(DiffOperator::divided_power(ctx, {2, 2}).scaled(4).str() == "4 * D[2,2]");
    CHECK(parse_operator(op.str(), ctx) == op);
}

TEST_CASE("dual projection pinned cases") {
    SUBCASE("alpha = 0, s = 1, p = 2: 1 = pi_0 + x*D[1] picks the even part") {
        auto ctx = ctx1(2);
        CHECK(dual_projection(ExpVec{0}, 1, ctx).str() == "x * D[1] + 1");
    }
    SUBCASE("alpha = p - 1 is the plain divided power") {
        auto ctx = ctx1(3);
        CHECK(dual_projection(ExpVec{2}, 1, ctx).str() == "D[2]");
    }
    SUBCASE("alpha = 1, s = 2, p = 2") {
        auto ctx = ctx1(2);
        CHECK(dual_projection(ExpVec{1}, 2, ctx).str() == "x^2 * D[3] + D[1]");
    }
    SUBCASE("two variables tensor together") {
        auto ctx = ctx2(2);
        CHECK(dual_projection(ExpVec{0, 0}, 1, ctx).str() ==
              "x*y * D[1,1] + x * D[1,0] + y * D[0,1] + 1");
        CHECK(dual_projection(ExpVec{2, 3}, 2, ctx).str() == "x * D[3,3] + D[2,3]");
    }
    SUBCASE("bad inputs") {
        auto ctx = ctx1(3);
        CHECK_THROWS_AS(dual_projection(ExpVec{0}, 0, ctx), DomainError);
        CHECK_THROWS_AS(dual_projection(ExpVec{0, 0}, 1, ctx), DomainError);
        CHECK_THROWS_AS(dual_projection(ExpVec{3}, 1, ctx), DomainError);
        CHECK_THROWS_AS(dual_projection(ExpVec{0}, 31, ctx), OverflowError);
    }
}

TEST_CASE("dual projection is dual to the monomial basis") {
    struct Grid {
        std::uint64_t p;
        unsigned s;
        std::size_t d;
    };
    for (Grid grid : {Grid{2, 1, 2}, Grid{2, 2, 1}, Grid{2, 2, 2}, Grid{3, 1, 2}, Grid{5, 1, 1}}) {
        auto ctx = ctx_n(grid.p, grid.d);
        std::uint64_t q = 1;
        for (unsigned k = 0; k < grid.s; ++k)
            q *= grid.p;
        // enumerate the basis {x^beta : beta_i < q}
        std::vector<ExpVec> basis;
        ExpVec beta(grid.d, 0);
        for (;;) {
            basis.push_back(beta);
            std::size_t i = 0;
            while (i < grid.d) {
                if (beta[i] + 1 < q) {
                    ++beta[i];
                    break;
                }
                beta[i] = 0;
                ++i;
            }
            if (i == grid.d)
                break;
        }
        for (const auto& alpha : basis) {
            DiffOperator pi = dual_projection(alpha, grid.s, ctx);
            CHECK(pi.level() <= grid.s);
            for (const auto& b : basis) {
                Poly image = pi.apply(Poly::monomial(ctx, b, 1));
                if (b == alpha)
                    CHECK(image == Poly::constant(ctx, 1));
                else
                    CHECK(image.is_zero());
            }
        }
    }
}

TEST_CASE("dual projection extracts Frobenius coordinates") {
    std::mt19937_64 rng(43);
    struct Grid {
        std::uint64_t p;
        unsigned s;
    };
    for (Grid grid : {Grid{2, 2}, Grid{3, 1}, Grid{5, 1}}) {
        auto ctx = ctx2(grid.p);
        std::uint64_t q = 1;
        for (unsigned k = 0; k < grid.s; ++k)
            q *= grid.p;
        for (int i = 0; i < 6; ++i) {
            Poly g = random_poly(rng, ctx, 6, 6, false);
            auto dec = frob_decompose(g, grid.s);
            for (std::uint32_t a = 0; a < q; ++a) {
                for (std::uint32_t b = 0; b < q; ++b) {
                    ExpVec alpha{a, b};
                    Poly got = dual_projection(alpha, grid.s, ctx).apply(g);
                    auto it = dec.coords.find(alpha);
                    Poly want = it == dec.coords.end() ? Poly::zero(ctx)
                                                       : frobenius_power(it->second, grid.s);
                    CHECK(got == want);
                }
            }
        }
    }
}

TEST_CASE("monomial fast path pinned cases") {
    SUBCASE("four squares, p = 5") {
        auto ctx = ctx_n(5, 4);
        Poly f = parse_poly("x1^2 + x2^2 + x3^2 + x4^2", ctx);
        auto op = monomial_fast_path(f, 1);
        REQUIRE(op.has_value());
        CHECK(op->str() == "4 * D[2,2,2,2]");
    }
    SUBCASE("four squares, p = 3") {
        auto ctx = ctx_n(3, 4);
        Poly f = parse_poly("x1^2 + x2^2 + x3^2 + x4^2", ctx);
        auto op = monomial_fast_path(f, 1);
        REQUIRE(op.has_value());
        CHECK(op->str() == "2 * D[2,2,0,0]");
    }
    SUBCASE("f = x gives the top divided power") {
        for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
            auto ctx = ctx1(p);
            auto op = monomial_fast_path(Poly::variable(ctx, 0), 1);
            REQUIRE(op.has_value());
            CHECK(op->str() == "D[" + std::to_string(p - 1) + "]");
        }
    }
    SUBCASE("misses when every bounded term is dominated") {
        auto ctx = ctx1(2);
        CHECK_FALSE(monomial_fast_path(parse_poly("x^2 + x + 1", ctx), 1).has_value());
        CHECK_FALSE(monomial_fast_path(parse_poly("x^2 + x + 1", ctx), 2).has_value());
    }
    SUBCASE("a hit maps f^(p^s - 1) to 1") {
        std::mt19937_64 rng(47);
        auto ctx = ctx2(3);
        int hits = 0;
        for (int i = 0; i < 30; ++i) {
            Poly f = random_poly(rng, ctx, 3, 5, true);
            for (unsigned s = 1; s <= 2 && hits < 12; ++s) {
                auto op = monomial_fast_path(f, s);
                if (!op)
                    continue;
                ++hits;
                CHECK(op->apply(pow_ps_minus_one(f, s)) == Poly::constant(ctx, 1));
                CHECK(op->level() <= s);
            }
        }
        CHECK(hits > 0);
    }
}

TEST_CASE("cofactor synthesis pinned: f = x over F_2 at level 2") {
    auto ctx = ctx1(2);
    DiffOperator delta = synthesize_delta_cofactors(Poly::variable(ctx, 0), 1);
    CHECK(delta.str() == "x^2 * D[3]");
    CHECK(verify_delta(delta, Poly::variable(ctx, 0), 2));
}

TEST_CASE("synthesize_delta pinned cases") {
    SUBCASE("fast path at level 1") {
        auto ctx = ctx1(2);
        DiffOperator delta = synthesize_delta(Poly::variable(ctx, 0), 1);
        CHECK(delta.str() == "D[1]");
        CHECK(verify_delta(delta, Poly::variable(ctx, 0), 1));
        CHECK(verify_delta(delta, Poly::variable(ctx, 0), 2)); // persists upward

        auto c2 = ctx2(2);
        Poly g = parse_poly("x^2 + y", c2);
        CHECK(synthesize_delta(g, 1).str() == "D[0,1]");
    }
    SUBCASE("univariate cofactor fallback, hand-checked") {
        // f = x^2 + x + 1: the fast path misses at both levels; the cofactor
        // route gives (x^4 + x^2 + 1) * pi_0 at level 2.
        auto ctx = ctx1(2);
        Poly f = parse_poly("x^2 + x + 1", ctx);
        DiffOperator delta = synthesize_delta(f, 1);
        CHECK(delta.str() == "(x^7 + x^5 + x^3) * D[3] + (x^6 + x^4 + x^2) * D[2] + "
                             "(x^5 + x^3 + x) * D[1] + (x^4 + x^2 + 1)");
        CHECK(delta.level() == 2);
        CHECK(verify_delta(delta, f, 2));
    }
    SUBCASE("bivariate cofactor fallback, hand-checked") {
        auto ctx = ctx2(2);
        Poly f = parse_poly("x^2*y + x*y^2", ctx);
        DiffOperator delta = synthesize_delta(f, 1);
        CHECK(delta.str() ==
              "(x^2*y + x*y^2) * D[3,3] + x^2 * D[3,2] + y^2 * D[2,3]");
        CHECK(verify_delta(delta, f, 2));

        DiffOperator monomial = synthesize_delta(parse_poly("x^2*y", ctx), 1);
        CHECK(monomial.str() == "x*y^2 * D[3,3] + y^2 * D[2,3]");
        CHECK(verify_delta(monomial, parse_poly("x^2*y", ctx), 2));
    }
    SUBCASE("four squares") {
        auto c5 = ctx_n(5, 4);
        Poly f5 = parse_poly("x1^2 + x2^2 + x3^2 + x4^2", c5);
        DiffOperator d5 = synthesize_delta(f5, 1);
        CHECK(d5.str() == "4 * D[2,2,2,2]");
        CHECK(d5.level() == 1);
        CHECK(verify_delta(d5, f5, 1));

        auto c3 = ctx_n(3, 4);
        Poly f3 = parse_poly("x1^2 + x2^2 + x3^2 + x4^2", c3);
        DiffOperator d3 = synthesize_delta(f3, 1);
        CHECK(d3.str() == "2 * D[2,2,0,0]");
        CHECK(verify_delta(d3, f3, 1));
    }
    SUBCASE("zero and constant inputs are rejected") {
        auto ctx = ctx1(3);
        CHECK_THROWS_AS(synthesize_delta(Poly::zero(ctx), 1), DomainError);
        CHECK_THROWS_AS(synthesize_delta(Poly::constant(ctx, 2), 1), DomainError);
    }
}

TEST_CASE("verify_delta") {
    auto ctx = ctx1(2);
    Poly x = Poly::variable(ctx, 0);
    SUBCASE("rejects a wrong operator") {
        CHECK_FALSE(verify_delta(DiffOperator::divided_power(ctx, {1}), x * x, 1));
    }
    SUBCASE("level preconditions") {
        CHECK_THROWS_AS(verify_delta(DiffOperator::divided_power(ctx, {1}), x, 0), DomainError);
        CHECK_THROWS_AS(verify_delta(DiffOperator::divided_power(ctx, {3}), x, 1), DomainError);
        CHECK_THROWS_AS(verify_delta(DiffOperator::divided_power(ctx, {1}), Poly::zero(ctx), 1),
                        DomainError);
    }
    SUBCASE("a verified identity persists at higher levels") {
        std::mt19937_64 rng(53);
        auto c2 = ctx2(3);
        for (int i = 0; i < 6; ++i) {
            Poly f = random_poly(rng, c2, 3, 4, true);
            ChainReport report = compute_chain(f);
            REQUIRE(report.stabilized_at.has_value());
            DiffOperator delta = synthesize_delta(f, *report.stabilized_at);
            unsigned level = std::max(delta.level(), 1u);
            CHECK(verify_delta(delta, f, level));
            CHECK(verify_delta(delta, f, level + 1));
        }
    }
}

TEST_CASE("operator expressions") {
    auto ctx = ctx1(2);
    DiffOperator d1 = DiffOperator::divided_power(ctx, {1});
    SUBCASE("kinds, accessors and levels") {
        OperatorExpr leaf = OperatorExpr::leaf(d1);
        CHECK(leaf.kind() == OperatorExpr::Kind::leaf);
        CHECK(leaf.level() == 1);
        CHECK(leaf.op() == d1);
        CHECK_THROWS_AS(leaf.inner(), DomainError);
        CHECK_THROWS_AS(leaf.outer(), DomainError);

        OperatorExpr tw = OperatorExpr::twist(leaf);
        CHECK(tw.kind() == OperatorExpr::Kind::twist);
        CHECK(tw.level() == 2);
        CHECK_THROWS_AS(tw.op(), DomainError);
        CHECK_THROWS_AS(tw.outer(), DomainError);
        CHECK(tw.inner().kind() == OperatorExpr::Kind::leaf);
        CHECK(frobenius_twist(leaf).str() == tw.str());

        OperatorExpr comp = OperatorExpr::compose(tw, leaf);
        CHECK(comp.kind() == OperatorExpr::Kind::compose);
        CHECK(comp.level() == 2);
        CHECK(comp.outer().kind() == OperatorExpr::Kind::twist);
        CHECK(comp.inner().kind() == OperatorExpr::Kind::leaf);
    }
    SUBCASE("twist semantics, hand-checked: twist(D[1]) on x^6 over F_2") {
        // x^6 = (x^3)^2, D[1](x^3) = x^2, squared back: x^4
        OperatorExpr tw = OperatorExpr::twist(OperatorExpr::leaf(d1));
        CHECK(tw.apply(parse_poly("x^6", ctx)) == parse_poly("x^4", ctx));
        // a polynomial with no p-th power part maps to zero
        CHECK(tw.apply(parse_poly("x", ctx)).is_zero());
    }
    SUBCASE("composition applies outer after inner") {
        OperatorExpr comp =
            OperatorExpr::compose(OperatorExpr::leaf(DiffOperator::multiplication(
                                      Poly::variable(ctx, 0))),
                                  OperatorExpr::leaf(d1));
        // x * D[1] on x^3: D[1] first gives x^2, then multiply: x^3
        CHECK(comp.apply(parse_poly("x^3", ctx)) == parse_poly("x^3", ctx));
    }
}

TEST_CASE("generator witness, hand-checked over F_2") {
    auto ctx = ctx1(2);
    Poly x = Poly::variable(ctx, 0);
    DiffOperator d1 = DiffOperator::divided_power(ctx, {1});
    SUBCASE("target 1 is the operator itself") {
        CHECK(generator_witness(d1, 1).str() == "D[1]");
        CHECK_THROWS_AS(generator_witness(d1, 0), DomainError);
    }
    SUBCASE("target 2: 1/x -> 1/x^4") {
        OperatorExpr w = generator_witness(d1, 2);
        CHECK(w.str() == "compose(twist(D[1]), D[1])");
        CHECK(w.level() == 2);
        LocalizedValue v = apply_localized(w, Poly::constant(ctx, 1), x, 1);
        CHECK(v.numerator == Poly::constant(ctx, 1));
        CHECK(v.denominator_power == 4);
    }
    SUBCASE("target 3 via the polynomial convenience overload") {
        OperatorExpr w = generator_witness(x, 3);
        CHECK(w.str() == "compose(twist(compose(twist(D[1]), D[1])), D[1])");
        LocalizedValue v = apply_localized(w, Poly::constant(ctx, 1), x, 1);
        CHECK(v.numerator == Poly::constant(ctx, 1));
        CHECK(v.denominator_power == 8);
    }
}

TEST_CASE("generator witness over F_3") {
    auto ctx = ctx1(3);
    Poly x = Poly::variable(ctx, 0);
    OperatorExpr w = generator_witness(x, 3);
    CHECK(w.str() == "compose(twist(compose(twist(D[2]), D[2])), D[2])");
    LocalizedValue v = apply_localized(w, Poly::constant(ctx, 1), x, 1);
    CHECK(v.numerator == Poly::constant(ctx, 1));
    CHECK(v.denominator_power == 27);
}

TEST_CASE("apply_localized matches formal calculus on negative powers") {
    SUBCASE("D[1] on 1/x^3 over F_2 is 1/x^4") {
        auto ctx = ctx1(2);
        OperatorExpr e = OperatorExpr::leaf(DiffOperator::divided_power(ctx, {1}));
        LocalizedValue v = apply_localized(e, Poly::constant(ctx, 1), Poly::variable(ctx, 0), 3);
        CHECK(v.numerator == Poly::constant(ctx, 1));
        CHECK(v.denominator_power == 4);
    }
    SUBCASE("d/dx on 1/x over F_3 is -1/x^2") {
        auto ctx = ctx1(3);
        OperatorExpr e = OperatorExpr::leaf(DiffOperator::divided_power(ctx, {1}));
        LocalizedValue raw = apply_localized(e, Poly::constant(ctx, 1), Poly::variable(ctx, 0), 1);
        CHECK(raw.denominator_power == 3);
        LocalizedValue v = normalize_localized(raw, Poly::variable(ctx, 0));
        CHECK(v.numerator == Poly::constant(ctx, 2));
        CHECK(v.denominator_power == 2);
    }
    SUBCASE("multiplication by f cancels one denominator power") {
        auto ctx = ctx2(5);
        Poly f = parse_poly("x^2 + y", ctx);
        OperatorExpr e = OperatorExpr::leaf(DiffOperator::multiplication(f));
        LocalizedValue v = normalize_localized(
            apply_localized(e, Poly::constant(ctx, 1), f, 3), f);
        CHECK(v.numerator == Poly::constant(ctx, 1));
        CHECK(v.denominator_power == 2);
    }
}

TEST_CASE("normalize_localized") {
    auto ctx = ctx1(3);
    Poly x = Poly::variable(ctx, 0);
    SUBCASE("cancels exactly divisible factors") {
        LocalizedValue v = normalize_localized({parse_poly("x^3 + x^2", ctx), 2}, x);
        CHECK(v.numerator == parse_poly("x + 1", ctx));
        CHECK(v.denominator_power == 0);
    }
    SUBCASE("stops at the first inexact division") {
        LocalizedValue v = normalize_localized({parse_poly("x^2 + 1", ctx), 2}, x);
        CHECK(v.numerator == parse_poly("x^2 + 1", ctx));
        CHECK(v.denominator_power == 2);
    }
    SUBCASE("zero numerator collapses") {
        LocalizedValue v = normalize_localized({Poly::zero(ctx), 5}, x);
        CHECK(v.numerator.is_zero());
        CHECK(v.denominator_power == 0);
    }
    SUBCASE("zero denominator polynomial is rejected") {
        CHECK_THROWS_AS(normalize_localized({x, 1}, Poly::zero(ctx)), DomainError);
        OperatorExpr e = OperatorExpr::leaf(DiffOperator::identity(ctx));
        CHECK_THROWS_AS(apply_localized(e, x, Poly::zero(ctx), 1), DomainError);
    }
}

TEST_CASE("witness property on random instances") {
    std::mt19937_64 rng(59);
    for (std::uint64_t p : {2ull, 3ull}) {
        auto ctx = ctx2(p);
        for (int i = 0; i < 5; ++i) {
            Poly f = random_poly(rng, ctx, 3, 4, true);
            OperatorExpr w = generator_witness(f, 2);
            LocalizedValue v = apply_localized(w, Poly::constant(ctx, 1), f, 1);
            // v should equal 1/f^(p^2): cross-multiply to avoid normalization
            std::uint64_t q = v.denominator_power;
            REQUIRE(q >= p * p);
            unsigned n = 0;
            for (std::uint64_t t = 1; t < q; t *= p)
                ++n;
            Poly expected = n >= 3 ? frobenius_power(pow_ps_minus_one(f, n - 2), 2)
                                   : Poly::constant(ctx, 1);
            CHECK(v.numerator == expected);
        }
    }
}
