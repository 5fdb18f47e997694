#include "frobop/field.hpp"

namespace frobop {

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p > max_modulus)
        throw DomainError("modulus too large: " + std::to_string(p));
    if (!is_prime(p))
        throw DomainError("modulus is not prime: " + std::to_string(p));
}

FieldScalar PrimeField::reduce_signed(std::int64_t v) const {
    std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    if (r < 0)
        r += m;
    return static_cast<FieldScalar>(r);
}

FieldScalar PrimeField::add(FieldScalar a, FieldScalar b) const {
    FieldScalar s = a + b;
    return s >= p_ ? s - p_ : s;
}

FieldScalar PrimeField::sub(FieldScalar a, FieldScalar b) const {
    return a >= b ? a - b : a + p_ - b;
}

FieldScalar PrimeField::mul(FieldScalar a, FieldScalar b) const {
    return (a * b) % p_;
}

FieldScalar PrimeField::neg(FieldScalar a) const {
    return a == 0 ? 0 : p_ - a;
}

FieldScalar PrimeField::pow(FieldScalar a, std::uint64_t e) const {
    FieldScalar base = a % p_;
    FieldScalar acc = 1;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FieldScalar PrimeField::inv(FieldScalar a) const {
    a %= p_;
    if (a == 0)
        throw DivisionByZero("inverse of zero");
    return pow(a, p_ - 2); // Fermat
}

FieldScalar PrimeField::pth_root(FieldScalar a) const {
    // a^p = a for every a in F_p, so the root map is the identity.
    return a % p_;
}

namespace {

// C(n, k) mod p for 0 <= k <= n < p, by the falling-factorial quotient.
FieldScalar small_binomial(std::uint64_t n, std::uint64_t k, const PrimeField& f) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    FieldScalar num = 1, den = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        num = f.mul(num, f.reduce(n - k + i));
        den = f.mul(den, f.reduce(i));
    }
    return f.mul(num, f.inv(den));
}

} // namespace

FieldScalar lucas_binomial(std::uint64_t n, std::uint64_t k, const PrimeField& field) {
    const std::uint64_t p = field.p();
    FieldScalar acc = 1;
    while (n > 0 || k > 0) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd)
            return 0;
        acc = field.mul(acc, small_binomial(nd, kd, field));
        n /= p;
        k /= p;
    }
    return acc;
}

} // namespace frobop
