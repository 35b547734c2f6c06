#include "pmrc/field.hpp"

#include <random>
#include <string>

namespace pmrc {

bool is_prime(uint32_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(uint32_t q) : q_(q) {
    if (q > kMaxModulus)
        throw InvalidParams("field modulus " + std::to_string(q) + " exceeds 2^31 - 1");
    if (!is_prime(q))
        throw InvalidParams("field modulus " + std::to_string(q) + " is not prime");
}

uint32_t PrimeField::pow(uint32_t base, uint64_t e) const noexcept {
    uint64_t r = 1;
    uint64_t b = base % q_;
    while (e > 0) {
        if (e & 1) r = (r * b) % q_;
        b = (b * b) % q_;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a % q_ == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
    // q is prime: a^(q-2) works and avoids signed extended-gcd bookkeeping.
    return pow(a, q_ - 2);
}

RandomSource::RandomSource(const PrimeField& field) : field_(field) {
    std::random_device rd;
    rng_.seed((static_cast<uint64_t>(rd()) << 32) ^ rd());
}

RandomSource::RandomSource(const PrimeField& field, uint64_t seed) : field_(field), rng_(seed) {}

uint32_t RandomSource::draw() {
    const uint64_t q = field_.modulus();
    const uint64_t limit = UINT64_MAX - UINT64_MAX % q;
    uint64_t x;
    do {
        x = rng_();
    } while (x >= limit);
    return static_cast<uint32_t>(x % q);
}

} // namespace pmrc
