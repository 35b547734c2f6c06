#pragma once

#include <cstdint>
#include <random>

#include "pmrc/errors.hpp"

namespace pmrc {

// Arithmetic context for GF(q), q prime. The modulus is capped below 2^31 so
// that every product of two reduced values fits in a 64-bit intermediate.
class PrimeField {
public:
    static constexpr uint32_t kMaxModulus = 0x7fffffffu; // 2^31 - 1

    explicit PrimeField(uint32_t q);

    uint32_t modulus() const noexcept { return q_; }

    uint32_t add(uint32_t a, uint32_t b) const noexcept {
        uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const noexcept {
        return a >= b ? a - b : a + q_ - b;
    }
    uint32_t neg(uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const noexcept {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % q_);
    }
    uint32_t pow(uint32_t base, uint64_t e) const noexcept;
    uint32_t inv(uint32_t a) const; // throws DivisionByZero on a == 0
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    // Reduce an arbitrary integer into [0, q).
    uint32_t reduce(uint64_t v) const noexcept { return static_cast<uint32_t>(v % q_); }

    bool operator==(const PrimeField& o) const noexcept { return q_ == o.q_; }

private:
    uint32_t q_;
};

// A single field element bound to its field (fields are value types, so Fe
// carries its own copy). Mixed-field operands throw.
class Fe {
public:
    Fe(uint32_t value, const PrimeField& field) : v_(value % field.modulus()), f_(field) {}

    uint32_t value() const noexcept { return v_; }
    const PrimeField& field() const noexcept { return f_; }

    Fe inv() const { return Fe(f_.inv(v_), f_); }
    Fe pow(uint64_t e) const { return Fe(f_.pow(v_, e), f_); }

    friend Fe operator+(const Fe& a, const Fe& b) { a.check(b); return Fe(a.f_.add(a.v_, b.v_), a.f_); }
    friend Fe operator-(const Fe& a, const Fe& b) { a.check(b); return Fe(a.f_.sub(a.v_, b.v_), a.f_); }
    friend Fe operator*(const Fe& a, const Fe& b) { a.check(b); return Fe(a.f_.mul(a.v_, b.v_), a.f_); }
    friend Fe operator/(const Fe& a, const Fe& b) { a.check(b); return Fe(a.f_.div(a.v_, b.v_), a.f_); }
    friend bool operator==(const Fe& a, const Fe& b) { a.check(b); return a.v_ == b.v_; }

private:
    void check(const Fe& o) const {
        if (!(f_ == o.f_)) throw FieldMismatch();
    }
    uint32_t v_;
    PrimeField f_;
};

// Uniform field-element source. Default-constructed from OS entropy; the
// seeded form is bit-reproducible across platforms (rejection sampling on a
// fixed mt19937_64 stream, no std::uniform_int_distribution).
class RandomSource {
public:
    explicit RandomSource(const PrimeField& field);
    RandomSource(const PrimeField& field, uint64_t seed);

    uint32_t draw();
    uint64_t draw_u64() { return rng_(); }

    const PrimeField& field() const noexcept { return field_; }

private:
    PrimeField field_;
    std::mt19937_64 rng_;
};

bool is_prime(uint32_t n) noexcept;

} // namespace pmrc
