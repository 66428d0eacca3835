#pragma once

#include <cstdint>
#include <stdexcept>

namespace hclab {

// Arithmetic in the prime field F_p, residues stored as uint32_t in [0, p).
struct Fp {
    uint32_t p;

    explicit Fp(uint32_t prime) : p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("modulus must be prime");
    }

    static bool is_prime(uint32_t n) {
        if (n < 2) return false;
        for (uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p ? s - p : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return uint32_t(uint64_t(a) * b % p); }
    uint32_t reduce(int64_t a) const {
        int64_t r = a % int64_t(p);
        return uint32_t(r < 0 ? r + p : r);
    }

    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t r = 1, base = a % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return uint32_t(r);
    }

    uint32_t inv(uint32_t a) const {
        if (a % p == 0) throw std::domain_error("inverse of zero");
        return pow(a, p - 2);
    }
};

} // namespace hclab
