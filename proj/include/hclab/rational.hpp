#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace hclab {

// Exact rationals on arbitrary-precision integers; always in lowest terms,
// denominator positive (both maintained by the backend).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// true iff p does not divide the denominator of q (q in lowest terms),
// i.e. q lies in the local ring Z_(p).
inline bool p_local_check(const Rational& q, uint32_t p) {
    return denominator(q) % p != 0;
}

// Reduce a p-local rational mod p.
inline uint32_t reduce_mod_p(const Rational& q, uint32_t p) {
    BigInt num = numerator(q) % p;
    if (num < 0) num += p;
    BigInt den = denominator(q) % p;
    uint32_t n = num.convert_to<uint32_t>();
    uint32_t d = den.convert_to<uint32_t>();
    if (d == 0) throw std::domain_error("rational is not p-local");
    // d^(p-2) = d^-1 mod p
    uint64_t inv = 1, base = d, e = p - 2;
    while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return uint32_t(uint64_t(n) * inv % p);
}

} // namespace hclab
