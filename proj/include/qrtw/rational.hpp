#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

#include "qrtw/errors.hpp"

namespace qrtw {

// Arbitrary-precision rational. mpq_class already maintains the invariants we
// need: canonical form (gcd removed), positive denominator, 0 stored as 0/1.
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) { Rational q(n, d); q.canonicalize(); return q; }

// Parses "p/q" or an integer literal (optional leading '-').
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    try {
        Rational q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal '" + s + "'");
    }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Number of bits in numerator/denominator, used for the orbit bit cap.
inline size_t bit_size(const Rational& q) {
    size_t n = mpz_sizeinbase(q.get_num().get_mpz_t(), 2);
    size_t d = mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
    return n > d ? n : d;
}

// Random rationals for randomized identity testing: numerator and denominator
// drawn uniformly from [1, 2^32], so sampled values are positive and never hit
// the coordinate hyperplanes.
class RationalSampler {
public:
    explicit RationalSampler(uint64_t seed) : rng_(seed) {}

    Rational next() {
        uint64_t n = dist_(rng_), d = dist_(rng_);
        Rational q(static_cast<unsigned long>(n), static_cast<unsigned long>(d));
        q.canonicalize();
        return q;
    }

    static constexpr double kSampleSpace = 4294967296.0; // 2^32

private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<uint64_t> dist_{1, uint64_t(1) << 32};
};

} // namespace qrtw
