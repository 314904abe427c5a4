#pragma once

#include <cstdint>

#include "coble/errors.hpp"

namespace coble {

using fe = std::uint32_t;  // field element, canonical residue in [0, q)

// Arithmetic in F_q for an odd prime q < 2^31. Products are reduced
// immediately; the Barrett constant makes the reduction division-free,
// which matters in the scan and elimination hot loops.
class Fp {
  public:
    explicit Fp(fe q) : q_(q), barrett_(q ? (~0ULL / q) : 0) {}
    Fp() : Fp(3) {}

    fe q() const { return q_; }

    fe add(fe a, fe b) const {
        fe s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    fe sub(fe a, fe b) const { return a >= b ? a - b : a + q_ - b; }
    fe neg(fe a) const { return a == 0 ? 0 : q_ - a; }

    fe mul(fe a, fe b) const { return reduce(static_cast<std::uint64_t>(a) * b); }

    // Reduce x < 2^62 to [0, q). One 128-bit multiply instead of a divide.
    fe reduce(std::uint64_t x) const {
        std::uint64_t quo = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * barrett_) >> 64);
        std::uint64_t r = x - quo * q_;
        if (r >= q_) r -= q_;
        return static_cast<fe>(r);
    }

    fe pow(fe a, std::uint64_t e) const {
        fe r = 1 % q_;
        fe base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    fe inv(fe a) const {
        if (a == 0) throw ZeroInverse();
        // extended Euclid on (a, q)
        std::int64_t t = 0, newt = 1;
        std::int64_t r = q_, newr = a;
        while (newr != 0) {
            std::int64_t quo = r / newr;
            std::int64_t tmp = t - quo * newt;
            t = newt;
            newt = tmp;
            tmp = r - quo * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += q_;
        return static_cast<fe>(t);
    }

    fe from_int(std::int64_t v) const {
        std::int64_t m = v % static_cast<std::int64_t>(q_);
        if (m < 0) m += q_;
        return static_cast<fe>(m);
    }

    bool operator==(const Fp& o) const { return q_ == o.q_; }

  private:
    fe q_;
    std::uint64_t barrett_;
};

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace coble
