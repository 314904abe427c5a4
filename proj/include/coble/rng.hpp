#pragma once

#include <cstdint>
#include <string>

namespace coble {

// Splittable counter-based PRNG (splitmix64 core). Every random choice in a
// run descends from one config seed; substreams are derived by hashing a tag
// so that concurrent consumers stay decoupled and replayable.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) without modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    std::uint32_t residue(std::uint32_t q) { return static_cast<std::uint32_t>(below(q)); }

    Rng split(std::uint64_t tag) {
        std::uint64_t h = next_u64();
        h ^= tag + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return Rng(h);
    }

    Rng split(const std::string& tag) {
        std::uint64_t h = 1469598103934665603ULL;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        return split(h);
    }

  private:
    std::uint64_t state_;
};

}  // namespace coble
