#pragma once

#include <cstdint>
#include <vector>

namespace lcmix {

// SplitMix64. Seedable and splittable: split(i) derives an independent child
// stream, which keeps rejection-sampling attempts reproducible regardless of
// how much randomness earlier attempts consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    Rng split(std::uint64_t stream) const {
        Rng probe(state_ ^ (0xa0761d6478bd642fULL * (stream + 1)));
        return Rng(probe.next());
    }

    // Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n), unbiased.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t v = next();
            if (v >= threshold) return v % n;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = (std::size_t)below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    static constexpr const char* name() { return "splitmix64"; }

private:
    std::uint64_t state_;
};

} // namespace lcmix
