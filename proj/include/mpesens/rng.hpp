#ifndef MPESENS_RNG_HPP
#define MPESENS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace mpesens {

// Deterministic generator with hand-rolled distributions. std::*_distribution
// is implementation-defined, which would break seed-reproducibility of
// random networks and checks across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {  // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    // Exp(1); used to sample Dirichlet(1) rows by normalization.
    double exponential() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return -std::log(u);
    }

    // Derives an independent stream, e.g. one per random network index.
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (salt * 0xd2b74407b1ce6e93ULL + 0x9e3779b97f4a7c15ULL));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

}  // namespace mpesens

#endif
