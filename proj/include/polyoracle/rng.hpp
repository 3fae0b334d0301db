#pragma once

#include <cmath>
#include <cstdint>

#include "polyoracle/types.hpp"

namespace polyoracle {

/// Counter-based pseudo-random generator (splitmix64 output function over an
/// incrementing Weyl counter). Every draw is a pure hash of (seed, counter),
/// so streams are reproducible across platforms and independent of call-site
/// history. Sub-streams for parallel work come from fork().
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in the open interval (0, 1): 53-bit mantissa, offset half-ulp
    /// so neither endpoint is ever returned.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (explicit formula, no libstdc++
    /// distribution objects, so the stream is stable across toolchains).
    double gaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <typename Scalar = double>
    VectorX<Scalar> gaussian_vector(Index d) {
        VectorX<Scalar> v(d);
        for (Index i = 0; i < d; ++i) v[i] = static_cast<Scalar>(gaussian());
        return v;
    }

    /// Uniform direction on the unit sphere.
    template <typename Scalar = double>
    VectorX<Scalar> unit_vector(Index d) {
        for (;;) {
            VectorX<Scalar> v = gaussian_vector<Scalar>(d);
            const Scalar nrm = v.norm();
            if (nrm > Scalar(1e-12)) return v / nrm;
        }
    }

    /// Derived independent stream. Deterministic in (current state, tag).
    Rng fork(std::uint64_t tag) const {
        std::uint64_t z = state_ ^ (0x632be59bd9b4e019ULL * (tag + 1));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

  private:
    std::uint64_t state_;
};

}  // namespace polyoracle
