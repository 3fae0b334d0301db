#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyoracle/hpolytope.hpp"
#include "polyoracle/rng.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

enum class GenVariant { PAPER, SYMMETRIZED };

/// Parameters of the synthetic polytope generator. The PAPER variant draws
/// every coefficient as mod(U(0, 32767), 1000) with right-hand side rhs, so
/// the origin is strictly interior with uniform slack. All normals are then
/// nonnegative, which leaves the polytope unbounded; the SYMMETRIZED variant
/// flips each coefficient's sign with probability 1/2 and is bounded with
/// overwhelming probability once n >> d.
struct GenSpec {
    Index d;
    Index n;
    double rhs = 1000.0;
    std::uint64_t seed = 0;
    GenVariant variant = GenVariant::PAPER;
    /// false: real-valued remainder of a uniform real draw (default reading);
    /// true: integer draw from {0..32767} reduced mod 1000.
    bool integer_coeffs = false;
};

template <typename Scalar = double>
HPolytope<Scalar> gen_polytope(const GenSpec& spec) {
    if (spec.d < 2) throw std::invalid_argument("gen_polytope: d must be >= 2");
    if (spec.n < spec.d + 1) throw std::invalid_argument("gen_polytope: n must be >= d+1");
    if (!(spec.rhs > 0)) throw std::invalid_argument("gen_polytope: rhs must be positive");

    Rng rng(spec.seed);
    MatrixX<Scalar> A(spec.n, spec.d);
    for (Index i = 0; i < spec.n; ++i) {
        bool nonzero = false;
        while (!nonzero) {
            for (Index j = 0; j < spec.d; ++j) {
                double v;
                if (spec.integer_coeffs) {
                    v = static_cast<double>((rng.next_u64() % 32768u) % 1000u);
                } else {
                    v = std::fmod(rng.uniform(0.0, 32767.0), 1000.0);
                }
                if (spec.variant == GenVariant::SYMMETRIZED && rng.uniform01() < 0.5) v = -v;
                A(i, j) = static_cast<Scalar>(v);
                nonzero = nonzero || v != 0.0;
            }
        }
    }
    const VectorX<Scalar> b = VectorX<Scalar>::Constant(spec.n, static_cast<Scalar>(spec.rhs));
    return HPolytope<Scalar>(std::move(A), b);
}

/// Exact ray shooting: the first facet crossing along the ray, found by the
/// minimum positive slack/direction ratio over all facets the ray approaches.
template <typename Scalar>
std::pair<VectorX<Scalar>, Index> brute_ray_shoot(const HPolytope<Scalar>& P,
                                                  const Ray<Scalar>& r) {
    if (membership_direct(P, r.s) != Membership::INSIDE)
        throw std::invalid_argument("brute_ray_shoot: ray apex must lie strictly inside");
    const VectorX<Scalar> den = P.A() * r.dir;
    const VectorX<Scalar> s = slack(P, r.s);
    Scalar t_best = std::numeric_limits<Scalar>::infinity();
    Index facet = -1;
    for (Index i = 0; i < P.num_facets(); ++i) {
        if (den[i] <= Scalar(0)) continue;
        const Scalar t = s[i] / den[i];
        if (t < t_best) {
            t_best = t;
            facet = i;
        }
    }
    if (facet < 0)
        throw NumericError("brute_ray_shoot: polytope unbounded along the ray direction");
    return {r.at(t_best), facet};
}

/// Hit-and-run sampler: from the current point, draw a uniform random
/// direction, intersect the chord with the polytope via slacks, and jump to a
/// uniform point on the chord. Discards `burn` steps, then returns `count`
/// consecutive states.
template <typename Scalar>
std::vector<VectorX<Scalar>> hit_and_run(const HPolytope<Scalar>& P,
                                         const VectorX<Scalar>& start, long burn, long count,
                                         std::uint64_t seed) {
    if (membership_direct(P, start) != Membership::INSIDE)
        throw std::invalid_argument("hit_and_run: start must lie strictly inside");
    if (burn < 0 || count < 0) throw std::invalid_argument("hit_and_run: negative counts");

    Rng rng(seed);
    VectorX<Scalar> x = start;
    VectorX<Scalar> sl = slack(P, x);
    std::vector<VectorX<Scalar>> out;
    out.reserve(count);

    for (long step = 0; step < burn + count; ++step) {
        const VectorX<Scalar> u = rng.unit_vector<Scalar>(P.dim());
        const VectorX<Scalar> den = P.A() * u;
        Scalar t_hi = std::numeric_limits<Scalar>::infinity();
        Scalar t_lo = -std::numeric_limits<Scalar>::infinity();
        for (Index i = 0; i < P.num_facets(); ++i) {
            if (den[i] > Scalar(0))
                t_hi = std::min(t_hi, sl[i] / den[i]);
            else if (den[i] < Scalar(0))
                t_lo = std::max(t_lo, sl[i] / den[i]);
        }
        if (!std::isfinite(t_hi) || !std::isfinite(t_lo))
            throw NumericError("hit_and_run: unbounded chord at step " + std::to_string(step));
        const Scalar t = static_cast<Scalar>(t_lo + (t_hi - t_lo) * rng.uniform01());
        x += t * u;
        sl -= t * den;
        if (step % 128 == 127) sl = slack(P, x);  // shed incremental drift
        if (step >= burn) out.push_back(x);
    }
    return out;
}

/// Push interior points outside: scale each along its direction from the
/// anchor to `margin` beyond the exact boundary crossing.
template <typename Scalar>
std::vector<VectorX<Scalar>> make_outside(const HPolytope<Scalar>& P,
                                          const std::vector<VectorX<Scalar>>& pts,
                                          const VectorX<Scalar>& anchor, Scalar margin) {
    if (!(margin > Scalar(0))) throw std::invalid_argument("make_outside: margin must be positive");
    std::vector<VectorX<Scalar>> out;
    out.reserve(pts.size());
    for (const VectorX<Scalar>& p : pts) {
        const VectorX<Scalar> dirv = p - anchor;
        if (dirv.norm() <= Scalar(1e-12) * P.scale())
            throw std::invalid_argument("make_outside: point coincides with the anchor");
        const Ray<Scalar> r(anchor, dirv);
        const auto [hit, facet] = brute_ray_shoot(P, r);
        const Scalar t_star = (hit - anchor).norm();
        out.push_back(r.at(t_star + margin));
    }
    return out;
}

}  // namespace polyoracle
