#pragma once

#include <vector>

#include "polyoracle/datagen.hpp"
#include "polyoracle/hpolytope.hpp"
#include "polyoracle/lp.hpp"

namespace test_util {

using polyoracle::HPolytope;
using polyoracle::Index;
using polyoracle::MatrixX;
using polyoracle::VectorX;

/// {x <= 1, -x <= 1, y <= 1, -y <= 1}
inline HPolytope<double> unit_square() {
    MatrixX<double> A(4, 2);
    A << 1, 0, -1, 0, 0, 1, 0, -1;
    VectorX<double> b(4);
    b << 1, 1, 1, 1;
    return HPolytope<double>(A, b);
}

/// x >= 0, y >= 0, x + y <= 1
inline HPolytope<double> triangle() {
    MatrixX<double> A(3, 2);
    A << -1, 0, 0, -1, 1, 1;
    VectorX<double> b(3);
    b << 0, 0, 1;
    return HPolytope<double>(A, b);
}

/// Axis-aligned box [lo, hi] as 2d halfspaces.
inline HPolytope<double> box_polytope(const VectorX<double>& lo, const VectorX<double>& hi) {
    const Index d = lo.size();
    MatrixX<double> A = MatrixX<double>::Zero(2 * d, d);
    VectorX<double> b(2 * d);
    for (Index j = 0; j < d; ++j) {
        A(2 * j, j) = 1;
        b[2 * j] = hi[j];
        A(2 * j + 1, j) = -1;
        b[2 * j + 1] = -lo[j];
    }
    return HPolytope<double>(A, b);
}

inline HPolytope<double> cube(Index d, double halfwidth = 1.0) {
    return box_polytope(VectorX<double>::Constant(d, -halfwidth),
                        VectorX<double>::Constant(d, halfwidth));
}

/// Random sign-symmetrized polytope, regenerated until bounded so the origin
/// anchor and boundary oracles are usable.
inline HPolytope<double> bounded_random(Index d, Index n, std::uint64_t seed) {
    for (std::uint64_t s = seed;; ++s) {
        polyoracle::GenSpec spec;
        spec.d = d;
        spec.n = n;
        spec.seed = s;
        spec.variant = polyoracle::GenVariant::SYMMETRIZED;
        HPolytope<double> P = polyoracle::gen_polytope(spec);
        try {
            (void)polyoracle::bounding_box(P);
            return P;
        } catch (const polyoracle::NumericError&) {
            continue;
        }
    }
}

inline VectorX<double> vec2(double x, double y) {
    VectorX<double> v(2);
    v << x, y;
    return v;
}

}  // namespace test_util
