#pragma once

#include <limits>
#include <optional>

#include "polyoracle/types.hpp"

namespace polyoracle {

/// Affine hyperplane {x : a.dot(x) = b}. The normal need not be unit length.
template <typename Scalar>
struct Hyperplane {
    VectorX<Scalar> a;
    Scalar b;

    Hyperplane(VectorX<Scalar> normal, Scalar offset) : a(std::move(normal)), b(offset) {
        if (a.size() == 0 || a.norm() == Scalar(0))
            throw std::invalid_argument("Hyperplane: zero normal");
    }
};

/// Ray {s + t * dir : t >= 0}. The direction is normalized at construction,
/// so the parameter t is Euclidean arc length from the apex.
template <typename Scalar>
struct Ray {
    VectorX<Scalar> s;
    VectorX<Scalar> dir;  // unit length

    Ray(VectorX<Scalar> apex, const VectorX<Scalar>& v) : s(std::move(apex)) {
        if (v.size() != s.size()) throw std::invalid_argument("Ray: dimension mismatch");
        const Scalar nrm = v.norm();
        if (!(nrm > Scalar(0))) throw std::invalid_argument("Ray: zero direction");
        dir = v / nrm;
    }

    VectorX<Scalar> at(Scalar t) const { return s + t * dir; }
};

/// Axis-aligned box [lo, hi].
template <typename Scalar>
struct Box {
    VectorX<Scalar> lo;
    VectorX<Scalar> hi;

    Box(VectorX<Scalar> lo_, VectorX<Scalar> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size()) throw std::invalid_argument("Box: dimension mismatch");
        if ((lo.array() > hi.array()).any())
            throw std::invalid_argument("Box: lo exceeds hi");
    }

    Scalar diagonal() const { return (hi - lo).norm(); }

    bool strictly_contains(const VectorX<Scalar>& p) const {
        return (p.array() > lo.array()).all() && (p.array() < hi.array()).all();
    }
};

/// Orthogonal projection of p onto H.
template <typename Scalar, typename Derived>
VectorX<Scalar> project_onto_hyperplane(const Eigen::MatrixBase<Derived>& p,
                                        const Hyperplane<Scalar>& H) {
    if (p.size() != H.a.size())
        throw std::invalid_argument("project_onto_hyperplane: dimension mismatch");
    const Scalar sq = H.a.squaredNorm();
    return p + ((H.b - H.a.dot(p)) / sq) * H.a;
}

/// Mirror image of p across H: 2 * proj(p) - p.
template <typename Scalar, typename Derived>
VectorX<Scalar> reflect_across_hyperplane(const Eigen::MatrixBase<Derived>& p,
                                          const Hyperplane<Scalar>& H) {
    if (p.size() != H.a.size())
        throw std::invalid_argument("reflect_across_hyperplane: dimension mismatch");
    const Scalar sq = H.a.squaredNorm();
    return p + (Scalar(2) * (H.b - H.a.dot(p)) / sq) * H.a;
}

/// Signed arc length t of the crossing r(t) in H, or nullopt when the ray
/// direction is parallel to H within tolerance. t < 0 means the crossing lies
/// behind the apex; callers decide what to do with it.
template <typename Scalar>
std::optional<Scalar> ray_hyperplane_param(const Ray<Scalar>& r, const Hyperplane<Scalar>& H,
                                           Scalar parallel_tol = Scalar(1e-12)) {
    const Scalar den = H.a.dot(r.dir);
    if (std::abs(den) <= parallel_tol * H.a.norm()) return std::nullopt;
    return (H.b - H.a.dot(r.s)) / den;
}

template <typename Scalar>
std::optional<VectorX<Scalar>> ray_hyperplane_intersect(const Ray<Scalar>& r,
                                                        const Hyperplane<Scalar>& H,
                                                        Scalar parallel_tol = Scalar(1e-12)) {
    const auto t = ray_hyperplane_param(r, H, parallel_tol);
    if (!t) return std::nullopt;
    return r.at(*t);
}

/// Arc length at which the ray leaves the box (slab method). The apex must be
/// strictly inside, so every coordinate contributes a positive exit bound.
template <typename Scalar>
Scalar ray_box_exit_param(const Ray<Scalar>& r, const Box<Scalar>& box) {
    if (r.s.size() != box.lo.size())
        throw std::invalid_argument("ray_box_exit: dimension mismatch");
    if (!box.strictly_contains(r.s))
        throw std::invalid_argument("ray_box_exit: apex outside box");
    Scalar t_exit = std::numeric_limits<Scalar>::infinity();
    for (Index j = 0; j < r.s.size(); ++j) {
        const Scalar v = r.dir[j];
        if (v > Scalar(0))
            t_exit = std::min(t_exit, (box.hi[j] - r.s[j]) / v);
        else if (v < Scalar(0))
            t_exit = std::min(t_exit, (box.lo[j] - r.s[j]) / v);
    }
    return t_exit;
}

template <typename Scalar>
VectorX<Scalar> ray_box_exit(const Ray<Scalar>& r, const Box<Scalar>& box) {
    return r.at(ray_box_exit_param(r, box));
}

}  // namespace polyoracle
