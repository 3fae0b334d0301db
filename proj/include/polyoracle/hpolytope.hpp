#pragma once

#include <utility>

#include "polyoracle/geometry.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

enum class Membership { INSIDE, OUTSIDE, BOUNDARY };

/// Convex polytope in halfspace representation {x : A x <= b}. Facet i is the
/// row pair (A.row(i), b[i]). Row norms are cached at construction; instances
/// are immutable afterwards.
template <typename Scalar>
class HPolytope {
  public:
    HPolytope(MatrixX<Scalar> A, VectorX<Scalar> b) : A_(std::move(A)), b_(std::move(b)) {
        if (A_.rows() != b_.size())
            throw std::invalid_argument("HPolytope: A rows and b length differ");
        if (A_.rows() == 0 || A_.cols() == 0)
            throw std::invalid_argument("HPolytope: empty system");
        row_norms_ = A_.rowwise().norm();
        if ((row_norms_.array() == Scalar(0)).any())
            throw std::invalid_argument("HPolytope: zero facet normal");
        scale_ = std::max(Scalar(1),
                          std::max(b_.cwiseAbs().maxCoeff(), row_norms_.maxCoeff()));
    }

    Index dim() const { return A_.cols(); }
    Index num_facets() const { return A_.rows(); }
    const MatrixX<Scalar>& A() const { return A_; }
    const VectorX<Scalar>& b() const { return b_; }
    const VectorX<Scalar>& row_norms() const { return row_norms_; }

    /// max(1, |b_i|, ||a_i||): the magnitude every relative tolerance in this
    /// library is scaled by.
    Scalar scale() const { return scale_; }

    Hyperplane<Scalar> facet_hyperplane(Index i) const {
        return Hyperplane<Scalar>(A_.row(i).transpose(), b_[i]);
    }

  private:
    MatrixX<Scalar> A_;
    VectorX<Scalar> b_;
    VectorX<Scalar> row_norms_;
    Scalar scale_;
};

/// Slack vector b - A q; q is in the polytope iff every entry is >= 0.
template <typename Scalar>
VectorX<Scalar> slack(const HPolytope<Scalar>& P, const VectorX<Scalar>& q) {
    if (q.size() != P.dim()) throw std::invalid_argument("slack: dimension mismatch");
    return P.b() - P.A() * q;
}

/// Reference O(nd) membership check: sign of the minimum slack against a
/// relative tolerance band.
template <typename Scalar>
Membership membership_direct(const HPolytope<Scalar>& P, const VectorX<Scalar>& q,
                             Scalar tol = Scalar(1e-9)) {
    if (tol < Scalar(0)) throw std::invalid_argument("membership_direct: negative tol");
    const Scalar min_slack = slack(P, q).minCoeff();
    const Scalar band = tol * P.scale();
    if (min_slack > band) return Membership::INSIDE;
    if (min_slack < -band) return Membership::OUTSIDE;
    return Membership::BOUNDARY;
}

/// Lower bound on the Euclidean distance from q to the union of facet
/// hyperplanes; exact d(q, boundary) when q is inside.
template <typename Scalar>
Scalar boundary_distance_lb(const HPolytope<Scalar>& P, const VectorX<Scalar>& q) {
    return (slack(P, q).cwiseAbs().array() / P.row_norms().array()).minCoeff();
}

}  // namespace polyoracle
