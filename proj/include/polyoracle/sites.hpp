#pragma once

#include <utility>

#include "polyoracle/hpolytope.hpp"
#include "polyoracle/lp.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

/// The Voronoi site set whose cell of the anchor is exactly the polytope:
/// the interior anchor plus, per facet, the anchor's mirror image across
/// that facet's hyperplane. Row 0 of points() is the anchor; row i >= 1 is
/// the site generated by facet i-1.
template <typename Scalar>
class SiteSet {
  public:
    SiteSet(MatrixX<Scalar> pts, Scalar delta) : points_(std::move(pts)), delta_(delta) {}

    Index dim() const { return points_.cols(); }
    Index num_sites() const { return points_.rows() - 1; }

    const MatrixX<Scalar>& points() const { return points_; }
    VectorX<Scalar> anchor() const { return points_.row(0).transpose(); }
    VectorX<Scalar> site(Index i) const { return points_.row(i).transpose(); }

    /// Facet/row index of the polytope that generated site row i (i >= 1).
    Index facet_of(Index i) const {
        if (i < 1 || i > num_sites()) throw std::invalid_argument("facet_of: not a site row");
        return i - 1;
    }

    /// max_i distance from the anchor to a site.
    Scalar delta() const { return delta_; }

  private:
    MatrixX<Scalar> points_;
    Scalar delta_;
};

/// Reflect a strictly interior point across every facet hyperplane.
/// The anchor must clear the boundary by interior_margin * scale; reflecting
/// a boundary point would collapse its Voronoi cell.
template <typename Scalar>
SiteSet<Scalar> build_sites(const HPolytope<Scalar>& P, const VectorX<Scalar>& p_star,
                            Scalar interior_margin = Scalar(1e-9)) {
    if (!(interior_margin > Scalar(0)))
        throw std::invalid_argument("build_sites: interior_margin must be positive");
    const VectorX<Scalar> s = slack(P, p_star);
    if (s.minCoeff() < interior_margin * P.scale())
        throw std::invalid_argument("build_sites: anchor not strictly interior");

    const Index n = P.num_facets();
    const Index d = P.dim();
    MatrixX<Scalar> pts(n + 1, d);
    pts.row(0) = p_star.transpose();
    // p_i = p* + 2 slack_i / ||a_i||^2 * a_i, the mirror image across facet i.
    const VectorX<Scalar> coef =
        (Scalar(2) * s.array() / P.row_norms().array().square()).matrix();
    pts.bottomRows(n) = coef.asDiagonal() * P.A();
    pts.bottomRows(n).rowwise() += p_star.transpose();

    const Scalar delta = (pts.bottomRows(n).rowwise() - p_star.transpose()).rowwise().norm().maxCoeff();
    return SiteSet<Scalar>(std::move(pts), delta);
}

/// Anchor choice backed by the largest inscribed ball; its center is
/// guaranteed to clear the boundary as much as any point can.
template <typename Scalar>
VectorX<Scalar> anchor_from_chebyshev(const HPolytope<Scalar>& P) {
    return chebyshev_center(P).c;
}

}  // namespace polyoracle
