#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "polyoracle/ann.hpp"
#include "polyoracle/geometry.hpp"
#include "polyoracle/hpolytope.hpp"
#include "polyoracle/lp.hpp"
#include "polyoracle/sites.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

/// Which reading of the ANN approximation factor to apply. SecondBranch keeps
/// only sqrt(1 + 2 eps^2) - 1; PaperMin also takes the printed first branch
/// sqrt(eps^4 * diam) - 1 into the minimum, which can go nonpositive for
/// small diameters and is then rejected at config construction.
enum class EpsPrimeRule { SecondBranch, PaperMin };

template <typename Scalar>
Scalar epsilon_prime(Scalar eps, Scalar diam, EpsPrimeRule rule = EpsPrimeRule::SecondBranch) {
    if (!(eps > Scalar(0)) || !(eps < Scalar(1)))
        throw std::invalid_argument("epsilon_prime: eps must lie in (0, 1)");
    if (!(diam > Scalar(0))) throw std::invalid_argument("epsilon_prime: diam must be positive");
    const Scalar branch2 = std::sqrt(Scalar(1) + Scalar(2) * eps * eps) - Scalar(1);
    if (rule == EpsPrimeRule::SecondBranch) return branch2;
    const Scalar branch1 = std::sqrt(eps * eps * eps * eps * diam) - Scalar(1);
    return std::min(branch1, branch2);
}

/// Derived quantities governing the approximate oracles. `box` is present for
/// bounded polytopes only; the boundary oracles require it. For unbounded
/// polytopes (where no boxed diameter exists) diam_ub falls back to a caller
/// -supplied surrogate, by default delta itself.
template <typename Scalar>
struct OracleConfig {
    Scalar eps;
    Scalar eps_prime;
    Scalar diam_ub;
    Scalar delta;
    Scalar far_cut;  // delta / (2 eps): queries at least this far from the anchor are outside
    Scalar step;     // arc length of one backoff step in the approximate boundary walk
    long max_iters;
    Scalar scale;
    std::optional<Box<Scalar>> box;
};

template <typename Scalar>
OracleConfig<Scalar> make_config(const HPolytope<Scalar>& P, const SiteSet<Scalar>& sites,
                                 Scalar eps, Box<Scalar> box,
                                 EpsPrimeRule rule = EpsPrimeRule::SecondBranch,
                                 Scalar step_override = Scalar(0)) {
    OracleConfig<Scalar> cfg;
    cfg.eps = eps;
    cfg.diam_ub = box.diagonal();
    cfg.delta = sites.delta();
    cfg.eps_prime = epsilon_prime(eps, cfg.diam_ub, rule);
    if (!(cfg.eps_prime > Scalar(0)))
        throw NumericError("make_config: nonpositive eps' under the selected rule");
    cfg.far_cut = cfg.delta / (Scalar(2) * eps);
    cfg.scale = P.scale();
    cfg.step = step_override > Scalar(0)
                   ? step_override
                   : std::max(eps * cfg.diam_ub * Scalar(1e-2), Scalar(1e-9) * cfg.scale);
    cfg.max_iters =
        10 * static_cast<long>(P.num_facets()) + static_cast<long>(std::ceil(cfg.diam_ub / cfg.step));
    cfg.box = std::move(box);
    return cfg;
}

/// Convenience overload computing the bounding box (throws NumericError when
/// the polytope is unbounded).
template <typename Scalar>
OracleConfig<Scalar> make_config(const HPolytope<Scalar>& P, const SiteSet<Scalar>& sites,
                                 Scalar eps, EpsPrimeRule rule = EpsPrimeRule::SecondBranch) {
    return make_config(P, sites, eps, bounding_box(P), rule);
}

/// Membership-only configuration for unbounded polytopes: no box, diameter
/// surrogate defaulting to delta. Boundary oracles reject such configs.
template <typename Scalar>
OracleConfig<Scalar> make_config_unbounded(const HPolytope<Scalar>& P,
                                           const SiteSet<Scalar>& sites, Scalar eps,
                                           Scalar diam_surrogate = Scalar(0),
                                           EpsPrimeRule rule = EpsPrimeRule::SecondBranch) {
    OracleConfig<Scalar> cfg;
    cfg.eps = eps;
    cfg.diam_ub = diam_surrogate > Scalar(0) ? diam_surrogate : sites.delta();
    cfg.delta = sites.delta();
    cfg.eps_prime = epsilon_prime(eps, cfg.diam_ub, rule);
    if (!(cfg.eps_prime > Scalar(0)))
        throw NumericError("make_config_unbounded: nonpositive eps' under the selected rule");
    cfg.far_cut = cfg.delta / (Scalar(2) * eps);
    cfg.scale = P.scale();
    cfg.step = std::max(eps * cfg.diam_ub * Scalar(1e-2), Scalar(1e-9) * cfg.scale);
    cfg.max_iters =
        10 * static_cast<long>(P.num_facets()) + static_cast<long>(std::ceil(cfg.diam_ub / cfg.step));
    cfg.box = std::nullopt;
    return cfg;
}

// ----------------------------------------------------------------------------
// Membership oracles
// ----------------------------------------------------------------------------

/// Exact membership: q is in the polytope iff the anchor is its nearest
/// neighbor among anchor + sites (ties count as inside).
template <typename Scalar>
bool exact_membership(const ExactIndex<Scalar>& idx, const VectorX<Scalar>& q) {
    return query_exact(idx, q).site == 0;
}

/// Approximate membership with the far-query shortcut: any q at distance
/// >= delta/(2 eps) from the anchor is outside without touching the index.
/// Otherwise the index candidate is compared against the anchor and the
/// closer one wins (ties resolve to inside). Works with any index providing
/// nearest_site; near the boundary slab the answer is unconstrained.
template <typename IndexT, typename Scalar>
bool approx_membership(const IndexT& idx, const OracleConfig<Scalar>& cfg,
                       const VectorX<Scalar>& q, const VectorX<Scalar>& anchor) {
    const Scalar anchor_dist = (q - anchor).norm();
    if (anchor_dist >= cfg.far_cut) return false;
    const auto cand = nearest_site(idx, q);
    if (!cand) return true;
    return anchor_dist <= cand->distance;
}

// ----------------------------------------------------------------------------
// Boundary oracles
// ----------------------------------------------------------------------------

enum class BoundaryStatus { HIT, APEX_NEAR_BOUNDARY, MAX_ITERS, NO_INTERSECTION };

template <typename Scalar>
struct BoundaryResult {
    VectorX<Scalar> point;
    long steps = 0;
    BoundaryStatus status = BoundaryStatus::NO_INTERSECTION;
    Scalar t = Scalar(0);  // arc length from the apex; point == ray.at(t)
};

/// Per-iteration record of the boundary walks, for diagnostics and tests.
template <typename Scalar>
struct BoundaryTrace {
    std::vector<Scalar> t;      // arc length at each visited iterate
    std::vector<Index> site;    // site row chosen at that iterate (0 = anchor)
};

/// Exact boundary oracle: walk the ray inward from the bounding-box exit,
/// replacing the iterate by the intersection with the nearest site's facet
/// hyperplane until the nearest neighbor is the anchor. Each iterate enters a
/// new Voronoi cell, so at most n+1 queries are needed. Near-ties are settled
/// by the candidate whose hyperplane crossing improves the distance the most.
template <typename Scalar>
BoundaryResult<Scalar> exact_boundary(const HPolytope<Scalar>& P, const SiteSet<Scalar>& sites,
                                      const ExactIndex<Scalar>& idx, const Box<Scalar>& box,
                                      const Ray<Scalar>& r,
                                      BoundaryTrace<Scalar>* trace = nullptr) {
    if (membership_direct(P, r.s) != Membership::INSIDE)
        throw std::invalid_argument("exact_boundary: ray apex must lie strictly inside");

    const Scalar converge_tol = Scalar(1e-12) * std::max(P.scale(), box.diagonal());
    const long max_iters = static_cast<long>(P.num_facets()) + 2;
    Scalar t = ray_box_exit_param(r, box);
    BoundaryResult<Scalar> res;

    for (long it = 0; it < max_iters; ++it) {
        const VectorX<Scalar> x = r.at(t);
        const SiteMatch<Scalar> nn = query_exact(idx, x);
        ++res.steps;
        if (trace) {
            trace->t.push_back(t);
            trace->site.push_back(nn.site);
        }
        if (nn.site == 0) {
            res.point = x;
            res.status = BoundaryStatus::HIT;
            res.t = t;
            return res;
        }

        // Gather near-tied candidates and take the crossing closest to the apex.
        const MatrixX<Scalar>& pts = sites.points();
        const VectorX<Scalar> d2 = (pts.rowwise() - x.transpose()).rowwise().squaredNorm();
        const Scalar tie_band = d2[nn.site] * Scalar(1e-12);
        Scalar t_next = std::numeric_limits<Scalar>::infinity();
        for (Index i = 1; i < pts.rows(); ++i) {
            if (d2[i] > d2[nn.site] + tie_band) continue;
            const auto cand =
                ray_hyperplane_param(r, P.facet_hyperplane(sites.facet_of(i)), Scalar(1e-12));
            if (cand && *cand >= Scalar(0) && *cand < t_next) t_next = *cand;
        }
        if (!std::isfinite(t_next)) {
            res.point = x;
            res.status = BoundaryStatus::NO_INTERSECTION;
            res.t = t;
            return res;
        }
        if (t_next >= t - converge_tol) {
            // Crossing coincides with the current iterate: we are on the
            // boundary facet itself.
            res.t = std::min(t_next, t);
            res.point = r.at(res.t);
            res.status = BoundaryStatus::HIT;
            return res;
        }
        t = t_next;
    }
    res.point = r.at(t);
    res.status = BoundaryStatus::MAX_ITERS;
    res.t = t;
    return res;
}

/// Approximate boundary oracle. Same inward walk driven by approximate
/// membership; a crossing that fails to improve the distance to the apex is
/// replaced by a fixed-length step back toward the apex, and detection of an
/// iterate behind the apex reports the apex itself as boundary-near. On
/// inside-detection the returned point backs off one step outward along the
/// ray.
template <typename IndexT, typename Scalar>
BoundaryResult<Scalar> approx_boundary(const HPolytope<Scalar>& P, const SiteSet<Scalar>& sites,
                                       const IndexT& idx, const OracleConfig<Scalar>& cfg,
                                       const Ray<Scalar>& r,
                                       BoundaryTrace<Scalar>* trace = nullptr) {
    if (!cfg.box) throw NumericError("approx_boundary: config lacks a bounding box");
    if (membership_direct(P, r.s) != Membership::INSIDE)
        throw std::invalid_argument("approx_boundary: ray apex must lie strictly inside");

    const VectorX<Scalar> anchor = sites.anchor();
    Scalar t = ray_box_exit_param(r, *cfg.box);
    BoundaryResult<Scalar> res;

    for (long it = 0; it < cfg.max_iters; ++it) {
        const VectorX<Scalar> x = r.at(t);
        ++res.steps;

        const Scalar anchor_dist = (x - anchor).norm();
        std::optional<SiteMatch<Scalar>> cand;
        bool inside;
        if (anchor_dist >= cfg.far_cut) {
            inside = false;
            cand = nearest_site(idx, x);  // still needed to pick a facet to step through
        } else {
            cand = nearest_site(idx, x);
            inside = !cand || anchor_dist <= cand->distance;
        }
        if (trace) {
            trace->t.push_back(t);
            trace->site.push_back(inside ? 0 : (cand ? cand->site : -1));
        }
        if (inside) {
            res.t = t + cfg.step;
            res.point = r.at(res.t);
            res.status = BoundaryStatus::HIT;
            return res;
        }

        Scalar t_next;
        bool have_crossing = false;
        if (cand) {
            const auto crossing =
                ray_hyperplane_param(r, P.facet_hyperplane(sites.facet_of(cand->site)),
                                     Scalar(1e-12));
            if (crossing) {
                t_next = *crossing;
                have_crossing = true;
            }
        }
        // Parallel facet or empty probe: treat as a non-improving crossing.
        if (!have_crossing || std::abs(t_next) >= std::abs(t)) t_next = t - cfg.step;

        if (t_next < Scalar(0)) {
            res.t = cfg.step;
            res.point = r.at(res.t);
            res.status = BoundaryStatus::APEX_NEAR_BOUNDARY;
            return res;
        }
        t = t_next;
    }
    res.t = t;
    res.point = r.at(t);
    res.status = BoundaryStatus::MAX_ITERS;
    return res;
}

}  // namespace polyoracle
