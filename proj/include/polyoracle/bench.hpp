#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "polyoracle/ann.hpp"
#include "polyoracle/datagen.hpp"
#include "polyoracle/hpolytope.hpp"
#include "polyoracle/io.hpp"
#include "polyoracle/oracle.hpp"
#include "polyoracle/parallel.hpp"
#include "polyoracle/sites.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

// ----------------------------------------------------------------------------
// Report rows
// ----------------------------------------------------------------------------

/// One line of the benchmark CSV. Field semantics depend on the phase:
/// PREPROCESS rows time site construction plus index build (median of 3) and
/// carry no query statistics; MEMBERSHIP and BOUNDARY rows time the query
/// batch only. Unset numeric fields serialize as empty cells.
struct BenchRow {
    Index d = 0;
    Index n = 0;
    int instance = 0;
    std::string phase;  // PREPROCESS | MEMBERSHIP | BOUNDARY
    std::string algo;   // build | ann | naive | exact | approx
    double wall_time_s = 0.0;
    long queries = 0;
    double success_rate = std::nan("");
    double avg_steps = std::nan("");
    double dist_min = std::nan("");
    double dist_max = std::nan("");
    double dist_avg = std::nan("");
    int k = -1;
    int l = -1;
    int probes = -1;
    double eps = std::nan("");
    std::uint64_t seed = 0;
};

inline const char* csv_header() {
    return "d,n,instance,phase,algo,wall_time_s,queries,success_rate,avg_steps,"
           "dist_min,dist_max,dist_avg,k,l,probes,eps,seed";
}

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                      const std::vector<std::string>& comments = {}) {
    const auto num = [](double v) { return std::isnan(v) ? std::string() : detail::format_number(v); };
    const auto opt_int = [](int v) { return v < 0 ? std::string() : std::to_string(v); };
    for (const auto& c : comments) out << "# " << c << "\n";
    out << csv_header() << "\n";
    for (const auto& r : rows) {
        out << r.d << ',' << r.n << ',' << r.instance << ',' << r.phase << ',' << r.algo << ','
            << detail::format_number(r.wall_time_s) << ',' << r.queries << ','
            << num(r.success_rate) << ',' << num(r.avg_steps) << ',' << num(r.dist_min) << ','
            << num(r.dist_max) << ',' << num(r.dist_avg) << ',' << opt_int(r.k) << ','
            << opt_int(r.l) << ',' << opt_int(r.probes) << ',' << num(r.eps) << ',' << r.seed
            << "\n";
    }
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline double median3(double a, double b, double c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

}  // namespace detail

// ----------------------------------------------------------------------------
// Membership benchmark
// ----------------------------------------------------------------------------

struct MembershipBenchOptions {
    double eps = 0.05;
    int k = -1, l = -1, probes = -1;  // negative: facet-count defaults
    long queries = 1000;              // interior count; the same number is moved outside
    std::uint64_t seed = 0;
    bool no_clearance = false;  // skip the bounding box and the clearance filter
    double margin = -1.0;       // outside displacement; negative: 2 eps diam
    long burn = 200;
    EpsPrimeRule eps_rule = EpsPrimeRule::SecondBranch;
};

/// Query set of the evaluation protocol: `queries` hit-and-run interior
/// points plus the same points pushed outside, with ground-truth labels and
/// the subset clearing the eps slab.
template <typename Scalar>
struct MembershipQuerySet {
    std::vector<VectorX<Scalar>> points;
    std::vector<char> truth;          // 1 inside, 0 outside
    std::vector<std::size_t> scored;  // indices surviving the clearance filter
};

template <typename Scalar>
MembershipQuerySet<Scalar> make_membership_queries(const HPolytope<Scalar>& P,
                                                   const VectorX<Scalar>& anchor,
                                                   const OracleConfig<Scalar>& cfg,
                                                   const MembershipBenchOptions& opt) {
    MembershipQuerySet<Scalar> qs;
    const auto inside = hit_and_run(P, anchor, opt.burn, opt.queries, Rng(opt.seed).fork(1).next_u64());
    const Scalar margin = opt.margin > 0 ? Scalar(opt.margin) : Scalar(2) * cfg.eps * cfg.diam_ub;
    const auto outside = make_outside(P, inside, anchor, margin);
    qs.points.reserve(2 * inside.size());
    for (const auto& p : inside) qs.points.push_back(p);
    for (const auto& p : outside) qs.points.push_back(p);
    for (std::size_t i = 0; i < qs.points.size(); ++i) {
        const Membership m = membership_direct(P, qs.points[i]);
        qs.truth.push_back(m == Membership::INSIDE ? 1 : 0);
        if (m == Membership::BOUNDARY) continue;  // no usable ground truth
        if (!opt.no_clearance &&
            boundary_distance_lb(P, qs.points[i]) <= cfg.eps * cfg.diam_ub)
            continue;
        qs.scored.push_back(i);
    }
    return qs;
}

/// Timed verdict batch; returns (success rate over scored queries, seconds).
template <typename Scalar, typename Verdict>
std::pair<double, double> score_membership(const MembershipQuerySet<Scalar>& qs,
                                           Verdict&& verdict) {
    std::vector<char> answers(qs.scored.size());
    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(static_cast<std::ptrdiff_t>(qs.scored.size()),
                 [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                     for (std::ptrdiff_t i = lo; i < hi; ++i)
                         answers[i] = verdict(qs.points[qs.scored[i]]) ? 1 : 0;
                 });
    const double wall = detail::seconds_since(t0);
    long ok = 0;
    for (std::size_t i = 0; i < qs.scored.size(); ++i)
        if (answers[i] == qs.truth[qs.scored[i]]) ++ok;
    const double rate = qs.scored.empty() ? 0.0 : double(ok) / double(qs.scored.size());
    return {rate, wall};
}

template <typename Scalar>
std::vector<BenchRow> run_membership_bench(const HPolytope<Scalar>& P,
                                           const VectorX<Scalar>& anchor,
                                           const MembershipBenchOptions& opt, int instance = 0) {
    std::vector<BenchRow> rows;
    if (opt.queries <= 0) return rows;

    const LshParams def = lsh_defaults(P.num_facets());
    const int k = opt.k > 0 ? opt.k : def.k;
    const int l = opt.l > 0 ? opt.l : def.l;
    const int probes = opt.probes > 0 ? opt.probes : def.probes;

    // Preprocessing: pointset plus ANN structure, median of three builds.
    double builds[3];
    for (double& b : builds) {
        const auto t0 = std::chrono::steady_clock::now();
        const SiteSet<Scalar> s = build_sites(P, anchor);
        const LshIndex<Scalar> ix = build_lsh(s, k, l, probes, opt.seed);
        b = detail::seconds_since(t0);
        (void)ix;
    }
    const SiteSet<Scalar> sites = build_sites(P, anchor);
    const LshIndex<Scalar> lsh = build_lsh(sites, k, l, probes, opt.seed);

    const OracleConfig<Scalar> cfg =
        opt.no_clearance
            ? make_config_unbounded(P, sites, Scalar(opt.eps), Scalar(0), opt.eps_rule)
            : make_config(P, sites, Scalar(opt.eps), opt.eps_rule);
    const MembershipQuerySet<Scalar> qs = make_membership_queries(P, anchor, cfg, opt);

    BenchRow base;
    base.d = P.dim();
    base.n = P.num_facets();
    base.instance = instance;
    base.k = k;
    base.l = l;
    base.probes = probes;
    base.eps = opt.eps;
    base.seed = opt.seed;

    BenchRow pre = base;
    pre.phase = "PREPROCESS";
    pre.algo = "build";
    pre.wall_time_s = detail::median3(builds[0], builds[1], builds[2]);
    rows.push_back(pre);

    const auto [ann_rate, ann_wall] = score_membership(
        qs, [&](const VectorX<Scalar>& q) { return approx_membership(lsh, cfg, q, anchor); });
    BenchRow ann = base;
    ann.phase = "MEMBERSHIP";
    ann.algo = "ann";
    ann.wall_time_s = ann_wall;
    ann.queries = static_cast<long>(qs.scored.size());
    ann.success_rate = ann_rate;
    rows.push_back(ann);

    const auto [naive_rate, naive_wall] = score_membership(qs, [&](const VectorX<Scalar>& q) {
        return membership_direct(P, q) != Membership::OUTSIDE;
    });
    BenchRow naive = base;
    naive.phase = "MEMBERSHIP";
    naive.algo = "naive";
    naive.wall_time_s = naive_wall;
    naive.queries = static_cast<long>(qs.scored.size());
    naive.success_rate = naive_rate;
    naive.k = naive.l = naive.probes = -1;
    rows.push_back(naive);

    return rows;
}

// ----------------------------------------------------------------------------
// Boundary benchmark
// ----------------------------------------------------------------------------

struct BoundaryBenchOptions {
    double eps = 0.05;
    int k = -1, l = -1, probes = -1;
    long rays = 1000;
    std::uint64_t seed = 0;
    bool exact_mode = false;
    long burn = 200;
    EpsPrimeRule eps_rule = EpsPrimeRule::SecondBranch;
};

template <typename Scalar>
std::vector<BenchRow> run_boundary_bench(const HPolytope<Scalar>& P, const VectorX<Scalar>& anchor,
                                         const BoundaryBenchOptions& opt, int instance = 0) {
    std::vector<BenchRow> rows;
    if (opt.rays <= 0) return rows;

    const LshParams def = lsh_defaults(P.num_facets());
    const int k = opt.k > 0 ? opt.k : def.k;
    const int l = opt.l > 0 ? opt.l : def.l;
    const int probes = opt.probes > 0 ? opt.probes : def.probes;

    double builds[3];
    for (double& b : builds) {
        const auto t0 = std::chrono::steady_clock::now();
        const SiteSet<Scalar> s = build_sites(P, anchor);
        if (!opt.exact_mode) {
            const LshIndex<Scalar> ix = build_lsh(s, k, l, probes, opt.seed);
            (void)ix;
        }
        b = detail::seconds_since(t0);
    }
    const SiteSet<Scalar> sites = build_sites(P, anchor);
    const ExactIndex<Scalar> exact = build_exact(sites);
    const LshIndex<Scalar> lsh = build_lsh(sites, k, l, probes, opt.seed);
    const OracleConfig<Scalar> cfg = make_config(P, sites, Scalar(opt.eps), opt.eps_rule);

    // Rays: hit-and-run apexes with uniform directions.
    Rng rng = Rng(opt.seed).fork(2);
    const auto apexes = hit_and_run(P, anchor, opt.burn, opt.rays, rng.next_u64());
    std::vector<Ray<Scalar>> queryset;
    queryset.reserve(opt.rays);
    for (const auto& apex : apexes)
        queryset.emplace_back(apex, rng.unit_vector<Scalar>(P.dim()));

    std::vector<double> dist(queryset.size());
    std::vector<long> steps(queryset.size());
    std::vector<char> ok(queryset.size());
    const Scalar tol = Scalar(1e-7) * P.scale();

    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(static_cast<std::ptrdiff_t>(queryset.size()),
                 [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
                     for (std::ptrdiff_t i = lo; i < hi; ++i) {
                         const Ray<Scalar>& r = queryset[i];
                         const BoundaryResult<Scalar> res =
                             opt.exact_mode ? exact_boundary(P, sites, exact, *cfg.box, r)
                                            : approx_boundary(P, sites, lsh, cfg, r);
                         const auto [ref, facet] = brute_ray_shoot(P, r);
                         dist[i] = (res.point - ref).norm();
                         steps[i] = res.steps;
                         ok[i] = opt.exact_mode
                                     ? (res.status == BoundaryStatus::HIT && dist[i] <= tol)
                                     : (boundary_distance_lb(P, res.point) <=
                                        cfg.eps * cfg.diam_ub + tol);
                     }
                 });
    const double wall = detail::seconds_since(t0);

    BenchRow row;
    row.d = P.dim();
    row.n = P.num_facets();
    row.instance = instance;
    row.k = opt.exact_mode ? -1 : k;
    row.l = opt.exact_mode ? -1 : l;
    row.probes = opt.exact_mode ? -1 : probes;
    row.eps = opt.eps;
    row.seed = opt.seed;

    BenchRow pre = row;
    pre.phase = "PREPROCESS";
    pre.algo = "build";
    pre.wall_time_s = detail::median3(builds[0], builds[1], builds[2]);
    rows.push_back(pre);

    row.phase = "BOUNDARY";
    row.algo = opt.exact_mode ? "exact" : "approx";
    row.wall_time_s = wall;
    row.queries = static_cast<long>(queryset.size());
    long okc = 0, steptotal = 0;
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0, dsum = 0;
    for (std::size_t i = 0; i < queryset.size(); ++i) {
        okc += ok[i];
        steptotal += steps[i];
        dmin = std::min(dmin, dist[i]);
        dmax = std::max(dmax, dist[i]);
        dsum += dist[i];
    }
    row.success_rate = double(okc) / double(queryset.size());
    row.avg_steps = double(steptotal) / double(queryset.size());
    row.dist_min = dmin;
    row.dist_max = dmax;
    row.dist_avg = dsum / double(queryset.size());
    rows.push_back(row);
    return rows;
}

// ----------------------------------------------------------------------------
// Parameter sweep
// ----------------------------------------------------------------------------

/// Cross product of (k, l, probes) over a shared query set. Probe budgets are
/// prefix-ordered, so recall is monotone in `probes` at fixed (k, l, seed).
template <typename Scalar>
std::vector<BenchRow> run_sweep(const HPolytope<Scalar>& P, const VectorX<Scalar>& anchor,
                                const std::vector<int>& ks, const std::vector<int>& ls,
                                const std::vector<int>& probes_grid,
                                const MembershipBenchOptions& opt) {
    if (ks.empty() || ls.empty() || probes_grid.empty())
        throw std::invalid_argument("run_sweep: empty parameter grid");
    std::vector<BenchRow> rows;
    if (opt.queries <= 0) return rows;

    const SiteSet<Scalar> sites = build_sites(P, anchor);
    const OracleConfig<Scalar> cfg =
        opt.no_clearance
            ? make_config_unbounded(P, sites, Scalar(opt.eps), Scalar(0), opt.eps_rule)
            : make_config(P, sites, Scalar(opt.eps), opt.eps_rule);
    const MembershipQuerySet<Scalar> qs = make_membership_queries(P, anchor, cfg, opt);

    for (const int k : ks)
        for (const int l : ls)
            for (const int p : probes_grid) {
                const LshIndex<Scalar> lsh = build_lsh(sites, k, l, p, opt.seed);
                const auto [rate, wall] = score_membership(qs, [&](const VectorX<Scalar>& q) {
                    return approx_membership(lsh, cfg, q, anchor);
                });
                BenchRow row;
                row.d = P.dim();
                row.n = P.num_facets();
                row.phase = "MEMBERSHIP";
                row.algo = "ann";
                row.wall_time_s = wall;
                row.queries = static_cast<long>(qs.scored.size());
                row.success_rate = rate;
                row.k = k;
                row.l = l;
                row.probes = p;
                row.eps = opt.eps;
                row.seed = opt.seed;
                rows.push_back(row);
            }
    return rows;
}

}  // namespace polyoracle
