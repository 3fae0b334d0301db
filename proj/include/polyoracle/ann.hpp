#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "polyoracle/rng.hpp"
#include "polyoracle/sites.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

/// Result of a nearest-neighbor lookup: a row index into the SiteSet point
/// matrix (0 = anchor) and the Euclidean distance to it.
template <typename Scalar>
struct SiteMatch {
    Index site;
    Scalar distance;
};

// ----------------------------------------------------------------------------
// Exact linear-scan index
// ----------------------------------------------------------------------------

/// Brute-force reference index over all n+1 points. Non-owning: the SiteSet
/// must outlive the index.
template <typename Scalar>
class ExactIndex {
  public:
    explicit ExactIndex(const SiteSet<Scalar>& sites) : sites_(&sites) {
        if (sites.points().rows() < 1) throw std::invalid_argument("ExactIndex: empty site set");
    }

    const SiteSet<Scalar>& sites() const { return *sites_; }

  private:
    const SiteSet<Scalar>* sites_;
};

template <typename Scalar>
ExactIndex<Scalar> build_exact(const SiteSet<Scalar>& sites) {
    return ExactIndex<Scalar>(sites);
}

/// True argmin of Euclidean distance over anchor + sites. Ties go to the
/// anchor, then to the lowest row index (the scan keeps strict improvement).
template <typename Scalar>
SiteMatch<Scalar> query_exact(const ExactIndex<Scalar>& idx, const VectorX<Scalar>& q) {
    const MatrixX<Scalar>& pts = idx.sites().points();
    if (q.size() != pts.cols()) throw std::invalid_argument("query_exact: dimension mismatch");
    const VectorX<Scalar> d2 = (pts.rowwise() - q.transpose()).rowwise().squaredNorm();
    Index best = 0;
    for (Index i = 1; i < d2.size(); ++i)
        if (d2[i] < d2[best]) best = i;
    return {best, std::sqrt(d2[best])};
}

/// Best site excluding the anchor (the candidate an ANN structure would
/// return; the anchor comparison happens at the oracle layer).
template <typename Scalar>
std::optional<SiteMatch<Scalar>> nearest_site(const ExactIndex<Scalar>& idx,
                                              const VectorX<Scalar>& q) {
    const MatrixX<Scalar>& pts = idx.sites().points();
    if (q.size() != pts.cols()) throw std::invalid_argument("nearest_site: dimension mismatch");
    const Index n = pts.rows() - 1;
    if (n == 0) return std::nullopt;
    const VectorX<Scalar> d2 =
        (pts.bottomRows(n).rowwise() - q.transpose()).rowwise().squaredNorm();
    Index best = 0;
    for (Index i = 1; i < n; ++i)
        if (d2[i] < d2[best]) best = i;
    return SiteMatch<Scalar>{best + 1, std::sqrt(d2[best])};
}

// ----------------------------------------------------------------------------
// Multi-probe hyperplane LSH
// ----------------------------------------------------------------------------

/// Hyperplane LSH over the sites, centered so the anchor is the origin.
/// Each of the l tables hashes a point to k sign bits of Gaussian projections;
/// queries probe the `probes` nearest buckets per table in order of bit-flip
/// margin. The anchor itself is never inserted; oracles compare against it
/// explicitly.
template <typename Scalar>
class LshIndex {
  public:
    LshIndex(const SiteSet<Scalar>& sites, int k, int l, int probes, std::uint64_t seed)
        : k_(k), l_(l), probes_(probes), seed_(seed), anchor_(sites.anchor()) {
        if (k < 1 || k > 30) throw std::invalid_argument("LshIndex: k must be in [1, 30]");
        if (l < 1) throw std::invalid_argument("LshIndex: l must be >= 1");
        if (probes < 1) throw std::invalid_argument("LshIndex: probes must be >= 1");

        const Index n = sites.num_sites();
        const Index d = sites.dim();
        centered_ = sites.points().bottomRows(n).rowwise() - anchor_.transpose();

        Rng rng(seed);
        dirs_.reserve(l_);
        buckets_.reserve(l_);
        for (int t = 0; t < l_; ++t) {
            MatrixX<Scalar> G(k_, d);
            for (int j = 0; j < k_; ++j)
                for (Index col = 0; col < d; ++col) G(j, col) = static_cast<Scalar>(rng.gaussian());
            // Keys for all points in one projection product.
            const MatrixX<Scalar> proj = centered_ * G.transpose();  // n x k
            std::vector<std::pair<std::uint32_t, Index>> bucket(n);
            for (Index i = 0; i < n; ++i) {
                std::uint32_t key = 0;
                for (int j = 0; j < k_; ++j)
                    if (proj(i, j) >= Scalar(0)) key |= (1u << j);
                bucket[i] = {key, i};
            }
            std::sort(bucket.begin(), bucket.end());
            dirs_.push_back(std::move(G));
            buckets_.push_back(std::move(bucket));
        }
    }

    int k() const { return k_; }
    int l() const { return l_; }
    int probes() const { return probes_; }
    std::uint64_t seed() const { return seed_; }
    const VectorX<Scalar>& anchor() const { return anchor_; }
    Index num_sites() const { return centered_.rows(); }

    /// Signed projections of the centered point onto one table's hash
    /// directions; the signs are the hash bits, the magnitudes the flip costs.
    VectorX<Scalar> table_projections(int table, const VectorX<Scalar>& q) const {
        return dirs_[table] * (q - anchor_);
    }

    /// Probe keys for one table in nondecreasing total flip-margin order,
    /// starting with the query's own bucket. Exposed for tests.
    std::vector<std::uint32_t> probe_sequence(int table, const VectorX<Scalar>& q) const {
        return probe_keys(table_projections(table, q));
    }

    /// Best candidate among all probed buckets across tables, as a SiteSet row
    /// index, or nullopt when every probed bucket is empty.
    std::optional<SiteMatch<Scalar>> query(const VectorX<Scalar>& q) const {
        if (q.size() != centered_.cols())
            throw std::invalid_argument("LshIndex::query: dimension mismatch");
        const VectorX<Scalar> qc = q - anchor_;
        Index best = -1;
        Scalar best_d2 = Scalar(0);
        for (int t = 0; t < l_; ++t) {
            const VectorX<Scalar> margins = dirs_[t] * qc;
            for (const std::uint32_t key : probe_keys(margins)) {
                auto [lo, hi] = std::equal_range(
                    buckets_[t].begin(), buckets_[t].end(),
                    std::make_pair(key, Index(-1)),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
                for (auto it = lo; it != hi; ++it) {
                    const Index i = it->second;
                    const Scalar d2 = (centered_.row(i) - qc.transpose()).squaredNorm();
                    if (best < 0 || d2 < best_d2 || (d2 == best_d2 && i < best)) {
                        best = i;
                        best_d2 = d2;
                    }
                }
            }
        }
        if (best < 0) return std::nullopt;
        return SiteMatch<Scalar>{best + 1, std::sqrt(best_d2)};
    }

  private:
    struct ProbeNode {
        Scalar cost;
        std::uint32_t flips;  // over margin-sorted bit positions
        int last;
        bool operator>(const ProbeNode& o) const {
            return cost > o.cost || (cost == o.cost && flips > o.flips);
        }
    };

    std::vector<std::uint32_t> probe_keys(const VectorX<Scalar>& margins) const {
        std::uint32_t base = 0;
        for (int j = 0; j < k_; ++j)
            if (margins[j] >= Scalar(0)) base |= (1u << j);

        std::vector<std::uint32_t> keys;
        keys.reserve(probes_);
        keys.push_back(base);
        if (probes_ == 1) return keys;

        std::vector<int> order(k_);
        for (int j = 0; j < k_; ++j) order[j] = j;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Scalar ca = std::abs(margins[a]), cb = std::abs(margins[b]);
            return ca < cb || (ca == cb && a < b);
        });

        // Enumerate flip subsets by nondecreasing cost: popping a node whose
        // largest sorted position is p spawns "expand" (add p+1) and "shift"
        // (replace p by p+1) successors.
        std::priority_queue<ProbeNode, std::vector<ProbeNode>, std::greater<ProbeNode>> heap;
        heap.push({std::abs(margins[order[0]]), 1u, 0});
        while (static_cast<int>(keys.size()) < probes_ && !heap.empty()) {
            const ProbeNode node = heap.top();
            heap.pop();
            std::uint32_t key = base;
            for (int p = 0; p < k_; ++p)
                if (node.flips & (1u << p)) key ^= (1u << order[p]);
            keys.push_back(key);
            if (node.last + 1 < k_) {
                const Scalar next_cost = std::abs(margins[order[node.last + 1]]);
                heap.push({node.cost + next_cost, node.flips | (1u << (node.last + 1)),
                           node.last + 1});
                heap.push({node.cost - std::abs(margins[order[node.last]]) + next_cost,
                           (node.flips ^ (1u << node.last)) | (1u << (node.last + 1)),
                           node.last + 1});
            }
        }
        return keys;
    }

    int k_, l_, probes_;
    std::uint64_t seed_;
    VectorX<Scalar> anchor_;
    MatrixX<Scalar> centered_;                                        // sites - anchor
    std::vector<MatrixX<Scalar>> dirs_;                               // per table, k x d
    std::vector<std::vector<std::pair<std::uint32_t, Index>>> buckets_;  // sorted (key, id)
};

template <typename Scalar>
LshIndex<Scalar> build_lsh(const SiteSet<Scalar>& sites, int k, int l, int probes,
                           std::uint64_t seed) {
    return LshIndex<Scalar>(sites, k, l, probes, seed);
}

template <typename Scalar>
std::optional<SiteMatch<Scalar>> query_lsh(const LshIndex<Scalar>& idx, const VectorX<Scalar>& q) {
    return idx.query(q);
}

template <typename Scalar>
std::optional<SiteMatch<Scalar>> nearest_site(const LshIndex<Scalar>& idx,
                                              const VectorX<Scalar>& q) {
    return idx.query(q);
}

/// Index parameters used in the reference evaluation, by facet-count regime.
struct LshParams {
    int k;
    int l;
    int probes;
};

inline LshParams lsh_defaults(Index num_facets) {
    if (num_facets >= 10000) return {11, 1, 40};
    return {8, 1, 150};
}

}  // namespace polyoracle
