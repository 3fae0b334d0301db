#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyoracle/geometry.hpp"
#include "polyoracle/hpolytope.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {

enum class LpStatus { OPTIMAL, UNBOUNDED, INFEASIBLE, ITER_LIMIT };

template <typename Scalar>
struct LpOutcome {
    LpStatus status;
    VectorX<Scalar> x;  // maximizer, valid when OPTIMAL
    Scalar value = Scalar(0);
};

/// Center and radius of the largest ball inscribed in a polytope.
template <typename Scalar>
struct ChebyshevBall {
    VectorX<Scalar> c;
    Scalar rc;
};

namespace detail {

/// Dense tableau simplex over nonnegative variables:
///   maximize obj . y   s.t.  M y = rhs,  y >= 0,
/// starting from the feasible basis `basis` (basis[r] = column basic in row r).
/// Entering/leaving choices follow Bland's rule. `allowed` columns are the
/// only candidates for entering (artificials are fenced off in phase 2).
template <typename Scalar>
LpStatus simplex_iterate(MatrixX<Scalar>& T, std::vector<Index>& basis, Index obj_row,
                         Index allowed_cols, long max_iters) {
    const Index rows = basis.size();
    const Index rhs = T.cols() - 1;
    const Scalar tol = Scalar(1e-9) * std::max(Scalar(1), T.cwiseAbs().maxCoeff());

    for (long iter = 0; iter < max_iters; ++iter) {
        // Bland entering rule: lowest column index with negative reduced cost.
        Index enter = -1;
        for (Index j = 0; j < allowed_cols; ++j) {
            if (T(obj_row, j) < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return LpStatus::OPTIMAL;

        // Ratio test; ties resolved toward the smallest basic variable index.
        Index leave = -1;
        Scalar best_ratio = Scalar(0);
        for (Index r = 0; r < rows; ++r) {
            const Scalar piv = T(r, enter);
            if (piv <= tol) continue;
            const Scalar ratio = std::max(T(r, rhs), Scalar(0)) / piv;
            if (leave < 0 || ratio < best_ratio - tol ||
                (ratio < best_ratio + tol && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return LpStatus::UNBOUNDED;

        // Pivot: scale the pivot row, eliminate the column everywhere else.
        T.row(leave) /= T(leave, enter);
        VectorX<Scalar> col = T.col(enter);
        col[leave] = Scalar(0);
        T.noalias() -= col * T.row(leave);
        T.col(enter).setZero();
        T(leave, enter) = Scalar(1);
        basis[leave] = enter;
    }
    return LpStatus::ITER_LIMIT;
}

}  // namespace detail

/// Maximize c . x subject to A x <= b with x free. Two-phase dense simplex:
/// free variables are split x = u - w, slacks complete the basis, and rows
/// with negative right-hand side get phase-1 artificials.
template <typename Scalar>
LpOutcome<Scalar> solve_lp(const VectorX<Scalar>& c, const MatrixX<Scalar>& A,
                           const VectorX<Scalar>& b) {
    const Index n = A.rows();
    const Index m = A.cols();
    if (n < 1 || m < 1) throw std::invalid_argument("solve_lp: empty program");
    if (c.size() != m || b.size() != n) throw std::invalid_argument("solve_lp: dimension mismatch");

    const Index n_art = (b.array() < Scalar(0)).count();
    const Index struct_cols = 2 * m;            // u then w
    const Index slack_cols = n;
    const Index art_start = struct_cols + slack_cols;
    const Index ncols = art_start + n_art;
    const Index rhs = ncols;

    // Rows 0..n-1: constraints. Row n: phase-2 objective (as "z - c.y = 0").
    // Row n+1: phase-1 objective, present only when artificials exist.
    const bool phase1 = n_art > 0;
    const Index obj2 = n;
    const Index obj1 = n + 1;
    MatrixX<Scalar> T = MatrixX<Scalar>::Zero(n + (phase1 ? 2 : 1), ncols + 1);
    std::vector<Index> basis(n);

    Index art = art_start;
    for (Index r = 0; r < n; ++r) {
        const Scalar sgn = b[r] < Scalar(0) ? Scalar(-1) : Scalar(1);
        T.row(r).segment(0, m) = sgn * A.row(r);
        T.row(r).segment(m, m) = -sgn * A.row(r);
        T(r, struct_cols + r) = sgn;  // slack
        T(r, rhs) = sgn * b[r];
        if (sgn < Scalar(0)) {
            T(r, art) = Scalar(1);
            basis[r] = art++;
        } else {
            basis[r] = struct_cols + r;
        }
    }
    T.row(obj2).segment(0, m) = -c.transpose();
    T.row(obj2).segment(m, m) = c.transpose();

    const long cap = 50 * static_cast<long>(n + m);

    if (phase1) {
        // z1 = -sum(artificials); eliminate the basic artificial columns.
        T.row(obj1).segment(art_start, n_art).setOnes();
        for (Index r = 0; r < n; ++r)
            if (basis[r] >= art_start) T.row(obj1) -= T.row(r);

        const LpStatus st = detail::simplex_iterate(T, basis, obj1, ncols, cap);
        if (st == LpStatus::ITER_LIMIT) return {LpStatus::ITER_LIMIT, VectorX<Scalar>(), 0};
        const Scalar feas_tol = Scalar(1e-7) * std::max(Scalar(1), b.cwiseAbs().maxCoeff());
        if (-T(obj1, rhs) > feas_tol) return {LpStatus::INFEASIBLE, VectorX<Scalar>(), 0};

        // Drive leftover zero-level artificials out of the basis when a
        // structural pivot exists; all-zero rows are redundant constraints.
        for (Index r = 0; r < n; ++r) {
            if (basis[r] < art_start) continue;
            for (Index j = 0; j < art_start; ++j) {
                if (std::abs(T(r, j)) > Scalar(1e-9)) {
                    T.row(r) /= T(r, j);
                    VectorX<Scalar> col = T.col(j);
                    col[r] = Scalar(0);
                    T.noalias() -= col * T.row(r);
                    T.col(j).setZero();
                    T(r, j) = Scalar(1);
                    basis[r] = j;
                    break;
                }
            }
        }
    }

    const LpStatus st = detail::simplex_iterate(T, basis, obj2, art_start, cap);
    if (st != LpStatus::OPTIMAL) return {st, VectorX<Scalar>(), 0};

    VectorX<Scalar> y = VectorX<Scalar>::Zero(ncols);
    for (Index r = 0; r < n; ++r) y[basis[r]] = T(r, rhs);
    VectorX<Scalar> x = y.segment(0, m) - y.segment(m, m);
    return {LpStatus::OPTIMAL, x, c.dot(x)};
}

/// Chebyshev center: maximize rc subject to a_i . x + rc ||a_i|| <= b_i.
/// The augmented LP is always feasible; a negative optimal radius certifies
/// an empty polytope.
template <typename Scalar>
ChebyshevBall<Scalar> chebyshev_center(const HPolytope<Scalar>& P) {
    const Index n = P.num_facets();
    const Index d = P.dim();
    MatrixX<Scalar> A(n, d + 1);
    A.leftCols(d) = P.A();
    A.col(d) = P.row_norms();
    VectorX<Scalar> c = VectorX<Scalar>::Zero(d + 1);
    c[d] = Scalar(1);

    const LpOutcome<Scalar> out = solve_lp<Scalar>(c, A, P.b());
    if (out.status == LpStatus::UNBOUNDED)
        throw NumericError("chebyshev_center: inscribed radius unbounded");
    if (out.status == LpStatus::ITER_LIMIT)
        throw NumericError("chebyshev_center: simplex iteration cap exceeded");
    if (out.status == LpStatus::INFEASIBLE)
        throw NumericError("chebyshev_center: infeasible system");
    const Scalar rc = out.x[d];
    if (rc < -Scalar(1e-9) * P.scale())
        throw NumericError("chebyshev_center: polytope is empty");
    return {out.x.segment(0, d), std::max(rc, Scalar(0))};
}

/// Axis-aligned bounding box via 2d linear programs (min and max of every
/// coordinate over the polytope).
template <typename Scalar>
Box<Scalar> bounding_box(const HPolytope<Scalar>& P) {
    const Index d = P.dim();
    VectorX<Scalar> lo(d), hi(d);
    for (Index j = 0; j < d; ++j) {
        VectorX<Scalar> c = VectorX<Scalar>::Zero(d);
        for (const Scalar sgn : {Scalar(1), Scalar(-1)}) {
            c[j] = sgn;
            const LpOutcome<Scalar> out = solve_lp<Scalar>(c, P.A(), P.b());
            if (out.status == LpStatus::UNBOUNDED)
                throw NumericError("bounding_box: polytope unbounded along coordinate " +
                                   std::to_string(j));
            if (out.status == LpStatus::INFEASIBLE)
                throw NumericError("bounding_box: infeasible system");
            if (out.status == LpStatus::ITER_LIMIT)
                throw NumericError("bounding_box: simplex iteration cap exceeded");
            (sgn > Scalar(0) ? hi[j] : lo[j]) = sgn * out.value;
        }
        hi[j] = std::max(hi[j], lo[j]);
    }
    return Box<Scalar>(lo, hi);
}

}  // namespace polyoracle
