#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polyoracle/geometry.hpp"
#include "polyoracle/hpolytope.hpp"
#include "polyoracle/types.hpp"

namespace polyoracle {
namespace detail {

inline double parse_number(std::string_view tok, const std::string& where) {
    double v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw IoError(where + ": bad number '" + std::string(tok) + "'");
    return v;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Data lines of a file: '#' metadata lines and blank lines are skipped.
inline std::vector<std::string> data_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size() || line[i] == '#' || line[i] == '\r') continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

/// Polytope file: optional '#' header lines, then "d n", then n rows of
/// d+1 numbers (the facet normal followed by the offset). Locale-independent
/// decimal notation throughout.
template <typename Scalar = double>
HPolytope<Scalar> read_polytope(std::istream& in, const std::string& where = "polytope") {
    const auto lines = detail::data_lines(in);
    if (lines.empty()) throw IoError(where + ": empty file");
    const auto head = detail::split_ws(lines[0]);
    if (head.size() != 2) throw IoError(where + ": first data line must be 'd n'");
    const Index d = static_cast<Index>(detail::parse_number(head[0], where));
    const Index n = static_cast<Index>(detail::parse_number(head[1], where));
    if (d < 1 || n < 1) throw IoError(where + ": nonpositive dimensions");
    if (static_cast<Index>(lines.size()) != n + 1)
        throw IoError(where + ": expected " + std::to_string(n) + " facet rows, got " +
                      std::to_string(lines.size() - 1));

    MatrixX<Scalar> A(n, d);
    VectorX<Scalar> b(n);
    for (Index i = 0; i < n; ++i) {
        const auto toks = detail::split_ws(lines[i + 1]);
        if (static_cast<Index>(toks.size()) != d + 1)
            throw IoError(where + ": row " + std::to_string(i) + " needs " + std::to_string(d + 1) +
                          " numbers");
        for (Index j = 0; j < d; ++j) A(i, j) = static_cast<Scalar>(detail::parse_number(toks[j], where));
        b[i] = static_cast<Scalar>(detail::parse_number(toks[d], where));
    }
    return HPolytope<Scalar>(std::move(A), std::move(b));
}

template <typename Scalar = double>
HPolytope<Scalar> read_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_polytope<Scalar>(in, path);
}

template <typename Scalar>
void write_polytope(std::ostream& out, const HPolytope<Scalar>& P,
                    const std::vector<std::string>& header_comments = {}) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << P.dim() << " " << P.num_facets() << "\n";
    for (Index i = 0; i < P.num_facets(); ++i) {
        for (Index j = 0; j < P.dim(); ++j)
            out << detail::format_number(static_cast<double>(P.A()(i, j))) << " ";
        out << detail::format_number(static_cast<double>(P.b()[i])) << "\n";
    }
}

template <typename Scalar>
void write_polytope_file(const std::string& path, const HPolytope<Scalar>& P,
                         const std::vector<std::string>& header_comments = {}) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_polytope(out, P, header_comments);
}

/// Point file: one point per line, d numbers each.
template <typename Scalar = double>
std::vector<VectorX<Scalar>> read_points(std::istream& in, const std::string& where = "points") {
    std::vector<VectorX<Scalar>> pts;
    for (const auto& line : detail::data_lines(in)) {
        const auto toks = detail::split_ws(line);
        VectorX<Scalar> p(toks.size());
        for (std::size_t j = 0; j < toks.size(); ++j)
            p[j] = static_cast<Scalar>(detail::parse_number(toks[j], where));
        if (!pts.empty() && p.size() != pts.front().size())
            throw IoError(where + ": inconsistent point dimensions");
        pts.push_back(std::move(p));
    }
    return pts;
}

template <typename Scalar>
void write_points(std::ostream& out, const std::vector<VectorX<Scalar>>& pts,
                  const std::vector<std::string>& header_comments = {}) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    for (const auto& p : pts) {
        for (Index j = 0; j < p.size(); ++j) {
            if (j) out << " ";
            out << detail::format_number(static_cast<double>(p[j]));
        }
        out << "\n";
    }
}

/// Ray file: one ray per line as 2d numbers, apex then direction.
template <typename Scalar = double>
std::vector<Ray<Scalar>> read_rays(std::istream& in, const std::string& where = "rays") {
    std::vector<Ray<Scalar>> rays;
    for (const auto& line : detail::data_lines(in)) {
        const auto toks = detail::split_ws(line);
        if (toks.size() % 2 != 0 || toks.empty())
            throw IoError(where + ": a ray line needs 2d numbers");
        const Index d = static_cast<Index>(toks.size() / 2);
        VectorX<Scalar> s(d), v(d);
        for (Index j = 0; j < d; ++j) {
            s[j] = static_cast<Scalar>(detail::parse_number(toks[j], where));
            v[j] = static_cast<Scalar>(detail::parse_number(toks[d + j], where));
        }
        rays.emplace_back(std::move(s), v);
    }
    return rays;
}

}  // namespace polyoracle
