// Command-line front end: dataset generation, site-set dumps, and the
// membership/boundary benchmark harness with CSV reports.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyoracle/bench.hpp"

namespace {

using namespace polyoracle;

std::string variant_name(GenVariant v) {
    return v == GenVariant::PAPER ? "paper" : "symmetrized";
}

VectorX<double> pick_anchor(const HPolytope<double>& P, const std::string& mode) {
    if (mode == "chebyshev") return anchor_from_chebyshev(P);
    return VectorX<double>::Zero(P.dim());
}

/// Streams rows to --out or stdout with reproducibility metadata up front.
void emit_csv(const std::string& out_path, const std::vector<BenchRow>& rows,
              const std::vector<std::string>& comments) {
    if (out_path.empty()) {
        write_csv(std::cout, rows, comments);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    write_csv(out, rows, comments);
}

struct GenArgs {
    Index d = 2;
    Index n = 6;
    int instances = 1;
    std::uint64_t seed = 0;
    std::string variant = "paper";
    double rhs = 1000.0;
    bool integer_coeffs = false;
    std::string out_dir = ".";
};

int cmd_gen(const GenArgs& a) {
    for (int i = 0; i < a.instances; ++i) {
        GenSpec spec;
        spec.d = a.d;
        spec.n = a.n;
        spec.rhs = a.rhs;
        spec.variant = a.variant == "paper" ? GenVariant::PAPER : GenVariant::SYMMETRIZED;
        spec.integer_coeffs = a.integer_coeffs;
        spec.seed = Rng(a.seed).fork(100 + i).next_u64();
        const HPolytope<double> P = gen_polytope(spec);

        std::ostringstream meta;
        meta << "polyoracle gen d=" << a.d << " n=" << a.n << " rhs=" << a.rhs
             << " variant=" << a.variant << " integer_coeffs=" << (a.integer_coeffs ? 1 : 0)
             << " seed=" << a.seed << " instance=" << i;
        const std::string path = a.out_dir + "/P_" + std::to_string(a.d) + "_" +
                                 std::to_string(a.n) + "_" + std::to_string(i) + ".poly";
        write_polytope_file(path, P, {meta.str()});
        std::cout << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polytope membership and boundary oracles via nearest-neighbor search"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate random polytope files");
    gen->add_option("--d", gen_args.d, "Dimension")->check(CLI::Range(Index(2), Index(1 << 20)));
    gen->add_option("--n", gen_args.n, "Number of facets")->required();
    gen->add_option("--instances", gen_args.instances, "Instances to emit")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_args.seed, "Master seed");
    gen->add_option("--variant", gen_args.variant, "Coefficient signs")
        ->check(CLI::IsMember({"paper", "symmetrized"}));
    gen->add_option("--rhs", gen_args.rhs, "Right-hand side")->check(CLI::PositiveNumber);
    gen->add_flag("--integer-coeffs", gen_args.integer_coeffs,
                  "Integer reading of the coefficient distribution");
    gen->add_option("--out-dir", gen_args.out_dir, "Output directory");

    // --- sites ---------------------------------------------------------------
    std::string sites_in, sites_out, sites_anchor = "origin";
    CLI::App* sites_cmd = app.add_subcommand("sites", "Dump the Voronoi site set (anchor first)");
    sites_cmd->add_option("--in", sites_in, "Polytope file")->required();
    sites_cmd->add_option("--out", sites_out, "Output point file (default stdout)");
    sites_cmd->add_option("--anchor", sites_anchor, "Anchor choice")
        ->check(CLI::IsMember({"origin", "chebyshev"}));

    // --- bench-membership ----------------------------------------------------
    std::string bm_in, bm_out, bm_anchor = "origin", bm_eps_rule = "branch2";
    int bm_instance = 0;
    MembershipBenchOptions bm;
    CLI::App* bench_m = app.add_subcommand("bench-membership",
                                           "Membership benchmark: ANN vs the all-facet check");
    bench_m->add_option("--in", bm_in, "Polytope file")->required();
    bench_m->add_option("--eps", bm.eps, "Approximation parameter")->check(CLI::Range(1e-12, 0.999));
    bench_m->add_option("--k", bm.k, "Hash bits per table")->check(CLI::Range(1, 30));
    bench_m->add_option("--l", bm.l, "Hash tables")->check(CLI::PositiveNumber);
    bench_m->add_option("--probes", bm.probes, "Probed buckets per table")->check(CLI::PositiveNumber);
    bench_m->add_option("--queries", bm.queries, "Interior query count (same number moved outside)");
    bench_m->add_option("--seed", bm.seed, "Seed");
    bench_m->add_option("--margin", bm.margin, "Outside displacement beyond the boundary");
    bench_m->add_flag("--no-clearance", bm.no_clearance,
                      "Skip the bounding box and clearance filter (required for unbounded input)");
    bench_m->add_option("--anchor", bm_anchor, "Anchor choice")
        ->check(CLI::IsMember({"origin", "chebyshev"}));
    bench_m->add_option("--eps-prime", bm_eps_rule, "ANN factor rule")
        ->check(CLI::IsMember({"branch2", "paper"}));
    bench_m->add_option("--out", bm_out, "CSV output path (default stdout)");
    bench_m->add_option("--instance", bm_instance, "Instance label for the report");

    // --- bench-boundary --------------------------------------------------------
    std::string bb_in, bb_out, bb_anchor = "origin", bb_mode = "approx", bb_eps_rule = "branch2";
    int bb_instance = 0;
    BoundaryBenchOptions bb;
    CLI::App* bench_b = app.add_subcommand("bench-boundary",
                                           "Boundary benchmark against exact ray shooting");
    bench_b->add_option("--in", bb_in, "Polytope file")->required();
    bench_b->add_option("--eps", bb.eps, "Approximation parameter")->check(CLI::Range(1e-12, 0.999));
    bench_b->add_option("--rays", bb.rays, "Ray count");
    bench_b->add_option("--seed", bb.seed, "Seed");
    bench_b->add_option("--k", bb.k, "Hash bits per table")->check(CLI::Range(1, 30));
    bench_b->add_option("--l", bb.l, "Hash tables")->check(CLI::PositiveNumber);
    bench_b->add_option("--probes", bb.probes, "Probed buckets per table")->check(CLI::PositiveNumber);
    bench_b->add_option("--mode", bb_mode, "Oracle flavor")->check(CLI::IsMember({"exact", "approx"}));
    bench_b->add_option("--anchor", bb_anchor, "Anchor choice")
        ->check(CLI::IsMember({"origin", "chebyshev"}));
    bench_b->add_option("--eps-prime", bb_eps_rule, "ANN factor rule")
        ->check(CLI::IsMember({"branch2", "paper"}));
    bench_b->add_option("--out", bb_out, "CSV output path (default stdout)");
    bench_b->add_option("--instance", bb_instance, "Instance label for the report");

    // --- sweep -----------------------------------------------------------------
    std::string sw_in, sw_out, sw_anchor = "origin";
    std::vector<int> sw_k, sw_l, sw_probes;
    MembershipBenchOptions sw;
    CLI::App* sweep = app.add_subcommand("sweep", "Accuracy/time grid over (k, l, probes)");
    sweep->add_option("--in", sw_in, "Polytope file")->required();
    sweep->add_option("--k", sw_k, "Hash bit grid")->required();
    sweep->add_option("--l", sw_l, "Table grid")->required();
    sweep->add_option("--probes", sw_probes, "Probe grid")->required();
    sweep->add_option("--eps", sw.eps, "Approximation parameter")->check(CLI::Range(1e-12, 0.999));
    sweep->add_option("--queries", sw.queries, "Interior query count");
    sweep->add_option("--seed", sw.seed, "Seed");
    sweep->add_flag("--no-clearance", sw.no_clearance, "Skip the clearance filter");
    sweep->add_option("--anchor", sw_anchor, "Anchor choice")
        ->check(CLI::IsMember({"origin", "chebyshev"}));
    sweep->add_option("--out", sw_out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);

        if (gen->parsed()) return cmd_gen(gen_args);

        if (sites_cmd->parsed()) {
            const HPolytope<double> P = read_polytope_file(sites_in);
            const VectorX<double> anchor = pick_anchor(P, sites_anchor);
            const SiteSet<double> S = build_sites(P, anchor);
            std::vector<VectorX<double>> pts;
            pts.reserve(S.points().rows());
            for (Index i = 0; i < S.points().rows(); ++i) pts.push_back(S.points().row(i).transpose());
            const std::vector<std::string> meta = {"polyoracle sites anchor=" + sites_anchor +
                                                   " source=" + sites_in};
            if (sites_out.empty()) {
                write_points(std::cout, pts, meta);
            } else {
                std::ofstream out(sites_out);
                if (!out) throw IoError("cannot open '" + sites_out + "' for writing");
                write_points(out, pts, meta);
            }
            return 0;
        }

        if (bench_m->parsed()) {
            bm.eps_rule = bm_eps_rule == "paper" ? EpsPrimeRule::PaperMin : EpsPrimeRule::SecondBranch;
            const HPolytope<double> P = read_polytope_file(bm_in);
            const VectorX<double> anchor = pick_anchor(P, bm_anchor);
            const auto rows = run_membership_bench(P, anchor, bm, bm_instance);
            emit_csv(bm_out, rows,
                     {"polyoracle bench-membership in=" + bm_in + " anchor=" + bm_anchor});
            return 0;
        }

        if (bench_b->parsed()) {
            bb.eps_rule = bb_eps_rule == "paper" ? EpsPrimeRule::PaperMin : EpsPrimeRule::SecondBranch;
            bb.exact_mode = bb_mode == "exact";
            const HPolytope<double> P = read_polytope_file(bb_in);
            const VectorX<double> anchor = pick_anchor(P, bb_anchor);
            const auto rows = run_boundary_bench(P, anchor, bb, bb_instance);
            emit_csv(bb_out, rows, {"polyoracle bench-boundary in=" + bb_in + " anchor=" + bb_anchor +
                                    " mode=" + bb_mode});
            return 0;
        }

        if (sweep->parsed()) {
            const HPolytope<double> P = read_polytope_file(sw_in);
            const VectorX<double> anchor = pick_anchor(P, sw_anchor);
            const auto rows = run_sweep(P, anchor, sw_k, sw_l, sw_probes, sw);
            emit_csv(sw_out, rows, {"polyoracle sweep in=" + sw_in + " anchor=" + sw_anchor});
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
