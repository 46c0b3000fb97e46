#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "normshell/normshell.hpp"

namespace normshell::cli {

enum ExitCode : int { ok = 0, usage = 1, infeasible = 2 };

namespace detail {

using nlohmann::json;

inline json to_json(const Vector& v) { return json(v.values()); }

inline Vector parse_vector(const std::string& text) { return Vector(parse_number_list(text)); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts either a bare [[..],..] array or an object with a "summands" key,
// so decompose output can be fed back in unchanged.
inline std::vector<Vector> parse_summands(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string("summands file is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("summands")) doc = doc["summands"];
    if (!doc.is_array()) throw Error(Errc::parse_error, "summands must be an array of vectors");
    std::vector<Vector> out;
    for (const auto& row : doc) {
        if (!row.is_array()) throw Error(Errc::parse_error, "each summand must be an array of numbers");
        std::vector<double> coords;
        for (const auto& c : row) {
            if (!c.is_number()) throw Error(Errc::parse_error, "summand coordinates must be numbers");
            coords.push_back(c.get<double>());
        }
        out.emplace_back(std::move(coords));
    }
    return out;
}

} // namespace detail

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on usage errors and 2 when
/// the inputs are well formed but infeasible.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::json;

    CLI::App app{"Minkowski sums of norm spheres: shells, decompositions and moment bounds", "normshell"};
    app.require_subcommand(1);

    std::string norm_spec = "l2";
    std::string target;
    std::string radii;
    double tol = 1e-10;
    int max_iter = 200;

    auto* shell_cmd = app.add_subcommand("shell", "inner and outer radius of a sum of spheres");
    shell_cmd->add_option("--radii", radii, "comma-separated sphere radii")->required();

    auto* decompose_cmd = app.add_subcommand("decompose", "write a vector as a sum of prescribed-norm vectors");
    decompose_cmd->add_option("--norm", norm_spec, "norm spec: l<p>, linf, optional :w=<weights>");
    decompose_cmd->add_option("--target", target, "comma-separated target vector")->required();
    decompose_cmd->add_option("--radii", radii, "comma-separated summand norms")->required();
    decompose_cmd->add_option("--tol", tol, "norm tolerance");
    decompose_cmd->add_option("--max-iter", max_iter, "bisection iteration cap");
    decompose_cmd->add_flag("--dim-check", "reject dimension 1 (always on)");

    std::string summands_file;
    auto* check_cmd = app.add_subcommand("check", "verify a decomposition");
    check_cmd->add_option("--norm", norm_spec, "norm spec");
    check_cmd->add_option("--target", target, "comma-separated target vector")->required();
    check_cmd->add_option("--radii", radii, "comma-separated summand norms")->required();
    check_cmd->add_option("--summands", summands_file, "JSON file with summands")->required();
    check_cmd->add_option("--tol", tol, "tolerance");

    std::size_t dim = 2;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t bins = 0;
    unsigned jobs = 1;
    auto* sample_cmd = app.add_subcommand("sample", "sample sums of random sphere points");
    sample_cmd->add_option("--norm", norm_spec, "norm spec");
    sample_cmd->add_option("--radii", radii, "comma-separated sphere radii")->required();
    sample_cmd->add_option("--dim", dim, "dimension")->required();
    sample_cmd->add_option("--trials", trials, "number of sums")->required();
    sample_cmd->add_option("--seed", seed, "random seed")->required();
    sample_cmd->add_option("--bins", bins, "also run a coverage check with this many bins");
    sample_cmd->add_option("--jobs", jobs, "worker threads");

    std::string moments;
    std::string assumption_name;
    int order = 1;
    std::optional<std::size_t> n_iidc;
    auto* bounds_cmd = app.add_subcommand("bounds", "optimal bounds on E|S_n|^r from individual moments");
    bounds_cmd->add_option("--moments", moments, "comma-separated moments")->required();
    bounds_cmd->add_option("--assumption", assumption_name, "N, IIDC, IC or MG")->required();
    bounds_cmd->add_option("--order", order, "moment order, 1 or 2")->required();
    bounds_cmd->add_option("--n", n_iidc, "number of summands when a single IIDC moment is given");

    std::string paths_file;
    auto* verify_cmd = app.add_subcommand("verify-bounds", "compare sampled paths with the bounds");
    verify_cmd->add_option("--paths", paths_file, "CSV file, one path per row")->required();
    verify_cmd->add_option("--assumption", assumption_name, "N, IIDC, IC or MG")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*shell_cmd) {
            const Shell s = shell_of_radii(RadiusList(parse_number_list(radii)));
            out << json{{"inner", s.inner}, {"outer", s.outer}}.dump() << '\n';
        } else if (*decompose_cmd) {
            const Norm norm = parse_norm_spec(norm_spec);
            const SolverConfig cfg{tol, max_iter};
            const Decomposition d =
                decompose(norm, detail::parse_vector(target), RadiusList(parse_number_list(radii)), cfg);
            json summands = json::array();
            for (const auto& x : d.summands) summands.push_back(detail::to_json(x));
            out << json{{"summands", summands},
                        {"achieved_norms", d.achieved_norms},
                        {"max_norm_error", d.max_norm_error}}
                       .dump()
                << '\n';
        } else if (*check_cmd) {
            const Norm norm = parse_norm_spec(norm_spec);
            const Vector z = detail::parse_vector(target);
            const RadiusList a(parse_number_list(radii));
            const auto xs = detail::parse_summands(detail::read_file(summands_file));
            if (xs.size() != a.size()) {
                throw Error(Errc::invalid_argument, "expected " + std::to_string(a.size()) + " summands, got " +
                                                        std::to_string(xs.size()));
            }
            const double sum_error = norm(sum(xs) - z);
            std::vector<double> achieved;
            double max_err = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                achieved.push_back(norm(xs[i]));
                max_err = std::max(max_err, std::abs(achieved.back() - a[i]));
            }
            const double sum_tol = tol * (1.0 + norm(z));
            const double norm_tol = tol * (1.0 + a.sum());
            const bool pass = sum_error <= sum_tol && max_err <= norm_tol;
            out << json{{"pass", pass},
                        {"sum_error", sum_error},
                        {"sum_tolerance", sum_tol},
                        {"achieved_norms", achieved},
                        {"max_norm_error", max_err},
                        {"norm_tolerance", norm_tol}}
                       .dump()
                << '\n';
            return pass ? ok : infeasible;
        } else if (*sample_cmd) {
            const Norm norm = parse_norm_spec(norm_spec);
            const RadiusList a(parse_number_list(radii));
            const auto batch = sample_sphere_sums(norm, a, dim, trials, seed, jobs);
            out << (dim == 2 ? "index,sum_norm,x,y\n" : "index,sum_norm\n");
            for (std::size_t i = 0; i < trials; ++i) {
                out << i << ',' << format_double(batch.achieved_sum_norms[i]);
                if (dim == 2) {
                    out << ',' << format_double(batch.points[i][0]) << ',' << format_double(batch.points[i][1]);
                }
                out << '\n';
            }
            if (bins > 0) {
                const Shell s = shell_of_radii(a);
                const auto counts = histogram(batch.achieved_sum_norms, s.inner, s.outer, bins);
                const auto empty = std::count(counts.begin(), counts.end(), 0u);
                std::size_t outside = 0;
                const double slack = 1e-9 * (1.0 + s.outer);
                for (double v : batch.achieved_sum_norms) {
                    if (v < s.inner - slack || v > s.outer + slack) ++outside;
                }
                err << "coverage: shell [" << format_double(s.inner) << ", " << format_double(s.outer)
                    << "], " << bins << " bins, " << empty << " empty, " << outside << " outside\n";
            }
        } else if (*bounds_cmd) {
            const BoundReport r = bounds_report(MomentProfile(parse_number_list(moments)),
                                                parse_assumption(assumption_name), order, n_iidc);
            out << json{{"lower", r.lower}, {"upper", r.upper}, {"optimal", r.optimal}}.dump() << '\n';
        } else if (*verify_cmd) {
            std::istringstream in(detail::read_file(paths_file));
            const auto rows = read_numeric_csv(in);
            const EmpiricalReport r = empirical_check(rows, parse_assumption(assumption_name));
            out << json{{"assumption", std::string(to_string(r.bounds.assumption))},
                        {"paths", r.paths},
                        {"steps", r.steps},
                        {"mean_abs_increments", r.mean_abs_increments},
                        {"mean_abs_sum", r.mean_abs_sum},
                        {"sd_abs_sum", r.sd_abs_sum},
                        {"delta", r.delta},
                        {"lower", r.bounds.lower},
                        {"upper", r.bounds.upper},
                        {"optimal", r.bounds.optimal},
                        {"below_lower", r.below_lower},
                        {"above_upper", r.above_upper},
                        {"within", r.within()}}
                       .dump()
                << '\n';
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.infeasible() ? infeasible : usage;
    }
    return ok;
}

} // namespace normshell::cli
