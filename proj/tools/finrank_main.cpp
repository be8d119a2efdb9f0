#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "finrank/errors.hpp"
#include "finrank/experiment.hpp"

namespace {

using finrank::ExperimentSpec;
using finrank::Report;

struct OutputOptions {
    std::string out_dir;  // empty: report to stdout
    std::string format = "both";
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--out", out.out_dir,
                    "output directory (default: FINRANK_OUT or stdout)");
    cmd->add_option("--format", out.format, "json, csv, or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
}

std::string effective_out_dir(const OutputOptions& out) {
    if (!out.out_dir.empty()) return out.out_dir;
    if (const char* env = std::getenv("FINRANK_OUT")) return env;
    return "";
}

int failed_cases(const Report& report) {
    int n = 0;
    for (const auto& c : report.cases)
        if (!c.pass) ++n;
    return n;
}

// Writes (or prints) the report; returns 0 on all-pass, 1 otherwise.
int deliver(const Report& report, const OutputOptions& out) {
    const std::string dir = effective_out_dir(out);
    const std::string name =
        report.spec.name.empty() ? "experiment" : report.spec.name;
    std::cerr << name << ": " << report.cases.size() << " cases, "
              << failed_cases(report) << " failed, " << report.elapsed_seconds
              << " s\n";
    if (dir.empty()) {
        if (out.format == "csv")
            std::cout << finrank::emit_report(report, "csv");
        else
            std::cout << finrank::emit_report(report, "json");
        if (out.format == "both")
            std::cout << finrank::emit_report(report, "csv");
    } else {
        std::filesystem::create_directories(dir);
        const std::filesystem::path base = std::filesystem::path(dir) / name;
        if (out.format != "csv") {
            std::ofstream f(base.string() + ".json", std::ios::binary);
            f << finrank::emit_report(report, "json");
        }
        if (out.format != "json") {
            std::ofstream f(base.string() + ".csv", std::ios::binary);
            f << finrank::emit_report(report, "csv");
        }
        std::cout << name << ": " << (report.all_pass ? "pass" : "FAIL")
                  << "\n";
    }
    return report.all_pass ? 0 : 1;
}

const char* kSchemaText = R"(weight spec (JSON object):
  {"ambient": {"kind": "complex"|"real", "dim": n},
   "type": "atomic" | "point_distribution" | "density" | "fourier_radial",
   ...}
  complex scalars are [re, im] pairs; points are arrays of real coordinates
  (a point of C^d uses 2d reals, z_j = x_{2j-1} + i x_{2j}).
  atomic:             "points": [[...], ...], "masses": [[re, im], ...]
  point_distribution: "points": [[...], ...],
                      "operators": [[{"gamma": [ints], "coefficient": [re, im]}, ...], ...]
  density (named built-ins only):
                      "name": "uniform_box", "box": [[lo, hi], ...], "total_mass": m
                      "name": "gaussian", "center": [...], "sigma": s
                      optional "quadrature_order" (default 64)
  fourier_radial:     "series": [a_0, a_1, ...] with FT(xi) = sum a_k |xi|^{2k},
                      optional "validity_radius"

experiment spec (JSON object):
  {"name": str, "kind": str, "seed": int,
   "weight": <weight spec> | "ensemble": <descriptor>, "parameters": {...}}
  kinds: RankTable, Recovery, Wiener, SphereAverage, HarmonicGrowth,
         VandermondeCheck, CauchyDecay, TwistMonotonicity
  ensembles: {"name": "atomic_c1", "count", "min_atoms", "max_atoms",
              "separation", "min_mass", "max_mass"}
             {"name": "atomic_cd", "count", "dims": [...], "max_atoms", "separation"}
             {"name": "atomic_real", "count", "D", "min_atoms", "max_atoms", "separation"}
             {"name": "point_distribution_c1", "count", "max_points", "max_order"}
             {"name": "circle_minus_delta", "n"}
             {"name": "collision_pair"}
  reports: deterministic given the spec; JSON plus a CSV summary row per case.
)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-rank moment experiments"};
    app.require_subcommand(1);

    std::string spec_path;
    std::optional<std::uint64_t> seed_override;
    OutputOptions run_out;
    CLI::App* run = app.add_subcommand("run", "run an experiment spec file");
    run->add_option("spec", spec_path, "experiment spec (JSON)")->required();
    run->add_option("--seed", seed_override, "override the spec seed");
    add_output_flags(run, run_out);

    bool suite_all = false;
    std::vector<std::string> suite_names;
    OutputOptions suite_out;
    CLI::App* suite = app.add_subcommand("suite", "run built-in experiments");
    suite->add_flag("--all", suite_all, "run every built-in spec");
    suite->add_option("names", suite_names, "built-in spec names");
    add_output_flags(suite, suite_out);

    CLI::App* describe =
        app.add_subcommand("describe", "print the spec schema");

    CLI11_PARSE(app, argc, argv);

    try {
        if (describe->parsed()) {
            std::cout << kSchemaText;
            for (const auto& spec : finrank::builtin_suite())
                std::cout << "builtin: " << spec.name << " ("
                          << finrank::to_string(spec.kind) << ")\n";
            return 0;
        }
        if (run->parsed()) {
            ExperimentSpec spec = finrank::load_spec(spec_path);
            if (seed_override) spec.seed = *seed_override;
            return deliver(finrank::run_experiment(spec), run_out);
        }
        // suite
        std::vector<ExperimentSpec> specs;
        if (suite_all) {
            specs = finrank::builtin_suite();
        } else {
            if (suite_names.empty())
                throw finrank::ValidationError(
                    "suite: pass --all or at least one name (see describe)");
            for (const auto& name : suite_names) {
                auto spec = finrank::builtin_spec(name);
                if (!spec)
                    throw finrank::ValidationError("unknown built-in spec: " +
                                                   name);
                specs.push_back(std::move(*spec));
            }
        }
        int exit_code = 0;
        for (const auto& spec : specs)
            exit_code |= deliver(finrank::run_experiment(spec), suite_out);
        return exit_code;
    } catch (const finrank::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
