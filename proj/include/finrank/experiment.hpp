#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finrank/weight_io.hpp"

namespace finrank {

enum class ExperimentKind {
    RankTable,
    Recovery,
    Wiener,
    SphereAverage,
    HarmonicGrowth,
    VandermondeCheck,
    CauchyDecay,
    TwistMonotonicity,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

// A runnable experiment: either an explicit weight or a seeded ensemble
// descriptor, plus kind-specific parameters. Ensembles are fully determined
// by the seed, so reports are reproducible byte for byte.
struct ExperimentSpec {
    std::string name;
    ExperimentKind kind = ExperimentKind::RankTable;
    std::uint64_t seed = 1;
    Json weight;      // explicit weight spec, or null
    Json ensemble;    // ensemble descriptor, or null
    Json parameters = Json::object();  // kind-specific knobs
};

Json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const Json& j);
ExperimentSpec load_spec(const std::string& path);

struct CaseResult {
    int index = 0;
    bool pass = false;
    Json data;  // flat object of per-case values
};

struct Report {
    ExperimentSpec spec;
    std::vector<CaseResult> cases;
    bool all_pass = true;
    double elapsed_seconds = 0.0;  // stderr diagnostics only, not serialized
};

Report run_experiment(const ExperimentSpec& spec);

Json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);
// format one of "json", "csv"
std::string emit_report(const Report& report, const std::string& format);

// The named built-in specs; one per acceptance criterion.
std::vector<ExperimentSpec> builtin_suite();
std::optional<ExperimentSpec> builtin_spec(const std::string& name);

}  // namespace finrank
