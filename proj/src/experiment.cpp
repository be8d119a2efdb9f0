#include "finrank/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "finrank/ensemble.hpp"
#include "finrank/errors.hpp"
#include "finrank/moments.hpp"
#include "finrank/recovery.hpp"
#include "finrank/vandermonde.hpp"
#include "finrank/wiener.hpp"

namespace finrank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rng case_rng(std::uint64_t seed, int index) {
    return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1)));
}

int ensemble_count(const ExperimentSpec& spec) {
    if (spec.ensemble.is_object()) return spec.ensemble.value("count", 1);
    return 1;
}

Weight make_case_weight(const ExperimentSpec& spec, int index) {
    if (!spec.ensemble.is_object()) {
        if (spec.weight.is_null())
            throw ValidationError("experiment needs a weight or an ensemble");
        return weight_from_json(spec.weight);
    }
    const Json& e = spec.ensemble;
    const std::string name = e.value("name", "");
    Rng rng = case_rng(spec.seed, index);
    if (name == "atomic_c1") {
        AtomicEnsembleParams p;
        p.min_atoms = e.value("min_atoms", 1);
        p.max_atoms = e.value("max_atoms", 6);
        p.separation = e.value("separation", 0.1);
        p.min_mass = e.value("min_mass", 0.1);
        p.max_mass = e.value("max_mass", 1.0);
        return random_atomic_c1(rng, p);
    }
    if (name == "atomic_cd") {
        std::vector<int> dims = e.value("dims", std::vector<int>{2});
        const int d = dims[static_cast<size_t>(index) % dims.size()];
        return random_atomic_cd(rng, d, e.value("max_atoms", 4),
                                e.value("separation", 0.1));
    }
    if (name == "atomic_real") {
        return random_atomic_real(rng, e.value("D", 3), e.value("min_atoms", 1),
                                  e.value("max_atoms", 5),
                                  e.value("separation", 0.1));
    }
    if (name == "point_distribution_c1") {
        return random_point_distribution_c1(rng, e.value("max_points", 3),
                                            e.value("max_order", 2));
    }
    if (name == "circle_minus_delta") {
        return circle_minus_delta(e.value("n", 2048));
    }
    if (name == "collision_pair") return collision_pair();
    throw ValidationError("unknown ensemble name: " + name);
}

int atom_count(const Weight& W) {
    return static_cast<int>(W.atomic().masses.size());
}

// max matched Euclidean distance under the best permutation, with the
// permutation reported so mass errors use the same pairing
double support_match_error(const std::vector<std::vector<Complex>>& got,
                           const std::vector<std::vector<Complex>>& truth,
                           std::vector<size_t>* best_perm = nullptr) {
    if (got.size() != truth.size()) return kInf;
    const size_t n = got.size();
    if (n == 0) return 0.0;
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    double best = kInf;
    do {
        double worst = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (size_t j = 0; j < got[perm[i]].size(); ++j)
                d2 += std::norm(got[perm[i]][j] - truth[i][j]);
            worst = std::max(worst, std::sqrt(d2));
        }
        if (worst < best) {
            best = worst;
            if (best_perm) *best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Complex operator_point_mass(const DifferentialOperator& L, int real_dim) {
    const auto it = L.terms().find(MultiIndex(static_cast<size_t>(real_dim), 0));
    return it == L.terms().end() ? Complex(0.0, 0.0) : it->second;
}

double bi_coefficient_norm(const BiPolynomial& p) {
    double s = 0.0;
    for (const auto& [key, c] : p.terms()) s += std::abs(c);
    return s;
}

void push_case(Report& report, int index, bool pass, Json data) {
    CaseResult r;
    r.index = index;
    r.pass = pass;
    r.data = std::move(data);
    report.all_pass = report.all_pass && pass;
    report.cases.push_back(std::move(r));
}

// ----------------------------------------------------------------- RankTable

void run_rank_table(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const std::string check = p.value("check", "rank_equals_atoms");
    const std::string basis = p.value("basis", "monomial");
    const double eps = p.value("eps_rel", 1e-8);
    const int count = ensemble_count(spec);
    if (check == "harmonic_ge_analytic") {
        for (int i = 0; i < count; ++i) {
            const Weight W = make_case_weight(spec, i);
            const int m = atom_count(W);
            const int N = p.value("N", 2 * m);
            const int ra = numerical_rank(analytic_moment_matrix(W, N), eps).rank;
            const int rh =
                numerical_rank(harmonic_moment_matrix(as_real_space(W), N), eps)
                    .rank;
            push_case(report, i, rh >= ra,
                      {{"atoms", m},
                       {"analytic_rank", ra},
                       {"harmonic_rank", rh}});
        }
        return;
    }
    for (int i = 0; i < count; ++i) {
        const Weight W = make_case_weight(spec, i);
        const bool is_at = W.is_atomic();
        const int m = is_at ? atom_count(W) : -1;
        int rank;
        Json data;
        if (basis == "harmonic") {
            const int k_max = p.value("k_max", 6);
            rank = numerical_rank(harmonic_moment_matrix(W, k_max), eps).rank;
            data = {{"atoms", m}, {"k_max", k_max}, {"rank", rank}};
        } else {
            const int N = p.contains("N") ? p.at("N").get<int>()
                                          : (is_at ? 2 * m : 4);
            rank = numerical_rank(analytic_moment_matrix(W, N), eps).rank;
            data = {{"atoms", m}, {"N", N}, {"rank", rank}};
        }
        bool pass = true;
        if (p.contains("expected_rank")) pass = rank == p.at("expected_rank").get<int>();
        else if (is_at) pass = rank == m;
        push_case(report, i, pass, std::move(data));
    }
    // even-dimensional embedding comparison appended after the main ensemble
    const int extra = p.value("even_dim_count", 0);
    for (int i = 0; i < extra; ++i) {
        Rng rng = case_rng(spec.seed * 2654435761ULL + 17, i);
        AtomicEnsembleParams ap;
        ap.max_atoms = p.value("even_dim_max_atoms", 4);
        const Weight W = random_atomic_c1(rng, ap);
        const int m = atom_count(W);
        const int N = 2 * m;
        const int ra = numerical_rank(analytic_moment_matrix(W, N), eps).rank;
        const int rh =
            numerical_rank(harmonic_moment_matrix(as_real_space(W), N), eps).rank;
        push_case(report, count + i, rh >= ra,
                  {{"atoms", m}, {"analytic_rank", ra}, {"harmonic_rank", rh}});
    }
}

// ------------------------------------------------------------------ Recovery

void run_recovery(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const int m_bound = p.value("m_bound", 6);
    const int order_bound = p.value("order_bound", 0);
    const double support_tol = p.value("support_tol", 1e-6);
    const double mass_tol = p.value("mass_tol", 1e-6);
    const double residual_tol = p.value("residual_tol", 1e-8);
    const int count = ensemble_count(spec);
    int index = 0;
    for (; index < count; ++index) {
        const Weight W = make_case_weight(spec, index);
        const int d = W.ambient().dim;
        Json data;
        bool pass = false;
        try {
            RecoveryReport rep;
            if (d == 1) rep = recover_1d(W, m_bound, order_bound);
            else {
                Rng rng = case_rng(spec.seed * 48271ULL + 3, index);
                rep = recover_multid(W, m_bound, order_bound, rng);
            }
            const auto truth = W.complex_points();
            std::vector<size_t> perm;
            const double serr = support_match_error(rep.support, truth, &perm);
            double merr = 0.0;
            if (W.is_atomic()) {
                const auto& masses = W.atomic().masses;
                if (perm.size() == truth.size()) {
                    for (size_t i = 0; i < truth.size(); ++i)
                        merr = std::max(
                            merr, std::abs(operator_point_mass(
                                               rep.operators[perm[i]], 2 * d) -
                                           masses[i]));
                } else {
                    merr = kInf;
                }
            }
            pass = serr < support_tol && rep.moment_residual < residual_tol &&
                   (!W.is_atomic() || merr < mass_tol);
            data = {{"d", d},
                    {"true_points", static_cast<int>(truth.size())},
                    {"recovered", static_cast<int>(rep.support.size())},
                    {"support_error", serr},
                    {"mass_error", merr},
                    {"residual", rep.moment_residual}};
        } catch (const RecoveryError& err) {
            data = {{"d", d}, {"error", err.what()}};
        }
        push_case(report, index, pass, std::move(data));
    }
    if (p.value("collision_case", false)) {
        const Weight W = collision_pair();
        Json data;
        bool pass = false;
        try {
            Rng rng = case_rng(spec.seed * 48271ULL + 3, index);
            const RecoveryReport rep = recover_multid(W, 2, 0, rng);
            const double serr = support_match_error(rep.support, W.complex_points());
            pass = serr < support_tol;
            data = {{"collision", true},
                    {"support_error", serr},
                    {"residual", rep.moment_residual}};
        } catch (const RecoveryError& err) {
            data = {{"collision", true}, {"error", err.what()}};
        }
        push_case(report, index++, pass, std::move(data));
    }
    if (p.value("negative_control", false)) {
        // a genuinely non-discrete weight must be refused
        Box box;
        box.intervals = {{0.0, 1.0}, {0.0, 1.0}};
        const Weight W = uniform_box_density(complex_space(1), box, 1.0);
        Json data{{"control", "uniform_density"}};
        bool pass = false;
        try {
            recover_1d(W, m_bound, order_bound);
            data["error"] = "control unexpectedly recovered";
        } catch (const RecoveryError& err) {
            pass = true;
            data["error"] = err.what();
        }
        push_case(report, index++, pass, std::move(data));
    }
}

// -------------------------------------------------------------------- Wiener

void run_wiener_atom_mass(const ExperimentSpec& spec, Report& report) {
    const Json cases = spec.parameters.value("cases", Json::array());
    if (!cases.is_array() || cases.empty())
        throw ValidationError("wiener atom_mass experiment needs cases");
    int index = 0;
    for (const auto& c : cases) {
        const Weight W = weight_from_json(c.at("weight"));
        const std::vector<double> schedule =
            c.value("R_schedule", default_R_schedule());
        const WienerEstimate est = atom_mass(W, schedule);
        bool pass = true;
        Json data{{"limit", est.limit},
                  {"error_estimate", est.error_estimate},
                  {"values", est.values}};
        if (c.contains("expected_limit")) {
            const double tol = c.value("tol", 1e-6);
            data["expected_limit"] = c.at("expected_limit").get<double>();
            pass = std::abs(est.limit - c.at("expected_limit").get<double>()) <= tol;
        }
        if (c.contains("max_limit")) {
            data["max_limit"] = c.at("max_limit").get<double>();
            pass = pass && est.limit <= c.at("max_limit").get<double>();
        }
        push_case(report, index++, pass, std::move(data));
    }
}

void run_wiener_projection(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const int pairs = p.value("pairs", 20);
    const double tol = p.value("tol", 1e-12);
    const int count = ensemble_count(spec);
    for (int i = 0; i < count; ++i) {
        const Weight W = make_case_weight(spec, i);
        const int D = W.ambient().real_dim();
        Rng rng = case_rng(spec.seed * 69621ULL + 11, i);
        double worst = 0.0;
        for (int k = 0; k < pairs; ++k) {
            std::vector<double> zeta(static_cast<size_t>(D));
            double nrm = 0.0;
            for (auto& z : zeta) {
                z = rng.normal();
                nrm += z * z;
            }
            nrm = std::sqrt(nrm);
            for (auto& z : zeta) z /= nrm;
            const double t = rng.uniform(-8.0, 8.0);
            const Weight Wz = project(W, zeta);
            std::vector<double> txi(zeta);
            for (auto& z : txi) z *= t;
            const Complex lhs = fourier(Wz, {t});
            const Complex rhs = fourier(W, txi);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        push_case(report, i, worst < tol, {{"max_error", worst}, {"tol", tol}});
    }
}

void run_wiener_classify(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const int n_dirs = p.value("n_directions", 24);
    const int count = ensemble_count(spec);
    for (int i = 0; i < count; ++i) {
        const Weight W = make_case_weight(spec, i);
        const DiscretenessVerdict v =
            classify_discreteness(W, n_dirs, spec.seed + 31ULL * i);
        bool pass = true;
        if (p.contains("expected_verdict"))
            pass = to_string(v.verdict) == p.at("expected_verdict").get<std::string>();
        push_case(report, i, pass,
                  {{"verdict", to_string(v.verdict)},
                   {"atom_mass", v.atom_mass},
                   {"direction_samples", v.direction_samples}});
    }
}

void run_wiener(const ExperimentSpec& spec, Report& report) {
    const std::string check = spec.parameters.value("check", "atom_mass");
    if (check == "atom_mass") run_wiener_atom_mass(spec, report);
    else if (check == "projection_fourier") run_wiener_projection(spec, report);
    else if (check == "classify") run_wiener_classify(spec, report);
    else throw ValidationError("unknown wiener check: " + check);
}

// ------------------------------------------------------------- SphereAverage

void run_sphere_average(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const int n_nodes = p.value("n_nodes", 500);
    const double rel_tol = p.value("rel_tol", 0.01);
    const int count = ensemble_count(spec);
    for (int i = 0; i < count; ++i) {
        const Weight W = make_case_weight(spec, i);
        const SphereAverageResult r = sphere_average_check(W, n_nodes);
        const double rel =
            r.direct == 0.0 ? std::abs(r.average) : std::abs(r.average - r.direct) / r.direct;
        push_case(report, i, rel < rel_tol,
                  {{"average", r.average},
                   {"direct", r.direct},
                   {"rel_error", rel}});
    }
}

// ------------------------------------------------------------ HarmonicGrowth

void run_harmonic_growth(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const int k_min = p.value("k_min", 2);
    const int k_max = p.value("k_max", 8);
    const double eps = p.value("eps_rel", 1e-10);
    if (k_min < 0 || k_max < k_min)
        throw ValidationError("harmonic growth: bad k range");
    const Weight W = make_case_weight(spec, 0);
    std::vector<int> ranks;
    for (int k = k_min; k <= k_max; ++k)
        ranks.push_back(numerical_rank(harmonic_moment_matrix(W, k), eps).rank);
    bool nondecreasing = true, double_plateau = false;
    for (size_t i = 0; i + 1 < ranks.size(); ++i) {
        if (ranks[i + 1] < ranks[i]) nondecreasing = false;
        if (i + 2 < ranks.size() && ranks[i] == ranks[i + 1] &&
            ranks[i + 1] == ranks[i + 2])
            double_plateau = true;
    }
    const bool growing = ranks.back() > ranks.front();
    push_case(report, 0, nondecreasing && !double_plateau && growing,
              {{"k_min", k_min}, {"k_max", k_max}, {"ranks", ranks}});
}

// ---------------------------------------------------------- VandermondeCheck

void run_vandermonde(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const std::vector<int> Ns = p.value("Ns", std::vector<int>{2, 3});
    const int count = p.value("count", 50);
    const int max_degree = p.value("max_degree", 3);
    const double tol_rel = p.value("tol_rel", 1e-10);
    int index = 0;
    for (int N : Ns) {
        for (int i = 0; i < count; ++i) {
            Rng rng = case_rng(spec.seed + 101ULL * N, i);
            const int d1 = rng.uniform_int(1, max_degree);
            const int d2 = rng.uniform_int(1, max_degree);
            const BiPolynomial H1 = symmetric_sample(N, d1, rng.raw());
            const BiPolynomial H2 = symmetric_sample(N, d2, rng.raw());
            const Complex val = check_annihilation(H1, H2, N);
            const double scale =
                std::max(1.0, bi_coefficient_norm(H1) * bi_coefficient_norm(H2));
            const double rel = std::abs(val) / scale;
            push_case(report, index++, rel < tol_rel,
                      {{"N", N}, {"abs_value", std::abs(val)}, {"rel", rel}});
        }
    }
    if (p.value("v_case", false)) {
        const BiPolynomial V = vandermonde_poly(2);
        const Complex val = check_annihilation(V, V, 2);
        const bool pass = std::abs(val - Complex(4.0, 0.0)) < 1e-12;
        push_case(report, index++, pass,
                  {{"N", 2},
                   {"value_re", val.real()},
                   {"value_im", val.imag()},
                   {"expected", 4.0}});
    }
}

// ----------------------------------------------------------------- CauchyDecay

void run_cauchy(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const std::vector<double> radii = p.value("radii", std::vector<double>{1.5, 2.0, 3.0});
    const int angles = p.value("angles", 8);
    const double tol = p.value("tol", 1e-10);
    const Weight W = make_case_weight(spec, 0);
    int index = 0;
    for (double r : radii) {
        double worst = 0.0;
        for (int a = 0; a < angles; ++a) {
            const double th = 6.283185307179586 * (a + 0.37) / angles;
            const Complex z = r * Complex(std::cos(th), std::sin(th));
            worst = std::max(worst, std::abs(cauchy_transform(W, z)));
        }
        push_case(report, index++, worst < tol,
                  {{"radius", r}, {"max_abs", worst}, {"tol", tol}});
    }
}

// ---------------------------------------------------------- TwistMonotonicity

void run_twist(const ExperimentSpec& spec, Report& report) {
    const Json& p = spec.parameters;
    const int max_degree = p.value("max_degree", 3);
    const double eps = p.value("eps_rel", 1e-10);
    const int count = ensemble_count(spec);
    for (int i = 0; i < count; ++i) {
        const Weight W = make_case_weight(spec, i);
        const int m = atom_count(W);
        const int N = p.value("N", 2 * m);
        Rng rng = case_rng(spec.seed * 16807ULL + 29, i);
        const BiPolynomial g = random_holomorphic_1d(rng, max_degree);
        const int rank_tw = numerical_rank(twist(W, g, N), eps).rank;
        const int rank_un =
            numerical_rank(analytic_moment_matrix(W, N + g.holo_degree()), eps)
                .rank;
        push_case(report, i, rank_tw <= rank_un,
                  {{"atoms", m},
                   {"deg_g", g.holo_degree()},
                   {"rank_twisted", rank_tw},
                   {"rank_untwisted", rank_un}});
    }
}

}  // namespace

// ------------------------------------------------------------- serialization

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::RankTable: return "RankTable";
        case ExperimentKind::Recovery: return "Recovery";
        case ExperimentKind::Wiener: return "Wiener";
        case ExperimentKind::SphereAverage: return "SphereAverage";
        case ExperimentKind::HarmonicGrowth: return "HarmonicGrowth";
        case ExperimentKind::VandermondeCheck: return "VandermondeCheck";
        case ExperimentKind::CauchyDecay: return "CauchyDecay";
        default: return "TwistMonotonicity";
    }
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "RankTable") return ExperimentKind::RankTable;
    if (s == "Recovery") return ExperimentKind::Recovery;
    if (s == "Wiener") return ExperimentKind::Wiener;
    if (s == "SphereAverage") return ExperimentKind::SphereAverage;
    if (s == "HarmonicGrowth") return ExperimentKind::HarmonicGrowth;
    if (s == "VandermondeCheck") return ExperimentKind::VandermondeCheck;
    if (s == "CauchyDecay") return ExperimentKind::CauchyDecay;
    if (s == "TwistMonotonicity") return ExperimentKind::TwistMonotonicity;
    throw ValidationError("unknown experiment kind: " + s);
}

Json spec_to_json(const ExperimentSpec& spec) {
    Json j;
    j["name"] = spec.name;
    j["kind"] = to_string(spec.kind);
    j["seed"] = spec.seed;
    if (!spec.weight.is_null()) j["weight"] = spec.weight;
    if (!spec.ensemble.is_null()) j["ensemble"] = spec.ensemble;
    j["parameters"] = spec.parameters.is_null() ? Json::object() : spec.parameters;
    return j;
}

ExperimentSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("experiment spec must be an object");
    if (!j.contains("kind")) throw ValidationError("experiment spec needs a kind");
    ExperimentSpec spec;
    spec.name = j.value("name", "");
    spec.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.weight = j.value("weight", Json());
    spec.ensemble = j.value("ensemble", Json());
    spec.parameters = j.value("parameters", Json::object());
    if (!spec.parameters.is_object())
        throw ValidationError("experiment parameters must be an object");
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str(), nullptr, false);
    if (j.is_discarded())
        throw ValidationError("malformed JSON in spec file: " + path);
    return spec_from_json(j);
}

Report run_experiment(const ExperimentSpec& spec) {
    Report report;
    report.spec = spec;
    const auto t0 = std::chrono::steady_clock::now();
    switch (spec.kind) {
        case ExperimentKind::RankTable: run_rank_table(spec, report); break;
        case ExperimentKind::Recovery: run_recovery(spec, report); break;
        case ExperimentKind::Wiener: run_wiener(spec, report); break;
        case ExperimentKind::SphereAverage: run_sphere_average(spec, report); break;
        case ExperimentKind::HarmonicGrowth: run_harmonic_growth(spec, report); break;
        case ExperimentKind::VandermondeCheck: run_vandermonde(spec, report); break;
        case ExperimentKind::CauchyDecay: run_cauchy(spec, report); break;
        case ExperimentKind::TwistMonotonicity: run_twist(spec, report); break;
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

Json report_to_json(const Report& report) {
    Json j;
    j["name"] = report.spec.name;
    j["spec"] = spec_to_json(report.spec);
    Json cases = Json::array();
    int passed = 0;
    for (const auto& c : report.cases) {
        Json cj;
        cj["case"] = c.index;
        cj["pass"] = c.pass;
        cj["data"] = c.data;
        cases.push_back(std::move(cj));
        if (c.pass) ++passed;
    }
    j["cases"] = std::move(cases);
    j["cases_passed"] = passed;
    j["cases_failed"] = static_cast<int>(report.cases.size()) - passed;
    j["all_pass"] = report.all_pass;
    return j;
}

namespace {

std::string csv_cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string out;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out += ';';
            out += v[i].dump();
        }
        return out;
    }
    return v.dump();
}

}  // namespace

std::string report_to_csv(const Report& report) {
    // column order: first-seen data keys across cases
    std::vector<std::string> keys;
    for (const auto& c : report.cases)
        for (const auto& [k, v] : c.data.items())
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                keys.push_back(k);
    std::string out = "case";
    for (const auto& k : keys) out += "," + k;
    out += ",pass\n";
    for (const auto& c : report.cases) {
        out += std::to_string(c.index);
        for (const auto& k : keys) {
            out += ',';
            if (c.data.contains(k)) out += csv_cell(c.data.at(k));
        }
        out += c.pass ? ",true\n" : ",false\n";
    }
    return out;
}

std::string emit_report(const Report& report, const std::string& format) {
    if (format == "json") return report_to_json(report).dump(2) + "\n";
    if (format == "csv") return report_to_csv(report);
    throw ValidationError("unknown report format: " + format);
}

// ------------------------------------------------------------- builtin suite

namespace {

Json cos_radial_weight() {
    // FT(xi) = cos |xi|: series (-1)^k / (2k)!
    std::vector<double> series;
    double c = 1.0;
    for (int k = 0; k <= 16; ++k) {
        series.push_back((k % 2 == 0) ? c : -c);
        c /= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    Json w;
    w["ambient"] = {{"kind", "real"}, {"dim", 3}};
    w["type"] = "fourier_radial";
    w["series"] = series;
    w["validity_radius"] = 6.0;
    return w;
}

Json two_atom_weight() {
    Json w;
    w["ambient"] = {{"kind", "real"}, {"dim", 1}};
    w["type"] = "atomic";
    w["points"] = Json::array({Json::array({1.0}), Json::array({-1.0})});
    w["masses"] = Json::array({Json::array({0.5, 0.0}), Json::array({0.5, 0.0})});
    return w;
}

Json unit_interval_density() {
    Json w;
    w["ambient"] = {{"kind", "real"}, {"dim", 1}};
    w["type"] = "density";
    w["name"] = "uniform_box";
    w["box"] = Json::array({Json::array({0.0, 1.0})});
    w["total_mass"] = 1.0;
    w["quadrature_order"] = 64;
    return w;
}

ExperimentSpec make_spec(std::string name, ExperimentKind kind,
                         std::uint64_t seed, Json weight, Json ensemble,
                         Json parameters) {
    ExperimentSpec spec;
    spec.name = std::move(name);
    spec.kind = kind;
    spec.seed = seed;
    spec.weight = std::move(weight);
    spec.ensemble = std::move(ensemble);
    spec.parameters = std::move(parameters);
    return spec;
}

}  // namespace

std::vector<ExperimentSpec> builtin_suite() {
    std::vector<ExperimentSpec> suite;
    const Json atomic_c1_100 = {{"name", "atomic_c1"}, {"count", 100},
                                {"min_atoms", 1},     {"max_atoms", 6},
                                {"separation", 0.1}};
    suite.push_back(make_spec(
        "rank-atoms", ExperimentKind::RankTable, 20260825, Json(), atomic_c1_100,
        {{"check", "rank_equals_atoms"}, {"basis", "monomial"}, {"eps_rel", 1e-8}}));
    suite.push_back(make_spec(
        "recover-1d", ExperimentKind::Recovery, 20260825, Json(), atomic_c1_100,
        {{"m_bound", 6},
         {"order_bound", 0},
         {"support_tol", 1e-6},
         {"mass_tol", 1e-6},
         {"residual_tol", 1e-8}}));
    suite.push_back(make_spec(
        "recover-distributional", ExperimentKind::Recovery, 7011, Json(),
        {{"name", "point_distribution_c1"}, {"count", 50}, {"max_points", 3},
         {"max_order", 2}},
        {{"m_bound", 3},
         {"order_bound", 2},
         {"support_tol", 1e-6},
         {"residual_tol", 1e-8},
         {"negative_control", true}}));
    suite.push_back(make_spec(
        "recover-multid", ExperimentKind::Recovery, 420, Json(),
        {{"name", "atomic_cd"}, {"dims", Json::array({2, 3})}, {"count", 50},
         {"max_atoms", 4}, {"separation", 0.1}},
        {{"m_bound", 4},
         {"order_bound", 0},
         {"support_tol", 1e-5},
         {"mass_tol", 1e-5},
         {"residual_tol", 1e-6},
         {"collision_case", true}}));
    suite.push_back(make_spec(
        "twist-monotonic", ExperimentKind::TwistMonotonicity, 5150, Json(),
        atomic_c1_100, {{"max_degree", 3}, {"eps_rel", 1e-10}}));
    suite.push_back(make_spec(
        "wiener-atom-mass", ExperimentKind::Wiener, 1, Json(), Json(),
        {{"check", "atom_mass"},
         {"cases",
          Json::array(
              {Json{{"weight", two_atom_weight()},
                    {"R_schedule", Json::array({2, 4, 8, 16, 32})},
                    {"expected_limit", 0.5},
                    {"tol", 1e-6}},
               Json{{"weight", unit_interval_density()},
                    {"R_schedule", Json::array({2, 4, 8, 16, 32, 64})},
                    {"max_limit", 0.05}}})}}));
    suite.push_back(make_spec(
        "sphere-average", ExperimentKind::SphereAverage, 99, Json(),
        {{"name", "atomic_real"}, {"D", 3}, {"count", 20}, {"min_atoms", 1},
         {"max_atoms", 5}, {"separation", 0.1}},
        {{"n_nodes", 500}, {"rel_tol", 0.01}}));
    suite.push_back(make_spec(
        "harmonic-rank", ExperimentKind::RankTable, 31337, Json(),
        {{"name", "atomic_real"}, {"D", 3}, {"count", 20}, {"min_atoms", 1},
         {"max_atoms", 4}, {"separation", 0.1}},
        {{"check", "rank_equals_atoms"},
         {"basis", "harmonic"},
         {"k_max", 6},
         {"eps_rel", 1e-8},
         {"even_dim_count", 20},
         {"even_dim_max_atoms", 4}}));
    suite.push_back(make_spec("harmonic-growth-cos",
                              ExperimentKind::HarmonicGrowth, 1,
                              cos_radial_weight(), Json(),
                              {{"k_min", 2}, {"k_max", 8}, {"eps_rel", 1e-10}}));
    suite.push_back(make_spec(
        "vandermonde", ExperimentKind::VandermondeCheck, 1234, Json(), Json(),
        {{"Ns", Json::array({2, 3})},
         {"count", 50},
         {"max_degree", 3},
         {"tol_rel", 1e-10},
         {"v_case", true}}));
    suite.push_back(make_spec(
        "cauchy-decay", ExperimentKind::CauchyDecay, 1, Json(),
        {{"name", "circle_minus_delta"}, {"n", 2048}},
        {{"radii", Json::array({1.5, 2.0, 3.0})}, {"angles", 8}, {"tol", 1e-10}}));
    suite.push_back(make_spec(
        "projection-fourier", ExperimentKind::Wiener, 777, Json(),
        {{"name", "atomic_real"}, {"D", 3}, {"count", 50}, {"min_atoms", 1},
         {"max_atoms", 5}, {"separation", 0.1}},
        {{"check", "projection_fourier"}, {"pairs", 20}, {"tol", 1e-12}}));
    return suite;
}

std::optional<ExperimentSpec> builtin_spec(const std::string& name) {
    for (auto& spec : builtin_suite())
        if (spec.name == name) return spec;
    return std::nullopt;
}

}  // namespace finrank
