#include "finrank/weight_io.hpp"

#include <cmath>

#include "finrank/errors.hpp"

namespace finrank {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw ValidationError("weight spec: " + what);
}

std::vector<double> reals_from_json(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) bad(std::string(what) + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Ambient ambient_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("dim"))
        bad("ambient needs kind and dim");
    const std::string kind = j.at("kind").get<std::string>();
    const int dim = j.at("dim").get<int>();
    if (kind == "complex") return complex_space(dim);
    if (kind == "real") return real_space(dim);
    bad("ambient kind must be complex or real");
}

Json ambient_to_json(const Ambient& a) {
    Json j;
    j["kind"] = a.kind == SpaceKind::ComplexSpace ? "complex" : "real";
    j["dim"] = a.dim;
    return j;
}

Json points_to_json(const std::vector<std::vector<double>>& pts) {
    Json j = Json::array();
    for (const auto& p : pts) j.push_back(p);
    return j;
}

std::vector<std::vector<double>> points_from_json(const Json& j) {
    if (!j.is_array()) bad("points must be an array");
    std::vector<std::vector<double>> out;
    for (const auto& p : j) out.push_back(reals_from_json(p, "point"));
    return out;
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex values are [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json weight_to_json(const Weight& W) {
    Json j;
    j["ambient"] = ambient_to_json(W.ambient());
    if (W.is_atomic()) {
        const auto& at = W.atomic();
        j["type"] = "atomic";
        j["points"] = points_to_json(at.points);
        Json masses = Json::array();
        for (Complex m : at.masses) masses.push_back(complex_to_json(m));
        j["masses"] = masses;
        return j;
    }
    if (W.is_point_distribution()) {
        const auto& pd = W.point_distribution();
        j["type"] = "point_distribution";
        j["points"] = points_to_json(pd.points);
        Json ops = Json::array();
        for (const auto& L : pd.operators) {
            Json terms = Json::array();
            for (const auto& [gamma, c] : L.terms()) {
                Json term;
                term["gamma"] = gamma;
                term["coefficient"] = complex_to_json(c);
                terms.push_back(term);
            }
            ops.push_back(terms);
        }
        j["operators"] = ops;
        return j;
    }
    if (W.is_density()) {
        const auto& de = W.density();
        j["type"] = "density";
        if (de.name == "uniform_box") {
            j["name"] = de.name;
            Json box = Json::array();
            for (const auto& [lo, hi] : de.box.intervals)
                box.push_back(Json::array({lo, hi}));
            j["box"] = box;
            j["total_mass"] = de.params.at(0);
        } else if (de.name == "gaussian") {
            j["name"] = de.name;
            j["center"] = std::vector<double>(de.params.begin(),
                                             de.params.end() - 1);
            j["sigma"] = de.params.back();
        } else {
            throw ValidationError(
                "weight spec: only named densities serialize");
        }
        j["quadrature_order"] = de.quadrature_order;
        return j;
    }
    const auto& fr = W.fourier_radial();
    j["type"] = "fourier_radial";
    j["series"] = fr.series;
    if (std::isfinite(fr.validity_radius))
        j["validity_radius"] = fr.validity_radius;
    return j;
}

Weight weight_from_json(const Json& j) {
    if (!j.is_object()) bad("top level must be an object");
    if (!j.contains("ambient")) bad("missing ambient");
    if (!j.contains("type")) bad("missing type");
    const Ambient ambient = ambient_from_json(j.at("ambient"));
    const std::string type = j.at("type").get<std::string>();
    if (type == "atomic") {
        Atomic at;
        at.points = points_from_json(j.value("points", Json::array()));
        for (const auto& m : j.value("masses", Json::array()))
            at.masses.push_back(complex_from_json(m));
        return Weight(ambient, std::move(at));
    }
    if (type == "point_distribution") {
        PointDistribution pd;
        pd.points = points_from_json(j.value("points", Json::array()));
        for (const auto& terms : j.value("operators", Json::array())) {
            DifferentialOperator L;
            if (!terms.is_array()) bad("operators must be arrays of terms");
            for (const auto& term : terms) {
                if (!term.contains("gamma") || !term.contains("coefficient"))
                    bad("operator terms need gamma and coefficient");
                L.add_term(term.at("gamma").get<MultiIndex>(),
                           complex_from_json(term.at("coefficient")));
            }
            pd.operators.push_back(std::move(L));
        }
        return Weight(ambient, std::move(pd));
    }
    if (type == "density") {
        const std::string name = j.value("name", "");
        const int order = j.value("quadrature_order", 64);
        if (name == "uniform_box") {
            if (!j.contains("box")) bad("uniform_box needs a box");
            Box box;
            for (const auto& iv : j.at("box")) {
                const auto v = reals_from_json(iv, "box interval");
                if (v.size() != 2) bad("box intervals are [lo, hi]");
                box.intervals.push_back({v[0], v[1]});
            }
            return uniform_box_density(ambient, box,
                                       j.value("total_mass", 1.0), order);
        }
        if (name == "gaussian") {
            if (!j.contains("center") || !j.contains("sigma"))
                bad("gaussian needs center and sigma");
            return gaussian_density(ambient,
                                    reals_from_json(j.at("center"), "center"),
                                    j.at("sigma").get<double>(), order);
        }
        bad("unknown density name (built-ins: uniform_box, gaussian)");
    }
    if (type == "fourier_radial") {
        FourierRadial fr;
        fr.series = reals_from_json(j.value("series", Json::array()), "series");
        if (j.contains("validity_radius"))
            fr.validity_radius = j.at("validity_radius").get<double>();
        return Weight(ambient, std::move(fr));
    }
    bad("unknown type " + type);
}

std::string serialize_weight(const Weight& W) {
    return weight_to_json(W).dump(2) + "\n";
}

Weight parse_weight(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) bad("malformed JSON");
    return weight_from_json(j);
}

}  // namespace finrank
