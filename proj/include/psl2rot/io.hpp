#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/detect.hpp"
#include "psl2rot/matrix.hpp"
#include "psl2rot/rigidity.hpp"
#include "psl2rot/words.hpp"

namespace psl2rot {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DeterminantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads {"name": ..., "generators": [{"label": ..., "matrix": [[a,b],[c,d]]}, ...]}.
/// Without renormalize, determinants must be 1 within tolerance; with it, any
/// positive determinant is rescaled away.
inline Representation parse_representation(const json& doc, bool renormalize = false) {
    if (!doc.is_object()) throw ParseError("top level must be a JSON object");
    if (!doc.contains("generators")) throw ParseError("missing \"generators\" array");
    const json& entries = doc["generators"];
    if (!entries.is_array()) throw ParseError("\"generators\" must be an array");
    if (entries.empty()) throw ParseError("\"generators\" must not be empty");

    std::vector<ProjectiveElement> generators;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& entry = entries[i];
        std::string where = "generator " + std::to_string(i);
        if (!entry.is_object()) throw ParseError(where + " must be an object");
        if (!entry.contains("label") || !entry["label"].is_string())
            throw ParseError(where + " needs a string \"label\"");
        std::string label = entry["label"].get<std::string>();
        if (label.empty()) throw ParseError(where + " has an empty label");
        if (std::find(labels.begin(), labels.end(), label) != labels.end())
            throw DuplicateLabel("label \"" + label + "\" appears more than once");

        if (!entry.contains("matrix"))
            throw ParseError("generator \"" + label + "\" needs a \"matrix\"");
        const json& m = entry["matrix"];
        double e[4];
        int filled = 0;
        if (m.is_array() && m.size() == 2) {
            for (const json& row : m) {
                if (!row.is_array() || row.size() != 2) break;
                for (const json& x : row) {
                    if (!x.is_number()) break;
                    e[filled++] = x.get<double>();
                }
            }
        }
        if (filled != 4)
            throw ParseError("generator \"" + label +
                             "\" needs \"matrix\" as two rows of two numbers");

        double det = e[0] * e[3] - e[1] * e[2];
        if (!(det > 0.0))
            throw DeterminantError("generator \"" + label + "\" has determinant " +
                                   std::to_string(det) + "; a positive value is required");
        if (!renormalize && std::abs(det - 1.0) > det_tolerance)
            throw DeterminantError("generator \"" + label + "\" has determinant " +
                                   std::to_string(det) +
                                   "; pass renormalize to accept non-unit determinants");
        generators.push_back(from_entries(e[0], e[1], e[2], e[3], renormalize));
        labels.push_back(std::move(label));
    }
    return Representation(std::move(generators), std::move(labels));
}

inline Representation load_representation(const std::string& path, bool renormalize = false) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return parse_representation(doc, renormalize);
    } catch (const DuplicateLabel& e) {
        throw DuplicateLabel(path + ": " + e.what());
    } catch (const DeterminantError& e) {
        throw DeterminantError(path + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// --- serialization ----------------------------------------------------------

inline json matrix_to_json(const UnimodularMatrix& m) {
    return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})});
}

inline json element_to_json(const ProjectiveElement& g) {
    return matrix_to_json(detail::canonical_sign(g.rep()));
}

inline json representation_to_json(const Representation& rho, const std::string& name = "") {
    json gens = json::array();
    for (std::size_t i = 0; i < rho.size(); ++i) {
        std::string label = i < rho.labels.size()
                                ? rho.labels[i]
                                : std::string(1, static_cast<char>('a' + i));
        gens.push_back(json{{"label", label}, {"matrix", element_to_json(rho.generators[i])}});
    }
    return json{{"name", name}, {"generators", std::move(gens)}};
}

inline const char* classification_name(Classification::Type type) {
    switch (type) {
        case Classification::Type::Identity: return "identity";
        case Classification::Type::Elliptic: return "elliptic";
        case Classification::Type::Parabolic: return "parabolic";
        case Classification::Type::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

inline json classification_to_json(const Classification& cls) {
    json out;
    out["type"] = classification_name(cls.type);
    out["rotation_number"] = cls.angle;
    if (cls.is_hyperbolic()) out["translation_length"] = cls.translation_length;
    return out;
}

inline json irrationality_to_json(const IrrationalityReport& report) {
    json convergents = json::array();
    for (const auto& [p, q] : report.convergents)
        convergents.push_back(json::array({p, q}));
    json out;
    out["verdict"] = report.is_rational() ? "rational" : "numerically_irrational";
    out["theta_over_pi"] = report.theta_over_pi;
    if (report.is_rational()) {
        out["p"] = report.p;
        out["q"] = report.q;
    }
    out["best_error"] = report.best_error;
    out["convergents"] = std::move(convergents);
    return out;
}

inline json params_to_json(const RigidityParams& params) {
    return json{{"search_radius", params.search_radius},
                {"corpus_radius", params.corpus_radius},
                {"irrational_q", params.irrational_q},
                {"irrational_delta", params.irrational_delta},
                {"tol", params.tol}};
}

/// Verdict plus provenance. The normalization word and angle are recomputed
/// from rho1 (the search is deterministic); null when no elliptic is found.
inline json verdict_to_json(const RigidityVerdict& verdict, const RigidityParams& params,
                            const Representation& rho1) {
    json out;
    if (const auto* cert = std::get_if<Certificate>(&verdict)) {
        out["verdict"] = "certificate";
        out["conjugator"] = element_to_json(cert->g);
        out["max_generator_residual"] = cert->max_generator_residual;
        out["max_corpus_trace_deviation"] = cert->max_corpus_trace_deviation;
    } else if (const auto* wit = std::get_if<Witness>(&verdict)) {
        out["verdict"] = "witness";
        out["word"] = format_word(wit->word, rho1.labels);
        out["rot1"] = wit->rot1.value;
        out["rot2"] = wit->rot2.value;
        out["circle_distance"] = circle_distance(wit->rot1, wit->rot2);
    } else {
        out["verdict"] = "inconclusive";
        out["reason"] = std::get<Inconclusive>(verdict).reason;
    }
    out["params"] = params_to_json(params);
    try {
        EllipticSearchResult found = find_infinite_order_elliptic(
            rho1, params.search_radius, params.irrational_q, params.irrational_delta);
        out["gamma0_word"] = format_word(found.word, rho1.labels);
        out["theta"] = found.theta;
    } catch (const std::exception&) {
        out["gamma0_word"] = nullptr;
        out["theta"] = nullptr;
    }
    return out;
}

} // namespace psl2rot
