#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "psl2rot/angles.hpp"
#include "psl2rot/classify.hpp"
#include "psl2rot/detect.hpp"
#include "psl2rot/io.hpp"
#include "psl2rot/matrix.hpp"
#include "psl2rot/rigidity.hpp"
#include "psl2rot/rotnum.hpp"
#include "psl2rot/sampling.hpp"
#include "psl2rot/words.hpp"

namespace psl2rot {

namespace detail {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline ProjectiveElement parse_matrix_arg(const std::string& text, bool renormalize) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(token, &used);
            while (used < token.size() &&
                   std::isspace(static_cast<unsigned char>(token[used])))
                ++used;
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("cannot read \"" + token + "\" in --matrix as a number");
        }
    }
    if (values.size() != 4)
        throw ParseError("--matrix needs four comma-separated numbers a,b,c,d");
    try {
        return from_entries(values[0], values[1], values[2], values[3], renormalize);
    } catch (const NonPositiveDeterminant& e) {
        throw DeterminantError(std::string("--matrix: ") + e.what());
    } catch (const DeterminantOutOfTolerance& e) {
        throw DeterminantError(std::string("--matrix: ") + e.what() +
                               "; pass --renormalize to rescale");
    }
}

} // namespace detail

/// Parses args (without the program name) and executes one subcommand.
/// Exit codes: 0 success or Certificate, 1 Witness, 2 Inconclusive or
/// expectation failure, 3 input error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"computational toolkit for representations into PSL(2,R)"};
    app.require_subcommand(1);

    std::string rep1_path;
    std::string rep2_path;
    std::string matrix_text;
    std::string word_text;
    std::string mode = "planted";
    bool renormalize = false;
    bool json_out = false;
    int search_radius = 3;
    int spectrum_radius = 2;
    int corpus_radius = 4;
    long long irrational_q = default_irrational_q;
    double irrational_delta = default_irrational_delta;
    double tol = 1e-8;
    double classify_tol = classify_tolerance;
    long long iters = default_iterations;
    std::uint64_t seed = 0;
    int count = 20;

    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--renormalize", renormalize, "rescale positive determinants to 1");
        cmd->add_flag("--json", json_out, "structured JSON output");
    };
    auto add_pipeline_flags = [&](CLI::App* cmd) {
        cmd->add_option("--radius", search_radius, "word-ball radius for the elliptic search");
        cmd->add_option("--corpus-radius", corpus_radius, "word-ball radius for trace/rotation corpora");
        cmd->add_option("--tol", tol, "numerical tolerance");
        cmd->add_option("--irrational-q", irrational_q, "denominator bound for the rationality test");
        cmd->add_option("--irrational-delta", irrational_delta, "approximation threshold for the rationality test");
    };

    auto element_input = [&]() -> ProjectiveElement {
        if (!matrix_text.empty()) return detail::parse_matrix_arg(matrix_text, renormalize);
        if (!rep1_path.empty()) {
            Representation rho = load_representation(rep1_path, renormalize);
            if (word_text.empty()) throw ParseError("need --word together with --rep1");
            return evaluate(rho, parse_word(word_text, rho));
        }
        throw ParseError("need --matrix or --rep1 with --word");
    };

    int result = 0;

    CLI::App* classify_cmd = app.add_subcommand("classify", "elliptic/parabolic/hyperbolic trichotomy");
    classify_cmd->add_option("--matrix", matrix_text, "entries a,b,c,d");
    classify_cmd->add_option("--rep1", rep1_path, "representation file");
    classify_cmd->add_option("--word", word_text, "word to evaluate, e.g. ab^-1a");
    classify_cmd->add_option("--tol", classify_tol, "classification tolerance on ||tr|-2|");
    add_output_flags(classify_cmd);
    classify_cmd->callback([&] {
        Classification cls = classify(element_input(), classify_tol);
        if (json_out) {
            out << classification_to_json(cls).dump(2) << "\n";
        } else {
            out << "type: " << classification_name(cls.type) << "\n";
            out << "rotation_number: " << detail::fmt(cls.angle) << "\n";
            if (cls.is_hyperbolic())
                out << "translation_length: " << detail::fmt(cls.translation_length) << "\n";
        }
        result = 0;
    });

    CLI::App* rot_cmd = app.add_subcommand("rot", "rotation number of one element");
    rot_cmd->add_option("--matrix", matrix_text, "entries a,b,c,d");
    rot_cmd->add_option("--rep1", rep1_path, "representation file");
    rot_cmd->add_option("--word", word_text, "word to evaluate");
    add_output_flags(rot_cmd);
    rot_cmd->callback([&] {
        Angle rot = rotation_number(element_input());
        if (json_out)
            out << json{{"rotation_number", rot.value}}.dump(2) << "\n";
        else
            out << detail::fmt(rot.value) << "\n";
        result = 0;
    });

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "rotation numbers over a word ball");
    spectrum_cmd->add_option("--rep1", rep1_path, "representation file")->required();
    spectrum_cmd->add_option("--radius", spectrum_radius, "word-ball radius");
    add_output_flags(spectrum_cmd);
    spectrum_cmd->callback([&] {
        Representation rho = load_representation(rep1_path, renormalize);
        std::vector<SpectrumEntry> entries = rotation_spectrum(rho, spectrum_radius);
        if (json_out) {
            json list = json::array();
            for (const SpectrumEntry& e : entries)
                list.push_back(json{{"word", format_word(e.word, rho.labels)},
                                    {"type", classification_name(e.cls.type)},
                                    {"rotation_number", e.rotation.value}});
            out << json{{"radius", spectrum_radius}, {"entries", std::move(list)}}.dump(2)
                << "\n";
        } else {
            for (const SpectrumEntry& e : entries)
                out << format_word(e.word, rho.labels) << "  "
                    << classification_name(e.cls.type) << "  "
                    << detail::fmt(e.rotation.value) << "\n";
        }
        result = 0;
    });

    CLI::App* find_cmd = app.add_subcommand("find-elliptic", "first infinite order elliptic word");
    find_cmd->add_option("--rep1", rep1_path, "representation file")->required();
    find_cmd->add_option("--radius", search_radius, "word-ball radius");
    find_cmd->add_option("--irrational-q", irrational_q, "denominator bound");
    find_cmd->add_option("--irrational-delta", irrational_delta, "approximation threshold");
    add_output_flags(find_cmd);
    find_cmd->callback([&] {
        Representation rho = load_representation(rep1_path, renormalize);
        try {
            EllipticSearchResult found =
                find_infinite_order_elliptic(rho, search_radius, irrational_q, irrational_delta);
            if (json_out) {
                out << json{{"word", format_word(found.word, rho.labels)},
                            {"theta", found.theta},
                            {"report", irrationality_to_json(found.report)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "word: " << format_word(found.word, rho.labels) << "\n";
                out << "theta: " << detail::fmt(found.theta) << "\n";
            }
            result = 0;
        } catch (const NotFound& e) {
            if (json_out)
                out << json{{"word", nullptr}, {"radius", e.radius}}.dump(2) << "\n";
            else
                out << "no infinite order elliptic word within radius " << e.radius << "\n";
            result = 2;
        }
    });

    CLI::App* jorgensen_cmd = app.add_subcommand("jorgensen", "Jorgensen value of the first two generators");
    jorgensen_cmd->add_option("--rep1", rep1_path, "representation file")->required();
    add_output_flags(jorgensen_cmd);
    jorgensen_cmd->callback([&] {
        Representation rho = load_representation(rep1_path, renormalize);
        if (rho.size() < 2) throw ParseError("jorgensen needs at least two generators");
        double value = jorgensen_value(rho.generators[0], rho.generators[1]);
        if (json_out)
            out << json{{"jorgensen_value", value}}.dump(2) << "\n";
        else
            out << "jorgensen_value: " << detail::fmt(value) << "\n";
        result = 0;
    });

    CLI::App* elementary_cmd = app.add_subcommand("elementary", "elementary subgroup detection");
    elementary_cmd->add_option("--rep1", rep1_path, "representation file")->required();
    elementary_cmd->add_option("--tol", tol, "numerical tolerance");
    add_output_flags(elementary_cmd);
    elementary_cmd->callback([&] {
        Representation rho = load_representation(rep1_path, renormalize);
        ElementaryVerdict verdict = is_elementary(rho, tol);
        if (const auto* e = std::get_if<Elementary>(&verdict)) {
            if (json_out)
                out << json{{"verdict", "elementary"}, {"reason", e->reason}}.dump(2) << "\n";
            else
                out << "verdict: elementary\nreason: " << e->reason << "\n";
            result = 0;
        } else if (const auto* n = std::get_if<NonElementary>(&verdict)) {
            if (json_out)
                out << json{{"verdict", "non_elementary"},
                            {"witness1", format_word(n->witness1, rho.labels)},
                            {"witness2", format_word(n->witness2, rho.labels)}}
                           .dump(2)
                    << "\n";
            else
                out << "verdict: non_elementary\nwitnesses: "
                    << format_word(n->witness1, rho.labels) << ", "
                    << format_word(n->witness2, rho.labels) << "\n";
            result = 1;
        } else {
            const auto& u = std::get<Unknown>(verdict);
            if (json_out)
                out << json{{"verdict", "unknown"}, {"reason", u.reason}}.dump(2) << "\n";
            else
                out << "verdict: unknown\nreason: " << u.reason << "\n";
            result = 2;
        }
    });

    CLI::App* check_cmd = app.add_subcommand("check", "full conjugacy decision pipeline");
    check_cmd->add_option("--rep1", rep1_path, "first representation file")->required();
    check_cmd->add_option("--rep2", rep2_path, "second representation file")->required();
    add_pipeline_flags(check_cmd);
    add_output_flags(check_cmd);
    check_cmd->callback([&] {
        Representation rho1 = load_representation(rep1_path, renormalize);
        Representation rho2 = load_representation(rep2_path, renormalize);
        RigidityParams params{search_radius, corpus_radius, irrational_q, irrational_delta, tol};
        RigidityVerdict verdict = check_rigidity(rho1, rho2, params);
        if (json_out) {
            out << verdict_to_json(verdict, params, rho1).dump(2) << "\n";
        } else if (const auto* cert = std::get_if<Certificate>(&verdict)) {
            UnimodularMatrix g = detail::canonical_sign(cert->g.rep());
            out << "verdict: certificate\n";
            out << "conjugator: " << detail::fmt(g.a) << ", " << detail::fmt(g.b) << ", "
                << detail::fmt(g.c) << ", " << detail::fmt(g.d) << "\n";
            out << "max_generator_residual: " << detail::fmt(cert->max_generator_residual) << "\n";
            out << "max_corpus_trace_deviation: "
                << detail::fmt(cert->max_corpus_trace_deviation) << "\n";
        } else if (const auto* wit = std::get_if<Witness>(&verdict)) {
            out << "verdict: witness\n";
            out << "word: " << format_word(wit->word, rho1.labels) << "\n";
            out << "rot1: " << detail::fmt(wit->rot1.value) << "\n";
            out << "rot2: " << detail::fmt(wit->rot2.value) << "\n";
        } else {
            out << "verdict: inconclusive\n";
            out << "reason: " << std::get<Inconclusive>(verdict).reason << "\n";
        }
        result = std::holds_alternative<Certificate>(verdict)
                     ? 0
                     : (std::holds_alternative<Witness>(verdict) ? 1 : 2);
    });

    CLI::App* trace_cmd = app.add_subcommand("tracecheck", "absolute traces over the corpus ball");
    trace_cmd->add_option("--rep1", rep1_path, "first representation file")->required();
    trace_cmd->add_option("--rep2", rep2_path, "second representation file")->required();
    trace_cmd->add_option("--corpus-radius", corpus_radius, "word-ball radius");
    trace_cmd->add_option("--tol", tol, "numerical tolerance");
    add_output_flags(trace_cmd);
    trace_cmd->callback([&] {
        Representation rho1 = load_representation(rep1_path, renormalize);
        Representation rho2 = load_representation(rep2_path, renormalize);
        if (rho1.size() != rho2.size())
            throw ParseError("representations have different generator counts");
        NormalizedPair holder{rho1, rho2, Word::identity(), 0.0, ProjectiveElement{},
                              ProjectiveElement{}};
        TraceComparisonReport report = verify_abs_trace_equality(holder, corpus_radius, tol);
        if (json_out)
            out << json{{"max_deviation", report.max_deviation},
                        {"worst_word", format_word(report.worst_word, rho1.labels)},
                        {"within_tol", report.within_tol}}
                       .dump(2)
                << "\n";
        else
            out << "max_deviation: " << detail::fmt(report.max_deviation) << "\n"
                << "worst_word: " << format_word(report.worst_word, rho1.labels) << "\n"
                << "within_tol: " << (report.within_tol ? "true" : "false") << "\n";
        result = report.within_tol ? 0 : 1;
    });

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "closed form against the orbit estimate");
    oracle_cmd->add_option("--matrix", matrix_text, "check one element instead of a seeded batch");
    oracle_cmd->add_option("--seed", seed, "base seed for the batch");
    oracle_cmd->add_option("--count", count, "elements per class in the batch");
    oracle_cmd->add_option("--iters", iters, "orbit length");
    add_output_flags(oracle_cmd);
    oracle_cmd->callback([&] {
        std::vector<std::pair<std::string, ProjectiveElement>> targets;
        if (!matrix_text.empty()) {
            targets.emplace_back("matrix", detail::parse_matrix_arg(matrix_text, renormalize));
        } else {
            for (int i = 0; i < count; ++i) {
                std::uint64_t base = 3 * static_cast<std::uint64_t>(i);
                Rng re(split_seed(seed, base));
                Rng rp(split_seed(seed, base + 1));
                Rng rh(split_seed(seed, base + 2));
                targets.emplace_back("elliptic " + std::to_string(i), random_elliptic(re));
                targets.emplace_back("parabolic " + std::to_string(i), random_parabolic(rp));
                targets.emplace_back("hyperbolic " + std::to_string(i), random_hyperbolic(rh));
            }
        }
        json rows = json::array();
        bool all_ok = true;
        for (const auto& [name, g] : targets) {
            double closed = rotation_number(g).value;
            RotationEstimate est = poincare_rotation_number(lift_of_element(g), 0.0, iters);
            double diff = circle_distance(Angle(closed), est.value);
            double threshold = classify(g).is_elliptic() ? 1e-3
                                                         : two_pi / static_cast<double>(iters);
            bool ok = diff <= threshold;
            all_ok = all_ok && ok;
            rows.push_back(json{{"element", name},
                                {"closed_form", closed},
                                {"estimate", est.value.value},
                                {"difference", diff},
                                {"ok", ok}});
            if (!json_out)
                out << name << ": closed " << detail::fmt(closed) << ", estimate "
                    << detail::fmt(est.value.value) << (ok ? "" : "  DISAGREE") << "\n";
        }
        if (json_out)
            out << json{{"iters", iters}, {"all_ok", all_ok}, {"rows", std::move(rows)}}.dump(2)
                << "\n";
        else
            out << (all_ok ? "all estimates agree" : "estimates disagree") << "\n";
        result = all_ok ? 0 : 2;
    });

    CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "seeded random trials of the pipeline");
    fuzz_cmd->add_option("--seed", seed, "base seed");
    fuzz_cmd->add_option("--count", count, "number of trials");
    fuzz_cmd->add_option("--mode", mode, "planted, perturbed, or reflected");
    add_pipeline_flags(fuzz_cmd);
    add_output_flags(fuzz_cmd);
    fuzz_cmd->callback([&] {
        if (mode != "planted" && mode != "perturbed" && mode != "reflected")
            throw ParseError("--mode must be planted, perturbed, or reflected");
        RigidityParams params{search_radius, corpus_radius, irrational_q, irrational_delta, tol};
        json trials = json::array();
        int ok_count = 0;
        for (int t = 0; t < count; ++t) {
            std::uint64_t trial_seed = split_seed(seed, static_cast<std::uint64_t>(t));
            json record;
            record["trial"] = t;
            bool ok = false;
            if (mode == "planted") {
                PlantedPair pair = sample_planted_pair(trial_seed);
                RigidityVerdict verdict = check_rigidity(pair.rho1, pair.rho2, params);
                ok = std::holds_alternative<Certificate>(verdict);
                record["result"] = verdict_to_json(verdict, params, pair.rho1);
            } else if (mode == "perturbed") {
                PerturbedPair pair =
                    sample_perturbed_pair(trial_seed, params.tol, params.corpus_radius);
                RigidityVerdict verdict = check_rigidity(pair.rho1, pair.rho2, params);
                ok = !std::holds_alternative<Certificate>(verdict);
                if (const auto* wit = std::get_if<Witness>(&verdict))
                    ok = ok && circle_distance(wit->rot1, wit->rot2) > params.tol;
                record["result"] = verdict_to_json(verdict, params, pair.rho1);
            } else {
                PlantedPair pair =
                    sample_reflected_pair(trial_seed, params.tol, params.corpus_radius);
                RigidityVerdict verdict = check_rigidity(pair.rho1, pair.rho2, params);
                bool orientation = false;
                double orientation_residual = 0.0;
                try {
                    recover_conjugator(pair.rho1, pair.rho2, params.tol);
                } catch (const OrientationReversing& e) {
                    orientation = true;
                    orientation_residual = e.residual;
                } catch (const std::exception&) {
                }
                ok = orientation && !std::holds_alternative<Certificate>(verdict);
                if (orientation) {
                    record["result"] =
                        json{{"verdict", "inconclusive"},
                             {"reason", "conjugator solve found an orientation-reversing "
                                        "intertwiner, residual " +
                                            detail::fmt(orientation_residual)}};
                } else {
                    record["result"] = verdict_to_json(verdict, params, pair.rho1);
                }
            }
            record["ok"] = ok;
            ok_count += ok ? 1 : 0;
            if (!json_out)
                out << "trial " << t << ": "
                    << record["result"]["verdict"].get<std::string>()
                    << (ok ? "" : "  UNEXPECTED") << "\n";
            trials.push_back(std::move(record));
        }
        if (json_out)
            out << json{{"mode", mode},
                        {"seed", seed},
                        {"count", count},
                        {"ok_count", ok_count},
                        {"trials", std::move(trials)}}
                       .dump(2)
                << "\n";
        else
            out << ok_count << "/" << count << " trials matched the " << mode
                << " expectation\n";
        result = ok_count == count ? 0 : 2;
    });

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("psl2rot");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    } catch (const WordSyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const DeterminantError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const DuplicateLabel& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return result;
}

} // namespace psl2rot
