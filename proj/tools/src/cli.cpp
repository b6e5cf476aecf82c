// SPDX-License-Identifier: Apache-2.0
#include "vilfra_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "vilfra/approx.hpp"
#include "vilfra/errors.hpp"
#include "vilfra/frames.hpp"
#include "vilfra/refinable.hpp"
#include "vilfra/trees.hpp"
#include "vilfra_cli/io.hpp"

namespace vilfra::cli {

namespace {

using io::json;

// Failure that should surface as exit status 1 with `detail` attached.
struct Failure {
    std::string kind;
    std::string message;
    json detail = json::object();
};

std::string error_kind(const Error& e) {
    if (dynamic_cast<const ParameterError*>(&e)) return "parameter";
    if (dynamic_cast<const ResolutionError*>(&e)) return "resolution";
    if (dynamic_cast<const StructuralError*>(&e)) return "structural";
    if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
    if (dynamic_cast<const ConstructionError*>(&e)) return "construction";
    if (dynamic_cast<const InvariantError*>(&e)) return "invariant";
    if (dynamic_cast<const WeightError*>(&e)) return "weight";
    return "error";
}

double tolerance() {
    if (const char* env = std::getenv("VILFRA_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
        throw ParameterError(std::string("VILFRA_TOL must be a positive number, got '") + env + "'");
    }
    return 1e-9;
}

std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("range", "expected a..b, got '" + s + "'");
    try {
        std::size_t u1 = 0, u2 = 0;
        const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        const int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size() || lo > hi) throw std::invalid_argument(s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("range", "expected a..b with a <= b, got '" + s + "'");
    }
}

std::set<int> parse_set(const std::string& s) {
    std::set<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.insert(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("set", "expected comma separated integers, got '" + s + "'");
        }
    }
    return out;
}

WeightSpec parse_weight(const std::string& s) {
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (kind == "power") return WeightSpec::power(arg.empty() ? 1 : std::stoi(arg));
        if (kind == "log") return WeightSpec::log(arg.empty() ? 1.0 : std::stod(arg));
    } catch (const std::logic_error&) {
    }
    throw CLI::ValidationError("weight", "expected power:m or log:epsilon, got '" + s + "'");
}

double relative_l2_error(const StepFunctionG& ref, const StepFunctionG& g) {
    const int s = std::max(ref.support_level(), g.support_level());
    const int r = std::max(ref.resolution_level(), g.resolution_level());
    StepFunctionG a = embed(ref, s, r);
    const StepFunctionG b = embed(g, s, r);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    const double base = l2_norm(ref);
    return base > 0.0 ? l2_norm(a) / base : l2_norm(a);
}

json report_json(const FrameReport& r) {
    json unc = json::array();
    for (const auto& c : r.uncovered) unc.push_back(c.str());
    return {{"violations", r.violations}, {"uncovered", unc}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tight wavelet frames on Vilenkin groups", "vilfra"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // tree
    auto* tree = app.add_subcommand("tree", "generate or validate N-valid trees");
    tree->require_subcommand(1);
    int p = 2, N = 1, height = 1;
    std::uint64_t seed = 0;
    bool full_level = false;
    std::string out_path, in_path;
    auto* tgen = tree->add_subcommand("generate", "build an N-valid tree of a given height");
    tgen->add_option("--p", p, "prime")->required();
    tgen->add_option("--N", N, "word length")->required();
    tgen->add_option("--height", height, "tree height")->required();
    tgen->add_option("--seed", seed, "branch order seed");
    tgen->add_flag("--full-level", full_level, "require labels 1..p-1 at level N");
    tgen->add_option("--out", out_path, "output tree file")->required();
    auto* tval = tree->add_subcommand("validate", "check a tree file");
    tval->add_option("--in", in_path, "tree file")->required()->check(CLI::ExistingFile);

    // frame build
    auto* frame = app.add_subcommand("frame", "frame construction");
    frame->require_subcommand(1);
    auto* fbuild = frame->add_subcommand("build", "build a tight frame from a tree");
    std::string tree_path, method = "tiling", j1 = "", j2 = "";
    bool j1_given = false;
    fbuild->add_option("--tree", tree_path, "tree file")->required()->check(CLI::ExistingFile);
    fbuild->add_option("--method", method, "tiling or thm32")->check(CLI::IsMember({"tiling", "thm32"}));
    auto* j1opt = fbuild->add_option("--J1", j1, "comma separated labels for the level -N+1 family");
    fbuild->add_option("--J2", j2, "comma separated labels for the level -N family");
    fbuild->add_option("--out", out_path, "output frame file")->required();

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "frame coefficients of a signal");
    std::string frame_path, signal_path, levels, coeffs_path, reference_path, range, weight = "power:1";
    bool direct = false;
    std::optional<int> n_max;
    analyze_cmd->add_option("--frame", frame_path, "frame file")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--signal", signal_path, "signal file")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--levels", levels, "inclusive level range a..b");
    analyze_cmd->add_flag("--direct", direct, "use time-domain inner products");
    analyze_cmd->add_option("--out", out_path, "output coefficient file")->required();

    // synthesize
    auto* synth = app.add_subcommand("synthesize", "partial frame sums from coefficients");
    synth->add_option("--frame", frame_path, "frame file")->required()->check(CLI::ExistingFile);
    synth->add_option("--coeffs", coeffs_path, "coefficient file")->required()->check(CLI::ExistingFile);
    synth->add_option("--n-max", n_max, "largest level included");
    synth->add_option("--out", out_path, "output signal file");
    synth->add_option("--reference", reference_path, "signal to compare against")->check(CLI::ExistingFile);

    // check parseval
    auto* check = app.add_subcommand("check", "identity checks");
    check->require_subcommand(1);
    auto* parseval = check->add_subcommand("parseval", "Parseval gap of a signal");
    parseval->add_option("--frame", frame_path, "frame file")->required()->check(CLI::ExistingFile);
    parseval->add_option("--signal", signal_path, "signal file")->required()->check(CLI::ExistingFile);

    // rate
    auto* rate = app.add_subcommand("rate", "residuals and bounds of partial sums");
    rate->add_option("--frame", frame_path, "frame file")->required()->check(CLI::ExistingFile);
    rate->add_option("--signal", signal_path, "signal file")->required()->check(CLI::ExistingFile);
    rate->add_option("--range", range, "inclusive range of partial sum levels a..b");
    rate->add_option("--weight", weight, "power:m or log:epsilon");
    rate->add_option("--out", out_path, "output CSV file");

    std::vector<const char*> argv{"vilfra"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    j1_given = j1opt->count() > 0;

    auto fail = [&](const Failure& f) {
        json d = {{"error", f.kind}, {"message", f.message}};
        for (const auto& [k, v] : f.detail.items()) d[k] = v;
        err << d.dump() << "\n";
        return 1;
    };

    try {
        const double tol = tolerance();
        if (tgen->parsed()) {
            GenerateOptions opt{seed, full_level};
            const NValidTree t = generate(GroupParams(p), N, height, opt);
            io::write_json(out_path, io::to_json(t));
            out << json{{"nodes", t.nodes.size()}, {"out", out_path}}.dump() << "\n";
            return 0;
        }
        if (tval->parsed()) {
            const ValidationReport r = validate(io::tree_from_json(io::read_json(in_path)));
            json j = {{"ok", r.ok()},
                      {"violations", r.violations},
                      {"missing_words", r.missing_words},
                      {"duplicated_words", r.duplicated_words}};
            if (!r.ok()) return fail({"validation", "tree is not N-valid", j});
            out << j.dump() << "\n";
            return 0;
        }
        if (fbuild->parsed()) {
            const NValidTree t = io::tree_from_json(io::read_json(tree_path));
            const RefinableFunction r = build_refinable(t);
            FrameSystem fs{r.params, r.N, r.M, std::nullopt, {}};
            if (method == "tiling") {
                fs = tiling_search(r);
            } else {
                if (!has_full_level_N(t))
                    return fail({"hypothesis", "labels at level N are not exactly 1..p-1"});
                std::set<int> J1 = parse_set(j1), J2 = parse_set(j2);
                if (!j1_given)
                    for (int a = 1; a < r.params.p(); ++a)
                        if (!J2.count(a)) J1.insert(a);
                Thm32Result res = construct_thm32(r, J1, J2);
                if (!res.system) return fail({"validation", "construction does not tile the shell", report_json(res.report)});
                fs = std::move(*res.system);
            }
            io::write_json(out_path, io::to_json(fs));
            out << json{{"q", fs.q()}, {"l", fs.l()}, {"M", fs.M}, {"out", out_path}}.dump() << "\n";
            return 0;
        }
        if (analyze_cmd->parsed()) {
            const FrameSystem fs = io::frame_from_json(io::read_json(frame_path));
            const StepFunctionG f = io::signal_from_json(io::read_json(signal_path));
            AnalyzeOptions opt;
            if (!levels.empty()) {
                const auto [lo, hi] = parse_range(levels);
                opt.n_min = lo;
                opt.n_max = hi;
            }
            const CoefficientTable ct = direct ? analyze_direct(f, fs, opt) : analyze(f, fs, opt);
            io::write_json(out_path, io::to_json(ct));
            out << json{{"bands", ct.bands.size()}, {"n_min", ct.n_min}, {"n_max", ct.n_max}, {"out", out_path}}.dump()
                << "\n";
            return 0;
        }
        if (synth->parsed()) {
            const FrameSystem fs = io::frame_from_json(io::read_json(frame_path));
            const CoefficientTable ct = io::table_from_json(io::read_json(coeffs_path));
            const StepFunctionG g = synthesize_partial(ct, fs, n_max);
            if (!out_path.empty()) io::write_json(out_path, io::to_json(g));
            json summary = {{"support_level", g.support_level()}, {"resolution_level", g.resolution_level()}};
            if (!reference_path.empty()) {
                const double e = relative_l2_error(io::signal_from_json(io::read_json(reference_path)), g);
                summary["roundtrip_relative_error"] = e;
                summary["tolerance"] = tol;
                if (!(e <= tol)) return fail({"roundtrip", "synthesis does not reproduce the reference", summary});
            }
            out << summary.dump() << "\n";
            return 0;
        }
        if (parseval->parsed()) {
            const FrameSystem fs = io::frame_from_json(io::read_json(frame_path));
            const StepFunctionG f = io::signal_from_json(io::read_json(signal_path));
            const double gap = parseval_gap(f, fs);
            json summary = {{"gap", gap}, {"tolerance", tol}};
            if (!(gap <= tol)) return fail({"parseval", "Parseval gap exceeds tolerance", summary});
            out << summary.dump() << "\n";
            return 0;
        }
        if (rate->parsed()) {
            const FrameSystem fs = io::frame_from_json(io::read_json(frame_path));
            const StepFunctionG f = io::signal_from_json(io::read_json(signal_path));
            int lo = 0, hi = 0;
            if (!range.empty()) {
                std::tie(lo, hi) = parse_range(range);
            } else {
                int t_min = fs.l(), t_max = fs.l();
                for (const auto& g : fs.generators) t_min = std::min(t_min, g.t);
                lo = t_min - fs.M - f.support_level();
                hi = t_max + f.resolution_level() - fs.M;
            }
            const RateReport rep = rate_sweep(f, fs, lo, hi, parse_weight(weight));
            const std::string csv = to_csv(rep);
            json flagged = json::array();
            double min_slack = rep.rows.front().slack;
            for (const auto& row : rep.rows) {
                if (!row.thm41_applies) flagged.push_back(row.Ntilde);
                min_slack = std::min(min_slack, row.slack);
            }
            const auto slope = fit_slope(rep);
            json summary = {{"rows", rep.rows.size()},
                            {"min_slack", min_slack},
                            {"slope", slope ? json(*slope) : json(nullptr)},
                            {"thm41_hypothesis_unmet", flagged}};
            if (out_path.empty() || out_path == "-") {
                out << csv;
            } else {
                io::write_text(out_path, csv);
                out << summary.dump() << "\n";
            }
            if (min_slack < -tol) return fail({"bound", "a bound falls below the residual", summary});
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        return fail({error_kind(e), e.what()});
    } catch (const json::exception& e) {
        return fail({"format", e.what()});
    }
    err << app.help();
    return 2;
}

}  // namespace vilfra::cli
