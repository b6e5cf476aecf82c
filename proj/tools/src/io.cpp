// SPDX-License-Identifier: Apache-2.0
#include "vilfra_cli/io.hpp"

#include <fstream>

#include "vilfra/errors.hpp"

namespace vilfra::io {

namespace {

json complex_list(std::span<const Complex> v) {
    json a = json::array();
    for (const auto& z : v) a.push_back({z.real(), z.imag()});
    return a;
}

std::vector<Complex> complex_values(const json& a) {
    if (!a.is_array()) throw ParameterError("values must be a list of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(a.size());
    for (const auto& z : a) {
        if (!z.is_array() || z.size() != 2) throw ParameterError("complex values must be [re, im] pairs");
        out.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return out;
}

template <class T>
T field(const json& j, const char* name) {
    if (!j.contains(name)) throw ParameterError(std::string("missing field '") + name + "'");
    return j.at(name).get<T>();
}

}  // namespace

json to_json(const StepFunctionG& f) {
    return {{"p", f.params().p()},
            {"support_level", f.support_level()},
            {"resolution_level", f.resolution_level()},
            {"values", complex_list(f.values())}};
}

StepFunctionG signal_from_json(const json& j) {
    return StepFunctionG(GroupParams(field<int>(j, "p")), field<int>(j, "support_level"),
                         field<int>(j, "resolution_level"), complex_values(j.at("values")));
}

json to_json(const NValidTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
        json parent = n.parent ? json(*n.parent) : json(nullptr);
        nodes.push_back({{"id", n.id}, {"label", n.label}, {"parent", parent}});
    }
    return {{"p", t.params.p()}, {"N", t.N}, {"height", t.height}, {"nodes", nodes}};
}

NValidTree tree_from_json(const json& j) {
    NValidTree t{GroupParams(field<int>(j, "p")), field<int>(j, "N"), field<int>(j, "height"), {}};
    if (!j.contains("nodes") || !j.at("nodes").is_array()) throw ParameterError("missing node list");
    for (const auto& n : j.at("nodes")) {
        TreeNode node{field<int>(n, "id"), field<int>(n, "label"), std::nullopt};
        if (n.contains("parent") && !n.at("parent").is_null()) node.parent = n.at("parent").get<int>();
        t.nodes.push_back(node);
    }
    return t;
}

json to_json(const FrameSystem& fs) {
    json gens = json::array();
    for (const auto& g : fs.generators) {
        json rep = json::object();
        for (auto [i, e] : g.E.rep_exponents()) rep[std::to_string(i)] = e;
        json gj = {{"s", g.s}, {"rep_exponents", rep}, {"t", g.t}};
        if (g.xi != Complex(1.0, 0.0)) gj["xi"] = {g.xi.real(), g.xi.imag()};
        gens.push_back(gj);
    }
    return {{"p", fs.params.p()}, {"N", fs.N}, {"M", fs.M}, {"generators", gens}};
}

FrameSystem frame_from_json(const json& j) {
    const GroupParams params(field<int>(j, "p"));
    FrameSystem fs{params, field<int>(j, "N"), field<int>(j, "M"), std::nullopt, {}};
    if (!j.contains("generators") || !j.at("generators").is_array()) throw ParameterError("missing generator list");
    for (const auto& g : j.at("generators")) {
        const int s = field<int>(g, "s");
        std::map<int, int> rep;
        for (const auto& [k, v] : g.at("rep_exponents").items()) {
            std::size_t used = 0;
            const int idx = std::stoi(k, &used);
            if (used != k.size()) throw ParameterError("bad exponent index '" + k + "'");
            const int e = v.get<int>();
            if (e < 0 || e >= params.p()) throw ParameterError("exponent out of range at index " + k);
            if (idx < -s) throw ParameterError("exponent below the generator level at index " + k);
            if (e) rep[idx] = e;
        }
        FrameGenerator gen{CharCoset(params, -s, rep), s, field<int>(g, "t"), Complex(1.0, 0.0)};
        if (g.contains("xi")) gen.xi = Complex(g.at("xi")[0].get<double>(), g.at("xi")[1].get<double>());
        fs.generators.push_back(gen);
    }
    return fs;
}

json to_json(const CoefficientTable& ct) {
    json bands = json::array();
    for (const auto& b : ct.bands)
        bands.push_back({{"j", b.j}, {"n", b.n}, {"digits", b.digits}, {"c", complex_list(b.c)}});
    return {{"p", ct.params.p()},
            {"support_level", ct.support_level},
            {"resolution_level", ct.resolution_level},
            {"n_min", ct.n_min},
            {"n_max", ct.n_max},
            {"tail", ct.tail},
            {"bands", bands}};
}

CoefficientTable table_from_json(const json& j) {
    CoefficientTable ct;
    ct.params = GroupParams(field<int>(j, "p"));
    ct.support_level = field<int>(j, "support_level");
    ct.resolution_level = field<int>(j, "resolution_level");
    ct.n_min = field<int>(j, "n_min");
    ct.n_max = field<int>(j, "n_max");
    ct.tail = field<double>(j, "tail");
    for (const auto& b : j.at("bands")) {
        CoefficientBand band{field<int>(b, "j"), field<int>(b, "n"), field<int>(b, "digits"), complex_values(b.at("c"))};
        if (band.c.size() != static_cast<std::size_t>(ipow(ct.params.p(), band.digits)))
            throw ParameterError("band (" + std::to_string(band.j) + ", " + std::to_string(band.n) + ") has the wrong length");
        ct.bands.push_back(std::move(band));
    }
    return ct;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParameterError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path.string());
    out << text;
}

}  // namespace vilfra::io
