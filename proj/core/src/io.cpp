#include "flatchain/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace flatchain::io {

namespace {

json point_to_json(const Point& p) {
    json a = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
    return a;
}

Point point_from_json(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) throw std::invalid_argument("point must have " + std::to_string(n) + " coordinates");
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = j[static_cast<std::size_t>(i)].get<double>();
    return p;
}

json value_to_json(const GroupElement& g) {
    if (g.group().kind() == GroupKind::Reals) return g.value();
    return g.integer();
}

GroupElement value_from_json(const Group& g, const json& j) {
    if (j.is_number_integer()) return g.element(j.get<std::int64_t>());
    if (j.is_number()) return g.element(j.get<double>());
    throw std::invalid_argument("coefficient must be a number");
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json group_to_json(const Group& g) {
    switch (g.kind()) {
    case GroupKind::Integers: return "Z";
    case GroupKind::Reals: return "R";
    case GroupKind::CyclicMod: return json{{"Zmod", g.modulus()}};
    }
    return nullptr;
}

Group group_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "Z") return Group::integers();
        if (s == "R") return Group::reals();
        if (s.rfind("Z_", 0) == 0) return Group::cyclic(std::stoll(s.substr(2)));
        throw std::invalid_argument("unknown group tag: " + s);
    }
    if (j.is_object() && j.contains("Zmod")) return Group::cyclic(j.at("Zmod").get<std::int64_t>());
    throw std::invalid_argument("group must be \"Z\", \"R\" or {\"Zmod\": p}");
}

json scene_to_json(const Complex& k) {
    json verts = json::array();
    for (const auto& v : k.vertices()) verts.push_back(point_to_json(v));
    json simp = json::object();
    for (int d = 0; d <= k.top_dim(); ++d) {
        json list = json::array();
        for (const auto& s : k.simplices(d)) list.push_back(s.vertices);
        simp[std::to_string(d)] = std::move(list);
    }
    return json{{"n", k.ambient_dim()}, {"vertices", std::move(verts)}, {"simplices", std::move(simp)}};
}

ComplexPtr scene_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    std::vector<Point> verts;
    for (const auto& v : j.at("vertices")) verts.push_back(point_from_json(v, n));
    std::vector<std::vector<std::vector<int>>> by_dim;
    if (j.contains("simplices")) {
        for (const auto& [key, list] : j.at("simplices").items()) {
            std::size_t used = 0;
            const int d = std::stoi(key, &used);
            if (used != key.size() || d < 0) throw std::invalid_argument("bad simplex dimension key: " + key);
            if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(static_cast<std::size_t>(d) + 1);
            for (const auto& s : list) {
                std::vector<int> vs = s.is_array() ? s.get<std::vector<int>>() : std::vector<int>{s.get<int>()};
                if (static_cast<int>(vs.size()) != d + 1)
                    throw std::invalid_argument("simplex of dimension " + key + " needs " + std::to_string(d + 1) + " vertices");
                by_dim[static_cast<std::size_t>(d)].push_back(std::move(vs));
            }
        }
    }
    return Complex::create(n, std::move(verts), by_dim);
}

json chain_to_json(const Chain& p, bool embed_scene) {
    json coeffs = json::array();
    for (const auto& [i, g] : p.coefficients()) coeffs.push_back(json::array({i, value_to_json(g)}));
    json out{{"dim", p.dim()}, {"group", group_to_json(p.group())}, {"coeffs", std::move(coeffs)}};
    if (embed_scene) out["scene"] = scene_to_json(*p.complex());
    return out;
}

Chain chain_from_json(const json& j, const ComplexPtr& fallback) {
    ComplexPtr k = j.contains("scene") ? scene_from_json(j.at("scene")) : fallback;
    if (!k) throw std::invalid_argument("chain has no scene");
    const Group g = group_from_json(j.at("group"));
    const int dim = j.at("dim").get<int>();
    Chain p(k, dim, g);
    for (const auto& entry : j.at("coeffs")) {
        if (!entry.is_array() || entry.size() != 2) throw std::invalid_argument("coefficient entries are [index, value]");
        const int i = entry[0].get<int>();
        if (i < 0 || static_cast<std::size_t>(i) >= k->count(dim))
            throw std::out_of_range("simplex index " + std::to_string(i) + " out of range");
        p.add(i, value_from_json(g, entry[1]));
    }
    return p;
}

json varifold_to_json(const Varifold& v) {
    json atoms = json::array();
    for (const auto& a : v.atoms()) {
        json basis = json::array();
        for (Eigen::Index c = 0; c < a.t.basis().cols(); ++c) basis.push_back(point_to_json(a.t.basis().col(c)));
        atoms.push_back(json{{"x", point_to_json(a.x)}, {"basis", std::move(basis)}, {"w", a.w}});
    }
    return json{{"n", v.ambient_dim()}, {"d", v.plane_dim()}, {"atoms", std::move(atoms)}};
}

Varifold varifold_from_json(const json& j) {
    const auto& atoms = j.at("atoms");
    int n = j.contains("n") ? j.at("n").get<int>() : -1;
    int d = j.contains("d") ? j.at("d").get<int>() : -1;
    if (n < 0 || d < 0) {
        if (atoms.empty()) throw std::invalid_argument("empty varifold needs \"n\" and \"d\"");
        n = static_cast<int>(atoms[0].at("x").size());
        d = static_cast<int>(atoms[0].at("basis").size());
    }
    Varifold v(n, d);
    for (const auto& a : atoms) {
        const auto& basis = a.at("basis");
        if (static_cast<int>(basis.size()) != d) throw std::invalid_argument("atom basis has the wrong size");
        Eigen::MatrixXd m(n, d);
        for (int c = 0; c < d; ++c) m.col(c) = point_from_json(basis[static_cast<std::size_t>(c)], n);
        v.add({point_from_json(a.at("x"), n), d == 0 ? Plane::zero(n) : Plane::from_spanning(m), a.at("w").get<double>()});
    }
    return v;
}

json solver_report_to_json(const SolverReport& r) {
    return json{{"method", to_string(r.method)},
                {"optimal", r.optimal},
                {"iterations", r.iterations},
                {"residual", number(r.residual)},
                {"lower_bound", number(r.lower_bound)},
                {"relaxation_integral", r.relaxation_integral},
                {"note", r.note}};
}

json flat_result_to_json(const FlatNormResult& r) {
    const auto& dec = r.decomposition;
    return json{{"value", r.value},
                {"Q", chain_to_json(dec.q)},
                {"R", dec.r ? chain_to_json(*dec.r) : json(nullptr)},
                {"report", solver_report_to_json(r.report)}};
}

std::pair<int, int> parse_m_range(const std::string& s) {
    auto to_int = [&](const std::string& t) {
        std::size_t used = 0;
        const int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad m range: " + s);
        return v;
    };
    try {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            const int v = to_int(s);
            return {v, v};
        }
        return {to_int(s.substr(0, dots)), to_int(s.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad m range: " + s);
    }
}

json config_to_json(const RunConfig& c) {
    return json{{"scenario", c.scenario},
                {"m", std::to_string(c.m_first) + ".." + std::to_string(c.m_last)},
                {"depth", c.depth},
                {"dict", c.dictionary},
                {"arc_resolution", c.arc_resolution},
                {"reference_level", c.reference_level},
                {"rectangle_cells", c.rectangle_cells}};
}

RunConfig config_from_json(const json& j, RunConfig c) {
    static const std::set<std::string> known{"scenario", "m",         "depth", "dict", "arc_resolution",
                                             "reference_level", "rectangle_cells", "out", "plot"};
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw std::invalid_argument("unknown config key: " + key);
    if (j.contains("scenario")) c.scenario = j.at("scenario").get<std::string>();
    if (j.contains("m")) {
        const auto& m = j.at("m");
        if (m.is_string()) {
            std::tie(c.m_first, c.m_last) = parse_m_range(m.get<std::string>());
        } else if (m.is_array() && m.size() == 2) {
            c.m_first = m[0].get<int>();
            c.m_last = m[1].get<int>();
        } else if (m.is_number_integer()) {
            c.m_first = c.m_last = m.get<int>();
        } else {
            throw std::invalid_argument("config m must be \"a..b\", [a, b] or an integer");
        }
    }
    if (j.contains("depth")) c.depth = j.at("depth").get<int>();
    if (j.contains("dict")) c.dictionary = j.at("dict").get<std::string>();
    if (j.contains("arc_resolution")) c.arc_resolution = j.at("arc_resolution").get<int>();
    if (j.contains("reference_level")) c.reference_level = j.at("reference_level").get<int>();
    if (j.contains("rectangle_cells")) c.rectangle_cells = j.at("rectangle_cells").get<int>();
    return c;
}

json report_to_json(const ConvergenceReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"m", row.m},
                            {"flat", number(row.flat)},
                            {"mass", number(row.mass)},
                            {"measure_distance", number(row.measure_distance)},
                            {"var_distance", number(row.var_distance)},
                            {"solver", solver_report_to_json(row.solver)},
                            {"annotation", row.annotation}});
    json asserts = json::array();
    for (const auto& a : r.assertions) asserts.push_back(json{{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    return json{{"config", config_to_json(r.config)},
                {"dictionary", r.dictionary},
                {"rows", std::move(rows)},
                {"assertions", std::move(asserts)},
                {"passed", r.passed()}};
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace flatchain::io
