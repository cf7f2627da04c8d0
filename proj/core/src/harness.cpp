#include "flatchain/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flatchain {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void add_edge(Chain& c, int u, int v, std::int64_t k) {
    const int key[2] = {std::min(u, v), std::max(u, v)};
    const auto idx = c.complex()->find(1, key);
    if (!idx) throw std::logic_error("scenario edge missing from complex");
    c.add(*idx, c.group().element(u < v ? k : -k));
}

std::vector<double> column(const std::vector<ReportRow>& rows, double ReportRow::*field) {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.*field);
    return out;
}

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

AssertionResult trend(const std::vector<ReportRow>& rows, double ReportRow::*field, const std::string& name,
                      bool decreasing) {
    AssertionResult a{name, true, ""};
    const std::size_t n = std::min<std::size_t>(5, rows.size());
    if (n < 3) {
        a.detail = "skipped: fewer than 3 rows";
        return a;
    }
    std::vector<double> x, y;
    for (std::size_t i = rows.size() - n; i < rows.size(); ++i) {
        x.push_back(rows[i].m);
        y.push_back(rows[i].*field);
    }
    const double rho = spearman(x, y);
    a.passed = decreasing ? rho <= -0.9 : rho >= 0.9;
    a.detail = "spearman over last " + std::to_string(n) + " rows = " + fmt(rho);
    return a;
}

}  // namespace

Scenario scenario_annulus(int m, int arc_resolution) {
    if (m < 2) throw std::invalid_argument("annulus needs m >= 2");
    if (arc_resolution < 1) throw std::invalid_argument("arc resolution must be positive");
    const int per = static_cast<int>(std::ceil(arc_resolution * kPi / m));
    const int n = 2 * m * per;
    const double outer = 1.0 + 1.0 / (static_cast<double>(m) * m);
    std::vector<Point> verts;
    for (double r : {1.0, outer})
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * kPi * i / n;
            Point p(2);
            p << r * std::cos(th), r * std::sin(th);
            verts.push_back(p);
        }
    std::vector<std::vector<std::vector<int>>> simp(3);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        simp[2].push_back({i, j, n + i});
        simp[2].push_back({j, n + i, n + j});
    }
    const auto k = Complex::create(2, std::move(verts), simp);
    const Group z2 = Group::cyclic(2);

    Chain region(k, 2, z2);
    for (int i = 0; i < n; ++i) {
        if ((i / per) % 2 == 0) continue;
        const int j = (i + 1) % n;
        for (auto tri : {std::vector<int>{i, j, n + i}, std::vector<int>{j, n + i, n + j}}) {
            std::sort(tri.begin(), tri.end());
            region.add(*k->find(2, tri), z2.element(std::int64_t{1}));
        }
    }
    Chain circle(k, 1, z2);
    for (int i = 0; i < n; ++i) add_edge(circle, i, (i + 1) % n, 1);

    std::ostringstream desc;
    desc << "annulus m=" << m << " segments_per_sector_arc=" << per << " arc_resolution=" << arc_resolution;
    return Scenario{"annulus", m, boundary(region), std::move(circle), false, desc.str()};
}

Scenario scenario_escaping_rectangle(int m, int cells) {
    if (m < 1) throw std::invalid_argument("escaping rectangle needs m >= 1");
    if (cells < 1) throw std::invalid_argument("cell count must be positive");
    const double h = 1.0 / m;
    std::vector<Point> verts;
    for (double y : {0.0, h})
        for (int i = 0; i <= cells; ++i) {
            Point p(2);
            p << m + static_cast<double>(i) / cells, y;
            verts.push_back(p);
        }
    const int top = cells + 1;
    std::vector<std::vector<std::vector<int>>> simp(3);
    for (int i = 0; i < cells; ++i) {
        simp[2].push_back({i, i + 1, top + i + 1});
        simp[2].push_back({i, top + i, top + i + 1});
    }
    const auto k = Complex::create(2, std::move(verts), simp);
    const Chain q = Chain::fundamental(k, 2, Group::cyclic(2));
    std::ostringstream desc;
    desc << "escaping rectangle m=" << m << " cells=" << cells;
    return Scenario{"escaping_rectangle", m, boundary(q), std::nullopt, false, desc.str()};
}

Scenario scenario_polygonal_limit(Shape shape, int m, int reference_level) {
    if (m < 3) throw std::invalid_argument("polygonal limit needs m >= 3");
    if (m > reference_level) throw std::invalid_argument("m must not exceed the reference level");
    const Group z = Group::integers();
    if (shape == Shape::Square) {
        std::vector<Point> verts;
        for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) {
            Point p(2);
            p << x, y;
            verts.push_back(p);
        }
        const auto k0 = Complex::create(2, std::move(verts), {{}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}});
        Chain p0(k0, 1, z);
        for (int i = 0; i < 4; ++i) add_edge(p0, i, (i + 1) % 4, 1);
        const auto km = iterated_subdivision(k0, m);
        const auto kk = iterated_subdivision(km, reference_level - m);
        std::ostringstream desc;
        desc << "polygonal square m=" << m << " reference_level=" << reference_level;
        return Scenario{"polygonal_square", m, refine(p0, km), refine(p0, kk), true, desc.str()};
    }
    const int n = 1 << reference_level;
    const int step = 1 << (reference_level - m);
    std::vector<Point> verts;
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        Point p(2);
        p << std::cos(th), std::sin(th);
        verts.push_back(p);
    }
    std::vector<std::vector<std::vector<int>>> simp(3);
    for (int j = 0; j < n; ++j) simp[1].push_back({j, (j + 1) % n});
    for (int a = 0; a < n; a += step) {
        simp[1].push_back({a, (a + step) % n});
        for (int i = 1; i + 1 <= step; ++i) simp[2].push_back({a, (a + i) % n, (a + i + 1) % n});
    }
    const auto k = Complex::create(2, std::move(verts), simp);
    Chain pm(k, 1, z), s(k, 1, z);
    for (int a = 0; a < n; a += step) add_edge(pm, a, (a + step) % n, 1);
    for (int j = 0; j < n; ++j) add_edge(s, j, (j + 1) % n, 1);
    std::ostringstream desc;
    desc << "polygonal circle m=" << m << " reference_level=" << reference_level;
    return Scenario{"polygonal_circle", m, std::move(pm), std::move(s), true, desc.str()};
}

Scenario make_scenario(const RunConfig& c, int m) {
    if (c.scenario == "annulus") return scenario_annulus(m, c.arc_resolution);
    if (c.scenario == "escaping_rectangle") return scenario_escaping_rectangle(m, c.rectangle_cells);
    if (c.scenario == "polygonal_circle") return scenario_polygonal_limit(Shape::Circle, m, c.reference_level);
    if (c.scenario == "polygonal_square") return scenario_polygonal_limit(Shape::Square, m, c.reference_level);
    throw std::invalid_argument("unknown scenario: " + c.scenario);
}

ReportRow evaluate(const Scenario& s, int depth, const TestDictionary& dict) {
    ReportRow row;
    row.m = s.m;
    row.mass = mass(s.chain);
    try {
        const auto res = s.flat_against_reference && s.reference ? flat_distance(s.chain, *s.reference)
                                                                  : flat_norm(s.chain);
        row.flat = res.value;
        row.solver = res.report;
    } catch (const std::exception& e) {
        row.flat = std::numeric_limits<double>::quiet_NaN();
        row.annotation = std::string("flat norm failed: ") + e.what();
    }
    const int n = s.chain.complex()->ambient_dim();
    const ChainMeasure mu = induced_measure(s.chain, depth);
    const ChainMeasure nu = s.reference ? induced_measure(*s.reference, depth) : ChainMeasure{n, {}};
    row.measure_distance = measure_weak_distance(mu, nu, dict);
    const Varifold v = var_of_chain(s.chain, depth);
    const Varifold w = s.reference ? var_of_chain(*s.reference, depth) : Varifold(n, s.chain.dim());
    row.var_distance = var_weak_distance(v, w, dict);
    return row;
}

ConvergenceReport run(const RunConfig& config) {
    if (config.m_first > config.m_last) throw std::invalid_argument("empty m range");
    ConvergenceReport rep;
    rep.config = config;
    std::optional<TestDictionary> dict;
    bool closed = true;
    for (int m = config.m_first; m <= config.m_last; ++m) {
        const Scenario s = make_scenario(config, m);
        if (!dict) {
            dict = TestDictionary::by_name(config.dictionary, s.chain.complex()->ambient_dim(), s.chain.dim());
            rep.dictionary = dict->describe();
        }
        if (s.chain.dim() >= 1 && !boundary(s.chain).is_zero()) closed = false;
        rep.rows.push_back(evaluate(s, config.depth, *dict));
    }
    auto& as = rep.assertions;
    as.push_back({"chains are cycles", closed, ""});
    bool solved = true;
    for (const auto& r : rep.rows)
        if (!r.annotation.empty()) solved = false;
    as.push_back({"flat norm solved on every row", solved, ""});

    const auto& rows = rep.rows;
    if (config.scenario == "annulus") {
        bool ok = true;
        std::string worst;
        for (const auto& r : rows) {
            const double bound = 0.5 * kPi * (2.0 / (r.m * r.m) + 1.0 / std::pow(r.m, 4));
            if (!(r.flat <= 1.05 * bound)) {
                ok = false;
                worst = "m=" + std::to_string(r.m) + " fn=" + fmt(r.flat) + " bound=" + fmt(bound);
            }
        }
        as.push_back({"fn(S_m) <= sector area + 5%", ok, worst});
        as.push_back(trend(rows, &ReportRow::flat, "fn(S_m) decreasing", true));
        as.push_back(trend(rows, &ReportRow::var_distance, "var distance to circle decreasing", true));
    } else if (config.scenario == "escaping_rectangle") {
        bool mass_ok = true, flat_ok = true, var_ok = true;
        const double radius = dict ? dict->support_radius() : 0.0;
        for (const auto& r : rows) {
            if (std::abs(r.mass - (2.0 + 2.0 / r.m)) > 1e-9) mass_ok = false;
            if (!(r.flat <= 1.0 / r.m + 1e-9)) flat_ok = false;
            if (r.m >= radius && r.var_distance > 1e-12) var_ok = false;
        }
        as.push_back({"mass(S_m) = 2 + 2/m", mass_ok, ""});
        as.push_back({"fn(S_m) <= 1/m", flat_ok, ""});
        as.push_back({"var distance to zero vanishes beyond the dictionary support", var_ok,
                      "support radius " + fmt(radius)});
    } else if (config.scenario == "polygonal_circle") {
        as.push_back(trend(rows, &ReportRow::flat, "fn(P_m - S) decreasing", true));
        as.push_back(trend(rows, &ReportRow::mass, "mass(P_m) increasing", false));
        as.push_back(trend(rows, &ReportRow::measure_distance, "measure distance decreasing", true));
        as.push_back(trend(rows, &ReportRow::var_distance, "var distance decreasing", true));
    } else if (config.scenario == "polygonal_square") {
        bool ok = true;
        for (const auto& r : rows)
            if (r.flat > 1e-9 || r.measure_distance > 1e-9 || r.var_distance > 1e-9) ok = false;
        as.push_back({"all distances vanish", ok, ""});
    }
    return rep;
}

bool ConvergenceReport::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const AssertionResult& a) { return a.passed; });
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman needs two equal-length samples");
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::string to_csv(const ConvergenceReport& r) {
    std::ostringstream os;
    const auto& c = r.config;
    os << "# scenario=" << c.scenario << " depth=" << c.depth << " arc_resolution=" << c.arc_resolution
       << " reference_level=" << c.reference_level << " rectangle_cells=" << c.rectangle_cells << "\n";
    os << "# dictionary=" << r.dictionary << "\n";
    os << "m,flat,mass,measure_distance,var_distance,method,optimal,lower_bound,annotation\n";
    for (const auto& row : r.rows) {
        os << row.m << ',' << fmt(row.flat) << ',' << fmt(row.mass) << ',' << fmt(row.measure_distance) << ','
           << fmt(row.var_distance) << ',' << to_string(row.solver.method) << ','
           << (row.solver.optimal ? "true" : "false") << ',' << fmt(row.solver.lower_bound) << ",\"" << row.annotation
           << "\"\n";
    }
    for (const auto& a : r.assertions)
        os << "# assert " << (a.passed ? "PASS" : "FAIL") << ": " << a.name << (a.detail.empty() ? "" : " (" + a.detail + ")")
           << "\n";
    return os.str();
}

std::string to_svg(const ConvergenceReport& r) {
    const double width = 640, height = 400, left = 60, right = 150, top = 20, bottom = 40;
    const double pw = width - left - right, ph = height - top - bottom;
    const double floor = 1e-12;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    struct Series {
        const char* name;
        const char* colour;
        double ReportRow::*field;
    };
    const Series series[] = {{"flat", "#1f77b4", &ReportRow::flat},
                             {"mass", "#2ca02c", &ReportRow::mass},
                             {"measure", "#ff7f0e", &ReportRow::measure_distance},
                             {"varifold", "#d62728", &ReportRow::var_distance}};
    for (const auto& s : series)
        for (double v : column(r.rows, s.field))
            if (std::isfinite(v)) {
                const double l = std::log10(std::max(v, floor));
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-9) hi = lo + 1.0;
    const double m0 = r.config.m_first, m1 = std::max(r.config.m_last, r.config.m_first + 1);
    auto px = [&](double m) { return left + pw * (m - m0) / (m1 - m0); };
    auto py = [&](double v) { return top + ph * (1.0 - (std::log10(std::max(v, floor)) - lo) / (hi - lo)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left << "\" y=\"14\" font-size=\"12\">" << r.config.scenario << " (log10 scale)</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    for (const auto& row : r.rows)
        os << "<text x=\"" << px(row.m) - 4 << "\" y=\"" << top + ph + 16 << "\" font-size=\"10\">" << row.m << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + 10 << "\" font-size=\"10\">1e" << fmt(std::round(hi * 10) / 10) << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + ph << "\" font-size=\"10\">1e" << fmt(std::round(lo * 10) / 10) << "</text>\n";
    int legend = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"2\" points=\"";
        for (const auto& row : r.rows) {
            const double v = row.*(s.field);
            if (std::isfinite(v)) os << fmt(px(row.m)) << ',' << fmt(py(v)) << ' ';
        }
        os << "\"/>\n";
        const double ly = top + 20 + 18 * legend++;
        os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 35 << "\" y2=\"" << ly
           << "\" stroke=\"" << s.colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << s.name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace flatchain
