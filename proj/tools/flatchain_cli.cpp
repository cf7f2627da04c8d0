#include "flatchain/flatnorm.hpp"
#include "flatchain/harness.hpp"
#include "flatchain/io.hpp"
#include "flatchain/lipmap.hpp"
#include "flatchain/varifold.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace fc = flatchain;
using fc::io::json;

namespace {

std::string output_path;

void emit(const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (output_path.empty() || output_path == "-")
        std::cout << text;
    else
        fc::io::write_text(output_path, text);
}

fc::ComplexPtr load_scene(const std::string& path) {
    if (path.empty()) return nullptr;
    return fc::io::scene_from_json(fc::io::read_json(path));
}

fc::Chain load_chain(const std::string& path, const fc::ComplexPtr& scene) {
    return fc::io::chain_from_json(fc::io::read_json(path), scene);
}

fc::FlatNormOptions method_options(const std::string& method) {
    fc::FlatNormOptions o;
    if (method == "lp")
        o.method = fc::MethodChoice::LinearProgram;
    else if (method == "brute")
        o.method = fc::MethodChoice::BruteForce;
    else if (method != "auto")
        throw CLI::ValidationError("--method", "expected lp, brute or auto");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flat norms, chain pushforwards and varifold distances on simplicial complexes"};
    app.require_subcommand(1);
    app.add_option("-o,--output", output_path, "Write JSON output here instead of stdout");

    std::string scene_path, chain_path, other_path, method = "auto", box, map_spec, a_path, b_path, dict = "default";
    int levels = 1, depth = 6;

    auto* subdivide = app.add_subcommand("subdivide", "Iterated barycentric subdivision of a scene");
    subdivide->add_option("--scene", scene_path)->required();
    subdivide->add_option("--levels", levels)->check(CLI::NonNegativeNumber);

    auto* mass_cmd = app.add_subcommand("mass", "Mass of a chain");
    mass_cmd->add_option("--scene", scene_path);
    mass_cmd->add_option("--chain", chain_path)->required();

    auto* boundary_cmd = app.add_subcommand("boundary", "Boundary of a chain");
    boundary_cmd->add_option("--scene", scene_path);
    boundary_cmd->add_option("--chain", chain_path)->required();

    auto* restrict_cmd = app.add_subcommand("restrict", "Restriction of a chain to a box region");
    restrict_cmd->add_option("--scene", scene_path);
    restrict_cmd->add_option("--chain", chain_path)->required();
    restrict_cmd->add_option("--box", box, "Intervals \"lo,hi;lo,hi\"")->required();
    restrict_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

    auto* flat_cmd = app.add_subcommand("flatnorm", "Flat norm of a chain, or flat distance with --minus");
    flat_cmd->add_option("--scene", scene_path);
    flat_cmd->add_option("--chain", chain_path)->required();
    flat_cmd->add_option("--minus", other_path, "Second chain; reports the flat distance");
    flat_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "lp", "brute"}));

    auto* massmin_cmd = app.add_subcommand("massmin", "Least-mass chain with a prescribed boundary");
    massmin_cmd->add_option("--scene", scene_path);
    massmin_cmd->add_option("--boundary", chain_path)->required();
    massmin_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "lp", "brute"}));

    auto* push_cmd = app.add_subcommand("pushforward", "Level-k simplexwise affine pushforward");
    push_cmd->add_option("--map", map_spec)->required();
    push_cmd->add_option("--scene", scene_path);
    push_cmd->add_option("--chain", chain_path)->required();
    push_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

    auto* varify_cmd = app.add_subcommand("varify", "Varifold of a chain");
    varify_cmd->add_option("--scene", scene_path);
    varify_cmd->add_option("--chain", chain_path)->required();
    varify_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

    auto* vardist_cmd = app.add_subcommand("vardist", "Weak distance between two varifolds");
    vardist_cmd->add_option("--a", a_path)->required();
    vardist_cmd->add_option("--b", b_path)->required();
    vardist_cmd->add_option("--dict", dict)->check(CLI::IsMember({"default", "tents"}));

    app.add_subcommand("maps", "List the registered map families");

    fc::RunConfig rc;
    std::string config_path, m_range, out_csv, plot_svg, report_json;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a convergence scenario");
    exp_cmd->add_option("--config", config_path, "JSON file mirroring the flags below");
    exp_cmd->add_option("--scenario", rc.scenario)
        ->check(CLI::IsMember({"annulus", "escaping_rectangle", "polygonal_circle", "polygonal_square"}));
    exp_cmd->add_option("--m", m_range, "Range a..b");
    exp_cmd->add_option("--depth", rc.depth)->check(CLI::NonNegativeNumber);
    exp_cmd->add_option("--dict", rc.dictionary)->check(CLI::IsMember({"default", "tents"}));
    exp_cmd->add_option("--arc-resolution", rc.arc_resolution)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--reference-level", rc.reference_level)->check(CLI::PositiveNumber);
    exp_cmd->add_option("--out", out_csv, "CSV report");
    exp_cmd->add_option("--plot", plot_svg, "SVG plot");
    exp_cmd->add_option("--json", report_json, "JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*subdivide) {
            emit(fc::io::scene_to_json(*fc::iterated_subdivision(load_scene(scene_path), levels)));
        } else if (*mass_cmd) {
            emit(json{{"mass", fc::mass(load_chain(chain_path, load_scene(scene_path)))}});
        } else if (*boundary_cmd) {
            emit(fc::io::chain_to_json(fc::boundary(load_chain(chain_path, load_scene(scene_path)))));
        } else if (*restrict_cmd) {
            const auto p = load_chain(chain_path, load_scene(scene_path));
            emit(fc::io::chain_to_json(fc::restrict(p, fc::IntervalRegion::parse(box), depth), true));
        } else if (*flat_cmd) {
            const auto scene = load_scene(scene_path);
            const auto p = load_chain(chain_path, scene);
            const auto opts = method_options(method);
            const auto res = other_path.empty() ? fc::flat_norm(p, opts)
                                                : fc::flat_distance(p, load_chain(other_path, scene), opts);
            json out = fc::io::flat_result_to_json(res);
            if (!other_path.empty() || res.decomposition.q.complex() != p.complex()) {
                out["scene"] = fc::io::scene_to_json(*res.decomposition.q.complex());
            }
            emit(out);
        } else if (*massmin_cmd) {
            const auto t = load_chain(chain_path, load_scene(scene_path));
            const auto res = fc::mass_minimize(t, t.complex(), method_options(method));
            emit(json{{"mass", res.mass},
                      {"S", fc::io::chain_to_json(res.s)},
                      {"report", fc::io::solver_report_to_json(res.report)}});
        } else if (*push_cmd) {
            const auto p = load_chain(chain_path, load_scene(scene_path));
            const auto f = fc::LipMap::parse(map_spec, p.complex()->ambient_dim());
            const auto res = fc::pushforward_chain(f, p, depth);
            emit(json{{"chain", fc::io::chain_to_json(res.chain, true)},
                      {"mass", fc::mass(res.chain)},
                      {"dropped", res.dropped},
                      {"warning", res.warning}});
        } else if (*varify_cmd) {
            emit(fc::io::varifold_to_json(fc::var_of_chain(load_chain(chain_path, load_scene(scene_path)), depth)));
        } else if (*vardist_cmd) {
            const auto v = fc::io::varifold_from_json(fc::io::read_json(a_path));
            const auto w = fc::io::varifold_from_json(fc::io::read_json(b_path));
            const auto d = fc::TestDictionary::by_name(dict, v.ambient_dim(), v.plane_dim());
            emit(json{{"distance", fc::var_weak_distance(v, w, d)}, {"dictionary", d.describe()}});
        } else if (app.got_subcommand("maps")) {
            emit(json(fc::map_registry()));
        } else if (*exp_cmd) {
            fc::RunConfig config;
            if (!config_path.empty()) {
                const json j = fc::io::read_json(config_path);
                config = fc::io::config_from_json(j);
                if (j.contains("out") && out_csv.empty()) out_csv = j.at("out").get<std::string>();
                if (j.contains("plot") && plot_svg.empty()) plot_svg = j.at("plot").get<std::string>();
            }
            if (exp_cmd->count("--scenario")) config.scenario = rc.scenario;
            if (exp_cmd->count("--depth")) config.depth = rc.depth;
            if (exp_cmd->count("--dict")) config.dictionary = rc.dictionary;
            if (exp_cmd->count("--arc-resolution")) config.arc_resolution = rc.arc_resolution;
            if (exp_cmd->count("--reference-level")) config.reference_level = rc.reference_level;
            if (!m_range.empty()) std::tie(config.m_first, config.m_last) = fc::io::parse_m_range(m_range);

            const auto report = fc::run(config);
            const std::string csv = fc::to_csv(report);
            if (out_csv.empty())
                std::cout << csv;
            else
                fc::io::write_text(out_csv, csv);
            if (!plot_svg.empty()) fc::io::write_text(plot_svg, fc::to_svg(report));
            if (!report_json.empty()) fc::io::write_text(report_json, fc::io::report_to_json(report).dump(2) + "\n");
            for (const auto& a : report.assertions)
                if (!a.passed) std::cerr << "assertion failed: " << a.name << (a.detail.empty() ? "" : " (" + a.detail + ")") << "\n";
            return report.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
