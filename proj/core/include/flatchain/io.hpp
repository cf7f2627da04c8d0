#pragma once

#include "flatchain/chain.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/harness.hpp"
#include "flatchain/varifold.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <utility>

namespace flatchain::io {

using nlohmann::json;

/// "Z", "R" or {"Zmod": p}.
json group_to_json(const Group& g);
Group group_from_json(const json& j);

/// {"n", "vertices", "simplices": {"0": [...], "1": [[i, j], ...], ...}}.
/// Every simplex is listed so indices survive a round trip.
json scene_to_json(const Complex& k);
ComplexPtr scene_from_json(const json& j);

/// {"dim", "group", "coeffs": [[index, value], ...]}; an optional "scene" key
/// carries the complex when it differs from the one supplied by the caller.
json chain_to_json(const Chain& p, bool embed_scene = false);
Chain chain_from_json(const json& j, const ComplexPtr& fallback);

/// {"n", "d", "atoms": [{"x", "basis", "w"}]}; basis rows are spanning vectors.
json varifold_to_json(const Varifold& v);
Varifold varifold_from_json(const json& j);

json solver_report_to_json(const SolverReport& r);
json flat_result_to_json(const FlatNormResult& r);

/// "a..b" or a single integer.
std::pair<int, int> parse_m_range(const std::string& s);
json config_to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const json& j, RunConfig base = {});
json report_to_json(const ConvergenceReport& r);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace flatchain::io
