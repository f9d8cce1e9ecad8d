#include "arcres/serialize.hpp"

#include <algorithm>

namespace arcres {

json to_json(const ValidationReport& report) {
  json v = json::array();
  for (const auto& x : report.violations())
    v.push_back({{"kind", std::string(to_string(x.kind))}, {"indices", x.indices}, {"message", x.message}});
  return {{"valid", report.ok()}, {"violations", std::move(v)}};
}

json to_json(const DesignParams& p) {
  json j{{"v", p.v}, {"k", p.k}, {"lambda", p.lambda}, {"r", p.r}, {"b", p.b}};
  if (p.n) j["n"] = *p.n;
  if (p.s) j["s"] = *p.s;
  if (p.q) j["q"] = *p.q;
  return j;
}

json to_json(const ReportRow& row, bool with_timings) {
  json j{{"hyperoval_id", row.hyperoval_id},
         {"plane_label", row.plane_label},
         {"rank2", row.rank2},
         {"n_parallel_classes", row.n_parallel_classes},
         {"n_resolutions", row.n_resolutions},
         {"n_max_compatible_sets", row.n_max_compatible_sets},
         {"embed_valid", row.embed_valid ? json(*row.embed_valid) : json(nullptr)}};
  if (row.rank_bound) j["rank_bound"] = *row.rank_bound;
  if (with_timings) {
    json t = json::object();
    for (const auto& [stage, secs] : row.timings) t[stage] = secs;
    j["timings"] = std::move(t);
  }
  return j;
}

ReportRow report_row_from_json(const json& j) {
  ReportRow row;
  row.hyperoval_id = j.at("hyperoval_id").get<std::string>();
  row.plane_label = j.at("plane_label").get<std::string>();
  row.rank2 = j.at("rank2").get<std::size_t>();
  row.n_parallel_classes = j.at("n_parallel_classes").get<std::size_t>();
  row.n_resolutions = j.at("n_resolutions").get<std::size_t>();
  row.n_max_compatible_sets = j.at("n_max_compatible_sets").get<std::size_t>();
  if (j.contains("embed_valid") && !j["embed_valid"].is_null()) row.embed_valid = j["embed_valid"].get<bool>();
  if (j.contains("rank_bound")) row.rank_bound = j["rank_bound"].get<std::size_t>();
  if (j.contains("timings"))
    for (const auto& [stage, secs] : j["timings"].items()) row.timings.emplace_back(stage, secs.get<double>());
  return row;
}

json classes_to_json(const std::vector<ParallelClass>& classes) {
  json list = json::array();
  for (const auto& c : classes) list.push_back(c.blocks);
  return {{"count", classes.size()}, {"classes", std::move(list)}};
}

json resolutions_to_json(const std::vector<Resolution>& res) {
  json list = json::array();
  for (const auto& r : res) list.push_back(r.classes);
  return {{"count", res.size()}, {"resolutions", std::move(list)}};
}

json compatible_sets_to_json(const std::vector<CompatibleSet>& sets) {
  json list = json::array();
  for (const auto& s : sets) list.push_back(s.resolutions);
  return {{"count", sets.size()}, {"compatible_sets", std::move(list)}};
}

namespace {

std::vector<std::uint32_t> index_list(const json& j, std::size_t limit, const char* what) {
  auto v = j.get<std::vector<std::uint32_t>>();
  for (auto x : v)
    if (x >= limit) throw ParseError(std::string(what) + " index " + std::to_string(x) + " out of range");
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<ParallelClass> classes_from_json(const json& j, const Design& design) {
  std::vector<ParallelClass> out;
  for (const auto& c : j.at("classes")) {
    ParallelClass pc{index_list(c, design.num_blocks(), "block"), BitVec(design.num_blocks())};
    BitVec cover(design.num_points());
    std::size_t covered = 0;
    for (auto b : pc.blocks) {
      pc.block_set.set(b);
      cover |= design.block_bits(b);
      covered += design.block(b).size();
    }
    if (cover.count() != design.num_points() || covered != design.num_points())
      throw ParseError("class " + std::to_string(out.size()) + " is not a parallel class of the design");
    out.push_back(std::move(pc));
  }
  return out;
}

std::vector<Resolution> resolutions_from_json(const json& j, std::size_t num_classes) {
  std::vector<Resolution> out;
  for (const auto& r : j.at("resolutions")) out.push_back({index_list(r, num_classes, "class")});
  return out;
}

std::vector<CompatibleSet> compatible_sets_from_json(const json& j, std::size_t num_resolutions) {
  std::vector<CompatibleSet> out;
  for (const auto& s : j.at("compatible_sets")) out.push_back({index_list(s, num_resolutions, "resolution")});
  return out;
}

}  // namespace arcres
