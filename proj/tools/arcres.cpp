// arcres: command-line front end for plane construction, maximal-arc
// designs, resolutions and embeddings.
//
// Exit codes: 0 success, 2 validation/parameter failure, 3 I/O or parse failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arcres/arcs.hpp"
#include "arcres/design.hpp"
#include "arcres/geometry.hpp"
#include "arcres/pipeline.hpp"
#include "arcres/resolve.hpp"
#include "arcres/serialize.hpp"

namespace fs = std::filesystem;
using namespace arcres;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Common {
  std::uint32_t order = 16;
  std::string modulus;
  std::string plane;
  std::string hyperoval;
  std::string out;
  unsigned jobs = 1;
  std::string format = "json";
  int index_base = -1;
};

fs::path data_path(const std::string& p) {
  fs::path path(p);
  if (path.is_relative() && !fs::exists(path))
    if (const char* dir = std::getenv("ARCRES_DATA_DIR")) return fs::path(dir) / path;
  return path;
}

std::ifstream open_in(const std::string& p) {
  auto path = data_path(p);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::optional<std::uint32_t> base_opt(const Common& c) {
  if (c.index_base < 0) return std::nullopt;
  return static_cast<std::uint32_t>(c.index_base);
}

/// Writes to --out, or stdout when --out is empty.
template <class F>
void emit(const std::string& out, F&& f) {
  if (out.empty()) {
    f(std::cout);
    return;
  }
  std::ofstream o(out, std::ios::binary);
  if (!o) throw ParseError("cannot write " + out);
  f(o);
}

unsigned order_exponent(std::uint32_t order) {
  for (unsigned t = 1; t <= 6; ++t)
    if ((1u << t) == order) return t;
  throw ParameterError("unsupported order " + std::to_string(order) +
                       ": PG(2,q) is built for q = 2^t with 1 <= t <= 6");
}

std::shared_ptr<const Field> make_field(const Common& c) {
  const unsigned t = order_exponent(c.order);
  if (c.modulus.empty()) return std::make_shared<const Field>(Field::with_default_modulus(t));
  std::size_t used = 0;
  unsigned long m = 0;
  try {
    m = std::stoul(c.modulus, &used, 16);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != c.modulus.size()) throw ParameterError("modulus must be a hex bit pattern such as 0x13");
  return std::make_shared<const Field>(Field(t, static_cast<std::uint32_t>(m)));
}

std::shared_ptr<const ProjectivePlane> plane_from(const Common& c) {
  if (c.plane.empty()) return std::make_shared<const ProjectivePlane>(build_pg2(make_field(c)));
  auto in = open_in(c.plane);
  auto label = fs::path(c.plane).stem().string();
  return std::make_shared<const ProjectivePlane>(load_plane(in, c.order, label, base_opt(c)));
}

Design design_from(const std::string& p) {
  auto in = open_in(p);
  return load_design(in);
}

json json_from(const std::string& p) {
  auto in = open_in(p);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(p + ": " + e.what());
  }
}

std::vector<ParallelClass> classes_for(const Design& d, const std::string& path, unsigned jobs) {
  if (path.empty()) return parallel_classes(d, {jobs});
  return classes_from_json(json_from(path), d);
}

std::vector<Resolution> resolutions_for(const Design& d, const std::vector<ParallelClass>& classes,
                                        const std::string& path, unsigned jobs) {
  if (path.empty()) return resolutions(d, classes, {jobs});
  return resolutions_from_json(json_from(path), classes.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal arcs, resolvable Steiner designs and compatible resolutions in projective planes"};
  app.require_subcommand(1);
  Common c;
  std::string arc_path, design_path, classes_path, res_path, sets_path, manifest, report_path, id = "regular";
  std::uint32_t k = 2, set_index = 0;
  unsigned t_conj = 0;

  auto add_order = [&](CLI::App* s) { s->add_option("--order", c.order, "Plane order q")->capture_default_str(); };
  auto add_plane = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--plane", c.plane, "Plane file (lines format)");
    if (required) o->required();
    s->add_option("--index-base", c.index_base, "Force 0- or 1-based indices instead of auto-detection")
        ->check(CLI::Range(0, 1));
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "Output file (default stdout)"); };

  auto* build = app.add_subcommand("build-pg", "Emit canonical PG(2,q) in lines format");
  add_order(build);
  build->add_option("--modulus", c.modulus, "Field modulus as hex bit pattern, e.g. 0x13");
  add_out(build);

  auto* validate = app.add_subcommand("validate-plane", "Validate a plane file; JSON report");
  add_order(validate);
  add_plane(validate, true);

  auto* dual = app.add_subcommand("dual", "Dual plane in lines format");
  add_order(dual);
  add_plane(dual, true);
  add_out(dual);

  auto* darc = app.add_subcommand("dual-arc", "External lines of a maximal arc, as an arc of the dual plane");
  add_order(darc);
  add_plane(darc, false);
  darc->add_option("--hyperoval", c.hyperoval, "Arc file or 'regular'")->required();
  darc->add_option("--k", k, "Arc degree of the input")->capture_default_str();
  add_out(darc);

  auto* extract = app.add_subcommand("extract", "Design of line intersections of a maximal arc");
  add_order(extract);
  add_plane(extract, false);
  extract->add_option("--arc", arc_path, "Arc file (indices into --plane)")->required();
  extract->add_option("--k", k, "Arc degree")->required();
  add_out(extract);

  auto* rank = app.add_subcommand("rank2", "2-rank of a design's incidence matrix");
  rank->add_option("--design", design_path, "Design file")->required();
  rank->add_option("--t", t_conj, "Also check the 3^t - 2^t bound for this t");

  auto* cls = app.add_subcommand("classes", "Enumerate parallel classes");
  cls->add_option("--design", design_path, "Design file")->required();
  cls->add_option("--jobs", c.jobs, "Search threads (0 = all cores)");
  add_out(cls);

  auto* res = app.add_subcommand("resolutions", "Enumerate resolutions");
  res->add_option("--design", design_path, "Design file")->required();
  res->add_option("--classes", classes_path, "classes.json (computed if omitted)");
  res->add_option("--jobs", c.jobs, "Search threads (0 = all cores)");
  add_out(res);

  auto* comp = app.add_subcommand("compatible", "Enumerate compatible sets of maximum size");
  comp->add_option("--design", design_path, "Design file")->required();
  comp->add_option("--classes", classes_path, "classes.json (computed if omitted)");
  comp->add_option("--resolutions", res_path, "resolutions.json (computed if omitted)");
  comp->add_option("--jobs", c.jobs, "Search threads (0 = all cores)");
  add_out(comp);

  auto* emb = app.add_subcommand("embed", "Reconstruct the plane from a full compatible set");
  emb->add_option("--design", design_path, "Design file")->required();
  emb->add_option("--classes", classes_path, "classes.json (computed if omitted)");
  emb->add_option("--resolutions", res_path, "resolutions.json (computed if omitted)");
  emb->add_option("--compatible", sets_path, "compatible_sets.json (computed if omitted)");
  emb->add_option("--set", set_index, "Which compatible set to use")->capture_default_str();
  emb->add_option("--jobs", c.jobs, "Search threads (0 = all cores)");
  add_out(emb);

  auto* pipe = app.add_subcommand("pipeline", "Full run for one plane/hyperoval pair");
  add_order(pipe);
  add_plane(pipe, false);
  pipe->add_option("--modulus", c.modulus, "Field modulus when the plane is built (no --plane)");
  pipe->add_option("--hyperoval", c.hyperoval, "Hyperoval file or 'regular'")->required();
  pipe->add_option("--id", id, "Hyperoval identifier for the report")->capture_default_str();
  pipe->add_option("--out", c.out, "Output directory")->required();
  pipe->add_option("--jobs", c.jobs, "Search threads (0 = all cores)");

  auto* batch = app.add_subcommand("batch", "Run every row of a manifest");
  batch->add_option("--manifest", manifest, "CSV: hyperoval_id,plane_label,plane_path,hyperoval_path")->required();
  batch->add_option("--out", c.out, "Output directory")->required();
  batch->add_option("--jobs", c.jobs, "Rows processed concurrently");
  batch->add_option("--format", c.format, "Table format on stdout")->check(CLI::IsMember({"json", "csv"}));
  batch->add_option("--index-base", c.index_base, "Force 0- or 1-based hyperoval indices")->check(CLI::Range(0, 1));
  add_order(batch);

  auto* hist = app.add_subcommand("histogram", "2-rank frequencies of a report table");
  hist->add_option("--report", report_path, "Table written by batch (JSON or CSV)")->required();
  hist->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*build) {
      auto plane = build_pg2(make_field(c));
      emit(c.out, [&](std::ostream& o) { write_plane(o, plane); });
    } else if (*validate) {
      auto in = open_in(c.plane);
      auto rows = read_index_rows(in);
      std::vector<std::vector<std::uint32_t>> lines;
      std::uint64_t lo = UINT64_MAX, hi = 0;
      for (const auto& r : rows)
        for (auto v : r.values) lo = std::min(lo, v), hi = std::max(hi, v);
      const std::uint64_t np = std::uint64_t{c.order} * c.order + c.order + 1;
      const auto base = c.index_base >= 0 ? static_cast<std::uint32_t>(c.index_base)
                                          : (rows.empty() ? 0 : detect_index_base(lo, hi, np));
      for (const auto& r : rows) {
        std::vector<std::uint32_t> l;
        for (auto v : r.values) {
          if (v < base || v - base >= np)
            throw ParseError("row " + std::to_string(r.source_line) + ": index " + std::to_string(v) + " out of range");
          l.push_back(static_cast<std::uint32_t>(v - base));
        }
        lines.push_back(std::move(l));
      }
      auto report = validate_plane(ProjectivePlane(c.order, std::move(lines)));
      std::cout << to_json(report).dump(2) << '\n';
      return report.ok() ? 0 : kExitValidation;
    } else if (*dual) {
      auto plane = plane_from(c);
      auto d = dual_plane(*plane);
      emit(c.out, [&](std::ostream& o) { write_plane(o, d); });
    } else if (*darc) {
      auto plane = plane_from(c);
      Arc arc = c.hyperoval == "regular" ? resolve_hyperoval(plane, "regular")
                                         : [&] {
                                             auto in = open_in(c.hyperoval);
                                             return load_arc(in, plane, k, base_opt(c));
                                           }();
      auto d = dual_arc(arc);
      emit(c.out, [&](std::ostream& o) { write_arc(o, d); });
    } else if (*extract) {
      auto plane = plane_from(c);
      auto in = open_in(arc_path);
      auto arc = load_arc(in, plane, k, base_opt(c));
      auto d = extract_design(arc);
      emit(c.out, [&](std::ostream& o) { write_design(o, d); });
    } else if (*rank) {
      auto d = design_from(design_path);
      auto m = incidence_matrix(d);
      json j{{"rows", m.rows()}, {"cols", m.cols()}, {"rank2", rank2(m)}};
      if (t_conj) {
        auto rep = check_rank_conjecture(d, t_conj);
        j["conjecture"] = {{"t", rep.t}, {"bound", rep.bound}, {"holds", rep.holds()}, {"equality", rep.equality()}};
      }
      std::cout << j.dump(2) << '\n';
    } else if (*cls) {
      auto d = design_from(design_path);
      auto classes = parallel_classes(d, {c.jobs});
      emit(c.out, [&](std::ostream& o) { o << classes_to_json(classes).dump() << '\n'; });
    } else if (*res) {
      auto d = design_from(design_path);
      auto classes = classes_for(d, classes_path, c.jobs);
      auto r = resolutions(d, classes, {c.jobs});
      emit(c.out, [&](std::ostream& o) { o << resolutions_to_json(r).dump() << '\n'; });
    } else if (*comp) {
      auto d = design_from(design_path);
      auto classes = classes_for(d, classes_path, c.jobs);
      auto r = resolutions_for(d, classes, res_path, c.jobs);
      auto sets = max_compatible_sets(d, classes, r, {c.jobs});
      emit(c.out, [&](std::ostream& o) { o << compatible_sets_to_json(sets).dump() << '\n'; });
    } else if (*emb) {
      auto d = design_from(design_path);
      auto classes = classes_for(d, classes_path, c.jobs);
      auto r = resolutions_for(d, classes, res_path, c.jobs);
      auto sets = sets_path.empty() ? max_compatible_sets(d, classes, r, {c.jobs})
                                    : compatible_sets_from_json(json_from(sets_path), r.size());
      if (set_index >= sets.size())
        throw ParameterError("no compatible set with index " + std::to_string(set_index) + " (" +
                             std::to_string(sets.size()) + " available)");
      auto e = embed(d, sets[set_index], r, classes);
      emit(c.out, [&](std::ostream& o) { write_plane(o, e.plane); });
    } else if (*pipe) {
      auto plane = plane_from(c);
      auto oval = c.hyperoval == "regular" ? resolve_hyperoval(plane, "regular")
                                           : resolve_hyperoval(plane, data_path(c.hyperoval).string(), base_opt(c));
      auto result = run_pipeline(oval, {id, c.jobs});
      write_pipeline_outputs(c.out, result);
      std::cout << to_json(result.row).dump(2) << '\n';
    } else if (*batch) {
      auto in = open_in(manifest);
      auto rows = read_manifest(in);
      BatchOptions opt;
      opt.jobs = std::max(1u, c.jobs);
      opt.order = c.order;
      if (const char* dir = std::getenv("ARCRES_DATA_DIR")) opt.data_dir = dir;
      opt.index_base = base_opt(c);
      auto results = run_batch(rows, c.out, opt);
      fs::create_directories(c.out);
      {
        std::ofstream j(fs::path(c.out) / "table.json");
        write_table_json(j, results);
        std::ofstream v(fs::path(c.out) / "table.csv");
        write_table_csv(v, results);
      }
      if (c.format == "csv")
        write_table_csv(std::cout, results);
      else
        write_table_json(std::cout, results);
      for (const auto& r : results)
        if (!r.error.empty()) std::cerr << "row " << r.input.hyperoval_id << " " << r.input.plane_label << ": " << r.error << '\n';
    } else if (*hist) {
      auto in = open_in(report_path);
      auto h = rank_histogram(read_table(in));
      if (c.format == "csv") {
        std::cout << "rank2,frequency\n";
        for (const auto& [r, n] : h) std::cout << r << ',' << n << '\n';
      } else {
        json j = json::object();
        for (const auto& [r, n] : h) j[std::to_string(r)] = n;
        std::cout << j.dump(2) << '\n';
      }
    }
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.validation() ? kExitValidation : kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
