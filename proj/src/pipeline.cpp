#include "arcres/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "arcres/serialize.hpp"

namespace arcres {

namespace fs = std::filesystem;

namespace {

class StageClock {
 public:
  explicit StageClock(ReportRow& row) : row_(row) {}

  template <class F>
  auto run(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        record(stage, t0);
      } else {
        auto r = f();
        record(stage, t0);
        return r;
      }
    } catch (const ValidationError& e) {
      throw StageError(stage, e.what(), true);
    } catch (const ParameterError& e) {
      throw StageError(stage, e.what(), true);
    } catch (const ParseError& e) {
      throw StageError(stage, e.what(), false);
    }
  }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    row_.timings.emplace_back(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  ReportRow& row_;
};

std::optional<unsigned> log2_exact(std::uint32_t q) {
  if (q < 2 || !std::has_single_bit(q)) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(q));
}

}  // namespace

std::optional<ProjectivePlane> attach_pg2_coordinates(const ProjectivePlane& plane) {
  auto t = log2_exact(plane.order());
  if (!t || *t > 6) return std::nullopt;
  auto pg = build_pg2(std::make_shared<const Field>(Field::with_default_modulus(*t)));
  if (!pg.same_incidence(plane)) return std::nullopt;
  ProjectivePlane out = plane;
  out.set_coordinates(*pg.coordinates());
  return out;
}

Arc resolve_hyperoval(std::shared_ptr<const ProjectivePlane> plane, const std::string& spec,
                      std::optional<std::uint32_t> index_base) {
  if (spec == "regular") {
    if (!plane->coordinates()) {
      auto with = attach_pg2_coordinates(*plane);
      if (!with)
        throw ParameterError("coordinates required: 'regular' needs the canonical PG(2,q) (see build-pg)");
      plane = std::make_shared<const ProjectivePlane>(std::move(*with));
    }
    return regular_hyperoval(std::move(plane));
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open hyperoval file " + spec);
  return load_arc(in, std::move(plane), 2, index_base);
}

PipelineResult run_pipeline(const Arc& hyperoval, const PipelineOptions& opt) {
  ReportRow row;
  row.hyperoval_id = opt.hyperoval_id;
  row.plane_label = hyperoval.plane->label();
  StageClock clock(row);
  const SearchOptions search{opt.jobs};

  Arc arc = clock.run("dual-arc", [&] { return dual_arc(hyperoval); });
  Design design = clock.run("extract", [&] { return extract_design(arc); });

  clock.run("rank2", [&] {
    row.rank2 = rank2(incidence_matrix(design));
    if (auto t = log2_exact(hyperoval.plane->order()); t && *t >= 2) {
      try {
        row.rank_bound = check_rank_conjecture(design, *t).bound;
      } catch (const ParameterError&) {
      }
    }
  });

  auto classes = clock.run("classes", [&] { return parallel_classes(design, search); });
  row.n_parallel_classes = classes.size();
  auto res = clock.run("resolutions", [&] { return resolutions(design, classes, search); });
  row.n_resolutions = res.size();
  auto sets = clock.run("compatible", [&] { return max_compatible_sets(design, classes, res, search); });
  row.n_max_compatible_sets = sets.size();

  std::optional<Embedding> embedding;
  if (!sets.empty() && design.params().s && *design.params().s > 1) {
    clock.run("embed", [&] {
      try {
        embedding = embed(design, sets.front(), res, classes);
        auto plane = std::make_shared<const ProjectivePlane>(embedding->plane);
        auto back = extract_design(make_arc(plane, embedding->arc_points, design.params().k));
        row.embed_valid = back.blocks() == design.blocks();
      } catch (const ValidationError&) {
        row.embed_valid = false;
      }
    });
  }

  return PipelineResult{hyperoval,          std::move(arc),  std::move(design), std::move(classes),
                        std::move(res),     std::move(sets), std::move(embedding), std::move(row)};
}

namespace {

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ParseError("cannot write " + p.string());
  out << content;
  if (!out) throw ParseError("write failed for " + p.string());
}

template <class F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

}  // namespace

void write_pipeline_outputs(const fs::path& dir, const PipelineResult& r) {
  fs::create_directories(dir);
  write_file(dir / "hyperoval.txt", render([&](std::ostream& o) { write_arc(o, r.hyperoval); }));
  write_file(dir / "dual_plane.txt", render([&](std::ostream& o) { write_plane(o, *r.arc.plane); }));
  write_file(dir / "dual_arc.txt", render([&](std::ostream& o) { write_arc(o, r.arc); }));
  write_file(dir / "design.txt", render([&](std::ostream& o) { write_design(o, r.design); }));
  write_file(dir / "classes.json", classes_to_json(r.classes).dump() + "\n");
  write_file(dir / "resolutions.json", resolutions_to_json(r.resolutions).dump() + "\n");
  write_file(dir / "compatible_sets.json", compatible_sets_to_json(r.compatible_sets).dump() + "\n");
  if (r.embedding)
    write_file(dir / "embedded_plane.txt", render([&](std::ostream& o) { write_plane(o, r.embedding->plane); }));
  write_file(dir / "report.json", to_json(r.row, false).dump(2) + "\n");
  json t = json::object();
  for (const auto& [stage, secs] : r.row.timings) t[stage] = secs;
  write_file(dir / "timings.json", t.dump(2) + "\n");
}

std::map<std::size_t, std::size_t> rank_histogram(const std::vector<ReportRow>& rows) {
  std::map<std::size_t, std::size_t> h;
  for (const auto& r : rows) ++h[r.rank2];
  return h;
}

// ---- batch ------------------------------------------------------------------

namespace {

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (trim(cur).empty()) cur.clear();
      quoted = was_quoted = true;
    } else if (c == ',') {
      out.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  out.push_back(was_quoted ? cur : trim(cur));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// FNV-1a, 64-bit.
struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ull;
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    h ^= 0xff;  // field separator
    h *= 0x100000001b3ull;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path locate(const std::string& path, const fs::path& data_dir) {
  fs::path p(path);
  if (p.is_relative() && !data_dir.empty() && !fs::exists(p)) return data_dir / p;
  return p;
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
  return out;
}

}  // namespace

std::vector<ManifestRow> read_manifest(std::istream& in) {
  std::vector<ManifestRow> rows;
  std::string line;
  std::vector<std::string> header;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto cells = split_csv(line);
    if (header.empty()) {
      header = cells;
      const std::vector<std::string> want{"hyperoval_id", "plane_label", "plane_path", "hyperoval_path"};
      if (header != want)
        throw ParseError("row " + std::to_string(lineno) +
                         ": manifest header must be hyperoval_id,plane_label,plane_path,hyperoval_path");
      continue;
    }
    if (cells.size() != 4)
      throw ParseError("row " + std::to_string(lineno) + ": expected 4 columns, found " + std::to_string(cells.size()));
    rows.push_back({cells[0], cells[1], cells[2], cells[3]});
  }
  return rows;
}

std::vector<BatchRow> run_batch(const std::vector<ManifestRow>& manifest, const fs::path& out_dir,
                                const BatchOptions& opt) {
  std::vector<BatchRow> results(manifest.size());
  std::atomic<std::size_t> next{0};

  auto process = [&](std::size_t i) {
    BatchRow& br = results[i];
    br.input = manifest[i];
    const auto& m = manifest[i];
    try {
      const fs::path plane_path = locate(m.plane_path, opt.data_dir);
      const std::string plane_text = slurp(plane_path);
      std::string oval_text = "regular";
      fs::path oval_path;
      if (m.hyperoval_path != "regular") {
        oval_path = locate(m.hyperoval_path, opt.data_dir);
        oval_text = slurp(oval_path);
      }
      Fnv h;
      for (std::string_view s : {std::string_view(m.hyperoval_id), std::string_view(m.plane_label),
                                 std::string_view(plane_text), std::string_view(oval_text)})
        h.add(s);
      h.add(std::to_string(opt.order));
      std::ostringstream key;
      key << safe_name(m.plane_label) << '_' << safe_name(m.hyperoval_id) << '_' << std::hex << std::setw(16)
          << std::setfill('0') << h.h;
      const fs::path row_dir = out_dir / "rows" / key.str();
      const fs::path row_file = row_dir / "row.json";

      if (fs::exists(row_file)) {
        br.report = report_row_from_json(json::parse(slurp(row_file)));
        br.resumed = true;
        return;
      }

      std::istringstream plane_in(plane_text);
      auto plane = std::make_shared<const ProjectivePlane>(load_plane(plane_in, opt.order, m.plane_label));
      Arc oval = resolve_hyperoval(plane, m.hyperoval_path == "regular" ? "regular" : oval_path.string(),
                                   opt.index_base);
      PipelineOptions popt;
      popt.hyperoval_id = m.hyperoval_id;
      popt.jobs = 1;
      auto result = run_pipeline(oval, popt);
      result.row.plane_label = m.plane_label;
      write_pipeline_outputs(row_dir, result);
      // row.json last: its presence marks the row complete.
      write_file(row_file, to_json(result.row).dump(2) + "\n");
      br.report = std::move(result.row);
    } catch (const std::exception& e) {
      br.error = e.what();
    }
  };

  const unsigned jobs = std::max(1u, opt.jobs);
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < manifest.size(); i = next.fetch_add(1)) process(i);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  return results;
}

void write_table_csv(std::ostream& out, const std::vector<BatchRow>& rows) {
  out << "hyperoval_id,plane_label,rank2,n_parallel_classes,n_resolutions,n_max_compatible_sets,embed_valid,error\n";
  for (const auto& r : rows) {
    out << csv_field(r.input.hyperoval_id) << ',' << csv_field(r.input.plane_label) << ',';
    if (r.report) {
      const auto& x = *r.report;
      out << x.rank2 << ',' << x.n_parallel_classes << ',' << x.n_resolutions << ',' << x.n_max_compatible_sets << ','
          << (x.embed_valid ? (*x.embed_valid ? "true" : "false") : "") << ",";
    } else {
      out << ",,,,," << csv_field(r.error);
    }
    out << '\n';
  }
}

void write_table_json(std::ostream& out, const std::vector<BatchRow>& rows) {
  json list = json::array();
  for (const auto& r : rows) {
    json j;
    if (r.report) {
      j = to_json(*r.report);
    } else {
      j = {{"hyperoval_id", r.input.hyperoval_id}, {"plane_label", r.input.plane_label}};
    }
    j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
    list.push_back(std::move(j));
  }
  out << json{{"rows", std::move(list)}}.dump(2) << '\n';
}

std::vector<ReportRow> read_table(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  const std::string text = os.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<ReportRow> rows;
  if (first == std::string::npos) return rows;

  if (text[first] == '{' || text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("report table: ") + e.what());
    }
    const json& list = j.is_array() ? j : j.at("rows");
    for (const auto& r : list) {
      if (r.contains("error") && !r["error"].is_null()) continue;
      rows.push_back(report_row_from_json(r));
    }
    return rows;
  }

  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(lines, line)) {
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (header.empty()) {
      header = cells;
      continue;
    }
    auto col = [&](const std::string& name) -> std::string {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw ParseError("report table lacks column " + name);
      auto idx = static_cast<std::size_t>(it - header.begin());
      return idx < cells.size() ? cells[idx] : std::string{};
    };
    if (col("rank2").empty()) continue;  // failed row
    ReportRow r;
    r.hyperoval_id = col("hyperoval_id");
    r.plane_label = col("plane_label");
    try {
      r.rank2 = std::stoull(col("rank2"));
      r.n_parallel_classes = std::stoull(col("n_parallel_classes"));
      r.n_resolutions = std::stoull(col("n_resolutions"));
      r.n_max_compatible_sets = std::stoull(col("n_max_compatible_sets"));
    } catch (const std::logic_error&) {
      throw ParseError("report table: malformed number in row for " + r.hyperoval_id);
    }
    const auto ev = col("embed_valid");
    if (!ev.empty()) r.embed_valid = ev == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace arcres
