#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "arcres/pipeline.hpp"
#include "arcres/serialize.hpp"
#include "fixtures.hpp"

using namespace arcres;
using fixtures::pg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("arcres_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kFixture = ARCRES_TEST_DATA_DIR "/pg2_16_lunelli_sce.arc";

}  // namespace

TEST_CASE("run_pipeline rows") {
  SUBCASE("PG(2,4)") {
    auto r = run_pipeline(regular_hyperoval(pg(2)));
    CHECK(r.row.hyperoval_id == "regular");
    CHECK(r.row.rank2 == 5);
    CHECK(r.row.n_parallel_classes == 15);
    CHECK(r.row.n_resolutions == 6);
    CHECK(r.row.n_max_compatible_sets == 1);
    CHECK(r.row.embed_valid == true);
    CHECK(r.row.rank_bound == 5u);
  }
  SUBCASE("PG(2,16) regular") {
    PipelineOptions opt;
    opt.jobs = 2;
    auto r = run_pipeline(regular_hyperoval(pg(4)), opt);
    CHECK(r.row.rank2 == 65);
    CHECK(r.row.n_parallel_classes == 221);
    CHECK(r.row.n_resolutions == 137);
    CHECK(r.row.n_max_compatible_sets == 1);
    CHECK(r.row.embed_valid == true);
    CHECK(r.row.rank_bound == 65u);
    std::vector<std::string> stages;
    for (const auto& [s, secs] : r.row.timings) {
      stages.push_back(s);
      CHECK(secs >= 0.0);
    }
    CHECK(stages == std::vector<std::string>{"dual-arc", "extract", "rank2", "classes", "resolutions", "compatible",
                                             "embed"});
  }
  SUBCASE("Fano: the dual arc is degenerate") {
    try {
      run_pipeline(regular_hyperoval(pg(1)));
      FAIL("expected a stage error");
    } catch (const StageError& e) {
      CHECK(e.stage() == "extract");
      CHECK(e.validation());
    }
  }
}

TEST_CASE("outputs are deterministic") {
  TempDir tmp;
  auto oval = regular_hyperoval(pg(4));
  PipelineOptions one, four;
  four.jobs = 4;
  write_pipeline_outputs(tmp.path / "a", run_pipeline(oval, one));
  write_pipeline_outputs(tmp.path / "b", run_pipeline(oval, four));
  for (const char* f : {"hyperoval.txt", "dual_plane.txt", "dual_arc.txt", "design.txt", "classes.json",
                        "resolutions.json", "compatible_sets.json", "embedded_plane.txt", "report.json"}) {
    INFO(f);
    const auto a = slurp(tmp.path / "a" / f);
    CHECK(!a.empty());
    CHECK(a == slurp(tmp.path / "b" / f));
  }
  CHECK(fs::exists(tmp.path / "a" / "timings.json"));

  auto j = json::parse(slurp(tmp.path / "a" / "report.json"));
  CHECK(j["rank2"] == 65);
  CHECK_FALSE(j.contains("timings"));
  CHECK(report_row_from_json(j).n_resolutions == 137);
}

TEST_CASE("attach_pg2_coordinates") {
  auto p = pg(4);
  ProjectivePlane bare(16, p->lines(), "file");
  auto with = attach_pg2_coordinates(bare);
  REQUIRE(with);
  CHECK(with->label() == "file");
  CHECK(regular_hyperoval(std::make_shared<const ProjectivePlane>(*with)).points == regular_hyperoval(p).points);

  auto lines = p->lines();
  std::swap(lines[0], lines[1]);
  CHECK_FALSE(attach_pg2_coordinates(ProjectivePlane(16, lines)));

  auto shared_bare = std::make_shared<const ProjectivePlane>(ProjectivePlane(16, lines));
  CHECK_THROWS_WITH_AS(resolve_hyperoval(shared_bare, "regular"), doctest::Contains("coordinates required"),
                       ParameterError);
  CHECK_THROWS_AS(resolve_hyperoval(p, "/nonexistent/oval.txt"), ParseError);
}

TEST_CASE("manifest parsing") {
  std::istringstream empty("hyperoval_id,plane_label,plane_path,hyperoval_path\n");
  CHECK(read_manifest(empty).empty());

  std::istringstream two(
      "hyperoval_id,plane_label,plane_path,hyperoval_path\n"
      "# comment\n"
      "regular, Desarguesian ,pg16.txt,regular\n"
      "ls,Desarguesian,\"pg16.txt\",ls.arc\n"
      "x, \"PG(2,16) \"\"a\"\"\",p.txt,regular\n");
  auto rows = read_manifest(two);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].plane_label == "Desarguesian");
  CHECK(rows[2].plane_label == "PG(2,16) \"a\"");
  CHECK(rows[2].plane_path == "p.txt");
  CHECK(rows[1].plane_path == "pg16.txt");
  CHECK(rows[1].hyperoval_path == "ls.arc");

  std::istringstream bad_header("id,plane\n");
  CHECK_THROWS_AS(read_manifest(bad_header), ParseError);
  std::istringstream short_row("hyperoval_id,plane_label,plane_path,hyperoval_path\na,b,c\n");
  CHECK_THROWS_WITH_AS(read_manifest(short_row), doctest::Contains("row 2"), ParseError);
}

TEST_CASE("batch over the two PG(2,16) rows, with resume") {
  TempDir tmp;
  {
    std::ofstream out(tmp.path / "pg16.txt");
    write_plane(out, *pg(4));
  }
  std::vector<ManifestRow> manifest{
      {"regular", "PG(2,16)", "pg16.txt", "regular"},
      {"lunelli-sce", "Desarguesian", "pg16.txt", kFixture},
      {"broken", "Desarguesian", "missing.txt", "regular"},
  };
  BatchOptions opt;
  opt.data_dir = tmp.path;
  opt.jobs = 2;
  const auto out = tmp.path / "out";

  auto first = run_batch(manifest, out, opt);
  REQUIRE(first.size() == 3);
  REQUIRE(first[0].report);
  REQUIRE(first[1].report);
  CHECK(first[0].report->n_resolutions == 137);
  CHECK(first[1].report->rank2 == 65);
  CHECK(first[1].report->n_parallel_classes == 153);
  CHECK(first[1].report->n_resolutions == 18);
  CHECK(first[1].report->n_max_compatible_sets == 1);
  CHECK_FALSE(first[2].report);
  CHECK(first[2].error.find("missing.txt") != std::string::npos);
  CHECK_FALSE(first[0].resumed);

  auto second = run_batch(manifest, out, opt);
  CHECK(second[0].resumed);
  CHECK(second[1].resumed);
  CHECK(second[1].report->n_resolutions == 18);
  CHECK(second[1].report->embed_valid == true);

  SUBCASE("table round trip") {
    std::ostringstream csv, js;
    write_table_csv(csv, second);
    write_table_json(js, second);
    for (const auto& text : {csv.str(), js.str()}) {
      std::istringstream in(text);
      auto rows = read_table(in);
      REQUIRE(rows.size() == 2);
      CHECK(rows[0].hyperoval_id == "regular");
      CHECK(rows[0].plane_label == "PG(2,16)");
      CHECK(rows[1].n_parallel_classes == 153);
      CHECK(rank_histogram(rows) == std::map<std::size_t, std::size_t>{{65, 2}});
    }
  }
  SUBCASE("changing the input invalidates the cache") {
    std::ofstream(tmp.path / "pg16.txt", std::ios::app) << "\n";
    auto third = run_batch(manifest, out, opt);
    CHECK_FALSE(third[0].resumed);
  }
}

TEST_CASE("rank histogram") {
  ReportRow a, b, c;
  a.rank2 = 65;
  b.rank2 = 65;
  c.rank2 = 94;
  CHECK(rank_histogram({a, b}) == std::map<std::size_t, std::size_t>{{65, 2}});
  CHECK(rank_histogram({c}) == std::map<std::size_t, std::size_t>{{94, 1}});
  CHECK(rank_histogram({}).empty());

  std::istringstream empty("");
  CHECK(read_table(empty).empty());
  std::istringstream bad("{ nope");
  CHECK_THROWS_AS(read_table(bad), ParseError);
}
