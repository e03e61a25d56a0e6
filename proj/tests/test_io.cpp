#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "serwalk/generators.hpp"
#include "serwalk/io.hpp"

using namespace serwalk;

TEST_CASE("csv header and exact values") {
  std::ostringstream os;
  write_csv(gen_two_lines(1), os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "index,phase,coord_0,coord_1");
  std::getline(is, line);
  CHECK(line == "1,1,0.5,0");
  std::getline(is, line);
  CHECK(line == "2,1,1,0");
}

TEST_CASE("csv round trip") {
  for (const Walk& w : {gen_two_lines(4), gen_halflines(cantor_left_endpoints(4), 3)}) {
    std::ostringstream os;
    write_csv(w, os);
    std::istringstream is(os.str());
    const Walk r = read_csv(is);
    CHECK(r.mode() == w.mode());
    CHECK(r.phase_ends() == w.phase_ends());
    REQUIRE(r.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(r.at(i) == w.at(i));
  }
}

TEST_CASE("jsonl traces") {
  const Walk w = gen_c0_two_point(3);
  std::ostringstream os;
  write_jsonl(w, os);
  std::istringstream lines(os.str());
  std::string first;
  std::getline(lines, first);
  const auto j = nlohmann::json::parse(first);
  CHECK(j["index"] == 1);
  CHECK(j["entries"].size() == 1);
  CHECK(j["entries"]["2"] == 1);

  std::istringstream is(os.str());
  const Walk r = read_jsonl(is);
  REQUIRE(r.size() == w.size());
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(r.sparse_at(i) == w.sparse_at(i));
  CHECK(r.phase_ends() == w.phase_ends());
}

TEST_CASE("malformed input") {
  std::istringstream bad("index,phase,coord_0\n1,1,abc\n");
  CHECK_THROWS_AS(read_csv(bad), InvalidArgument);
  std::istringstream header("i,p,x\n");
  CHECK_THROWS_AS(read_csv(header), InvalidArgument);
  std::istringstream js("{\"index\":1,\"entries\":{\"x\":1}}\n");
  CHECK_THROWS_AS(read_jsonl(js), InvalidArgument);
  CHECK_THROWS_AS(read_trace("/nonexistent/trace.csv"), InvalidArgument);
}

TEST_CASE("trace files by extension") {
  const auto dir = std::filesystem::temp_directory_path() / "serwalk_io_test";
  std::filesystem::create_directories(dir);
  const Walk w = gen_two_lines(2);
  write_trace(w, (dir / "w.csv").string());
  CHECK(read_trace((dir / "w.csv").string()).size() == w.size());
  const Walk c = gen_c0_singleton_divergent(3);
  write_trace(c, (dir / "c.jsonl").string());
  CHECK(read_trace((dir / "c.jsonl").string()).size() == c.size());

  std::ofstream(dir / "s.json") << R"({"points":[[0,0],[1,0.5]]})";
  const PointSample s = read_sample((dir / "s.json").string());
  REQUIRE(s.size() == 2);
  CHECK(s.point(1)[1].to_double() == 0.5);
  std::filesystem::remove_all(dir);
}

TEST_CASE("family and instance json") {
  const VectorFamily f = gen_vector_family(2);
  const std::string text = family_json(f);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["k"] == 2);
  CHECK(j["dim"] == 6);
  CHECK(j["vectors"].size() == 4);
  CHECK(j["vectors"][0].size() == 6);
  const VectorFamily g = family_from_json(text);
  CHECK(g.vectors == f.vectors);

  const auto block = no_rp_block(1);
  NormKind kind = NormKind::euclidean;
  const auto back = instance_from_json(instance_json(block, NormKind::sup), &kind);
  CHECK(kind == NormKind::sup);
  CHECK(back == block);
}

TEST_CASE("estimate report") {
  const Walk w = gen_two_lines(4);
  const LimitEstimate est = estimate_limit_set(w, 0.3, 0.1);
  const auto j = nlohmann::json::parse(estimate_report_json(est, {{{"dichotomy", "all-components-escape"}}}));
  CHECK(j["resolution"] == 0.1);
  CHECK(j["window"][0] == est.window_start + 1);
  CHECK(j["window"][1] == est.window_end);
  CHECK(j["points"].size() == est.points.size());
  CHECK(j["hit_counts"].size() == est.points.size());
  CHECK(j["verdicts"]["dichotomy"] == "all-components-escape");
}

TEST_CASE("svg plots") {
  const std::string svg = render_svg(gen_two_lines(3));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("class=\"phase-3\"") != std::string::npos);
  CHECK(svg.find(">1/2<") != std::string::npos);
  CHECK(svg.find(">2<") != std::string::npos);

  const std::string hl = render_svg(gen_halflines({0.0, 1.0, 2.0}, 2));
  CHECK(hl.find("class=\"phase-2\"") != std::string::npos);

  CHECK_THROWS_WITH_AS(render_svg(Walk::dense(2, Mode::exact)), "empty trace", InvalidArgument);
  CHECK_THROWS_AS(render_svg(gen_c0_two_point(1)), InvalidArgument);
}
