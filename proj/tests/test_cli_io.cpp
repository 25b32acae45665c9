#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "simplicial/errors.hpp"
#include "simplicial/io.hpp"
#include "simplicial/orientation.hpp"
#include "simplicial/report.hpp"
#include "support.hpp"

using namespace simplicial;
using testing::corpus;
namespace fs = std::filesystem;

namespace {

SimplicialComplex parse(const std::string& text) {
  std::istringstream in(text);
  return parse_facets(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("no parse error for: " << text);
  return 0;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "simplicial_tests";
  fs::create_directories(dir);
  return dir / name;
}

Request request(const std::string& command, const std::string& complex) {
  Request r;
  r.command = command;
  r.complex_path = std::string(SIMPLICIAL_DATA_DIR) + "/" + complex + ".fct";
  return r;
}

}  // namespace

TEST_CASE("parse the tetrahedron boundary") {
  auto k = parse("0 1 2\n0 1 3\n0 2 3\n1 2 3");
  CHECK(k == corpus("sphere"));
}

TEST_CASE("comments, blank lines and CRLF") {
  auto k = parse("# header\r\n\r\n0 1 2  # trailing\r\n   \n2 3\r\n");
  CHECK(k.top_dim() == 2);
  CHECK(k.count(1) == 4);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("# only a comment\n# another\n") == 0);
  CHECK(parse_error_line("") == 0);
  CHECK(parse_error_line("0 0 1\n") == 1);
  CHECK(parse_error_line("0 1\n\n1 x\n") == 3);
  CHECK(parse_error_line("0 1\n-2 3\n") == 2);
  CHECK(parse_error_line("0 1.5\n") == 1);
  try {
    parse("0 1\n0 0\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_complex(scratch("does_not_exist.fct")), PreconditionError);
}

TEST_CASE("round trip") {
  std::vector<SimplicialComplex> cases;
  for (const auto& name : testing::corpus_names()) cases.push_back(corpus(name));
  cases.push_back(extend_closing_boundary(corpus("mobius5")).complex);
  cases.push_back(testing::facets({{100, 7}, {7, 8, 9}, {42}}));
  for (const auto& k : cases) {
    auto path = scratch("roundtrip.fct");
    save_complex(path, k);
    CHECK(load_complex(path) == k);
    std::ostringstream out;
    write_facets(out, k);
    CHECK(parse(out.str()) == k);
  }
}

TEST_CASE("report has the stable top-level keys") {
  for (const auto& cmd : known_commands()) {
    auto req = request(cmd, "sphere");
    req.chains = 200;
    req.steps = 10;
    auto out = run(req);
    INFO(cmd);
    for (const char* key : {"command", "complex", "betti", "spectra", "signed", "orientable", "walks", "warnings"})
      CHECK(out.report.contains(key));
    CHECK(out.exit_code == kExitOk);
  }
}

TEST_CASE("betti and orientability commands") {
  auto b = run(request("betti", "sphere"));
  CHECK(b.report["betti"]["values"] == nlohmann::json::array({1, 0, 1}));

  auto o = run(request("orientable", "mobius5"));
  CHECK(o.exit_code == kExitOk);
  CHECK(o.report["orientable"]["holds"] == false);
  CHECK(o.report["orientable"]["certificate"].size() >= 2);

  auto d = run(request("disorientable", "path3"));
  CHECK(d.report["orientable"]["disorientable"]["holds"] == true);
}

TEST_CASE("walk-graph command") {
  auto req = request("walk-graph", "sphere");
  req.laziness = 0.5;
  req.steps = 100;
  auto out = run(req);
  CHECK(out.exit_code == kExitOk);
  const auto& w = out.report["walks"];
  CHECK(w["identity"]["pass"] == true);
  CHECK(w["identity"]["residual"].get<double>() <= 1e-12);
  for (const auto& v : w["stationary"]["projection"]["values"]) CHECK(v.get<double>() == doctest::Approx(0.25));

  auto rp2 = run(request("walk-graph", "rp2_6"));
  CHECK(rp2.exit_code == kExitPrecondition);
  CHECK(rp2.report["walks"]["certificate"].size() >= 2);

  auto disk = run(request("walk-graph", "filled_triangle"));
  CHECK(disk.exit_code == kExitOk);
  CHECK(disk.report["walks"]["extended"] == true);
  CHECK(disk.report["walks"].contains("restricted"));
}

TEST_CASE("failures map to exit codes") {
  auto missing = run(request("betti", "nope"));
  CHECK(missing.exit_code == kExitPrecondition);
  CHECK_FALSE(missing.diagnostic.empty());

  auto unknown = run(request("frobnicate", "sphere"));
  CHECK(unknown.exit_code == kExitPrecondition);

  auto bad_start = request("walk-up", "sphere");
  bad_start.start = "+[0,9]";
  CHECK(run(bad_start).exit_code == kExitPrecondition);

  auto verify = run(request("verify-identities", "torus7"));
  CHECK(verify.exit_code == kExitOk);
}

TEST_CASE("reports are reproducible") {
  for (const char* cmd : {"montecarlo", "converge", "walk-down", "spectrum"}) {
    auto req = request(cmd, "torus7");
    req.chains = 3000;
    req.steps = 20;
    req.seed = 5;
    req.walk = "down";
    const auto a = render(run(req), req);
    const auto b = render(run(req), req);
    CHECK(a == b);
  }
  auto req = request("montecarlo", "sphere");
  req.chains = 3000;
  req.workers = 1;
  auto seq = run(req).report;
  req.workers = 3;
  CHECK(run(req).report == seq);
}

TEST_CASE("output formats") {
  auto req = request("converge", "sphere");
  req.walk = "graph";
  req.steps = 3;
  req.format = OutputFormat::csv;
  const auto csv = render(run(req), req);
  CHECK(csv.rfind("t,distance,bound\n0,", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 5);

  auto text_req = request("orientable", "sphere");
  text_req.format = OutputFormat::text;
  CHECK(render(run(text_req), text_req).find("orientable.holds: true") != std::string::npos);

  auto json_req = request("betti", "torus7");
  auto parsed = nlohmann::json::parse(render(run(json_req), json_req));
  CHECK(parsed["betti"]["values"] == nlohmann::json::array({1, 2, 1}));
}
