#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "banachlab/cli.hpp"
#include "banachlab/report.hpp"
#include "doctest.h"

using banachlab::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("banachlab_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = (path_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double first_number(const std::string& s) { return std::stod(s.substr(0, s.find('\n'))); }

}  // namespace

TEST_CASE("norm subcommand") {
  const auto r = call({"norm", "--space", "s:log2p1", "--vec", "1,1"});
  CHECK(r.code == 0);
  CHECK(first_number(r.out) == doctest::Approx(1.261860).epsilon(1e-6));
  CHECK(call({"norm", "--space", "s:log2p1", "--vec", ""}).code == 2);
  CHECK(call({"norm", "--space", "q3", "--vec", "1"}).code == 2);
  CHECK(call({"norm", "--space", "l0.5", "--vec", "1"}).code == 2);
  const auto cert = call({"norm", "--space", "s", "--vec", "1,1", "--cert"});
  CHECK(cert.out.find("split n=2") != std::string::npos);
  CHECK(call({"norm", "--space", "l2", "--vec", "1", "--cert"}).code == 2);
}

TEST_CASE("calderon and dual subcommands") {
  const auto c = call({"calderon", "--x", "l1", "--y", "linf", "--theta", "0.5", "--vec", "1,1"});
  CHECK(c.code == 0);
  CHECK(first_number(c.out) == doctest::Approx(1.414214).epsilon(1e-6));
  const auto w = call({"calderon", "--x", "l1", "--y", "linf", "--theta", "0.5", "--vec", "1,1", "--witness"});
  CHECK(w.out.find("\nx ") != std::string::npos);
  CHECK(call({"calderon", "--x", "l1", "--y", "linf", "--theta", "1.5", "--vec", "1"}).code == 2);
  const auto d = call({"dual", "--space", "s", "--vec", "1,1", "--maximizer", "--bracket"});
  CHECK(d.code == 0);
  CHECK(first_number(d.out) == doctest::Approx(1.584963).epsilon(1e-6));
  CHECK(d.out.find("bracket") != std::string::npos);
}

TEST_CASE("error exit codes") {
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
  std::string big;
  for (int i = 0; i < 70; ++i) big += (i ? "," : "") + std::to_string(1.0 + i / 100.0);
  CHECK(call({"norm", "--space", "s", "--vec", big}).code == 4);
  CHECK(call({"norm", "--space", "s", "--vec", big, "--cap", "80"}).code == 0);
  const auto conv = call({"calderon", "--x", "l2", "--y", "s", "--theta", "0.5", "--vec", "1,2,3,4,5", "--budget", "1"});
  CHECK(conv.code == 3);
  CHECK(conv.err.find("bracket") != std::string::npos);
  CHECK(call({"experiment", "summing", "--config", "/nonexistent/config.json"}).code == 5);
}

TEST_CASE("gauge-check subcommand") {
  const auto log = call({"gauge-check", "--gauge", "log2p1", "--decay", "0.1"});
  CHECK(log.code == 0);
  const auto rep = banachlab::parse_csv(log.out);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.number(i, "passed") == 1.0);
  const auto sq = banachlab::parse_csv(call({"gauge-check", "--gauge", "sqrt", "--decay", "0.25"}).out);
  CHECK(sq.number(0, "passed") == 1.0);
  CHECK(sq.number(3, "passed") == 0.0);
  const auto lin = banachlab::parse_csv(call({"gauge-check", "--gauge", "pow:1"}).out);
  CHECK(lin.number(0, "passed") == 0.0);
}

TEST_CASE("experiments through config files") {
  TempDir dir;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"summing", R"({"space": "s", "n_max": 3})"},
      {"block-growth", R"({"space": "s", "m": 4, "count": 3})"},
      {"vn", R"({"space": "s", "n_max": 3})"},
      {"beta", R"({"space": "s", "n_max": 3, "budget": 5, "seed": 2})"},
      {"projection", R"({"space": "s", "m": 2, "count": 3, "samples": 20, "seed": 2})"},
      {"distortion", R"({"gamma": ["1,1,1,1"], "r": 4, "z": ["1:1", "2:1", "3:1", "4:1"]})"},
      {"moduli", R"({"space": "l2", "samples": 300, "refine_steps": 50, "seed": 4})"},
      {"classx", R"({"space": "s", "samples": 40, "seed": 4})"},
  };
  for (const auto& [name, config] : cases) {
    CAPTURE(name);
    const auto path = dir.write(name + ".json", config);
    const auto r = call({"experiment", name, "--config", path});
    CHECK(r.code == 0);
    CHECK(!r.out.empty());
    const auto json = call({"experiment", name, "--config", path, "--format", "json"});
    const auto report = banachlab::parse_json(json.out);
    CHECK(report.metadata.contains("seed"));
    CHECK(report.metadata.contains("tolerances"));
    CHECK(banachlab::to_csv(report) == r.out);
  }

  const auto summing = call({"experiment", "summing", "--config", dir.file("summing.json")});
  CHECK(std::count(summing.out.begin(), summing.out.end(), '\n') == 4);
  const auto dist = banachlab::parse_csv(call({"experiment", "distortion", "--config", dir.file("distortion.json")}).out);
  CHECK(dist.number(0, "plus") == 16.0);
  CHECK(dist.number(0, "minus") == 2.0);
  CHECK(dist.number(0, "ratio") == 8.0);

  const auto vn = call({"experiment", "vn", "--config", dir.file("vn.json"), "--format", "plotdata"});
  CHECK(vn.out.rfind("# n norm", 0) == 0);
  const auto plot = banachlab::parse_plotdata(vn.out);
  CHECK(plot.number(3, "norm") == doctest::Approx(1 / std::log2(9.0)).epsilon(1e-11));

  const auto out_path = dir.file("out.csv");
  CHECK(call({"experiment", "summing", "--config", dir.file("summing.json"), "--out", out_path}).code == 0);
  CHECK(slurp(out_path) == summing.out);

  CHECK(call({"experiment", "summing", "--config", dir.write("bad.json", "{ nope")}).code == 2);
  CHECK(call({"experiment", "summing", "--config", dir.write("neg.json", R"({"n_max": -2})")}).code == 2);
  CHECK(call({"experiment", "classx", "--config", dir.write("pr.json", R"({"p": 3, "r": 2})")}).code == 2);
  CHECK(call({"experiment", "vn", "--config", dir.write("vnshort.json", R"({"n_max": 3, "count": 10})")}).code == 2);
  CHECK(call({"experiment", "nope", "--config", dir.file("summing.json")}).code == 2);
}

TEST_CASE("same seed gives byte-identical csv") {
  TempDir dir;
  const auto path = dir.write("c.json", R"({"space": "spr:1.5:3:log2p1", "p": 1.5, "r": 3, "samples": 60, "seed": 11})");
  setenv("BANACHLAB_THREADS", "1", 1);
  const auto a = call({"experiment", "classx", "--config", path});
  setenv("BANACHLAB_THREADS", "3", 1);
  const auto b = call({"experiment", "classx", "--config", path});
  unsetenv("BANACHLAB_THREADS");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("installed binary exit status") {
  const std::string bin = BANACHLAB_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("norm --space s:log2p1 --vec 1,1") == 0);
  CHECK(status("norm --space s:log2p1 --vec ''") == 2);
  CHECK(status("frobnicate") == 2);
}
