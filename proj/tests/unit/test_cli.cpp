#include "doctest.h"

#include "oversamp/cli.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

using namespace oversamp;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(OVERSAMP_DATA_DIR "/") + name; }

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("oversamp_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  std::string write(const std::string& name, const json& doc) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << doc.dump();
    return p.string();
  }

 private:
  fs::path path_;
};

json bspline(int order, int r, int s, json options = json::object()) {
  return json{{"specVersion", 1},
              {"generator", {{"kind", "bspline"}, {"order", order}}},
              {"system", {{"kind", "identity"}}},
              {"r", r},
              {"s", s},
              {"options", std::move(options)}};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze") {
    const auto ok = run({"analyze", data("bspline3_r4_s5.json")});
    CHECK(ok.code == kExitOk);
    const json rep = json::parse(ok.out);
    CHECK(rep.at("exists") == true);

    const auto bad = run({"analyze", data("invalid_s_le_r.json")});
    CHECK(bad.code == kExitInputError);
    CHECK_FALSE(bad.err.empty());
    CHECK(bad.out.empty());

    CHECK(run({"analyze", data("zigzag_r2_s3.json")}).code == kExitNoInverse);
    CHECK(run({"analyze", data("does_not_exist.json")}).code == kExitInputError);
    CHECK(run({"analyze"}).code == kExitInputError);
    CHECK(run({}).code == kExitInputError);
    CHECK(run({"frobnicate", data("bspline3_r4_s5.json")}).code == kExitInputError);

    TempDir tmp;
    std::ofstream(tmp.path() / "garbage.json") << "{ not json";
    CHECK(run({"analyze", (tmp.path() / "garbage.json").string()}).code == kExitInputError);
    CHECK(run({"analyze", tmp.write("v2.json", [] {
                 auto d = bspline(3, 4, 5);
                 d["specVersion"] = 2;
                 return d;
               }())})
              .code == kExitInputError);
  }

  TEST_CASE("ambiguous rank decisions exit with 4") {
    TempDir tmp;
    const auto r = run({"analyze", tmp.write("high.json", bspline(7, 7, 8))});
    CHECK(r.code == kExitRankAmbiguous);
    CHECK(r.err.find("threshold") != std::string::npos);
  }

  TEST_CASE("solve") {
    TempDir tmp;
    const fs::path dir = tmp.path() / "out";
    const auto r = run({"solve", data("bspline3_r4_s5.json"), "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const json inv = json::parse(slurp(dir / "leftinverse.json"));
    CHECK(inv.at("nu") == 1);
    CHECK(inv.at("residualNorm").get<double>() < 1e-10);

    std::istringstream csv(slurp(dir / "filters.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "channel,exponent,coefficient");
    int rows = 0;
    std::set<int> channels;
    while (std::getline(csv, line)) {
      if (line.empty()) continue;
      ++rows;
      channels.insert(std::stoi(line.substr(0, line.find(','))));
    }
    CHECK(rows > 0);
    CHECK(channels == std::set<int>{1, 2, 3, 4, 5});

    const fs::path none = tmp.path() / "none";
    CHECK(run({"solve", data("zigzag_r2_s3.json"), "--out", none.string()}).code == kExitNoInverse);
    CHECK_FALSE(fs::exists(none));

    CHECK(run({"solve", data("bspline3_r4_s5.json"), "--out", "/proc/nope"}).code == kExitInputError);
    CHECK(run({"solve", data("bspline3_r4_s5.json")}).code == kExitInputError);
  }

  TEST_CASE("degree cap exits with 5") {
    TempDir tmp;
    json d = json::parse(slurp(data("bspline4_shift_r5_s6.json")));
    d["options"]["nuMax"] = 1;
    const auto capped = run({"solve", tmp.write("capped.json", d), "--out", (tmp.path() / "o").string()});
    CHECK(capped.code == kExitDegreeCap);
    d["options"]["nuMax"] = 2;
    CHECK(run({"solve", tmp.write("enough.json", d), "--out", (tmp.path() / "o").string()}).code == kExitOk);
  }

  TEST_CASE("verify and scan") {
    const auto v = run({"verify", data("bspline3_r4_s5.json"), "--trials", "50"});
    CHECK(v.code == kExitOk);
    const json rep = json::parse(v.out);
    CHECK(rep.at("maxError").get<double>() < 1e-8);
    CHECK(rep.at("perTrial").size() == 50);

    const auto empty = run({"verify", data("bspline3_r4_s5.json"), "--trials", "0"});
    CHECK(empty.code == kExitOk);
    CHECK(json::parse(empty.out).at("perTrial").empty());

    CHECK(run({"verify", data("bspline3_r4_s5.json"), "--trials", "-1"}).code == kExitInputError);
    CHECK(run({"verify", data("zigzag_r2_s3.json"), "--trials", "3"}).code == kExitNoInverse);

    // Exact inverse, but filter coefficients near 1e16 defeat double evaluation.
    TempDir tmp;
    const auto poor = run({"verify", tmp.write("order6.json", bspline(6, 6, 7)), "--trials", "3"});
    CHECK(poor.code == kExitVerifyFailed);
    CHECK(json::parse(poor.out).at("passed") == false);

    const auto s = run({"scan", data("bspline3_r4_s5.json")});
    CHECK(s.code == kExitOk);
    const json scan = json::parse(s.out);
    CHECK(scan.at("alphaHat").get<double>() > 0.0);
    CHECK(scan.at("minRank") == 4);
    CHECK(run({"scan", data("zigzag_r2_s3.json")}).code == kExitOk);
  }

  TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"analyze", data("bspline3_r4_s5.json")},
             {"analyze", data("bspline4_shift_r5_s6.json")},
             {"verify", data("bspline3_r3_s4.json"), "--trials", "5"},
             {"scan", data("bspline3_r4_s5.json")}}) {
      CHECK(run(args).out == run(args).out);
    }
    TempDir tmp;
    run({"solve", data("bspline3_r4_s5.json"), "--out", (tmp.path() / "a").string()});
    run({"solve", data("bspline3_r4_s5.json"), "--out", (tmp.path() / "b").string()});
    for (const char* f : {"leftinverse.json", "filters.csv"}) {
      CHECK(slurp(tmp.path() / "a" / f) == slurp(tmp.path() / "b" / f));
    }
  }
}
