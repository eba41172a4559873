#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "kpart/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = kpart::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("kpart-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path only_file() const {
    fs::path found;
    for (const auto& e : fs::directory_iterator(path)) found = e.path();
    return found;
  }
};

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
  std::ofstream out(p, std::ios::trunc);
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace

TEST_CASE("stirling subcommand", "[cli]") {
  Run r = run({"--no-cache", "stirling", "14", "4"});
  CHECK(r.code == kpart::cli::kExitPass);
  CHECK(r.out == "10391745\n");
  Run j = run({"--no-cache", "--format", "json", "stirling", "14", "4"});
  CHECK(j.out.find("\"value\":\"10391745\"") != std::string::npos);
}

TEST_CASE("family size subcommand", "[cli]") {
  Run r = run({"--no-cache", "family", "hm", "--spec", R"({"n":6,"k":4,"t":1})", "--size"});
  CHECK(r.code == 0);
  CHECK(r.out == "19\n");
  Run c = run({"--no-cache", "family", "alpha", "--spec", R"({"n":7,"k":4,"t":1,"anchor":[[1],[2],[3,4]]})", "--size",
               "--check"});
  CHECK(c.code == 0);
  CHECK(c.out.find("27") != std::string::npos);
}

TEST_CASE("family membership subcommand", "[cli]") {
  Run in = run({"--no-cache", "family", "hm", "--spec", R"({"n":6,"k":4,"t":1})", "--member", "2|3|4|1 5 6"});
  CHECK(in.code == 0);
  CHECK(in.out.find("true") != std::string::npos);
  Run out = run({"--no-cache", "family", "hm", "--spec", R"({"n":6,"k":4,"t":1})", "--member", "1|2 3|4 5|6"});
  CHECK(out.out.find("false") != std::string::npos);
}

TEST_CASE("enum and tau subcommands", "[cli]") {
  Run e = run({"--no-cache", "enum", "10", "4", "--count-only"});
  CHECK(e.code == 0);
  CHECK(e.out == "34105\n");
  Run l = run({"--no-cache", "enum", "4", "2"});
  CHECK(std::count(l.out.begin(), l.out.end(), '\n') >= 7);
  Run t = run({"--no-cache", "tau", "--family", R"({"kind":"alpha","n":6,"k":4,"t":1})"});
  CHECK(t.code == 0);
  CHECK(t.out.find('2') != std::string::npos);
}

TEST_CASE("search subcommand", "[cli]") {
  Run m = run({"--no-cache", "--format", "json", "search", "max", "-n", "5", "-k", "3", "-t", "1"});
  CHECK(m.code == 0);
  CHECK(m.out.find("\"max_size\":\"7\"") != std::string::npos);
  Run big = run({"--no-cache", "search", "max", "-n", "9", "-k", "4", "-t", "1"});
  CHECK(big.code == kpart::cli::kExitUsage);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(run({}).code == kpart::cli::kExitUsage);
  CHECK(run({"--no-cache", "frobnicate"}).code == kpart::cli::kExitUsage);
  CHECK(run({"--no-cache", "verify", "--claim", "L9.9-nothing"}).code == kpart::cli::kExitUsage);
  CHECK(run({"--no-cache", "verify", "--claim", "L4.1-binom", "--grid", "t=0:3"}).code == kpart::cli::kExitUsage);
  CHECK(run({"--no-cache", "family", "hm", "--spec", "{not json", "--size"}).code == kpart::cli::kExitUsage);
  CHECK(run({"--no-cache", "family", "star", "--spec", R"({"n":30,"k":9,"t":1})", "--materialize"}).code ==
        kpart::cli::kExitUsage);
}

TEST_CASE("verify reruns reproduce identical payloads from the cache", "[cli]") {
  TempDir dir;
  std::vector<std::string> args{"--cache-dir", dir.path.string(), "--format", "json", "verify",
                                "--claim",     "L4.4-mono",         "--grid",   "t=1:2,kt=2:3,dn=0:2"};
  Run first = run(args);
  REQUIRE(first.code == 0);
  Run second = run(args);
  CHECK(second.out == first.out);

  fs::path cache = dir.only_file();
  auto lines = read_lines(cache);
  REQUIRE(lines.size() > 4);
  write_lines(cache, std::vector<std::string>(lines.begin(), lines.begin() + static_cast<long>(lines.size() / 2)));
  Run resumed = run(args);
  CHECK(resumed.out == first.out);
  CHECK(read_lines(cache).size() == lines.size());
}

TEST_CASE("verify reads completed points from the cache", "[cli]") {
  TempDir dir;
  std::vector<std::string> args{"--cache-dir", dir.path.string(), "--format", "json", "verify",
                                "--claim",     "L4.1-binom",        "--grid",   "lmax=3"};
  REQUIRE(run(args).code == 0);
  fs::path cache = dir.only_file();
  auto lines = read_lines(cache);
  REQUIRE(lines.size() >= 2);
  auto pos = lines[1].find("\"lhs\":\"1\"");
  REQUIRE(pos != std::string::npos);
  lines[1].replace(pos, 9, "\"lhs\":\"from-cache\"");
  write_lines(cache, lines);
  Run again = run(args);
  CHECK(again.out.find("from-cache") != std::string::npos);
}

TEST_CASE("verify failure details go to the error stream", "[cli]") {
  TempDir dir;
  std::vector<std::string> args{"--cache-dir", dir.path.string(), "verify", "--claim", "L4.1-binom", "--grid", "lmax=3"};
  REQUIRE(run(args).code == 0);
  fs::path cache = dir.only_file();
  auto lines = read_lines(cache);
  auto pos = lines[1].find("\"pass\":true");
  REQUIRE(pos != std::string::npos);
  lines[1].replace(pos, 11, "\"pass\":false");
  write_lines(cache, lines);
  Run failed = run(args);
  CHECK(failed.code == kpart::cli::kExitFail);
  CHECK_FALSE(failed.err.empty());
}

TEST_CASE("report aggregates cached verdicts", "[cli]") {
  TempDir dir;
  REQUIRE(run({"--cache-dir", dir.path.string(), "verify", "--claim", "L4.1-binom", "--grid", "lmax=5"}).code == 0);
  Run rep = run({"--format", "csv", "report", "--dir", dir.path.string()});
  CHECK(rep.code == 0);
  CHECK(rep.out.find("L4.1-binom") != std::string::npos);
}
