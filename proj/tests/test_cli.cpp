#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using maghom::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("maghom-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& body) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const std::string kC5 = "0 1\n1 2\n2 3\n3 4\n4 0\n";

}  // namespace

TEST_CASE("cli: compute") {
  TempDir dir;
  const std::string p3 = dir.file("p3.txt", "0 1\n1 2\n");
  Result r = call({"compute", p3, "--lmax", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# maghom-csv v1\nvertex,k,l,rank,torsion\n", 0) == 0);
  CHECK(r.out.find("all,2,2,4,\n") != std::string::npos);

  Result j = call({"compute", p3, "--lmax", "2", "--format", "json", "--per-vertex"});
  CHECK(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["vertex_count"] == 3);

  Result b = call({"compute", dir.file("k5.txt", "0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"), "--lmax", "4",
                   "--budget", "50"});
  CHECK(b.code == 2);
  CHECK(b.err.find("budget exceeded") != std::string::npos);
}

TEST_CASE("cli: input errors") {
  TempDir dir;
  CHECK(call({"compute", dir.path("missing.txt")}).code == 66);
  CHECK(call({"compute", dir.file("bad.txt", "0 x\n")}).code == 65);
  CHECK(call({"compute", dir.file("loop.txt", "1 1\n")}).code == 65);
  CHECK(call({"frobnicate"}).code == 64);
  CHECK(call({"diagonal", dir.file("c5.txt", kC5), "--lmax", "1"}).code == 64);
  CHECK(call({"er", "sim", "--c", "0.5", "--p", "0.1"}).code == 64);
  CHECK(call({"er", "sim", "--c", "0.5:0.1:0.1"}).code == 64);
  CHECK(call({"verify"}).code == 64);
  CHECK(call({"er", "sim", "--c", "0.5", "--n", "10", "--trials", "1", "--out", dir.path("nodir/x.csv")}).code == 73);
}

TEST_CASE("cli: girth prints inf for acyclic scopes") {
  TempDir dir;
  Result r = call({"girth", dir.file("paw.txt", "0 1\n1 2\n2 0\n0 3\n")});
  CHECK(r.code == 0);
  CHECK(r.out.find("graph,,3\n") != std::string::npos);
  CHECK(r.out.find("vertex,3,inf\n") != std::string::npos);
  CHECK(r.out.find("edge,0-3,inf\n") != std::string::npos);
}

TEST_CASE("cli: diagonal exit codes") {
  TempDir dir;
  Result c5 = call({"diagonal", dir.file("c5.txt", kC5)});
  CHECK(c5.code == 1);
  CHECK(c5.out.rfind("NonDiagonal GirthWitness", 0) == 0);
  Result tree = call({"diagonal", dir.file("tree.txt", "0 1\n1 2\n1 3\n")});
  CHECK(tree.code == 0);
  Result js = call({"diagonal", dir.file("c5b.txt", kC5), "--format", "json"});
  CHECK(nlohmann::json::parse(js.out)["certificate"]["kind"] == "GirthWitness");
}

TEST_CASE("cli: magnitude with oracle") {
  TempDir dir;
  Result r = call({"magnitude", dir.file("c5.txt", kC5), "--lmax", "4", "--oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# maghom-csv v1\nl,chi\n0,5\n1,-10\n", 0) == 0);
}

TEST_CASE("cli: er output is reproducible across worker counts") {
  TempDir dir;
  std::vector<std::string> base{"er", "sim", "--n", "150", "--c", "0.5,0.9", "--trials", "30", "--seed", "7"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  Result a = call(with({"--workers", "1"}));
  Result b = call(with({"--workers", "3"}));
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 4);

  const std::string trials = dir.path("trials.csv");
  CHECK(call(with({"--trials-out", trials})).code == 0);
  std::ifstream in(trials);
  std::string header, columns;
  std::getline(in, header);
  std::getline(in, columns);
  CHECK(header == "# maghom-csv v1");
  CHECK(columns.rfind("trial,verdict,certificate", 0) == 0);

  Result cyc = call({"er", "cycles", "--n", "100", "--c", "1", "--trials", "20", "--m", "5"});
  CHECK(cyc.code == 0);
  Result w = call({"er", "wlln", "--n", "50", "--c", "0.5", "--trials", "5", "--pairs", "1,1", "2,2"});
  CHECK(w.code == 0);
  CHECK(call({"er", "wlln", "--n", "50", "--c", "0.5", "--pairs", "2,1"}).code == 64);
  Result pw = call({"er", "pawful", "--n", "40", "--trials", "3"});
  CHECK(pw.code == 0);
}

TEST_CASE("cli: verify") {
  TempDir dir;
  Result r = call({"verify", dir.file("c7.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n"), "--lmax", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("theorem instances pass") != std::string::npos);
  Result rnd = call({"verify", "--random", "10", "--trials", "2", "--lmax", "3"});
  CHECK(rnd.code == 0);
}
