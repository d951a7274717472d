#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "spectral_minmax_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("quantile of the uniform measure on a 4-point grid") {
  const auto m = write("uniform.json", R"({"segments": [[0, 1, 1, 1]]})");
  const auto r = run("quantile " + m.string() + " --grid 4");
  CHECK(r.code == 0);
  CHECK(r.out == "s,X(s)\n0,0\n0.25,0.25\n0.5,0.5\n0.75,0.75\n");
}

TEST_CASE("Ky Fan on a random matrix passes") {
  const auto r = run("verify kyfan --random n=6 seed=7 --j 3 --trials 10000");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["sampled"]["trials"] == 10000);
}

TEST_CASE("a failed verification exits with 3") {
  const auto m = write("neg.json", R"({"dim": 2, "re": [[-2, 0], [0, -1]]})");
  CHECK(run("verify kyfan --matrix " + m.string() + " --j 1 --trials 10").code == 3);
  CHECK(run("verify kyfan --matrix " + m.string() + " --j 1 --trials 10 --exact-rank").code == 0);
}

TEST_CASE("indefinite domination is not a failure") {
  const auto r = run("verify domination --random n=5 seed=2 --indefinite");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["status"] == "hypothesis-not-met");
  CHECK(run("verify domination --random n=5 seed=2").code == 0);
}

TEST_CASE("other verifications") {
  CHECK(run("verify cf --random n=5 seed=1 --i 2 --j 2 --trials 50 --inner 50").code == 0);
  CHECK(run("verify wielandt --random n=6 seed=3 --intervals 1:2,4:4 --trials 20 --inner 20").code == 0);
  CHECK(run("verify conditional --random n=6 seed=4 --i 2 --j 3 --trials 200").code == 0);
  CHECK(run("verify lidskii --random n=6 seed=5").code == 0);
}

TEST_CASE("validation errors exit with 2") {
  const auto bad = write("bad_measure.json", R"({"atoms": [[0, 0.3]]})");
  CHECK(run("quantile " + bad.string()).code == 2);
  CHECK(run("quantile /nonexistent.json").code == 2);
  const auto asym = write("asym.json", R"({"dim": 2, "re": [[0, 1], [2, 0]]})");
  CHECK(run("spectrum " + asym.string()).code == 2);
  CHECK(run("verify kyfan --random n=4 seed=1 --j 9").code == 2);
  CHECK(run("verify kyfan --random seed=1 --j 1").code == 2);
  CHECK(run("verify wielandt --random n=6 seed=1 --intervals 3:4,2:2").code == 2);
}

TEST_CASE("unknown flags print usage and exit with 64") {
  CHECK(run("quantile x.json --bogus").code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("").code == 64);
  CHECK(run("verify kyfan --random n=4 seed=1 --j").code == 64);
}

TEST_CASE("spectrum and discretize") {
  const auto m = write("diag.json", R"({"dim": 3, "re": [[1, 0, 0], [0, 1, 0], [0, 0, 3]]})");
  const auto r = run("spectrum " + m.string());
  CHECK(r.code == 0);
  CHECK(r.out == "index,eigenvalue\n1,1\n2,1\n3,3\n\nlocation,weight\n1,0.66666666666666663\n3,0.33333333333333331\n");

  const auto u = write("u2.json", R"({"segments": [[0, 1, 1, 1]]})");
  const auto d = run("discretize " + u.string() + " --n 2");
  CHECK(d.code == 0);
  const auto doc = nlohmann::json::parse(d.out);
  CHECK(doc["atoms"][0][0] == 0.25);
  CHECK(doc["atoms"][1][0] == 0.75);
}

TEST_CASE("identical arguments give byte-identical reports") {
  const auto a = scratch() / "r1.json";
  const auto b = scratch() / "r2.json";
  CHECK(run("verify cf --random n=6 seed=9 --i 2 --j 3 --trials 40 --seed 5 --out " + a.string()).code == 0);
  CHECK(run("verify cf --random n=6 seed=9 --i 2 --j 3 --trials 40 --seed 5 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto s1 = scratch() / "s1.json";
  const auto s2 = scratch() / "s2.json";
  CHECK(run("suite --seed 42 --criteria 5,6 --out " + s1.string()).code == 0);
  CHECK(run("suite --seed 42 --criteria 5,6 --out " + s2.string()).code == 0);
  CHECK(slurp(s1) == slurp(s2));
}

TEST_CASE("generated inputs feed back into the tool") {
  const auto m = scratch() / "gen.json";
  CHECK(run("generate hermitian --n 5 --seed 3 > " + m.string() + " #").code == 0);
  CHECK(run("spectrum " + m.string()).code == 0);
  const auto s = scratch() / "semi.json";
  CHECK(run("generate semicircle --panels 64 > " + s.string() + " #").code == 0);
  CHECK(run("quantile " + s.string() + " --grid 8").code == 0);
}
