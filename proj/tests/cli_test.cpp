// End-to-end checks of the command-line tool. The binary path arrives via
// the POLYTREE_BIN environment variable (set by the test registration).

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::string binary() {
  const char* b = std::getenv("POLYTREE_BIN");
  REQUIRE_MESSAGE(b != nullptr, "POLYTREE_BIN must point at the CLI binary");
  return b;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd = binary() + " " + args + " 2>/dev/null";
  if (!stdin_data.empty()) {
    fs::path tmp = fs::temp_directory_path() / "polytree_cli_stdin.txt";
    std::ofstream(tmp) << stdin_data;
    cmd += " < " + tmp.string();
  } else {
    cmd += " < /dev/null";
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WEXITSTATUS(status);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "polytree_cli_test";
  fs::create_directories(dir);
  fs::path file = dir / name;
  std::ofstream(file) << content;
  return file;
}

}  // namespace

TEST_CASE("emitted fixtures validate") {
  for (const char* fixture : {"login", "readonly", "cell", "nim", "refinement"}) {
    RunResult doc = run(std::string("fixture ") + fixture);
    REQUIRE(doc.code == 0);
    fs::path f = write_temp(std::string(fixture) + ".json", doc.out);
    RunResult v = run("validate " + f.string());
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["valid"] == true);
  }
}

TEST_CASE("validation failures exit 1 with a diagnostic") {
  fs::path f = write_temp("broken.json", R"({
    "kind": "tree",
    "nodes": [{"poly": {"positions": [{"dirs": 2}]}, "next": [[0]]}],
    "root": 0
  })");
  RunResult v = run("validate " + f.string());
  CHECK(v.code == 1);
  Json j = Json::parse(v.out);
  CHECK(j["valid"] == false);
  CHECK(std::string(j["error"]).find("next not total at node 0, (i=0,d=1)") !=
        std::string::npos);
}

TEST_CASE("hom counting agrees with listing") {
  RunResult doc = run("fixture const --dirs 1,0");
  fs::path b = write_temp("b.json", doc.out);
  RunResult count = run("homs " + b.string() + " " + b.string() + " --depth 2 --count");
  REQUIRE(count.code == 0);
  CHECK(Json::parse(count.out)["count"] == "3");
  RunResult listing = run("homs " + b.string() + " " + b.string() + " --depth 2");
  REQUIRE(listing.code == 0);
  CHECK(Json::parse(listing.out).size() == 3);

  RunResult zero = run("fixture const --dirs ''");
  fs::path z = write_temp("zero.json", zero.out);
  RunResult initial = run("homs " + z.string() + " " + b.string() + " --depth 4 --count");
  CHECK(Json::parse(initial.out)["count"] == "1");
}

TEST_CASE("strategy solving") {
  fs::path nim4 = write_temp("nim4.json", run("fixture nim --heap 4").out);
  fs::path nim3 = write_temp("nim3.json", run("fixture nim --heap 3").out);

  RunResult yes = run("solve " + nim4.string() + " --mode from-y");
  CHECK(yes.code == 0);
  Json jy = Json::parse(yes.out);
  CHECK(jy["exists"] == true);
  CHECK(jy.contains("witness"));

  RunResult no = run("solve " + nim3.string() + " --mode from-y");
  CHECK(no.code == 0);
  CHECK(Json::parse(no.out)["exists"] == false);

  fs::path zero = write_temp("zero2.json", run("fixture const --dirs ''").out);
  RunResult vac = run("solve " + zero.string() + " --mode to-y");
  CHECK(Json::parse(vac.out)["exists"] == true);
}

TEST_CASE("tracing") {
  fs::path zero = write_temp("zero3.json", run("fixture const --dirs ''").out);
  RunResult dead = run("trace " + zero.string());
  CHECK(dead.code == 0);
  CHECK(dead.out.find("no positions") != std::string::npos);

  fs::path login = write_temp("login.json", run("fixture login").out);
  RunResult quit = run("trace " + login.string(), "0\n0\nquit\n");
  CHECK(quit.code == 0);
  CHECK(quit.out.find("\"event\":\"step\"") != std::string::npos);
  CHECK(quit.out.find("\"event\":\"quit\"") != std::string::npos);

  // EOF ends the session cleanly
  RunResult eof = run("trace " + login.string());
  CHECK(eof.code == 0);
  CHECK(eof.out.find("\"event\":\"eof\"") != std::string::npos);

  // a witness machine plays the positions and never loses at heap 4
  fs::path nim4 = write_temp("nim4b.json", run("fixture nim --heap 4").out);
  RunResult solved = run("solve " + nim4.string() + " --mode from-y --witness-out " +
                         (fs::temp_directory_path() / "polytree_cli_test" / "wit.json").string());
  REQUIRE(solved.code == 0);
  fs::path wit = fs::temp_directory_path() / "polytree_cli_test" / "wit.json";
  RunResult traced = run("trace " + nim4.string() + " --machine " + wit.string(), "0\n1\n0\n");
  CHECK(traced.code == 0);
  CHECK(traced.out.find("\"event\":\"terminated\"") != std::string::npos);
}

TEST_CASE("refinement checking") {
  fs::path ro = write_temp("ro.json", run("fixture readonly").out);
  fs::path full = write_temp("full.json", run("fixture login").out);
  fs::path machine = write_temp("refine.json", run("fixture refinement").out);
  RunResult ok = run("check-refine " + machine.string() + " " + ro.string() + " " +
                     full.string() + " --depth 6");
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["valid"] == true);

  // the machine is not a refinement of the full protocol into itself
  RunResult bad = run("check-refine " + machine.string() + " " + full.string() + " " +
                      full.string() + " --depth 2");
  CHECK(bad.code == 1);
}

TEST_CASE("law runner") {
  RunResult laws = run("--format table laws --depth 2");
  CHECK(laws.code == 0);
  CHECK(laws.out.find("FAIL") == std::string::npos);
  CHECK(laws.out.find("hom/pentagon") != std::string::npos);

  RunResult usage = run("laws --depth 9");
  CHECK(usage.code == 2);
}

TEST_CASE("demo output is reproducible") {
  RunResult a = run("demo progressive --steps 25 --seed 42");
  RunResult b = run("demo progressive --steps 25 --seed 42");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  RunResult c = run("demo progressive --steps 25 --seed 43");
  CHECK(a.out != c.out);
}

TEST_CASE("budget violations exit 3") {
  fs::path login = write_temp("login2.json", run("fixture login").out);
  RunResult big = run("homs " + login.string() + " " + login.string() + " --depth 2");
  CHECK(big.code == 3);

  RunResult env = run("fixture organ --budget 10");
  CHECK(env.code == 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate").code == 2);
  CHECK(run("homs onlyone.json").code == 2);
}
