#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_scenarios;
fs::path g_dir;

int run(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = g_dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

const char* kSmall = "Na = 3\nNb = 2\nNe = 2\nd = 1\nPa = 20dB\nPe = 20dB\ng1 = 1\ng2 = 1\ntrials = 50\n";

}  // namespace

TEST_CASE("exit codes") {
  const std::string ok = write("ok.scn", kSmall);
  CHECK(run("report " + ok) == 0);
  CHECK(run("oracle " + ok) == 0);
  CHECK(run("selftest") == 0);

  CHECK(run("") == 1);
  CHECK(run("report") == 1);
  CHECK(run("frobnicate " + ok) == 1);
  CHECK(run("report " + write("bad.scn", std::string(kSmall) + "rho = 1.2\n")) == 1);
  CHECK(run("report " + write("unknown.scn", std::string(kSmall) + "colour = red\n")) == 1);
  CHECK(run("sweep " + ok + " --out " + (g_dir / "x.csv").string()) == 1);
  CHECK(run("report " + ok + " --trials 0") == 1);

  CHECK(run("report " + write("zero.scn", std::string(kSmall) + "sigma_b2 = 0\n")) == 1);
  // A rank-one jammer 400 dB above the noise floor leaves Bob's covariance
  // singular to working precision.
  CHECK(run("report " + write("singular.scn",
                              "Na = 3\nNb = 2\nNe = 1\nd = 1\nPa = 20dB\nPe = 200dB\n"
                              "sigma_b2 = -200dB\ntrials = 50\n")) == 2);

  CHECK(run("report " + (g_dir / "missing.scn").string()) == 3);
  const std::string sw = write("sw.scn", std::string(kSmall) + "sweep = Pa\nvalues = 10dB, 20dB\n");
  CHECK(run("sweep " + sw + " --out /nonexistent/dir/out.csv") == 3);
}

TEST_CASE("sweep output is reproducible and seed dependent") {
  const std::string sw = write("det.scn", std::string(kSmall) + "sweep = Pa\nvalues = 10dB, 20dB, 30dB\n");
  const fs::path a = g_dir / "a.csv", b = g_dir / "b.csv", c = g_dir / "c.csv";
  REQUIRE(run("sweep " + sw + " --out " + a.string()) == 0);
  REQUIRE(run("sweep " + sw + " --out " + b.string()) == 0);
  REQUIRE(run("sweep " + sw + " --seed 99 --out " + c.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  CHECK(slurp(a).rfind("Pa,R_FE_mean,R_FE_stderr,", 0) == 0);
}

TEST_CASE("shipped scenarios parse") {
  for (const char* name : {"fig2.scn", "fig5.scn", "fig6.scn", "fig8.scn"}) {
    INFO(name);
    CHECK(run("report " + g_scenarios + "/" + name + " --trials 20") == 0);
  }
}

int main(int argc, char** argv) {
  if (argc < 3) return 2;
  g_cli = argv[1];
  g_scenarios = argv[2];
  g_dir = fs::temp_directory_path() / ("wiretap_cli_exit_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 2, argv + 2);
  const int rc = ctx.run();
  fs::remove_all(g_dir);
  return rc;
}
