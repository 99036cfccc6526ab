#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end coverage of the command-line surface: exit codes, file formats,
// byte reproducibility, and flag/config precedence. The binary path comes
// from the HBTCORR_BIN environment variable set by ctest.
namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* bin = std::getenv("HBTCORR_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "HBTCORR_BIN must point at the CLI binary");
  return bin;
}

int run(const std::string& args) {
  const std::string command = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hbtcorr-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("scan command") {
  TempDir tmp;
  const fs::path out = tmp.path / "scan.csv";

  SUBCASE("writes the documented csv and validates under --check") {
    CHECK(run("scan --nbar 10 --points 101 --out " + out.string() + " --check") == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("x,I,J,D,I_norm,J_norm,D_norm,g2m1\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 102);
  }
  SUBCASE("output bytes are independent of reruns and thread count") {
    const fs::path a = tmp.path / "a.csv";
    const fs::path b = tmp.path / "b.csv";
    const fs::path c = tmp.path / "c.csv";
    CHECK(run("scan --nbar 0.01 --points 201 --threads 1 --out " + a.string()) == 0);
    CHECK(run("scan --nbar 0.01 --points 201 --threads 1 --out " + b.string()) == 0);
    CHECK(run("scan --nbar 0.01 --points 201 --threads 2 --out " + c.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));
  }
  SUBCASE("json format") {
    const fs::path out_json = tmp.path / "scan.json";
    CHECK(run("scan --nbar 10 --points 11 --format json --out " + out_json.string()) == 0);
    const std::string text = slurp(out_json);
    CHECK(text.find("\"I_norm\"") != std::string::npos);
    CHECK(text.find("\"g2m1\"") != std::string::npos);
  }
  SUBCASE("invalid arguments exit with code 2") {
    CHECK(run("scan --points 11 --out " + out.string()) == 2);          // missing --nbar
    CHECK(run("scan --nbar 0 --out " + out.string()) == 2);             // nbar must be > 0
    CHECK(run("scan --nbar 1 --points 1 --out " + out.string()) == 2);  // too few points
    CHECK(run("scan --nbar 1 --format yaml --out " + out.string()) == 2);
    CHECK(run("scan --nbar 1 --bogus-flag --out " + out.string()) == 2);
  }
  SUBCASE("unwritable output path exits with code 4") {
    CHECK(run("scan --nbar 1 --points 11 --out /nonexistent-dir/x.csv") == 4);
  }
}

TEST_CASE("sweep-nbar command") {
  TempDir tmp;
  const fs::path out = tmp.path / "sweep.csv";
  CHECK(run("sweep-nbar --nbar-min 0.001 --nbar-max 100 --points-per-decade 4 --out " +
            out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("nbar,I,J,D,J_over_I,D_over_I\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 22);  // 21 rows + header
  CHECK(run("sweep-nbar --nbar-min 1 --nbar-max 0.5 --out " + out.string()) == 2);
}

TEST_CASE("verify command") {
  TempDir tmp;
  const fs::path out = tmp.path / "report.json";
  CHECK(run("verify --nbar 0.01 --nbar 10 --out " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"order_matched\": 3") != std::string::npos);
  CHECK(text.find("\"pass\": true") != std::string::npos);
  CHECK(run("verify --kernel gauss --nbar 0.01 --out " + out.string()) == 0);
  CHECK(run("verify --kernel triangle --out " + out.string()) == 2);
}

TEST_CASE("mc command") {
  TempDir tmp;
  const fs::path a = tmp.path / "mc-a.csv";
  const fs::path b = tmp.path / "mc-b.csv";
  const std::string base =
      "mc --source-points 256 --trials 2000 --seed 42 --grid 0:0.005:6 --out ";
  CHECK(run(base + a.string() + " --threads 1") == 0);
  CHECK(run(base + b.string() + " --threads 2") == 0);
  const std::string text = slurp(a);
  CHECK(text.rfind("x,g2m1_estimate,std_error,g2m1_analytic\n", 0) == 0);
  CHECK(text == slurp(b));  // byte-identical across runs and thread counts

  CHECK(run("mc --trials 100 --out " + a.string()) == 2);  // insufficient trials
  CHECK(run("mc --trials 2000 --grid 1:0:5 --out " + a.string()) == 2);
  CHECK(run("mc --trials 2000 --grid 0:0.005:6 --out /nonexistent-dir/mc.csv") == 4);
}

TEST_CASE("config file mirrors flags and flags take precedence") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "run.cfg";
  const fs::path from_cfg = tmp.path / "from-cfg.csv";
  const fs::path overridden = tmp.path / "overridden.csv";
  const fs::path direct = tmp.path / "direct.csv";
  {
    std::ofstream out(cfg);
    out << "[scan]\nnbar=10\npoints=51\nout=" << from_cfg.string() << "\n";
  }
  CHECK(run("--config " + cfg.string() + " scan") == 0);
  CHECK(slurp(from_cfg).rfind("x,I,J,D,", 0) == 0);

  // a flag overrides the config value
  CHECK(run("--config " + cfg.string() + " scan --nbar 0.01 --out " +
            overridden.string()) == 0);
  CHECK(run("scan --nbar 0.01 --points 51 --out " + direct.string()) == 0);
  CHECK(slurp(overridden) == slurp(direct));
  CHECK(slurp(overridden) != slurp(from_cfg));
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help") == 0);
  CHECK(run("scan --help") == 0);
  CHECK(run("") == 2);  // a subcommand is required
}
