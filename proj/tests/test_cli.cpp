#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

const std::string kCli = DYNWALK_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::filesystem::path fresh_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("help exits zero, unknown flags exit two") {
  CHECK(run("--help") == 0);
  CHECK(run("tail-sweep --help") == 0);
  CHECK(run("--no-such-flag") == 2);
  CHECK(run("tail-sweep --bogus 3") == 2);
  CHECK(run("") == 2); // a subcommand is required
}

TEST_CASE("integral-test classifies the threshold pair") {
  const auto dir = fresh_dir("dynwalk_cli_it");
  CHECK(run("--out-dir " + dir.string() + " integral-test --family corollary --a 4.5,5.5") ==
        0);
  const auto json = slurp(dir / "integral-test.json");
  CHECK(json.find("divergent") != std::string::npos);
  CHECK(json.find("\"finite") != std::string::npos);
  CHECK(json.find("schema_version") != std::string::npos);
  const auto csv = slurp(dir / "integral-test.csv");
  CHECK(csv.find("experiment,parameter,value") == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("small experiment emits reproducible artifacts") {
  const auto dir = fresh_dir("dynwalk_cli_ts");
  const std::string args =
      " --seed 7 tail-sweep --n 200 --z 1.0,1.5 --paths 400";
  CHECK(run("--out-dir " + dir.string() + args) == 0);
  const auto first = slurp(dir / "tail-sweep.csv");
  CHECK(!first.empty());
  CHECK(run("--out-dir " + dir.string() + args) == 0);
  const auto second = slurp(dir / "tail-sweep.csv");
  CHECK(first == second); // byte-identical CSV body on rerun
  const auto json = slurp(dir / "tail-sweep.json");
  CHECK(json.find("\"master_seed\": 7") != std::string::npos);
  CHECK(json.find("git_describe") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("worker count does not change the CSV body") {
  const auto dir1 = fresh_dir("dynwalk_cli_w1");
  const auto dir4 = fresh_dir("dynwalk_cli_w4");
  const std::string tail = " --seed 3 pz-check --n 200 --z 1.0 --paths 600";
  CHECK(run("--out-dir " + dir1.string() + " --workers 1" + tail) == 0);
  CHECK(run("--out-dir " + dir4.string() + " --workers 4" + tail) == 0);
  CHECK(slurp(dir1 / "pz-check.csv") == slurp(dir4 / "pz-check.csv"));
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir4);
}

TEST_CASE("config file values apply and flags win") {
  const auto dir = fresh_dir("dynwalk_cli_cfg");
  const auto cfg = dir / "run.cfg";
  {
    std::ofstream os(cfg);
    os << "seed=99\n";
  }
  CHECK(run("--config " + cfg.string() + " --out-dir " + dir.string() +
            " integral-test --family scaled-lil --c 1.2") == 0);
  CHECK(slurp(dir / "integral-test.json").find("\"master_seed\": 99") != std::string::npos);
  CHECK(run("--config " + cfg.string() + " --seed 5 --out-dir " + dir.string() +
            " integral-test --family scaled-lil --c 1.2") == 0);
  CHECK(slurp(dir / "integral-test.json").find("\"master_seed\": 5") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("simulate-path writes a csv") {
  const auto dir = fresh_dir("dynwalk_cli_sp");
  CHECK(run("--out-dir " + dir.string() +
            " simulate-path --n 50 --clock-seed 4 --deviate-seed 6") == 0);
  const auto text = slurp(dir / "path.csv");
  CHECK(text.rfind("time,value\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("validation failures exit two") {
  const auto dir = fresh_dir("dynwalk_cli_bad");
  // n * delta below the meaningful-regime precondition
  CHECK(run("--out-dir " + dir.string() +
            " clock-verify --n 100 --delta 0.05 --alpha 0.2 --reps 5") == 2);
  std::filesystem::remove_all(dir);
}
