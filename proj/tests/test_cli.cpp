#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(DPBULK_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "dpbulk_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("material subcommand") {
  const auto r = run("material --preset paper-default");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["scales"]["omega_G_nucl"].get<double>() > 100.0);
  CHECK(run("material --preset paper-default").out == r.out);
  CHECK(run("material --preset nonsense").exit_code == 2);
  CHECK(run("material --fnucl median").exit_code == 2);
}

TEST_CASE("catness subcommand") {
  const auto dir = scratch_dir();
  write_file(dir / "a.json", R"({"sigma": 1e-12, "points": [{"r": [0, 0, 0], "m": 2e-23}]})");
  write_file(dir / "b.json", R"({"sigma": 1e-12, "points": [{"r": [1e-14, 0, 0], "m": 2e-23}]})");
  write_file(dir / "bad.json", R"({"sigma": 1e-12, "points": [)");
  write_file(dir / "extra.json", R"({"sigma": 1e-12, "points": [], "colour": 1})");
  const auto r = run("catness " + (dir / "a.json").string() + " " + (dir / "b.json").string());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["catness"]["ell_g_sq"].get<double>() > 0.0);
  CHECK(run("catness " + (dir / "a.json").string() + " " + (dir / "b.json").string()).out == r.out);
  CHECK(run("catness " + (dir / "a.json").string() + " " + (dir / "bad.json").string()).exit_code == 2);
  CHECK(run("catness " + (dir / "a.json").string() + " " + (dir / "extra.json").string()).exit_code == 2);
  CHECK(run("catness " + (dir / "a.json").string() + " " + (dir / "missing.json").string()).exit_code == 2);
}

TEST_CASE("census subcommand") {
  const auto dir = scratch_dir();
  const auto csv = dir / "modes.csv";
  const auto r = run("census --box 1 1 1 --k-max 11 --csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "k_x,k_y,k_z,k_mag,omega_k,class");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 26);
  CHECK(run("census --box 1 1 --k-max 7").exit_code == 2);
  CHECK(run("census --box 1 1 1 --k-max 1").exit_code == 2);
  CHECK(run("census --box 100 100 100 --cutoff 1e-5").exit_code == 0);
}

TEST_CASE("heating subcommand") {
  const auto r = run("heating --mass 1 --volume 1 --cutoff 1e-5 --omega-g 1000");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["budget"]["total_cutoff_rate"].get<double>() == doctest::Approx(2.6709e-8).epsilon(1e-4));
  CHECK(run("heating --mass -1").exit_code == 2);
  CHECK(run("heating --mass 1 --volume 1 --cutoff 1e-12").exit_code == 2);
}

TEST_CASE("evolve subcommand") {
  const auto dir = scratch_dir();
  const auto out = dir / "series.csv";
  const auto r = run("evolve --kind mode --omega-k 1000 --omega-g 300 --mode-mass 1 --components 1 "
                     "--t-final 0.01 --samples 11 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,mean_u,mean_pi,cov_uu,cov_upi,cov_pipi,energy");
  CHECK(run("evolve --kind mode --omega-k 1000 --t-final -1 --out " + out.string()).exit_code == 2);
  CHECK(run("evolve --kind spin --t-final 1 --out " + out.string()).exit_code == 2);
}

TEST_CASE("oracle subcommand") {
  const auto r = run("oracle --mode-mass 1 --omega-k 1000 --omega-g 200 --n-max 20");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["max_moment_difference"].get<double>() < 1e-6);
  CHECK(run("oracle --mode-mass 1 --omega-k 1000 --omega-g 7000 --n-max 8 --t-final 0.005").exit_code == 3);
  CHECK(run("oracle --n-max 2").exit_code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").exit_code != 0);
  CHECK(run("frobnicate").exit_code == 2);
}
