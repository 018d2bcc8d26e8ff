#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "beamlabel/scene_io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(BEAMLABEL_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli commands and exit codes") {
  const fs::path dir = fs::temp_directory_path() / "beamlabel_cli_test";
  fs::create_directories(dir);
  const std::string scene = (dir / "scene.json").string();
  const std::string placed = (dir / "placed.json").string();

  CHECK(cli("gen -n 20 --seed 3 -o " + scene) == 0);
  CHECK(cli("place " + scene + " --out-json " + placed + " --out-svg " + (dir / "p.svg").string() +
            " --metrics " + (dir / "m.json").string()) == 0);
  CHECK(fs::exists(dir / "p.svg"));
  const auto m = nlohmann::json::parse(beamlabel::read_text_file(dir / "m.json"));
  CHECK(m.contains("a_ms_deg"));
  CHECK(cli("eval " + scene + " " + placed) == 0);
  CHECK(cli("place " + scene + " --method localp --leader-type 2 --graph mst") == 0);

  CHECK(cli("place") == 1);
  CHECK(cli("place " + scene + " --leader-type 9") == 1);
  CHECK(cli("frobnicate") == 1);

  beamlabel::write_text_file(dir / "bad.json", "{\"schema_version\": \"1.0\", \"features\": []}");
  CHECK(cli("place " + (dir / "bad.json").string()) == 2);
  CHECK(cli("place " + (dir / "missing.json").string()) == 3);
  fs::remove_all(dir);
}
