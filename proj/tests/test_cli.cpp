/*
Copyright 2026 The svxinpaint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/


#include <doctest.h>

#include <cstdio>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"
#include "svx/manifest.hpp"
#include "svx/svol.hpp"

using svx::test::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::string& args, const TempDir& tmp) {
  const fs::path out = tmp / "stdout.txt";
  const fs::path err = tmp / "stderr.txt";
  const std::string cmd = std::string(SVX_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = svx::test::read_bytes(out);
  r.err = svx::test::read_bytes(err);
  return r;
}

}  // namespace

TEST_CASE("cli pipeline") {
  TempDir tmp;
  const std::string d = tmp.path().string();

  Run r = run("phantom --preset brats-like -n 3 -o " + d + "/corpus", tmp);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(tmp / "corpus/train.json"));
  CHECK(fs::exists(tmp / "corpus/case002_label.bin"));

  r = run("supervoxelize --input " + d + "/corpus/case000_image.json --output " + d +
              "/svx --compactness 0.15 --max-supervoxels 400",
          tmp);
  REQUIRE(r.code == 0);
  const auto header = svx::read_svol_header(tmp / "svx.json");
  const int k = header.extras.at("supervoxel_count").get<int>();
  CHECK(k >= 1);
  CHECK(k <= 400);
  CHECK(r.out.find("supervoxels=" + std::to_string(k)) != std::string::npos);

  r = run("--json supervoxelize --input " + d + "/corpus/case000_image --output " + d + "/svx2",
          tmp);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("supervoxel_count") == k);

  r = run("synth --train " + d + "/corpus/train.json --strategy roi-supervoxel --min-volume 200 " +
              "--cap 10 --out " + d + "/synth",
          tmp);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("records=", 0) == 0);
  const auto manifest = svx::read_manifest(tmp / "synth/manifest.json", true);
  CHECK(manifest.records.size() <= 30);
  CHECK(r.out.find("records=" + std::to_string(manifest.records.size()) + " skipped=0") !=
        std::string::npos);
  const std::string first = svx::test::read_bytes(tmp / "synth/manifest.json");

  r = run("synth --train " + d + "/corpus/train.json --min-volume 200 --out " + d + "/synth2",
          tmp);
  REQUIRE(r.code == 0);
  CHECK(svx::test::read_bytes(tmp / "synth2/manifest.json") == first);

  r = run("stats " + d + "/synth/manifest.json --validate", tmp);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("roi_hit_rate     1.0000") != std::string::npos);

  r = run("--json stats " + d + "/synth/manifest.json", tmp);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("roi_hit_rate") == 1.0);

  r = run("synth --train " + d + "/corpus/train.json --strategy noroi-grid --stream --out " + d +
              "/stream",
          tmp);
  REQUIRE(r.code == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == static_cast<int>(svx::read_manifest(tmp / "stream/manifest.json").records.size()));
  CHECK(r.err.find("records=") != std::string::npos);

  fs::create_directories(tmp / "p");
  fs::create_directories(tmp / "t");
  for (const char* ext : {".json", ".bin"}) {
    fs::copy_file(tmp / (std::string("corpus/case000_label") + ext), tmp / "p" / (std::string("a") + ext));
    fs::copy_file(tmp / (std::string("corpus/case000_label") + ext), tmp / "t" / (std::string("a") + ext));
  }
  r = run("eval --pred " + d + "/p --truth " + d + "/t", tmp);
  REQUIRE(r.code == 0);
  CHECK(r.out == "1.000 (.000)\n");

  r = run("crop --input " + d + "/corpus/case000_image --output " + d + "/crop --size 64 48", tmp);
  REQUIRE(r.code == 0);
  CHECK(svx::read_svol_header(tmp / "crop.json").meta.dims == svx::Dims{64, 48, 32});
}

TEST_CASE("cli exit codes") {
  TempDir tmp;
  const std::string d = tmp.path().string();

  Run r = run("supervoxelize", tmp);
  CHECK(r.code == 2);
  CHECK(r.err.find("--input") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);

  CHECK(run("", tmp).code == 2);
  CHECK(run("frobnicate", tmp).code == 2);
  CHECK(run("--help", tmp).code == 0);

  r = run("synth --train nowhere.json --strategy roi-box", tmp);
  CHECK(r.code == 2);
  CHECK(r.err.find("roi-supervoxel, noroi-supervoxel, roi-grid, noroi-grid") != std::string::npos);

  svx::test::write_bytes(tmp / "bad.json", R"({"dims":[4,4,4],"channels":1,"dtype":"f32"})");
  svx::test::write_bytes(tmp / "bad.bin", std::string(10, '\0'));
  CHECK(run("supervoxelize --input " + d + "/bad.json", tmp).code == 3);
  CHECK(run("supervoxelize --input " + d + "/missing.json", tmp).code == 3);

  svx::test::write_bytes(tmp / "tiny.json", R"({"dims":[2,2,2],"channels":1,"dtype":"f32"})");
  svx::test::write_bytes(tmp / "tiny.bin", std::string(32, '\0'));
  CHECK(run("supervoxelize --input " + d + "/tiny --max-supervoxels 400", tmp).code == 4);

  REQUIRE(run("phantom -n 2 --lesion-count 0 0 -o " + d + "/clean", tmp).code == 0);
  r = run("synth --train " + d + "/clean/train.json --out " + d + "/none", tmp);
  CHECK(r.code == 4);
  CHECK(r.out.find("records=0 skipped=2") != std::string::npos);

  CHECK(run("phantom --preset nope -o " + d + "/x", tmp).code == 2);
  CHECK(run("stats " + d + "/nothing.json", tmp).code == 3);
}
