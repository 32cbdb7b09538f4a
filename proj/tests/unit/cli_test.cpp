// Copyright 2026 The qproto-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qproto_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary inside the scratch directory and returns its exit code.
  int run(const std::string& args) {
    const std::string cmd = "cd '" + dir_.string() + "' && '" + QPROTO_BENCH_PATH + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, ListRecipes) {
  ASSERT_EQ(run("list-recipes"), 0);
  const std::string out = read("stdout.txt");
  for (const char* name : {"fig1", "fig2", "fig4", "fig5", "fig6", "fig7", "table4", "table5"}) {
    EXPECT_NE(out.find(name), std::string::npos) << name;
  }
}

TEST_F(Cli, WritesCsvWithSortedHeader) {
  ASSERT_EQ(run("anon --recipe fig5 --out a.csv"), 0);
  const std::string csv = read("a.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "f_ave,noise,q");
  EXPECT_EQ(csv.find(';'), std::string::npos);
  EXPECT_NE(read("stdout.txt").find("a.csv"), std::string::npos);
}

TEST_F(Cli, DefaultOutputName) {
  ASSERT_EQ(run("anon --recipe fig5"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "fig5.csv"));
}

TEST_F(Cli, ByteIdenticalAcrossRunsAndThreads) {
  ASSERT_EQ(run("vbqc --recipe fig7 --trials 200 --seed 4 --threads 1 --out a.csv"), 0);
  ASSERT_EQ(run("vbqc --recipe fig7 --trials 200 --seed 4 --threads 3 --out b.csv"), 0);
  ASSERT_EQ(run("vbqc --recipe fig7 --trials 200 --seed 4 --threads 1 --out c.csv"), 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(read("a.csv"), read("c.csv"));
  ASSERT_EQ(run("vbqc --recipe fig7 --trials 200 --seed 5 --out d.csv"), 0);
  EXPECT_NE(read("a.csv"), read("d.csv"));
}

TEST_F(Cli, ConfigFileAndFlagOverride) {
  write("run.toml", "recipe = \"fig5\"\nseed = 3\nout = \"cfg.csv\"\n[params]\nq_max = 0.05\n");
  ASSERT_EQ(run("anon --config run.toml"), 0);
  const std::string csv = read("cfg.csv");
  // Header plus q in {0, 0.025, 0.05} for two noise kinds.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  ASSERT_EQ(run("anon --config run.toml --out flag.csv"), 0);
  EXPECT_EQ(read("flag.csv"), csv);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("anon --recipe nope"), 2);
  EXPECT_EQ(run("money --recipe fig5"), 2);
  EXPECT_EQ(run("anon"), 2);
  EXPECT_EQ(run("anon --recipe fig5 --bogus 1"), 2);
  EXPECT_EQ(run("vbqc --recipe fig7 --trials 0"), 2);
  write("bad_key.toml", "recipe = \"fig5\"\ncolour = 1\n");
  EXPECT_EQ(run("anon --config bad_key.toml"), 2);
  write("bad_syntax.toml", "recipe = \n");
  EXPECT_EQ(run("anon --config bad_syntax.toml"), 2);
  write("bad_param.toml", "recipe = \"fig5\"\n[params]\nwobble = 1.0\n");
  EXPECT_EQ(run("anon --config bad_param.toml"), 2);
  write("bad_range.toml", "recipe = \"fig5\"\n[params]\nn_parties = 2\n");
  EXPECT_EQ(run("anon --config bad_range.toml"), 2);
}

TEST_F(Cli, DegenerateInputExitsThree) {
  EXPECT_EQ(run("qds --recipe table5 --trials 20"), 3);
  EXPECT_NE(read("stderr.txt").find("degenerate"), std::string::npos);
}

}  // namespace
