// Copyright 2026 The Morphforge Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "morphforge/canonical.hpp"
#include "morphforge/errors.hpp"
#include "morphforge/rng.hpp"

using namespace morphforge;
using namespace morphforge::canonical;

namespace {

const std::string kAssetDir = MORPHFORGE_ASSET_DIR;

std::string ReadFile(const std::string& path) {
  std::ifstream stream(path);
  REQUIRE(stream.good());
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

model::RobotTemplate LoadTemplate(const std::string& name) {
  return model::LoadRobot(kAssetDir + "/templates/" + name);
}

AliasConfig LoadTemplateAliases() {
  return ParseAliasConfig(ReadFile(kAssetDir + "/aliases/template_aliases.json"));
}

// Synthetic serial chain whose revolute joints carry the given names; used
// for the roster alias fixtures, where only names and actuation matter.
model::RobotTemplate ChainOfJoints(const std::vector<std::string>& names) {
  model::RobotTemplate robot;
  robot.name = "chain";
  model::LinkSpec base;
  base.name = "link0";
  robot.links.push_back(base);
  robot.root = "link0";
  for (size_t i = 0; i < names.size(); ++i) {
    model::LinkSpec link;
    link.name = "link" + std::to_string(i + 1);
    robot.links.push_back(link);
    model::JointSpec joint;
    joint.name = names[i];
    joint.parent = "link" + std::to_string(i);
    joint.child = "link" + std::to_string(i + 1);
    joint.q_min = -1.0;
    joint.q_max = 1.0;
    joint.qdot_max = 10.0;
    joint.tau_max = 10.0;
    robot.joints.push_back(joint);
  }
  return robot;
}

}  // namespace

TEST_CASE("global joint table is pinned") {
  const auto& table = GlobalJointTable();
  CHECK(table.size() == 32);
  CHECK(table[0].name == std::string("Left hip roll"));
  CHECK(table[3].name == std::string("Left knee pitch"));
  CHECK(table[12].name == std::string("Waist pitch"));
  CHECK(table[31].name == std::string("Right wrist yaw"));
  for (int i = 0; i < 32; ++i) CHECK(table[i].index == i);
  // Right-hand-rule axes: roll = x, pitch = y, yaw = z.
  CHECK(table[0].axis == std::array<double, 3>{1, 0, 0});
  CHECK(table[1].axis == std::array<double, 3>{0, 1, 0});
  CHECK(table[2].axis == std::array<double, 3>{0, 0, 1});
  std::set<std::string> names;
  for (const auto& joint : table) names.insert(joint.name);
  CHECK(names.size() == 32);
  CHECK(TableChecksum() == 6804779106830513782ULL);
}

TEST_CASE("build_joint_map") {
  const AliasConfig config = LoadTemplateAliases();

  SUBCASE("pure biped lands on slots 0-11") {
    const auto robot = LoadTemplate("biped12.urdf");
    const JointMap map = BuildJointMap(robot, config.aliases);
    CHECK(map.n_r == 12);
    for (int slot = 0; slot < 12; ++slot) CHECK(map.SlotOccupied(slot));
    for (int slot = 12; slot < 32; ++slot) CHECK_FALSE(map.SlotOccupied(slot));
  }
  SUBCASE("named example: left knee maps to slot 3") {
    const auto robot = LoadTemplate("humanoid32.urdf");
    const JointMap map = BuildJointMap(robot, config.aliases);
    CHECK(map.forward.at("left_knee_joint") == 3);
    CHECK(map.n_r == 32);
    for (int slot = 0; slot < 32; ++slot) CHECK(map.SlotOccupied(slot));
  }
  SUBCASE("forward and inverse are mutual inverses") {
    const auto robot = LoadTemplate("humanoid32.urdf");
    const JointMap map = BuildJointMap(robot, config.aliases);
    for (const auto& [name, slot] : map.forward) {
      CHECK(*map.inverse[slot] == name);
    }
  }
  SUBCASE("duplicate slot claim") {
    const auto robot = ChainOfJoints({"kneeA", "kneeB"});
    AliasTable aliases;
    aliases.entries["kneeA"] = "Left knee pitch";
    aliases.entries["kneeB"] = "Left knee pitch";
    try {
      BuildJointMap(robot, aliases);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDuplicateSlot);
    }
  }
  SUBCASE("unmapped revolute joint reports suggestions") {
    const auto robot = ChainOfJoints({"left_knee_pitch"});
    try {
      BuildJointMap(robot, AliasTable{});
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnmappedJoint);
      CHECK(std::string(e.what()).find("Left knee pitch") != std::string::npos);
    }
  }
  SUBCASE("prefix patterns match") {
    const auto robot = ChainOfJoints({"armjoint_07"});
    AliasTable aliases;
    aliases.entries["armjoint_*"] = "Left elbow pitch";
    const JointMap map = BuildJointMap(robot, aliases);
    CHECK(map.forward.at("armjoint_07") == 21);
  }
}

TEST_CASE("project / unproject") {
  const AliasConfig config = LoadTemplateAliases();
  const auto robot = LoadTemplate("biped12.urdf");
  const JointMap map = BuildJointMap(robot, config.aliases);

  SUBCASE("zero joints degenerate case") {
    const model::RobotTemplate empty = ChainOfJoints({});
    const Eigen::VectorXd q = Project(Eigen::VectorXd(0), empty, JointMap{});
    CHECK(q.size() == 32);
    CHECK(q.cwiseAbs().maxCoeff() == 0.0);
    CHECK(Unproject(q, empty, JointMap{}).size() == 0);
  }
  SUBCASE("biped fills slots 0-11 and zero-pads the rest") {
    Eigen::VectorXd q_r(12);
    for (int i = 0; i < 12; ++i) q_r[i] = 0.1 * (i + 1);
    const Eigen::VectorXd q_global = Project(q_r, robot, map);
    double occupied_sum = 0.0;
    for (int slot = 0; slot < 12; ++slot) occupied_sum += q_global[slot];
    CHECK(occupied_sum == doctest::Approx(q_r.sum()));
    for (int slot = 12; slot < 32; ++slot) CHECK(q_global[slot] == 0.0);
  }
  SUBCASE("round trip is exact") {
    Rng rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd q_r(12);
      for (int i = 0; i < 12; ++i) q_r[i] = rng.Uniform(-3.0, 3.0);
      const Eigen::VectorXd back = Unproject(Project(q_r, robot, map), robot, map);
      CHECK((back - q_r).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("values at unmapped slots are discarded") {
    Eigen::VectorXd q_global = Eigen::VectorXd::Zero(32);
    for (int slot = 12; slot < 32; ++slot) q_global[slot] = 7.0;
    const Eigen::VectorXd q_r = Unproject(q_global, robot, map);
    CHECK(q_r.size() == 12);
    CHECK(q_r.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(Project(Eigen::VectorXd(5), robot, map), Error);
    CHECK_THROWS_AS(Unproject(Eigen::VectorXd(31), robot, map), Error);
  }
}

TEST_CASE("build_graph on the 32-dof template") {
  const AliasConfig config = LoadTemplateAliases();
  const auto robot = LoadTemplate("humanoid32.urdf");
  const JointMap map = BuildJointMap(robot, config.aliases);
  const EmbodimentGraph graph = BuildGraph(robot, map, config.parallel_groups);

  SUBCASE("tree over present nodes") {
    CHECK(graph.PresentCount() == 32);
    CHECK(graph.edges.size() == 31);
  }
  SUBCASE("serial hip chain follows the physical order") {
    // Physical order is hip pitch -> hip roll -> hip yaw -> knee.
    CHECK(graph.A(1, 0) == 1.0);   // left hip pitch -> left hip roll
    CHECK(graph.A(0, 2) == 1.0);   // left hip roll -> left hip yaw
    CHECK(graph.A(2, 3) == 1.0);   // left hip yaw -> left knee
  }
  SUBCASE("ankles are parallel children of the knee") {
    CHECK(graph.A(3, 5) == 1.0);   // knee -> ankle pitch
    CHECK(graph.A(3, 4) == 1.0);   // knee -> ankle roll
    CHECK(graph.A(5, 4) == 0.0);   // not serial
    CHECK(graph.A(9, 11) == 1.0);
    CHECK(graph.A(9, 10) == 1.0);
  }
  SUBCASE("root-link joints adopt under the lowest present slot") {
    // Left hip pitch (1), right hip pitch (7) and waist yaw (14) all hang
    // off the pelvis; slot 1 becomes the root.
    CHECK(graph.A(1, 7) == 1.0);
    CHECK(graph.A(1, 14) == 1.0);
  }
  SUBCASE("adjacency row sums equal child counts") {
    const auto A = Adjacency(graph);
    std::map<int, int> child_count;
    for (const auto& [parent, child] : graph.edges) child_count[parent]++;
    for (int slot = 0; slot < 32; ++slot) {
      CHECK(A.row(slot).sum() == doctest::Approx(child_count[slot]));
    }
  }
}

TEST_CASE("fixed-joint contraction keeps the graph connected") {
  const AliasConfig config = LoadTemplateAliases();
  auto robot = LoadTemplate("humanoid32.urdf");
  // Lock the whole waist: the torso-side subtree must reattach through the
  // contracted edges to the pelvis-side root.
  for (const char* name :
       {"waist_yaw_joint", "waist_roll_joint", "waist_pitch_joint"}) {
    robot.FindJoint(name)->actuation = model::Actuation::kFixed;
  }
  const JointMap map = BuildJointMap(robot, config.aliases);
  const EmbodimentGraph graph = BuildGraph(robot, map, config.parallel_groups);
  CHECK(graph.PresentCount() == 29);
  CHECK(graph.edges.size() == 28);
  CHECK_FALSE(graph.present[12]);
  CHECK_FALSE(graph.present[13]);
  CHECK_FALSE(graph.present[14]);
  // Shoulders and head now hang from the root joint (left hip pitch, slot 1).
  CHECK(graph.A(1, 17) == 1.0);  // head yaw
  CHECK(graph.A(1, 19) == 1.0);  // left shoulder pitch
  CHECK(graph.A(1, 26) == 1.0);  // right shoulder pitch
}

TEST_CASE("serial chain example from canonical indices") {
  // hip-roll -> hip-pitch -> hip-yaw -> knee as a plain chain.
  const auto robot = ChainOfJoints({"j_roll", "j_pitch", "j_yaw", "j_knee"});
  AliasTable aliases;
  aliases.entries["j_roll"] = "Left hip roll";
  aliases.entries["j_pitch"] = "Left hip pitch";
  aliases.entries["j_yaw"] = "Left hip yaw";
  aliases.entries["j_knee"] = "Left knee pitch";
  const JointMap map = BuildJointMap(robot, aliases);
  const EmbodimentGraph graph = BuildGraph(robot, map);
  REQUIRE(graph.edges.size() == 3);
  CHECK(graph.A(0, 1) == 1.0);
  CHECK(graph.A(1, 2) == 1.0);
  CHECK(graph.A(2, 3) == 1.0);
}

TEST_CASE("attention mask") {
  SUBCASE("empty graph gives the identity") {
    const Eigen::Matrix<double, 32, 32> A =
        Eigen::Matrix<double, 32, 32>::Zero();
    const auto M = AttentionMask(A);
    CHECK((M - Eigen::Matrix<double, 32, 32>::Identity()).cwiseAbs().maxCoeff() ==
          0.0);
  }
  SUBCASE("chain mask is symmetric with unit diagonal") {
    Eigen::Matrix<double, 32, 32> A = Eigen::Matrix<double, 32, 32>::Zero();
    for (int i = 0; i + 1 < 6; ++i) A(i, i + 1) = 1.0;
    const auto M = AttentionMask(A);
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 32; ++i) CHECK(M(i, i) == 1.0);
    CHECK(M(0, 1) == 1.0);
    CHECK(M(1, 0) == 1.0);
    CHECK(M(0, 2) == 0.0);
  }
  SUBCASE("mask of the full template graph") {
    const AliasConfig config = LoadTemplateAliases();
    const auto robot = LoadTemplate("humanoid32.urdf");
    const JointMap map = BuildJointMap(robot, config.aliases);
    const auto M = AttentionMask(BuildGraph(robot, map, config.parallel_groups).A);
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 32; ++i) CHECK(M(i, i) == 1.0);
    CHECK(M.maxCoeff() == 1.0);
  }
}

TEST_CASE("controllability") {
  const AliasConfig config = LoadTemplateAliases();

  SUBCASE("full template: 32 ones") {
    const auto robot = LoadTemplate("humanoid32.urdf");
    const auto mask =
        Controllability(robot, BuildJointMap(robot, config.aliases));
    int pop = 0;
    for (int flag : mask) pop += flag;
    CHECK(pop == 32);
  }
  SUBCASE("pure biped: ones at 0-11 only") {
    const auto robot = LoadTemplate("biped12.urdf");
    const auto mask =
        Controllability(robot, BuildJointMap(robot, config.aliases));
    for (int slot = 0; slot < 12; ++slot) CHECK(mask[slot] == 1);
    for (int slot = 12; slot < 32; ++slot) CHECK(mask[slot] == 0);
  }
  SUBCASE("waist-locked sample: zeros at 12-14") {
    auto robot = LoadTemplate("humanoid32.urdf");
    for (const char* name :
         {"waist_yaw_joint", "waist_roll_joint", "waist_pitch_joint"}) {
      robot.FindJoint(name)->actuation = model::Actuation::kFixed;
    }
    const auto mask =
        Controllability(robot, BuildJointMap(robot, config.aliases));
    CHECK(mask[12] == 0);
    CHECK(mask[13] == 0);
    CHECK(mask[14] == 0);
    int pop = 0;
    for (int flag : mask) pop += flag;
    CHECK(pop == 29);
  }
}

TEST_CASE("roster alias fixtures round trip") {
  const char* fixtures[] = {
      "booster_k1",    "booster_t1",  "fourier_n1",    "unitree_g1",
      "agibot_x2",     "engineai_pm01", "magiclab_gen1", "tiangong_1",
      "tiangong_2",    "dobot_atom",  "unitree_h1_2",  "leju_kuavo"};
  Rng rng(31);
  for (const char* fixture : fixtures) {
    CAPTURE(fixture);
    const AliasConfig config =
        ParseAliasConfig(ReadFile(kAssetDir + "/aliases/" + fixture + ".json"));
    std::vector<std::string> joint_names;
    for (const auto& [physical, canonical] : config.aliases.entries) {
      joint_names.push_back(physical);
    }
    const model::RobotTemplate robot = ChainOfJoints(joint_names);
    const JointMap map = BuildJointMap(robot, config.aliases);
    CHECK(map.n_r == static_cast<int>(joint_names.size()));
    Eigen::VectorXd q_r(map.n_r);
    for (int i = 0; i < map.n_r; ++i) q_r[i] = rng.Uniform(-2.0, 2.0);
    const Eigen::VectorXd back = Unproject(Project(q_r, robot, map), robot, map);
    CHECK((back - q_r).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("graph exports") {
  const AliasConfig config = LoadTemplateAliases();
  const auto robot = LoadTemplate("biped12.urdf");
  const JointMap map = BuildJointMap(robot, config.aliases);
  const EmbodimentGraph graph = BuildGraph(robot, map, config.parallel_groups);

  SUBCASE("csv is 32 rows of 32 binary entries") {
    const std::string csv = AdjacencyCsv(graph);
    int rows = 0;
    std::istringstream stream(csv);
    std::string line;
    while (std::getline(stream, line)) {
      ++rows;
      CHECK(std::count(line.begin(), line.end(), ',') == 31);
    }
    CHECK(rows == 32);
  }
  SUBCASE("dot names absent slots") {
    const std::string dot = GraphDot(graph);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("Left knee pitch") != std::string::npos);
    CHECK(dot.find("style=dotted") != std::string::npos);  // absent slots
  }
  SUBCASE("joint map json") {
    const std::string json = JointMapJson(map);
    CHECK(json.find("\"left_knee_joint\": 3") != std::string::npos);
  }
}
