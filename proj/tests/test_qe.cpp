#include <doctest.h>

#include "forest_gen.hpp"
#include "lcd_oracle.hpp"
#include "sparsemc/error.hpp"
#include "sparsemc/logic/qe.hpp"

using namespace sparsemc;
using namespace sparsemc::logic;

namespace {

std::vector<std::string> label_names(int count) {
  std::vector<std::string> out;
  for (int l = 0; l < count; ++l) {
    out.push_back("c" + std::to_string(l));
  }
  return out;
}

// Random type over k variables; may be unsatisfiable.
LcdType random_type(testgen::Rng &rng, int k, int d, const std::vector<std::string> &labels) {
  LcdType type;
  type.delta.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int x = 0; x < k; ++x) {
    type.delta[x][x] = testgen::uniform(rng, 1, d);
  }
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      const int hi = testgen::coin(rng, 0.1) ? d : std::min(type.delta[x][x], type.delta[y][y]);
      type.delta[x][y] = type.delta[y][x] = testgen::uniform(rng, 0, hi);
    }
  }
  for (int x = 0; x < k; ++x) {
    std::vector<std::pair<std::string, bool>> lits;
    for (const auto &name : labels) {
      lits.emplace_back(name, testgen::coin(rng, 0.5));
    }
    type.labels.push_back(std::move(lits));
  }
  return type;
}

// Exhaustive over u in nodes^k, brute force over w.
void expect_elimination(const LabeledForest &t, const LcdNode &psi, int k, const QeResult &res) {
  const LcdProgram alpha(*res.alpha, res.forest);
  testgen::for_each_tuple(t.n(), k, [&](const std::vector<Vertex> &u) {
    auto full = u;
    full.push_back(0);
    bool exists = false;
    for (Vertex w = 0; w < t.n() && !exists; ++w) {
      full.back() = w;
      exists = oracle::interpret(t, psi, full);
    }
    REQUIRE(alpha.eval(u) == exists);
  });
}

} // namespace

TEST_SUITE("qe") {
  TEST_CASE("single types: exact elimination on random forests") {
    testgen::Rng rng(31);
    int satisfiable = 0;
    for (int round = 0; round < 200; ++round) {
      const int d = testgen::uniform(rng, 1, 4);
      const auto labels = label_names(testgen::uniform(rng, 0, 2));
      const auto t = testgen::random_labeled_forest(rng, testgen::uniform(rng, 1, 20), d, labels);
      const int vars = testgen::uniform(rng, 2, 3);
      const auto type = random_type(rng, vars, d, labels);
      const auto res = qe_type_step(type, t, d);
      if (type_satisfiable(type, d)) {
        ++satisfiable;
        CHECK(res.new_labels.size() == static_cast<std::size_t>(vars - 1 + 2));
      } else {
        CHECK(res.alpha->kind == LcdKind::False);
        CHECK(res.new_labels.empty());
      }
      CHECK(res.forest.label_count() == t.label_count() + static_cast<int>(res.new_labels.size()));
      expect_elimination(t, *type_formula(type, "T"), vars - 1, res);
    }
    CHECK(satisfiable > 50);
  }

  TEST_CASE("enumerated types: every type on small forests") {
    testgen::Rng rng(32);
    const std::vector<std::string> labels{"c0"};
    for (int round = 0; round < 8; ++round) {
      const int d = testgen::uniform(rng, 1, 3);
      const auto t = testgen::random_labeled_forest(rng, testgen::uniform(rng, 2, 9), d, labels);
      for (const auto &type : lcd_types_enum(3, d, labels)) {
        expect_elimination(t, *type_formula(type, "T"), 2, qe_type_step(type, t, d));
      }
    }
  }

  TEST_CASE("arbitrary formulas: exact elimination") {
    testgen::Rng rng(33);
    for (int round = 0; round < 200; ++round) {
      const int d = testgen::uniform(rng, 1, 4);
      const auto labels = label_names(testgen::uniform(rng, 0, 2));
      const auto t = testgen::random_labeled_forest(rng, testgen::uniform(rng, 1, 16), d, labels);
      const int k = testgen::uniform(rng, 1, 3);
      const auto psi = testgen::random_lcd(rng, k + 1, d, labels, 3);
      QeOptions opts;
      opts.label_prefix = "step/";
      const auto res = qe_trees_step(psi, k, t, d, opts);
      int mentioned = 0;
      for (const int v : lcd_variables(*psi)) {
        mentioned += v != k ? 1 : 0;
      }
      const auto m = static_cast<std::size_t>(std::max(mentioned, 1));
      CHECK(res.new_labels.size() == static_cast<std::size_t>(res.types) * (m + 2));
      for (const auto &name : res.new_labels) {
        CHECK(name.rfind("step/qe/", 0) == 0);
      }
      for (const int v : lcd_variables(*res.alpha)) {
        CHECK(v < k);
      }
      expect_elimination(t, *psi, k, res);
    }
  }

  TEST_CASE("y in another tree or the same root") {
    // Roots 0 (labeled c) and 1; children 2 under 0 and 3 under 1.
    LabeledForest t{RootedForest({-1, -1, 0, 1}), "T"};
    t.set(t.add_label("c"), 0);
    LcdType other;
    other.delta = {{1, 0}, {0, 1}};
    other.labels = {{{"c", false}}, {{"c", true}}};
    const auto res = qe_type_step(other, t, 2);
    const LcdProgram alpha(*res.alpha, res.forest);
    CHECK(alpha.eval(std::vector<Vertex>{1}));
    CHECK_FALSE(alpha.eval(std::vector<Vertex>{0})); // labeled, so excluded by its own literal
    CHECK_FALSE(alpha.eval(std::vector<Vertex>{2}));

    LcdType same;
    same.delta = {{1, 1}, {1, 1}};
    same.labels = {{{"c", true}}, {{"c", true}}};
    const auto res2 = qe_type_step(same, t, 2);
    const LcdProgram alpha2(*res2.alpha, res2.forest);
    CHECK(alpha2.eval(std::vector<Vertex>{0}));
    CHECK_FALSE(alpha2.eval(std::vector<Vertex>{1}));
  }

  TEST_CASE("y as an ancestor of x records a single bit") {
    // Chain 0 - 1 - 2, root labeled c; x at depth 3, y its root.
    LabeledForest t{RootedForest({-1, 0, 1}), "T"};
    const int c = t.add_label("c");
    t.set(c, 0);
    LcdType type;
    type.delta = {{3, 1}, {1, 1}};
    type.labels = {{}, {{"c", true}}};
    const auto res = qe_type_step(type, t, 3);
    REQUIRE(res.new_labels.size() == 3);
    const int bit = res.forest.label_index(res.new_labels[0]);
    CHECK(res.forest.has(bit, 2));
    CHECK_FALSE(res.forest.has(bit, 1));
    CHECK_FALSE(res.forest.has(bit, 0));
    for (std::size_t i = 1; i < res.new_labels.size(); ++i) {
      const int l = res.forest.label_index(res.new_labels[i]);
      for (Vertex v = 0; v < 3; ++v) {
        CHECK_FALSE(res.forest.has(l, v));
      }
    }
    CHECK(eval_lcd(res.forest, *res.alpha, std::vector<Vertex>{2}));

    LabeledForest bare{RootedForest({-1, 0, 1}), "T"};
    bare.add_label("c");
    CHECK_FALSE(eval_lcd(qe_type_step(type, bare, 3).forest, *qe_type_step(type, bare, 3).alpha,
                         std::vector<Vertex>{2}));
  }

  TEST_CASE("unsatisfiable types give false") {
    LabeledForest t{RootedForest({-1, 0}), "T"};
    LcdType type;
    type.delta = {{2, 2}, {2, 1}}; // y shallower than its common ancestors with x
    type.labels = {{}, {}};
    const auto res = qe_type_step(type, t, 2);
    CHECK(res.alpha->kind == LcdKind::False);
    CHECK(res.types == 0);
  }

  TEST_CASE("dummy variable and contract checks") {
    testgen::Rng rng(34);
    const auto t = testgen::random_labeled_forest(rng, 6, 2, {"c"});
    const auto psi = lcd_and({lcd_label("c", 1), lcd_atom("T", 2, 1, 1)});
    const auto res = qe_trees_step(psi, 1, t, 2);
    expect_elimination(t, *psi, 1, res);
    CHECK_THROWS_AS(qe_trees_step(psi, 0, t, 2), Error);
    CHECK_THROWS_AS(qe_trees_step(lcd_atom("T", 1, 0, 3), 1, t, 2), Error);
    CHECK_THROWS_AS(qe_trees_step(lcd_atom("U", 1, 0, 1), 1, t, 2), Error);
    LabeledForest deep{RootedForest({-1, 0, 1}), "T"};
    CHECK_THROWS_AS(qe_trees_step(psi, 1, deep, 2), Error);
    QeOptions tight;
    tight.max_labels = 2;
    CHECK_THROWS_AS(qe_trees_step(lcd_atom("T", 1, 0, 1), 1, t, 2, tight), Error);
  }
}
