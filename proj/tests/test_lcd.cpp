#include <doctest.h>

#include <functional>
#include <set>

#include "forest_gen.hpp"
#include "lcd_oracle.hpp"
#include "sparsemc/error.hpp"
#include "sparsemc/logic/lcd.hpp"

using namespace sparsemc;
using namespace sparsemc::logic;
using oracle::count_common;
using oracle::interpret;

namespace {

// The type a tuple realizes, as a comparable key.
std::vector<int> realized_key(const LabeledForest &t, const std::vector<Vertex> &tuple) {
  std::vector<int> key;
  for (const Vertex u : tuple) {
    for (const Vertex w : tuple) {
      key.push_back(count_common(t.forest(), u, w));
    }
    for (int l = 0; l < t.label_count(); ++l) {
      key.push_back(t.has(l, u) ? 1 : 0);
    }
  }
  return key;
}

std::vector<int> type_key(const LcdType &type) {
  std::vector<int> key;
  for (int x = 0; x < type.size(); ++x) {
    for (int y = 0; y < type.size(); ++y) {
      key.push_back(type.delta[x][y]);
    }
    for (const auto &lit : type.labels[x]) {
      key.push_back(lit.second ? 1 : 0);
    }
  }
  return key;
}

// Forest where every node has `branch` children per label mask, down to depth d.
LabeledForest universal_forest(int branch, int d, int label_count) {
  const int masks = 1 << label_count;
  std::vector<Vertex> parent;
  std::vector<int> mask;
  std::function<void(Vertex, int)> grow = [&](Vertex p, int depth) {
    if (depth > d) {
      return;
    }
    for (int m = 0; m < masks; ++m) {
      for (int b = 0; b < branch; ++b) {
        const auto v = static_cast<Vertex>(parent.size());
        parent.push_back(p);
        mask.push_back(m);
        grow(v, depth + 1);
      }
    }
  };
  grow(-1, 1);
  LabeledForest t{RootedForest(parent), "T"};
  for (int l = 0; l < label_count; ++l) {
    const int id = t.add_label("c" + std::to_string(l));
    for (std::size_t v = 0; v < parent.size(); ++v) {
      t.set(id, static_cast<Vertex>(v), ((mask[v] >> l) & 1) != 0);
    }
  }
  return t;
}

} // namespace

TEST_SUITE("lcd") {
  TEST_CASE("constructors fold constants") {
    CHECK(lcd_and({lcd_true(), lcd_true()})->kind == LcdKind::True);
    CHECK(lcd_and({lcd_label("c", 0), lcd_false()})->kind == LcdKind::False);
    CHECK(lcd_or({lcd_false(), lcd_label("c", 0)})->kind == LcdKind::Label);
    CHECK(lcd_not(lcd_not(lcd_label("c", 0)))->kind == LcdKind::Label);
    CHECK(lcd_or({})->kind == LcdKind::False);
    const auto f = lcd_and({lcd_label("c", 0), lcd_and({lcd_atom("T", 1, 0, 1), lcd_label("d", 1)})});
    CHECK(f->kids.size() == 3);
    CHECK(to_string(*f) == "c(x0) & lcd[T,1](x0,x1) & d(x1)");
    CHECK(lcd_var_count(*f) == 2);
    CHECK(lcd_labels_by_var(*f).at(1) == std::vector<std::string>{"d"});
  }

  TEST_CASE("shapes from common-ancestor counts") {
    const auto same = shape_from_delta({{1, 1}, {1, 1}}, 3);
    REQUIRE(same);
    CHECK(same->forest.n() == 1);
    CHECK(same->node_of_var[0] == same->node_of_var[1]);

    const auto siblings = shape_from_delta({{2, 1}, {1, 2}}, 2);
    REQUIRE(siblings);
    CHECK(siblings->forest.n() == 3);
    CHECK(siblings->node_of_var[0] != siblings->node_of_var[1]);
    CHECK(siblings->forest.parent(siblings->node_of_var[0]) == siblings->forest.parent(siblings->node_of_var[1]));
    CHECK(siblings->forest.depth_of(siblings->node_of_var[0]) == 2);

    const auto single = shape_from_delta({{1}}, 1);
    REQUIRE(single);
    CHECK(single->forest.n() == 1);
    CHECK(single->forest.parent(0) == -1);

    CHECK_FALSE(shape_from_delta({{1, 2}, {2, 3}}, 3));                 // more common ancestors than depth
    CHECK_FALSE(shape_from_delta({{3}}, 2));                             // deeper than allowed
    CHECK_FALSE(shape_from_delta({{0}}, 2));                             // every node has itself
    CHECK_FALSE(shape_from_delta({{2, 2, 0}, {2, 2, 2}, {0, 2, 2}}, 2)); // not an ultrametric
    CHECK_THROWS_AS(shape_from_delta({{1, 0}, {1, 1}}, 2), Error);
  }

  TEST_CASE("shapes reproduce their counts") {
    for (const auto &type : lcd_types_enum(3, 3, {})) {
      const auto shape = shape_from_delta(type.delta, 3);
      REQUIRE(shape);
      for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
          CHECK(count_common(shape->forest, shape->node_of_var[x], shape->node_of_var[y]) == type.delta[x][y]);
        }
      }
    }
  }

  TEST_CASE("type enumeration counts") {
    CHECK(lcd_types_enum(1, 1, {}).size() == 1);
    CHECK(lcd_types_enum(1, 2, {"c"}).size() == 4);
    CHECK(lcd_types_enum(2, 2, {}).size() == 9);
    CHECK_THROWS_AS(lcd_types_enum(0, 2, {}), Error);
  }

  TEST_CASE("enumerated types are exactly the realizable ones") {
    struct Case {
      int k, d, labels;
    };
    for (const auto c : {Case{1, 3, 2}, Case{2, 2, 1}, Case{2, 3, 0}, Case{3, 2, 1}, Case{3, 3, 0}}) {
      std::vector<std::string> names;
      for (int l = 0; l < c.labels; ++l) {
        names.push_back("c" + std::to_string(l));
      }
      const auto t = universal_forest(c.k, c.d, c.labels);
      std::set<std::vector<int>> realized;
      testgen::for_each_tuple(t.n(), c.k, [&](const std::vector<Vertex> &tuple) { realized.insert(realized_key(t, tuple)); });
      std::set<std::vector<int>> enumerated;
      for (const auto &type : lcd_types_enum(c.k, c.d, names)) {
        CHECK(type_satisfiable(type, c.d));
        enumerated.insert(type_key(type));
      }
      CHECK(enumerated == realized);
    }
  }

  TEST_CASE("types are exclusive and cover every tuple") {
    Rng rng(21);
    const std::vector<std::string> labels{"a", "b"};
    for (int round = 0; round < 30; ++round) {
      const int k = testgen::uniform(rng, 1, 2);
      const int d = testgen::uniform(rng, 1, 3);
      const auto t = testgen::random_labeled_forest(rng, testgen::uniform(rng, 1, 8), d, labels);
      std::vector<LcdProgram> programs;
      for (const auto &type : lcd_types_enum(k, d, labels)) {
        programs.emplace_back(*type_formula(type, "T"), t);
      }
      testgen::for_each_tuple(t.n(), k, [&](const std::vector<Vertex> &tuple) {
        int hits = 0;
        for (const auto &p : programs) {
          hits += p.eval(tuple) ? 1 : 0;
        }
        CHECK(hits == 1);
      });
    }
  }

  TEST_CASE("normal form agrees with the formula") {
    Rng rng(22);
    CHECK(lcd_normalize(*lcd_true(), 2, 2, {"a"}, "T").size() == lcd_types_enum(2, 2, {"a"}).size());
    CHECK(lcd_normalize(*lcd_false(), 2, 2, {"a"}, "T").empty());
    const std::vector<std::string> labels{"a"};
    for (int round = 0; round < 60; ++round) {
      const int k = testgen::uniform(rng, 1, 3);
      const int d = testgen::uniform(rng, 1, 3);
      const auto f = testgen::random_lcd(rng, k, d, labels, 3);
      const auto types = lcd_normalize(*f, k, d, labels, "T");
      std::vector<LcdPtr> disjuncts;
      for (const auto &type : types) {
        disjuncts.push_back(type_formula(type, "T"));
      }
      const auto normal = lcd_or(disjuncts);
      const auto t = testgen::random_labeled_forest(rng, testgen::uniform(rng, 1, 8), d, labels);
      testgen::for_each_tuple(t.n(), k, [&](const std::vector<Vertex> &tuple) {
        CHECK(interpret(t, *f, tuple) == interpret(t, *normal, tuple));
      });
    }
  }

  TEST_CASE("compiled evaluation agrees with interpretation") {
    Rng rng(23);
    const std::vector<std::string> labels{"a", "b"};
    for (int round = 0; round < 100; ++round) {
      const int k = testgen::uniform(rng, 1, 3);
      const int d = testgen::uniform(rng, 1, 4);
      const auto t = testgen::random_labeled_forest(rng, testgen::uniform(rng, 1, 10), d, labels);
      LcdPtr f;
      if (round % 2 == 0) {
        f = testgen::random_lcd(rng, k, d, labels, 4);
      } else {
        // Wide disjunction of type formulas with extra conjuncts, to exercise the bucketed path.
        std::vector<LcdPtr> kids;
        for (const auto &type : lcd_types_enum(k, d, labels)) {
          if (testgen::coin(rng, 0.3)) {
            kids.push_back(lcd_and({type_formula(type, "T"), testgen::random_lcd(rng, k, d, labels, 2)}));
          }
        }
        kids.push_back(testgen::random_lcd(rng, k, d, labels, 2));
        f = lcd_or(kids);
      }
      const LcdProgram program(*f, t);
      testgen::for_each_tuple(t.n(), k, [&](const std::vector<Vertex> &tuple) {
        CHECK(program.eval(tuple) == interpret(t, *f, tuple));
      });
    }
  }

  TEST_CASE("evaluation errors") {
    LabeledForest t{RootedForest({-1, 0}), "T"};
    CHECK_THROWS_AS(LcdProgram(*lcd_label("missing", 0), t), Error);
    CHECK_THROWS_AS(LcdProgram(*lcd_atom("U", 1, 0, 0), t), Error);
    const std::vector<Vertex> short_tuple{0};
    CHECK_THROWS_AS((void)LcdProgram(*lcd_atom("T", 1, 0, 1), t).eval(short_tuple), Error);
  }

  TEST_CASE("skeletons") {
    Skeleton b(3);
    b.add_forest("R", RootedForest({-1, 0, -1}));
    const int red = b.add_label("red");
    b.set_label(red, 2);
    const std::vector<Vertex> root{0};
    const std::vector<Vertex> child{1};
    CHECK(eval_lcd(b, *lcd_true(), root));
    CHECK(eval_lcd(b, *lcd_atom("R", 1, 0, 0), root));
    CHECK(eval_lcd(b, *lcd_atom("R", 2, 0, 0), child));
    const std::vector<Vertex> pair{1, 2};
    CHECK(eval_lcd(b, *lcd_and({lcd_atom("R", 0, 0, 1), lcd_label("red", 1)}), pair));

    const auto s = b.to_structure(true);
    CHECK(s.binary_holds(s.binary_index("R"), 0, 1));
    CHECK(s.unary_holds(s.unary_index("root:R"), 2));
    CHECK_FALSE(s.unary_holds(s.unary_index("root:R"), 1));
    const auto back = Skeleton::from_structure(b.to_structure(false), 2);
    CHECK(back.forest(0) == b.forest(0));
    CHECK(back.has_label(back.label_index("red"), 2));
    CHECK(back.depth() == 2);

    CHECK_THROWS_AS(Skeleton::from_structure(b.to_structure(false), 1), Error);
    CHECK_THROWS_AS(Skeleton::from_structure(parse_structure("structure 3\nbinary R\np 0 2\np 1 2\n"), 3), Error);
    CHECK_THROWS_AS(Skeleton::from_structure(parse_structure("structure 2\nbinary R\np 0 1\np 1 0\n"), 3), Error);
    CHECK_THROWS_AS(b.add_label("R"), Error);
  }
}
