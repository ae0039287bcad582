#include "ctlev/model.hpp"

#include <gtest/gtest.h>

#include "ctlev/model_io.hpp"
#include "support/corpus.hpp"

namespace ctlev {
namespace {

Model fixture(const std::string& name) { return load_model_file(std::string(CTLEV_DATA_DIR) + "/" + name).model; }

const Formula p = Formula::prop("p");
const Formula q = Formula::prop("q");

TEST(Load, SmallestKripkeModel) {
  const Model m = load_model(R"({"version": "ctl-model/1", "states": [{"id": "s"}], "labels": {"p": {"s": true}}})")
                      .model;
  EXPECT_EQ(m.size(), 1u);
  EXPECT_TRUE(m.is_closed(0));
  EXPECT_EQ(m.closed_count(), 1u);
  EXPECT_EQ(m.label(0, p), true);
  EXPECT_TRUE(m.is_kripke());
}

TEST(Load, Chain) {
  const Model m = fixture("chain.json");
  EXPECT_EQ(m.states(), (std::vector<StateId>{"a", "b", "c"}));
  EXPECT_EQ(m.transition_count(), 2u);
  EXPECT_EQ(m.label(m.index_of("b"), p), true);
  EXPECT_EQ(m.label(m.index_of("c"), q), true);
  EXPECT_TRUE(m.is_full());
}

TEST(Load, Errors) {
  EXPECT_THROW(load_model(R"({"version": "ctl-model/1", "states": [{"id": "a"}], "transitions": [["a", "x"]]})"),
               ModelError);
  EXPECT_THROW(load_model(R"({"version": "ctl-model/1", "states": [{"id": "a"}, {"id": "a"}]})"), ModelError);
  EXPECT_THROW(load_model(R"({"version": "ctl-model/2", "states": []})"), ModelError);
  EXPECT_THROW(load_model(R"({"version": "ctl-model/1", "states": [{"name": "a"}]})"), ModelError);
  EXPECT_THROW(load_model(R"({"version": "ctl-model/1", "states": [{"id": "a", "closed": 1}]})"), ModelError);
  EXPECT_THROW(load_model("{"), ModelError);
  EXPECT_THROW(load_model_file("/nonexistent/model.json"), ModelError);
}

TEST(Load, StrictAndPermissiveLabels) {
  const char* text = R"({"version": "ctl-model/1", "states": [{"id": "a"}, {"id": "b"}],
                         "labels": {"p": {"a": true}}})";
  EXPECT_THROW(load_model(text), ModelError);
  const LoadResult r = load_model(text, LoadOptions{true});
  EXPECT_EQ(r.model.label(r.model.index_of("b"), p), false);
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(Load, PartialModelsKeepUndefinedLabels) {
  const Model m = load_model(R"({"version": "ctl-model/1", "states": [{"id": "a", "closed": false}, {"id": "b"}],
                                 "labels": {"EX p": {"a": true}}})")
                      .model;
  EXPECT_FALSE(m.is_closed(m.index_of("a")));
  EXPECT_EQ(m.label(0, parse_formula("EX p")), true);
  EXPECT_FALSE(m.label(0, p).has_value());
  EXPECT_TRUE(m.context().contains(p));
}

TEST(Load, CanonicalRoundTrip) {
  const Model m = fixture("game4.json");
  const std::string text = dump_model(m);
  EXPECT_EQ(load_model(text).model, m);
  EXPECT_EQ(dump_model(load_model(text).model), text);
}

TEST(Successors, Examples) {
  EXPECT_EQ(successors(fixture("chain.json"), "a"), (std::vector<StateId>{"b"}));
  EXPECT_TRUE(successors(fixture("dead.json"), "t").empty());
  EXPECT_EQ(successors(fixture("loop.json"), "s"), (std::vector<StateId>{"s"}));
  EXPECT_THROW(successors(fixture("chain.json"), "zz"), ModelError);
}

TEST(Submodel, Examples) {
  const Model chain = fixture("chain.json");
  EXPECT_TRUE(is_submodel(chain, chain));

  Model still_closed = chain;
  still_closed.remove_transition(chain.index_of("b"), chain.index_of("c"));
  EXPECT_FALSE(is_submodel(still_closed, chain));

  Model opened = still_closed;
  opened.set_closed(chain.index_of("b"), false);
  opened.erase_label(chain.index_of("c"), q);
  EXPECT_TRUE(is_submodel(opened, chain));
  EXPECT_FALSE(is_submodel(chain, opened));
}

TEST(RestrictReachable, Examples) {
  const Model chain = fixture("chain.json");
  const Model c = restrict_reachable(chain, "c");
  EXPECT_EQ(c.states(), (std::vector<StateId>{"c"}));
  EXPECT_TRUE(c.is_closed(0));
  EXPECT_EQ(c.transition_count(), 0u);
  EXPECT_EQ(c.label(0, q), true);
  EXPECT_EQ(c.label_count(), 2u);
  EXPECT_EQ(restrict_reachable(chain, "a"), chain);

  Model two({"a", "b", "c", "d", "e"}, {p});
  for (StateIndex s = 0; s < 5; ++s) {
    two.set_closed(s);
    two.set_label(s, p, s % 2 == 0);
  }
  two.add_transition(0, 1);
  two.add_transition(1, 0);
  two.add_transition(2, 3);
  two.add_transition(3, 4);
  const Model part = restrict_reachable(two, "c");
  EXPECT_EQ(part.states(), (std::vector<StateId>{"c", "d", "e"}));
  EXPECT_EQ(part.transition_count(), 2u);
  EXPECT_TRUE(is_submodel(part, two));
}

TEST(Join, Examples) {
  const Model chain = fixture("chain.json");
  EXPECT_EQ(join(chain, {}), chain);

  Model wide = chain;
  const Formula ex = parse_formula("EX p");
  wide.extend_context({ex});
  const Model j = join(wide, {{"a", ex, true}});
  EXPECT_EQ(j.label_count(), wide.label_count() + 1);
  EXPECT_EQ(j.label(0, ex), true);

  EXPECT_THROW(join(chain, {{"a", p, false}}), ModelError);
  EXPECT_THROW(join(chain, {{"zz", p, false}}), ModelError);
}

TEST(MaximalLassos, Examples) {
  const auto loop = maximal_lassos(fixture("loop.json"), "s", 4);
  EXPECT_NE(std::find(loop.begin(), loop.end(), Path{{0}, 0}), loop.end());
  for (const Path& path : loop) EXPECT_TRUE(path.is_lasso());

  const auto chain = maximal_lassos(fixture("chain.json"), "a", 6);
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0], (Path{{0, 1, 2}, std::nullopt}));

  const auto dead = maximal_lassos(fixture("dead.json"), "t", 2);
  ASSERT_EQ(dead.size(), 1u);
  EXPECT_EQ(dead[0], (Path{{0}, std::nullopt}));
}

// A random partial model over {p, q, p || q}.
Model random_partial(testing::Rng& rng) {
  const std::size_t n = testing::pick(rng, 1, 4);
  Model m(testing::state_ids(n), subformula_closure(Formula::disj(p, q)));
  for (StateIndex s = 0; s < n; ++s) {
    m.set_closed(s, testing::coin(rng));
    for (const Formula& f : m.context())
      if (testing::coin(rng)) m.set_label(s, f, testing::coin(rng));
  }
  const std::size_t edges = testing::pick(rng, 0, 2 * n);
  for (std::size_t i = 0; i < edges; ++i) m.add_transition(testing::pick(rng, 0, n - 1), testing::pick(rng, 0, n - 1));
  return m;
}

Model random_predecessor(testing::Rng& rng, Model m, int steps) {
  for (int i = 0; i < steps; ++i) {
    const auto preds = direct_predecessors(m);
    if (preds.empty()) break;
    m = preds[testing::pick(rng, 0, preds.size() - 1)];
  }
  return m;
}

TEST(Submodel, PartialOrder) {
  testing::Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const Model m3 = random_partial(rng);
    const Model m2 = random_predecessor(rng, m3, 3);
    const Model m1 = random_predecessor(rng, m2, 3);
    EXPECT_TRUE(is_submodel(m3, m3));
    EXPECT_TRUE(is_submodel(m2, m3));
    EXPECT_TRUE(is_submodel(m1, m2));
    EXPECT_TRUE(is_submodel(m1, m3));
    if (!(m1 == m2)) EXPECT_FALSE(is_submodel(m2, m1));
    for (const Model& d : direct_predecessors(m3)) {
      EXPECT_TRUE(is_submodel(d, m3));
      EXPECT_FALSE(d == m3);
    }
    for (const StateId& s : m3.states()) EXPECT_TRUE(is_submodel(restrict_reachable(m3, s), m3));
  }
}

TEST(Submodel, SupermodelPreservesSuccessorsAndPaths) {
  testing::Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    const Model m2 = random_partial(rng);
    const Model m1 = random_predecessor(rng, m2, 4);
    for (StateIndex s = 0; s < m1.size(); ++s) {
      const StateId& id = m1.id(s);
      const auto succ1 = successors(m1, id);
      const auto succ2 = successors(m2, id);
      EXPECT_TRUE(std::includes(succ2.begin(), succ2.end(), succ1.begin(), succ1.end()));
      if (m1.is_closed(s)) EXPECT_EQ(succ1, succ2);

      const std::size_t len = 2 * m2.size();
      const auto paths2 = maximal_lassos(m2, id, len);
      auto ids = [](const Model& m, const std::vector<StateIndex>& stem) {
        std::vector<StateId> out;
        for (StateIndex x : stem) out.push_back(m.id(x));
        return out;
      };
      for (const Path& path : maximal_lassos(m1, id, m1.size())) {
        const auto stem = ids(m1, path.stem);
        bool extended = false, equal = false;
        for (const Path& other : paths2) {
          const auto stem2 = ids(m2, other.stem);
          if (stem2.size() >= stem.size() && std::equal(stem.begin(), stem.end(), stem2.begin())) extended = true;
          if (stem2 == stem && other.loop_index == path.loop_index) equal = true;
        }
        EXPECT_TRUE(extended);
        if (path.is_lasso() || m1.is_closed(path.stem.back())) EXPECT_TRUE(equal);
      }
    }
  }
}

}  // namespace
}  // namespace ctlev
