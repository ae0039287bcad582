#include "ctlev/bundle.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "ctlev/checker.hpp"
#include "ctlev/proof.hpp"
#include "support/build.hpp"
#include "support/corpus.hpp"

namespace ctlev {
namespace {

using nlohmann::json;
using testing::F;
using testing::fixture;

EvidenceBundle bundle_for(const char* file, const char* formula) {
  const Formula f = F(formula);
  return make_bundle(build_proof(check(fixture(file), f)), f, {{"model", "m"}, {"formula", "f"}});
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Bundle, Layout) {
  const EvidenceBundle b = bundle_for("chain.json", "EX q");
  const json doc = bundle_to_json(b);
  EXPECT_EQ(doc["version"], "ctl-evidence/1");
  EXPECT_EQ(doc["provenance"]["tool"], "ctl 0.1.0");
  EXPECT_EQ(doc["ast"]["root"], "n0");
  EXPECT_EQ(doc["ast"]["nodes"][1]["name"], "q");
  EXPECT_EQ(doc["model"]["labels"]["n0"]["b"], true);
  EXPECT_EQ(doc["combined"].size(), 1u);
  EXPECT_TRUE(doc["combined"]["n0"].contains("natural"));
  EXPECT_TRUE(doc["localClosure"]["n0"].contains("minimal"));
}

TEST(Bundle, SugarNodesLinkToCore) {
  const EvidenceBundle b = bundle_for("game4.json", "EG (!win && EF win)");
  EXPECT_EQ(b.combined.size(), 2u);
  for (const auto& [g, block] : b.combined) EXPECT_TRUE(g.is_temporal() && g.is_core());
  const AstNode& root = b.ast.front();
  EXPECT_EQ(root.formula, F("EG (!win && EF win)"));
  ASSERT_TRUE(root.core.has_value());
  EXPECT_EQ(b.find_node(*root.core)->formula, desugar(root.formula));
  EXPECT_EQ(b.model.label(b.model.index_of("s0"), root.formula), true);
}

TEST(Bundle, RoundTrip) {
  const EvidenceBundle b = bundle_for("game4.json", "EG (!win && EF win)");
  const std::string text = export_bundle(b);
  const EvidenceBundle back = import_bundle(text);
  EXPECT_EQ(back, b);
  EXPECT_EQ(export_bundle(back), text);
}

TEST(Bundle, RandomRoundTripsAndProofs) {
  testing::Rng rng(307);
  for (int i = 0; i < 100; ++i) {
    const auto ps = testing::props(testing::pick(rng, 1, 3));
    const Formula f = testing::random_formula(rng, ps, 4);
    const Proof p = build_proof(check(testing::random_kripke(rng, 5, 8, ps), f));
    const EvidenceBundle b = make_bundle(p, f);
    const EvidenceBundle back = import_bundle(export_bundle(b));
    ASSERT_EQ(back, b) << f.to_string();
    const ProofReport r = validate_proof(proof_from_bundle(back));
    ASSERT_TRUE(r.ok()) << f.to_string() << "\n" << r.to_string();
  }
}

TEST(Bundle, ImportErrors) {
  const json good = bundle_to_json(bundle_for("chain.json", "EX q"));
  const auto rejects = [](const json& doc) {
    EXPECT_THROW(import_bundle(doc.dump()), BundleError) << doc.dump();
  };

  json version = good;
  version["version"] = "ctl-evidence/2";
  rejects(version);

  json state = good;
  state["combined"]["n0"]["minimal"]["labels"]["n1"]["zz"] = true;
  rejects(state);

  json transition = good;
  transition["model"]["transitions"].push_back({"a", "zz"});
  rejects(transition);

  json node = good;
  node["ast"]["nodes"][0]["children"] = json::array({"n7"});
  rejects(node);

  json text = good;
  text["ast"]["nodes"][0]["text"] = "EX p";
  rejects(text);

  json temporal = good;
  temporal["ast"]["nodes"][1]["temporal"] = true;
  rejects(temporal);

  json missing = good;
  missing.erase("ast");
  rejects(missing);

  EXPECT_THROW(import_bundle("{"), BundleError);
  EXPECT_THROW(import_bundle("[]"), BundleError);
}

TEST(Bundle, TamperedEvidenceFailsValidation) {
  const EvidenceBundle b = bundle_for("loop.json", "EG p");
  json doc = bundle_to_json(b);
  doc["combined"]["n0"]["minimal"]["transitions"] = json::array();
  const ProofReport r = validate_proof(proof_from_bundle(import_bundle(doc.dump())));
  EXPECT_FALSE(r.ok());
}

TEST(Bundle, MakeNeedsLabels) {
  const Proof p = build_proof(check(fixture("chain.json"), F("EX q")));
  EXPECT_THROW(make_bundle(p, F("EG p")), BundleError);
}

}  // namespace
}  // namespace ctlev
