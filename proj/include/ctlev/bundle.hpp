// Evidence bundles ("ctl-evidence/1"): a checked model, the formula AST and
// one combined evidence model per temporal operator, as consumed by the
// viewer.

#ifndef CTLEV_BUNDLE_HPP
#define CTLEV_BUNDLE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctlev/formula.hpp"
#include "ctlev/model.hpp"
#include "ctlev/proof.hpp"

namespace ctlev {

inline constexpr std::string_view kBundleVersion = "ctl-evidence/1";
inline constexpr std::string_view kToolVersion = "ctl 0.1.0";

class BundleError : public Error {
 public:
  using Error::Error;
};

struct AstNode {
  std::string id;
  Formula formula;
  /// Node id of the desugared image, for sugared nodes only.
  std::optional<std::string> core;

  friend bool operator==(const AstNode&, const AstNode&) = default;
};

struct CombinedBlock {
  Model minimal;
  Model natural;
  /// The same two models after local closure.
  Model minimal_closed;
  Model natural_closed;

  friend bool operator==(const CombinedBlock&, const CombinedBlock&) = default;
};

struct EvidenceBundle {
  Formula formula;
  /// Labelled on every AST node, sugared ones included.
  Model model;
  /// Preorder of the formula first, then the remaining nodes of its core form.
  std::vector<AstNode> ast;
  /// Keyed by core temporal formula.
  std::map<Formula, CombinedBlock> combined;
  /// Input name to SHA-256 hex digest.
  std::map<std::string, std::string> inputs;
  std::string tool = std::string(kToolVersion);

  friend bool operator==(const EvidenceBundle&, const EvidenceBundle&) = default;

  const AstNode& node(const Formula& f) const;
  const AstNode* find_node(std::string_view id) const;
};

std::string sha256_hex(std::string_view data);

/// Throws BundleError when the proof model lacks a label the formula needs.
EvidenceBundle make_bundle(const Proof& p, const Formula& f, std::map<std::string, std::string> inputs = {});

nlohmann::json bundle_to_json(const EvidenceBundle& b);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string export_bundle(const EvidenceBundle& b);
std::string export_bundle(const Proof& p, const Formula& f, std::map<std::string, std::string> inputs = {});

/// Throws BundleError on a version mismatch, a malformed document or a
/// dangling state or node reference.
EvidenceBundle import_bundle(std::string_view text);
EvidenceBundle bundle_from_json(const nlohmann::json& doc);

/// Core model plus per-state evidence recovered from the combined blocks;
/// local operators get their single-state shapes.
Proof proof_from_bundle(const EvidenceBundle& b);

}  // namespace ctlev

#endif  // CTLEV_BUNDLE_HPP
