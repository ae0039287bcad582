// JSON reading and writing of models ("ctl-model/1").

#ifndef CTLEV_MODEL_IO_HPP
#define CTLEV_MODEL_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctlev/model.hpp"

namespace ctlev {

inline constexpr std::string_view kModelVersion = "ctl-model/1";

struct LoadOptions {
  /// Missing proposition labels of a Kripke input default to ff instead of
  /// being rejected.
  bool permissive_labels = false;
};

struct LoadResult {
  Model model;
  std::vector<std::string> warnings;
};

/// Label keys are formula texts, so evidence fragments with compound labels
/// load as well; the context is the closure of all keys.
LoadResult load_model(std::string_view text, const LoadOptions& options = {});
LoadResult load_model_json(const nlohmann::json& doc, const LoadOptions& options = {});
LoadResult load_model_file(const std::string& path, const LoadOptions& options = {});

/// Canonical form: states, transitions and label keys in lexicographic order.
nlohmann::json model_to_json(const Model& m);
std::string dump_model(const Model& m);

}  // namespace ctlev

#endif  // CTLEV_MODEL_IO_HPP
