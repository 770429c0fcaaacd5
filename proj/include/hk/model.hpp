#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hk {

enum class Model { average_based, uniform_affinity };

inline std::string to_string(Model model) {
  return model == Model::average_based ? "ave" : "uniform";
}

inline Model parse_model(std::string_view text) {
  if (text == "ave" || text == "average-based") return Model::average_based;
  if (text == "uniform" || text == "uniform-affinity") return Model::uniform_affinity;
  throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected ave|uniform)");
}

template <class Scalar>
void require_positive_epsilon(const Scalar& epsilon) {
  if (!(epsilon > Scalar(0))) {
    throw std::invalid_argument("confidence threshold epsilon must be positive");
  }
}

}  // namespace hk
