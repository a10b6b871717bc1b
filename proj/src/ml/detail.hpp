#pragma once

#include "testability/core/record.hpp"

namespace testability::ml::detail {

/// check_feature_matrix plus SingleClassInput when a class is missing.
void require_two_classes(const FeatureMatrix& matrix);

}  // namespace testability::ml::detail
