#pragma once

#include <vector>

#include "finres/data/panel.hpp"

namespace finres::stats {

struct PcaComposite {
  std::vector<double> scores;
  /// Unit norm, sign fixed so the loadings sum to ≥ 0.
  std::vector<double> loadings;
  double explained_fraction = 0.0;
};

/// First principal component of the panel. With `standardize_inputs` the
/// columns are z-scored (correlation-matrix PCA); otherwise only centered
/// (covariance-matrix PCA). Scores are the projections of the transformed
/// rows onto the leading eigenvector.
PcaComposite PrincipalComposite(const data::TimeSeriesPanel& panel, bool standardize_inputs = true);

}  // namespace finres::stats
