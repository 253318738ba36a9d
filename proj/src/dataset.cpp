#include "imsel/dataset.hpp"

#include <stdexcept>

namespace imsel {

Dataset center(const Dataset& data) {
  if (data.n() < 2) throw std::invalid_argument("center: need at least 2 rows");
  Dataset out = data;
  out.y.array() -= data.y.mean();
  for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
    out.X.col(j).array() -= data.X.col(j).mean();
  }
  return out;
}

}  // namespace imsel
