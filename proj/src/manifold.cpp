#include "infogeo/manifold.hpp"

#include <Eigen/Cholesky>

namespace infogeo {

void validate_model_at(const ManifoldModel& model, const Vector& q, double tol) {
  const Matrix g = metric_at(model, q);
  if (g.rows() != model.dim || g.cols() != model.dim)
    throw Error("validate_model_at: metric has wrong shape for model '" + model.name + "'");
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol)
    throw Error("validate_model_at: metric not symmetric (defect " + std::to_string(asym) +
                ") for model '" + model.name + "'");
  Eigen::LLT<Matrix> llt(Matrix((g + g.transpose()) / 2.0));
  if (llt.info() != Eigen::Success)
    throw Error("validate_model_at: metric not positive-definite for model '" + model.name +
                "'");
  const Tensor3 t = skewness_at(model, q);
  if (t.dimension() != model.dim)
    throw Error("validate_model_at: skewness has wrong shape for model '" + model.name + "'");
  const double defect = t.symmetryDefect();
  if (defect > tol)
    throw Error("validate_model_at: skewness not totally symmetric (defect " +
                std::to_string(defect) + ") for model '" + model.name + "'");
}

}  // namespace infogeo
