#include "qsl/protocol.hpp"

#include <cmath>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {

HamiltonianProtocol::HamiltonianProtocol(Evaluator evaluator, Eigen::Index dim, double duration,
                                         double hbar, std::string label)
    : evaluator_(std::move(evaluator)),
      dim_(dim),
      duration_(duration),
      hbar_(hbar),
      label_(std::move(label)) {
  if (!evaluator_) throw Error(ErrorKind::BadConfig, "protocol has no evaluator");
  if (dim_ <= 0) throw Error(ErrorKind::BadConfig, "protocol dimension must be positive");
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    throw Error(ErrorKind::BadConfig, "duration must be positive");
  }
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) {
    throw Error(ErrorKind::BadConfig, "hbar must be positive");
  }
}

Matrix HamiltonianProtocol::at(double t) const {
  Matrix h = evaluator_(t);
  if (h.rows() != dim_ || h.cols() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "evaluator returned " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                    " at t=" + std::to_string(t) + ", expected dimension " + std::to_string(dim_));
  }
  return h;
}

}  // namespace qsl
