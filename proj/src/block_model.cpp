#include "curvlab/block_model.hpp"

#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

BlockModelSpace::BlockModelSpace(std::vector<SymForm> block_forms) : forms_(std::move(block_forms)) {
  if (forms_.empty()) raise(ErrorCode::InvalidArgument, "model needs at least one block");
  offsets_.reserve(forms_.size());
  for (const SymForm& form : forms_) {
    offsets_.push_back(total_dim_);
    for (int i = 0; i < form.dim(); ++i) {
      block_of_.push_back(static_cast<int>(offsets_.size()) - 1);
    }
    total_dim_ += form.dim();
  }
}

std::vector<int> BlockModelSpace::block_dims() const {
  std::vector<int> dims;
  dims.reserve(forms_.size());
  for (const SymForm& form : forms_) dims.push_back(form.dim());
  return dims;
}

CurvTensor BlockModelSpace::direct_sum_tensor() const {
  std::vector<CurvTensor> parts;
  parts.reserve(forms_.size());
  for (const SymForm& form : forms_) parts.push_back(build_canonical(form));
  return direct_sum(parts);
}

SymForm BlockModelSpace::direct_sum_form() const {
  Matrix entries = Matrix::Zero(total_dim_, total_dim_);
  for (std::size_t b = 0; b < forms_.size(); ++b) {
    const int o = offsets_[b];
    const int d = forms_[b].dim();
    entries.block(o, o, d, d) = forms_[b].entries();
  }
  return SymForm(std::move(entries));
}

void BlockModelSpace::require_nondegenerate(double tol) const {
  for (std::size_t b = 0; b < forms_.size(); ++b) {
    if (signature(forms_[b], tol).n_zero > 0) {
      std::ostringstream msg;
      msg << "block " << b + 1 << " of " << forms_.size() << " is degenerate";
      raise(ErrorCode::DegenerateForm, msg.str());
    }
  }
}

}  // namespace curvlab
