#pragma once

#include <vector>

#include "curvlab/curv_tensor.hpp"
#include "curvlab/sym_form.hpp"

namespace curvlab {

/// An ordered direct-sum decomposition V = V_1 + ... + V_k with a symmetric
/// form per block. Block i occupies coordinates [offset(i), offset(i) +
/// dim(i)) of R^N. The derived tensor is the direct sum of the canonical
/// curvature tensors of the block forms.
class BlockModelSpace {
 public:
  explicit BlockModelSpace(std::vector<SymForm> block_forms);

  int block_count() const { return static_cast<int>(forms_.size()); }
  int total_dim() const { return total_dim_; }

  const SymForm& block_form(int block) const { return forms_[static_cast<std::size_t>(block)]; }
  int block_dim(int block) const { return forms_[static_cast<std::size_t>(block)].dim(); }
  int block_offset(int block) const { return offsets_[static_cast<std::size_t>(block)]; }

  /// The block containing coordinate i.
  int block_of(int coordinate) const { return block_of_[static_cast<std::size_t>(coordinate)]; }

  std::vector<int> block_dims() const;

  CurvTensor direct_sum_tensor() const;
  SymForm direct_sum_form() const;

  /// Throws DegenerateForm when any block form is degenerate at the given
  /// rank tolerance. Structure-group analysis requires this.
  void require_nondegenerate(double tol = kRankTol) const;

 private:
  std::vector<SymForm> forms_;
  std::vector<int> offsets_;
  std::vector<int> block_of_;
  int total_dim_ = 0;
};

}  // namespace curvlab
