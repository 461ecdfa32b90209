#pragma once

#include <string>
#include <vector>

#include "curvlab/block_model.hpp"
#include "curvlab/curv_tensor.hpp"
#include "curvlab/sym_form.hpp"
#include "curvlab/types.hpp"

namespace curvlab {

/// A bijection of k block indices; image[i] = sigma(i), zero-based.
struct BlockPermutation {
  std::vector<int> image;

  explicit BlockPermutation(std::vector<int> img);
  static BlockPermutation identity(int k);

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[static_cast<std::size_t>(i)]; }
  BlockPermutation inverse() const;

  /// this after other: (a * b)(i) = a(b(i)).
  BlockPermutation compose(const BlockPermutation& other) const;

  bool is_identity() const;
  bool operator==(const BlockPermutation&) const = default;

  /// One-based cycle notation with fixed points omitted, e.g. "(1 2 3)";
  /// the identity prints as "()".
  std::string cycle_notation() const;
};

/// (g_1, ..., g_k; sigma): per-block linear maps plus a block permutation.
/// g_i carries block sigma^{-1}(i) onto block i and is stored as a square
/// matrix of that common dimension.
struct WreathElement {
  std::vector<LinearMap> components;
  BlockPermutation sigma;
  std::vector<int> block_dims;

  WreathElement(std::vector<LinearMap> comps, BlockPermutation sig, std::vector<int> dims);
};

WreathElement wreath_identity(const BlockModelSpace& model);

/// (h; tau)(g; sigma) = (h_1 g_{tau^-1(1)}, ..., h_k g_{tau^-1(k)}; tau sigma).
/// Throws ModelMismatch when the elements live over different block layouts.
WreathElement wreath_compose(const WreathElement& a, const WreathElement& b);

/// The block-structured matrix sending block sigma^{-1}(i) into block i via
/// g_i. Throws IncompatibleBlocks when sigma pairs blocks of unequal size.
LinearMap wreath_to_matrix(const WreathElement& w, const BlockModelSpace& model);

struct MembershipResult {
  bool member = false;
  double residual = 0.0;  // max|A*T - T| / max|T|
};

/// Structure-group membership: true iff max|A*T - T| <= tol * max|T|.
/// Throws SingularMap when |det A| <= 1e-12.
MembershipResult is_member(const LinearMap& a, const CurvTensor& t, double tol = kMembershipTol);

enum class Verdict {
  Isometry,         // A*phi =  phi on the kernel quotient
  ParaIsometry,     // A*phi = -phi on the kernel quotient
  UnimodularRank2,  // rank 2: |det| = 1 on the kernel quotient
  ZeroTensor,       // rank <= 1: R_phi = 0, every invertible map is a member
  NonMember,
};

const char* verdict_name(Verdict v);

struct MembershipVerdict {
  Verdict verdict = Verdict::NonMember;
  double residual = 0.0;

  bool is_member() const { return verdict != Verdict::NonMember; }
};

/// Classifies A against the structure group of R_phi. Degenerate forms are
/// first reduced by their kernel (which members must preserve); the quotient
/// is then classified by the rank of phi as isometry/para-isometry (rank >= 3)
/// or by |det| = 1 (rank 2).
MembershipVerdict classify_canonical_member(const LinearMap& a, const SymForm& phi,
                                            double tol = kMembershipTol);

/// exp of a phi-antisymmetric generator (phi(Xx, y) + phi(x, Xy) = 0); the
/// result is a phi-isometry. Throws InvalidArgument when the compatibility
/// condition fails beyond tol relative to |phi| |X|.
LinearMap isometry_exponential(const SymForm& phi, const Matrix& generator, double tol = 1e-10);

/// Random element of the isometry group of a nondegenerate form, built as the
/// exponential of a random compatible generator in a pseudo-orthonormal basis.
LinearMap sample_isometry(const SymForm& phi, Rng& rng);

/// A map with A*phi = -phi, swapping the plus and minus vectors of a
/// pseudo-orthonormal basis. Throws NotBalanced unless n_plus == n_minus.
LinearMap sample_para_isometry(const SymForm& phi);

/// Recovers the block permutation of a structure-group member of the model's
/// direct-sum tensor: in the concatenated pseudo-orthonormal block basis, the
/// first sufficiently large entry of each column determines the target block;
/// the result is cross-checked for per-block consistency, bijectivity, and
/// full column support inside the target block.
/// Throws NotAMember when the membership test fails and
/// InconsistentPermutation when the bookkeeping checks disagree.
BlockPermutation extract_permutation(const LinearMap& a, const BlockModelSpace& model,
                                     double tol = kMembershipTol);

/// Blocks partitioned by (dimension, unordered signature pair); admissible
/// block permutations are exactly those preserving the classes.
struct PermutationClasses {
  std::vector<std::vector<int>> classes;  // zero-based block indices, each sorted
  std::vector<BlockPermutation> generators;

  /// "S2 x S1" style description of the admissible group.
  std::string group_description() const;
  bool admissible(const BlockPermutation& sigma) const;
  long double order() const;
};

PermutationClasses allowed_block_permutations(const BlockModelSpace& model,
                                              double tol = kRankTol);

/// Uniformly random admissible permutation together with per-block members:
/// isometries (composed with a para-isometry half the time when the block
/// signature is balanced) for blocks of dimension >= 3, random maps of unit
/// |det| for blocks of dimension 2, and pseudo-orthonormal transfer maps
/// across permuted blocks.
WreathElement sample_wreath_element(const BlockModelSpace& model, Rng& rng);

/// Matrix form of sample_wreath_element; always a member of the model's
/// direct-sum tensor.
LinearMap sample_structure_group_element(const BlockModelSpace& model, Rng& rng);

}  // namespace curvlab
