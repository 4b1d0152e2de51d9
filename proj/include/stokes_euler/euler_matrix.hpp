#pragma once

#include <string>
#include <vector>

#include "int_matrix.hpp"
#include "picard.hpp"

namespace stokes_euler {

/// chi(O(a), O(b)) = dim Hom - dim Ext^1, with Ext^1(O(a),O(b)) dual to
/// Hom(O(b), O(a + omega)).
inline std::int64_t euler_pairing(const OrbifoldType& A, const PicElement& a, const PicElement& b) {
  const std::int64_t hom = graded_dim(A, pic_sub(A, b, a));
  const std::int64_t ext = graded_dim(A, pic_add(A, pic_sub(A, a, b), canonical_element(A)));
  return hom - ext;
}

struct LineBundleCollection {
  std::vector<PicElement> elements;

  std::size_t size() const noexcept { return elements.size(); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(elements.size());
    for (const auto& e : elements) out.push_back("O(" + to_string(e) + ")");
    return out;
  }
};

struct EulerMatrixResult {
  LineBundleCollection collection;
  IntMatrix chi;
};

/// O, O(x1), ..., O((a1-1)x1), O(x2), ..., O((a3-1)x3), O(c).
inline LineBundleCollection canonical_collection(const OrbifoldType& A) {
  LineBundleCollection col;
  col.elements.push_back(PicElement{});
  for (int arm = 0; arm < 3; ++arm)
    for (int j = 1; j < A.order(arm); ++j) col.elements.push_back(pic_arm(A, arm, j));
  col.elements.push_back(pic_c());
  return col;
}

inline IntMatrix euler_matrix(const OrbifoldType& A, const LineBundleCollection& col) {
  const std::size_t n = col.size();
  IntMatrix chi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) chi(i, j) = euler_pairing(A, col.elements[i], col.elements[j]);
  return chi;
}

inline EulerMatrixResult canonical_collection_euler_matrix(const OrbifoldType& A) {
  EulerMatrixResult r;
  r.collection = canonical_collection(A);
  r.chi = euler_matrix(A, r.collection);
  return r;
}

}  // namespace stokes_euler
