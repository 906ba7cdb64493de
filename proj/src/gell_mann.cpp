#include <cmath>

#include "jsd/bloch.hpp"

namespace jsd {

namespace {

void push(HermitianBasis& basis, GellMannFamily family, std::vector<SparseEntry> entries) {
  const Eigen::Index d = basis.d;
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& e : entries) m(e.row, e.col) = e.value;
  basis.elements.push_back(std::move(m));
  basis.families.push_back(family);
  basis.sparse.push_back(std::move(entries));
}

}  // namespace

HermitianBasis gell_mann_basis(Eigen::Index d) {
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "Gell-Mann basis needs d >= 2");
  HermitianBasis basis;
  basis.d = d;
  const double dd = static_cast<double>(d);

  std::vector<SparseEntry> identity;
  for (Eigen::Index j = 0; j < d; ++j) identity.push_back({j, j, 1.0});
  push(basis, GellMannFamily::Identity, std::move(identity));

  const double pair_scale = std::sqrt(dd / 2.0);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k)
      push(basis, GellMannFamily::Symmetric, {{j, k, pair_scale}, {k, j, pair_scale}});
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k)
      push(basis, GellMannFamily::Antisymmetric,
           {{j, k, Complex(0.0, -pair_scale)}, {k, j, Complex(0.0, pair_scale)}});

  for (Eigen::Index l = 1; l < d; ++l) {
    const double ll = static_cast<double>(l);
    const double scale = std::sqrt(dd / (ll * (ll + 1.0)));
    std::vector<SparseEntry> entries;
    for (Eigen::Index j = 0; j < l; ++j) entries.push_back({j, j, scale});
    entries.push_back({l, l, -ll * scale});
    push(basis, GellMannFamily::Diagonal, std::move(entries));
  }
  return basis;
}

}  // namespace jsd
