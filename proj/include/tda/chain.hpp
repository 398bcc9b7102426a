#pragma once

#include <optional>
#include <vector>

#include "tda/linalg.hpp"

namespace tda {

/// Homology at the middle term of C_{p+1} --d_in--> C_p --d_out--> C_{p-1}.
///
/// The boundary columns are reduced first; columns of d_out whose index is a
/// boundary pivot are cleared (they are known cycles). The remaining zero
/// columns of d_out give one cycle representative each, and those
/// representatives together with the reduced boundaries form an echelon basis
/// of the cycle space. Coordinates of a cycle are read off that echelon.
class HomologyBasis {
 public:
  HomologyBasis(const Matrix& d_out, const Matrix& d_in, const Field& f)
      : field_(f), echelon_(f, d_out.cols()) {
    if (d_in.rows() != d_out.cols()) {
      throw ShapeMismatch("chain complex maps do not compose: d_in has " + std::to_string(d_in.rows()) +
                          " rows, d_out has " + std::to_string(d_out.cols()) + " columns");
    }
    for (const auto& c : d_in.columns()) echelon_.insert(c);
    rank_in_ = echelon_.rank();

    Echelon out(f, d_out.rows());
    for (std::size_t j = 0; j < d_out.cols(); ++j) {
      if (echelon_.has_pivot(j)) continue;
      SparseVector cycle;
      if (out.insert(d_out.column(j), SparseVector::unit(j), &cycle)) continue;
      cycles_.push_back(std::move(cycle));
    }
    rank_out_ = out.rank();
    for (std::size_t k = 0; k < cycles_.size(); ++k) echelon_.insert(cycles_[k], SparseVector::unit(k));
  }

  std::size_t dimension() const { return cycles_.size(); }
  std::size_t chain_dim() const { return echelon_.ambient_dim(); }
  std::size_t boundary_rank() const { return rank_in_; }
  std::size_t outgoing_rank() const { return rank_out_; }
  const Field& field() const { return field_; }

  /// Representative cycles, one per basis class.
  const std::vector<SparseVector>& cycles() const { return cycles_; }

  /// Coordinates of the class of `chain`; nullopt when it is not a cycle.
  std::optional<SparseVector> coordinates(const SparseVector& chain) const {
    auto r = echelon_.reduce(chain);
    if (!r.residual.empty()) return std::nullopt;
    return std::move(r.combination);
  }

  bool is_boundary(const SparseVector& chain) const {
    auto c = coordinates(chain);
    return c && c->empty();
  }

 private:
  Field field_;
  Echelon echelon_;
  std::vector<SparseVector> cycles_;
  std::size_t rank_in_ = 0;
  std::size_t rank_out_ = 0;
};

/// Matrix of the map on homology induced by a chain map `chain_map`
/// (columns indexed by source chains, rows by target chains).
inline Matrix map_on_homology(const HomologyBasis& source, const HomologyBasis& target, const Matrix& chain_map) {
  if (chain_map.cols() != source.chain_dim() || chain_map.rows() != target.chain_dim()) {
    throw ShapeMismatch("chain map shape does not match the chain groups");
  }
  const auto& f = source.field();
  Matrix m(target.dimension(), source.dimension());
  for (std::size_t k = 0; k < source.dimension(); ++k) {
    auto coords = target.coordinates(chain_map.apply(source.cycles()[k], f));
    if (!coords) throw Error("chain map does not send cycles to cycles");
    m.set_column(k, std::move(*coords));
  }
  return m;
}

}  // namespace tda
