#pragma once

// Leray cosheaves of a real-valued function on a simplicial complex, taken
// over the nerve of an interval cover, and the reconstruction of global and
// sublevel-set homology from them.
//
// The preimage of a window of values is the full subcomplex on the vertices
// whose values lie in it. A cover is admissible when the value range of every
// simplex lies inside one cover interval; then the pieces cover the complex,
// consecutive pieces meet in the overlap piece and nothing else meets.

#include <map>
#include <stdexcept>
#include <vector>

#include "tda/cosheaf.hpp"
#include "tda/persistence.hpp"

namespace tda {

/// A complex with a value per vertex (extended piecewise linearly).
class MappedComplex {
 public:
  MappedComplex(SimplicialComplex k, std::map<Vertex, double> values) : complex_(std::move(k)), values_(std::move(values)) {
    for (auto v : complex_.vertices()) {
      if (!values_.count(v)) throw InvalidFiltration("vertex " + std::to_string(v) + " has no value");
    }
  }

  const SimplicialComplex& complex() const { return complex_; }
  const std::map<Vertex, double>& values() const { return values_; }
  double value(Vertex v) const { return values_.at(v); }

  std::pair<double, double> span(const Simplex& s) const {
    double lo = kInfinity, hi = -kInfinity;
    for (auto v : s.vertices()) {
      lo = std::min(lo, value(v));
      hi = std::max(hi, value(v));
    }
    return {lo, hi};
  }

 private:
  SimplicialComplex complex_;
  std::map<Vertex, double> values_;
};

/// Values x with lo < x < hi, or lo < x <= hi when hi_closed.
struct ValueWindow {
  double lo;
  double hi;
  bool hi_closed = false;

  bool contains(double x) const { return lo < x && (hi_closed ? x <= hi : x < hi); }

  ValueWindow meet(const ValueWindow& o) const {
    ValueWindow w{std::max(lo, o.lo), std::min(hi, o.hi), false};
    if (hi < o.hi) {
      w.hi_closed = hi_closed;
    } else if (o.hi < hi) {
      w.hi_closed = o.hi_closed;
    } else {
      w.hi_closed = hi_closed && o.hi_closed;
    }
    return w;
  }
};

inline SimplicialComplex preimage_subcomplex(const MappedComplex& m, const ValueWindow& w) {
  return m.complex().full_subcomplex([&](Vertex v) { return w.contains(m.value(v)); });
}

inline SimplicialComplex preimage_subcomplex(const MappedComplex& m, const OpenInterval& u) {
  return preimage_subcomplex(m, ValueWindow{u.lo, u.hi, false});
}

/// Throws CoverGranularity naming the first simplex whose value range is not
/// inside a single cover interval.
inline void check_admissible(const MappedComplex& m, const IntervalCover& cover) {
  for (const auto& s : m.complex().all()) {
    const auto [lo, hi] = m.span(s);
    bool inside = false;
    for (const auto& u : cover.intervals()) {
      if (u.lo < lo && hi < u.hi) {
        inside = true;
        break;
      }
    }
    if (!inside) {
      throw CoverGranularity("simplex " + s.str() + " with values [" + std::to_string(lo) + ", " + std::to_string(hi) +
                             "] does not fit inside any cover interval");
    }
  }
}

/// Nerve of a cover together with the window of values over each nerve simplex.
struct WindowCover {
  SimplicialComplex nerve;
  std::map<Simplex, ValueWindow> windows;
};

inline WindowCover window_cover(const IntervalCover& cover) {
  WindowCover wc{nerve_of_interval_cover(cover), {}};
  for (const auto& s : wc.nerve.all()) {
    ValueWindow w{cover[s[0]].lo, cover[s[0]].hi, false};
    if (s.size() == 2) w = w.meet(ValueWindow{cover[s[1]].lo, cover[s[1]].hi, false});
    wc.windows.emplace(s, w);
  }
  return wc;
}

/// The cover intersected with (-inf, t]; members that become empty are dropped.
inline WindowCover restrict_cover(const IntervalCover& cover, double t) {
  std::vector<OpenInterval> kept;
  for (const auto& u : cover.intervals()) {
    if (u.lo < t) kept.push_back(u);
  }
  const IntervalCover restricted(kept);
  WindowCover wc{nerve_of_interval_cover(restricted), {}};
  const auto clip = [&](const OpenInterval& u) {
    return u.hi > t ? ValueWindow{u.lo, t, true} : ValueWindow{u.lo, u.hi, false};
  };
  for (const auto& s : wc.nerve.all()) {
    auto w = clip(restricted[s[0]]);
    if (s.size() == 2) w = w.meet(clip(restricted[s[1]]));
    wc.windows.emplace(s, w);
  }
  return wc;
}

struct LerayPiece {
  Simplex nerve_simplex;
  ValueWindow window;
  SimplicialComplex subcomplex;
  HomologyBasis basis;  ///< basis in which the stalk and its extension maps are expressed
};

/// Cosheaf sigma -> H_i(preimage of U_sigma) over the nerve, with its bookkeeping.
struct LerayCosheaf {
  SimplicialCosheaf cosheaf;
  int degree = 0;
  std::vector<LerayPiece> pieces;  ///< one per nerve simplex, in nerve order

  const LerayPiece& piece(const Simplex& s) const {
    for (const auto& p : pieces) {
      if (p.nerve_simplex == s) return p;
    }
    throw std::out_of_range("no Leray piece over " + s.str());
  }
};

/// Leray cosheaf over an arbitrary window cover. Degree -1 gives the zero cosheaf.
inline LerayCosheaf leray_cosheaf(const MappedComplex& m, const WindowCover& wc, int degree, const Field& f) {
  LerayCosheaf out{SimplicialCosheaf(wc.nerve), degree, {}};
  for (const auto& s : wc.nerve.all()) {
    const auto& w = wc.windows.at(s);
    auto sub = preimage_subcomplex(m, w);
    auto basis = homology_basis(sub, degree, f);
    out.cosheaf.set_stalk(s, basis.dimension());
    out.pieces.push_back({s, w, std::move(sub), std::move(basis)});
  }
  for (const auto& e : wc.nerve.simplices(1)) {
    const auto& edge_piece = out.piece(e);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto v = e.face(j);
      const auto& vertex_piece = out.piece(v);
      const auto inclusion =
          chain_map(edge_piece.subcomplex, vertex_piece.subcomplex, identity_map(edge_piece.subcomplex), degree, f);
      out.cosheaf.set_extension(v, e, map_on_homology(edge_piece.basis, vertex_piece.basis, inclusion));
    }
  }
  return out;
}

inline LerayCosheaf build_leray_cosheaf(const MappedComplex& m, const IntervalCover& cover, int degree,
                                        const Field& f = Field{2}) {
  check_admissible(m, cover);
  return leray_cosheaf(m, window_cover(cover), degree, f);
}

/// H_i(K) = H_0(N; F_i) + H_1(N; F_{i-1}), split into its two summands.
struct LerayHomology {
  std::size_t h0 = 0;       ///< dim H_0(N; F_i)
  std::size_t h1_prev = 0;  ///< dim H_1(N; F_{i-1})
  std::size_t total() const { return h0 + h1_prev; }
};

inline LerayHomology leray_homology(const MappedComplex& m, const WindowCover& wc, int degree, const Field& f) {
  const auto fi = leray_cosheaf(m, wc, degree, f);
  const auto fprev = leray_cosheaf(m, wc, degree - 1, f);
  return {cosheaf_homology(fi.cosheaf, 0, f).dimension, cosheaf_homology(fprev.cosheaf, 1, f).dimension};
}

inline std::size_t global_homology(const MappedComplex& m, const IntervalCover& cover, int degree,
                                   const Field& f = Field{2}) {
  check_admissible(m, cover);
  return leray_homology(m, window_cover(cover), degree, f).total();
}

/// Total complex of the Mayer-Vietoris double complex of a window cover:
/// Tot_n = (+)_{nerve simplex s of dim q} C_{n-q}(piece_s), with differential
/// (-1)^q d_piece plus the signed nerve boundary acting by inclusion.
class MayerVietorisComplex {
 public:
  MayerVietorisComplex(const MappedComplex& m, const WindowCover& wc) : nerve_(wc.nerve.all()) {
    for (const auto& s : nerve_) pieces_.push_back(preimage_subcomplex(m, wc.windows.at(s)));
  }

  const std::vector<Simplex>& nerve_simplices() const { return nerve_; }

  std::vector<std::size_t> offsets(int n) const {
    std::vector<std::size_t> off(nerve_.size() + 1, 0);
    for (std::size_t b = 0; b < nerve_.size(); ++b) off[b + 1] = off[b] + pieces_[b].count(n - nerve_[b].dimension());
    return off;
  }

  /// Tot_n -> Tot_{n-1}.
  Matrix boundary(int n, const Field& f) const {
    const auto col_off = offsets(n);
    const auto row_off = offsets(n - 1);
    std::vector<SparseVector> cols;
    cols.reserve(col_off.back());
    for (std::size_t b = 0; b < nerve_.size(); ++b) {
      const int q = nerve_[b].dimension();
      const auto& piece = pieces_[b];
      const auto& simplices = piece.simplices(n - q);
      for (const auto& s : simplices) {
        std::vector<Entry> col;
        if (s.size() > 1) {
          for (std::size_t j = 0; j < s.size(); ++j) {
            col.push_back({row_off[b] + *piece.index_of(s.face(j)), f.mul(f.sign(static_cast<std::size_t>(q)), f.sign(j))});
          }
        }
        if (q > 0) {
          for (std::size_t j = 0; j < nerve_[b].size(); ++j) {
            const auto target = block_of(nerve_[b].face(j));
            col.push_back({row_off[target] + *pieces_[target].index_of(s), f.sign(j)});
          }
        }
        cols.push_back(SparseVector::from_entries(std::move(col), f));
      }
    }
    return Matrix::from_columns(row_off.back(), std::move(cols));
  }

  HomologyBasis homology_basis(int n, const Field& f) const {
    return HomologyBasis(boundary(n, f), boundary(n + 1, f), f);
  }

  /// Chain map Tot_n -> bigger.Tot_n induced by piecewise inclusions.
  Matrix inclusion_into(const MayerVietorisComplex& bigger, int n) const {
    const auto col_off = offsets(n);
    const auto row_off = bigger.offsets(n);
    Matrix m(row_off.back(), col_off.back());
    for (std::size_t b = 0; b < nerve_.size(); ++b) {
      const auto target = bigger.block_of(nerve_[b]);
      const auto& simplices = pieces_[b].simplices(n - nerve_[b].dimension());
      for (std::size_t k = 0; k < simplices.size(); ++k) {
        auto idx = bigger.pieces_[target].index_of(simplices[k]);
        if (!idx) throw Error("Mayer-Vietoris pieces are not nested");
        m.set_column(col_off[b] + k, SparseVector::unit(row_off[target] + *idx));
      }
    }
    return m;
  }

 private:
  std::size_t block_of(const Simplex& s) const {
    for (std::size_t b = 0; b < nerve_.size(); ++b) {
      if (nerve_[b] == s) return b;
    }
    throw Error("nerve simplex " + s.str() + " missing from the Mayer-Vietoris complex");
  }

  std::vector<Simplex> nerve_;
  std::vector<SimplicialComplex> pieces_;
};

/// Sublevel persistence module at the given thresholds, recovered from the cover:
/// dimensions from the restricted Leray cosheaves, connecting maps from the
/// inclusions of the restricted covers.
struct SublevelModule {
  ExplicitModule module;
  std::vector<std::size_t> h0_part;       ///< dim H_0(N_t; F_i) per threshold
  std::vector<std::size_t> h1_part;       ///< dim H_1(N_t; F_{i-1}) per threshold
};

inline SublevelModule sublevel_module(const MappedComplex& m, const IntervalCover& cover, int degree,
                                      const std::vector<double>& thresholds, const Field& f = Field{2}) {
  check_admissible(m, cover);
  for (std::size_t j = 1; j < thresholds.size(); ++j) {
    if (!(thresholds[j - 1] < thresholds[j])) throw InvalidFiltration("thresholds must be strictly increasing");
  }
  SublevelModule out;
  std::vector<MayerVietorisComplex> totals;
  std::vector<HomologyBasis> bases;
  for (double t : thresholds) {
    const auto wc = restrict_cover(cover, t);
    const auto lh = leray_homology(m, wc, degree, f);
    out.h0_part.push_back(lh.h0);
    out.h1_part.push_back(lh.h1_prev);
    out.module.dims.push_back(lh.total());
    totals.emplace_back(m, wc);
    bases.push_back(totals.back().homology_basis(degree, f));
    if (bases.back().dimension() != lh.total()) {
      throw Error("Mayer-Vietoris homology " + std::to_string(bases.back().dimension()) +
                  " disagrees with the Leray decomposition " + std::to_string(lh.total()) + " at t=" + std::to_string(t));
    }
  }
  for (std::size_t j = 0; j + 1 < thresholds.size(); ++j) {
    out.module.maps.push_back(map_on_homology(bases[j], bases[j + 1], totals[j].inclusion_into(totals[j + 1], degree)));
  }
  return out;
}

}  // namespace tda
