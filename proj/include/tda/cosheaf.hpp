#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tda/chain.hpp"
#include "tda/homology.hpp"
#include "tda/zigzag.hpp"

namespace tda {

class SimplicialSheaf;

/// A commuting square that fails: the two routes from tau down to sigma differ.
struct Violation {
  Simplex sigma;
  Simplex gamma1;
  Simplex gamma2;
  Simplex tau;

  std::string message() const {
    return "extension maps do not commute: " + tau.str() + " -> " + gamma1.str() + " -> " + sigma.str() + " differs from " +
           tau.str() + " -> " + gamma2.str() + " -> " + sigma.str();
  }
};

struct ValidationReport {
  std::optional<Violation> violation;
  bool ok() const { return !violation; }
};

namespace detail {

/// Stalk dimensions and codimension-1 maps over a complex. Unset stalks are 0
/// and unset maps are zero. `Up` selects the map direction: false for cosheaf
/// extensions F(tau) -> F(sigma), true for sheaf restrictions F(sigma) -> F(tau).
template <bool Up>
class StalkData {
 public:
  StalkData() = default;
  explicit StalkData(SimplicialComplex base) : base_(std::move(base)) {}

  const SimplicialComplex& base() const { return base_; }

  void set_stalk(const Simplex& s, std::size_t dim) {
    if (!base_.contains(s)) throw InvalidCosheaf("stalk on " + s.str() + ", which is not in the base complex");
    stalks_[s] = dim;
    for (auto it = maps_.begin(); it != maps_.end();) {
      it = (it->first.first == s || it->first.second == s) ? maps_.erase(it) : std::next(it);
    }
  }

  std::size_t stalk_dim(const Simplex& s) const {
    auto it = stalks_.find(s);
    return it == stalks_.end() ? 0 : it->second;
  }

  void set_map(const Simplex& face, const Simplex& coface, Matrix m) {
    check_pair(face, coface);
    const auto src = Up ? stalk_dim(face) : stalk_dim(coface);
    const auto tgt = Up ? stalk_dim(coface) : stalk_dim(face);
    if (m.cols() != src || m.rows() != tgt) {
      throw InvalidCosheaf("map " + face.str() + " <-> " + coface.str() + " is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(tgt) + "x" + std::to_string(src));
    }
    maps_[{face, coface}] = std::move(m);
  }

  Matrix map(const Simplex& face, const Simplex& coface) const {
    auto it = maps_.find({face, coface});
    if (it != maps_.end()) return it->second;
    const auto src = Up ? stalk_dim(face) : stalk_dim(coface);
    const auto tgt = Up ? stalk_dim(coface) : stalk_dim(face);
    return Matrix(tgt, src);
  }

  /// Offsets of each p-simplex's block in the direct sum over p-simplices.
  std::vector<std::size_t> offsets(int p) const {
    const auto& level = base_.simplices(p);
    std::vector<std::size_t> off(level.size() + 1, 0);
    for (std::size_t i = 0; i < level.size(); ++i) off[i + 1] = off[i] + stalk_dim(level[i]);
    return off;
  }

  std::size_t chain_dim(int p) const { return offsets(p).back(); }

  /// Checks every codimension-2 square sigma < gamma1, gamma2 < tau.
  ValidationReport validate(const Field& f) const {
    for (int p = 2; p <= base_.dimension(); ++p) {
      for (const auto& tau : base_.simplices(p)) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
          for (std::size_t j = i + 1; j < tau.size(); ++j) {
            const auto g1 = tau.face(i);  // misses vertex i
            const auto g2 = tau.face(j);
            const auto sigma = g1.face(j - 1);
            if (route(sigma, g1, tau, f) != route(sigma, g2, tau, f)) return {Violation{sigma, g1, g2, tau}};
          }
        }
      }
    }
    return {};
  }

 protected:
  void check_pair(const Simplex& face, const Simplex& coface) const {
    if (!base_.contains(coface) || face.size() + 1 != coface.size() || !face.is_face_of(coface)) {
      throw InvalidCosheaf(face.str() + " is not a codimension-1 face of " + coface.str() + " in the base");
    }
  }

  Matrix route(const Simplex& sigma, const Simplex& gamma, const Simplex& tau, const Field& f) const {
    if (Up) return multiply(map(gamma, tau), map(sigma, gamma), f);
    return multiply(map(sigma, gamma), map(gamma, tau), f);
  }

  SimplicialComplex base_;
  std::map<Simplex, std::size_t> stalks_;
  std::map<std::pair<Simplex, Simplex>, Matrix> maps_;
};

inline std::size_t face_position(const Simplex& face, const Simplex& coface) {
  for (std::size_t j = 0; j < coface.size(); ++j) {
    if (j == face.size() || face[j] != coface[j]) return j;
  }
  return coface.size();
}

}  // namespace detail

/// Vector space per simplex with extension maps r_{sigma,tau} : F(tau) -> F(sigma)
/// for codimension-1 pairs; longer compositions are derived.
class SimplicialCosheaf : public detail::StalkData<false> {
 public:
  using StalkData::StalkData;

  void set_extension(const Simplex& face, const Simplex& coface, Matrix m) { set_map(face, coface, std::move(m)); }
  Matrix extension(const Simplex& face, const Simplex& coface) const { return map(face, coface); }

  /// r_{sigma,tau} for any face sigma <= tau, composed by deleting vertices left to right.
  Matrix extension_between(const Simplex& sigma, const Simplex& tau, const Field& f) const {
    if (!sigma.is_face_of(tau)) throw InvalidCosheaf(sigma.str() + " is not a face of " + tau.str());
    Matrix m = Matrix::identity(stalk_dim(tau));
    Simplex cur = tau;
    while (cur.size() > sigma.size()) {
      const auto next = cur.face(detail::face_position(sigma, cur));
      m = multiply(extension(next, cur), m, f);
      cur = next;
    }
    return m;
  }

  SimplicialSheaf transpose() const;
};

/// Dual data: restriction maps rho_{tau,sigma} : F(sigma) -> F(tau).
class SimplicialSheaf : public detail::StalkData<true> {
 public:
  using StalkData::StalkData;

  void set_restriction(const Simplex& face, const Simplex& coface, Matrix m) { set_map(face, coface, std::move(m)); }
  Matrix restriction(const Simplex& face, const Simplex& coface) const { return map(face, coface); }

  SimplicialCosheaf transpose() const {
    SimplicialCosheaf c(base_);
    for (const auto& [s, d] : stalks_) c.set_stalk(s, d);
    for (const auto& [key, m] : maps_) c.set_extension(key.first, key.second, m.transpose());
    return c;
  }
};

inline SimplicialSheaf SimplicialCosheaf::transpose() const {
  SimplicialSheaf s(base_);
  for (const auto& [x, d] : stalks_) s.set_stalk(x, d);
  for (const auto& [key, m] : maps_) s.set_restriction(key.first, key.second, m.transpose());
  return s;
}

inline SimplicialCosheaf constant_cosheaf(const SimplicialComplex& k, std::size_t n) {
  SimplicialCosheaf c(k);
  for (const auto& s : k.all()) c.set_stalk(s, n);
  for (int p = 1; p <= k.dimension(); ++p) {
    for (const auto& tau : k.simplices(p)) {
      for (std::size_t j = 0; j < tau.size(); ++j) c.set_extension(tau.face(j), tau, Matrix::identity(n));
    }
  }
  return c;
}

inline ValidationReport validate(const SimplicialCosheaf& c, const Field& f = Field{2}) { return c.validate(f); }
inline ValidationReport validate(const SimplicialSheaf& s, const Field& f = Field{2}) { return s.validate(f); }

/// d_p : C_p(K; F) -> C_{p-1}(K; F); block (sigma, tau) is (-1)^j r_{sigma,tau}
/// when sigma is the j-th face of tau.
inline Matrix cosheaf_boundary(const SimplicialCosheaf& c, int p, const Field& f = Field{2}) {
  const auto& base = c.base();
  const auto col_off = c.offsets(p);
  const auto row_off = c.offsets(p - 1);
  Matrix m(row_off.back(), col_off.back());
  if (p <= 0) return m;
  const auto& taus = base.simplices(p);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    std::vector<std::vector<Entry>> cols(c.stalk_dim(taus[t]));
    for (std::size_t j = 0; j < taus[t].size(); ++j) {
      const auto sigma = taus[t].face(j);
      const auto r = c.extension(sigma, taus[t]);
      const auto base_row = row_off[*base.index_of(sigma)];
      for (std::size_t k = 0; k < cols.size(); ++k) {
        for (const auto& e : r.column(k)) cols[k].push_back({base_row + e.index, f.mul(f.sign(j), e.value)});
      }
    }
    for (std::size_t k = 0; k < cols.size(); ++k) {
      m.set_column(col_off[t] + k, SparseVector::from_entries(std::move(cols[k]), f));
    }
  }
  return m;
}

/// delta^p : C^p(K; F) -> C^{p+1}(K; F); block (tau, sigma) is (-1)^j rho_{tau,sigma}.
inline Matrix sheaf_coboundary(const SimplicialSheaf& s, int p, const Field& f = Field{2}) {
  const auto& base = s.base();
  const auto col_off = s.offsets(p);
  const auto row_off = s.offsets(p + 1);
  std::vector<std::vector<Entry>> cols(col_off.back());
  if (p >= 0) {
    const auto& taus = base.simplices(p + 1);
    for (std::size_t t = 0; t < taus.size(); ++t) {
      for (std::size_t j = 0; j < taus[t].size(); ++j) {
        const auto sigma = taus[t].face(j);
        const auto rho = s.restriction(sigma, taus[t]);
        const auto base_col = col_off[*base.index_of(sigma)];
        for (std::size_t k = 0; k < rho.cols(); ++k) {
          for (const auto& e : rho.column(k)) {
            cols[base_col + k].push_back({row_off[t] + e.index, f.mul(f.sign(j), e.value)});
          }
        }
      }
    }
  }
  std::vector<SparseVector> columns;
  for (auto& c : cols) columns.push_back(SparseVector::from_entries(std::move(c), f));
  return Matrix::from_columns(row_off.back(), std::move(columns));
}

inline HomologyBasis cosheaf_homology_basis(const SimplicialCosheaf& c, int p, const Field& f = Field{2}) {
  if (auto report = c.validate(f); !report.ok()) throw InvalidCosheaf(report.violation->message());
  return HomologyBasis(cosheaf_boundary(c, p, f), cosheaf_boundary(c, p + 1, f), f);
}

inline HomologyResult cosheaf_homology(const SimplicialCosheaf& c, int p, const Field& f = Field{2}) {
  auto hb = cosheaf_homology_basis(c, p, f);
  return {p, hb.dimension(), hb.cycles()};
}

inline HomologyResult sheaf_cohomology(const SimplicialSheaf& s, int p, const Field& f = Field{2}) {
  if (auto report = s.validate(f); !report.ok()) throw InvalidCosheaf(report.violation->message());
  HomologyBasis hb(sheaf_coboundary(s, p, f), sheaf_coboundary(s, p - 1, f), f);
  return {p, hb.dimension(), hb.cycles()};
}

/// Vertex, edge, vertex, ... slots along each path component of a linear base.
struct PathComponent {
  std::vector<Simplex> slots;
  ZigzagModule module;
};

/// Throws NonlinearNerve unless the base is a graph with degrees <= 2 and no cycles.
inline void require_linear(const SimplicialComplex& k) {
  if (k.dimension() > 1) throw NonlinearNerve("base complex has simplices of dimension > 1");
  std::map<Vertex, std::size_t> degree;
  for (const auto& e : k.simplices(1)) {
    if (++degree[e[0]] > 2 || ++degree[e[1]] > 2) throw NonlinearNerve("a vertex of the base has degree > 2");
  }
  // With degrees <= 2, acyclic iff every component has one more vertex than edges.
  std::map<Vertex, Vertex> parent;
  for (auto v : k.vertices()) parent[v] = v;
  std::function<Vertex(Vertex)> find = [&](Vertex v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& e : k.simplices(1)) {
    const auto a = find(e[0]), b = find(e[1]);
    if (a == b) throw NonlinearNerve("the base complex contains a cycle");
    parent[a] = b;
  }
}

inline std::vector<PathComponent> path_components(const SimplicialCosheaf& c) {
  const auto& k = c.base();
  require_linear(k);
  std::map<Vertex, std::vector<Vertex>> nbrs;
  for (auto v : k.vertices()) nbrs[v];
  for (const auto& e : k.simplices(1)) {
    nbrs[e[0]].push_back(e[1]);
    nbrs[e[1]].push_back(e[0]);
  }
  std::map<Vertex, bool> seen;
  std::vector<PathComponent> out;
  for (const auto& [start, adj] : nbrs) {
    if (seen[start] || adj.size() > 1) continue;  // begin at an endpoint
    PathComponent comp;
    Vertex cur = start;
    comp.slots.push_back({cur});
    seen[cur] = true;
    while (true) {
      std::optional<Vertex> next;
      for (auto w : nbrs[cur]) {
        if (!seen[w]) next = w;
      }
      if (!next) break;
      comp.slots.push_back(Simplex{cur, *next});
      comp.slots.push_back({*next});
      seen[*next] = true;
      cur = *next;
    }
    for (const auto& s : comp.slots) comp.module.dims.push_back(c.stalk_dim(s));
    for (std::size_t i = 1; i < comp.slots.size(); i += 2) {
      const auto& edge = comp.slots[i];
      comp.module.arrows.push_back({Direction::backward, c.extension(comp.slots[i - 1], edge)});
      comp.module.arrows.push_back({Direction::forward, c.extension(comp.slots[i + 1], edge)});
    }
    out.push_back(std::move(comp));
  }
  return out;
}

enum class EndType { closed, open };

/// A bar of a cosheaf over a path: ends on a vertex slot are closed, on an edge slot open.
struct CosheafBar {
  Simplex first;
  Simplex last;
  EndType left;
  EndType right;
  std::size_t multiplicity;
};

struct BarCensus {
  std::size_t closed = 0;
  std::size_t open = 0;
  std::size_t half_open = 0;
  std::vector<CosheafBar> bars;
};

inline BarCensus bar_census(const SimplicialCosheaf& c, const Field& f = Field{2}) {
  if (auto report = c.validate(f); !report.ok()) throw InvalidCosheaf(report.violation->message());
  BarCensus census;
  for (const auto& comp : path_components(c)) {
    for (const auto& b : decompose_zigzag(comp.module, f)) {
      const auto left = b.lo % 2 == 0 ? EndType::closed : EndType::open;
      const auto right = b.hi % 2 == 0 ? EndType::closed : EndType::open;
      if (left == EndType::closed && right == EndType::closed) {
        census.closed += b.multiplicity;
      } else if (left == EndType::open && right == EndType::open) {
        census.open += b.multiplicity;
      } else {
        census.half_open += b.multiplicity;
      }
      census.bars.push_back({comp.slots[b.lo], comp.slots[b.hi], left, right, b.multiplicity});
    }
  }
  return census;
}

/// Colimit of the cosheaf restricted to the subcomplex L: one object per
/// simplex of L, one arrow tau -> sigma per codimension-1 pair in L.
inline ColimitResult colimit_over_subcomplex(const SimplicialCosheaf& c, const SimplicialComplex& sub,
                                             const Field& f = Field{2}) {
  if (!sub.is_subcomplex_of(c.base())) throw InvalidCosheaf("colimit over a set that is not a subcomplex of the base");
  const auto simplices = sub.all();
  std::map<Simplex, std::size_t> index;
  FiniteDiagram d;
  for (const auto& s : simplices) {
    index.emplace(s, d.dims.size());
    d.dims.push_back(c.stalk_dim(s));
  }
  for (const auto& tau : simplices) {
    if (tau.size() < 2) continue;
    for (std::size_t j = 0; j < tau.size(); ++j) {
      const auto sigma = tau.face(j);
      d.morphisms.push_back({index.at(tau), index.at(sigma), c.extension(sigma, tau)});
    }
  }
  return colimit(d, f);
}

}  // namespace tda
