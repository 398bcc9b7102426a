#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "tda/complex.hpp"
#include "tda/homology.hpp"

namespace tda {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct FilteredSimplex {
  Simplex simplex;
  double value;
};

/// Simplices with appearance values, ordered by (value, dimension, lexicographic).
/// Values are monotone along faces and the underlying set is face closed.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  explicit FilteredComplex(std::vector<FilteredSimplex> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
      return std::forward_as_tuple(a.value, a.simplex.size(), a.simplex) <
             std::forward_as_tuple(b.value, b.simplex.size(), b.simplex);
    });
    std::map<Simplex, double> value_of;
    for (const auto& e : entries_) {
      if (!std::isfinite(e.value)) throw InvalidFiltration("filtration value of " + e.simplex.str() + " is not finite");
      if (!value_of.emplace(e.simplex, e.value).second) {
        throw InvalidFiltration("simplex " + e.simplex.str() + " appears twice in the filtration");
      }
    }
    for (const auto& e : entries_) {
      if (e.simplex.size() < 2) continue;
      for (std::size_t j = 0; j < e.simplex.size(); ++j) {
        auto it = value_of.find(e.simplex.face(j));
        if (it == value_of.end()) {
          throw InvalidFiltration("face " + e.simplex.face(j).str() + " of " + e.simplex.str() + " is missing");
        }
        if (it->second > e.value) {
          throw InvalidFiltration("face " + e.simplex.face(j).str() + " enters after " + e.simplex.str());
        }
      }
    }
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<FilteredSimplex>& entries() const { return entries_; }
  const FilteredSimplex& operator[](std::size_t i) const { return entries_[i]; }

  SimplicialComplex complex() const {
    std::vector<Simplex> s;
    for (const auto& e : entries_) s.push_back(e.simplex);
    return SimplicialComplex::from_closed(s);
  }

  /// The subcomplex of simplices with value <= t.
  SimplicialComplex at(double t) const {
    std::vector<Simplex> s;
    for (const auto& e : entries_) {
      if (e.value <= t) s.push_back(e.simplex);
    }
    return SimplicialComplex::from_closed(s);
  }

  /// Distinct values in increasing order.
  std::vector<double> grades() const {
    std::vector<double> g;
    for (const auto& e : entries_) {
      if (g.empty() || g.back() != e.value) g.push_back(e.value);
    }
    return g;
  }

 private:
  std::vector<FilteredSimplex> entries_;
};

/// Half-open interval [birth, death) in one homological degree.
struct Bar {
  int dim = 0;
  double birth = 0;
  double death = kInfinity;

  bool is_infinite() const { return std::isinf(death); }
  double length() const { return std::abs(death - birth); }
  bool zero_length() const { return birth == death; }

  friend bool operator==(const Bar&, const Bar&) = default;
  friend bool operator<(const Bar& a, const Bar& b) {
    return std::tie(a.dim, a.birth, a.death) < std::tie(b.dim, b.birth, b.death);
  }
};

/// Multiset of bars in canonical (dim, birth, death) order. A descending
/// barcode comes from a superlevel filtration: bars run from larger to smaller
/// function values.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars, bool descending = false) : bars_(std::move(bars)), descending_(descending) {
    std::sort(bars_.begin(), bars_.end());
  }

  const std::vector<Bar>& bars() const { return bars_; }
  std::size_t size() const { return bars_.size(); }
  bool empty() const { return bars_.empty(); }
  bool descending() const { return descending_; }

  std::size_t multiplicity(const Bar& b) const {
    auto [lo, hi] = std::equal_range(bars_.begin(), bars_.end(), b);
    return static_cast<std::size_t>(hi - lo);
  }

  std::vector<Bar> in_degree(int dim) const {
    std::vector<Bar> out;
    for (const auto& b : bars_) {
      if (b.dim == dim) out.push_back(b);
    }
    return out;
  }

  /// Bars of degree `dim` containing the whole grade range [r, s] (r before s).
  std::size_t count_containing(int dim, double r, double s) const {
    std::size_t n = 0;
    for (const auto& b : bars_) {
      if (b.dim != dim) continue;
      const bool ok = descending_ ? (b.birth >= r && s > b.death) : (b.birth <= r && s < b.death);
      if (ok) ++n;
    }
    return n;
  }

  std::size_t alive_at(int dim, double t) const { return count_containing(dim, t, t); }

  Barcode without_zero_length() const {
    std::vector<Bar> kept;
    for (const auto& b : bars_) {
      if (!b.zero_length()) kept.push_back(b);
    }
    return Barcode(std::move(kept), descending_);
  }

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<Bar> bars_;
  bool descending_ = false;
};

/// Rips convention: a simplex enters at half its diameter.
inline FilteredComplex rips_filtration(const DistanceMatrix& d, int max_dim, double max_radius) {
  if (!(max_radius > 0)) throw InvalidMetric("max_radius must be positive");
  if (max_dim < 0) throw InvalidMetric("max_dim must be nonnegative");
  const double limit = 4 * max_radius * max_radius;
  auto simplices = detail::enumerate_simplices(d.size(), max_dim, [&](const std::vector<Vertex>& s, Vertex v) {
    return std::all_of(s.begin(), s.end(), [&](Vertex u) { return detail::within(d.squared(u, v), limit); });
  });
  std::vector<FilteredSimplex> entries;
  entries.reserve(simplices.size());
  for (auto& s : simplices) {
    double diam2 = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) diam2 = std::max(diam2, d.squared(s[i], s[j]));
    }
    entries.push_back({std::move(s), std::sqrt(diam2) / 2});
  }
  return FilteredComplex(std::move(entries));
}

inline FilteredComplex rips_filtration(const PointCloud& pc, int max_dim, double max_radius) {
  return rips_filtration(DistanceMatrix(pc), max_dim, max_radius);
}

/// Cech filtration: a simplex enters at the radius of its min enclosing ball.
inline FilteredComplex cech_filtration(const PointCloud& pc, int max_dim, double max_radius) {
  const auto k = build_cech(pc, max_radius, max_dim);
  std::vector<FilteredSimplex> entries;
  for (const auto& s : k.all()) {
    std::vector<Point> pts;
    for (auto v : s.vertices()) pts.push_back(pc[v]);
    entries.push_back({s, s.size() == 1 ? 0.0 : min_enclosing_ball(pts).radius});
  }
  return FilteredComplex(std::move(entries));
}

/// Lower star: a simplex enters at the max of its vertex values.
inline FilteredComplex lower_star_filtration(const SimplicialComplex& k, const std::map<Vertex, double>& values) {
  std::vector<FilteredSimplex> entries;
  for (const auto& s : k.all()) {
    double v = -kInfinity;
    for (auto x : s.vertices()) {
      auto it = values.find(x);
      if (it == values.end()) throw InvalidFiltration("vertex " + std::to_string(x) + " has no value");
      v = std::max(v, it->second);
    }
    entries.push_back({s, v});
  }
  return FilteredComplex(std::move(entries));
}

/// Superlevel filtration, encoded as the lower star of -f. compute_barcode
/// negates grades back for descending filtrations; see Barcode::descending.
inline FilteredComplex superlevel_filtration(const SimplicialComplex& k, const std::map<Vertex, double>& values) {
  std::map<Vertex, double> negated;
  for (const auto& [v, x] : values) negated[v] = -x;
  return lower_star_filtration(k, negated);
}

struct BarcodeOptions {
  bool include_zero_length = false;
  bool descending = false;  ///< the filtration is a superlevel filtration (values negated)
};

/// Standard column reduction of the filtration-ordered boundary matrix.
/// Degrees are reduced from the top down so that columns whose index is
/// already a pivot can be skipped: they reduce to zero anyway.
inline Barcode compute_barcode(const FilteredComplex& fc, const Field& f = Field{2}, BarcodeOptions opts = {}) {
  const std::size_t n = fc.size();
  std::map<Simplex, std::size_t> order;
  int top = -1;
  for (std::size_t i = 0; i < n; ++i) {
    order.emplace(fc[i].simplex, i);
    top = std::max(top, fc[i].simplex.dimension());
  }
  std::vector<std::size_t> paired_with(n, n);  // n: unpaired
  std::vector<bool> negative(n, false);
  Echelon pivots(f, n);
  for (int p = top; p >= 1; --p) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& s = fc[j].simplex;
      if (s.dimension() != p || paired_with[j] != n) continue;
      std::vector<Entry> col;
      for (std::size_t k = 0; k < s.size(); ++k) col.push_back({order.at(s.face(k)), f.sign(k)});
      auto r = pivots.reduce(SparseVector::from_entries(std::move(col), f));
      if (r.residual.empty()) continue;
      const auto low = r.residual.low();
      pivots.insert(std::move(r.residual));
      paired_with[low] = j;
      paired_with[j] = low;
      negative[j] = true;
    }
  }
  const auto grade = [&](double v) { return opts.descending ? -v : v; };
  std::vector<Bar> bars;
  for (std::size_t i = 0; i < n; ++i) {
    if (negative[i]) continue;
    const int dim = fc[i].simplex.dimension();
    const double birth = grade(fc[i].value);
    if (paired_with[i] == n) {
      bars.push_back({dim, birth, opts.descending ? -kInfinity : kInfinity});
    } else {
      const double death = grade(fc[paired_with[i]].value);
      if (birth == death && !opts.include_zero_length) continue;
      bars.push_back({dim, birth, death});
    }
  }
  return Barcode(std::move(bars), opts.descending);
}

/// Point (birth, death) per bar; infinite deaths keep the infinite marker.
struct DiagramPoint {
  int dim;
  double birth;
  double death;

  bool at_infinity() const { return std::isinf(death); }
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

inline std::vector<DiagramPoint> barcode_to_diagram(const Barcode& bc) {
  std::vector<DiagramPoint> out;
  for (const auto& b : bc.bars()) out.push_back({b.dim, b.birth, b.death});
  return out;
}

/// Finite persistence module over grades 0..n-1; maps[i] : dims[i] -> dims[i+1].
struct ExplicitModule {
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;

  void validate() const {
    if (!dims.empty() && maps.size() != dims.size() - 1) {
      throw ShapeMismatch("a module with " + std::to_string(dims.size()) + " grades needs " +
                          std::to_string(dims.size() - 1) + " maps");
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (maps[i].cols() != dims[i] || maps[i].rows() != dims[i + 1]) {
        throw ShapeMismatch("map " + std::to_string(i) + " has the wrong shape");
      }
    }
  }
};

/// Closed interval [lo, hi] of integer grades, with multiplicity.
struct IntegerBar {
  std::size_t lo;
  std::size_t hi;
  std::size_t multiplicity = 1;

  friend bool operator==(const IntegerBar&, const IntegerBar&) = default;
  friend auto operator<=>(const IntegerBar&, const IntegerBar&) = default;
};

/// Rank of V_b -> V_d (dims[b] when b == d).
inline std::size_t composite_rank(const ExplicitModule& m, std::size_t b, std::size_t d, const Field& f) {
  if (b == d) return m.dims[b];
  Matrix c = m.maps[b];
  for (std::size_t i = b + 1; i < d; ++i) c = multiply(m.maps[i], c, f);
  return rank(c, f);
}

namespace detail {

/// Interval multiplicities from a rank function on [0, n) by inclusion-exclusion.
template <class RankFn>
std::vector<IntegerBar> bars_from_ranks(std::size_t n, RankFn r) {
  std::vector<std::vector<std::size_t>> grid(n, std::vector<std::size_t>(n, 0));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t d = b; d < n; ++d) grid[b][d] = r(b, d);
  }
  const auto at = [&](std::ptrdiff_t b, std::ptrdiff_t d) -> std::int64_t {
    if (b < 0 || d >= static_cast<std::ptrdiff_t>(n)) return 0;
    return static_cast<std::int64_t>(grid[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)]);
  };
  std::vector<IntegerBar> out;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t d = b; d < n; ++d) {
      const auto ib = static_cast<std::ptrdiff_t>(b), id = static_cast<std::ptrdiff_t>(d);
      const std::int64_t m = at(ib, id) - at(ib - 1, id) - at(ib, id + 1) + at(ib - 1, id + 1);
      if (m < 0) {
        throw InconsistentDecomposition("negative multiplicity " + std::to_string(m) + " for interval [" +
                                        std::to_string(b) + "," + std::to_string(d) + "]");
      }
      if (m > 0) out.push_back({b, d, static_cast<std::size_t>(m)});
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<IntegerBar> decompose_explicit(const ExplicitModule& m, const Field& f = Field{2}) {
  m.validate();
  return detail::bars_from_ranks(m.dims.size(), [&](std::size_t b, std::size_t d) { return composite_rank(m, b, d, f); });
}

/// Persistence module of a filtration sampled at thresholds, computed directly:
/// dims are H_i of the sublevel complexes, maps are induced by inclusion.
inline ExplicitModule sampled_module(const FilteredComplex& fc, const std::vector<double>& thresholds, int degree,
                                     const Field& f = Field{2}) {
  ExplicitModule m;
  std::vector<SimplicialComplex> levels;
  std::vector<HomologyBasis> bases;
  for (double t : thresholds) {
    levels.push_back(fc.at(t));
    bases.push_back(homology_basis(levels.back(), degree, f));
    m.dims.push_back(bases.back().dimension());
  }
  for (std::size_t j = 0; j + 1 < thresholds.size(); ++j) {
    const auto inc = chain_map(levels[j], levels[j + 1], identity_map(levels[j]), degree, f);
    m.maps.push_back(map_on_homology(bases[j], bases[j + 1], inc));
  }
  return m;
}

}  // namespace tda
