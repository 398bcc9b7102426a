#pragma once

#include <vector>

#include "tda/linalg.hpp"
#include "tda/persistence.hpp"

namespace tda {

enum class Direction { forward, backward };

struct Arrow {
  Direction direction;
  Matrix map;  ///< forward: slot i -> i+1; backward: slot i+1 -> i
};

/// V_0 <-> V_1 <-> ... <-> V_{n-1}, each arrow pointing either way.
struct ZigzagModule {
  std::vector<std::size_t> dims;
  std::vector<Arrow> arrows;

  std::size_t length() const { return dims.size(); }

  void validate() const {
    if (!dims.empty() && arrows.size() != dims.size() - 1) {
      throw ShapeMismatch("a zigzag with " + std::to_string(dims.size()) + " slots needs " +
                          std::to_string(dims.size() - 1) + " arrows");
    }
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const auto src = arrows[i].direction == Direction::forward ? dims[i] : dims[i + 1];
      const auto tgt = arrows[i].direction == Direction::forward ? dims[i + 1] : dims[i];
      if (arrows[i].map.cols() != src || arrows[i].map.rows() != tgt) {
        throw ShapeMismatch("arrow " + std::to_string(i) + " is " + std::to_string(arrows[i].map.rows()) + "x" +
                            std::to_string(arrows[i].map.cols()) + ", expected " + std::to_string(tgt) + "x" +
                            std::to_string(src));
      }
    }
  }
};

struct Morphism {
  std::size_t source;
  std::size_t target;
  Matrix map;  ///< dims[target] x dims[source]
};

/// Free diagram of finite-dimensional vector spaces (no composition table).
struct FiniteDiagram {
  std::vector<std::size_t> dims;
  std::vector<Morphism> morphisms;

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (auto d : dims) n += d;
    return n;
  }

  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> off(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
    return off;
  }

  void validate() const {
    for (std::size_t g = 0; g < morphisms.size(); ++g) {
      const auto& m = morphisms[g];
      if (m.source >= dims.size() || m.target >= dims.size()) {
        throw ShapeMismatch("morphism " + std::to_string(g) + " refers to a missing object");
      }
      if (m.map.cols() != dims[m.source] || m.map.rows() != dims[m.target]) {
        throw ShapeMismatch("morphism " + std::to_string(g) + " has the wrong shape");
      }
    }
  }

  FiniteDiagram transposed() const {
    FiniteDiagram t{dims, {}};
    for (const auto& m : morphisms) t.morphisms.push_back({m.target, m.source, m.map.transpose()});
    return t;
  }
};

/// Limit: tuples (v_x) with F(g) v_src = v_tgt for every morphism g.
struct LimitResult {
  std::size_t dimension = 0;
  std::vector<Matrix> projections;  ///< psi_x : L -> V_x
};

/// Colimit: (+)_x V_x modulo v_src ~ F(g) v_src for every morphism g.
struct ColimitResult {
  std::size_t dimension = 0;
  std::vector<Matrix> inclusions;  ///< phi_x : V_x -> C
};

inline LimitResult limit(const FiniteDiagram& d, const Field& f = Field{2}) {
  d.validate();
  const auto off = d.offsets();
  std::vector<std::size_t> row_off(d.morphisms.size() + 1, 0);
  for (std::size_t g = 0; g < d.morphisms.size(); ++g) row_off[g + 1] = row_off[g] + d.dims[d.morphisms[g].target];
  // (v_x) -> (F(g) v_src - v_tgt)_g
  std::vector<std::vector<Entry>> cols(d.total_dim());
  for (std::size_t g = 0; g < d.morphisms.size(); ++g) {
    const auto& m = d.morphisms[g];
    for (std::size_t k = 0; k < d.dims[m.source]; ++k) {
      for (const auto& e : m.map.column(k)) cols[off[m.source] + k].push_back({row_off[g] + e.index, e.value});
    }
    for (std::size_t k = 0; k < d.dims[m.target]; ++k) cols[off[m.target] + k].push_back({row_off[g] + k, f.neg(1)});
  }
  std::vector<SparseVector> columns;
  for (auto& c : cols) columns.push_back(SparseVector::from_entries(std::move(c), f));
  const auto ker = kernel(Matrix::from_columns(row_off.back(), std::move(columns)), f);

  LimitResult out;
  out.dimension = ker.cols();
  for (std::size_t x = 0; x < d.dims.size(); ++x) {
    Matrix psi(d.dims[x], ker.cols());
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      std::vector<Entry> block;
      for (const auto& e : ker.column(c)) {
        if (e.index >= off[x] && e.index < off[x + 1]) block.push_back({e.index - off[x], e.value});
      }
      psi.set_column(c, SparseVector::from_entries(std::move(block), f));
    }
    out.projections.push_back(std::move(psi));
  }
  return out;
}

inline ColimitResult colimit(const FiniteDiagram& d, const Field& f = Field{2}) {
  d.validate();
  const auto off = d.offsets();
  // relations iota_src(w) - iota_tgt(F(g) w)
  std::vector<SparseVector> relations;
  for (const auto& m : d.morphisms) {
    for (std::size_t k = 0; k < d.dims[m.source]; ++k) {
      std::vector<Entry> rel{{off[m.source] + k, 1}};
      for (const auto& e : m.map.column(k)) rel.push_back({off[m.target] + e.index, f.neg(e.value)});
      relations.push_back(SparseVector::from_entries(std::move(rel), f));
    }
  }
  const Quotient q(Matrix::from_columns(d.total_dim(), std::move(relations)), f);
  ColimitResult out;
  out.dimension = q.dimension();
  for (std::size_t x = 0; x < d.dims.size(); ++x) out.inclusions.push_back(q.projection_block(off[x], d.dims[x]));
  return out;
}

/// The zigzag restricted to slots [b, d] as a free diagram on objects 0..d-b.
inline FiniteDiagram restrict_to(const ZigzagModule& z, std::size_t b, std::size_t d) {
  FiniteDiagram out;
  for (std::size_t i = b; i <= d; ++i) out.dims.push_back(z.dims[i]);
  for (std::size_t i = b; i < d; ++i) {
    const auto& a = z.arrows[i];
    const std::size_t lo = i - b, hi = i + 1 - b;
    if (a.direction == Direction::forward) {
      out.morphisms.push_back({lo, hi, a.map});
    } else {
      out.morphisms.push_back({hi, lo, a.map});
    }
  }
  return out;
}

/// Rank of the canonical limit -> colimit map of z restricted to [b, d].
inline std::size_t generalized_rank(const ZigzagModule& z, std::size_t b, std::size_t d, const Field& f = Field{2}) {
  if (b > d || d >= z.length()) throw ShapeMismatch("generalized_rank needs 0 <= b <= d < n");
  if (b == d) return z.dims[b];
  const auto diag = restrict_to(z, b, d);
  const auto lim = limit(diag, f);
  const auto col = colimit(diag, f);
  return rank(multiply(col.inclusions[0], lim.projections[0], f), f);
}

inline std::vector<IntegerBar> decompose_zigzag(const ZigzagModule& z, const Field& f = Field{2}) {
  z.validate();
  return detail::bars_from_ranks(z.length(), [&](std::size_t b, std::size_t d) { return generalized_rank(z, b, d, f); });
}

inline ZigzagModule forward_module_to_zigzag(const ExplicitModule& m) {
  m.validate();
  ZigzagModule z{m.dims, {}};
  for (const auto& map : m.maps) z.arrows.push_back({Direction::forward, map});
  return z;
}

/// Direct sum of interval modules: k with identities on each bar, zero elsewhere.
inline ZigzagModule interval_sum(std::size_t n, const std::vector<Direction>& directions,
                                 const std::vector<IntegerBar>& bars) {
  std::vector<IntegerBar> unit_bars;
  for (const auto& b : bars) {
    for (std::size_t k = 0; k < b.multiplicity; ++k) unit_bars.push_back({b.lo, b.hi, 1});
  }
  ZigzagModule z;
  z.dims.assign(n, 0);
  std::vector<std::vector<std::size_t>> slot_index(unit_bars.size(), std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < unit_bars.size(); ++k) {
      if (unit_bars[k].lo <= i && i <= unit_bars[k].hi) slot_index[k][i] = z.dims[i]++;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool fwd = directions[i] == Direction::forward;
    Matrix m(fwd ? z.dims[i + 1] : z.dims[i], fwd ? z.dims[i] : z.dims[i + 1]);
    for (std::size_t k = 0; k < unit_bars.size(); ++k) {
      const auto& b = unit_bars[k];
      if (b.lo <= i && i + 1 <= b.hi) {
        const auto src = fwd ? slot_index[k][i] : slot_index[k][i + 1];
        const auto tgt = fwd ? slot_index[k][i + 1] : slot_index[k][i];
        m.set_column(src, SparseVector::unit(tgt));
      }
    }
    z.arrows.push_back({directions[i], std::move(m)});
  }
  return z;
}

}  // namespace tda
