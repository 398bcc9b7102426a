#pragma once

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "tda/io.hpp"
#include "tda/leray.hpp"
#include "tda/svg.hpp"

namespace tda::cli {

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string distances;
  std::string complex;
  std::string values;
  std::string filtration;
  std::string cover;
  std::string thresholds;
  std::string output;
  std::optional<int> degree;
  std::uint32_t field = 2;
  int max_dim = 2;
  double max_radius = std::numeric_limits<double>::infinity();
  bool include_zero_bars = false;
  bool header = false;
  bool superlevel = false;
  int width = 640;
  int height = 400;
};

inline constexpr const char* kFormats = R"(Formats (blank lines and lines starting with # are skipped):
  point cloud   one point per line, comma- or whitespace-separated numbers;
                --header skips the first line
  distances     lower triangle: row i lists d(i,0) ... d(i,i-1); the empty
                row 0 may be omitted
  complex       one simplex per line, space-separated vertex ids; faces are
                added automatically
  values        one vertex per line: `<vertex> <value>`
  filtration    one simplex per line: `<value> <v0> ... <vk>`
  cosheaf       complex lines, then `stalk <simplex> <dim>` lines, then
                `map <face> <coface> <entries>` lines; simplices are written
                with commas (0,1) and entries are the row-major matrix from the
                coface stalk to the face stalk
  zigzag        `dims d0 ... dn-1`, then one line per arrow: `fwd` or `bwd`
                and the row-major matrix entries
  cover         "lo,hi;lo,hi;..." open intervals sorted by lo, only
                consecutive ones may overlap
  thresholds    "t0,t1,..." strictly increasing
  barcode JSON  {"field": p, "bars": [{"dim": i, "birth": b, "death": d or null}]}
                bars are half-open [birth, death)
Exit codes: 0 success, 1 computation or input error, 2 usage error.)";

/// Either a configuration to run or the exit code to return right away.
using ParseResult = std::variant<RunConfig, int>;

inline ParseResult parse_args(int argc, const char* const* argv, std::ostream& out = std::cout,
                              std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Computational topology: homology, persistence, zigzags, cosheaves and Leray cosheaves.", "tda"};
  app.footer(kFormats);
  app.require_subcommand(1, 1);

  const auto prime = CLI::Validator(
      [](const std::string& s) -> std::string {
        try {
          const auto p = std::stoull(s);
          if (is_prime(p) && p <= 0xffffffffULL) return {};
        } catch (const std::exception&) {
        }
        return s + " is not a prime";
      },
      "PRIME");

  const auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "prime characteristic of the coefficient field")
        ->check(prime)
        ->default_val(2);
  };
  const auto add_output = [&](CLI::App* sub) { sub->add_option("--output,-o", cfg.output, "write here instead of stdout"); };
  const auto add_mapped = [&](CLI::App* sub) {
    sub->add_option("--complex", cfg.complex, "complex file")->required()->check(CLI::ExistingFile);
    sub->add_option("--values", cfg.values, "vertex values file")->required()->check(CLI::ExistingFile);
    sub->add_option("--cover", cfg.cover, "interval cover \"lo,hi;lo,hi;...\"")->required();
    sub->add_option("--degree", cfg.degree, "single homology degree (default: all)")->check(CLI::NonNegativeNumber);
  };
  const auto add_barcode_flags = [&](CLI::App* sub) {
    sub->add_flag("--include-zero-bars", cfg.include_zero_bars, "keep bars with birth = death");
  };
  const auto add_point_filtration = [&](CLI::App* sub) {
    auto* in = sub->add_option("--input", cfg.input, "point cloud file")->check(CLI::ExistingFile);
    sub->add_flag("--header", cfg.header, "skip the first line of the point cloud");
    sub->add_option("--max-dim", cfg.max_dim, "largest simplex dimension")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-radius", cfg.max_radius, "stop the filtration here (default: no limit)")
        ->check(CLI::PositiveNumber);
    add_barcode_flags(sub);
    add_field(sub);
    add_output(sub);
    return in;
  };

  auto* rips = app.add_subcommand("rips", "Vietoris-Rips barcode of a point cloud or distance matrix (JSON)");
  auto* rips_in = add_point_filtration(rips);
  auto* rips_d = rips->add_option("--distances", cfg.distances, "distance matrix file")->check(CLI::ExistingFile);
  rips_in->excludes(rips_d);
  rips->callback([&] {
    if (cfg.input.empty() && cfg.distances.empty()) throw CLI::RequiredError("--input or --distances");
  });

  auto* cech = app.add_subcommand("cech", "Cech barcode of a point cloud (JSON)");
  add_point_filtration(cech)->required();

  auto* barcode = app.add_subcommand("barcode", "barcode of a filtration file or of a lower-star function (JSON)");
  auto* bf = barcode->add_option("--filtration", cfg.filtration, "filtration file")->check(CLI::ExistingFile);
  auto* bc = barcode->add_option("--complex", cfg.complex, "complex file")->check(CLI::ExistingFile);
  auto* bv = barcode->add_option("--values", cfg.values, "vertex values file")->check(CLI::ExistingFile);
  barcode->add_flag("--superlevel", cfg.superlevel, "use superlevel sets of the vertex values");
  bf->excludes(bc)->excludes(bv);
  bc->needs(bv);
  bv->needs(bc);
  barcode->callback([&] {
    if (cfg.filtration.empty() && cfg.complex.empty()) throw CLI::RequiredError("--filtration or --complex/--values");
  });
  add_barcode_flags(barcode);
  add_field(barcode);
  add_output(barcode);

  auto* homology = app.add_subcommand("homology", "Betti numbers of a complex, one `H_p=d` line per degree");
  homology->add_option("--complex,--input", cfg.complex, "complex file")->required()->check(CLI::ExistingFile);
  add_field(homology);
  add_output(homology);

  auto* cosheaf = app.add_subcommand("cosheaf", "cosheaf homology and, over a linear base, the bar census");
  cosheaf->add_option("--input", cfg.input, "cosheaf file")->required()->check(CLI::ExistingFile);
  add_field(cosheaf);
  add_output(cosheaf);

  auto* leray = app.add_subcommand("leray", "Leray cosheaf stalks and global homology of a mapped complex (JSON)");
  add_mapped(leray);
  add_field(leray);
  add_output(leray);

  auto* sublevel = app.add_subcommand("sublevel", "sublevel persistence module recovered from Leray cosheaves (JSON)");
  add_mapped(sublevel);
  sublevel->add_option("--thresholds", cfg.thresholds, "\"t0,t1,...\"")->required();
  add_field(sublevel);
  add_output(sublevel);

  auto* zigzag = app.add_subcommand("zigzag", "interval decomposition of a zigzag module (JSON)");
  zigzag->add_option("--input", cfg.input, "zigzag file")->required()->check(CLI::ExistingFile);
  add_field(zigzag);
  add_output(zigzag);

  auto* plot = app.add_subcommand("plot", "render a barcode JSON file as SVG");
  plot->add_option("--input", cfg.input, "barcode JSON file")->required()->check(CLI::ExistingFile);
  plot->add_option("--width", cfg.width, "canvas width")->check(CLI::Range(100, 10000));
  plot->add_option("--height", cfg.height, "canvas height")->check(CLI::Range(100, 10000));
  add_output(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return cfg;
}

namespace detail {

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

inline std::string slurp(const std::string& path) {
  auto in = open(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MappedComplex read_mapped(const RunConfig& cfg) {
  auto kin = open(cfg.complex);
  auto vin = open(cfg.values);
  return MappedComplex(io::parse_complex(kin), io::parse_values(vin));
}

inline std::vector<int> degrees(const RunConfig& cfg, const SimplicialComplex& k) {
  if (cfg.degree) return {*cfg.degree};
  std::vector<int> out;
  for (int p = 0; p <= std::max(k.dimension(), 0); ++p) out.push_back(p);
  return out;
}

inline BarcodeOptions barcode_options(const RunConfig& cfg, bool descending = false) {
  return {cfg.include_zero_bars, descending};
}

inline io::Json stalks_json(const SimplicialCosheaf& c) {
  io::Json out = io::Json::array();
  for (const auto& s : c.base().all()) out.push_back({{"simplex", io::simplex_json(s)}, {"dim", c.stalk_dim(s)}});
  return out;
}

inline void run_rips(const RunConfig& cfg, const Field& f, std::ostream& out) {
  const auto fc = [&] {
    if (!cfg.distances.empty()) {
      auto in = open(cfg.distances);
      return rips_filtration(io::parse_lower_triangle(in), cfg.max_dim, cfg.max_radius);
    }
    auto in = open(cfg.input);
    return rips_filtration(io::parse_point_cloud(in, cfg.header), cfg.max_dim, cfg.max_radius);
  }();
  out << io::write_barcode(compute_barcode(fc, f, barcode_options(cfg)), f);
}

inline void run_cech(const RunConfig& cfg, const Field& f, std::ostream& out) {
  auto in = open(cfg.input);
  const auto fc = cech_filtration(io::parse_point_cloud(in, cfg.header), cfg.max_dim, cfg.max_radius);
  out << io::write_barcode(compute_barcode(fc, f, barcode_options(cfg)), f);
}

inline void run_barcode(const RunConfig& cfg, const Field& f, std::ostream& out) {
  if (!cfg.filtration.empty()) {
    auto in = open(cfg.filtration);
    out << io::write_barcode(compute_barcode(io::parse_filtration(in), f, barcode_options(cfg)), f);
    return;
  }
  const auto m = read_mapped(cfg);
  const auto fc = cfg.superlevel ? superlevel_filtration(m.complex(), m.values())
                                 : lower_star_filtration(m.complex(), m.values());
  out << io::write_barcode(compute_barcode(fc, f, barcode_options(cfg, cfg.superlevel)), f);
}

inline void run_homology(const RunConfig& cfg, const Field& f, std::ostream& out) {
  auto in = open(cfg.complex);
  const auto k = io::parse_complex(in);
  for (int p = 0; p <= std::max(k.dimension(), 0); ++p) out << "H_" << p << "=" << betti(k, p, f) << "\n";
}

inline void run_cosheaf(const RunConfig& cfg, const Field& f, std::ostream& out) {
  auto in = open(cfg.input);
  const auto c = io::parse_cosheaf(in, f);
  const auto k = c.base();
  for (int p = 0; p <= std::max(k.dimension(), 1); ++p) {
    out << "H_" << p << "=" << cosheaf_homology(c, p, f).dimension << "\n";
  }
  if (k.dimension() <= 1) {
    const auto census = bar_census(c, f);
    out << "census closed=" << census.closed << " open=" << census.open << " half_open=" << census.half_open << "\n";
  }
}

inline void run_leray(const RunConfig& cfg, const Field& f, std::ostream& out) {
  const auto m = read_mapped(cfg);
  const auto cover = io::parse_cover(cfg.cover);
  check_admissible(m, cover);
  const auto wc = window_cover(cover);
  io::Json j;
  j["field"] = f.characteristic();
  j["cover"] = io::Json::array();
  for (const auto& u : cover.intervals()) j["cover"].push_back({u.lo, u.hi});
  j["degrees"] = io::Json::array();
  for (int i : degrees(cfg, m.complex())) {
    const auto lc = leray_cosheaf(m, wc, i, f);
    const auto lh = leray_homology(m, wc, i, f);
    io::Json d;
    d["degree"] = i;
    d["stalks"] = stalks_json(lc.cosheaf);
    d["h0"] = lh.h0;
    d["h1_prev"] = lh.h1_prev;
    d["global"] = lh.total();
    d["direct"] = betti(m.complex(), i, f);
    j["degrees"].push_back(std::move(d));
  }
  out << j.dump(2) << "\n";
}

inline void run_sublevel(const RunConfig& cfg, const Field& f, std::ostream& out) {
  const auto m = read_mapped(cfg);
  const auto cover = io::parse_cover(cfg.cover);
  const auto ts = io::parse_number_list(cfg.thresholds);
  io::Json j;
  j["field"] = f.characteristic();
  j["thresholds"] = ts;
  j["modules"] = io::Json::array();
  for (int i : degrees(cfg, m.complex())) {
    const auto sm = sublevel_module(m, cover, i, ts, f);
    std::vector<std::size_t> ranks;
    for (const auto& map : sm.module.maps) ranks.push_back(rank(map, f));
    io::Json d;
    d["degree"] = i;
    d["dims"] = sm.module.dims;
    d["ranks"] = ranks;
    d["bars"] = io::integer_bars_json(decompose_explicit(sm.module, f));
    j["modules"].push_back(std::move(d));
  }
  out << j.dump(2) << "\n";
}

inline void run_zigzag(const RunConfig& cfg, const Field& f, std::ostream& out) {
  auto in = open(cfg.input);
  const auto z = io::parse_zigzag(in, f);
  io::Json j;
  j["field"] = f.characteristic();
  j["dims"] = z.dims;
  j["bars"] = io::integer_bars_json(decompose_zigzag(z, f));
  out << j.dump(2) << "\n";
}

inline void run_plot(const RunConfig& cfg, std::ostream& out) {
  const auto file = io::read_barcode(slurp(cfg.input));
  out << render_svg(file.barcode, {cfg.width, cfg.height});
}

}  // namespace detail

/// Runs one subcommand. Domain errors go to `err` and give exit code 1.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const Field f(cfg.field);
    std::ostringstream buf;
    if (cfg.subcommand == "rips") {
      detail::run_rips(cfg, f, buf);
    } else if (cfg.subcommand == "cech") {
      detail::run_cech(cfg, f, buf);
    } else if (cfg.subcommand == "barcode") {
      detail::run_barcode(cfg, f, buf);
    } else if (cfg.subcommand == "homology") {
      detail::run_homology(cfg, f, buf);
    } else if (cfg.subcommand == "cosheaf") {
      detail::run_cosheaf(cfg, f, buf);
    } else if (cfg.subcommand == "leray") {
      detail::run_leray(cfg, f, buf);
    } else if (cfg.subcommand == "sublevel") {
      detail::run_sublevel(cfg, f, buf);
    } else if (cfg.subcommand == "zigzag") {
      detail::run_zigzag(cfg, f, buf);
    } else if (cfg.subcommand == "plot") {
      detail::run_plot(cfg, buf);
    } else {
      err << "tda: unknown subcommand " << cfg.subcommand << "\n";
      return 2;
    }
    if (cfg.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream os(cfg.output, std::ios::binary);
      os << buf.str();
      if (!os) throw Error("cannot write " + cfg.output);
    }
    return 0;
  } catch (const Error& e) {
    err << "tda " << cfg.subcommand << ": " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    // missing vertex values and similar lookups
    err << "tda " << cfg.subcommand << ": " << e.what() << "\n";
    return 1;
  }
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  auto parsed = parse_args(argc, argv, out, err);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return run(std::get<RunConfig>(parsed), out, err);
}

}  // namespace tda::cli
