// SPDX-License-Identifier: Apache-2.0
#include "tlut/dse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "ini.hpp"
#include "tlut/errors.hpp"
#include "tlut/matrix_io.hpp"

namespace tlut::dse {

namespace {

// Areas within this relative distance compare as equal for tie-breaking.
constexpr double kTieTolerance = 1e-12;

bool area_less(double a, double b) { return a < b && (b - a) > kTieTolerance * std::max(a, b); }
bool area_equal(double a, double b) { return !area_less(a, b) && !area_less(b, a); }

std::int64_t parse_i64(const std::string& text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ConfigError("not an integer: '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("not a boolean: '" + text + "'");
}

std::int64_t band_lo(const ThroughputTarget& t) {
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(t.target) * (1.0 - t.tolerance) - 1e-9));
}
std::int64_t band_hi(const ThroughputTarget& t) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(t.target) * (1.0 + t.tolerance) + 1e-9));
}

// Calls fn(L, mu, K) for every integral configuration with n * m in [lo, hi].
template <class Fn>
void for_each_in_band(std::int64_t lo, std::int64_t hi, int max_mu, bool square_only, Fn&& fn) {
  lo = std::max<std::int64_t>(lo, 1);
  for (int mu = 1; mu <= max_mu; ++mu) {
    for (std::int64_t L = 1; L * mu <= hi; ++L) {
      const std::int64_t n = L * mu;
      if (square_only) {
        if (n * n >= lo && n * n <= hi) fn(L, mu, n);
        continue;
      }
      const std::int64_t k_lo = std::max<std::int64_t>(1, (lo + n - 1) / n);
      const std::int64_t k_hi = hi / n;
      for (std::int64_t K = k_lo; K <= k_hi; ++K) fn(L, mu, K);
    }
  }
}

}  // namespace

std::optional<TileConfig> DesignPoint::config() const {
  if (!shape.integral()) return std::nullopt;
  return TileConfig(static_cast<int>(shape.n / shape.group_size), shape.group_size, static_cast<int>(shape.m),
                    shape.act);
}

DesignPoint evaluate(const cost::TileShape& shape, const cost::CostCoefficients& coeffs, cost::BuildMode mode) {
  DesignPoint p;
  p.shape = shape;
  p.breakdown = cost::total_area(shape, coeffs, mode);
  p.area = p.breakdown.total;
  p.throughput = static_cast<double>(shape.throughput());
  p.efficiency = p.throughput / p.area;
  return p;
}

IntRange parse_int_range(const std::string& text) {
  const auto dash = text.find('-', 1);
  IntRange r;
  if (dash == std::string::npos) {
    r.lo = r.hi = static_cast<int>(parse_i64(text));
  } else {
    r.lo = static_cast<int>(parse_i64(text.substr(0, dash)));
    r.hi = static_cast<int>(parse_i64(text.substr(dash + 1)));
  }
  if (r.lo > r.hi) throw ConfigError("empty range '" + text + "'");
  return r;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(start, comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) values.push_back(parse_i64(item));
    start = comma + 1;
  }
  if (values.empty()) throw ConfigError("empty list '" + text + "'");
  return values;
}

bool ThroughputTarget::contains(std::int64_t throughput) const noexcept {
  return throughput >= band_lo(*this) && throughput <= band_hi(*this);
}

void SweepSpec::validate() const {
  coeffs.validate();
  auto check = [](IntRange r, const char* name, int min) {
    if (r.lo > r.hi || r.lo < min) throw InvalidArgument(std::string(name) + " range is empty or below " + std::to_string(min));
  };
  check(mu, "mu", 1);
  if (mu.hi > kMaxGroupSize) throw InvalidArgument("mu range exceeds 8");
  if (square_sizes.empty()) {
    check(lut_count, "L", 1);
    check(fetchers, "K", 1);
  }
  for (auto s : square_sizes) {
    if (s < 1) throw InvalidArgument("tile sizes must be >= 1");
  }
  if (throughput) {
    if (throughput->target < 1) throw InvalidArgument("throughput target must be >= 1");
    if (!(throughput->tolerance >= 0.0 && throughput->tolerance < 1.0)) {
      throw InvalidArgument("throughput tolerance must be in [0, 1)");
    }
  }
}

SweepResult sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  auto accept = [&](const cost::TileShape& s) {
    if (spec.throughput && !spec.throughput->contains(s.throughput())) return;
    result.points.push_back(evaluate(s, spec.coeffs, spec.mode));
  };
  const ActivationType act = spec.coeffs.act;
  for (int mu = spec.mu.lo; mu <= spec.mu.hi; ++mu) {
    if (!spec.square_sizes.empty()) {
      auto sizes = spec.square_sizes;
      std::sort(sizes.begin(), sizes.end());
      for (std::int64_t size : sizes) {
        if (size < mu || (spec.integral_only && size % mu != 0)) {
          result.skipped.push_back("n=" + std::to_string(size) + " mu=" + std::to_string(mu) +
                                   ": L = n/mu is not a positive integer");
          continue;
        }
        accept(cost::make_shape(size, size, mu, act));
      }
      continue;
    }
    for (int L = spec.lut_count.lo; L <= spec.lut_count.hi; ++L) {
      const std::int64_t n = std::int64_t{L} * mu;
      if (spec.square_only) {
        if (n >= spec.fetchers.lo && n <= spec.fetchers.hi) accept(cost::make_shape(n, n, mu, act));
        continue;
      }
      for (int K = spec.fetchers.lo; K <= spec.fetchers.hi; ++K) accept(cost::make_shape(n, K, mu, act));
    }
  }
  return result;
}

SweepSpec parse_sweep_spec(const std::string& text, const std::filesystem::path& base_dir,
                           std::optional<ActivationType> act_override) {
  const auto sections = detail::parse_ini(text);
  const auto it = std::find_if(sections.begin(), sections.end(), [](const auto& s) { return s.name == "sweep"; });
  if (it == sections.end()) throw ConfigError("sweep spec has no [sweep] section");
  const detail::IniSection& s = *it;

  SweepSpec spec;
  const ActivationType act = act_override ? *act_override : parse_activation_type(s.require("act"));
  const auto per_act = s.find("coeffs_" + std::string(tlut::to_string(act)));
  std::filesystem::path coeff_path = per_act ? *per_act : s.require("coeffs");
  if (coeff_path.is_relative()) coeff_path = base_dir / coeff_path;
  spec.coeffs = cost::load_coefficients(coeff_path, act);
  if (auto mode = s.find("mode")) {
    if (*mode == "fitted") spec.mode = cost::BuildMode::Fitted;
    else if (*mode == "exact") spec.mode = cost::BuildMode::Exact;
    else throw ConfigError("mode must be fitted or exact");
  }
  if (auto v = s.find("mu")) spec.mu = parse_int_range(*v);
  if (auto v = s.find("tile_sizes")) spec.square_sizes = parse_int_list(*v);
  if (auto v = s.find("L")) spec.lut_count = parse_int_range(*v);
  if (auto v = s.find("K")) spec.fetchers = parse_int_range(*v);
  if (auto v = s.find("square_only")) spec.square_only = parse_bool(*v);
  if (auto v = s.find("integral_only")) spec.integral_only = parse_bool(*v);
  if (auto v = s.find("throughput")) {
    ThroughputTarget t;
    t.target = parse_i64(*v);
    if (auto tol = s.find_double("tolerance")) t.tolerance = *tol;
    spec.throughput = t;
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid sweep spec: ") + e.what());
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path, std::optional<ActivationType> act) {
  return parse_sweep_spec(io::read_file_text(path), path.parent_path(), act);
}

int optimal_mu(std::int64_t n, std::int64_t m, const cost::CostCoefficients& coeffs, const MuSearch& search) {
  if (n < 1 || m < 1) throw InvalidArgument("tile dimensions must be >= 1");
  const int max_mu = static_cast<int>(std::min<std::int64_t>(search.max_group_size, n));
  int best = 0;
  double best_area = std::numeric_limits<double>::infinity();
  for (int mu = 1; mu <= max_mu; ++mu) {
    if (search.integral_only && n % mu != 0) continue;
    const double area = cost::total_area(cost::make_shape(n, m, mu, coeffs.act), coeffs, search.mode).total;
    if (best == 0 || area_less(area, best_area)) {
      best = mu;
      best_area = area;
    }
  }
  if (best == 0) throw InvalidArgument("no feasible group size for n=" + std::to_string(n));
  return best;
}

DesignPoint optimal_for_throughput(std::int64_t target, const cost::CostCoefficients& coeffs,
                                   const ThroughputSearch& search) {
  if (target < 1) throw InvalidArgument("throughput target must be >= 1");
  if (!(search.tolerance >= 0.0 && search.tolerance < 1.0)) throw InvalidArgument("tolerance must be in [0, 1)");
  const ThroughputTarget band{target, search.tolerance};
  std::optional<DesignPoint> best;
  auto better = [](const DesignPoint& a, const DesignPoint& b) {
    if (!area_equal(a.area, b.area)) return a.area < b.area;
    if (a.throughput != b.throughput) return a.throughput > b.throughput;
    if (a.shape.group_size != b.shape.group_size) return a.shape.group_size < b.shape.group_size;
    return a.shape.m > b.shape.m;
  };
  for_each_in_band(band_lo(band), band_hi(band), search.max_group_size, !search.rectangular,
                   [&](std::int64_t L, int mu, std::int64_t K) {
                     auto p = evaluate(cost::make_shape(L * mu, K, mu, coeffs.act), coeffs, search.mode);
                     if (!best || better(p, *best)) best = std::move(p);
                   });
  if (!best) {
    throw NoFeasibleDesign("no configuration has n*m within " + std::to_string(search.tolerance * 100.0) +
                           "% of " + std::to_string(target) + "; try a larger tolerance");
  }
  return *best;
}

std::vector<DesignPoint> pareto_frontier(std::span<const DesignPoint> points) {
  std::vector<DesignPoint> sorted(points.begin(), points.end());
  // Highest throughput first; within equal throughput the cheapest first.
  std::sort(sorted.begin(), sorted.end(), [](const DesignPoint& a, const DesignPoint& b) {
    if (a.throughput != b.throughput) return a.throughput > b.throughput;
    return a.area < b.area;
  });
  std::vector<DesignPoint> frontier;
  double best_area = std::numeric_limits<double>::infinity();
  double best_area_throughput = -1.0;
  for (const auto& p : sorted) {
    // Dominated if something with >= throughput has lower area, or equal area
    // at strictly higher throughput.
    if (p.area > best_area) continue;
    if (p.area == best_area && best_area_throughput > p.throughput) continue;
    if (p.area < best_area) {
      best_area = p.area;
      best_area_throughput = p.throughput;
    }
    frontier.push_back(p);
  }
  std::reverse(frontier.begin(), frontier.end());
  return frontier;
}

GeometryScan geometry_scan(std::int64_t total_tile, const cost::CostCoefficients& coeffs,
                           const GeometrySearch& search) {
  if (total_tile < 1) throw InvalidArgument("tile size must be >= 1");
  const auto side = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(total_tile))));
  if (side * side != total_tile) throw InvalidArgument("geometry scan needs a perfect-square tile size");
  if (!(search.tolerance >= 0.0 && search.tolerance < 1.0)) throw InvalidArgument("tolerance must be in [0, 1)");

  const MuSearch mu_search{search.mode, search.max_group_size, false};
  const int square_mu = optimal_mu(side, side, coeffs, mu_search);
  GeometryScan scan;
  GeometryCell square{evaluate(cost::make_shape(side, side, square_mu, coeffs.act), coeffs, search.mode), 0.0, true};
  const double reference = square.point.area / square.point.throughput;
  scan.cells.push_back(square);

  const ThroughputTarget band{total_tile, search.tolerance};
  for_each_in_band(band_lo(band), band_hi(band), search.max_group_size, false,
                   [&](std::int64_t L, int mu, std::int64_t K) {
                     auto p = evaluate(cost::make_shape(L * mu, K, mu, coeffs.act), coeffs, search.mode);
                     const double delta = 1.0 - (p.area / p.throughput) / reference;
                     scan.cells.push_back(GeometryCell{std::move(p), delta, false});
                   });
  for (std::size_t i = 1; i < scan.cells.size(); ++i) {
    if (scan.cells[i].delta > scan.cells[scan.argmin].delta) scan.argmin = i;
  }
  return scan;
}

std::vector<EfficiencySample> efficiency_vs_tilesize(std::span<const std::int64_t> sizes,
                                                     const cost::CostCoefficients& coeffs, const MuSearch& search) {
  std::vector<EfficiencySample> out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw InvalidArgument("tile sizes must be strictly ascending");
    const int mu = optimal_mu(sizes[i], sizes[i], coeffs, search);
    const auto p = evaluate(cost::make_shape(sizes[i], sizes[i], mu, coeffs.act), coeffs, search.mode);
    out.push_back(EfficiencySample{sizes[i], mu, p.efficiency});
  }
  return out;
}

double efficiency_limit(const cost::CostCoefficients& coeffs, int max_group_size) {
  double best = 0.0;
  for (int mu = 1; mu <= max_group_size; ++mu) {
    best = std::max(best, 1.0 / cost::area_per_throughput_limit(mu, coeffs));
  }
  return best;
}

std::vector<SotaEntry> parse_sota_entries(const std::string& text) {
  std::vector<SotaEntry> entries;
  for (const auto& s : detail::parse_ini(text)) {
    SotaEntry e;
    e.name = s.name;
    e.lut_count = s.require_int("L");
    e.group_size = s.require_int("mu");
    e.fetchers = s.require_int("K");
    e.act = parse_activation_type(s.require("act"));
    e.reported_area = s.find_double("reported_area");
    e.area_unit = s.find("area_unit").value_or("");
    e.clock_mhz = s.find_double("clock_mhz");
    e.area_scale = s.find_double("area_scale");
    e.delay_scale = s.find_double("delay_scale");
    e.compare_area = s.find_double("compare_area");
    try {
      TileConfig(e.lut_count, e.group_size, e.fetchers, e.act);
    } catch (const InvalidArgument& err) {
      throw ConfigError("SOTA entry [" + e.name + "]: " + err.what());
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw ConfigError("SOTA file has no entries");
  return entries;
}

std::vector<SotaEntry> load_sota_entries(const std::filesystem::path& path) {
  return parse_sota_entries(io::read_file_text(path));
}

SotaReport compare_sota(const SotaEntry& entry, const cost::CostCoefficients& coeffs, const ThroughputSearch& search) {
  if (entry.act != coeffs.act) throw InvalidArgument("SOTA entry activation type does not match coefficients");
  const TileConfig cfg(entry.lut_count, entry.group_size, entry.fetchers, entry.act);
  SotaReport r;
  r.entry = entry;
  r.throughput = cfg.tile_size();
  r.published = evaluate(cost::shape_of(cfg), coeffs, search.mode);
  r.optimum = optimal_for_throughput(r.throughput, coeffs, search);
  r.area_ratio = r.published.area / r.optimum.area;
  if (entry.reported_area) r.scaled_area = *entry.reported_area * entry.area_scale.value_or(1.0);
  if (entry.clock_mhz && entry.delay_scale) r.scaled_clock_mhz = *entry.clock_mhz / *entry.delay_scale;
  if (r.scaled_area && entry.compare_area) r.area_decrease = *r.scaled_area / *entry.compare_area;
  return r;
}

void write_points_csv_header(std::ostream& out) {
  out << "L,mu,K,act,n,m,throughput,build_area,accumulate_area,mux_area,reg_area,total_area,efficiency\n";
}

void write_point_csv_row(std::ostream& out, const DesignPoint& p) {
  const auto& b = p.breakdown;
  const std::string lut = p.shape.integral() ? std::to_string(p.shape.n / p.shape.group_size)
                                             : io::format_double(p.lut_count());
  out << lut << ',' << p.shape.group_size << ',' << p.shape.m << ',' << tlut::to_string(p.shape.act) << ','
      << p.shape.n << ',' << p.shape.m << ',' << p.shape.throughput() << ','
      << io::format_double(b.gamma * b.build_plus) << ',' << io::format_double(b.gamma * b.accumulate_plus) << ','
      << io::format_double(b.gamma * b.mux) << ',' << io::format_double(b.gamma * b.out_reg) << ','
      << io::format_double(p.area) << ',' << io::format_double(p.efficiency) << '\n';
}

void write_points_csv(std::ostream& out, std::span<const DesignPoint> points) {
  write_points_csv_header(out);
  for (const auto& p : points) write_point_csv_row(out, p);
}

}  // namespace tlut::dse
