#include "htib/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace htib {

namespace {

bool method_uses_ghost(Method method) {
  switch (method) {
    case Method::kHti:
    case Method::kHtiRd:
    case Method::kHtiLower:
    case Method::kCatoni:
    case Method::kMargin:
      return true;
    default:
      return false;
  }
}

ScanMethod scan_method_for(Method method) {
  switch (method) {
    case Method::kHti: return ScanMethod::kHti;
    case Method::kHtiRd: return ScanMethod::kHtiRd;
    case Method::kHtiLower: return ScanMethod::kHtiLower;
    case Method::kCatoni: return ScanMethod::kCatoni;
    default: throw std::logic_error("method has no ghost-size scan");
  }
}

std::int64_t as_index(double value, const char* what) {
  const auto rounded = static_cast<std::int64_t>(std::llround(value));
  if (std::abs(value - static_cast<double>(rounded)) > 1e-9) {
    throw std::invalid_argument(std::string(what) + " grid values must be integers");
  }
  return rounded;
}

}  // namespace

std::string_view vary_name(Vary vary) {
  switch (vary) {
    case Vary::kRisk: return "risk";
    case Vary::kSampleSize: return "m";
    case Vary::kVcDim: return "d";
    case Vary::kGhostSize: return "mprime";
  }
  return "?";
}

std::optional<Vary> vary_from_name(std::string_view name) {
  for (Vary v : {Vary::kRisk, Vary::kSampleSize, Vary::kVcDim, Vary::kGhostSize}) {
    if (vary_name(v) == name) return v;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep grid must be non-empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("sweep grid must be strictly increasing");
    }
  }
  if (methods.empty()) throw std::invalid_argument("sweep needs at least one method");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");

  if (vary == Vary::kVcDim) {
    if (vc_dim || class_size) {
      throw std::invalid_argument("varying d: drop the fixed growth parameters");
    }
  } else {
    if (vc_dim.has_value() == class_size.has_value()) {
      throw std::invalid_argument("exactly one of vc_dim / class_size must be set");
    }
  }
  if (vary != Vary::kSampleSize && sample_size < 1) {
    throw std::invalid_argument("sample_size must be >= 1");
  }
  for (Method m : methods) {
    if (m == Method::kMargin) {
      throw std::invalid_argument("margin bound is not sweepable (needs a covering number)");
    }
    if (m == Method::kLugosi && class_size) {
      throw std::invalid_argument("lugosi bound requires a VC dimension");
    }
    if (m == Method::kSampleCompression && vary != Vary::kVcDim && !sc_size && !vc_dim) {
      throw std::invalid_argument("sc bound needs sc_size or vc_dim");
    }
  }
  if (!errors && !(risk >= 0.0 && risk <= 1.0)) {
    throw std::invalid_argument("risk must lie in [0, 1]");
  }
}

BoundResult evaluate_method(Method method, std::int64_t errors, std::int64_t sample_size,
                            std::int64_t ghost_size, double log_delta,
                            const GrowthModel& growth,
                            std::optional<std::int64_t> sc_size,
                            std::optional<double> log_cover) {
  const BoundQuery q{errors, sample_size, ghost_size, log_delta, growth};
  switch (method) {
    case Method::kHti: return hti_epsilon(q);
    case Method::kHtiRd: return hti_rd_epsilon(q);
    case Method::kHtiLower: return hti_lower_epsilon(q);
    case Method::kMargin:
      if (!log_cover) throw std::invalid_argument("margin bound needs log_cover");
      return margin_epsilon(errors, sample_size, ghost_size, log_delta, *log_cover);
    case Method::kVp: return vp_bound(q);
    case Method::kVrd: return vrd_bound(q);
    case Method::kLugosi: return lugosi_bound(q);
    case Method::kCatoni: return catoni_c46(q);
    case Method::kSampleCompression: {
      std::int64_t size;
      if (sc_size) {
        size = *sc_size;
      } else if (growth.is_sauer_shelah()) {
        size = growth.vc_dim();
      } else {
        throw std::invalid_argument("sc bound needs a compression size");
      }
      return sc_bound(errors, sample_size, size, log_delta);
    }
    case Method::kLangford: return langford_test_bound(errors, sample_size, log_delta);
  }
  throw std::logic_error("unknown method");
}

SweepOutcome run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepOutcome outcome;
  const double log_delta = std::log(spec.delta);

  const auto fixed_growth = [&]() -> std::optional<GrowthModel> {
    if (spec.vc_dim) return GrowthModel::sauer_shelah(*spec.vc_dim);
    if (spec.class_size) return GrowthModel::finite_class(*spec.class_size);
    return std::nullopt;
  }();

  const auto errors_for = [&](std::int64_t m, double risk) -> std::int64_t {
    if (spec.errors) {
      if (*spec.errors > m) throw std::invalid_argument("errors exceed sample size");
      return *spec.errors;
    }
    const double exact = risk * static_cast<double>(m);
    const auto k = static_cast<std::int64_t>(std::llround(exact));
    if (std::abs(exact - static_cast<double>(k)) > 1e-9) {
      outcome.warnings.push_back("risk " + format_double(risk) + " at m=" + format_int(m) +
                                 " is not an integral error count; rounded to errors=" +
                                 format_int(k));
    }
    return k;
  };

  const auto optimize_ghost = [&](Method method, std::int64_t k, std::int64_t m,
                                  const GrowthModel& growth) -> std::int64_t {
    MprimeScan scan;
    scan.errors = k;
    scan.sample_size = m;
    scan.log_delta = log_delta;
    scan.growth = growth;
    scan.method = scan_method_for(method);
    scan.lo = 1;
    scan.hi = spec.mprime.range_multiplier * m;
    scan.step = spec.mprime.step;
    scan.catoni_multiples = method == Method::kCatoni;
    scan.threads = spec.threads;
    return optimize_mprime(scan).best_ghost;
  };

  // Risk sweeps fix the ghost size once, optimized for the anticipated error
  // count; other sweeps re-optimize at every grid point.
  std::vector<std::optional<std::int64_t>> risk_sweep_ghost(spec.methods.size());
  if (spec.vary == Vary::kRisk && !spec.mprime.fixed) {
    const std::int64_t k0 = spec.mprime.target_errors;
    for (std::size_t i = 0; i < spec.methods.size(); ++i) {
      if (method_uses_ghost(spec.methods[i])) {
        risk_sweep_ghost[i] = optimize_ghost(spec.methods[i], k0, spec.sample_size, *fixed_growth);
      }
    }
  }

  CsvTable& table = outcome.table;
  table.header = {"m", "errors", "risk", "delta"};
  table.header.push_back(spec.class_size ? "class_size" : "d");
  if (spec.vary == Vary::kGhostSize) table.header.push_back("mprime");
  if (spec.vary == Vary::kSampleSize) table.header.push_back("opt_rate");
  for (Method m : spec.methods) {
    const std::string tag{method_name(m)};
    table.header.push_back(tag);
    table.header.push_back(tag + "_vacuous");
    table.header.push_back(tag + "_valid");
    if (method_uses_ghost(m) && spec.vary != Vary::kGhostSize) {
      table.header.push_back(tag + "_mprime");
    }
  }

  for (const double point : spec.grid) {
    const std::int64_t m =
        spec.vary == Vary::kSampleSize ? as_index(point, "m") : spec.sample_size;
    const GrowthModel growth = spec.vary == Vary::kVcDim
                                   ? GrowthModel::sauer_shelah(as_index(point, "d"))
                                   : *fixed_growth;
    const double risk = spec.vary == Vary::kRisk ? point : spec.risk;
    const std::int64_t k = errors_for(m, risk);

    std::vector<std::string> row;
    row.push_back(format_int(m));
    row.push_back(format_int(k));
    row.push_back(format_double(static_cast<double>(k) / static_cast<double>(m)));
    row.push_back(format_double(spec.delta));
    row.push_back(format_int(spec.class_size
                                 ? *spec.class_size
                                 : (spec.vary == Vary::kVcDim ? as_index(point, "d")
                                                              : *spec.vc_dim)));
    if (spec.vary == Vary::kGhostSize) row.push_back(format_int(as_index(point, "mprime")));
    if (spec.vary == Vary::kSampleSize) {
      const double d_eff = spec.class_size ? 1.0 : static_cast<double>(*spec.vc_dim);
      row.push_back(format_double(std::sqrt(d_eff / static_cast<double>(m))));
    }

    for (std::size_t i = 0; i < spec.methods.size(); ++i) {
      const Method method = spec.methods[i];
      std::int64_t ghost = 1;
      if (method_uses_ghost(method)) {
        if (spec.vary == Vary::kGhostSize) {
          ghost = as_index(point, "mprime");
        } else if (spec.mprime.fixed) {
          ghost = *spec.mprime.fixed;
        } else if (risk_sweep_ghost[i]) {
          ghost = *risk_sweep_ghost[i];
        } else {
          ghost = optimize_ghost(method, k, m, growth);
        }
      }
      const BoundResult r =
          evaluate_method(method, k, m, ghost, log_delta, growth, spec.sc_size);
      row.push_back(format_double(r.value));
      row.push_back(r.vacuous ? "1" : "0");
      row.push_back(r.valid ? "1" : "0");
      if (method_uses_ghost(method) && spec.vary != Vary::kGhostSize) {
        row.push_back(format_int(ghost));
      }
    }
    table.rows.push_back(std::move(row));
  }
  return outcome;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (lo > hi) throw std::invalid_argument("grid requires lo <= hi");
  std::vector<double> grid;
  const double slack = step * 1e-9;
  for (std::int64_t i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + slack) break;
    grid.push_back(std::min(v, hi));
  }
  return grid;
}

std::vector<double> log_int_grid(double lo, double hi, int points) {
  if (!(lo >= 1.0) || lo > hi) throw std::invalid_argument("log grid requires 1 <= lo <= hi");
  if (points < 1) throw std::invalid_argument("log grid needs at least one point");
  std::vector<double> grid;
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const auto v = static_cast<double>(std::llround(std::exp(log_lo + t * (log_hi - log_lo))));
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  return grid;
}

CsvTable gain_study_table(const GainStudyReport& report) {
  CsvTable table;
  table.header = {"m",           "risk",         "errors",           "d",   "delta",
                  "mprime_best", "epsilon_best", "epsilon_baseline", "gain"};
  for (const GainStudyRow& row : report.rows) {
    table.rows.push_back({format_int(row.sample_size), format_double(row.risk),
                          format_int(row.errors), format_int(row.vc_dim),
                          format_double(row.delta), format_int(row.best_ghost),
                          format_double(row.best_epsilon), format_double(row.baseline_epsilon),
                          format_double(row.gain)});
  }
  return table;
}

CsvTable trace_table(const MprimeResult& result) {
  CsvTable table;
  table.header = {"mprime", "epsilon"};
  for (const auto& [mprime, epsilon] : result.trace) {
    table.rows.push_back({format_int(mprime), format_double(epsilon)});
  }
  return table;
}

}  // namespace htib
