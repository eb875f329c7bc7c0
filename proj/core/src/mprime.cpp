#include "htib/mprime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace htib {

namespace {

double evaluate(ScanMethod method, const BoundQuery& q) {
  switch (method) {
    case ScanMethod::kHti: return hti_epsilon(q).value;
    case ScanMethod::kHtiRd: return hti_rd_epsilon(q).value;
    case ScanMethod::kHtiLower: return hti_lower_epsilon(q).value;
    case ScanMethod::kCatoni: return catoni_c46(q).value;
  }
  throw std::logic_error("unknown scan method");
}

std::vector<std::int64_t> scan_points(const MprimeScan& scan) {
  std::vector<std::int64_t> points;
  if (scan.method == ScanMethod::kCatoni && scan.catoni_multiples) {
    const std::int64_t m = scan.sample_size;
    for (std::int64_t mp = ((scan.lo + m - 1) / m) * m; mp <= scan.hi; mp += m) {
      points.push_back(mp);
    }
  } else {
    for (std::int64_t mp = scan.lo; mp <= scan.hi; mp += scan.step) {
      points.push_back(mp);
    }
  }
  return points;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Best {
  double epsilon = std::numeric_limits<double>::infinity();
  std::int64_t ghost = std::numeric_limits<std::int64_t>::max();

  void consider(double eps, std::int64_t mp) {
    if (eps < epsilon || (eps == epsilon && mp < ghost)) {
      epsilon = eps;
      ghost = mp;
    }
  }
  void merge(const Best& other) { consider(other.epsilon, other.ghost); }
};

}  // namespace

std::string_view scan_method_name(ScanMethod method) {
  switch (method) {
    case ScanMethod::kHti: return "hti";
    case ScanMethod::kHtiRd: return "hti-rd";
    case ScanMethod::kHtiLower: return "hti-lower";
    case ScanMethod::kCatoni: return "catoni";
  }
  return "?";
}

std::optional<ScanMethod> scan_method_from_name(std::string_view name) {
  for (ScanMethod m : {ScanMethod::kHti, ScanMethod::kHtiRd, ScanMethod::kHtiLower,
                       ScanMethod::kCatoni}) {
    if (scan_method_name(m) == name) return m;
  }
  return std::nullopt;
}

void MprimeScan::validate() const {
  if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
  if (errors < 0 || errors > sample_size) {
    throw std::invalid_argument("errors must lie in [0, sample_size]");
  }
  if (!(log_delta < 0.0) || std::isinf(log_delta)) {
    throw std::invalid_argument("log_delta must lie in (-inf, 0)");
  }
  if (lo < 1 || lo > hi) throw std::invalid_argument("scan range requires 1 <= lo <= hi");
  if (step < 1) throw std::invalid_argument("scan step must be >= 1");
}

MprimeResult optimize_mprime(const MprimeScan& scan) {
  scan.validate();
  const std::vector<std::int64_t> points = scan_points(scan);
  if (points.empty()) throw std::invalid_argument("empty ghost-size scan");

  const auto eval_point = [&scan](std::int64_t mp) {
    return evaluate(scan.method,
                    BoundQuery{scan.errors, scan.sample_size, mp, scan.log_delta, scan.growth});
  };

  MprimeResult result;
  result.evaluations = static_cast<std::int64_t>(points.size());
  if (scan.keep_trace) result.trace.resize(points.size());

  const int threads =
      std::min<int>(resolve_threads(scan.threads), static_cast<int>(points.size()));
  Best best;
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double eps = eval_point(points[i]);
      best.consider(eps, points[i]);
      if (scan.keep_trace) result.trace[i] = {points[i], eps};
    }
  } else {
    // Each worker owns a contiguous chunk; chunk minima merge in index order,
    // so the result does not depend on scheduling.
    std::vector<Best> partial(static_cast<std::size_t>(threads));
    std::vector<std::thread> workers;
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        const std::size_t end = std::min(points.size(), begin + chunk);
        for (std::size_t i = begin; i < end; ++i) {
          const double eps = eval_point(points[i]);
          partial[static_cast<std::size_t>(t)].consider(eps, points[i]);
          if (scan.keep_trace) result.trace[i] = {points[i], eps};
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const Best& b : partial) best.merge(b);
  }

  result.best_ghost = best.ghost;
  result.best_epsilon = best.epsilon;
  return result;
}

MprimeResult optimize_mprime_refined(MprimeScan scan, std::int64_t coarse_step) {
  if (coarse_step < 1) throw std::invalid_argument("coarse step must be >= 1");
  scan.step = coarse_step;
  const bool keep_trace = scan.keep_trace;
  scan.keep_trace = false;
  const MprimeResult coarse = optimize_mprime(scan);

  MprimeScan fine = scan;
  fine.lo = std::max<std::int64_t>(scan.lo, coarse.best_ghost - coarse_step);
  fine.hi = std::min(scan.hi, coarse.best_ghost + coarse_step);
  fine.step = 1;
  fine.keep_trace = keep_trace;
  MprimeResult result = optimize_mprime(fine);
  result.evaluations += coarse.evaluations;
  return result;
}

std::int64_t heuristic_mprime(std::int64_t sample_size) {
  if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
  return 4 * sample_size;
}

GainStudyConfig GainStudyConfig::realizable_only() const {
  GainStudyConfig copy = *this;
  copy.risks = {0.0};
  return copy;
}

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

}  // namespace

GainStudyReport gain_study(const GainStudyConfig& config) {
  if (config.range_multiplier < 1) {
    throw std::invalid_argument("range_multiplier must be >= 1");
  }
  GainStudyReport report;
  std::vector<double> gains;
  std::vector<double> gains_realizable;

  for (const std::int64_t m : config.sample_sizes) {
    for (const double risk : config.risks) {
      const double k_real = risk * static_cast<double>(m);
      const auto k = static_cast<std::int64_t>(std::llround(k_real));
      if (std::abs(k_real - static_cast<double>(k)) > 1e-9) {
        throw std::invalid_argument("gain_study grid requires integral risk * sample_size");
      }
      for (const std::int64_t d : config.vc_dims) {
        for (const double delta : config.deltas) {
          MprimeScan scan;
          scan.errors = k;
          scan.sample_size = m;
          scan.log_delta = std::log(delta);
          scan.growth = GrowthModel::sauer_shelah(d);
          scan.method = config.method;
          scan.lo = std::max<std::int64_t>(1, config.range_lo_multiplier * m);
          scan.hi = config.range_multiplier * m;
          scan.step = config.step;
          scan.threads = config.threads;
          const MprimeResult opt = optimize_mprime(scan);
          const double baseline =
              evaluate(config.method, BoundQuery{k, m, m, scan.log_delta, scan.growth});
          const double gain = 1.0 - opt.best_epsilon / baseline;
          report.rows.push_back(GainStudyRow{m, risk, k, d, delta, opt.best_ghost,
                                             opt.best_epsilon, baseline, gain});
          gains.push_back(gain);
          if (k == 0) gains_realizable.push_back(gain);
        }
      }
    }
  }

  const Moments all = moments(gains);
  report.mean_gain = all.mean;
  report.std_gain = all.stddev;
  report.realizable_count = static_cast<std::int64_t>(gains_realizable.size());
  const Moments k0 = moments(gains_realizable);
  report.mean_gain_realizable = k0.mean;
  report.std_gain_realizable = k0.stddev;
  return report;
}

}  // namespace htib
