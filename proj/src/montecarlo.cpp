#include "catzero/montecarlo.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <thread>

namespace catzero::mc {

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0 || successes > trials) throw DomainError("invalid binomial counts");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
  const double alpha = 1.0 - confidence;
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval ci{0.0, 1.0};
  if (successes > 0) ci.low = boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1.0), alpha / 2.0);
  if (successes < trials) {
    ci.high = boost::math::quantile(boost::math::beta_distribution<double>(k + 1.0, n - k), 1.0 - alpha / 2.0);
  }
  // Keep the point estimate inside the interval despite quantile roundoff.
  const double p = k / n;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t, std::size_t)>& body) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(count, 1));
  if (chunks <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void validate_common(std::size_t n, std::size_t trials, double confidence) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
}

void validate_r_grid(const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw DomainError("r grid is empty");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] >= 0.0)) throw DomainError("r grid values must be nonnegative");
    if (i > 0 && r_grid[i] < r_grid[i - 1]) throw DomainError("r grid must be sorted ascending");
  }
}

std::vector<double> TailReport::violations() const {
  std::vector<double> out;
  for (const auto& row : rows) {
    if (row.theory_bound < row.ci_low) out.push_back(row.r);
  }
  return out;
}

TailRow make_tail_row(double r, std::uint64_t exceed, std::uint64_t trials, double confidence, double bound) {
  const Interval ci = clopper_pearson(exceed, trials, confidence);
  return {r, exceed, static_cast<double>(exceed) / static_cast<double>(trials), ci.low, ci.high, bound};
}

QuantileEstimate sample_quantile(std::vector<double> sample, double kappa, double confidence) {
  if (sample.empty()) throw DomainError("quantile of an empty sample");
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("kappa must lie in (0, 1)");
  std::sort(sample.begin(), sample.end());
  const auto size = static_cast<double>(sample.size());
  const double level = 1.0 - kappa;
  auto at_rank = [&](double rank) {
    // rank is 1-based; clamp into the sample.
    const auto k = static_cast<std::size_t>(std::clamp(rank, 1.0, size));
    return sample[k - 1];
  };
  QuantileEstimate out;
  // Smallest ρ whose closed ball holds a fraction ≥ 1 − κ of the sample.
  out.value = at_rank(std::ceil(level * size - 1e-9));
  const boost::math::binomial_distribution<double> count(size, level);
  const double alpha = 1.0 - confidence;
  out.ci.low = at_rank(boost::math::quantile(count, alpha / 2.0));
  out.ci.high = at_rank(boost::math::quantile(count, 1.0 - alpha / 2.0) + 1.0);
  out.ci.low = std::min(out.ci.low, out.value);
  out.ci.high = std::max(out.ci.high, out.value);
  return out;
}

std::vector<ProductConcentrationRow> check_product_concentration(const std::vector<double>& diameters,
                                                                 std::size_t trials,
                                                                 const std::vector<double>& r_grid,
                                                                 std::uint64_t seed, double confidence,
                                                                 unsigned workers) {
  validate_common(1, trials, confidence);
  validate_r_grid(r_grid);
  bounds::ledoux_deviation_bound(0.0, diameters);  // rejects empty or nonpositive diameters

  double expected = 0.0;
  for (double d : diameters) expected += 0.5 * d;
  const std::size_t blocks = (diameters.size() + 63) / 64;
  std::vector<double> deviation(trials);
  parallel_for(trials, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      double f = 0.0;
      for (std::size_t b = 0; b < blocks; ++b) {
        const std::uint64_t bits = counter_bits(seed, static_cast<std::uint64_t>(t * blocks + b));
        for (std::size_t i = b * 64; i < std::min(diameters.size(), (b + 1) * 64); ++i) {
          if ((bits >> (i - b * 64)) & 1U) f += diameters[i];
        }
      }
      deviation[t] = std::abs(f - expected);
    }
  });

  std::vector<ProductConcentrationRow> rows;
  for (double r : r_grid) {
    std::uint64_t exceed = 0;
    for (double x : deviation) exceed += x >= r ? 1 : 0;
    ProductConcentrationRow row;
    row.r = r;
    row.exceed_count = exceed;
    row.empirical = static_cast<double>(exceed) / static_cast<double>(trials);
    row.ci = clopper_pearson(exceed, trials, confidence);
    row.bound = bounds::ledoux_deviation_bound(r, diameters);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace catzero::mc
