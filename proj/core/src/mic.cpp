#include "revana/mic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "revana/errors.hpp"

namespace revana {

std::size_t grid_budget(std::size_t n, double b_exponent) {
  // nudge below the ceiling so exact powers do not round up an extra step
  const double v = std::pow(static_cast<double>(n), b_exponent);
  const auto b = static_cast<std::size_t>(std::ceil(v - 1e-9));
  return std::max<std::size_t>(4, b);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double phi(long long c, double n) {  // (c/n) * log2(c/n), phi(0) = 0
  if (c == 0) return 0.0;
  const double p = static_cast<double>(c) / n;
  return p * std::log2(p);
}

// Greedy partition of consecutive runs into at most `parts` groups of
// roughly equal weight. Runs are never split, so tied values stay together.
std::vector<int> equigroup(const std::vector<long long>& run_sizes,
                           int parts) {
  const long long total =
      std::accumulate(run_sizes.begin(), run_sizes.end(), 0LL);
  std::vector<int> group(run_sizes.size(), 0);
  int g = 0;
  long long closed = 0, cur = 0;
  double desired = static_cast<double>(total) / parts;
  for (std::size_t i = 0; i < run_sizes.size(); ++i) {
    if (cur > 0 && g + 1 < parts &&
        std::abs(static_cast<double>(cur + run_sizes[i]) - desired) >
            std::abs(static_cast<double>(cur) - desired)) {
      ++g;
      closed += cur;
      cur = 0;
      desired = static_cast<double>(total - closed) / (parts - g);
    }
    group[i] = g;
    cur += run_sizes[i];
  }
  return group;
}

// One (orientation, b) batch: equipartitions eq_vals into b rows, then for
// every column count l <= a_cap finds the best I over partitions of opt_vals
// into exactly l clump groups. Returns I per l (kNegInf where infeasible).
// A single DP fills every l at once since column scores are additive:
// I = H(rows) + sum over columns of [sum_q phi(c_q) - phi(c_col)].
std::vector<double> best_info_per_columns(const std::vector<double>& opt_vals,
                                          const std::vector<double>& eq_vals,
                                          int b, int a_cap,
                                          int clump_factor) {
  const std::size_t n = opt_vals.size();
  const double dn = static_cast<double>(n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
    return eq_vals[u] < eq_vals[v];
  });

  // rows from the equipartition
  std::vector<long long> run_sizes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && eq_vals[order[j + 1]] == eq_vals[order[i]]) ++j;
    run_sizes.push_back(static_cast<long long>(j - i + 1));
    i = j + 1;
  }
  const std::vector<int> run_group = equigroup(run_sizes, b);
  const int r = run_group.empty() ? 0 : run_group.back() + 1;
  std::vector<int> row_of(n, 0);
  {
    std::size_t pos = 0;
    for (std::size_t run = 0; run < run_sizes.size(); ++run)
      for (long long k = 0; k < run_sizes[run]; ++k)
        row_of[order[pos++]] = run_group[run];
  }
  std::vector<long long> row_mass(static_cast<std::size_t>(r), 0);
  for (std::size_t i = 0; i < n; ++i) ++row_mass[row_of[i]];
  double hq = 0.0;
  for (long long m : row_mass) hq -= phi(m, dn);

  // clumps: maximal runs of equal opt value, with per-row counts
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
    return opt_vals[u] < opt_vals[v];
  });
  std::vector<std::vector<long long>> clump;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::vector<long long> cnt(static_cast<std::size_t>(r), 0);
    ++cnt[row_of[order[i]]];
    while (j + 1 < n && opt_vals[order[j + 1]] == opt_vals[order[i]]) {
      ++j;
      ++cnt[row_of[order[j]]];
    }
    clump.push_back(std::move(cnt));
    i = j + 1;
  }

  // cap the clump count so the DP stays near-linear in n
  const std::size_t cap =
      static_cast<std::size_t>(clump_factor) * static_cast<std::size_t>(a_cap);
  if (clump.size() > cap) {
    std::vector<long long> sizes(clump.size());
    for (std::size_t i = 0; i < clump.size(); ++i)
      sizes[i] = std::accumulate(clump[i].begin(), clump[i].end(), 0LL);
    const std::vector<int> merged = equigroup(sizes, static_cast<int>(cap));
    std::vector<std::vector<long long>> super(
        static_cast<std::size_t>(merged.back()) + 1,
        std::vector<long long>(static_cast<std::size_t>(r), 0));
    for (std::size_t i = 0; i < clump.size(); ++i)
      for (int q = 0; q < r; ++q)
        super[merged[i]][static_cast<std::size_t>(q)] +=
            clump[i][static_cast<std::size_t>(q)];
    clump = std::move(super);
  }
  const std::size_t m = clump.size();

  // cumulative per-row counts over clump prefixes
  std::vector<long long> cum((m + 1) * static_cast<std::size_t>(r), 0);
  for (std::size_t t = 1; t <= m; ++t)
    for (int q = 0; q < r; ++q)
      cum[t * r + q] = cum[(t - 1) * r + q] + clump[t - 1][q];

  // score of clumps (s, t] as one column
  auto column_score = [&](std::size_t s, std::size_t t) {
    double g = 0.0;
    long long tot = 0;
    for (int q = 0; q < r; ++q) {
      const long long c = cum[t * r + q] - cum[s * r + q];
      tot += c;
      g += phi(c, dn);
    }
    return g - phi(tot, dn);
  };

  std::vector<double> result(static_cast<std::size_t>(a_cap) + 1, kNegInf);
  if (m == 0) return result;

  std::vector<double> prev(m + 1, kNegInf), curr(m + 1, kNegInf);
  for (std::size_t t = 1; t <= m; ++t) prev[t] = column_score(0, t);
  result[1] = hq + prev[m];
  const int l_max =
      static_cast<int>(std::min(static_cast<std::size_t>(a_cap), m));
  for (int l = 2; l <= l_max; ++l) {
    std::fill(curr.begin(), curr.end(), kNegInf);
    for (std::size_t t = static_cast<std::size_t>(l); t <= m; ++t) {
      double best = kNegInf;
      for (std::size_t s = static_cast<std::size_t>(l) - 1; s < t; ++s) {
        if (prev[s] == kNegInf) continue;
        const double cand = prev[s] + column_score(s, t);
        if (cand > best) best = cand;
      }
      curr[t] = best;
    }
    result[static_cast<std::size_t>(l)] = hq + curr[m];
    std::swap(prev, curr);
  }
  return result;
}

}  // namespace

namespace {

void check_options(const MicOptions& opt) {
  if (!(opt.b_exponent > 0.0) || opt.b_exponent > 1.0)
    throw std::invalid_argument("b_exponent must lie in (0, 1]");
  if (opt.clump_factor < 1)
    throw std::invalid_argument("clump_factor must be >= 1");
}

}  // namespace

double mic(const PairedSample& s, const MicOptions& opt) {
  validate(s, 1);
  if (s.size() < 4)
    throw DegenerateInputError("mic requires at least 4 points");
  check_options(opt);

  const std::size_t budget = grid_budget(s.size(), opt.b_exponent);
  double best = 0.0;
  for (int orient = 0; orient < 2; ++orient) {
    const std::vector<double>& ox = orient ? s.y : s.x;
    const std::vector<double>& oy = orient ? s.x : s.y;
    for (std::size_t b = 2; b * 2 <= budget; ++b) {
      const int a_cap = static_cast<int>(budget / b);
      const std::vector<double> info = best_info_per_columns(
          ox, oy, static_cast<int>(b), a_cap, opt.clump_factor);
      double run = kNegInf;
      for (int a = 2; a <= a_cap; ++a) {
        if (static_cast<std::size_t>(a) < info.size())
          run = std::max(run, info[static_cast<std::size_t>(a)]);
        if (run == kNegInf) continue;
        const double denom =
            std::log2(static_cast<double>(std::min<std::size_t>(a, b)));
        best = std::max(best, run / denom);
      }
    }
  }
  return best;
}

double mic_exact(const PairedSample& s, std::size_t max_n,
                 const MicOptions& opt) {
  validate(s, 1);
  check_options(opt);
  const std::size_t n = s.size();
  if (n < 4) throw DegenerateInputError("mic requires at least 4 points");
  if (n > max_n) throw InputTooLargeError(n, max_n);

  const std::size_t budget = grid_budget(n, opt.b_exponent);
  const double dn = static_cast<double>(n);

  // map each coordinate to its index among the axis's distinct values
  auto distinct_ids = [](const std::vector<double>& v) {
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> id(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      id[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), v[i]) -
          sorted.begin());
    return std::pair{id, sorted.size()};
  };
  const auto [dx, nx] = distinct_ids(s.x);
  const auto [dy, ny] = distinct_ids(s.y);

  // every subset of value gaps forms a candidate partition; parts are
  // non-empty by construction
  struct Partition {
    std::size_t parts;
    std::vector<int> part_of;
  };
  auto enumerate = [&](const std::vector<int>& id, std::size_t n_distinct,
                       std::size_t max_parts) {
    std::vector<Partition> out;
    const std::size_t gaps = n_distinct == 0 ? 0 : n_distinct - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gaps); ++mask) {
      const auto parts = static_cast<std::size_t>(std::popcount(mask)) + 1;
      if (parts < 2 || parts > max_parts) continue;
      Partition p;
      p.parts = parts;
      p.part_of.resize(id.size());
      for (std::size_t i = 0; i < id.size(); ++i)
        p.part_of[i] = std::popcount(
            mask & ((std::uint64_t{1} << static_cast<unsigned>(id[i])) - 1));
      out.push_back(std::move(p));
    }
    return out;
  };
  const auto part_x = enumerate(dx, nx, budget / 2);
  const auto part_y = enumerate(dy, ny, budget / 2);

  double best = 0.0;
  std::vector<long long> cells;
  std::vector<long long> row_sum, col_sum;
  for (const auto& px : part_x) {
    for (const auto& py : part_y) {
      if (px.parts * py.parts > budget) continue;
      cells.assign(px.parts * py.parts, 0);
      row_sum.assign(px.parts, 0);
      col_sum.assign(py.parts, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto cx = static_cast<std::size_t>(px.part_of[i]);
        const auto cy = static_cast<std::size_t>(py.part_of[i]);
        ++cells[cx * py.parts + cy];
        ++row_sum[cx];
        ++col_sum[cy];
      }
      double info = 0.0;
      for (std::size_t cx = 0; cx < px.parts; ++cx)
        for (std::size_t cy = 0; cy < py.parts; ++cy) {
          const long long c = cells[cx * py.parts + cy];
          if (c > 0)
            info += (static_cast<double>(c) / dn) *
                    std::log2(static_cast<double>(c) * dn /
                              (static_cast<double>(row_sum[cx]) *
                               static_cast<double>(col_sum[cy])));
        }
      const double denom =
          std::log2(static_cast<double>(std::min(px.parts, py.parts)));
      best = std::max(best, info / denom);
    }
  }
  return best;
}

}  // namespace revana
