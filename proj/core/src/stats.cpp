#include "revana/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "revana/errors.hpp"

namespace revana {

void validate(const PairedSample& s, std::size_t min_n) {
  if (s.x.size() != s.y.size())
    throw std::invalid_argument("paired sample: x and y differ in length");
  if (s.x.size() < min_n)
    throw std::invalid_argument("paired sample: need at least " +
                                std::to_string(min_n) + " points");
  for (double v : s.x)
    if (!std::isfinite(v))
      throw std::invalid_argument("paired sample: non-finite value in x");
  for (double v : s.y)
    if (!std::isfinite(v))
      throw std::invalid_argument("paired sample: non-finite value in y");
}

double pearson(const PairedSample& s) {
  validate(s);
  const std::size_t n = s.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += s.x[i];
    my += s.y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = s.x[i] - mx;
    const double dy = s.y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw ConstantInputError("x");
  if (syy == 0.0) throw ConstantInputError("y");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = static_cast<double>(i + j + 2) / 2.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(const PairedSample& s) {
  validate(s);
  return pearson({ranks(s.x), ranks(s.y)});
}

namespace {

long long merge_count(std::vector<double>& a, std::vector<double>& buf,
                      std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long long cnt = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {  // strict: ties are not inversions
      cnt += static_cast<long long>(mid - i);
      buf[k++] = a[j++];
    } else {
      buf[k++] = a[i++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return cnt;
}

long long tie_pairs_sorted(const std::vector<double>& sorted) {
  long long pairs = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const long long t = static_cast<long long>(j - i + 1);
    pairs += t * (t - 1) / 2;
    i = j + 1;
  }
  return pairs;
}

}  // namespace

double kendall(const PairedSample& s, KendallVariant variant) {
  validate(s);
  const std::size_t n = s.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (s.x[a] != s.x[b]) return s.x[a] < s.x[b];
    return s.y[a] < s.y[b];
  });

  // pairs tied in x (n1) and tied in both coordinates (n3)
  long long n1 = 0, n3 = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && s.x[idx[j + 1]] == s.x[idx[i]]) ++j;
      const long long t = static_cast<long long>(j - i + 1);
      n1 += t * (t - 1) / 2;
      std::size_t p = i;
      while (p <= j) {
        std::size_t q = p;
        while (q + 1 <= j && s.y[idx[q + 1]] == s.y[idx[p]]) ++q;
        const long long u = static_cast<long long>(q - p + 1);
        n3 += u * (u - 1) / 2;
        p = q + 1;
      }
      i = j + 1;
    }
  }

  // pairs tied in y (n2)
  std::vector<double> ys = s.y;
  std::sort(ys.begin(), ys.end());
  const long long n2 = tie_pairs_sorted(ys);

  // discordant pairs = strict inversions of y in x order; within an x-tie
  // block y is ascending, so those pairs contribute nothing
  std::vector<double> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = s.y[idx[i]];
  std::vector<double> buf(n);
  const long long discordant = merge_count(seq, buf, 0, n);

  const long long n0 = static_cast<long long>(n) *
                       static_cast<long long>(n - 1) / 2;
  const long long concordant = n0 - n1 - n2 + n3 - discordant;
  const long long num = concordant - discordant;

  if (variant == KendallVariant::tau_a)
    return static_cast<double>(num) / static_cast<double>(n0);

  const double denom = std::sqrt(static_cast<double>(n0 - n1) *
                                 static_cast<double>(n0 - n2));
  return denom == 0.0 ? 0.0 : static_cast<double>(num) / denom;
}

double mutual_information(const std::vector<std::vector<double>>& joint) {
  if (joint.empty() || joint.front().empty())
    throw std::invalid_argument("mutual information: empty joint table");
  const std::size_t rows = joint.size();
  const std::size_t cols = joint.front().size();
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (joint[r].size() != cols)
      throw std::invalid_argument("mutual information: ragged joint table");
    for (std::size_t c = 0; c < cols; ++c) {
      const double p = joint[r][c];
      if (!(p >= 0.0))
        throw std::invalid_argument("mutual information: negative cell");
      row_sum[r] += p;
      col_sum[c] += p;
      total += p;
    }
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mutual information: cells do not sum to 1");
  double info = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double p = joint[r][c];
      if (p > 0.0) info += p * std::log2(p / (row_sum[r] * col_sum[c]));
    }
  return info;
}

Grid make_grid(const PairedSample& s, std::span<const double> x_cuts,
               std::span<const double> y_cuts) {
  validate(s, 1);
  for (auto cuts : {x_cuts, y_cuts})
    for (std::size_t i = 1; i < cuts.size(); ++i)
      if (!(cuts[i - 1] < cuts[i]))
        throw std::invalid_argument("grid cuts must be strictly increasing");

  Grid g;
  g.x_cuts.assign(x_cuts.begin(), x_cuts.end());
  g.y_cuts.assign(y_cuts.begin(), y_cuts.end());
  g.cell_counts.assign(g.a(), std::vector<long long>(g.b(), 0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto xb = static_cast<std::size_t>(
        std::lower_bound(g.x_cuts.begin(), g.x_cuts.end(), s.x[i]) -
        g.x_cuts.begin());
    const auto yb = static_cast<std::size_t>(
        std::lower_bound(g.y_cuts.begin(), g.y_cuts.end(), s.y[i]) -
        g.y_cuts.begin());
    ++g.cell_counts[xb][yb];
    ++g.total;
  }
  return g;
}

double grid_mutual_information(const Grid& g) {
  if (g.total == 0)
    throw std::invalid_argument("grid mutual information: empty grid");
  std::vector<std::vector<double>> joint(g.a(),
                                         std::vector<double>(g.b(), 0.0));
  for (std::size_t i = 0; i < g.a(); ++i)
    for (std::size_t j = 0; j < g.b(); ++j)
      joint[i][j] = static_cast<double>(g.cell_counts[i][j]) /
                    static_cast<double>(g.total);
  return mutual_information(joint);
}

}  // namespace revana
