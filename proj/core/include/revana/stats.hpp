#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace revana {

struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
};

// Throws std::invalid_argument unless x and y have equal length >= min_n and
// every entry is finite.
void validate(const PairedSample& s, std::size_t min_n = 2);

// Throws ConstantInputError if either side has zero variance.
double pearson(const PairedSample& s);

// Fractional ranks, 1-based; ties share the average of the ranks they cover.
std::vector<double> ranks(std::span<const double> v);

// Pearson correlation of the rank vectors.
double spearman(const PairedSample& s);

enum class KendallVariant { tau_a, tau_b };

// tau_a = (concordant - discordant) / (n choose 2); tied pairs count toward
// neither. tau_b rescales by the tie-corrected denominator. Both run in
// O(n log n) via merge-sort inversion counting. An all-tied input gives 0.
double kendall(const PairedSample& s,
               KendallVariant variant = KendallVariant::tau_a);

// Mutual information in bits of a discrete joint distribution given as a
// matrix of cell probabilities. Rows must be equal length; entries
// nonnegative and summing to 1 within 1e-9.
double mutual_information(const std::vector<std::vector<double>>& joint);

// Axis-aligned grid over a paired sample. Cut positions partition an axis
// into cuts.size() + 1 bins; a point falls in the first bin whose cut is >=
// its coordinate.
struct Grid {
  std::vector<double> x_cuts;  // strictly increasing
  std::vector<double> y_cuts;
  std::vector<std::vector<long long>> cell_counts;  // [x bin][y bin]
  long long total = 0;

  std::size_t a() const { return x_cuts.size() + 1; }
  std::size_t b() const { return y_cuts.size() + 1; }
};

Grid make_grid(const PairedSample& s, std::span<const double> x_cuts,
               std::span<const double> y_cuts);

// Mutual information in bits of the grid's empirical cell distribution.
double grid_mutual_information(const Grid& g);

}  // namespace revana
