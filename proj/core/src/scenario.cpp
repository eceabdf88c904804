#include "paf/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace paf {
namespace {

constexpr Index kLineSpacing = 4;
constexpr Index kCheckerBlock = 4;

// Picks up to `count` positions in [lo, hi] at pairwise distance >= spacing.
std::vector<Index> spaced_positions(Index lo, Index hi, Index count, std::mt19937_64& rng) {
  std::vector<Index> candidates;
  for (Index x = lo; x <= hi; ++x) candidates.push_back(x);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<Index> chosen;
  for (Index x : candidates) {
    if (static_cast<Index>(chosen.size()) == count) break;
    const bool far = std::all_of(chosen.begin(), chosen.end(),
                                 [x](Index y) { return std::abs(x - y) >= kLineSpacing; });
    if (far) chosen.push_back(x);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

LabelField lines_image(Index height, Index width, std::mt19937_64& rng) {
  std::vector<ClassId> labels(static_cast<std::size_t>(height * width), 0);
  const auto rows = spaced_positions(std::min<Index>(1, height - 1), std::max<Index>(0, height - 2),
                                     std::max<Index>(1, height / 8), rng);
  const auto cols = spaced_positions(std::min<Index>(1, width - 1), std::max<Index>(0, width - 2),
                                     std::max<Index>(1, width / 8), rng);
  for (Index r : rows) {
    for (Index c = 0; c < width; ++c) labels[static_cast<std::size_t>(r * width + c)] = 1;
  }
  for (Index c : cols) {
    for (Index r = 0; r < height; ++r) labels[static_cast<std::size_t>(r * width + c)] = 1;
  }
  return LabelField(height, width, std::move(labels), 2);
}

LabelField checkerboard_image(Index height, Index width) {
  std::vector<ClassId> labels;
  labels.reserve(static_cast<std::size_t>(height * width));
  for (Index r = 0; r < height; ++r) {
    for (Index c = 0; c < width; ++c) labels.push_back(static_cast<ClassId>((r / kCheckerBlock + c / kCheckerBlock) % 2));
  }
  return LabelField(height, width, std::move(labels), 2);
}

LabelField blobs_image(Index height, Index width, std::mt19937_64& rng) {
  std::vector<ClassId> labels(static_cast<std::size_t>(height * width), 0);
  const Index count = std::max<Index>(1, height * width / 64);
  std::uniform_int_distribution<Index> row(0, height - 1);
  std::uniform_int_distribution<Index> col(0, width - 1);
  std::uniform_int_distribution<Index> radius(2, 4);
  for (Index b = 0; b < count; ++b) {
    const Index cr = row(rng);
    const Index cc = col(rng);
    const Index rad = radius(rng);
    for (Index r = 0; r < height; ++r) {
      for (Index c = 0; c < width; ++c) {
        if ((r - cr) * (r - cr) + (c - cc) * (c - cc) <= rad * rad) {
          labels[static_cast<std::size_t>(r * width + c)] = 1;
        }
      }
    }
  }
  return LabelField(height, width, std::move(labels), 2);
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"lines5x5-like", "checkerboard", "two-class-blobs"};
  return names;
}

PatchDictionary line_dictionary() {
  constexpr Index k = 3;
  std::vector<PatchTemplate> templates;
  const auto make = [&](int line_row, int line_col) {
    std::vector<ClassId> cells(k * k, 0);
    for (Index r = 0; r < k; ++r) {
      for (Index c = 0; c < k; ++c) {
        if (r == line_row || c == line_col) cells[static_cast<std::size_t>(r * k + c)] = 1;
      }
    }
    templates.emplace_back(k, std::move(cells));
  };
  make(-1, -1);
  for (int r = 0; r < k; ++r) make(r, -1);
  for (int c = 0; c < k; ++c) make(-1, c);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) make(r, c);
  }
  return PatchDictionary(std::move(templates), 2, {"background", "foreground"});
}

PatchDictionary window_dictionary(const LabelField& labels, Index side) {
  if (side < 1 || side % 2 == 0) throw std::invalid_argument("window side must be odd and >= 1");
  std::vector<PatchTemplate> templates;
  const auto add = [&templates](PatchTemplate t) {
    if (std::find(templates.begin(), templates.end(), t) == templates.end()) templates.push_back(std::move(t));
  };
  for (Index r = 0; r + side <= labels.height(); ++r) {
    for (Index c = 0; c + side <= labels.width(); ++c) {
      std::vector<ClassId> cells;
      for (Index dr = 0; dr < side; ++dr) {
        for (Index dc = 0; dc < side; ++dc) cells.push_back(labels.at(r + dr, c + dc));
      }
      add(PatchTemplate(side, std::move(cells)));
    }
  }
  for (Index cls = 0; cls < labels.class_count(); ++cls) {
    add(PatchTemplate(side, std::vector<ClassId>(static_cast<std::size_t>(side * side), static_cast<ClassId>(cls))));
  }
  return PatchDictionary(std::move(templates), labels.class_count());
}

LabelField add_label_noise(const LabelField& labels, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("noise rate must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(rate);
  const Index c = labels.class_count();
  std::vector<ClassId> noisy(labels.labels().begin(), labels.labels().end());
  for (ClassId& label : noisy) {
    if (!flip(rng) || c < 2) continue;
    if (c == 2) {
      label = 1 - label;
    } else {
      std::uniform_int_distribution<Index> other(0, c - 2);
      const auto pick = static_cast<ClassId>(other(rng));
      label = pick >= label ? pick + 1 : pick;
    }
  }
  return LabelField(labels.height(), labels.width(), std::move(noisy), c);
}

Scenario gen_scenario(std::string_view name, Index height, Index width, double noise_rate,
                      std::uint64_t seed) {
  if (height < 1 || width < 1) throw std::invalid_argument("scenario size must be >= 1");
  if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) throw std::invalid_argument("noise rate must lie in [0, 1]");
  std::mt19937_64 layout(seed);
  const std::uint64_t noise_seed = seed ^ 0x9e3779b97f4a7c15ULL;
  if (name == "lines5x5-like") {
    LabelField clean = lines_image(height, width, layout);
    LabelField noisy = add_label_noise(clean, noise_rate, noise_seed);
    return {std::string(name), line_dictionary(), std::move(clean), std::move(noisy)};
  }
  if (name == "checkerboard" || name == "two-class-blobs") {
    LabelField clean = name == "checkerboard" ? checkerboard_image(height, width) : blobs_image(height, width, layout);
    PatchDictionary dictionary = window_dictionary(clean, 3);
    LabelField noisy = add_label_noise(clean, noise_rate, noise_seed);
    return {std::string(name), std::move(dictionary), std::move(clean), std::move(noisy)};
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace paf
