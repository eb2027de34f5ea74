#pragma once

// Labeled feature sets for the classifier: synthetic generators plus loaders
// for IDX digit files and a plain CSV fallback.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gmeef {

struct Dataset {
  std::size_t features = 0;
  std::size_t classes = 0;
  std::vector<double> x;        // size() x features, row-major
  std::vector<std::size_t> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span(x).subspan(i * features, features);
  }
  /// One-hot targets, size() x classes.
  std::vector<double> one_hot() const;
};

/// Two (or more) Gaussian blobs with well separated means in `features`
/// dimensions; linearly separable for the default spread.
Dataset make_clusters(std::size_t n, std::size_t classes, std::size_t features, double spread,
                      std::uint64_t seed);

/// 8x8 glyphs of the digits 0-9 with random one-pixel shifts, stroke
/// dropout and additive pixel noise; features in [0, 1].
Dataset make_glyph_digits(std::size_t n, std::uint64_t seed);

/// IDX3 image file + IDX1 label file (big-endian headers). Pixels are
/// scaled to [0, 1]. At most `limit` samples are read (0 = all). Throws
/// ConfigError on malformed files.
Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t limit = 0);

/// Rows "label,v1,...,vF"; an optional non-numeric header row is skipped.
/// Values above 1 trigger scaling by 1/255.
Dataset load_csv(const std::filesystem::path& path, std::size_t limit = 0);

/// First `n` samples as a separate set.
Dataset take(const Dataset& d, std::size_t first, std::size_t n);

}  // namespace gmeef
