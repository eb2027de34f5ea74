#include "gmeef/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gmeef/error.hpp"

namespace gmeef {
namespace {

// clang-format off
constexpr std::array<const char*, 10> kGlyphs = {
    "..####.."
    ".#....#."
    ".#...##."
    ".#..#.#."
    ".#.#..#."
    ".##...#."
    ".#....#."
    "..####..",

    "...##..."
    "..###..."
    ".#.##..."
    "...##..."
    "...##..."
    "...##..."
    "...##..."
    ".######.",

    ".#####.."
    "#.....#."
    "......#."
    ".....#.."
    "...##..."
    "..#....."
    ".#......"
    "#######.",

    ".#####.."
    "#.....#."
    "......#."
    "..####.."
    "......#."
    "......#."
    "#.....#."
    ".#####..",

    ".....#.."
    "....##.."
    "...#.#.."
    "..#..#.."
    ".#...#.."
    "#######."
    ".....#.."
    ".....#..",

    "#######."
    "#......."
    "#......."
    "######.."
    "......#."
    "......#."
    "#.....#."
    ".#####..",

    "..####.."
    ".#......"
    "#......."
    "######.."
    "#.....#."
    "#.....#."
    "#.....#."
    ".#####..",

    "#######."
    "......#."
    ".....#.."
    "....#..."
    "...#...."
    "...#...."
    "...#...."
    "...#....",

    ".#####.."
    "#.....#."
    "#.....#."
    ".#####.."
    "#.....#."
    "#.....#."
    "#.....#."
    ".#####..",

    ".#####.."
    "#.....#."
    "#.....#."
    "#.....#."
    ".######."
    "......#."
    ".....#.."
    ".####...",
};
// clang-format on

std::uint32_t read_be32(std::istream& in, const std::string& what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ConfigError(what + ": truncated IDX header");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
         std::uint32_t{b[3]};
}

std::size_t class_count(const std::vector<std::size_t>& labels) {
  std::size_t m = 0;
  for (std::size_t l : labels) m = std::max(m, l + 1);
  return m;
}

}  // namespace

std::vector<double> Dataset::one_hot() const {
  std::vector<double> t(size() * classes, 0.0);
  for (std::size_t i = 0; i < size(); ++i) t[i * classes + labels[i]] = 1.0;
  return t;
}

Dataset make_clusters(std::size_t n, std::size_t classes, std::size_t features, double spread,
                      std::uint64_t seed) {
  if (n == 0 || classes < 2 || features == 0 || !(spread > 0.0)) {
    throw ParameterError("clusters need n > 0, >= 2 classes, >= 1 feature and spread > 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  // Random unit-scale means, each pushed +3 along its own axis.
  std::vector<double> means(classes * features, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t f = 0; f < features; ++f) means[c * features + f] = z(rng);
    means[c * features + c % features] += 3.0;
  }
  Dataset d;
  d.features = features;
  d.classes = classes;
  d.x.resize(n * features);
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % classes;
    d.labels[i] = c;
    for (std::size_t f = 0; f < features; ++f) {
      d.x[i * features + f] = means[c * features + f] + spread * z(rng);
    }
  }
  return d;
}

Dataset make_glyph_digits(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("glyph dataset needs n > 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shift(-1, 1);
  std::uniform_int_distribution<std::size_t> digit(0, 9);
  std::bernoulli_distribution drop(0.1);
  std::normal_distribution<double> noise(0.0, 0.15);
  Dataset d;
  d.features = 64;
  d.classes = 10;
  d.x.resize(n * 64);
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = digit(rng);
    const int dr = shift(rng);
    const int dc = shift(rng);
    d.labels[i] = c;
    for (int r = 0; r < 8; ++r) {
      for (int col = 0; col < 8; ++col) {
        const int sr = r - dr;
        const int sc = col - dc;
        double v = 0.0;
        if (sr >= 0 && sr < 8 && sc >= 0 && sc < 8 && kGlyphs[c][sr * 8 + sc] == '#') {
          v = drop(rng) ? 0.0 : 1.0;
        }
        v += noise(rng);
        d.x[i * 64 + static_cast<std::size_t>(r * 8 + col)] = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return d;
}

Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t limit) {
  std::ifstream fi(images, std::ios::binary);
  std::ifstream fl(labels, std::ios::binary);
  if (!fi) throw ConfigError("cannot open IDX image file " + images.string());
  if (!fl) throw ConfigError("cannot open IDX label file " + labels.string());
  if (read_be32(fi, images.string()) != 0x00000803) {
    throw ConfigError(images.string() + ": not an IDX3 unsigned-byte file");
  }
  if (read_be32(fl, labels.string()) != 0x00000801) {
    throw ConfigError(labels.string() + ": not an IDX1 unsigned-byte file");
  }
  std::size_t n = read_be32(fi, images.string());
  const std::size_t rows = read_be32(fi, images.string());
  const std::size_t cols = read_be32(fi, images.string());
  if (read_be32(fl, labels.string()) != n) throw ConfigError("IDX image and label counts differ");
  if (limit) n = std::min(n, limit);

  Dataset d;
  d.features = rows * cols;
  d.x.resize(n * d.features);
  d.labels.resize(n);
  std::vector<unsigned char> buf(d.features);
  for (std::size_t i = 0; i < n; ++i) {
    if (!fi.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
      throw ConfigError(images.string() + ": truncated pixel data");
    }
    for (std::size_t f = 0; f < d.features; ++f) d.x[i * d.features + f] = buf[f] / 255.0;
    char l = 0;
    if (!fl.get(l)) throw ConfigError(labels.string() + ": truncated label data");
    d.labels[i] = static_cast<unsigned char>(l);
  }
  d.classes = class_count(d.labels);
  return d;
}

Dataset load_csv(const std::filesystem::path& path, std::size_t limit) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV dataset " + path.string());
  Dataset d;
  std::string line;
  std::size_t lineno = 0;
  double vmax = 0.0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": non-numeric value");
    }
    if (vals.size() < 2) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": too few columns");
    if (d.features == 0) d.features = vals.size() - 1;
    if (vals.size() - 1 != d.features) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": inconsistent column count");
    }
    if (vals[0] < 0 || vals[0] != std::floor(vals[0])) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": label must be a nonnegative integer");
    }
    d.labels.push_back(static_cast<std::size_t>(vals[0]));
    for (std::size_t f = 1; f < vals.size(); ++f) {
      d.x.push_back(vals[f]);
      vmax = std::max(vmax, vals[f]);
    }
    if (limit && d.labels.size() == limit) break;
  }
  if (d.labels.empty()) throw ConfigError(path.string() + ": no samples");
  if (vmax > 1.0) {
    for (double& v : d.x) v /= 255.0;
  }
  d.classes = class_count(d.labels);
  return d;
}

Dataset take(const Dataset& d, std::size_t first, std::size_t n) {
  if (first + n > d.size()) throw ParameterError("take: range exceeds the dataset");
  Dataset out;
  out.features = d.features;
  out.classes = d.classes;
  out.x.assign(d.x.begin() + static_cast<std::ptrdiff_t>(first * d.features),
               d.x.begin() + static_cast<std::ptrdiff_t>((first + n) * d.features));
  out.labels.assign(d.labels.begin() + static_cast<std::ptrdiff_t>(first),
                    d.labels.begin() + static_cast<std::ptrdiff_t>(first + n));
  return out;
}

}  // namespace gmeef
