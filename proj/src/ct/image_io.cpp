#include "scs/ct/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace scs::ct {

namespace {

constexpr double kMaxGray = 65535.0;

std::filesystem::path sidecar(const std::filesystem::path& path) {
  auto s = path;
  s += ".txt";
  return s;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.precision(17);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

// Next whitespace-separated header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok.front() != '#') return tok;
    std::string rest;
    std::getline(in, rest);
  }
  throw std::runtime_error("pgm: truncated header");
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const Image& image) {
  if (image.pixels.empty()) throw std::invalid_argument("write_pgm: empty image");
  const auto [lo_it, hi_it] = std::minmax_element(image.pixels.begin(), image.pixels.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double range = hi > lo ? hi - lo : 1.0;

  auto out = open_out(path, std::ios::out | std::ios::binary);
  out << "P5\n" << image.side << ' ' << image.side << "\n65535\n";
  for (double v : image.pixels) {
    const auto q = static_cast<std::uint16_t>(std::lround(std::clamp((v - lo) / range, 0.0, 1.0) * kMaxGray));
    const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
    out.write(bytes, 2);
  }
  if (!out) throw std::runtime_error("write_pgm: write failed for '" + path.string() + "'");

  auto meta = open_out(sidecar(path));
  meta << "min " << lo << "\nmax " << hi << '\n';
}

Image read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  if (pgm_token(in) != "P5") throw std::runtime_error("pgm: not a binary P5 file");
  const std::size_t width = std::stoul(pgm_token(in));
  const std::size_t height = std::stoul(pgm_token(in));
  const unsigned long maxval = std::stoul(pgm_token(in));
  if (width != height) throw std::runtime_error("pgm: only square images are supported");
  if (maxval != 65535) throw std::runtime_error("pgm: expected 16-bit maxval 65535");
  in.get();

  double lo = 0.0;
  double hi = 1.0;
  if (std::filesystem::exists(sidecar(path))) {
    auto meta = open_in(sidecar(path));
    std::string key;
    double value = 0.0;
    while (meta >> key >> value) {
      if (key == "min") lo = value;
      if (key == "max") hi = value;
    }
  }
  const double range = hi > lo ? hi - lo : 0.0;

  Image img(width);
  for (double& v : img.pixels) {
    unsigned char bytes[2];
    if (!in.read(reinterpret_cast<char*>(bytes), 2)) throw std::runtime_error("pgm: truncated pixel data");
    const double q = static_cast<double>((bytes[0] << 8) | bytes[1]);
    v = lo + range * q / kMaxGray;
  }
  return img;
}

void write_image_csv(const std::filesystem::path& path, const Image& image) {
  auto out = open_out(path);
  for (std::size_t r = 0; r < image.side; ++r) {
    for (std::size_t c = 0; c < image.side; ++c) {
      if (c > 0) out << ',';
      out << image(r, c);
    }
    out << '\n';
  }
}

Image read_image_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  Vector values;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    ++rows;
  }
  if (rows * rows != values.size()) throw std::runtime_error("image csv: not a square grid");
  return Image(rows, std::move(values));
}

void write_sinogram_csv(const std::filesystem::path& path, const Sinogram& sinogram) {
  auto out = open_out(path);
  out << "view,det,value\n";
  for (std::size_t v = 0; v < sinogram.n_views; ++v) {
    for (std::size_t j = 0; j < sinogram.n_det; ++j) {
      out << v << ',' << j << ',' << sinogram.values[v * sinogram.n_det + j] << '\n';
    }
  }
}

Sinogram read_sinogram_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "view,det,value") {
    throw std::runtime_error("sinogram csv: expected header 'view,det,value'");
  }
  struct Row {
    std::size_t view, det;
    double value;
  };
  std::vector<Row> rows;
  std::size_t n_views = 0;
  std::size_t n_det = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
      throw std::runtime_error("sinogram csv: malformed row '" + line + "'");
    }
    Row row{std::stoul(a), std::stoul(b), std::stod(c)};
    n_views = std::max(n_views, row.view + 1);
    n_det = std::max(n_det, row.det + 1);
    rows.push_back(row);
  }
  if (rows.size() != n_views * n_det) throw std::runtime_error("sinogram csv: incomplete grid");
  Sinogram s{n_views, n_det, Vector(n_views * n_det, 0.0)};
  for (const Row& row : rows) s.values[row.view * n_det + row.det] = row.value;
  return s;
}

}  // namespace scs::ct
