#include "vpd/cubical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "vpd/error.hpp"

namespace vpd {

GrayImage GrayImage::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("image is empty");
  GrayImage img;
  img.height = rows.size();
  img.width = rows.front().size();
  if (img.height > kMaxImageSide || img.width > kMaxImageSide) {
    throw TooLarge("image is " + std::to_string(img.height) + "x" + std::to_string(img.width) +
                   ", limit is 128x128");
  }
  img.pixels.reserve(img.width * img.height);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != img.width) {
      throw ShapeMismatch("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                          " values, expected " + std::to_string(img.width));
    }
    for (double v : rows[r]) {
      if (!std::isfinite(v)) throw InvalidArgument("pixel value is not finite");
      img.pixels.push_back(v);
    }
  }
  return img;
}

double GrayImage::max_value() const {
  return *std::max_element(pixels.begin(), pixels.end());
}

namespace {

GrayImage read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("bad pixel value '" + tok + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return GrayImage::from_rows(rows);
}

// Next header token of a PGM, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok.front() != '#') return tok;
    std::string rest;
    std::getline(in, rest);
  }
  throw ParseError("truncated PGM header");
}

GrayImage read_pgm(std::istream& in) {
  const std::string magic = pgm_token(in);
  if (magic != "P2" && magic != "P5") throw ParseError("not a PGM file (magic " + magic + ")");
  std::size_t w = 0, h = 0;
  long maxval = 0;
  try {
    w = std::stoul(pgm_token(in));
    h = std::stoul(pgm_token(in));
    maxval = std::stol(pgm_token(in));
  } catch (const std::logic_error&) {
    throw ParseError("bad PGM header");
  }
  if (maxval <= 0 || maxval > 65535) throw ParseError("bad PGM maxval");
  std::vector<std::vector<double>> rows(h, std::vector<double>(w));
  if (magic == "P2") {
    for (auto& row : rows)
      for (auto& v : row)
        if (!(in >> v)) throw ParseError("truncated PGM data");
  } else {
    in.get();  // single whitespace after maxval
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    for (auto& row : rows) {
      for (auto& v : row) {
        unsigned char b[2] = {0, 0};
        if (!in.read(reinterpret_cast<char*>(b), static_cast<std::streamsize>(bytes))) {
          throw ParseError("truncated PGM data");
        }
        v = bytes == 1 ? b[0] : (b[0] << 8 | b[1]);
      }
    }
  }
  return GrayImage::from_rows(rows);
}

}  // namespace

GrayImage read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open image '" + path + "'");
  const bool pgm = path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0;
  return pgm ? read_pgm(in) : read_csv(in);
}

bool PersistencePoint::essential() const noexcept { return std::isinf(death); }

std::vector<PersistencePoint> RawDiagram::of_dim(int dim) const {
  std::vector<PersistencePoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [dim](const PersistencePoint& p) { return p.dim == dim; });
  return out;
}

namespace {

struct Cell {
  double value;
  int dim;
  std::uint32_t index;  // within-dimension index
  std::vector<std::uint32_t> faces;  // global ids before sorting
};

// Cells of the V-construction in global id order: vertices, horizontal edges,
// vertical edges, squares.
std::vector<Cell> build_complex(const GrayImage& img) {
  const std::size_t W = img.width, H = img.height;
  auto vid = [W](std::size_t r, std::size_t c) { return static_cast<std::uint32_t>(r * W + c); };
  const std::size_t n_vert = W * H;
  const std::size_t n_h = H * (W - 1);
  const std::size_t n_v = (H - 1) * W;
  auto hid = [&](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(n_vert + r * (W - 1) + c);
  };
  auto vert_edge = [&](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(n_vert + n_h + r * W + c);
  };

  std::vector<Cell> cells;
  cells.reserve(n_vert + n_h + n_v + (H - 1) * (W - 1));
  std::uint32_t k = 0;
  for (std::size_t r = 0; r < H; ++r)
    for (std::size_t c = 0; c < W; ++c) cells.push_back({img.at(r, c), 0, k++, {}});
  k = 0;
  for (std::size_t r = 0; r < H; ++r)
    for (std::size_t c = 0; c + 1 < W; ++c)
      cells.push_back({std::max(img.at(r, c), img.at(r, c + 1)), 1, k++, {vid(r, c), vid(r, c + 1)}});
  for (std::size_t r = 0; r + 1 < H; ++r)
    for (std::size_t c = 0; c < W; ++c)
      cells.push_back({std::max(img.at(r, c), img.at(r + 1, c)), 1, k++, {vid(r, c), vid(r + 1, c)}});
  k = 0;
  for (std::size_t r = 0; r + 1 < H; ++r) {
    for (std::size_t c = 0; c + 1 < W; ++c) {
      const double v = std::max({img.at(r, c), img.at(r, c + 1), img.at(r + 1, c), img.at(r + 1, c + 1)});
      cells.push_back({v, 2, k++, {hid(r, c), hid(r + 1, c), vert_edge(r, c), vert_edge(r, c + 1)}});
    }
  }
  return cells;
}

}  // namespace

RawDiagram cubical_diagrams(const GrayImage& img) {
  if (img.width == 0 || img.height == 0) throw InvalidArgument("image is empty");
  const auto cells = build_complex(img);
  const std::size_t n = cells.size();

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Cell& x = cells[a];
    const Cell& y = cells[b];
    if (x.value != y.value) return x.value < y.value;
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.index < y.index;
  });
  std::vector<std::uint32_t> pos(n);
  for (std::uint32_t i = 0; i < n; ++i) pos[order[i]] = i;

  // Columns in filtration order; each is a sorted list of row positions.
  std::vector<std::vector<std::uint32_t>> cols(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& col = cols[i];
    for (std::uint32_t f : cells[order[i]].faces) col.push_back(pos[f]);
    std::sort(col.begin(), col.end());
  }

  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> pivot_owner(n, kNone);
  std::vector<bool> paired(n, false);
  std::vector<std::uint32_t> scratch;
  RawDiagram out;
  for (std::uint32_t j = 0; j < n; ++j) {
    auto& col = cols[j];
    while (!col.empty() && pivot_owner[col.back()] != kNone) {
      const auto& other = cols[pivot_owner[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (col.empty()) continue;
    const std::uint32_t low = col.back();
    pivot_owner[low] = j;
    paired[low] = paired[j] = true;
    const Cell& born = cells[order[low]];
    const Cell& dies = cells[order[j]];
    if (born.value < dies.value) out.points.push_back({born.value, dies.value, born.dim});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const Cell& c = cells[order[i]];
    if (!paired[i] && c.dim < 2) {
      out.points.push_back({c.value, std::numeric_limits<double>::infinity(), c.dim});
    }
  }
  return out;
}

GroundGrid::GroundGrid(double lo, double hi, std::size_t cells, std::vector<Rep> reps,
                       MetricPair pair)
    : lo_(lo), hi_(hi), cells_(cells), reps_(std::move(reps)), pair_(std::move(pair)),
      graph_(QuotientGraph::from_pair(pair_)) {}

GroundGrid GroundGrid::build(double lo, double hi, std::size_t cells) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw InvalidArgument("ground grid needs finite lo < hi");
  }
  if (cells < 2) throw InvalidArgument("ground grid needs at least 2 cells per axis");
  const double h = (hi - lo) / static_cast<double>(cells);
  const double offset = 2.0 * (hi - lo);

  std::vector<Rep> reps;
  for (int dim = 0; dim < 2; ++dim)
    for (std::size_t i = 0; i < cells; ++i)
      for (std::size_t j = i + 1; j < cells; ++j)
        reps.push_back({lo + (static_cast<double>(i) + 0.5) * h,
                        lo + (static_cast<double>(j) + 0.5) * h, dim});

  // Plane points: shifted representatives, then their distinct diagonal projections.
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : reps) {
    const double s = r.dim == 0 ? 0.0 : offset;
    pts.emplace_back(r.birth + s, r.death + s);
  }
  std::vector<double> diag;
  for (const auto& [b, d] : pts) diag.push_back(0.5 * (b + d));
  std::sort(diag.begin(), diag.end());
  diag.erase(std::unique(diag.begin(), diag.end()), diag.end());
  std::vector<std::size_t> subset_a;
  for (double c : diag) {
    subset_a.push_back(pts.size());
    pts.emplace_back(c, c);
  }

  DistanceMatrix dist(pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b)
      dist(a, b) = std::max(std::abs(pts[a].first - pts[b].first),
                            std::abs(pts[a].second - pts[b].second));
  return GroundGrid(lo, hi, cells, std::move(reps),
                    MetricPair::build(std::move(dist), std::move(subset_a)));
}

std::optional<std::size_t> GroundGrid::vertex_of(double birth, double death, int dim) const {
  if (dim != 0 && dim != 1) throw InvalidArgument("only H0 and H1 are supported");
  const double slack = 1e-12 * (hi_ - lo_);
  if (!(birth >= lo_ - slack && death <= hi_ + slack && birth <= death)) {
    throw PointOutsideGrid("point (" + std::to_string(birth) + ", " + std::to_string(death) +
                           ") lies outside [" + std::to_string(lo_) + ", " +
                           std::to_string(hi_) + "]^2");
  }
  const double h = cell_size();
  auto index = [&](double x) {
    const double k = std::floor((x - lo_) / h);
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(cells_ - 1)));
  };
  const std::size_t i = index(birth), j = index(death);
  if (j <= i) return std::nullopt;
  // Row-major enumeration of {(i, j) : i < j} as in build().
  const std::size_t per_dim = cells_ * (cells_ - 1) / 2;
  const std::size_t before_row = i * cells_ - i * (i + 1) / 2;
  return static_cast<std::size_t>(dim) * per_dim + before_row + (j - i - 1);
}

QuantizedDiagram quantize_to_ground(const RawDiagram& rd, const GroundGrid& gg,
                                    double finite_death_cap) {
  if (!std::isfinite(finite_death_cap)) throw InvalidArgument("death cap must be finite");
  QuantizedDiagram out;
  out.death_cap = finite_death_cap;
  out.diagram = Diagram(gg.graph().n_offdiag());
  for (const auto& p : rd.points) {
    const double death = p.essential() ? finite_death_cap : p.death;
    if (!(p.birth < death)) continue;
    const auto v = gg.vertex_of(p.birth, death, p.dim);
    if (!v) {
      ++out.snapped_to_diagonal;
      out.max_displacement = std::max(out.max_displacement, 0.5 * (death - p.birth));
      continue;
    }
    const auto& rep = gg.representatives()[*v];
    out.max_displacement = std::max(
        out.max_displacement, std::max(std::abs(p.birth - rep.birth), std::abs(death - rep.death)));
    ++out.diagram.counts[*v];
  }
  return out;
}

}  // namespace vpd
