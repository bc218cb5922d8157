#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vpd/diagram.hpp"
#include "vpd/metric_pair.hpp"

namespace vpd {

inline constexpr std::size_t kMaxImageSide = 128;

/// Row-major grayscale image; pixel values are the sublevel filtration.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  GrayImage() = default;
  /// Throws ShapeMismatch (ragged rows), TooLarge (> 128 per side) or
  /// InvalidArgument (empty, non-finite values).
  static GrayImage from_rows(const std::vector<std::vector<double>>& rows);

  double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
  double max_value() const;
};

/// CSV (comma or whitespace separated) or PGM (P2/P5, chosen by a .pgm
/// suffix). PGM values are taken as-is, not rescaled. Throws ParseError.
GrayImage read_image(const std::string& path);

struct PersistencePoint {
  double birth;
  double death;  // +infinity for the essential class
  int dim;

  bool essential() const noexcept;
  friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
};

struct RawDiagram {
  std::vector<PersistencePoint> points;

  std::vector<PersistencePoint> of_dim(int dim) const;
};

/// Sublevel persistence of the V-construction cubical complex: pixels are
/// vertices, edges and squares take the max of their pixels. Cells are
/// ordered by (value, dimension, index) and the boundary matrix is reduced
/// over GF(2). Zero-persistence pairs are dropped; H0 has one essential class.
RawDiagram cubical_diagrams(const GrayImage& img);

/// Finite ground set for diagrams. The square [lo, hi]^2 in (birth, death)
/// coordinates is cut into cells of side h = (hi - lo) / cells; the centers
/// of cells strictly above the diagonal are the representatives of X \ A.
/// Each homology dimension gets its own copy of the representatives, with
/// H1 translated along the diagonal by `h1_offset` = 2 (hi - lo). The ground
/// metric is l_inf and A is the set of diagonal projections of the
/// representatives, so d(x, A) = (death - birth) / 2; the offset makes every
/// cross-dimension pair at least as far apart as both of their routes to A.
class GroundGrid {
 public:
  struct Rep {
    double birth;  // unshifted coordinates
    double death;
    int dim;
  };

  static GroundGrid build(double lo, double hi, std::size_t cells);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t cells() const noexcept { return cells_; }
  double cell_size() const noexcept { return (hi_ - lo_) / static_cast<double>(cells_); }
  double h1_offset() const noexcept { return 2.0 * (hi_ - lo_); }

  /// Graph vertex order: H0 representatives then H1 representatives.
  const std::vector<Rep>& representatives() const noexcept { return reps_; }
  const MetricPair& pair() const noexcept { return pair_; }
  const QuotientGraph& graph() const noexcept { return graph_; }

  /// Vertex of the cell containing (birth, death), or nullopt for a diagonal
  /// cell. Throws PointOutsideGrid.
  std::optional<std::size_t> vertex_of(double birth, double death, int dim) const;

 private:
  GroundGrid(double lo, double hi, std::size_t cells, std::vector<Rep> reps, MetricPair pair);

  double lo_, hi_;
  std::size_t cells_;
  std::vector<Rep> reps_;
  MetricPair pair_;
  QuotientGraph graph_;
};

struct QuantizedDiagram {
  Diagram diagram;
  double max_displacement = 0.0;     // l_inf distance moved by any point
  std::size_t snapped_to_diagonal = 0;
  double death_cap = 0.0;
};

/// Snaps each point to its cell representative, or to the diagonal for
/// points in diagonal cells; either way the l_inf move is at most h/2.
/// Essential deaths are replaced by `finite_death_cap` first; points left
/// with birth >= death vanish. Throws PointOutsideGrid.
QuantizedDiagram quantize_to_ground(const RawDiagram& rd, const GroundGrid& gg,
                                    double finite_death_cap);

}  // namespace vpd
