#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cavspec/closed_form.hpp"
#include "cavspec/errors.hpp"
#include "cavspec/geometry.hpp"

namespace cavspec {

inline constexpr std::size_t kDefaultDofCap = 2'000'000;

enum class RegionTag : std::uint8_t { big_square, channel, small_square, other };

/// Conforming P1 triangulation of a rectilinear polygon, built from a tensor
/// grid aligned to every vertex coordinate of the polygon.  All triangles are
/// positively oriented; boundary_flags marks exactly the polygon-boundary
/// vertices.
struct TriMesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::uint8_t> boundary_flags;  // per vertex
  std::vector<RegionTag> region_tags;        // per triangle
  std::vector<double> grid_x;                // tensor lines the mesh was built on
  std::vector<double> grid_y;
  double mesh_size = 0.0;  // max element diameter

  int dof_count() const { return static_cast<int>(vertices.size()); }
};

/// Structured graded mesh: cell size <= target_h everywhere and
/// <= channel.height/channel_min_layers inside the channel rectangle, growing
/// geometrically (neighbor ratio <= 2) away from it.  Grid lines pass through
/// every x and y coordinate of the polygon's vertices, so rectilinear edges
/// (and the dumbbell's trial-function breakpoints) lie exactly on mesh lines.
/// Throws DofBudgetError if the tensor grid would exceed dof_cap vertices.
TriMesh mesh_rectilinear(const RectilinearPolygon& poly, double target_h,
                         int channel_min_layers = 2, const Rect* channel = nullptr,
                         std::size_t dof_cap = kDefaultDofCap);

struct SparseSymMatrix {
  Eigen::SparseMatrix<double> mat;

  int dimension() const { return static_cast<int>(mat.rows()); }
};

struct AssembledOperators {
  SparseSymMatrix stiffness;  // positive semidefinite, constants in the kernel
  SparseSymMatrix mass;       // positive definite, entries sum to the area
};

/// Standard P1 stiffness and consistent mass matrices.  Throws on a
/// degenerate (zero-area) triangle, naming its index.
AssembledOperators assemble(const TriMesh& mesh);

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ||K v - lambda M v|| with ||v||_M = 1
  Eigen::MatrixXd vectors;          // one column per pair, full vertex numbering
  double mesh_size = 0.0;
  int dof_count = 0;
  int iterations = 0;
};

/// Smallest Dirichlet eigenvalue: the generalized problem restricted to
/// interior vertices, solved by shift-invert subspace iteration at shift 0
/// with a sparse factorization.  Residual < 1e-10.
EigenResult dirichlet_eig1(const TriMesh& mesh);

/// Two smallest nonzero Neumann eigenvalues of the unconstrained problem with
/// the constant mode deflated by mass-orthogonal projection (never by
/// magnitude, so a near-zero dumbbell eigenvalue is kept).  The first entry is
/// mu_1^N.
EigenResult neumann_eig1(const TriMesh& mesh);

struct RichardsonResult {
  Eigenvalue value;
  /// log2((coarse - extrap)/(fine - extrap)); identically 2 for the
  /// quadratic-order extrapolant, NaN for identical inputs.
  double observed_order = 0.0;
};

/// Quadratic-order extrapolant (4*fine - coarse)/3 of the first eigenvalue of
/// a nested mesh pair (fine mesh size = half the coarse one).
RichardsonResult richardson_extrapolate(const EigenResult& coarse, const EigenResult& fine);

/// Legacy VTK ASCII dump: points, triangle cells, per-vertex boundary flag.
void write_vtk(const TriMesh& mesh, std::ostream& out);

}  // namespace cavspec
