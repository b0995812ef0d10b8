#include "cavspec/fem2d.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavspec {

namespace {

constexpr std::uint64_t kSolverSeed = 987654321;  // fixed: runs are reproducible
constexpr double kResidualTarget = 1e-10;
constexpr int kMaxIterations = 800;
constexpr int kBlockSize = 4;

// ---------------------------------------------------------------------------
// Graded 1D node placement.  The mesh size along an axis follows the
// 1-Lipschitz field s(t) = min(target, band_size + dist(t, band)), which is
// band_size inside the refined band (the channel) and relaxes with slope one
// until it caps at the global target.  Nodes equidistribute the integral of
// 1/s, which realizes the field up to rounding and bounds the ratio of
// adjacent cell sizes by 2.
// ---------------------------------------------------------------------------

struct SizeField {
  double cap = 0.0;
  bool has_band = false;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double band_size = 0.0;

  double eval(double t) const {
    if (!has_band) return cap;
    double d = 0.0;
    if (t < band_lo) {
      d = band_lo - t;
    } else if (t > band_hi) {
      d = t - band_hi;
    }
    return std::min(cap, band_size + d);
  }
};

// Points in (a, b) where the field changes slope; s is linear between them.
std::vector<double> slope_cuts(const SizeField& f, double a, double b) {
  std::vector<double> cuts{a};
  if (f.has_band) {
    const double reach = f.cap - f.band_size;
    for (double c : {f.band_lo - reach, f.band_lo, f.band_hi, f.band_hi + reach}) {
      if (c > a && c < b) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(b);
  return cuts;
}

// Integral of 1/s over one linear piece of length len starting at value s0;
// the slope is 0 or exactly +-1 by construction of the field.
double piece_inv_integral(double s0, double s1, double len) {
  if (std::abs(s1 - s0) <= 1e-12 * len) return len / s0;
  const double slope = s1 > s0 ? 1.0 : -1.0;
  return std::log(s1 / s0) / slope;
}

double inv_integral(const SizeField& f, double a, double b) {
  const auto cuts = slope_cuts(f, a, b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += piece_inv_integral(f.eval(cuts[i]), f.eval(cuts[i + 1]), cuts[i + 1] - cuts[i]);
  }
  return total;
}

// The point t in [a, b] with integral of 1/s over [a, t] equal to target.
double invert_integral(const SizeField& f, double a, double b, double target) {
  const auto cuts = slope_cuts(f, a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i];
    const double v = cuts[i + 1];
    const double su = f.eval(u);
    const double sv = f.eval(v);
    const double piece = piece_inv_integral(su, sv, v - u);
    if (acc + piece >= target) {
      const double rem = target - acc;
      if (std::abs(sv - su) <= 1e-12 * (v - u)) return u + rem * su;
      const double slope = sv > su ? 1.0 : -1.0;
      return u + su * (std::exp(slope * rem) - 1.0) / slope;
    }
    acc += piece;
  }
  return b;
}

// The 1e-9 slack in cell counts keeps them stable against last-ulp noise in
// the integral when it lands exactly on an integer.
double cells_for_total(double total) { return std::max(1.0, std::ceil(total - 1e-9)); }

// Node count the axis would get, computed before any node is materialized so
// the dof budget can be enforced without allocating.
double axis_node_estimate(const std::vector<double>& breaks, const SizeField& f) {
  double cells = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    cells += cells_for_total(inv_integral(f, breaks[k], breaks[k + 1]));
  }
  return cells + 1.0;
}

// One axis of the tensor grid: every breakpoint becomes a node, and each
// breakpoint interval is subdivided by equidistributing 1/s.
std::vector<double> axis_nodes(const std::vector<double>& breaks, const SizeField& f) {
  std::vector<double> nodes{breaks.front()};
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    const double total = inv_integral(f, a, b);
    const int n = static_cast<int>(cells_for_total(total));
    for (int j = 1; j < n; ++j) {
      nodes.push_back(invert_integral(f, a, b, total * j / n));
    }
    nodes.push_back(b);
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i + 1] > nodes[i])) {
      throw NumericalError("axis meshing produced a non-increasing node sequence");
    }
  }
  return nodes;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Even-odd crossing test; cell centers never lie on the rectilinear edges
// because every edge coordinate is a grid line.
bool point_in_polygon(const std::vector<Point2>& v, double x, double y) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > y) != (v[j].y > y)) {
      const double x_cross =
          v[j].x + (v[i].x - v[j].x) * (y - v[j].y) / (v[i].y - v[j].y);
      if (x < x_cross) inside = !inside;
    }
  }
  return inside;
}

// ---------------------------------------------------------------------------
// Generalized symmetric eigensolver: shift-invert subspace iteration with
// Rayleigh-Ritz, deterministic start, optional deflation of the constant
// mode in the M inner product.
// ---------------------------------------------------------------------------

using SpMat = Eigen::SparseMatrix<double>;

void deflate_columns(Eigen::MatrixXd& x, const Eigen::VectorXd& weights, double total) {
  for (int j = 0; j < x.cols(); ++j) {
    x.col(j).array() -= weights.dot(x.col(j)) / total;
  }
}

void m_orthonormalize(Eigen::MatrixXd& x, const SpMat& m) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < x.cols(); ++j) {
      const Eigen::VectorXd mj = m * x.col(j);
      for (int i = 0; i < j; ++i) {
        x.col(j) -= x.col(i).dot(mj) * x.col(i);
      }
      const double norm = std::sqrt(x.col(j).dot(m * x.col(j)));
      if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw NumericalError("subspace orthonormalization collapsed");
      }
      x.col(j) /= norm;
    }
  }
}

struct SolveSpec {
  const SpMat& stiffness;   // the operator whose eigenvalues are reported
  const SpMat& factorized;  // SPD matrix handed to the factorization
  const SpMat& mass;
  bool deflate_constants = false;
  int requested = 1;
  // Dof pinned by ground_dof, or -1.  The right-hand side must vanish there:
  // the grounded system is decoupled at that dof, so a nonzero entry would
  // inject a spike no later deflation can remove.
  int grounded = -1;
};

struct SubspaceResult {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd vectors;
  int iterations = 0;
};

SubspaceResult subspace_smallest(const SolveSpec& spec) {
  const int n = static_cast<int>(spec.stiffness.rows());
  const int free_dim = n - (spec.deflate_constants ? 1 : 0);
  const int block = std::min(kBlockSize, free_dim);
  const int requested = std::min(spec.requested, block);
  if (requested < spec.requested) {
    throw NumericalError("mesh too small for the requested number of eigenpairs");
  }

  Eigen::SimplicialLDLT<SpMat> factorization;
  factorization.compute(spec.factorized);
  if (factorization.info() != Eigen::Success) {
    throw NumericalError("sparse factorization of the stiffness matrix failed");
  }

  Eigen::VectorXd mass_weights;
  double mass_total = 0.0;
  if (spec.deflate_constants) {
    mass_weights = spec.mass * Eigen::VectorXd::Ones(n);
    mass_total = mass_weights.sum();
  }

  std::mt19937_64 rng(kSolverSeed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd x(n, block);
  for (int j = 0; j < block; ++j) {
    for (int i = 0; i < n; ++i) x(i, j) = dist(rng);
  }
  if (spec.deflate_constants) deflate_columns(x, mass_weights, mass_total);
  m_orthonormalize(x, spec.mass);

  Eigen::VectorXd theta(block);
  Eigen::VectorXd residuals(block);
  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    Eigen::MatrixXd rhs = spec.mass * x;
    if (spec.grounded >= 0) rhs.row(spec.grounded).setZero();
    Eigen::MatrixXd y = factorization.solve(rhs);
    if (factorization.info() != Eigen::Success) {
      throw NumericalError("sparse solve failed during subspace iteration");
    }
    if (spec.deflate_constants) deflate_columns(y, mass_weights, mass_total);
    m_orthonormalize(y, spec.mass);

    Eigen::MatrixXd interaction = y.transpose() * (spec.stiffness * y);
    interaction = 0.5 * (interaction + interaction.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(interaction);
    if (ritz.info() != Eigen::Success) {
      throw NumericalError("dense Rayleigh-Ritz eigensolve failed");
    }
    x = y * ritz.eigenvectors();
    theta = ritz.eigenvalues();

    const Eigen::MatrixXd kx = spec.stiffness * x;
    const Eigen::MatrixXd mx = spec.mass * x;
    bool converged = true;
    for (int j = 0; j < requested; ++j) {
      residuals(j) = (kx.col(j) - theta(j) * mx.col(j)).norm();
      converged = converged && residuals(j) < kResidualTarget;
    }
    if (converged) {
      // Fix the sign so reruns and platforms with the same rounding agree.
      for (int j = 0; j < requested; ++j) {
        int lead = 0;
        x.col(j).cwiseAbs().maxCoeff(&lead);
        if (x(lead, j) < 0.0) x.col(j) = -x.col(j);
      }
      if (spec.deflate_constants) {
        for (int j = 0; j < requested; ++j) {
          if (std::abs(mass_weights.dot(x.col(j))) >= 1e-10 * x.col(j).norm()) {
            throw NumericalError("deflated eigenvector drifted toward the constant mode");
          }
        }
      }
      return {theta.head(requested), residuals.head(requested), x.leftCols(requested), iter};
    }
  }
  throw NumericalError("eigensolver did not reach residual 1e-10 within " +
                       std::to_string(kMaxIterations) + " iterations");
}

SpMat restrict_to(const SpMat& a, const std::vector<int>& full_to_reduced, int reduced_dim) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(a.nonZeros()));
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SpMat::InnerIterator it(a, k); it; ++it) {
      const int r = full_to_reduced[static_cast<std::size_t>(it.row())];
      const int c = full_to_reduced[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) entries.emplace_back(r, c, it.value());
    }
  }
  SpMat reduced(reduced_dim, reduced_dim);
  reduced.setFromTriplets(entries.begin(), entries.end());
  return reduced;
}

// Pins one dof to make the singular Neumann stiffness factorizable; the
// solves stay exact for right-hand sides orthogonal to constants, which the
// deflation guarantees.
SpMat ground_dof(const SpMat& a, int dof) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(a.nonZeros()) + 1);
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SpMat::InnerIterator it(a, k); it; ++it) {
      if (it.row() == dof || it.col() == dof) continue;
      entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  entries.emplace_back(dof, dof, 1.0);
  SpMat grounded(a.rows(), a.cols());
  grounded.setFromTriplets(entries.begin(), entries.end());
  return grounded;
}

}  // namespace

TriMesh mesh_rectilinear(const RectilinearPolygon& poly, double target_h, int channel_min_layers,
                         const Rect* channel, std::size_t dof_cap) {
  if (!(target_h > 0.0)) {
    throw std::invalid_argument("target_h must be positive");
  }
  if (channel_min_layers < 2) {
    throw std::invalid_argument("channel_min_layers must be at least 2");
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const Point2& v : poly.vertices()) {
    xs.push_back(v.x);
    ys.push_back(v.y);
  }
  xs = sorted_unique(xs);
  ys = sorted_unique(ys);

  SizeField fx{target_h};
  SizeField fy{target_h};
  if (channel != nullptr) {
    const double channel_cell = std::min(target_h, (channel->y1 - channel->y0) / channel_min_layers);
    fx = SizeField{target_h, true, channel->x0, channel->x1, channel_cell};
    fy = SizeField{target_h, true, channel->y0, channel->y1, channel_cell};
  }

  const double estimate = axis_node_estimate(xs, fx) * axis_node_estimate(ys, fy);
  if (estimate > static_cast<double>(dof_cap)) {
    throw DofBudgetError(static_cast<std::size_t>(std::min(estimate, 1e18)), dof_cap);
  }

  TriMesh mesh;
  mesh.grid_x = axis_nodes(xs, fx);
  mesh.grid_y = axis_nodes(ys, fy);

  const int nx = static_cast<int>(mesh.grid_x.size()) - 1;
  const int ny = static_cast<int>(mesh.grid_y.size()) - 1;
  std::vector<char> keep(static_cast<std::size_t>(nx) * ny, 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double cx = 0.5 * (mesh.grid_x[i] + mesh.grid_x[i + 1]);
      const double cy = 0.5 * (mesh.grid_y[j] + mesh.grid_y[j + 1]);
      keep[static_cast<std::size_t>(j) * nx + i] = point_in_polygon(poly.vertices(), cx, cy);
    }
  }

  const auto cell_kept = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && keep[static_cast<std::size_t>(j) * nx + i] != 0;
  };

  std::vector<int> vertex_id(static_cast<std::size_t>(nx + 1) * (ny + 1), -1);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const bool used = cell_kept(i - 1, j - 1) || cell_kept(i, j - 1) || cell_kept(i - 1, j) ||
                        cell_kept(i, j);
      if (!used) continue;
      vertex_id[static_cast<std::size_t>(j) * (nx + 1) + i] =
          static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back({mesh.grid_x[i], mesh.grid_y[j]});
      const bool interior = cell_kept(i - 1, j - 1) && cell_kept(i, j - 1) && cell_kept(i - 1, j) &&
                            cell_kept(i, j);
      mesh.boundary_flags.push_back(interior ? 0 : 1);
    }
  }

  const auto tag_of = [&](double cx, double cy) {
    if (channel == nullptr) return RegionTag::other;
    if (channel->contains(cx, cy)) return RegionTag::channel;
    if (cx <= channel->x0) return RegionTag::big_square;
    if (cx >= channel->x1) return RegionTag::small_square;
    return RegionTag::other;
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!cell_kept(i, j)) continue;
      const double hx = mesh.grid_x[i + 1] - mesh.grid_x[i];
      const double hy = mesh.grid_y[j + 1] - mesh.grid_y[j];
      mesh.mesh_size = std::max(mesh.mesh_size, std::hypot(hx, hy));
      const int v00 = vertex_id[static_cast<std::size_t>(j) * (nx + 1) + i];
      const int v10 = vertex_id[static_cast<std::size_t>(j) * (nx + 1) + i + 1];
      const int v01 = vertex_id[static_cast<std::size_t>(j + 1) * (nx + 1) + i];
      const int v11 = vertex_id[static_cast<std::size_t>(j + 1) * (nx + 1) + i + 1];
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
      const RegionTag tag = tag_of(0.5 * (mesh.grid_x[i] + mesh.grid_x[i + 1]),
                                   0.5 * (mesh.grid_y[j] + mesh.grid_y[j + 1]));
      mesh.region_tags.push_back(tag);
      mesh.region_tags.push_back(tag);
    }
  }
  return mesh;
}

AssembledOperators assemble(const TriMesh& mesh) {
  const int n = mesh.dof_count();
  std::vector<Eigen::Triplet<double>> stiffness_entries;
  std::vector<Eigen::Triplet<double>> mass_entries;
  stiffness_entries.reserve(mesh.triangles.size() * 9);
  mass_entries.reserve(mesh.triangles.size() * 9);

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Point2& p0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const Point2& p1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const Point2& p2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const double twice_area = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    if (!(twice_area > 0.0)) {
      throw std::invalid_argument("degenerate triangle " + std::to_string(t) +
                                  " (non-positive area) in assembly");
    }
    const double area = 0.5 * twice_area;
    // P1 shape-function gradients: grad phi_i = (b_i, c_i) / (2 area).
    const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double k_ij = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
        const double m_ij = area / 12.0 * (i == j ? 2.0 : 1.0);
        stiffness_entries.emplace_back(tri[i], tri[j], k_ij);
        mass_entries.emplace_back(tri[i], tri[j], m_ij);
      }
    }
  }

  AssembledOperators ops;
  ops.stiffness.mat.resize(n, n);
  ops.stiffness.mat.setFromTriplets(stiffness_entries.begin(), stiffness_entries.end());
  ops.mass.mat.resize(n, n);
  ops.mass.mat.setFromTriplets(mass_entries.begin(), mass_entries.end());
  return ops;
}

EigenResult dirichlet_eig1(const TriMesh& mesh) {
  const int n = mesh.dof_count();
  std::vector<int> full_to_reduced(static_cast<std::size_t>(n), -1);
  std::vector<int> reduced_to_full;
  for (int v = 0; v < n; ++v) {
    if (mesh.boundary_flags[static_cast<std::size_t>(v)] == 0) {
      full_to_reduced[static_cast<std::size_t>(v)] = static_cast<int>(reduced_to_full.size());
      reduced_to_full.push_back(v);
    }
  }
  const int interior = static_cast<int>(reduced_to_full.size());
  if (interior < 1) {
    throw std::invalid_argument("Dirichlet problem needs at least one interior vertex");
  }

  const AssembledOperators ops = assemble(mesh);
  const SpMat k_int = restrict_to(ops.stiffness.mat, full_to_reduced, interior);
  const SpMat m_int = restrict_to(ops.mass.mat, full_to_reduced, interior);

  const SubspaceResult sub = subspace_smallest({k_int, k_int, m_int, false, 1});

  EigenResult result;
  result.eigenvalues.assign(sub.eigenvalues.data(), sub.eigenvalues.data() + sub.eigenvalues.size());
  result.residuals.assign(sub.residuals.data(), sub.residuals.data() + sub.residuals.size());
  result.vectors = Eigen::MatrixXd::Zero(n, sub.vectors.cols());
  for (int r = 0; r < interior; ++r) {
    result.vectors.row(reduced_to_full[static_cast<std::size_t>(r)]) = sub.vectors.row(r);
  }
  result.mesh_size = mesh.mesh_size;
  result.dof_count = interior;
  result.iterations = sub.iterations;
  return result;
}

EigenResult neumann_eig1(const TriMesh& mesh) {
  const AssembledOperators ops = assemble(mesh);
  const int n = mesh.dof_count();
  const SpMat grounded = ground_dof(ops.stiffness.mat, n - 1);

  const SubspaceResult sub =
      subspace_smallest({ops.stiffness.mat, grounded, ops.mass.mat, true, 2, n - 1});

  EigenResult result;
  result.eigenvalues.assign(sub.eigenvalues.data(), sub.eigenvalues.data() + sub.eigenvalues.size());
  result.residuals.assign(sub.residuals.data(), sub.residuals.data() + sub.residuals.size());
  result.vectors = sub.vectors;
  result.mesh_size = mesh.mesh_size;
  result.dof_count = n;
  result.iterations = sub.iterations;
  for (double value : result.eigenvalues) {
    if (value < -1e-10) {
      throw NumericalError("Neumann eigenvalue " + std::to_string(value) +
                           " is negative beyond tolerance");
    }
  }
  return result;
}

RichardsonResult richardson_extrapolate(const EigenResult& coarse, const EigenResult& fine) {
  if (coarse.eigenvalues.empty() || fine.eigenvalues.empty()) {
    throw std::invalid_argument("richardson_extrapolate needs nonempty eigenvalue lists");
  }
  const double c0 = coarse.eigenvalues.front();
  const double f0 = fine.eigenvalues.front();
  const bool identical = coarse.mesh_size == fine.mesh_size && c0 == f0;
  if (!identical) {
    const double ratio = coarse.mesh_size / fine.mesh_size;
    if (!(ratio > 1.6 && ratio < 2.4)) {
      throw std::invalid_argument("richardson_extrapolate expects a nested pair with the fine "
                                  "mesh size half the coarse one (got ratio " +
                                  std::to_string(ratio) + ")");
    }
  }
  const double extrapolated = (4.0 * f0 - c0) / 3.0;
  double order = std::numeric_limits<double>::quiet_NaN();
  const double fine_gap = f0 - extrapolated;
  const double coarse_gap = c0 - extrapolated;
  if (fine_gap != 0.0 && coarse_gap / fine_gap > 0.0) {
    order = std::log2(coarse_gap / fine_gap);
  }
  return {{extrapolated}, order};
}

void write_vtk(const TriMesh& mesh, std::ostream& out) {
  out << "# vtk DataFile Version 3.0\n";
  out << "cavspec mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << std::setprecision(17);
  out << "POINTS " << mesh.vertices.size() << " double\n";
  for (const Point2& v : mesh.vertices) {
    out << v.x << " " << v.y << " 0\n";
  }
  out << "CELLS " << mesh.triangles.size() << " " << 4 * mesh.triangles.size() << "\n";
  for (const auto& tri : mesh.triangles) {
    out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  out << "CELL_TYPES " << mesh.triangles.size() << "\n";
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    out << "5\n";
  }
  out << "POINT_DATA " << mesh.vertices.size() << "\n";
  out << "SCALARS boundary int 1\n";
  out << "LOOKUP_TABLE default\n";
  for (std::uint8_t flag : mesh.boundary_flags) {
    out << static_cast<int>(flag) << "\n";
  }
}

}  // namespace cavspec
