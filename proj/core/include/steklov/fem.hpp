#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "steklov/geometry.hpp"

namespace steklov {

/// Conforming triangle mesh of a convex polygon.  The boundary nodes come
/// first (indices 0..nb-1, in counterclockwise boundary order), so
/// boundary_edges[i] = {i, (i+1) % nb}.
struct TriangleMesh {
  std::vector<PlanarPoint> nodes;
  std::vector<std::array<std::size_t, 3>> triangles;  // counterclockwise
  std::vector<std::array<std::size_t, 2>> boundary_edges;

  std::size_t boundary_node_count() const { return boundary_edges.size(); }
};

/// Delaunay mesh with boundary spacing <= h and a hexagonal interior grid.
TriangleMesh triangulate(const ConvexPolygon& poly, double h);

/// Uniform refinement: every triangle is split into four via edge
/// midpoints, preserving the boundary-first node ordering.
TriangleMesh subdivide(const TriangleMesh& mesh);

struct AssembledSystem {
  Eigen::SparseMatrix<double> K;  // P1 stiffness, kernel = constants
  Eigen::SparseMatrix<double> M;  // boundary lumped-free P1 mass
};

AssembledSystem assemble(const TriangleMesh& mesh);

struct SteklovSolution {
  std::vector<double> sigmas;         // sigma_0..sigma_k ascending
  Eigen::MatrixXd boundary_traces;    // nb x (k+1), column j for sigma_j
  double mesh_h = 0.0;
};

/// Discrete Dirichlet-to-Neumann reduction: interior unknowns eliminated by
/// the Schur complement S = K_bb - K_bi K_ii^{-1} K_ib, then the pencil
/// S u = sigma M_b u solved densely.  k is the highest eigenvalue index.
SteklovSolution solve_steklov(const TriangleMesh& mesh,
                              const AssembledSystem& sys, std::size_t k);

/// build_polygon -> triangulate -> assemble -> solve.
SteklovSolution steklov_spectrum(const BoundaryData& data, double h,
                                 std::size_t k);

struct ExtrapolatedSpectrum {
  std::vector<double> mesh_h;                // per refinement level
  std::vector<std::vector<double>> sigmas;   // per level, sigma_0..sigma_k
  std::vector<double> extrapolated;          // Aitken limit per index
};

/// Solves on h0, h0/2, ... (levels halvings) and Richardson/Aitken
/// extrapolates each eigenvalue across the finest three levels.
ExtrapolatedSpectrum refined_spectrum(const BoundaryData& data, double h0,
                                      std::size_t k, unsigned levels = 3);

/// OFF-format dump for debugging.
std::string mesh_to_off(const TriangleMesh& mesh);

}  // namespace steklov
