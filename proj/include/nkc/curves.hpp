#pragma once
/**
 * @file curves.hpp
 * @brief Closed surfaces in a background as quadrature meshes: Cauchy–Riemann
 * residual, signed volume ∫ω and Riemannian area.
 *
 * A CurveMesh is a parameterized map f: Σ → M sampled at the vertices of a
 * triangulated domain.  Genus 0 domains are icospheres on the unit sphere in
 * R³; genus 1 domains are uniform grids on [0, 2π)² with the standard
 * conformal structure.  Each face carries a chart: its flat domain triangle
 * with an orthonormal frame (a, b) oriented by the face's vertex order, so
 * the domain rotation j maps a to b.  df is the affine interpolant on the
 * face.
 *
 * Quadrature points are taken on the image triangle: the CR residual is
 * evaluated at the retracted circumcenter, integrals at the retracted
 * centroid.  Face weights are the area of the domain face (spherical area
 * for icospheres, flat area for grids), so the weights sum to 4π or (2π)².
 */

#include "nkc/background.hpp"
#include "nkc/octonion.hpp"

#include <array>
#include <vector>

namespace nkc {

using Face = std::array<int, 3>;

/// Per-face chart data: inverse of the 2×2 matrix of domain edge coordinates in the frame (a, b).
struct FaceChart {
  Eigen::Matrix2d inverse_edges;
  double domain_area = 0.0;  ///< flat area of the domain triangle
};

class CurveMesh {
 public:
  /**
   * Validates: faces form a closed oriented surface (every edge used once in
   * each direction) with Euler characteristic 2 − 2·genus, weights are
   * positive and sum to the reference area (4π or 4π²) within 1e-12
   * relative, every image point lies on the background within 1e-10, and no
   * domain face is degenerate.  Throws PreconditionError / MeshQualityError.
   */
  CurveMesh(NKBackground background, int genus, std::vector<Vec> domain, std::vector<Vec> image,
            std::vector<Face> faces, std::vector<double> weights);

  const NKBackground& background() const { return bg_; }
  int genus() const { return genus_; }
  const std::vector<Vec>& domain() const { return domain_; }
  const std::vector<Vec>& image() const { return image_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<FaceChart>& charts() const { return charts_; }
  std::size_t vertex_count() const { return image_.size(); }
  double reference_area() const;

  /// Same domain, faces and weights with new image points (validated).
  CurveMesh with_image(std::vector<Vec> image) const;
  /// Same combinatorics on another background (e.g. the conjugate structure).
  CurveMesh with_background(NKBackground bg) const;
  /// Orientation-reversed surface: every face's vertex order flipped.
  CurveMesh reversed() const;
  /// Image points mapped by a G₂ element (ambient Im O backgrounds only).
  CurveMesh transformed(const G2Element& m) const;

 private:
  NKBackground bg_;
  int genus_;
  std::vector<Vec> domain_;
  std::vector<Vec> image_;
  std::vector<Face> faces_;
  std::vector<double> weights_;
  std::vector<FaceChart> charts_;
};

/// Unit icosphere: 12 vertices refined `level` times by edge midpoints; outward-oriented faces.
struct Icosphere {
  std::vector<Vec> vertices;
  std::vector<Face> faces;
};
Icosphere icosphere(int level);

/// Spherical area of a triangle with unit-vector corners.
double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c);

/// Smallest admissible domain and image face area.
inline constexpr double kMinFaceArea = 1e-14;

/// Unit 2-sphere in span(f1, f2, f3) ⊂ Im O, x ↦ x₀f1 + x₁f2 + x₂f3; needs an orthonormal frame.
CurveMesh round_sphere_curve(const NKBackground& s6, const Vec7& f1, const Vec7& f2, const Vec7& f3,
                             int level);

/// Residual of the associativity of span(f1, f2, f3): distance of the cross products from the span.
double associativity_residual(const Vec7& f1, const Vec7& f2, const Vec7& f3);

/**
 * round_sphere_curve for an associative orthonormal triple; the parametrization is
 * pseudoholomorphic for the outward orientation when f3 = f1 × f2.
 * Throws PreconditionError if the triple is not orthonormal or its span is not associative (1e-10).
 */
CurveMesh great_sphere_curve(const NKBackground& s6, const Vec7& f1, const Vec7& f2,
                             const Vec7& f3, int level);

/**
 * Flat torus {x₁, x₂ free; (x₃..x₆) = offset} on an n × n grid, the parametrization
 * being (x₁, x₂) = (u, v).  Exactly pseudoholomorphic on the torus testbed.
 */
CurveMesh subtorus_curve(const NKBackground& torus, const Eigen::Vector4d& offset, int n);

/// The subtorus translated by t·2π·shift in (x₃..x₆).
CurveMesh subtorus_family(const NKBackground& torus, double t, const Eigen::Vector4d& shift,
                          int n);

struct CRResidualReport {
  double l2 = 0.0;   ///< sqrt(Σ w|∂̄f|² / Σ w)
  double max = 0.0;  ///< max over faces of |∂̄f|
  std::vector<double> per_face;
};

/// ∂̄f on one face: (r_a, r_b) = ½(Pf_a + JPf_b), ½(Pf_b − JPf_a), and the circumcenter point.
struct FaceCR {
  Vec ra;
  Vec rb;
  Vec point;
};
FaceCR face_cr(const NKBackground& bg, const FaceChart& chart, const Vec& x0, const Vec& x1,
               const Vec& x2);

CRResidualReport cr_residual(const CurveMesh& curve);
/// Σ_faces w ω(Pf_a, Pf_b) at the retracted image centroid.
double curve_volume(const CurveMesh& curve);
/// Σ_faces w √det Gram_g(Pf_a, Pf_b).
double riemannian_area(const CurveMesh& curve);

/// Image edge vectors (x1 − x0, x2 − x0) of a face, unwrapped on periodic backgrounds.
std::pair<Vec, Vec> image_edges(const CurveMesh& curve, const Face& face);

}  // namespace nkc
