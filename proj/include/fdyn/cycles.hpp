#pragma once

// Attracting cycles of the free critical orbit, hyperbolic centers,
// Misiurewicz parameters and the component census of the parameter plane.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdyn/error.hpp"
#include "fdyn/family.hpp"
#include "fdyn/grid.hpp"

namespace fdyn {

struct CycleInfo {
  int period = 0;
  Complex representative;
  Complex multiplier;
  /// False when Newton refinement failed and the raw orbit points are reported.
  bool refined = false;
  /// The cycle in orbit order, starting at the representative.
  std::vector<Complex> points;
};

/// Newton refinement could not reach the residual bound; carries the raw cycle.
class RefinementDiverged : public Error {
 public:
  RefinementDiverged(const std::string& what, CycleInfo candidate)
      : Error(what), candidate_(std::move(candidate)) {}
  const CycleInfo& candidate() const { return candidate_; }

 private:
  CycleInfo candidate_;
};

inline constexpr int kDefaultMaxIter = 10000;
/// Orbit points closer than this are treated as repeating.
inline constexpr double kRepeatTolerance = 1e-8;
/// Longest period the repetition detector can see.
inline constexpr int kMaxDetectablePeriod = 64;
inline constexpr int kNewtonSteps = 60;

/// Refines a near-periodic point z of period p by damped Newton on f^p(z) - z,
/// reduces p to the minimal period and computes the multiplier.
/// Throws RefinementDiverged when the residual stays above 1e-10 (1 + |z|).
CycleInfo refine_cycle(const Parameter& t, Complex z, int period);

/// prod f'(z_i) over the listed cycle.
Complex cycle_multiplier(const Parameter& t, std::span<const Complex> points);

/// Outcome of following the critical value orbit.
struct OrbitScan {
  /// First k with |f^k(t)| > R(t), or -1.
  int escape_level = -1;
  /// Periodic behavior detected before escape (any multiplier).
  std::optional<CycleInfo> cycle;
  int iterations = 0;
  /// |z| at the last iterate; +inf when the orbit reached infinity.
  double final_modulus = 0.0;
};

/// Iterates z_0 = t under f_t with the escape test of radius R(t) and the
/// repetition detector, stopping at the first of escape, repetition or max_iter.
OrbitScan scan_critical_orbit(const Parameter& t, int max_iter = kDefaultMaxIter,
                              double bailout_constant = 10.0);

/// The attracting cycle (|multiplier| < 1) captured by the orbit of t, if any.
std::optional<CycleInfo> find_attracting_cycle(const Parameter& t, int max_iter = kDefaultMaxIter);

/// Roots of sum coeffs[k] z^k by Aberth iteration with Newton polishing.
/// Throws RootFindingStalled when the iteration does not settle.
std::vector<Complex> polynomial_roots(std::span<const double> coeffs, int max_iter = 500,
                                      double tol = 1e-12);

/// Parameters whose critical orbit 0 -> t -> ... is periodic of exact period n >= 2.
/// Roots failing the exact-period check go to `rejected` when given.
std::vector<Complex> find_centers(int n, std::vector<Complex>* rejected = nullptr);

struct MisiurewiczPoint {
  Complex t;
  /// f^j(t); equals f^k(t).
  Complex landing;
  /// Exact period of the landing cycle.
  int landing_period = 0;
  Complex multiplier;
};

/// Parameters with Q_j(t) = Q_k(t), j < k, landing on a repelling cycle.
std::vector<MisiurewiczPoint> find_misiurewicz(int j, int k);

enum class CensusKind { Hyperbolic, Escape };

struct CensusRow {
  CensusKind kind = CensusKind::Hyperbolic;
  /// Period for Hyperbolic rows, level for Escape rows.
  int index = 0;
  int components_found = 0;
  /// Predicted number of components of this kind.
  long long bound = 0;
};

struct CensusComponent {
  CensusKind kind;
  int index;
  long long pixels;
  Complex representative;
};

struct CensusResult {
  GridSpec grid;
  std::vector<CensusRow> rows;
  std::vector<CensusComponent> components;
  /// Per-pixel component id (index into components), -1 for none.
  std::vector<int> labels;

  const CensusComponent* component_at(Complex t) const;
  const CensusRow* row(CensusKind kind, int index) const;
};

/// 2 (4^(n-1) - 1) / 3 hyperbolic components of period n >= 2; one of period 1.
long long hyperbolic_bound(int period);
/// 2 (4^n - 1) / 3 escape components of level n >= 1; one of level 0.
long long escape_bound(int level);

/// Classifies every pixel of the grid, then counts 4-connected components:
/// hyperbolic pixels are grouped by equal period; escaping pixels are grouped
/// together and each component takes the smallest escape level it contains.
CensusResult census(const GridSpec& grid, int period_max, int level_max, int max_iter = 2000,
                    int workers = 0);

std::string to_string(CensusKind kind);

}  // namespace fdyn
