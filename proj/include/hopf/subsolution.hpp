#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "hopf/barrier.hpp"

namespace hopf {

struct SmallnessViolated : std::runtime_error {
    SmallnessViolated(double lhs_, double bound_)
        : std::runtime_error("epsilon too large: smallness lhs " + std::to_string(lhs_) +
                             " > " + std::to_string(bound_)),
          lhs(lhs_), bound(bound_) {}
    double lhs, bound;
};

struct MeshFailure : std::runtime_error {
    explicit MeshFailure(double gap)
        : std::runtime_error("partition refinement cap exceeded, gap " + std::to_string(gap)),
          achieved_gap(gap) {}
    double achieved_gap;
};

// Left side of the preamble smallness requirement
//   2 sqrt(g(e^2/r^2)) + 1/2 sqrt(g(e^2/r^2)) |ln g(e^2/r^2)|  <=  1/(4K).
double smallness_lhs(const DegeneracyProfile& p, double eps_over_r);

// Largest eps/r with (eps/r)^2 <= t_bar satisfying the smallness bound for K.
// This is the default for the undefined xi-bar configuration parameter.
double default_xibar(const DegeneracyProfile& p, double K);

// R(1) = r / (e^{G(-eps/r)/(N-1)} - 1) with the One scaling.  When K is
// given the smallness precondition is enforced (SmallnessViolated otherwise).
double compute_R1_annulus(const DegeneracyProfile& p, int N, double r, double eps,
                          std::optional<double> K = std::nullopt);

// Shell radius for the sector value abar in (0, 1].
double compute_R_abar(const DegeneracyProfile& p, int N, double r, double eps,
                      double R1, double abar);

struct PartitionAlpha {
    std::vector<double> alpha;  // pi/2 = alpha_0 > ... > alpha_n = 0
    std::vector<double> c, s;   // c_i = cos(alpha_i) ascending, s_i = sin(alpha_i)
    std::vector<double> R;      // R(a_i) with a_i = s_i^2
    double sigma = 0.0;         // mesh tolerance R1 g(eps^2/r^2)
    double S1 = 0.0, S2 = 0.0;
    double integral_c = 0.0, integral_s = 0.0;  // quadrature references
    bool s1_within_bound = false;               // S1 <= 2 K r
    bool s2_within_bound = false;               // S2 <= r/4
    std::size_t n() const { return alpha.size() - 1; }
};

PartitionAlpha build_partition(const DegeneracyProfile& p, int N, double r, double eps,
                               double K);

struct PlacementReport {
    bool r_bound_ok = false;       // r < d/(32(N-1)K^2 + 7/8) with the given K
    double r_max = 0.0;
    bool first_quadrant = false;   // z_i >= p_i
    bool box_in_ball = false;      // every corner of R(q*, l, l_N) inside B(p, d-r/4)
    bool chain_inequality = false; // (d-r/2)^2 + 4((N-1)l^2 + l_N^2) < (d-r/4)^2
    bool z_in_collar = false;      // 0 < d(z, A*) and d(z, A*) < 3r/4
    std::vector<double> q, qstar;
    double dist_z_Astar = 0.0;
    double v_at_z = 0.0;
};

// The piecewise-radial subsolution: shells of radii R(a_i) around drifting
// centers, glued C^1 across angular interfaces, in the frame recentered at
// the region's center of symmetry.  The construction is axisymmetric in the first N-1
// coordinates and mirror-symmetric in x_N, so everything lives in the
// meridian half-plane (s, y), s = |(x_1..x_{N-1})|.
class GluedSubsolution {
  public:
    struct Piece {
        double mu = 0.0, mz = 0.0;  // meridian center, original frame
        double R = 0.0;             // inner radius
        double s_hi = 0.0, s_lo = 0.0;  // angular range: s_lo <= sin theta <= s_hi
    };

    struct EvalResult {
        double v = 0.0;
        std::vector<double> grad;
        int piece = -1;
    };

    int N = 2;
    DegeneracyProfile profile = DegeneracyProfile::laplacian();
    double r = 0.0, eps = 0.0, K = 0.0;
    double R1 = 0.0;
    RadialBarrier w;  // zeta(R1) = -eps/r on [R1, R1+r], scale One
    PartitionAlpha part;
    std::vector<Piece> pieces;   // i = 0 .. n-1
    std::vector<double> arc_x;   // abscissa breakpoints of the boundary arcs
    double l = 0.0, lN = 0.0;    // bounding-rectangle half-widths (= S1, S2)
    double zstar = 0.0;          // O* height in the original frame, R1 - S2

    double inner_value() const;  // v on the inner boundary, w(R1) <= eps

    // Point evaluation in the recentered frame (O* at the origin).  Throws
    // std::domain_error outside the closed collar.
    EvalResult eval(const std::vector<double>& x) const;

    // Exact distance to the closed region A (recentered frame); 0 inside.
    double distance_to_A(const std::vector<double>& x) const;
    // Reference implementation minimizing over every arc facet; the test
    // oracle for the projection shortcut above.
    double distance_to_A_bruteforce(const std::vector<double>& x) const;

    // Radial operator value for piece i at distance rho_i from its center and
    // sector parameter a; the certified lower bound for F on the piece.
    double piece_F(std::size_t i, double rho_i, double a) const;
    // k(rho_i): F(w^{a_i}) >= 0 on the shell iff k <= 0; non-increasing.
    double piece_k(std::size_t i, double rho_i, double a) const;

    // Meridian boundary polylines for figure output: the arcs of dA and of
    // dB(A, r) in the upper half, as (s, y) pairs in the recentered frame.
    std::vector<std::pair<double, double>> boundary_arc_points(bool outer,
                                                               int per_arc) const;
    // Level curve {vbar = level} for 0 < level < vbar's inner value, traced
    // the same way (levels are shells at constant shifted radius).
    std::vector<std::pair<double, double>> level_set_points(double level,
                                                            int per_arc) const;

  private:
    int find_piece(double s_mer, double y_mer) const;  // original-frame meridian point
    std::size_t locate_arc_by_x(double s_mer) const;
    // true when the folded meridian point sits on or below the boundary chain
    bool inside_region(double s_mer, double y_mer) const;
};

// enforce_smallness gates the preamble bound on eps; the construction itself
// is valid for every eps with (eps/r)^2 <= t_bar, the bound only certifies
// the 2Kr / r/4 size estimates.
GluedSubsolution assemble_glued_subsolution(const DegeneracyProfile& p, int N, double r,
                                            double eps, double K,
                                            bool enforce_smallness = true);

// Samples the boundary of R(l, l_N) and verifies d(p, A-bar) < l_N everywhere.
struct DistanceCheckResult {
    bool ok = false;
    double worst = 0.0;
    std::vector<double> worst_point;
};
DistanceCheckResult distance_check(const GluedSubsolution& sub, int samples,
                                   std::mt19937_64& rng);

// Distance from the rectangle corner q to the hyperplane through the touch
// points p_1..p_N (the chain of the distance lemma).
double corner_plane_distance(const GluedSubsolution& sub);

// Places the recentered subsolution on the segment p -> z per the maximum
// principle proof and verifies the inclusion chain.
PlacementReport placement(const GluedSubsolution& sub, const std::vector<double>& p,
                          double dist_pC, const std::vector<double>& z);

}  // namespace hopf
