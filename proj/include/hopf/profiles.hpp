#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopf/numerics.hpp"

namespace hopf {

enum class Family { Laplacian, InverseLogPower, InverseLogSquare, FlatOnInterval, Tabulated };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// A diffusion coefficient g together with its derivative, the bound t_bar of
// the local assumptions, and a constant extension used for arguments beyond
// t_bar.  All evaluators are pure.
class DegeneracyProfile {
  public:
    static DegeneracyProfile laplacian();
    static DegeneracyProfile inverse_log_power(double k, double t_bar = 0.0);
    static DegeneracyProfile inverse_log_square();                 // k = 2, t_bar = e^-4
    static DegeneracyProfile flat_on_interval(double T, double extension = 0.0);
    // Tabulated samples: strictly increasing t > 0, values g(t) and g'(t).
    static DegeneracyProfile tabulated(std::vector<double> t, std::vector<double> g,
                                       std::vector<double> gprime);

    Family family() const { return family_; }
    double k() const { return k_; }
    double t_bar() const { return t_bar_; }
    double extension_value() const { return extension_; }
    void set_extension_value(double v) { extension_ = v; }

    // g(t) for t >= 0; returns extension_value for t > t_bar.
    double g(double t) const;
    // g'(t) on (0, t_bar]; 0 beyond t_bar (constant extension).
    double gprime(double t) const;

    // Stable evaluators in log argument lam = ln t; these avoid underflow in
    // the deep tail t -> 0 where closed forms depend only on |ln t|.
    // Tabulated profiles extrapolate below their sample hull with the local
    // power g ~ g(t0) (t/t0)^alpha fitted at the first samples (the plain g()
    // accessor still refuses such queries).
    double g_log(double lam) const;
    double t_gprime_log(double lam) const;        // t*g'(t) at t = e^lam
    double hopf_ratio_log(double lam) const;      // g^{3/2} / (t g') at t = e^lam
    double c2_ratio_log(double lam) const;        // g / (t g') at t = e^lam

    bool has_closed_form() const { return family_ != Family::Tabulated; }
    // Smallest argument at which the profile can be evaluated without
    // extrapolating; 0 for closed forms.
    double min_t() const;

    // Inverse of g restricted to (0, t_bar], returned as ln t.  Requires a
    // strictly increasing closed form (inverse-log families).
    double log_t_of_g(double gval) const;

    const std::vector<double>& tab_t() const { return tab_t_; }
    const std::vector<double>& tab_g() const { return tab_g_; }
    const std::vector<double>& tab_gprime() const { return tab_gp_; }
    double tail_alpha() const { return tail_alpha_; }

  private:
    DegeneracyProfile() = default;
    Family family_ = Family::Laplacian;
    double k_ = 0.0;
    double t_bar_ = 1.0;
    double extension_ = 1.0;
    double tail_alpha_ = 0.0;
    std::vector<double> tab_t_, tab_g_, tab_gp_;
    CubicHermite g_interp_, gp_interp_;
};

// Coefficients of the full operator: g_i for i = 1..N-1 plus g_N.  The
// restricted operator of the necessary/sufficient-condition constructions
// uses the Laplacian for the first N-1 axes.
struct OperatorProfiles {
    std::vector<DegeneracyProfile> g;  // size N, g.back() is g_N
    static OperatorProfiles isotropic(const DegeneracyProfile& p, int N);
    // g_i = 1 for i < N, g_N = p.
    static OperatorProfiles last_axis(const DegeneracyProfile& p, int N);
    int dim() const { return static_cast<int>(g.size()); }
};

enum class LimitClass { Zero, Positive, Infinite };

struct LimitRatio {
    LimitClass cls = LimitClass::Zero;
    double value = 0.0;  // meaningful for Positive
};

// Outcome of the K search; Inapplicable when the budget integral diverges
// (the bound is vacuous there), Absent when the ratio grows without bound.
enum class KStatus { Present, Absent, Inapplicable };

struct KEstimate {
    KStatus status = KStatus::Inapplicable;
    double value = 0.0;
};

struct AssumptionReport {
    bool L_i_ordering = false;
    bool L_ii_positivity = false;
    bool L_iii_monotone = false;
    bool extra_monotone_g = false;
    bool extra_sum_bound = false;
    std::optional<LimitRatio> limit_ratio;  // absent when inapplicable (flat g)
    bool C2_bounded = false;
    double C2_bound = 0.0;  // certified sup of g/(t g') when bounded
    KEstimate K;
};

// Geometric scan grid t_bar * 2^-j, j = 0..60, clipped to the profile's
// resolvable range.
std::vector<double> assumption_scan_grid(const DegeneracyProfile& p);

AssumptionReport check_assumptions(const DegeneracyProfile& p, int N);

// Smallest certified K with sqrt(g(xi^2/N)) <= K (e^{G(xi)} - 1), scanned on
// a geometric xi grid and inflated by a declared safety factor.
KEstimate estimate_K(const DegeneracyProfile& p, int N);

// Direct certification of a given K on the scan grid.
bool certify_K(const DegeneracyProfile& p, int N, double K);

// Lemma helpers used by the property suites.
double h_n(const DegeneracyProfile& p, int n, double t, double a);
double k1(const DegeneracyProfile& p, double t, double a);
double k2(const DegeneracyProfile& p, double t, double a);
// sum_i g(t d_i^2) d_i^2 for a unit direction d.
double direction_sum(const DegeneracyProfile& p, double t, const std::vector<double>& dir);

}  // namespace hopf
