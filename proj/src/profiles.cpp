#include "hopf/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hopf/gbudget.hpp"

namespace hopf {

std::string family_name(Family f) {
    switch (f) {
        case Family::Laplacian: return "laplacian";
        case Family::InverseLogPower: return "invlogpow";
        case Family::InverseLogSquare: return "invlogsq";
        case Family::FlatOnInterval: return "flat";
        case Family::Tabulated: return "tabulated";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "laplacian") return Family::Laplacian;
    if (name == "invlogpow") return Family::InverseLogPower;
    if (name == "invlogsq") return Family::InverseLogSquare;
    if (name == "flat") return Family::FlatOnInterval;
    if (name == "tabulated") return Family::Tabulated;
    throw std::invalid_argument("unknown profile family: " + name);
}

DegeneracyProfile DegeneracyProfile::laplacian() {
    DegeneracyProfile p;
    p.family_ = Family::Laplacian;
    p.t_bar_ = 1.0;
    p.extension_ = 1.0;
    return p;
}

DegeneracyProfile DegeneracyProfile::inverse_log_power(double k, double t_bar) {
    if (k <= 0) throw std::invalid_argument("inverse_log_power: k must be positive");
    DegeneracyProfile p;
    p.family_ = Family::InverseLogPower;
    p.k_ = k;
    // e^-2 keeps g + g' t <= 1 on (0, t_bar] for every k >= 1
    p.t_bar_ = t_bar > 0 ? t_bar : std::exp(-2.0);
    if (p.t_bar_ > std::exp(-1.0) + 1e-15)
        throw std::invalid_argument("inverse_log_power: t_bar must be <= 1/e");
    p.extension_ = std::pow(-std::log(p.t_bar_), -k);
    return p;
}

DegeneracyProfile DegeneracyProfile::inverse_log_square() {
    DegeneracyProfile p;
    p.family_ = Family::InverseLogSquare;
    p.k_ = 2.0;
    p.t_bar_ = std::exp(-4.0);
    p.extension_ = 1.0 / 16.0;
    return p;
}

DegeneracyProfile DegeneracyProfile::flat_on_interval(double T, double extension) {
    if (T <= 0) throw std::invalid_argument("flat_on_interval: T must be positive");
    DegeneracyProfile p;
    p.family_ = Family::FlatOnInterval;
    p.t_bar_ = T;
    p.extension_ = extension;
    return p;
}

DegeneracyProfile DegeneracyProfile::tabulated(std::vector<double> t, std::vector<double> g,
                                               std::vector<double> gprime) {
    if (t.size() < 4 || t.size() != g.size() || t.size() != gprime.size())
        throw std::invalid_argument("tabulated: need >= 4 consistent samples");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= 0) throw std::invalid_argument("tabulated: t must be positive");
        if (i > 0 && t[i] <= t[i - 1])
            throw std::invalid_argument("tabulated: t must strictly increase");
        if (g[i] < 0 || g[i] > 1) throw std::invalid_argument("tabulated: need 0 <= g <= 1");
    }
    // g' must be consistent with divided differences of g
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double dd = (g[i + 1] - g[i]) / (t[i + 1] - t[i]);
        const double mid = 0.5 * (gprime[i] + gprime[i + 1]);
        const double scale = std::max({1e-12, std::abs(dd), std::abs(mid)});
        if (std::abs(dd - mid) > 0.25 * scale + 1e-9)
            throw std::invalid_argument("tabulated: gprime inconsistent with divided differences");
    }
    DegeneracyProfile p;
    p.family_ = Family::Tabulated;
    p.t_bar_ = t.back();
    p.extension_ = g.back();
    p.g_interp_ = CubicHermite::pchip(t, g);
    p.gp_interp_ = CubicHermite::pchip(t, gprime);
    // local power of g at the data floor, used to extrapolate the tail
    if (g[0] > 0 && g[1] > 0)
        p.tail_alpha_ = std::max(
            0.0, std::log(g[1] / g[0]) / std::log(t[1] / t[0]));
    p.tab_t_ = std::move(t);
    p.tab_g_ = std::move(g);
    p.tab_gp_ = std::move(gprime);
    return p;
}

double DegeneracyProfile::min_t() const {
    return family_ == Family::Tabulated ? tab_t_.front() : 0.0;
}

double DegeneracyProfile::g(double t) const {
    if (t < 0) throw std::invalid_argument("g: t must be nonnegative");
    if (t > t_bar_) return extension_;
    switch (family_) {
        case Family::Laplacian:
            return 1.0;
        case Family::InverseLogPower:
        case Family::InverseLogSquare:
            if (t == 0) return 0.0;
            return std::pow(-std::log(t), -k_);
        case Family::FlatOnInterval:
            return 0.0;
        case Family::Tabulated:
            if (t < tab_t_.front() * (1.0 - 1e-12))
                throw std::out_of_range("tabulated profile queried below sample hull");
            return std::clamp(g_interp_(std::max(t, tab_t_.front())), 0.0, 1.0);
    }
    return 0.0;
}

double DegeneracyProfile::gprime(double t) const {
    if (t > t_bar_) return 0.0;
    switch (family_) {
        case Family::Laplacian:
        case Family::FlatOnInterval:
            return 0.0;
        case Family::InverseLogPower:
        case Family::InverseLogSquare: {
            if (t == 0) return 0.0;
            const double L = -std::log(t);
            return k_ * std::pow(L, -k_ - 1.0) / t;
        }
        case Family::Tabulated:
            if (t < tab_t_.front() * (1.0 - 1e-12))
                throw std::out_of_range("tabulated profile queried below sample hull");
            return gp_interp_(std::max(t, tab_t_.front()));
    }
    return 0.0;
}

double DegeneracyProfile::g_log(double lam) const {
    switch (family_) {
        case Family::Laplacian:
            return 1.0;
        case Family::InverseLogPower:
        case Family::InverseLogSquare:
            if (lam > std::log(t_bar_)) return extension_;
            return std::pow(-lam, -k_);
        case Family::FlatOnInterval:
            return lam > std::log(t_bar_) ? extension_ : 0.0;
        case Family::Tabulated: {
            const double lam_min = std::log(tab_t_.front());
            if (lam < lam_min) {
                if (tab_g_.front() <= 0) return 0.0;
                if (tail_alpha_ <= 0) return tab_g_.front();
                return tab_g_.front() * std::exp(tail_alpha_ * (lam - lam_min));
            }
            return g(std::exp(lam));
        }
    }
    return 0.0;
}

double DegeneracyProfile::t_gprime_log(double lam) const {
    switch (family_) {
        case Family::Laplacian:
        case Family::FlatOnInterval:
            return 0.0;
        case Family::InverseLogPower:
        case Family::InverseLogSquare:
            if (lam > std::log(t_bar_)) return 0.0;
            return k_ * std::pow(-lam, -k_ - 1.0);
        case Family::Tabulated: {
            const double lam_min = std::log(tab_t_.front());
            if (lam < lam_min) return tail_alpha_ * g_log(lam);  // power-law tail
            const double t = std::exp(lam);
            return t * gprime(t);
        }
    }
    return 0.0;
}

double DegeneracyProfile::hopf_ratio_log(double lam) const {
    const double tg = t_gprime_log(lam);
    const double gv = g_log(lam);
    if (tg <= 0) return std::numeric_limits<double>::infinity();
    if (family_ == Family::InverseLogPower || family_ == Family::InverseLogSquare) {
        if (lam <= std::log(t_bar_)) {
            // (-lam)^{-3k/2} / (k (-lam)^{-k-1}) = (-lam)^{1-k/2} / k
            return std::pow(-lam, 1.0 - 0.5 * k_) / k_;
        }
    }
    return gv * std::sqrt(gv) / tg;
}

double DegeneracyProfile::c2_ratio_log(double lam) const {
    const double tg = t_gprime_log(lam);
    if (tg <= 0) return std::numeric_limits<double>::infinity();
    return g_log(lam) / tg;
}

double DegeneracyProfile::log_t_of_g(double gval) const {
    if (gval <= 0) throw std::invalid_argument("log_t_of_g: need g > 0");
    switch (family_) {
        case Family::InverseLogPower:
        case Family::InverseLogSquare: {
            // g = (-ln t)^{-k}  =>  ln t = -g^{-1/k}
            const double lam = -std::pow(gval, -1.0 / k_);
            if (lam > std::log(t_bar_) + 1e-12)
                throw std::out_of_range("log_t_of_g: value above g(t_bar)");
            return lam;
        }
        default:
            throw std::logic_error("log_t_of_g: profile has no increasing closed form");
    }
}

OperatorProfiles OperatorProfiles::isotropic(const DegeneracyProfile& p, int N) {
    OperatorProfiles out;
    out.g.assign(static_cast<std::size_t>(N), p);
    return out;
}

OperatorProfiles OperatorProfiles::last_axis(const DegeneracyProfile& p, int N) {
    OperatorProfiles out;
    out.g.assign(static_cast<std::size_t>(N - 1), DegeneracyProfile::laplacian());
    out.g.push_back(p);
    return out;
}

std::vector<double> assumption_scan_grid(const DegeneracyProfile& p) {
    std::vector<double> grid;
    const double floor = std::max(p.min_t(), p.t_bar() * std::pow(2.0, -60.0));
    double t = p.t_bar();
    while (t >= floor * (1.0 - 1e-12)) {
        grid.push_back(t);
        t *= 0.5;
    }
    return grid;
}

namespace {

// Stabilized when the last 8 values agree to relative 1e-3.
bool stabilized(const std::vector<double>& v) {
    if (v.size() < 8) return false;
    const double last = v.back();
    if (!std::isfinite(last)) return false;
    for (std::size_t i = v.size() - 8; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) return false;
        if (std::abs(v[i] - last) > 1e-3 * std::max(1e-300, std::abs(last))) return false;
    }
    return true;
}

bool increasing_tail(const std::vector<double>& v) {
    if (v.size() < 8) return false;
    for (std::size_t i = v.size() - 7; i < v.size(); ++i)
        if (!(v[i] >= v[i - 1] * (1.0 - 1e-12)) && std::isfinite(v[i])) return false;
    return v.back() > v[v.size() - 8];
}

}  // namespace

AssumptionReport check_assumptions(const DegeneracyProfile& p, int N) {
    if (N < 2) throw std::invalid_argument("check_assumptions: N >= 2 required");
    AssumptionReport rep;
    const auto grid = assumption_scan_grid(p);

    rep.L_i_ordering = true;
    rep.L_ii_positivity = p.family() != Family::FlatOnInterval;
    rep.L_iii_monotone = true;
    rep.extra_monotone_g = true;
    rep.extra_sum_bound = true;

    double prev_sum = -std::numeric_limits<double>::infinity();
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {  // increasing t
        const double t = *it;
        const double gv = p.g(t);
        const double gp = p.gprime(t);
        if (gv < -1e-14 || gv > 1.0 + 1e-14) rep.L_i_ordering = false;
        if (gv <= 0) rep.L_ii_positivity = false;
        const double s = gv + gp * t;
        if (s < prev_sum - 1e-12 * std::max(1.0, std::abs(prev_sum))) rep.L_iii_monotone = false;
        prev_sum = std::max(prev_sum, s);
        if (gp < -1e-14) rep.extra_monotone_g = false;
        if (s > 1.0 + 1e-12) rep.extra_sum_bound = false;
    }
    if (p.family() == Family::FlatOnInterval) {
        rep.limit_ratio.reset();  // inapplicable: g' vanishes identically
        rep.C2_bounded = false;
    } else {
        // the scan grid runs t_bar * 2^-j, so the vectors already march toward 0
        std::vector<double> ratio, c2;
        for (double t : grid) {
            const double lam = std::log(t);
            ratio.push_back(p.hopf_ratio_log(lam));
            c2.push_back(p.c2_ratio_log(lam));
        }
        LimitRatio lr;
        if (!std::isfinite(ratio.back()) || (increasing_tail(ratio) && !stabilized(ratio))) {
            lr.cls = LimitClass::Infinite;
            lr.value = std::numeric_limits<double>::infinity();
        } else if (stabilized(ratio)) {
            lr.value = ratio.back();
            lr.cls = lr.value < 1e-9 ? LimitClass::Zero : LimitClass::Positive;
        } else {
            // decreasing without stabilizing: classify as vanishing
            lr.cls = LimitClass::Zero;
            lr.value = 0.0;
        }
        rep.limit_ratio = lr;

        if (!std::isfinite(c2.back()) || (increasing_tail(c2) && !stabilized(c2))) {
            rep.C2_bounded = false;
        } else {
            rep.C2_bounded = true;
            rep.C2_bound = *std::max_element(c2.begin(), c2.end());
        }
    }

    rep.K = estimate_K(p, N);
    return rep;
}

KEstimate estimate_K(const DegeneracyProfile& p, int N) {
    KEstimate out;
    if (classify_G(p, N, GScale::InvN) == GClass::Divergent) {
        out.status = KStatus::Inapplicable;
        return out;
    }
    // xi grid: sqrt(N t) for t on the assumption scan grid, so the argument
    // xi^2/N walks the same geometric ladder down from t_bar.
    const auto tgrid = assumption_scan_grid(p);
    std::vector<double> ratio;
    std::vector<double> running_sup;
    double sup = 0.0;
    for (double t : tgrid) {
        const double xi = std::sqrt(static_cast<double>(N) * t);
        const double gv = p.g(t);
        if (gv <= 0) continue;
        const auto Gb = compute_G(p, N, xi, GScale::InvN);
        if (Gb.divergent) {
            out.status = KStatus::Inapplicable;
            return out;
        }
        const double denom = std::expm1(Gb.value);
        if (denom <= 0) continue;
        const double r = std::sqrt(gv) / denom;
        ratio.push_back(r);
        sup = std::max(sup, r);
        running_sup.push_back(sup);
    }
    if (ratio.empty()) {
        out.status = KStatus::Inapplicable;
        return out;
    }
    if (!stabilized(running_sup)) {
        out.status = KStatus::Absent;
        return out;
    }
    constexpr double kSafety = 1.01;
    out.status = KStatus::Present;
    out.value = sup * kSafety;
    return out;
}

bool certify_K(const DegeneracyProfile& p, int N, double K) {
    if (classify_G(p, N, GScale::InvN) == GClass::Divergent) return false;
    for (double t : assumption_scan_grid(p)) {
        const double gv = p.g(t);
        if (gv <= 0) continue;
        const double xi = std::sqrt(static_cast<double>(N) * t);
        const auto Gb = compute_G(p, N, xi, GScale::InvN);
        if (Gb.divergent) return false;
        if (std::sqrt(gv) > K * std::expm1(Gb.value) * (1.0 + 1e-12)) return false;
    }
    return true;
}

double h_n(const DegeneracyProfile& p, int n, double t, double a) {
    if (n < 2) throw std::invalid_argument("h_n: n >= 2");
    return p.g(t * (1.0 - a) / (n - 1)) * (1.0 - a) + p.g(t * a) * a;
}

double k1(const DegeneracyProfile& p, double t, double a) {
    return (1.0 - a) + a * p.g(t * a);
}

double k2(const DegeneracyProfile& p, double t, double a) {
    return -a - (1.0 - a) * p.g(t * a);
}

double direction_sum(const DegeneracyProfile& p, double t, const std::vector<double>& dir) {
    double s = 0.0;
    for (double d : dir) s += p.g(t * d * d) * d * d;
    return s;
}

}  // namespace hopf
