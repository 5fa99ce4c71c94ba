#include "nescape/asymptotics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nescape/dualseries.hpp"

namespace nescape::asym {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

const char* kBracketO1 = "O(1) inside brackets";
const char* kAnnulusOrder = "O(eps, beta^4) * R2^2 / D";
const char* kC0Order = "O(eps, beta^4) * (R2^2 - R1^2)";
const char* kRectOrder = "O(eps/a, beta^4)";
const char* kCapOrder = "O(delta^2 log delta)";
const char* kSphereWindowOrder = "O(eps, delta^2 log delta, delta^2 log eps)";
const char* kExact = "exact";

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error(msg);
}

double sum_terms(const std::vector<Term>& terms) {
    double s = 0.0;
    for (const auto& t : terms) s += t.value;
    return s;
}

void warn_if(std::vector<std::string>& warnings, bool cond, const std::string& msg) {
    if (cond) warnings.push_back(msg);
}

void warn_eps(std::vector<std::string>& warnings, double eps) {
    warn_if(warnings, eps > 0.1,
            "eps = " + std::to_string(eps) + " outside asymptotic validity (eps <= 0.1)");
}

void warn_beta(std::vector<std::string>& warnings, double beta) {
    const double b4 = beta * beta * beta * beta;
    warn_if(warnings, b4 > 0.01,
            "beta^4 = " + std::to_string(b4) + " outside asymptotic validity (beta^4 <= 0.01)");
}

}  // namespace

const std::vector<std::string>& error_order_tags() {
    static const std::vector<std::string> tags = {
        kBracketO1, kAnnulusOrder, kC0Order, kRectOrder, kCapOrder, kSphereWindowOrder, kExact,
    };
    return tags;
}

AsymptoticResult mfpt_leading_smooth(double area, double D, double eps_ratio) {
    require(area > 0.0 && D > 0.0, "mfpt_leading_smooth: area and D must be positive");
    require(eps_ratio > 0.0 && eps_ratio <= 1.0,
            "mfpt_leading_smooth: eps_ratio must lie in (0, 1]");
    AsymptoticResult r;
    r.terms.push_back({"narrow-escape-log", area / (kPi * D) * std::log(1.0 / eps_ratio)});
    r.value = sum_terms(r.terms);
    r.error_order = kBracketO1;
    r.convention = "length-ratio";
    warn_eps(r.warnings, eps_ratio);
    r.warnings.push_back("O(1) bracket unknown: compare slopes in log(1/eps)");
    return r;
}

AsymptoticResult mfpt_corner_leading(double area, double alpha, double D, double eps_ratio) {
    require(alpha > 0.0, "mfpt_corner_leading: alpha must be positive (use the cusp law)");
    require(alpha < 2.0 * kPi, "mfpt_corner_leading: alpha must be below 2*pi");
    require(area > 0.0 && D > 0.0, "mfpt_corner_leading: area and D must be positive");
    require(eps_ratio > 0.0 && eps_ratio <= 1.0,
            "mfpt_corner_leading: eps_ratio must lie in (0, 1]");
    AsymptoticResult r;
    r.terms.push_back({"corner-log", area / (alpha * D) * std::log(1.0 / eps_ratio)});
    r.value = sum_terms(r.terms);
    r.error_order = kBracketO1;
    r.convention = "length-ratio";
    warn_eps(r.warnings, eps_ratio);
    r.warnings.push_back("O(1) bracket unknown: compare slopes in log(1/eps)");
    return r;
}

AsymptoticResult mfpt_annulus_avg(double R1, double R2, double eps_ang, double D) {
    require(R1 > 0.0 && R2 > R1, "mfpt_annulus_avg: requires 0 < R1 < R2");
    require(eps_ang > 0.0 && eps_ang < kPi, "mfpt_annulus_avg: eps_ang must lie in (0, pi)");
    require(D > 0.0, "mfpt_annulus_avg: D must be positive");
    const double beta = R1 / R2;
    const double ring = R2 * R2 - R1 * R1;
    AsymptoticResult r;
    r.terms.push_back({"narrow-escape-log", ring * std::log(1.0 / eps_ang) / D});
    r.terms.push_back({"log2", ring * kLog2 / D});
    r.terms.push_back({"beta-correction", ring * 2.0 * beta * beta / D});
    r.terms.push_back(
        {"green-singularity-log",
         0.5 * R2 * R2 / (1.0 - beta * beta) * std::log(1.0 / beta) / D});
    r.terms.push_back({"constant", -0.25 * R2 * R2 / D});
    r.value = sum_terms(r.terms);
    r.error_order = kAnnulusOrder;
    r.convention = "angular-half-width";
    warn_eps(r.warnings, eps_ang);
    warn_beta(r.warnings, beta);
    return r;
}

AsymptoticResult c0_annulus(double R1, double R2, double eps_ang) {
    require(R1 >= 0.0 && R2 > R1, "c0_annulus: requires 0 <= R1 < R2");
    require(eps_ang > 0.0 && eps_ang < kPi, "c0_annulus: eps_ang must lie in (0, pi)");
    const double beta = R1 / R2;
    const double ring = R2 * R2 - R1 * R1;
    AsymptoticResult r;
    r.terms.push_back({"narrow-escape-log", ring * 2.0 * std::log(1.0 / eps_ang)});
    r.terms.push_back({"log2", ring * 2.0 * kLog2});
    r.terms.push_back({"beta-correction", ring * 4.0 * beta * beta});
    r.value = sum_terms(r.terms);
    r.error_order = kC0Order;
    r.convention = "angular-half-width";
    warn_eps(r.warnings, eps_ang);
    warn_beta(r.warnings, beta);
    return r;
}

AsymptoticResult c0_rectangle(double a, double b, double eps_len) {
    require(a > 0.0 && b > 0.0, "c0_rectangle: sides must be positive");
    require(eps_len > 0.0 && eps_len < a, "c0_rectangle: requires 0 < eps < a");
    const double beta = std::exp(-kPi * b / a);
    const double lead = 4.0 * a * b / kPi;
    AsymptoticResult r;
    r.terms.push_back({"corner-log", lead * std::log(a / eps_len)});
    r.terms.push_back({"log-2-over-pi", lead * std::log(2.0 / kPi)});
    r.terms.push_back({"beta-correction", lead * 2.0 * beta * beta});
    r.value = sum_terms(r.terms);
    r.error_order = kRectOrder;
    r.convention = "arclength";
    warn_eps(r.warnings, eps_len / a);
    warn_beta(r.warnings, beta);
    return r;
}

AsymptoticResult mfpt_rectangle_avg(double a, double b, double eps_len, double D) {
    require(a > 0.0 && b > 0.0, "mfpt_rectangle_avg: sides must be positive");
    require(eps_len > 0.0 && eps_len < a, "mfpt_rectangle_avg: requires 0 < eps < a");
    require(D > 0.0, "mfpt_rectangle_avg: D must be positive");
    const double beta = std::exp(-kPi * b / a);
    const double lead = 2.0 * a * b / kPi;
    AsymptoticResult r;
    r.terms.push_back({"corner-log", lead * std::log(a / eps_len) / D});
    r.terms.push_back({"log-2-over-pi", lead * std::log(2.0 / kPi) / D});
    r.terms.push_back({"aspect", lead * (kPi / 6.0) * (b / a) / D});
    r.terms.push_back({"beta-correction", lead * 2.0 * beta * beta / D});
    r.value = sum_terms(r.terms);
    r.error_order = kRectOrder;
    r.convention = "arclength";
    warn_eps(r.warnings, eps_len / a);
    warn_beta(r.warnings, beta);
    return r;
}

AsymptoticResult mfpt_cusp_leading(const geom::TangentCircles& domain, double eps_ratio,
                                   double D) {
    require(domain.d > 0.0 && domain.d < 1.0, "mfpt_cusp_leading: requires 0 < d < 1");
    require(eps_ratio > 0.0 && eps_ratio < 1.0, "mfpt_cusp_leading: eps_ratio must lie in (0,1)");
    require(D > 0.0, "mfpt_cusp_leading: D must be positive");
    const double area = kPi * domain.R * domain.R * (1.0 - domain.d * domain.d);
    const double lead = area / ((1.0 / domain.d - 1.0) * D);
    const double equivalent = kPi * domain.R * domain.R * domain.d * (1.0 + domain.d) / D;
    if (std::abs(lead - equivalent) > 1e-12 * std::abs(lead))
        throw std::logic_error("mfpt_cusp_leading: equivalent forms disagree");
    AsymptoticResult r;
    r.terms.push_back({"cusp-algebraic", lead / eps_ratio});
    r.value = sum_terms(r.terms);
    r.error_order = kBracketO1;
    r.convention = "length-ratio";
    r.aux.push_back({"coefficient-area-form", lead});
    r.aux.push_back({"coefficient-d-form", equivalent});
    warn_eps(r.warnings, eps_ratio);
    r.warnings.push_back("O(1) bracket unknown: compare eps-scaled values, not absolute values");
    return r;
}

double sphere_cap_mfpt_point(double R, double delta, double theta, double D) {
    require(R > 0.0 && D > 0.0, "sphere_cap_mfpt_point: R and D must be positive");
    require(delta > 0.0 && delta < kPi, "sphere_cap_mfpt_point: delta must lie in (0, pi)");
    require(theta >= delta && theta <= kPi,
            "sphere_cap_mfpt_point: theta must lie in [delta, pi]");
    return 2.0 * R * R * std::log(std::sin(0.5 * theta) / std::sin(0.5 * delta)) / D;
}

AsymptoticResult sphere_cap_mfpt_avg(double R, double delta, double D) {
    require(R > 0.0 && D > 0.0, "sphere_cap_mfpt_avg: R and D must be positive");
    require(delta > 0.0 && delta < kPi, "sphere_cap_mfpt_avg: delta must lie in (0, pi)");
    const double c = std::cos(0.5 * delta);
    AsymptoticResult r;
    r.terms.push_back({"rim-log-exact", -2.0 * R * R * std::log(std::sin(0.5 * delta)) / (c * c) / D});
    r.terms.push_back({"constant", -R * R / D});
    r.value = sum_terms(r.terms);
    r.error_order = kExact;
    r.convention = "angular-half-width";
    const double asym =
        2.0 * R * R * (std::log(1.0 / delta) + kLog2 - 0.5) / D;
    r.aux.push_back({"asymptotic-form", asym});
    warn_eps(r.warnings, delta / kPi);
    return r;
}

AsymptoticResult sphere_window_mfpt_avg(double R, double delta, double eps_ang, double D) {
    require(R > 0.0 && D > 0.0, "sphere_window_mfpt_avg: R and D must be positive");
    require(delta > 0.0 && delta < 0.5 * kPi,
            "sphere_window_mfpt_avg: delta must lie in (0, pi/2)");
    require(eps_ang > 0.0 && eps_ang < kPi,
            "sphere_window_mfpt_avg: eps_ang must lie in (0, pi)");
    const double lead = 2.0 * R * R / D;
    AsymptoticResult r;
    r.terms.push_back({"cap-log", lead * std::log(1.0 / delta)});
    r.terms.push_back({"window-log", lead * 2.0 * std::log(1.0 / eps_ang)});
    r.terms.push_back({"3log2", lead * 3.0 * kLog2});
    r.terms.push_back({"constant", lead * -0.5});
    r.value = sum_terms(r.terms);
    r.error_order = kSphereWindowOrder;
    r.convention = "angular-half-width";
    const double c2 = std::cos(0.5 * delta) * std::cos(0.5 * delta);
    const double exact_in_delta =
        4.0 * R * R *
        (-0.5 * (std::log(std::sin(0.5 * delta)) / c2 + 0.5) + c2 * std::log(2.0 / eps_ang)) / D;
    r.aux.push_back({"exact-in-delta", exact_in_delta});
    warn_eps(r.warnings, eps_ang);
    warn_if(r.warnings, delta > 0.5,
            "delta = " + std::to_string(delta) + " outside asymptotic validity (delta <= 0.5)");
    return r;
}

double sphere_window_mfpt_point(double R, double delta, double eps_ang, double theta,
                                double phi, double D, const dual::SeriesSolution* series) {
    require(R > 0.0 && D > 0.0, "sphere_window_mfpt_point: R and D must be positive");
    require(delta > 0.0 && delta < kPi, "sphere_window_mfpt_point: delta must lie in (0, pi)");
    require(eps_ang > 0.0 && eps_ang < kPi,
            "sphere_window_mfpt_point: eps_ang must lie in (0, pi)");
    require(theta >= delta && theta <= kPi,
            "sphere_window_mfpt_point: theta must lie in [delta, pi]");
    const double c2 = std::cos(0.5 * delta) * std::cos(0.5 * delta);
    double v = 0.5 * std::log(std::sin(0.5 * theta) / std::sin(0.5 * delta)) -
               c2 * std::log(0.5 * eps_ang);
    if (series != nullptr && series->c.size() > 1) {
        const double rho = std::tan(0.5 * delta) / std::tan(0.5 * theta);
        double rho_n = 1.0;
        for (size_t n = 1; n < series->c.size(); ++n) {
            rho_n *= rho;
            v += series->c[n] * rho_n * std::cos(static_cast<double>(n) * phi);
        }
    }
    return 4.0 * R * R * v / D;
}

}  // namespace nescape::asym
