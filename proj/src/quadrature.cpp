#include "nescape/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace nescape::quad {

namespace {

// Newton iteration on P_n; standard Chebyshev-like initial guess.
GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::mutex cache_mutex;
std::map<int, GaussRule> rule_cache;

double gauss_on_interval(const std::function<double(double)>& f, double a, double b,
                         const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = rule_cache.find(n);
    if (it == rule_cache.end()) it = rule_cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int n) {
    return gauss_on_interval(f, a, b, gauss_legendre(n));
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_depth) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        return -integrate_adaptive(f, b, a, abs_tol, rel_tol, max_depth);
    }
    const GaussRule& g7 = gauss_legendre(7);
    const GaussRule& g15 = gauss_legendre(15);

    // Globally adaptive: always split the interval with the largest G7/G15
    // defect, bounded by an interval budget so steep integrands cannot make
    // the refinement run away.
    struct Piece {
        double err, a, b, value;
        int depth;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    auto evaluate = [&](double lo, double hi, int depth) {
        const double coarse = gauss_on_interval(f, lo, hi, g7);
        const double fine = gauss_on_interval(f, lo, hi, g15);
        double err = std::abs(fine - coarse);
        if (std::isnan(err)) err = 0.0;  // refuse to chase NaNs
        return Piece{err, lo, hi, fine, depth};
    };

    std::priority_queue<Piece> pieces;
    pieces.push(evaluate(a, b, 0));
    double total = pieces.top().value;
    double total_err = pieces.top().err;
    const int max_pieces = 4096;
    int n_pieces = 1;
    while (n_pieces < max_pieces &&
           total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        const Piece worst = pieces.top();
        if (worst.depth >= max_depth || worst.err == 0.0) break;
        pieces.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Piece left = evaluate(worst.a, mid, worst.depth + 1);
        const Piece right = evaluate(mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        pieces.push(left);
        pieces.push(right);
        ++n_pieces;
    }
    // re-sum in queue order for a cleaner value
    double sum = 0.0;
    while (!pieces.empty()) {
        sum += pieces.top().value;
        pieces.pop();
    }
    return sum;
}

double legendre_p(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre_p: n must be >= 0");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

void legendre_all(int n, double x, std::span<double> out) {
    if (static_cast<int>(out.size()) != n + 1)
        throw std::invalid_argument("legendre_all: out must have n+1 entries");
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = x;
    for (int k = 2; k <= n; ++k)
        out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

}  // namespace nescape::quad
