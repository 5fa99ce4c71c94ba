#include "nescape/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "nescape/rng.hpp"

namespace nescape::mc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kMinHit = 1e-12;  // smallest admissible crossing parameter

double wrap_to_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > kPi) a -= kTwoPi;
    if (a < -kPi) a += kTwoPi;
    return a;
}

struct Vec2 {
    double x, y;
};

struct Vec3 {
    double x, y, z;
};

// Earliest parameter f in (kMinHit, 1] where the segment p + f*d meets the
// circle of center o and radius rho; returns false if none.
bool first_circle_hit(double px, double py, double dx, double dy, double ox, double oy,
                      double rho, double& f_out) {
    const double rx = px - ox, ry = py - oy;
    const double a = dx * dx + dy * dy;
    if (a == 0.0) return false;
    const double b = 2.0 * (rx * dx + ry * dy);
    const double c = rx * rx + ry * ry - rho * rho;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return false;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r0 = q / a;
    double r1 = (q != 0.0) ? c / q : r0;
    if (r0 > r1) std::swap(r0, r1);
    if (r0 > kMinHit && r0 <= 1.0) {
        f_out = r0;
        return true;
    }
    if (r1 > kMinHit && r1 <= 1.0) {
        f_out = r1;
        return true;
    }
    return false;
}

void reflect_across_circle_normal(double cx, double cy, double ox, double oy, double rho,
                                  double& gx, double& gy) {
    const double nx = (cx - ox) / rho, ny = (cy - oy) / rho;
    const double vx = gx - cx, vy = gy - cy;
    const double vn = vx * nx + vy * ny;
    gx -= 2.0 * vn * nx;
    gy -= 2.0 * vn * ny;
}

// ---------------------------------------------------------------------------
// Geometry steppers.  Each returns true when the step segment is absorbed,
// with frac the consumed fraction of the step; otherwise the point is
// updated in place with reflections applied.
// ---------------------------------------------------------------------------

struct DiskGeo {
    using Point = Vec2;
    double R, R2;
    bool absorb_all = true;   // window covers the whole boundary
    bool absorb_none = false;
    double wc = kPi, weps = 0.0;

    bool absorbed_at(double cx, double cy) const {
        if (absorb_none) return false;
        if (absorb_all) return true;
        return std::abs(wrap_to_pi(std::atan2(cy, cx) - wc)) < weps;
    }

    bool step(Point& p, double dx, double dy, double& frac) const {
        double fx = p.x, fy = p.y, gx = p.x + dx, gy = p.y + dy;
        double done = 0.0;
        for (int bounce = 0; bounce < 8; ++bounce) {
            if (gx * gx + gy * gy < R2) {
                p = {gx, gy};
                return false;
            }
            double f;
            if (!first_circle_hit(fx, fy, gx - fx, gy - fy, 0.0, 0.0, R, f)) break;
            const double cx = fx + f * (gx - fx), cy = fy + f * (gy - fy);
            done += f * (1.0 - done);
            if (absorbed_at(cx, cy)) {
                frac = done;
                return true;
            }
            reflect_across_circle_normal(cx, cy, 0.0, 0.0, R, gx, gy);
            fx = cx;
            fy = cy;
        }
        // grazing fallback: project inside
        const double r = std::sqrt(gx * gx + gy * gy);
        if (r >= R) {
            const double s = (R * (1.0 - 1e-12)) / r;
            gx *= s;
            gy *= s;
        }
        p = {gx, gy};
        return false;
    }
};

struct AnnulusGeo {
    using Point = Vec2;
    double R1, R2, R1sq, R2sq;
    bool window_on_inner = true;
    bool absorb_none = false;
    double wc = kPi, weps = 0.0;

    bool absorbed_at(double cx, double cy, bool inner) const {
        if (absorb_none) return false;
        if (inner != window_on_inner) return false;
        return std::abs(wrap_to_pi(std::atan2(cy, cx) - wc)) < weps;
    }

    bool step(Point& p, double dx, double dy, double& frac) const {
        double fx = p.x, fy = p.y, gx = p.x + dx, gy = p.y + dy;
        double done = 0.0;
        for (int bounce = 0; bounce < 8; ++bounce) {
            const double ddx = gx - fx, ddy = gy - fy;
            const double rq2 = gx * gx + gy * gy;
            const double rp2 = fx * fx + fy * fy;
            // cheap exclusion of an inner-circle chord: every segment point is
            // within |d| of the start
            const double seg = std::sqrt(ddx * ddx + ddy * ddy);
            const double inner_reach = R1 + seg;
            const bool inner_possible = rp2 < inner_reach * inner_reach;
            if (rq2 < R2sq && rq2 > R1sq && !inner_possible) {
                p = {gx, gy};
                return false;
            }
            double f_out = 2.0, f_in = 2.0;
            const bool hit_out = first_circle_hit(fx, fy, ddx, ddy, 0.0, 0.0, R2, f_out);
            const bool hit_in =
                inner_possible && first_circle_hit(fx, fy, ddx, ddy, 0.0, 0.0, R1, f_in);
            if (!hit_out && !hit_in) {
                if (rq2 < R2sq && rq2 > R1sq) {
                    p = {gx, gy};
                    return false;
                }
                break;  // inconsistent grazing; fall through to clamp
            }
            const bool inner_first = hit_in && (!hit_out || f_in < f_out);
            const double f = inner_first ? f_in : f_out;
            const double rho = inner_first ? R1 : R2;
            const double cx = fx + f * ddx, cy = fy + f * ddy;
            done += f * (1.0 - done);
            if (absorbed_at(cx, cy, inner_first)) {
                frac = done;
                return true;
            }
            reflect_across_circle_normal(cx, cy, 0.0, 0.0, rho, gx, gy);
            fx = cx;
            fy = cy;
        }
        double r = std::sqrt(gx * gx + gy * gy);
        if (r >= R2) {
            const double s = (R2 * (1.0 - 1e-12)) / r;
            gx *= s;
            gy *= s;
            r = R2 * (1.0 - 1e-12);
        }
        if (r <= R1) {
            const double s = (R1 * (1.0 + 1e-12)) / std::max(r, 1e-300);
            gx *= s;
            gy *= s;
        }
        p = {gx, gy};
        return false;
    }
};

struct RectangleGeo {
    using Point = Vec2;
    double a, b;
    double win_lo = 0.0, win_hi = 0.0;  // absorbing span on the top edge
    bool absorb_all = false;            // whole boundary absorbs
    bool absorb_none = false;

    bool step(Point& p, double dx, double dy, double& frac) const {
        double fx = p.x, fy = p.y, gx = p.x + dx, gy = p.y + dy;
        double done = 0.0;
        for (int bounce = 0; bounce < 12; ++bounce) {
            if (gx > 0.0 && gx < a && gy > 0.0 && gy < b) {
                p = {gx, gy};
                return false;
            }
            const double ddx = gx - fx, ddy = gy - fy;
            double f = 2.0;
            int wall = -1;  // 0:x=0 1:x=a 2:y=0 3:y=b
            if (ddx < 0.0) {
                const double t = (0.0 - fx) / ddx;
                if (t > kMinHit && t <= 1.0 && t < f) { f = t; wall = 0; }
            }
            if (ddx > 0.0) {
                const double t = (a - fx) / ddx;
                if (t > kMinHit && t <= 1.0 && t < f) { f = t; wall = 1; }
            }
            if (ddy < 0.0) {
                const double t = (0.0 - fy) / ddy;
                if (t > kMinHit && t <= 1.0 && t < f) { f = t; wall = 2; }
            }
            if (ddy > 0.0) {
                const double t = (b - fy) / ddy;
                if (t > kMinHit && t <= 1.0 && t < f) { f = t; wall = 3; }
            }
            if (wall < 0) break;
            const double cx = fx + f * ddx, cy = fy + f * ddy;
            done += f * (1.0 - done);
            const bool absorbed =
                !absorb_none &&
                (absorb_all || (wall == 3 && cx >= win_lo && cx <= win_hi));
            if (absorbed) {
                frac = done;
                return true;
            }
            switch (wall) {
                case 0: gx = -gx; break;
                case 1: gx = 2.0 * a - gx; break;
                case 2: gy = -gy; break;
                case 3: gy = 2.0 * b - gy; break;
            }
            fx = cx;
            fy = cy;
        }
        p = {std::fmin(std::fmax(gx, 1e-12), a - 1e-12),
             std::fmin(std::fmax(gy, 1e-12), b - 1e-12)};
        return false;
    }
};

struct TangentCirclesGeo {
    using Point = Vec2;
    double R, d;
    double ro, ri;        // outer/inner radii
    double cox, cix;      // centers on the x axis
    double cutoff = 0.0;  // absorbing arclength from the cusp along each branch
    bool absorb_all = false;
    bool absorb_none = false;

    bool absorbed_at(double cx, double cy, bool inner) const {
        if (absorb_none) return false;
        if (absorb_all) return true;
        if (inner) {
            const double phi = std::atan2(cy, cx - cix);
            return ri * (kPi - std::abs(phi)) < cutoff;
        }
        const double phi = std::atan2(cy, cx - cox);
        return ro * (kPi - std::abs(phi)) < cutoff;
    }

    bool step(Point& p, double dx, double dy, double& frac) const {
        double fx = p.x, fy = p.y, gx = p.x + dx, gy = p.y + dy;
        double done = 0.0;
        for (int bounce = 0; bounce < 12; ++bounce) {
            const double ddx = gx - fx, ddy = gy - fy;
            const double seg = std::sqrt(ddx * ddx + ddy * ddy);
            const double qox = gx - cox, qiy = gy;
            const double qout2 = qox * qox + qiy * qiy;
            const double pix = fx - cix;
            const double pin2 = pix * pix + fy * fy;
            const double inner_reach = ri + seg;
            const bool inner_possible = pin2 < inner_reach * inner_reach;
            if (qout2 < ro * ro && !inner_possible) {
                p = {gx, gy};
                return false;
            }
            double f_out = 2.0, f_in = 2.0;
            const bool hit_out = first_circle_hit(fx, fy, ddx, ddy, cox, 0.0, ro, f_out);
            const bool hit_in =
                inner_possible && first_circle_hit(fx, fy, ddx, ddy, cix, 0.0, ri, f_in);
            if (!hit_out && !hit_in) {
                const double gix = gx - cix;
                if (qout2 < ro * ro && gix * gix + gy * gy > ri * ri) {
                    p = {gx, gy};
                    return false;
                }
                break;
            }
            const bool inner_first = hit_in && (!hit_out || f_in < f_out);
            const double f = inner_first ? f_in : f_out;
            const double cx = fx + f * ddx, cy = fy + f * ddy;
            done += f * (1.0 - done);
            if (absorbed_at(cx, cy, inner_first)) {
                frac = done;
                return true;
            }
            if (inner_first)
                reflect_across_circle_normal(cx, cy, cix, 0.0, ri, gx, gy);
            else
                reflect_across_circle_normal(cx, cy, cox, 0.0, ro, gx, gy);
            fx = cx;
            fy = cy;
        }
        p = {fx, fy};  // settle on the last boundary contact
        return false;
    }
};

struct SphereGeo {
    using Point = Vec3;
    double R, delta, z_rim;
    bool absorb_all = true;
    bool absorb_none = false;
    double wc = kPi, weps = 0.0;

    bool step(Point& p, double d1, double d2, double& frac) const {
        const double invR = 1.0 / R;
        const double ux = p.x * invR, uy = p.y * invR, uz = p.z * invR;
        double e1x, e1y, e1z;
        if (ux * ux + uy * uy > 0.25) {
            const double n = 1.0 / std::sqrt(ux * ux + uy * uy);
            e1x = uy * n;
            e1y = -ux * n;
            e1z = 0.0;
        } else {
            const double n = 1.0 / std::sqrt(uz * uz + uy * uy);
            e1x = 0.0;
            e1y = uz * n;
            e1z = -uy * n;
        }
        const double e2x = uy * e1z - uz * e1y;
        const double e2y = uz * e1x - ux * e1z;
        const double e2z = ux * e1y - uy * e1x;
        double qx = p.x + d1 * e1x + d2 * e2x;
        double qy = p.y + d1 * e1y + d2 * e2y;
        double qz = p.z + d1 * e1z + d2 * e2z;
        const double s = R / std::sqrt(qx * qx + qy * qy + qz * qz);
        qx *= s;
        qy *= s;
        qz *= s;
        if (qz <= z_rim) {
            p = {qx, qy, qz};
            return false;
        }
        // crossed the rim
        const double f = (z_rim - p.z) / (qz - p.z);
        bool absorbed = !absorb_none && absorb_all;
        if (!absorb_none && !absorb_all) {
            const double cx = p.x + f * (qx - p.x), cy = p.y + f * (qy - p.y);
            absorbed = std::abs(wrap_to_pi(std::atan2(cy, cx) - wc)) < weps;
        }
        if (absorbed) {
            frac = f;
            return true;
        }
        // specular reflection in the (theta, phi) chart
        const double theta_q = std::acos(std::fmin(1.0, std::fmax(-1.0, qz / R)));
        double theta_r = 2.0 * delta - theta_q;
        if (theta_r > kPi) theta_r = kPi;
        const double rxy = std::sqrt(qx * qx + qy * qy);
        if (rxy > 0.0) {
            const double sc = R * std::sin(theta_r) / rxy;
            p = {qx * sc, qy * sc, R * std::cos(theta_r)};
        } else {
            p = {R * std::sin(theta_r), 0.0, R * std::cos(theta_r)};
        }
        return false;
    }
};

// ---------------------------------------------------------------------------
// Start sampling
// ---------------------------------------------------------------------------

struct StartSampler {
    const StartSpec* spec;

    template <typename Geo>
    typename Geo::Point sample(const Geo& geo, Xoshiro256pp& rng) const;
};

Vec2 sample_start_planar(const geom::PlanarDomain& domain, const StartSpec& start,
                         Xoshiro256pp& rng) {
    using K = StartSpec::Kind;
    if (start.kind == K::Point) return {start.x, start.y};
    const int cells = start.kind == K::UniformCell ? start.cell_count : 1;
    const int cell = start.kind == K::UniformCell ? start.cell_index : 0;
    if (cell < 0 || cell >= cells) throw std::invalid_argument("start: bad cell index");
    return std::visit(
        [&](const auto& s) -> Vec2 {
            using T = std::decay_t<decltype(s)>;
            const double u = (cell + rng.uniform01()) / cells;
            if constexpr (std::is_same_v<T, geom::Disk>) {
                const double r = s.R * std::sqrt(u);
                const double phi = kTwoPi * rng.uniform01();
                return {r * std::cos(phi), r * std::sin(phi)};
            } else if constexpr (std::is_same_v<T, geom::Annulus>) {
                const double r =
                    std::sqrt(s.R1 * s.R1 + (s.R2 * s.R2 - s.R1 * s.R1) * u);
                const double phi = kTwoPi * rng.uniform01();
                return {r * std::cos(phi), r * std::sin(phi)};
            } else if constexpr (std::is_same_v<T, geom::Rectangle>) {
                return {s.a * u, s.b * rng.uniform01()};
            } else {
                if (cells != 1)
                    throw std::invalid_argument(
                        "start: equal-area cells not supported on tangent circles");
                // rejection from the outer circle's bounding box
                for (int k = 0; k < 100000; ++k) {
                    const double x = 2.0 * s.R * rng.uniform01();
                    const double y = s.R * (2.0 * rng.uniform01() - 1.0);
                    const double ox = x - s.R, ix = x - s.d * s.R;
                    if (ox * ox + y * y < s.R * s.R &&
                        ix * ix + y * y > s.d * s.R * s.d * s.R)
                        return {x, y};
                }
                throw std::runtime_error("start: rejection sampling failed");
            }
        },
        domain.shape());
}

Vec3 sample_start_sphere(const geom::DecapitatedSphere& s, const StartSpec& start,
                         Xoshiro256pp& rng) {
    using K = StartSpec::Kind;
    if (start.kind == K::Point) {
        const double theta = start.x, phi = start.y;
        return {s.R * std::sin(theta) * std::cos(phi), s.R * std::sin(theta) * std::sin(phi),
                s.R * std::cos(theta)};
    }
    const int cells = start.kind == K::UniformCell ? start.cell_count : 1;
    const int cell = start.kind == K::UniformCell ? start.cell_index : 0;
    if (cell < 0 || cell >= cells) throw std::invalid_argument("start: bad cell index");
    const double z_rim = s.R * std::cos(s.delta);
    const double u = (cell + rng.uniform01()) / cells;
    const double z = -s.R + (z_rim + s.R) * u;  // area element is uniform in z
    const double r = std::sqrt(std::fmax(0.0, s.R * s.R - z * z));
    const double phi = kTwoPi * rng.uniform01();
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// ---------------------------------------------------------------------------
// Path driver
// ---------------------------------------------------------------------------

struct ChunkAcc {
    double sum = 0.0;
    double sum2 = 0.0;
    long absorbed = 0;
    long censored = 0;
};

template <typename Geo, typename StartFn, typename LocalDtFn>
McEstimate run_paths(const Geo& geo, const McConfig& cfg, double D, const StartFn& start_fn,
                     const LocalDtFn& local_dt) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("McConfig: dt must be positive");
    if (cfg.n_paths < 100) throw std::invalid_argument("McConfig: n_paths must be >= 100");
    if (cfg.max_steps <= 0) throw std::invalid_argument("McConfig: max_steps must be positive");
    if (!(D > 0.0)) throw std::invalid_argument("simulate: D must be positive");

    const long chunk = 4096;
    const long n_chunks = (cfg.n_paths + chunk - 1) / chunk;
    std::vector<ChunkAcc> accs(static_cast<size_t>(n_chunks));
    std::atomic<long> next_chunk{0};

    auto worker = [&]() {
        long k;
        while ((k = next_chunk.fetch_add(1)) < n_chunks) {
            ChunkAcc acc;
            const long lo = k * chunk;
            const long hi = std::min<long>(cfg.n_paths, lo + chunk);
            for (long path = lo; path < hi; ++path) {
                Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(path));
                auto p = start_fn(rng);
                double tau = 0.0;
                bool absorbed = false;
                for (long s = 0; s < cfg.max_steps; ++s) {
                    const double dtl = local_dt(p);
                    const double sig = std::sqrt(2.0 * D * dtl);
                    double n1, n2;
                    rng.normal_pair(n1, n2);
                    double frac;
                    if (geo.step(p, sig * n1, sig * n2, frac)) {
                        tau += dtl * frac;
                        absorbed = true;
                        break;
                    }
                    tau += dtl;
                }
                if (absorbed) {
                    acc.sum += tau;
                    acc.sum2 += tau * tau;
                    ++acc.absorbed;
                } else {
                    ++acc.censored;
                }
            }
            accs[static_cast<size_t>(k)] = acc;
        }
    };

    int n_threads = cfg.n_threads > 0 ? cfg.n_threads
                                      : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads > 1) {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    // deterministic merge in chunk order
    double sum = 0.0, sum2 = 0.0;
    long absorbed = 0, censored = 0;
    for (const auto& acc : accs) {
        sum += acc.sum;
        sum2 += acc.sum2;
        absorbed += acc.absorbed;
        censored += acc.censored;
    }

    McEstimate est;
    est.n_absorbed = absorbed;
    est.n_censored = censored;
    est.dt_used = cfg.dt;
    if (absorbed > 0) {
        est.mean = sum / static_cast<double>(absorbed);
        if (absorbed > 1) {
            const double var =
                (sum2 - sum * sum / static_cast<double>(absorbed)) /
                static_cast<double>(absorbed - 1);
            est.std_error = std::sqrt(std::fmax(var, 0.0) / static_cast<double>(absorbed));
        }
    }
    const double frac_censored =
        static_cast<double>(censored) / static_cast<double>(cfg.n_paths);
    if (!cfg.reflect_everything && frac_censored >= 0.001) throw CensoringError(frac_censored);
    if (absorbed > 0 &&
        static_cast<double>(cfg.max_steps) * cfg.dt < 50.0 * est.mean)
        est.warnings.push_back("max_steps * dt below 50x the estimated MFPT");
    return est;
}

void check_resolution(double sigma, double scale, const std::string& what) {
    if (!(sigma < 0.2 * scale))
        throw ResolutionError("step length " + std::to_string(sigma) +
                              " is not small against the " + what + " scale " +
                              std::to_string(scale) + "; reduce dt");
}

}  // namespace

McEstimate simulate_planar(const geom::PlanarDomain& domain,
                           const std::optional<geom::Window>& window, const McConfig& config,
                           double D) {
    const double sigma = std::sqrt(2.0 * D * config.dt);
    std::optional<geom::WindowMeasures> wm;
    if (window) wm = geom::window_measures(*window, domain);

    return std::visit(
        [&](const auto& s) -> McEstimate {
            using T = std::decay_t<decltype(s)>;
            auto start_fn = [&](Xoshiro256pp& rng) {
                return sample_start_planar(domain, config.start, rng);
            };
            const double dt = config.dt;
            auto fixed_dt = [dt](const Vec2&) { return dt; };
            if constexpr (std::is_same_v<T, geom::Disk>) {
                check_resolution(sigma, s.R, "disk");
                DiskGeo geo{s.R, s.R * s.R};
                geo.absorb_none = config.reflect_everything;
                if (window) {
                    geo.absorb_all = false;
                    geo.wc = window->center;
                    geo.weps = wm->angular;
                }
                return run_paths(geo, config, D, start_fn, fixed_dt);
            } else if constexpr (std::is_same_v<T, geom::Annulus>) {
                check_resolution(sigma, s.R2 - s.R1, "annulus gap");
                AnnulusGeo geo{s.R1, s.R2, s.R1 * s.R1, s.R2 * s.R2};
                geo.absorb_none = config.reflect_everything;
                if (window) {
                    geo.window_on_inner =
                        window->component == geom::BoundaryComponent::Inner;
                    geo.wc = window->center;
                    geo.weps = wm->angular;
                } else {
                    throw std::invalid_argument(
                        "simulate_planar: annulus requires a window (whole-boundary "
                        "absorption is ambiguous between the two circles)");
                }
                return run_paths(geo, config, D, start_fn, fixed_dt);
            } else if constexpr (std::is_same_v<T, geom::Rectangle>) {
                check_resolution(sigma, std::min(s.a, s.b), "rectangle");
                RectangleGeo geo{s.a, s.b};
                geo.absorb_none = config.reflect_everything;
                if (window) {
                    auto span = geom::rectangle_window_span(*window, s);
                    geo.win_lo = span.first;
                    geo.win_hi = span.second;
                } else {
                    geo.absorb_all = true;
                }
                return run_paths(geo, config, D, start_fn, fixed_dt);
            } else {
                check_resolution(sigma, s.R, "outer circle");
                TangentCirclesGeo geo{s.R,     s.d,     s.R,  s.d * s.R,
                                      s.R,     s.d * s.R};
                geo.absorb_none = config.reflect_everything;
                if (window) {
                    geo.cutoff = wm->arclength;
                } else {
                    geo.absorb_all = true;
                }
                if (config.adaptive_near_singularity) {
                    const double base = config.dt;
                    const double inv_scale2 = 1.0 / (s.R * s.R);
                    auto local = [base, inv_scale2](const Vec2& p) {
                        const double d2 = (p.x * p.x + p.y * p.y) * inv_scale2;
                        const double f = std::fmin(1.0, std::fmax(1e-4, d2));
                        return base * f;
                    };
                    return run_paths(geo, config, D, start_fn, local);
                }
                return run_paths(geo, config, D, start_fn, fixed_dt);
            }
        },
        domain.shape());
}

McEstimate simulate_sphere(const geom::SphericalDomain& domain,
                           const std::optional<geom::Window>& window, const McConfig& config,
                           double D) {
    const auto* s = std::get_if<geom::DecapitatedSphere>(&domain.shape());
    if (s == nullptr)
        throw std::invalid_argument("simulate_sphere: requires a decapitated sphere");
    const double sigma = std::sqrt(2.0 * D * config.dt);
    check_resolution(sigma, s->R, "sphere");

    SphereGeo geo{s->R, s->delta, s->R * std::cos(s->delta)};
    geo.absorb_none = config.reflect_everything;
    if (window) {
        const auto wm = geom::window_measures(*window, domain);
        geo.absorb_all = false;
        geo.wc = window->center;
        geo.weps = wm.angular;
    }
    auto start_fn = [&](Xoshiro256pp& rng) {
        return sample_start_sphere(*s, config.start, rng);
    };
    const double dt = config.dt;
    return run_paths(geo, config, D, start_fn, [dt](const Vec3&) { return dt; });
}

std::vector<SweepRow> sweep(const AnyDomain& domain, const geom::Window& window_prototype,
                            std::span<const double> eps_values, const McConfig& config,
                            double D) {
    if (eps_values.size() < 3)
        throw std::invalid_argument("sweep: needs at least 3 eps values");
    for (size_t i = 1; i < eps_values.size(); ++i)
        if (!(eps_values[i] < eps_values[i - 1]))
            throw std::invalid_argument("sweep: eps values must be strictly decreasing");

    std::vector<SweepRow> rows;
    rows.reserve(eps_values.size());
    for (size_t i = 0; i < eps_values.size(); ++i) {
        geom::Window w = window_prototype;
        w.half_width = eps_values[i];
        McConfig cfg = config;
        std::uint64_t mix = config.seed ^ (0xA24BAED4963EE407ULL * (i + 1));
        cfg.seed = splitmix64(mix);
        McEstimate est = std::visit(
            [&](const auto& dom) -> McEstimate {
                using T = std::decay_t<decltype(dom)>;
                if constexpr (std::is_same_v<T, geom::PlanarDomain>)
                    return simulate_planar(dom, w, cfg, D);
                else
                    return simulate_sphere(dom, w, cfg, D);
            },
            domain);
        rows.push_back({eps_values[i], est});
    }
    return rows;
}

}  // namespace nescape::mc
