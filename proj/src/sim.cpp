#include "extraction/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "extraction/rng.hpp"

namespace extraction {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double draw_exp(Rng& rng, double lambda) {
    if (lambda <= 0.0) return kInf;
    return -std::log(rng.uniform()) / lambda;
}

enum class EventKind { Grid, JumpUp, JumpDown };

struct Event {
    double t = 0.0;
    double base = 0.0;  // X^0 - x0 after the event
    EventKind kind = EventKind::Grid;
    double jump = 0.0;  // signed jump size when kind is a jump
};

// Merged grid + exact-jump-time event stream for one path of the uncontrolled
// price, emitted with x0 = 0 so every probe can reuse it additively.
class EventStream {
public:
    EventStream(const ModelParams& p, const PathConfig& cfg, Rng rng)
        : p_(p), rng_(rng), dt_(cfg.dt), horizon_(cfg.horizon) {
        next_n_ = draw_exp(rng_, p.lambda_n);
        next_p_ = draw_exp(rng_, p.lambda_p);
    }

    bool next(Event& e) {
        if (t_ >= horizon_) return false;
        const double tg = std::min(t_ + dt_, horizon_);
        EventKind kind = EventKind::Grid;
        double te = tg;
        if (next_n_ < te) {
            te = next_n_;
            kind = EventKind::JumpDown;
        }
        if (next_p_ < te) {
            te = next_p_;
            kind = EventKind::JumpUp;
        }
        const double d = te - t_;
        if (d > 0.0)
            base_ += p_.mu * d + p_.sigma * std::sqrt(d) * rng_.normal();
        double jump = 0.0;
        if (kind == EventKind::JumpDown) {
            jump = -sample_jump(p_.mix_n, rng_.uniform(), rng_.uniform());
            next_n_ = te + draw_exp(rng_, p_.lambda_n);
        } else if (kind == EventKind::JumpUp) {
            jump = sample_jump(p_.mix_p, rng_.uniform(), rng_.uniform());
            next_p_ = te + draw_exp(rng_, p_.lambda_p);
        }
        base_ += jump;
        t_ = te;
        e = {t_, base_, kind, jump};
        return true;
    }

private:
    const ModelParams& p_;
    Rng rng_;
    double dt_, horizon_;
    double t_ = 0.0, base_ = 0.0;
    double next_n_ = kInf, next_p_ = kInf;
};

// Runs fn(path_index) over [0, paths), split across threads by contiguous
// ranges. fn must only write to per-path slots, keeping results order-exact.
template <class Fn>
void for_each_path(long paths, int threads, Fn fn) {
    if (threads <= 1) {
        for (long i = 0; i < paths; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (paths + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(paths, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([=] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

SimEstimate reduce(const std::vector<double>& per_path, long truncated,
                   const PathConfig& cfg) {
    SimEstimate est;
    est.paths = static_cast<long>(per_path.size());
    est.config = cfg;
    double sum = 0.0;
    for (double v : per_path) sum += v;
    est.mean = sum / est.paths;
    double ss = 0.0;
    for (double v : per_path) ss += (v - est.mean) * (v - est.mean);
    est.stderr_ = est.paths > 1 ? std::sqrt(ss / (est.paths - 1) / est.paths) : 0.0;
    est.truncated_fraction = static_cast<double>(truncated) / est.paths;
    return est;
}

}  // namespace

PathConfig default_config(const ModelParams& p, std::uint64_t seed, long paths) {
    PathConfig cfg;
    cfg.dt = 1e-3 / p.rho;
    cfg.horizon = std::log(1e9) / p.rho;
    cfg.seed = seed;
    cfg.paths = paths;
    return cfg;
}

PathRecord simulate_path(const ModelParams& p, double x0, const PathConfig& cfg,
                         std::uint64_t path_index) {
    PathRecord rec;
    rec.times.push_back(0.0);
    rec.values.push_back(x0);
    EventStream es(p, cfg, path_rng(cfg.seed, path_index));
    Event ev;
    while (es.next(ev)) {
        rec.times.push_back(ev.t);
        rec.values.push_back(x0 + ev.base);
        if (ev.kind != EventKind::Grid) {
            rec.jump_times.push_back(ev.t);
            rec.jump_sizes.push_back(ev.jump);
        }
    }
    return rec;
}

std::vector<SimEstimate> mc_value_multi(const ModelParams& p,
                                        const std::vector<ValueProbe>& probes,
                                        const PathConfig& cfg) {
    validate(p);
    const std::size_t ne = probes.size();
    std::vector<std::vector<double>> results(ne, std::vector<double>(cfg.paths, 0.0));
    std::vector<std::vector<unsigned char>> trunc(ne,
                                                 std::vector<unsigned char>(cfg.paths, 0));

    for_each_path(cfg.paths, cfg.threads, [&](long i) {
        EventStream es(p, cfg, path_rng(cfg.seed, static_cast<std::uint64_t>(i)));
        std::vector<double> xi(ne, 0.0), profit(ne, 0.0);
        std::vector<unsigned char> done(ne, 0);
        std::size_t n_done = 0;

        // Initial lump at t = 0 at the unimpacted price x0.
        for (std::size_t e = 0; e < ne; ++e) {
            const ValueProbe& pr = probes[e];
            if (pr.y0 <= 0.0) {
                done[e] = 1;
                ++n_done;
                continue;
            }
            const double target =
                std::min(pr.y0, std::max(0.0, (pr.x0 - pr.b) / p.alpha));
            if (target > 0.0) {
                profit[e] = (pr.x0 - p.c) * target - 0.5 * p.alpha * target * target;
                xi[e] = target;
                if (xi[e] >= pr.y0) {
                    done[e] = 1;
                    ++n_done;
                }
            }
        }

        double B = 0.0;  // running max of the base path
        Event ev;
        while (n_done < ne && es.next(ev)) {
            if (ev.base <= B) continue;
            B = ev.base;
            const double disc = std::exp(-p.rho * ev.t);
            for (std::size_t e = 0; e < ne; ++e) {
                if (done[e]) continue;
                const ValueProbe& pr = probes[e];
                const double target =
                    std::min(pr.y0, std::max(0.0, (pr.x0 + B - pr.b) / p.alpha));
                if (target <= xi[e]) continue;
                const double d = target - xi[e];
                // Every sale is a lump at the pre-impact price (grid overshoots
                // included): exact revenue of the discretely observed strategy,
                // (price-c)d - alpha d^2/2 = (b-c)d + alpha d^2/2 when the sale
                // reflects the price back to b. Crediting only the pinned price
                // (b-c)d would leave an O(sigma^2 dt) downward bias per record.
                const double price = pr.x0 + ev.base - p.alpha * xi[e];
                profit[e] += disc * ((price - p.c) * d - 0.5 * p.alpha * d * d);
                xi[e] = target;
                if (xi[e] >= pr.y0) {
                    done[e] = 1;
                    ++n_done;
                }
            }
        }
        for (std::size_t e = 0; e < ne; ++e) {
            results[e][i] = profit[e];
            trunc[e][i] = probes[e].y0 > 0.0 && !done[e];
        }
    });

    std::vector<SimEstimate> out;
    for (std::size_t e = 0; e < ne; ++e) {
        long t = 0;
        for (unsigned char f : trunc[e]) t += f;
        out.push_back(reduce(results[e], t, cfg));
    }
    return out;
}

SimEstimate mc_value(const ModelParams& p, double x0, double y0, double b,
                     const PathConfig& cfg) {
    return mc_value_multi(p, {{x0, y0, b}}, cfg).front();
}

std::vector<StopEstimate> mc_stopping_multi(const ModelParams& p,
                                            const std::vector<double>& x0s, double bstar,
                                            const PathConfig& cfg) {
    validate(p);
    const std::size_t ne = x0s.size();
    std::vector<std::vector<double>> results(ne, std::vector<double>(cfg.paths, 0.0));
    std::vector<std::vector<unsigned char>> stopped(
        ne, std::vector<unsigned char>(cfg.paths, 0));
    std::vector<std::vector<unsigned char>> overshoot(
        ne, std::vector<unsigned char>(cfg.paths, 0));

    for_each_path(cfg.paths, cfg.threads, [&](long i) {
        EventStream es(p, cfg, path_rng(cfg.seed, static_cast<std::uint64_t>(i)));
        std::size_t n_done = 0;
        std::vector<unsigned char> done(ne, 0);
        for (std::size_t e = 0; e < ne; ++e)
            if (x0s[e] >= bstar) {  // immediate stop at tau = 0
                results[e][i] = x0s[e] - p.c;
                stopped[e][i] = 1;
                done[e] = 1;
                ++n_done;
            }
        double B = -kInf;
        Event ev;
        while (n_done < ne && es.next(ev)) {
            if (ev.base <= B) continue;
            B = ev.base;
            for (std::size_t e = 0; e < ne; ++e) {
                if (done[e]) continue;
                const double x = x0s[e] + ev.base;
                if (x < bstar) continue;
                results[e][i] = std::exp(-p.rho * ev.t) * (x - p.c);
                stopped[e][i] = 1;
                overshoot[e][i] = ev.kind == EventKind::JumpUp && x > bstar;
                done[e] = 1;
                ++n_done;
            }
        }
    });

    std::vector<StopEstimate> out;
    for (std::size_t e = 0; e < ne; ++e) {
        long t = 0, ov = 0;
        for (long i = 0; i < cfg.paths; ++i) {
            t += !stopped[e][i];
            ov += overshoot[e][i];
        }
        StopEstimate se;
        se.est = reduce(results[e], t, cfg);
        se.overshoot_fraction = static_cast<double>(ov) / cfg.paths;
        out.push_back(se);
    }
    return out;
}

StopEstimate mc_stopping(const ModelParams& p, double x0, double bstar,
                         const PathConfig& cfg) {
    return mc_stopping_multi(p, {x0}, bstar, cfg).front();
}

}  // namespace extraction
