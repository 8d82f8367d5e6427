#include "fdbec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace fdbec {

namespace {

// Index-addressed worker pool; each task writes only its own slot, so the
// assembled result is independent of scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& task) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) task(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace

std::vector<DeviationRow> sweep_deviation_vs_n(const std::vector<long>& n_values,
                                               PhysicalParams p0, int workers) {
    p0.kappa = 0.0;
    std::vector<DeviationRow> rows(n_values.size());
    parallel_for(static_cast<int>(n_values.size()), workers, [&](int i) {
        PhysicalParams p = p0;
        p.n_atoms = n_values[static_cast<size_t>(i)];
        DeviationRow& r = rows[static_cast<size_t>(i)];
        r.axis = static_cast<double>(p.n_atoms);
        try {
            const SteadyState ss = solve_beta(p);
            r.deviation = std::abs(std::abs(ss.beta) - std::abs(ss.beta_undeformed));
        } catch (const std::exception& e) {
            r.status = e.what();
        }
    });
    return rows;
}

std::vector<DeviationRow> sweep_deviation_vs_kappa(const std::vector<double>& kappa_values,
                                                   PhysicalParams p0, int workers) {
    std::vector<DeviationRow> rows(kappa_values.size());
    parallel_for(static_cast<int>(kappa_values.size()), workers, [&](int i) {
        PhysicalParams p = p0;
        p.kappa = kappa_values[static_cast<size_t>(i)];
        DeviationRow& r = rows[static_cast<size_t>(i)];
        r.axis = p.kappa;
        try {
            const SteadyState ss = solve_beta(p);
            r.deviation = std::abs(std::abs(ss.beta) - std::abs(ss.beta_undeformed));
        } catch (const std::exception& e) {
            r.status = e.what();
        }
    });
    return rows;
}

namespace {

SweepPoint spectrum_point(const PhysicalParams& p, const std::vector<double>& grid,
                          LinearizationMode mode) {
    SweepPoint pt;
    pt.params = p;
    try {
        pt.steady = solve_beta(p);
        pt.spectrum = spectrum_S(grid, pt.steady, p, mode);
    } catch (const std::exception& e) {
        pt.status = e.what();
    }
    return pt;
}

} // namespace

std::vector<SweepPoint> sweep_spectrum_vs_n(const std::vector<long>& n_values,
                                            const std::vector<double>& grid,
                                            PhysicalParams p0, LinearizationMode mode,
                                            int workers) {
    p0.kappa = 0.0;
    std::vector<SweepPoint> pts(n_values.size());
    parallel_for(static_cast<int>(n_values.size()), workers, [&](int i) {
        PhysicalParams p = p0;
        p.n_atoms = n_values[static_cast<size_t>(i)];
        pts[static_cast<size_t>(i)] = spectrum_point(p, grid, mode);
    });
    return pts;
}

std::vector<SweepPoint> sweep_spectrum_vs_kappa(const std::vector<double>& kappa_values,
                                                const std::vector<double>& grid,
                                                PhysicalParams p0, LinearizationMode mode,
                                                int workers) {
    std::vector<SweepPoint> pts(kappa_values.size());
    parallel_for(static_cast<int>(kappa_values.size()), workers, [&](int i) {
        PhysicalParams p = p0;
        p.kappa = kappa_values[static_cast<size_t>(i)];
        pts[static_cast<size_t>(i)] = spectrum_point(p, grid, mode);
    });
    return pts;
}

double max_spectrum_value(const SpectrumResult& r) {
    double m = 0.0;
    for (double s : r.s_values) m = std::max(m, s);
    return m;
}

std::vector<long> log_spaced_atoms(long lo, long hi, int count) {
    std::vector<long> ns;
    for (int i = 0; i < count; ++i) {
        const double x = std::log10(static_cast<double>(lo)) +
                         (std::log10(static_cast<double>(hi)) -
                          std::log10(static_cast<double>(lo))) *
                             i / (count - 1);
        ns.push_back(std::lround(std::pow(10.0, x)));
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return v;
}

} // namespace fdbec
