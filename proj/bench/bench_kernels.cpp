// Times the OpenMP kernels against the serial reference on synthetic data
// and checks that both paths produce identical tables.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "whitney/actions.hpp"
#include "whitney/pullback.hpp"

using namespace whitney;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_of(const std::function<void()>& body) {
    auto t0 = Clock::now();
    body();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Polynomial random_poly(Rng& rng, std::size_t n, std::uint32_t deg) {
    Polynomial f(n);
    for (const auto& alpha : multi_indices_up_to(n, deg)) f.add_term(alpha, rng.next_rational(9, 5));
    return f;
}

PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t count) {
    std::vector<Point> pts;
    while (pts.size() < count) {
        Point p;
        for (std::size_t i = 0; i < n; ++i) p.push_back(rng.next_rational(50, 20));
        bool dup = false;
        for (const auto& q : pts)
            if (points_equal(q, p, Tolerance::exact_mode())) dup = true;
        if (!dup) pts.push_back(std::move(p));
    }
    return PointCloud(n, std::move(pts));
}

JetField random_field(Rng& rng, const PointCloud& X, std::uint32_t m) {
    JetField f(X, m);
    for (std::size_t p = 0; p < X.size(); ++p)
        for (std::size_t s = 0; s < f.basis().size(); ++s) f.set_at_slot(p, s, rng.next_rational(9, 5));
    return f;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-22s serial %8.3f ms   openmp %8.3f ms   speedup %5.2fx   identical %s\n", name,
                serial * 1e3, parallel * 1e3, serial / parallel, identical ? "yes" : "NO");
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    Rng rng(12345);

    {
        std::size_t n = 3;
        PointCloud X = random_cloud(rng, n, 512);
        Polynomial f = random_poly(rng, n, 5);
        JetField serial_out(X, 0), parallel_out(X, 0);
        double ts = seconds_of([&] { serial_out = jet_of_poly(f, X, 4, Exec::serial); });
        double tp = seconds_of([&] { parallel_out = jet_of_poly(f, X, 4, Exec::parallel); });
        report("jet_of_poly", ts, tp, compare_fields(serial_out, parallel_out, Tolerance::exact_mode()).equal);
    }

    {
        std::size_t n = 3;
        PointCloud X = random_cloud(rng, n, 512);
        JetField e = random_field(rng, X, 4), f = random_field(rng, X, 4);
        JetField a(X, 0), b(X, 0);
        double ts = seconds_of([&] { a = jet_mul(e, f, Exec::serial); });
        double tp = seconds_of([&] { b = jet_mul(e, f, Exec::parallel); });
        report("jet_mul", ts, tp, compare_fields(a, b, Tolerance::exact_mode()).equal);
    }

    {
        std::size_t n = 2, p = 2;
        PointCloud X = random_cloud(rng, n, 128);
        std::vector<Polynomial> comps;
        for (std::size_t j = 0; j < p; ++j) comps.push_back(random_poly(rng, n, 3));
        PolyMap phi(n, comps);
        PointCloud Y = image_cloud(phi, X, Tolerance::exact_mode());
        PullbackPlan plan = make_plan(phi, X, Y, Tolerance::exact_mode());
        JetField F = random_field(rng, Y, 4);
        JetField a(X, 0), b(X, 0);
        double ts = seconds_of([&] { a = pullback_multi(plan, F, 4, Exec::serial); });
        double tp = seconds_of([&] { b = pullback_multi(plan, F, 4, Exec::parallel); });
        report("pullback_multi", ts, tp, compare_fields(a, b, Tolerance::exact_mode()).equal);
        double tsc = seconds_of([&] { a = pullback_comb(plan, F, 4, Exec::serial); });
        double tpc = seconds_of([&] { b = pullback_comb(plan, F, 4, Exec::parallel); });
        report("pullback_comb", tsc, tpc, compare_fields(a, b, Tolerance::exact_mode()).equal);
    }

    {
        std::size_t n = 2;
        PointCloud X = random_cloud(rng, n, 96);
        JetField f = random_field(rng, X, 3);
        std::vector<std::size_t> K;
        for (std::size_t i = 0; i < X.size(); ++i) K.push_back(i);
        WhitneyReport a, b;
        double ts = seconds_of([&] { a = whitney_seminorm(f, K, 3, Exec::serial); });
        double tp = seconds_of([&] { b = whitney_seminorm(f, K, 3, Exec::parallel); });
        report("whitney_seminorm", ts, tp,
               a.total == b.total && a.arg_x == b.arg_x && a.arg_y == b.arg_y && a.arg_alpha == b.arg_alpha);
    }

    return 0;
}
