// Times the grid kernels in serial and OpenMP mode and reports the
// speedup. The serial path is the reference: each benchmark also prints
// the maximum deviation between the two modes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "symplab/calculus.hpp"
#include "symplab/displacement.hpp"
#include "symplab/isotopy.hpp"
#include "symplab/norms.hpp"
#include "symplab/parallel.hpp"
#include "symplab/random_fields.hpp"

using namespace symplab;

namespace {

double seconds(const std::function<void()>& body, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

struct Case {
    std::string name;
    std::function<double()> run; // returns a result digest
};

void bench(const Case& c, int reps) {
    exec::set_default_mode(exec::Mode::serial);
    const double ref = c.run();
    const double ts = seconds([&] { (void)c.run(); }, reps);

    exec::set_default_mode(exec::Mode::openmp);
    const double par = c.run();
    const double tp = seconds([&] { (void)c.run(); }, reps);

    std::printf("%-24s serial %8.3f ms   openmp %8.3f ms   x%.2f   "
                "|diff| %.3g\n",
                c.name.c_str(), 1e3 * ts, 1e3 * tp, ts / tp,
                std::abs(ref - par));
    exec::set_default_mode(exec::Mode::serial);
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 256;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    const GridSpec g{n, n};
    FieldGen gen(7);

    const VectorField X = gen.symplectic_field(g, 4, 1.0, 4.0);
    const OneForm th = gen.closed_form(g, 4, 0.5, 0.5);
    const ScalarField H = gen.scalar(g, 4, 0.1);
    const Isotopy iso =
        integrate_flow(gen.generator_path(g, 9, 1, 2, 0.1, 0.3), 1);
    const DisplacementField phi = iso.time_one_map();
    const DisplacementField phi_inv = invert_map(phi);
    const NormContext flat = NormContext::flat(g);

    ScalarField g11(g, 1.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            g11.at(i, j) += 0.3 * std::cos(6.283185307179586 * g.y(j));
    const NormContext curved = NormContext::with_metric(MetricSpec::fields(
        g11, ScalarField(g, 0.0), ScalarField(g, 1.0), "stretch-y"));

    Case cases[] = {
        {"pullback_oneform",
         [&] { return max_abs(pullback_oneform(th, phi)); }},
        {"pushforward",
         [&] { return max_abs(pushforward(X, phi, phi_inv)); }},
        {"compose_maps",
         [&] { return max_abs(compose_maps(phi, phi).dx); }},
        {"invert_map", [&] { return max_abs(invert_map(phi).dx); }},
        {"integrate_flow",
         [&] {
             GeneratorPath p;
             p.samples.assign(9, X);
             return max_abs(integrate_flow(p, 1).time_one_map().dx);
         }},
        {"symp_norm flat", [&] { return symp_norm(X, flat).value; }},
        {"symp_norm curved", [&] { return symp_norm(X, curved).value; }},
        {"project_symplectic",
         [&] { return max_abs(project_symplectic(X).vx); }},
    };

    std::printf("grid %dx%d, %d reps\n", n, n, reps);
    for (const Case& c : cases) bench(c, reps);
    return 0;
}
