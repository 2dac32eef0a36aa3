#include "twinfocal/errors.hpp"
#include "twinfocal/parallel.hpp"
#include "twinfocal/scansim.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

using namespace twinfocal;

namespace {

MicroscopeConfig with_w0(double w0)
{
    MicroscopeConfig c = reference_config();
    c.w0 = w0;
    return c;
}

ScanPlan line(double half, std::size_t n, Instrument i = Instrument::TwinPhoton)
{
    return ScanPlan{LinePlan{{1.0, 0.0}, half, n}, i};
}

double two_point_dip(const MicroscopeConfig& cfg, Instrument i, double sep)
{
    const double half = 0.5 * sep + fwhm(i, cfg);
    return dip_contrast(scan(line(half, 1001, i), cfg, TwoPoint{sep}, {}, {}));
}

}  // namespace

TEST_CASE("plan validation and coordinates")
{
    CHECK_THROWS_AS(line(1e-6, 15).validate(), ConfigError);
    CHECK_THROWS_AS(line(0.0, 101).validate(), ConfigError);
    CHECK_THROWS_AS((ScanPlan{LinePlan{{1.0, 1.0}, 1e-6, 101}, Instrument::Confocal}.validate()), ConfigError);
    CHECK_THROWS_AS((ScanPlan{GridPlan{1e-6, 1e-6, 8, 32}, Instrument::Confocal}.validate()), ConfigError);

    const auto s = line(1e-6, 101).line_coordinates();
    CHECK(s.front() == -1e-6);
    CHECK(s.back() == 1e-6);
    CHECK(s[50] == 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(s[i] == -s[s.size() - 1 - i]);

    const auto g = ScanPlan{GridPlan{1e-6, 2e-6, 17, 16}, Instrument::TwinPhoton}.positions();
    REQUIRE(g.size() == 17 * 16);
    CHECK(g[0].x == -1e-6);
    CHECK(g[0].y == -2e-6);
    CHECK(g[1].y == -2e-6);
    CHECK(g[17].x == -1e-6);
    CHECK(g[8].x == 0.0);
}

TEST_CASE("parallel_for visits each index once")
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits)
        CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7)
                            throw NumericalError("boom");
                    }),
                    NumericalError);
}

TEST_CASE("delta line scans follow the closed-form PSFs")
{
    const MicroscopeConfig cfg = with_w0(8e-3);
    const ScanPlan plan = line(2.0 * airy_radius(cfg), 401);
    const ScanImage img = scan(plan, cfg, Delta{}, {}, {});
    const auto s = plan.line_coordinates();
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(img.values[i] == psf_twin(std::fabs(s[i]), cfg));

    for (Instrument ins : {Instrument::Widefield, Instrument::Confocal}) {
        const ScanImage inc = scan(line(plan.line_coordinates().back(), 401, ins), cfg, Delta{}, {}, {});
        const PsfModel psf(ins, cfg);
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(inc.values[i] == doctest::Approx(psf(std::fabs(s[i]))).epsilon(1e-14));
    }
}

TEST_CASE("symmetric samples give symmetric scans")
{
    const MicroscopeConfig cfg = with_w0(12e-3);
    for (const SampleTransmittance& sample : std::vector<SampleTransmittance>{TwoPoint{0.3e-6}, Slit{0.2e-6}}) {
        const ScanImage img = scan(line(0.6e-6, 61), cfg, sample, {}, {});
        for (std::size_t i = 0; i < img.values.size(); ++i)
            CHECK(img.values[i] == doctest::Approx(img.values[img.values.size() - 1 - i]).epsilon(1e-9));
    }
}

TEST_CASE("scan output does not depend on the thread count")
{
    const MicroscopeConfig cfg = with_w0(12e-3);
    const SampleTransmittance sample = Raster::centred(0.1e-6, 3, 3, {1.0, 0.0, 0.5, 0.0, 1.0, 0.0, 0.3, 0.0, 1.0});
    const ScanPlan plan{GridPlan{0.4e-6, 0.4e-6, 16, 16}, Instrument::TwinPhoton};
    ::setenv("TWINFOCAL_THREADS", "1", 1);
    CHECK(thread_count() == 1);
    const ScanImage a = scan(plan, cfg, sample, {}, {});
    ::setenv("TWINFOCAL_THREADS", "4", 1);
    CHECK(thread_count() == 4);
    const ScanImage b = scan(plan, cfg, sample, {}, {});
    const ScanImage c = scan(plan, cfg, sample, {}, {});
    ::unsetenv("TWINFOCAL_THREADS");
    CHECK(a.values == b.values);
    CHECK(b.values == c.values);
    CHECK(a.peak_value_raw == b.peak_value_raw);
}

TEST_CASE("well separated points give two peaks")
{
    const MicroscopeConfig cfg = with_w0(8e-3);
    const ScanImage img = scan(line(1e-6, 401), cfg, TwoPoint{1e-6}, {}, {});
    CHECK(img.values[200] < 0.1);
    CHECK(dip_contrast(img) > 0.9);
}

TEST_CASE("uniform raster gives a flat profile")
{
    const MicroscopeConfig cfg = with_w0(8e-3);
    const std::size_t n = 60;
    const SampleTransmittance flat = Raster::centred(0.1e-6, n, n, std::vector<std::complex<double>>(n * n, 1.0));
    const ScanImage img = scan(line(0.5e-6, 21), cfg, flat, {}, {});
    for (double v : img.values)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("dip contrast limits")
{
    const MicroscopeConfig cfg = with_w0(1e-3);
    for (Instrument ins : {Instrument::Widefield, Instrument::Confocal, Instrument::TwinPhoton}) {
        CHECK(two_point_dip(cfg, ins, 0.0) == 0.0);
        CHECK(two_point_dip(cfg, ins, 20.0 * fwhm(ins, cfg)) > 0.99);
    }
    // Incoherent images dip once the points are one FWHM apart.
    CHECK(two_point_dip(cfg, Instrument::Widefield, fwhm(Instrument::Widefield, cfg)) > 0.0);
    CHECK(two_point_dip(cfg, Instrument::Confocal, fwhm(Instrument::Confocal, cfg)) > 0.0);
    // The twin image adds amplitudes; at one FWHM the sum is still single peaked.
    CHECK(two_point_dip(cfg, Instrument::TwinPhoton, fwhm(Instrument::TwinPhoton, cfg)) == 0.0);
    CHECK(two_point_dip(cfg, Instrument::TwinPhoton, 1.5 * fwhm(Instrument::TwinPhoton, cfg)) > 0.0);
}

TEST_CASE("dip contrast needs a centred line scan")
{
    const MicroscopeConfig cfg = reference_config();
    CHECK_THROWS_AS(dip_contrast(scan(line(1e-6, 100), cfg, Delta{}, {}, {})), ConfigError);
    const ScanPlan grid{GridPlan{1e-6, 1e-6, 16, 16}, Instrument::Confocal};
    CHECK_THROWS_AS(dip_contrast(scan(grid, cfg, Delta{}, {}, {})), ConfigError);
}

TEST_CASE("two points 0.15 um apart at 12 mm pump waist")
{
    const MicroscopeConfig cfg = with_w0(12e-3);
    CHECK(two_point_dip(cfg, Instrument::TwinPhoton, 0.15e-6) > 0.01);
    CHECK(two_point_dip(cfg, Instrument::Confocal, 0.15e-6) == 0.0);
}

TEST_CASE("resolution ordering")
{
    for (double w0 : {1e-3, 12e-3}) {
        const MicroscopeConfig cfg = with_w0(w0);
        const double tw = min_resolvable_separation(cfg, Instrument::TwinPhoton, 0.05, {}, {});
        const double cf = min_resolvable_separation(cfg, Instrument::Confocal, 0.05, {}, {});
        const double wf = min_resolvable_separation(cfg, Instrument::Widefield, 0.05, {}, {});
        CHECK(tw < cf);
        CHECK(cf < wf);
        CHECK(two_point_dip(cfg, Instrument::Confocal, cf) >= 0.05);
        CHECK(two_point_dip(cfg, Instrument::Confocal, 0.99 * cf) < 0.05);
    }
    const MicroscopeConfig cfg = reference_config();
    const double cf = min_resolvable_separation(cfg, Instrument::Confocal, 0.05, {}, {});
    CHECK(std::fabs(cf / fwhm(Instrument::Confocal, cfg) - 1.0) < 0.05);
    CHECK_THROWS_AS(min_resolvable_separation(cfg, Instrument::Confocal, 1.5, {}, {}), ConfigError);
}

TEST_CASE("an empty window yields a numerical error")
{
    DispersionModel d;
    d.n_o = [](double) { return 1.66; };
    d.n_e = [](double, double) { return 1.55; };
    d.psi = 0.5;
    d.L = 1e-3;
    const double omega = angular_frequency(702e-9);
    const TimingWindow outside{1e-12, crystal_constants(d, omega, omega)};
    CHECK_THROWS_AS(scan(line(1e-6, 101), reference_config(), Delta{}, {}, outside), NumericalError);
}
