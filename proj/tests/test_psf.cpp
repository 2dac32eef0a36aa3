#include "twinfocal/errors.hpp"
#include "twinfocal/psf.hpp"
#include "twinfocal/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace twinfocal;

namespace {

constexpr double pi = std::numbers::pi;

MicroscopeConfig with_w0(double w0)
{
    MicroscopeConfig c = reference_config();
    c.w0 = w0;
    return c;
}

// Half-max point by plain bisection on a callable that is monotone on [0, hi].
double half_point(const std::function<double(double)>& f, double hi)
{
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.5)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("pupil_ft for the hard aperture")
{
    const Pupil p = HardCircular{0.02};
    CHECK(pupil_ft(p, 0.0) == 1.0);
    CHECK(std::fabs(pupil_ft(p, 3.83171 / 0.02)) < 1e-5);
    CHECK(pupil_ft(p, 1.0 / 0.02) == specfun::airy_amp(1.0));
}

TEST_CASE("tabulated disk approximates the hard aperture")
{
    const double a = 0.02;
    TabulatedRadial t;
    for (int i = 0; i < 512; ++i) {
        t.radius.push_back(a * i / 511.0);
        t.amplitude.push_back(1.0);
    }
    const Pupil p = t;
    CHECK_NOTHROW(validate(p));
    CHECK(pupil_ft(p, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(pupil_ft(p, 1.61634 / a) - specfun::airy_amp(1.61634)) <= 1e-3);
    CHECK(std::fabs(pupil_ft(p, 3.83171 / a)) <= 1e-3);
}

TEST_CASE("pupil validation")
{
    CHECK_THROWS_AS(validate(Pupil{HardCircular{0.0}}), ConfigError);
    TabulatedRadial few{{0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(validate(Pupil{few}), ConfigError);
    TabulatedRadial bad;
    for (int i = 0; i < 10; ++i) {
        bad.radius.push_back(i);
        bad.amplitude.push_back(i == 4 ? 1.5 : 1.0);
    }
    CHECK_THROWS_AS(validate(Pupil{bad}), ConfigError);
}

TEST_CASE("closed forms at the default configuration")
{
    const MicroscopeConfig cfg = reference_config();
    const double R = airy_radius(cfg);
    CHECK(psf_widefield(0.0, cfg) == 1.0);
    CHECK(psf_confocal(0.0, cfg) == 1.0);
    CHECK(psf_twin(0.0, cfg) == 1.0);
    CHECK(std::fabs(psf_widefield(R, cfg)) < 1e-4);

    const double v = 2.0 * pi / cfg.lambda_o * cfg.a * 0.1e-6 / cfg.f;
    const double amp = specfun::airy_amp(v);
    CHECK(psf_widefield(0.1e-6, cfg) == doctest::Approx(amp * amp).epsilon(1e-14));
    CHECK(psf_confocal(0.1e-6, cfg) == doctest::Approx(std::pow(amp, 4)).epsilon(1e-14));
}

TEST_CASE("PSFs are bounded by one")
{
    const MicroscopeConfig cfg = reference_config();
    for (double y = 0.0; y <= 5e-6; y += 1.3e-9) {
        CHECK(psf_widefield(y, cfg) <= 1.0);
        CHECK(psf_confocal(y, cfg) <= 1.0);
        CHECK(psf_twin(y, cfg) <= 1.0);
        CHECK(psf_twin(y, cfg) >= 0.0);
    }
}

TEST_CASE("argument-doubling identity")
{
    MicroscopeConfig cfg = reference_config();
    cfg.unfocused_pump = true;
    for (double y = 0.0; y <= 2e-6; y += 0.917e-9) {
        const double twin = psf_twin(y, cfg);
        const double conf = psf_confocal(2.0 * y, cfg);
        CHECK(std::fabs(twin - conf) <= 1e-12 * std::fmax(std::fabs(conf), 1e-300));
    }
    CHECK(fwhm(Instrument::TwinPhoton, cfg) ==
          doctest::Approx(0.5 * fwhm(Instrument::Confocal, cfg)).epsilon(1e-7));
}

TEST_CASE("Gaussian factor only narrows")
{
    MicroscopeConfig bare = reference_config();
    bare.unfocused_pump = true;
    for (double w0 : {1e-3, 8e-3, 20e-3}) {
        const MicroscopeConfig cfg = with_w0(w0);
        for (double y = 1e-9; y <= 2e-6; y += 7.1e-9)
            CHECK(psf_twin(y, cfg) <= psf_twin(y, bare));
    }
}

TEST_CASE("fwhm against bisection oracles")
{
    const MicroscopeConfig cfg = reference_config();
    const double scale = cfg.lambda_o * cfg.f / (2.0 * pi * cfg.a);
    const double wf = fwhm(Instrument::Widefield, cfg);
    CHECK(wf == doctest::Approx(2.0 * specfun::kAiryHalfMaxIntensity * scale).epsilon(1e-7));
    CHECK(std::fabs(wf - 0.361e-6) <= 0.0005e-6);

    // Fourth power of the amplitude crosses 1/2 where amp^2 = 1/sqrt(2).
    const auto amp4 = [](double v) { return std::pow(specfun::airy_amp(v), 4); };
    const double v4 = half_point(amp4, 3.0);
    const double cf = fwhm(Instrument::Confocal, cfg);
    CHECK(cf == doctest::Approx(2.0 * v4 * scale).epsilon(1e-7));
    CHECK(std::fabs(cf - 0.260e-6) <= 0.001e-6);
    CHECK(cf / wf == doctest::Approx(0.72).epsilon(0.01 / 0.72));

    const double r0v = 1.3e-6;
    const auto gauss = [r0v](double y) { return std::exp(-y * y / (r0v * r0v)); };
    CHECK(fwhm(gauss, 4.0 * r0v) == doctest::Approx(2.0 * r0v * std::sqrt(std::log(2.0))).epsilon(1e-7));
}

TEST_CASE("fwhm of a sampled profile")
{
    const MicroscopeConfig cfg = reference_config();
    const RadialProfile p =
        sample_profile([&](double y) { return psf_widefield(y, cfg); }, 4.0 * airy_radius(cfg), 4001, "widefield");
    CHECK_NOTHROW(p.validate());
    CHECK(p.intensity.front() == 1.0);
    CHECK(fwhm(p) == doctest::Approx(fwhm(Instrument::Widefield, cfg)).epsilon(1e-5));
}

TEST_CASE("fwhm failures")
{
    CHECK_THROWS_AS(fwhm([](double) { return 1.0; }, 1.0), RangeError);
    RadialProfile bad{{0.0, 1.0}, {0.9, 0.1}, "bad"};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("twin FWHM narrows with pump waist and plateaus")
{
    double previous = INFINITY;
    for (double mm : {1.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0}) {
        const double w = fwhm(Instrument::TwinPhoton, with_w0(mm * 1e-3));
        CHECK(w <= previous);
        previous = w;
    }
    const double w1 = fwhm(Instrument::TwinPhoton, with_w0(1e-3));
    const double w2 = fwhm(Instrument::TwinPhoton, with_w0(2e-3));
    CHECK(std::fabs(w1 - w2) / w1 < 0.01);
    CHECK(fwhm(Instrument::TwinPhoton, with_w0(8e-3)) < w1);
}

TEST_CASE("width_reduction")
{
    CHECK(width_reduction(0.260e-6, 0.130e-6) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(std::fabs(width_reduction(0.361e-6, 0.260e-6) - 28.0) <= 0.5);
    CHECK(width_reduction(3.0, 3.0) == 0.0);
}

TEST_CASE("PsfModel matches the free functions")
{
    const MicroscopeConfig cfg = with_w0(8e-3);
    const PsfModel tw(Instrument::TwinPhoton, cfg);
    const PsfModel cf(Instrument::Confocal, cfg);
    for (double y = 0.0; y <= 1e-6; y += 3.3e-9) {
        CHECK(tw(y) == psf_twin(y, cfg));
        CHECK(cf(y) == psf_confocal(y, cfg));
    }
    CHECK_THROWS(tw(-1e-9));
    CHECK(std::string(to_string(Instrument::TwinPhoton)) == "twin");
}
