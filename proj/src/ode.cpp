#include "sgi/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgi/errors.hpp"

namespace sgi::ode {

namespace {

// Dormand & Prince (1980) coefficients with the Shampine dense output.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

void check_finite(const std::vector<double>& v, double t) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            std::ostringstream os;
            os << "right-hand side is not finite at t = " << t;
            throw Error(Errc::NonFiniteDerivative, os.str());
        }
    }
}

}  // namespace

void IntegratorOptions::validate() const {
    if (!(rel_tol > 0.0 && abs_tol > 0.0))
        throw Error(Errc::InvalidArgument, "integrator tolerances must be positive");
    if (!(max_step > 0.0)) throw Error(Errc::InvalidArgument, "max_step must be positive");
    if (initial_step < 0.0) throw Error(Errc::InvalidArgument, "initial_step must be non-negative");
    if (max_steps == 0) throw Error(Errc::InvalidArgument, "max_steps must be positive");
}

Solution integrate(const Rhs& rhs, std::vector<double> y0, double t0, double t1,
                   const std::vector<double>& sample_times, const IntegratorOptions& opt) {
    opt.validate();
    if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1))
        throw Error(Errc::InvalidArgument, "integration span must be finite and increasing");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < t0 || sample_times[i] > t1 || (i > 0 && sample_times[i] < sample_times[i - 1]))
            throw Error(Errc::InvalidArgument, "sample times must be sorted and inside the span");
    }

    const std::size_t n = y0.size();
    Solution sol;
    sol.times.reserve(sample_times.size());
    sol.states.reserve(sample_times.size());
    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] == t0) {
        sol.times.push_back(t0);
        sol.states.push_back(y0);
        ++next;
    }
    if (t1 == t0) {
        sol.final_state = y0;
        return sol;
    }

    std::vector<double> y = std::move(y0), y1(n), yt(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n),
                        k7(n), r2(n), r3(n), r4(n), r5(n), err(n);
    auto f = [&](double t, const std::vector<double>& s, std::vector<double>& out) {
        rhs(t, s.data(), out.data());
        ++sol.rhs_evaluations;
        check_finite(out, t);
    };
    auto scale = [&](double a, double b) {
        return opt.abs_tol + opt.rel_tol * std::max(std::abs(a), std::abs(b));
    };

    double t = t0;
    f(t, y, k1);

    double h = opt.initial_step;
    if (h == 0.0) {
        // Starting step from the size of y and f(y) (Hairer, Norsett & Wanner II.4).
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sk = scale(y[i], y[i]);
            dnf += (k1[i] / sk) * (k1[i] / sk);
            dny += (y[i] / sk) * (y[i] / sk);
        }
        double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1.0e-6 : std::sqrt(dny / dnf) * 0.01;
        h0 = std::min({h0, opt.max_step, t1 - t0});
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h0 * k1[i];
        f(t + h0, yt, k2);
        double der2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sk = scale(y[i], y[i]);
            der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
        }
        der2 = std::sqrt(der2 / static_cast<double>(n)) / h0;
        const double der12 = std::max(std::abs(der2), std::sqrt(dnf / static_cast<double>(n)));
        const double h1 = der12 <= 1e-15 ? std::max(1.0e-6, h0 * 1e-3) : std::pow(0.01 / der12, 0.2);
        h = std::min({100.0 * h0, h1, opt.max_step, t1 - t0});
    }

    double facold = 1.0e-4;
    bool last_rejected = false;
    constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
    constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;

    while (t < t1) {
        if (sol.accepted_steps + sol.rejected_steps >= opt.max_steps)
            throw Error(Errc::StepSizeUnderflow, "maximum number of integrator steps exceeded");
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-300)) {
            std::ostringstream os;
            os << "step size underflow at t = " << t;
            throw Error(Errc::StepSizeUnderflow, os.str());
        }
        bool final_step = false;
        if (t + 1.01 * h >= t1) {
            h = t1 - t;
            final_step = true;
        }

        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, yt, k2);
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, yt, k3);
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, yt, k4);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, yt, k5);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double tph = final_step ? t1 : t + h;
        f(tph, yt, k6);
        for (std::size_t i = 0; i < n; ++i)
            y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        f(tph, y1, k7);

        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sk = scale(y[i], y1[i]);
            e += (err[i] / sk) * (err[i] / sk);
        }
        e = std::sqrt(e / static_cast<double>(n));

        // Lund PI step-size control.
        const double fac11 = std::pow(e, expo1);
        double fac = fac11 / std::pow(facold, beta);
        fac = std::max(facc2, std::min(facc1, fac / safe));
        double hnew = h / fac;

        if (e <= 1.0) {
            facold = std::max(e, 1.0e-4);
            ++sol.accepted_steps;
            for (std::size_t i = 0; i < n; ++i) {
                const double ydiff = y1[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                r2[i] = ydiff;
                r3[i] = bspl;
                r4[i] = ydiff - h * k7[i] - bspl;
                r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            while (next < sample_times.size() && sample_times[next] <= tph) {
                const double ts = sample_times[next];
                std::vector<double> ys(n);
                if (ts == tph) {
                    ys = y1;
                } else {
                    const double th = (ts - t) / h;
                    const double th1 = 1.0 - th;
                    for (std::size_t i = 0; i < n; ++i)
                        ys[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
                }
                sol.times.push_back(ts);
                sol.states.push_back(std::move(ys));
                ++next;
            }
            y.swap(y1);
            k1.swap(k7);
            t = tph;
            if (last_rejected) hnew = std::min(hnew, h);
            last_rejected = false;
            h = std::min(hnew, opt.max_step);
        } else {
            ++sol.rejected_steps;
            hnew = h / std::min(facc1, fac11 / safe);
            last_rejected = true;
            h = hnew;
        }
    }
    sol.final_state = y;
    return sol;
}

}  // namespace sgi::ode
