#include <algorithm>
#include <cmath>
#include <optional>

#include "pcc/dynamics.hpp"

namespace pcc {

const char* to_string(Termination t) {
    switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::PoleDetected: return "PoleDetected";
    case Termination::StepUnderflow: return "StepUnderflow";
    case Termination::MaxSteps: return "MaxSteps";
    }
    return "?";
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

using Vec = CVec;

Vec flatten(const PhaseState& s) {
    Vec y(s.coords);
    y.insert(y.end(), s.momenta.begin(), s.momenta.end());
    return y;
}

PhaseState unflatten(const Vec& y, Complex time) {
    std::size_t n = y.size() / 2;
    PhaseState s;
    s.coords.assign(y.begin(), y.begin() + n);
    s.momenta.assign(y.begin() + n, y.end());
    s.time = time;
    return s;
}

Vec flatten(const PhaseVelocity& v) {
    Vec y(v.coords);
    y.insert(y.end(), v.momenta.begin(), v.momenta.end());
    return y;
}

struct Rhs {
    const SystemDescriptor& sys;
    Complex t0, dt;
    int lattice_order, theta_order;
    std::optional<EllipticContext> cache;

    // d y / d s
    Vec operator()(double s, const Vec& y) {
        Complex time = t0 + s * dt;
        const EllipticContext* ctx = nullptr;
        if (sys.side == Side::Calogero && sys.equation == Equation::VI) {
            if (!cache || cache->tau() != time)
                cache.emplace(time, lattice_order, theta_order);
            ctx = &*cache;
        }
        Vec f = flatten(canonical_field(sys, unflatten(y, time), ctx));
        for (auto& z : f)
            z *= dt;
        return f;
    }
};

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out(y);
    for (std::size_t i = 0; i < y.size(); ++i) {
        Complex acc = 0.0;
        for (const auto& [c, k] : terms)
            acc += c * (*k)[i];
        out[i] += h * acc;
    }
    return out;
}

bool finite_and_bounded(const Vec& y, double bound) {
    for (Complex z : y)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > bound)
            return false;
    return true;
}

} // namespace

Trajectory integrate(const SystemDescriptor& sys, const PhaseState& initial, Complex t_end,
                     const IntegrateOptions& opt) {
    if (int(initial.coords.size()) != sys.rank || int(initial.momenta.size()) != sys.rank)
        throw Error(ErrorKind::InvalidArgument, "initial state does not match rank");
    if (!(opt.rel_tol > 0) || !(opt.abs_tol >= 0))
        throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");

    Trajectory tr;
    tr.system = sys;
    tr.t_start = initial.time;
    tr.t_end = t_end;
    tr.rel_tol = opt.rel_tol;
    tr.abs_tol = opt.abs_tol;

    Complex dt = t_end - initial.time;
    Rhs f{sys, initial.time, dt, opt.lattice_order, opt.theta_order, std::nullopt};
    Vec y = flatten(initial);

    auto record = [&](double s, const Vec& yv, const Vec& dyds) {
        Complex time = initial.time + s * dt;
        tr.samples.push_back(unflatten(yv, time));
        Vec rate(dyds);
        if (dt != Complex(0.0))
            for (auto& z : rate)
                z /= dt;
        PhaseState r = unflatten(rate, time);
        tr.rates.push_back({r.coords, r.momenta});
        tr.path.push_back(s);
    };

    Vec k1;
    try {
        k1 = f(0.0, y);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::CoordinateSingularity && e.kind() != ErrorKind::TwoBodyCollision &&
            e.kind() != ErrorKind::PoleAt)
            throw;
        tr.termination = Termination::PoleDetected;
        tr.termination_time = initial.time;
        return tr;
    }
    record(0.0, y, k1);
    if (std::abs(dt) == 0.0)
        return tr;

    auto norm = [&](const Vec& err, const Vec& y0, const Vec& y1) {
        double m = 0.0;
        for (std::size_t i = 0; i < err.size(); ++i) {
            double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
            m = std::max(m, std::abs(err[i]) / sc);
        }
        return m;
    };

    double hmax = opt.max_step_fraction > 0 ? opt.max_step_fraction : 1.0;
    double h = std::min(hmax, 1e-3);
    double s = 0.0;
    double err_prev = 1.0;
    long steps = 0;

    while (s < 1.0) {
        if (++steps > opt.max_steps) {
            tr.termination = Termination::MaxSteps;
            tr.termination_time = initial.time + s * dt;
            return tr;
        }
        bool last = s + h >= 1.0;
        if (last)
            h = 1.0 - s;
        if (h < 1e-14) {
            tr.termination = Termination::StepUnderflow;
            tr.termination_time = initial.time + s * dt;
            return tr;
        }
        Vec y5, k7, err(y.size());
        bool blew_up = false;
        try {
            Vec k2 = f(s + c2 * h, axpy(y, h, {{a21, &k1}}));
            Vec k3 = f(s + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
            Vec k4 = f(s + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            Vec k5 = f(s + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            Vec k6 = f(s + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            k7 = f(s + h, y5);
            for (std::size_t i = 0; i < y.size(); ++i)
                err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CoordinateSingularity && e.kind() != ErrorKind::TwoBodyCollision &&
                e.kind() != ErrorKind::PoleAt)
                throw;
            blew_up = true;
        }
        double en = blew_up ? INFINITY : norm(err, y, y5);
        if (!std::isfinite(en)) {
            h *= 0.25;
            continue;
        }
        if (en <= 1.0) {
            if (!finite_and_bounded(y5, opt.blowup)) {
                tr.termination = Termination::PoleDetected;
                tr.termination_time = initial.time + (s + h) * dt;
                return tr;
            }
            s = last ? 1.0 : s + h;
            y = std::move(y5);
            k1 = std::move(k7);
            record(s, y, k1);
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(en, 1e-4);
            h = std::min(hmax, h * fac);
        } else {
            double fac = std::max(0.2, 0.9 * std::pow(en, -1.0 / 5.0));
            h *= fac;
        }
    }
    return tr;
}

PhaseState dense_state(const Trajectory& tr, double s) {
    if (tr.samples.empty())
        throw Error(ErrorKind::InvalidArgument, "empty trajectory");
    if (s <= tr.path.front())
        return tr.samples.front();
    if (s >= tr.path.back())
        return tr.samples.back();
    auto it = std::upper_bound(tr.path.begin(), tr.path.end(), s);
    std::size_t i = std::size_t(it - tr.path.begin()) - 1;
    double s0 = tr.path[i], s1 = tr.path[i + 1];
    double h = s1 - s0;
    double x = (s - s0) / h;
    double h00 = 2 * x * x * x - 3 * x * x + 1, h10 = x * x * x - 2 * x * x + x;
    double h01 = -2 * x * x * x + 3 * x * x, h11 = x * x * x - x * x;
    Complex dt = tr.t_end - tr.t_start;
    Vec y0 = flatten(tr.samples[i]), y1 = flatten(tr.samples[i + 1]);
    Vec d0 = flatten(tr.rates[i]), d1 = flatten(tr.rates[i + 1]);
    Vec y(y0.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] = h00 * y0[k] + h10 * h * dt * d0[k] + h01 * y1[k] + h11 * h * dt * d1[k];
    return unflatten(y, tr.t_start + s * dt);
}

} // namespace pcc
