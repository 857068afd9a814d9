#include <algorithm>
#include <cmath>

#include "pcc/dynamics.hpp"

namespace pcc {

Complex painleve_rhs(const PainleveParams& p, Complex l, Complex dl, Complex t) {
    const Complex al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta;
    switch (p.equation) {
    case Equation::VI: {
        Complex lt = l - t, l1 = l - 1.0, t1 = t - 1.0;
        return 0.5 * (1.0 / l + 1.0 / l1 + 1.0 / lt) * dl * dl - (1.0 / t + 1.0 / t1 + 1.0 / lt) * dl +
               l * l1 * lt / (t * t * t1 * t1) *
                   (al + be * t / (l * l) + ga * t1 / (l1 * l1) + de * t * t1 / (lt * lt));
    }
    case Equation::V: {
        Complex l1 = l - 1.0;
        return (1.0 / (2.0 * l) + 1.0 / l1) * dl * dl - dl / t +
               l * l1 * l1 / (t * t) * (al + be / (l * l) + ga * t / (l1 * l1) + de * t * t * (l + 1.0) / (l1 * l1 * l1));
    }
    case Equation::IV:
        return dl * dl / (2.0 * l) + 1.5 * l * l * l + 4.0 * t * l * l + 2.0 * (t * t - al) * l + be / l;
    case Equation::III:
        return dl * dl / l - dl / t + (al * l * l + be * t + ga * l * l * l + de * t * t / l) / (4.0 * t * t);
    case Equation::II:
        return 2.0 * l * l * l + t * l + al;
    case Equation::I:
        return 6.0 * l * l + t;
    }
    return 0.0;
}

namespace {

// degree-5 Lagrange interpolation through the six samples nearest to s
Complex local_interp(const std::vector<double>& xs, const CVec& ys, double s) {
    std::size_t n = xs.size();
    std::size_t width = std::min<std::size_t>(6, n);
    auto it = std::lower_bound(xs.begin(), xs.end(), s);
    std::size_t c = std::size_t(it - xs.begin());
    std::size_t lo = c >= width / 2 ? c - width / 2 : 0;
    if (lo + width > n)
        lo = n - width;
    Complex out = 0.0;
    for (std::size_t i = lo; i < lo + width; ++i) {
        double w = 1.0;
        for (std::size_t j = lo; j < lo + width; ++j)
            if (j != i)
                w *= (s - xs[j]) / (xs[i] - xs[j]);
        out += w * ys[i];
    }
    return out;
}

} // namespace

double painleve_residual(Equation eq, const Trajectory& tr) {
    if (tr.system.side != Side::Painleve || tr.system.rank != 1)
        throw Error(ErrorKind::InvalidArgument, "residual needs a rank-1 Painleve-side trajectory");
    if (tr.samples.size() < 20)
        throw Error(ErrorKind::TooSparse, std::to_string(tr.samples.size()) + " samples, need at least 20");
    PainleveParams p = tr.system.params;
    p.equation = eq;

    CVec lam;
    for (const auto& s : tr.samples)
        lam.push_back(s.coords[0]);
    const std::vector<double>& xs = tr.path;
    double span = xs.back() - xs.front();
    std::size_t m = std::max<std::size_t>(200, 2 * xs.size());
    double ds = span / double(m - 1);
    CVec grid(m);
    for (std::size_t i = 0; i < m; ++i)
        grid[i] = local_interp(xs, lam, xs.front() + ds * double(i));

    Complex dt = tr.t_end - tr.t_start;
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < m; ++i) {
        Complex d1 = (-grid[i + 2] + 8.0 * grid[i + 1] - 8.0 * grid[i - 1] + grid[i - 2]) / (12.0 * ds) / dt;
        Complex d2 = (-grid[i + 2] + 16.0 * grid[i + 1] - 30.0 * grid[i] + 16.0 * grid[i - 1] - grid[i - 2]) /
                     (12.0 * ds * ds) / (dt * dt);
        Complex t = tr.t_start + (xs.front() + ds * double(i)) * dt;
        worst = std::max(worst, std::abs(d2 - painleve_rhs(p, grid[i], d1, t)));
    }
    return worst;
}

} // namespace pcc
