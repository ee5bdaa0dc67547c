#include "spinecho/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "spinecho/errors.hpp"

namespace spinecho {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 abscissae).
constexpr double XGK[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double WGK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = WGK[7] * fc;
    double g7 = WG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * XGK[i];
        const double fs = f(c + dx) + f(c - dx);
        k15 += WGK[i] * fs;
        if (i % 2 == 1) g7 += WG[i / 2] * fs;
    }
    k15 *= h;
    g7 *= h;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    constexpr int kMaxPanels = 4000;
    const double min_width = 1e-14 * (std::abs(b - a) + 1.0);

    std::priority_queue<Panel> queue;
    queue.push(evaluate(f, a, b));
    double total_err = queue.top().err;
    double total_val = queue.top().value;

    int panels = 1;
    while (total_err > abs_tol && panels < kMaxPanels) {
        const Panel worst = queue.top();
        if (worst.b - worst.a < min_width)
            throw NumericalError(
                "quadrature did not converge: interval collapsed before reaching "
                "tolerance (local error " +
                std::to_string(worst.err) + ")");
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = evaluate(f, worst.a, mid);
        const Panel right = evaluate(f, mid, worst.b);
        total_err += left.err + right.err - worst.err;
        total_val += left.value + right.value - worst.value;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    if (total_err > abs_tol)
        throw NumericalError("quadrature did not converge after " +
                             std::to_string(panels) + " panels (error " +
                             std::to_string(total_err) + ", tol " +
                             std::to_string(abs_tol) + ")");

    // re-sum panel values in deterministic order for a stable result
    std::vector<Panel> all;
    all.reserve(queue.size());
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sum = 0.0;
    for (const Panel& p : all) sum += p.value;
    return sum;
}

}  // namespace spinecho
