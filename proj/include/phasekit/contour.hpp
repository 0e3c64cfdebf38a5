#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace phasekit {

/// One iso-segment of a level set, endpoints (x1,y1)-(x2,y2).
struct ContourSegment {
    double level = 0.0;
    std::array<double, 2> a{}, b{};
};

/// Marching squares with linear edge interpolation for f on
/// [x0,x1] x [y0,y1], sampled on an (n+1) x (n+1) grid. Saddle cells split by
/// the cell-average rule. Deterministic traversal order.
inline std::vector<ContourSegment> marching_squares(const std::function<double(double, double)>& f, double x0,
                                                    double x1, double y0, double y1, int n,
                                                    const std::vector<double>& levels) {
    std::vector<std::vector<double>> v(static_cast<std::size_t>(n) + 1,
                                       std::vector<double>(static_cast<std::size_t>(n) + 1));
    auto gx = [&](int i) { return x0 + (x1 - x0) * i / n; };
    auto gy = [&](int j) { return y0 + (y1 - y0) * j / n; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f(gx(i), gy(j));

    std::vector<ContourSegment> out;
    for (double level : levels) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double f00 = v[i][j] - level, f10 = v[i + 1][j] - level;
                const double f01 = v[i][j + 1] - level, f11 = v[i + 1][j + 1] - level;
                const int code = (f00 > 0 ? 1 : 0) | (f10 > 0 ? 2 : 0) | (f11 > 0 ? 4 : 0) | (f01 > 0 ? 8 : 0);
                if (code == 0 || code == 15) continue;
                auto interp = [](double xa, double ya, double fa, double xb, double yb,
                                 double fb) -> std::array<double, 2> {
                    const double t = (fa == fb) ? 0.5 : fa / (fa - fb);
                    return {xa + t * (xb - xa), ya + t * (yb - ya)};
                };
                const auto bottom = interp(gx(i), gy(j), f00, gx(i + 1), gy(j), f10);
                const auto top = interp(gx(i), gy(j + 1), f01, gx(i + 1), gy(j + 1), f11);
                const auto left = interp(gx(i), gy(j), f00, gx(i), gy(j + 1), f01);
                const auto right = interp(gx(i + 1), gy(j), f10, gx(i + 1), gy(j + 1), f11);
                auto emit = [&](const std::array<double, 2>& p, const std::array<double, 2>& q) {
                    out.push_back({level, p, q});
                };
                switch (code) {
                case 1: case 14: emit(left, bottom); break;
                case 2: case 13: emit(bottom, right); break;
                case 3: case 12: emit(left, right); break;
                case 4: case 11: emit(top, right); break;
                case 6: case 9: emit(bottom, top); break;
                case 7: case 8: emit(left, top); break;
                case 5: case 10: {
                    const double centre = 0.25 * (f00 + f10 + f01 + f11);
                    const bool same_as_00 = (centre > 0) == (f00 > 0);
                    if ((code == 5) == same_as_00) {
                        emit(left, top);
                        emit(bottom, right);
                    } else {
                        emit(left, bottom);
                        emit(top, right);
                    }
                    break;
                }
                default: break;
                }
            }
    }
    return out;
}

} // namespace phasekit
