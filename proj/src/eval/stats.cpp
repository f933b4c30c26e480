#include "ccc/eval/stats.hpp"

#include <cmath>
#include <string>

#include "ccc/error.hpp"

namespace ccc::eval {

namespace {

void check_pair(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw DataError("series lengths differ: " + std::to_string(xs.size()) + " vs " + std::to_string(ys.size()));
    if (xs.size() < 2) throw DataError("need at least 2 paired values");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw DataError("non-finite value in series");
}

int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    check_pair(xs, ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw DataError("pearson undefined: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double kendall_tau(const std::vector<double>& xs, const std::vector<double>& ys) {
    check_pair(xs, ys);
    const std::size_t n = xs.size();
    long long s = 0, tied_x = 0, tied_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const int a = sign(xs[i] - xs[j]), b = sign(ys[i] - ys[j]);
            s += a * b;
            tied_x += a == 0;
            tied_y += b == 0;
        }
    const double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    const double denom = (n0 - static_cast<double>(tied_x)) * (n0 - static_cast<double>(tied_y));
    if (denom == 0) throw DataError("kendall tau undefined: zero variance");
    return static_cast<double>(s) / std::sqrt(denom);
}

double fleiss_kappa(const std::vector<std::vector<int>>& counts) {
    if (counts.empty()) throw DataError("fleiss kappa needs at least one item");
    const std::size_t k = counts.front().size();
    if (k < 2) throw DataError("fleiss kappa needs at least 2 categories");
    long long raters = -1;
    std::vector<double> category(k, 0.0);
    double p_bar = 0.0;
    for (const auto& row : counts) {
        if (row.size() != k) throw DataError("fleiss kappa: rows have different category counts");
        long long n = 0, sq = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (row[j] < 0) throw DataError("fleiss kappa: negative count");
            n += row[j];
            sq += static_cast<long long>(row[j]) * row[j];
            category[j] += row[j];
        }
        if (raters < 0) raters = n;
        if (n != raters) throw DataError("fleiss kappa: every item needs the same number of raters");
        if (n < 2) throw DataError("fleiss kappa needs at least 2 raters per item");
        p_bar += static_cast<double>(sq - n) / static_cast<double>(n * (n - 1));
    }
    const double items = static_cast<double>(counts.size());
    p_bar /= items;
    double p_e = 0.0;
    for (double c : category) {
        const double p = c / (items * static_cast<double>(raters));
        p_e += p * p;
    }
    if (p_e >= 1.0) {
        // Every rating fell in one category: agreement is perfect but chance
        // agreement is too, so the ratio is 0/0.
        if (p_bar >= 1.0) return 1.0;
        throw DataError("fleiss kappa undefined");
    }
    return (p_bar - p_e) / (1.0 - p_e);
}

}  // namespace ccc::eval
