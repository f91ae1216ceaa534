#include "starklab/intmat.hpp"

#include <algorithm>

#include "starklab/errors.hpp"

namespace starklab {

IntMat zero_matrix(size_t rows, size_t cols) { return IntMat(rows, IntVec(cols, 0)); }

IntMat identity_matrix(size_t n) {
    IntMat m = zero_matrix(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat transpose(const IntMat& a) {
    if (a.empty()) return {};
    IntMat t = zero_matrix(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    if (a.empty()) return {};
    size_t inner = b.size();
    size_t cols = inner ? b[0].size() : 0;
    IntMat c = zero_matrix(a.size(), cols);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntVec vec_mat_mul(const IntVec& v, const IntMat& a) {
    size_t cols = a.empty() ? 0 : a[0].size();
    IntVec out(cols, 0);
    for (size_t k = 0; k < a.size(); ++k) {
        if (v[k] == 0) continue;
        for (size_t j = 0; j < cols; ++j) out[j] += v[k] * a[k][j];
    }
    return out;
}

namespace {

void axpy_row(IntVec& dst, const mpz_class& q, const IntVec& src) {
    for (size_t j = 0; j < dst.size(); ++j)
        if (src[j] != 0) dst[j] -= q * src[j];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

IntMat hnf_direct(IntMat rows, size_t cols) {
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows.size(); ++col) {
        while (true) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                axpy_row(rows[i], floor_div(rows[i][col], rows[r][col]), rows[r]);
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][col] == 0) continue;
        if (rows[r][col] < 0)
            for (auto& x : rows[r]) x = -x;
        for (size_t i = 0; i < r; ++i)
            if (rows[i][col] != 0) axpy_row(rows[i], floor_div(rows[i][col], rows[r][col]), rows[r]);
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace

IntMat hnf(IntMat rows, size_t cols) {
    for (const auto& row : rows)
        if (row.size() != cols) throw InputError("row length mismatch in HNF");
    // Feed long generator lists in batches so intermediate entries stay small.
    const size_t batch = std::max<size_t>(cols, 8);
    if (rows.size() <= 2 * batch) return hnf_direct(std::move(rows), cols);
    IntMat acc;
    for (size_t start = 0; start < rows.size(); start += batch) {
        size_t end = std::min(rows.size(), start + batch);
        for (size_t i = start; i < end; ++i) acc.push_back(std::move(rows[i]));
        acc = hnf_direct(std::move(acc), cols);
    }
    return acc;
}

std::optional<IntVec> hnf_coordinates(const IntMat& basis, const IntVec& v) {
    IntVec rest = v;
    IntVec coords(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        size_t col = 0;
        while (basis[i][col] == 0) ++col;
        if (!mpz_divisible_p(rest[col].get_mpz_t(), basis[i][col].get_mpz_t())) return std::nullopt;
        coords[i] = rest[col] / basis[i][col];
        if (coords[i] != 0) axpy_row(rest, coords[i], basis[i]);
    }
    for (const auto& x : rest)
        if (x != 0) return std::nullopt;
    return coords;
}

bool hnf_contains(const IntMat& basis, const IntVec& v) { return hnf_coordinates(basis, v).has_value(); }

mpz_class hnf_index(const IntMat& basis, size_t n) {
    if (basis.size() != n) return 0;
    mpz_class idx = 1;
    for (size_t i = 0; i < n; ++i) idx *= basis[i][i];
    return idx;
}

SmithForm smith(const IntMat& input, size_t cols) {
    IntMat a = hnf(input, cols);
    const size_t m = a.size();
    const size_t n = cols;
    SmithForm out;
    out.col_transform = identity_matrix(n);
    out.col_transform_inv = identity_matrix(n);
    auto& v = out.col_transform;
    auto& vinv = out.col_transform_inv;
    auto col_axpy = [&](size_t j, const mpz_class& q, size_t t) {
        // col_j -= q col_t
        for (size_t i = 0; i < m; ++i) a[i][j] -= q * a[i][t];
        for (size_t i = 0; i < n; ++i) v[i][j] -= q * v[i][t];
        for (size_t k = 0; k < n; ++k) vinv[t][k] += q * vinv[j][k];
    };
    auto col_swap = [&](size_t j, size_t t) {
        if (j == t) return;
        for (size_t i = 0; i < m; ++i) std::swap(a[i][j], a[i][t]);
        for (size_t i = 0; i < n; ++i) std::swap(v[i][j], v[i][t]);
        std::swap(vinv[j], vinv[t]);
    };
    const size_t steps = std::min(m, n);
    for (size_t t = 0; t < steps; ++t) {
        while (true) {
            size_t bi = m, bj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) break;
            std::swap(a[t], a[bi]);
            col_swap(bj, t);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                axpy_row(a[i], floor_div(a[i][t], a[t][t]), a[t]);
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                col_axpy(j, floor_div(a[t][j], a[t][t]), t);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        for (size_t k = 0; k < n; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) a[t][t] = -a[t][t];
    }
    out.diagonal.assign(n, 0);
    for (size_t t = 0; t < steps; ++t) out.diagonal[t] = a[t][t];
    return out;
}

IntMat kernel_mod(const IntMat& a, const IntVec& moduli) {
    const size_t k = a.size();
    const size_t n = moduli.size();
    IntMat rows;
    for (size_t i = 0; i < k; ++i) {
        IntVec row(n + k, 0);
        for (size_t j = 0; j < n; ++j) row[j] = a[i][j];
        row[n + i] = 1;
        rows.push_back(std::move(row));
    }
    for (size_t j = 0; j < n; ++j) {
        if (moduli[j] == 0) continue;
        IntVec row(n + k, 0);
        row[j] = moduli[j];
        rows.push_back(std::move(row));
    }
    IntMat h = hnf(std::move(rows), n + k);
    IntMat ker;
    for (const auto& row : h) {
        bool image_zero = std::all_of(row.begin(), row.begin() + n, [](const mpz_class& x) { return x == 0; });
        if (image_zero) ker.emplace_back(row.begin() + n, row.end());
    }
    return hnf(std::move(ker), k);
}

RatMat to_rat(const IntMat& a) {
    RatMat r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i].assign(a[i].begin(), a[i].end());
    return r;
}

std::optional<RatMat> rat_inverse(RatMat a) {
    const size_t n = a.size();
    RatMat inv(n, RatVec(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        mpq_class piv = a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

mpq_class rat_det(RatMat a) {
    const size_t n = a.size();
    mpq_class det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

std::optional<RatVec> rat_solve_left(const RatMat& a, const RatVec& v) {
    auto inv = rat_inverse(a);
    if (!inv) return std::nullopt;
    const size_t n = a.size();
    RatVec y(n, 0);
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) y[j] += v[k] * (*inv)[k][j];
    return y;
}

mpz_class int_det(const IntMat& a) {
    mpq_class d = rat_det(to_rat(a));
    return d.get_num();
}

}  // namespace starklab
