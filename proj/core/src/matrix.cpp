#include "specdiv/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace specdiv {

namespace {

int abs_cmp(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

IMat mul(const IMat& a, const IMat& b) {
    IMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

QMat mul(const QMat& a, const QMat& b) {
    QMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

std::vector<Int> mul(const IMat& a, const std::vector<Int>& x) {
    std::vector<Int> y(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
    return y;
}

std::vector<Rat> mul_q(const QMat& a, const std::vector<Rat>& x) {
    std::vector<Rat> y(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
    return y;
}

QMat to_rational(const IMat& a) {
    QMat q(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) q.at(i, j) = Rat(a.at(i, j));
    return q;
}

Int det(const IMat& a) {
    if (a.rows() != a.cols()) throw validation_error("det: matrix not square");
    int n = a.rows();
    if (n == 0) return Int(1);
    IMat m = a;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = t / prev;  // Bareiss: division is exact
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

HnfResult row_hnf(const IMat& a) {
    HnfResult res{a, IMat::identity(a.rows()), 0};
    IMat& h = res.h;
    IMat& u = res.u;
    const int m = a.rows(), n = a.cols();
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        // Euclidean elimination below row r in column c.
        while (true) {
            int piv = -1;
            for (int i = r; i < m; ++i) {
                if (h.at(i, c) == 0) continue;
                if (piv < 0 || abs_cmp(h.at(i, c), h.at(piv, c)) < 0) piv = i;
            }
            if (piv < 0) break;
            if (piv != r) {
                for (int j = 0; j < n; ++j) std::swap(h.at(r, j), h.at(piv, j));
                for (int j = 0; j < m; ++j) std::swap(u.at(r, j), u.at(piv, j));
            }
            bool clean = true;
            for (int i = r + 1; i < m; ++i) {
                if (h.at(i, c) == 0) continue;
                Int q = floor_div(h.at(i, c), h.at(r, c));
                if (q != 0) {
                    for (int j = 0; j < n; ++j) h.at(i, j) -= q * h.at(r, j);
                    for (int j = 0; j < m; ++j) u.at(i, j) -= q * u.at(r, j);
                }
                if (h.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) {
            for (int j = 0; j < n; ++j) h.at(r, j) = -h.at(r, j);
            for (int j = 0; j < m; ++j) u.at(r, j) = -u.at(r, j);
        }
        for (int i = 0; i < r; ++i) {
            Int q = floor_div(h.at(i, c), h.at(r, c));
            if (q != 0) {
                for (int j = 0; j < n; ++j) h.at(i, j) -= q * h.at(r, j);
                for (int j = 0; j < m; ++j) u.at(i, j) -= q * u.at(r, j);
            }
        }
        ++r;
    }
    res.rank = r;
    return res;
}

IMat hnf_column_basis(const IMat& a) {
    HnfResult r = row_hnf(a.transposed());
    IMat basis(a.rows(), r.rank);
    for (int j = 0; j < r.rank; ++j)
        for (int i = 0; i < a.rows(); ++i) basis.at(i, j) = r.h.at(j, i);
    return basis;
}

SmithResult smith_normal_form(const IMat& a) {
    const int m = a.rows(), n = a.cols();
    SmithResult res{a, IMat::identity(m), IMat::identity(n), 0};
    IMat& d = res.d;
    IMat& u = res.u;
    IMat& v = res.v;

    auto row_op = [&](int dst, int src, const Int& q) {
        for (int j = 0; j < n; ++j) d.at(dst, j) -= q * d.at(src, j);
        for (int j = 0; j < m; ++j) u.at(dst, j) -= q * u.at(src, j);
    };
    auto col_op = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < m; ++i) d.at(i, dst) -= q * d.at(i, src);
        for (int i = 0; i < n; ++i) v.at(i, dst) -= q * v.at(i, src);
    };
    auto row_swap = [&](int x, int y) {
        if (x == y) return;
        for (int j = 0; j < n; ++j) std::swap(d.at(x, j), d.at(y, j));
        for (int j = 0; j < m; ++j) std::swap(u.at(x, j), u.at(y, j));
    };
    auto col_swap = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < m; ++i) std::swap(d.at(i, x), d.at(i, y));
        for (int i = 0; i < n; ++i) std::swap(v.at(i, x), v.at(i, y));
    };

    int t = 0;
    while (t < m && t < n) {
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi < 0 || abs_cmp(d.at(i, j), d.at(pi, pj)) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = floor_div(d.at(i, t), d.at(t, t));
                row_op(i, t, q);
                if (d.at(i, t) != 0) {
                    row_swap(t, i);  // remainder is smaller, keep reducing
                    dirty = true;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = floor_div(d.at(t, j), d.at(t, t));
                col_op(j, t, q);
                if (d.at(t, j) != 0) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
        }
        // Enforce divisibility of the remaining block by the pivot.
        bool restart = false;
        for (int i = t + 1; i < m && !restart; ++i)
            for (int j = t + 1; j < n && !restart; ++j)
                if (mod_floor(d.at(i, j), d.at(t, t)) != 0) {
                    row_op(t, i, Int(-1));  // add row i to row t
                    restart = true;
                }
        if (restart) continue;
        if (d.at(t, t) < 0) {
            for (int j = 0; j < n; ++j) d.at(t, j) = -d.at(t, j);
            for (int j = 0; j < m; ++j) u.at(t, j) = -u.at(t, j);
        }
        ++t;
    }
    res.rank = t;
    return res;
}

IMat kernel_basis(const IMat& a) {
    SmithResult s = smith_normal_form(a);
    const int n = a.cols();
    IMat k(n, n - s.rank);
    for (int j = s.rank; j < n; ++j)
        for (int i = 0; i < n; ++i) k.at(i, j - s.rank) = s.v.at(i, j);
    return hnf_column_basis(k);
}

bool solve_integer(const IMat& a, const std::vector<Int>& b, std::vector<Int>& x) {
    SmithResult s = smith_normal_form(a);
    std::vector<Int> ub = mul(s.u, b);
    std::vector<Int> z(a.cols());
    for (int i = 0; i < s.rank; ++i) {
        if (mod_floor(ub[i], s.d.at(i, i)) != 0) return false;
        z[i] = ub[i] / s.d.at(i, i);
    }
    for (int i = s.rank; i < a.rows(); ++i)
        if (ub[i] != 0) return false;
    x = mul(s.v, z);
    return true;
}

IMat unimodular_completion(const IMat& cols) {
    const int r = cols.rows(), k = cols.cols();
    // Dual rows Y with Y * cols = I_k exist exactly when the columns span a
    // primitive (saturated) sublattice; then Z^r = span(cols) + ker(Y).
    IMat t = cols.transposed();
    IMat y(k, r);
    for (int a = 0; a < k; ++a) {
        std::vector<Int> e(k), sol;
        e[a] = 1;
        if (!solve_integer(t, e, sol))
            throw validation_error("unimodular_completion: columns are not primitive");
        for (int j = 0; j < r; ++j) y.at(a, j) = sol[j];
    }
    IMat ker = kernel_basis(y);
    IMat w(r, r);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < r; ++i) w.at(i, j) = cols.at(i, j);
    for (int j = 0; j < ker.cols(); ++j)
        for (int i = 0; i < r; ++i) w.at(i, k + j) = ker.at(i, j);
    Int dw = det(w);
    if (dw != 1 && dw != -1) throw validation_error("unimodular_completion: completion failed");
    return w;
}

QMat inverse(const QMat& a) {
    if (a.rows() != a.cols()) throw validation_error("inverse: matrix not square");
    const int n = a.rows();
    QMat m = a;
    QMat inv = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) throw validation_error("inverse: singular matrix");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(c, j), m.at(piv, j));
                std::swap(inv.at(c, j), inv.at(piv, j));
            }
        Rat p = m.at(c, c);
        for (int j = 0; j < n; ++j) {
            m.at(c, j) /= p;
            inv.at(c, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> solve_rational(const QMat& a, const std::vector<Rat>& b) {
    return mul_q(inverse(a), b);
}

}  // namespace specdiv
