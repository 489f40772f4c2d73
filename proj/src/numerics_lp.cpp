#include "twzec/numerics.hpp"

#include <cmath>
#include <limits>

namespace twzec {

namespace {

template <class T>
struct LpTol {
    static T pivot() { return T(1e-9); }
    static T feas() { return T(1e-8); }
    static T abs(const T& v) { return std::abs(v); }
};

template <>
struct LpTol<Rational> {
    static Rational pivot() { return Rational(0); }
    static Rational feas() { return Rational(0); }
    static Rational abs(const Rational& v) { return boost::multiprecision::abs(v); }
};

template <class T>
class Tableau {
public:
    Tableau(int rows, int cols) : m(rows), n(cols), t(rows, std::vector<T>(cols + 1, T(0))), r(cols + 1, T(0)) {}

    int m, n;
    std::vector<std::vector<T>> t;  // rows x (n + rhs)
    std::vector<T> r;               // reduced costs, r[n] = -objective
    std::vector<int> basis;

    void pivot(int row, int col) {
        T piv = t[row][col];
        for (auto& v : t[row]) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            T f = t[i][col];
            if (f == T(0)) continue;
            for (int j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
        }
        T f = r[col];
        if (f != T(0))
            for (int j = 0; j <= n; ++j) r[j] -= f * t[row][j];
        basis[row] = col;
    }

    void set_costs(const std::vector<T>& c) {
        for (int j = 0; j <= n; ++j) r[j] = j < n ? c[j] : T(0);
        for (int i = 0; i < m; ++i) {
            T cb = c[basis[i]];
            if (cb == T(0)) continue;
            for (int j = 0; j <= n; ++j) r[j] -= cb * t[i][j];
        }
    }

    // returns false when unbounded
    bool optimize(const std::vector<char>& allowed) {
        const T eps = LpTol<T>::pivot();
        int degenerate = 0;
        for (long iter = 0; iter < 200000; ++iter) {
            int enter = -1;
            bool bland = degenerate > 50;
            T best = -eps;
            for (int j = 0; j < n; ++j) {
                if (!allowed[j]) continue;
                if (r[j] < best) {
                    enter = j;
                    if (bland) break;
                    best = r[j];
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            T ratio{};
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] > eps) {
                    T q = t[i][n] / t[i][enter];
                    if (leave < 0 || q < ratio || (q == ratio && basis[i] < basis[leave])) {
                        leave = i;
                        ratio = q;
                    }
                }
            }
            if (leave < 0) return false;
            degenerate = ratio == T(0) ? degenerate + 1 : 0;
            pivot(leave, enter);
            if constexpr (!std::is_same_v<T, Rational>) {
                for (int i = 0; i < m; ++i)
                    if (t[i][n] < T(0) && t[i][n] > -T(1e-12)) t[i][n] = T(0);
            }
        }
        throw LpError(LpError::Kind::malformed, "simplex iteration limit");
    }
};

}  // namespace

template <class T>
LpSolutionT<T> solve_lp(const LpProblemT<T>& pr) {
    const int m = static_cast<int>(pr.a.size());
    const int nv = pr.num_vars;
    if (static_cast<int>(pr.c.size()) != nv || static_cast<int>(pr.b.size()) != m ||
        static_cast<int>(pr.sense.size()) != m)
        throw LpError(LpError::Kind::malformed, "lp: inconsistent dimensions");
    for (const auto& row : pr.a)
        if (static_cast<int>(row.size()) != nv) throw LpError(LpError::Kind::malformed, "lp: ragged row");

    std::vector<char> flip(m, 0);
    std::vector<RowSense> sense = pr.sense;
    for (int i = 0; i < m; ++i) {
        if (pr.b[i] < T(0)) {
            flip[i] = 1;
            if (sense[i] == RowSense::le) sense[i] = RowSense::ge;
            else if (sense[i] == RowSense::ge) sense[i] = RowSense::le;
        }
    }
    int n_slack = 0, n_art = 0;
    for (auto s : sense) {
        if (s != RowSense::eq) ++n_slack;
        if (s != RowSense::le) ++n_art;
    }
    const int ncols = nv + n_slack + n_art;
    Tableau<T> tab(m, ncols);
    tab.basis.assign(m, -1);
    std::vector<int> id_col(m);
    std::vector<char> is_art(ncols, 0);
    int sc = nv, ac = nv + n_slack;
    for (int i = 0; i < m; ++i) {
        T sgn = flip[i] ? T(-1) : T(1);
        for (int j = 0; j < nv; ++j) tab.t[i][j] = sgn * pr.a[i][j];
        tab.t[i][ncols] = sgn * pr.b[i];
        if (sense[i] == RowSense::le) {
            tab.t[i][sc] = T(1);
            id_col[i] = sc++;
        } else {
            if (sense[i] == RowSense::ge) tab.t[i][sc++] = T(-1);
            tab.t[i][ac] = T(1);
            is_art[ac] = 1;
            id_col[i] = ac++;
        }
        tab.basis[i] = id_col[i];
    }

    // phase 1
    std::vector<T> c1(ncols, T(0));
    for (int j = 0; j < ncols; ++j)
        if (is_art[j]) c1[j] = T(1);
    std::vector<char> allowed(ncols, 1);
    if (n_art > 0) {
        tab.set_costs(c1);
        tab.optimize(allowed);
        T infeas = -tab.r[ncols];
        T scale = T(1);
        for (int i = 0; i < m; ++i) scale += LpTol<T>::abs(pr.b[i]);
        if (infeas > LpTol<T>::feas() * scale) throw LpError(LpError::Kind::infeasible, "lp: infeasible");
        for (int i = 0; i < m; ++i) {
            if (!is_art[tab.basis[i]]) continue;
            int col = -1;
            T best = LpTol<T>::pivot();
            for (int j = 0; j < ncols; ++j) {
                if (is_art[j]) continue;
                if (LpTol<T>::abs(tab.t[i][j]) > best) {
                    best = LpTol<T>::abs(tab.t[i][j]);
                    col = j;
                }
            }
            if (col >= 0) tab.pivot(i, col);
        }
    }
    for (int j = 0; j < ncols; ++j)
        if (is_art[j]) allowed[j] = 0;

    // phase 2 (always a minimization internally)
    std::vector<T> c2(ncols, T(0));
    for (int j = 0; j < nv; ++j) c2[j] = pr.maximize ? -pr.c[j] : pr.c[j];
    tab.set_costs(c2);
    if (!tab.optimize(allowed)) throw LpError(LpError::Kind::unbounded, "lp: unbounded");

    LpSolutionT<T> sol;
    sol.primal.assign(nv, T(0));
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < nv) sol.primal[tab.basis[i]] = tab.t[i][ncols];
    T val = T(0);
    for (int j = 0; j < nv; ++j) val += pr.c[j] * sol.primal[j];
    sol.value = val;
    sol.dual.assign(m, T(0));
    for (int i = 0; i < m; ++i) {
        T y = -tab.r[id_col[i]];
        if (flip[i]) y = -y;
        if (pr.maximize) y = -y;
        sol.dual[i] = y;
    }
    return sol;
}

template LpSolutionT<double> solve_lp(const LpProblemT<double>&);
template LpSolutionT<Rational> solve_lp(const LpProblemT<Rational>&);

}  // namespace twzec
