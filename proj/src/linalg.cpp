#include "qrtw/linalg.hpp"

namespace qrtw {

RFVector solve_linear(const RFMatrix& coeff, const RFVector& rhs) {
    const size_t n = coeff.size();
    if (n == 0 || rhs.size() != n) throw Error("solve_linear: shape mismatch");
    for (const auto& row : coeff)
        if (row.size() != n) throw Error("solve_linear: matrix not square");

    RFMatrix a = coeff;
    RFVector b = rhs;

    for (size_t col = 0; col < n; ++col) {
        // pick the first row whose pivot candidate is a nonzero rational function
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw SingularSystem();
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);

        RationalFunction inv = a[col][col].inverse();
        for (size_t j = col; j < n; ++j) a[col][j] = a[col][j] * inv;
        b[col] = b[col] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            RationalFunction f = a[i][col];
            for (size_t j = col; j < n; ++j)
                a[i][j] = a[i][j] - f * a[col][j];
            b[i] = b[i] - f * b[col];
        }
    }
    return b;
}

RationalFunction det(const RFMatrix& m) {
    const size_t n = m.size();
    if (n == 0) throw Error("det: empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw Error("det: matrix not square");
    SymbolsPtr syms = m[0][0].symbols();

    // recursive Laplace expansion over a column mask, along the sparsest row
    std::vector<size_t> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i] = i;

    struct Rec {
        const RFMatrix& m;
        SymbolsPtr syms;
        RationalFunction run(const std::vector<size_t>& rows, unsigned colmask) {
            if (rows.empty()) return RationalFunction::constant(syms, 1);
            // pick the row with fewest nonzero entries among the active columns
            size_t best = 0, best_nz = SIZE_MAX;
            std::vector<size_t> cols;
            for (size_t c = 0; c < m.size(); ++c)
                if (colmask & (1u << c)) cols.push_back(c);
            for (size_t ri = 0; ri < rows.size(); ++ri) {
                size_t nz = 0;
                for (size_t c : cols)
                    if (!m[rows[ri]][c].is_zero()) ++nz;
                if (nz < best_nz) { best_nz = nz; best = ri; }
            }
            if (best_nz == 0) return RationalFunction(syms); // zero row
            size_t row = rows[best];
            std::vector<size_t> rest = rows;
            rest.erase(rest.begin() + static_cast<long>(best));

            RationalFunction acc(syms);
            bool started = false;
            for (size_t ci = 0; ci < cols.size(); ++ci) {
                size_t c = cols[ci];
                if (m[row][c].is_zero()) continue;
                RationalFunction sub = run(rest, colmask & ~(1u << c));
                // sign: (-1)^(row position within remaining rows + column position)
                int sign = ((best + ci) % 2 == 0) ? 1 : -1;
                RationalFunction t = m[row][c] * sub * Rational(sign);
                acc = started ? acc + t : t;
                started = true;
            }
            return acc;
        }
    } rec{m, syms};

    return rec.run(rows, n >= 32 ? ~0u : ((1u << n) - 1));
}

} // namespace qrtw
