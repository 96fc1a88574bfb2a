#include "quadspin/matrix.hpp"

namespace quadspin::detail {

std::size_t bareiss(std::vector<std::vector<mpz_class>>& m, mpz_class* det_out) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    if (det_out && rows != cols) throw OperationalError("bareiss: det of non-square");
    mpz_class prev(1);
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) {
            if (det_out) {
                *det_out = 0;
                return r;
            }
            continue;
        }
        if (piv != r) {
            std::swap(m[piv], m[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class t = m[i][j] * m[r][c] - m[i][c] * m[r][j];
                mpz_class q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw Error("bareiss: inexact division (pivot bookkeeping bug)");
                m[i][j] = q;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    if (det_out) {
        if (r < rows)
            *det_out = 0;
        else
            *det_out = sign * m[rows - 1][cols - 1];
    }
    return r;
}

}  // namespace quadspin::detail
