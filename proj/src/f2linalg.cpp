#include "f2linalg.hpp"

#include <cassert>
#include <stdexcept>

#include "rng.hpp"

namespace pellrank::f2linalg {

F2Matrix::F2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::domain_error("F2Matrix: negative dimension");
    words_per_row_ = (cols + 63) / 64;
    data_.assign(std::size_t(rows) * std::size_t(words_per_row_), 0);
}

F2Matrix F2Matrix::identity(int n) {
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

F2Matrix F2Matrix::from_bits(int rows, int cols, const std::function<int(int, int)>& bit) {
    F2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (bit(r, c) & 1) m.set(r, c, 1);
    return m;
}

F2Matrix F2Matrix::random_symmetric(int n, std::uint64_t seed) {
    rng::Xoshiro256 gen(seed);
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int b = gen.coin() ? 1 : 0;
            m.set(i, j, b);
            m.set(j, i, b);
        }
    return m;
}

int F2Matrix::get(int r, int c) const {
    return int((data_[std::size_t(r) * words_per_row_ + std::size_t(c >> 6)] >> (c & 63)) & 1);
}

void F2Matrix::set(int r, int c, int v) {
    std::uint64_t& w = data_[std::size_t(r) * words_per_row_ + std::size_t(c >> 6)];
    std::uint64_t mask = std::uint64_t(1) << (c & 63);
    if (v & 1)
        w |= mask;
    else
        w &= ~mask;
}

void F2Matrix::xor_bit(int r, int c, int v) {
    if (v & 1) data_[std::size_t(r) * words_per_row_ + std::size_t(c >> 6)] ^= std::uint64_t(1) << (c & 63);
}

int F2Matrix::rank() const {
    std::vector<std::uint64_t> work(data_);
    const int wpr = words_per_row_;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int w = col >> 6;
        std::uint64_t mask = std::uint64_t(1) << (col & 63);
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (work[std::size_t(r) * wpr + w] & mask) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int k = 0; k < wpr; ++k) std::swap(work[std::size_t(pivot) * wpr + k], work[std::size_t(rank) * wpr + k]);
        for (int r = 0; r < rows_; ++r) {
            if (r != rank && (work[std::size_t(r) * wpr + w] & mask)) {
                for (int k = 0; k < wpr; ++k) work[std::size_t(r) * wpr + k] ^= work[std::size_t(rank) * wpr + k];
            }
        }
        ++rank;
    }
    return rank;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, 1);
    return t;
}

bool F2Matrix::symmetric() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = r + 1; c < cols_; ++c)
            if (get(r, c) != get(c, r)) return false;
    return true;
}

std::vector<std::vector<int>> F2Matrix::kernel_basis() const {
    // reduce a working copy, remember pivot column of each reduced row
    std::vector<std::uint64_t> work(data_);
    const int wpr = words_per_row_;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int w = col >> 6;
        std::uint64_t mask = std::uint64_t(1) << (col & 63);
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (work[std::size_t(r) * wpr + w] & mask) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int k = 0; k < wpr; ++k) std::swap(work[std::size_t(pivot) * wpr + k], work[std::size_t(rank) * wpr + k]);
        for (int r = 0; r < rows_; ++r) {
            if (r != rank && (work[std::size_t(r) * wpr + w] & mask)) {
                for (int k = 0; k < wpr; ++k) work[std::size_t(r) * wpr + k] ^= work[std::size_t(rank) * wpr + k];
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(std::size_t(cols_), false);
    for (int c : pivot_col) is_pivot[std::size_t(c)] = true;
    std::vector<std::vector<int>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[std::size_t(free)]) continue;
        std::vector<int> v(std::size_t(cols_), 0);
        v[std::size_t(free)] = 1;
        for (int r = 0; r < rank; ++r) {
            int w = free >> 6;
            if (work[std::size_t(r) * wpr + w] >> (free & 63) & 1) v[std::size_t(pivot_col[std::size_t(r)])] = 1;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<int> F2Matrix::mul_vector(const std::vector<int>& v) const {
    if (int(v.size()) != cols_) throw std::domain_error("mul_vector: size mismatch");
    std::vector<int> out(std::size_t(rows_), 0);
    for (int r = 0; r < rows_; ++r) {
        int acc = 0;
        for (int c = 0; c < cols_; ++c) acc ^= get(r, c) & v[std::size_t(c)];
        out[std::size_t(r)] = acc;
    }
    return out;
}

int rank_of_rows(std::vector<std::vector<std::uint64_t>> rows, int nbits) {
    int rank = 0;
    int nrows = int(rows.size());
    for (int col = 0; col < nbits && rank < nrows; ++col) {
        int w = col >> 6;
        std::uint64_t mask = std::uint64_t(1) << (col & 63);
        int pivot = -1;
        for (int r = rank; r < nrows; ++r)
            if (rows[std::size_t(r)][std::size_t(w)] & mask) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[std::size_t(pivot)], rows[std::size_t(rank)]);
        for (int r = rank + 1; r < nrows; ++r)
            if (rows[std::size_t(r)][std::size_t(w)] & mask)
                for (std::size_t k = 0; k < rows[std::size_t(r)].size(); ++k)
                    rows[std::size_t(r)][k] ^= rows[std::size_t(rank)][k];
        ++rank;
    }
    return rank;
}

}  // namespace pellrank::f2linalg
