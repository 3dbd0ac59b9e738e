#ifndef PELLRANK_F2LINALG_HPP
#define PELLRANK_F2LINALG_HPP

#include <cstdint>
#include <functional>
#include <vector>

// Dense bit-packed matrices over F2 with rank/corank/kernel operations.

namespace pellrank::f2linalg {

class F2Matrix {
  public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols);
    static F2Matrix identity(int n);
    static F2Matrix from_bits(int rows, int cols, const std::function<int(int, int)>& bit);
    // uniform over symmetric n x n matrices, deterministic per seed
    static F2Matrix random_symmetric(int n, std::uint64_t seed);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int get(int r, int c) const;
    void set(int r, int c, int v);
    void xor_bit(int r, int c, int v);

    int rank() const;
    int corank() const { return cols_ - rank(); }  // for square use; callers pick dimension
    F2Matrix transposed() const;
    bool symmetric() const;

    // basis of the right kernel {v : M v = 0}; each vector has cols() bits
    std::vector<std::vector<int>> kernel_basis() const;
    std::vector<int> mul_vector(const std::vector<int>& v) const;

    bool operator==(const F2Matrix& o) const = default;

  private:
    int rows_ = 0, cols_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> data_;  // row-major, trailing bits zero
};

// rank of a set of bit-vectors (each of length nbits packed in u64 words)
int rank_of_rows(std::vector<std::vector<std::uint64_t>> rows, int nbits);

}  // namespace pellrank::f2linalg

#endif
