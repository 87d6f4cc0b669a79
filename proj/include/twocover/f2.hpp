#ifndef TWOCOVER_F2_HPP
#define TWOCOVER_F2_HPP

#include "twocover/errors.hpp"

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace twocover {

using F2Vec = std::vector<uint8_t>;  // one bit per entry, values 0/1

// Dense bit matrix with packed 64-bit rows.  Row reduction is
// deterministic: pivots are chosen leftmost-column, topmost-row.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(size_t rows, size_t cols);
    static F2Matrix identity(size_t n);
    static F2Matrix from_rows(const std::vector<F2Vec>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const;
    void set(size_t r, size_t c, bool v);
    void xor_row(size_t dst, size_t src);         // row dst += row src
    void append_row(const F2Vec& v);
    F2Vec row(size_t r) const;

    F2Matrix transpose() const;
    F2Matrix mul(const F2Matrix& o) const;
    F2Vec apply(const F2Vec& v) const;            // matrix * column vector

    // reduced row echelon form (in place); returns pivot columns
    std::vector<size_t> rref();
    size_t rank() const;

    // right kernel  {x : Mx = 0}, rows of result = basis (RREF)
    F2Matrix kernel() const;
    // left kernel {y : yM = 0}
    F2Matrix left_kernel() const;

    bool operator==(const F2Matrix& o) const;
    std::string str() const;

private:
    size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> bits_;
    friend class F2Subspace;
};

// Subspace of F2^n held by its canonical RREF basis.  Two subspaces are
// equal iff their stored bases are identical.
class F2Subspace {
public:
    explicit F2Subspace(size_t ambient = 0);  // zero subspace
    static F2Subspace full(size_t ambient);
    static F2Subspace span(const std::vector<F2Vec>& gens, size_t ambient);
    static F2Subspace row_space(const F2Matrix& m);

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const F2Matrix& basis() const { return basis_; }
    F2Vec basis_vector(size_t i) const { return basis_.row(i); }

    bool contains(const F2Vec& v) const;
    bool contains(const F2Subspace& o) const;
    F2Subspace intersect(const F2Subspace& o) const;
    F2Subspace sum(const F2Subspace& o) const;
    // {x : x^T form y = 0 for all y in *this}
    F2Subspace orthocomplement(const F2Matrix& form) const;
    // solutions x of functional(x) = 0 intersected with *this
    F2Subspace cut_by_functional(const F2Vec& functional) const;

    // coordinates of v w.r.t. the basis; throws if not contained
    F2Vec coordinates(const F2Vec& v) const;

    std::vector<F2Vec> enumerate() const;  // all 2^dim elements (small dims)

    bool operator==(const F2Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    size_t ambient_;
    F2Matrix basis_;
};

inline F2Vec f2_add(const F2Vec& a, const F2Vec& b) {
    F2Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ (i < b.size() ? b[i] : 0);
    return r;
}

inline bool f2_dot(const F2Vec& a, const F2Vec& b) {
    bool r = false;
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) r ^= (a[i] & b[i]);
    return r;
}

inline bool f2_is_zero(const F2Vec& a) {
    for (auto x : a)
        if (x) return false;
    return true;
}

// concatenate blocks
inline F2Vec f2_concat(const F2Vec& a, const F2Vec& b) {
    F2Vec r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

} // namespace twocover

#endif
