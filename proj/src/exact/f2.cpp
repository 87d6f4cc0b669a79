#include "twocover/f2.hpp"

#include <algorithm>
#include <sstream>

namespace twocover {

F2Matrix::F2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

F2Matrix F2Matrix::identity(size_t n) {
    F2Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<F2Vec>& rows, size_t cols) {
    F2Matrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionMismatch("F2Matrix::from_rows");
        for (size_t c = 0; c < cols; ++c)
            if (rows[r][c]) m.set(r, c, true);
    }
    return m;
}

bool F2Matrix::get(size_t r, size_t c) const {
    return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1;
}

void F2Matrix::set(size_t r, size_t c, bool v) {
    uint64_t& w = bits_[r * wpr_ + c / 64];
    uint64_t m = uint64_t(1) << (c % 64);
    if (v) w |= m;
    else w &= ~m;
}

void F2Matrix::xor_row(size_t dst, size_t src) {
    for (size_t k = 0; k < wpr_; ++k) bits_[dst * wpr_ + k] ^= bits_[src * wpr_ + k];
}

void F2Matrix::append_row(const F2Vec& v) {
    if (cols_ == 0 && rows_ == 0) {
        cols_ = v.size();
        wpr_ = (cols_ + 63) / 64;
    }
    if (v.size() != cols_) throw DimensionMismatch("F2Matrix::append_row");
    bits_.resize((rows_ + 1) * wpr_, 0);
    for (size_t c = 0; c < cols_; ++c)
        if (v[c]) bits_[rows_ * wpr_ + c / 64] |= uint64_t(1) << (c % 64);
    ++rows_;
}

F2Vec F2Matrix::row(size_t r) const {
    F2Vec v(cols_);
    for (size_t c = 0; c < cols_; ++c) v[c] = get(r, c);
    return v;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

F2Matrix F2Matrix::mul(const F2Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("F2Matrix::mul");
    F2Matrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k)
            if (get(i, k))
                for (size_t w = 0; w < o.wpr_; ++w)
                    r.bits_[i * r.wpr_ + w] ^= o.bits_[k * o.wpr_ + w];
    return r;
}

F2Vec F2Matrix::apply(const F2Vec& v) const {
    if (v.size() != cols_) throw DimensionMismatch("F2Matrix::apply");
    F2Vec r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        bool s = false;
        for (size_t c = 0; c < cols_; ++c) s ^= (get(i, c) & (v[c] != 0));
        r[i] = s;
    }
    return r;
}

std::vector<size_t> F2Matrix::rref() {
    std::vector<size_t> pivots;
    size_t prow = 0;
    for (size_t c = 0; c < cols_ && prow < rows_; ++c) {
        size_t sel = rows_;
        for (size_t r = prow; r < rows_; ++r)
            if (get(r, c)) { sel = r; break; }
        if (sel == rows_) continue;
        if (sel != prow)
            for (size_t k = 0; k < wpr_; ++k)
                std::swap(bits_[sel * wpr_ + k], bits_[prow * wpr_ + k]);
        for (size_t r = 0; r < rows_; ++r)
            if (r != prow && get(r, c)) xor_row(r, prow);
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

size_t F2Matrix::rank() const {
    F2Matrix m = *this;
    return m.rref().size();
}

F2Matrix F2Matrix::kernel() const {
    F2Matrix m = *this;
    std::vector<size_t> piv = m.rref();
    std::vector<uint8_t> is_pivot(cols_, 0);
    for (size_t i = 0; i < piv.size(); ++i) is_pivot[piv[i]] = 1;
    F2Matrix ker(0, 0);
    for (size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        F2Vec v(cols_, 0);
        v[c] = 1;
        for (size_t i = 0; i < piv.size(); ++i)
            if (m.get(i, c)) v[piv[i]] = 1;
        ker.append_row(v);
    }
    if (ker.rows() == 0) ker = F2Matrix(0, cols_);
    ker.rref();  // canonical form
    return ker;
}

F2Matrix F2Matrix::left_kernel() const { return transpose().kernel(); }

bool F2Matrix::operator==(const F2Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
}

std::string F2Matrix::str() const {
    std::ostringstream os;
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

// ------------------------------------------------------------- F2Subspace

F2Subspace::F2Subspace(size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

F2Subspace F2Subspace::full(size_t ambient) {
    F2Subspace s(ambient);
    s.basis_ = F2Matrix::identity(ambient);
    return s;
}

F2Subspace F2Subspace::span(const std::vector<F2Vec>& gens, size_t ambient) {
    F2Matrix m = F2Matrix::from_rows(gens, ambient);
    return row_space(m);
}

F2Subspace F2Subspace::row_space(const F2Matrix& m) {
    F2Matrix red = m;
    std::vector<size_t> piv = red.rref();
    F2Subspace s(m.cols());
    F2Matrix b(0, m.cols());
    for (size_t i = 0; i < piv.size(); ++i) b.append_row(red.row(i));
    if (b.rows() == 0) b = F2Matrix(0, m.cols());
    s.basis_ = b;
    return s;
}

bool F2Subspace::contains(const F2Vec& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("F2Subspace::contains");
    F2Vec w = v;
    // reduce against RREF basis rows
    for (size_t i = 0; i < basis_.rows(); ++i) {
        // pivot of row i = first set column
        size_t pc = ambient_;
        for (size_t c = 0; c < ambient_; ++c)
            if (basis_.get(i, c)) { pc = c; break; }
        if (pc < ambient_ && w[pc]) {
            for (size_t c = 0; c < ambient_; ++c) w[c] ^= basis_.get(i, c);
        }
    }
    return f2_is_zero(w);
}

bool F2Subspace::contains(const F2Subspace& o) const {
    for (size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.basis_.row(i))) return false;
    return true;
}

F2Subspace F2Subspace::sum(const F2Subspace& o) const {
    if (ambient_ != o.ambient_) throw DimensionMismatch("F2Subspace::sum");
    F2Matrix m(0, ambient_);
    for (size_t i = 0; i < basis_.rows(); ++i) m.append_row(basis_.row(i));
    for (size_t i = 0; i < o.basis_.rows(); ++i) m.append_row(o.basis_.row(i));
    return row_space(m);
}

F2Subspace F2Subspace::intersect(const F2Subspace& o) const {
    if (ambient_ != o.ambient_) throw DimensionMismatch("F2Subspace::intersect");
    // Zassenhaus: row-reduce [A|A; B|0], intersection basis appears in the
    // right block of rows whose left block is zero.
    size_t n = ambient_;
    F2Matrix m(0, 2 * n);
    for (size_t i = 0; i < basis_.rows(); ++i) {
        F2Vec r = basis_.row(i);
        m.append_row(f2_concat(r, r));
    }
    for (size_t i = 0; i < o.basis_.rows(); ++i) {
        F2Vec r = o.basis_.row(i);
        m.append_row(f2_concat(r, F2Vec(n, 0)));
    }
    m.rref();
    F2Matrix inter(0, n);
    for (size_t r = 0; r < m.rows(); ++r) {
        bool left_zero = true;
        for (size_t c = 0; c < n && left_zero; ++c)
            if (m.get(r, c)) left_zero = false;
        if (!left_zero) continue;
        F2Vec v(n);
        bool nonzero = false;
        for (size_t c = 0; c < n; ++c) {
            v[c] = m.get(r, n + c);
            nonzero |= (v[c] != 0);
        }
        if (nonzero) inter.append_row(v);
    }
    if (inter.rows() == 0) inter = F2Matrix(0, n);
    return row_space(inter);
}

F2Subspace F2Subspace::orthocomplement(const F2Matrix& form) const {
    if (form.rows() != ambient_ || form.cols() != ambient_)
        throw DimensionMismatch("orthocomplement form");
    // x with basis_i^T . form . x = 0 for all i  =>  kernel of (basis * form)
    F2Matrix sys = basis_.mul(form);
    if (basis_.rows() == 0) return F2Subspace::full(ambient_);
    F2Subspace s(ambient_);
    s.basis_ = sys.kernel();
    return s;
}

F2Subspace F2Subspace::cut_by_functional(const F2Vec& functional) const {
    if (functional.size() != ambient_) throw DimensionMismatch("cut_by_functional");
    // solve on coordinates: rows r of basis with <r, functional> = 1
    std::vector<size_t> odd;
    for (size_t i = 0; i < dim(); ++i)
        if (f2_dot(basis_.row(i), functional)) odd.push_back(i);
    if (odd.empty()) return *this;
    F2Matrix nb(0, ambient_);
    // keep rows with even pairing; add pairwise sums of odd rows
    for (size_t i = 0; i < dim(); ++i)
        if (!f2_dot(basis_.row(i), functional)) nb.append_row(basis_.row(i));
    for (size_t k = 1; k < odd.size(); ++k)
        nb.append_row(f2_add(basis_.row(odd[0]), basis_.row(odd[k])));
    if (nb.rows() == 0) nb = F2Matrix(0, ambient_);
    return row_space(nb);
}

F2Vec F2Subspace::coordinates(const F2Vec& v) const {
    F2Vec w = v;
    F2Vec coords(dim(), 0);
    for (size_t i = 0; i < basis_.rows(); ++i) {
        size_t pc = ambient_;
        for (size_t c = 0; c < ambient_; ++c)
            if (basis_.get(i, c)) { pc = c; break; }
        if (pc < ambient_ && w[pc]) {
            coords[i] = 1;
            for (size_t c = 0; c < ambient_; ++c) w[c] ^= basis_.get(i, c);
        }
    }
    if (!f2_is_zero(w)) throw DimensionMismatch("coordinates: vector not in subspace");
    return coords;
}

std::vector<F2Vec> F2Subspace::enumerate() const {
    if (dim() > 24) throw CombinatorialBudgetExceeded("F2Subspace::enumerate dim > 24");
    std::vector<F2Vec> out;
    size_t n = size_t(1) << dim();
    out.reserve(n);
    for (size_t mask = 0; mask < n; ++mask) {
        F2Vec v(ambient_, 0);
        for (size_t i = 0; i < dim(); ++i)
            if ((mask >> i) & 1) v = f2_add(v, basis_.row(i));
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace twocover
