#include "gptdyn/matrix.hpp"

#include <ostream>
#include <sstream>

#include "gptdyn/errors.hpp"

namespace gptdyn {

namespace {

void check_len(size_t a, size_t b, const char *op) {
    if (a != b) {
        throw ArgumentError(std::string(op) + ": length mismatch " + std::to_string(a) + " vs " +
                            std::to_string(b));
    }
}

void check_shape(const RMat &a, const RMat &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ArgumentError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

}  // namespace

RVec RVec::unit(size_t n, size_t k) {
    RVec v(n);
    v[k] = 1;
    return v;
}

bool RVec::is_zero() const {
    for (const auto &x : v_) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

RVec &RVec::operator+=(const RVec &o) {
    check_len(size(), o.size(), "vector +");
    for (size_t i = 0; i < v_.size(); i++) {
        v_[i] += o.v_[i];
    }
    return *this;
}

RVec &RVec::operator-=(const RVec &o) {
    check_len(size(), o.size(), "vector -");
    for (size_t i = 0; i < v_.size(); i++) {
        v_[i] -= o.v_[i];
    }
    return *this;
}

RVec &RVec::operator*=(const Rat &s) {
    for (auto &x : v_) {
        x *= s;
    }
    return *this;
}

Rat dot(const RVec &a, const RVec &b) {
    check_len(a.size(), b.size(), "dot");
    Rat acc;
    for (size_t i = 0; i < a.size(); i++) {
        if (!a[i].is_zero() && !b[i].is_zero()) {
            acc += a[i] * b[i];
        }
    }
    return acc;
}

RMat::RMat(std::initializer_list<std::initializer_list<Rat>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto &row : init) {
        check_len(row.size(), cols_, "matrix literal");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

RMat RMat::identity(size_t n) {
    RMat m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1;
    }
    return m;
}

RMat RMat::from_rows(const std::vector<RVec> &rows, size_t cols) {
    RMat m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        m.set_row(r, rows[r]);
    }
    return m;
}

RMat RMat::from_columns(const std::vector<RVec> &cols, size_t rows) {
    RMat m(rows, cols.size());
    for (size_t c = 0; c < cols.size(); c++) {
        check_len(cols[c].size(), rows, "from_columns");
        for (size_t r = 0; r < rows; r++) {
            m(r, c) = cols[c][r];
        }
    }
    return m;
}

RVec RMat::row(size_t r) const {
    RVec v(cols_);
    for (size_t c = 0; c < cols_; c++) {
        v[c] = (*this)(r, c);
    }
    return v;
}

RVec RMat::col(size_t c) const {
    RVec v(rows_);
    for (size_t r = 0; r < rows_; r++) {
        v[r] = (*this)(r, c);
    }
    return v;
}

void RMat::set_row(size_t r, const RVec &v) {
    check_len(v.size(), cols_, "set_row");
    for (size_t c = 0; c < cols_; c++) {
        (*this)(r, c) = v[c];
    }
}

RMat RMat::transpose() const {
    RMat t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

bool RMat::is_zero() const {
    for (const auto &x : a_) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

RMat &RMat::operator+=(const RMat &o) {
    check_shape(*this, o, "matrix +");
    for (size_t i = 0; i < a_.size(); i++) {
        a_[i] += o.a_[i];
    }
    return *this;
}

RMat &RMat::operator-=(const RMat &o) {
    check_shape(*this, o, "matrix -");
    for (size_t i = 0; i < a_.size(); i++) {
        a_[i] -= o.a_[i];
    }
    return *this;
}

RMat &RMat::operator*=(const Rat &s) {
    for (auto &x : a_) {
        x *= s;
    }
    return *this;
}

RMat operator*(const RMat &a, const RMat &b) {
    check_len(a.cols(), b.rows(), "matrix *");
    RMat out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            const Rat &aik = a(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (size_t j = 0; j < b.cols(); j++) {
                if (!b(k, j).is_zero()) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
    }
    return out;
}

RVec operator*(const RMat &a, const RVec &x) {
    check_len(a.cols(), x.size(), "matrix-vector *");
    RVec out(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        Rat acc;
        for (size_t k = 0; k < a.cols(); k++) {
            if (!a(i, k).is_zero() && !x[k].is_zero()) {
                acc += a(i, k) * x[k];
            }
        }
        out[i] = acc;
    }
    return out;
}

std::string to_string(const RVec &v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

std::string to_string(const RMat &m) {
    std::ostringstream out;
    out << m;
    return out.str();
}

std::ostream &operator<<(std::ostream &out, const RVec &v) {
    out << "(";
    for (size_t i = 0; i < v.size(); i++) {
        out << (i ? ", " : "") << v[i];
    }
    return out << ")";
}

std::ostream &operator<<(std::ostream &out, const RMat &m) {
    out << "[";
    for (size_t r = 0; r < m.rows(); r++) {
        out << (r ? "; " : "");
        for (size_t c = 0; c < m.cols(); c++) {
            out << (c ? ", " : "") << m(r, c);
        }
    }
    return out << "]";
}

}  // namespace gptdyn
