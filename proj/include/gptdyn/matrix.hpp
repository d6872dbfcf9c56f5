#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gptdyn/rational.hpp"

namespace gptdyn {

/// Dense exact vector. Binary operations check lengths.
class RVec {
   public:
    RVec() = default;
    explicit RVec(size_t n) : v_(n) {}
    RVec(std::initializer_list<Rat> init) : v_(init) {}
    explicit RVec(std::vector<Rat> v) : v_(std::move(v)) {}

    static RVec unit(size_t n, size_t k);

    size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    Rat &operator[](size_t i) { return v_[i]; }
    const Rat &operator[](size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    std::span<const Rat> span() const { return v_; }
    const std::vector<Rat> &data() const { return v_; }
    void push_back(Rat r) { v_.push_back(std::move(r)); }

    bool is_zero() const;

    RVec &operator+=(const RVec &o);
    RVec &operator-=(const RVec &o);
    RVec &operator*=(const Rat &s);

    friend RVec operator+(RVec a, const RVec &b) { return a += b; }
    friend RVec operator-(RVec a, const RVec &b) { return a -= b; }
    RVec operator-() const { return *this * Rat(-1); }
    friend RVec operator*(RVec a, const Rat &s) { return a *= s; }
    friend RVec operator*(const Rat &s, RVec a) { return a *= s; }
    friend bool operator==(const RVec &, const RVec &) = default;

   private:
    std::vector<Rat> v_;
};

Rat dot(const RVec &a, const RVec &b);

/// Dense exact row-major matrix.
class RMat {
   public:
    RMat() = default;
    RMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    RMat(std::initializer_list<std::initializer_list<Rat>> init);

    static RMat identity(size_t n);
    static RMat from_rows(const std::vector<RVec> &rows, size_t cols);
    static RMat from_columns(const std::vector<RVec> &cols, size_t rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rat &operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const Rat &operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    RVec row(size_t r) const;
    RVec col(size_t c) const;
    void set_row(size_t r, const RVec &v);
    RMat transpose() const;
    bool is_zero() const;

    RMat &operator+=(const RMat &o);
    RMat &operator-=(const RMat &o);
    RMat &operator*=(const Rat &s);

    friend RMat operator+(RMat a, const RMat &b) { return a += b; }
    friend RMat operator-(RMat a, const RMat &b) { return a -= b; }
    friend RMat operator*(RMat a, const Rat &s) { return a *= s; }
    friend RMat operator*(const Rat &s, RMat a) { return a *= s; }
    friend RMat operator*(const RMat &a, const RMat &b);
    friend RVec operator*(const RMat &a, const RVec &x);
    friend bool operator==(const RMat &, const RMat &) = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Rat> a_;
};

std::string to_string(const RVec &v);
std::string to_string(const RMat &m);
std::ostream &operator<<(std::ostream &out, const RVec &v);
std::ostream &operator<<(std::ostream &out, const RMat &m);

}  // namespace gptdyn
