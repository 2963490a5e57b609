#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "clamp/common/error.hpp"

namespace clamp {

using Index = std::int64_t;

/// Ordered list of non-negative extents. Empty shape = scalar (numel 1).
using Shape = std::vector<Index>;

inline Index shape_numel(const Shape& shape) {
    Index n = 1;
    for (Index e : shape) {
        if (e < 0) throw ShapeError("negative extent in shape");
        n *= e;
    }
    return n;
}

inline std::string shape_str(const Shape& shape) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << 'x';
        os << shape[i];
    }
    os << ']';
    return os.str();
}

/// Dense row-major tensor of f32 or f64 scalars. Rank is arbitrary, but all
/// matrix-shaped operations view it through rows()/cols(): rank 0 -> 1x1,
/// rank 1 -> 1xN, rank >= 2 -> (numel/last) x last.
template <typename S>
class Tensor {
    static_assert(std::is_floating_point_v<S>, "Tensor scalar must be f32 or f64");

public:
    using Scalar = S;
    using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using Map = Eigen::Map<Mat>;
    using ConstMap = Eigen::Map<const Mat>;

    Tensor() = default;

    explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(shape_numel(shape_), S(0)) {}

    Tensor(Shape shape, std::vector<S> data) : shape_(std::move(shape)), data_(std::move(data)) {
        if (static_cast<Index>(data_.size()) != shape_numel(shape_)) {
            throw ShapeError("data length " + std::to_string(data_.size()) +
                             " does not match shape " + shape_str(shape_));
        }
    }

    static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }

    static Tensor full(Shape shape, S value) {
        Tensor t(std::move(shape));
        std::fill(t.data_.begin(), t.data_.end(), value);
        return t;
    }

    static Tensor ones(Shape shape) { return full(std::move(shape), S(1)); }

    static Tensor scalar(S value) { return Tensor(Shape{}, std::vector<S>{value}); }

    /// Row-major 2-D constructor from nested initializer lists, for tests and
    /// small fixed matrices.
    static Tensor from_rows(std::initializer_list<std::initializer_list<S>> rows) {
        const Index r = static_cast<Index>(rows.size());
        const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
        std::vector<S> data;
        data.reserve(static_cast<std::size_t>(r * c));
        for (const auto& row : rows) {
            if (static_cast<Index>(row.size()) != c) throw ShapeError("ragged initializer rows");
            data.insert(data.end(), row.begin(), row.end());
        }
        return Tensor(Shape{r, c}, std::move(data));
    }

    const Shape& shape() const { return shape_; }
    Index rank() const { return static_cast<Index>(shape_.size()); }
    Index numel() const { return static_cast<Index>(data_.size()); }
    Index extent(Index axis) const { return shape_.at(static_cast<std::size_t>(axis)); }

    /// Row count of the canonical matrix view.
    Index rows() const {
        if (shape_.empty()) return 1;
        if (shape_.size() == 1) return 1;
        return numel() == 0 && cols() == 0 ? 0 : (cols() == 0 ? 0 : numel() / cols());
    }

    /// Column count of the canonical matrix view (last extent).
    Index cols() const {
        if (shape_.empty()) return 1;
        return shape_.back();
    }

    S* data() { return data_.data(); }
    const S* data() const { return data_.data(); }
    std::vector<S>& raw() { return data_; }
    const std::vector<S>& raw() const { return data_; }

    S& operator[](Index i) { return data_[static_cast<std::size_t>(i)]; }
    S operator[](Index i) const { return data_[static_cast<std::size_t>(i)]; }

    S& at(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols() + c)]; }
    S at(Index r, Index c) const { return data_[static_cast<std::size_t>(r * cols() + c)]; }

    /// Scalar value of a single-element tensor.
    S item() const {
        if (numel() != 1) throw ShapeError("item() on tensor of numel " + std::to_string(numel()));
        return data_[0];
    }

    Map mat() {
        const Index c = cols();
        const Index r = c == 0 ? 0 : numel() / c;
        return Map(data_.data(), r, c);
    }

    ConstMap mat() const {
        const Index c = cols();
        const Index r = c == 0 ? 0 : numel() / c;
        return ConstMap(data_.data(), r, c);
    }

    bool all_finite() const {
        for (S v : data_) {
            if (!std::isfinite(static_cast<double>(v))) return false;
        }
        return true;
    }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    template <typename T>
    Tensor<T> cast() const {
        std::vector<T> out(data_.size());
        for (std::size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<T>(data_[i]);
        return Tensor<T>(shape_, std::move(out));
    }

private:
    Shape shape_;
    std::vector<S> data_;
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;

// ---------------------------------------------------------------------------
// Broadcasting helpers (numpy-style, right-aligned; missing or size-1 axes
// broadcast). Used by elementwise binary ops and their backward reductions.
// ---------------------------------------------------------------------------

inline Shape broadcast_shape(const Shape& a, const Shape& b) {
    const std::size_t ra = a.size(), rb = b.size();
    const std::size_t r = std::max(ra, rb);
    Shape out(r);
    for (std::size_t k = 0; k < r; ++k) {
        const Index ea = k < r - ra ? 1 : a[k - (r - ra)];
        const Index eb = k < r - rb ? 1 : b[k - (r - rb)];
        if (ea != eb && ea != 1 && eb != 1) {
            throw ShapeError("cannot broadcast " + shape_str(a) + " with " + shape_str(b));
        }
        out[k] = std::max(ea, eb);
    }
    return out;
}

/// Strides of `shape` aligned into a broadcast result of rank `out_rank`;
/// broadcast (size-1 or missing) axes get stride 0.
inline std::vector<Index> broadcast_strides(const Shape& shape, std::size_t out_rank) {
    std::vector<Index> strides(out_rank, 0);
    Index s = 1;
    for (std::size_t k = shape.size(); k-- > 0;) {
        const std::size_t ok = out_rank - shape.size() + k;
        strides[ok] = (shape[k] == 1) ? 0 : s;
        s *= shape[k];
    }
    return strides;
}

/// Elementwise binary op with broadcasting; f(a_elem, b_elem) -> out_elem.
template <typename S, typename F>
Tensor<S> broadcast_binary(const Tensor<S>& a, const Tensor<S>& b, F f) {
    if (a.same_shape(b)) {  // fast path, the common case
        Tensor<S> out(a.shape());
        const S* pa = a.data();
        const S* pb = b.data();
        S* po = out.data();
        const Index n = a.numel();
        for (Index i = 0; i < n; ++i) po[i] = f(pa[i], pb[i]);
        return out;
    }
    const Shape oshape = broadcast_shape(a.shape(), b.shape());
    Tensor<S> out(oshape);
    const std::size_t r = oshape.size();
    const auto sa = broadcast_strides(a.shape(), r);
    const auto sb = broadcast_strides(b.shape(), r);
    std::vector<Index> idx(r, 0);
    const Index n = out.numel();
    Index ia = 0, ib = 0;
    for (Index flat = 0; flat < n; ++flat) {
        out[flat] = f(a[ia], b[ib]);
        // odometer increment
        for (std::size_t k = r; k-- > 0;) {
            ++idx[k];
            ia += sa[k];
            ib += sb[k];
            if (idx[k] < oshape[k]) break;
            ia -= sa[k] * oshape[k];
            ib -= sb[k] * oshape[k];
            idx[k] = 0;
        }
    }
    return out;
}

/// Sum `g` down to `target` shape by reducing over axes that were broadcast.
template <typename S>
Tensor<S> reduce_to_shape(const Tensor<S>& g, const Shape& target) {
    if (g.shape() == target) return g;
    Tensor<S> out(target);
    const std::size_t r = g.shape().size();
    const auto st = broadcast_strides(target, r);
    std::vector<Index> idx(r, 0);
    const Index n = g.numel();
    Index it = 0;
    for (Index flat = 0; flat < n; ++flat) {
        out[it] += g[flat];
        for (std::size_t k = r; k-- > 0;) {
            ++idx[k];
            it += st[k];
            if (idx[k] < g.shape()[k]) break;
            it -= st[k] * g.shape()[k];
            idx[k] = 0;
        }
    }
    return out;
}

}  // namespace clamp
