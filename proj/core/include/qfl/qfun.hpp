#pragma once

#include "qfl/errors.hpp"
#include "qfl/quantale.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qfl {

class FiniteSet {
public:
    FiniteSet() = default;
    explicit FiniteSet(std::vector<std::string> labels);
    static FiniteSet of_size(std::size_t n, std::string_view prefix = "x");

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    const std::string& label(std::size_t i) const;
    std::size_t index_of(std::string_view label) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool operator==(const FiniteSet&) const = default;

private:
    std::vector<std::string> labels_;
};

// A total map between finite sets, given by the image of each index.
class FiniteMap {
public:
    FiniteMap() = default;
    FiniteMap(std::size_t domain_size, std::size_t codomain_size, std::vector<std::size_t> images);
    static FiniteMap identity(std::size_t n);
    static FiniteMap constant(std::size_t domain_size, std::size_t codomain_size, std::size_t target);
    // Every map from an n-set to an m-set, in lexicographic order of images.
    static std::vector<FiniteMap> all(std::size_t domain_size, std::size_t codomain_size);

    std::size_t domain_size() const noexcept { return images_.size(); }
    std::size_t codomain_size() const noexcept { return codomain_; }
    std::size_t operator()(std::size_t x) const;
    const std::vector<std::size_t>& images() const noexcept { return images_; }

    bool operator==(const FiniteMap&) const = default;

private:
    std::size_t codomain_ = 0;
    std::vector<std::size_t> images_;
};

// g after f.
FiniteMap compose(const FiniteMap& g, const FiniteMap& f);

template <class V>
using QFunction = std::vector<V>;

namespace detail {

inline void same_domain(std::size_t a, std::size_t b) {
    if (a != b)
        throw UsageError("domain mismatch: " + std::to_string(a) + " vs " + std::to_string(b) + " elements");
}

}  // namespace detail

template <Quantale Q>
QFunction<typename Q::value_type> constant(const Q& q, std::size_t n, const typename Q::value_type& v) {
    (void)q;
    return QFunction<typename Q::value_type>(n, v);
}

// k_X
template <Quantale Q>
QFunction<typename Q::value_type> unit_function(const Q& q, std::size_t n) {
    return constant(q, n, q.unit());
}

template <Quantale Q>
typename Q::value_type join_of(const Q& q, const QFunction<typename Q::value_type>& a) {
    auto out = q.bottom();
    for (const auto& v : a) out = q.join(out, v);
    return out;
}

template <Quantale Q>
typename Q::value_type meet_of(const Q& q, const QFunction<typename Q::value_type>& a) {
    auto out = q.top();
    for (const auto& v : a) out = q.meet(out, v);
    return out;
}

// sub_X(a, b) = meet over x of a(x) -> b(x); the empty meet is the top.
template <Quantale Q>
typename Q::value_type sub(const Q& q, const QFunction<typename Q::value_type>& a,
                           const QFunction<typename Q::value_type>& b) {
    detail::same_domain(a.size(), b.size());
    auto out = q.top();
    for (std::size_t x = 0; x < a.size(); ++x) out = q.meet(out, q.residuum(a[x], b[x]));
    return out;
}

template <Quantale Q>
bool leq(const Q& q, const QFunction<typename Q::value_type>& a, const QFunction<typename Q::value_type>& b) {
    detail::same_domain(a.size(), b.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        if (!q.leq(a[x], b[x])) return false;
    return true;
}

template <Quantale Q>
QFunction<typename Q::value_type> pointwise_meet(const Q& q, const QFunction<typename Q::value_type>& a,
                                                 const QFunction<typename Q::value_type>& b) {
    detail::same_domain(a.size(), b.size());
    QFunction<typename Q::value_type> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = q.meet(a[x], b[x]);
    return out;
}

template <Quantale Q>
QFunction<typename Q::value_type> pointwise_join(const Q& q, const QFunction<typename Q::value_type>& a,
                                                 const QFunction<typename Q::value_type>& b) {
    detail::same_domain(a.size(), b.size());
    QFunction<typename Q::value_type> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = q.join(a[x], b[x]);
    return out;
}

// x -> p -> a(x)
template <Quantale Q>
QFunction<typename Q::value_type> residuate(const Q& q, const typename Q::value_type& p,
                                            const QFunction<typename Q::value_type>& a) {
    QFunction<typename Q::value_type> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = q.residuum(p, a[x]);
    return out;
}

// x -> p (x) a(x)
template <Quantale Q>
QFunction<typename Q::value_type> scale(const Q& q, const typename Q::value_type& p,
                                        const QFunction<typename Q::value_type>& a) {
    QFunction<typename Q::value_type> out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = q.tensor(p, a[x]);
    return out;
}

// f(a)(y) = join of a over the fiber of y; empty fibers give the bottom.
template <Quantale Q>
QFunction<typename Q::value_type> image(const Q& q, const FiniteMap& f, const QFunction<typename Q::value_type>& a) {
    detail::same_domain(f.domain_size(), a.size());
    QFunction<typename Q::value_type> out(f.codomain_size(), q.bottom());
    for (std::size_t x = 0; x < a.size(); ++x) out[f(x)] = q.join(out[f(x)], a[x]);
    return out;
}

// x -> b(f(x))
template <class V>
QFunction<V> precompose(const FiniteMap& f, const QFunction<V>& b) {
    detail::same_domain(f.codomain_size(), b.size());
    QFunction<V> out(f.domain_size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = b[f(x)];
    return out;
}

// Bounded on a finite domain: the meet of all values is above the bottom.
// Every function on the empty set is bounded.
template <Quantale Q>
bool is_bounded(const Q& q, const QFunction<typename Q::value_type>& a) {
    return !(meet_of(q, a) == q.bottom());
}

}  // namespace qfl
