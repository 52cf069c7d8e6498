#include "qfl/qfun.hpp"

#include <algorithm>

namespace qfl {

FiniteSet::FiniteSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j]) throw UsageError("duplicate set label \"" + labels_[i] + "\"");
}

FiniteSet FiniteSet::of_size(std::size_t n, std::string_view prefix) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
    return FiniteSet(std::move(labels));
}

const std::string& FiniteSet::label(std::size_t i) const {
    if (i >= labels_.size()) throw UsageError("set index " + std::to_string(i) + " out of range");
    return labels_[i];
}

std::size_t FiniteSet::index_of(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw UsageError("unknown set element \"" + std::string(label) + "\"");
    return static_cast<std::size_t>(it - labels_.begin());
}

FiniteMap::FiniteMap(std::size_t domain_size, std::size_t codomain_size, std::vector<std::size_t> images)
    : codomain_(codomain_size), images_(std::move(images)) {
    if (images_.size() != domain_size)
        throw UsageError("map lists " + std::to_string(images_.size()) + " images for a domain of size " +
                         std::to_string(domain_size));
    for (std::size_t y : images_)
        if (y >= codomain_) throw UsageError("map sends an element outside its codomain");
}

FiniteMap FiniteMap::identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    return FiniteMap(n, n, std::move(images));
}

FiniteMap FiniteMap::constant(std::size_t domain_size, std::size_t codomain_size, std::size_t target) {
    return FiniteMap(domain_size, codomain_size, std::vector<std::size_t>(domain_size, target));
}

std::vector<FiniteMap> FiniteMap::all(std::size_t domain_size, std::size_t codomain_size) {
    std::vector<FiniteMap> out;
    if (codomain_size == 0) {
        if (domain_size == 0) out.emplace_back(0, 0, std::vector<std::size_t>{});
        return out;
    }
    std::vector<std::size_t> images(domain_size, 0);
    while (true) {
        out.emplace_back(domain_size, codomain_size, images);
        std::size_t i = domain_size;
        while (i > 0) {
            --i;
            if (++images[i] < codomain_size) break;
            images[i] = 0;
            if (i == 0) return out;
        }
        if (domain_size == 0) return out;
    }
}

std::size_t FiniteMap::operator()(std::size_t x) const {
    if (x >= images_.size()) throw UsageError("map applied outside its domain");
    return images_[x];
}

FiniteMap compose(const FiniteMap& g, const FiniteMap& f) {
    if (f.codomain_size() != g.domain_size()) throw UsageError("maps are not composable");
    std::vector<std::size_t> images(f.domain_size());
    for (std::size_t x = 0; x < images.size(); ++x) images[x] = g(f(x));
    return FiniteMap(f.domain_size(), g.codomain_size(), std::move(images));
}

}  // namespace qfl
