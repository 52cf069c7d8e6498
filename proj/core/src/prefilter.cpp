#include "qfl/prefilter.hpp"

namespace qfl {

std::vector<Rational> default_epsilon_schedule() {
    std::vector<Rational> out;
    for (int n = 1; n <= 20; ++n) out.push_back(rat(1, 1LL << n));
    return out;
}

std::vector<EpsilonBasis> bounded_coreflection(const TNorm& t, const PrefilterBasis<TNorm>& F,
                                               const std::vector<Rational>& schedule) {
    std::vector<EpsilonBasis> out;
    for (const Rational& eps : schedule) {
        if (!(eps > Rational(0)) || eps > Rational(1)) throw UsageError("epsilon schedule entries must lie in (0,1]");
        const auto e = constant(t, F.domain_size(), eps);
        std::vector<QFunction<Rational>> raw;
        for (const auto& b : F.basis()) raw.push_back(pointwise_join(t, b, e));
        out.push_back({eps, PrefilterBasis<TNorm>::normalize(t, F.domain_size(), raw)});
    }
    return out;
}

}  // namespace qfl
