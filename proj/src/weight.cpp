#include "oscillab/weight.hpp"

namespace oscillab {

Weight::Weight(GridFunction values, nlohmann::json provenance)
    : values_(std::move(values)),
      provenance_(std::move(provenance)),
      cache_(std::make_shared<Cache>()) {
    Digest d;
    d.update(std::int64_t{values_.size()});
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0)
            throw Error(ErrorCode::NonPositiveWeight, "weight values must be finite and >= 0");
        d.update(values_[i]);
    }
    id_ = d.hex();
}

Weight Weight::unit(const GridDomain& domain) {
    return Weight(GridFunction::Ones(domain.cells()), {{"kind", "unit"}});
}

bool Weight::is_unit() const { return (values_ == 1.0).all(); }

std::optional<ConstantResult> Weight::cached(const std::string& key) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->entries.find(key);
    if (it == cache_->entries.end()) return std::nullopt;
    return it->second;
}

void Weight::store(const std::string& key, const ConstantResult& r) const {
    std::lock_guard lock(cache_->mutex);
    cache_->entries.emplace(key, r);
}

std::map<std::string, double> Weight::cached_values() const {
    std::lock_guard lock(cache_->mutex);
    std::map<std::string, double> out;
    for (const auto& [k, v] : cache_->entries) out[k] = v.value;
    return out;
}

void require_positive(const Weight& w, const Measure& mu) {
    if (w.size() != mu.masses.size())
        throw Error(ErrorCode::BadDomain, "weight size does not match the measure");
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (mu.masses[i] > 0.0 && !(w[i] > 0.0))
            throw Error(ErrorCode::NonPositiveWeight,
                        "weight vanishes on cell " + std::to_string(i));
    }
}

}  // namespace oscillab
