#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "json.hpp"
#include "oscillab/lattice.hpp"

namespace oscillab {

struct ConstantResult {
    double value = 1.0;
    BaseSet argmax;
    int argmax_cell = -1;
};

// Positive grid function with a per-instance constant cache. Copies share
// the cache, so a constant computed once is reused everywhere in a run.
class Weight {
public:
    explicit Weight(GridFunction values, nlohmann::json provenance = nlohmann::json::object());

    static Weight unit(const GridDomain& domain);

    const GridFunction& values() const { return values_; }
    double operator[](Eigen::Index i) const { return values_[i]; }
    Eigen::Index size() const { return values_.size(); }
    const std::string& id() const { return id_; }
    const nlohmann::json& provenance() const { return provenance_; }
    bool is_unit() const;

    std::optional<ConstantResult> cached(const std::string& key) const;
    void store(const std::string& key, const ConstantResult& r) const;
    std::map<std::string, double> cached_values() const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::string, ConstantResult> entries;
    };

    GridFunction values_;
    nlohmann::json provenance_;
    std::string id_;
    std::shared_ptr<Cache> cache_;
};

// Throws NonPositiveWeight unless w > 0 on every positive-mass cell.
void require_positive(const Weight& w, const Measure& mu);

}  // namespace oscillab
