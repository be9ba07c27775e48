#pragma once

// Process-wide cache of root data for registry names. Entries are immutable
// and shared; lookups are thread-safe.

#include <map>
#include <mutex>
#include <string>

#include "casimir/cartan.hpp"
#include "casimir/rootdata.hpp"

namespace casimir {

inline DatumPtr datum_for(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, DatumPtr> cache;
    auto spec = parse_algebra(name);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(spec.name);
    if (it != cache.end()) return it->second;
    auto d = build_root_datum(std::move(spec));
    cache.emplace(d->name(), d);
    return d;
}

}  // namespace casimir
