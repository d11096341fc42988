#include "jetcalc/symbol.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace jetcalc {
namespace {

class SymbolTable {
public:
    SymbolTable() {
        // Canonical variable order: map derivatives by (name, i, j), jets by
        // order, class coefficients alphabetically, then plain variables.
        for (char c : {'x', 'y'}) {
            for (int i = 0; i <= kMaxPhiOrder; ++i) {
                for (int j = 0; i + j <= kMaxPhiOrder; ++j) {
                    if (i + j == 0) continue;
                    SymbolInfo s{SymbolKind::MapDerivative,
                                 std::string(1, c) + "_" + std::to_string(i) + "_" + std::to_string(j)};
                    s.component = c;
                    s.i = i;
                    s.j = j;
                    add(std::move(s));
                }
            }
        }
        for (bool tilde : {true, false}) {
            for (int k = 1; k <= 3; ++k) {
                SymbolInfo s{SymbolKind::Jet, (tilde ? "yt" : "y") + std::to_string(k)};
                s.order = k;
                s.tilde = tilde;
                add(std::move(s));
            }
        }
        std::vector<std::string_view> names(std::begin(kCoefficientNames), std::end(kCoefficientNames));
        std::sort(names.begin(), names.end());
        for (auto n : names) add({SymbolKind::Coefficient, std::string(n)});
        for (const char* n : {"x", "y", "xt", "yt", "z", "xt_1_0", "xt_0_1", "yt_1_0", "yt_0_1"})
            add({SymbolKind::Variable, n});
    }

    const SymbolInfo& info(std::uint32_t index) {
        std::shared_lock lock(mutex_);
        return entries_.at(index);
    }

    std::optional<SymbolId> find(std::string_view name) {
        std::shared_lock lock(mutex_);
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end()) return std::nullopt;
        return SymbolId(it->second);
    }

    SymbolId intern_variable(std::string_view name) {
        if (auto s = find(name)) {
            if (s->info().kind != SymbolKind::Variable)
                throw std::invalid_argument("name '" + std::string(name) + "' is reserved");
            return *s;
        }
        std::unique_lock lock(mutex_);
        auto it = by_name_.find(std::string(name));
        if (it != by_name_.end()) return SymbolId(it->second);
        return add_locked({SymbolKind::Variable, std::string(name)});
    }

    std::size_t size() {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

private:
    SymbolId add(SymbolInfo s) {
        std::unique_lock lock(mutex_);
        return add_locked(std::move(s));
    }

    SymbolId add_locked(SymbolInfo s) {
        auto id = static_cast<std::uint32_t>(entries_.size());
        by_name_.emplace(s.name, id);
        entries_.push_back(std::move(s));
        return SymbolId(id);
    }

    std::shared_mutex mutex_;
    std::deque<SymbolInfo> entries_;
    std::unordered_map<std::string, std::uint32_t> by_name_;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

SymbolId require(std::string_view name) {
    auto s = table().find(name);
    if (!s) throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
    return *s;
}

} // namespace

const SymbolInfo& SymbolId::info() const { return table().info(index_); }

SymbolId map_derivative(char component, int i, int j) {
    if ((component != 'x' && component != 'y') || i < 0 || j < 0 || i + j < 1 || i + j > kMaxPhiOrder)
        throw std::out_of_range("no map derivative " + std::string(1, component) + "_" + std::to_string(i) +
                                "_" + std::to_string(j));
    return require(std::string(1, component) + "_" + std::to_string(i) + "_" + std::to_string(j));
}

SymbolId jet(int order, bool tilde) {
    if (order < 1 || order > 3) throw std::out_of_range("jet order must be 1..3");
    return require((tilde ? "yt" : "y") + std::to_string(order));
}

SymbolId coefficient(std::string_view name) {
    auto s = require(name);
    if (s.info().kind != SymbolKind::Coefficient)
        throw std::invalid_argument("'" + std::string(name) + "' is not a class coefficient");
    return s;
}

SymbolId variable(std::string_view name) { return table().intern_variable(name); }

std::optional<SymbolId> lookup_symbol(std::string_view name) { return table().find(name); }

std::size_t symbol_count() { return table().size(); }

} // namespace jetcalc
