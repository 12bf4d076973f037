#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qrtw/errors.hpp"

namespace qrtw {

// Every ring in this project is small: at most 6 phase variables plus a couple
// of parameters. Fixing the exponent-vector arity keeps monomials allocation
// free and comparisons cheap.
constexpr size_t kMaxVars = 8;

// Ordered symbol list shared by all values of one ring (phase variables first,
// parameters last). Compared by content, so independently constructed tables
// with the same names are interchangeable.
class SymbolTable {
public:
    explicit SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > kMaxVars)
            throw Error("too many symbols (max " + std::to_string(kMaxVars) + ")");
        for (size_t i = 0; i < names_.size(); ++i)
            for (size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw Error("duplicate symbol '" + names_[i] + "'");
    }

    size_t size() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    // -1 if absent
    int index_of(const std::string& s) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == s) return static_cast<int>(i);
        return -1;
    }

    size_t require(const std::string& s) const {
        int i = index_of(s);
        if (i < 0) throw Error("unknown symbol '" + s + "'");
        return static_cast<size_t>(i);
    }

    bool operator==(const SymbolTable& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using SymbolsPtr = std::shared_ptr<const SymbolTable>;

inline SymbolsPtr make_symbols(std::vector<std::string> names) {
    return std::make_shared<const SymbolTable>(std::move(names));
}

inline const SymbolsPtr& empty_symbols() {
    static const SymbolsPtr e = make_symbols({});
    return e;
}

inline bool same_symbols(const SymbolsPtr& a, const SymbolsPtr& b) {
    return a == b || (a && b && *a == *b);
}

// Exponent vector under graded lexicographic order: compare by total degree,
// then lexicographically on the exponents. Unused trailing slots stay zero,
// so comparisons can ignore the arity.
struct Monomial {
    std::array<uint16_t, kMaxVars> e{};

    int total_degree() const {
        int t = 0;
        for (auto x : e) t += x;
        return t;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }

    bool operator<(const Monomial& o) const {
        int ta = total_degree(), tb = o.total_degree();
        if (ta != tb) return ta < tb;
        return e < o.e;
    }

    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (size_t i = 0; i < kMaxVars; ++i)
            r.e[i] = static_cast<uint16_t>(e[i] + o.e[i]);
        return r;
    }

    // caller must ensure divisibility
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (size_t i = 0; i < kMaxVars; ++i)
            r.e[i] = static_cast<uint16_t>(e[i] - o.e[i]);
        return r;
    }
};

} // namespace qrtw
