#pragma once

#include <stdexcept>
#include <string>

namespace combdyn {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input: bad permutation data, dimension mismatch, value outside a
// map's domain, malformed tree/graph files.  CLI exit code 2.
struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

// A caller violated a stated precondition (non-closed walk, walk not in the
// graph, surgery on a single repeated prime, ...).
struct contract_error : error {
    explicit contract_error(const std::string& what) : error(what) {}
};

// An exploration budget was exhausted.  Distinct from "not found".  CLI exit
// code 3.
struct resource_error : error {
    resource_error(const std::string& cap_name, unsigned long long cap_value)
        : error("resource cap exceeded: " + cap_name + " (" +
                std::to_string(cap_value) + ")"),
          cap(cap_name),
          limit(cap_value) {}

    std::string cap;
    unsigned long long limit;
};

// A property the theory guarantees failed to hold.  Always a bug (here or in
// the underlying argument); never silently ignored.
struct invariant_error : error {
    explicit invariant_error(const std::string& what) : error(what) {}
};

// Shared exploration budget.  Counts abstract work units (DFS node visits,
// linear pieces created) across one logical operation.
class Budget {
public:
    static constexpr unsigned long long kDefaultCap = 1'000'000;

    explicit Budget(unsigned long long cap = kDefaultCap, std::string name = "exploration cap")
        : cap_(cap), name_(std::move(name)) {}

    void charge(unsigned long long units = 1) {
        used_ += units;
        if (used_ > cap_) throw resource_error(name_, cap_);
    }

    unsigned long long used() const { return used_; }
    unsigned long long cap() const { return cap_; }

private:
    unsigned long long cap_;
    unsigned long long used_ = 0;
    std::string name_;
};

}  // namespace combdyn
