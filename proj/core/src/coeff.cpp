#include "flatchain/coeff.hpp"

#include <cmath>
#include <stdexcept>

namespace flatchain {

namespace {

std::int64_t reduce(std::int64_t k, std::int64_t p) {
    std::int64_t r = k % p;
    return r < 0 ? r + p : r;
}

void require_same_group(const GroupElement& a, const GroupElement& b) {
    if (!(a.group() == b.group()))
        throw std::invalid_argument("group mismatch: " + a.group().name() + " vs " + b.group().name());
}

}  // namespace

Group Group::integers() { return Group(GroupKind::Integers, 0); }
Group Group::reals() { return Group(GroupKind::Reals, 0); }

Group Group::cyclic(std::int64_t p) {
    if (p < 2) throw std::invalid_argument("cyclic group needs modulus >= 2");
    return Group(GroupKind::CyclicMod, p);
}

GroupElement Group::zero() const { return GroupElement(*this, 0, 0.0); }

GroupElement Group::element(std::int64_t k) const {
    switch (kind_) {
    case GroupKind::Integers: return GroupElement(*this, k, 0.0);
    case GroupKind::Reals: return GroupElement(*this, 0, static_cast<double>(k));
    case GroupKind::CyclicMod: return GroupElement(*this, reduce(k, modulus_), 0.0);
    }
    return zero();
}

GroupElement Group::element(double v) const {
    if (kind_ == GroupKind::Reals) return GroupElement(*this, 0, v);
    double r = std::round(v);
    if (r != v || !std::isfinite(v))
        throw std::invalid_argument("non-integral value " + std::to_string(v) + " for group " + name());
    return element(static_cast<std::int64_t>(r));
}

std::string Group::name() const {
    switch (kind_) {
    case GroupKind::Integers: return "Z";
    case GroupKind::Reals: return "R";
    case GroupKind::CyclicMod: return "Z_" + std::to_string(modulus_);
    }
    return "?";
}

double GroupElement::value() const {
    return group_.kind() == GroupKind::Reals ? rvalue_ : static_cast<double>(ivalue_);
}

bool GroupElement::is_zero() const {
    return group_.kind() == GroupKind::Reals ? rvalue_ == 0.0 : ivalue_ == 0;
}

double GroupElement::norm() const {
    switch (group_.kind()) {
    case GroupKind::Integers: return std::abs(static_cast<double>(ivalue_));
    case GroupKind::Reals: return std::abs(rvalue_);
    case GroupKind::CyclicMod: {
        std::int64_t p = group_.modulus();
        return static_cast<double>(std::min(ivalue_, p - ivalue_));
    }
    }
    return 0.0;
}

GroupElement GroupElement::operator-() const {
    switch (group_.kind()) {
    case GroupKind::Integers: return GroupElement(group_, -ivalue_, 0.0);
    case GroupKind::Reals: return GroupElement(group_, 0, -rvalue_);
    case GroupKind::CyclicMod: return GroupElement(group_, reduce(-ivalue_, group_.modulus()), 0.0);
    }
    return *this;
}

GroupElement GroupElement::times(std::int64_t k) const {
    switch (group_.kind()) {
    case GroupKind::Integers: return GroupElement(group_, k * ivalue_, 0.0);
    case GroupKind::Reals: return GroupElement(group_, 0, static_cast<double>(k) * rvalue_);
    case GroupKind::CyclicMod:
        return GroupElement(group_, reduce(reduce(k, group_.modulus()) * ivalue_, group_.modulus()), 0.0);
    }
    return *this;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b);
    switch (a.group_.kind()) {
    case GroupKind::Integers: return GroupElement(a.group_, a.ivalue_ + b.ivalue_, 0.0);
    case GroupKind::Reals: return GroupElement(a.group_, 0, a.rvalue_ + b.rvalue_);
    case GroupKind::CyclicMod:
        return GroupElement(a.group_, reduce(a.ivalue_ + b.ivalue_, a.group_.modulus()), 0.0);
    }
    return a;
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.ivalue_ == b.ivalue_ && a.rvalue_ == b.rvalue_;
}

GroupElement add(const GroupElement& a, const GroupElement& b) { return a + b; }
double norm(const GroupElement& g) { return g.norm(); }

}  // namespace flatchain
